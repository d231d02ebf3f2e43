//! IRIs of the vocabulary terms the diagram reads.

pub const VOID_NS: &str = "http://rdfs.org/ns/void#";

pub const DATASET: &str = "http://rdfs.org/ns/void#Dataset";
pub const LINKSET: &str = "http://rdfs.org/ns/void#Linkset";
pub const TRIPLES: &str = "http://rdfs.org/ns/void#triples";
pub const SUBSET: &str = "http://rdfs.org/ns/void#subset";
pub const TARGET: &str = "http://rdfs.org/ns/void#target";
pub const SUBJECTS_TARGET: &str = "http://rdfs.org/ns/void#subjectsTarget";
pub const OBJECTS_TARGET: &str = "http://rdfs.org/ns/void#objectsTarget";

pub const RDF_TYPE: &str = crate::rdf::RDF_TYPE;

pub const DCTERMS_TITLE: &str = "http://purl.org/dc/terms/title";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
