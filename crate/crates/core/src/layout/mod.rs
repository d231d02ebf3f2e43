//! Circle sizing and placement.
//!
//! Radii come from a log10 scale over triple counts. Positions start from a
//! seeded uniform scatter, relax under Fruchterman–Reingold forces with a
//! linearly cooling temperature, and are then pushed apart until no two
//! circles (plus padding) overlap. The final layout is translated so its
//! bounding box, padding included, starts at the origin.

mod force;
mod rng;
mod vec2;

pub use force::{all_separated, force_step, place_randomly, resolve_overlaps, MIN_DISTANCE};
pub use rng::SplitMix64;
pub use vec2::Vec2;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::void::DiagramModel;
use crate::Warning;

/// Tolerance for the pairwise separation guarantee.
pub const SEPARATION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutConfig {
    pub canvas_width: f64,
    pub canvas_height: f64,
    pub seed: u64,
    pub iterations: usize,
    /// Minimum gap between circle rims, also used as the outer margin.
    pub padding: f64,
    pub r_min: f64,
    pub r_max: f64,
    /// Triple count drawn at `r_min`.
    pub t_ref: f64,
    /// Triple count drawn at `r_max`.
    pub t_cap: f64,
    pub overlap_passes: usize,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            canvas_width: 1000.0,
            canvas_height: 1000.0,
            seed: 42,
            iterations: 500,
            padding: 10.0,
            r_min: 20.0,
            r_max: 80.0,
            t_ref: 1e3,
            t_cap: 1e9,
            overlap_passes: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayoutError {
    EmptyModel,
    InvalidConfig(String),
}

impl fmt::Display for LayoutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayoutError::EmptyModel => f.write_str("cannot lay out an empty model"),
            LayoutError::InvalidConfig(why) => write!(f, "invalid layout configuration: {why}"),
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<(), LayoutError> {
        let bad = |why: &str| Err(LayoutError::InvalidConfig(String::from(why)));
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.canvas_width) || !positive(self.canvas_height) {
            return bad("canvas dimensions must be positive");
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1");
        }
        if !(self.padding.is_finite() && self.padding >= 0.0) {
            return bad("padding must be nonnegative");
        }
        if !positive(self.r_min) || !positive(self.r_max) || self.r_min > self.r_max {
            return bad("radii must be positive with r_min <= r_max");
        }
        if !(self.t_ref >= 1.0 && self.t_ref < self.t_cap && self.t_cap.is_finite()) {
            return bad("triple anchors must satisfy 1 <= t_ref < t_cap");
        }
        Ok(())
    }
}

/// Circle radius for a triple count on the log10 scale anchored at
/// `t_ref → r_min` and `t_cap → r_max`, clamped at both ends.
pub fn radius_for(triples: Option<u64>, config: &LayoutConfig) -> f64 {
    let Some(t) = triples else {
        return config.r_min;
    };
    let t = t as f64;
    if t <= config.t_ref {
        return config.r_min;
    }
    if t >= config.t_cap {
        return config.r_max;
    }
    let lo = libm::log10(config.t_ref);
    let hi = libm::log10(config.t_cap);
    config.r_min + (config.r_max - config.r_min) * (libm::log10(t) - lo) / (hi - lo)
}

/// Starting positions for the model's nodes, in canonical node order.
pub fn initial_positions(model: &DiagramModel, config: &LayoutConfig) -> Vec<Vec2> {
    let mut rng = SplitMix64::new(config.seed);
    place_randomly(model.nodes.len(), config, &mut rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub iri: String,
    pub position: Vec2,
    pub radius: f64,
}

/// Axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Vec2,
    pub max: Vec2,
}

impl Bounds {
    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutResult {
    /// One entry per model node, in the model's node order.
    pub placements: Vec<Placement>,
    /// Circle extents plus the padding margin.
    pub bounds: Bounds,
    /// `false` if overlap removal ran out of passes.
    pub converged: bool,
    pub warnings: Vec<Warning>,
}

impl LayoutResult {
    pub fn get(&self, iri: &str) -> Option<&Placement> {
        self.placements.iter().find(|p| p.iri == iri)
    }
}

/// Lay out every node of `model`.
pub fn run_layout(model: &DiagramModel, config: &LayoutConfig) -> Result<LayoutResult, LayoutError> {
    config.validate()?;
    let n = model.nodes.len();
    if n == 0 {
        return Err(LayoutError::EmptyModel);
    }

    let radii: Vec<f64> = model
        .nodes
        .iter()
        .map(|node| radius_for(node.triples, config))
        .collect();
    let edges: Vec<(usize, usize)> = model
        .edges
        .iter()
        .filter_map(|e| Some((model.node_index(&e.source)?, model.node_index(&e.target)?)))
        .collect();

    let mut positions = initial_positions(model, config);
    let k = libm::sqrt(config.canvas_width * config.canvas_height / n as f64);
    let start_temperature = config.canvas_width / 10.0;
    let steps = config.iterations as f64;
    for step in 0..config.iterations {
        let temperature = start_temperature * (steps - step as f64) / steps;
        positions = force_step(&positions, &edges, k, temperature);
    }

    let (positions, converged) = resolve_overlaps(&positions, &radii, config.padding, config.overlap_passes);
    let mut warnings = Vec::new();
    if !converged {
        warnings.push(Warning::new(format!(
            "overlap removal did not converge after {} passes; some circles may overlap",
            config.overlap_passes
        )));
    }

    let margin = |i: usize| radii[i] + config.padding;
    let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (i, p) in positions.iter().enumerate() {
        min.x = min.x.min(p.x - margin(i));
        min.y = min.y.min(p.y - margin(i));
        max.x = max.x.max(p.x + margin(i));
        max.y = max.y.max(p.y + margin(i));
    }

    let placements = model
        .nodes
        .iter()
        .zip(positions)
        .zip(&radii)
        .map(|((node, p), &radius)| Placement {
            iri: node.iri.clone(),
            position: p - min,
            radius,
        })
        .collect();

    Ok(LayoutResult {
        placements,
        bounds: Bounds {
            min: Vec2::ZERO,
            max: max - min,
        },
        converged,
        warnings,
    })
}
