use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrefixError {
    UndefinedPrefix(String),
    /// The name has no `:` separator.
    NotPrefixed,
    /// A backslash in the local name not followed by a reserved character.
    /// Carries the byte offset of the backslash within the local name.
    MalformedEscape(usize),
}

impl fmt::Display for PrefixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefixError::UndefinedPrefix(p) => write!(f, "undefined prefix '{p}:'"),
            PrefixError::NotPrefixed => f.write_str("expected a prefixed name"),
            PrefixError::MalformedEscape(_) => f.write_str("malformed escape in local name"),
        }
    }
}

pub(crate) fn is_local_escape(c: char) -> bool {
    matches!(
        c,
        '_' | '~'
            | '.'
            | '-'
            | '!'
            | '$'
            | '&'
            | '\''
            | '('
            | ')'
            | '*'
            | '+'
            | ','
            | ';'
            | '='
            | '/'
            | '?'
            | '#'
            | '@'
            | '%'
    )
}

/// Expand `prefix:local` against `prefixes`, unescaping `\`-escaped local
/// name characters. Percent-encodings are kept as written.
pub fn expand_prefixed_name(prefixes: &BTreeMap<String, String>, pname: &str) -> Result<String, PrefixError> {
    let (prefix, local) = pname.split_once(':').ok_or(PrefixError::NotPrefixed)?;
    let namespace = prefixes
        .get(prefix)
        .ok_or_else(|| PrefixError::UndefinedPrefix(String::from(prefix)))?;
    let mut iri = String::with_capacity(namespace.len() + local.len());
    iri.push_str(namespace);
    let mut chars = local.char_indices();
    while let Some((i, c)) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some((_, e)) if is_local_escape(e) => iri.push(e),
                _ => return Err(PrefixError::MalformedEscape(i)),
            }
        } else {
            iri.push(c);
        }
    }
    Ok(iri)
}
