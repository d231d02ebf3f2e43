use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::rdf::ParseDiagnostic;

/// A non-fatal problem noticed while building a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub message: String,
}

impl Warning {
    pub fn new(message: impl Into<String>) -> Self {
        Warning {
            message: message.into(),
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<&ParseDiagnostic> for Warning {
    fn from(d: &ParseDiagnostic) -> Self {
        Warning::new(format!("{}:{}: {}", d.line, d.column, d.message))
    }
}
