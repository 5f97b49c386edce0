//! Validation reports shared by the datum and representation checks.

use std::fmt;

/// One violated invariant: a stable code, the place it was detected and a message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: &'static str,
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, code: &'static str, location: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            code,
            location: location.into(),
            message: message.into(),
        });
    }

    pub fn warn(&mut self, code: &'static str, location: impl Into<String>, message: impl Into<String>) {
        self.warnings.push(Violation {
            code,
            location: location.into(),
            message: message.into(),
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")?;
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] at {}: {}", v.code, v.location, v.message)?;
        }
        for w in &self.warnings {
            write!(f, "\nwarning [{}] at {}: {}", w.code, w.location, w.message)?;
        }
        Ok(())
    }
}
