use std::fmt;

/// One named pass/fail check with the value that decided it.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    /// Monte-Carlo standard error of `measured`, when it is an estimate.
    pub std_error: Option<f64>,
    pub note: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            passed,
            measured,
            threshold,
            std_error: None,
            note: String::new(),
        }
    }

    pub fn with_std_error(mut self, se: f64) -> Self {
        self.std_error = Some(se);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Distance to the threshold; positive means slack on the passing side.
    pub fn margin(&self) -> f64 {
        if self.passed {
            (self.threshold - self.measured).abs()
        } else {
            -(self.threshold - self.measured).abs()
        }
    }
}

/// Ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "[{}] {}: measured {:.9e} vs threshold {:.9e} (margin {:.3e})",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.threshold,
                c.margin()
            )?;
            if let Some(se) = c.std_error {
                write!(f, ", se {se:.3e}")?;
            }
            if !c.note.is_empty() {
                write!(f, " -- {}", c.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
