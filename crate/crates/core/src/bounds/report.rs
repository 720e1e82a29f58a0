use std::fmt;

/// Outcome of comparing a computed quantity against a bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub check: String,
    pub params: String,
    pub quantity: f64,
    pub bound: f64,
    pub margin: f64,
    pub passed: bool,
    pub provenance: String,
}

impl BoundReport {
    pub fn new(
        check: impl Into<String>,
        params: impl Into<String>,
        quantity: f64,
        bound: f64,
        provenance: impl Into<String>,
    ) -> Self {
        BoundReport {
            check: check.into(),
            params: params.into(),
            quantity,
            bound,
            margin: bound - quantity,
            passed: quantity <= bound * (1.0 + 1e-9),
            provenance: provenance.into(),
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} quantity={:.6e} bound={:.6e}",
            self.check,
            self.params,
            if self.passed { "ok" } else { "FAILED" },
            self.quantity,
            self.bound
        )
    }
}

pub fn all_passed(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule_has_relative_slack() {
        assert!(BoundReport::new("c", "", 1.0 + 1e-10, 1.0, "").passed);
        assert!(!BoundReport::new("c", "", 1.0 + 1e-8, 1.0, "").passed);
        let r = BoundReport::new("c", "", 0.25, 1.0, "");
        assert_eq!(r.margin, 0.75);
    }

    #[test]
    fn nan_quantity_fails() {
        assert!(!BoundReport::new("c", "", f64::NAN, 1.0, "").passed);
    }
}
