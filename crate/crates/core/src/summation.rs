//! Deterministic floating-point accumulation.

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Order in which mode sums are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SummationOrder {
    /// Plain left-to-right accumulation in ascending mode index.
    AscendingK,
    /// Ascending mode index with an error-carrying accumulator.
    #[default]
    Compensated,
}

impl SummationOrder {
    pub fn sum<I: IntoIterator<Item = f64>>(self, terms: I) -> f64 {
        match self {
            SummationOrder::AscendingK => terms.into_iter().fold(0.0, |a, b| a + b),
            SummationOrder::Compensated => terms.into_iter().collect::<CompensatedSum>().value(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_recovers_cancelled_bits() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(SummationOrder::Compensated.sum(terms), 2.0);
        assert_eq!(SummationOrder::AscendingK.sum(terms), 0.0);
    }
}
