use std::fmt;

use crate::error::{invalid, Result};

/// Errors below this are treated as exact.
pub const ERROR_FLOOR: f64 = 1e-13;

/// Estimated order of convergence between two consecutive refinements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eoc {
    Order(f64),
    /// One of the two errors is at or below [`ERROR_FLOOR`].
    AtFloor,
}

impl Eoc {
    pub fn value(&self) -> Option<f64> {
        match self {
            Eoc::Order(v) => Some(*v),
            Eoc::AtFloor => None,
        }
    }
}

impl fmt::Display for Eoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eoc::Order(v) => write!(f, "{v:.5}"),
            Eoc::AtFloor => f.write_str("at-floor"),
        }
    }
}

/// `log(e_{i-1} / e_i) / log(N_i / N_{i-1})` for consecutive pairs.
pub fn eoc(errors: &[f64], ns: &[usize]) -> Result<Vec<Eoc>> {
    if errors.len() != ns.len() || errors.len() < 2 {
        return invalid("need at least two (error, N) pairs of equal length");
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return invalid("N values must be strictly increasing");
    }
    Ok(errors
        .windows(2)
        .zip(ns.windows(2))
        .map(|(e, n)| {
            if !(e[0] > ERROR_FLOOR && e[1] > ERROR_FLOOR) {
                Eoc::AtFloor
            } else {
                Eoc::Order((e[0] / e[1]).ln() / (n[1] as f64 / n[0] as f64).ln())
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halving_steps() {
        let r = eoc(&[0.4, 0.1], &[4, 8]).unwrap();
        assert!((r[0].value().unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn orders_from_five_digit_errors() {
        let r = eoc(&[0.46966, 0.11928], &[4, 8]).unwrap();
        assert!((r[0].value().unwrap() - 1.97726).abs() < 5e-4);
        let r = eoc(&[0.02990, 0.00748], &[16, 32]).unwrap();
        assert!((r[0].value().unwrap() - 1.999).abs() < 5e-4);
    }

    #[test]
    fn order_row_from_rounded_errors() {
        // five-digit table entries only pin the order to about 1e-3
        let errs = [0.46966, 0.11928, 0.02990, 0.00748];
        let r = eoc(&errs, &[4, 8, 16, 32]).unwrap();
        for (o, want) in r.iter().zip([1.97726, 1.99607, 1.99831]) {
            assert!((o.value().unwrap() - want).abs() < 2e-3);
        }
    }

    #[test]
    fn floor_and_validation() {
        assert_eq!(eoc(&[1e-3, 0.0], &[2, 4]).unwrap()[0], Eoc::AtFloor);
        assert_eq!(eoc(&[1e-3, -1.0], &[2, 4]).unwrap()[0], Eoc::AtFloor);
        assert!(eoc(&[1.0], &[2]).is_err());
        assert!(eoc(&[1.0, 0.5], &[4, 4]).is_err());
        assert!(eoc(&[1.0, 0.5, 0.2], &[4, 8]).is_err());
    }
}
