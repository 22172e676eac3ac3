use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size and per-port capacity of a network of ToR switches.
///
/// `n` ToRs, each with `u` outgoing and `u` incoming links of capacity `c`
/// bits/s. There are `u` circuit switches with `n` ports each.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    pub n: usize,
    pub u: usize,
    pub c: f64,
}

impl NetworkParams {
    pub fn new(n: usize, u: usize, c: f64) -> Result<Self> {
        let p = NetworkParams { n, u, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid(format!("n must be at least 2, got {}", self.n)));
        }
        if self.u < 1 || self.u > self.n {
            return Err(Error::invalid(format!("u must be in 1..={}, got {}", self.n, self.u)));
        }
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(Error::invalid(format!(
                "link capacity must be positive and finite, got {}",
                self.c
            )));
        }
        Ok(())
    }

    /// Total capacity leaving (or entering) one ToR: `c·u`.
    pub fn node_capacity(&self) -> f64 {
        self.c * self.u as f64
    }

    /// True when `u` divides `n`, i.e. every switch holds the same whole
    /// number `n/u` of matchings per period.
    pub fn has_integral_period(&self) -> bool {
        self.n.is_multiple_of(self.u)
    }

    /// Number of slots in one period of a schedule emulating the degree-`n`
    /// graph. Equals `n/u` when `u | n`; otherwise each matching is repeated
    /// [`Self::matching_repeats`] times so that the count splits evenly.
    pub fn period(&self) -> usize {
        self.n / gcd(self.n, self.u)
    }

    pub fn matching_repeats(&self) -> usize {
        self.u / gcd(self.n, self.u)
    }

    /// Capacity of one link of the emulated degree-`n` graph: `c·u/n`.
    pub fn emulated_capacity(&self) -> f64 {
        self.c * self.u as f64 / self.n as f64
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(NetworkParams::new(1, 1, 1.0).is_err());
        assert!(NetworkParams::new(4, 0, 1.0).is_err());
        assert!(NetworkParams::new(4, 5, 1.0).is_err());
        assert!(NetworkParams::new(4, 2, 0.0).is_err());
        assert!(NetworkParams::new(4, 2, -3.0).is_err());
        assert!(NetworkParams::new(4, 2, f64::NAN).is_err());
    }

    #[test]
    fn period_and_repeats() {
        let p = NetworkParams::new(16, 4, 25e9).unwrap();
        assert_eq!(p.period(), 4);
        assert_eq!(p.matching_repeats(), 1);
        assert_eq!(p.emulated_capacity(), 6.25e9);

        let p = NetworkParams::new(16, 12, 25e9).unwrap();
        assert!(!p.has_integral_period());
        // 16 matchings repeated 3 times over 12 switches: 4 slots each.
        assert_eq!(p.period(), 4);
        assert_eq!(p.matching_repeats(), 3);
        assert_eq!(p.period() * p.u, p.matching_repeats() * p.n);

        let p = NetworkParams::new(4, 4, 1.0).unwrap();
        assert_eq!(p.period(), 1);
    }
}
