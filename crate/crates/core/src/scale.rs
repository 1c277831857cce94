//! Weighted scale norms `||f||_s^2 = sum_k (1 + |k + 1/2|^2)^s |a_k|^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::{frequency, TwistedCoeffs};

/// Scale parameter `s`. Any finite real is allowed.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScaleIndex(f64);

impl ScaleIndex {
    pub fn new(s: f64) -> Result<Self> {
        if s.is_finite() {
            Ok(Self(s))
        } else {
            Err(Error::bad(format!("scale index must be finite, got {s}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The next level up, `s + 1`.
    pub fn raised(self) -> Self {
        Self(self.0 + 1.0)
    }
}

impl TryFrom<f64> for ScaleIndex {
    type Error = Error;

    fn try_from(s: f64) -> Result<Self> {
        Self::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedNorm {
    pub s: ScaleIndex,
    pub value: f64,
}

/// `ln(1 + (k + 1/2)^2)`; always at least `ln(5/4)`.
#[inline]
pub fn log_weight_base(k: i64) -> f64 {
    let f = frequency(k);
    (f * f).ln_1p()
}

/// `(1 + |k + 1/2|^2)^s`, evaluated in log space.
pub fn weight(k: i64, s: ScaleIndex) -> f64 {
    (s.0 * log_weight_base(k)).exp()
}

/// `sqrt(sum_k w_k(s) |a_k|^2)`.
///
/// Terms are accumulated relative to the largest log-term so that extreme
/// `s` (say `+-50`) neither overflows nor flushes everything to zero.
pub fn scale_norm(c: &TwistedCoeffs, s: ScaleIndex) -> WeightedNorm {
    let logs: Vec<f64> = c
        .iter()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(k, a)| s.0 * log_weight_base(k) + a.norm_sqr().ln())
        .collect();
    let value = match logs.iter().copied().reduce(f64::max) {
        None => 0.0,
        Some(top) => {
            let rest: f64 = logs.iter().map(|l| (l - top).exp()).sum();
            (0.5 * top).exp() * rest.sqrt()
        }
    };
    WeightedNorm { s, value }
}

/// Norm of the inclusion from level `s + 1` into level `s`, restricted to
/// the tail modes `k >= n` or `k <= -n - 1`: `(1 + (n + 1/2)^2)^(-1/2)`.
///
/// The ratio of the two weights is `(1 + |k + 1/2|^2)^(-1)` for every `s`,
/// so the value does not depend on `s`.
pub fn embedding_tail_norm(n: u64, _s: ScaleIndex) -> f64 {
    let f = n as f64 + 0.5;
    1.0 / f.mul_add(f, 1.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::ModeWindow;
    use num_complex::Complex64;

    fn s(v: f64) -> ScaleIndex {
        ScaleIndex::new(v).unwrap()
    }

    #[test]
    fn weights() {
        assert!((weight(0, s(1.0)) - 1.25).abs() < 1e-15);
        assert!((weight(-1, s(1.0)) - 1.25).abs() < 1e-15);
        let want = 1.0 / 175.5625;
        assert!((weight(3, s(-2.0)) - want).abs() < 1e-15 * want.max(1.0));
    }

    #[test]
    fn delta_norms() {
        let w = ModeWindow::new(3).unwrap();
        let d = TwistedCoeffs::delta(w, 0, Complex64::new(1.0, 0.0)).unwrap();
        assert!((scale_norm(&d, s(0.0)).value - 1.0).abs() < 1e-15);
        assert!((scale_norm(&d, s(1.0)).value - 1.118_033_988_749_895).abs() < 1e-15);
        assert_eq!(scale_norm(&TwistedCoeffs::zeros(w), s(3.0)).value, 0.0);
    }

    #[test]
    fn extreme_scale_stays_finite() {
        let w = ModeWindow::new(64).unwrap();
        let c = TwistedCoeffs::new(w, vec![Complex64::new(1.0, -1.0); 128]).unwrap();
        let hi = scale_norm(&c, s(50.0)).value;
        let lo = scale_norm(&c, s(-50.0)).value;
        assert!(hi.is_finite() && hi > 0.0);
        assert!(lo.is_finite() && lo > 0.0);
        // oracle: factor out the largest weight by hand
        let lmax = (63.5f64 * 63.5).ln_1p();
        let rest: f64 = (-64i64..64)
            .map(|k| 2.0 * (50.0 * (log_weight_base(k) - lmax)).exp())
            .sum();
        let want = (25.0 * lmax).exp() * rest.sqrt();
        assert!((hi - want).abs() <= 1e-13 * want);
    }

    #[test]
    fn rejects_non_finite_scale() {
        assert!(ScaleIndex::new(f64::NAN).is_err());
        assert!(ScaleIndex::try_from(f64::INFINITY).is_err());
    }

    #[test]
    fn tail_norm_values() {
        assert!((embedding_tail_norm(0, s(0.0)) - 0.894_427_191_0).abs() < 1e-10);
        assert!((embedding_tail_norm(10, s(7.0)) - 1.0 / 111.25f64.sqrt()).abs() < 1e-15);
        let seq: Vec<f64> = [100, 1000, 10000]
            .iter()
            .map(|&n| embedding_tail_norm(n, s(0.0)))
            .collect();
        assert!(seq[0] > seq[1] && seq[1] > seq[2] && seq[2] > 0.0);
    }
}
