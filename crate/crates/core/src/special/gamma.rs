//! Log-gamma by upward recurrence into the Stirling regime.

use num_complex::Complex64;

use super::bernoulli::bernoulli_even;
use crate::error::{Error, Result};

/// Arguments are shifted until the real part reaches this before the
/// asymptotic series is summed.
const STIRLING_MIN: f64 = 15.0;
const STIRLING_TERMS: usize = 10;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn stirling_series(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=STIRLING_TERMS {
        let m = (2 * k) as f64;
        acc += pow * (bernoulli_even(k) / (m * (m - 1.0)));
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + acc
}

/// `ln Gamma(a)` for real `a` in `(0, 50]`, absolute error well below `1e-12`.
pub fn log_gamma(a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 50.0) {
        return Err(Error::bad(format!("log_gamma needs a in (0, 50], got {a}")));
    }
    let mut x = a;
    let mut prod = 1.0;
    while x < STIRLING_MIN {
        prod *= x;
        x += 1.0;
    }
    Ok(stirling_series(Complex64::new(x, 0.0)).re - prod.ln())
}

/// `ln Gamma(z)` for `Re(z) > 0`, up to an additive multiple of `2 pi i`.
///
/// Only `exp` of the result is used downstream, so the branch is irrelevant.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    while w.re < STIRLING_MIN {
        prod *= w;
        w += 1.0;
    }
    stirling_series(w) - prod.ln()
}

pub(crate) fn gamma_complex(z: Complex64) -> Complex64 {
    ln_gamma_complex(z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exact_points() {
        assert!((log_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-14);
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
        assert!(
            (log_gamma(50.0).unwrap() - (1..50).map(|k| (k as f64).ln()).sum::<f64>()).abs()
                < 1e-12
        );
    }

    #[test]
    fn domain() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(50.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn complex_matches_real_axis_and_recurrence() {
        for &x in &[0.3, 1.0, 2.5, 7.25, 20.0] {
            let z = ln_gamma_complex(Complex64::new(x, 0.0));
            assert!((z.re - log_gamma(x).unwrap()).abs() < 1e-13);
            assert!(z.im.abs() < 1e-14);
        }
        // Gamma(z + 1) = z Gamma(z)
        let z = Complex64::new(0.7, 2.3);
        let lhs = gamma_complex(z + 1.0);
        let rhs = z * gamma_complex(z);
        assert!((lhs - rhs).norm() < 1e-14 * lhs.norm());
        // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        let y = 3.0;
        let g = gamma_complex(Complex64::new(0.5, y)).norm_sqr();
        assert!((g - PI / (PI * y).cosh()).abs() < 1e-13 * g);
    }
}
