//! The diagonal operator `(A a)_k = (k + 1/2) a_k`, its resolvent, and the
//! antiperiodic boundary value solver `A u = g`.
//!
//! Everything here acts on a finite [`ModeWindow`]. Since the operator is
//! diagonal in the twisted basis, truncation commutes with every operation
//! below; the window is the only approximation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scale::{scale_norm, ScaleIndex};
use crate::transform::{forward, frequency, inverse, GridSamples, ModeWindow, TwistedCoeffs};

/// Default minimum distance between a spectral parameter and the spectrum.
pub const DEFAULT_DELTA_MIN: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpectralParam(pub Complex64);

impl From<Complex64> for SpectralParam {
    fn from(z: Complex64) -> Self {
        Self(z)
    }
}

impl From<f64> for SpectralParam {
    fn from(x: f64) -> Self {
        Self(Complex64::new(x, 0.0))
    }
}

pub fn apply_a(c: &TwistedCoeffs) -> TwistedCoeffs {
    c.map(|k, a| a * frequency(k))
}

/// `1 / (k + 1/2 - lambda)`.
#[inline]
pub fn resolvent_multiplier(k: i64, lambda: SpectralParam) -> Complex64 {
    (Complex64::new(frequency(k), 0.0) - lambda.0).inv()
}

pub fn resolvent(c: &TwistedCoeffs, lambda: SpectralParam) -> Result<TwistedCoeffs> {
    resolvent_with(c, lambda, DEFAULT_DELTA_MIN)
}

/// Resolvent with an explicit spectrum-proximity threshold.
pub fn resolvent_with(
    c: &TwistedCoeffs,
    lambda: SpectralParam,
    delta_min: f64,
) -> Result<TwistedCoeffs> {
    let w = c.window();
    check_resolvent_set(w, lambda, delta_min)?;
    Ok(c.map(|k, a| a / (Complex64::new(frequency(k), 0.0) - lambda.0)))
}

/// Nearest window eigenvalue to `lambda`; errors if closer than `delta_min`.
pub fn check_resolvent_set(w: ModeWindow, lambda: SpectralParam, delta_min: f64) -> Result<()> {
    // eigenvalue k + 1/2 nearest to Re(lambda), clamped into the window
    let guess = (lambda.0.re - 0.5).round();
    let k = (guess.max(w.min_index() as f64).min(w.max_index() as f64)) as i64;
    let distance = (Complex64::new(frequency(k), 0.0) - lambda.0).norm();
    if distance < delta_min {
        Err(Error::SpectrumHit { k, distance })
    } else {
        Ok(())
    }
}

/// Solution of `A u = g` synthesized back onto the grid of `g`.
pub fn solve_bvp(g: &GridSamples, w: ModeWindow) -> Result<GridSamples> {
    Ok(solve_bvp_report(g, w)?.solution)
}

#[derive(Debug, Clone)]
pub struct BvpSolution {
    pub solution: GridSamples,
    pub coeffs: TwistedCoeffs,
    /// `max_k |(k + 1/2) a_k(u) - a_k(g)|`, with `a(u)` re-measured from the grid.
    pub residual: f64,
    /// `|u(1) + u(0)|` of the synthesized series.
    pub antiperiodicity_gap: f64,
    /// Smallest `|k + 1/2|` in the window; always `1/2`.
    pub min_multiplier: f64,
}

pub fn solve_bvp_report(g: &GridSamples, w: ModeWindow) -> Result<BvpSolution> {
    let rhs = forward(g, w)?;
    let coeffs = resolvent(&rhs, SpectralParam::from(0.0))?;
    let solution = inverse(&coeffs, g.len())?;

    let measured = forward(&solution, w)?;
    let residual = apply_a(&measured).max_abs_diff(&rhs);
    let antiperiodicity_gap = (coeffs.evaluate(1.0) + coeffs.evaluate(0.0)).norm();
    let min_multiplier = w
        .indices()
        .map(|k| frequency(k).abs())
        .fold(f64::INFINITY, f64::min);

    Ok(BvpSolution {
        solution,
        coeffs,
        residual,
        antiperiodicity_gap,
        min_multiplier,
    })
}

/// `(||A c||_s, ||c||_{s+1})`; the first never exceeds the second.
pub fn scale_norm_bound_check(c: &TwistedCoeffs, s: ScaleIndex) -> (f64, f64) {
    (
        scale_norm(&apply_a(c), s).value,
        scale_norm(c, s.raised()).value,
    )
}

/// `ln |det|` of the `2K x 2K` truncation, `sum_k ln |k + 1/2|`.
pub fn truncation_log_abs_det(w: ModeWindow) -> f64 {
    w.indices().map(|k| frequency(k).abs().ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn win(k: usize) -> ModeWindow {
        ModeWindow::new(k).unwrap()
    }

    #[test]
    fn apply_on_deltas() {
        let w = win(4);
        let a0 = apply_a(&TwistedCoeffs::delta(w, 0, c(1.0, 0.0)).unwrap());
        assert_eq!(a0.get(0), Some(c(0.5, 0.0)));
        let am = apply_a(&TwistedCoeffs::delta(w, -1, c(1.0, 0.0)).unwrap());
        assert_eq!(am.get(-1), Some(c(-0.5, 0.0)));
        assert_eq!(am.energy(), 0.25);
    }

    #[test]
    fn resolvent_at_zero_doubles_mode_zero() {
        let w = win(4);
        let r = resolvent(
            &TwistedCoeffs::delta(w, 0, c(1.0, 0.0)).unwrap(),
            0.0.into(),
        )
        .unwrap();
        assert_eq!(r.get(0), Some(c(2.0, 0.0)));
    }

    #[test]
    fn resolvent_on_spectrum_is_rejected() {
        let w = win(4);
        let z = TwistedCoeffs::zeros(w);
        match resolvent(&z, 0.5.into()) {
            Err(Error::SpectrumHit { k, .. }) => assert_eq!(k, 0),
            other => panic!("{other:?}"),
        }
        match resolvent(&z, c(-2.5, 1e-12).into()) {
            Err(Error::SpectrumHit { k, .. }) => assert_eq!(k, -3),
            other => panic!("{other:?}"),
        }
        // outside the window the half-integer is not an eigenvalue of the truncation
        assert!(resolvent(&z, 10.5.into()).is_ok());
        // a looser threshold catches near misses
        assert!(resolvent_with(&z, 0.5001.into(), 1e-3).is_err());
        assert!(resolvent_with(&z, 0.5001.into(), 1e-5).is_ok());
    }

    #[test]
    fn resolvent_multiplier_at_i() {
        for k in -20..20 {
            let m = resolvent_multiplier(k, c(0.0, 1.0).into()).norm();
            let f = frequency(k);
            assert!((m - 1.0 / (f * f + 1.0).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn bvp_on_exp_pi() {
        let g = GridSamples::mode(0, 16).unwrap();
        let sol = solve_bvp_report(&g, win(4)).unwrap();
        let want = g.values().iter().map(|v| v * 2.0).collect::<Vec<_>>();
        let want = GridSamples::new(want).unwrap();
        assert!(sol.solution.max_abs_diff(&want) <= 1e-13);
        assert!(sol.antiperiodicity_gap <= 1e-12);
        assert!(sol.residual <= 1e-12);
        assert_eq!(sol.min_multiplier, 0.5);
    }

    #[test]
    fn bound_check_examples() {
        let w = win(8);
        let s0 = ScaleIndex::new(0.0).unwrap();
        let (l, r) = scale_norm_bound_check(&TwistedCoeffs::delta(w, 0, c(1.0, 0.0)).unwrap(), s0);
        assert!((l - 0.5).abs() < 1e-15);
        assert!((r - 1.25f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            scale_norm_bound_check(&TwistedCoeffs::zeros(w), s0),
            (0.0, 0.0)
        );

        let big = win(4096);
        let (l, r) =
            scale_norm_bound_check(&TwistedCoeffs::delta(big, 4095, c(1.0, 0.0)).unwrap(), s0);
        let f = 4095.5f64;
        assert!(l < r);
        assert!((l / r - f / (1.0 + f * f).sqrt()).abs() < 1e-14);
        assert!(1.0 - l / r < 1e-7);
    }

    #[test]
    fn truncation_determinant_is_nonzero() {
        for k in 1..=64 {
            let ld = truncation_log_abs_det(win(k));
            assert!(ld.is_finite());
        }
        // K = 1: |(-1/2)(1/2)| = 1/4
        assert!((truncation_log_abs_det(win(1)) - 0.25f64.ln()).abs() < 1e-15);
    }
}
