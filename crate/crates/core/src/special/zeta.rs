//! Riemann and Hurwitz zeta functions with meromorphic continuation.
//!
//! Two independent evaluation schemes are used so that identities between
//! them are real checks rather than tautologies:
//!
//! * Hurwitz `zeta(s, a)`: Euler-Maclaurin summation with the shift `N` and
//!   the number of Bernoulli corrections chosen per argument to minimize the
//!   combined truncation and rounding bound. Far into the left half-plane,
//!   where that sum cancels catastrophically, Hurwitz's Fourier series is
//!   used instead.
//! * Riemann `zeta(s)`: Borwein's accelerated alternating (eta) series, with
//!   the functional equation for `Re(s) < -1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bernoulli::{bernoulli_over_factorial, MAX_BERNOULLI_INDEX};
use super::gamma::{gamma_complex, ln_gamma_complex, log_gamma};
use crate::error::{Error, Result};

pub const RE_S_MIN: f64 = -10.0;
pub const RE_S_MAX: f64 = 50.0;
pub const A_MAX: f64 = 10.0;
/// Arguments closer than this to `s = 1` are rejected.
pub const POLE_RADIUS: f64 = 1e-6;

/// Below this real part the Hurwitz function switches to Hurwitz's series.
const FOURIER_SERIES_BELOW: f64 = -4.0;
const MAX_CORRECTIONS: usize = MAX_BERNOULLI_INDEX / 2;
const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub value: Complex64,
    /// Bound on the absolute error of `value`.
    pub err: f64,
}

fn check_s(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::bad(format!("non-finite argument s = {s}")));
    }
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(Error::PoleAtOne { re: s.re, im: s.im });
    }
    if !(RE_S_MIN..=RE_S_MAX).contains(&s.re) {
        return Err(Error::bad(format!(
            "Re(s) = {} outside the validated range [{RE_S_MIN}, {RE_S_MAX}]",
            s.re
        )));
    }
    Ok(())
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a <= A_MAX {
        Ok(())
    } else {
        Err(Error::bad(format!(
            "Hurwitz parameter a must lie in (0, {A_MAX}], got {a}"
        )))
    }
}

/// `x^(-s)` for real `x > 0`.
#[inline]
fn real_pow_neg(x: f64, s: Complex64) -> Complex64 {
    (-s * x.ln()).exp()
}

/// Hurwitz zeta `sum_{n >= 0} (n + a)^(-s)`, continued to `s != 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<ZetaValue> {
    check_s(s)?;
    check_a(a)?;
    if s.re < FOURIER_SERIES_BELOW {
        Ok(hurwitz_fourier(s, a))
    } else {
        Ok(euler_maclaurin(s, a))
    }
}

/// Bound plan for one choice of shift `n`.
struct Plan {
    shift: usize,
    corrections: usize,
    bound: f64,
}

fn plan_euler_maclaurin(s: Complex64, a: f64) -> Plan {
    let sigma = s.re;
    let s_abs = s.norm();
    let pole_dist = (s - 1.0).norm();
    let max_shift = 40 + 2 * s_abs.ceil() as usize;

    let mut best = Plan {
        shift: max_shift,
        corrections: MAX_CORRECTIONS,
        bound: f64::INFINITY,
    };
    let mut partial = 0.0;
    for shift in 0..=max_shift {
        let x = shift as f64 + a;
        let lx = x.ln();
        let x_neg_sigma = (-sigma * lx).exp();
        let scale = partial + x_neg_sigma * (x / pole_dist + 0.5);
        let rounding = EPS * scale * (4.0 + s_abs * (x + 1.0).ln());

        // rising factorial magnitude |(s)_{2m}| built two factors at a time
        let mut rising = 1.0;
        let mut two_pi_x_pow = 1.0;
        for m in 1..=MAX_CORRECTIONS {
            rising *= (s + (2 * m - 2) as f64).norm() * (s + (2 * m - 1) as f64).norm();
            two_pi_x_pow *= (2.0 * PI * x).powi(2);
            let denom = sigma + (2 * m) as f64 - 1.0;
            if denom <= 0.0 {
                continue;
            }
            let tail = 4.0 * rising * x * x_neg_sigma / (two_pi_x_pow * denom);
            let total = tail + rounding;
            if total < best.bound {
                best = Plan {
                    shift,
                    corrections: m,
                    bound: total,
                };
            }
        }
        partial += x_neg_sigma;
    }
    best
}

fn euler_maclaurin(s: Complex64, a: f64) -> ZetaValue {
    let plan = plan_euler_maclaurin(s, a);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..plan.shift {
        sum += real_pow_neg(n as f64 + a, s);
    }
    let x = plan.shift as f64 + a;
    let x_neg_s = real_pow_neg(x, s);
    sum += x_neg_s * x / (s - 1.0) + x_neg_s * 0.5;

    // sum_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
    let inv_x2 = 1.0 / (x * x);
    let mut rising = s;
    let mut pow = x_neg_s / x;
    for j in 1..=plan.corrections {
        sum += rising * pow * bernoulli_over_factorial(j);
        let m = (2 * j) as f64;
        rising *= (s + (m - 1.0)) * (s + m);
        pow *= inv_x2;
    }
    ZetaValue {
        value: sum,
        err: plan.bound,
    }
}

/// Hurwitz's formula, valid for `Re(s) < 0` and `0 < a <= 1`:
///
/// `zeta(s, a) = 2 Gamma(1 - s) (2 pi)^(s - 1) sum_{n >= 1} cos(pi (1 - s)/2 - 2 pi n a) n^(s - 1)`.
///
/// Larger `a` is reduced into `(0, 1]` by peeling off leading terms.
fn hurwitz_fourier(s: Complex64, a: f64) -> ZetaValue {
    let peel = (a.ceil() as usize).saturating_sub(1);
    let a0 = a - peel as f64;

    let sigma = s.re;
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let prefactor = 2.0 * gamma_complex(one_minus_s) * ((s - 1.0) * (2.0 * PI).ln()).exp();
    let phase0 = one_minus_s * (PI / 2.0);
    let cos_bound = (phase0.im).cosh();

    // tail of sum n^(sigma - 1) beyond n_terms is at most n_terms^sigma / |sigma|
    let target = 1e-17 * sigma.abs();
    let n_terms = target.powf(1.0 / sigma).ceil().max(2.0) as usize;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        let frac = (nf * a0).fract();
        let term = (phase0 - 2.0 * PI * frac).cos() * ((s - 1.0) * nf.ln()).exp();
        magnitude += term.norm();
        sum += term;
    }
    let pf = prefactor.norm();
    let tail = pf * cos_bound * (n_terms as f64).powf(sigma) / sigma.abs();
    let mut value = prefactor * sum;
    let mut err = tail + 8.0 * EPS * pf * magnitude * (1.0 + s.norm());

    let mut peeled = 0.0;
    for j in 0..peel {
        let term = real_pow_neg(a0 + j as f64, s);
        peeled += term.norm();
        value -= term;
    }
    err += 4.0 * EPS * peeled * (1.0 + s.norm() * (a + 1.0).ln());
    ZetaValue { value, err }
}

/// Riemann zeta `sum_{n >= 1} n^(-s)`, continued to `s != 1`.
pub fn riemann_zeta(s: Complex64) -> Result<ZetaValue> {
    check_s(s)?;
    if s.re >= -1.0 {
        Ok(riemann_upper(s))
    } else {
        Ok(riemann_reflected(s))
    }
}

fn riemann_upper(s: Complex64) -> ZetaValue {
    let denom = Complex64::new(1.0, 0.0) - ((Complex64::new(1.0, 0.0) - s) * 2f64.ln()).exp();
    // zeros of 1 - 2^(1-s) off the real axis; eta vanishes there too
    if denom.norm() < 1e-3 && (s - 1.0).norm() > 0.1 {
        return euler_maclaurin(s, 1.0);
    }
    borwein(s, denom)
}

/// Borwein's algorithm for `eta(s) = (1 - 2^(1-s)) zeta(s)`.
fn borwein(s: Complex64, denom: Complex64) -> ZetaValue {
    let t = s.im.abs();
    // error bound 3 (1 + 2|t|) e^{pi |t| / 2} / (3 + sqrt 8)^n, relative to |denom|
    let log_rate = (3.0 + 8f64.sqrt()).ln();
    let need = (3.0 * (1.0 + 2.0 * t)).ln() + PI * t / 2.0 - (1e-17 * denom.norm()).ln();
    let n = ((need / log_rate).ceil() as usize).clamp(20, 350);

    // d_k / d_n with d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        acc += term;
        d.push(acc * n as f64);
        let fi = i as f64;
        let nf = n as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
    }
    let dn = d[n];

    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for (k, dk) in d.iter().take(n).enumerate() {
        let weight = dk / dn - 1.0;
        let term = real_pow_neg((k + 1) as f64, s) * weight;
        magnitude += term.norm();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let value = -sum / denom;
    let trunc =
        3.0 * (1.0 + 2.0 * t) * (PI * t / 2.0).exp() / (log_rate * n as f64).exp() / denom.norm();
    let rounding =
        8.0 * EPS * (magnitude * (1.0 + s.norm() * (n as f64).ln()) / denom.norm() + value.norm());
    ZetaValue {
        value,
        err: trunc + rounding,
    }
}

/// `zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) zeta(1 - s)`.
fn riemann_reflected(s: Complex64) -> ZetaValue {
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let mirror = riemann_upper(one_minus_s);
    let factor = (s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_gamma_complex(one_minus_s)).exp()
        * (s * (PI / 2.0)).sin();
    let value = factor * mirror.value;
    let err = factor.norm() * mirror.err + 8.0 * EPS * value.norm() * (1.0 + s.norm() * 4.0);
    ZetaValue { value, err }
}

/// `|zeta(s, 1/2) - (2^s - 1) zeta(s)|`.
pub fn hurwitz_relation_gap(s: Complex64) -> Result<f64> {
    let h = hurwitz_zeta(s, 0.5)?;
    let r = riemann_zeta(s)?;
    let factor = (s * 2f64.ln()).exp() - 1.0;
    Ok((h.value - factor * r.value).norm())
}

/// `d/ds zeta(s, a)` at `s = 0` in closed form, `ln Gamma(a) - ln(2 pi) / 2`.
pub fn hurwitz_zeta_deriv_at_zero(a: f64) -> Result<f64> {
    check_a(a)?;
    Ok(log_gamma(a)? - 0.5 * (2.0 * PI).ln())
}

/// Central difference of the continued Hurwitz zeta at `s = 0`.
pub fn hurwitz_zeta_deriv_fd(a: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::bad(format!(
            "finite-difference step must lie in (0, 1/2), got {h}"
        )));
    }
    let plus = hurwitz_zeta(Complex64::new(h, 0.0), a)?.value;
    let minus = hurwitz_zeta(Complex64::new(-h, 0.0), a)?.value;
    Ok((plus - minus).re / (2.0 * h))
}
