//! Second Jacobi theta function at zero argument,
//! `theta_2(0, q) = 2 sum_{n >= 0} q^((n + 1/2)^2)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn nome_to_t(q: f64) -> Result<f64> {
    if q > 0.0 && q < 1.0 {
        Ok(-q.ln())
    } else {
        Err(Error::bad(format!(
            "theta nome must lie in (0, 1), got {q}"
        )))
    }
}

/// Direct series in `t = -ln q`, stopped once a term drops below `1e-16`
/// of the running sum.
pub(crate) fn theta2_direct_t(t: f64) -> f64 {
    let mut sum = 0.0;
    let mut n = 0u64;
    loop {
        let f = n as f64 + 0.5;
        let term = (-t * f * f).exp();
        if term < 1e-16 * sum || term == 0.0 {
            break;
        }
        sum += term;
        n += 1;
    }
    2.0 * sum
}

/// Modular-transformed series `sqrt(pi/t) (1 + 2 sum_{m >= 1} (-1)^m e^{-pi^2 m^2 / t})`.
pub(crate) fn theta2_modular_t(t: f64) -> f64 {
    let mut sum = 0.0;
    let mut m = 1u64;
    loop {
        let mf = m as f64;
        let term = (-PI * PI * mf * mf / t).exp();
        if term < 1e-17 {
            break;
        }
        sum += if m.is_multiple_of(2) { term } else { -term };
        m += 1;
    }
    (PI / t).sqrt() * (1.0 + 2.0 * sum)
}

pub fn theta2_direct(q: f64) -> Result<f64> {
    Ok(theta2_direct_t(nome_to_t(q)?))
}

pub fn theta2_modular(q: f64) -> Result<f64> {
    Ok(theta2_modular_t(nome_to_t(q)?))
}

/// `theta_2(0, q)`, switching to the modular series for `q > e^{-1}`.
pub fn jacobi_theta2(q: f64) -> Result<f64> {
    let t = nome_to_t(q)?;
    Ok(if t < 1.0 {
        theta2_modular_t(t)
    } else {
        theta2_direct_t(t)
    })
}
