//! Twist operator and the half-integer coefficient map.
//!
//! Samples live on the left-endpoint grid `x_j = j / N`, `j = 0..N`. The
//! forward map is
//!
//! ```text
//! a_k = (1/N) sum_j f_j exp(-2 pi i (k + 1/2) x_j),    k = -K..K-1,
//! ```
//!
//! which is a plain length-`N` DFT of the pre-twisted samples
//! `f_j exp(-i pi x_j)`. With `N >= 2K` every window mode lands in its own
//! DFT bin, so the map is exactly invertible on band-limited data.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric window of mode indices `-K..=K-1`.
///
/// The frequencies `k + 1/2` over the window are `+-1/2, +-3/2, ..., +-(K - 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeWindow {
    half_width: usize,
}

impl ModeWindow {
    pub fn new(half_width: usize) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::bad("window half-width must be positive"));
        }
        Ok(Self { half_width })
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Number of modes, `2K`.
    pub fn len(&self) -> usize {
        2 * self.half_width
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_index(&self) -> i64 {
        -(self.half_width as i64)
    }

    pub fn max_index(&self) -> i64 {
        self.half_width as i64 - 1
    }

    pub fn contains(&self, k: i64) -> bool {
        (self.min_index()..=self.max_index()).contains(&k)
    }

    /// Mode indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = i64> + Clone {
        self.min_index()..=self.max_index()
    }

    /// Storage slot of mode `k`, if it belongs to the window.
    pub fn position(&self, k: i64) -> Option<usize> {
        self.contains(k).then(|| (k - self.min_index()) as usize)
    }

    pub fn index_at(&self, position: usize) -> i64 {
        self.min_index() + position as i64
    }

    /// Largest frequency magnitude in the window, `K - 1/2`.
    pub fn edge_frequency(&self) -> f64 {
        self.half_width as f64 - 0.5
    }

    pub(crate) fn check_grid(&self, n: usize) -> Result<()> {
        if n < 2 * self.half_width {
            Err(Error::WindowTooWide {
                n,
                k: self.half_width,
            })
        } else {
            Ok(())
        }
    }
}

/// Frequency `k + 1/2` of mode `k`.
#[inline]
pub fn frequency(k: i64) -> f64 {
    k as f64 + 0.5
}

/// `exp(i pi m / n)` with `m` reduced modulo `2n` first, so large products
/// of indices never feed a large argument into `sin`/`cos`.
#[inline]
pub(crate) fn unit_phase(m: i64, n: usize) -> Complex64 {
    let period = 2 * n as i64;
    let r = m.rem_euclid(period);
    Complex64::from_polar(1.0, PI * r as f64 / n as f64)
}

/// Coefficients over a [`ModeWindow`], stored in ascending `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedCoeffs {
    window: ModeWindow,
    values: Vec<Complex64>,
}

impl TwistedCoeffs {
    pub fn new(window: ModeWindow, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::bad(format!(
                "window of half-width {} needs {} coefficients, got {}",
                window.half_width(),
                window.len(),
                values.len()
            )));
        }
        Ok(Self { window, values })
    }

    pub fn zeros(window: ModeWindow) -> Self {
        Self {
            window,
            values: vec![Complex64::new(0.0, 0.0); window.len()],
        }
    }

    /// `scale` times the Kronecker delta at mode `k`.
    pub fn delta(window: ModeWindow, k: i64, scale: Complex64) -> Result<Self> {
        let pos = window
            .position(k)
            .ok_or_else(|| Error::bad(format!("mode {k} is outside the window")))?;
        let mut c = Self::zeros(window);
        c.values[pos] = scale;
        Ok(c)
    }

    pub fn window(&self) -> ModeWindow {
        self.window
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, k: i64) -> Option<Complex64> {
        self.window.position(k).map(|p| self.values[p])
    }

    /// `(k, a_k)` pairs in ascending `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.window.indices().zip(self.values.iter().copied())
    }

    /// New coefficients on the same window with `a_k -> f(k, a_k)`.
    pub fn map(&self, mut f: impl FnMut(i64, Complex64) -> Complex64) -> Self {
        Self {
            window: self.window,
            values: self.iter().map(|(k, a)| f(k, a)).collect(),
        }
    }

    pub fn energy(&self) -> f64 {
        self.values.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.energy().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Sum of the trigonometric series `sum_k a_k exp(2 pi i (k + 1/2) x)` at
    /// an arbitrary point, including `x = 1` which is not on any grid.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        self.iter()
            .map(|(k, a)| a * Complex64::from_polar(1.0, 2.0 * PI * frequency(k) * x))
            .sum()
    }
}

/// `N` uniform samples on `[0, 1)`, `x_j = j / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples {
    values: Vec<Complex64>,
}

impl GridSamples {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::bad("grid must hold at least one sample"));
        }
        Ok(Self { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(|j| f(j as f64 / n as f64)).collect())
    }

    /// Exact samples of `psi_m` on an `n`-point grid.
    pub fn mode(m: i64, n: usize) -> Result<Self> {
        Self::new(
            (0..n as i64)
                .map(|j| unit_phase((2 * m + 1) * j, n))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 / self.len() as f64
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Discrete L2 norm `sqrt((1/N) sum |f_j|^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.mean_energy().sqrt()
    }

    pub fn mean_energy(&self) -> f64 {
        self.values.iter().map(|f| f.norm_sqr()).sum::<f64>() / self.len() as f64
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn modulate(&self, sign: i64) -> Self {
        let n = self.len();
        Self {
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(j, f)| f * unit_phase(sign * j as i64, n))
                .collect(),
        }
    }
}

/// `(U f)(x_j) = exp(i pi x_j) f(x_j)`.
pub fn twist(g: &GridSamples) -> GridSamples {
    g.modulate(1)
}

/// Inverse twist, multiplication by `exp(-i pi x_j)`.
pub fn untwist(g: &GridSamples) -> GridSamples {
    g.modulate(-1)
}

/// Forward coefficient map through an FFT of the pre-twisted samples.
pub fn forward(g: &GridSamples, w: ModeWindow) -> Result<TwistedCoeffs> {
    let n = g.len();
    w.check_grid(n)?;
    let mut buf = untwist(g).into_values();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let values = w
        .indices()
        .map(|k| buf[k.rem_euclid(n as i64) as usize] * scale)
        .collect();
    TwistedCoeffs::new(w, values)
}

/// Forward coefficient map by direct `O(NK)` summation.
pub fn forward_direct(g: &GridSamples, w: ModeWindow) -> Result<TwistedCoeffs> {
    let n = g.len();
    w.check_grid(n)?;
    let scale = 1.0 / n as f64;
    let values = w
        .indices()
        .map(|k| {
            let s: Complex64 = g
                .values()
                .iter()
                .enumerate()
                .map(|(j, f)| f * unit_phase(-(2 * k + 1) * j as i64, n))
                .sum();
            s * scale
        })
        .collect();
    TwistedCoeffs::new(w, values)
}

/// Synthesis `f_j = sum_k a_k exp(2 pi i (k + 1/2) x_j)` on an `n`-point grid.
pub fn inverse(c: &TwistedCoeffs, n: usize) -> Result<GridSamples> {
    let w = c.window();
    w.check_grid(n)?;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (k, a) in c.iter() {
        buf[k.rem_euclid(n as i64) as usize] = a;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    Ok(twist(&GridSamples::new(buf)?))
}

pub fn inverse_direct(c: &TwistedCoeffs, n: usize) -> Result<GridSamples> {
    c.window().check_grid(n)?;
    GridSamples::new(
        (0..n as i64)
            .map(|j| {
                c.iter()
                    .map(|(k, a)| a * unit_phase((2 * k + 1) * j, n))
                    .sum()
            })
            .collect(),
    )
}

/// `|(1/N) sum |f_j|^2 - sum_k |a_k|^2|`: the sample energy the window misses.
pub fn parseval_gap(g: &GridSamples, w: ModeWindow) -> Result<f64> {
    let c = forward(g, w)?;
    Ok((g.mean_energy() - c.energy()).abs())
}
