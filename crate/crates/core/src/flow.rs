//! Spectral flow of truncated families `A + B_t`, `t` in `[0, 1]`.
//!
//! Sign convention: an eigenvalue crossing zero upward (negative to
//! positive) as `t` increases contributes `+1`. The flow itself is defined
//! by the endpoint formula
//!
//! ```text
//! sf = #{negative eigenvalues at t0} - #{negative eigenvalues at t1}
//! ```
//!
//! and the localized crossings are a diagnostic whose directions sum to it.
//! Tangential touches (an eigenvalue reaching zero without changing sign)
//! are listed with direction `0`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::{frequency, ModeWindow};

pub type HermitianMatrix = DMatrix<Complex64>;

/// A norm-continuous family of Hermitian perturbations on a window.
///
/// Implementations must be safe to evaluate from several threads.
pub trait PerturbationFamily: Send + Sync {
    fn window(&self) -> ModeWindow;

    /// `B_t` as a `2K x 2K` matrix in ascending mode order.
    fn evaluate(&self, t: f64) -> HermitianMatrix;

    /// `L` with `||B_t - B_t'|| <= L |t - t'|`.
    fn lipschitz_bound(&self) -> f64;

    /// Upper bound of `||B_t||` over `[0, 1]`. Modes with `|k + 1/2|`
    /// beyond it cannot reach zero, so it must stay below `K + 1/2`, the
    /// first frequency left out of the window.
    fn norm_bound(&self) -> f64;
}

/// Diagonal truncation `diag(k + 1/2)`, `k = -K..K-1`.
pub fn truncated_operator(w: ModeWindow) -> HermitianMatrix {
    let diag: Vec<Complex64> = w
        .indices()
        .map(|k| Complex64::new(frequency(k), 0.0))
        .collect();
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
}

fn hermitian_deviation(m: &HermitianMatrix) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

fn max_entry(m: &HermitianMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_hermitian(m: &HermitianMatrix, t: f64) -> Result<()> {
    let deviation = hermitian_deviation(m);
    if deviation > 1e-13 * max_entry(m).max(1.0) {
        Err(Error::NotHermitian { t, deviation })
    } else {
        Ok(())
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_norm(m: &HermitianMatrix) -> f64 {
    hermitian_eigenvalues(m)
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
}

/// Sorted eigenvalues of `A + B_t`.
pub fn eigenvalues_at(fam: &dyn PerturbationFamily, t: f64) -> Result<Vec<f64>> {
    let b = fam.evaluate(t);
    let n = fam.window().len();
    if b.nrows() != n || b.ncols() != n {
        return Err(Error::bad(format!(
            "family returned a {}x{} matrix for a {n}-mode window",
            b.nrows(),
            b.ncols()
        )));
    }
    check_hermitian(&b, t)?;
    Ok(hermitian_eigenvalues(
        &(truncated_operator(fam.window()) + b),
    ))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenSample {
    pub t: f64,
    pub eigenvalues: Vec<f64>,
}

/// Tolerance added to the Weyl bound when comparing consecutive samples.
fn weyl_slack(values: &[f64]) -> f64 {
    1e-10 * values.iter().map(|v| v.abs()).fold(1.0, f64::max)
}

fn uniform_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                t1
            } else {
                t0 + (t1 - t0) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Eigenvalue curves on a uniform grid of `n_samples` points in `[0, 1]`.
///
/// Consecutive samples are checked against the Weyl bound
/// `|lambda_i(t) - lambda_i(t')| <= L |t - t'|`.
pub fn eigencurves(fam: &dyn PerturbationFamily, n_samples: usize) -> Result<Vec<EigenSample>> {
    if n_samples < 2 {
        return Err(Error::bad("eigencurves needs at least 2 samples"));
    }
    let lip = fam.lipschitz_bound();
    let mut out: Vec<EigenSample> = Vec::with_capacity(n_samples);
    for t in uniform_grid(0.0, 1.0, n_samples) {
        let eigenvalues = eigenvalues_at(fam, t)?;
        if let Some(prev) = out.last() {
            let jump = prev
                .eigenvalues
                .iter()
                .zip(&eigenvalues)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if jump > lip * (t - prev.t) + weyl_slack(&eigenvalues) {
                return Err(Error::LipschitzViolated {
                    t0: prev.t,
                    t1: t,
                    jump,
                });
            }
        }
        out.push(EigenSample { t, eigenvalues });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    /// Uniform samples before adaptive refinement.
    pub n_samples: usize,
    /// Endpoint eigenvalues closer than this to 0 are rejected.
    pub zero_tol: f64,
    /// Width of the final bracket around each crossing.
    pub locate_tol: f64,
    /// Below this slope magnitude a zero contact counts as tangential.
    pub slope_tol: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            n_samples: 64,
            zero_tol: 1e-9,
            locate_tol: 1e-9,
            slope_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub t: f64,
    /// `+1` upward, `-1` downward, `0` tangential (not counted).
    pub direction: i8,
    /// Position of the eigenvalue in ascending order.
    pub index: usize,
    pub slope: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowResult {
    pub flow: i64,
    pub crossings: Vec<Crossing>,
    /// Number of eigensolves performed.
    pub samples_used: usize,
    pub negative_at_start: usize,
    pub negative_at_end: usize,
}

impl FlowResult {
    /// Signed sum of the localized crossings.
    pub fn crossing_sum(&self) -> i64 {
        self.crossings.iter().map(|c| c.direction as i64).sum()
    }
}

fn negatives(ev: &[f64]) -> usize {
    ev.iter().filter(|&&v| v < 0.0).count()
}

struct Tracker<'a> {
    fam: &'a dyn PerturbationFamily,
    cfg: FlowConfig,
    solves: usize,
}

impl Tracker<'_> {
    fn eig(&mut self, t: f64) -> Result<Vec<f64>> {
        self.solves += 1;
        eigenvalues_at(self.fam, t)
    }

    fn eig_index(&mut self, t: f64, i: usize) -> Result<f64> {
        Ok(self.eig(t)?[i])
    }

    fn slope(&mut self, t: f64, i: usize, lo: f64, hi: f64) -> Result<f64> {
        let h = 1e-6_f64.min((hi - lo) / 2.0).max(self.cfg.locate_tol);
        let a = (t - h).max(lo);
        let b = (t + h).min(hi);
        if b <= a {
            return Ok(0.0);
        }
        Ok((self.eig_index(b, i)? - self.eig_index(a, i)?) / (b - a))
    }

    /// Bisection on the `i`-th sorted eigenvalue, which changes sign on `[lo, hi]`.
    fn locate(&mut self, mut lo: f64, mut lo_val: f64, mut hi: f64, i: usize) -> Result<f64> {
        while hi - lo > self.cfg.locate_tol {
            let mid = 0.5 * (lo + hi);
            let v = self.eig_index(mid, i)?;
            if (v < 0.0) == (lo_val < 0.0) {
                lo = mid;
                lo_val = v;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Golden-section search for the extremum of `lambda_i` toward zero,
    /// i.e. the minimum of `sign * lambda_i` with `sign` its endpoint sign.
    /// Stops early once the eigenvalue is seen on the other side of zero.
    fn closest_approach(&mut self, lo: f64, hi: f64, i: usize, sign: f64) -> Result<(f64, f64)> {
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (lo, hi);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let mut fc = sign * self.eig_index(c, i)?;
        let mut fd = sign * self.eig_index(d, i)?;
        while b - a > self.cfg.locate_tol.max(1e-12) && fc >= 0.0 && fd >= 0.0 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = sign * self.eig_index(c, i)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = sign * self.eig_index(d, i)?;
            }
        }
        Ok(if fc < fd {
            (c, sign * fc)
        } else {
            (d, sign * fd)
        })
    }

    fn interval(
        &mut self,
        (ta, ea): (f64, &[f64]),
        (tb, eb): (f64, &[f64]),
        depth: u32,
        out: &mut Vec<Crossing>,
    ) -> Result<()> {
        let count_change = negatives(ea).abs_diff(negatives(eb));
        if count_change > 1 && depth < 24 && tb - ta > self.cfg.locate_tol {
            let tm = 0.5 * (ta + tb);
            let em = self.eig(tm)?;
            self.interval((ta, ea), (tm, &em), depth + 1, out)?;
            return self.interval((tm, &em), (tb, eb), depth + 1, out);
        }

        let reach = self.fam.lipschitz_bound() * (tb - ta);
        for i in 0..ea.len() {
            let (va, vb) = (ea[i], eb[i]);
            if (va < 0.0) != (vb < 0.0) {
                let t = self.locate(ta, va, tb, i)?;
                let slope = self.slope(t, i, ta, tb)?;
                let direction = if vb > va { 1 } else { -1 };
                out.push(Crossing {
                    t,
                    direction,
                    index: i,
                    slope,
                });
            } else if va.abs() + vb.abs() <= reach {
                // Lipschitz allows a hidden excursion to zero inside the interval
                let sign = if va < 0.0 { -1.0 } else { 1.0 };
                let (t, v) = self.closest_approach(ta, tb, i, sign)?;
                if (v < 0.0) != (va < 0.0) {
                    let t1 = self.locate(ta, va, t, i)?;
                    let t2 = self.locate(t, v, tb, i)?;
                    let s1 = self.slope(t1, i, ta, t)?;
                    let s2 = self.slope(t2, i, t, tb)?;
                    let d1 = if v > va { 1 } else { -1 };
                    out.push(Crossing {
                        t: t1,
                        direction: d1,
                        index: i,
                        slope: s1,
                    });
                    out.push(Crossing {
                        t: t2,
                        direction: -d1,
                        index: i,
                        slope: s2,
                    });
                } else if v.abs() < self.cfg.zero_tol {
                    let slope = self.slope(t, i, ta, tb)?;
                    if slope.abs() < self.cfg.slope_tol || v == 0.0 {
                        out.push(Crossing {
                            t,
                            direction: 0,
                            index: i,
                            slope,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Spectral flow over `[0, 1]`.
pub fn compute_flow(fam: &dyn PerturbationFamily, cfg: &FlowConfig) -> Result<FlowResult> {
    compute_flow_between(fam, 0.0, 1.0, cfg)
}

/// Spectral flow over `[t0, t1]`.
pub fn compute_flow_between(
    fam: &dyn PerturbationFamily,
    t0: f64,
    t1: f64,
    cfg: &FlowConfig,
) -> Result<FlowResult> {
    if !(0.0..=1.0).contains(&t0) || !(0.0..=1.0).contains(&t1) || t1 <= t0 {
        return Err(Error::bad(format!(
            "flow interval [{t0}, {t1}] must lie in [0, 1]"
        )));
    }
    if cfg.n_samples < 2 {
        return Err(Error::bad("flow needs at least 2 samples"));
    }
    // modes left out of the window sit at |k + 1/2| >= K + 1/2
    let edge = fam.window().edge_frequency() + 1.0;
    let norm = fam.norm_bound();
    if norm >= edge {
        return Err(Error::SupportExceedsWindow { norm, edge });
    }

    let mut tracker = Tracker {
        fam,
        cfg: *cfg,
        solves: 0,
    };
    let grid = uniform_grid(t0, t1, cfg.n_samples);
    let mut samples = Vec::with_capacity(grid.len());
    for &t in &grid {
        samples.push(tracker.eig(t)?);
    }
    for (t, ev) in [(t0, &samples[0]), (t1, &samples[samples.len() - 1])] {
        if ev.iter().any(|v| v.abs() < cfg.zero_tol) {
            return Err(Error::EndpointOnSpectrum { t });
        }
    }

    let lip = fam.lipschitz_bound();
    let mut crossings = Vec::new();
    for j in 0..grid.len() - 1 {
        let (ea, eb) = (&samples[j], &samples[j + 1]);
        let jump = ea
            .iter()
            .zip(eb)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if jump > lip * (grid[j + 1] - grid[j]) + weyl_slack(eb) {
            return Err(Error::LipschitzViolated {
                t0: grid[j],
                t1: grid[j + 1],
                jump,
            });
        }
        tracker.interval((grid[j], ea), (grid[j + 1], eb), 0, &mut crossings)?;
    }
    crossings.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.index.cmp(&b.index)));
    crossings.dedup_by(|a, b| a.index == b.index && (a.t - b.t).abs() <= cfg.locate_tol);

    let negative_at_start = negatives(&samples[0]);
    let negative_at_end = negatives(&samples[samples.len() - 1]);
    Ok(FlowResult {
        flow: negative_at_start as i64 - negative_at_end as i64,
        crossings,
        samples_used: tracker.solves,
        negative_at_start,
        negative_at_end,
    })
}

/// `B_t = c t I`.
#[derive(Debug, Clone, Copy)]
pub struct ScalarShift {
    pub window: ModeWindow,
    pub c: f64,
}

impl PerturbationFamily for ScalarShift {
    fn window(&self) -> ModeWindow {
        self.window
    }

    fn evaluate(&self, t: f64) -> HermitianMatrix {
        let n = self.window.len();
        DMatrix::identity(n, n) * Complex64::new(self.c * t, 0.0)
    }

    fn lipschitz_bound(&self) -> f64 {
        self.c.abs()
    }

    fn norm_bound(&self) -> f64 {
        self.c.abs()
    }
}

/// `B_t = c t P_m` with `P_m` the projector onto mode `m`.
#[derive(Debug, Clone, Copy)]
pub struct RankOne {
    pub window: ModeWindow,
    pub mode: i64,
    pub c: f64,
}

impl RankOne {
    pub fn new(window: ModeWindow, mode: i64, c: f64) -> Result<Self> {
        if !window.contains(mode) {
            return Err(Error::bad(format!(
                "rank-one mode {mode} is outside the window"
            )));
        }
        Ok(Self { window, mode, c })
    }
}

impl PerturbationFamily for RankOne {
    fn window(&self) -> ModeWindow {
        self.window
    }

    fn evaluate(&self, t: f64) -> HermitianMatrix {
        let n = self.window.len();
        let mut m = DMatrix::zeros(n, n);
        if let Some(p) = self.window.position(self.mode) {
            m[(p, p)] = Complex64::new(self.c * t, 0.0);
        }
        m
    }

    fn lipschitz_bound(&self) -> f64 {
        self.c.abs()
    }

    fn norm_bound(&self) -> f64 {
        self.c.abs()
    }
}

/// Straight line `B_t = (1 - t) start + t end` between Hermitian matrices.
#[derive(Debug, Clone)]
pub struct MatrixPath {
    window: ModeWindow,
    start: HermitianMatrix,
    end: HermitianMatrix,
    lipschitz: f64,
    norm: f64,
}

impl MatrixPath {
    pub fn new(start: HermitianMatrix, end: HermitianMatrix) -> Result<Self> {
        let n = start.nrows();
        if n == 0 || !n.is_multiple_of(2) || !start.is_square() || end.shape() != start.shape() {
            return Err(Error::bad(
                "matrix path endpoints must be square, even-sized and of equal shape",
            ));
        }
        check_hermitian(&start, 0.0)?;
        check_hermitian(&end, 1.0)?;
        let window = ModeWindow::new(n / 2)?;
        let lipschitz = hermitian_norm(&(&end - &start));
        let norm = hermitian_norm(&start).max(hermitian_norm(&end));
        Ok(Self {
            window,
            start,
            end,
            lipschitz,
            norm,
        })
    }

    /// `B_t = t M`.
    pub fn linear(m: HermitianMatrix) -> Result<Self> {
        let zero = DMatrix::zeros(m.nrows(), m.ncols());
        Self::new(zero, m)
    }
}

impl PerturbationFamily for MatrixPath {
    fn window(&self) -> ModeWindow {
        self.window
    }

    fn evaluate(&self, t: f64) -> HermitianMatrix {
        &self.start * Complex64::new(1.0 - t, 0.0) + &self.end * Complex64::new(t, 0.0)
    }

    fn lipschitz_bound(&self) -> f64 {
        self.lipschitz
    }

    fn norm_bound(&self) -> f64 {
        self.norm
    }
}

/// JSON description of a family, tagged by `"type"`.
///
/// Matrices are row-major arrays of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilySpec {
    ScalarShift {
        #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
        half_width: Option<usize>,
        c: f64,
    },
    RankOne {
        #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
        half_width: Option<usize>,
        mode: i64,
        c: f64,
    },
    MatrixPath {
        start: Vec<Vec<[f64; 2]>>,
        end: Vec<Vec<[f64; 2]>>,
    },
}

fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<HermitianMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::bad(
            "matrix rows must all have length equal to the row count",
        ));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

impl FamilySpec {
    /// Half-width declared in the spec itself, if any.
    pub fn declared_half_width(&self) -> Option<usize> {
        match self {
            FamilySpec::ScalarShift { half_width, .. } | FamilySpec::RankOne { half_width, .. } => {
                *half_width
            }
            FamilySpec::MatrixPath { start, .. } => Some(start.len() / 2),
        }
    }

    /// Build the family. `half_width` overrides a declared `K` for the
    /// scalar and rank-one types; matrix paths take `K` from their size.
    pub fn build(&self, half_width: usize) -> Result<Box<dyn PerturbationFamily>> {
        Ok(match self {
            FamilySpec::ScalarShift { c, .. } => Box::new(ScalarShift {
                window: ModeWindow::new(half_width)?,
                c: *c,
            }),
            FamilySpec::RankOne { mode, c, .. } => {
                Box::new(RankOne::new(ModeWindow::new(half_width)?, *mode, *c)?)
            }
            FamilySpec::MatrixPath { start, end } => Box::new(MatrixPath::new(
                matrix_from_rows(start)?,
                matrix_from_rows(end)?,
            )?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(k: usize) -> ModeWindow {
        ModeWindow::new(k).unwrap()
    }

    #[test]
    fn truncation_is_diagonal() {
        let d = truncated_operator(win(1));
        assert_eq!(d[(0, 0)].re, -0.5);
        assert_eq!(d[(1, 1)].re, 0.5);
        assert_eq!(d[(0, 1)].norm(), 0.0);
        assert_eq!(
            hermitian_eigenvalues(&truncated_operator(win(2))),
            vec![-1.5, -0.5, 0.5, 1.5]
        );
    }

    #[test]
    fn scalar_shift_curves() {
        let fam = ScalarShift {
            window: win(2),
            c: -1.0,
        };
        let curves = eigencurves(&fam, 11).unwrap();
        for s in &curves {
            for (ev, k) in s.eigenvalues.iter().zip(-2..2) {
                assert!((ev - (frequency(k) - s.t)).abs() < 1e-14);
            }
        }
        let zero = ScalarShift {
            window: win(2),
            c: 0.0,
        };
        let curves = eigencurves(&zero, 5).unwrap();
        assert!(curves
            .iter()
            .all(|s| s.eigenvalues == vec![-1.5, -0.5, 0.5, 1.5]));
    }

    #[test]
    fn flow_of_simple_families() {
        let cfg = FlowConfig::default();
        let down = compute_flow(
            &ScalarShift {
                window: win(4),
                c: -1.0,
            },
            &cfg,
        )
        .unwrap();
        assert_eq!(down.flow, -1);
        assert_eq!(down.crossings.len(), 1);
        assert!((down.crossings[0].t - 0.5).abs() < 1e-6);
        assert_eq!(down.crossings[0].direction, -1);

        let up = compute_flow(
            &ScalarShift {
                window: win(4),
                c: 1.0,
            },
            &cfg,
        )
        .unwrap();
        assert_eq!(up.flow, 1);
        assert_eq!(up.crossing_sum(), 1);

        let none = compute_flow(
            &ScalarShift {
                window: win(4),
                c: 0.0,
            },
            &cfg,
        )
        .unwrap();
        assert_eq!(none.flow, 0);
        assert!(none.crossings.is_empty());
    }

    #[test]
    fn endpoint_on_spectrum() {
        // eigenvalue 1/2 - t hits zero exactly at t = 1
        let fam = ScalarShift {
            window: win(4),
            c: -0.5,
        };
        assert!(matches!(
            compute_flow(&fam, &FlowConfig::default()),
            Err(Error::EndpointOnSpectrum { t }) if t == 1.0
        ));
    }

    #[test]
    fn narrow_window_is_rejected() {
        let fam = ScalarShift {
            window: win(1),
            c: -1.5,
        };
        assert!(matches!(
            compute_flow(&fam, &FlowConfig::default()),
            Err(Error::SupportExceedsWindow { .. })
        ));
    }

    #[test]
    fn non_hermitian_path_is_rejected() {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            MatrixPath::linear(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    struct Lying;

    impl PerturbationFamily for Lying {
        fn window(&self) -> ModeWindow {
            ModeWindow::new(2).unwrap()
        }
        fn evaluate(&self, t: f64) -> HermitianMatrix {
            DMatrix::identity(4, 4) * Complex64::new(-t, 0.0)
        }
        fn lipschitz_bound(&self) -> f64 {
            0.1
        }
        fn norm_bound(&self) -> f64 {
            1.0
        }
    }

    #[test]
    fn lipschitz_violation_is_reported() {
        assert!(matches!(
            eigencurves(&Lying, 5),
            Err(Error::LipschitzViolated { .. })
        ));
    }

    #[test]
    fn double_crossing_inside_one_interval() {
        // eigenvalue 1/2 - 4t(1-t)... realized by a path that dips below zero
        // and comes back between two coarse samples: diag shift on mode 0
        struct Dip;
        impl PerturbationFamily for Dip {
            fn window(&self) -> ModeWindow {
                ModeWindow::new(3).unwrap()
            }
            fn evaluate(&self, t: f64) -> HermitianMatrix {
                let mut m = DMatrix::zeros(6, 6);
                // mode 0 sits at position 3; eigenvalue 0.5 - 0.6 * bump(t)
                let bump = (-((t - 0.5) / 0.05).powi(2)).exp();
                m[(3, 3)] = Complex64::new(-0.6 * bump, 0.0);
                m
            }
            fn lipschitz_bound(&self) -> f64 {
                0.6 * 2f64.sqrt() / 0.05 * (-0.5f64).exp()
            }
            fn norm_bound(&self) -> f64 {
                0.6
            }
        }
        let cfg = FlowConfig {
            n_samples: 2,
            ..FlowConfig::default()
        };
        let r = compute_flow(&Dip, &cfg).unwrap();
        assert_eq!(r.flow, 0);
        assert_eq!(r.crossings.len(), 2, "{:?}", r.crossings);
        assert_eq!(r.crossing_sum(), 0);
    }

    #[test]
    fn family_spec_parsing() {
        let s: FamilySpec = serde_json::from_str(r#"{"type":"scalar_shift","c":-1}"#).unwrap();
        assert!(matches!(s, FamilySpec::ScalarShift { half_width: None, c } if c == -1.0));
        let r: FamilySpec =
            serde_json::from_str(r#"{"type":"rank_one","K":8,"mode":0,"c":-2}"#).unwrap();
        assert_eq!(r.declared_half_width(), Some(8));
        let m: FamilySpec = serde_json::from_str(
            r#"{"type":"matrix_path","start":[[[0,0],[0,0]],[[0,0],[0,0]]],"end":[[[-1,0],[0,0]],[[0,0],[-1,0]]]}"#,
        )
        .unwrap();
        let fam = m.build(32).unwrap();
        assert_eq!(fam.window().half_width(), 1);
        assert!(RankOne::new(win(2), 5, 1.0).is_err());
    }
}
