//! C ABI for `halfspec`.
//!
//! Conventions:
//! - every fallible call returns an [`HsStatus`]; on failure the message is
//!   kept per thread and can be read with [`hs_last_error_message`];
//! - grids and coefficient sequences are opaque handles created by `*_new`
//!   or by a transform and released with the matching `*_free`;
//! - output pointers are only written on success.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use halfspec::flow::{compute_flow, FlowConfig, RankOne, ScalarShift};
use halfspec::invariants::{heat_trace, zeta_determinant};
use halfspec::operator::solve_bvp_report;
use halfspec::special::hurwitz_zeta;
use halfspec::transform::{forward, inverse, GridSamples, ModeWindow, TwistedCoeffs};
use halfspec::Error;
use num_complex::Complex64;

/// Result codes. `HS_OK` is zero; the rest mirror the library's error kinds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    HsOk = 0,
    HsNullPointer = 1,
    HsWindowTooWide = 2,
    HsSpectrumHit = 3,
    HsPoleAtOne = 4,
    HsBadParameter = 5,
    HsNotHermitian = 6,
    HsEndpointOnSpectrum = 7,
    HsLipschitzViolated = 8,
    HsSupportExceedsWindow = 9,
    HsParse = 10,
    HsIo = 11,
    HsPanic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HsComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for HsComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<HsComplex> for Complex64 {
    fn from(z: HsComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque grid of `N` samples at `x_j = j / N`.
pub struct HsGrid(GridSamples);

/// Opaque coefficient sequence on the window `k = -K..K-1`.
pub struct HsCoeffs(TwistedCoeffs);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HsStatus {
    match e {
        Error::WindowTooWide { .. } => HsStatus::HsWindowTooWide,
        Error::SpectrumHit { .. } => HsStatus::HsSpectrumHit,
        Error::PoleAtOne { .. } => HsStatus::HsPoleAtOne,
        Error::BadParameter(_) => HsStatus::HsBadParameter,
        Error::NotHermitian { .. } => HsStatus::HsNotHermitian,
        Error::EndpointOnSpectrum { .. } => HsStatus::HsEndpointOnSpectrum,
        Error::LipschitzViolated { .. } => HsStatus::HsLipschitzViolated,
        Error::SupportExceedsWindow { .. } => HsStatus::HsSupportExceedsWindow,
        Error::Parse { .. } => HsStatus::HsParse,
        Error::Io(_) => HsStatus::HsIo,
    }
}

fn null() -> HsStatus {
    set_error("null pointer argument".into());
    HsStatus::HsNullPointer
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), HsStatus>) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HsStatus::HsOk,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            HsStatus::HsPanic
        }
    }
}

fn lift<T>(r: halfspec::Result<T>) -> Result<T, HsStatus> {
    r.map_err(|e| {
        let s = status_of(&e);
        set_error(e.to_string());
        s
    })
}

/// # Safety
/// `ptr` must be null or valid for reads of `len` values.
unsafe fn slice<'a>(ptr: *const HsComplex, len: usize) -> Result<&'a [HsComplex], HsStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

fn write<T>(out: *mut T, v: T) -> Result<(), HsStatus> {
    if out.is_null() {
        return Err(null());
    }
    // SAFETY: non-null and, by the caller's contract, valid for writes
    unsafe { out.write(v) };
    Ok(())
}

/// Copies the message of the last failure on this thread into `buf`
/// (NUL-terminated, truncated to `len`). Returns the full message length
/// without the terminator, or 0 when there is none.
///
/// # Safety
/// `buf` must be null or valid for writes of `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn hs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a grid from `n` samples.
///
/// # Safety
/// `values` must be valid for reads of `n` values; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_grid_new(
    values: *const HsComplex,
    n: usize,
    out: *mut *mut HsGrid,
) -> HsStatus {
    guard(|| {
        let v = slice(values, n)?.iter().map(|&z| z.into()).collect();
        let g = lift(GridSamples::new(v))?;
        write(out, Box::into_raw(Box::new(HsGrid(g))))
    })
}

/// # Safety
/// `grid` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_grid_free(grid: *mut HsGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_grid_len(grid: *const HsGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.len())
}

/// # Safety
/// `grid` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_grid_get(
    grid: *const HsGrid,
    j: usize,
    out: *mut HsComplex,
) -> HsStatus {
    guard(|| {
        let g = grid.as_ref().ok_or_else(null)?;
        let v = g.0.values().get(j).copied().ok_or_else(|| {
            set_error(format!("sample {j} out of range"));
            HsStatus::HsBadParameter
        })?;
        write(out, v.into())
    })
}

/// Creates coefficients on the window of half-width `half_width` from
/// `2 * half_width` values in ascending `k`.
///
/// # Safety
/// `values` must be valid for reads of `2 * half_width` values; `out` valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_coeffs_new(
    values: *const HsComplex,
    half_width: usize,
    out: *mut *mut HsCoeffs,
) -> HsStatus {
    guard(|| {
        let w = lift(ModeWindow::new(half_width))?;
        let v = slice(values, w.len())?.iter().map(|&z| z.into()).collect();
        let c = lift(TwistedCoeffs::new(w, v))?;
        write(out, Box::into_raw(Box::new(HsCoeffs(c))))
    })
}

/// # Safety
/// `coeffs` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_coeffs_free(coeffs: *mut HsCoeffs) {
    if !coeffs.is_null() {
        drop(Box::from_raw(coeffs));
    }
}

/// Window half-width `K`, or 0 for a null handle.
///
/// # Safety
/// `coeffs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_coeffs_half_width(coeffs: *const HsCoeffs) -> usize {
    coeffs.as_ref().map_or(0, |c| c.0.window().half_width())
}

/// Coefficient at mode `k`.
///
/// # Safety
/// `coeffs` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_coeffs_get(
    coeffs: *const HsCoeffs,
    k: i64,
    out: *mut HsComplex,
) -> HsStatus {
    guard(|| {
        let c = coeffs.as_ref().ok_or_else(null)?;
        let v = c.0.get(k).ok_or_else(|| {
            set_error(format!("mode {k} is outside the window"));
            HsStatus::HsBadParameter
        })?;
        write(out, v.into())
    })
}

/// Forward twisted transform onto the window of half-width `half_width`.
///
/// # Safety
/// `grid` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_forward(
    grid: *const HsGrid,
    half_width: usize,
    out: *mut *mut HsCoeffs,
) -> HsStatus {
    guard(|| {
        let g = grid.as_ref().ok_or_else(null)?;
        let w = lift(ModeWindow::new(half_width))?;
        let c = lift(forward(&g.0, w))?;
        write(out, Box::into_raw(Box::new(HsCoeffs(c))))
    })
}

/// Synthesizes `n` grid samples from coefficients.
///
/// # Safety
/// `coeffs` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_inverse(
    coeffs: *const HsCoeffs,
    n: usize,
    out: *mut *mut HsGrid,
) -> HsStatus {
    guard(|| {
        let c = coeffs.as_ref().ok_or_else(null)?;
        let g = lift(inverse(&c.0, n))?;
        write(out, Box::into_raw(Box::new(HsGrid(g))))
    })
}

/// Solves `A u = g` on the window and returns `u` on the input grid.
/// `residual` and `antiperiodicity_gap` may be null.
///
/// # Safety
/// `grid` must be a live handle; pointers must be null or valid for writes
/// (`out` must not be null).
#[no_mangle]
pub unsafe extern "C" fn hs_solve_bvp(
    grid: *const HsGrid,
    half_width: usize,
    out: *mut *mut HsGrid,
    residual: *mut f64,
    antiperiodicity_gap: *mut f64,
) -> HsStatus {
    guard(|| {
        let g = grid.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let w = lift(ModeWindow::new(half_width))?;
        let sol = lift(solve_bvp_report(&g.0, w))?;
        if !residual.is_null() {
            residual.write(sol.residual);
        }
        if !antiperiodicity_gap.is_null() {
            antiperiodicity_gap.write(sol.antiperiodicity_gap);
        }
        write(out, Box::into_raw(Box::new(HsGrid(sol.solution))))
    })
}

/// `zeta'(0)` of `|A|` and the determinant `exp(-zeta'(0))`.
///
/// # Safety
/// Both pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hs_zeta_determinant(
    deriv_at_zero: *mut f64,
    determinant: *mut f64,
) -> HsStatus {
    guard(|| {
        if deriv_at_zero.is_null() || determinant.is_null() {
            return Err(null());
        }
        let r = zeta_determinant();
        write(deriv_at_zero, r.zeta_deriv_at_zero)?;
        write(determinant, r.determinant)
    })
}

/// Hurwitz zeta `zeta(s, a)` with an error estimate (`err` may be null).
///
/// # Safety
/// `value` must be valid for a write; `err` null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_hurwitz_zeta(
    s: HsComplex,
    a: f64,
    value: *mut HsComplex,
    err: *mut f64,
) -> HsStatus {
    guard(|| {
        if value.is_null() {
            return Err(null());
        }
        let z = lift(hurwitz_zeta(s.into(), a))?;
        if !err.is_null() {
            err.write(z.err);
        }
        write(value, z.value.into())
    })
}

/// Heat trace at `t` by direct sum, theta identity and Poisson form.
///
/// # Safety
/// All three pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hs_heat_trace(
    t: f64,
    direct: *mut f64,
    theta: *mut f64,
    poisson: *mut f64,
) -> HsStatus {
    guard(|| {
        if direct.is_null() || theta.is_null() || poisson.is_null() {
            return Err(null());
        }
        let h = lift(heat_trace(t))?;
        write(direct, h.direct_sum)?;
        write(theta, h.theta_value)?;
        write(poisson, h.poisson_value)
    })
}

/// Spectral flow of `A_K + c t I` over `t` in `[0, 1]`.
///
/// # Safety
/// `flow` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_spectral_flow_scalar(
    half_width: usize,
    c: f64,
    flow: *mut i64,
) -> HsStatus {
    guard(|| {
        let window = lift(ModeWindow::new(half_width))?;
        let r = lift(compute_flow(
            &ScalarShift { window, c },
            &FlowConfig::default(),
        ))?;
        write(flow, r.flow)
    })
}

/// Spectral flow of `A_K + c t P_mode` over `t` in `[0, 1]`.
///
/// # Safety
/// `flow` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hs_spectral_flow_rank_one(
    half_width: usize,
    mode: i64,
    c: f64,
    flow: *mut i64,
) -> HsStatus {
    guard(|| {
        let window = lift(ModeWindow::new(half_width))?;
        let fam = lift(RankOne::new(window, mode, c))?;
        let r = lift(compute_flow(&fam, &FlowConfig::default()))?;
        write(flow, r.flow)
    })
}
