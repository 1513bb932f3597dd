//! C ABI over `mrsolve`.
//!
//! Every fallible call returns an [`MrStatus`] and writes results through
//! out-pointers. On failure a message is kept per thread and can be read
//! with [`mr_last_error_message`]. Handles are opaque and must be released
//! with the matching `_free` function.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mrsolve::numerov::{numerov_eigenvalue, SolverConfig};
use mrsolve::potential::{potential_v, Centrifugal, PotentialParams};
use mrsolve::spectrum::{critical_coupling, energy_nl, epsilon_nl};
use mrsolve::wavefunction::{radial_wavefunction, NormMethod, RadialFunction};
use mrsolve::{Error, QuantumState, UnitSystem};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    NoBoundState = 3,
    Numerical = 4,
    InvalidLabel = 5,
    BufferTooSmall = 6,
    Panic = 99,
}

/// Potential parameters together with a unit system.
pub struct MrModel {
    params: PotentialParams,
    units: UnitSystem,
}

/// A sampled, normalized radial wavefunction.
pub struct MrRadialFunction {
    inner: RadialFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(err: &Error) -> MrStatus {
    match err {
        Error::NoBoundState { .. } => MrStatus::NoBoundState,
        Error::InvalidLabel(_) => MrStatus::InvalidLabel,
        Error::NonPositiveNorm(_) | Error::Quadrature { .. } | Error::Eigensolver { .. } => MrStatus::Numerical,
        _ => MrStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> Result<(), MrStatus>) -> MrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MrStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            MrStatus::Panic
        }
    }
}

fn check<T>(r: mrsolve::Result<T>) -> Result<T, MrStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null(what: &str) -> MrStatus {
    set_error(format!("{what} is null"));
    MrStatus::NullPointer
}

unsafe fn model_ref<'a>(m: *const MrModel) -> Result<&'a MrModel, MrStatus> {
    m.as_ref().ok_or_else(|| null("model"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), MrStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Model in atomic units (`ħ = μ = 1`, lengths in bohr).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mr_model_new_atomic(strength: f64, alpha: f64, range: f64, out: *mut *mut MrModel) -> MrStatus {
    guard(|| {
        let params = check(PotentialParams::new(strength, alpha, range))?;
        let model = Box::new(MrModel { params, units: UnitSystem::atomic() });
        write(out, Box::into_raw(model))
    })
}

/// Model in eV and Å for reduced mass `mu_amu`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mr_model_new_molecular(
    strength: f64,
    alpha: f64,
    range_angstrom: f64,
    mu_amu: f64,
    out: *mut *mut MrModel,
) -> MrStatus {
    guard(|| {
        if !(mu_amu > 0.0) || !mu_amu.is_finite() {
            set_error(format!("mu_amu must be positive, got {mu_amu}"));
            return Err(MrStatus::Domain);
        }
        let params = check(PotentialParams::new(strength, alpha, range_angstrom))?;
        let model = Box::new(MrModel { params, units: UnitSystem::molecular(mu_amu) });
        write(out, Box::into_raw(model))
    })
}

/// # Safety
/// `model` must come from an `mr_model_new_*` call and not be used again.
#[no_mangle]
pub unsafe extern "C" fn mr_model_free(model: *mut MrModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Parse a label such as `"2p"` into radial and orbital numbers.
///
/// # Safety
/// `label` must be a NUL-terminated string; `n` and `l` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_state_from_label(label: *const c_char, n: *mut u32, l: *mut u32) -> MrStatus {
    guard(|| {
        if label.is_null() {
            return Err(null("label"));
        }
        let text = CStr::from_ptr(label).to_str().map_err(|_| {
            set_error("label is not UTF-8");
            MrStatus::InvalidLabel
        })?;
        let s = check(QuantumState::from_label(text))?;
        write(n, s.n)?;
        write(l, s.l)
    })
}

/// Closed-form energy of state `(n, l)`.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_energy(model: *const MrModel, n: u32, l: u32, out: *mut f64) -> MrStatus {
    guard(|| {
        let m = model_ref(model)?;
        let e = check(energy_nl(QuantumState::new(n, l), &m.params, &m.units))?;
        write(out, e)
    })
}

/// Dimensionless decay parameter `ε` of state `(n, l)`.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_epsilon(model: *const MrModel, n: u32, l: u32, out: *mut f64) -> MrStatus {
    guard(|| {
        let m = model_ref(model)?;
        let e = check(epsilon_nl(QuantumState::new(n, l), &m.params))?;
        write(out, e)
    })
}

/// Strength `A` at which level `(n, l)` reaches zero energy.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_critical_coupling(n: u32, l: u32, alpha: f64, out: *mut f64) -> MrStatus {
    guard(|| {
        if !alpha.is_finite() {
            set_error("alpha must be finite");
            return Err(MrStatus::Domain);
        }
        write(out, critical_coupling(n, l, alpha))
    })
}

/// Potential `V(r)`.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_potential(model: *const MrModel, r: f64, out: *mut f64) -> MrStatus {
    guard(|| {
        let m = model_ref(model)?;
        let v = check(potential_v(r, &m.params, &m.units))?;
        write(out, v)
    })
}

/// Numerov eigenvalue with the exact (`exact != 0`) or approximated
/// centrifugal term, bracketed from the closed form.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_numerov_eigenvalue(
    model: *const MrModel,
    n: u32,
    l: u32,
    exact: i32,
    out: *mut f64,
) -> MrStatus {
    guard(|| {
        let m = model_ref(model)?;
        let s = QuantumState::new(n, l);
        let cfg = check(SolverConfig::seeded(s, &m.params, &m.units))?;
        let mode = if exact != 0 { Centrifugal::Exact } else { Centrifugal::Approximate };
        let e = check(numerov_eigenvalue(&m.params, l, n, mode, &cfg, &m.units))?;
        write(out, e)
    })
}

/// Sample the normalized radial function of `(n, l)` at `len` radii.
///
/// # Safety
/// `model` must be a live handle, `grid` must point to `len` doubles and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_wavefunction_new(
    model: *const MrModel,
    n: u32,
    l: u32,
    grid: *const f64,
    len: usize,
    out: *mut *mut MrRadialFunction,
) -> MrStatus {
    guard(|| {
        let m = model_ref(model)?;
        if grid.is_null() {
            return Err(null("grid"));
        }
        let radii = std::slice::from_raw_parts(grid, len);
        let inner = check(radial_wavefunction(QuantumState::new(n, l), &m.params, &m.units, radii))?;
        write(out, Box::into_raw(Box::new(MrRadialFunction { inner })))
    })
}

/// # Safety
/// `f` must come from `mr_wavefunction_new` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn mr_wavefunction_free(f: *mut MrRadialFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of samples; 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mr_wavefunction_len(f: *const MrRadialFunction) -> usize {
    f.as_ref().map_or(0, |f| f.inner.values.len())
}

/// Copy the samples into `buf`, which must hold at least `len` values.
///
/// # Safety
/// `f` must be a live handle and `buf` must point to `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn mr_wavefunction_values(f: *const MrRadialFunction, buf: *mut f64, cap: usize) -> MrStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("wavefunction"))?;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        let values = &f.inner.values;
        if cap < values.len() {
            set_error(format!("buffer holds {cap} values, need {}", values.len()));
            return Err(MrStatus::BufferTooSmall);
        }
        std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Ok(())
    })
}

/// Normalization constant; `*closed_form` is set to 1 if it came from the
/// closed double sum and 0 if from quadrature.
///
/// # Safety
/// `f` must be a live handle; `norm` must be writable; `closed_form` may be null.
#[no_mangle]
pub unsafe extern "C" fn mr_wavefunction_norm(
    f: *const MrRadialFunction,
    norm: *mut f64,
    closed_form: *mut i32,
) -> MrStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("wavefunction"))?;
        write(norm, f.inner.norm_const)?;
        if !closed_form.is_null() {
            closed_form.write(i32::from(f.inner.norm_method == NormMethod::ClosedForm));
        }
        Ok(())
    })
}

/// Sign changes across the sampled grid.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_wavefunction_nodes(f: *const MrRadialFunction, out: *mut u32) -> MrStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null("wavefunction"))?;
        write(out, f.inner.node_count() as u32)
    })
}
