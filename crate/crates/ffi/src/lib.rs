//! C interface to `velo-core`.
//!
//! Graphs and polytopes are opaque handles owned by the caller and released
//! with `velo_graph_free` / `velo_polytope_free`. Every fallible call returns
//! a `VeloStatus`; on failure `velo_last_error` describes the cause. Strings
//! returned through `char **` out-parameters are freed with
//! `velo_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use velo_core::{
    connectivity_report, contains_polytope, gauge_norm, parse_dgf, realize, serialize_dgf, velocity_polytope,
    DisplacementGraph, Error, RationalPolytope, RationalVec, Verdict,
};

/// Opaque displacement graph.
pub struct VeloGraph(DisplacementGraph);

/// Opaque rational polytope.
pub struct VeloPolytope(RationalPolytope);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeloStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Budget = 4,
    Connectivity = 5,
    Invalid = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeloVerdict {
    StronglyConnectedPeriodic = 0,
    QuotientConnectedOnly = 1,
    Disconnected = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VeloStatus {
    match e {
        Error::Syntax { .. } | Error::UndeclaredVertex { .. } | Error::DuplicateVertex { .. } => VeloStatus::Parse,
        Error::BudgetExceeded { .. } => VeloStatus::Budget,
        Error::NotStronglyConnected(_) => VeloStatus::Connectivity,
        _ => VeloStatus::Invalid,
    }
}

fn fail(status: VeloStatus, message: impl Into<String>) -> VeloStatus {
    set_error(message.into());
    status
}

fn guard(f: impl FnOnce() -> Result<(), VeloStatus>) -> VeloStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VeloStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(VeloStatus::Panic, "internal panic"),
    }
}

fn core<T>(r: velo_core::Result<T>) -> Result<T, VeloStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, VeloStatus> {
    if s.is_null() {
        return Err(fail(VeloStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(VeloStatus::InvalidUtf8, "input is not valid UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, VeloStatus> {
    p.as_ref().ok_or_else(|| fail(VeloStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), VeloStatus> {
    if out.is_null() {
        return Err(fail(VeloStatus::NullPointer, "null out-pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), VeloStatus> {
    if out.is_null() {
        return Err(fail(VeloStatus::NullPointer, "null out-pointer"));
    }
    *out = CString::new(s).map_err(|_| fail(VeloStatus::Invalid, "interior NUL"))?.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn velo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn velo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses DGF text.
///
/// # Safety
/// `dgf` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_graph_parse(dgf: *const c_char, out: *mut *mut VeloGraph) -> VeloStatus {
    guard(|| {
        let g = core(parse_dgf(text(dgf)?))?;
        put(out, VeloGraph(g))
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn velo_graph_free(g: *mut VeloGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn velo_graph_dim(g: *const VeloGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.dim())
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn velo_graph_vertex_count(g: *const VeloGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn velo_graph_edge_count(g: *const VeloGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Canonical DGF text of `g`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_graph_serialize(g: *const VeloGraph, out: *mut *mut c_char) -> VeloStatus {
    guard(|| put_string(out, serialize_dgf(&handle(g)?.0)))
}

/// Connectivity verdict of the periodic graph.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_graph_verdict(g: *const VeloGraph, out: *mut VeloVerdict) -> VeloStatus {
    guard(|| {
        let report = core(connectivity_report(&handle(g)?.0))?;
        if out.is_null() {
            return Err(fail(VeloStatus::NullPointer, "null out-pointer"));
        }
        *out = match report.verdict {
            Verdict::StronglyConnectedPeriodic => VeloVerdict::StronglyConnectedPeriodic,
            Verdict::QuotientConnectedOnly => VeloVerdict::QuotientConnectedOnly,
            Verdict::Disconnected => VeloVerdict::Disconnected,
        };
        Ok(())
    })
}

/// Velocity polytope of a graph whose quotient is strongly connected.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_velocity_polytope(g: *const VeloGraph, out: *mut *mut VeloPolytope) -> VeloStatus {
    guard(|| {
        let p = core(velocity_polytope(&handle(g)?.0))?;
        put(out, VeloPolytope(p))
    })
}

/// Builds a polytope from its JSON form (vertices are re-hulled).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_polytope_from_json(json: *const c_char, out: *mut *mut VeloPolytope) -> VeloStatus {
    guard(|| {
        let p = core(RationalPolytope::from_json(text(json)?))?;
        put(out, VeloPolytope(p))
    })
}

/// # Safety
/// `p` must be a live polytope handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_polytope_to_json(p: *const VeloPolytope, out: *mut *mut c_char) -> VeloStatus {
    guard(|| put_string(out, handle(p)?.0.to_json()))
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn velo_polytope_free(p: *mut VeloPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live polytope handle.
#[no_mangle]
pub unsafe extern "C" fn velo_polytope_vertex_count(p: *const VeloPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.0.vertices().len())
}

/// Gauge of the integer vector `x[0..len]` as exact text ("p/q" or "inf").
///
/// # Safety
/// `p` must be a live polytope handle; `x` must point to `len` integers;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_polytope_gauge(
    p: *const VeloPolytope,
    x: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> VeloStatus {
    guard(|| {
        let p = handle(p)?;
        if x.is_null() && len > 0 {
            return Err(fail(VeloStatus::NullPointer, "null vector"));
        }
        let xs: &[i64] = if len == 0 { &[] } else { std::slice::from_raw_parts(x, len) };
        let g = core(gauge_norm(&p.0, &RationalVec::from_ints(xs)))?;
        put_string(out, g.to_string())
    })
}

/// Whether `inner ⊆ outer`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_polytope_contains(
    outer: *const VeloPolytope,
    inner: *const VeloPolytope,
    out: *mut bool,
) -> VeloStatus {
    guard(|| {
        let r = core(contains_polytope(&handle(outer)?.0, &handle(inner)?.0))?;
        if out.is_null() {
            return Err(fail(VeloStatus::NullPointer, "null out-pointer"));
        }
        *out = r;
        Ok(())
    })
}

/// A graph whose velocity polytope is `p`.
///
/// # Safety
/// `p` must be a live polytope handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn velo_realize(p: *const VeloPolytope, out: *mut *mut VeloGraph) -> VeloStatus {
    guard(|| {
        let g = core(realize(&handle(p)?.0))?;
        put(out, VeloGraph(g))
    })
}
