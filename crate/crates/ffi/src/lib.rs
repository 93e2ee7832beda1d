//! C ABI over `diagram_growth`.
//!
//! Families and sequences are opaque heap handles released with their
//! `*_free` function. Exact integers cross the boundary as NUL-terminated
//! decimal strings written into caller buffers: on `DG_STATUS_BUFFER_TOO_SMALL`
//! the required size (including the NUL) is still stored in `*needed`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diagram_growth::asymptotics::{self, RootOptions};
use diagram_growth::families;
use diagram_growth::guards::Guards;
use diagram_growth::{DiagramFamily, GrowthError, Provenance};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    GuardExceeded = 4,
    Internal = 5,
}

/// Computation path for `dg_sequence_new`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgVia {
    ClosedForm = 0,
    Egf = 1,
    Oracle = 2,
}

pub struct DgFamily {
    inner: DiagramFamily,
}

pub struct DgSequence {
    values: Vec<String>,
}

fn status_of(e: &GrowthError) -> DgStatus {
    match e {
        GrowthError::GuardExceeded { .. } => DgStatus::GuardExceeded,
        GrowthError::InvalidParameter(_)
        | GrowthError::UnsupportedFamily(_)
        | GrowthError::LambertDomain(_) => DgStatus::InvalidArgument,
        _ => DgStatus::Internal,
    }
}

fn guarded(f: impl FnOnce() -> DgStatus) -> DgStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DgStatus::Internal)
}

unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> DgStatus {
    if needed.is_null() {
        return DgStatus::NullPointer;
    }
    let want = s.len() + 1;
    *needed = want;
    if buf.is_null() || len < want {
        return DgStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    DgStatus::Ok
}

fn exact_checked(family: DiagramFamily, n: usize) -> Result<String, DgStatus> {
    let limit = Guards::from_env().exact_limit(family);
    if n > limit {
        return Err(DgStatus::GuardExceeded);
    }
    families::bn(family, n)
        .map(|v| v.to_string())
        .map_err(|e| status_of(&e))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn dg_status_message(status: DgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        DgStatus::Ok => c"ok",
        DgStatus::NullPointer => c"null pointer argument",
        DgStatus::InvalidArgument => c"invalid argument",
        DgStatus::BufferTooSmall => c"buffer too small",
        DgStatus::GuardExceeded => c"size guard exceeded",
        DgStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Creates a family from its kebab-case name. `k` is read only for `cob`
/// and `q` only for `glfq`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_family_new(
    name: *const c_char,
    k: u32,
    q: u64,
    out: *mut *mut DgFamily,
) -> DgStatus {
    guarded(|| {
        if name.is_null() || out.is_null() {
            return DgStatus::NullPointer;
        }
        let Ok(name) = CStr::from_ptr(name).to_str() else {
            return DgStatus::InvalidArgument;
        };
        match DiagramFamily::from_name(name, Some(k), Some(q)) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(DgFamily { inner: f }));
                DgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `family` must be null or a handle from `dg_family_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dg_family_free(family: *mut DgFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Writes the family's display name, e.g. `cob(k=2)`.
///
/// # Safety
/// `family` must be a live handle; `buf` must hold `len` bytes; `needed`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn dg_family_name(
    family: *const DgFamily,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> DgStatus {
    guarded(|| match family.as_ref() {
        None => DgStatus::NullPointer,
        Some(f) => write_str(&f.inner.to_string(), buf, len, needed),
    })
}

/// Exact `b_n` as a decimal string.
///
/// # Safety
/// As for `dg_family_name`.
#[no_mangle]
pub unsafe extern "C" fn dg_bn(
    family: *const DgFamily,
    n: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> DgStatus {
    guarded(|| {
        let Some(f) = family.as_ref() else {
            return DgStatus::NullPointer;
        };
        match exact_checked(f.inner, n) {
            Ok(s) => write_str(&s, buf, len, needed),
            Err(st) => st,
        }
    })
}

/// `ln b_n` from the exact value.
///
/// # Safety
/// `family` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dg_ln_bn(family: *const DgFamily, n: usize, out: *mut f64) -> DgStatus {
    guarded(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return DgStatus::NullPointer;
        };
        let limit = Guards::from_env().exact_limit(f.inner);
        if n > limit {
            return DgStatus::GuardExceeded;
        }
        match families::ln_bn(f.inner, n) {
            Ok(v) => {
                *out = v;
                DgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Computes `b_0..=b_{n_max}` along the chosen path.
///
/// # Safety
/// `family` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dg_sequence_new(
    family: *const DgFamily,
    n_max: usize,
    via: DgVia,
    out: *mut *mut DgSequence,
) -> DgStatus {
    guarded(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return DgStatus::NullPointer;
        };
        let guards = Guards::from_env();
        let (via, limit) = match via {
            DgVia::ClosedForm => (Provenance::ClosedForm, guards.exact_limit(f.inner)),
            DgVia::Egf => (Provenance::Egf, guards.exact_limit(f.inner)),
            DgVia::Oracle => (Provenance::Oracle, guards.oracle_limit(f.inner)),
        };
        if n_max > limit {
            return DgStatus::GuardExceeded;
        }
        match families::sequence_via(f.inner, n_max, via) {
            Ok(seq) => {
                let values = seq.values.iter().map(|v| v.to_string()).collect();
                *out = Box::into_raw(Box::new(DgSequence { values }));
                DgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Number of terms, or 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dg_sequence_len(seq: *const DgSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.values.len())
}

/// Term `i` as a decimal string.
///
/// # Safety
/// As for `dg_family_name`, with a live sequence handle.
#[no_mangle]
pub unsafe extern "C" fn dg_sequence_get(
    seq: *const DgSequence,
    i: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> DgStatus {
    guarded(|| match seq.as_ref() {
        None => DgStatus::NullPointer,
        Some(s) => match s.values.get(i) {
            None => DgStatus::InvalidArgument,
            Some(v) => write_str(v, buf, len, needed),
        },
    })
}

/// # Safety
/// `seq` must be null or a handle from `dg_sequence_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dg_sequence_free(seq: *mut DgSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Principal-branch Lambert W for `x >= 0`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dg_lambert_w(x: f64, out: *mut f64) -> DgStatus {
    guarded(|| {
        if out.is_null() {
            return DgStatus::NullPointer;
        }
        match asymptotics::lambert_w(x) {
            Ok(w) => {
                *out = w;
                DgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// `ln` of the asymptotic approximant for `b_n`; `*is_full` is set to 1
/// for a full-`b_n` formula and 0 for the root-growth fallback.
///
/// # Safety
/// `family` must be a live handle; `out` and `is_full` valid.
#[no_mangle]
pub unsafe extern "C" fn dg_log_bn_estimate(
    family: *const DgFamily,
    n: usize,
    out: *mut f64,
    is_full: *mut i32,
) -> DgStatus {
    guarded(|| {
        let (Some(f), false, false) = (family.as_ref(), out.is_null(), is_full.is_null()) else {
            return DgStatus::NullPointer;
        };
        match asymptotics::log_bn_estimate(f.inner, n) {
            Ok(e) => {
                *out = e.log;
                *is_full = (e.kind == asymptotics::ModelKind::FullBn) as i32;
                DgStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Target for `b_n^(1/n)`.
///
/// # Safety
/// `family` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dg_root_target(
    family: *const DgFamily,
    n: usize,
    partition_correction: bool,
    out: *mut f64,
) -> DgStatus {
    guarded(|| {
        let (Some(f), false) = (family.as_ref(), out.is_null()) else {
            return DgStatus::NullPointer;
        };
        if n < 2 {
            return DgStatus::InvalidArgument;
        }
        *out = asymptotics::root_target(f.inner, n, RootOptions { partition_correction });
        DgStatus::Ok
    })
}
