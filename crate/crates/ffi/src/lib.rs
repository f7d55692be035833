//! C ABI over `quatflag`.
//!
//! Every fallible function returns a [`QfStatus`] and writes results through
//! out-pointers. On failure a message is kept per thread and can be read with
//! [`qf_last_error`]. Objects with internal structure are passed as opaque
//! handles that the caller releases with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use quatflag::roots::RootSystem;
use quatflag::s4lb::{lb_radial_residual, RadialSolution};
use quatflag::verify::{self, Report, RunConfig, Suite};
use quatflag::{Error, Quaternion, Tolerances};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed input: bad UTF-8, unknown suite name, unparsable value.
    InvalidArgument = 2,
    /// A mathematical precondition failed (rank, termination, pole, ...).
    DomainError = 3,
    /// The caller's buffer is too small; the required size was written.
    BufferTooSmall = 4,
    /// Index past the end of a handle's contents.
    OutOfRange = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Quaternion `w + x i + y j + z k`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<QfQuaternion> for Quaternion {
    fn from(q: QfQuaternion) -> Self {
        Quaternion::new(q.w, q.x, q.y, q.z)
    }
}

impl From<Quaternion> for QfQuaternion {
    fn from(q: Quaternion) -> Self {
        let [w, x, y, z] = q.to_array();
        QfQuaternion { w, x, y, z }
    }
}

/// Opaque root system of `sp(n)`.
pub struct QfRootSystem(RootSystem);

/// Opaque radial solution on `S^4`.
pub struct QfRadial(RadialSolution);

/// Opaque verification report.
pub struct QfReport {
    report: Report,
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: QfStatus, msg: impl Into<String>) -> QfStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> QfStatus {
    let status = match e {
        Error::UnknownSuite(_) | Error::Parse(_) => QfStatus::InvalidArgument,
        _ => QfStatus::DomainError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> QfStatus + UnwindSafe) -> QfStatus {
    catch_unwind(f).unwrap_or_else(|_| fail(QfStatus::Panic, "internal panic"))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(QfStatus::NullArgument, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Copy `s` plus a terminating NUL into `buf`. `needed` (if non-null)
/// receives the size including the NUL, whether or not it fit. A short
/// buffer is not recorded as the last error, so the size query in
/// [`qf_last_error`] leaves the message intact.
unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> QfStatus {
    let n = s.len() + 1;
    if !needed.is_null() {
        *needed = n;
    }
    if buf.is_null() || cap < n {
        return QfStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    QfStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failure on this thread. Same size protocol as the
/// other string getters.
///
/// # Safety
/// `buf` must be valid for `cap` bytes or null; `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qf_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> QfStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    write_str(&msg, buf, cap, needed)
}

/// Hamilton product `a b`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_quaternion_mul(a: QfQuaternion, b: QfQuaternion, out: *mut QfQuaternion) -> QfStatus {
    non_null!(out);
    *out = (Quaternion::from(a) * Quaternion::from(b)).into();
    QfStatus::Ok
}

/// 2x2 complex image of `q`, row-major, as `re, im` pairs (8 doubles).
///
/// # Safety
/// `out` must be writable for 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn qf_quaternion_to_m2c(q: QfQuaternion, out: *mut f64) -> QfStatus {
    non_null!(out);
    let m = Quaternion::from(q).to_m2c();
    for (i, c) in m.entries().iter().enumerate() {
        *out.add(2 * i) = c.re;
        *out.add(2 * i + 1) = c.im;
    }
    QfStatus::Ok
}

/// Roots of `sp(n)`, `n >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_root_system_new(n: usize, out: *mut *mut QfRootSystem) -> QfStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| match RootSystem::generate(n) {
        Ok(rs) => {
            unsafe { *out = Box::into_raw(Box::new(QfRootSystem(rs))) };
            QfStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Number of roots; 0 for a null handle.
///
/// # Safety
/// `rs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_root_system_len(rs: *const QfRootSystem) -> usize {
    rs.as_ref().map_or(0, |r| r.0.len())
}

/// Rank `n`, which is also the length of each root; 0 for a null handle.
///
/// # Safety
/// `rs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_root_system_rank(rs: *const QfRootSystem) -> usize {
    rs.as_ref().map_or(0, |r| r.0.n)
}

/// Coefficients of root `index` in the `L` basis, written to `out[0..rank]`.
///
/// # Safety
/// `rs` must be a live handle; `out` writable for `cap` ints.
#[no_mangle]
pub unsafe extern "C" fn qf_root_system_get(
    rs: *const QfRootSystem,
    index: usize,
    out: *mut i32,
    cap: usize,
) -> QfStatus {
    non_null!(rs, out);
    let rs = &(*rs).0;
    let Some(root) = rs.roots.get(index) else {
        return fail(QfStatus::OutOfRange, format!("root {index} of {}", rs.len()));
    };
    if cap < root.len() {
        return fail(
            QfStatus::BufferTooSmall,
            format!("need {} ints, have {cap}", root.len()),
        );
    }
    ptr::copy_nonoverlapping(root.as_ptr(), out, root.len());
    QfStatus::Ok
}

/// # Safety
/// `rs` must be null or a handle from [`qf_root_system_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qf_root_system_free(rs: *mut QfRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

fn radial_out(out: *mut *mut QfRadial, r: quatflag::Result<RadialSolution>) -> QfStatus {
    match r {
        Ok(s) => {
            unsafe { *out = Box::into_raw(Box::new(QfRadial(s))) };
            QfStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// The closed-form zero mode `f0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_radial_f0(out: *mut *mut QfRadial) -> QfStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| radial_out(out, Ok(RadialSolution::f0())))
}

/// Terminating series solution with `l = two_ell / 2` and `N = n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qf_radial_g_ell(two_ell: u32, n: u32, out: *mut *mut QfRadial) -> QfStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| radial_out(out, RadialSolution::g_ell(two_ell, n)))
}

/// Value at polar angle `omega`.
///
/// # Safety
/// `r` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_radial_value(r: *const QfRadial, omega: f64, out: *mut f64) -> QfStatus {
    non_null!(r, out);
    *out = (*r).0.value(omega);
    QfStatus::Ok
}

/// Normalized residual of the radial Laplace-Beltrami equation at `omega`.
///
/// # Safety
/// `r` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_radial_residual(r: *const QfRadial, omega: f64, out: *mut f64) -> QfStatus {
    non_null!(r, out);
    let sol = &(*r).0;
    guard(|| match lb_radial_residual(sol, omega) {
        Ok(v) => {
            unsafe { *out = v };
            QfStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// `theta^2` of the solution; 0 for `f0`.
///
/// # Safety
/// `r` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_radial_theta_sq(r: *const QfRadial, out: *mut f64) -> QfStatus {
    non_null!(r, out);
    *out = (*r).0.theta_sq;
    QfStatus::Ok
}

/// # Safety
/// `r` must be null or a handle from a `qf_radial_*` constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qf_radial_free(r: *mut QfRadial) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Run a verification suite ("all", "coset", "forms", "liealg", "s4", "em",
/// "dynamics", "roots"). `trials == 0` selects the default.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qf_verify_run(
    suite: *const c_char,
    seed: u64,
    trials: usize,
    out: *mut *mut QfReport,
) -> QfStatus {
    non_null!(suite, out);
    *out = ptr::null_mut();
    let Ok(name) = CStr::from_ptr(suite).to_str() else {
        return fail(QfStatus::InvalidArgument, "suite name is not UTF-8");
    };
    let name = name.to_owned();
    guard(move || {
        let suites = match Suite::parse(&name) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let defaults = RunConfig::default();
        let cfg = RunConfig {
            seed,
            trials: if trials == 0 { defaults.trials } else { trials },
            tol: Tolerances::default(),
        };
        let report = verify::run(&suites, &cfg);
        let json = serde_json::to_string(&report).expect("report serializes");
        unsafe { *out = Box::into_raw(Box::new(QfReport { report, json })) };
        QfStatus::Ok
    })
}

/// 1 if every check passed, 0 otherwise or for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_report_passed(r: *const QfReport) -> i32 {
    r.as_ref().is_some_and(|r| r.report.passed) as i32
}

/// Total number of checks across suites.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qf_report_check_count(r: *const QfReport) -> usize {
    r.as_ref()
        .map_or(0, |r| r.report.suites.iter().map(|s| s.checks.len()).sum())
}

/// The report as compact JSON. Pass a null buffer to query the size.
///
/// # Safety
/// `r` must be a live handle; `buf` valid for `cap` bytes or null; `needed`
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn qf_report_json(
    r: *const QfReport,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> QfStatus {
    non_null!(r);
    write_str(&(*r).json, buf, cap, needed)
}

/// # Safety
/// `r` must be null or a handle from [`qf_verify_run`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qf_report_free(r: *mut QfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
