//! C ABI over `octoma`.
//!
//! Objects are opaque handles created by `*_parse`/`*_new` functions and
//! released with the matching `*_free`. Every fallible function returns an
//! [`OctomaStatus`]; on failure the message is available from
//! [`octoma_last_error`] until the next call on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and must
//! be released with [`octoma_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use octoma::herm2::HermMatrix2;
use octoma::monge_ampere::{FJson, MaConfig};
use octoma::octonion::Octonion;
use octoma::poly::{parse_poly_file, Poly16};
use octoma::polycalc::{closed_current_residual, closed_current_residual_scalar, format_herm_poly, hess_oct, parse_herm_poly, HermPolyMatrix};
use octoma::syzygy::{compare_modules, parse_modvecs, syzygy_kernel, ten_quadrics, ModuleOrder};
use octoma::verify::{run_suite, Backend};
use octoma::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OctomaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    NotPositiveDefinite = 5,
    MaxIterations = 6,
    SingularSystem = 7,
    Domain = 8,
    UnknownSuite = 9,
    Panic = 10,
}

/// A polynomial in the 16 real coordinates `x1_0..x1_7, x2_0..x2_7`.
pub struct OctomaPoly(Poly16);

/// A Hermitian 2×2 octonionic matrix of polynomials.
pub struct OctomaHermPoly(HermPolyMatrix);

/// A parsed solver configuration.
pub struct OctomaMaConfig(MaConfig);

/// An octonion in double precision, basis `1, e1, ..., e7`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OctomaOctonion {
    pub c: [f64; 8],
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OctomaBackend {
    Exact = 0,
    Float = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(OctomaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => OctomaStatus::Parse,
            Error::Config(_) => OctomaStatus::Config,
            Error::NotPositiveDefinite(_) => OctomaStatus::NotPositiveDefinite,
            Error::MaxIterations { .. } => OctomaStatus::MaxIterations,
            Error::SingularNewtonSystem { .. } => OctomaStatus::SingularSystem,
            _ => OctomaStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `f`, recording the error message and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OctomaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OctomaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            OctomaStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(OctomaStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(OctomaStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(OctomaStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(OctomaStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn octoma_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn octoma_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn octoma_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn octoma_octonion_mul(a: OctomaOctonion, b: OctomaOctonion) -> OctomaOctonion {
    OctomaOctonion { c: Octonion::new(a.c).mul(&Octonion::new(b.c)).c }
}

#[no_mangle]
pub extern "C" fn octoma_octonion_conj(a: OctomaOctonion) -> OctomaOctonion {
    OctomaOctonion { c: Octonion::new(a.c).conj().c }
}

#[no_mangle]
pub extern "C" fn octoma_octonion_norm_sq(a: OctomaOctonion) -> f64 {
    Octonion::new(a.c).norm_sq()
}

/// Determinant `ab − |q|²` of the Hermitian matrix `[[a, q], [q*, b]]`.
#[no_mangle]
pub extern "C" fn octoma_herm_det(a: f64, b: f64, q: OctomaOctonion) -> f64 {
    HermMatrix2::new(a, b, Octonion::new(q.c)).det()
}

/// Parses a polynomial; `#` starts a comment.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_poly_parse(src: *const c_char, out: *mut *mut OctomaPoly) -> OctomaStatus {
    guard(|| {
        let p = parse_poly_file(text(src)?)?;
        put(out, Box::into_raw(Box::new(OctomaPoly(p))))
    })
}

/// # Safety
/// `p` must be null or a live handle from [`octoma_poly_parse`].
#[no_mangle]
pub unsafe extern "C" fn octoma_poly_free(p: *mut OctomaPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_poly_to_string(p: *const OctomaPoly, out: *mut *mut c_char) -> OctomaStatus {
    guard(|| put(out, c_string(handle(p)?.0.to_string())))
}

/// Value at a point of `ℝ¹⁶` (`x` has 16 entries).
///
/// # Safety
/// `p` must be a live handle, `x` must point to 16 doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_poly_eval(p: *const OctomaPoly, x: *const f64, out: *mut f64) -> OctomaStatus {
    guard(|| {
        let p = handle(p)?;
        if x.is_null() {
            return Err(Failure(OctomaStatus::NullPointer, "null point".into()));
        }
        let x = std::slice::from_raw_parts(x, 16);
        put(out, p.0.eval_f64(x))
    })
}

/// Octonionic Hessian of a polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_poly_hessian(p: *const OctomaPoly, out: *mut *mut OctomaHermPoly) -> OctomaStatus {
    guard(|| {
        let h = hess_oct(&handle(p)?.0);
        put(out, Box::into_raw(Box::new(OctomaHermPoly(h))))
    })
}

/// Parses `label: polynomial` lines with labels `d1 d2 q0..q7`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_herm_poly_parse(src: *const c_char, out: *mut *mut OctomaHermPoly) -> OctomaStatus {
    guard(|| {
        let h = parse_herm_poly(text(src)?)?;
        put(out, Box::into_raw(Box::new(OctomaHermPoly(h))))
    })
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn octoma_herm_poly_free(h: *mut OctomaHermPoly) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Text in the format read by [`octoma_herm_poly_parse`].
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_herm_poly_to_string(h: *const OctomaHermPoly, out: *mut *mut c_char) -> OctomaStatus {
    guard(|| put(out, c_string(format_herm_poly(&handle(h)?.0))))
}

/// Whether the matrix is a closed current: both octonionic residuals and
/// all 16 scalar residuals vanish.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_herm_poly_is_closed(h: *const OctomaHermPoly, out: *mut bool) -> OctomaStatus {
    guard(|| {
        let h = &handle(h)?.0;
        let (r1, r2) = closed_current_residual(h);
        let scalar = closed_current_residual_scalar(h);
        put(out, r1.is_zero() && r2.is_zero() && scalar.iter().all(Poly16::is_zero))
    })
}

/// Whether the generators in `src` (matrix text format) span the syzygy
/// module of the ten quadrics.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_syzygy_check(src: *const c_char, out: *mut bool) -> OctomaStatus {
    guard(|| {
        let given = parse_modvecs(text(src)?)?;
        let row = ten_quadrics();
        if given.iter().any(|v| v.rank() != row.len()) {
            return Err(Error::Config(format!("generators must have {} entries", row.len())).into());
        }
        let computed = syzygy_kernel(&row).generators;
        put(out, compare_modules(&given, &computed, &ModuleOrder::plain(row.len())).equal())
    })
}

/// Parses a solver configuration (JSON). `nodal_file` is not accepted here;
/// pass nodal values inline as `"f": {"nodal": [...]}`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_ma_config_parse(src: *const c_char, out: *mut *mut OctomaMaConfig) -> OctomaStatus {
    guard(|| {
        let cfg: MaConfig = serde_json::from_str(text(src)?).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        if let Some(FJson::NodalFile(_)) = cfg.f {
            return Err(Error::Config("nodal_file is not supported through the C interface".into()).into());
        }
        cfg.discretization()?;
        put(out, Box::into_raw(Box::new(OctomaMaConfig(cfg))))
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn octoma_ma_config_free(c: *mut OctomaMaConfig) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs the Newton solver; on success `out` receives the solve report as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_ma_solve(c: *const OctomaMaConfig, out: *mut *mut c_char) -> OctomaStatus {
    guard(|| {
        let cfg = &handle(c)?.0;
        let disc = cfg.discretization()?;
        let f = cfg.f_nodal(&disc)?;
        let r = disc.newton_solve(&f, &cfg.settings(), cfg.initial_guess.as_ref())?;
        put(out, c_string(serde_json::to_string(&r).expect("report serializes")))
    })
}

/// Runs one property suite. `count` of 0 selects the suite's default size.
/// `out` receives the suite result as JSON; `passed` whether it had no failures.
///
/// # Safety
/// `name` must be a NUL-terminated string; `passed` and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn octoma_verify_suite(
    name: *const c_char,
    seed: u64,
    count: usize,
    backend: OctomaBackend,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> OctomaStatus {
    guard(|| {
        let backend = match backend {
            OctomaBackend::Exact => Backend::Exact,
            OctomaBackend::Float => Backend::Float,
        };
        let name = text(name)?;
        let r = run_suite(name, seed, (count > 0).then_some(count), backend)
            .map_err(|e| Failure(OctomaStatus::UnknownSuite, e.to_string()))?;
        if passed.is_null() {
            return Err(Failure(OctomaStatus::NullPointer, "null output pointer".into()));
        }
        put(passed, r.passed())?;
        put(out, c_string(serde_json::to_string(&r).expect("result serializes")))
    })
}
