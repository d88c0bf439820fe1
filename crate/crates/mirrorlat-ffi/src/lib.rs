//! C ABI for `mirrorlat`.
//!
//! Every fallible function returns an [`MlStatus`]; on failure the message is available from
//! [`ml_last_error`] on the same thread. Strings returned through `char **` out-parameters are
//! owned by the caller and released with [`ml_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mirrorlat::connection::{flatness_conditions_check, Kappa};
use mirrorlat::error::Error;
use mirrorlat::hermitian::{self, HermitianGram};
use mirrorlat::rational::parse_q;
use mirrorlat::residues::boundary_spectrum;
use mirrorlat::rootsystem::{Family, RootSystem};
use mirrorlat::schwarz::{enumerate_ball_quotients, schwarz_satisfied};
use mirrorlat::tables::{self, Format};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnsupportedType = 3,
    ParseRational = 4,
    InvalidArgument = 5,
    InvalidNode = 6,
    SpecializationDomain = 7,
    SingularForm = 8,
    SpectralInconsistency = 9,
    DomainViolation = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlFormat {
    Json = 0,
    Csv = 1,
    Md = 2,
}

/// Opaque root system handle.
pub struct MlRootSystem(RootSystem);

/// Opaque Hermitian form handle.
pub struct MlGram(HermitianGram);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MlSignature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MlStatus {
    match e {
        Error::UnsupportedType { .. } => MlStatus::UnsupportedType,
        Error::ParseRational(_) => MlStatus::ParseRational,
        Error::InvalidNode { .. } => MlStatus::InvalidNode,
        Error::SpecializationDomain { .. } => MlStatus::SpecializationDomain,
        Error::SingularForm { .. } => MlStatus::SingularForm,
        Error::SpectralInconsistency { .. } => MlStatus::SpectralInconsistency,
        Error::DomainViolation { .. } => MlStatus::DomainViolation,
        Error::InvalidArgument(_) | Error::InvalidRoot(_) | Error::InvalidFamily { .. } | Error::SingularPoint { .. } => {
            MlStatus::InvalidArgument
        }
    }
}

struct Failure(MlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            MlStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(MlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn kappa_arg(rs: &RootSystem, k: *const c_char, kp: *const c_char) -> Result<Kappa, Failure> {
    let k = parse_q(str_arg(k, "k")?)?;
    let kp = if kp.is_null() { Default::default() } else { parse_q(str_arg(kp, "kp")?)? };
    let kappa = Kappa::new(k, kp);
    kappa.validate(rs.family())?;
    Ok(kappa)
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(MlStatus::Internal, "string contains nul".into()))?;
    write_out(out, c.into_raw(), "out")
}

unsafe fn rs_ref<'a>(rs: *const MlRootSystem) -> Result<&'a RootSystem, Failure> {
    rs.as_ref().map(|r| &r.0).ok_or_else(|| null("root system"))
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn ml_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ml_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the root system of type `family` (an ASCII letter) and rank `rank`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ml_root_system_new(family: c_char, rank: usize, out: *mut *mut MlRootSystem) -> MlStatus {
    guard(|| {
        let f = Family::from_letter(family as u8 as char)
            .ok_or_else(|| Failure(MlStatus::UnsupportedType, format!("unknown family {:?}", family as u8 as char)))?;
        let rs = RootSystem::build(f, rank)?;
        write_out(out, Box::into_raw(Box::new(MlRootSystem(rs))), "out")
    })
}

/// # Safety
/// `rs` must be null or a handle from [`ml_root_system_new`].
#[no_mangle]
pub unsafe extern "C" fn ml_root_system_free(rs: *mut MlRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Rank, or 0 for a null handle.
///
/// # Safety
/// `rs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ml_root_system_rank(rs: *const MlRootSystem) -> usize {
    rs.as_ref().map_or(0, |r| r.0.rank())
}

/// Number of positive roots, or 0 for a null handle.
///
/// # Safety
/// `rs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ml_root_system_positive_roots(rs: *const MlRootSystem) -> usize {
    rs.as_ref().map_or(0, |r| r.0.positive_roots().len())
}

/// Exact flatness check at `(k, k')`; `kp` may be null for `k' = 0`.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn ml_flatness_check(
    rs: *const MlRootSystem,
    k: *const c_char,
    kp: *const c_char,
    all_hold: *mut bool,
) -> MlStatus {
    guard(|| {
        let rs = rs_ref(rs)?;
        let kappa = kappa_arg(rs, k, kp)?;
        write_out(all_hold, flatness_conditions_check(rs, &kappa).all_hold(), "all_hold")
    })
}

/// Boundary residue spectrum at the fundamental coweight `node` (1-based), as JSON.
///
/// # Safety
/// Pointers must be valid; free `json` with [`ml_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ml_boundary_spectrum_json(
    rs: *const MlRootSystem,
    node: usize,
    json: *mut *mut c_char,
) -> MlStatus {
    guard(|| {
        let s = boundary_spectrum(rs_ref(rs)?, node)?;
        write_string(json, serde_json::to_string(&s).expect("serializable"))
    })
}

/// Whether the Schwarz conditions hold at `(k, k')`.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn ml_schwarz_satisfied(
    rs: *const MlRootSystem,
    k: *const c_char,
    kp: *const c_char,
    satisfied: *mut bool,
) -> MlStatus {
    guard(|| {
        let rs = rs_ref(rs)?;
        let kappa = kappa_arg(rs, k, kp)?;
        write_out(satisfied, schwarz_satisfied(rs, &kappa).satisfied, "satisfied")
    })
}

/// Membership of `(k, k')` in the hyperbolic region.
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn ml_in_hyperbolic_region(
    rs: *const MlRootSystem,
    k: *const c_char,
    kp: *const c_char,
    inside: *mut bool,
) -> MlStatus {
    guard(|| {
        let rs = rs_ref(rs)?;
        let kappa = kappa_arg(rs, k, kp)?;
        write_out(inside, hermitian::in_hyperbolic_region(rs, &kappa), "inside")
    })
}

/// Ball-quotient parameters of this type as a JSON array.
///
/// # Safety
/// Pointers must be valid; free `json` with [`ml_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ml_enumerate_json(rs: *const MlRootSystem, json: *mut *mut c_char) -> MlStatus {
    guard(|| {
        let entries = enumerate_ball_quotients(rs_ref(rs)?);
        write_string(json, serde_json::to_string(&entries).expect("serializable"))
    })
}

/// Hermitian form `h(κ)` for `κ` in the restricted region.
///
/// # Safety
/// Pointers must be valid; free the handle with [`ml_gram_free`].
#[no_mangle]
pub unsafe extern "C" fn ml_gram_new(
    rs: *const MlRootSystem,
    k: *const c_char,
    kp: *const c_char,
    out: *mut *mut MlGram,
) -> MlStatus {
    guard(|| {
        let rs = rs_ref(rs)?;
        let kappa = kappa_arg(rs, k, kp)?;
        let g = hermitian::gram(rs, &kappa)?;
        write_out(out, Box::into_raw(Box::new(MlGram(g))), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from [`ml_gram_new`].
#[no_mangle]
pub unsafe extern "C" fn ml_gram_free(g: *mut MlGram) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Matrix dimension `n + 1`, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ml_gram_dim(g: *const MlGram) -> usize {
    g.as_ref().map_or(0, |g| g.0.dim())
}

/// Entry `(row, col)` as real and imaginary parts.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ml_gram_entry(g: *const MlGram, row: usize, col: usize, re: *mut f64, im: *mut f64) -> MlStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("gram"))?.0;
        let n = g.dim();
        if row >= n || col >= n {
            return Err(Failure(MlStatus::InvalidArgument, format!("entry ({row}, {col}) outside {n}x{n}")));
        }
        let z = g.entries[(row, col)];
        write_out(re, z.re, "re")?;
        write_out(im, z.im, "im")
    })
}

/// Numeric determinant.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ml_gram_det(g: *const MlGram, det: *mut f64) -> MlStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("gram"))?.0;
        write_out(det, g.det(), "det")
    })
}

/// Signature of `h(κ)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ml_gram_signature(g: *const MlGram, out: *mut MlSignature) -> MlStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("gram"))?.0;
        let s = hermitian::signature(g);
        write_out(out, MlSignature { pos: s.pos, neg: s.neg, zero: s.zero }, "out")
    })
}

/// Regenerates table 1, 2 or 3.
///
/// # Safety
/// `out` must be valid; free the string with [`ml_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ml_table(which: u8, format: MlFormat, out: *mut *mut c_char) -> MlStatus {
    guard(|| {
        let format = match format {
            MlFormat::Json => Format::Json,
            MlFormat::Csv => Format::Csv,
            MlFormat::Md => Format::Md,
        };
        write_string(out, tables::table(which, format)?)
    })
}
