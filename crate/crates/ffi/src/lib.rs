//! C ABI for irrchain.
//!
//! Fields and polynomials are opaque handles created by `irr_*_new` /
//! `irr_*_parse` and released with the matching `irr_*_free`. Fallible calls
//! return an [`IrrStatus`]; on failure [`irr_last_error`] gives a message for
//! the calling thread. Strings returned through out-parameters are owned by
//! the caller and released with [`irr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use irrchain::criteria::main_theorem_check;
use irrchain::sequence::{iterate_chain, ChainSpec, VerifyLevel};
use irrchain::transforms::{cohen_r, r_sigma_t, TransformConfig};
use irrchain::{text, Error, Field, Poly};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Pole = 5,
    BudgetExceeded = 6,
    ChainBroken = 7,
    Internal = 8,
}

/// Chain verification depth for [`irr_chain_generate`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrVerify {
    None = 0,
    Fast = 1,
    Full = 2,
}

/// Opaque finite field handle.
pub struct IrrField(Field);

/// Opaque polynomial handle.
pub struct IrrPoly(Poly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(IrrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => IrrStatus::Parse,
            Error::PoleAtSeed | Error::PoleAtIterate { .. } => IrrStatus::Pole,
            Error::BudgetExceeded(_) | Error::FactorizationBudgetExceeded(_) | Error::OrderOverflow => {
                IrrStatus::BudgetExceeded
            }
            Error::DegreeDropped { .. } => IrrStatus::ChainBroken,
            Error::InternalDescentFailure => IrrStatus::Internal,
            _ => IrrStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: IrrStatus, msg: &str) -> Result<T, Failure> {
    Err(Failure(status, msg.to_string()))
}

/// Run `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> IrrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            IrrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IrrStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return fail(IrrStatus::NullPointer, &format!("{name} is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .or_else(|_| fail(IrrStatus::InvalidUtf8, &format!("{name} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .map_or_else(|| fail(IrrStatus::NullPointer, &format!("{name} is null")), Ok)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(IrrStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).or_else(|_| fail(IrrStatus::Internal, "string contains NUL"))?;
    put(out, s.into_raw())
}

unsafe fn put_poly(out: *mut *mut IrrPoly, p: Poly) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(IrrPoly(p))))
}

/// Message of the last failed call on this thread, or "" after a success.
/// Valid until the next irrchain call on the same thread.
#[no_mangle]
pub extern "C" fn irr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn irr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a field from an order spec such as "7", "5^2" or "3^2^2".
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_field_new(spec: *const c_char, out: *mut *mut IrrField) -> IrrStatus {
    guard(|| {
        let field = text::parse_field(str_arg(spec, "spec")?)?;
        put(out, Box::into_raw(Box::new(IrrField(field))))
    })
}

/// # Safety
/// `field` must be null or a handle from [`irr_field_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn irr_field_free(field: *mut IrrField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order; fails with `BudgetExceeded` if it does not fit in 64 bits.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_field_order(field: *const IrrField, out: *mut u64) -> IrrStatus {
    guard(|| {
        let order = handle(field, "field")?.0.order();
        let order = u64::try_from(order).or_else(|_| fail(IrrStatus::BudgetExceeded, "order exceeds 64 bits"))?;
        put(out, order)
    })
}

/// Parse a polynomial such as "5;3,1" (constant term first).
///
/// # Safety
/// `s` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_poly_parse(s: *const c_char, out: *mut *mut IrrPoly) -> IrrStatus {
    guard(|| {
        let p = text::parse_poly(str_arg(s, "text")?)?;
        put_poly(out, p)
    })
}

/// Polynomial over `field` from integer coefficients, constant term first.
///
/// # Safety
/// `field` must be a live handle, `coeffs` must point to `len` values (or be
/// null with `len == 0`) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_poly_from_coeffs(
    field: *const IrrField,
    coeffs: *const i64,
    len: usize,
    out: *mut *mut IrrPoly,
) -> IrrStatus {
    guard(|| {
        let field = &handle(field, "field")?.0;
        let coeffs = if len == 0 {
            &[][..]
        } else if coeffs.is_null() {
            return fail(IrrStatus::NullPointer, "coeffs is null");
        } else {
            std::slice::from_raw_parts(coeffs, len)
        };
        put_poly(out, Poly::from_ints(field, coeffs))
    })
}

/// # Safety
/// `poly` must be null or a polynomial handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn irr_poly_free(poly: *mut IrrPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Text form of a polynomial; release with [`irr_string_free`].
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_poly_format(poly: *const IrrPoly, out: *mut *mut c_char) -> IrrStatus {
    guard(|| put_string(out, text::format_poly(&handle(poly, "poly")?.0)))
}

/// Degree, or -1 for the zero polynomial.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_poly_degree(poly: *const IrrPoly, out: *mut i64) -> IrrStatus {
    guard(|| {
        let degree = handle(poly, "poly")?.0.degree().map_or(-1, |d| d as i64);
        put(out, degree)
    })
}

/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_poly_is_irreducible(poly: *const IrrPoly, out: *mut bool) -> IrrStatus {
    guard(|| put(out, handle(poly, "poly")?.0.is_irreducible()))
}

/// Monic `(2x)^n g((x^2 + 1)/(2x))`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_cohen_r(g: *const IrrPoly, out: *mut *mut IrrPoly) -> IrrStatus {
    guard(|| {
        let r = cohen_r(&handle(g, "g")?.0)?;
        put_poly(out, r.monic)
    })
}

/// Monic `R_{σ,t}(g)` for a matrix "a,b;c,d" over the field of `g` or its
/// quadratic extension.
///
/// # Safety
/// `g` must be a live handle, `sigma` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_r_sigma_t(
    g: *const IrrPoly,
    sigma: *const c_char,
    t: u32,
    out: *mut *mut IrrPoly,
) -> IrrStatus {
    guard(|| {
        let g = &handle(g, "g")?.0;
        let sigma = parse_sigma(g, str_arg(sigma, "sigma")?)?;
        put_poly(out, r_sigma_t(g, &sigma, t as usize)?.monic)
    })
}

fn parse_sigma(g: &Poly, sigma: &str) -> Result<irrchain::moebius::Mat2, Failure> {
    match text::parse_matrix(g.field(), sigma) {
        Ok(m) => Ok(m),
        Err(Error::Parse { .. }) => Ok(text::parse_matrix(&g.field().extension(2)?, sigma)?),
        Err(e) => Err(e.into()),
    }
}

/// Verdict JSON `{pass, theorem, checks}` for the Moebius power chain with
/// matrix `sigma` and exponent `t`.
///
/// # Safety
/// `g` must be a live handle, `sigma` a NUL-terminated string and `out_json`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_main_theorem_check(
    g: *const IrrPoly,
    sigma: *const c_char,
    t: u32,
    out_json: *mut *mut c_char,
) -> IrrStatus {
    guard(|| {
        let g = &handle(g, "g")?.0;
        let sigma = text::parse_matrix(g.field(), str_arg(sigma, "sigma")?)?;
        let verdict = main_theorem_check(g, &sigma, t as usize)?;
        put_string(out_json, verdict.to_json())
    })
}

/// Iterate a transform given as JSON
/// `{"kind": "general|cohen|mcnay|singer", "q": ..., "sigma"?, "t"?, "c"?, "field_level"?}`
/// and return `{"chain": [...], "report": {...}}` as JSON.
///
/// # Safety
/// `transform_json` must be a NUL-terminated string, `seed` a live handle and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn irr_chain_generate(
    transform_json: *const c_char,
    seed: *const IrrPoly,
    iterations: u32,
    verify: IrrVerify,
    out_json: *mut *mut c_char,
) -> IrrStatus {
    guard(|| {
        let config: TransformConfig = serde_json::from_str(str_arg(transform_json, "transform_json")?)
            .or_else(|e| fail(IrrStatus::Parse, &format!("transform config: {e}")))?;
        let spec = config.resolve()?;
        let level = match verify {
            IrrVerify::None => VerifyLevel::None,
            IrrVerify::Fast => VerifyLevel::Fast,
            IrrVerify::Full => VerifyLevel::Full,
        };
        let chain_spec = ChainSpec::new(handle(seed, "seed")?.0.clone(), spec, iterations as usize).verify(level);
        let (chain, report) = iterate_chain(&chain_spec)?;
        let json = serde_json::json!({
            "chain": chain.iterates.iter().map(Poly::to_string).collect::<Vec<_>>(),
            "report": report,
        });
        put_string(out_json, json.to_string())
    })
}
