//! C ABI over `padic-roots`.
//!
//! Values and reports are opaque heap handles owned by the caller and
//! released with `padic_value_free` / `padic_report_free`. Every fallible
//! call returns a [`PadicStatus`]; on failure a message is available from
//! `padic_last_error` until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use padic_roots::padic::{arith, ArithOp, Literal, PadicError, PadicNumber, Prime, Valuation};
use padic_roots::poly::{MonicPolynomial, PolyError};
use padic_roots::solvers::{
    self, FixedPointProblem, FixedPointReport, NoSolutionReason, SolutionReport, SolveError,
    Verdict,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidPrime = 4,
    PrimeMismatch = 5,
    DivisionByZero = 6,
    PrecisionExhausted = 7,
    InsufficientPrecision = 8,
    InvalidArgument = 9,
    HypothesisViolated = 10,
    VerificationFailed = 11,
    IndexOutOfRange = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicValuationKind {
    /// The valuation is known exactly.
    Exact = 0,
    /// Only a lower bound is known: the value is `O(p^v)`.
    AtLeast = 1,
    /// Exact zero.
    Infinite = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicVerdict {
    Solvable = 0,
    NormNotKthPower = 1,
    EmptySolP = 2,
    ConditionIIFailed = 3,
}

/// Opaque p-adic number.
pub struct PadicValue(PadicNumber);

enum ReportKind {
    Roots(SolutionReport),
    FixedPoints(FixedPointReport),
}

/// Opaque solver report.
pub struct PadicReport(ReportKind);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PadicStatus, String);

impl Failure {
    fn new(status: PadicStatus, msg: impl Into<String>) -> Self {
        Failure(status, msg.into())
    }
}

impl From<PadicError> for Failure {
    fn from(e: PadicError) -> Self {
        let status = match e {
            PadicError::EvenPrime | PadicError::NotPrime(_) => PadicStatus::InvalidPrime,
            PadicError::PrimeMismatch(..) => PadicStatus::PrimeMismatch,
            PadicError::ZeroDenominator | PadicError::ZeroInverse => PadicStatus::DivisionByZero,
            PadicError::ZeroDecompose => PadicStatus::InvalidArgument,
            PadicError::DigitOutOfRange { .. } => PadicStatus::Parse,
            PadicError::PrecisionExhausted { .. } => PadicStatus::PrecisionExhausted,
        };
        Failure(status, e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Padic(e) => e.into(),
            PolyError::NotIntegral { .. } => {
                Failure::new(PadicStatus::HypothesisViolated, e.to_string())
            }
            _ => Failure::new(PadicStatus::InvalidArgument, e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let status = match &e {
            SolveError::Padic(p) => return p.clone().into(),
            SolveError::Poly(p) => return p.clone().into(),
            SolveError::ZeroInput => PadicStatus::InvalidArgument,
            SolveError::InsufficientPrecision { .. } => PadicStatus::InsufficientPrecision,
            SolveError::VerificationFailed { .. } => PadicStatus::VerificationFailed,
            _ => PadicStatus::HypothesisViolated,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PadicStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PadicStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PadicStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(PadicStatus::NullPointer, "null pointer argument"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            PadicStatus::NullPointer,
            "null output pointer",
        ));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn prime(p: u64) -> Result<Prime, Failure> {
    Ok(Prime::new(p)?)
}

/// Message for the most recent failure on this thread, or null.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn padic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from a `padic_*_to_string` call and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn padic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an integer (`-71`), rational (`6/25`) or digit-form (`1,3,0,4@0`)
/// literal over `Q_p`. Integers and rationals are expanded to
/// `rel_precision` digits; digit-form literals carry their own precision.
///
/// # Safety
/// `literal` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn padic_value_parse(
    p: u64,
    literal: *const c_char,
    rel_precision: u32,
    out: *mut *mut PadicValue,
) -> PadicStatus {
    guard(|| {
        let prime = prime(p)?;
        let text = CStr::from_ptr(deref(literal)?)
            .to_str()
            .map_err(|e| Failure::new(PadicStatus::InvalidUtf8, e.to_string()))?;
        let lit: Literal = text
            .parse()
            .map_err(|e: padic_roots::padic::LiteralError| {
                Failure::new(PadicStatus::Parse, e.to_string())
            })?;
        put(out, boxed(PadicValue(lit.to_padic(prime, rel_precision)?)))
    })
}

/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn padic_value_from_i64(
    p: u64,
    n: i64,
    rel_precision: u32,
    out: *mut *mut PadicValue,
) -> PadicStatus {
    guard(|| {
        let prime = prime(p)?;
        put(
            out,
            boxed(PadicValue(PadicNumber::from_integer(
                n,
                prime,
                rel_precision,
            ))),
        )
    })
}

/// # Safety
/// `v` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn padic_value_free(v: *mut PadicValue) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// `out = x op y`. Add, Sub and Mul fail with `PrecisionExhausted` when every
/// known digit cancels.
///
/// # Safety
/// `x` and `y` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn padic_value_arith(
    op: PadicOp,
    x: *const PadicValue,
    y: *const PadicValue,
    out: *mut *mut PadicValue,
) -> PadicStatus {
    guard(|| {
        let (x, y) = (&deref(x)?.0, &deref(y)?.0);
        let r = match op {
            PadicOp::Add => arith(x, y, ArithOp::Add)?,
            PadicOp::Sub => arith(x, y, ArithOp::Sub)?,
            PadicOp::Mul => arith(x, y, ArithOp::Mul)?,
            PadicOp::Div => x.div(y)?,
        };
        put(out, boxed(PadicValue(r)))
    })
}

/// # Safety
/// `v` must be a live handle; `kind` and `valuation` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn padic_value_valuation(
    v: *const PadicValue,
    kind: *mut PadicValuationKind,
    valuation: *mut i64,
) -> PadicStatus {
    guard(|| {
        let (k, n) = match deref(v)?.0.valuation() {
            Valuation::Exact(n) => (PadicValuationKind::Exact, n),
            Valuation::AtLeast(n) => (PadicValuationKind::AtLeast, n),
            Valuation::Infinite => (PadicValuationKind::Infinite, 0),
        };
        put(kind, k)?;
        put(valuation, n)
    })
}

/// The prime of `v`, or 0 if `v` is null.
///
/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn padic_value_prime(v: *const PadicValue) -> u64 {
    v.as_ref().map_or(0, |v| v.0.prime().get())
}

/// Copy the known digits of `v`, least significant first, into `buf`.
/// `*len` always receives the digit count; if `cap` is smaller, nothing is
/// copied and `BufferTooSmall` is returned. `buf` may be null when `cap` is 0.
///
/// # Safety
/// `v` must be a live handle, `buf` valid for `cap` writes, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn padic_value_digits(
    v: *const PadicValue,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> PadicStatus {
    guard(|| {
        let digits = deref(v)?.0.digits();
        put(len, digits.len())?;
        if cap < digits.len() {
            return Err(Failure::new(
                PadicStatus::BufferTooSmall,
                format!("need room for {} digits, got {cap}", digits.len()),
            ));
        }
        if !digits.is_empty() {
            if buf.is_null() {
                return Err(Failure::new(PadicStatus::NullPointer, "null digit buffer"));
            }
            ptr::copy_nonoverlapping(digits.as_ptr(), buf, digits.len());
        }
        Ok(())
    })
}

/// Digit form of `v`, e.g. `1,3,0,4@0`. Free with `padic_string_free`.
///
/// # Safety
/// `v` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn padic_value_to_string(v: *const PadicValue) -> *mut c_char {
    match v.as_ref() {
        Some(v) => into_c_string(v.0.to_string()),
        None => ptr::null_mut(),
    }
}

fn verdict(v: &Verdict) -> PadicVerdict {
    match v {
        Verdict::Solvable { .. } => PadicVerdict::Solvable,
        Verdict::NoSolution(NoSolutionReason::NormNotKthPower) => PadicVerdict::NormNotKthPower,
        Verdict::NoSolution(NoSolutionReason::EmptySolP) => PadicVerdict::EmptySolP,
        Verdict::NoSolution(NoSolutionReason::ConditionIIFailed) => PadicVerdict::ConditionIIFailed,
    }
}

/// Decide solvability of `x^k = a` without lifting.
///
/// # Safety
/// `a` must be a live handle; `out_verdict` and `out_kappa` writable.
#[no_mangle]
pub unsafe extern "C" fn padic_check(
    k: u64,
    a: *const PadicValue,
    out_verdict: *mut PadicVerdict,
    out_kappa: *mut usize,
) -> PadicStatus {
    guard(|| {
        let s = solvers::check_solvability(k, &deref(a)?.0)?;
        let kappa = match s.verdict {
            Verdict::Solvable { kappa_p } => kappa_p,
            Verdict::NoSolution(_) => 0,
        };
        put(out_verdict, verdict(&s.verdict))?;
        put(out_kappa, kappa)
    })
}

/// All roots of `x^k = a` to `n_digits` digits. A `NoSolution` verdict is a
/// successful report with zero roots.
///
/// # Safety
/// `a` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn padic_solve_root(
    k: u64,
    a: *const PadicValue,
    n_digits: u32,
    out: *mut *mut PadicReport,
) -> PadicStatus {
    guard(|| {
        let report = solvers::solve_monomial(k, &deref(a)?.0, n_digits)?;
        put(out, boxed(PadicReport(ReportKind::Roots(report))))
    })
}

/// Roots in `Z_p` of a monic polynomial given by `len` descending
/// coefficients, the first of which must be 1.
///
/// # Safety
/// `coeffs` must point to `len` live handles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn padic_solve_polynomial(
    coeffs: *const *const PadicValue,
    len: usize,
    n_digits: u32,
    out: *mut *mut PadicReport,
) -> PadicStatus {
    guard(|| {
        if len == 0 {
            return Err(Failure::new(
                PadicStatus::InvalidArgument,
                "empty coefficient list",
            ));
        }
        let handles = std::slice::from_raw_parts(deref(coeffs)?, len);
        let values = handles
            .iter()
            .map(|&h| deref(h).map(|v| v.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let poly = MonicPolynomial::from_descending(values)?;
        let report = solvers::solve_polynomial(&poly, n_digits)?;
        put(out, boxed(PadicReport(ReportKind::Roots(report))))
    })
}

/// Fixed points of `f(x) = ((b x - c) / (x - d))^k`. Fails with
/// `HypothesisViolated` when the parameters are outside the supported regime.
///
/// # Safety
/// `b`, `c`, `d` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn padic_fixed_points(
    b: *const PadicValue,
    c: *const PadicValue,
    d: *const PadicValue,
    k: u64,
    n_digits: u32,
    out: *mut *mut PadicReport,
) -> PadicStatus {
    guard(|| {
        let prob = FixedPointProblem::new(
            deref(b)?.0.clone(),
            deref(c)?.0.clone(),
            deref(d)?.0.clone(),
            k,
        )?;
        let report = solvers::fixed_points(&prob, n_digits)?;
        put(out, boxed(PadicReport(ReportKind::FixedPoints(report))))
    })
}

/// # Safety
/// `r` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn padic_report_free(r: *mut PadicReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Fixed-point reports are always `Solvable`.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn padic_report_verdict(
    r: *const PadicReport,
    out: *mut PadicVerdict,
) -> PadicStatus {
    guard(|| {
        let v = match &deref(r)?.0 {
            ReportKind::Roots(rep) => verdict(&rep.verdict),
            ReportKind::FixedPoints(_) => PadicVerdict::Solvable,
        };
        put(out, v)
    })
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn padic_report_kappa(r: *const PadicReport) -> usize {
    match r.as_ref().map(|r| &r.0) {
        Some(ReportKind::Roots(rep)) => rep.kappa_p,
        Some(ReportKind::FixedPoints(rep)) => rep.kappa_p,
        None => 0,
    }
}

/// Number of roots, or of fixed points (including `x = 1`).
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn padic_report_root_count(r: *const PadicReport) -> usize {
    match r.as_ref().map(|r| &r.0) {
        Some(ReportKind::Roots(rep)) => rep.roots.len(),
        Some(ReportKind::FixedPoints(rep)) => rep.fixed_points.len(),
        None => 0,
    }
}

/// A fresh handle for root `i` and its residue class `xi` mod p. For fixed
/// points `xi` is the leading digit of `y = (b x - c) / (x - d)`.
///
/// # Safety
/// `r` must be a live handle; `out_root` and `out_xi` writable.
#[no_mangle]
pub unsafe extern "C" fn padic_report_root(
    r: *const PadicReport,
    i: usize,
    out_root: *mut *mut PadicValue,
    out_xi: *mut u64,
) -> PadicStatus {
    guard(|| {
        let (x, xi) = match &deref(r)?.0 {
            ReportKind::Roots(rep) => rep.roots.get(i).map(|root| (&root.root, root.xi)),
            ReportKind::FixedPoints(rep) => rep.fixed_points.get(i).map(|fp| (&fp.x, fp.xi)),
        }
        .ok_or_else(|| {
            Failure::new(
                PadicStatus::IndexOutOfRange,
                format!("no root at index {i}"),
            )
        })?;
        put(out_xi, xi)?;
        put(out_root, boxed(PadicValue(x.clone())))
    })
}

/// Human-readable report. Free with `padic_string_free`.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn padic_report_to_string(r: *const PadicReport) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        return ptr::null_mut();
    };
    let text = match &r.0 {
        ReportKind::Roots(rep) => rep.to_string(),
        ReportKind::FixedPoints(rep) => {
            let mut s = format!("{}\nkappa_p = {}\n", rep.problem, rep.kappa_p);
            for fp in &rep.fixed_points {
                let _ = writeln!(s, "  x = {}  (y = {})", fp.x, fp.y);
            }
            s
        }
    };
    into_c_string(text)
}
