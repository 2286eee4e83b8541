use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use padic_roots_ffi::*;

fn parse(p: u64, lit: &str, digits: u32) -> *mut PadicValue {
    let lit = CString::new(lit).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { padic_value_parse(p, lit.as_ptr(), digits, &mut out) };
    assert_eq!(st, PadicStatus::Ok, "{}", last_error());
    out
}

fn last_error() -> String {
    let e = padic_last_error();
    if e.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
    }
}

fn digits(v: *const PadicValue) -> Vec<u64> {
    let mut len = 0;
    let st = unsafe { padic_value_digits(v, ptr::null_mut(), 0, &mut len) };
    if len == 0 {
        assert_eq!(st, PadicStatus::Ok);
        return Vec::new();
    }
    assert_eq!(st, PadicStatus::BufferTooSmall);
    let mut buf = vec![0u64; len];
    assert_eq!(
        unsafe { padic_value_digits(v, buf.as_mut_ptr(), len, &mut len) },
        PadicStatus::Ok
    );
    buf
}

fn roots(r: *const PadicReport) -> Vec<(u64, Vec<u64>)> {
    (0..unsafe { padic_report_root_count(r) })
        .map(|i| {
            let (mut x, mut xi) = (ptr::null_mut(), 0);
            assert_eq!(
                unsafe { padic_report_root(r, i, &mut x, &mut xi) },
                PadicStatus::Ok
            );
            let d = digits(x);
            unsafe { padic_value_free(x) };
            (xi, d)
        })
        .collect()
}

#[test]
fn square_roots_of_six() {
    let a = parse(5, "6", 12);
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { padic_solve_root(2, a, 4, &mut report) },
        PadicStatus::Ok
    );
    let mut verdict = PadicVerdict::EmptySolP;
    assert_eq!(
        unsafe { padic_report_verdict(report, &mut verdict) },
        PadicStatus::Ok
    );
    assert_eq!(verdict, PadicVerdict::Solvable);
    assert_eq!(unsafe { padic_report_kappa(report) }, 2);
    assert_eq!(
        roots(report),
        [(1, vec![1, 3, 0, 4]), (4, vec![4, 1, 4, 0])]
    );

    let text = unsafe { padic_report_to_string(report) };
    assert!(unsafe { CStr::from_ptr(text) }
        .to_str()
        .unwrap()
        .contains("1,3,0,4@0"));
    unsafe {
        padic_string_free(text);
        padic_report_free(report);
        padic_value_free(a);
    }
}

#[test]
fn no_solution_is_a_report() {
    let a = parse(5, "2", 12);
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { padic_solve_root(2, a, 4, &mut report) },
        PadicStatus::Ok
    );
    let mut verdict = PadicVerdict::Solvable;
    unsafe { padic_report_verdict(report, &mut verdict) };
    assert_eq!(verdict, PadicVerdict::EmptySolP);
    assert_eq!(unsafe { padic_report_root_count(report) }, 0);
    let (mut x, mut xi) = (ptr::null_mut(), 0);
    assert_eq!(
        unsafe { padic_report_root(report, 0, &mut x, &mut xi) },
        PadicStatus::IndexOutOfRange
    );
    unsafe {
        padic_report_free(report);
        padic_value_free(a);
    }
}

#[test]
fn check_condition_ii() {
    let a = parse(3, "4", 10);
    let (mut verdict, mut kappa) = (PadicVerdict::Solvable, 99);
    assert_eq!(
        unsafe { padic_check(3, a, &mut verdict, &mut kappa) },
        PadicStatus::Ok
    );
    assert_eq!((verdict, kappa), (PadicVerdict::ConditionIIFailed, 0));
    unsafe { padic_value_free(a) };
}

#[test]
fn polynomial_and_fixed_points() {
    let coeffs: Vec<_> = ["1", "125", "-6"].iter().map(|c| parse(5, c, 12)).collect();
    let ptrs: Vec<*const PadicValue> = coeffs.iter().map(|&c| c as *const _).collect();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { padic_solve_polynomial(ptrs.as_ptr(), ptrs.len(), 3, &mut report) },
        PadicStatus::Ok
    );
    let xis: Vec<u64> = roots(report).into_iter().map(|(xi, _)| xi).collect();
    assert_eq!(xis, [1, 4]);
    unsafe { padic_report_free(report) };
    for c in coeffs {
        unsafe { padic_value_free(c) };
    }

    let [b, c, d] = ["126", "6", "-119"].map(|s| parse(5, s, 40));
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { padic_fixed_points(b, c, d, 2, 4, &mut report) },
        PadicStatus::Ok
    );
    assert_eq!(unsafe { padic_report_root_count(report) }, 3);
    unsafe { padic_report_free(report) };

    let b2 = parse(5, "26", 40);
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { padic_fixed_points(b2, c, d, 2, 4, &mut report) },
        PadicStatus::HypothesisViolated
    );
    assert!(report.is_null());
    assert!(!last_error().is_empty());
    unsafe {
        for v in [b, c, d, b2] {
            padic_value_free(v);
        }
    }
}

#[test]
fn arithmetic_and_errors() {
    let x = parse(7, "1/7", 8);
    let y = parse(7, "3", 8);
    let mut z = ptr::null_mut();
    assert_eq!(
        unsafe { padic_value_arith(PadicOp::Mul, x, y, &mut z) },
        PadicStatus::Ok
    );
    let (mut kind, mut v) = (PadicValuationKind::Infinite, 0);
    assert_eq!(
        unsafe { padic_value_valuation(z, &mut kind, &mut v) },
        PadicStatus::Ok
    );
    assert_eq!((kind, v), (PadicValuationKind::Exact, -1));
    assert_eq!(digits(z)[0], 3);

    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { padic_value_arith(PadicOp::Sub, y, y, &mut w) },
        PadicStatus::PrecisionExhausted
    );

    let other = parse(5, "3", 8);
    assert_eq!(
        unsafe { padic_value_arith(PadicOp::Add, y, other, &mut w) },
        PadicStatus::PrimeMismatch
    );

    let zero = parse(7, "0", 8);
    assert_eq!(
        unsafe { padic_value_arith(PadicOp::Div, y, zero, &mut w) },
        PadicStatus::DivisionByZero
    );
    assert!(w.is_null());

    unsafe {
        for v in [x, y, z, other, zero] {
            padic_value_free(v);
        }
    }
}

#[test]
fn bad_inputs() {
    let mut out = ptr::null_mut();
    let lit = CString::new("6").unwrap();
    assert_eq!(
        unsafe { padic_value_parse(2, lit.as_ptr(), 4, &mut out) },
        PadicStatus::InvalidPrime
    );
    assert_eq!(
        unsafe { padic_value_parse(9, lit.as_ptr(), 4, &mut out) },
        PadicStatus::InvalidPrime
    );
    let junk = CString::new("banana").unwrap();
    assert_eq!(
        unsafe { padic_value_parse(5, junk.as_ptr(), 4, &mut out) },
        PadicStatus::Parse
    );
    assert_eq!(
        unsafe { padic_value_parse(5, ptr::null(), 4, &mut out) },
        PadicStatus::NullPointer
    );
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { padic_solve_root(2, ptr::null(), 4, &mut report) },
        PadicStatus::NullPointer
    );
    assert_eq!(unsafe { padic_report_root_count(ptr::null()) }, 0);
    unsafe {
        padic_value_free(ptr::null_mut());
        padic_report_free(ptr::null_mut());
        padic_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/padic_roots.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "padic_solve_root",
        "padic_fixed_points",
        "PADIC_STATUS_HYPOTHESIS_VIOLATED",
        "typedef struct PadicValue PadicValue",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(status.success());
}
