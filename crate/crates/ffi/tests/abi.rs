use std::ffi::{CStr, CString};
use std::ptr;

use qweight_ffi::*;

fn owned(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qw_string_free(s) };
    text
}

fn parse(text: &str) -> *mut QwScalar {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qw_scalar_parse(c.as_ptr(), &mut out) }, QwStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qw_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn scalar_round_trip_and_arithmetic() {
    let a = parse("1 + q");
    let b = parse("(1 - q^2)/(1 - q)");
    let mut eq = 0;
    assert_eq!(unsafe { qw_scalar_equal(a, b, &mut eq) }, QwStatus::Ok);
    assert_eq!(eq, 1);

    let mut prod = ptr::null_mut();
    assert_eq!(unsafe { qw_scalar_binary(QwOp::Mul, a, b, &mut prod) }, QwStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qw_scalar_to_string(prod, &mut s) }, QwStatus::Ok);
    assert_eq!(owned(s), "1 + 2*q + q^2");

    let mut v = ptr::null_mut();
    assert_eq!(unsafe { qw_scalar_evaluate(prod, 1, 2, 0, 1, &mut v) }, QwStatus::Ok);
    assert_eq!(owned(v), "9/4");

    unsafe {
        qw_scalar_free(a);
        qw_scalar_free(b);
        qw_scalar_free(prod);
    }
}

#[test]
fn errors_carry_a_status_and_message() {
    let mut out = ptr::null_mut();
    let bad = CString::new("1 +* q").unwrap();
    assert_eq!(unsafe { qw_scalar_parse(bad.as_ptr(), &mut out) }, QwStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("parse"));

    assert_eq!(unsafe { qw_scalar_parse(ptr::null(), &mut out) }, QwStatus::NullPointer);

    let one = parse("1");
    let zero = parse("0");
    assert_eq!(
        unsafe { qw_scalar_binary(QwOp::Div, one, zero, &mut out) },
        QwStatus::DivisionByZero
    );

    let pole = parse("1/(1 - q)");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qw_scalar_evaluate(pole, 1, 1, 0, 1, &mut s) }, QwStatus::Pole);
    unsafe {
        qw_scalar_free(one);
        qw_scalar_free(zero);
        qw_scalar_free(pole);
        qw_scalar_free(ptr::null_mut());
        qw_string_free(ptr::null_mut());
    }
}

#[test]
fn weight_integral_matches_dyson() {
    let n = [3usize];
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qw_weight_integral(n.as_ptr(), 1, 1, 0, 0, &mut out) },
        QwStatus::Ok
    );
    let expect = parse("(1 + q)*(1 + q + q^2)");
    let mut eq = 0;
    unsafe { qw_scalar_equal(out, expect, &mut eq) };
    assert_eq!(eq, 1);
    unsafe {
        qw_scalar_free(out);
        qw_scalar_free(expect);
    }
}

#[test]
fn statements_are_enumerable() {
    let ids: Vec<String> = (0..qw_statement_count())
        .map(|i| {
            unsafe { CStr::from_ptr(qw_statement_id(i)) }
                .to_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert!(ids.iter().any(|s| s == "conj-2.1"));
    assert!(qw_statement_id(ids.len()).is_null());
}

#[test]
fn verify_through_a_context() {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { qw_context_new(ptr::null(), 1, 0, &mut ctx) }, QwStatus::Ok);
    let id = CString::new("dyson").unwrap();
    let grid = CString::new(r#"{"n0": [2, 3], "lam": [1]}"#).unwrap();
    let mut reps = ptr::null_mut();
    assert_eq!(
        unsafe { qw_verify(ctx, id.as_ptr(), grid.as_ptr(), 7, &mut reps) },
        QwStatus::Ok
    );
    assert_eq!(unsafe { qw_reports_len(reps) }, 2);
    let mut v = QwVerdict::Refuted;
    assert_eq!(unsafe { qw_reports_verdict(reps, 1, &mut v) }, QwStatus::Ok);
    assert_eq!(v, QwVerdict::Verified);
    assert_eq!(
        unsafe { qw_reports_verdict(reps, 2, &mut v) },
        QwStatus::InvalidArgument
    );
    assert_eq!(unsafe { qw_reports_exit_code(reps) }, 0);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { qw_reports_render(reps, 1, &mut text) }, QwStatus::Ok);
    assert_eq!(owned(text).lines().count(), 2);

    let unknown = CString::new("nope").unwrap();
    let mut none = ptr::null_mut();
    assert_eq!(
        unsafe { qw_verify(ctx, unknown.as_ptr(), ptr::null(), 0, &mut none) },
        QwStatus::UnknownStatement
    );
    let bad_grid = CString::new(r#"{"n9": [1]}"#).unwrap();
    assert_eq!(
        unsafe { qw_verify(ctx, id.as_ptr(), bad_grid.as_ptr(), 0, &mut none) },
        QwStatus::Parse
    );
    unsafe {
        qw_reports_free(reps);
        qw_context_free(ctx);
    }
}
