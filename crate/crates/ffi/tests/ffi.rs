use std::ffi::{c_char, CStr, CString};
use std::ptr;

use irrchain_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    irr_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(irr_last_error()).to_str().unwrap().to_string()
}

unsafe fn parse(s: &str) -> *mut IrrPoly {
    let mut p = ptr::null_mut();
    assert_eq!(irr_poly_parse(c(s).as_ptr(), &mut p), IrrStatus::Ok);
    p
}

unsafe fn format(p: *const IrrPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(irr_poly_format(p, &mut s), IrrStatus::Ok);
    take(s)
}

#[test]
fn cohen_step_and_degree() {
    unsafe {
        let g = parse("5;3,1");
        let mut r = ptr::null_mut();
        assert_eq!(irr_cohen_r(g, &mut r), IrrStatus::Ok);
        assert_eq!(format(r), "5;1,1,1");
        let mut degree = 0;
        assert_eq!(irr_poly_degree(r, &mut degree), IrrStatus::Ok);
        assert_eq!(degree, 2);
        let mut irreducible = false;
        assert_eq!(irr_poly_is_irreducible(r, &mut irreducible), IrrStatus::Ok);
        assert!(irreducible);
        irr_poly_free(r);
        irr_poly_free(g);
    }
}

#[test]
fn field_handles() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(irr_field_new(c("5^2").as_ptr(), &mut f), IrrStatus::Ok);
        let mut order = 0;
        assert_eq!(irr_field_order(f, &mut order), IrrStatus::Ok);
        assert_eq!(order, 25);
        irr_field_free(f);

        assert_eq!(irr_field_new(c("6").as_ptr(), &mut f), IrrStatus::Parse);
        assert!(last_error().contains('6'));

        assert_eq!(irr_field_new(c("7").as_ptr(), &mut f), IrrStatus::Ok);
        let coeffs = [3i64, 2, 1];
        let mut p = ptr::null_mut();
        assert_eq!(irr_poly_from_coeffs(f, coeffs.as_ptr(), coeffs.len(), &mut p), IrrStatus::Ok);
        assert_eq!(format(p), "7;3,2,1");
        irr_poly_free(p);
        assert_eq!(irr_poly_from_coeffs(f, ptr::null(), 0, &mut p), IrrStatus::Ok);
        let mut degree = 0;
        assert_eq!(irr_poly_degree(p, &mut degree), IrrStatus::Ok);
        assert_eq!(degree, -1);
        irr_poly_free(p);
        irr_field_free(f);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(irr_poly_parse(c("5;3,,1").as_ptr(), &mut p), IrrStatus::Parse);
        assert!(last_error().starts_with("parse error at byte"));
        assert_eq!(irr_poly_parse(ptr::null(), &mut p), IrrStatus::NullPointer);
        assert_eq!(irr_poly_parse(c("5;3,1").as_ptr(), ptr::null_mut()), IrrStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(irr_poly_parse(bytes.as_ptr().cast(), &mut p), IrrStatus::InvalidUtf8);

        let g = parse("5;4,1");
        let mut r = ptr::null_mut();
        assert_eq!(irr_r_sigma_t(g, c("1,1;1,-1").as_ptr(), 2, &mut r), IrrStatus::Pole);
        assert_eq!(irr_r_sigma_t(g, c("1,1;1,1").as_ptr(), 2, &mut r), IrrStatus::InvalidArgument);
        irr_poly_free(g);
        assert_eq!(irr_poly_parse(c("5;3,1").as_ptr(), &mut p), IrrStatus::Ok);
        assert_eq!(last_error(), "");
        irr_poly_free(p);
    }
}

#[test]
fn r_sigma_t_and_verdict_json() {
    unsafe {
        let g = parse("13;5,1");
        let mut r = ptr::null_mut();
        assert_eq!(irr_r_sigma_t(g, c("2,5;1,7").as_ptr(), 3, &mut r), IrrStatus::Ok);
        let mut degree = 0;
        irr_poly_degree(r, &mut degree);
        assert_eq!(degree, 3);
        irr_poly_free(r);

        let mut json = ptr::null_mut();
        assert_eq!(irr_main_theorem_check(g, c("2,5;1,7").as_ptr(), 3, &mut json), IrrStatus::Ok);
        let v: Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["theorem"], "moebius-power-chain");
        irr_poly_free(g);
    }
}

#[test]
fn chain_generation() {
    unsafe {
        let seed = parse("7;3,2,1");
        let mut json = ptr::null_mut();
        let config = c(r#"{"kind":"mcnay","q":"7","c":"3"}"#);
        assert_eq!(irr_chain_generate(config.as_ptr(), seed, 3, IrrVerify::Fast, &mut json), IrrStatus::Ok);
        let v: Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["chain"].as_array().unwrap().len(), 3);
        assert_eq!(v["report"]["pass"], true);
        let bad = c(r#"{"kind":"moebius"}"#);
        assert_eq!(irr_chain_generate(bad.as_ptr(), seed, 3, IrrVerify::Fast, &mut json), IrrStatus::Parse);
        irr_poly_free(seed);
    }
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/irrchain.h")).unwrap();
    for name in [
        "irr_last_error",
        "irr_string_free",
        "irr_field_new",
        "irr_field_free",
        "irr_poly_parse",
        "irr_poly_from_coeffs",
        "irr_poly_format",
        "irr_cohen_r",
        "irr_r_sigma_t",
        "irr_main_theorem_check",
        "irr_chain_generate",
        "IRR_STATUS_POLE",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
