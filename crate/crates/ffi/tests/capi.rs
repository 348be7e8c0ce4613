use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qaffine_ffi::*;

fn parse(text: &str) -> *mut QaElement {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qa_element_parse(c.as_ptr(), &mut out) }, QaStatus::Ok);
    out
}

fn take(s: *mut c_char) -> String {
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qa_string_free(s) };
    v
}

fn render(e: *const QaElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qa_element_render(e, &mut s) }, QaStatus::Ok);
    take(s)
}

#[test]
fn parse_render_multiply() {
    let a = parse("xm(1)");
    let b = parse("xm(0)");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { qa_element_multiply(a, b, &mut p) }, QaStatus::Ok);
    assert_eq!(render(p), "q^(-2)*xm(0)*xm(1)");
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { qa_element_to_json(p, &mut j) }, QaStatus::Ok);
    assert!(take(j).contains("\"modes\":[0,1]"));
    unsafe {
        qa_element_free(a);
        qa_element_free(b);
        qa_element_free(p);
    }
}

#[test]
fn omega_pair_and_verma() {
    let e = parse("xm(0)*xm(0)");
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { qa_omega(QaOmegaKind::Psi, 0, e, &mut o) }, QaStatus::Ok);
    assert_eq!(render(o), "xm(0) + q^(2)*xm(0)");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qa_pair(e, e, &mut s) }, QaStatus::Ok);
    assert_eq!(take(s), "1 + q^(2)");

    let x = parse("xm(1)");
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { qa_verma_act(QaVermaOp::XPlus, -1, 2, x, &mut v) }, QaStatus::Ok);
    assert_eq!(render(v), "q^(-1) + q^(1)");
    unsafe {
        qa_element_free(e);
        qa_element_free(o);
        qa_element_free(x);
        qa_element_free(v);
    }
}

#[test]
fn gram_and_identity() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qa_gram_json(1, 2, -3, 3, &mut s) }, QaStatus::Ok);
    assert!(take(s).contains("\"gammaHalf\":-4"));
    let mut eq = false;
    assert_eq!(unsafe { qa_identity18(12, &mut eq) }, QaStatus::Ok);
    assert!(eq);
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("xm(1)*").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qa_element_parse(bad.as_ptr(), &mut out) }, QaStatus::Parse);
    assert!(out.is_null());
    let msg = unsafe { CStr::from_ptr(qa_last_error()) }.to_str().unwrap();
    assert!(msg.contains("offset 6"), "{msg}");

    assert_eq!(unsafe { qa_element_parse(ptr::null(), &mut out) }, QaStatus::NullPointer);

    let one = parse("1");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { qa_verma_act(QaVermaOp::A, 0, 1, one, &mut r) }, QaStatus::Domain);
    let mut eq = true;
    assert_eq!(unsafe { qa_identity18(0, &mut eq) }, QaStatus::Domain);

    let two = parse("2");
    assert!(qa_last_error().is_null());
    unsafe {
        qa_element_free(one);
        qa_element_free(two);
        qa_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qaffine.h")).unwrap();
    for name in ["qa_element_parse", "qa_string_free", "qa_verma_act", "QA_STATUS_PARSE", "QaElement"] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
