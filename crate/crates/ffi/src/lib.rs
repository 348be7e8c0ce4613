//! C ABI over the `qaffine` engine.
//!
//! Elements cross the boundary as opaque `QaElement` handles owned by the
//! caller and released with [`qa_element_free`]. Strings returned through
//! `char **` out-parameters are released with [`qa_string_free`]. Every
//! fallible function returns a [`QaStatus`]; on failure the message is
//! available from [`qa_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qaffine::form::{gram, pair};
use qaffine::omega::{omega_phi, omega_psi};
use qaffine::parse::parse_element;
use qaffine::verma::{HighestWeight, VermaElement, VermaOp};
use qaffine::{check_identity_18, multiply, Element, Error};

/// Opaque element of the algebra.
pub struct QaElement(Element);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QaOmegaKind {
    Psi = 0,
    Phi = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QaVermaOp {
    XPlus = 0,
    XMinus = 1,
    A = 2,
    Psi = 3,
    Phi = 4,
    K = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn engine_error(e: Error) -> QaStatus {
    let status = match e {
        Error::Parse { .. } => QaStatus::Parse,
        _ => QaStatus::Domain,
    };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> Result<(), QaStatus>) -> QaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QaStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            QaStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, QaStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(QaStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QaStatus::InvalidUtf8
    })
}

unsafe fn elem_arg<'a>(p: *const QaElement) -> Result<&'a Element, QaStatus> {
    if p.is_null() {
        set_error("null element handle");
        return Err(QaStatus::NullPointer);
    }
    Ok(&(*p).0)
}

unsafe fn write_elem(out: *mut *mut QaElement, e: Element) -> Result<(), QaStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(QaStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(QaElement(e)));
    Ok(())
}

unsafe fn write_str(out: *mut *mut c_char, s: String) -> Result<(), QaStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(QaStatus::NullPointer);
    }
    *out = CString::new(s).expect("engine text has no nul").into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `e` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qa_element_free(e: *mut QaElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Parses and normal-orders `text`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_element_parse(text: *const c_char, out: *mut *mut QaElement) -> QaStatus {
    guard(|| {
        let e = parse_element(str_arg(text)?).map_err(engine_error)?;
        write_elem(out, e)
    })
}

/// Canonical text, parseable by [`qa_element_parse`].
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_element_render(e: *const QaElement, out: *mut *mut c_char) -> QaStatus {
    guard(|| write_str(out, elem_arg(e)?.to_string()))
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_element_to_json(e: *const QaElement, out: *mut *mut c_char) -> QaStatus {
    guard(|| write_str(out, elem_arg(e)?.to_json().to_string()))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_element_multiply(
    a: *const QaElement,
    b: *const QaElement,
    out: *mut *mut QaElement,
) -> QaStatus {
    guard(|| write_elem(out, multiply(elem_arg(a)?, elem_arg(b)?)))
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_omega(
    kind: QaOmegaKind,
    k: i64,
    e: *const QaElement,
    out: *mut *mut QaElement,
) -> QaStatus {
    guard(|| {
        let e = elem_arg(e)?;
        let r = match kind {
            QaOmegaKind::Psi => omega_psi(k, e),
            QaOmegaKind::Phi => omega_phi(k, e),
        };
        write_elem(out, r)
    })
}

/// The bilinear form `(a, b)` as canonical scalar text.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_pair(a: *const QaElement, b: *const QaElement, out: *mut *mut c_char) -> QaStatus {
    guard(|| write_str(out, pair(elem_arg(a)?, elem_arg(b)?).to_string()))
}

/// Gram matrix on the weight space `(length, delta_sum)` with modes in
/// `[lo, hi]`, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_gram_json(
    length: usize,
    delta_sum: i64,
    lo: i64,
    hi: i64,
    out: *mut *mut c_char,
) -> QaStatus {
    guard(|| {
        let g = gram(length, delta_sum, lo, hi).map_err(engine_error)?;
        write_str(out, g.to_json().to_string())
    })
}

/// Sets `*equal` to whether the exponential identity holds through `order`.
///
/// # Safety
/// `equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_identity18(order: usize, equal: *mut bool) -> QaStatus {
    guard(|| {
        if equal.is_null() {
            set_error("null output pointer");
            return Err(QaStatus::NullPointer);
        }
        *equal = check_identity_18(order).map_err(engine_error)?.equal;
        Ok(())
    })
}

/// Applies one operator to `payload * v` in the level-zero module with
/// highest weight `lambda_h`; `idx` is ignored for `K`.
///
/// # Safety
/// `payload` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qa_verma_act(
    op: QaVermaOp,
    idx: i64,
    lambda_h: i64,
    payload: *const QaElement,
    out: *mut *mut QaElement,
) -> QaStatus {
    guard(|| {
        let v = VermaElement::new(HighestWeight::new(lambda_h), elem_arg(payload)?);
        let op = match op {
            QaVermaOp::XPlus => VermaOp::XPlus(idx),
            QaVermaOp::XMinus => VermaOp::XMinus(idx),
            QaVermaOp::A => VermaOp::A(idx),
            QaVermaOp::Psi => VermaOp::Psi(idx),
            QaVermaOp::Phi => VermaOp::Phi(idx),
            QaVermaOp::K => VermaOp::K,
        };
        let r = v.act(op).map_err(engine_error)?;
        write_elem(out, r.payload().clone())
    })
}
