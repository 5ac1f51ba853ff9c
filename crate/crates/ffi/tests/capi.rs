use std::ffi::{CStr, CString};
use std::ptr;

use fglobs_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { fglobs_string_free(s) };
    out
}

#[test]
fn run_json_frobenius() {
    let cfg = CString::new(r#"{"command": "frobenius", "ring": "fp", "prime": 5}"#).unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { fglobs_run_json(cfg.as_ptr(), &mut rep) }, FglobsStatus::Ok);
    assert_eq!(unsafe { fglobs_report_exit_code(rep) }, 0);
    assert_eq!(take(unsafe { fglobs_report_render(rep, 0) }), "(x·t^4 - x^5)/t^4\n");
    let json: serde_json::Value = serde_json::from_str(&take(unsafe { fglobs_report_render(rep, 1) })).unwrap();
    assert_eq!(json["frobenius"], "(x·t^4 - x^5)/t^4");
    unsafe { fglobs_report_free(rep) };
}

#[test]
fn verdict_handle() {
    let name = CString::new("todd-p-typical").unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { fglobs_obstruct(3, 5, name.as_ptr(), 9, -9, 4, &mut v) }, FglobsStatus::Ok);
    let (mut first, mut tbd) = (0u32, 0i32);
    assert_eq!(unsafe { fglobs_verdict_summary(v, &mut first, &mut tbd) }, FglobsStatus::Ok);
    assert_eq!((first, tbd), (9, 4));
    assert_eq!(take(unsafe { fglobs_verdict_remainder(v, 9) }), "β^10·t^4");
    assert!(take(unsafe { fglobs_verdict_json(v) }).contains("\"first_failure\":9"));
    assert!(unsafe { fglobs_verdict_remainder(v, 99) }.is_null());
    unsafe { fglobs_verdict_free(v) };
}

#[test]
fn errors_are_reported() {
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { fglobs_run_json(ptr::null(), &mut rep) }, FglobsStatus::NullPointer);
    let empty = CString::new("{}").unwrap();
    assert_eq!(unsafe { fglobs_run_json(empty.as_ptr(), &mut rep) }, FglobsStatus::InvalidArgument);
    assert!(rep.is_null());
    let msg = unsafe { CStr::from_ptr(fglobs_last_error()) }.to_str().unwrap();
    assert!(msg.contains("no command"), "{msg}");
    let bad = CString::new(r#"{"command": "obstruct", "prime": 4}"#).unwrap();
    assert_eq!(unsafe { fglobs_run_json(bad.as_ptr(), &mut rep) }, FglobsStatus::InvalidArgument);
    let garbage = [0xffu8, 0];
    assert_eq!(unsafe { fglobs_run_json(garbage.as_ptr() as *const _, &mut rep) }, FglobsStatus::Utf8);
    let name = CString::new("nope").unwrap();
    let mut v = ptr::null_mut();
    assert_ne!(unsafe { fglobs_obstruct(3, 5, name.as_ptr(), 4, -4, 4, &mut v) }, FglobsStatus::Ok);
    assert!(v.is_null());
    assert_eq!(unsafe { fglobs_report_exit_code(ptr::null()) }, -1);
    unsafe { fglobs_report_free(ptr::null_mut()) };
    unsafe { fglobs_string_free(ptr::null_mut()) };
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/fglobs.h")).unwrap();
    for name in ["fglobs_run_json", "fglobs_obstruct", "fglobs_verdict_free", "fglobs_string_free", "FGLOBS_STATUS_PANIC"] {
        assert!(h.contains(name), "{name}");
    }
    assert!(!unsafe { CStr::from_ptr(fglobs_version()) }.to_str().unwrap().is_empty());
}
