use std::ffi::{CStr, CString};
use std::ptr;

use spincover_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { spincover_string_free(s) };
    out
}

fn group(n: usize) -> *mut SpincoverGroup {
    let mut g = ptr::null_mut();
    let st = unsafe { spincover_group_new(n, SpincoverVariant::Standard, &mut g) };
    assert_eq!(st, SpincoverStatus::Ok);
    g
}

#[test]
fn order_and_products() {
    let g = group(3);
    let mut order = 0;
    assert_eq!(
        unsafe { spincover_group_order(g, &mut order) },
        SpincoverStatus::Ok
    );
    assert_eq!(order, 48);

    let word = CString::new("R1").unwrap();
    let mut r1 = 0;
    assert_eq!(
        unsafe { spincover_group_element_from_word(g, word.as_ptr(), &mut r1) },
        SpincoverStatus::Ok
    );
    let mut k = 0;
    unsafe { spincover_group_element_order(g, r1, &mut k) };
    assert_eq!(k, 8);

    let mut sq = 0;
    unsafe { spincover_group_multiply(g, r1, r1, &mut sq) };
    let mut z = 0;
    unsafe { spincover_group_multiply(g, sq, sq, &mut z) };
    let mut label = ptr::null_mut();
    assert_eq!(
        unsafe { spincover_group_label(g, z, &mut label) },
        SpincoverStatus::Ok
    );
    assert_eq!(take_string(label), "R1^4");

    let mut inv = 0;
    unsafe { spincover_group_inverse(g, r1, &mut inv) };
    let mut id = 0;
    unsafe { spincover_group_multiply(g, r1, inv, &mut id) };
    assert_eq!(id, 1);

    let mut theta = [0i32; 3];
    assert_eq!(
        unsafe { spincover_group_theta(g, r1, theta.as_mut_ptr(), 3) },
        SpincoverStatus::Ok
    );
    assert_eq!(theta, [2, -1, 3]);
    unsafe { spincover_group_free(g) };
}

#[test]
fn errors_set_status_and_message() {
    let g = group(3);
    let mut out = 0;
    assert_eq!(
        unsafe { spincover_group_multiply(g, 0, 1, &mut out) },
        SpincoverStatus::InvalidElement
    );
    assert!(take_string(spincover_last_error()).contains("out of range"));

    let bad = CString::new("R9").unwrap();
    assert_eq!(
        unsafe { spincover_group_element_from_word(g, bad.as_ptr(), &mut out) },
        SpincoverStatus::InvalidWord
    );
    assert_eq!(
        unsafe { spincover_group_order(g, ptr::null_mut()) },
        SpincoverStatus::NullPointer
    );
    assert_eq!(
        unsafe { spincover_group_order(ptr::null(), &mut out) },
        SpincoverStatus::NullPointer
    );
    let mut short = [0i32; 2];
    assert_eq!(
        unsafe { spincover_group_theta(g, 1, short.as_mut_ptr(), 2) },
        SpincoverStatus::BufferTooSmall
    );
    assert_eq!(
        unsafe { spincover_group_order(g, &mut out) },
        SpincoverStatus::Ok
    );
    assert!(spincover_last_error().is_null());

    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { spincover_group_new(1, SpincoverVariant::Standard, &mut h) },
        SpincoverStatus::InvalidWord
    );
    assert!(h.is_null());
    unsafe {
        spincover_group_free(g);
        spincover_group_free(ptr::null_mut());
        spincover_string_free(ptr::null_mut());
    }
}

#[test]
fn twisted_variant() {
    let mut g = ptr::null_mut();
    unsafe { spincover_group_new(3, SpincoverVariant::Twisted, &mut g) };
    let mut order = 0;
    unsafe { spincover_group_order(g, &mut order) };
    assert_eq!(order, 144);
    unsafe { spincover_group_free(g) };
}

#[test]
fn verify_criteria() {
    assert_eq!(spincover_criteria_count(), 14);
    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { spincover_verify(1, 0, &mut passed, &mut report) },
        SpincoverStatus::Ok
    );
    assert!(passed);
    assert!(take_string(report).starts_with("CHECK n=3: PASS"));
    assert_eq!(
        unsafe { spincover_verify(99, 0, &mut passed, ptr::null_mut()) },
        SpincoverStatus::InvalidArgument
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(spincover_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
