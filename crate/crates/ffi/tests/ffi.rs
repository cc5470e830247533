use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use facerel_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(fr_last_error()) }.to_str().unwrap().to_string()
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { fr_string_free(s) };
    out
}

fn corpus(name: &str) -> *mut FrMap {
    let name = CString::new(name).unwrap();
    let mut map = ptr::null_mut();
    assert_eq!(unsafe { fr_map_from_corpus(name.as_ptr(), &mut map) }, FrStatus::Ok);
    map
}

#[test]
fn counts_and_genus() {
    let map = corpus("cube");
    let (mut v, mut e, mut f, mut g) = (0, 0, 0, 0);
    unsafe {
        assert_eq!(fr_map_counts(map, &mut v, &mut e, &mut f), FrStatus::Ok);
        assert_eq!(fr_map_genus(map, &mut g), FrStatus::Ok);
        fr_map_free(map);
    }
    assert_eq!((v, e, f, g), (8, 12, 6, 3));
}

#[test]
fn parse_text_and_report() {
    let text = CString::new(facerel::corpus::entry("tetrahedron").unwrap().text).unwrap();
    let mut map = ptr::null_mut();
    unsafe {
        assert_eq!(fr_map_parse(text.as_ptr(), &mut map), FrStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(fr_inspect_json(map, &mut out), FrStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["genus"], 1);
        assert_eq!(fr_spin_json(map, &mut out), FrStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["untwisted"]["exists"], true);
        assert_eq!(fr_operators_json(map, true, 1, &mut out), FrStatus::Ok);
        assert!(take(out).contains("vertex_change"));
        assert_eq!(fr_solve_json(map, 6, 1, &mut out), FrStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["status"]["kind"], "unique");
        assert_eq!(v["residual"]["zero"], true);
        fr_map_free(map);
    }
}

#[test]
fn math_inconsistency_keeps_report() {
    let map = corpus("theta");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(fr_solve_json(map, 2, -1, &mut out), FrStatus::ErrMath);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["status"]["kind"], "inconsistent");
        assert!(last_error().contains("inconsistent"));
        assert_eq!(fr_solve_json(map, 2, 0, &mut out), FrStatus::ErrParse);
        assert!(out.is_null());
        fr_map_free(map);
    }
}

#[test]
fn error_codes() {
    let mut map = ptr::null_mut();
    let mut g = 0;
    unsafe {
        assert_eq!(fr_map_parse(ptr::null(), &mut map), FrStatus::ErrNull);
        assert_eq!(fr_map_genus(ptr::null(), &mut g), FrStatus::ErrNull);
        let bad = CString::new("v 1 : 2 3\n").unwrap();
        assert_eq!(fr_map_parse(bad.as_ptr(), &mut map), FrStatus::ErrParse);
        assert!(map.is_null());
        assert!(!last_error().is_empty());
        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(fr_map_parse(invalid.as_ptr().cast(), &mut map), FrStatus::ErrUtf8);
        let unknown = CString::new("dodecahedron").unwrap();
        assert_eq!(fr_map_from_corpus(unknown.as_ptr(), &mut map), FrStatus::ErrParse);
        fr_map_free(ptr::null_mut());
        fr_string_free(ptr::null_mut());
    }
    let version = unsafe { CStr::from_ptr(fr_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/facerel.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["fr_map_parse", "fr_solve_json", "fr_last_error", "FR_STATUS_ERR_MATH", "typedef struct FrMap FrMap"] {
        assert!(text.contains(name), "{}", name);
    }
    match Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler on PATH; syntax check not run"),
    }
}
