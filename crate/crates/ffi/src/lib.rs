//! C interface to `facerel`.
//!
//! Maps are opaque `FrMap` handles created by [`fr_map_parse`] or
//! [`fr_map_from_corpus`] and released with [`fr_map_free`]. Every fallible
//! call returns an [`FrStatus`]; the message for the most recent failure on
//! the calling thread is available from [`fr_last_error`]. Strings handed
//! out through `char **out` parameters are owned by the caller and must be
//! released with [`fr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use facerel::cli::{inspect_map, operators_map, solve_map, spin_map, Format, Outcome, SolveArgs, EXIT_MATH, EXIT_OK};
use facerel::corpus;
use facerel::cover::genus;
use facerel::graphmap::{parse_map, CombinatorialMap};
use facerel::qtorus::ChargeSign;

/// Opaque handle to a parsed cubic planar map.
pub struct FrMap {
    map: CombinatorialMap,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrStatus {
    Ok = 0,
    /// A required pointer argument was null.
    ErrNull = 1,
    /// A string argument was not valid UTF-8.
    ErrUtf8 = 2,
    /// The graph text or an option could not be parsed.
    ErrParse = 3,
    /// The computation reported a mathematical inconsistency. Report
    /// strings are still produced where the call has an output.
    ErrMath = 4,
    /// Unexpected internal failure (caught panic).
    ErrInternal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("interior nul removed"));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::default());
}

fn guard(f: impl FnOnce() -> FrStatus) -> FrStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {}", msg));
            FrStatus::ErrInternal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, FrStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(FrStatus::ErrNull);
    }
    CStr::from_ptr(p).to_str().map_err(|e| {
        set_error(format!("invalid UTF-8: {}", e));
        FrStatus::ErrUtf8
    })
}

unsafe fn map_ref<'a>(p: *const FrMap) -> Result<&'a CombinatorialMap, FrStatus> {
    if p.is_null() {
        set_error("null map handle");
        return Err(FrStatus::ErrNull);
    }
    Ok(&(*p).map)
}

unsafe fn store_map(out: *mut *mut FrMap, map: CombinatorialMap) {
    *out = Box::into_raw(Box::new(FrMap { map }));
}

unsafe fn store_string(out: *mut *mut c_char, s: String) {
    *out = CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw();
}

fn charge_sign(value: i32) -> Result<ChargeSign, FrStatus> {
    match value {
        1 => Ok(ChargeSign::Plus),
        -1 => Ok(ChargeSign::Minus),
        other => {
            set_error(format!("charge sign must be 1 or -1, got {}", other));
            Err(FrStatus::ErrParse)
        }
    }
}

unsafe fn emit(outcome: Outcome, out: *mut *mut c_char) -> FrStatus {
    if !outcome.stdout.is_empty() {
        store_string(out, outcome.stdout);
    }
    match outcome.code {
        EXIT_OK => FrStatus::Ok,
        code => {
            set_error(outcome.stderr.trim_end().trim_start_matches("error: ").to_string());
            if code == EXIT_MATH {
                FrStatus::ErrMath
            } else {
                FrStatus::ErrParse
            }
        }
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! check_out {
    ($p:expr) => {
        if $p.is_null() {
            set_error("null output pointer");
            return FrStatus::ErrNull;
        }
    };
}

/// Parses graph text in the line format used by the command-line tool.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_map_parse(text: *const c_char, out: *mut *mut FrMap) -> FrStatus {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let text = try_ffi!(read_str(text));
        match parse_map(text) {
            Ok(map) => {
                store_map(out, map);
                FrStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                FrStatus::ErrParse
            }
        }
    })
}

/// Loads one of the bundled graphs by name.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_map_from_corpus(name: *const c_char, out: *mut *mut FrMap) -> FrStatus {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let name = try_ffi!(read_str(name));
        match corpus::load(name) {
            Some(Ok(map)) => {
                store_map(out, map);
                FrStatus::Ok
            }
            Some(Err(e)) => {
                set_error(e.to_string());
                FrStatus::ErrInternal
            }
            None => {
                set_error(format!("unknown corpus graph {:?}", name));
                FrStatus::ErrParse
            }
        }
    })
}

/// Releases a map handle. Null is ignored.
///
/// # Safety
/// `map` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fr_map_free(map: *mut FrMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// # Safety
/// `map` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fr_map_counts(
    map: *const FrMap,
    vertices: *mut usize,
    edges: *mut usize,
    faces: *mut usize,
) -> FrStatus {
    guard(|| {
        let map = try_ffi!(map_ref(map));
        check_out!(vertices);
        check_out!(edges);
        check_out!(faces);
        *vertices = map.num_vertices();
        *edges = map.num_edges();
        *faces = map.num_faces();
        FrStatus::Ok
    })
}

/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_map_genus(map: *const FrMap, out: *mut usize) -> FrStatus {
    guard(|| {
        let map = try_ffi!(map_ref(map));
        check_out!(out);
        *out = genus(map);
        FrStatus::Ok
    })
}

/// JSON report with counts, pairing, radical and symplectic basis.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_inspect_json(map: *const FrMap, out: *mut *mut c_char) -> FrStatus {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let map = try_ffi!(map_ref(map));
        emit(inspect_map(map, Format::Json), out)
    })
}

/// JSON report of face operators. `charge_sign_value` is `1` or `-1`.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_operators_json(
    map: *const FrMap,
    all_vertices: bool,
    charge_sign_value: i32,
    out: *mut *mut c_char,
) -> FrStatus {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let map = try_ffi!(map_ref(map));
        let sign = try_ffi!(charge_sign(charge_sign_value));
        emit(operators_map(map, Format::Json, all_vertices, false, sign), out)
    })
}

/// JSON spin report.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_spin_json(map: *const FrMap, out: *mut *mut c_char) -> FrStatus {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let map = try_ffi!(map_ref(map));
        emit(spin_map(map, Format::Json), out)
    })
}

/// JSON wave-function report using the automatic representation choice;
/// `charge_sign_value` is `1` or `-1`.
/// Returns `FR_STATUS_ERR_MATH` together with the report when the system is
/// inconsistent or a residual does not vanish.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_solve_json(
    map: *const FrMap,
    max_degree: usize,
    charge_sign_value: i32,
    out: *mut *mut c_char,
) -> FrStatus {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let map = try_ffi!(map_ref(map));
        let sign = try_ffi!(charge_sign(charge_sign_value));
        let args = SolveArgs {
            graph: "<handle>".into(),
            max_degree,
            basis: "auto".into(),
            charge_sign: sign,
            framing: None,
            out: None,
        };
        emit(solve_map(map, &args, Format::Json), out)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn fr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
