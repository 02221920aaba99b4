use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use latcheck_ffi::*;

fn handle(name: &str) -> *mut LatcheckLattice {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { latcheck_lattice_from_catalog(name.as_ptr(), &mut out) }, LatcheckStatus::Ok);
    out
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { latcheck_string_free(p) };
    s
}

fn last_error() -> String {
    let p = latcheck_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn pentagon_properties() {
    let l = handle("N5");
    let (mut n, mut w, mut sd, mut v, mut d) = (0usize, false, false, false, 0usize);
    unsafe {
        assert_eq!(latcheck_lattice_len(l, &mut n), LatcheckStatus::Ok);
        assert_eq!(latcheck_is_whitman(l, &mut w), LatcheckStatus::Ok);
        assert_eq!(latcheck_is_semidistributive(l, &mut sd), LatcheckStatus::Ok);
        assert_eq!(latcheck_is_in_n5_variety(l, &mut v), LatcheckStatus::Ok);
        assert_eq!(latcheck_dec(l, &mut d), LatcheckStatus::Ok);
    }
    assert_eq!((n, w, sd, v, d), (5, true, true, true, 3));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { latcheck_law_profile_json(l, &mut s) }, LatcheckStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["modular"], serde_json::json!(false));
    unsafe { latcheck_lattice_free(l) };
}

#[test]
fn order_operations() {
    let l = handle("B3");
    let (mut a, mut b, mut m, mut j, mut le) = (0usize, 0usize, 0usize, 0usize, false);
    let (la, lb) = (CString::new("a").unwrap(), CString::new("b").unwrap());
    unsafe {
        assert_eq!(latcheck_lattice_index_of(l, la.as_ptr(), &mut a), LatcheckStatus::Ok);
        assert_eq!(latcheck_lattice_index_of(l, lb.as_ptr(), &mut b), LatcheckStatus::Ok);
        assert_eq!(latcheck_lattice_meet(l, a, b, &mut m), LatcheckStatus::Ok);
        assert_eq!(latcheck_lattice_join(l, a, b, &mut j), LatcheckStatus::Ok);
        assert_eq!(latcheck_lattice_leq(l, m, j, &mut le), LatcheckStatus::Ok);
        assert!(le);
        assert_eq!(latcheck_lattice_leq(l, 99, 0, &mut le), LatcheckStatus::OutOfRange);
        latcheck_lattice_free(l);
    }
}

#[test]
fn json_round_trip() {
    let l = handle("grid(2,3)");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { latcheck_lattice_to_json(l, &mut s) }, LatcheckStatus::Ok);
    let text = CString::new(take_string(s)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { latcheck_lattice_parse(text.as_ptr(), &mut back) }, LatcheckStatus::Ok);
    let mut n = 0;
    assert_eq!(unsafe { latcheck_lattice_len(back, &mut n) }, LatcheckStatus::Ok);
    assert_eq!(n, 6);
    unsafe {
        latcheck_lattice_free(l);
        latcheck_lattice_free(back);
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let bad = CString::new("{\"elements\": [\"a\" \"b\"]}").unwrap();
    assert_eq!(unsafe { latcheck_lattice_parse(bad.as_ptr(), &mut out) }, LatcheckStatus::ParseError);
    assert!(last_error().contains("line 1"));
    let vee = CString::new(r#"{"elements": ["0", "p", "q"], "covers": [["0", "p"], ["0", "q"]]}"#).unwrap();
    assert_eq!(unsafe { latcheck_lattice_parse(vee.as_ptr(), &mut out) }, LatcheckStatus::NotALattice);
    let nope = CString::new("nope").unwrap();
    assert_eq!(unsafe { latcheck_lattice_from_catalog(nope.as_ptr(), &mut out) }, LatcheckStatus::UnknownName);
    assert!(last_error().contains("nope"));
    assert_eq!(unsafe { latcheck_lattice_parse(ptr::null(), &mut out) }, LatcheckStatus::NullPointer);
    let mut n = 0;
    assert_eq!(unsafe { latcheck_lattice_len(ptr::null(), &mut n) }, LatcheckStatus::NullPointer);
    let l = handle("N5");
    assert_eq!(unsafe { latcheck_lattice_len(l, ptr::null_mut()) }, LatcheckStatus::NullPointer);
    unsafe {
        latcheck_lattice_free(l);
        latcheck_lattice_free(ptr::null_mut());
        latcheck_string_free(ptr::null_mut());
    }
}

#[test]
fn free_lattice_words() {
    let (s, t) = (CString::new("x & y").unwrap(), CString::new("x | z").unwrap());
    let mut le = false;
    assert_eq!(unsafe { latcheck_free_leq(s.as_ptr(), t.as_ptr(), &mut le) }, LatcheckStatus::Ok);
    assert!(le);
    assert_eq!(unsafe { latcheck_free_leq(t.as_ptr(), s.as_ptr(), &mut le) }, LatcheckStatus::Ok);
    assert!(!le);
    let w = CString::new("x | x & y").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { latcheck_free_canonical(w.as_ptr(), &mut out) }, LatcheckStatus::Ok);
    assert_eq!(take_string(out), "x");
    let bad = CString::new("x |").unwrap();
    assert_eq!(unsafe { latcheck_free_canonical(bad.as_ptr(), &mut out) }, LatcheckStatus::ParseError);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(latcheck_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/latcheck.h")).unwrap();
    for f in [
        "latcheck_last_error",
        "latcheck_lattice_parse",
        "latcheck_lattice_from_catalog",
        "latcheck_lattice_free",
        "latcheck_dec",
        "latcheck_law_profile_json",
        "latcheck_free_canonical",
        "latcheck_string_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f}");
    }
    assert!(header.contains("typedef struct LatcheckLattice LatcheckLattice;"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "latcheck.h"

int main(void) {
    LatcheckLattice *l = NULL;
    size_t n = 0, d = 0;
    bool w = false;
    if (latcheck_lattice_from_catalog("N5", &l) != LATCHECK_STATUS_OK) return 10;
    if (latcheck_lattice_len(l, &n) != LATCHECK_STATUS_OK || n != 5) return 11;
    if (latcheck_is_whitman(l, &w) != LATCHECK_STATUS_OK || !w) return 12;
    if (latcheck_dec(l, &d) != LATCHECK_STATUS_OK || d != 3) return 13;
    latcheck_lattice_free(l);
    if (latcheck_lattice_from_catalog("missing", &l) != LATCHECK_STATUS_UNKNOWN_NAME) return 14;
    if (strstr(latcheck_last_error(), "missing") == NULL) return 15;
    printf("ok %zu %zu\n", n, d);
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("liblatcheck_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let work = std::env::temp_dir().join(format!("latcheck-capi-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = work.join("main");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg(format!("-I{}/include", env!("CARGO_MANIFEST_DIR")))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok 5 3\n");
    std::fs::remove_dir_all(&work).ok();
}
