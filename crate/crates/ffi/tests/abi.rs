use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use scl_ffi::*;

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    scl_string_free(s);
    out
}

#[test]
fn compute_round_trip() {
    unsafe {
        let text = CString::new("a b a^-1 b^-1").unwrap();
        let mut word = ptr::null_mut();
        assert_eq!(scl_word_parse(text.as_ptr(), &mut word), SclStatus::Ok);
        assert_eq!(scl_word_blocks(word), 2);
        let mut value = ptr::null_mut();
        assert_eq!(scl_compute(word, 1, true, &mut value), SclStatus::Ok);
        assert_eq!(take_string(scl_value_string(value)), "1/2");
        assert!(scl_value_is_stabilized(value));
        assert_eq!(scl_value_bound(value), 2);
        assert_eq!(take_string(scl_lower_bound(word)), "0");
        scl_value_free(value);
        scl_word_free(word);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let bad = CString::new("a^2 b").unwrap();
        let mut word = ptr::null_mut();
        assert_eq!(scl_word_parse(bad.as_ptr(), &mut word), SclStatus::InputError);
        assert!(word.is_null());
        let msg = CStr::from_ptr(scl_last_error()).to_str().unwrap();
        assert!(msg.contains("commutator subgroup"), "{msg}");
        assert_eq!(scl_word_parse(ptr::null(), &mut word), SclStatus::NullPointer);

        let ok = CString::new("a b a^-1 b^-1").unwrap();
        assert_eq!(scl_word_parse(ok.as_ptr(), &mut word), SclStatus::Ok);
        let mut value = ptr::null_mut();
        assert_eq!(scl_compute(word, 9, false, &mut value), SclStatus::LimitExceeded);
        assert!(value.is_null());
        scl_word_free(word);

        scl_word_free(ptr::null_mut());
        scl_value_free(ptr::null_mut());
        scl_string_free(ptr::null_mut());
        assert!(scl_value_string(ptr::null()).is_null());
    }
}

#[test]
fn subset_sum() {
    let mut out = false;
    let v = [1i64, -1, 2, -2];
    unsafe {
        assert_eq!(scl_subset_sum_proper(v.as_ptr(), v.len(), &mut out), SclStatus::Ok);
        assert!(out);
        let w = [2i64, -1, -1];
        assert_eq!(scl_subset_sum_proper(w.as_ptr(), w.len(), &mut out), SclStatus::Ok);
        assert!(!out);
        let u = [1i64, 2];
        assert_eq!(scl_subset_sum_proper(u.as_ptr(), u.len(), &mut out), SclStatus::InputError);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/scl.h");
    let dir = tempfile_dir();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"scl.h\"\nint main(void) { SclWord *w = 0; SclStatus s = scl_word_parse(\"a b a^-1 b^-1\", &w); \
         (void)s; scl_word_free(w); return SCL_STATUS_OK; }\n",
    )
    .unwrap();
    let include = std::path::Path::new(header).parent().unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(include)
        .arg(&src)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "C compiler rejected the header"),
        Err(e) => eprintln!("no C compiler available: {e}"),
    }
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("scl-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
