use std::ffi::{CStr, CString};
use std::ptr;

use pfaflab_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pfl_string_free(s);
    out
}

unsafe fn poly_string(p: *const PflPolynomial) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(pfl_polynomial_to_string(p, &mut s), PflStatus::Ok);
    take(s)
}

#[test]
fn pfaffinant_of_nested_pair() {
    unsafe {
        let key = CString::new("V[(1,2)(3,4)]").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(pfl_diagram_parse(2, key.as_ptr(), &mut d), PflStatus::Ok);
        let mut a = ptr::null_mut();
        assert_eq!(pfl_skew_symbolic(2, &mut a), PflStatus::Ok);
        let mut p = ptr::null_mut();
        assert_eq!(pfl_pfaffinant(d, a, false, &mut p), PflStatus::Ok);
        assert_eq!(poly_string(p), "a[1,2]*a[3,4] - a[1,3]*a[2,4] + 2*a[1,4]*a[2,3]");

        let mut k = ptr::null_mut();
        assert_eq!(pfl_diagram_key(d, &mut k), PflStatus::Ok);
        assert_eq!(take(k), "V[(1,2)(3,4)]");

        let mut pf = ptr::null_mut();
        assert_eq!(pfl_pfaffian(a, &mut pf), PflStatus::Ok);
        assert!(!pfl_polynomial_equal(p, pf));
        assert!(pfl_polynomial_equal(pf, pf));

        pfl_polynomial_free(pf);
        pfl_polynomial_free(p);
        pfl_skew_free(a);
        pfl_diagram_free(d);
    }
}

#[test]
fn schur_q_one_row() {
    unsafe {
        let shape = CString::new("(2)").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(pfl_schur_q(shape.as_ptr(), 2, &mut p), PflStatus::Ok);
        assert_eq!(poly_string(p), "2*x[1]^2 + 4*x[1]*x[2] + 2*x[2]^2");
        pfl_polynomial_free(p);
    }
}

#[test]
fn diagram_counts() {
    let mut c = 0usize;
    unsafe {
        assert_eq!(pfl_count_diagrams(2, false, &mut c), PflStatus::Ok);
        assert_eq!(c, 6);
        assert_eq!(pfl_count_diagrams(3, false, &mut c), PflStatus::Ok);
        assert_eq!(c, 20);
        assert_eq!(pfl_count_diagrams(3, true, &mut c), PflStatus::Ok);
        assert_eq!(c, 10);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let bad = CString::new("V[(1,2)").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(pfl_diagram_parse(2, bad.as_ptr(), &mut d), PflStatus::InvalidArgument);
        assert!(d.is_null());
        assert!(!CStr::from_ptr(pfl_last_error()).to_bytes().is_empty());

        assert_eq!(pfl_diagram_parse(2, ptr::null(), &mut d), PflStatus::NullPointer);
        let mut a = ptr::null_mut();
        assert_eq!(pfl_skew_symbolic(9, &mut a), PflStatus::BoundExceeded);
        assert_eq!(pfl_pfaffian(ptr::null(), ptr::null_mut()), PflStatus::NullPointer);

        pfl_diagram_free(ptr::null_mut());
        pfl_string_free(ptr::null_mut());
        assert!(!pfl_diagram_is_even(ptr::null()));
    }
}

#[test]
fn verify_reports_json() {
    unsafe {
        let id = CString::new("sym-tl-counts").unwrap();
        let mut report = ptr::null_mut();
        assert_eq!(pfl_verify(id.as_ptr(), 0, 0, &mut report), PflStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert!(v["failures"].as_array().unwrap().is_empty());

        let alias = CString::new("quadratic-relations").unwrap();
        assert_eq!(pfl_verify(alias.as_ptr(), 0, 0, ptr::null_mut()), PflStatus::IdentityFailure);

        let unknown = CString::new("no-such-check").unwrap();
        assert_eq!(pfl_verify(unknown.as_ptr(), 0, 0, ptr::null_mut()), PflStatus::InvalidArgument);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(pfl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/pfaflab.h");
    assert!(header.exists());
    let src = std::env::temp_dir().join(format!("pfaflab_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"pfaflab.h\"\nint main(void){PflDiagram*d=0;return pfl_diagram_is_even(d)?1:(int)PFL_STATUS_OK;}\n").unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success()),
        Err(_) => eprintln!("no C compiler; header syntax not checked"),
    }
}
