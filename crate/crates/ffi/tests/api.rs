use std::ffi::{c_char, CStr, CString};
use std::ptr;

use octoma_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a library string.
unsafe fn owned(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    octoma_string_free(s);
    out
}

fn last_error() -> String {
    let p = octoma_last_error();
    assert!(!p.is_null(), "no error message recorded");
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/").to_string() + name).unwrap()
}

#[test]
fn octonion_values() {
    let e = |k: usize| {
        let mut c = [0.0; 8];
        c[k] = 1.0;
        OctomaOctonion { c }
    };
    assert_eq!(octoma_octonion_mul(e(1), e(1)).c[0], -1.0);
    let ab = octoma_octonion_mul(e(1), e(2));
    let ba = octoma_octonion_mul(e(2), e(1));
    assert!(ab.c.iter().zip(ba.c).all(|(x, y)| *x == -y));
    let q = OctomaOctonion { c: [1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, -2.0] };
    assert_eq!(octoma_octonion_norm_sq(q), 9.0);
    assert_eq!(octoma_octonion_conj(q).c[1], -2.0);
    assert_eq!(octoma_herm_det(2.0, 5.0, q), 1.0);
}

#[test]
fn polynomial_handles() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(octoma_poly_parse(c("# cubic\nx1_0^2*x2_3 + 3/2*x1_1").as_ptr(), &mut p), OctomaStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(octoma_poly_to_string(p, &mut s), OctomaStatus::Ok);
        assert!(owned(s).contains("x1_0^2*x2_3"));
        let mut x = [0.0; 16];
        x[0] = 2.0;
        x[11] = 3.0;
        let mut v = 0.0;
        assert_eq!(octoma_poly_eval(p, x.as_ptr(), &mut v), OctomaStatus::Ok);
        assert_eq!(v, 12.0);

        let mut h = ptr::null_mut();
        assert_eq!(octoma_poly_hessian(p, &mut h), OctomaStatus::Ok);
        let mut closed = false;
        assert_eq!(octoma_herm_poly_is_closed(h, &mut closed), OctomaStatus::Ok);
        assert!(closed);
        assert_eq!(octoma_herm_poly_to_string(h, &mut s), OctomaStatus::Ok);
        let text = owned(s);
        let mut h2 = ptr::null_mut();
        assert_eq!(octoma_herm_poly_parse(c(&text).as_ptr(), &mut h2), OctomaStatus::Ok);
        assert_eq!(octoma_herm_poly_to_string(h2, &mut s), OctomaStatus::Ok);
        assert_eq!(owned(s), text);
        octoma_herm_poly_free(h2);
        octoma_herm_poly_free(h);
        octoma_poly_free(p);
    }
}

#[test]
fn non_closed_matrix() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(octoma_herm_poly_parse(c("d1: x2_0^2").as_ptr(), &mut h), OctomaStatus::Ok);
        let mut closed = true;
        assert_eq!(octoma_herm_poly_is_closed(h, &mut closed), OctomaStatus::Ok);
        assert!(!closed);
        octoma_herm_poly_free(h);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(octoma_poly_parse(c("x1_0 +\n * 2").as_ptr(), &mut p), OctomaStatus::Parse);
        assert!(p.is_null());
        assert!(last_error().contains("line 2"));
        assert_eq!(octoma_poly_parse(ptr::null(), &mut p), OctomaStatus::NullPointer);
        assert_eq!(octoma_poly_parse(c("x1_0").as_ptr(), ptr::null_mut()), OctomaStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(octoma_poly_parse(bad.as_ptr().cast(), &mut p), OctomaStatus::InvalidUtf8);
        let mut s = ptr::null_mut();
        assert_eq!(octoma_poly_to_string(ptr::null(), &mut s), OctomaStatus::NullPointer);

        assert_eq!(octoma_poly_parse(c("x1_0").as_ptr(), &mut p), OctomaStatus::Ok);
        assert!(octoma_last_error().is_null());
        octoma_poly_free(p);
        octoma_poly_free(ptr::null_mut());
        octoma_string_free(ptr::null_mut());
    }
}

#[test]
fn syzygy_check_on_fixture() {
    unsafe {
        let mut eq = false;
        assert_eq!(octoma_syzygy_check(c(&fixture("appendix.mat")).as_ptr(), &mut eq), OctomaStatus::Ok);
        assert!(eq);
        let first = fixture("appendix.mat").lines().filter(|l| !l.starts_with('#')).take(2).collect::<Vec<_>>().join("\n");
        assert_eq!(octoma_syzygy_check(c(&first).as_ptr(), &mut eq), OctomaStatus::Ok);
        assert!(!eq);
        assert_eq!(octoma_syzygy_check(c("x1_0, 0").as_ptr(), &mut eq), OctomaStatus::Config);
    }
}

#[test]
fn solver_round_trip() {
    unsafe {
        let mut cfg = ptr::null_mut();
        assert_eq!(octoma_ma_config_parse(c(&fixture("zero_forcing.json")).as_ptr(), &mut cfg), OctomaStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(octoma_ma_solve(cfg, &mut s), OctomaStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&owned(s)).unwrap();
        assert!(report["sup_phi"].as_f64().unwrap() < 1e-12);
        octoma_ma_config_free(cfg);

        assert_eq!(octoma_ma_config_parse(c(&fixture("not_elliptic.json")).as_ptr(), &mut cfg), OctomaStatus::Ok);
        octoma_ma_config_free(cfg);
        assert_eq!(octoma_ma_config_parse(c(&fixture("solve_nodal.json")).as_ptr(), &mut cfg), OctomaStatus::Config);
        assert_eq!(octoma_ma_config_parse(c("{\"max_freq\": }").as_ptr(), &mut cfg), OctomaStatus::Parse);
    }
}

#[test]
fn not_positive_definite_status() {
    let cfg = r#"{"active_coords": ["x1_0"], "max_freq": 2,
        "f": {"trigpoly": [{"k": [1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0], "cos": 0.0, "sin": 0.0}]},
        "g0": {"constant": {"a": 1.0, "b": -1.0, "q": [0,0,0,0,0,0,0,0]}}}"#;
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(octoma_ma_config_parse(c(cfg).as_ptr(), &mut h), OctomaStatus::NotPositiveDefinite);
        assert!(h.is_null());
        assert!(last_error().contains("G0"));
    }
}

#[test]
fn verify_suite_by_name() {
    unsafe {
        let mut passed = false;
        let mut s = ptr::null_mut();
        let st = octoma_verify_suite(c("herm").as_ptr(), 7, 5, OctomaBackend::Float, &mut passed, &mut s);
        assert_eq!(st, OctomaStatus::Ok);
        assert!(passed);
        let v: serde_json::Value = serde_json::from_str(&owned(s)).unwrap();
        assert_eq!(v["cases"], 5);
        let st = octoma_verify_suite(c("nope").as_ptr(), 7, 5, OctomaBackend::Exact, &mut passed, &mut s);
        assert_eq!(st, OctomaStatus::UnknownSuite);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(octoma_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
