use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lattice_entropy_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = te_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn catalog(name: &str) -> *mut TeLattice {
    let mut h = ptr::null_mut();
    let status = unsafe { te_lattice_from_catalog(cstr(name).as_ptr(), &mut h) };
    assert_eq!(status, TeStatus::Ok);
    assert!(!h.is_null());
    h
}

#[test]
fn square_invariants_through_handles() {
    let h = catalog("square");
    let (mut v, mut e, mut f) = (0usize, 0usize, 0usize);
    assert_eq!(unsafe { te_lattice_counts(h, &mut v, &mut e, &mut f) }, TeStatus::Ok);
    assert_eq!((v, e, f), (1, 2, 1));
    let mut nu = 0.0;
    assert_eq!(unsafe { te_lattice_nu_bipyramid(h, &mut nu) }, TeStatus::Ok);
    let mut nb = 0.0;
    assert_eq!(unsafe { te_lattice_nu_bar(h, &mut nb) }, TeStatus::Ok);
    assert!((nu - 7.327724753).abs() < 1e-8);
    assert!((nu - nb).abs() < 1e-12);
    let (mut z, mut err) = (0.0, 0.0);
    assert_eq!(unsafe { te_lattice_entropy_logdet(h, 1e-6, &mut z, &mut err) }, TeStatus::Ok);
    assert!((z - 1.1662436).abs() < 1e-6);
    assert!(te_last_error_message().is_null());
    unsafe { te_lattice_free(h) };
}

#[test]
fn json_round_trip() {
    let h = catalog("kagome");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { te_lattice_to_json(h, &mut s) }, TeStatus::Ok);
    let mut h2 = ptr::null_mut();
    assert_eq!(unsafe { te_lattice_from_json(s, &mut h2) }, TeStatus::Ok);
    let mut a = 0;
    let mut b = 0;
    unsafe {
        te_lattice_counts(h2, &mut a, &mut b, ptr::null_mut());
        te_string_free(s);
        te_lattice_free(h);
        te_lattice_free(h2);
    }
    assert_eq!((a, b), (3, 6));
}

#[test]
fn tau_fourier_matches_small_cover() {
    let h = catalog("square");
    let mut t = 0.0;
    assert_eq!(unsafe { te_lattice_tau_log_fourier(h, 2, &mut t) }, TeStatus::Ok);
    assert!((t - 32f64.ln()).abs() < 1e-10);
    assert_eq!(unsafe { te_lattice_tau_log_fourier(h, 0, &mut t) }, TeStatus::InvalidInput);
    unsafe { te_lattice_free(h) };
}

#[test]
fn error_codes_and_messages() {
    let mut h = ptr::null_mut();
    let status = unsafe { te_lattice_from_catalog(cstr("nope").as_ptr(), &mut h) };
    assert_eq!(status, TeStatus::UnknownName);
    assert!(last_error().contains("nope"));
    assert!(h.is_null());

    assert_eq!(unsafe { te_lattice_from_catalog(ptr::null(), &mut h) }, TeStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { te_lattice_from_catalog(bad.as_ptr().cast(), &mut h) },
        TeStatus::InvalidUtf8
    );
    assert_eq!(
        unsafe { te_lattice_from_json(cstr("{").as_ptr(), &mut h) },
        TeStatus::Parse
    );
    let mut x = 0.0;
    assert_eq!(unsafe { te_bipyramid_volume(1, &mut x) }, TeStatus::InvalidInput);
    assert_eq!(unsafe { te_lattice_nu_bar(ptr::null(), &mut x) }, TeStatus::NullPointer);
    unsafe { te_lattice_free(ptr::null_mut()) };
    unsafe { te_string_free(ptr::null_mut()) };
}

#[test]
fn scalar_functions() {
    let mut v = 0.0;
    assert_eq!(unsafe { te_bipyramid_volume(4, &mut v) }, TeStatus::Ok);
    assert!((v - 3.66386).abs() < 1e-5);
    assert!((te_lobachevsky(std::f64::consts::PI / 6.0) - 0.50747080).abs() < 1e-8);
    assert!(te_lobachevsky(f64::INFINITY).is_nan());
    let poly = cstr("1 0 0\n1 1 0\n1 0 1\n");
    let mut m = 0.0;
    assert_eq!(
        unsafe { te_mahler_measure_text(poly.as_ptr(), 1e-8, &mut m, ptr::null_mut()) },
        TeStatus::Ok
    );
    assert!((m - 0.3230659472).abs() < 1e-7);
}

#[test]
fn catalog_enumeration() {
    assert_eq!(te_catalog_count(), 17);
    let first = unsafe { CStr::from_ptr(te_catalog_name(0)) };
    assert_eq!(first.to_str().unwrap(), "triangular");
    assert!(te_catalog_name(17).is_null());
}

#[test]
fn header_is_valid_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/lattice_entropy.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["te_lattice_from_catalog", "te_last_error_message", "TE_STATUS_NON_CONVERGENCE"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(cc) = which_cc() else { return };
    let src = std::env::temp_dir().join(format!("te_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"lattice_entropy.h\"\nint main(void){TeLattice*h=0;\
         return te_lattice_from_catalog(\"square\",&h)==TE_STATUS_OK?0:1;}\n",
    )
    .unwrap();
    let out = Command::new(cc)
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&src);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
