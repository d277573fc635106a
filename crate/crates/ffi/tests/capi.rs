use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qspheres_ffi::*;

fn session(alg: &str, q: f64) -> *mut QsSession {
    let name = CString::new(alg).unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { qs_session_new(name.as_ptr(), q, &mut h) };
    assert_eq!(st, QsStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error(h: *const QsSession) -> String {
    unsafe { CStr::from_ptr(qs_session_last_error(h)) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn session_rejects_bad_input() {
    let mut h = ptr::null_mut();
    let name = CString::new("podles").unwrap();
    assert_eq!(
        unsafe { qs_session_new(name.as_ptr(), 1.5, &mut h) },
        QsStatus::InvalidQ
    );
    assert!(h.is_null());
    let bad = CString::new("torus").unwrap();
    assert_eq!(
        unsafe { qs_session_new(bad.as_ptr(), 0.5, &mut h) },
        QsStatus::Parse
    );
    assert_eq!(
        unsafe { qs_session_new(ptr::null(), 0.5, &mut h) },
        QsStatus::NullPointer
    );
    assert_eq!(
        unsafe { qs_session_new(name.as_ptr(), 0.5, ptr::null_mut()) },
        QsStatus::NullPointer
    );
    unsafe { qs_session_free(ptr::null_mut()) };
}

#[test]
fn verify_reports_small_residuals_and_catches_perturbation() {
    let h = session("podles", 0.5);
    unsafe {
        assert_eq!(qs_session_set_s(h, 0.3), QsStatus::Ok);
        let mut r = QsVerifyReport::default();
        assert_eq!(qs_verify(h, &mut r), QsStatus::Ok);
        assert!(r.relation < 1e-10 && r.adjoint < 1e-10, "{r:?}");
        assert!(r.labels > 0);
        assert_eq!(qs_session_set_perturb(h, 1e-3), QsStatus::Ok);
        assert_eq!(qs_verify(h, &mut r), QsStatus::Ok);
        assert!(r.relation > 1e-5, "{r:?}");
        qs_session_free(h);
    }
}

#[test]
fn podles_index_equals_twice_the_charge() {
    let h = session("podles", 0.4);
    unsafe {
        qs_session_set_s(h, 0.2);
        for twice in [-3, -1, 1, 2] {
            assert_eq!(qs_session_set_charge_twice(h, twice), QsStatus::Ok);
            let mut v = f64::NAN;
            assert_eq!(qs_index(h, &mut v), QsStatus::Ok, "{}", last_error(h));
            assert!((v - twice as f64).abs() < 1e-6, "2N = {twice}: {v}");
        }
        qs_session_free(h);
    }
}

#[test]
fn unsupported_computation_sets_message() {
    let h = session("odd", 0.5);
    unsafe {
        let mut v = 0.0;
        assert_eq!(qs_index(h, &mut v), QsStatus::Unsupported);
        assert!(last_error(h).contains("index"));
        assert_eq!(v, 0.0);
        assert_eq!(qs_session_set_ell(h, 1), QsStatus::InvalidParam);
        assert!(!last_error(h).is_empty());
        assert_eq!(qs_session_set_cutoff_twice(h, 8), QsStatus::Ok);
        assert!(last_error(h).is_empty());
        qs_session_free(h);
    }
}

#[test]
fn odd_sphere_integral_and_multiplicity() {
    let h = session("odd", 0.5);
    let w = CString::new("z3 z3*").unwrap();
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        assert_eq!(
            qs_nc_integral(h, w.as_ptr(), &mut re, &mut im),
            QsStatus::Ok
        );
        assert!((re - 1.0 / 6.0).abs() < 1e-15 && im == 0.0);
        let bad = CString::new("z3 (").unwrap();
        assert_eq!(
            qs_nc_integral(h, bad.as_ptr(), &mut re, &mut im),
            QsStatus::Parse
        );
        qs_session_free(h);
    }
    // SU(3) with λ = (1,0) and (0,1): μ_2 = 3 + 3.
    let mut m = 0;
    assert_eq!(unsafe { qs_odd_multiplicity(2, 2, &mut m) }, QsStatus::Ok);
    assert_eq!(m, 6);
    assert_eq!(
        unsafe { qs_odd_multiplicity(2, 0, &mut m) },
        QsStatus::InvalidParam
    );
}

#[test]
fn status_messages_are_distinct() {
    let all = [
        QsStatus::Ok,
        QsStatus::NullPointer,
        QsStatus::InvalidUtf8,
        QsStatus::InvalidQ,
        QsStatus::InvalidParam,
        QsStatus::Domain,
        QsStatus::DimensionMismatch,
        QsStatus::WrongAlgebra,
        QsStatus::UnboundGenerator,
        QsStatus::MarginTooSmall,
        QsStatus::Parse,
        QsStatus::Unsupported,
        QsStatus::Panic,
    ];
    let msgs: std::collections::HashSet<String> = all
        .iter()
        .map(|&s| {
            unsafe { CStr::from_ptr(qs_status_message(s)) }
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    assert_eq!(msgs.len(), all.len());
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/qspheres.h"),
    )
    .unwrap();
    for f in [
        "qs_session_new",
        "qs_session_free",
        "qs_session_last_error",
        "qs_session_set_s",
        "qs_session_set_charge_twice",
        "qs_session_set_ell",
        "qs_session_set_cutoff_twice",
        "qs_session_set_perturb",
        "qs_verify",
        "qs_index",
        "qs_qindex",
        "qs_haar",
        "qs_nc_integral",
        "qs_odd_multiplicity",
        "qs_status_message",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct QsSession QsSession;"));
}

/// Compile a small C program against the header and the static library.
#[test]
fn c_program_links_against_header() {
    let exe = std::env::current_exe().unwrap();
    let target = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = target.join("libqspheres_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "qspheres.h"
int main(void) {
    QsSession *h = NULL;
    if (qs_session_new("podles", 0.5, &h) != QS_STATUS_OK) return 1;
    QsVerifyReport r;
    if (qs_verify(h, &r) != QS_STATUS_OK) return 2;
    if (r.relation > 1e-10 || r.labels == 0) return 3;
    double v = 0.0;
    if (qs_nc_integral(h, "z3 z3*", &v, &v) != QS_STATUS_UNSUPPORTED) return 4;
    if (strlen(qs_session_last_error(h)) == 0) return 5;
    qs_session_free(h);
    printf("ok %zu\n", r.labels);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("capi_demo");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
