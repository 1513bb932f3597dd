use std::ffi::{CStr, CString};
use std::ptr;

use mrsolve_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(mr_last_error_message()) }.to_string_lossy().into_owned()
}

fn atomic(a: f64, alpha: f64, b: f64) -> *mut MrModel {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { mr_model_new_atomic(a, alpha, b, &mut m) }, MrStatus::Ok);
    assert!(!m.is_null());
    m
}

#[test]
fn energy_and_epsilon() {
    let m = atomic(80.0, 0.75, 40.0);
    let mut e = 0.0;
    let mut eps = 0.0;
    unsafe {
        assert_eq!(mr_energy(m, 0, 1, &mut e), MrStatus::Ok);
        assert_eq!(mr_epsilon(m, 0, 1, &mut eps), MrStatus::Ok);
        mr_model_free(m);
    }
    assert!((e - -0.1205793).abs() < 5e-8, "{e}");
    assert!((e + eps * eps / (2.0 * 1600.0)).abs() < 1e-14);
    assert!(last_error().is_empty());
}

#[test]
fn unbound_level_reports_status_and_message() {
    let m = atomic(20.0, 0.75, 10.0);
    let mut e = 0.0;
    let status = unsafe { mr_energy(m, 0, 5, &mut e) };
    unsafe { mr_model_free(m) };
    assert_eq!(status, MrStatus::NoBoundState);
    assert!(last_error().contains("no bound state"), "{}", last_error());
}

#[test]
fn invalid_arguments() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { mr_model_new_atomic(80.0, 0.75, -1.0, &mut m) }, MrStatus::Domain);
    assert!(m.is_null());
    assert_eq!(unsafe { mr_model_new_molecular(80.0, 0.75, 0.4, 0.0, &mut m) }, MrStatus::Domain);
    assert_eq!(unsafe { mr_model_new_atomic(80.0, 0.75, 40.0, ptr::null_mut()) }, MrStatus::NullPointer);
    let mut e = 0.0;
    assert_eq!(unsafe { mr_energy(ptr::null(), 0, 0, &mut e) }, MrStatus::NullPointer);
    assert!(last_error().contains("null"));
    unsafe {
        mr_model_free(ptr::null_mut());
        mr_wavefunction_free(ptr::null_mut());
        assert_eq!(mr_wavefunction_len(ptr::null()), 0);
    }
}

#[test]
fn labels() {
    let (mut n, mut l) = (9, 9);
    let label = CString::new("3d").unwrap();
    assert_eq!(unsafe { mr_state_from_label(label.as_ptr(), &mut n, &mut l) }, MrStatus::Ok);
    assert_eq!((n, l), (0, 2));
    let bad = CString::new("2z").unwrap();
    assert_eq!(unsafe { mr_state_from_label(bad.as_ptr(), &mut n, &mut l) }, MrStatus::InvalidLabel);
    assert_eq!(unsafe { mr_state_from_label(ptr::null(), &mut n, &mut l) }, MrStatus::NullPointer);
}

#[test]
fn critical_coupling_and_potential() {
    let mut ac = 0.0;
    assert_eq!(unsafe { mr_critical_coupling(0, 1, 0.75, &mut ac) }, MrStatus::Ok);
    let m = atomic(ac + 1e-9, 0.75, 40.0);
    let mut e = 1.0;
    unsafe {
        assert_eq!(mr_energy(m, 0, 1, &mut e), MrStatus::Ok);
        let mut v = 0.0;
        assert_eq!(mr_potential(m, 5.0, &mut v), MrStatus::Ok);
        assert!(v.is_finite());
        assert_eq!(mr_potential(m, -1.0, &mut v), MrStatus::Domain);
        mr_model_free(m);
    }
    assert!(e <= 0.0 && e > -1e-15);
    assert_eq!(unsafe { mr_critical_coupling(0, 0, f64::NAN, &mut ac) }, MrStatus::Domain);
}

#[test]
fn numerov_through_the_abi() {
    let m = atomic(80.0, 0.75, 40.0);
    let (mut approx, mut exact, mut closed) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(mr_numerov_eigenvalue(m, 0, 1, 0, &mut approx), MrStatus::Ok);
        assert_eq!(mr_numerov_eigenvalue(m, 0, 1, 1, &mut exact), MrStatus::Ok);
        assert_eq!(mr_energy(m, 0, 1, &mut closed), MrStatus::Ok);
        mr_model_free(m);
    }
    assert!((approx - closed).abs() < 1e-9);
    assert!((exact - -0.1205271).abs() < 1e-5, "{exact}");
}

#[test]
fn molecular_model_matches_core() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { mr_model_new_molecular(80.0, 0.0, 0.4, 0.9801045, &mut m) }, MrStatus::Ok);
    let mut e = 0.0;
    unsafe {
        assert_eq!(mr_energy(m, 0, 1, &mut e), MrStatus::Ok);
        mr_model_free(m);
    }
    assert!((e - -4.81152646).abs() < 1e-4, "{e}");
}

#[test]
fn wavefunction_handle() {
    let m = atomic(80.0, 0.75, 40.0);
    let grid: Vec<f64> = (1..=4000).map(|i| i as f64 * 0.05).collect();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(mr_wavefunction_new(m, 1, 1, grid.as_ptr(), grid.len(), &mut f), MrStatus::Ok);
        assert_eq!(mr_wavefunction_len(f), grid.len());
        let mut small = vec![0.0; 10];
        assert_eq!(mr_wavefunction_values(f, small.as_mut_ptr(), small.len()), MrStatus::BufferTooSmall);
        let mut values = vec![0.0; grid.len()];
        assert_eq!(mr_wavefunction_values(f, values.as_mut_ptr(), values.len()), MrStatus::Ok);
        let (mut norm, mut closed) = (0.0, -1);
        assert_eq!(mr_wavefunction_norm(f, &mut norm, &mut closed), MrStatus::Ok);
        assert!(norm > 0.0);
        assert_eq!(closed, 1);
        let mut nodes = 9;
        assert_eq!(mr_wavefunction_nodes(f, &mut nodes), MrStatus::Ok);
        assert_eq!(nodes, 1);
        mr_wavefunction_free(f);
        mr_model_free(m);
        let integral: f64 = values.iter().map(|v| v * v * 0.05).sum();
        assert!((integral - 1.0).abs() < 1e-3, "{integral}");
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(mr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
