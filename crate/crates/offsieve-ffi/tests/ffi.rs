//! Exercises the C ABI from Rust and smoke-tests the generated header.

use std::ffi::CStr;

use offsieve_ffi::*;

unsafe fn take(arr: *mut OffsieveU64Array) -> Vec<u64> {
    assert!(!arr.is_null());
    let data = offsieve_u64_array_data(arr);
    let len = offsieve_u64_array_len(arr);
    let out = std::slice::from_raw_parts(data, len).to_vec();
    offsieve_u64_array_free(arr);
    out
}

#[test]
fn battery_through_the_c_surface() {
    unsafe {
        let ctx = offsieve_ctx_new();
        let quad = offsieve_system_quad();
        let double = offsieve_system_double();

        assert!(!offsieve_version().is_null());
        let version = CStr::from_ptr(offsieve_version()).to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));

        assert!(offsieve_is_prime(1481));
        assert!(!offsieve_is_prime(1));

        let mut p = 0u64;
        assert_eq!(offsieve_nth_prime(ctx, 16, &mut p), OffsieveStatus::Ok);
        assert_eq!(p, 59);

        let mut alive = false;
        assert_eq!(offsieve_survives(ctx, quad, 35, 1, &mut alive), OffsieveStatus::Ok);
        assert!(alive);
        assert_eq!(offsieve_survives(ctx, quad, 35, 2, &mut alive), OffsieveStatus::Ok);
        assert!(!alive);

        let mut arr = std::ptr::null_mut();
        assert_eq!(offsieve_removed_residues(quad, 7, &mut arr), OffsieveStatus::Ok);
        assert_eq!(take(arr), vec![0, 1, 5, 6]);

        let mut period = std::ptr::null_mut();
        let mut survivors = std::ptr::null_mut();
        assert_eq!(offsieve_period(ctx, quad, 3, &mut period, &mut survivors), OffsieveStatus::Ok);
        assert_eq!(CStr::from_ptr(period).to_str().unwrap(), "210");
        assert_eq!(CStr::from_ptr(survivors).to_str().unwrap(), "3");
        offsieve_string_free(period);
        offsieve_string_free(survivors);

        let mut arr = std::ptr::null_mut();
        assert_eq!(offsieve_sieve_segment(ctx, quad, 1, 210, 3, &mut arr), OffsieveStatus::Ok);
        assert_eq!(take(arr), vec![11, 101, 191]);

        let mut arr = std::ptr::null_mut();
        assert_eq!(offsieve_minimum_values(ctx, double, 16, &mut arr), OffsieveStatus::Ok);
        let values = take(arr);
        assert_eq!(values.first(), Some(&3));
        assert_eq!(values.last(), Some(&71));
        assert_eq!(values.len(), 17);

        let mut arr = std::ptr::null_mut();
        assert_eq!(offsieve_jump_values(ctx, quad, 1000, &mut arr), OffsieveStatus::Ok);
        assert_eq!(take(arr), vec![5, 11, 101, 191, 821]);

        let mut arr = std::ptr::null_mut();
        assert_eq!(offsieve_twin_formers(ctx, 2, 100, &mut arr), OffsieveStatus::Ok);
        assert_eq!(take(arr), vec![3, 5, 11, 17, 29, 41, 59, 71]);

        let mut arr = std::ptr::null_mut();
        assert_eq!(offsieve_quadruplet_starts(ctx, 10, 1000, &mut arr), OffsieveStatus::Ok);
        assert_eq!(take(arr), vec![11, 101, 191, 821]);

        let (mut birth, mut dead) = (0u64, 0u64);
        assert_eq!(offsieve_life_span(821, &mut birth, &mut dead), OffsieveStatus::Ok);
        assert_eq!((birth, dead), (23, 821));

        offsieve_system_free(quad);
        offsieve_system_free(double);
        offsieve_ctx_free(ctx);
    }
}

#[test]
fn offsets_copy_out() {
    unsafe {
        let quad = offsieve_system_quad();
        assert_eq!(offsieve_system_offset_count(quad), 4);
        let mut buf = [0u64; 8];
        assert_eq!(offsieve_system_offsets(quad, buf.as_mut_ptr(), buf.len()), 4);
        assert_eq!(&buf[..4], &[0, 2, 6, 8]);
        offsieve_system_free(quad);
    }
}

#[test]
fn custom_system_validation_crosses_the_boundary() {
    unsafe {
        let mut sys = std::ptr::null_mut();
        let ok = [0u64, 4];
        assert_eq!(offsieve_system_custom(ok.as_ptr(), ok.len(), &mut sys), OffsieveStatus::Ok);
        assert!(!sys.is_null());
        offsieve_system_free(sys);

        let mut sys = std::ptr::null_mut();
        let bad = [0u64, 2, 4]; // covers every class mod 3
        assert_eq!(
            offsieve_system_custom(bad.as_ptr(), bad.len(), &mut sys),
            OffsieveStatus::ErrDomain
        );
        assert!(sys.is_null());
    }
}

#[test]
fn null_and_domain_errors() {
    unsafe {
        let ctx = offsieve_ctx_new();
        let quad = offsieve_system_quad();
        let mut out = 0u64;

        assert_eq!(
            offsieve_nth_prime(std::ptr::null_mut(), 0, &mut out),
            OffsieveStatus::ErrNull
        );
        assert_eq!(offsieve_nth_prime(ctx, 0, std::ptr::null_mut()), OffsieveStatus::ErrNull);

        let mut alive = false;
        // n = 0 is outside the sieve's domain.
        assert_eq!(offsieve_survives(ctx, quad, 0, 0, &mut alive), OffsieveStatus::ErrDomain);

        let mut arr = std::ptr::null_mut();
        assert_eq!(offsieve_sieve_segment(ctx, quad, 10, 5, 0, &mut arr), OffsieveStatus::ErrDomain);
        assert_eq!(offsieve_removed_residues(quad, 0, &mut arr), OffsieveStatus::ErrDomain);

        let (mut birth, mut dead) = (0u64, 0u64);
        assert_eq!(offsieve_life_span(7, &mut birth, &mut dead), OffsieveStatus::ErrDomain);

        // Frees tolerate null.
        offsieve_system_free(std::ptr::null_mut());
        offsieve_ctx_free(std::ptr::null_mut());
        offsieve_u64_array_free(std::ptr::null_mut());
        offsieve_string_free(std::ptr::null_mut());

        offsieve_system_free(quad);
        offsieve_ctx_free(ctx);
    }
}

#[test]
fn committed_header_is_current() {
    let header = include_str!("../include/offsieve.h");
    for symbol in [
        "OFFSIEVE_STATUS_OK",
        "OFFSIEVE_STATUS_ERR_DOMAIN",
        "typedef struct OffsieveCtx OffsieveCtx;",
        "typedef struct OffsieveSystem OffsieveSystem;",
        "offsieve_ctx_new",
        "offsieve_system_custom",
        "offsieve_period",
        "offsieve_minimum_values",
        "offsieve_jump_values",
        "offsieve_quadruplet_starts",
        "offsieve_u64_array_free",
    ] {
        assert!(header.contains(symbol), "header lost {symbol:?}");
    }
}

/// Compile a miniature C client against the generated header when a C
/// compiler is available; otherwise skip quietly.
#[test]
fn header_compiles_as_c() {
    let cc = ["cc", "gcc", "clang"]
        .iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
        .copied();
    let Some(cc) = cc else {
        eprintln!("no C compiler on PATH; skipping header compile check");
        return;
    };
    let include_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let src_path = std::env::temp_dir().join("offsieve_header_check.c");
    std::fs::write(
        &src_path,
        r#"
#include "offsieve.h"
#include <stddef.h>

int check(void) {
    OffsieveCtx *ctx = offsieve_ctx_new();
    OffsieveSystem *sys = offsieve_system_quad();
    uint64_t p = 0;
    OffsieveStatus st = offsieve_nth_prime(ctx, 3, &p);
    offsieve_system_free(sys);
    offsieve_ctx_free(ctx);
    return st == OFFSIEVE_STATUS_OK && p == 7;
}
"#,
    )
    .unwrap();
    let out = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include_dir])
        .arg(&src_path)
        .output()
        .expect("compiler runs");
    assert!(
        out.status.success(),
        "C compile failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
