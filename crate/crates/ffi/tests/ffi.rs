use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use autseries_ffi::*;

const SIGMA_MIN: &str = "(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t";

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(as_last_error()) }.to_string_lossy().into_owned()
}

fn solve_min() -> *mut AsAutomaton {
    let (eq, pre) = (cstr(SIGMA_MIN), cstr("t+O(t^2)"));
    let mut a = ptr::null_mut();
    let s = unsafe { as_solve(eq.as_ptr(), pre.as_ptr(), &mut a) };
    assert_eq!(s, AsStatus::Ok, "{}", last_error());
    a
}

#[test]
fn solve_and_query_sigma_min() {
    let a = solve_min();
    unsafe {
        let mut states = 0usize;
        assert_eq!(as_automaton_num_states(a, &mut states), AsStatus::Ok);
        assert_eq!(states, 5);
        let coeffs: Vec<u8> = (0..8)
            .map(|k| {
                let mut c = 9u8;
                assert_eq!(as_automaton_coeff(a, k, &mut c), AsStatus::Ok);
                c
            })
            .collect();
        assert_eq!(coeffs, [0, 1, 1, 0, 1, 1, 0, 1]);
        let (mut n, mut cert) = (0u32, false);
        assert_eq!(as_exact_order(a, 4, &mut n, &mut cert), AsStatus::Ok);
        assert_eq!((n, cert), (2, true));
        let mut b = [0usize; 2];
        assert_eq!(as_break_sequence(a, 2, b.as_mut_ptr()), AsStatus::Ok);
        assert_eq!(b, [1, 3]);
        let eq = cstr(SIGMA_MIN);
        let mut level = AsLevel::Inconclusive;
        assert_eq!(as_classify(a, eq.as_ptr(), 64, &mut level), AsStatus::Ok);
        assert_eq!(level, AsLevel::NotQs);
        as_automaton_free(a);
    }
}

#[test]
fn text_round_trip() {
    let a = solve_min();
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(as_automaton_to_text(a, &mut text), AsStatus::Ok);
        let mut b = ptr::null_mut();
        assert_eq!(as_automaton_from_text(text, &mut b), AsStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(as_automaton_minimize(b, &mut m), AsStatus::Ok);
        let mut eq = false;
        assert_eq!(as_automaton_equal_series(a, m, &mut eq), AsStatus::Ok);
        assert!(eq);
        as_string_free(text);
        as_automaton_free(a);
        as_automaton_free(b);
        as_automaton_free(m);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut a = ptr::null_mut();
        let bad = cstr("X^^2");
        assert_eq!(as_solve(bad.as_ptr(), ptr::null(), &mut a), AsStatus::Parse);
        assert!(!last_error().is_empty());
        assert!(a.is_null());
        let eq = cstr(SIGMA_MIN);
        assert_eq!(as_solve(eq.as_ptr(), ptr::null(), ptr::null_mut()), AsStatus::NullPointer);
        let pre = cstr("t^2+O(t^3)");
        assert_eq!(as_solve(eq.as_ptr(), pre.as_ptr(), &mut a), AsStatus::NoRoot);
        let mut states = 0usize;
        assert_eq!(as_automaton_num_states(ptr::null(), &mut states), AsStatus::NullPointer);
        let text = cstr("p=2\nstates=1\n0 2 1\n");
        assert_eq!(as_automaton_from_text(text.as_ptr(), &mut a), AsStatus::Parse);
        let msg = CStr::from_ptr(as_status_message(AsStatus::CapsExhausted));
        assert_eq!(msg.to_str().unwrap(), "search caps exhausted");
        as_automaton_free(ptr::null_mut());
        as_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api_and_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/autseries.h")).unwrap();
    for f in [
        "as_solve",
        "as_automaton_from_text",
        "as_automaton_free",
        "as_automaton_num_states",
        "as_automaton_coeff",
        "as_automaton_minimize",
        "as_automaton_equal_series",
        "as_automaton_to_text",
        "as_string_free",
        "as_exact_order",
        "as_break_sequence",
        "as_classify",
        "as_last_error",
        "as_status_message",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from the header");
    }
    assert!(header.contains("typedef struct AsAutomaton AsAutomaton;"));
    // A C compiler is optional; when present the header must compile.
    match Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{dir}/include"))
        .arg(format!("{dir}/tests/c/smoke.c"))
        .output()
    {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(e) => eprintln!("no C compiler ({e}); skipped the compile check"),
    }
}
