use std::ffi::{CStr, CString};
use std::ptr;

use perfcode_ffi::*;

fn group(spec: &str) -> *mut PcGroup {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { pc_group_from_spec(spec.as_ptr(), &mut g) }, PcStatus::Ok);
    assert!(!g.is_null());
    g
}

fn subgroup(g: *const PcGroup, gens: &str) -> *mut PcSubgroup {
    let gens = CString::new(gens).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { pc_subgroup_from_labels(g, gens.as_ptr(), &mut h) },
        PcStatus::Ok
    );
    h
}

fn last_error() -> String {
    let p = pc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn group_arithmetic_and_labels() {
    let g = group("Q(24)");
    unsafe {
        assert_eq!(pc_group_order(g), 24);
        let mut p = 0;
        // y·y = x^6
        assert_eq!(pc_group_multiply(g, 12, 12, &mut p), PcStatus::Ok);
        assert_eq!(p, 6);
        assert_eq!(pc_group_inverse(g, 1, &mut p), PcStatus::Ok);
        assert_eq!(p, 11);
        let mut ord = 0;
        assert_eq!(pc_group_element_order(g, 12, &mut ord), PcStatus::Ok);
        assert_eq!(ord, 4);

        let mut label = ptr::null_mut();
        assert_eq!(pc_group_label(g, 15, &mut label), PcStatus::Ok);
        assert_eq!(CStr::from_ptr(label).to_str().unwrap(), "x^3*y");
        pc_string_free(label);

        let expr = CString::new("y*x").unwrap();
        assert_eq!(pc_group_find(g, expr.as_ptr(), &mut p), PcStatus::Ok);
        assert_eq!(p, 23);

        assert_eq!(pc_group_multiply(g, 24, 0, &mut p), PcStatus::ElementOutOfRange);
        assert!(last_error().contains("24"));
        pc_group_free(g);
    }
}

#[test]
fn decide_quaternion_subgroup() {
    let g = group("Q(24)");
    let h = subgroup(g, "x^4");
    unsafe {
        assert_eq!(pc_subgroup_order(h), 3);
        let mut d = ptr::null_mut();
        assert_eq!(pc_decide(g, h, &mut d), PcStatus::Ok);
        assert!(pc_decision_verdict(d));

        let mut len = 0;
        assert_eq!(
            pc_decision_witness(d, ptr::null_mut(), 0, &mut len),
            PcStatus::BufferTooSmall
        );
        assert_eq!(len, 7);
        let mut s = vec![0u32; len];
        assert_eq!(pc_decision_witness(d, s.as_mut_ptr(), s.len(), &mut len), PcStatus::Ok);
        let mut code = [0u32; 3];
        assert_eq!(pc_subgroup_elements(h, code.as_mut_ptr(), 3, &mut len), PcStatus::Ok);
        assert_eq!(code, [0, 4, 8]);

        let mut perfect = false;
        assert_eq!(
            pc_verify(g, s.as_ptr(), s.len(), code.as_ptr(), code.len(), &mut perfect),
            PcStatus::Ok
        );
        assert!(perfect);

        let mut json = ptr::null_mut();
        assert_eq!(pc_decision_to_json(d, &mut json), PcStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        pc_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verdict"], true);
        assert_eq!(v["witness"].as_array().unwrap().len(), 7);

        pc_decision_free(d);
        pc_subgroup_free(h);
        pc_group_free(g);
    }
}

#[test]
fn negative_decision_has_empty_witness() {
    let g = group("Z(8)");
    let h = subgroup(g, "4");
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(pc_decide(g, h, &mut d), PcStatus::Ok);
        assert!(!pc_decision_verdict(d));
        let mut len = 99;
        assert_eq!(pc_decision_witness(d, ptr::null_mut(), 0, &mut len), PcStatus::Ok);
        assert_eq!(len, 0);
        let mut cp = true;
        assert_eq!(pc_group_is_code_perfect(g, false, &mut cp), PcStatus::Ok);
        assert!(!cp);
        pc_decision_free(d);
        pc_subgroup_free(h);
        pc_group_free(g);
    }
}

#[test]
fn generated_from_indices() {
    let g = group("D(12)");
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(pc_subgroup_generated(g, [2u32, 6].as_ptr(), 2, &mut h), PcStatus::Ok);
        assert_eq!(pc_subgroup_order(h), 6);
        pc_subgroup_free(h);
        assert_eq!(pc_subgroup_generated(g, ptr::null(), 0, &mut h), PcStatus::Ok);
        assert_eq!(pc_subgroup_order(h), 1);
        pc_subgroup_free(h);
        assert_eq!(pc_subgroup_generated(g, ptr::null(), 1, &mut h), PcStatus::NullPointer);
        assert!(h.is_null());
        let mut cp = false;
        assert_eq!(pc_group_is_code_perfect(g, true, &mut cp), PcStatus::Ok);
        assert!(cp);
        pc_group_free(g);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    let bad = CString::new("Z(").unwrap();
    assert_eq!(
        unsafe { pc_group_from_spec(bad.as_ptr(), &mut g) },
        PcStatus::SyntaxError
    );
    assert!(g.is_null());
    assert!(last_error().contains("byte 2"));

    let odd = CString::new("D(5)").unwrap();
    assert_eq!(
        unsafe { pc_group_from_spec(odd.as_ptr(), &mut g) },
        PcStatus::SemanticError
    );
    assert_eq!(
        unsafe { pc_group_from_spec(ptr::null(), &mut g) },
        PcStatus::NullPointer
    );

    let z6 = group("Z(6)");
    let mut h = ptr::null_mut();
    let unknown = CString::new("q").unwrap();
    assert_eq!(
        unsafe { pc_subgroup_from_labels(z6, unknown.as_ptr(), &mut h) },
        PcStatus::UnknownLabel
    );

    let mut perfect = false;
    // S = {1} is not inverse-closed in Z6
    let s = [1u32];
    let c = [0u32, 3];
    assert_eq!(
        unsafe { pc_verify(z6, s.as_ptr(), 1, c.as_ptr(), 2, &mut perfect) },
        PcStatus::InvalidConnectionSet
    );

    // a subgroup of a different group is rejected
    let z4 = group("Z(4)");
    let h4 = subgroup(z4, "2");
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { pc_decide(z6, h4, &mut d) }, PcStatus::NotSubgroup);

    // success clears the previous message
    assert_eq!(unsafe { pc_group_order(z6) }, 6);
    let mut p = 0;
    assert_eq!(unsafe { pc_group_multiply(z6, 1, 2, &mut p) }, PcStatus::Ok);
    assert!(pc_last_error_message().is_null());

    unsafe {
        pc_subgroup_free(h4);
        pc_group_free(z4);
        pc_group_free(z6);
        pc_group_free(ptr::null_mut());
        pc_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/perfcode.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct PcGroup PcGroup;"));
}
