//! Exercises the C ABI end to end through the exported symbols: handle
//! lifecycle, report payloads, transforms, error codes and messages.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use vknot_capi::*;

/// Takes ownership of a library string and returns it as a Rust `String`.
unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { vk_string_free(p) };
    s
}

unsafe fn parse(code: &str) -> *mut VkDiagram {
    let code = CString::new(code).unwrap();
    let mut d = ptr::null_mut();
    let status = unsafe { vk_diagram_parse(code.as_ptr(), &mut d) };
    assert_eq!(status, VkStatus::Ok);
    assert!(!d.is_null());
    d
}

#[test]
fn parse_report_serialize_free() {
    unsafe {
        let d = parse("knot: O1+ O2+ U1+ U2+");

        let mut kind = VkKind::Link;
        assert_eq!(vk_diagram_kind(d, &mut kind), VkStatus::Ok);
        assert_eq!(kind, VkKind::Knot);

        let mut code = ptr::null_mut();
        assert_eq!(vk_diagram_serialize(d, &mut code), VkStatus::Ok);
        assert_eq!(take_string(code), "knot: O1+ O2+ U1+ U2+");

        let mut json = ptr::null_mut();
        assert_eq!(vk_diagram_report_json(d, &mut json), VkStatus::Ok);
        let json = take_string(json);
        assert!(json.starts_with(r#"{"wr":2,"J":2,"Q":2,"#), "{json}");

        let mut text = ptr::null_mut();
        assert_eq!(vk_diagram_report_text(d, &mut text), VkStatus::Ok);
        assert!(take_string(text).contains("writhe_poly = 1 + t^2"));

        vk_diagram_free(d);
    }
}

#[test]
fn transforms_make_new_handles_and_respect_kinds() {
    unsafe {
        let long = parse("long: O1+ U1+");
        let mut closed = ptr::null_mut();
        assert_eq!(
            vk_diagram_transform(long, VkTransform::Closure, &mut closed),
            VkStatus::Ok
        );
        let mut code = ptr::null_mut();
        assert_eq!(vk_diagram_serialize(closed, &mut code), VkStatus::Ok);
        assert_eq!(take_string(code), "knot: O1+ U1+");
        vk_diagram_free(closed);

        // The original handle is still alive and unchanged.
        let mut code = ptr::null_mut();
        assert_eq!(vk_diagram_serialize(long, &mut code), VkStatus::Ok);
        assert_eq!(take_string(code), "long: O1+ U1+");

        let mut out = ptr::null_mut();
        assert_eq!(
            vk_diagram_transform(long, VkTransform::Mirror, &mut out),
            VkStatus::KindMismatch
        );
        let msg = take_string(vk_last_error());
        assert!(msg.contains("not defined for long diagrams"), "{msg}");
        vk_diagram_free(long);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    unsafe {
        let mut d = ptr::null_mut();

        let bad = CString::new("knot: O1+ O1+").unwrap();
        assert_eq!(
            vk_diagram_parse(bad.as_ptr(), &mut d),
            VkStatus::InvalidDiagram
        );
        assert_eq!(
            take_string(vk_last_error()),
            "InvalidDiagram: id 1 has two O tokens"
        );

        let junk = CString::new("wibble").unwrap();
        assert_eq!(
            vk_diagram_parse(junk.as_ptr(), &mut d),
            VkStatus::ParseError
        );
        assert!(take_string(vk_last_error()).starts_with("ParseError:"));

        assert_eq!(
            vk_diagram_parse(ptr::null(), &mut d),
            VkStatus::NullArgument
        );
        assert_eq!(
            vk_diagram_serialize(ptr::null(), &mut ptr::null_mut()),
            VkStatus::NullArgument
        );

        // Freeing null is a no-op.
        vk_diagram_free(ptr::null_mut());
        vk_string_free(ptr::null_mut());
    }
}

#[test]
fn fuzzing_over_the_abi_is_reproducible() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(
            vk_fuzz_json(VkFuzzKind::Link, 11, 20, 8, 6, &mut a),
            VkStatus::Ok
        );
        assert_eq!(
            vk_fuzz_json(VkFuzzKind::Link, 11, 20, 8, 6, &mut b),
            VkStatus::Ok
        );
        let (a, b) = (take_string(a), take_string(b));
        assert_eq!(a, b);
        assert!(a.contains(r#""failures":[]"#), "{a}");
    }
}
