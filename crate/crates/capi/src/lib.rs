//! C ABI for the `vknot` library.
//!
//! Diagrams are opaque handles created by [`vk_diagram_parse`] and released
//! by [`vk_diagram_free`]. Every function that can fail returns a
//! [`VkStatus`]; on failure a human-readable message is stored per thread
//! and can be fetched with [`vk_last_error`]. All returned strings are `\0`
//! terminated, UTF-8, owned by the caller, and released with
//! [`vk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use vknot::diagram::{CodeError, Diagram};
use vknot::moves::{run_fuzz, FuzzKind, FuzzOptions};
use vknot::report;

/// An opaque parsed Gauss diagram.
pub struct VkDiagram(Diagram);

/// Result of any fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VkStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The Gauss code is syntactically malformed.
    ParseError = 3,
    /// The Gauss code parsed but does not describe a valid diagram.
    InvalidDiagram = 4,
    /// The operation is not defined for this diagram kind.
    KindMismatch = 5,
    /// A randomized property run found an invariance violation.
    PropertyFailed = 6,
}

/// Diagram kinds, matching the Gauss code prefixes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VkKind {
    Knot = 0,
    Long = 1,
    FlatLong = 2,
    Link = 3,
}

/// Argument-free transforms offered over the C ABI.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VkTransform {
    /// Reverse the orientation (any kind).
    Inverse = 0,
    /// Switch every crossing (knots and links).
    Mirror = 1,
    /// Close a long diagram into a knot.
    Closure = 2,
    /// The descending resolution of a flat long diagram.
    Descending = 3,
}

/// Diagram families the fuzzer can exercise.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VkFuzzKind {
    Knot = 0,
    FlatLong = 1,
    Link = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: VkStatus, msg: String) -> VkStatus {
    set_error(msg);
    status
}

fn out_string(s: String, out: *mut *mut c_char) -> VkStatus {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => return fail(VkStatus::InvalidUtf8, "output contained NUL".to_string()),
    };
    unsafe { *out = c.into_raw() };
    VkStatus::Ok
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, VkStatus> {
    if ptr.is_null() {
        return Err(VkStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| VkStatus::InvalidUtf8)
}

/// The last error message of this thread, or null if none was recorded.
/// The caller owns the returned string and must release it with
/// `vk_string_free`.
#[no_mangle]
pub extern "C" fn vk_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a Gauss code (e.g. `"knot: O1+ O2+ U1+ U2+"`) into a new diagram
/// handle stored in `*out`.
///
/// # Safety
/// `code` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_parse(
    code: *const c_char,
    out: *mut *mut VkDiagram,
) -> VkStatus {
    if out.is_null() {
        return fail(VkStatus::NullArgument, "out pointer is null".to_string());
    }
    let code = match unsafe { read_str(code) } {
        Ok(s) => s,
        Err(status) => return fail(status, "code pointer is null or not UTF-8".to_string()),
    };
    match Diagram::parse(code) {
        Ok(d) => {
            unsafe { *out = Box::into_raw(Box::new(VkDiagram(d))) };
            VkStatus::Ok
        }
        Err(CodeError::Parse(e)) => fail(VkStatus::ParseError, format!("ParseError: {e}")),
        Err(CodeError::Invalid(e)) => {
            fail(VkStatus::InvalidDiagram, format!("InvalidDiagram: {e}"))
        }
    }
}

/// Releases a diagram handle. Null is ignored.
///
/// # Safety
/// `d` must be null or a handle obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_free(d: *mut VkDiagram) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Writes the diagram's kind to `*out`.
///
/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_kind(d: *const VkDiagram, out: *mut VkKind) -> VkStatus {
    if d.is_null() || out.is_null() {
        return fail(VkStatus::NullArgument, "null argument".to_string());
    }
    let kind = match unsafe { &(*d).0 } {
        Diagram::Knot(_) => VkKind::Knot,
        Diagram::Long(_) => VkKind::Long,
        Diagram::Flat(_) => VkKind::FlatLong,
        Diagram::Link(_) => VkKind::Link,
    };
    unsafe { *out = kind };
    VkStatus::Ok
}

/// Writes the canonical Gauss code of the diagram to `*out`.
///
/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_serialize(
    d: *const VkDiagram,
    out: *mut *mut c_char,
) -> VkStatus {
    if d.is_null() || out.is_null() {
        return fail(VkStatus::NullArgument, "null argument".to_string());
    }
    out_string(unsafe { &(*d).0 }.serialize(), out)
}

/// Writes the full invariant report of the diagram to `*out` as one JSON
/// object (schema-stable and byte-deterministic).
///
/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_report_json(
    d: *const VkDiagram,
    out: *mut *mut c_char,
) -> VkStatus {
    if d.is_null() || out.is_null() {
        return fail(VkStatus::NullArgument, "null argument".to_string());
    }
    out_string(report::report(unsafe { &(*d).0 }).to_string(), out)
}

/// Writes the human-readable invariant report of the diagram to `*out`.
///
/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_report_text(
    d: *const VkDiagram,
    out: *mut *mut c_char,
) -> VkStatus {
    if d.is_null() || out.is_null() {
        return fail(VkStatus::NullArgument, "null argument".to_string());
    }
    out_string(report::text_report(unsafe { &(*d).0 }), out)
}

/// Applies an argument-free transform, storing the new handle in `*out`.
/// The input handle is untouched.
///
/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_transform(
    d: *const VkDiagram,
    op: VkTransform,
    out: *mut *mut VkDiagram,
) -> VkStatus {
    if d.is_null() || out.is_null() {
        return fail(VkStatus::NullArgument, "null argument".to_string());
    }
    let d = unsafe { &(*d).0 };
    let transformed = match (op, d) {
        (VkTransform::Inverse, _) => d.inverse(),
        (VkTransform::Mirror, Diagram::Knot(k)) => Diagram::Knot(k.mirror()),
        (VkTransform::Mirror, Diagram::Link(l)) => Diagram::Link(l.mirror()),
        (VkTransform::Closure, Diagram::Long(l)) => Diagram::Knot(l.closure()),
        (VkTransform::Descending, Diagram::Flat(f)) => Diagram::Long(f.descending()),
        _ => {
            return fail(
                VkStatus::KindMismatch,
                format!(
                    "transform {op:?} is not defined for {} diagrams",
                    d.kind().name()
                ),
            )
        }
    };
    unsafe { *out = Box::into_raw(Box::new(VkDiagram(transformed))) };
    VkStatus::Ok
}

/// Runs the move-invariance fuzzer and writes its JSON report to `*out`.
/// Returns `Ok` when every trial passed and `PropertyFailed` when the report
/// contains failures (the report is written either way).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vk_fuzz_json(
    kind: VkFuzzKind,
    seed: u64,
    trials: u32,
    steps: u32,
    max_chords: u32,
    out: *mut *mut c_char,
) -> VkStatus {
    if out.is_null() {
        return fail(VkStatus::NullArgument, "out pointer is null".to_string());
    }
    let kind = match kind {
        VkFuzzKind::Knot => FuzzKind::Knot,
        VkFuzzKind::FlatLong => FuzzKind::FlatLong,
        VkFuzzKind::Link => FuzzKind::Link,
    };
    let report = run_fuzz(&FuzzOptions {
        kind,
        seed,
        trials,
        steps,
        max_chords: max_chords as usize,
    });
    let passed = report.passed();
    let json = serde_json::to_string(&report).expect("report serializes");
    let status = out_string(json, out);
    if status != VkStatus::Ok {
        return status;
    }
    if passed {
        VkStatus::Ok
    } else {
        fail(
            VkStatus::PropertyFailed,
            "fuzzing found an invariance violation".to_string(),
        )
    }
}
