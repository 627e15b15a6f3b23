//! Invariant reports: one JSON object (or text block) per diagram, collecting
//! everything the library computes for that kind.
//!
//! Reports are schema-stable: for a fixed input the emitted JSON is
//! byte-for-byte deterministic. Knots get `{"wr", "J", "Q", "writhe_poly",
//! "affine_index_poly", "f"}` (only nonzero parity parts appear under `"f"`),
//! flat long knots get `{"flat_writhe_poly", "s", "per_chord"}`, long knots
//! get the reports of their closure and their shadow, and links get
//! `{"two_lk", "lk", "span", "F", "G", "canonical_shift", "linking_poly"}`.
//! The linking number itself is never a float: `"lk"` is an integer when
//! `two_lk` is even and the string `"p/2"` when it is odd.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::diagram::{Diagram, FlatDiagram, KnotDiagram, LinkDiagram, LongDiagram};
use crate::laurent::LaurentPoly;
use crate::{flat, knot, link};

/// The full JSON report for any diagram.
pub fn report(d: &Diagram) -> Value {
    match d {
        Diagram::Knot(k) => knot_report(k),
        Diagram::Long(l) => long_report(l),
        Diagram::Flat(f) => flat_report(f),
        Diagram::Link(l) => link_report(l),
    }
}

pub fn knot_report(k: &KnotDiagram) -> Value {
    let f: Map<String, Value> = knot::f_polys(k)
        .iter()
        .map(|(cls, poly)| (cls.to_string(), json!(poly)))
        .collect();
    json!({
        "wr": knot::writhe(k),
        "J": knot::odd_writhe(k),
        "Q": knot::nonzero_index_writhe(k),
        "writhe_poly": knot::writhe_polynomial(k),
        "affine_index_poly": knot::affine_index_polynomial(k),
        "f": f,
    })
}

pub fn flat_report(d: &FlatDiagram) -> Value {
    let indices = flat::flat_indices(d);
    let per_chord: Vec<Value> = d
        .chords()
        .iter()
        .map(|(id, c)| {
            json!({
                "id": id.0,
                "o": flat::orientation(*c),
                "I": indices[id],
                "sigma": flat::sigma(*c),
            })
        })
        .collect();
    json!({
        "flat_writhe_poly": flat::flat_writhe_polynomial(d),
        "s": flat::crossing_lower_bound(d),
        "per_chord": per_chord,
    })
}

pub fn long_report(l: &LongDiagram) -> Value {
    json!({
        "closure": knot_report(&l.closure()),
        "flat": flat_report(&l.forget()),
    })
}

pub fn link_report(l: &LinkDiagram) -> Value {
    let two_lk = link::double_linking_number(l);
    let (f, g, shift) = link::canonical_pair(l);
    json!({
        "two_lk": two_lk,
        "lk": lk_value(two_lk),
        "span": link::span(l),
        "F": f,
        "G": g,
        "canonical_shift": shift,
        "linking_poly": link::linking_polynomial(l),
    })
}

/// The linking number as JSON: an integer when whole, `"p/2"` when not.
fn lk_value(two_lk: i64) -> Value {
    if two_lk % 2 == 0 {
        json!(two_lk / 2)
    } else {
        json!(format!("{two_lk}/2"))
    }
}

/// The linking number as text: `1`, `-2`, `1/2`, `-3/2`, ...
pub fn lk_text(two_lk: i64) -> String {
    if two_lk % 2 == 0 {
        format!("{}", two_lk / 2)
    } else {
        format!("{two_lk}/2")
    }
}

fn poly_line(p: &LaurentPoly) -> String {
    match p.modulus() {
        0 => p.to_string(),
        1 => format!("{p} (mod t - 1)"),
        m => format!("{p} (mod t^{m} - 1)"),
    }
}

/// The report fields a diagram of this kind carries, in emission order.
pub fn report_keys(d: &Diagram) -> &'static [&'static str] {
    match d {
        Diagram::Knot(_) => &["wr", "J", "Q", "writhe_poly", "affine_index_poly", "f"],
        Diagram::Long(_) => &["closure", "flat"],
        Diagram::Flat(_) => &["flat_writhe_poly", "s", "per_chord"],
        Diagram::Link(_) => &[
            "two_lk",
            "lk",
            "span",
            "F",
            "G",
            "canonical_shift",
            "linking_poly",
        ],
    }
}

/// Resolves a requested field subset against the diagram's kind. An empty
/// request means "everything"; an unknown name is an error.
pub fn select_keys(d: &Diagram, requested: &[String]) -> Result<Vec<&'static str>, String> {
    let all = report_keys(d);
    if requested.is_empty() {
        return Ok(all.to_vec());
    }
    requested
        .iter()
        .map(|k| {
            all.iter()
                .copied()
                .find(|a| *a == k.as_str())
                .ok_or_else(|| {
                    format!(
                        "unknown invariant {k:?} for this diagram kind (one of: {})",
                        all.join(", ")
                    )
                })
        })
        .collect()
}

/// The JSON report restricted to the given fields.
pub fn json_report_for(d: &Diagram, keys: &[&str]) -> Value {
    let full = report(d);
    let full = full.as_object().expect("reports are objects");
    Value::Object(
        keys.iter()
            .map(|k| ((*k).to_string(), full[*k].clone()))
            .collect(),
    )
}

/// The human-readable report: `name = value` lines, one invariant per line,
/// in the same order as the JSON fields.
pub fn text_report(d: &Diagram) -> String {
    text_report_for(d, report_keys(d))
}

/// The human-readable report restricted to the given fields.
pub fn text_report_for(d: &Diagram, keys: &[&str]) -> String {
    let mut out = String::new();
    for key in keys {
        render_key(&mut out, d, key, "");
    }
    out
}

fn render_key(out: &mut String, d: &Diagram, key: &str, pad: &str) {
    match (d, key) {
        (Diagram::Knot(k), "wr") => writeln!(out, "{pad}wr = {}", knot::writhe(k)).unwrap(),
        (Diagram::Knot(k), "J") => writeln!(out, "{pad}J = {}", knot::odd_writhe(k)).unwrap(),
        (Diagram::Knot(k), "Q") => {
            writeln!(out, "{pad}Q = {}", knot::nonzero_index_writhe(k)).unwrap()
        }
        (Diagram::Knot(k), "writhe_poly") => {
            writeln!(out, "{pad}writhe_poly = {}", knot::writhe_polynomial(k)).unwrap()
        }
        (Diagram::Knot(k), "affine_index_poly") => writeln!(
            out,
            "{pad}affine_index_poly = {}",
            knot::affine_index_polynomial(k)
        )
        .unwrap(),
        (Diagram::Knot(k), "f") => {
            for (cls, f) in knot::f_polys(k) {
                writeln!(out, "{pad}f_{cls} = {f}").unwrap();
            }
        }
        (Diagram::Long(l), "closure") => {
            writeln!(out, "{pad}closure:").unwrap();
            let closed = Diagram::Knot(l.closure());
            for key in report_keys(&closed) {
                render_key(out, &closed, key, &format!("{pad}  "));
            }
        }
        (Diagram::Long(l), "flat") => {
            writeln!(out, "{pad}flat:").unwrap();
            let shadow = Diagram::Flat(l.forget());
            for key in report_keys(&shadow) {
                render_key(out, &shadow, key, &format!("{pad}  "));
            }
        }
        (Diagram::Flat(f), "flat_writhe_poly") => writeln!(
            out,
            "{pad}flat_writhe_poly = {}",
            flat::flat_writhe_polynomial(f)
        )
        .unwrap(),
        (Diagram::Flat(f), "s") => {
            writeln!(out, "{pad}s = {}", flat::crossing_lower_bound(f)).unwrap()
        }
        (Diagram::Flat(f), "per_chord") => {
            let indices = flat::flat_indices(f);
            for (id, c) in f.chords() {
                writeln!(
                    out,
                    "{pad}chord {id}: o = {}, I = {}, sigma = {}",
                    flat::orientation(*c),
                    indices[id],
                    flat::sigma(*c)
                )
                .unwrap();
            }
        }
        (Diagram::Link(l), "two_lk") => {
            writeln!(out, "{pad}two_lk = {}", link::double_linking_number(l)).unwrap()
        }
        (Diagram::Link(l), "lk") => {
            writeln!(out, "{pad}lk = {}", lk_text(link::double_linking_number(l))).unwrap()
        }
        (Diagram::Link(l), "span") => writeln!(out, "{pad}span = {}", link::span(l)).unwrap(),
        (Diagram::Link(l), "F") => {
            writeln!(out, "{pad}F = {}", poly_line(&link::canonical_pair(l).0)).unwrap()
        }
        (Diagram::Link(l), "G") => {
            writeln!(out, "{pad}G = {}", poly_line(&link::canonical_pair(l).1)).unwrap()
        }
        (Diagram::Link(l), "canonical_shift") => {
            writeln!(out, "{pad}canonical_shift = {}", link::canonical_pair(l).2).unwrap()
        }
        (Diagram::Link(l), "linking_poly") => writeln!(
            out,
            "{pad}linking_poly = {}",
            poly_line(&link::linking_polynomial(l))
        )
        .unwrap(),
        _ => unreachable!("key {key} does not belong to this kind"),
    }
}
