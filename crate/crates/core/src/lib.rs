//! Gauss-diagram invariants of virtual knots and links.
//!
//! A virtual knot can be stored purely combinatorially as a *Gauss diagram*:
//! an oriented circle (or line, for long knots) carrying one signed, directed
//! chord per classical crossing, with virtual crossings leaving no trace.
//! This crate parses such diagrams from Gauss codes, computes a family of
//! polynomial invariants over sparse integer Laurent polynomials, and checks
//! them the hard way — by rewriting diagrams with Reidemeister moves and
//! demanding, move by move, that nothing changes.
//!
//! - [`diagram`] — diagram types for knots, long knots, flat long knots and
//!   two-component links, plus the Gauss-code parser and serializer.
//! - [`laurent`] — `Z[t, t⁻¹]` and `Z[t]/(t^m − 1)` arithmetic.
//! - [`knot`] — chord indices, parity, the writhe polynomial and the affine
//!   index polynomial of virtual knots.
//! - [`flat`] — the flat writhe polynomial of long flat virtual knots and the
//!   crossing lower bound it implies.
//! - [`link`] — linking invariants of two-component virtual links: the
//!   (half-integer) linking number, span, the F/G pair and the linking
//!   polynomial.
//! - [`moves`] — Reidemeister rewriting, crossing switches, and a seeded
//!   random-walk fuzzer that asserts invariance along every step.
//! - [`report`] — stable text and JSON reports used by the `vknot` binary.
//!
//! ```
//! use vknot::diagram::KnotDiagram;
//! use vknot::knot;
//!
//! // The virtual trefoil: two positive chords crossing each other.
//! let d = KnotDiagram::parse("knot: O1+ O2+ U1+ U2+")?;
//! assert_eq!(knot::writhe_polynomial(&d).to_string(), "1 + t^2");
//! assert_eq!(knot::odd_writhe(&d), 2);
//! # Ok::<(), vknot::diagram::CodeError>(())
//! ```

pub mod diagram;
pub mod flat;
pub mod knot;
pub mod laurent;
pub mod link;
pub mod moves;
pub mod report;

#[cfg(test)]
pub(crate) mod testutil;
