//! Index-based invariants of virtual knot diagrams.
//!
//! Walking once around the diagram, each of the `2n` arcs between consecutive
//! chord endpoints gets an integer label; the *index* of a chord is read off
//! from the labels next to its endpoints. Sorting chords by the 2-adic
//! valuation of their index and recording `sign * t^(index + 1)` produces a
//! family of Laurent polynomials `f_k`, their sum (the writhe polynomial) and
//! a handful of scalar shadows. All of them are invariant under the
//! generalized Reidemeister moves, which `moves::fuzz` exercises at random.

use std::collections::BTreeMap;

use crate::diagram::{ChordId, DiagramError, KnotDiagram};
use crate::laurent::LaurentPoly;

/// Sum of the chord signs.
pub fn writhe(d: &KnotDiagram) -> i64 {
    d.chords().values().map(|c| c.sign.value()).sum()
}

/// Arc labels: entry `i` labels the arc leaving endpoint position `i`.
///
/// The label counts, with sign, the chords whose head is met strictly before
/// their tail when walking forward from the arc; passing a tail raises the
/// count by the chord sign and passing a head lowers it. The arc entering
/// position 0 is labelled 0, and the labels close up because every chord
/// contributes once with each role.
pub fn lambda_labels(d: &KnotDiagram) -> Vec<i64> {
    if d.endpoint_count() == 0 {
        return vec![0];
    }
    let chords = d.chords();
    let mut labels = Vec::with_capacity(d.endpoint_count());
    let mut current = 0i64;
    for endpoint in d.endpoints() {
        let w = chords[&endpoint.chord].sign.value();
        current += match endpoint.role {
            crate::diagram::Role::Tail => w,
            crate::diagram::Role::Head => -w,
        };
        labels.push(current);
    }
    debug_assert_eq!(*labels.last().unwrap(), 0);
    labels
}

/// Complementary arc labels; `lambda + mu = writhe` on every arc.
pub fn mu_labels(d: &KnotDiagram) -> Vec<i64> {
    let wr = writhe(d);
    lambda_labels(d).into_iter().map(|l| wr - l).collect()
}

/// The index of every chord.
///
/// `Ind(c)` is the signed count of chords crossing `c` from one side minus
/// the signed count crossing from the other: walking the arc from `tail(c)`
/// to `head(c)`, tails passed count positively and heads negatively.
pub fn indices(d: &KnotDiagram) -> BTreeMap<ChordId, i64> {
    let labels = lambda_labels(d);
    let n2 = d.endpoint_count();
    let entering = |p: usize| labels[(p + n2 - 1) % n2];
    d.chords()
        .iter()
        .map(|(id, c)| (*id, entering(c.head) - entering(c.tail) - c.sign.value()))
        .collect()
}

/// The index of one chord.
pub fn chord_index(d: &KnotDiagram, id: ChordId) -> Result<i64, DiagramError> {
    indices(d)
        .get(&id)
        .copied()
        .ok_or(DiagramError::UnknownChord(id))
}

/// Exponent used for chord `c` in the writhe polynomial: `Ind(c) + 1`.
pub fn n_value(index: i64) -> i64 {
    index + 1
}

/// Parity class of an index: the 2-adic valuation, or `None` for index 0.
///
/// Class 0 holds the odd-index chords, class 1 indices `2 mod 4`, and so on.
pub fn parity_class(index: i64) -> Option<u32> {
    if index == 0 {
        None
    } else {
        Some(index.trailing_zeros())
    }
}

/// `f_k(t)`: the writhe polynomial restricted to parity class `k`.
pub fn f_poly(d: &KnotDiagram, k: u32) -> LaurentPoly {
    class_polys(d)
        .remove(&k)
        .unwrap_or_else(|| LaurentPoly::zero(0))
}

/// All nonzero `f_k`, keyed by parity class.
pub fn f_polys(d: &KnotDiagram) -> BTreeMap<u32, LaurentPoly> {
    let mut polys = class_polys(d);
    polys.retain(|_, p| !p.is_zero());
    polys
}

fn class_polys(d: &KnotDiagram) -> BTreeMap<u32, LaurentPoly> {
    let idx = indices(d);
    let mut polys: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    for (id, c) in d.chords() {
        if let Some(k) = parity_class(idx[&id]) {
            let term = LaurentPoly::monomial(c.sign.value(), n_value(idx[&id]), 0);
            let entry = polys.entry(k).or_insert_with(|| LaurentPoly::zero(0));
            *entry = &*entry + &term;
        }
    }
    polys
}

/// The writhe polynomial `W(t) = sum over Ind != 0 of sign * t^(Ind + 1)`.
pub fn writhe_polynomial(d: &KnotDiagram) -> LaurentPoly {
    let idx = indices(d);
    let mut w = LaurentPoly::zero(0);
    for (id, c) in d.chords() {
        if idx[&id] != 0 {
            w = &w + &LaurentPoly::monomial(c.sign.value(), n_value(idx[&id]), 0);
        }
    }
    debug_assert_eq!(
        w,
        class_polys(d)
            .values()
            .fold(LaurentPoly::zero(0), |acc, f| &acc + f),
        "writhe polynomial must equal the sum of its parity parts"
    );
    w
}

/// The odd writhe `J`: total sign of the odd-index chords. Equals `f_0(1)`.
pub fn odd_writhe(d: &KnotDiagram) -> i64 {
    let idx = indices(d);
    d.chords()
        .iter()
        .filter(|(id, _)| idx[id] % 2 != 0)
        .map(|(_, c)| c.sign.value())
        .sum()
}

/// Total sign of the chords with nonzero index. Equals `W(1)`.
pub fn nonzero_index_writhe(d: &KnotDiagram) -> i64 {
    let idx = indices(d);
    d.chords()
        .iter()
        .filter(|(id, _)| idx[id] != 0)
        .map(|(_, c)| c.sign.value())
        .sum()
}

/// The affine index polynomial `P(t) = sum over chords of sign * (t^Ind - 1)`.
///
/// It determines and is determined by the writhe polynomial through
/// `W(t) = (P(t) + Q) * t` where `Q` is the nonzero-index writhe.
pub fn affine_index_polynomial(d: &KnotDiagram) -> LaurentPoly {
    let idx = indices(d);
    let mut p = LaurentPoly::zero(0);
    for (id, c) in d.chords() {
        if idx[&id] != 0 {
            p = &p + &LaurentPoly::monomial(c.sign.value(), idx[&id], 0);
            p = &p - &LaurentPoly::monomial(c.sign.value(), 0, 0);
        }
    }
    p
}
