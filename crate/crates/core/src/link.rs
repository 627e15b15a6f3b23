//! Invariants of ordered two-component virtual links.
//!
//! Chords joining the two circles ("bridges") drive everything here. Their
//! total sign is twice the linking number; the imbalance between the two
//! directions is the *span*, which decides whether the arcs of the diagram
//! can be labelled consistently and, when nonzero, forces the polynomial
//! invariants into `Z[t]/(t^span - 1)`. The pair `(F, G)` collects the
//! bridges in each direction weighted by `t` to an arc-label exponent; it is
//! only well defined up to `(F, G) -> (F t^c, G t^-c)`, so a fixed
//! canonicalization picks one representative and their product `L = F * G`
//! needs no choice at all.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::diagram::{ChordId, LinkDiagram, Role};
use crate::laurent::LaurentPoly;

/// Twice the linking number: the total sign of the bridges.
pub fn double_linking_number(d: &LinkDiagram) -> i64 {
    let (fwd, back) = d.bridges();
    fwd.iter().chain(&back).map(|(_, c)| c.sign.value()).sum()
}

/// Signed bridge imbalance: forward bridges minus backward bridges.
pub fn signed_span(d: &LinkDiagram) -> i64 {
    let (fwd, back) = d.bridges();
    let f: i64 = fwd.iter().map(|(_, c)| c.sign.value()).sum();
    let b: i64 = back.iter().map(|(_, c)| c.sign.value()).sum();
    f - b
}

/// The span: modulus of the polynomial invariants. Zero keeps `Z[t, 1/t]`.
pub fn span(d: &LinkDiagram) -> u32 {
    signed_span(d)
        .unsigned_abs()
        .try_into()
        .expect("span fits in u32")
}

/// Arc labels along one component; entry `i` labels the arc leaving
/// position `i`. The arc entering position 0 is labelled 0.
///
/// Unlike a knot, the walk need not close up: it ends at the signed span
/// (negated on the second component), and closes on both iff the span is 0.
pub fn component_labels(d: &LinkDiagram, comp: usize) -> Vec<i64> {
    let chords = d.chords();
    let mut labels = Vec::with_capacity(d.component(comp).len());
    let mut current = 0i64;
    for e in d.component(comp) {
        let w = chords[&e.chord].sign.value();
        current += match e.role {
            Role::Tail => w,
            Role::Head => -w,
        };
        labels.push(current);
    }
    labels
}

/// A consistent labelling of all arcs, if one exists.
///
/// Labels must rise by the chord sign when passing a tail and fall when
/// passing a head, with the arc entering position 0 of each component
/// labelled 0. The walk closes up on both circles iff the span vanishes.
pub fn coloring(d: &LinkDiagram) -> Option<[Vec<i64>; 2]> {
    let labels = [component_labels(d, 0), component_labels(d, 1)];
    for part in &labels {
        if *part.last().unwrap_or(&0) != 0 {
            return None;
        }
    }
    Some(labels)
}

/// Exponent assigned to each bridge: target entry label minus source exit
/// label, minus the bridge sign. (Stored unreduced; the polynomials reduce
/// modulo the span.)
pub fn bridge_exponents(d: &LinkDiagram) -> BTreeMap<ChordId, i64> {
    let labels = [component_labels(d, 0), component_labels(d, 1)];
    let entering = |comp: usize, p: usize| if p == 0 { 0 } else { labels[comp][p - 1] };
    let (fwd, back) = d.bridges();
    let mut out = BTreeMap::new();
    for (id, c) in fwd {
        let crate::diagram::Placement::Bridge { tail, head, .. } = c.place else {
            unreachable!()
        };
        out.insert(id, entering(1, head) - entering(0, tail) - c.sign.value());
    }
    for (id, c) in back {
        let crate::diagram::Placement::Bridge { tail, head, .. } = c.place else {
            unreachable!()
        };
        out.insert(id, entering(0, head) - entering(1, tail) - c.sign.value());
    }
    out
}

/// `(F, G)` for the basepoints as given: `F` sums `sign * t^exponent` over
/// the forward bridges, `G` over the backward ones, both modulo the span.
pub fn raw_pair(d: &LinkDiagram) -> (LaurentPoly, LaurentPoly) {
    let m = span(d);
    let exps = bridge_exponents(d);
    let (fwd, back) = d.bridges();
    let sum = |bridges: &[(ChordId, crate::diagram::LinkChord)]| {
        bridges.iter().fold(LaurentPoly::zero(m), |acc, (id, c)| {
            &acc + &LaurentPoly::monomial(c.sign.value(), exps[id], m)
        })
    };
    (sum(&fwd), sum(&back))
}

/// Puts a pair into canonical form under `(F, G) -> (F t^k, G t^-k)` and
/// reports the twist `k` used.
///
/// Without a modulus the smallest exponent of `F` is brought to 0 (of `G` if
/// `F` is zero); with a modulus the twist minimizing `F`'s coefficient
/// vector, then `G`'s, is chosen.
pub fn canonicalize_pair(f: &LaurentPoly, g: &LaurentPoly) -> (LaurentPoly, LaurentPoly, i64) {
    assert_eq!(f.modulus(), g.modulus(), "pair must live in one ring");
    let m = f.modulus();
    if m == 0 {
        // F picks up t^k and G picks up t^-k.
        let k = match (f.min_exp(), g.min_exp()) {
            (Some(e), _) => -e,
            (None, Some(e)) => e,
            (None, None) => 0,
        };
        return (f.shift(k), g.shift(-k), k);
    }
    let mut best: Option<(Vec<BigInt>, Vec<BigInt>, i64)> = None;
    for k in 0..i64::from(m) {
        let key = (f.shift(k).dense_coeffs(), g.shift(-k).dense_coeffs(), k);
        if best
            .as_ref()
            .is_none_or(|b| (&key.0, &key.1) < (&b.0, &b.1))
        {
            best = Some(key);
        }
    }
    let (_, _, k) = best.unwrap();
    (f.shift(k), g.shift(-k), k)
}

/// The canonical `(F, G)` pair of the diagram and the twist applied to the
/// raw pair. Basepoint choices never reach this value.
pub fn canonical_pair(d: &LinkDiagram) -> (LaurentPoly, LaurentPoly, i64) {
    let (f, g) = raw_pair(d);
    canonicalize_pair(&f, &g)
}

/// The linking polynomial `L = F * G`, independent of any twist.
pub fn linking_polynomial(d: &LinkDiagram) -> LaurentPoly {
    let (f, g) = raw_pair(d);
    let l = &f * &g;
    debug_assert_eq!(
        l,
        {
            let (cf, cg, _) = canonical_pair(d);
            &cf * &cg
        },
        "twists cancel in the product"
    );
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn link(code: &str) -> LinkDiagram {
        LinkDiagram::parse(code).unwrap()
    }

    fn poly<I: IntoIterator<Item = (i64, i64)>>(m: u32, terms: I) -> LaurentPoly {
        LaurentPoly::from_terms(m, terms)
    }

    /// The closure of `(sigma_1)^(2n)` in the braid group on two strands.
    pub(crate) fn torus_link(n: u32) -> LinkDiagram {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for i in 0..n {
            first.push(format!("O{}+ U{}+", 2 * i + 1, 2 * i + 2));
            second.push(format!("U{}+ O{}+", 2 * i + 1, 2 * i + 2));
        }
        link(&format!("link: {} / {}", first.join(" "), second.join(" ")))
    }

    #[test]
    fn hopf_link_values() {
        let hopf = link("link: O1+ U2+ / U1+ O2+");
        assert_eq!(double_linking_number(&hopf), 2);
        assert_eq!(span(&hopf), 0);
        assert_eq!(component_labels(&hopf, 0), vec![1, 0]);
        assert_eq!(component_labels(&hopf, 1), vec![-1, 0]);
        let exps = bridge_exponents(&hopf);
        assert_eq!(exps[&ChordId(1)], -1);
        assert_eq!(exps[&ChordId(2)], 1);
        let (f, g) = raw_pair(&hopf);
        assert_eq!(f, poly(0, [(-1, 1)]));
        assert_eq!(g, poly(0, [(1, 1)]));
        let (cf, cg, k) = canonical_pair(&hopf);
        assert_eq!(k, 1);
        assert_eq!(cf, poly(0, [(0, 1)]));
        assert_eq!(cg, poly(0, [(0, 1)]));
        assert_eq!(linking_polynomial(&hopf), poly(0, [(0, 1)]));
        assert!(coloring(&hopf).is_some());
    }

    #[test]
    fn virtual_hopf_link_values() {
        let vh = link("link: O1+ / U1+");
        assert_eq!(double_linking_number(&vh), 1);
        assert_eq!(span(&vh), 1);
        let (f, g) = raw_pair(&vh);
        assert_eq!(f, poly(1, [(0, 1)]));
        assert!(g.is_zero());
        assert!(linking_polynomial(&vh).is_zero());
        assert!(coloring(&vh).is_none());
    }

    #[test]
    fn mixed_sign_link_values() {
        let mix = link("link: O1+ U2- / U1+ O2-");
        assert_eq!(double_linking_number(&mix), 0);
        assert_eq!(signed_span(&mix), 2);
        assert_eq!(span(&mix), 2);
        assert_eq!(component_labels(&mix, 0), vec![1, 2]);
        assert_eq!(component_labels(&mix, 1), vec![-1, -2]);
        let (f, g) = raw_pair(&mix);
        assert_eq!(f, poly(2, [(1, 1)]));
        assert_eq!(g, poly(2, [(1, -1)]));
        assert_eq!(linking_polynomial(&mix), poly(2, [(0, -1)]));
        assert!(coloring(&mix).is_none());
    }

    #[test]
    fn torus_links_square_their_parameter() {
        for n in 1..=4u32 {
            let l = torus_link(n);
            assert_eq!(double_linking_number(&l), 2 * i64::from(n));
            assert_eq!(span(&l), 0);
            let (cf, cg, _) = canonical_pair(&l);
            assert_eq!(
                cf,
                poly(0, [(0, i64::from(n))]),
                "canonical F of the {n}th torus link"
            );
            assert_eq!(cg, poly(0, [(0, i64::from(n))]));
            assert_eq!(
                linking_polynomial(&l),
                poly(0, [(0, i64::from(n) * i64::from(n))])
            );
        }
    }

    #[test]
    fn canonicalization_handles_zero_parts() {
        let (f, g, k) = canonicalize_pair(&poly(0, []), &poly(0, [(3, 2)]));
        assert!(f.is_zero());
        assert_eq!(g, poly(0, [(0, 2)]));
        assert_eq!(k, 3);
        let (f, g, k) = canonicalize_pair(&poly(0, []), &poly(0, []));
        assert!(f.is_zero() && g.is_zero());
        assert_eq!(k, 0);
        // Modular: pick the twist minimizing F's coefficient vector.
        let (f, g, k) = canonicalize_pair(&poly(3, [(0, 1), (1, 2)]), &poly(3, [(0, 5)]));
        assert_eq!(f, poly(3, [(1, 1), (2, 2)]));
        assert_eq!(g, poly(3, [(2, 5)]));
        assert_eq!(k, 1);
    }

    #[test]
    fn empty_components_are_harmless() {
        let l = link("link: O1- U1- /");
        assert_eq!(double_linking_number(&l), 0);
        assert_eq!(span(&l), 0);
        assert!(linking_polynomial(&l).is_zero());
        assert!(coloring(&l).is_some());
        assert!(coloring(&link("link: /")).is_some());
    }

    #[test]
    fn mirror_and_reversal_laws_on_the_hopf_link() {
        let hopf = link("link: O1+ U2+ / U1+ O2+");
        let (f, g) = raw_pair(&hopf);

        let (mf, mg) = raw_pair(&hopf.mirror());
        assert_eq!(mf, poly(0, [(-1, -1)]));
        assert_eq!(mg, poly(0, [(1, -1)]));
        let want = canonicalize_pair(&-&g.invert_variable(), &-&f.invert_variable());
        let got = canonicalize_pair(&mf, &mg);
        assert_eq!((got.0, got.1), (want.0, want.1));

        let (rf, rg) = raw_pair(&hopf.inverse());
        let want = canonicalize_pair(&f.invert_variable(), &g.invert_variable());
        let got = canonicalize_pair(&rf, &rg);
        assert_eq!((got.0, got.1), (want.0, want.1));
    }

    proptest! {
        #[test]
        fn scalar_readouts_match_the_pair(d in crate::testutil::arb_link()) {
            let (f, g) = raw_pair(&d);
            prop_assert_eq!(
                &f.eval_at_one() + &g.eval_at_one(),
                BigInt::from(double_linking_number(&d))
            );
            prop_assert_eq!(
                &f.eval_at_one() - &g.eval_at_one(),
                BigInt::from(signed_span(&d))
            );
        }

        #[test]
        fn labels_end_at_the_signed_span(d in crate::testutil::arb_link()) {
            let s = signed_span(&d);
            prop_assert_eq!(component_labels(&d, 0).last().copied().unwrap_or(0), s);
            prop_assert_eq!(component_labels(&d, 1).last().copied().unwrap_or(0), -s);
            prop_assert_eq!(coloring(&d).is_some(), span(&d) == 0);
        }

        #[test]
        fn basepoints_never_reach_the_canonical_pair(
            d in crate::testutil::arb_link(),
            r0 in 0usize..8,
            r1 in 0usize..8,
        ) {
            let moved = d.rotated(0, r0).rotated(1, r1);
            let (cf, cg, _) = canonical_pair(&d);
            let (mf, mg, _) = canonical_pair(&moved);
            prop_assert_eq!((mf, mg), (cf, cg));
            prop_assert_eq!(linking_polynomial(&moved), linking_polynomial(&d));
        }

        #[test]
        fn mirror_swaps_and_reversal_inverts(d in crate::testutil::arb_link()) {
            let (f, g) = raw_pair(&d);

            let (mf, mg) = raw_pair(&d.mirror());
            let want = canonicalize_pair(&-&g.invert_variable(), &-&f.invert_variable());
            let got = canonicalize_pair(&mf, &mg);
            prop_assert_eq!((got.0, got.1), (want.0, want.1));

            let (rf, rg) = raw_pair(&d.inverse());
            let want = canonicalize_pair(&f.invert_variable(), &g.invert_variable());
            let got = canonicalize_pair(&rf, &rg);
            prop_assert_eq!((got.0, got.1), (want.0, want.1));
        }
    }
}
