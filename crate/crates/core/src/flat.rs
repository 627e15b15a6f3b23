//! Invariants of long flat virtual knots.
//!
//! A flat chord has no over/under information, only a choice of arrow
//! representative `(tail, head, sign)` up to the flip `(head, tail, -sign)`.
//! Both quantities computed here — the orientation-weighted sign `sigma` and
//! the flat index `I` — are independent of that choice, so every one of the
//! `2^n` resolutions of a flat diagram reports the same polynomial.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::diagram::{ChordId, DiagramError, FlatChord, FlatDiagram};
use crate::laurent::LaurentPoly;

/// Orientation of a chord representative: +1 if its tail comes first.
pub fn orientation(c: FlatChord) -> i64 {
    if c.tail < c.head {
        1
    } else {
        -1
    }
}

/// `sigma = orientation * sign`; flipping the representative fixes it.
pub fn sigma(c: FlatChord) -> i64 {
    orientation(c) * c.sign.value()
}

/// The flat index of every chord: the signed count of tails minus heads
/// strictly between the chord's two endpoints on the line.
///
/// A chord whose both endpoints land inside contributes once positively and
/// once negatively, so only chords genuinely crossing `c` matter.
pub fn flat_indices(d: &FlatDiagram) -> BTreeMap<ChordId, i64> {
    d.chords()
        .iter()
        .map(|(id, c)| {
            let (lo, hi) = (c.tail.min(c.head), c.tail.max(c.head));
            let mut total = 0;
            for e in d.chords().values() {
                if lo < e.tail && e.tail < hi {
                    total += e.sign.value();
                }
                if lo < e.head && e.head < hi {
                    total -= e.sign.value();
                }
            }
            (*id, total)
        })
        .collect()
}

/// The flat index of one chord.
pub fn flat_index(d: &FlatDiagram, id: ChordId) -> Result<i64, DiagramError> {
    flat_indices(d)
        .get(&id)
        .copied()
        .ok_or(DiagramError::UnknownChord(id))
}

/// The flat writhe polynomial `W(t) = sum over I != 0 of sigma * t^I`.
pub fn flat_writhe_polynomial(d: &FlatDiagram) -> LaurentPoly {
    let idx = flat_indices(d);
    let mut w = LaurentPoly::zero(0);
    for (id, c) in d.chords() {
        if idx[id] != 0 {
            w = &w + &LaurentPoly::monomial(sigma(*c), idx[id], 0);
        }
    }
    w
}

/// Sum of the absolute values of the polynomial's coefficients.
///
/// Every diagram of the flat knot needs at least this many crossings, since
/// each chord feeds at most one monomial.
pub fn crossing_lower_bound(d: &FlatDiagram) -> i64 {
    flat_writhe_polynomial(d)
        .coeff_abs_sum()
        .to_i64()
        .expect("the bound is at most the chord count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LongDiagram;
    use crate::knot::writhe_polynomial;
    use proptest::prelude::*;

    fn flat(code: &str) -> FlatDiagram {
        FlatDiagram::parse(code).unwrap()
    }

    fn poly<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> LaurentPoly {
        LaurentPoly::from_terms(0, terms)
    }

    #[test]
    fn forgotten_virtual_trefoil() {
        let f = LongDiagram::parse("long: O1+ O2+ U1+ U2+")
            .unwrap()
            .forget();
        let chords = f.chords().clone();
        assert_eq!(orientation(chords[&ChordId(1)]), 1);
        assert_eq!(sigma(chords[&ChordId(1)]), 1);
        let idx = flat_indices(&f);
        assert_eq!(idx[&ChordId(1)], 1);
        assert_eq!(idx[&ChordId(2)], -1);
        assert_eq!(flat_writhe_polynomial(&f), poly([(1, 1), (-1, 1)]));
        assert_eq!(crossing_lower_bound(&f), 2);
    }

    #[test]
    fn reversal_negates_the_polynomial() {
        let f = flat("flatlong: O1+ O2+ U1+ U2+");
        let inv = f.inverse();
        let idx = flat_indices(&inv);
        assert_eq!(idx[&ChordId(1)], 1);
        assert_eq!(idx[&ChordId(2)], -1);
        assert_eq!(flat_writhe_polynomial(&inv), poly([(1, -1), (-1, -1)]));
        assert_eq!(flat_writhe_polynomial(&inv), -&flat_writhe_polynomial(&f));
    }

    #[test]
    fn every_resolution_reports_the_same_polynomial() {
        let f = flat("flatlong: O1+ O2+ U1+ U2+");
        let w = flat_writhe_polynomial(&f);
        let all = f.all_resolutions();
        assert_eq!(all.len(), 4);
        for r in all {
            assert_eq!(flat_writhe_polynomial(&r.forget()), w);
            assert_eq!(r.forget(), f);
        }
    }

    #[test]
    fn closure_of_the_descending_resolution() {
        // The flat polynomial is the knot writhe polynomial of the closed-up
        // descending resolution, shifted down once.
        let f = flat("flatlong: O1+ O2+ U1+ U2+");
        let closed = f.descending().closure();
        assert_eq!(
            flat_writhe_polynomial(&f),
            writhe_polynomial(&closed).shift(-1)
        );
    }

    #[test]
    fn empty_and_isolated_chords_vanish() {
        assert!(flat_writhe_polynomial(&flat("flatlong:")).is_zero());
        assert_eq!(crossing_lower_bound(&flat("flatlong:")), 0);
        assert!(flat_writhe_polynomial(&flat("flatlong: O1+ U1+ U2- O2-")).is_zero());
    }

    proptest! {
        #[test]
        fn representative_choice_never_matters(
            f in crate::testutil::arb_flat(),
            mask in any::<u32>(),
        ) {
            let resolutions = f.all_resolutions();
            let pick = &resolutions[mask as usize % resolutions.len()];
            prop_assert_eq!(
                flat_writhe_polynomial(&pick.forget()),
                flat_writhe_polynomial(&f)
            );
        }

        #[test]
        fn closure_relation_holds(f in crate::testutil::arb_flat()) {
            let closed = f.descending().closure();
            prop_assert_eq!(flat_writhe_polynomial(&f), writhe_polynomial(&closed).shift(-1));
        }

        #[test]
        fn reversal_law_holds(f in crate::testutil::arb_flat()) {
            prop_assert_eq!(flat_writhe_polynomial(&f.inverse()), -&flat_writhe_polynomial(&f));
        }

        #[test]
        fn concatenation_adds(
            a in crate::testutil::arb_flat(),
            b in crate::testutil::arb_flat(),
        ) {
            let both = a.concat(&b);
            prop_assert_eq!(
                flat_writhe_polynomial(&both),
                &flat_writhe_polynomial(&a) + &flat_writhe_polynomial(&b)
            );
            prop_assert_eq!(both.chord_count(), a.chord_count() + b.chord_count());
        }

        #[test]
        fn bound_is_bounded_by_the_chord_count(f in crate::testutil::arb_flat()) {
            prop_assert!(crossing_lower_bound(&f) <= f.chord_count() as i64);
        }
    }
}
