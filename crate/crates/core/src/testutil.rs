//! Random diagram strategies shared by the unit tests.

use std::collections::BTreeMap;

use proptest::prelude::*;

use crate::diagram::{
    ChordId, Endpoint, FlatChord, FlatDiagram, KnotDiagram, LinkDiagram, LongDiagram, Role, Sign,
};

fn shuffled(rng: &mut impl RngCore, len: usize) -> Vec<usize> {
    let mut pos: Vec<usize> = (0..len).collect();
    for i in (1..pos.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        pos.swap(i, j);
    }
    pos
}

fn place_chords(pos: &[usize], flags: &[(bool, bool)]) -> (Vec<Endpoint>, BTreeMap<ChordId, Sign>) {
    let mut endpoints = vec![None; pos.len()];
    let mut signs = BTreeMap::new();
    for (i, (swap, neg)) in flags.iter().enumerate() {
        let (a, b) = (pos[2 * i], pos[2 * i + 1]);
        let (t, h) = if *swap { (b, a) } else { (a, b) };
        let id = ChordId(i as u32 + 1);
        endpoints[t] = Some(Endpoint {
            chord: id,
            role: Role::Tail,
        });
        endpoints[h] = Some(Endpoint {
            chord: id,
            role: Role::Head,
        });
        signs.insert(id, if *neg { Sign::Minus } else { Sign::Plus });
    }
    (endpoints.into_iter().flatten().collect(), signs)
}

fn arb_placement(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<(bool, bool)>)> {
    let perm = Just(()).prop_perturb(move |_, mut rng| shuffled(&mut rng, 2 * n));
    (perm, proptest::collection::vec(any::<(bool, bool)>(), n))
}

pub fn arb_knot_sized(max: usize) -> impl Strategy<Value = KnotDiagram> {
    (0..=max).prop_flat_map(|n| {
        arb_placement(n).prop_map(|(pos, flags)| {
            let (endpoints, signs) = place_chords(&pos, &flags);
            KnotDiagram::new(endpoints, signs).unwrap()
        })
    })
}

pub fn arb_knot() -> impl Strategy<Value = KnotDiagram> {
    arb_knot_sized(6)
}

pub fn arb_long() -> impl Strategy<Value = LongDiagram> {
    (0usize..=6).prop_flat_map(|n| {
        arb_placement(n).prop_map(|(pos, flags)| {
            let (endpoints, signs) = place_chords(&pos, &flags);
            LongDiagram::new(endpoints, signs).unwrap()
        })
    })
}

pub fn arb_flat_sized(max: usize) -> impl Strategy<Value = FlatDiagram> {
    (0..=max).prop_flat_map(|n| {
        arb_placement(n).prop_map(|(pos, flags)| {
            let mut chords = BTreeMap::new();
            for (i, (swap, neg)) in flags.iter().enumerate() {
                let (a, b) = (pos[2 * i], pos[2 * i + 1]);
                let (tail, head) = if *swap { (b, a) } else { (a, b) };
                let sign = if *neg { Sign::Minus } else { Sign::Plus };
                chords.insert(ChordId(i as u32 + 1), FlatChord { tail, head, sign });
            }
            FlatDiagram::new(chords).unwrap()
        })
    })
}

pub fn arb_flat() -> impl Strategy<Value = FlatDiagram> {
    arb_flat_sized(6)
}

pub fn arb_link() -> impl Strategy<Value = LinkDiagram> {
    (0usize..=6).prop_flat_map(|n| {
        let comps = proptest::collection::vec((any::<bool>(), any::<bool>()), n);
        let flags = proptest::collection::vec(any::<bool>(), n);
        (comps, flags, Just(()).prop_perturb(|_, rng| rng)).prop_map(
            move |(comps, negs, mut rng)| {
                // Decide which component holds each endpoint, then shuffle the
                // slots within each component.
                let mut members: [Vec<Endpoint>; 2] = [Vec::new(), Vec::new()];
                let mut signs = BTreeMap::new();
                for (i, ((tail_on_second, head_on_second), neg)) in
                    comps.iter().zip(&negs).enumerate()
                {
                    let id = ChordId(i as u32 + 1);
                    members[*tail_on_second as usize].push(Endpoint {
                        chord: id,
                        role: Role::Tail,
                    });
                    members[*head_on_second as usize].push(Endpoint {
                        chord: id,
                        role: Role::Head,
                    });
                    signs.insert(id, if *neg { Sign::Minus } else { Sign::Plus });
                }
                for part in &mut members {
                    let order = shuffled(&mut rng, part.len());
                    let mut slot = vec![None; part.len()];
                    for (endpoint, p) in part.drain(..).zip(&order) {
                        slot[*p] = Some(endpoint);
                    }
                    *part = slot.into_iter().flatten().collect();
                }
                LinkDiagram::new(members, signs).unwrap()
            },
        )
    })
}
