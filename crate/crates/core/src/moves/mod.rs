//! Diagram rewriting: Reidemeister moves, crossing switches and basepoint
//! changes.
//!
//! All moves are expressed against a uniform view of the diagram as a list
//! of strands (one circle for a knot, one line for a long knot, two circles
//! for a link). Insertion points are *gaps* between endpoints, deletions and
//! switches name chords, and a triangle move names the three *blocks* —
//! adjacent endpoint pairs — it slides across each other.
//!
//! Each apply validates the move fully. In particular the triangle move
//! checks that the three chords really bound a triangle (one block of two
//! tails, one of two heads, one mixed) and that the crossing signs are
//! compatible with the endpoint order inside the blocks; configurations
//! violating that relation are not realizable and would change the chord
//! indices, so they are rejected rather than applied.

mod fuzz;

pub use fuzz::{
    fingerprint, random_flat, random_knot, random_link, random_long, run_fuzz, FuzzKind,
    FuzzOptions, FuzzReport, TrialFailure,
};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{
    ChordId, Diagram, Endpoint, Kind, KnotDiagram, LinkDiagram, LongDiagram, Role, Sign,
};

/// A gap between endpoints, where new chords can land.
///
/// A line with `k` endpoints has gaps `0..=k` (gap `i` sits before position
/// `i`); a circle has gaps `0..k` (gap `i` follows position `i`), or the
/// single gap 0 when empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub strand: usize,
    pub gap: usize,
}

/// An adjacent pair of endpoint positions `(position, position + 1)`,
/// wrapping around on a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Block {
    pub strand: usize,
    pub position: usize,
}

/// A rewriting step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Move {
    /// First move: add a kinked chord with both endpoints in one gap.
    R1Insert {
        gap: Gap,
        sign: Sign,
        tail_first: bool,
    },
    /// First move: remove a chord whose endpoints are adjacent.
    R1Delete { chord: ChordId },
    /// Second move: add two chords of opposite sign, tails together in one
    /// gap and heads together in another. `crossed` reverses the head pair.
    R2Insert {
        tails: Gap,
        heads: Gap,
        sign: Sign,
        crossed: bool,
    },
    /// Second move: remove two opposite-sign chords whose tails are adjacent
    /// and whose heads are adjacent.
    R2Delete { pair: (ChordId, ChordId) },
    /// Third move: slide three mutually crossing chords across the triangle
    /// they bound, swapping the endpoints inside each block.
    R3 { blocks: [Block; 3] },
    /// Exchange which strand passes over: swap the chord's roles and sign.
    Switch { chord: ChordId },
    /// Move the basepoint of a circular strand forward.
    Rebase { strand: usize, offset: usize },
}

/// Why a move was refused.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("no strand {0}")]
    BadStrand(usize),
    #[error("strand {strand} has no gap {gap}")]
    BadGap { strand: usize, gap: usize },
    #[error("no chord {0}")]
    UnknownChord(ChordId),
    #[error("chord {0} is not isolated")]
    NotIsolated(ChordId),
    #[error("chords {0} and {1} do not form a cancelling pair")]
    NotCancellable(ChordId, ChordId),
    #[error("not a triangle: {0}")]
    BadTriangle(String),
    #[error("only circular strands can be rebased")]
    CannotRebase,
}

/// Applies one move, leaving the input untouched.
pub fn apply(d: &Diagram, mv: &Move) -> Result<Diagram, MoveError> {
    let mut arena = Arena::from_diagram(d);
    arena.apply(mv)?;
    Ok(arena.into_diagram(d.kind()))
}

/// Chords removable by the first move.
pub fn r1_deletable(d: &Diagram) -> Vec<ChordId> {
    Arena::from_diagram(d).r1_deletable()
}

/// Chord pairs removable by the second move.
pub fn r2_deletable(d: &Diagram) -> Vec<(ChordId, ChordId)> {
    Arena::from_diagram(d).r2_deletable()
}

/// Valid triangle-move sites.
pub fn r3_sites(d: &Diagram) -> Vec<[Block; 3]> {
    Arena::from_diagram(d).r3_sites()
}

/// The chords a triangle move would slide, in triangle order: tails-to-mixed,
/// tails-to-heads, mixed-to-heads.
pub fn r3_chords(d: &Diagram, blocks: &[Block; 3]) -> Result<[ChordId; 3], MoveError> {
    Arena::from_diagram(d).check_r3(blocks)
}

/// Number of insertion gaps on each strand.
pub fn gap_counts(d: &Diagram) -> Vec<usize> {
    let arena = Arena::from_diagram(d);
    (0..arena.strands.len())
        .map(|s| arena.gap_count(s))
        .collect()
}

/// The working form of a diagram: strands of endpoints plus chord signs.
struct Arena {
    strands: Vec<Vec<Endpoint>>,
    signs: BTreeMap<ChordId, Sign>,
    cyclic: bool,
}

impl Arena {
    fn from_diagram(d: &Diagram) -> Arena {
        let signs = |chords: BTreeMap<ChordId, crate::diagram::Chord>| {
            chords.into_iter().map(|(id, c)| (id, c.sign)).collect()
        };
        match d {
            Diagram::Knot(k) => Arena {
                strands: vec![k.endpoints().to_vec()],
                signs: signs(k.chords()),
                cyclic: true,
            },
            Diagram::Long(l) => Arena {
                strands: vec![l.endpoints().to_vec()],
                signs: signs(l.chords()),
                cyclic: false,
            },
            // A flat diagram is rewritten through its descending resolution;
            // anything the moves do projects back down to the flat class.
            Diagram::Flat(f) => Arena::from_diagram(&Diagram::Long(f.descending())),
            Diagram::Link(l) => Arena {
                strands: vec![l.component(0).to_vec(), l.component(1).to_vec()],
                signs: l.chords().into_iter().map(|(id, c)| (id, c.sign)).collect(),
                cyclic: true,
            },
        }
    }

    fn into_diagram(mut self, kind: Kind) -> Diagram {
        match kind {
            Kind::Knot => Diagram::Knot(
                KnotDiagram::new(self.strands.pop().unwrap(), self.signs)
                    .expect("moves preserve well-formedness"),
            ),
            Kind::Long => Diagram::Long(
                LongDiagram::new(self.strands.pop().unwrap(), self.signs)
                    .expect("moves preserve well-formedness"),
            ),
            Kind::FlatLong => Diagram::Flat(
                LongDiagram::new(self.strands.pop().unwrap(), self.signs)
                    .expect("moves preserve well-formedness")
                    .forget(),
            ),
            Kind::Link => {
                let second = self.strands.pop().unwrap();
                let first = self.strands.pop().unwrap();
                Diagram::Link(
                    LinkDiagram::new([first, second], self.signs)
                        .expect("moves preserve well-formedness"),
                )
            }
        }
    }

    fn len(&self, strand: usize) -> usize {
        self.strands[strand].len()
    }

    fn gap_count(&self, strand: usize) -> usize {
        if self.cyclic {
            self.len(strand).max(1)
        } else {
            self.len(strand) + 1
        }
    }

    /// Vec index where an insertion into the gap lands.
    fn gap_index(&self, strand: usize, gap: usize) -> usize {
        if self.cyclic {
            if self.len(strand) == 0 {
                0
            } else {
                gap + 1
            }
        } else {
            gap
        }
    }

    fn check_gap(&self, at: Gap) -> Result<(), MoveError> {
        if at.strand >= self.strands.len() {
            return Err(MoveError::BadStrand(at.strand));
        }
        if at.gap >= self.gap_count(at.strand) {
            return Err(MoveError::BadGap {
                strand: at.strand,
                gap: at.gap,
            });
        }
        Ok(())
    }

    fn fresh_id(&self) -> ChordId {
        ChordId(self.signs.keys().last().map_or(0, |id| id.0) + 1)
    }

    /// Positions of a chord as (strand, position) pairs, tail first.
    fn locate(&self, chord: ChordId) -> Result<[(usize, usize); 2], MoveError> {
        let mut tail = None;
        let mut head = None;
        for (s, strand) in self.strands.iter().enumerate() {
            for (p, e) in strand.iter().enumerate() {
                if e.chord == chord {
                    match e.role {
                        Role::Tail => tail = Some((s, p)),
                        Role::Head => head = Some((s, p)),
                    }
                }
            }
        }
        match (tail, head) {
            (Some(t), Some(h)) => Ok([t, h]),
            _ => Err(MoveError::UnknownChord(chord)),
        }
    }

    /// Are two positions on one strand adjacent (in either order)?
    fn adjacent(&self, strand: usize, a: usize, b: usize) -> bool {
        let len = self.len(strand);
        if a == b || len < 2 {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        hi - lo == 1 || (self.cyclic && lo == 0 && hi == len - 1)
    }

    fn apply(&mut self, mv: &Move) -> Result<(), MoveError> {
        match mv {
            Move::R1Insert {
                gap,
                sign,
                tail_first,
            } => self.r1_insert(*gap, *sign, *tail_first),
            Move::R1Delete { chord } => self.r1_delete(*chord),
            Move::R2Insert {
                tails,
                heads,
                sign,
                crossed,
            } => self.r2_insert(*tails, *heads, *sign, *crossed),
            Move::R2Delete { pair } => self.r2_delete(*pair),
            Move::R3 { blocks } => self.r3(blocks),
            Move::Switch { chord } => self.switch(*chord),
            Move::Rebase { strand, offset } => self.rebase(*strand, *offset),
        }
    }

    fn r1_insert(&mut self, gap: Gap, sign: Sign, tail_first: bool) -> Result<(), MoveError> {
        self.check_gap(gap)?;
        let id = self.fresh_id();
        let tail = Endpoint {
            chord: id,
            role: Role::Tail,
        };
        let head = Endpoint {
            chord: id,
            role: Role::Head,
        };
        let pair = if tail_first {
            [tail, head]
        } else {
            [head, tail]
        };
        let at = self.gap_index(gap.strand, gap.gap);
        self.strands[gap.strand].splice(at..at, pair);
        self.signs.insert(id, sign);
        Ok(())
    }

    fn r1_delete(&mut self, chord: ChordId) -> Result<(), MoveError> {
        let [(ts, tp), (hs, hp)] = self.locate(chord)?;
        if ts != hs || !self.adjacent(ts, tp, hp) {
            return Err(MoveError::NotIsolated(chord));
        }
        self.strands[ts].retain(|e| e.chord != chord);
        self.signs.remove(&chord);
        Ok(())
    }

    fn r2_insert(
        &mut self,
        tails: Gap,
        heads: Gap,
        sign: Sign,
        crossed: bool,
    ) -> Result<(), MoveError> {
        self.check_gap(tails)?;
        self.check_gap(heads)?;
        let a = self.fresh_id();
        let b = ChordId(a.0 + 1);
        let tail = |id| Endpoint {
            chord: id,
            role: Role::Tail,
        };
        let head = |id| Endpoint {
            chord: id,
            role: Role::Head,
        };
        let tail_pair = [tail(a), tail(b)];
        let head_pair = if crossed {
            [head(b), head(a)]
        } else {
            [head(a), head(b)]
        };

        let ti = self.gap_index(tails.strand, tails.gap);
        let hi = self.gap_index(heads.strand, heads.gap);
        if tails.strand == heads.strand && tails.gap == heads.gap {
            // One run of four endpoints: tails first, then the heads.
            self.strands[tails.strand].splice(ti..ti, tail_pair.into_iter().chain(head_pair));
        } else if tails.strand == heads.strand {
            // Insert the later pair first so the earlier index stays valid.
            let (first, second) = if ti <= hi {
                ((hi, head_pair), (ti, tail_pair))
            } else {
                ((ti, tail_pair), (hi, head_pair))
            };
            self.strands[tails.strand].splice(first.0..first.0, first.1);
            self.strands[tails.strand].splice(second.0..second.0, second.1);
        } else {
            self.strands[tails.strand].splice(ti..ti, tail_pair);
            self.strands[heads.strand].splice(hi..hi, head_pair);
        }
        self.signs.insert(a, sign);
        self.signs.insert(b, sign.flipped());
        Ok(())
    }

    fn r2_delete(&mut self, pair: (ChordId, ChordId)) -> Result<(), MoveError> {
        let (a, b) = pair;
        let [(ats, atp), (ahs, ahp)] = self.locate(a)?;
        let [(bts, btp), (bhs, bhp)] = self.locate(b)?;
        let cancellable = a != b
            && self.signs[&a] == self.signs[&b].flipped()
            && ats == bts
            && self.adjacent(ats, atp, btp)
            && ahs == bhs
            && self.adjacent(ahs, ahp, bhp);
        if !cancellable {
            return Err(MoveError::NotCancellable(a, b));
        }
        for strand in &mut self.strands {
            strand.retain(|e| e.chord != a && e.chord != b);
        }
        self.signs.remove(&a);
        self.signs.remove(&b);
        Ok(())
    }

    /// Reads a block as its two endpoint positions.
    fn block_slots(&self, block: Block) -> Result<[(usize, usize); 2], MoveError> {
        if block.strand >= self.strands.len() {
            return Err(MoveError::BadStrand(block.strand));
        }
        let len = self.len(block.strand);
        let next = if block.position + 1 < len {
            block.position + 1
        } else if self.cyclic && len >= 2 && block.position == len - 1 {
            0
        } else {
            return Err(MoveError::BadTriangle(format!(
                "no endpoint pair at strand {} position {}",
                block.strand, block.position
            )));
        };
        Ok([(block.strand, block.position), (block.strand, next)])
    }

    /// Validates a triangle move without changing anything.
    ///
    /// The three blocks must be disjoint, hold the six endpoints of three
    /// distinct chords pairwise sharing a block, and consist of one tail
    /// pair, one head pair and one mixed pair. On top of that the crossing
    /// signs have to match the endpoint order: writing `X` for the chord
    /// from the tail pair to the mixed pair, `Y` from tails to heads and `Z`
    /// from mixed to heads, and letting `aT`, `aM`, `aB` be +1 when `X`'s
    /// tail, `X`'s head and `Y`'s head lead their blocks, a sliding triangle
    /// satisfies `sign(Y) sign(Z) = aT aM` and `sign(X) sign(Y) = aM aB`.
    ///
    /// Returns the chords in triangle order `[X, Y, Z]`.
    fn check_r3(&self, blocks: &[Block; 3]) -> Result<[ChordId; 3], MoveError> {
        let bad = |msg: &str| MoveError::BadTriangle(msg.to_string());
        let mut slots = Vec::new();
        let mut pairs = Vec::new();
        for block in blocks {
            let pair = self.block_slots(*block)?;
            slots.extend(pair);
            let get = |(s, p): (usize, usize)| self.strands[s][p];
            pairs.push((get(pair[0]), get(pair[1])));
        }
        slots.sort();
        slots.dedup();
        if slots.len() != 6 {
            return Err(bad("blocks overlap"));
        }

        let mut ids: Vec<ChordId> = pairs.iter().flat_map(|(a, b)| [a.chord, b.chord]).collect();
        ids.sort();
        ids.dedup();
        if ids.len() != 3 {
            return Err(bad("blocks must cover exactly three chords"));
        }
        for (a, b) in &pairs {
            if a.chord == b.chord {
                return Err(bad("a block holds both endpoints of one chord"));
            }
        }

        // Classify the blocks by the roles they contain.
        let mut tails_block = None;
        let mut heads_block = None;
        let mut mixed_block = None;
        for (i, (a, b)) in pairs.iter().enumerate() {
            let slot = match (a.role, b.role) {
                (Role::Tail, Role::Tail) => &mut tails_block,
                (Role::Head, Role::Head) => &mut heads_block,
                _ => &mut mixed_block,
            };
            if slot.replace(i).is_some() {
                return Err(bad("blocks must split into tails, heads and mixed"));
            }
        }
        let (Some(t), Some(h), Some(m)) = (tails_block, heads_block, mixed_block) else {
            return Err(bad("blocks must split into tails, heads and mixed"));
        };

        let members = |i: usize| [pairs[i].0.chord, pairs[i].1.chord];
        let common = |p: [ChordId; 2], q: [ChordId; 2]| p.into_iter().find(|c| q.contains(c));
        // X runs tails -> mixed, Y tails -> heads, Z mixed -> heads.
        let x = common(members(t), members(m)).ok_or_else(|| bad("chords do not pair up"))?;
        let y = common(members(t), members(h)).ok_or_else(|| bad("chords do not pair up"))?;
        let z = common(members(m), members(h)).ok_or_else(|| bad("chords do not pair up"))?;
        if x == y || y == z || x == z {
            return Err(bad("chords do not form a triangle"));
        }
        let role_in = |i: usize, c: ChordId| {
            pairs[i].0.chord == c && pairs[i].0.role == Role::Tail
                || pairs[i].1.chord == c && pairs[i].1.role == Role::Tail
        };
        // Each chord must point the right way along the triangle.
        if !role_in(t, x) || !role_in(t, y) || !role_in(m, z) {
            return Err(bad("chord directions do not match the triangle"));
        }

        let leads = |i: usize, c: ChordId| if pairs[i].0.chord == c { 1 } else { -1 };
        let a_t = leads(t, x);
        let a_m = leads(m, x);
        let a_b = leads(h, y);
        let w = |c: ChordId| self.signs[&c].value();
        if w(y) * w(z) != a_t * a_m || w(x) * w(y) != a_m * a_b {
            return Err(bad("signs are incompatible with the endpoint order"));
        }
        Ok([x, y, z])
    }

    fn r3(&mut self, blocks: &[Block; 3]) -> Result<(), MoveError> {
        self.check_r3(blocks)?;
        for block in blocks {
            let [(s, p), (_, q)] = self.block_slots(*block).expect("validated above");
            self.strands[s].swap(p, q);
        }
        Ok(())
    }

    fn switch(&mut self, chord: ChordId) -> Result<(), MoveError> {
        if !self.signs.contains_key(&chord) {
            return Err(MoveError::UnknownChord(chord));
        }
        for strand in &mut self.strands {
            for e in strand.iter_mut() {
                if e.chord == chord {
                    e.role = e.role.opposite();
                }
            }
        }
        let sign = self.signs[&chord].flipped();
        self.signs.insert(chord, sign);
        Ok(())
    }

    fn rebase(&mut self, strand: usize, offset: usize) -> Result<(), MoveError> {
        if strand >= self.strands.len() {
            return Err(MoveError::BadStrand(strand));
        }
        if !self.cyclic {
            return Err(MoveError::CannotRebase);
        }
        let len = self.len(strand);
        if len > 0 {
            self.strands[strand].rotate_left(offset % len);
        }
        Ok(())
    }

    /// (strand, position) of every chord's tail and head.
    fn positions(&self) -> BTreeMap<ChordId, [(usize, usize); 2]> {
        let mut out: BTreeMap<ChordId, [Option<(usize, usize)>; 2]> = BTreeMap::new();
        for (s, strand) in self.strands.iter().enumerate() {
            for (p, e) in strand.iter().enumerate() {
                let slot = match e.role {
                    Role::Tail => 0,
                    Role::Head => 1,
                };
                out.entry(e.chord).or_default()[slot] = Some((s, p));
            }
        }
        out.into_iter()
            .map(|(id, [t, h])| (id, [t.expect("paired"), h.expect("paired")]))
            .collect()
    }

    fn r1_deletable(&self) -> Vec<ChordId> {
        self.positions()
            .into_iter()
            .filter(|(_, [(ts, tp), (hs, hp)])| ts == hs && self.adjacent(*ts, *tp, *hp))
            .map(|(id, _)| id)
            .collect()
    }

    fn r2_deletable(&self) -> Vec<(ChordId, ChordId)> {
        let positions = self.positions();
        let ids: Vec<ChordId> = self.signs.keys().copied().collect();
        let mut out = Vec::new();
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                let [(ats, atp), (ahs, ahp)] = positions[a];
                let [(bts, btp), (bhs, bhp)] = positions[b];
                let cancellable = self.signs[a] == self.signs[b].flipped()
                    && ats == bts
                    && self.adjacent(ats, atp, btp)
                    && ahs == bhs
                    && self.adjacent(ahs, ahp, bhp);
                if cancellable {
                    out.push((*a, *b));
                }
            }
        }
        out
    }

    fn r3_sites(&self) -> Vec<[Block; 3]> {
        // Candidate blocks: adjacent pairs holding two different chords,
        // grouped by the chord pair they touch.
        let mut by_pair: BTreeMap<(ChordId, ChordId), Vec<Block>> = BTreeMap::new();
        for (s, strand) in self.strands.iter().enumerate() {
            let len = strand.len();
            let pair_count = if self.cyclic && len >= 2 {
                len
            } else {
                len.saturating_sub(1)
            };
            for p in 0..pair_count {
                let block = Block {
                    strand: s,
                    position: p,
                };
                let [a, b] = self.block_slots(block).expect("pair is in range");
                let (ca, cb) = (self.strands[a.0][a.1].chord, self.strands[b.0][b.1].chord);
                if ca != cb {
                    by_pair
                        .entry((ca.min(cb), ca.max(cb)))
                        .or_default()
                        .push(block);
                }
            }
        }
        // Triangles in the graph whose edges are the touching chord pairs.
        let mut sites = Vec::new();
        for ((a, b), ab_blocks) in &by_pair {
            for ((_, c), ac_blocks) in by_pair
                .range((*a, *b)..)
                .filter(|((x, y), _)| x == a && y > b)
            {
                let Some(bc_blocks) = by_pair.get(&(*b, *c)) else {
                    continue;
                };
                for ab in ab_blocks {
                    for ac in ac_blocks {
                        for bc in bc_blocks {
                            let mut blocks = [*ab, *ac, *bc];
                            blocks.sort_by_key(|b| (b.strand, b.position));
                            if self.check_r3(&blocks).is_ok() {
                                sites.push(blocks);
                            }
                        }
                    }
                }
            }
        }
        sites
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{indices, writhe_polynomial};
    use proptest::prelude::*;

    fn knot(code: &str) -> Diagram {
        Diagram::parse(code).unwrap()
    }

    fn ser(d: &Diagram) -> String {
        d.serialize()
    }

    #[test]
    fn r1_insert_and_delete_are_inverse() {
        let vt = knot("knot: O1+ O2+ U1+ U2+");
        for gap in 0..4 {
            for tail_first in [false, true] {
                let mv = Move::R1Insert {
                    gap: Gap { strand: 0, gap },
                    sign: Sign::Minus,
                    tail_first,
                };
                let bigger = apply(&vt, &mv).unwrap();
                assert_eq!(bigger.chord_count(), 3);
                let added = ChordId(3);
                assert_eq!(indices(bigger.as_knot().unwrap())[&added], 0);
                assert!(r1_deletable(&bigger).contains(&added));
                let back = apply(&bigger, &Move::R1Delete { chord: added }).unwrap();
                assert_eq!(back, vt);
            }
        }
    }

    #[test]
    fn r1_insert_into_nothing() {
        let empty = knot("knot:");
        let mv = Move::R1Insert {
            gap: Gap { strand: 0, gap: 0 },
            sign: Sign::Plus,
            tail_first: true,
        };
        let k = apply(&empty, &mv).unwrap();
        assert_eq!(ser(&k), "knot: O1+ U1+");
        assert!(matches!(
            apply(
                &empty,
                &Move::R1Insert {
                    gap: Gap { strand: 0, gap: 1 },
                    sign: Sign::Plus,
                    tail_first: true
                }
            ),
            Err(MoveError::BadGap { strand: 0, gap: 1 })
        ));
    }

    #[test]
    fn r1_delete_needs_adjacency() {
        let vt = knot("knot: O1+ O2+ U1+ U2+");
        assert!(r1_deletable(&vt).is_empty());
        assert_eq!(
            apply(&vt, &Move::R1Delete { chord: ChordId(1) }),
            Err(MoveError::NotIsolated(ChordId(1)))
        );
        assert_eq!(
            apply(&vt, &Move::R1Delete { chord: ChordId(9) }),
            Err(MoveError::UnknownChord(ChordId(9)))
        );
        // Adjacency may wrap around the basepoint.
        let wrapped = knot("knot: U1+ O2+ U2+ O1+");
        assert!(r1_deletable(&wrapped).contains(&ChordId(1)));
        let smaller = apply(&wrapped, &Move::R1Delete { chord: ChordId(1) }).unwrap();
        assert_eq!(ser(&smaller), "knot: O1+ U1+");
    }

    #[test]
    fn r2_insert_patterns() {
        let empty = knot("knot:");
        let same_gap = |crossed| Move::R2Insert {
            tails: Gap { strand: 0, gap: 0 },
            heads: Gap { strand: 0, gap: 0 },
            sign: Sign::Plus,
            crossed,
        };
        assert_eq!(
            ser(&apply(&empty, &same_gap(true)).unwrap()),
            "knot: O1+ O2- U2- U1+"
        );
        assert_eq!(
            ser(&apply(&empty, &same_gap(false)).unwrap()),
            "knot: O1+ O2- U1+ U2-"
        );
    }

    #[test]
    fn r2_round_trips_everywhere() {
        let vt = knot("knot: O1+ O2+ U1+ U2+");
        for tg in 0..4 {
            for hg in 0..4 {
                for crossed in [false, true] {
                    let mv = Move::R2Insert {
                        tails: Gap { strand: 0, gap: tg },
                        heads: Gap { strand: 0, gap: hg },
                        sign: Sign::Minus,
                        crossed,
                    };
                    let bigger = apply(&vt, &mv).unwrap();
                    assert_eq!(bigger.chord_count(), 4);
                    let pair = (ChordId(3), ChordId(4));
                    assert!(
                        r2_deletable(&bigger).contains(&pair),
                        "tails {tg} heads {hg}"
                    );
                    let back = apply(&bigger, &Move::R2Delete { pair }).unwrap();
                    assert_eq!(back, vt, "tails {tg} heads {hg} crossed {crossed}");
                    // The partners always carry the same index.
                    let idx = indices(bigger.as_knot().unwrap());
                    assert_eq!(idx[&pair.0], idx[&pair.1]);
                }
            }
        }
    }

    #[test]
    fn r2_delete_rejects_non_pairs() {
        let vt = knot("knot: O1+ O2+ U1+ U2+");
        assert_eq!(
            apply(
                &vt,
                &Move::R2Delete {
                    pair: (ChordId(1), ChordId(2))
                }
            ),
            Err(MoveError::NotCancellable(ChordId(1), ChordId(2)))
        );
        // Same signs never cancel even when endpoints sit side by side.
        let parallel = knot("knot: O1+ O2+ U1+ U2+");
        assert!(r2_deletable(&parallel).is_empty());
    }

    #[test]
    fn r3_slides_a_genuine_triangle() {
        // Blocks: tails (0,1), mixed (2,3), heads (4,5); all signs positive.
        let d = knot("knot: O1+ O2+ U1+ O3+ U2+ U3+");
        let blocks = [
            Block {
                strand: 0,
                position: 0,
            },
            Block {
                strand: 0,
                position: 2,
            },
            Block {
                strand: 0,
                position: 4,
            },
        ];
        assert!(r3_sites(&d).contains(&blocks));
        let slid = apply(&d, &Move::R3 { blocks }).unwrap();
        assert_eq!(ser(&slid), "knot: O1+ O2+ U1+ U2+ U3+ O3+");
        assert_eq!(
            writhe_polynomial(slid.as_knot().unwrap()),
            writhe_polynomial(d.as_knot().unwrap())
        );
        // Sliding back restores the diagram.
        let back = apply(&slid, &Move::R3 { blocks }).unwrap();
        assert_eq!(back, d);
        // Chord indices survive the slide.
        assert_eq!(
            indices(d.as_knot().unwrap()),
            indices(slid.as_knot().unwrap())
        );
    }

    #[test]
    fn r3_rejects_incompatible_signs() {
        // Same shape, but the sign pattern cannot bound a sliding triangle:
        // sign(X) sign(Y) = -1 while the order bits demand +1.
        let d = knot("knot: O1+ O2- U1+ O3- U2- U3-");
        let blocks = [
            Block {
                strand: 0,
                position: 0,
            },
            Block {
                strand: 0,
                position: 2,
            },
            Block {
                strand: 0,
                position: 4,
            },
        ];
        assert!(matches!(
            apply(&d, &Move::R3 { blocks }),
            Err(MoveError::BadTriangle(reason)) if reason.contains("signs")
        ));
    }

    #[test]
    fn r3_rejects_non_triangles() {
        let d = knot("knot: O1+ O2+ U1+ U2+");
        let mk = |a, b, c| {
            [
                Block {
                    strand: 0,
                    position: a,
                },
                Block {
                    strand: 0,
                    position: b,
                },
                Block {
                    strand: 0,
                    position: c,
                },
            ]
        };
        assert!(matches!(
            apply(
                &d,
                &Move::R3 {
                    blocks: mk(0, 1, 2)
                }
            ),
            Err(MoveError::BadTriangle(_))
        ));
        assert!(r3_sites(&d).is_empty());
    }

    #[test]
    fn switches_flip_one_crossing() {
        let vt = knot("knot: O1+ O2+ U1+ U2+");
        let switched = apply(&vt, &Move::Switch { chord: ChordId(1) }).unwrap();
        assert_eq!(ser(&switched), "knot: O1+ O2- U1+ U2-");
        let back = apply(&switched, &Move::Switch { chord: ChordId(1) }).unwrap();
        assert_eq!(back, vt);
        assert!(matches!(
            apply(&vt, &Move::Switch { chord: ChordId(5) }),
            Err(MoveError::UnknownChord(ChordId(5)))
        ));
    }

    #[test]
    fn rebase_rotates_circles_only() {
        let vt = knot("knot: O1+ O2+ U1+ U2+");
        let moved = apply(
            &vt,
            &Move::Rebase {
                strand: 0,
                offset: 3,
            },
        )
        .unwrap();
        assert_eq!(moved, vt);
        let long = Diagram::parse("long: O1+ U1+").unwrap();
        assert_eq!(
            apply(
                &long,
                &Move::Rebase {
                    strand: 0,
                    offset: 1
                }
            ),
            Err(MoveError::CannotRebase)
        );
    }

    #[test]
    fn moves_work_across_link_components() {
        let empty = Diagram::parse("link: /").unwrap();
        let mv = Move::R2Insert {
            tails: Gap { strand: 0, gap: 0 },
            heads: Gap { strand: 1, gap: 0 },
            sign: Sign::Plus,
            crossed: false,
        };
        let l = apply(&empty, &mv).unwrap();
        assert_eq!(ser(&l), "link: O1+ O2- / U1+ U2-");
        assert_eq!(crate::link::double_linking_number(l.as_link().unwrap()), 0);
        assert!(crate::link::linking_polynomial(l.as_link().unwrap()).is_zero());
        let back = apply(
            &l,
            &Move::R2Delete {
                pair: (ChordId(1), ChordId(2)),
            },
        )
        .unwrap();
        assert_eq!(back, empty);
    }

    #[test]
    fn flat_diagrams_move_through_their_resolution() {
        let f = Diagram::parse("flatlong: O1+ O2+ U1+ U2+").unwrap();
        let mv = Move::R1Insert {
            gap: Gap { strand: 0, gap: 1 },
            sign: Sign::Minus,
            tail_first: false,
        };
        let bigger = apply(&f, &mv).unwrap();
        assert_eq!(bigger.kind(), Kind::FlatLong);
        assert_eq!(bigger.chord_count(), 3);
        assert_eq!(
            crate::flat::flat_writhe_polynomial(bigger.as_flat().unwrap()),
            crate::flat::flat_writhe_polynomial(f.as_flat().unwrap())
        );
        // Switching has no effect at all on the flat class.
        let switched = apply(&f, &Move::Switch { chord: ChordId(1) }).unwrap();
        assert_eq!(switched, f);
    }

    proptest! {
        #[test]
        fn inserts_are_always_deletable(
            d in crate::testutil::arb_knot(),
            gap_seed in any::<(usize, usize)>(),
            sign in any::<bool>(),
            crossed in any::<bool>(),
        ) {
            let d = Diagram::Knot(d);
            let gaps = gap_counts(&d)[0];
            let sign = if sign { Sign::Plus } else { Sign::Minus };
            let tails = Gap { strand: 0, gap: gap_seed.0 % gaps };
            let heads = Gap { strand: 0, gap: gap_seed.1 % gaps };

            let one = apply(&d, &Move::R1Insert { gap: tails, sign, tail_first: crossed }).unwrap();
            let added = ChordId(d.chord_count() as u32 + 1);
            prop_assert!(r1_deletable(&one).contains(&added));
            prop_assert_eq!(apply(&one, &Move::R1Delete { chord: added }).unwrap(), d.clone());

            let two = apply(&d, &Move::R2Insert { tails, heads, sign, crossed }).unwrap();
            let pair = (added, ChordId(added.0 + 1));
            prop_assert!(r2_deletable(&two).contains(&pair));
            prop_assert_eq!(apply(&two, &Move::R2Delete { pair }).unwrap(), d);
        }

        #[test]
        fn r3_sites_are_involutions(d in crate::testutil::arb_knot()) {
            let d = Diagram::Knot(d);
            for blocks in r3_sites(&d) {
                let slid = apply(&d, &Move::R3 { blocks }).unwrap();
                prop_assert_eq!(apply(&slid, &Move::R3 { blocks }).unwrap(), d.clone());
                prop_assert!(r3_sites(&slid).contains(&blocks));
                prop_assert_eq!(
                    writhe_polynomial(slid.as_knot().unwrap()),
                    writhe_polynomial(d.as_knot().unwrap())
                );
            }
        }
    }
}
