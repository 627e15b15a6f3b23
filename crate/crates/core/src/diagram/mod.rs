//! Gauss diagrams for virtual knots, long virtual knots, long flat virtual
//! knots and ordered two-component virtual links.
//!
//! A chord records one classical crossing: its *tail* sits at the preimage of
//! the overcrossing (an `O` token), its *head* at the preimage of the
//! undercrossing (a `U` token), and it carries the crossing sign. Virtual
//! crossings never appear in a Gauss diagram. Knot and link diagrams live on
//! oriented circles (so everything is considered up to rotation); long
//! diagrams live on an oriented line.

mod code;

pub use code::{CodeError, ParseError};

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Label of a chord. Labels are arbitrary; canonical serialization renumbers
/// them in order of first occurrence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which preimage of a crossing an endpoint is.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Role {
    /// Preimage of the overcrossing (`O` token).
    Tail,
    /// Preimage of the undercrossing (`U` token).
    Head,
}

impl Role {
    pub fn opposite(self) -> Role {
        match self {
            Role::Tail => Role::Head,
            Role::Head => Role::Tail,
        }
    }
}

impl fmt::Display for Role {
    /// The Gauss-code token letter for this role.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Tail => "O",
            Role::Head => "U",
        })
    }
}

/// Crossing sign.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One chord endpoint as it appears along a circle or line.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

/// Structural defects that make an endpoint sequence fail to be a Gauss
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidDiagram {
    #[error("id {0} has two {1} tokens")]
    RepeatedRole(ChordId, Role),
    #[error("id {0} is missing its {1} token")]
    Unpaired(ChordId, Role),
    #[error("chord {0} has no sign")]
    MissingSign(ChordId),
    #[error("sign given for chord {0}, which has no endpoints")]
    UnusedSign(ChordId),
    #[error("chord {0} uses position {1}, which is out of range or already taken")]
    BadPosition(ChordId, usize),
}

/// Errors from diagram operations whose preconditions are violated.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("no chord {0} in this diagram")]
    UnknownChord(ChordId),
    #[error("linked() needs two distinct chords, got {0} twice")]
    SameChord(ChordId),
    #[error("segment index {index} out of range (diagram has {count} segments)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("resolution choice is not total: {0}")]
    InvalidChoice(String),
    #[error("operation not defined for this diagram kind")]
    KindMismatch,
}

/// Tail and head positions plus the sign of one chord on a single strand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Chord {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
}

fn validate(parts: &[&[Endpoint]], signs: &BTreeMap<ChordId, Sign>) -> Result<(), InvalidDiagram> {
    let mut seen: BTreeMap<ChordId, (bool, bool)> = BTreeMap::new();
    for part in parts {
        for e in *part {
            if !signs.contains_key(&e.chord) {
                return Err(InvalidDiagram::MissingSign(e.chord));
            }
            let entry = seen.entry(e.chord).or_insert((false, false));
            let slot = match e.role {
                Role::Tail => &mut entry.0,
                Role::Head => &mut entry.1,
            };
            if *slot {
                return Err(InvalidDiagram::RepeatedRole(e.chord, e.role));
            }
            *slot = true;
        }
    }
    for (id, (tail, head)) in &seen {
        if !tail {
            return Err(InvalidDiagram::Unpaired(*id, Role::Tail));
        }
        if !head {
            return Err(InvalidDiagram::Unpaired(*id, Role::Head));
        }
    }
    for id in signs.keys() {
        if !seen.contains_key(id) {
            return Err(InvalidDiagram::UnusedSign(*id));
        }
    }
    Ok(())
}

/// (component, position) of an endpoint; component is the part index.
type Slot = (usize, usize);

fn chord_table(parts: &[&[Endpoint]]) -> BTreeMap<ChordId, (Slot, Slot)> {
    let mut out: BTreeMap<ChordId, (Slot, Slot)> = BTreeMap::new();
    for (ci, part) in parts.iter().enumerate() {
        for (pos, e) in part.iter().enumerate() {
            let entry = out
                .entry(e.chord)
                .or_insert(((usize::MAX, usize::MAX), (usize::MAX, usize::MAX)));
            match e.role {
                Role::Tail => entry.0 = (ci, pos),
                Role::Head => entry.1 = (ci, pos),
            }
        }
    }
    out
}

/// `true` iff position `p` lies strictly inside the arc that starts just
/// after `start` and runs forward (in circle orientation) to `end`.
pub(crate) fn cyclic_arc_contains(start: usize, end: usize, p: usize, len: usize) -> bool {
    if p == start || p == end {
        return false;
    }
    let fwd = |a: usize, b: usize| (b + len - a) % len;
    fwd(start, p) < fwd(start, end)
}

fn offset_ids(endpoints: &[Endpoint], by: u32) -> Vec<Endpoint> {
    endpoints
        .iter()
        .map(|e| Endpoint {
            chord: ChordId(e.chord.0 + by),
            role: e.role,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Knot diagrams
// ---------------------------------------------------------------------------

/// Gauss diagram of a virtual knot: chords on one oriented circle.
#[derive(Clone, Debug)]
pub struct KnotDiagram {
    endpoints: Vec<Endpoint>,
    signs: BTreeMap<ChordId, Sign>,
}

impl KnotDiagram {
    pub fn new(
        endpoints: Vec<Endpoint>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<Self, InvalidDiagram> {
        validate(&[&endpoints], &signs)?;
        Ok(KnotDiagram { endpoints, signs })
    }

    pub fn empty() -> Self {
        KnotDiagram {
            endpoints: Vec::new(),
            signs: BTreeMap::new(),
        }
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn endpoint_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    /// Number of arcs between consecutive endpoints; the bare circle counts
    /// as one segment.
    pub fn segment_count(&self) -> usize {
        self.endpoints.len().max(1)
    }

    pub fn sign(&self, id: ChordId) -> Result<Sign, DiagramError> {
        self.signs
            .get(&id)
            .copied()
            .ok_or(DiagramError::UnknownChord(id))
    }

    pub fn max_chord_id(&self) -> u32 {
        self.signs.keys().map(|c| c.0).max().unwrap_or(0)
    }

    /// Tail/head positions and sign of every chord.
    pub fn chords(&self) -> BTreeMap<ChordId, Chord> {
        chord_table(&[&self.endpoints])
            .into_iter()
            .map(|(id, ((_, t), (_, h)))| {
                (
                    id,
                    Chord {
                        tail: t,
                        head: h,
                        sign: self.signs[&id],
                    },
                )
            })
            .collect()
    }

    /// `true` iff exactly one endpoint of `other` lies in the open arc from
    /// `chord`'s tail to its head.
    pub fn linked(&self, chord: ChordId, other: ChordId) -> Result<bool, DiagramError> {
        if chord == other {
            return Err(DiagramError::SameChord(chord));
        }
        let table = self.chords();
        let a = table.get(&chord).ok_or(DiagramError::UnknownChord(chord))?;
        let b = table.get(&other).ok_or(DiagramError::UnknownChord(other))?;
        let len = self.endpoints.len();
        let inside = |p| cyclic_arc_contains(a.tail, a.head, p, len);
        Ok(inside(b.tail) != inside(b.head))
    }

    /// The same diagram read from a new base point `offset` positions along.
    pub fn rotated(&self, offset: usize) -> Self {
        if self.endpoints.is_empty() {
            return self.clone();
        }
        let len = self.endpoints.len();
        let endpoints = (0..len)
            .map(|i| self.endpoints[(i + offset) % len])
            .collect();
        KnotDiagram {
            endpoints,
            signs: self.signs.clone(),
        }
    }

    /// Orientation reversal: the endpoint sequence is read backwards; every
    /// chord keeps its role data and sign.
    pub fn inverse(&self) -> Self {
        let mut endpoints = self.endpoints.clone();
        endpoints.reverse();
        KnotDiagram {
            endpoints,
            signs: self.signs.clone(),
        }
    }

    /// Mirror image: tails and heads swap, signs negate, positions stay.
    pub fn mirror(&self) -> Self {
        let endpoints = self
            .endpoints
            .iter()
            .map(|e| Endpoint {
                chord: e.chord,
                role: e.role.opposite(),
            })
            .collect();
        let signs = self
            .signs
            .iter()
            .map(|(id, s)| (*id, s.flipped()))
            .collect();
        KnotDiagram { endpoints, signs }
    }

    /// Splices `other` (opened inside its segment `cut2`) into segment `cut1`
    /// of `self`. The second summand's chords are relabelled to stay disjoint.
    pub fn connected_sum(
        &self,
        cut1: usize,
        other: &Self,
        cut2: usize,
    ) -> Result<Self, DiagramError> {
        if cut1 >= self.segment_count() {
            return Err(DiagramError::IndexOutOfRange {
                index: cut1,
                count: self.segment_count(),
            });
        }
        if cut2 >= other.segment_count() {
            return Err(DiagramError::IndexOutOfRange {
                index: cut2,
                count: other.segment_count(),
            });
        }
        let offset = self.max_chord_id();
        let len2 = other.endpoints.len();
        let opened: Vec<Endpoint> = (0..len2)
            .map(|i| other.endpoints[(cut2 + 1 + i) % len2])
            .collect();
        let opened = offset_ids(&opened, offset);
        let mut endpoints = self.endpoints.clone();
        let at = if endpoints.is_empty() { 0 } else { cut1 + 1 };
        endpoints.splice(at..at, opened);
        let mut signs = self.signs.clone();
        for (id, s) in &other.signs {
            signs.insert(ChordId(id.0 + offset), *s);
        }
        Ok(KnotDiagram { endpoints, signs })
    }

    /// Rotation-and-relabelling-independent normal form; two diagrams compare
    /// equal exactly when these match.
    pub(crate) fn canonical_key(&self) -> ComponentKey {
        let len = self.endpoints.len();
        (0..len.max(1))
            .map(|r| canonical_tokens(&[&self.endpoints], &self.signs, &[r]))
            .min()
            .unwrap()
            .into_iter()
            .flatten()
            .collect()
    }
}

/// One component's endpoints after renumbering chords in order of first
/// appearance; rotation-independent once minimised over base points.
pub(crate) type ComponentKey = Vec<(u32, Role, Sign)>;

fn canonical_tokens(
    parts: &[&[Endpoint]],
    signs: &BTreeMap<ChordId, Sign>,
    rotations: &[usize],
) -> Vec<ComponentKey> {
    let mut renumber: BTreeMap<ChordId, u32> = BTreeMap::new();
    let mut next = 0u32;
    let mut out = Vec::with_capacity(parts.len());
    for (part, rot) in parts.iter().zip(rotations) {
        let len = part.len();
        let mut tokens = Vec::with_capacity(len);
        for i in 0..len {
            let e = part[(i + rot) % len];
            let id = *renumber.entry(e.chord).or_insert_with(|| {
                next += 1;
                next
            });
            tokens.push((id, e.role, signs[&e.chord]));
        }
        out.push(tokens);
    }
    out
}

impl PartialEq for KnotDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for KnotDiagram {}

// ---------------------------------------------------------------------------
// Long diagrams
// ---------------------------------------------------------------------------

/// Gauss diagram of a long virtual knot: chords on an oriented line, read
/// left to right without wraparound.
#[derive(Clone, Debug)]
pub struct LongDiagram {
    endpoints: Vec<Endpoint>,
    signs: BTreeMap<ChordId, Sign>,
}

impl LongDiagram {
    pub fn new(
        endpoints: Vec<Endpoint>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<Self, InvalidDiagram> {
        validate(&[&endpoints], &signs)?;
        Ok(LongDiagram { endpoints, signs })
    }

    pub fn empty() -> Self {
        LongDiagram {
            endpoints: Vec::new(),
            signs: BTreeMap::new(),
        }
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn endpoint_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, id: ChordId) -> Result<Sign, DiagramError> {
        self.signs
            .get(&id)
            .copied()
            .ok_or(DiagramError::UnknownChord(id))
    }

    pub fn max_chord_id(&self) -> u32 {
        self.signs.keys().map(|c| c.0).max().unwrap_or(0)
    }

    pub fn chords(&self) -> BTreeMap<ChordId, Chord> {
        chord_table(&[&self.endpoints])
            .into_iter()
            .map(|(id, ((_, t), (_, h)))| {
                (
                    id,
                    Chord {
                        tail: t,
                        head: h,
                        sign: self.signs[&id],
                    },
                )
            })
            .collect()
    }

    /// `true` iff the two chords interleave: exactly one endpoint of `other`
    /// lies strictly between the endpoints of `chord`.
    pub fn linked(&self, chord: ChordId, other: ChordId) -> Result<bool, DiagramError> {
        if chord == other {
            return Err(DiagramError::SameChord(chord));
        }
        let table = self.chords();
        let a = table.get(&chord).ok_or(DiagramError::UnknownChord(chord))?;
        let b = table.get(&other).ok_or(DiagramError::UnknownChord(other))?;
        let (lo, hi) = (a.tail.min(a.head), a.tail.max(a.head));
        let inside = |p| lo < p && p < hi;
        Ok(inside(b.tail) != inside(b.head))
    }

    /// Closing the line into a circle; positions are kept verbatim.
    pub fn closure(&self) -> KnotDiagram {
        KnotDiagram {
            endpoints: self.endpoints.clone(),
            signs: self.signs.clone(),
        }
    }

    /// Forgets the over/under information of every crossing.
    pub fn forget(&self) -> FlatDiagram {
        let chords = self
            .chords()
            .into_iter()
            .map(|(id, c)| {
                (
                    id,
                    FlatChord {
                        tail: c.tail,
                        head: c.head,
                        sign: c.sign,
                    },
                )
            })
            .collect();
        FlatDiagram { chords }
    }

    pub fn inverse(&self) -> Self {
        let mut endpoints = self.endpoints.clone();
        endpoints.reverse();
        LongDiagram {
            endpoints,
            signs: self.signs.clone(),
        }
    }

    /// Concatenation of long diagrams: `other` is appended to the right.
    pub fn concat(&self, other: &Self) -> Self {
        let offset = self.max_chord_id();
        let mut endpoints = self.endpoints.clone();
        endpoints.extend(offset_ids(&other.endpoints, offset));
        let mut signs = self.signs.clone();
        for (id, s) in &other.signs {
            signs.insert(ChordId(id.0 + offset), *s);
        }
        LongDiagram { endpoints, signs }
    }

    pub(crate) fn canonical_key(&self) -> ComponentKey {
        canonical_tokens(&[&self.endpoints], &self.signs, &[0])
            .into_iter()
            .flatten()
            .collect()
    }
}

impl PartialEq for LongDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for LongDiagram {}

// ---------------------------------------------------------------------------
// Long flat diagrams
// ---------------------------------------------------------------------------

/// One flat chord, stored as a representative of its flip class: the
/// representatives `(tail, head, sign)` and `(head, tail, -sign)` denote the
/// same flat crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FlatChord {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
}

impl FlatChord {
    pub fn flip(self) -> FlatChord {
        FlatChord {
            tail: self.head,
            head: self.tail,
            sign: self.sign.flipped(),
        }
    }

    /// The flip-class representative whose tail comes first.
    pub fn tails_first(self) -> FlatChord {
        if self.tail < self.head {
            self
        } else {
            self.flip()
        }
    }
}

/// Per-chord choice used when resolving a flat diagram into a long one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChordChoice {
    AsRepresented,
    Flipped,
}

/// A total assignment of [`ChordChoice`]s for a flat diagram.
pub type ResolutionChoice = BTreeMap<ChordId, ChordChoice>;

/// Gauss diagram of a long flat virtual knot: flip classes of signed chords
/// on an oriented line.
#[derive(Clone, Debug)]
pub struct FlatDiagram {
    chords: BTreeMap<ChordId, FlatChord>,
}

impl FlatDiagram {
    pub fn new(chords: BTreeMap<ChordId, FlatChord>) -> Result<Self, InvalidDiagram> {
        let n2 = chords.len() * 2;
        let mut taken = vec![false; n2];
        for (id, c) in &chords {
            for p in [c.tail, c.head] {
                if p >= n2 || taken[p] {
                    return Err(InvalidDiagram::BadPosition(*id, p));
                }
                taken[p] = true;
            }
        }
        Ok(FlatDiagram { chords })
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn endpoint_count(&self) -> usize {
        self.chords.len() * 2
    }

    pub fn chords(&self) -> &BTreeMap<ChordId, FlatChord> {
        &self.chords
    }

    pub fn chord(&self, id: ChordId) -> Result<FlatChord, DiagramError> {
        self.chords
            .get(&id)
            .copied()
            .ok_or(DiagramError::UnknownChord(id))
    }

    pub fn max_chord_id(&self) -> u32 {
        self.chords.keys().map(|c| c.0).max().unwrap_or(0)
    }

    pub fn linked(&self, chord: ChordId, other: ChordId) -> Result<bool, DiagramError> {
        if chord == other {
            return Err(DiagramError::SameChord(chord));
        }
        let a = self.chord(chord)?;
        let b = self.chord(other)?;
        let (lo, hi) = (a.tail.min(a.head), a.tail.max(a.head));
        let inside = |p| lo < p && p < hi;
        Ok(inside(b.tail) != inside(b.head))
    }

    /// Materializes one overlying long diagram; the choice must mention every
    /// chord of the diagram and nothing else.
    pub fn resolve(&self, choice: &ResolutionChoice) -> Result<LongDiagram, DiagramError> {
        for id in choice.keys() {
            if !self.chords.contains_key(id) {
                return Err(DiagramError::InvalidChoice(format!(
                    "choice names unknown chord {id}"
                )));
            }
        }
        for id in self.chords.keys() {
            if !choice.contains_key(id) {
                return Err(DiagramError::InvalidChoice(format!(
                    "no choice for chord {id}"
                )));
            }
        }
        let mut endpoints = vec![None; self.endpoint_count()];
        let mut signs = BTreeMap::new();
        for (id, rep) in &self.chords {
            let c = match choice[id] {
                ChordChoice::AsRepresented => *rep,
                ChordChoice::Flipped => rep.flip(),
            };
            endpoints[c.tail] = Some(Endpoint {
                chord: *id,
                role: Role::Tail,
            });
            endpoints[c.head] = Some(Endpoint {
                chord: *id,
                role: Role::Head,
            });
            signs.insert(*id, c.sign);
        }
        let endpoints = endpoints
            .into_iter()
            .map(|e| e.expect("positions tile the line"))
            .collect();
        Ok(LongDiagram { endpoints, signs })
    }

    fn resolve_all(&self, choice: ChordChoice) -> LongDiagram {
        let full: ResolutionChoice = self.chords.keys().map(|id| (*id, choice)).collect();
        self.resolve(&full).unwrap()
    }

    /// Every resolution: one long diagram per way of directing each chord.
    ///
    /// There are `2^n` of them, so this is only meant for small diagrams.
    pub fn all_resolutions(&self) -> Vec<LongDiagram> {
        let ids: Vec<ChordId> = self.chords.keys().copied().collect();
        assert!(
            ids.len() < 26,
            "too many chords to enumerate all resolutions"
        );
        (0usize..1 << ids.len())
            .map(|mask| {
                let choice: ResolutionChoice = ids
                    .iter()
                    .enumerate()
                    .map(|(i, id)| {
                        let pick = if mask >> i & 1 == 1 {
                            ChordChoice::Flipped
                        } else {
                            ChordChoice::AsRepresented
                        };
                        (*id, pick)
                    })
                    .collect();
                self.resolve(&choice)
                    .expect("every chord was given a choice")
            })
            .collect()
    }

    /// The resolution in which every chord points rightwards (tail before
    /// head).
    pub fn descending(&self) -> LongDiagram {
        let chords = self.chords.iter().map(|(id, c)| (*id, c.tails_first()));
        let d = FlatDiagram {
            chords: chords.collect(),
        };
        d.resolve_all(ChordChoice::AsRepresented)
    }

    pub fn inverse(&self) -> Self {
        let last = self.endpoint_count().saturating_sub(1);
        let chords = self
            .chords
            .iter()
            .map(|(id, c)| {
                (
                    *id,
                    FlatChord {
                        tail: last - c.tail,
                        head: last - c.head,
                        sign: c.sign,
                    },
                )
            })
            .collect();
        FlatDiagram { chords }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let offset = self.max_chord_id();
        let shift = self.endpoint_count();
        let mut chords = self.chords.clone();
        for (id, c) in &other.chords {
            chords.insert(
                ChordId(id.0 + offset),
                FlatChord {
                    tail: c.tail + shift,
                    head: c.head + shift,
                    sign: c.sign,
                },
            );
        }
        FlatDiagram { chords }
    }

    pub(crate) fn canonical_key(&self) -> ComponentKey {
        self.descending().canonical_key()
    }
}

impl PartialEq for FlatDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for FlatDiagram {}

// ---------------------------------------------------------------------------
// Link diagrams
// ---------------------------------------------------------------------------

/// Where the two endpoints of a link chord live.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Placement {
    /// Both endpoints on component `comp`.
    SelfChord {
        comp: usize,
        tail: usize,
        head: usize,
    },
    /// Tail on component `from`, head on the other component.
    Bridge {
        from: usize,
        tail: usize,
        head: usize,
    },
}

/// One chord of a link diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinkChord {
    pub place: Placement,
    pub sign: Sign,
}

/// The chords crossing from one component to the other, in chord-id order.
pub type BridgeList = Vec<(ChordId, LinkChord)>;

/// Gauss diagram of an ordered oriented two-component virtual link.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    components: [Vec<Endpoint>; 2],
    signs: BTreeMap<ChordId, Sign>,
}

impl LinkDiagram {
    pub fn new(
        components: [Vec<Endpoint>; 2],
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<Self, InvalidDiagram> {
        validate(&[&components[0], &components[1]], &signs)?;
        Ok(LinkDiagram { components, signs })
    }

    pub fn component(&self, comp: usize) -> &[Endpoint] {
        &self.components[comp]
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, id: ChordId) -> Result<Sign, DiagramError> {
        self.signs
            .get(&id)
            .copied()
            .ok_or(DiagramError::UnknownChord(id))
    }

    pub fn max_chord_id(&self) -> u32 {
        self.signs.keys().map(|c| c.0).max().unwrap_or(0)
    }

    pub fn segment_count(&self, comp: usize) -> usize {
        self.components[comp].len().max(1)
    }

    pub fn chords(&self) -> BTreeMap<ChordId, LinkChord> {
        chord_table(&[&self.components[0], &self.components[1]])
            .into_iter()
            .map(|(id, ((tc, tp), (hc, hp)))| {
                let place = if tc == hc {
                    Placement::SelfChord {
                        comp: tc,
                        tail: tp,
                        head: hp,
                    }
                } else {
                    Placement::Bridge {
                        from: tc,
                        tail: tp,
                        head: hp,
                    }
                };
                (
                    id,
                    LinkChord {
                        place,
                        sign: self.signs[&id],
                    },
                )
            })
            .collect()
    }

    /// Bridges oriented component 0 to component 1 and vice versa.
    pub fn bridges(&self) -> (BridgeList, BridgeList) {
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        for (id, c) in self.chords() {
            if let Placement::Bridge { from, .. } = c.place {
                if from == 0 {
                    fwd.push((id, c));
                } else {
                    back.push((id, c));
                }
            }
        }
        (fwd, back)
    }

    /// Reads component `comp` from a new base point.
    pub fn rotated(&self, comp: usize, offset: usize) -> Self {
        let mut components = self.components.clone();
        let len = components[comp].len();
        if len > 0 {
            components[comp] = (0..len)
                .map(|i| self.components[comp][(i + offset) % len])
                .collect();
        }
        LinkDiagram {
            components,
            signs: self.signs.clone(),
        }
    }

    /// Reverses the orientation of both components.
    pub fn inverse(&self) -> Self {
        let mut components = self.components.clone();
        components[0].reverse();
        components[1].reverse();
        LinkDiagram {
            components,
            signs: self.signs.clone(),
        }
    }

    pub fn mirror(&self) -> Self {
        let flip = |v: &Vec<Endpoint>| {
            v.iter()
                .map(|e| Endpoint {
                    chord: e.chord,
                    role: e.role.opposite(),
                })
                .collect::<Vec<_>>()
        };
        let components = [flip(&self.components[0]), flip(&self.components[1])];
        let signs = self
            .signs
            .iter()
            .map(|(id, s)| (*id, s.flipped()))
            .collect();
        LinkDiagram { components, signs }
    }

    pub(crate) fn canonical_key(&self) -> (ComponentKey, ComponentKey) {
        let l0 = self.components[0].len().max(1);
        let l1 = self.components[1].len().max(1);
        let mut best: Option<(ComponentKey, ComponentKey)> = None;
        for r0 in 0..l0 {
            for r1 in 0..l1 {
                let toks = canonical_tokens(
                    &[&self.components[0], &self.components[1]],
                    &self.signs,
                    &[r0, r1],
                );
                let cand = (toks[0].clone(), toks[1].clone());
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    }
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for LinkDiagram {}

// ---------------------------------------------------------------------------
// Kind-erased wrapper
// ---------------------------------------------------------------------------

/// The diagram kinds the Gauss code grammar can name.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Kind {
    Knot,
    Long,
    FlatLong,
    Link,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Knot => "knot",
            Kind::Long => "long",
            Kind::FlatLong => "flatlong",
            Kind::Link => "link",
        }
    }
}

/// Any of the four diagram types, as parsed from a Gauss code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Diagram {
    Knot(KnotDiagram),
    Long(LongDiagram),
    Flat(FlatDiagram),
    Link(LinkDiagram),
}

impl Diagram {
    pub fn kind(&self) -> Kind {
        match self {
            Diagram::Knot(_) => Kind::Knot,
            Diagram::Long(_) => Kind::Long,
            Diagram::Flat(_) => Kind::FlatLong,
            Diagram::Link(_) => Kind::Link,
        }
    }

    pub fn chord_count(&self) -> usize {
        match self {
            Diagram::Knot(d) => d.chord_count(),
            Diagram::Long(d) => d.chord_count(),
            Diagram::Flat(d) => d.chord_count(),
            Diagram::Link(d) => d.chord_count(),
        }
    }

    /// The same diagram read against its orientation (both orientations, for
    /// links).
    pub fn inverse(&self) -> Diagram {
        match self {
            Diagram::Knot(d) => Diagram::Knot(d.inverse()),
            Diagram::Long(d) => Diagram::Long(d.inverse()),
            Diagram::Flat(d) => Diagram::Flat(d.inverse()),
            Diagram::Link(d) => Diagram::Link(d.inverse()),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}
