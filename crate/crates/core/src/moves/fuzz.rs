//! Randomized invariance checking.
//!
//! A fuzz run repeats the same experiment: draw a random diagram, take a
//! random walk through move space, and demand after every single step that
//! the invariants still equal those of the starting diagram, and that the
//! step obeyed the structural side conditions the theory predicts (a kink
//! has index 0, a cancelling pair shares its index, a triangle never moves
//! any index, and so on). Everything is driven by one seeded generator, so
//! a report is reproducible from its seed alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{apply, gap_counts, r1_deletable, r2_deletable, r3_chords, r3_sites, Block, Gap, Move};
use crate::diagram::{
    ChordId, Diagram, Endpoint, FlatDiagram, KnotDiagram, LinkDiagram, LongDiagram, Placement,
    Role, Sign,
};
use crate::{flat, knot, link};

/// Which theory a fuzz run exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FuzzKind {
    Knot,
    FlatLong,
    Link,
}

impl fmt::Display for FuzzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FuzzKind::Knot => "knot",
            FuzzKind::FlatLong => "flatlong",
            FuzzKind::Link => "link",
        })
    }
}

impl FromStr for FuzzKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "knot" => Ok(FuzzKind::Knot),
            "flatlong" => Ok(FuzzKind::FlatLong),
            "link" => Ok(FuzzKind::Link),
            other => Err(format!(
                "unknown fuzz kind {other:?} (knot, flatlong or link)"
            )),
        }
    }
}

/// Parameters of a fuzz run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FuzzOptions {
    pub kind: FuzzKind,
    pub seed: u64,
    pub trials: u32,
    /// Moves attempted per trial.
    pub steps: u32,
    /// Rough size target; walks grow towards it and shrink beyond it.
    pub max_chords: usize,
}

/// One invariance violation, with everything needed to replay it. The trace
/// lists every move of the trial in order; the last entry is the one that
/// broke the named invariant, turning `before` into `after`.
#[derive(Debug, Clone, Serialize)]
pub struct TrialFailure {
    pub trial: u32,
    pub step: u32,
    pub trace: Vec<String>,
    pub invariant: String,
    pub before: String,
    pub after: String,
}

/// Outcome of a fuzz run.
#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub kind: FuzzKind,
    pub seed: u64,
    pub trials: u32,
    pub steps: u32,
    pub max_chords: usize,
    pub moves_applied: BTreeMap<String, u64>,
    pub failures: Vec<TrialFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A uniformly shuffled knot diagram with up to `max_chords` chords.
pub fn random_knot(rng: &mut impl Rng, max_chords: usize) -> KnotDiagram {
    let (endpoints, signs) = random_strand(rng, max_chords);
    KnotDiagram::new(endpoints, signs).expect("generated pairing is valid")
}

/// A uniformly shuffled long diagram with up to `max_chords` chords.
pub fn random_long(rng: &mut impl Rng, max_chords: usize) -> LongDiagram {
    let (endpoints, signs) = random_strand(rng, max_chords);
    LongDiagram::new(endpoints, signs).expect("generated pairing is valid")
}

/// A random flat diagram, as the shadow of a random long diagram.
pub fn random_flat(rng: &mut impl Rng, max_chords: usize) -> FlatDiagram {
    random_long(rng, max_chords).forget()
}

/// A random two-component link diagram with up to `max_chords` chords spread
/// freely over the components.
pub fn random_link(rng: &mut impl Rng, max_chords: usize) -> LinkDiagram {
    let n = rng.gen_range(0..=max_chords);
    let mut parts: [Vec<Endpoint>; 2] = [Vec::new(), Vec::new()];
    let mut signs = BTreeMap::new();
    for i in 1..=n {
        let id = ChordId(i as u32);
        parts[rng.gen_range(0..2)].push(Endpoint {
            chord: id,
            role: Role::Tail,
        });
        parts[rng.gen_range(0..2)].push(Endpoint {
            chord: id,
            role: Role::Head,
        });
        signs.insert(id, random_sign(rng));
    }
    parts[0].shuffle(rng);
    parts[1].shuffle(rng);
    LinkDiagram::new(parts, signs).expect("generated pairing is valid")
}

fn random_strand(
    rng: &mut impl Rng,
    max_chords: usize,
) -> (Vec<Endpoint>, BTreeMap<ChordId, Sign>) {
    let n = rng.gen_range(0..=max_chords);
    let mut endpoints: Vec<Endpoint> = (1..=n)
        .flat_map(|i| {
            let chord = ChordId(i as u32);
            [
                Endpoint {
                    chord,
                    role: Role::Tail,
                },
                Endpoint {
                    chord,
                    role: Role::Head,
                },
            ]
        })
        .collect();
    endpoints.shuffle(rng);
    let signs = (1..=n)
        .map(|i| (ChordId(i as u32), random_sign(rng)))
        .collect();
    (endpoints, signs)
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Runs the whole experiment described by the options.
pub fn run_fuzz(opts: &FuzzOptions) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut moves_applied = BTreeMap::new();
    let mut failures = Vec::new();

    for trial in 0..opts.trials {
        let start = match opts.kind {
            FuzzKind::Knot => Diagram::Knot(random_knot(&mut rng, opts.max_chords)),
            FuzzKind::FlatLong => Diagram::Flat(random_flat(&mut rng, opts.max_chords)),
            FuzzKind::Link => Diagram::Link(random_link(&mut rng, opts.max_chords)),
        };
        if let Err(invariant) = structural_checks(&start) {
            failures.push(TrialFailure {
                trial,
                step: 0,
                trace: Vec::new(),
                invariant,
                before: start.serialize(),
                after: start.serialize(),
            });
            continue;
        }
        let baseline = fingerprint(&start);
        let mut current = start;
        let mut trace = Vec::new();

        for step in 0..opts.steps {
            let Some(mv) = choose_move(&mut rng, &current, opts.max_chords) else {
                break;
            };
            trace.push(format!("{mv:?}"));
            let fail = |trace: &[String], before: &Diagram, after: &Diagram, invariant: String| {
                TrialFailure {
                    trial,
                    step,
                    trace: trace.to_vec(),
                    invariant,
                    before: before.serialize(),
                    after: after.serialize(),
                }
            };
            let next = match apply(&current, &mv) {
                Ok(next) => next,
                Err(e) => {
                    failures.push(fail(
                        &trace,
                        &current,
                        &current,
                        format!("move refused: {e}"),
                    ));
                    break;
                }
            };
            debug_assert!(next.chord_count() <= opts.max_chords, "budget exceeded");
            if let Err(invariant) = check_move_axioms(&current, &next, &mv) {
                failures.push(fail(&trace, &current, &next, invariant));
                break;
            }
            if let Some(invariant) = first_difference(&baseline, &fingerprint(&next)) {
                failures.push(fail(&trace, &current, &next, invariant));
                break;
            }
            if let Err(invariant) = structural_checks(&next) {
                failures.push(fail(&trace, &current, &next, invariant));
                break;
            }
            *moves_applied.entry(label(&mv).to_string()).or_insert(0) += 1;
            current = next;
        }
    }

    FuzzReport {
        kind: opts.kind,
        seed: opts.seed,
        trials: opts.trials,
        steps: opts.steps,
        max_chords: opts.max_chords,
        moves_applied,
        failures,
    }
}

fn label(mv: &Move) -> &'static str {
    match mv {
        Move::R1Insert { .. } => "r1-insert",
        Move::R1Delete { .. } => "r1-delete",
        Move::R2Insert { .. } => "r2-insert",
        Move::R2Delete { .. } => "r2-delete",
        Move::R3 { .. } => "r3",
        Move::Switch { .. } => "switch",
        Move::Rebase { .. } => "rebase",
    }
}

/// Everything a random walk must preserve, as labelled strings; also the
/// comparison key of `vknot compare`.
pub fn fingerprint(d: &Diagram) -> Vec<(&'static str, String)> {
    match d {
        Diagram::Knot(k) => vec![
            ("writhe polynomial", knot::writhe_polynomial(k).to_string()),
            (
                "affine index polynomial",
                knot::affine_index_polynomial(k).to_string(),
            ),
            ("odd writhe", knot::odd_writhe(k).to_string()),
            (
                "nonzero-index writhe",
                knot::nonzero_index_writhe(k).to_string(),
            ),
            (
                "parity family",
                knot::f_polys(k)
                    .iter()
                    .map(|(cls, f)| format!("f{cls} = {f}"))
                    .collect::<Vec<_>>()
                    .join("; "),
            ),
        ],
        Diagram::Long(l) => fingerprint(&Diagram::Knot(l.closure()))
            .into_iter()
            .chain(fingerprint(&Diagram::Flat(l.forget())))
            .collect(),
        Diagram::Flat(f) => vec![
            (
                "flat writhe polynomial",
                flat::flat_writhe_polynomial(f).to_string(),
            ),
            ("crossing bound", flat::crossing_lower_bound(f).to_string()),
        ],
        Diagram::Link(l) => {
            let (f, g, _) = link::canonical_pair(l);
            vec![
                (
                    "double linking number",
                    link::double_linking_number(l).to_string(),
                ),
                ("span", link::span(l).to_string()),
                ("canonical F", f.to_string()),
                ("canonical G", g.to_string()),
                (
                    "linking polynomial",
                    link::linking_polynomial(l).to_string(),
                ),
            ]
        }
    }
}

fn first_difference(
    baseline: &[(&'static str, String)],
    now: &[(&'static str, String)],
) -> Option<String> {
    baseline.iter().zip(now).find_map(|((name, a), (_, b))| {
        (a != b).then(|| format!("{name} changed from [{a}] to [{b}]"))
    })
}

/// Per-diagram sanity bounds the theory guarantees at every point of a walk:
/// the crossing lower bound of a flat diagram cannot exceed its chord count,
/// and a link's F/G pair is bounded by its bridges and evaluates at 1 to the
/// double linking number and signed span.
fn structural_checks(d: &Diagram) -> Result<(), String> {
    match d {
        Diagram::Flat(f) => {
            let s = flat::crossing_lower_bound(f);
            let n = f.chord_count() as i64;
            if s > n {
                return Err(format!("crossing bound {s} exceeds chord count {n}"));
            }
        }
        Diagram::Link(l) => {
            let (f, g) = link::raw_pair(l);
            let (fwd, back) = l.bridges();
            let bridge_count = BigInt::from(fwd.len() + back.len());
            let weight = f.coeff_abs_sum() + g.coeff_abs_sum();
            if weight > bridge_count {
                return Err(format!(
                    "|F|+|G| = {weight} exceeds bridge count {bridge_count}"
                ));
            }
            let sum = f.eval_at_one() + g.eval_at_one();
            if sum != BigInt::from(link::double_linking_number(l)) {
                return Err(format!(
                    "F(1)+G(1) = {sum} is not the double linking number"
                ));
            }
            let diff = f.eval_at_one() - g.eval_at_one();
            if diff != BigInt::from(link::signed_span(l)) {
                return Err(format!("F(1)-G(1) = {diff} is not the signed span"));
            }
        }
        _ => {}
    }
    Ok(())
}

fn max_id(d: &Diagram) -> ChordId {
    let top = match d {
        Diagram::Knot(k) => k.max_chord_id(),
        Diagram::Long(l) => l.max_chord_id(),
        Diagram::Flat(f) => f.max_chord_id(),
        Diagram::Link(l) => l.max_chord_id(),
    };
    ChordId(top)
}

/// Structural side conditions of each move.
fn check_move_axioms(before: &Diagram, after: &Diagram, mv: &Move) -> Result<(), String> {
    match mv {
        Move::R1Insert { .. } => kink_axioms(after, max_id(after), before, after),
        Move::R1Delete { chord } => kink_axioms(before, *chord, after, before),
        Move::R2Insert { .. } => {
            let b = max_id(after);
            pair_axioms(after, (ChordId(b.0 - 1), b), before, after)
        }
        Move::R2Delete { pair } => pair_axioms(before, *pair, after, before),
        Move::R3 { blocks } => triangle_axioms(before, after, blocks),
        Move::Switch { .. } | Move::Rebase { .. } => Ok(()),
    }
}

/// The kinked chord must have index 0 (be a self chord, for links), and no
/// other chord's index may move.
fn kink_axioms(
    with: &Diagram,
    chord: ChordId,
    smaller: &Diagram,
    larger: &Diagram,
) -> Result<(), String> {
    match with {
        Diagram::Knot(k) => {
            let idx = knot::indices(k);
            if idx[&chord] != 0 {
                return Err(format!("kinked chord {chord} has index {}", idx[&chord]));
            }
        }
        Diagram::Link(l) if !matches!(l.chords()[&chord].place, Placement::SelfChord { .. }) => {
            return Err(format!("kinked chord {chord} is a bridge"));
        }
        _ => {}
    }
    untouched_indices(smaller, larger)
}

/// A cancelling pair must share its index (be equally placed, for links),
/// and no other chord's index may move.
fn pair_axioms(
    with: &Diagram,
    pair: (ChordId, ChordId),
    smaller: &Diagram,
    larger: &Diagram,
) -> Result<(), String> {
    match with {
        Diagram::Knot(k) => {
            let idx = knot::indices(k);
            if idx[&pair.0] != idx[&pair.1] {
                return Err(format!(
                    "cancelling pair has indices {} and {}",
                    idx[&pair.0], idx[&pair.1]
                ));
            }
        }
        Diagram::Link(l) => {
            let chords = l.chords();
            let placed = (chords[&pair.0].place, chords[&pair.1].place);
            let matched = match placed {
                (Placement::SelfChord { comp: a, .. }, Placement::SelfChord { comp: b, .. }) => {
                    a == b
                }
                (Placement::Bridge { from: a, .. }, Placement::Bridge { from: b, .. }) => a == b,
                _ => false,
            };
            if !matched {
                return Err("cancelling pair is placed asymmetrically".to_string());
            }
        }
        _ => {}
    }
    untouched_indices(smaller, larger)
}

/// Chords outside a move keep their index exactly.
fn untouched_indices(smaller: &Diagram, larger: &Diagram) -> Result<(), String> {
    let (small, large) = match (smaller, larger) {
        (Diagram::Knot(a), Diagram::Knot(b)) => (knot::indices(a), knot::indices(b)),
        (Diagram::Flat(a), Diagram::Flat(b)) => (flat::flat_indices(a), flat::flat_indices(b)),
        _ => return Ok(()),
    };
    for (id, idx) in &small {
        if large.get(id) != Some(idx) {
            return Err(format!(
                "index of untouched chord {id} moved from {idx:?} to {:?}",
                large.get(id)
            ));
        }
    }
    Ok(())
}

/// A triangle move fixes every index; its chords split into zero or two
/// odd-index ones (bridges, for links).
fn triangle_axioms(before: &Diagram, after: &Diagram, blocks: &[Block; 3]) -> Result<(), String> {
    let triple = r3_chords(before, blocks).map_err(|e| format!("triangle unreadable: {e}"))?;
    match (before, after) {
        (Diagram::Knot(b), Diagram::Knot(a)) => {
            let idx = knot::indices(b);
            if knot::indices(a) != idx {
                return Err("triangle move changed some index".to_string());
            }
            let odd = triple.iter().filter(|c| idx[c] % 2 != 0).count();
            if odd != 0 && odd != 2 {
                return Err(format!("triangle has {odd} odd-index chords"));
            }
        }
        (Diagram::Flat(b), Diagram::Flat(a)) => {
            if flat::flat_indices(a) != flat::flat_indices(b) {
                return Err("triangle move changed some flat index".to_string());
            }
        }
        (Diagram::Link(b), Diagram::Link(a)) => {
            let is_bridge = |l: &LinkDiagram, c: &ChordId| {
                matches!(l.chords()[c].place, Placement::Bridge { .. })
            };
            let bridges = triple.iter().filter(|c| is_bridge(b, c)).count();
            if bridges != 0 && bridges != 2 {
                return Err(format!("triangle has {bridges} bridges"));
            }
            if triple.iter().filter(|c| is_bridge(a, c)).count() != bridges {
                return Err("triangle move changed a placement".to_string());
            }
        }
        _ => {}
    }
    Ok(())
}

/// Chords whose switch is allowed to appear in a walk: none for knots, all
/// for flat diagrams, self chords for links.
fn switchable(d: &Diagram) -> Vec<ChordId> {
    match d {
        Diagram::Flat(f) => f.chords().keys().copied().collect(),
        Diagram::Link(l) => l
            .chords()
            .iter()
            .filter(|(_, c)| matches!(c.place, Placement::SelfChord { .. }))
            .map(|(id, _)| *id)
            .collect(),
        _ => Vec::new(),
    }
}

enum Category {
    Insert,
    Delete,
    Triangle,
    Switch,
    Rebase,
}

/// Picks a weighted random move that respects the chord budget, or nothing
/// when the diagram admits no move at all within it.
fn choose_move(rng: &mut impl Rng, d: &Diagram, max_chords: usize) -> Option<Move> {
    let n = d.chord_count();
    let can_r1 = n < max_chords;
    let can_r2 = n + 2 <= max_chords;
    let r1s = r1_deletable(d);
    let r2s = r2_deletable(d);
    let sites = r3_sites(d);
    let switches = switchable(d);
    let growing = can_r2;

    let mut options = Vec::new();
    if can_r1 || can_r2 {
        options.push((5, Category::Insert));
    }
    if !r1s.is_empty() || !r2s.is_empty() {
        options.push((if growing { 2 } else { 6 }, Category::Delete));
    }
    if !sites.is_empty() {
        options.push((3, Category::Triangle));
    }
    if !switches.is_empty() {
        options.push((2, Category::Switch));
    }
    if matches!(d, Diagram::Knot(_) | Diagram::Link(_)) {
        options.push((1, Category::Rebase));
    }
    if options.is_empty() {
        return None;
    }

    let weights =
        WeightedIndex::new(options.iter().map(|(w, _)| *w)).expect("weights are positive");
    Some(match options[weights.sample(rng)].1 {
        Category::Insert => {
            let gaps = gap_counts(d);
            let pick_gap = |rng: &mut dyn rand::RngCore| {
                let strand = rng.gen_range(0..gaps.len());
                Gap {
                    strand,
                    gap: rng.gen_range(0..gaps[strand]),
                }
            };
            if can_r1 && (!can_r2 || rng.gen_ratio(1, 3)) {
                Move::R1Insert {
                    gap: pick_gap(rng),
                    sign: random_sign(rng),
                    tail_first: rng.gen(),
                }
            } else {
                Move::R2Insert {
                    tails: pick_gap(rng),
                    heads: pick_gap(rng),
                    sign: random_sign(rng),
                    crossed: rng.gen(),
                }
            }
        }
        Category::Delete => {
            let total = r1s.len() + r2s.len();
            let at = rng.gen_range(0..total);
            if at < r1s.len() {
                Move::R1Delete { chord: r1s[at] }
            } else {
                Move::R2Delete {
                    pair: r2s[at - r1s.len()],
                }
            }
        }
        Category::Triangle => Move::R3 {
            blocks: *sites.choose(rng).expect("nonempty"),
        },
        Category::Switch => Move::Switch {
            chord: *switches.choose(rng).expect("nonempty"),
        },
        Category::Rebase => {
            let strands = if matches!(d, Diagram::Link(_)) { 2 } else { 1 };
            Move::Rebase {
                strand: rng.gen_range(0..strands),
                offset: rng.gen_range(0..=2 * max_chords),
            }
        }
    })
}
