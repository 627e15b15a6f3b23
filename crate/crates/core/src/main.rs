//! `vknot` — Gauss-diagram invariants of virtual knots and links.
//!
//! Four verbs: `compute` prints invariant reports, `transform` rewrites
//! diagrams, `fuzz` runs randomized move-invariance trials, and `compare`
//! checks two diagrams against each other invariant by invariant.
//!
//! Exit codes: 0 on success, 1 on any input error (bad codes, bad flags,
//! unreadable files), 2 when a property fails (a fuzz trial found a
//! violation, or `compare` found differing invariants).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vknot::diagram::{ChordChoice, CodeError, Diagram, ResolutionChoice};
use vknot::moves::{fingerprint, run_fuzz, FuzzKind, FuzzOptions, FuzzReport};
use vknot::report;

#[derive(Parser)]
#[command(
    name = "vknot",
    version,
    about = "Gauss-diagram invariants of virtual knots and links"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the invariant report of one or more diagrams.
    Compute {
        /// Gauss code, e.g. "knot: O1+ O2+ U1+ U2+".
        code: Option<String>,
        /// Read codes from a file instead (one per line; blank lines and
        /// '#' comments are skipped). Without CODE or --file, reads stdin.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Emit JSON instead of text (an array when reading a file or stdin).
        #[arg(long)]
        json: bool,
        /// Comma-separated subset of report fields to emit.
        #[arg(long, value_delimiter = ',')]
        invariants: Vec<String>,
    },
    /// Apply a diagram transform and print the resulting Gauss code.
    Transform {
        /// What to do with the diagram.
        op: Op,
        /// Gauss code to transform.
        code: Option<String>,
        /// Read codes from a file instead (one per line; blank lines and
        /// '#' comments are skipped). Without CODE or --file, reads stdin.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Emit JSON strings instead of raw codes.
        #[arg(long)]
        json: bool,
        /// For `resolve`: one letter per chord in ascending id order,
        /// 'o' = crossed over first, 'u' = crossed under first.
        #[arg(long)]
        choices: Option<String>,
        /// For `connect`: the second summand's Gauss code.
        #[arg(long)]
        with: Option<String>,
        /// For `connect` on knots: cut segment on the first diagram.
        #[arg(long)]
        at: Option<usize>,
        /// For `connect` on knots: cut segment on the second diagram.
        #[arg(long)]
        at2: Option<usize>,
    },
    /// Random-walk the move space and verify every invariant at every step.
    Fuzz {
        /// Diagram kind to fuzz.
        #[arg(long, default_value = "knot")]
        kind: FuzzKind,
        /// Random seed (the GAUSS_SEED environment variable, when set,
        /// overrides this flag).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of independent trials.
        #[arg(long, default_value_t = 100)]
        trials: u32,
        /// Moves attempted per trial.
        #[arg(long, default_value_t = 20)]
        steps: u32,
        /// Chord budget no move may exceed.
        #[arg(long, default_value_t = 24)]
        max_chords: usize,
        /// Emit the full JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Compare the invariants of two diagrams of the same kind.
    Compare {
        left: String,
        right: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    /// Reverse the orientation.
    Inverse,
    /// Switch every crossing (knots and links).
    Mirror,
    /// Close a long diagram into a knot.
    Closure,
    /// The descending resolution of a flat long diagram.
    Descending,
    /// One chosen resolution of a flat long diagram (see --choices).
    Resolve,
    /// Connected sum (knots) or concatenation (long and flat diagrams).
    Connect,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // Unknown flags and malformed values are input errors: exit 1.
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Compute {
            code,
            file,
            json,
            invariants,
        } => compute(code, file, json, &invariants),
        Cmd::Transform {
            op,
            code,
            file,
            json,
            choices,
            with,
            at,
            at2,
        } => transform(
            op,
            code,
            file,
            json,
            choices.as_deref(),
            with.as_deref(),
            at,
            at2,
        ),
        Cmd::Fuzz {
            kind,
            seed,
            trials,
            steps,
            max_chords,
            json,
        } => fuzz(kind, seed, trials, steps, max_chords, json),
        Cmd::Compare { left, right, json } => compare(&left, &right, json),
    }
}

// ---------------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------------

/// The codes to process and whether they came from a batch source (file or
/// stdin) rather than the command line.
fn gather(code: Option<String>, file: Option<PathBuf>) -> Result<(Vec<String>, bool), String> {
    match (code, file) {
        (Some(_), Some(_)) => Err("Error: give an inline code or --file, not both".to_string()),
        (Some(c), None) => Ok((vec![c], false)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("Error: cannot read {}: {e}", path.display()))?;
            Ok((split_batch(&text), true))
        }
        (None, None) => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("Error: cannot read stdin: {e}"))?;
            Ok((split_batch(&text), true))
        }
    }
}

fn split_batch(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

fn parse_code(code: &str) -> Result<Diagram, String> {
    Diagram::parse(code).map_err(|e| match e {
        CodeError::Parse(p) => format!("ParseError: {p}"),
        CodeError::Invalid(i) => format!("InvalidDiagram: {i}"),
    })
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

fn compute(
    code: Option<String>,
    file: Option<PathBuf>,
    json: bool,
    invariants: &[String],
) -> Result<u8, String> {
    let (codes, batch) = gather(code, file)?;
    let mut reports = Vec::new();
    for code in &codes {
        let d = parse_code(code)?;
        let keys = report::select_keys(&d, invariants).map_err(|e| format!("Error: {e}"))?;
        reports.push(if json {
            report::json_report_for(&d, &keys).to_string()
        } else {
            report::text_report_for(&d, &keys)
        });
    }
    if json {
        if batch {
            println!("[{}]", reports.join(","));
        } else {
            println!("{}", reports[0]);
        }
    } else {
        for (code, text) in codes.iter().zip(&reports) {
            if batch {
                println!("# {code}");
            }
            print!("{text}");
            if batch {
                println!();
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn transform(
    op: Op,
    code: Option<String>,
    file: Option<PathBuf>,
    json: bool,
    choices: Option<&str>,
    with: Option<&str>,
    at: Option<usize>,
    at2: Option<usize>,
) -> Result<u8, String> {
    let (codes, batch) = gather(code, file)?;
    let mut out = Vec::new();
    for code in &codes {
        let d = parse_code(code)?;
        out.push(apply_op(&d, op, choices, with, at, at2)?.serialize());
    }
    if json {
        let values: Vec<Value> = out.iter().map(|c| json!(c)).collect();
        if batch {
            println!("{}", Value::Array(values));
        } else {
            println!("{}", values[0]);
        }
    } else {
        for code in &out {
            println!("{code}");
        }
    }
    Ok(0)
}

fn apply_op(
    d: &Diagram,
    op: Op,
    choices: Option<&str>,
    with: Option<&str>,
    at: Option<usize>,
    at2: Option<usize>,
) -> Result<Diagram, String> {
    if op != Op::Connect && (with.is_some() || at.is_some() || at2.is_some()) {
        return Err("Error: --with/--at/--at2 only apply to connect".to_string());
    }
    if op != Op::Resolve && choices.is_some() {
        return Err("Error: --choices only applies to resolve".to_string());
    }
    match (op, d) {
        (Op::Inverse, _) => Ok(d.inverse()),
        (Op::Mirror, Diagram::Knot(k)) => Ok(Diagram::Knot(k.mirror())),
        (Op::Mirror, Diagram::Link(l)) => Ok(Diagram::Link(l.mirror())),
        (Op::Mirror, _) => {
            Err("Error: mirror is only defined for knot and link diagrams".to_string())
        }
        (Op::Closure, Diagram::Long(l)) => Ok(Diagram::Knot(l.closure())),
        (Op::Closure, _) => Err("Error: closure is only defined for long diagrams".to_string()),
        (Op::Descending, Diagram::Flat(f)) => Ok(Diagram::Long(f.descending())),
        (Op::Descending, _) => {
            Err("Error: descending is only defined for flatlong diagrams".to_string())
        }
        (Op::Resolve, Diagram::Flat(f)) => {
            let letters = choices.ok_or_else(|| {
                "Error: resolve requires --choices (one 'o'/'u' per chord, ascending id order)"
                    .to_string()
            })?;
            if letters.chars().count() != f.chord_count() {
                return Err(format!(
                    "Error: --choices needs exactly {} letters, got {}",
                    f.chord_count(),
                    letters.chars().count()
                ));
            }
            let choice: ResolutionChoice = f
                .chords()
                .iter()
                .zip(letters.chars())
                .map(|((id, rep), ch)| {
                    let over_first = match ch {
                        'o' => true,
                        'u' => false,
                        other => return Err(format!("Error: bad choice letter {other:?}")),
                    };
                    let tail_first = rep.tail < rep.head;
                    let pick = if over_first == tail_first {
                        ChordChoice::AsRepresented
                    } else {
                        ChordChoice::Flipped
                    };
                    Ok((*id, pick))
                })
                .collect::<Result<_, String>>()?;
            let long = f.resolve(&choice).map_err(|e| format!("Error: {e}"))?;
            Ok(Diagram::Long(long))
        }
        (Op::Resolve, _) => Err("Error: resolve is only defined for flatlong diagrams".to_string()),
        (Op::Connect, _) => {
            let other = parse_code(with.ok_or("Error: connect requires --with CODE")?)?;
            let cuts_given = at.is_some() || at2.is_some();
            match (d, &other) {
                (Diagram::Knot(a), Diagram::Knot(b)) => {
                    let sum = a
                        .connected_sum(at.unwrap_or(0), b, at2.unwrap_or(0))
                        .map_err(|e| format!("Error: {e}"))?;
                    Ok(Diagram::Knot(sum))
                }
                (Diagram::Long(a), Diagram::Long(b)) if !cuts_given => {
                    Ok(Diagram::Long(a.concat(b)))
                }
                (Diagram::Flat(a), Diagram::Flat(b)) if !cuts_given => {
                    Ok(Diagram::Flat(a.concat(b)))
                }
                (Diagram::Long(_), Diagram::Long(_)) | (Diagram::Flat(_), Diagram::Flat(_)) => {
                    Err("Error: --at/--at2 only apply to knot connected sums".to_string())
                }
                _ => Err(
                    "Error: connect needs two diagrams of the same kind (knot, long or flatlong)"
                        .to_string(),
                ),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// fuzz
// ---------------------------------------------------------------------------

fn fuzz(
    kind: FuzzKind,
    seed: u64,
    trials: u32,
    steps: u32,
    max_chords: usize,
    json: bool,
) -> Result<u8, String> {
    let seed = match std::env::var("GAUSS_SEED") {
        Ok(s) if !s.is_empty() => s
            .parse::<u64>()
            .map_err(|_| format!("Error: GAUSS_SEED must be an unsigned integer, got {s:?}"))?,
        _ => seed,
    };
    let report = run_fuzz(&FuzzOptions {
        kind,
        seed,
        trials,
        steps,
        max_chords,
    });
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        print_fuzz_text(&report);
    }
    Ok(if report.passed() { 0 } else { 2 })
}

fn print_fuzz_text(report: &FuzzReport) {
    println!(
        "kind = {}, seed = {}, trials = {}, steps = {}, max chords = {}",
        report.kind, report.seed, report.trials, report.steps, report.max_chords
    );
    let applied: Vec<String> = report
        .moves_applied
        .iter()
        .map(|(name, n)| format!("{name} {n}"))
        .collect();
    println!(
        "moves applied: {}",
        if applied.is_empty() {
            "none".to_string()
        } else {
            applied.join(", ")
        }
    );
    for f in &report.failures {
        println!();
        println!(
            "FAILURE in trial {} at step {}: {}",
            f.trial, f.step, f.invariant
        );
        println!("  before: {}", f.before);
        println!("  after:  {}", f.after);
        println!("  trace:");
        for mv in &f.trace {
            println!("    {mv}");
        }
    }
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

fn compare(left: &str, right: &str, json: bool) -> Result<u8, String> {
    let a = parse_code(left)?;
    let b = parse_code(right)?;
    if a.kind() != b.kind() {
        return Err(format!(
            "Error: cannot compare a {} diagram with a {} diagram",
            a.kind().name(),
            b.kind().name()
        ));
    }
    let fa = fingerprint(&a);
    let fb = fingerprint(&b);
    let identical = a.serialize() == b.serialize();
    let equal = identical || fa == fb;
    if json {
        let rows: Vec<Value> = fa
            .iter()
            .zip(&fb)
            .map(
                |((name, l), (_, r))| json!({"name": name, "left": l, "right": r, "equal": l == r}),
            )
            .collect();
        let out = json!({
            "kind": a.kind().name(),
            "identical": identical,
            "equal": equal,
            "invariants": rows,
        });
        println!("{out}");
    } else {
        println!("kind: {}", a.kind().name());
        if identical {
            println!("identical diagrams (same canonical code)");
        }
        for ((name, l), (_, r)) in fa.iter().zip(&fb) {
            let marker = if l == r { "" } else { "  << differs" };
            println!("{name}: {l} | {r}{marker}");
        }
        println!("{}", if equal { "equal" } else { "different" });
    }
    Ok(if equal { 0 } else { 2 })
}
