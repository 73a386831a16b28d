//! Command-line front end.
//!
//! Every subcommand prints one JSON report on stdout (suppressed by
//! `--quiet`). Exit codes: 0 when the run succeeds and every checked claim
//! holds, 1 when a claim is violated, 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, sweep_curves};
use crate::constructions::{self, projective_construction, verify_construction};
use crate::error::Error;
use crate::geometry::ProjectivePlane;
use crate::hypergraph::Hypergraph;
use crate::matchings::{
    check_intersecting_corollary, fractional_matching_with_cover, is_intersecting, matching_number,
};
use crate::plot::{curve_rows, emit_curve_csv, emit_curve_svg};
use crate::search::{self, Mode, Predicate, SearchOutcome, SearchTask, Shard, TripleSpace};
use crate::Rational;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "tightcomp", version, about = "Tight components of hypergraphs under minimum codegree conditions")]
struct Cli {
    /// Suppress the JSON report on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an extremal construction and write it as hypergraph text.
    Construct(ConstructArgs),
    /// Codegree and tight-component statistics of a hypergraph file.
    Analyze(AnalyzeArgs),
    /// Sample the f3 bound curves to CSV and optionally SVG.
    Bounds(BoundsArgs),
    /// Check one of the library's claims.
    Verify(VerifyArgs),
    /// Exhaustive or sampled search over small 3-graphs.
    Search(SearchArgs),
    /// Matching numbers of a hypergraph file.
    Matchings(MatchingsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    ThreePart,
    SplitW,
    Projective,
    F2,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Projective family: r >= 3 with r - 2 a plane order.
    #[arg(long)]
    r: Option<usize>,
    /// f2 family: number of cliques.
    #[arg(long)]
    m: Option<usize>,
    /// split-w family: uniformity.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Projective family: write the edge colouring as CSV.
    #[arg(long)]
    colors: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Include per-component edge and vertex lists.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, value_parser = parse_rational)]
    xmin: Rational,
    #[arg(long, value_parser = parse_rational)]
    xmax: Rational,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Construction,
    Mycroft,
    Connectivity,
    Furedi,
    Curves,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    target: Target,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    shards: u64,
    /// Furedi target: intersecting hypergraph to check (default: the Fano plane).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Directory for the counterexample artifact.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// Components must meet fewer than t vertices (default n).
    #[arg(long)]
    t: Option<usize>,
    /// Split the search into this many shards (a power of two).
    #[arg(long, default_value_t = 1)]
    shards: u64,
    /// Run only this shard.
    #[arg(long)]
    shard: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample this many random graphs instead of enumerating.
    #[arg(long)]
    samples: Option<u64>,
    /// Where to write the witness hypergraph.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MatchingsArgs {
    file: PathBuf,
}

/// Accepts "p/q" or an integer; decimals are rejected to keep inputs exact.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("expected a rational \"p/q\" or an integer, got {s:?}");
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

/// Outcome of a subcommand before printing.
struct Outcome {
    report: Value,
    passed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, passed: true }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<Outcome, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn read_hypergraph(path: &Path) -> std::result::Result<Hypergraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Hypergraph::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn construct(a: ConstructArgs) -> CliResult {
    let mut extra = json!({});
    let h = match a.family {
        Family::ThreePart => constructions::three_part(a.n)?,
        Family::SplitW => constructions::split_w(a.n, a.k)?,
        Family::F2 => {
            let m = a.m.ok_or_else(|| usage("--family f2 needs --m"))?;
            constructions::f2_extremal(a.n, m)?
        }
        Family::Projective => {
            let r = a.r.ok_or_else(|| usage("--family projective needs --r"))?;
            let (h, coloring) = projective_construction(a.n, r)?;
            if let Some(path) = &a.colors {
                write_file(path, &coloring.to_csv())?;
            }
            extra = json!({ "classes": coloring.classes().len() });
            h
        }
    };
    if let Some(path) = &a.output {
        write_file(path, &h.to_text())?;
    }
    let family = match a.family {
        Family::ThreePart => "three-part",
        Family::SplitW => "split-w",
        Family::Projective => "projective",
        Family::F2 => "f2",
    };
    let mut report = json!({
        "family": family,
        "params": { "n": a.n, "r": a.r, "m": a.m, "k": a.k },
        "n": h.n(),
        "k": h.k(),
        "m_edges": h.num_edges(),
        "min_codegree": h.min_codegree()?,
        "tc": h.tc(),
        "output": a.output.as_ref().map(|p| p.display().to_string()),
    });
    if let (Value::Object(r), Value::Object(e)) = (&mut report, extra) {
        r.extend(e);
    }
    Ok(Outcome::ok(report))
}

fn analyze(a: AnalyzeArgs) -> CliResult {
    let h = read_hypergraph(&a.file)?;
    let dec = h.tight_components();
    let mut report = json!({
        "k": h.k(),
        "n": h.n(),
        "m": h.total_edges(),
        "min_codegree": h.min_codegree()?,
        "num_components": dec.len(),
        "tc": dec.largest(),
        "connected": h.is_hypergraph_connected()?,
    });
    let components: Vec<Value> = dec
        .components
        .iter()
        .map(|c| {
            if a.json {
                json!({ "edges": c.edge_indices, "vertices": c.vertex_set })
            } else {
                json!({ "edges": c.edge_indices.len(), "vertices": c.vertex_count })
            }
        })
        .collect();
    report["components"] = Value::Array(components);
    Ok(Outcome::ok(report))
}

fn bounds_cmd(a: BoundsArgs) -> CliResult {
    let rows = curve_rows(&a.xmin, &a.xmax, a.samples)?;
    let dominated = rows.iter().all(|r| r.lower <= r.upper);
    write_file(&a.csv, &emit_curve_csv(&a.xmin, &a.xmax, a.samples)?)?;
    if let Some(svg) = &a.svg {
        write_file(svg, &emit_curve_svg(&a.xmin, &a.xmax, a.samples)?)?;
    }
    Ok(Outcome {
        report: json!({
            "xmin": a.xmin.to_string(),
            "xmax": a.xmax.to_string(),
            "samples": a.samples,
            "rows": rows.len(),
            "lower_le_upper": dominated,
            "csv": a.csv.display().to_string(),
            "svg": a.svg.as_ref().map(|p| p.display().to_string()),
        }),
        passed: dominated,
    })
}

fn fano() -> Hypergraph {
    ProjectivePlane::new(2)
        .expect("order 2 is supported")
        .to_hypergraph()
}

fn verify(a: VerifyArgs) -> CliResult {
    let (report, passed, artifact): (Value, bool, Option<String>) = match a.target {
        Target::Construction => {
            let n = a.n.unwrap_or(21);
            let r = a.r.unwrap_or(4);
            let rep = verify_construction(n, r)?;
            let passed = rep.passed();
            let artifact = (!passed).then(|| {
                projective_construction(n, r)
                    .map(|(h, _)| h.to_text())
                    .unwrap_or_default()
            });
            (to_value(&rep), passed, artifact)
        }
        Target::Mycroft => {
            let rep = search::verify_mycroft(a.n.unwrap_or(6), a.shards)?;
            (to_value(&rep), rep.passed, rep.counterexample.clone())
        }
        Target::Connectivity => {
            let samples = a.samples.unwrap_or(500) as usize;
            let rep = search::verify_connectivity_prop(a.n.unwrap_or(10), a.k, samples, a.seed)?;
            (to_value(&rep), rep.passed, rep.failure.clone())
        }
        Target::Furedi => {
            let h = match &a.file {
                Some(p) => read_hypergraph(p)?,
                None => fano(),
            };
            let rep = check_intersecting_corollary(&h)?;
            let passed = rep.passed;
            (to_value(&rep), passed, (!passed).then(|| h.to_text()))
        }
        Target::Curves => {
            let rep = sweep_curves(a.samples.unwrap_or(10_000))?;
            let spots = [
                ("f3_upper(3/10)", bounds::f3_upper(&bounds::rat(3, 10))?, bounds::rat(2, 3)),
                ("f3_lower(1/5)", bounds::f3_lower(&bounds::rat(1, 5))?, bounds::rat(1, 3)),
                ("f3_lower(5/21)", bounds::f3_lower(&bounds::rat(5, 21))?, bounds::rat(3, 7)),
                ("f2(3/10)", bounds::f2(&bounds::rat(3, 10))?, bounds::rat(1, 3)),
            ];
            let spots_ok = spots.iter().all(|(_, got, want)| got == want);
            let spot_json: Vec<Value> = spots
                .iter()
                .map(|(name, got, want)| json!({ "name": name, "value": got.to_string(), "expected": want.to_string() }))
                .collect();
            let passed = rep.passed && spots_ok;
            let artifact = (!passed).then(|| serde_json::to_string_pretty(&rep).unwrap_or_default());
            (json!({ "sweep": rep, "spot_values": spot_json }), passed, artifact)
        }
    };
    let target = format!("{:?}", a.target).to_lowercase();
    let mut report = json!({ "target": target, "passed": passed, "detail": report });
    if let Some(text) = artifact.filter(|_| !passed) {
        let path = a.out.join(format!("{target}-counterexample.txt"));
        write_file(&path, &text)?;
        report["counterexample_file"] = json!(path.display().to_string());
    }
    Ok(Outcome { report, passed })
}

#[derive(Serialize)]
struct SearchReport {
    n: usize,
    mode: String,
    filter: String,
    value: Option<usize>,
    witness_file: Option<String>,
    witness: Option<String>,
    shards: u64,
    shard: Option<u64>,
    seed: u64,
    examined: u64,
    elapsed: f64,
}

fn run_task(task: &SearchTask, shards: u64) -> std::result::Result<SearchOutcome, Failure> {
    Ok(if task.shard == Shard::WHOLE && shards > 1 {
        task.run_sharded(shards)?
    } else {
        task.run()?
    })
}

fn search_cmd(a: SearchArgs) -> CliResult {
    let start = Instant::now();
    let t = a.t.unwrap_or(a.n);
    let space = TripleSpace::new(a.n)?;
    let shard = match a.shard {
        Some(index) => Shard {
            index,
            count: a.shards,
        },
        None => Shard::WHOLE,
    };
    let base = SearchTask {
        n: a.n,
        mode: match a.samples {
            Some(samples) => Mode::Random { samples },
            None => Mode::Exhaustive,
        },
        predicates: vec![Predicate::TcBelow(t)],
        min_codegree: 0,
        seed: a.seed,
        shard,
    };
    let mut examined = 0;
    let mut found = None;
    match base.mode {
        Mode::Random { .. } => {
            let out = run_task(&base, a.shards)?;
            examined = out.examined;
            found = out.best;
        }
        Mode::Exhaustive => {
            if a.n > search::max_exhaustive_n() {
                return Err(Error::ExceedsCap {
                    what: "exhaustive n",
                    value: a.n as u64,
                    cap: search::max_exhaustive_n() as u64,
                }
                .into());
            }
            for d in (0..=a.n - 2).rev() {
                let task = SearchTask {
                    min_codegree: d,
                    ..base.clone()
                };
                let out = run_task(&task, a.shards)?;
                examined += out.examined;
                if out.best.is_some() {
                    found = out.best;
                    break;
                }
            }
        }
    }
    let witness = found.map(|(_, mask)| space.to_hypergraph(mask).to_text());
    if let (Some(path), Some(text)) = (&a.witness, &witness) {
        write_file(path, text)?;
    }
    let report = SearchReport {
        n: a.n,
        mode: match base.mode {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Random { samples } => format!("random({samples})"),
        },
        filter: format!("tc < {t}"),
        value: found.map(|(d, _)| d),
        witness_file: a.witness.as_ref().map(|p| p.display().to_string()),
        witness,
        shards: a.shards,
        shard: a.shard,
        seed: a.seed,
        examined,
        elapsed: start.elapsed().as_secs_f64(),
    };
    Ok(Outcome::ok(to_value(&report)))
}

fn matchings_cmd(a: MatchingsArgs) -> CliResult {
    let h = read_hypergraph(&a.file)?;
    let (fm, cover) = fractional_matching_with_cover(&h);
    let mut report = json!({
        "k": h.k(),
        "n": h.n(),
        "e": h.total_edges(),
        "nu": matching_number(&h),
        "nu_star": fm.value.to_string(),
        "cover_value": cover.value.to_string(),
        "intersecting": is_intersecting(&h),
    });
    let mut passed = fm.value == cover.value && fm.is_feasible(&h) && cover.is_feasible(&h);
    if is_intersecting(&h) && h.k() >= 2 {
        let c = check_intersecting_corollary(&h)?;
        passed &= c.passed;
        report["corollary"] = to_value(&c);
    }
    report["passed"] = json!(passed);
    Ok(Outcome { report, passed })
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Construct(a) => construct(a),
        Command::Analyze(a) => analyze(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search_cmd(a),
        Command::Matchings(a) => matchings_cmd(a),
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            if !cli.quiet {
                let text = serde_json::to_string_pretty(&out.report).expect("reports serialize");
                let _ = writeln!(std::io::stdout(), "{text}");
            }
            if out.passed {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/3").unwrap(), bounds::rat(1, 3));
        assert_eq!(parse_rational("2").unwrap(), bounds::rat(2, 1));
        assert_eq!(parse_rational(" 4/12 ").unwrap(), bounds::rat(1, 3));
        assert!(parse_rational("0.25").is_err());
        assert!(parse_rational("1e-2").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["tightcomp", "--bogus"]), EXIT_USAGE);
        assert_eq!(main_with_args(["tightcomp", "--help"]), EXIT_OK);
        assert_eq!(
            main_with_args(["tightcomp", "--quiet", "search", "--n", "9"]),
            EXIT_USAGE
        );
        assert_eq!(
            main_with_args(["tightcomp", "--quiet", "construct", "--family", "projective", "--n", "10", "--r", "6"]),
            EXIT_USAGE
        );
        assert_eq!(
            main_with_args(["tightcomp", "--quiet", "verify", "--target", "furedi"]),
            EXIT_OK
        );
    }
}
