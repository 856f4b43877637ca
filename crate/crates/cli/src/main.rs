//! `framing-census`: classification queries, refinement censuses, Smith forms,
//! witness replays, tables and the golden verification suite.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use framing_census::classifier::{
    classify_framings, classify_theta, h1_table, h1_table_citation, rel_point_classification,
    stable_framing_preset, table_pi_2n_so_2n, table_s_pi_n_so_n, FramingReport, Genus, H1Family,
    ThetaInputDoc, ThetaReport,
};
use framing_census::exactlin::json::{matrix_to_rows, rows_to_matrix, JsonRows};
use framing_census::forms::IsometryDoc;
use framing_census::orbit::{quad_orbit_census, DEFAULT_ORBIT_BOUND};
use framing_census::quad::{census, Census, MAX_GENUS};
use framing_census::suite::{golden_checks, run_suite, SuiteConfig};
use framing_census::witnesses::{run_all, run_witness, WitnessReport, WITNESS_NAMES};
use framing_census::{smith_normal_form, Error, FinAbGroup};

/// `println!` that exits quietly once stdout is closed, e.g. by `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_BAD_INPUT: u8 = 3;

/// Default genus bound for the refinement census.
const DEFAULT_CENSUS_BOUND: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "framing-census",
    version,
    about = "Count framings of W_{g,1} up to homotopy and diffeomorphism"
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// JSON file with suite bounds and seeds.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbits of framings of W_{g,1} and their stabilisers.
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        g: usize,
        /// Arf invariant of the framing, to name the rel-point stabiliser for n = 1, 3, 7.
        #[arg(long)]
        arf: Option<u8>,
    },
    /// Orbits of θ-structures.
    Theta(ThetaArgs),
    /// Count quadratic refinements by Arf invariant.
    QuadCensus {
        #[arg(long)]
        g: usize,
        #[command(flatten)]
        bound: Bound,
    },
    /// Orbits of Sp_2g(F_2) on quadratic refinements.
    Orbits {
        #[arg(long)]
        g: usize,
        #[command(flatten)]
        bound: Bound,
    },
    /// Smith normal form of an integer matrix.
    Snf {
        /// JSON file holding {"matrix": [[...]]} or a bare array of rows.
        #[arg(long, value_name = "FILE", conflicts_with = "matrix")]
        input: Option<PathBuf>,
        /// Matrix as a JSON array of rows.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Replay the explicit low-genus computations.
    Witness {
        /// One of the witness names; all witnesses when omitted.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print the tabulated groups.
    Tables {
        /// Largest n to list.
        #[arg(long, default_value_t = 16)]
        max_n: u64,
    },
    /// Run the golden verification suite.
    VerifyPaper {
        /// List checks and their provenance without running them.
        #[arg(long)]
        list: bool,
    },
    /// Check an isometry given as JSON.
    Forms {
        #[arg(long, value_name = "FILE")]
        check: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ThetaArgs {
    /// JSON θ-structure description.
    #[arg(long, value_name = "FILE", required_unless_present = "stable_preset")]
    input: Option<PathBuf>,
    /// Use stable framings as the θ-structure.
    #[arg(long, conflicts_with = "input", requires_all = ["n", "g"])]
    stable_preset: bool,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    g: Option<usize>,
}

#[derive(Args, Debug)]
struct Bound {
    /// Raise the genus bound; runtime grows like 4^g.
    #[arg(long)]
    max_g: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default)]
struct ConfigFile {
    seed: Option<u64>,
    census_max_g: Option<usize>,
    orbit_max_g: Option<usize>,
    suite: Option<SuiteConfig>,
}

/// Why a command did not succeed.
enum Failure {
    /// The command ran but a check failed; output has been written.
    Check,
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    json: bool,
    seed: u64,
    config: ConfigFile,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match &cli.config {
        Some(path) => match read_json::<ConfigFile>(path) {
            Ok(c) => c,
            Err(Failure::Input(msg)) => {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_BAD_INPUT);
            }
            Err(_) => return ExitCode::from(EXIT_BAD_INPUT),
        },
        None => ConfigFile::default(),
    };
    let seed = cli.seed.or(config.seed).unwrap_or(0);
    let ctx = Ctx {
        json: cli.json,
        seed,
        config,
    };
    match run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) | Error::GenusBound { .. } | Error::ArfOneGenusZero => {
            EXIT_UNSUPPORTED
        }
        Error::Inconsistency(_) => EXIT_CHECK_FAILED,
        _ => EXIT_BAD_INPUT,
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Classify { n, g, arf } => classify(ctx, n, g, arf),
        Command::Theta(args) => theta(ctx, args),
        Command::QuadCensus { g, bound } => quad_census(ctx, g, bound),
        Command::Orbits { g, bound } => orbits(ctx, g, bound),
        Command::Snf { input, matrix } => snf(ctx, input, matrix),
        Command::Witness { name, samples } => witness(ctx, name, samples),
        Command::Tables { max_n } => tables(ctx, max_n),
        Command::VerifyPaper { list } => verify_paper(ctx, list),
        Command::Forms { check } => forms(ctx, &check),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("malformed JSON in {}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    out!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

/// The effective genus bound, warning when it exceeds the default.
fn genus_bound(flag: Option<usize>, configured: Option<usize>, default: usize) -> usize {
    let bound = flag.or(configured).unwrap_or(default);
    if bound > default {
        eprintln!("warning: genus bound raised to {bound}; runtime grows like 4^g");
    }
    bound
}

fn classify(ctx: &Ctx, n: u64, g: usize, arf: Option<u8>) -> Outcome {
    let mut report = classify_framings(n, g)?;
    if let Some(a) = arf {
        if g == 0 {
            return Err(Failure::Input("--arf needs g ≥ 1".into()));
        }
        report.stabilizer_rel_point = rel_point_classification(n, g, Some(a))?
            .stabiliser
            .to_string();
    }
    if ctx.json {
        print_json(&report);
    } else {
        print_framing_report(&report);
    }
    Ok(())
}

fn print_framing_report(r: &FramingReport) {
    out!("n = {}, g = {}", r.n, r.g);
    out!("rel-point orbits: {}", r.rel_point_orbits);
    out!("rel-boundary orbits: {}", r.rel_boundary_orbits);
    out!("stabilizer (rel point): {}", r.stabilizer_rel_point);
    out!("stabilizer (rel boundary): {}", r.stabilizer_rel_boundary);
    out!(
        "torelli quotient: {}",
        r.torelli_quotient
            .as_deref()
            .unwrap_or("not described for n ≤ 2")
    );
    print_notes(r.notes.iter().map(|n| (&n.fact, &n.citation)));
}

fn print_notes<'a>(notes: impl Iterator<Item = (&'a String, &'a String)>) {
    let mut first = true;
    for (fact, citation) in notes {
        if first {
            out!("notes:");
            first = false;
        }
        out!("  - {fact} [{citation}]");
    }
}

fn theta(ctx: &Ctx, args: ThetaArgs) -> Outcome {
    let input = if args.stable_preset {
        let (n, g) = (args.n.unwrap_or(0), args.g.unwrap_or(0));
        stable_framing_preset(n, g)?
    } else {
        let path = args
            .input
            .expect("clap requires --input without --stable-preset");
        let doc: ThetaInputDoc = read_json(&path)?;
        doc.to_input().map_err(|e| match e {
            Error::Unsupported(_) => Failure::Lib(e),
            other => Failure::Input(format!("{}: {other}", path.display())),
        })?
    };
    let report = classify_theta(&input)?;
    if ctx.json {
        print_json(&report);
    } else {
        print_theta_report(&report);
    }
    Ok(())
}

fn print_theta_report(r: &ThetaReport) {
    out!("n = {}, g = {}", r.n, r.g);
    if let Some(c) = r.case {
        out!("case: {c}");
    }
    out!("Cπ_2n(Θ⁺): {}", r.c_pi_2n_theta);
    out!("orbit set: {}", r.orbit_set);
    match r.orbit_count_u64() {
        Some(c) => out!("orbits: {c}"),
        None => out!("orbits: infinite"),
    }
    out!("stabilizer (rel point): {}", r.stabilizer_rel_point);
    print_notes(r.notes.iter().map(|n| (&n.fact, &n.citation)));
}

fn quad_census(ctx: &Ctx, g: usize, bound: Bound) -> Outcome {
    let limit = genus_bound(bound.max_g, ctx.config.census_max_g, DEFAULT_CENSUS_BOUND);
    if limit >= MAX_GENUS {
        return Err(Failure::Input(format!("--max-g must be below {MAX_GENUS}")));
    }
    let c = census(g, limit)?;
    let (a0, a1) = Census::closed_form(g);
    let ok = c.matches_closed_form();
    if ctx.json {
        print_json(&json!({
            "g": g,
            "arf0": c.arf0,
            "arf1": c.arf1,
            "expected_arf0": a0,
            "expected_arf1": a1,
            "matches_closed_form": ok,
        }));
    } else {
        let verdict = if ok { "matches" } else { "does not match" };
        out!(
            "arf0={} arf1={} ({verdict} 2^{{2g-1}}±2^{{g-1}})",
            c.arf0,
            c.arf1
        );
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn orbits(ctx: &Ctx, g: usize, bound: Bound) -> Outcome {
    let limit = genus_bound(bound.max_g, ctx.config.orbit_max_g, DEFAULT_ORBIT_BOUND);
    let c = quad_orbit_census(g, limit)?;
    let (a0, a1) = Census::closed_form(g);
    let ok = c.orbit_count() == 2
        && c.arf_per_orbit == vec![Some(0), Some(1)]
        && c.sizes() == [a0 as usize, a1 as usize];
    if ctx.json {
        let orbits: Vec<Value> = (0..c.orbit_count())
            .map(|i| {
                json!({
                    "representative": c.representatives[i].to_string(),
                    "size": c.sizes()[i],
                    "arf": c.arf_per_orbit[i],
                })
            })
            .collect();
        print_json(&json!({
            "g": g,
            "orbit_count": c.orbit_count(),
            "orbits": orbits,
            "arf_separates_orbits": ok,
        }));
    } else {
        out!("g = {g}: {} orbits", c.orbit_count());
        for i in 0..c.orbit_count() {
            let arf = c.arf_per_orbit[i].map_or("mixed".to_string(), |a| a.to_string());
            out!(
                "  orbit {i}: representative {} size {} arf {arf}",
                c.representatives[i],
                c.sizes()[i]
            );
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixDoc {
    Wrapped {
        matrix: JsonRows,
        cols: Option<usize>,
    },
    Bare(JsonRows),
}

fn snf(ctx: &Ctx, input: Option<PathBuf>, matrix: Option<String>) -> Outcome {
    let doc: MatrixDoc = match (input, matrix) {
        (Some(path), _) => read_json(&path)?,
        (None, Some(text)) => serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("malformed matrix: {e}")))?,
        (None, None) => return Err(Failure::Input("give --input FILE or --matrix JSON".into())),
    };
    let (rows, cols) = match doc {
        MatrixDoc::Wrapped { matrix, cols } => (matrix, cols),
        MatrixDoc::Bare(rows) => (rows, None),
    };
    let a = rows_to_matrix(&rows, cols).map_err(|e| Failure::Input(e.to_string()))?;
    let d = smith_normal_form(&a);
    let group = framing_census::AbGroupPresentation::new(a.cols(), a.clone())?.abelianization();
    let diagonal: Vec<String> = d.diagonal().iter().map(ToString::to_string).collect();
    let ok = d.verify();
    if ctx.json {
        print_json(&json!({
            "diagonal": diagonal,
            "cokernel": group.to_string(),
            "u": matrix_to_rows(&d.u),
            "s": matrix_to_rows(&d.s),
            "v": matrix_to_rows(&d.v),
            "verified": ok,
        }));
    } else {
        out!("diagonal: ({})", diagonal.join(", "));
        out!("cokernel: {group}");
        out!("U = {}", d.u);
        out!("S = {}", d.s);
        out!("V = {}", d.v);
        out!("U·A·V = S: {}", if ok { "verified" } else { "FAILED" });
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn witness(ctx: &Ctx, name: Option<String>, samples: Option<usize>) -> Outcome {
    let samples = samples
        .or(ctx.config.suite.as_ref().map(|s| s.samples))
        .unwrap_or(framing_census::witnesses::DEFAULT_SAMPLES);
    let reports: Vec<WitnessReport> = match name {
        Some(n) => {
            if !WITNESS_NAMES.contains(&n.as_str()) {
                return Err(Failure::Input(format!(
                    "unknown witness {n:?}; expected one of {}",
                    WITNESS_NAMES.join(", ")
                )));
            }
            vec![run_witness(&n, samples, ctx.seed)?]
        }
        None => run_all(samples, ctx.seed)?,
    };
    let passed = reports.iter().all(|r| r.passed);
    if ctx.json {
        print_json(&json!({ "passed": passed, "witnesses": reports }));
    } else {
        for r in &reports {
            out!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
            for c in &r.checks {
                out!(
                    "  {} [{}] {}: {}",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.provenance,
                    c.label,
                    c.computed
                );
                if !c.passed {
                    out!("       expected {}", c.expected);
                }
            }
            if let Some(x) = &r.counterexample {
                out!("  counterexample: {x}");
            }
            for note in &r.notes {
                out!("  note: {note}");
            }
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn tables(ctx: &Ctx, max_n: u64) -> Outcome {
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    for n in 1..=max_n {
        t1.push((n, table_s_pi_n_so_n(n)?));
        t2.push((n, table_pi_2n_so_2n(n)?));
    }
    let genera = [
        Genus::Finite(1),
        Genus::Finite(2),
        Genus::Finite(3),
        Genus::Stable,
    ];
    let mut t3 = Vec::new();
    for family in H1Family::ALL {
        for g in genera {
            t3.push((
                family,
                g,
                h1_table(family, g)?,
                h1_table_citation(family, g),
            ));
        }
    }
    if ctx.json {
        let group = |g: &FinAbGroup| g.to_string();
        print_json(&json!({
            "s_pi_n_so_n": t1.iter().map(|(n, g)| json!({"n": n, "group": group(g)})).collect::<Vec<_>>(),
            "pi_2n_so_2n": t2.iter().map(|(n, d)| json!({
                "n": n,
                "group": group(&d.group),
                "basis": d.basis,
            })).collect::<Vec<_>>(),
            "h1": t3.iter().map(|(f, g, h, c)| json!({
                "family": f.to_string(),
                "g": g.to_string(),
                "group": group(h),
                "citation": c,
            })).collect::<Vec<_>>(),
        }));
    } else {
        out!("Sπ_n(SO(n)):");
        for (n, g) in &t1 {
            out!("  n = {n:>2}: {g}");
        }
        out!("π_2n(SO(2n)):");
        for (n, d) in &t2 {
            out!("  n = {n:>2}: {d}");
        }
        out!("H_1:");
        for (f, g, h, c) in &t3 {
            out!("  {f:<4} g = {g}: {h}  [{c}]");
        }
    }
    Ok(())
}

fn verify_paper(ctx: &Ctx, list: bool) -> Outcome {
    let checks = golden_checks();
    if list {
        if ctx.json {
            let items: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "provenance": c.provenance, "description": c.description}))
                .collect();
            print_json(&json!({ "checks": items }));
        } else {
            for c in &checks {
                out!("{:<34} [{}] {}", c.name, c.provenance, c.description);
            }
        }
        return Ok(());
    }
    let mut config = ctx.config.suite.clone().unwrap_or_default();
    config.seed = ctx.seed;
    let outcomes = run_suite(&config);
    let passed = outcomes.iter().all(|o| o.passed);
    if ctx.json {
        print_json(&json!({ "passed": passed, "checks": outcomes }));
    } else {
        for o in &outcomes {
            out!(
                "{} {:<34} [{}] {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.provenance,
                o.detail
            );
        }
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        out!("{} checks, {failed} failed", outcomes.len());
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn forms(ctx: &Ctx, path: &Path) -> Outcome {
    let doc: IsometryDoc = read_json(path)?;
    let result = doc
        .check()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if ctx.json {
        print_json(&result);
    } else {
        out!("genus {}, epsilon {}", result.genus, result.epsilon);
        out!("isometry: {}", result.is_isometry);
        if let Some(d) = &result.determinant {
            out!("determinant: {d}");
        }
        if let Some(ds) = &result.det_spin {
            out!("det ⊕ spin: {ds}");
        }
        if let Some(r) = &result.reflections {
            for v in r {
                out!("  reflection in ({})", v.join(", "));
            }
        }
    }
    if result.is_isometry {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
