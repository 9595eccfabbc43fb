use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use facering::cm::skips_from_m_sequence;
use facering::generators::FamilySpec;
use facering::io::{parse_auto, to_json, to_text, ComplexDocument};
use facering::resolution::BettiTableDocument;
use facering::verify::{complex_hash, fuzz_search, verify_conjecture, MultiplicityReport};
use facering::{Error, FVector, FieldSpec, HVector, SimplicialComplex};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "facering", version, about = "Face rings of simplicial complexes: Betti tables, CM tests and multiplicity bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report f- and h-vectors, Betti tables, shifts, flags and bounds.
    Analyze(InputArgs),
    /// Run every applicable check; exit status 1 if one fails.
    Verify(InputArgs),
    /// Sample a family and write a JSON-lines ledger.
    Search(SearchArgs),
    /// Write a complex from a named or random family.
    Generate(GenerateArgs),
    /// Print the skip table of a minimal-shift sequence.
    Skips(SkipsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Doc,
}

#[derive(Args)]
struct InputArgs {
    /// Facet file (text or JSON), `-` for stdin.
    input: Option<PathBuf>,
    /// Use a generated complex instead of a file, e.g. "cycle 5".
    #[arg(long)]
    family: Option<String>,
    /// Field characteristic, 0 or a prime; repeatable. Defaults to 0 and 2.
    #[arg(long = "field")]
    fields: Vec<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Family name and parameters, e.g. `random_pure n=8 d=2`.
    #[arg(required = true, num_args = 1..)]
    family: Vec<String>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "field")]
    fields: Vec<u64>,
    /// Ledger path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(required = true, num_args = 1..)]
    family: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SkipsArgs {
    /// Strictly increasing minimal shifts m_1 .. m_{n-d}, as separate or quoted values.
    #[arg(required = true, num_args = 1..)]
    m: Vec<String>,
    #[arg(long)]
    n: usize,
    /// Defaults to n minus the length of the sequence.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Usage(String),
    Verdict,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_fields(raw: &[u64]) -> Result<Vec<FieldSpec>, Failure> {
    if raw.is_empty() {
        return Ok(vec![FieldSpec::RATIONALS, FieldSpec::F2]);
    }
    let mut fields = Vec::new();
    for &p in raw {
        let f = FieldSpec::new(p)?;
        if !fields.contains(&f) {
            fields.push(f);
        }
    }
    Ok(fields)
}

fn load(args: &InputArgs) -> Result<SimplicialComplex, Failure> {
    match (&args.input, &args.family) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either an input file or --family, not both".into())),
        (None, None) => Err(Failure::Usage("missing input file or --family".into())),
        (None, Some(spec)) => Ok(FamilySpec::parse(spec)?.sample(args.seed, 0)?),
        (Some(path), None) => {
            let text = if path == Path::new("-") {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(Error::from)?;
                s
            } else {
                std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
            };
            parse_auto(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AnalysisDocument {
    #[serde(flatten)]
    complex: ComplexDocument,
    complex_hash: String,
    n: usize,
    d: usize,
    f_vector: FVector,
    h_vector: HVector,
    e: u64,
    degenerate: bool,
    reports: Vec<MultiplicityReport>,
}

fn analysis(complex: &SimplicialComplex, fields: &[FieldSpec]) -> Result<AnalysisDocument, Failure> {
    let degenerate = complex.is_simplex() || complex.is_irrelevant();
    let reports = if degenerate {
        Vec::new()
    } else {
        fields.iter().map(|&f| verify_conjecture(complex, f)).collect::<Result<_, _>>()?
    };
    Ok(AnalysisDocument {
        complex: ComplexDocument::of(complex),
        complex_hash: complex_hash(complex),
        n: complex.n(),
        d: complex.d(),
        f_vector: complex.f_vector(),
        h_vector: complex.h_vector(),
        e: complex.multiplicity(),
        degenerate,
        reports,
    })
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn betti_grid(doc: &BettiTableDocument) -> String {
    let mut out = String::new();
    let first = doc.rows.iter().flat_map(|r| r.entries.iter().map(|e| e.0)).min().unwrap_or(0);
    let width = doc.rows.iter().flat_map(|r| r.entries.iter().map(|e| e.1.to_string().len())).max().unwrap_or(1).max(4);
    let _ = write!(out, "{:>5}", "");
    for j in first..=doc.n {
        let _ = write!(out, " {:>width$}", format!("j={j}"));
    }
    out.push('\n');
    for row in &doc.rows {
        let _ = write!(out, "{:>5}", format!("i={}", row.i));
        for j in first..=doc.n {
            let cell = row.entries.iter().find(|e| e.0 == j).map_or(".".to_string(), |e| e.1.to_string());
            let _ = write!(out, " {cell:>width$}");
        }
        out.push('\n');
    }
    out
}

fn render_report(out: &mut String, r: &MultiplicityReport, verdict_lines: bool) {
    let _ = writeln!(out, "\n== field {} ==", r.field);
    let _ = writeln!(out, "Betti table of the face ideal (rows i, columns j):");
    out.push_str(&betti_grid(&r.betti));
    let _ = writeln!(out, "pd = {}, m = ({}), M = ({})", r.betti.pd, join(&r.shifts.m), join(&r.shifts.big_m));
    let f = &r.flags;
    let _ = writeln!(
        out,
        "pure: {}, quasi-pure: {}, CM: {}, almost CM: {}, matroid: {}, cone: {}, Gorenstein: {}, Gorenstein*: {}",
        r.pure_resolution, r.quasi_pure, f.is_cm, r.almost_cm, f.is_matroid, f.is_cone, f.is_gorenstein, f.is_gorenstein_star
    );
    match &r.connectivity {
        Some(c) => {
            let _ = writeln!(out, "q(Δ) = {}, connectivity sequence q = ({})", c.top(), join(&c.q));
        }
        None => {
            let _ = writeln!(out, "connectivity sequence: not defined (not CM)");
        }
    }
    let _ = writeln!(out, "bounds: {} <= e = {} <= {}", r.lower, r.e, r.upper);
    let _ = writeln!(out, "equality: lower {}, upper {}; purity: {:?} ({})", r.lower_equality, r.upper_equality, r.purity, r.purity_detail);
    if verdict_lines {
        for v in &r.verdicts {
            let status = match (v.applicable, v.holds) {
                (false, _) => "n/a ",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            let _ = writeln!(out, "  [{status}] {:<34} {}", v.theorem, v.detail);
        }
    }
}

fn render_analysis(doc: &AnalysisDocument, complex: &SimplicialComplex, verdict_lines: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "complex {} on n = {} vertices, dim = {}, d = {}", doc.complex_hash, doc.n, complex.dim(), doc.d);
    let _ = writeln!(out, "f = ({})", join(&doc.f_vector.0));
    let _ = writeln!(out, "h = ({})", join(&doc.h_vector.0));
    let _ = writeln!(out, "e = {}", doc.e);
    if doc.degenerate {
        let _ = writeln!(out, "degenerate: the face ideal is zero (full simplex or {{∅}}); bounds are 1 = e by convention");
        return out;
    }
    for r in &doc.reports {
        render_report(&mut out, r, verdict_lines);
    }
    out
}

fn serialize<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn cmd_analyze(args: &InputArgs, with_verdicts: bool) -> Result<bool, Failure> {
    let complex = load(args)?;
    let fields = parse_fields(&args.fields)?;
    let doc = analysis(&complex, &fields)?;
    let ok = doc.reports.iter().all(MultiplicityReport::all_hold);
    let text = match args.format {
        Format::Doc => serialize(&doc),
        Format::Text => render_analysis(&doc, &complex, with_verdicts),
    };
    emit(&args.out, &text)?;
    Ok(ok)
}

fn cmd_search(args: &SearchArgs) -> Result<bool, Failure> {
    let family = FamilySpec::parse(&args.family.join(" "))?;
    let fields = parse_fields(&args.fields)?;
    let ledger = fuzz_search(&family, args.trials, args.seed, &fields);
    emit(&args.out, &ledger.to_jsonl())?;
    if let Some(path) = &args.out {
        let s = &ledger.summary;
        eprintln!(
            "{}: {} trials, {} passed, {} failed, {} degenerate, {} invalid",
            path.display(),
            s.trials,
            s.passed,
            s.failed,
            s.degenerate,
            s.invalid
        );
    }
    Ok(!ledger.has_failures())
}

fn cmd_generate(args: &GenerateArgs) -> Result<bool, Failure> {
    let family = FamilySpec::parse(&args.family.join(" "))?;
    let complex = family.sample(args.seed, 0)?;
    let text = match args.format {
        Format::Text => format!("# {family}\n{}", to_text(&complex)),
        Format::Doc => format!("{}\n", to_json(&complex)),
    };
    emit(&args.out, &text)?;
    Ok(true)
}

fn cmd_skips(args: &SkipsArgs) -> Result<bool, Failure> {
    let mut m = Vec::new();
    for token in args.m.iter().flat_map(|s| s.split(|c: char| c.is_whitespace() || c == ',')) {
        if token.is_empty() {
            continue;
        }
        m.push(token.parse::<usize>().map_err(|_| Failure::Usage(format!("`{token}` is not a positive integer")))?);
    }
    let d = args.d.unwrap_or_else(|| args.n.saturating_sub(m.len()));
    let table = skips_from_m_sequence(&m, args.n, d)?;
    let text = match args.format {
        Format::Text => format!("n = {}, d = {}\n\n{}", table.n, table.d, table.render()),
        Format::Doc => serialize(&table),
    };
    print!("{text}");
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args, false).map(|_| true),
        Command::Verify(args) => cmd_analyze(args, true),
        Command::Search(args) => cmd_search(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Skips(args) => cmd_skips(args),
    }
    .and_then(|ok| if ok { Ok(()) } else { Err(Failure::Verdict) });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => {
            eprintln!("at least one applicable check failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
