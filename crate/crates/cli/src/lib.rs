//! The `arrlog` command line: argument parsing, input loading and report output.
//!
//! Exit codes: 0 success, 1 a failed check or an internal inconsistency, 2 bad
//! usage or input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;

use arrlog::arrangement::{chi0, is_balanced, n_h, nr_form, parse_arrangement};
use arrlog::corpus::{external_lines, fixture, fixtures, generate, random_corpus, Family, Xorshift64Star};
use arrlog::criteria::{
    property_p, splitting_range_of, splitting_type, verify_with, yoshinaga_defect, ziegler_map_with, CheckStatus,
    SplitLine, TheoremReport, VerifyOptions, DEFAULT_EXTERNAL_LINES, DEFAULT_EXTERNAL_SEED,
};
use arrlog::derivation::{classify_with, Classification, Limits, Verdict};
use arrlog::exactalg::parse_rational;
use arrlog::multiarr::{basis, exponents, saito_check, ziegler_restriction};
use arrlog::{Arrangement, Error, LinearForm3};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "arrlog", version, about = "Exact invariants of line arrangements in the projective plane")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice data, classification and per-line invariants.
    Analyze(Input),
    /// Free, nearly free, plus-one generated or other.
    Classify(Input),
    /// Ziegler restriction exponents.
    Ziegler(ZieglerArgs),
    /// Yoshinaga defects of every line.
    Defects(LineArgs),
    /// Property [P] along lines of the arrangement.
    #[command(name = "property-p")]
    PropertyP(LineArgs),
    /// Splitting types along lines of the arrangement and outside lines.
    Splitting(SplittingArgs),
    /// Runs every applicable theorem check.
    Verify(VerifyArgs),
    /// Prints a generated arrangement document.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// A JSON document, `-` for standard input, or `fixture:NAME`.
    input: String,
}

#[derive(Args, Debug)]
struct ZieglerArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    line: Option<usize>,
    #[arg(long)]
    all: bool,
    /// Include a basis and its Saito certificate.
    #[arg(long)]
    basis: bool,
}

#[derive(Args, Debug)]
struct LineArgs {
    #[command(flatten)]
    input: Input,
    /// Restrict to one line; every line by default.
    #[arg(long)]
    line: Option<usize>,
}

#[derive(Args, Debug)]
struct SplittingArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    line: Option<usize>,
    /// An outside line as `a,b,c`; repeatable.
    #[arg(long = "form", value_name = "A,B,C")]
    forms: Vec<String>,
    /// Number of random admissible outside lines.
    #[arg(long, default_value_t = 0)]
    external: usize,
    #[arg(long, default_value_t = DEFAULT_EXTERNAL_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A JSON document, `-` or `fixture:NAME`.
    #[arg(conflicts_with = "corpus")]
    input: Option<String>,
    /// Include the stored fixtures.
    #[arg(long)]
    corpus: bool,
    /// Number of seeded random arrangements.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 8)]
    max_lines: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random outside lines per arrangement.
    #[arg(long, default_value_t = DEFAULT_EXTERNAL_LINES)]
    external_lines: usize,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FreenessCertificateFailure(_) | Error::CertificationFailure(_) | Error::ConsistencyFailure(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// What a command produced: the JSON value, its text rendering, and whether a check failed.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, failed: false }
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "arrlog: {e}");
            return 2;
        }
    };
    let result = match &cli.command {
        Command::Analyze(i) => analyze(i, &limits),
        Command::Classify(i) => classify_cmd(i, &limits),
        Command::Ziegler(z) => ziegler(z, &limits),
        Command::Defects(d) => defects(d),
        Command::PropertyP(p) => property_p_cmd(p),
        Command::Splitting(s) => splitting(s),
        Command::Verify(v) => verify_cmd(v, &limits, err),
        Command::Gen(g) => gen(g),
    };
    match result {
        Ok(o) => {
            let written = match cli.output {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("JSON values serialize"))
                }
                Format::Text => write!(out, "{}", o.text),
            };
            if written.is_err() {
                return 2;
            }
            i32::from(o.failed)
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "arrlog: {m}");
            2
        }
        Err(Failure::Check(m)) => {
            let _ = writeln!(err, "arrlog: {m}");
            1
        }
    }
}

fn load(input: &str) -> Result<Arrangement, Failure> {
    if let Some(name) = input.strip_prefix("fixture:") {
        let names: Vec<&str> = fixtures().iter().map(|f| f.name).collect();
        return fixture(name)
            .map(|f| f.arrangement)
            .ok_or_else(|| Failure::Usage(format!("unknown fixture {name:?}; known: {}", names.join(", "))));
    }
    let mut text = String::new();
    if input == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("reading {input}: {e}")))?;
    }
    let a = parse_arrangement(&text)?;
    Ok(match (a.name(), Path::new(input).file_stem()) {
        (None, Some(stem)) if input != "-" => {
            let stem = stem.to_string_lossy().into_owned();
            a.with_name(stem)
        }
        _ => a,
    })
}

fn label(a: &Arrangement) -> String {
    a.name().map_or_else(|| a.factored_string(), str::to_owned)
}

fn verdict_text(c: &Classification) -> String {
    match &c.verdict {
        Verdict::Free { a, b } => format!("free ({a}, {b})"),
        Verdict::NearlyFree { a, b } => format!("nearly free ({a}, {b})"),
        Verdict::PlusOneGenerated { a, b, d } => format!("plus-one generated ({a}, {b}) level {d}"),
        Verdict::Other { generators, relations, cap_hit } => {
            let cap = if *cap_hit { ", degree cap hit" } else { "" };
            format!("other, generators {generators:?} relations {relations:?}{cap}")
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn lines_of(a: &Arrangement, line: Option<usize>) -> Result<Vec<usize>, Failure> {
    match line {
        Some(i) => {
            a.line(i)?;
            Ok(vec![i])
        }
        None => Ok((0..a.len()).collect()),
    }
}

fn analyze(i: &Input, limits: &Limits) -> Outcome {
    let a = load(&i.input)?;
    let c = classify_with(&a, limits)?;
    let chi = chi0(&a);
    let bal = is_balanced(&a);
    let nr = nr_form(&a);
    let per_line = (0..a.len())
        .into_par_iter()
        .map(|h| -> Result<Value, Error> {
            let d = ziegler_map_with(&a, h, limits)?;
            Ok(json!({
                "H": h,
                "line": a.lines()[h].to_string(),
                "n_H": n_h(&a, h)?,
                "exponents": d.exponents,
                "defect": chi.b2_0 - d.exponents.product() as i64,
                "coker_by_degree": d.coker_by_degree(),
            }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let range = splitting_range_of(&c, a.len()).ok();
    let mut text = format!("{}: {}\n", label(&a), a.factored_string());
    text += &format!("  {} lines, {} points, b2_0 = {}\n", a.len(), a.points().len(), chi.b2_0);
    text += &format!("  chi0 = t^2 - {}t + {}; balanced {}\n", -chi.chi0[1], chi.chi0[2], bal.balanced);
    text += &format!("  {}; mdr {}\n", verdict_text(&c), c.mdr);
    for l in &per_line {
        text += &format!(
            "  H{} {}: n_H {} exponents {} defect {}\n",
            l["H"],
            l["line"].as_str().unwrap_or_default(),
            l["n_H"],
            l["exponents"],
            l["defect"]
        );
    }
    let json = json!({
        "arrangement": to_value(&a),
        "chi0": to_value(&chi),
        "balanced": to_value(&bal),
        "nr_form": to_value(&nr),
        "classification": to_value(&c),
        "lines": per_line,
        "splitting_range": range.map(|r| to_value(&r)),
    });
    Ok(Output::ok(json, text))
}

fn classify_cmd(i: &Input, limits: &Limits) -> Outcome {
    let a = load(&i.input)?;
    let c = classify_with(&a, limits)?;
    let text = format!("{}: {}\n", label(&a), verdict_text(&c));
    Ok(Output::ok(to_value(&c), text))
}

fn ziegler(z: &ZieglerArgs, limits: &Limits) -> Outcome {
    let a = load(&z.input.input)?;
    let lines = if z.all { (0..a.len()).collect() } else { lines_of(&a, z.line)? };
    let mut entries = Vec::new();
    let mut text = String::new();
    for h in lines {
        let r = ziegler_restriction(&a, h)?;
        let e = exponents(&r.multi)?;
        let names = r.param.coordinate_names();
        let mut entry = json!({
            "H": h,
            "line": a.lines()[h].to_string(),
            "coordinates": names,
            "restriction": to_value(&r.multi),
            "exponents": e,
        });
        text += &format!("H{h} {}: exponents {e}, multiplicities {:?}\n", a.lines()[h], r.multi.mult());
        if z.basis {
            let (t1, t2) = basis(&r.multi)?;
            let ok = saito_check(&t1, &t2, &r.multi);
            entry["basis"] = json!({
                "theta1": to_value(&t1),
                "theta2": to_value(&t2),
                "theta1_display": t1.display_with(names),
                "theta2_display": t2.display_with(names),
                "saito": ok,
            });
            text += &format!(
                "  theta1 = {}\n  theta2 = {}\n  saito {ok}\n",
                t1.display_with(names),
                t2.display_with(names)
            );
        }
        let map = ziegler_map_with(&a, h, limits)?;
        entry["coker_by_degree"] = json!(map.coker_by_degree());
        entries.push(entry);
    }
    Ok(Output::ok(Value::Array(entries), text))
}

fn defects(d: &LineArgs) -> Outcome {
    let a = load(&d.input.input)?;
    let reports =
        lines_of(&a, d.line)?.into_par_iter().map(|h| yoshinaga_defect(&a, h)).collect::<Result<Vec<_>, _>>()?;
    let text = reports
        .iter()
        .map(|r| format!("H{}: exponents {} defect {} coker {}\n", r.line, r.exponents, r.defect, r.coker_total))
        .collect();
    Ok(Output::ok(to_value(&reports), text))
}

fn property_p_cmd(p: &LineArgs) -> Outcome {
    let a = load(&p.input.input)?;
    let results = lines_of(&a, p.line)?.into_par_iter().map(|h| property_p(&a, h)).collect::<Result<Vec<_>, _>>()?;
    let text = results
        .iter()
        .map(|r| match &r.witness {
            Some(w) => format!("H{}: {:?}, alpha = {}\n", r.line, r.holds, w.form_string()),
            None => format!("H{}: none\n", r.line),
        })
        .collect();
    Ok(Output::ok(to_value(&results), text))
}

fn parse_form(text: &str) -> Result<LinearForm3, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(format!("--form needs three comma separated coefficients, got {text:?}")));
    }
    let c = [parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?];
    LinearForm3::new(c).ok_or_else(|| Failure::Usage(format!("--form {text:?} is the zero form")))
}

fn splitting(s: &SplittingArgs) -> Outcome {
    let a = load(&s.input.input)?;
    let mut requested: Vec<SplitLine> = Vec::new();
    if s.line.is_some() || (s.forms.is_empty() && s.external == 0) {
        requested.extend(lines_of(&a, s.line)?.into_iter().map(SplitLine::Member));
    }
    for f in &s.forms {
        requested.push(SplitLine::External(parse_form(f)?));
    }
    let mut rng = Xorshift64Star::new(s.seed);
    requested.extend(external_lines(&a, s.external, &mut rng).into_iter().map(SplitLine::External));
    let types = requested.par_iter().map(|l| splitting_type(&a, l)).collect::<Result<Vec<_>, _>>()?;
    let text = types.iter().map(|t| format!("{}: {}\n", t.line, t.exponents)).collect();
    Ok(Output::ok(to_value(&types), text))
}

fn report_text(r: &TheoremReport) -> String {
    let count = |s: CheckStatus| r.checks.iter().filter(|c| c.status == s).count();
    let mut text = format!(
        "{}: {}; {} pass, {} na, {} one-sided, {} fail\n",
        label(&r.arrangement),
        verdict_text(&r.classification),
        count(CheckStatus::Pass),
        count(CheckStatus::Na),
        count(CheckStatus::OneSided),
        count(CheckStatus::Fail),
    );
    for c in r.failures() {
        text += &format!("  FAIL {}: {}\n", c.id, c.detail);
    }
    text
}

fn verify_cmd(v: &VerifyArgs, limits: &Limits, err: &mut dyn Write) -> Outcome {
    let mut batch: Vec<Arrangement> = Vec::new();
    if let Some(input) = &v.input {
        batch.push(load(input)?);
    }
    if v.corpus {
        batch.extend(fixtures().into_iter().map(|f| f.arrangement));
    }
    if v.random > 0 {
        batch.extend(random_corpus(v.random, v.max_lines, v.seed)?);
    }
    if batch.is_empty() {
        return Err(Failure::Usage("verify needs an input, --corpus or --random N".into()));
    }
    let opts = VerifyOptions { limits: *limits, external_lines: v.external_lines, seed: DEFAULT_EXTERNAL_SEED };
    let reports = batch.par_iter().map(|a| verify_with(a, &opts)).collect::<Result<Vec<_>, _>>()?;
    let failed: Vec<&TheoremReport> = reports.iter().filter(|r| !r.passed()).collect();
    let mut text: String = reports.iter().map(report_text).collect();
    text += &format!("{} arrangements, {} with failed checks\n", reports.len(), failed.len());
    for r in &failed {
        let _ = writeln!(err, "counterexample: {}", serde_json::to_string(r).expect("reports serialize"));
    }
    let json = if v.input.is_some() && reports.len() == 1 { to_value(&reports[0]) } else { to_value(&reports) };
    Ok(Output { json, text, failed: !failed.is_empty() })
}

fn gen(g: &GenArgs) -> Outcome {
    let a = generate(g.family, g.n, g.seed)?;
    let doc = a.to_document();
    let text = format!("{}\n", a.factored_string());
    Ok(Output::ok(to_value(&doc), text))
}
