//! Command-line surface over the library: classification, counting
//! tables, reconciliation, enumeration, bispecial censuses, the inclusion
//! audit, and geometric word generation.
//!
//! Exit codes: 0 success, 1 usage or parse errors, 2 domain or runtime
//! errors (reported as `ErrorName: message` on stderr).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tangent_words::counting::{self, ClosedFormVariant, CountingError};
use tangent_words::derivation::{
    derive_accelerated, is_analytic_tangent, is_balanced, is_tangent, DerivationStep, RemovalRule,
};
use tangent_words::geometry::{
    cutting_sequence, multigrid_factor_scan, round_sig, CurveKind, CurveSpec, FactorReport,
    GeometryError, GridPlacement, LatticeSegment,
};
use tangent_words::lang::{LabError, Language, LanguageLab, ParseLanguageError};
use tangent_words::word::{ParseWordError, Word};

#[derive(Parser)]
#[command(name = "tangent", version, about = "Tangent-word toolkit: classify, count, and generate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a word and show its derivation
    Classify {
        /// The word, as a string of 0s and 1s (may be empty)
        word: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tabulate complexity by length, from enumeration and closed forms
    Complexity {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare enumeration against every closed form, flagging mismatches
    Reconcile {
        #[arg(long)]
        max: usize,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List all words of one length in a language
    Enumerate {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Census of weak, ordinary, and strong bispecial words of one length
    Bispecial {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify the language chain and report strictness witnesses
    Audit {
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Code a lattice segment, or slalom around its interior points
    CodeSegment {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        p: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        /// above | below | all | mask BITS
        #[arg(long, num_args = 1..=2, value_names = ["MODE", "BITS"])]
        slalom: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Cutting sequence of a curve through one grid placement
    CodeCurve {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        mesh: f64,
        /// Grid offset as OX,OY
        #[arg(long)]
        offset: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Scan a curve across several meshes and classify all factors
    Scan {
        #[command(flatten)]
        curve: CurveArgs,
        /// Comma-separated mesh sizes
        #[arg(long)]
        meshes: String,
        /// Offsets sampled per mesh
        #[arg(long)]
        offsets: usize,
        #[arg(long)]
        max_factor_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// line | parabola | exp
    #[arg(long)]
    kind: String,
    /// Comma-separated parameters: slope,intercept | a,b,c | base,scale
    #[arg(long)]
    params: String,
    /// x-domain as A,B
    #[arg(long)]
    domain: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    #[value(name = "enum")]
    Enumerated,
    Paper,
    Candidate,
    All,
}

enum CmdError {
    Usage(String),
    Domain(&'static str, String),
}

impl From<ParseWordError> for CmdError {
    fn from(e: ParseWordError) -> Self {
        CmdError::Usage(e.to_string())
    }
}

impl From<ParseLanguageError> for CmdError {
    fn from(e: ParseLanguageError) -> Self {
        CmdError::Usage(e.to_string())
    }
}

impl From<LabError> for CmdError {
    fn from(e: LabError) -> Self {
        let name = match e {
            LabError::CapExceeded { .. } => "CapExceeded",
            LabError::ChainViolation { .. } => "ChainViolation",
        };
        CmdError::Domain(name, e.to_string())
    }
}

impl From<GeometryError> for CmdError {
    fn from(e: GeometryError) -> Self {
        let name = match e {
            GeometryError::NotPrimitive { .. } => "NotPrimitive",
            GeometryError::NoInteriorPoint { .. } => "NoInteriorPoint",
            GeometryError::SlalomTooLarge { .. } => "SlalomTooLarge",
            GeometryError::InvalidMask { .. } => "InvalidMask",
            GeometryError::NonMonotone => "NonMonotone",
            GeometryError::CornerHit { .. } => "CornerHit",
            GeometryError::TooManyCornerHits { .. } => "TooManyCornerHits",
            GeometryError::InvalidMesh { .. } => "InvalidMesh",
        };
        CmdError::Domain(name, e.to_string())
    }
}

impl From<CountingError> for CmdError {
    fn from(e: CountingError) -> Self {
        let name = match e {
            CountingError::Domain => "Domain",
            CountingError::ParityViolation { .. } => "ParityViolation",
            CountingError::InsufficientData { .. } => "InsufficientData",
        };
        CmdError::Domain(name, e.to_string())
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Domain("Io", e.to_string())
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(()) => {}
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CmdError::Domain(name, msg)) => {
            eprintln!("{name}: {msg}");
            std::process::exit(2);
        }
    }
}

fn run(command: Command) -> Result<(), CmdError> {
    match command {
        Command::Classify { word, format } => cmd_classify(&word, format),
        Command::Complexity { lang, max, method, format } => {
            cmd_complexity(&lang, max, method, format)
        }
        Command::Reconcile { max, out, format } => cmd_reconcile(max, out, format),
        Command::Enumerate { lang, len, format } => cmd_enumerate(&lang, len, format),
        Command::Bispecial { lang, len, format } => cmd_bispecial(&lang, len, format),
        Command::Audit { max, format } => cmd_audit(max, format),
        Command::CodeSegment { p, q, slalom, format } => cmd_code_segment(p, q, slalom, format),
        Command::CodeCurve { curve, mesh, offset, format } => {
            cmd_code_curve(&curve, mesh, &offset, format)
        }
        Command::Scan { curve, meshes, offsets, max_factor_len, out, format } => {
            cmd_scan(&curve, &meshes, offsets, max_factor_len, out, format)
        }
    }
}

/// The shared enumeration workbench, with its cap optionally overridden
/// by the TW_ENUM_CAP environment variable.
fn lab() -> Result<LanguageLab, CmdError> {
    match std::env::var("TW_ENUM_CAP") {
        Err(std::env::VarError::NotPresent) => Ok(LanguageLab::new()),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(CmdError::Usage("TW_ENUM_CAP must be a positive integer".into()))
        }
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(cap) if cap >= 1 => Ok(LanguageLab::with_cap(cap)),
            _ => Err(CmdError::Usage(format!("TW_ENUM_CAP must be a positive integer, got {s:?}"))),
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn rule_label(rule: RemovalRule) -> &'static str {
    match rule {
        RemovalRule::RemovedZeros => "removed_zeros",
        RemovalRule::RemovedOnes => "removed_ones",
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    word: Word,
    balanced: bool,
    analytic: bool,
    tangent: bool,
    two_balanced: bool,
    derivation: Vec<DerivationStep>,
    #[serde(rename = "final")]
    final_word: Word,
}

fn cmd_classify(text: &str, format: Format) -> Result<(), CmdError> {
    let word: Word = text.parse()?;
    let trace = derive_accelerated(&word);
    let report = ClassifyReport {
        balanced: is_balanced(&word),
        analytic: is_analytic_tangent(&word),
        tangent: is_tangent(&word),
        two_balanced: word.is_k_balanced(2),
        derivation: trace.steps,
        final_word: trace.final_word,
        word,
    };
    let body = match format {
        Format::Json => format!("{}\n", to_json(&report)),
        Format::Plain => {
            let mut out = String::new();
            out.push_str(&format!("word: {}\n", report.word));
            out.push_str(&format!("balanced: {}\n", report.balanced));
            out.push_str(&format!("analytic: {}\n", report.analytic));
            out.push_str(&format!("tangent: {}\n", report.tangent));
            out.push_str(&format!("two_balanced: {}\n", report.two_balanced));
            out.push_str("derivation:\n");
            for step in &report.derivation {
                out.push_str(&format!(
                    "  {} -({})-> {}\n",
                    step.input,
                    rule_label(step.rule),
                    step.output
                ));
            }
            out.push_str(&format!("final: {}\n", report.final_word));
            out
        }
        Format::Csv => return Err(CmdError::Usage("classify supports json or plain output".into())),
    };
    print_stdout(&body);
    Ok(())
}

#[derive(Serialize)]
struct ComplexityRow {
    n: u64,
    #[serde(rename = "enum", skip_serializing_if = "Option::is_none")]
    enumerated: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    paper: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidate: Option<u64>,
}

#[derive(Serialize)]
struct ComplexityTable {
    language: Language,
    rows: Vec<ComplexityRow>,
}

fn closed_form(lang: Language, n: u64, variant: ClosedFormVariant) -> Result<u64, CmdError> {
    let value = match lang {
        Language::Balanced => counting::lipatov_balanced(n),
        Language::Analytic => counting::analytic_closed_form(n, variant),
        Language::Tangent => counting::tangent_closed_form(n, variant)?,
        Language::KBalanced(_) => unreachable!("rejected before closed forms are evaluated"),
    };
    u64::try_from(value)
        .map_err(|_| CmdError::Domain("Overflow", format!("count at n = {n} exceeds 64 bits")))
}

fn cmd_complexity(lang_text: &str, max: usize, method: Method, format: Format) -> Result<(), CmdError> {
    let lang: Language = lang_text.parse()?;
    if matches!(lang, Language::KBalanced(_)) && method != Method::Enumerated {
        return Err(CmdError::Usage(format!(
            "no closed form is defined for {lang}; use --method enum"
        )));
    }
    let enumerated = if matches!(method, Method::Enumerated | Method::All) {
        Some(lab()?.complexity_profile(lang, max)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let paper = if matches!(method, Method::Paper | Method::All) {
            Some(closed_form(lang, n as u64, ClosedFormVariant::PaperAsPrinted)?)
        } else {
            None
        };
        let candidate = if matches!(method, Method::Candidate | Method::All) {
            Some(closed_form(lang, n as u64, ClosedFormVariant::GeometricCandidate)?)
        } else {
            None
        };
        rows.push(ComplexityRow {
            n: n as u64,
            enumerated: enumerated.as_ref().map(|profile| profile.p[n]),
            paper,
            candidate,
        });
    }
    let table = ComplexityTable { language: lang, rows };
    let body = match format {
        Format::Json => format!("{}\n", to_json(&table)),
        Format::Csv => complexity_delimited(&table, ","),
        Format::Plain => complexity_delimited(&table, "\t"),
    };
    print_stdout(&body);
    Ok(())
}

fn complexity_delimited(table: &ComplexityTable, sep: &str) -> String {
    let probe = &table.rows[0];
    let mut header = vec!["n"];
    if probe.enumerated.is_some() {
        header.push("enum");
    }
    if probe.paper.is_some() {
        header.push("paper");
    }
    if probe.candidate.is_some() {
        header.push("candidate");
    }
    let mut out = header.join(sep);
    out.push('\n');
    for row in &table.rows {
        let mut cells = vec![row.n.to_string()];
        for value in [row.enumerated, row.paper, row.candidate].into_iter().flatten() {
            cells.push(value.to_string());
        }
        out.push_str(&cells.join(sep));
        out.push('\n');
    }
    out
}

/// Writes the final output in one go, treating a closed pipe as a normal
/// exit so the tool composes with head and friends.
fn print_stdout(body: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(body.as_bytes()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed printing to stdout: {e}");
    }
}

fn emit_report(body: String, out: Option<PathBuf>) -> Result<bool, CmdError> {
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match out {
        Some(path) => {
            fs::write(path, body)?;
            Ok(true)
        }
        None => {
            print_stdout(&body);
            Ok(false)
        }
    }
}

fn cmd_reconcile(max: usize, out: Option<PathBuf>, format: Format) -> Result<(), CmdError> {
    let report = counting::reconcile(&lab()?, max)?;
    let body = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Plain => report.to_csv().replace(',', "\t"),
    };
    let to_file = emit_report(body, out)?;
    for line in report.mismatch_summaries() {
        if to_file {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WordList {
    language: Language,
    length: usize,
    words: Vec<Word>,
}

fn cmd_enumerate(lang_text: &str, len: usize, format: Format) -> Result<(), CmdError> {
    let lang: Language = lang_text.parse()?;
    let words = lab()?.enumerate(lang, len)?;
    let body = match format {
        Format::Json => format!("{}\n", to_json(&WordList { language: lang, length: len, words })),
        Format::Csv => {
            let mut out = String::from("word\n");
            for w in &words {
                out.push_str(&format!("{w}\n"));
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for w in &words {
                out.push_str(&format!("{w}\n"));
            }
            out
        }
    };
    print_stdout(&body);
    Ok(())
}

fn cmd_bispecial(lang_text: &str, len: usize, format: Format) -> Result<(), CmdError> {
    let lang: Language = lang_text.parse()?;
    let census = lab()?.bispecial_census(lang, len)?;
    let by_class =
        [("weak", &census.weak), ("ordinary", &census.ordinary), ("strong", &census.strong)];
    let body = match format {
        Format::Json => format!("{}\n", to_json(&census)),
        Format::Csv => {
            let mut out = String::from("word,class\n");
            for (class, list) in by_class {
                for w in list {
                    out.push_str(&format!("{w},{class}\n"));
                }
            }
            out
        }
        Format::Plain => {
            let mut out = format!("language: {lang}\nlength: {len}\n");
            for (class, list) in by_class {
                out.push_str(&format!("{class} ({}):\n", list.len()));
                for w in list {
                    out.push_str(&format!("  {w}\n"));
                }
            }
            out
        }
    };
    print_stdout(&body);
    Ok(())
}

fn cmd_audit(max: usize, format: Format) -> Result<(), CmdError> {
    let audit = lab()?.inclusion_audit(max)?;
    let body = match format {
        Format::Json => format!("{}\n", to_json(&audit)),
        Format::Csv => {
            let mut out = String::from("larger,smaller,word\n");
            for witness in &audit.witnesses {
                out.push_str(&format!(
                    "{},{},{}\n",
                    witness.larger, witness.smaller, witness.word
                ));
            }
            out
        }
        Format::Plain => {
            let mut out = format!("chain verified up to length {}\n", audit.max_len);
            for witness in &audit.witnesses {
                out.push_str(&format!(
                    "{} strictly contains {}: witness {}\n",
                    witness.larger, witness.smaller, witness.word
                ));
            }
            out
        }
    };
    print_stdout(&body);
    Ok(())
}

#[derive(Serialize)]
struct SegmentWords {
    p: u64,
    q: u64,
    words: Vec<Word>,
}

fn cmd_code_segment(
    p: u64,
    q: u64,
    slalom: Option<Vec<String>>,
    format: Format,
) -> Result<(), CmdError> {
    let segment = LatticeSegment::new(p, q);
    let words = match slalom.as_deref() {
        None => vec![segment.coding()?],
        Some([mode]) => match mode.as_str() {
            "above" => vec![segment.analytic_slalom_pair()?.0],
            "below" => vec![segment.analytic_slalom_pair()?.1],
            "all" => segment.slalom_bispecials()?,
            "mask" => return Err(CmdError::Usage("--slalom mask needs a BITS value".into())),
            other => {
                return Err(CmdError::Usage(format!(
                    "unknown slalom mode {other:?} (expected above, below, all, or mask BITS)"
                )))
            }
        },
        Some([mode, bits]) => {
            if mode != "mask" {
                return Err(CmdError::Usage(format!("slalom mode {mode:?} takes no extra value")));
            }
            let mask: u64 = bits
                .parse()
                .map_err(|_| CmdError::Usage(format!("invalid mask {bits:?}")))?;
            vec![segment.slalom_word(mask)?]
        }
        Some(_) => unreachable!("clap caps --slalom at two values"),
    };
    let body = match format {
        Format::Json => format!("{}\n", to_json(&SegmentWords { p, q, words })),
        Format::Csv => {
            let mut out = String::from("word\n");
            for w in &words {
                out.push_str(&format!("{w}\n"));
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for w in &words {
                out.push_str(&format!("{w}\n"));
            }
            out
        }
    };
    print_stdout(&body);
    Ok(())
}

fn parse_reals(text: &str) -> Result<Vec<f64>, CmdError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>().map_err(|_| CmdError::Usage(format!("invalid real number {t:?}")))
        })
        .collect()
}

fn parse_real_pair(text: &str) -> Result<(f64, f64), CmdError> {
    match parse_reals(text)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(CmdError::Usage(format!("expected two comma-separated reals, got {text:?}"))),
    }
}

fn parse_curve(args: &CurveArgs) -> Result<CurveSpec, CmdError> {
    let params = parse_reals(&args.params)?;
    let kind = match (args.kind.as_str(), params.as_slice()) {
        ("line", [slope, intercept]) => CurveKind::Line { slope: *slope, intercept: *intercept },
        ("parabola", [a, b, c]) => CurveKind::Parabola { a: *a, b: *b, c: *c },
        ("exp", [base, scale]) => CurveKind::Exp { base: *base, scale: *scale },
        ("line", _) => return Err(CmdError::Usage("line needs --params slope,intercept".into())),
        ("parabola", _) => return Err(CmdError::Usage("parabola needs --params a,b,c".into())),
        ("exp", _) => return Err(CmdError::Usage("exp needs --params base,scale".into())),
        (other, _) => {
            return Err(CmdError::Usage(format!(
                "unknown curve kind {other:?} (expected line, parabola, or exp)"
            )))
        }
    };
    Ok(CurveSpec { kind, domain: parse_real_pair(&args.domain)? })
}

#[derive(Serialize)]
struct CurveWord {
    curve: CurveSpec,
    mesh: f64,
    offset: (f64, f64),
    word: Word,
}

fn cmd_code_curve(args: &CurveArgs, mesh: f64, offset: &str, format: Format) -> Result<(), CmdError> {
    let curve = parse_curve(args)?;
    let offset = parse_real_pair(offset)?;
    let word = cutting_sequence(&curve, &GridPlacement { mesh, offset })?;
    let body = match format {
        Format::Json => {
            let report = CurveWord {
                curve: curve.rounded(),
                mesh: round_sig(mesh),
                offset: (round_sig(offset.0), round_sig(offset.1)),
                word,
            };
            format!("{}\n", to_json(&report))
        }
        Format::Csv => format!("word\n{word}\n"),
        Format::Plain => format!("{word}\n"),
    };
    print_stdout(&body);
    Ok(())
}

fn scan_csv(report: &FactorReport) -> String {
    let mut out = String::from("mesh,ox,oy,factor,tangent,analytic\n");
    for entry in &report.entries {
        for f in &entry.factors {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                entry.mesh, entry.offset.0, entry.offset.1, f.w, f.tangent, f.analytic
            ));
        }
    }
    out
}

fn scan_plain(report: &FactorReport) -> String {
    let mut out = String::new();
    for entry in &report.entries {
        out.push_str(&format!(
            "mesh {} offset ({}, {}) word {}\n",
            entry.mesh, entry.offset.0, entry.offset.1, entry.word
        ));
        for f in &entry.factors {
            out.push_str(&format!("  {} tangent={} analytic={}\n", f.w, f.tangent, f.analytic));
        }
    }
    out
}

fn cmd_scan(
    args: &CurveArgs,
    meshes: &str,
    offsets: usize,
    max_factor_len: usize,
    out: Option<PathBuf>,
    format: Format,
) -> Result<(), CmdError> {
    let curve = parse_curve(args)?;
    let meshes = parse_reals(meshes)?;
    let report = multigrid_factor_scan(&curve, &meshes, offsets, max_factor_len)?;
    let body = match format {
        Format::Json => report.to_json(),
        Format::Csv => scan_csv(&report),
        Format::Plain => scan_plain(&report),
    };
    emit_report(body, out)?;
    Ok(())
}
