use std::collections::BTreeSet;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pinclass::growth::{self, GrowthResult, GrowthTarget};
use pinclass::oracle::{self, ClassCensus, Method};
use pinclass::pipeline::{self, ClassMode, GSequence};
use pinclass::{classify, render, CentredPerm, Error, PinDiagram, PinSpec, PinWord, Poly, Quadrant, RatGF};

#[derive(Parser, Debug)]
#[command(name = "pinclass", version, about = "Pin sequences, centred permutations and their generating functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Picture {
    Svg,
    Ascii,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Class,
    Closure,
    Interior,
}

impl From<Mode> for ClassMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Class => ClassMode::Class,
            Mode::Closure => ClassMode::Closure,
            Mode::Interior => ClassMode::Interior,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleMethod {
    Subset,
    Composition,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the centred permutation of each pin word (read from stdin if none given).
    Perm {
        words: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generating functions f, G, g and g1..g4 of a pin sequence.
    Gf {
        spec: String,
        #[arg(long, value_enum, default_value = "class")]
        mode: Mode,
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certified growth rate of a pin sequence's class or of a polynomial's smallest root.
    Growth {
        spec: Option<String>,
        #[arg(long, conflicts_with = "spec")]
        poly: Option<String>,
        #[arg(long, value_enum, default_value = "class")]
        mode: Mode,
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, default_value_t = growth::DEFAULT_DIGITS)]
        digits: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Re-derive the decomposable and collision tables by exhaustive search.
    VerifyTables {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Brute-force census of a pin class ("complete" for all pin permutations).
    Oracle {
        spec: String,
        #[arg(long, short)]
        n: usize,
        #[arg(long, value_enum, default_value = "composition")]
        method: OracleMethod,
        /// Lift the subset-method length guard.
        #[arg(long)]
        allow_large: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write every member, one per line.
        #[arg(long)]
        dump_perms: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generating function of the complete pin class on a set of quadrants.
    Complete {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        quadrants: Vec<u8>,
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generating function of the box-closure of a finite set of centred permutations.
    ClosureOf {
        #[arg(long, num_args = 1.., required = true)]
        perms: Vec<String>,
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Draw the pin diagram of a word or of an initial segment of a sequence.
    Render {
        input: String,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[arg(long, value_enum, default_value = "svg")]
        format: Picture,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Mismatch(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    use Error::*;
    match e {
        EmptyInput
        | MalformedSyntax(_)
        | AlignmentViolation { .. }
        | NonAlternatingCycle(_)
        | NotAPermutation(_)
        | NoOrigin(_)
        | MultipleOrigins(_) => 2,
        IndexOutOfRange(_)
        | EmptyPermutation
        | NotInterior { .. }
        | NonIndecomposableElement(_)
        | NotRecurrent(_)
        | DisconnectedQuadrants(_)
        | MemoryGuard { .. }
        | OutOfSupportedRange(_) => 3,
        DivisionByZero
        | NonzeroConstantTerm
        | PoleAtZero
        | NoRootInRange(_)
        | EarlySingularity(_)
        | ConvergenceNotReached(_) => 4,
        StabilizationFailure(_) | BoundViolation(_) | TableMismatch(_) => 5,
    }
}

type Outcome = Result<(), Failure>;

fn emit(format: Format, text: String, value: Value) -> Outcome {
    let mut out = io::stdout().lock();
    match format {
        Format::Text => write!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serialisable"))?,
    }
    Ok(())
}

fn growth_json(r: &GrowthResult) -> Value {
    json!({
        "interval": [r.growth_interval.0.to_string(), r.growth_interval.1.to_string()],
        "root_interval": [r.root_interval.0.to_string(), r.root_interval.1.to_string()],
        "decimal": r.decimal,
        "polynomial": r.polynomial,
    })
}

fn growth_text(r: &GrowthResult) -> String {
    format!(
        "growth = {}  in [{}, {}]\n",
        r.decimal, r.growth_interval.0, r.growth_interval.1
    )
}

fn g_text(seq: &GSequence, f: &RatGF) -> String {
    let mut s = format!("f(z) = {f}\nG(z) = {}\ng(z) = {}\n", seq.big_g, seq.g);
    for (i, gq) in seq.g_quadrants.iter().enumerate() {
        s.push_str(&format!("g{}(z) = {gq}\n", i + 1));
    }
    s
}

fn cmd_perm(words: Vec<String>, format: Format) -> Outcome {
    let inputs: Vec<String> = if words.is_empty() {
        io::stdin()
            .lock()
            .lines()
            .collect::<io::Result<Vec<_>>>()?
            .into_iter()
            .filter(|l| !l.trim().is_empty())
            .collect()
    } else {
        words
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for input in &inputs {
        let w = PinWord::parse(input)?;
        let p = pinclass::pi_map(&w);
        text.push_str(&format!("{p}\n"));
        items.push(json!({"word": w.to_string(), "perm": p.to_string(), "centred": p}));
    }
    emit(format, text, Value::Array(items))
}

fn cmd_gf(spec: &str, mode: Mode, tol: &str, format: Format) -> Outcome {
    let spec: PinSpec = spec.parse()?;
    let tol = growth::parse_tolerance(tol)?;
    let report = pipeline::gf_report(&spec, mode.into(), &tol)?;
    let seq = GSequence { g: report.g.clone(), g_quadrants: report.g_quadrants.clone(), big_g: report.big_g.clone() };
    let text = format!("{}growth = {}\n", g_text(&seq, &report.f), report.growth.decimal);
    emit(format, text, serde_json::to_value(&report).expect("serialisable"))
}

fn cmd_growth(spec: Option<String>, poly: Option<String>, mode: Mode, tol: &str, digits: usize, format: Format) -> Outcome {
    let tol = growth::parse_tolerance(tol)?;
    let (source, r) = match (spec, poly) {
        (_, Some(p)) => {
            let p = Poly::parse(&p)?;
            (p.to_string(), growth::growth_of_polynomial(&p, &tol, digits)?)
        }
        (Some(s), None) => {
            let spec: PinSpec = s.parse()?;
            let f = pipeline::mode_g(&spec, mode.into())?.class_gf()?;
            (spec.to_string(), growth::growth_of_polynomial(f.den(), &tol, digits)?)
        }
        (None, None) => return Err(Error::EmptyInput.into()),
    };
    emit(format, growth_text(&r), json!({"source": source, "growth": growth_json(&r)}))
}

fn cmd_verify_tables(n_max: usize, jobs: usize, format: Format) -> Outcome {
    let start = std::time::Instant::now();
    let reports = classify::verify_tables(n_max, jobs);
    let elapsed = start.elapsed().as_secs_f64();
    let mut text = String::from("n  words      decomposable  groups            overcount  indecomposables  match\n");
    let mut items = Vec::new();
    for r in &reports {
        let sizes: Vec<String> = r.group_sizes().iter().map(|(s, c)| format!("{c}x{s}")).collect();
        text.push_str(&format!(
            "{:<2} {:<10} {:<13} {:<17} {:<10} {:<16} {}\n",
            r.length,
            r.word_count,
            r.decomposable_words.len(),
            sizes.join(" "),
            r.overcount,
            r.distinct_indecomposables,
            r.table_match
        ));
        for d in &r.discrepancies {
            text.push_str(&format!("   {d}\n"));
        }
        items.push(json!({
            "length": r.length,
            "word_count": r.word_count,
            "decomposable": r.decomposable_words.len(),
            "group_sizes": r.group_sizes(),
            "overcount": r.overcount,
            "distinct_indecomposables": r.distinct_indecomposables,
            "table_match": r.table_match,
            "discrepancies": r.discrepancies,
        }));
    }
    text.push_str(&format!("elapsed {elapsed:.2}s\n"));
    emit(format, text, json!({"n_max": n_max, "lengths": items, "elapsed_seconds": elapsed}))?;
    if reports.iter().all(|r| r.table_match) {
        Ok(())
    } else {
        Err(Failure::Mismatch("classification tables disagree with enumeration".into()))
    }
}

fn census_json(c: &ClassCensus, expected: &Option<Vec<u64>>) -> Value {
    let mut v = serde_json::to_value(c).expect("serialisable");
    v["expected"] = json!(expected);
    v
}

fn cmd_oracle(spec: &str, n: usize, method: OracleMethod, allow_large: bool, dump: Option<PathBuf>, format: Format) -> Outcome {
    let (census, expected) = if spec == "complete" {
        let census = oracle::enumerate_pin_permutations(n)?;
        let all: BTreeSet<Quadrant> = Quadrant::ALL.into_iter().collect();
        let gf = pipeline::complete_class_gf(&all)?;
        (census, Some(pipeline::counts_of(&gf, n)?))
    } else {
        let spec: PinSpec = spec.parse()?;
        let census = match method {
            OracleMethod::Subset => oracle::enumerate_class_subset(&spec, n, allow_large)?,
            OracleMethod::Composition => oracle::enumerate_class_composition(&spec, n)?,
        };
        let expected = if spec.is_recurrent() {
            Some(pipeline::counts_of(&pipeline::class_gf(&spec)?, n)?)
        } else {
            None
        };
        (census, expected)
    };
    if let Some(path) = dump {
        let mut f = io::BufWriter::new(std::fs::File::create(path)?);
        for line in census.dump() {
            writeln!(f, "{line}")?;
        }
    }
    let method_name = match census.method {
        Method::Subset => "subset",
        Method::Composition => "composition",
        Method::Representation => "representation",
    };
    let mut text = format!("{} ({method_name}): {:?}\n", census.source, census.counts);
    if let Some(e) = &expected {
        text.push_str(&format!("generating function: {e:?}\n"));
    }
    if census.empirical {
        text.push_str(&format!(
            "stopped at segment length {} on observed stability\n",
            census.segment_length.unwrap_or(0)
        ));
    }
    emit(format, text, census_json(&census, &expected))?;
    match expected {
        Some(e) if e != census.counts => Err(Failure::Mismatch("census differs from generating function".into())),
        _ => Ok(()),
    }
}

fn gf_with_growth(seq: &GSequence, tol: &str, format: Format, label: Value) -> Outcome {
    let tol = growth::parse_tolerance(tol)?;
    let f = seq.class_gf()?;
    let r = pipeline::growth_rate(&f, GrowthTarget::DenominatorRoot, &tol)?;
    let text = format!("{}{}", g_text(seq, &f), growth_text(&r));
    let value = json!({
        "source": label,
        "g": seq.g,
        "g_quadrants": seq.g_quadrants,
        "G": seq.big_g,
        "f": f,
        "growth": growth_json(&r),
    });
    emit(format, text, value)
}

fn cmd_complete(quadrants: Vec<u8>, tol: &str, format: Format) -> Outcome {
    let set = quadrants
        .iter()
        .map(|&n| Quadrant::from_number(n).ok_or_else(|| Error::MalformedSyntax(format!("quadrant {n}"))))
        .collect::<Result<BTreeSet<_>, _>>()?;
    let seq = pipeline::complete_class_g(&set)?;
    gf_with_growth(&seq, tol, format, json!(quadrants))
}

fn cmd_closure_of(perms: Vec<String>, tol: &str, format: Format) -> Outcome {
    let gens = perms.iter().map(|p| p.parse()).collect::<Result<Vec<CentredPerm>, _>>()?;
    let seq = pipeline::finite_closure_g(&gens)?;
    gf_with_growth(&seq, tol, format, json!(perms))
}

fn cmd_render(input: &str, steps: usize, format: Picture, out: Option<PathBuf>) -> Outcome {
    let word = if input.contains('(') {
        input.parse::<PinSpec>()?.initial_segment(steps)
    } else {
        PinWord::parse(input)?
    };
    let d = PinDiagram::new(&word);
    let body = match format {
        Picture::Svg => render::svg(&d),
        Picture::Ascii => render::ascii(&d),
    };
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Perm { words, format } => cmd_perm(words, format),
        Command::Gf { spec, mode, tol, format } => cmd_gf(&spec, mode, &tol, format),
        Command::Growth { spec, poly, mode, tol, digits, format } => cmd_growth(spec, poly, mode, &tol, digits, format),
        Command::VerifyTables { n_max, jobs, format } => cmd_verify_tables(n_max, jobs, format),
        Command::Oracle { spec, n, method, allow_large, jobs, dump_perms, format } => {
            oracle::with_jobs(jobs, || cmd_oracle(&spec, n, method, allow_large, dump_perms, format))
        }
        Command::Complete { quadrants, tol, format } => cmd_complete(quadrants, &tol, format),
        Command::ClosureOf { perms, tol, format } => cmd_closure_of(perms, &tol, format),
        Command::Render { input, steps, format, out } => cmd_render(&input, steps, format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if let Error::NotRecurrent(_) = e {
                eprintln!("hint: try --mode closure or --mode interior");
            }
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(5)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(1)
        }
    }
}
