use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncfkit::counting::{self, StructureSpace, DEFAULT_MAX_TABLES, TSV_HEADER};
use ncfkit::{FieldSpec, LayerStructure, Method, Profile, TruthTable, Variant};

mod verify;

/// Nested canalizing functions over finite fields.
#[derive(Parser)]
#[command(name = "ncfkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report essential variables, canalizing profile and NCF structure.
    Analyze(AnalyzeArgs),
    /// Count NCFs with one or more methods; emits TSV.
    Count(CountArgs),
    /// Write every canonical structure.
    Enumerate(EnumerateArgs),
    /// Write seeded uniform samples.
    Sample(SampleArgs),
    /// Run the cross-check suite.
    Verify(VerifyArgs),
    /// Decide whether two tables differ only by a variable permutation.
    Equiv(EquivArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Read layer structures instead of truth tables.
    #[arg(long)]
    structure: bool,
    /// Field order of a structure file; otherwise taken from a `# p=` line.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, required_unless_present = "q", conflicts_with = "q")]
    p: Option<u64>,
    /// Field order, any prime power (formula methods only unless prime).
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "closed")]
    method: Vec<MethodArg>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Recursive,
    Brute,
    Enum,
    ClassFormula,
    Orbit,
}

impl MethodArg {
    fn method(self) -> Method {
        match self {
            MethodArg::Closed => Method::Closed,
            MethodArg::Recursive => Method::Recursive,
            MethodArg::Brute => Method::BruteForce,
            MethodArg::Enum => Method::StructureEnum,
            MethodArg::ClassFormula => Method::ClassFormula,
            MethodArg::Orbit => Method::OrbitEnum,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Structure,
    Table,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "interval")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "structure")]
    emit: Emit,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    level: verify::Level,
}

#[derive(Args)]
struct EquivArgs {
    first: PathBuf,
    second: PathBuf,
}

pub enum Failure {
    Usage(String),
    Core(ncfkit::Error),
    Verification(usize),
}

impl From<ncfkit::Error> for Failure {
    fn from(e: ncfkit::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        use ncfkit::Error::*;
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(Domain(_) | UnsupportedMode(_)) => 1,
            Failure::Core(Parse { .. } | InvalidSpec(_) | InvalidStructure(_)) => 2,
            Failure::Core(Capacity { .. }) => 3,
            Failure::Verification(_) => 4,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

fn layers_line(s: &LayerStructure) -> String {
    let layers: Vec<String> = s
        .layers()
        .iter()
        .map(|l| {
            l.iter()
                .map(|e| format!("(x{},{})", e.variable + 1, e.set))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let b: Vec<String> = s.constants().iter().map(u8::to_string).collect();
    format!(
        "r={}; layers: {}; B={}",
        s.layer_count(),
        layers.join(" | "),
        b.join(",")
    )
}

fn analyze_table(t: &TruthTable, prefer: Option<Variant>) -> String {
    let mut out = format!("table: p={} n={}\n", t.modulus(), t.arity());
    let profile = t.canalizing_profile();
    let Profile::NonConstant(profile) = profile else {
        out.push_str("constant function; not NCF\n");
        return out;
    };
    let essential: Vec<String> = t.essential_variables().iter().map(|i| format!("x{}", i + 1)).collect();
    out.push_str(&format!("essential: {}\n", essential.join(" ")));
    let canalizing: Vec<String> = profile
        .canalizing_variables()
        .map(|(i, e)| format!("x{} on {} -> {}", i + 1, e.set, e.output))
        .collect();
    if canalizing.is_empty() {
        out.push_str("canalizing: none\n");
    } else {
        out.push_str(&format!("canalizing: {}\n", canalizing.join(", ")));
    }
    let found: Vec<(Variant, LayerStructure)> = Variant::ALL
        .iter()
        .filter_map(|&v| ncfkit::recognize(t, v).map(|s| (v, s)))
        .collect();
    if found.is_empty() {
        out.push_str("NCF: no\n");
        return out;
    }
    for v in Variant::ALL {
        match found.iter().find(|(w, _)| *w == v) {
            Some((_, s)) => out.push_str(&format!("NCF: yes ({v}); {}\n", layers_line(s))),
            None => out.push_str(&format!("NCF: no ({v})\n")),
        }
    }
    let (_, s) = found
        .iter()
        .find(|(v, _)| Some(*v) == prefer)
        .unwrap_or(&found[0]);
    let comp: Vec<String> = s.composition().iter().map(usize::to_string).collect();
    out.push_str(&format!("composition: {}\n", comp.join(",")));
    if s.is_extension() {
        out.push_str("note: single-variable function\n");
    }
    for (_, s) in &found {
        out.push_str(&format!("class key: {}\n", s.class_key()));
    }
    out.push_str(&format!("structure:\n{s}"));
    out
}

fn header_prime(text: &str) -> Option<u64> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .flat_map(str::split_whitespace)
        .find_map(|tok| tok.strip_prefix("p=")?.parse().ok())
}

fn cmd_analyze(args: AnalyzeArgs) -> Outcome {
    let text = read(&args.file)?;
    let tables = if args.structure {
        let p = args
            .p
            .or_else(|| header_prime(&text))
            .ok_or_else(|| Failure::Usage("structure files need --p or a \"# p=\" line".into()))?;
        let p = u8::try_from(FieldSpec::prime(p)?.order()).expect("small prime");
        LayerStructure::parse_many(&text, p)?
            .iter()
            .map(|s| (s.build(), Some(s.variant())))
            .collect()
    } else {
        TruthTable::parse_many(&text)?
            .into_iter()
            .map(|t| (t, None))
            .collect::<Vec<_>>()
    };
    if tables.is_empty() {
        return Err(Failure::Core(ncfkit::Error::Parse {
            line: 1,
            column: 1,
            message: "no records".into(),
        }));
    }
    let reports: Vec<String> = tables.iter().map(|(t, v)| analyze_table(t, *v)).collect();
    write_output(None, &reports.join("\n"))
}

fn max_tables() -> Result<u64, Failure> {
    match std::env::var("NCFKIT_MAX_TABLES") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("NCFKIT_MAX_TABLES must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_TABLES),
    }
}

fn cmd_count(args: CountArgs) -> Outcome {
    let order = args.p.or(args.q).expect("clap requires p or q");
    if args.p.is_some() {
        FieldSpec::prime(order)?;
    } else {
        FieldSpec::cardinality(order)?;
    }
    let n_max = args.n_max.unwrap_or(args.n);
    if n_max < args.n {
        return Err(Failure::Usage(format!("--n-max {n_max} is below --n {}", args.n)));
    }
    let class_only = args.method.iter().all(|&m| m == MethodArg::ClassFormula);
    if args.method.contains(&MethodArg::ClassFormula) && args.variant == Some(Variant::Interval) {
        return Err(Failure::Usage("class-formula counts the general variant only".into()));
    }
    let limit = max_tables()?;
    let Format::Tsv = args.format;
    let mut text = format!("{TSV_HEADER}\n");
    for n in args.n..=n_max {
        for &m in &args.method {
            let method = m.method();
            let variant = match (method, args.variant) {
                (Method::ClassFormula, _) => Variant::General,
                (_, Some(v)) => v,
                _ if class_only => Variant::General,
                _ => Variant::Interval,
            };
            if method == Method::Closed && variant == Variant::Interval && args.q.is_some() {
                FieldSpec::prime(order)?;
            }
            let report = match method {
                Method::BruteForce => {
                    counting::brute_force_count_with_limit(FieldSpec::prime(order)?, n, variant, limit)?
                }
                _ => counting::count(method, order, n, variant)?,
            };
            text.push_str(&report.tsv_row());
            text.push('\n');
        }
    }
    write_output(args.out.as_deref(), &text)
}

fn render(space: &SpaceArgs, structures: impl Iterator<Item = LayerStructure>) -> String {
    let blocks: Vec<String> = structures
        .map(|s| match space.emit {
            Emit::Structure => s.to_string(),
            Emit::Table => s.build().to_string(),
        })
        .collect();
    format!(
        "# p={} n={} variant={}\n{}",
        space.p,
        space.n,
        space.variant,
        blocks.join("\n")
    )
}

fn cmd_enumerate(args: EnumerateArgs) -> Outcome {
    let s = &args.space;
    let space = StructureSpace::new(FieldSpec::prime(s.p)?, s.n, s.variant)?;
    let text = render(s, space.structures()?);
    write_output(s.out.as_deref(), &text)
}

fn cmd_sample(args: SampleArgs) -> Outcome {
    let s = &args.space;
    let drawn = counting::sample_many(FieldSpec::prime(s.p)?, s.n, s.variant, args.seed, args.count)?;
    let text = render(s, drawn.into_iter());
    write_output(s.out.as_deref(), &text)
}

fn cmd_equiv(args: EquivArgs) -> Outcome {
    let a = TruthTable::parse(&read(&args.first)?)?;
    let b = TruthTable::parse(&read(&args.second)?)?;
    let same = a.modulus() == b.modulus()
        && a.arity() == b.arity()
        && ncfkit::permutation_equivalent(&a, &b)?;
    println!("equivalent: {}", if same { "yes" } else { "no" });
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Count(a) => cmd_count(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Verify(a) => verify::run(a.level),
        Command::Equiv(a) => cmd_equiv(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Verification(k) => eprintln!("verify: {k} check(s) failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
