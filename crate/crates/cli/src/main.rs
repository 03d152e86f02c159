//! `kronecker`: gap structure, quasi-uniformity metrics and sweeps for
//! Kronecker, van der Corput and greedy-packing sequences.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 unsupported input
//! class, 3 precision or digit budget exhausted, 4 infinite mesh ratio in
//! `analyze`, 5 failed gap identity in `gaps`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use kronecker_core::metrics::{sweep_at, BoundCalculator};
use kronecker_core::report::{metrics_json, points_csv, points_json, sweep_csv, sweep_json};
use kronecker_core::scan::{kronecker_scan, DEFAULT_CHUNK_LOG2};
use kronecker_core::sequences::kronecker_in;
use kronecker_core::{
    digit_supremum, gap_structure, is_badly_approximable, lengths_check, mesh_ratio, AlphaField,
    AlphaSpec, Error, GeneratorSpec, PrecisionContext, TieBreak, Verdict,
};

/// Points beyond which `analyze` switches to the fixed-point scan.
const SCAN_THRESHOLD: usize = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "kronecker", version, about = "Exact three-gap and mesh-ratio analysis of Kronecker sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form gap lengths and multiplicities of a Kronecker prefix.
    Gaps {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Fill distance, separation radius and mesh ratio at one n.
    Analyze {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Metrics over a range of n, or at n = n_m.
    Sweep {
        #[command(flatten)]
        gen: GenArgs,
        /// Inclusive range `a..b` (or a single n).
        #[arg(long, conflicts_with = "n_range")]
        n: Option<NRange>,
        #[arg(long)]
        n_range: Option<NRange>,
        /// Evaluate at the continued-fraction indices n_m instead of a range.
        #[arg(long, value_enum, requires = "m")]
        n_at: Option<NAt>,
        /// Inclusive range of m for `--n-at nm`.
        #[arg(long)]
        m: Option<NRange>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Badly-approximable verdict from the partial quotients.
    Classify {
        #[arg(long)]
        alpha: AlphaArg,
        /// Digits inspected when only a prefix is known.
        #[arg(long, default_value_t = 64)]
        probe: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dump the first n points.
    Points {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    /// golden | sqrt:D | quad:P,D,Q | rat:p/q | cf:a0;a1,...[(period)]
    #[arg(long)]
    alpha: Option<AlphaArg>,
    #[arg(long = "gen", value_enum)]
    generator: Option<GenKind>,
    #[arg(long, default_value_t = 2)]
    base: u32,
    #[arg(long, value_enum, default_value_t = TieArg::Leftmost)]
    tie_break: TieArg,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Significant decimal digits in output.
    #[arg(long, default_value_t = 40)]
    digits: usize,
    #[arg(long, default_value_t = 128)]
    bits: u32,
    #[arg(long, default_value_t = 8192)]
    max_bits: u32,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Kronecker,
    Vdc,
    Greedy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TieArg {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NAt {
    Nm,
}

#[derive(Clone, Debug)]
struct AlphaArg(AlphaSpec);

impl FromStr for AlphaArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.parse::<AlphaSpec>().map(AlphaArg).map_err(|e| e.to_string())
    }
}

/// Inclusive `a..b`, or a single value.
#[derive(Clone, Copy, Debug)]
struct NRange {
    lo: usize,
    hi: usize,
}

impl FromStr for NRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(NRange { lo, hi })
    }
}

enum Failure {
    Core(Error),
    Usage(String),
    InfiniteRatio,
    IdentityFailed,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Core(e) => match e {
                Error::Unsupported(_) => 2,
                Error::PrecisionUnresolved { .. } | Error::InsufficientDigits { .. } => 3,
                Error::InvalidAlpha(_)
                | Error::Parse(_)
                | Error::Domain(_)
                | Error::OutOfRange { .. } => 1,
            },
            Failure::InfiniteRatio => 4,
            Failure::IdentityFailed => 5,
        }
    }

    fn message(&self) -> Option<String> {
        match self {
            Failure::Core(e) => Some(e.to_string()),
            Failure::Usage(m) => Some(m.clone()),
            Failure::Io(e) => Some(format!("i/o error: {e}")),
            Failure::InfiniteRatio => Some("mesh ratio is infinite: the prefix has duplicate points".into()),
            Failure::IdentityFailed => Some("gap identity check failed".into()),
        }
    }
}

type Outcome = Result<(), Failure>;

impl OutArgs {
    fn ctx(&self) -> Result<PrecisionContext, Failure> {
        PrecisionContext::new(self.bits, self.max_bits, 4).map_err(Failure::from)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn sink(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn write_json(&self, v: &serde_json::Value) -> Outcome {
        let mut w = self.sink()?;
        serde_json::to_writer_pretty(&mut w, v).map_err(io::Error::from)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }
}

impl GenArgs {
    fn spec(&self) -> Result<GeneratorSpec, Failure> {
        match (self.generator, &self.alpha) {
            (None | Some(GenKind::Kronecker), Some(a)) => Ok(GeneratorSpec::Kronecker(a.0.clone())),
            (None | Some(GenKind::Kronecker), None) => {
                Err(Failure::Usage("the Kronecker generator needs --alpha".into()))
            }
            (Some(GenKind::Vdc), _) => Ok(GeneratorSpec::Vdc { base: self.base }),
            (Some(GenKind::Greedy), _) => Ok(GeneratorSpec::Greedy {
                tie: match self.tie_break {
                    TieArg::Leftmost => TieBreak::Leftmost,
                    TieArg::Rightmost => TieBreak::Rightmost,
                },
            }),
        }
    }

    fn field(&self, spec: &GeneratorSpec, ctx: PrecisionContext) -> Result<Option<Arc<AlphaField>>, Failure> {
        match spec {
            GeneratorSpec::Kronecker(a) => Ok(Some(Arc::new(AlphaField::new(a, ctx)?))),
            _ => Ok(None),
        }
    }
}

fn cmd_gaps(gen: &GenArgs, n: u64, out: &OutArgs) -> Outcome {
    let ctx = out.ctx()?;
    let GeneratorSpec::Kronecker(alpha) = gen.spec()? else {
        return Err(Failure::Usage("gaps applies to Kronecker sequences only".into()));
    };
    let field = AlphaField::new(&alpha, ctx)?;
    let mut exp = field.expansion().clone();
    exp.extend_past(&BigInt::from(n));
    let gs = gap_structure(&exp, n)?;
    let checks = lengths_check(&gs);
    match out.format(Format::Json) {
        Format::Json => {
            let mut doc = gs.to_json(&field, out.digits)?;
            doc["alpha"] = alpha.to_string().into();
            doc["n"] = n.into();
            doc["checks"] = serde_json::to_value(&checks).expect("serializable");
            out.write_json(&doc)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out.sink()?);
            let io_err = |e: csv::Error| Failure::Io(e.into());
            w.write_record(["entry", "u", "v", "multiplicity", "length_lo", "length_hi"])
                .map_err(io_err)?;
            for (i, e) in gs.entries.iter().enumerate() {
                let (lo, hi) = field.enclose(&e.length.to_real(), ctx.bits)?.to_decimal_bounds(out.digits);
                w.write_record([
                    i.to_string(),
                    e.length.u.to_string(),
                    e.length.v.to_string(),
                    e.multiplicity.to_string(),
                    lo,
                    hi,
                ])
                .map_err(io_err)?;
            }
            w.flush()?;
        }
    }
    if checks.all_passed() {
        Ok(())
    } else {
        Err(Failure::IdentityFailed)
    }
}

fn cmd_analyze(gen: &GenArgs, n: usize, out: &OutArgs) -> Outcome {
    let ctx = out.ctx()?;
    let spec = gen.spec()?;
    let field = gen.field(&spec, ctx)?;
    let irrational = field.as_ref().filter(|f| !f.is_rational());
    let qm = match irrational {
        Some(f) if n > SCAN_THRESHOLD => kronecker_scan(f, n as u64, DEFAULT_CHUNK_LOG2)?,
        _ => {
            let ps = match &field {
                Some(f) => kronecker_in(f.clone(), n)?,
                None => spec.generate(n, &ctx)?,
            };
            mesh_ratio(&ps)?
        }
    };
    let bounds = match irrational {
        Some(f) => Some(BoundCalculator::new(f.expansion(), ctx)?.bounds(n as u64)?),
        None => None,
    };
    let f = field.as_deref();
    match out.format(Format::Json) {
        Format::Json => {
            let mut doc = metrics_json(f, &qm, bounds.as_ref(), out.digits)?;
            doc["generator"] = spec.to_string().into();
            out.write_json(&doc)?;
        }
        Format::Csv => {
            let row = kronecker_core::SweepRow {
                metrics: qm.clone(),
                bounds,
            };
            sweep_csv(f, std::slice::from_ref(&row), out.digits, out.sink()?)?;
        }
    }
    if qm.mesh_ratio.is_infinite() {
        Err(Failure::InfiniteRatio)
    } else {
        Ok(())
    }
}

fn cmd_sweep(
    gen: &GenArgs,
    range: Option<NRange>,
    n_at: Option<NAt>,
    m: Option<NRange>,
    out: &OutArgs,
) -> Outcome {
    let ctx = out.ctx()?;
    let spec = gen.spec()?;
    let field = gen.field(&spec, ctx)?;
    let ns: Vec<usize> = match (n_at, range, m) {
        (Some(NAt::Nm), None, Some(m)) => {
            let f = field
                .as_ref()
                .ok_or_else(|| Failure::Usage("--n-at nm needs a Kronecker --alpha".into()))?;
            let mut exp = f.expansion().clone();
            exp.extend_to(m.hi);
            (m.lo..=m.hi)
                .map(|j| {
                    let v = exp.n().get(j).ok_or(Error::InsufficientDigits {
                        needed: j,
                        available: exp.depth(),
                    })?;
                    usize::try_from(v).map_err(|_| Error::Unsupported(format!("n_{j} = {v} is too large")))
                })
                .collect::<Result<_, Error>>()?
        }
        (None, Some(r), None) => (r.lo..=r.hi).collect(),
        (Some(_), Some(_), _) => return Err(Failure::Usage("use either --n/--n-range or --n-at".into())),
        _ => return Err(Failure::Usage("sweep needs --n a..b, --n-range a..b or --n-at nm --m a..b".into())),
    };
    let rows = sweep_at(&spec, &ns, &ctx)?;
    let f = field.as_deref();
    match out.format(Format::Csv) {
        Format::Csv => sweep_csv(f, &rows, out.digits, out.sink()?)?,
        Format::Json => out.write_json(&sweep_json(f, &rows, out.digits)?)?,
    }
    Ok(())
}

fn cmd_classify(alpha: &AlphaSpec, probe: usize, out: &OutArgs) -> Outcome {
    let verdict = is_badly_approximable(alpha, probe);
    let exp = kronecker_core::expand(alpha, probe.max(1));
    let (label, sup, exact) = match &verdict {
        Verdict::Yes { sup } => ("yes", Some(sup.clone()), true),
        Verdict::No => ("no", exp.ok().map(|e| digit_supremum(&e, probe).value), true),
        Verdict::Unknown { prefix_max } => ("unknown", Some(prefix_max.clone()), false),
    };
    let c_bound = match &verdict {
        Verdict::Yes { sup } => Some(BigInt::from(2) + BigInt::from(2) * sup),
        _ => None,
    };
    match out.format(Format::Json) {
        Format::Json => out.write_json(&serde_json::json!({
            "alpha": alpha.to_string(),
            "badly_approximable": label,
            "digit_sup": sup.map(|s| s.to_string()),
            "certainty": if exact { "exact" } else { "prefix-only" },
            "c_bound": c_bound.map(|c| c.to_string()),
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out.sink()?);
            let io_err = |e: csv::Error| Failure::Io(e.into());
            w.write_record(["alpha", "badly_approximable", "digit_sup", "certainty", "c_bound"])
                .map_err(io_err)?;
            w.write_record([
                alpha.to_string(),
                label.to_string(),
                sup.map(|s| s.to_string()).unwrap_or_default(),
                (if exact { "exact" } else { "prefix-only" }).to_string(),
                c_bound.map(|c| c.to_string()).unwrap_or_default(),
            ])
            .map_err(io_err)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_points(gen: &GenArgs, n: usize, out: &OutArgs) -> Outcome {
    let ctx = out.ctx()?;
    let ps = gen.spec()?.generate(n, &ctx)?;
    match out.format(Format::Csv) {
        Format::Csv => points_csv(&ps, out.digits, out.sink()?)?,
        Format::Json => out.write_json(&points_json(&ps, out.digits)?)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gaps { gen, n, out } => cmd_gaps(&gen, n, &out),
        Command::Analyze { gen, n, out } => cmd_analyze(&gen, n, &out),
        Command::Sweep {
            gen,
            n,
            n_range,
            n_at,
            m,
            out,
        } => cmd_sweep(&gen, n.or(n_range), n_at, m, &out),
        Command::Classify { alpha, probe, out } => cmd_classify(&alpha.0, probe, &out),
        Command::Points { gen, n, out } => cmd_points(&gen, n, &out),
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
            if let Some(m) = f.message() {
                eprintln!("kronecker: {m}");
            }
            ExitCode::from(f.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_range_parsing() {
        let r: NRange = "2..100".parse().unwrap();
        assert_eq!((r.lo, r.hi), (2, 100));
        let r: NRange = "7".parse().unwrap();
        assert_eq!((r.lo, r.hi), (7, 7));
        let r: NRange = "3..=5".parse().unwrap();
        assert_eq!((r.lo, r.hi), (3, 5));
        assert!("5..2".parse::<NRange>().is_err());
        assert!("x..2".parse::<NRange>().is_err());
    }

    #[test]
    fn exit_code_contract() {
        assert_eq!(Failure::Core(Error::Unsupported(String::new())).exit_code(), 2);
        assert_eq!(Failure::Core(Error::PrecisionUnresolved { bits: 64 }).exit_code(), 3);
        assert_eq!(Failure::Core(Error::Parse(String::new())).exit_code(), 1);
        assert_eq!(Failure::InfiniteRatio.exit_code(), 4);
        assert_eq!(Failure::IdentityFailed.exit_code(), 5);
    }

    #[test]
    fn kronecker_needs_alpha() {
        let gen = GenArgs {
            alpha: None,
            generator: None,
            base: 2,
            tie_break: TieArg::Leftmost,
        };
        assert!(matches!(gen.spec(), Err(Failure::Usage(_))));
    }
}
