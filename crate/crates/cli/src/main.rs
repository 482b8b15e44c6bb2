use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pxc_core::cayley::{decide_with, CayleyAnalysis, CayleyVerdict, Method};
use pxc_core::census::{census_rows, px_vertex_count, CensusRow};
use pxc_core::cyclofactor::{degree_profile, factor_xn_plus_1, DegreeProfile, FactorMultiset};
use pxc_core::permgroup::OracleConfig;
use pxc_core::{build_px, Error};

const MAX_FACTOR_N: usize = 65536;
const ORACLE_CAP_VAR: &str = "PXC_ORACLE_CAP";

#[derive(Parser)]
#[command(name = "pxc", version, about = "Decide whether Praeger-Xu graphs PX(n,k) are Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether PX(n,k) is a Cayley graph.
    Decide {
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Polynomial)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a divisor of t^n+1 of degree n-k, or exit 1 if there is none.
    Witness { n: usize, k: usize },
    /// Factor t^n+1 and print its degree profile.
    Factor {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// One row per (n,k) for n_min <= n <= n_max.
    Census {
        n_min: usize,
        n_max: usize,
        /// Cross-check each pair within the vertex cap by brute force.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = CensusFormat::Csv)]
        format: CensusFormat,
    },
    /// Print the edge list of PX(n,k).
    Graph { n: usize, k: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Polynomial,
    Arithmetic,
    Bruteforce,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusFormat {
    Csv,
    Json,
}

/// Exit status carried alongside an error message.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Disagreement { .. } | Error::InvalidInstance(_) | Error::DivisionByZero => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn oracle_config() -> Result<OracleConfig, Failure> {
    let mut cfg = OracleConfig::default();
    if let Ok(v) = std::env::var(ORACLE_CAP_VAR) {
        cfg.cap = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{ORACLE_CAP_VAR} must be a vertex count, got {v:?}")))?;
    }
    Ok(cfg)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn verdict_line(v: &CayleyVerdict) -> String {
    let mut line = format!("PX({},{}) cayley={} method={}", v.n, v.k, v.cayley, v.method);
    if let Some(w) = &v.witness {
        line.push_str(&format!(" witness={w}"));
    }
    line
}

fn cmd_decide(out: &mut impl Write, n: usize, k: usize, method: MethodArg, format: Format) -> Outcome {
    let analysis = CayleyAnalysis::new(n).and_then(|a| a.is_cayley(k).map(|_| a))?;
    let oracle = oracle_config()?;
    let methods: Vec<Method> = match method {
        MethodArg::Polynomial => vec![Method::Polynomial],
        MethodArg::Arithmetic => vec![Method::Arithmetic],
        MethodArg::Bruteforce => vec![Method::Bruteforce],
        MethodArg::All => Method::ALL
            .into_iter()
            .filter(|&m| {
                m != Method::Bruteforce || px_vertex_count(n, k).is_some_and(|v| v <= oracle.cap)
            })
            .collect(),
    };
    let verdicts = methods
        .iter()
        .map(|&m| decide_with(&analysis, k, m, &oracle))
        .collect::<Result<Vec<_>, _>>()?;
    match (format, method) {
        (Format::Json, MethodArg::All) => writeln!(out, "{}", to_json(&verdicts))?,
        (Format::Json, _) => writeln!(out, "{}", to_json(&verdicts[0]))?,
        (Format::Text, _) => {
            for v in &verdicts {
                writeln!(out, "{}", verdict_line(v))?;
            }
            if method == MethodArg::All && methods.len() < Method::ALL.len() {
                writeln!(out, "bruteforce skipped: PX({n},{k}) exceeds the oracle cap of {} vertices", oracle.cap)?;
            }
        }
    }
    if verdicts.iter().any(|v| v.cayley != verdicts[0].cayley) {
        let detail = verdicts
            .iter()
            .map(|v| format!("{}={}", v.method, v.cayley))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::Disagreement { n, k, detail }.into());
    }
    Ok(0)
}

fn cmd_witness(out: &mut impl Write, n: usize, k: usize) -> Outcome {
    let analysis = CayleyAnalysis::new(n)?;
    match analysis.witness_divisor(k) {
        Ok(w) => {
            writeln!(out, "{w}")?;
            writeln!(out, "deg={} divides t^{n}+1: yes", n - k)?;
            Ok(0)
        }
        Err(Error::NotCayley { .. }) => {
            writeln!(out, "not Cayley")?;
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct FactorReport<'a> {
    n: usize,
    a: u32,
    b: usize,
    factors: &'a FactorMultiset,
    profile: &'a DegreeProfile,
}

fn cmd_factor(out: &mut impl Write, n: usize, format: Format) -> Outcome {
    if !(1..=MAX_FACTOR_N).contains(&n) {
        return Err(usage(format!("factor needs 1 <= n <= {MAX_FACTOR_N}, got {n}")));
    }
    let factors = factor_xn_plus_1(n)?;
    let profile = degree_profile(n)?;
    match format {
        Format::Json => {
            let report = FactorReport { n, a: profile.split.a, b: profile.split.b, factors: &factors, profile: &profile };
            writeln!(out, "{}", to_json(&report))?;
        }
        Format::Text => {
            writeln!(out, "{factors}")?;
            writeln!(out, "n={n} a={} b={}", profile.split.a, profile.split.b)?;
            writeln!(out, "{:>8} {:>8} {:>8} {:>8} {:>8}", "d", "omega", "phi", "count", "capacity")?;
            for e in &profile.entries {
                writeln!(out, "{:>8} {:>8} {:>8} {:>8} {:>8}", e.d, e.omega, e.phi, e.count, e.capacity)?;
            }
        }
    }
    Ok(0)
}

fn write_census(out: &mut impl Write, rows: &[CensusRow], format: CensusFormat) -> Result<(), Failure> {
    match format {
        CensusFormat::Json => writeln!(out, "{}", to_json(&rows))?,
        CensusFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in rows {
                w.serialize(row).map_err(|e| usage(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_census(out: &mut impl Write, n_min: usize, n_max: usize, oracle: bool, format: CensusFormat) -> Outcome {
    if n_min < 3 || n_min > n_max {
        return Err(usage(format!("census needs 3 <= n_min <= n_max, got {n_min} {n_max}")));
    }
    let cfg = if oracle { Some(oracle_config()?) } else { None };
    let rows = census_rows(n_min, n_max, cfg.as_ref()).map_err(|e| match e {
        Error::Disagreement { n, k, detail } => Failure {
            code: 3,
            message: format!("oracle disagreement, reproduce with `pxc decide {n} {k} --method all`: {detail}"),
        },
        e => e.into(),
    })?;
    write_census(out, &rows, format)?;
    let stderr = io::stderr();
    let mut err = stderr.lock();
    for n in n_min..=n_max {
        let cayley = rows.iter().filter(|r| r.n == n && r.cayley).count();
        let checked = rows.iter().filter(|r| r.n == n && r.oracle_checked).count();
        writeln!(err, "# n={n} cayley={cayley}/{} oracle_checked={checked}", n - 1)?;
    }
    Ok(0)
}

fn cmd_graph(out: &mut impl Write, n: usize, k: usize) -> Outcome {
    let px = build_px(n, k)?;
    out.write_all(px.edge_list().as_bytes())?;
    Ok(0)
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let code = match cli.command {
        Command::Decide { n, k, method, format } => cmd_decide(out, n, k, method, format)?,
        Command::Witness { n, k } => cmd_witness(out, n, k)?,
        Command::Factor { n, format } => cmd_factor(out, n, format)?,
        Command::Census { n_min, n_max, oracle, format } => cmd_census(out, n_min, n_max, oracle, format)?,
        Command::Graph { n, k } => cmd_graph(out, n, k)?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("pxc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
