use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use epg_core::construct::{build_pg_over_extension, quadratic_extension};
use epg_core::minors::has_pg_minor;
use epg_core::normalize::normalize_spanning_pg;
use epg_core::suite::{self, RunReport, Suite, SuiteConfig};
use epg_core::{
    build_epg, build_extension_rep, build_pg, epg_size_formula, growth_rate_formula, text, Error, Label,
    LabelSet, RepMatroid, ZSetSpec,
};

#[derive(Parser)]
#[command(name = "epg", version, about = "Projective and extended projective geometries over finite fields")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Refuse constructions that enumerate more vectors than this.
    #[arg(long, global = true, default_value_t = 60_000)]
    max_elements: usize,
    #[arg(long, global = true, default_value_t = 1)]
    max_contract: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Write a matroid file for a construction.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Point count of PG^(k)(n-1, q), by formula and, when small enough, by enumeration.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Growth-rate values for n = 1..=n_max and k = 0..=k_max.
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        k_max: u64,
        #[arg(long, default_value_t = 6)]
        n_max: u64,
    },
    /// Run a property suite.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Search a matroid file for a PG(n-1, q)-minor.
    MinorSearch {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Normalize a GF(q^2) file whose members form a spanning PG(n-1, q).
    Normalize {
        file: PathBuf,
        #[arg(long)]
        q: u64,
        /// Comma-separated labels of the geometry; defaults to every element.
        #[arg(long, value_delimiter = ',')]
        members: Vec<Label>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// PG(n-1, q).
    Pg(BuildArgs),
    /// PG^(k)(n-1, q) over GF(q^2).
    Epg(BuildArgs),
    /// PG(n-1, q) inside GF(q^2) plus the points omega-shifted by it.
    Extension {
        #[command(flatten)]
        args: BuildArgs,
        /// Encoding of omega in GF(q^2); defaults to the least element outside GF(q).
        #[arg(long)]
        omega: Option<u32>,
    },
    /// PG(n-1, q) with its columns read over GF(q^2).
    PgOverExtension(BuildArgs),
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Construct,
    Density,
    Fields,
    Geometry,
    Minors,
    Normalize,
}

enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvariantViolated(_) | Error::Overflow(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("epg: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("epg: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Build { kind } => build(cli, kind),
        Command::Count { q, k, n } => count(cli, *q, *k, *n),
        Command::Table { q, k_max, n_max } => table(cli, *q, *k_max, *n_max),
        Command::Verify { suite } => verify(cli, *suite),
        Command::MinorSearch { file, n, q } => minor_search(cli, file, *n, *q),
        Command::Normalize { file, q, members, out } => normalize(cli, file, *q, members, out.as_ref()),
    }
}

fn check_size(cli: &Cli, n: usize, q: u64, k: usize) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let size = ZSetSpec::new(n, q, k)?.size();
    match size {
        Some(s) if s as usize <= cli.max_elements => Ok(()),
        _ => Err(Failure::Usage(format!("construction exceeds --max-elements {}", cli.max_elements))),
    }
}

fn emit(cli: &Cli, m: &RepMatroid, out: Option<&PathBuf>) -> Outcome {
    let summary = json!({ "rank": m.rank(), "points": m.point_count(), "elements": m.len() });
    match out {
        Some(path) => {
            text::write_file(m, path)?;
            if cli.format == Format::Json {
                println!("{summary}");
            } else {
                println!("rank {} points {}", m.rank(), m.point_count());
            }
        }
        None => {
            print!("{}", text::to_text(m));
            eprintln!("rank {} points {}", m.rank(), m.point_count());
        }
    }
    Ok(())
}

fn build(cli: &Cli, kind: &BuildKind) -> Outcome {
    let (m, out) = match kind {
        BuildKind::Pg(a) => {
            check_size(cli, a.n, a.q, 0)?;
            (build_pg(a.n.saturating_sub(1), a.q)?, a.out.as_ref())
        }
        BuildKind::Epg(a) => {
            check_size(cli, a.n, a.q, a.k)?;
            (build_epg(a.n.saturating_sub(1), a.q, a.k)?, a.out.as_ref())
        }
        BuildKind::PgOverExtension(a) => {
            check_size(cli, a.n, a.q, 0)?;
            (build_pg_over_extension(a.n.saturating_sub(1), a.q)?, a.out.as_ref())
        }
        BuildKind::Extension { args: a, omega } => {
            check_size(cli, a.n, a.q, 0)?;
            let host: Arc<_> = quadratic_extension(a.q)?;
            let w = match omega {
                Some(v) => host.element(*v)?,
                None => host.pick_omega(a.q)?,
            };
            (build_extension_rep(host, w, a.n)?, a.out.as_ref())
        }
    };
    emit(cli, &m, out)
}

fn count(cli: &Cli, q: u64, k: usize, n: usize) -> Outcome {
    let formula = epg_size_formula(n as u64, q, k as u64)?;
    let enumerated = match ZSetSpec::new(n, q, k)?.size() {
        Some(s) if s as usize <= cli.max_elements && n >= 1 => Some(build_epg(n - 1, q, k)?.len() as u128),
        _ => None,
    };
    if cli.format == Format::Json {
        println!("{}", json!({ "n": n, "q": q, "k": k, "value": formula, "enumerated": enumerated }));
    } else {
        match enumerated {
            Some(e) => println!("{formula} (enumerated {e})"),
            None => println!("{formula}"),
        }
    }
    match enumerated {
        Some(e) if e != formula => Err(Failure::Check(format!("enumeration gives {e}, formula gives {formula}"))),
        _ => Ok(()),
    }
}

fn table(cli: &Cli, q: u64, k_max: u64, n_max: u64) -> Outcome {
    let mut rows = Vec::new();
    let mut overflow = false;
    for n in 1..=n_max {
        let cells: Vec<Option<u128>> = (0..=k_max)
            .map(|k| match growth_rate_formula(n, q, k) {
                Ok(v) => Some(v),
                Err(Error::Overflow(_)) => {
                    overflow = true;
                    None
                }
                Err(_) => None,
            })
            .collect();
        rows.push((n, cells));
    }
    if let Err(e) = growth_rate_formula(1, q, 0) {
        return Err(e.into());
    }
    if cli.format == Format::Json {
        let out: Vec<_> = rows
            .iter()
            .flat_map(|(n, cells)| {
                cells.iter().enumerate().map(move |(k, v)| json!({ "n": n, "q": q, "k": k, "value": v }))
            })
            .collect();
        println!("{}", serde_json::Value::Array(out));
    } else {
        let header: Vec<String> = (0..=k_max).map(|k| format!("k={k}")).collect();
        println!("n\t{}", header.join("\t"));
        for (n, cells) in &rows {
            let cells: Vec<String> =
                cells.iter().map(|c| c.map_or_else(|| "-".to_string(), |v| v.to_string())).collect();
            println!("{n}\t{}", cells.join("\t"));
        }
    }
    if overflow {
        return Err(Failure::Check("some entries overflowed and are shown as null".into()));
    }
    Ok(())
}

fn verify(cli: &Cli, which: SuiteArg) -> Outcome {
    let suites: Vec<Suite> = match which {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Construct => vec![Suite::Construct],
        SuiteArg::Density => vec![Suite::Density],
        SuiteArg::Fields => vec![Suite::Fields],
        SuiteArg::Geometry => vec![Suite::Geometry],
        SuiteArg::Minors => vec![Suite::Minors],
        SuiteArg::Normalize => vec![Suite::Normalize],
    };
    let cfg = SuiteConfig { seed: cli.seed, max_elements: cli.max_elements, max_contract: cli.max_contract };
    let name = which.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let report = suite::run(&suites, &cfg, &format!("verify {name} --seed {}", cli.seed));
    print_report(cli, &report);
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn print_report(cli: &Cli, report: &RunReport) {
    if cli.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
        return;
    }
    println!("{} (seed {})", report.command, report.seed);
    for r in &report.records {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!(
            "{status}  {:<10} {:<36} {:<48} expected {} ({}), got {}  [{} ms]",
            r.suite.name(),
            r.name,
            r.parameters,
            r.expected,
            serde_json::to_value(r.provenance).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
            r.actual,
            r.elapsed_ms
        );
    }
    let failed = report.failures().count();
    println!("{} checks, {} failed", report.records.len(), failed);
}

fn minor_search(cli: &Cli, file: &PathBuf, n: usize, q: u64) -> Outcome {
    let m = text::read_file(file)?;
    let found = has_pg_minor(&m, n, q, cli.max_contract)?;
    if cli.format == Format::Json {
        let w = found.as_ref().map(|w| json!({ "contract": w.contract, "restriction": w.restriction }));
        println!("{}", json!({ "found": found.is_some(), "witness": w }));
    } else {
        match &found {
            Some(w) => {
                println!("found");
                println!("contract: {}", join(&w.contract));
                println!("restriction: {}", join(&w.restriction));
            }
            None => println!("absent"),
        }
    }
    if found.is_some() {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn join(s: &LabelSet) -> String {
    s.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn normalize(cli: &Cli, file: &PathBuf, q: u64, members: &[Label], out: Option<&PathBuf>) -> Outcome {
    let m = text::read_file(file)?;
    let r: LabelSet = if members.is_empty() { m.label_set() } else { members.iter().copied().collect() };
    let (normal, transform, handle) = normalize_spanning_pg(&m, &r, q)?;
    match out {
        Some(path) => {
            text::write_file(&normal, path)?;
            if cli.format == Format::Json {
                let omega = handle.omega().value();
                println!("{}", json!({ "rank": handle.rank(), "members": r.len(), "omega": omega, "transform": transform }));
            } else {
                println!("normalized PG({}, {q}) with {} members", handle.rank() - 1, r.len());
            }
        }
        None => print!("{}", text::to_text(&normal)),
    }
    Ok(())
}
