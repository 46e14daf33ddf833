use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nzc::cli::commands::{cmd_aut, cmd_build, cmd_dist, cmd_labeling, cmd_orbits, cmd_twins};
use nzc::cli::{build_graph, exit_code, verify, Engine, FileConfig, Format, InclusiveRange, RunConfig};
use nzc::distinguishing::NearTopRule;
use nzc::Error;

/// Non-zero component graphs of finite vector spaces: automorphisms,
/// distinguishing numbers and claim verification.
#[derive(Parser)]
#[command(name = "nzc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: json, dot or table.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest vertex count that will be built.
    #[arg(long, global = true)]
    vertex_cap: Option<usize>,
    /// Largest vertex count given to the search engine.
    #[arg(long, global = true)]
    oracle_cap: Option<usize>,
    /// Largest vertex count for the exact distinguishing search.
    #[arg(long, global = true)]
    exact_cap: Option<usize>,
    /// Largest group listed element by element.
    #[arg(long, global = true)]
    element_cap: Option<usize>,
    /// Random pairs for the sampled homomorphism check.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write output to FILE (for verify: the JSON certificate).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Dims {
    /// Dimension of the space.
    #[arg(short)]
    n: Option<usize>,
    /// Field size.
    #[arg(short)]
    q: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Build G(V) and print it.
    Build(Dims),
    /// Automorphism group order and orbits.
    Aut {
        #[command(flatten)]
        dims: Dims,
        /// structural, oracle or both.
        #[arg(long)]
        engine: Option<Engine>,
    },
    /// Orbit partition of the automorphism group.
    Orbits(Dims),
    /// Distinguishing number with bounds and witness.
    Dist(Dims),
    /// The constructive distinguishing labeling.
    Labeling {
        #[command(flatten)]
        dims: Dims,
        /// How T_{n-1} is colored when q = 2: literal or complement.
        #[arg(long, default_value = "literal", value_parser = parse_rule)]
        rule: NearTopRule,
    },
    /// Run every claim check over ranges of n and q, e.g. `-n 3..8 -q 2`.
    Verify {
        #[arg(short)]
        n: Option<InclusiveRange>,
        #[arg(short)]
        q: Option<InclusiveRange>,
    },
    /// Twin sets (vertices with equal skeletons).
    Twins(Dims),
}

fn parse_rule(s: &str) -> Result<NearTopRule, String> {
    match s {
        "literal" => Ok(NearTopRule::Literal),
        "complement" => Ok(NearTopRule::Complement),
        other => Err(format!("unknown rule `{other}`")),
    }
}

fn settings(cli: &Cli, file: &FileConfig) -> nzc::Result<RunConfig> {
    let base = RunConfig::from_file(file)?;
    let cfg = RunConfig {
        format: cli.format.unwrap_or(base.format),
        seed: cli.seed.unwrap_or(base.seed),
        vertex_cap: cli.vertex_cap.unwrap_or(base.vertex_cap),
        oracle_cap: cli.oracle_cap.unwrap_or(base.oracle_cap),
        exact_cap: cli.exact_cap.unwrap_or(base.exact_cap),
        element_cap: cli.element_cap.unwrap_or(base.element_cap),
        samples: cli.samples.unwrap_or(base.samples),
        node_limit: base.node_limit,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn dims(d: &Dims, file: &FileConfig) -> nzc::Result<(usize, u32)> {
    let n = d.n.or(file.n).ok_or_else(|| Error::InvalidParams("missing -n".into()))?;
    let q = d.q.or(file.q).ok_or_else(|| Error::InvalidParams("missing -q".into()))?;
    Ok((n, q))
}

fn emit(text: &str, out: Option<&PathBuf>) -> nzc::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> nzc::Result<u8> {
    let file = FileConfig::from_env()?;
    let cfg = settings(cli, &file)?;
    let text = match &cli.command {
        Command::Build(d) => {
            let (n, q) = dims(d, &file)?;
            cmd_build(&build_graph(n, q, &cfg)?, cfg.format)
        }
        Command::Aut { dims: d, engine } => {
            let (n, q) = dims(d, &file)?;
            let engine = engine.or(file.engine);
            if q != 2 && matches!(engine, Some(Engine::Structural | Engine::Both)) {
                return Err(Error::UnsupportedQ { q });
            }
            cmd_aut(&build_graph(n, q, &cfg)?, engine, &cfg)?
        }
        Command::Orbits(d) => {
            let (n, q) = dims(d, &file)?;
            cmd_orbits(&build_graph(n, q, &cfg)?, &cfg)?
        }
        Command::Dist(d) => {
            let (n, q) = dims(d, &file)?;
            cmd_dist(&build_graph(n, q, &cfg)?, &cfg)?
        }
        Command::Labeling { dims: d, rule } => {
            let (n, q) = dims(d, &file)?;
            cmd_labeling(&build_graph(n, q, &cfg)?, *rule, &cfg)?
        }
        Command::Twins(d) => {
            let (n, q) = dims(d, &file)?;
            cmd_twins(&build_graph(n, q, &cfg)?, &cfg)?
        }
        Command::Verify { n, q } => {
            let ns = n
                .or(file.n.map(|v| InclusiveRange { start: v as u64, end: v as u64 }))
                .unwrap_or(InclusiveRange { start: 3, end: 8 });
            let qs = q
                .or(file.q.map(|v| InclusiveRange { start: v as u64, end: v as u64 }))
                .unwrap_or(InclusiveRange { start: 2, end: 2 });
            let mut pairs = Vec::new();
            for q in qs.iter() {
                for n in ns.iter() {
                    let n = usize::try_from(n).map_err(|_| Error::InvalidParams("n too large".into()))?;
                    let q = u32::try_from(q).map_err(|_| Error::InvalidParams("q too large".into()))?;
                    pairs.push((n, q));
                }
            }
            let cert = verify(&pairs, &cfg)?;
            if let Some(path) = &cli.out {
                emit(&cert.to_json(), Some(path))?;
            }
            let text = match cfg.format {
                Format::Json => cert.to_json() + "\n",
                _ => cert.to_table(),
            };
            print!("{text}");
            return Ok(if cert.passed { 0 } else { 1 });
        }
    };
    emit(&text, cli.out.as_ref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("nzc: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
