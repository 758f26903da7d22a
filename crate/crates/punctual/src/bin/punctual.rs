//! Command-line front end: scenario reproductions, seeded campaigns, the
//! windowed Betti table and the file commands. Every subcommand prints a
//! text report and optionally writes the deterministic JSON projection;
//! the exit code is 0 for PASS, 1 for FAIL with witnesses, 2 for invalid
//! input or configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use punctual::harness::{
    run_campaign, run_classify, run_decompose, run_distance, run_scenario, run_syzygy,
    CampaignConfig, CampaignKind, Report,
};
use punctual::schemes0d::Variety;
use punctual::syzygy::DEFAULT_SAMPLE_BOUND;

#[derive(Parser)]
#[command(name = "punctual", version, about = "exact checks on the Hilbert square and its chords")]
struct Cli {
    /// Write the JSON report here in addition to the text output.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce a fixed worked scenario: 3.2, 3.8 or 5.1.
    Example {
        /// Scenario id.
        id: String,
    },
    /// Run a seeded randomized campaign.
    Campaign(CampaignArgs),
    /// Windowed Betti table of the Pluecker-image coordinate ring.
    Betti(BettiArgs),
    /// Locate the weighted combination of the blocks in an input file.
    Classify(FileArgs),
    /// List every decomposition line of the combination in an input file.
    Decompose(FileArgs),
    /// Distance between the two blocks of an input file.
    Distance(FileArgs),
}

#[derive(Args)]
struct CampaignArgs {
    /// Campaign id: prop39, prop310, prop311, thm31 or thm44.
    #[arg(long)]
    kind: String,
    /// Base variety: p1 or p2.
    #[arg(long)]
    variety: String,
    /// Degree of the line bundle.
    #[arg(long)]
    degree: u32,
    /// Length of the subschemes.
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coordinate height for random points.
    #[arg(long, default_value_t = 20)]
    bound: i64,
    /// Worker threads; 0 uses the global pool.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Args)]
struct BettiArgs {
    /// Base variety: p1 or p2.
    #[arg(long)]
    variety: String,
    /// Degree of the line bundle.
    #[arg(long)]
    degree: u32,
    #[arg(long, default_value_t = 2)]
    pmax: usize,
    #[arg(long, default_value_t = 4)]
    qmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FileArgs {
    /// Input file in the scheme text format.
    #[arg(long)]
    input: PathBuf,
}

fn parse_variety(s: &str) -> Result<Variety, String> {
    match s.trim().to_lowercase().as_str() {
        "p1" => Ok(Variety::P1),
        "p2" => Ok(Variety::P2),
        other => Err(format!("unknown variety {other:?}, expected p1 or p2")),
    }
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Example { id } => run_scenario(id).map_err(|e| e.to_string()),
        Command::Campaign(a) => {
            let kind = CampaignKind::from_id(&a.kind)
                .ok_or_else(|| format!("unknown campaign kind {:?}", a.kind))?;
            let cfg = CampaignConfig {
                variety: parse_variety(&a.variety)?,
                degree: a.degree,
                d: a.d,
                trials: a.trials,
                seed: a.seed,
                bound: a.bound,
                workers: a.workers,
            };
            run_campaign(kind, &cfg).map_err(|e| e.to_string())
        }
        Command::Betti(a) => {
            let variety = parse_variety(&a.variety)?;
            run_syzygy(variety, a.degree, a.pmax, a.qmax, a.seed, DEFAULT_SAMPLE_BOUND)
                .map_err(|e| e.to_string())
        }
        Command::Classify(a) => run_classify(&read_input(&a.input)?).map_err(|e| e.to_string()),
        Command::Decompose(a) => run_decompose(&read_input(&a.input)?).map_err(|e| e.to_string()),
        Command::Distance(a) => run_distance(&read_input(&a.input)?).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.render());
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.is_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
