use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use perverx::casebook::{case_ids, run_adhoc, search_case, show_case, verify_case, ShowWhat};
use perverx::report::{Format, Report};

#[derive(Parser)]
#[command(name = "perverx", version, about = "Perverse equivalences for small group algebras")]
struct Cli {
    /// Seed for randomized algorithms.
    #[arg(long, global = true, env = "PERVERX_SEED", default_value_t = 0)]
    seed: u64,
    /// Output format: txt, md or tsv.
    #[arg(long, global = true, default_value = "txt")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a shipped case (or `all`) against its recorded tables.
    Verify { case: String },
    /// Search perversities up to a bound that match a case's Green correspondents.
    Search {
        case: String,
        #[arg(long)]
        bound: u32,
        /// Keep only perversities with the recorded parity.
        #[arg(long)]
        parity: bool,
    },
    /// Run the algorithm on a local group file.
    Run {
        #[arg(long)]
        group: PathBuf,
        /// Perversity, comma separated, one value per simple.
        #[arg(long)]
        pi: String,
        /// Twist per class of order-p subgroups, comma separated.
        #[arg(long)]
        eta: Option<String>,
    },
    /// Print simples, projectives, relatively projective modules or Green correspondents.
    Show { case: String, what: ShowWhat },
    /// List shipped cases.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports: perverx::error::Result<Vec<Report>> = match &cli.command {
        Command::Verify { case } if case == "all" => case_ids().iter().map(|id| verify_case(id, cli.seed)).collect(),
        Command::Verify { case } => verify_case(case, cli.seed).map(|r| vec![r]),
        Command::Search { case, bound, parity } => search_case(case, *bound, *parity, cli.seed).map(|r| vec![r]),
        Command::Run { group, pi, eta } => std::fs::read_to_string(group)
            .map_err(|e| perverx::error::Error::Parse(format!("{}: {e}", group.display())))
            .and_then(|text| run_adhoc(&text, pi, eta.as_deref(), cli.seed))
            .map(|r| vec![r]),
        Command::Show { case, what } => show_case(case, *what, cli.seed).map(|r| vec![r]),
        Command::List => {
            for id in case_ids() {
                println!("{id}");
            }
            return ExitCode::SUCCESS;
        }
    };
    match reports {
        Ok(reports) => {
            for r in &reports {
                println!("{}", r.emit(cli.format));
            }
            if reports.iter().all(Report::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
