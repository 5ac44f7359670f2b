use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use focusray_core::{level_for_score, run_scenario_files, score_ssq_files, Error};

const EXIT_PARSE: u8 = 3;
const EXIT_VALIDATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "focusray",
    version,
    about = "Dynamic focus replay, comfort analysis and SSQ scoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a trajectory through a scene and write the timeline and comfort report.
    Run {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Skip focus selection; the comfort report is still produced.
        #[arg(long)]
        no_focus: bool,
    },
    /// Score a profile plus three questionnaires (pre-exposure, after session one, after session two).
    Ssq {
        #[arg(long)]
        q1: PathBuf,
        #[arg(long)]
        q2: PathBuf,
        #[arg(long)]
        q3: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the game level (1-6) for a score.
    Level { score: u64 },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::Io { .. } => EXIT_PARSE,
        Error::Validation { .. } | Error::Geometry(_) | Error::InvalidArgument(_) => EXIT_VALIDATION,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            scene,
            trajectory,
            config,
            out,
            no_focus,
        } => run_scenario_files(&scene, &trajectory, &config, &out, !no_focus).map(|o| {
            println!(
                "wrote {} ({} ticks, {} comfort findings)",
                out.display(),
                o.timeline.len(),
                o.comfort.findings.len()
            );
        }),
        Command::Ssq {
            q1,
            q2,
            q3,
            profile,
            out,
        } => score_ssq_files(&q1, &q2, &q3, &profile, &out).map(|_| println!("wrote {}", out.display())),
        Command::Level { score } => {
            println!("{}", level_for_score(score));
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
