use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ljreduce::cli::{exit_code, parse_scenario, run, run_pipeline, search, Pipeline, Report, RunError};

#[derive(Parser)]
#[command(name = "ljreduce", version, about = "Exact verification of Poisson and Lie-Jordan reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Args)]
struct Output {
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Override the scenario's check degree.
    #[arg(long)]
    degree: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Schouten bracket and Jacobiator sweep of the scenario's bivector.
    CheckJacobi(ScenarioArgs),
    /// Reduction by symmetry fields.
    ReduceSymmetry(ScenarioArgs),
    /// Reduction by constraints.
    ReduceConstraint(ScenarioArgs),
    /// Constraint reduction with the Dirac bracket.
    Dirac(ScenarioArgs),
    /// Reduction by a submanifold and a subbundle along it.
    ReduceGeneral(ScenarioArgs),
    /// Strong-condition certificate of a generalized scenario.
    Certify(ScenarioArgs),
    /// Reduction of a Hermitian Lie-Jordan algebra.
    QuantumReduce(ScenarioArgs),
    /// Run the pipeline named by the scenario's mode.
    Run(ScenarioArgs),
    /// Random-scenario harness for the open questions.
    Search {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(result: Result<Report, RunError>, output: &Output) -> ExitCode {
    let code = exit_code(&result);
    match result {
        Ok(report) => {
            let text = match output.format {
                Format::Human => report.to_human(),
                Format::Machine => report.to_machine(),
            };
            print!("{}", text);
            if let Some(path) = &output.report {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            }
        }
        Err(e) => eprintln!("error: {}", e),
    }
    ExitCode::from(code as u8)
}

fn scenario_command(args: &ScenarioArgs, pipeline: Option<Pipeline>) -> ExitCode {
    let file = match parse_scenario(&args.scenario) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{}: {}", args.scenario.display(), e);
            return ExitCode::from(2);
        }
    };
    let file = match args.degree {
        Some(0) => {
            eprintln!("error: --degree must be at least 1");
            return ExitCode::from(2);
        }
        Some(d) => file.with_degree(d),
        None => file,
    };
    let result = match pipeline {
        Some(p) => run_pipeline(&file, p),
        None => run(&file),
    };
    emit(result, &args.output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::CheckJacobi(a) => scenario_command(a, Some(Pipeline::CheckJacobi)),
        Command::ReduceSymmetry(a) => scenario_command(a, Some(Pipeline::Symmetry)),
        Command::ReduceConstraint(a) => scenario_command(a, Some(Pipeline::Constraint)),
        Command::Dirac(a) => scenario_command(a, Some(Pipeline::Dirac)),
        Command::ReduceGeneral(a) => scenario_command(a, Some(Pipeline::General)),
        Command::Certify(a) => scenario_command(a, Some(Pipeline::Certify)),
        Command::QuantumReduce(a) => scenario_command(a, Some(Pipeline::Quantum)),
        Command::Run(a) => scenario_command(a, None),
        Command::Search { seed, trials, output } => emit(search(*seed, *trials), output),
    }
}
