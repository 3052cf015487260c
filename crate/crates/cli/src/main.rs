use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qreflect::{
    compare_algorithms, parse_dimacs, run_experiment, Algorithm, Error, ExperimentConfig,
    OracleSource, OracleSpec, OutputFormat, ScheduleKind,
};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "qreflect",
    version,
    about = "Grover search and reflection-schedule experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one algorithm and emit its report (JSON) or trace table (CSV).
    Run(ExperimentArgs),
    /// Tabulate classical scan, Grover and doubling on the same oracle.
    Compare(ExperimentArgs),
    /// Validate a DIMACS file and report how many models it has.
    ParseCnf(ParseCnfArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("oracle").required(true).args(["omega", "cnf"])))]
struct ExperimentArgs {
    /// Register width in qubits.
    #[arg(long)]
    n: Option<usize>,
    /// Marked string as 0b…, 0x… or decimal.
    #[arg(long)]
    omega: Option<String>,
    /// DIMACS CNF file defining the oracle.
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Grover)]
    algorithm: AlgorithmArg,
    #[arg(long, value_enum, default_value_t = ScheduleArg::Binary)]
    schedule: ScheduleArg,
    /// Grover iterations (default: optimal count).
    #[arg(long)]
    steps: Option<u64>,
    /// Measurement shots on the final state.
    #[arg(long, default_value_t = 0)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ParseCnfArgs {
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    Grover,
    Doubling,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScheduleArg {
    Power2,
    Binary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl ExperimentArgs {
    fn to_config(&self) -> ExperimentConfig {
        let oracle_source = match (&self.omega, &self.cnf) {
            (Some(literal), _) => OracleSource::Marked(literal.clone()),
            (None, Some(path)) => OracleSource::Cnf(path.clone()),
            (None, None) => unreachable!("clap enforces the oracle group"),
        };
        ExperimentConfig {
            n: self.n,
            oracle_source,
            algorithm: match self.algorithm {
                AlgorithmArg::Grover => Algorithm::Grover,
                AlgorithmArg::Doubling => Algorithm::Doubling,
            },
            schedule: match self.schedule {
                ScheduleArg::Power2 => ScheduleKind::Power2,
                ScheduleArg::Binary => ScheduleKind::Binary,
            },
            steps: self.steps,
            shots: self.shots,
            seed: self.seed,
            format: match self.format {
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Csv => OutputFormat::Csv,
            },
            output: self.output.clone(),
        }
    }
}

#[derive(Serialize)]
struct CnfSummary {
    num_vars: usize,
    num_clauses: usize,
    solution_count: usize,
    /// At most the first 16 models, as bit strings x1…xn.
    solutions: Vec<String>,
}

enum Failure {
    Refused(Error),
    Usage(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::InvalidWidth { .. }
            | Error::IndexOutOfRange { .. } => Failure::Usage(e),
            other => Failure::Refused(other),
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run(args) => {
            let config = args.to_config();
            let report = run_experiment(&config)?;
            let text = match config.format {
                OutputFormat::Json => report.to_json()?,
                OutputFormat::Csv => report.trace_csv()?,
            };
            emit(&text, config.output.as_ref())?;
        }
        Command::Compare(args) => {
            let config = args.to_config();
            let table = compare_algorithms(&config)?;
            let text = match config.format {
                OutputFormat::Json => table.to_json()?,
                OutputFormat::Csv => table.to_csv()?,
            };
            emit(&text, config.output.as_ref())?;
        }
        Command::ParseCnf(args) => {
            let text = std::fs::read_to_string(&args.cnf)
                .map_err(|e| Error::Io(format!("{}: {e}", args.cnf.display())))?;
            let formula = parse_dimacs(&text)?;
            let num_clauses = formula.clauses().len();
            let solutions = OracleSpec::cnf(formula.clone())?.brute_force_solutions()?;
            let summary = CnfSummary {
                num_vars: formula.num_vars(),
                num_clauses,
                solution_count: solutions.len(),
                solutions: solutions
                    .iter()
                    .take(16)
                    .map(|s| s.to_bit_string())
                    .collect(),
            };
            let text = match args.format {
                FormatArg::Json => serde_json::to_string_pretty(&summary).map_err(Error::from)?,
                FormatArg::Csv => format!(
                    "num_vars,num_clauses,solution_count\n{},{},{}\n",
                    summary.num_vars, summary.num_clauses, summary.solution_count
                ),
            };
            emit(&text, args.output.as_ref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refused(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
