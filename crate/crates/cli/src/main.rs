use clap::{Parser, Subcommand, ValueEnum};
use cycloprime::baselines::{lucas_lehmer, pepin};
use cycloprime::{Outcome, TestParams};
use cycloprime_cli::report::{baseline_report, csv_table, engine_report, human_table, json_table};
use cycloprime_cli::runner::{self, RunMode};
use std::path::PathBuf;
use std::process::ExitCode;

/// Tests above this n are refused unless --force is given; the iteration
/// count and operand sizes grow fast enough to stall a desktop machine.
const MAX_UNFORCED_N: u32 = 16;

#[derive(Parser)]
#[command(
    name = "cycloprime",
    version,
    about = "Primality proving for numbers (2p)^(2^n)+1 with odd prime p <= 19",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    General,
    Recurrence,
}

impl From<ModeArg> for RunMode {
    fn from(m: ModeArg) -> RunMode {
        match m {
            ModeArg::Auto => RunMode::Auto,
            ModeArg::General => RunMode::General,
            ModeArg::Recurrence => RunMode::Recurrence,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineKind {
    LucasLehmer,
    Pepin,
}

#[derive(Subcommand)]
enum Command {
    /// Test a single number (2p)^(2^n)+1.
    /// Exit code: 0 prime, 1 composite, 2 inapplicable, 3 error.
    Test {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Also print the full JSON report to stdout.
        #[arg(long)]
        json: bool,
        /// Write the report to a file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Format of the --report file.
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Allow n beyond the desk-scale guard.
        #[arg(long)]
        force: bool,
    },
    /// Test every n in a range and produce a result table.
    Search {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Write the table to a file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Worker threads for independent n values.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        force: bool,
    },
    /// Cross-check the engine against the probable-prime oracle (and the
    /// recurrence path against the general one for p in {3, 5}).
    /// Exit code: 0 all agree, 1 any mismatch, 3 error.
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Seed for the oracle's randomized rounds.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        force: bool,
    },
    /// Run a classical reference test: lucas-lehmer `p` or pepin `n`.
    Baseline {
        #[arg(value_enum)]
        kind: BaselineKind,
        index: u32,
        /// Also print the full JSON report to stdout.
        #[arg(long)]
        json: bool,
    },
}

fn exit_for(outcome: Outcome) -> ExitCode {
    match outcome {
        Outcome::Prime => ExitCode::from(0),
        Outcome::Composite => ExitCode::from(1),
        Outcome::Inapplicable => ExitCode::from(2),
    }
}

fn guard_scale(n: u32, force: bool) -> Result<(), String> {
    if n > MAX_UNFORCED_N && !force {
        return Err(format!(
            "n = {n} exceeds the desk-scale guard ({MAX_UNFORCED_N}); pass --force to run anyway"
        ));
    }
    Ok(())
}

/// Digit count of 2^bits (same as 2^bits - 1 for every bits >= 1).
fn pow2_digits(bits: u64) -> u64 {
    (bits as f64 * std::f64::consts::LOG10_2) as u64 + 1
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Test { p, n, mode, json, report, format, force } => {
            guard_scale(n, force)?;
            let params = TestParams::new(p, n).map_err(|e| e.to_string())?;
            let verdict = runner::run_engine(&params, mode.into()).map_err(|e| e.to_string())?;
            let rep = engine_report(&params, &verdict);
            println!("{}", rep.human_line());
            if json {
                println!("{}", rep.to_json());
            }
            if let Some(path) = report {
                let body = match format {
                    FormatArg::Json => rep.to_json(),
                    FormatArg::Csv => csv_table(std::slice::from_ref(&rep)),
                };
                std::fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(exit_for(verdict.outcome))
        }
        Command::Search { p, n_min, n_max, mode, report, format, workers, force } => {
            if n_min > n_max {
                return Err(format!("empty range: n_min = {n_min} > n_max = {n_max}"));
            }
            guard_scale(n_max, force)?;
            let rows = runner::search(p, n_min, n_max, mode.into(), workers)
                .map_err(|e| e.to_string())?;
            let (params_list, verdicts): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
            let reports: Vec<_> = params_list
                .iter()
                .zip(&verdicts)
                .map(|(params, verdict)| engine_report(params, verdict))
                .collect();
            print!("{}", human_table(&params_list, &reports));
            if let Some(path) = report {
                let body = match format {
                    FormatArg::Json => json_table(&reports),
                    FormatArg::Csv => csv_table(&reports),
                };
                std::fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(ExitCode::from(0))
        }
        Command::Verify { p, n_min, n_max, workers, seed, force } => {
            if n_min > n_max {
                return Err(format!("empty range: n_min = {n_min} > n_max = {n_max}"));
            }
            guard_scale(n_max, force)?;
            let rows =
                runner::verify(p, n_min, n_max, workers, seed).map_err(|e| e.to_string())?;
            let mut mismatches = 0usize;
            for row in &rows {
                let modes = match row.modes_agree {
                    Some(true) => ", modes agree",
                    Some(false) => ", MODES DISAGREE",
                    None => "",
                };
                let status = if row.agrees() { "ok" } else { "MISMATCH" };
                println!(
                    "n={:<3} engine={:<12} oracle={}{} ... {} ({:.3} s)",
                    row.n,
                    row.engine.as_str(),
                    if row.oracle_probably_prime { "probably-prime" } else { "composite" },
                    modes,
                    status,
                    row.elapsed_s
                );
                if !row.agrees() {
                    mismatches += 1;
                }
            }
            println!(
                "{} of {} values agree",
                rows.len() - mismatches,
                rows.len()
            );
            Ok(ExitCode::from(u8::from(mismatches > 0)))
        }
        Command::Baseline { kind, index, json } => {
            let (verdict, kind_name, digits) = match kind {
                BaselineKind::LucasLehmer => {
                    let v = lucas_lehmer(index).map_err(|e| e.to_string())?;
                    (v, "lucas-lehmer", pow2_digits(index as u64))
                }
                BaselineKind::Pepin => {
                    let v = pepin(index).map_err(|e| e.to_string())?;
                    (v, "pepin", pow2_digits(1u64 << index))
                }
            };
            let rep = baseline_report(kind_name, index, digits, &verdict);
            println!("{}", rep.human_line());
            if json {
                println!("{}", rep.to_json());
            }
            Ok(exit_for(verdict.outcome))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit codes collide with the verdict codes; usage
            // problems are reported as 3 like every other error
            let rendered = e.render();
            if e.use_stderr() {
                eprint!("{rendered}");
                return ExitCode::from(3);
            }
            print!("{rendered}");
            return ExitCode::from(0);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
