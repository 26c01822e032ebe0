use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pik_core::catalytic::{catalysis_suite, phi_to};
use pik_core::decide::{decide_approx, eq, eq_up_to_phase};
use pik_core::qft::{build_qft, qft_stats};
use pik_core::semantics::{check_axioms, check_coherence};
use pik_core::staton::{completeness_suite, staton_suite};
use pik_core::synth::synth;
use pik_core::syntax::{parse, pretty};
use pik_core::tensor::sigma_tensor;
use pik_core::term::{term_conj, term_dagger};
use pik_core::{eval, Channel, Exec, ExactMatrix, Precision, Report, Term};

#[derive(Parser)]
#[command(name = "pik", version, about = "Exact evaluation and equality checking for reversible quantum programs")]
struct Cli {
    /// Precision level: programs may use the 2^k-th root of unity.
    #[arg(short = 'k', long = "k", global = true, env = "PIK_K", default_value_t = 2)]
    k: u32,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Axioms,
    Coherence,
    Catalysis,
    Staton,
    Completeness,
}

#[derive(clap::Args)]
struct SuiteOpts {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

impl SuiteOpts {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the matrix a program denotes.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exit 0 if two programs are equal, 1 if not.
    Eq {
        a: PathBuf,
        b: PathBuf,
        /// Allow a global phase and print its exponent.
        #[arg(long, conflicts_with = "approx")]
        phase: bool,
        #[arg(long)]
        approx: bool,
    },
    /// Lower a program written at level FROM_K down to level k.
    Embed {
        file: PathBuf,
        #[arg(long = "from-k")]
        from_k: u32,
    },
    /// Print the conjugate program (zeta to -zeta).
    Conj { file: PathBuf },
    /// Print the inverse program.
    Dagger { file: PathBuf },
    /// Print the tensor symmetry m (x) n -> n (x) m built from sums.
    Sigma { m: usize, n: usize },
    /// Synthesise a program for a unitary over Z[1/2, i] given as JSON.
    Synth {
        file: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Quantum Fourier transform on n qubits.
    Qft {
        #[arg(short = 'n')]
        n: u32,
        #[arg(long, conflicts_with = "emit")]
        stats: bool,
        #[arg(long)]
        emit: bool,
    },
    /// Channel-level commands.
    Channel {
        #[command(subcommand)]
        cmd: ChannelCmd,
    },
    /// Run a randomised check suite and print a JSON report.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        #[command(flatten)]
        opts: SuiteOpts,
    },
}

#[derive(Subcommand)]
enum ChannelCmd {
    /// Exit 0 if two unitary programs induce the same channel, 1 if not.
    Eq { a: PathBuf, b: PathBuf },
    Staton {
        #[command(flatten)]
        opts: SuiteOpts,
    },
}

fn load(path: &Path, k: Precision) -> Result<Term> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let t = parse(&src, k).with_context(|| format!("in {}", path.display()))?;
    t.well_formed().with_context(|| format!("in {}", path.display()))?;
    Ok(t)
}

fn load_pair(a: &Path, b: &Path, k: Precision) -> Result<(Term, Term)> {
    let (ta, tb) = (load(a, k)?, load(b, k)?);
    let (da, db) = (ta.dom()?, tb.dom()?);
    if da != db {
        bail!("programs act on different dimensions ({da} and {db})");
    }
    Ok((ta, tb))
}

fn verdict(equal: bool) -> ExitCode {
    println!("{}", if equal { "equal" } else { "not equal" });
    ExitCode::from(if equal { 0 } else { 1 })
}

fn tidy(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

fn print_text(m: &ExactMatrix) {
    println!("# approximate (f64) view of an exact {}x{} matrix at k = {}", m.rows(), m.cols(), m.k().get());
    let cells: Vec<Vec<String>> = m
        .to_float()
        .into_iter()
        .map(|row| row.into_iter().map(|(re, im)| format!("{:.6}{:+.6}i", tidy(re), tidy(im))).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        println!("{}", line.join("  "));
    }
}

fn report(r: Report) -> ExitCode {
    println!("{}", r.to_json());
    ExitCode::from(if r.passed() { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let k = Precision::new(cli.k)?;
    Ok(match cli.cmd {
        Cmd::Eval { file, format } => {
            let m = eval(&load(&file, k)?, k)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&m)?),
                Format::Text => print_text(&m),
            }
            ExitCode::SUCCESS
        }
        Cmd::Eq { a, b, phase, approx } => {
            let (ta, tb) = load_pair(&a, &b, k)?;
            if phase {
                match eq_up_to_phase(&ta, &tb, k)? {
                    Some(w) => {
                        println!("equal up to phase zeta^{}", w.exponent);
                        ExitCode::SUCCESS
                    }
                    None => verdict(false),
                }
            } else if approx {
                verdict(decide_approx(&ta, &tb, k)?)
            } else {
                verdict(eq(&ta, &tb, k)?)
            }
        }
        Cmd::Embed { file, from_k } => {
            let from = Precision::new(from_k)?;
            if from.get() <= k.get() {
                bail!("--from-k ({from_k}) must exceed the target level k ({})", k.get());
            }
            println!("{}", pretty(&phi_to(&load(&file, from)?, from, k)?));
            ExitCode::SUCCESS
        }
        Cmd::Conj { file } => {
            println!("{}", pretty(&term_conj(&load(&file, k)?, k)?));
            ExitCode::SUCCESS
        }
        Cmd::Dagger { file } => {
            println!("{}", pretty(&term_dagger(&load(&file, k)?, k)?));
            ExitCode::SUCCESS
        }
        Cmd::Sigma { m, n } => {
            if m == 0 || n == 0 {
                bail!("sigma needs positive dimensions");
            }
            println!("{}", pretty(&sigma_tensor(m, n)));
            ExitCode::SUCCESS
        }
        Cmd::Synth { file, stats } => {
            let src = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let m: ExactMatrix = serde_json::from_str(&src).with_context(|| format!("in {}", file.display()))?;
            let res = synth(&m)?;
            if stats {
                println!("{}", serde_json::to_string(&res)?);
            } else {
                println!("{}", pretty(&res.term));
            }
            ExitCode::SUCCESS
        }
        Cmd::Qft { n, stats, emit: _ } => {
            if stats {
                println!("{}", serde_json::to_string(&qft_stats(n, k)?)?);
            } else {
                println!("{}", pretty(&build_qft(n, k)?));
            }
            ExitCode::SUCCESS
        }
        Cmd::Channel { cmd: ChannelCmd::Eq { a, b } } => {
            let (ta, tb) = load_pair(&a, &b, k)?;
            verdict(Channel::chan_eq(&Channel::of_unitary(&ta, k)?, &Channel::of_unitary(&tb, k)?)?)
        }
        Cmd::Channel { cmd: ChannelCmd::Staton { opts } } => {
            report(staton_suite(k, opts.trials, opts.seed, opts.exec())?)
        }
        Cmd::Suite { name, opts } => {
            let exec = opts.exec();
            report(match name {
                SuiteName::Axioms => check_axioms(k)?,
                SuiteName::Coherence => check_coherence(k, opts.trials, opts.seed, exec)?,
                SuiteName::Catalysis => catalysis_suite(k, opts.trials, opts.seed, 8, exec)?,
                SuiteName::Staton => staton_suite(k, opts.trials, opts.seed, exec)?,
                SuiteName::Completeness => completeness_suite(k, opts.trials, opts.seed, exec)?,
            })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
