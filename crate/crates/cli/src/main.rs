//! `pclab`: generate formula families, build and check refutations, apply
//! proof transformations, run degree-lab suites and scaling experiments.
//!
//! Exit codes: 0 success or valid proof, 1 invalid proof or failed check,
//! 2 usage error, 3 scale limit exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pclab::algebra::{Basis, Field};

mod commands;
mod experiment;
mod files;

/// Largest `n` accepted by `gen`, `refute` and `experiment`.
pub const MAX_N: usize = 128;
/// Largest `ell` accepted by `gen`, `refute` and `experiment`.
pub const MAX_ELL: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "pclab", version, about = "Polynomial calculus laboratory for ordering principles")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every command. Each flag can also be set through the
/// environment variable `PCLAB_<FLAG>`.
#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Formula size; positional arguments take precedence.
    #[arg(long = "n", value_name = "N", global = true, env = "PCLAB_N")]
    pub n_flag: Option<usize>,
    /// Gadget width; positional arguments take precedence.
    #[arg(long = "ell", value_name = "ELL", global = true, env = "PCLAB_ELL")]
    pub ell_flag: Option<usize>,
    #[arg(long, global = true, env = "PCLAB_BASIS", default_value = "boolean")]
    pub basis: Basis,
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, env = "PCLAB_FIELD", default_value_t = Field::DEFAULT_PRIME)]
    pub field: u64,
    /// Master seed for every random stream.
    #[arg(long, global = true, env = "PCLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, global = true, env = "PCLAB_OUT", default_value = ".")]
    pub out: PathBuf,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "PCLAB_JOBS")]
    pub jobs: Option<usize>,
    /// Leave wall-clock columns out of all outputs.
    #[arg(long, global = true, env = "PCLAB_NO_TIMING")]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a formula as DIMACS (with a `.map` sidecar) and/or as polynomial axioms.
    Gen {
        family: GenFamily,
        n: Option<usize>,
        ell: Option<usize>,
        /// Also write the polynomial translation in `--basis`.
        #[arg(long)]
        axioms: bool,
    },
    /// Build a refutation, check it and write it with its formula and a manifest.
    Refute {
        family: RefuteFamily,
        n: Option<usize>,
        ell: Option<usize>,
        /// Print the proof text on stdout (the report goes to stderr).
        #[arg(long)]
        print: bool,
    },
    /// Check a proof file (`-` reads stdin). Exit 0 iff it is a valid
    /// refutation (a valid derivation with `--derivation`).
    Check {
        proof: PathBuf,
        /// Axiom or CNF file; defaults to the path in the proof header.
        #[arg(long)]
        axioms: Option<PathBuf>,
        /// Accept valid derivations that do not end in a refutation.
        #[arg(long)]
        derivation: bool,
    },
    /// Write a seeded random derivation over an axiom file.
    Sample {
        axioms: PathBuf,
        /// Rule applications after the axiom lines.
        #[arg(long, default_value_t = 30)]
        steps: usize,
    },
    /// Transform a proof; the output is re-checked before it is written.
    Transform {
        #[command(subcommand)]
        kind: Transform,
    },
    /// Run the degree-lab suites at one instance size.
    VerifyLemmas {
        n: Option<usize>,
        ell: Option<usize>,
        #[arg(default_value = "all")]
        which: Lemma,
        /// Degree bound of the exhaustive term sweeps.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Samples for the operator condition check.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Random pairs per span in the residue property suite.
        #[arg(long, default_value_t = 200)]
        pairs: usize,
    },
    /// Run a family over a parameter grid such as `n=4..12 ell=1,2`.
    Experiment { kind: ExperimentKind, grid: Vec<String> },
}

#[derive(Subcommand, Debug)]
pub enum Transform {
    /// Split at a variable.
    Split { proof: PathBuf, var: String },
    /// Bound degree in terms of quadratic degree.
    Qdeg2deg { proof: PathBuf },
    /// Apply a restriction file of `set <var> = true|false` lines.
    Restrict { proof: PathBuf, restriction: PathBuf },
    /// Cluster gadget copies in pairs under a seeded random pairing.
    Cluster { proof: PathBuf },
    /// Simulate a resolution proof in PCR.
    Res2pcr { proof: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenFamily {
    Lop,
    Bop,
    BopLifted,
    BopLiftedDiagonal,
    TseitinCycle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefuteFamily {
    Lop,
    Bop,
    BopLifted,
    PcrUpper,
    Tseitin,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    All,
    Rdrop,
    Rdrop2,
    Rtech,
    Rop,
    Properties,
    Demo,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    PcrUpper,
    Lop,
    Lifted,
    Tseitin,
}

/// Command outcome that maps onto an exit code.
#[derive(Debug)]
pub enum Failure {
    /// A proof or check came out invalid (exit 1).
    Invalid(String),
    /// Bad arguments (exit 2).
    Usage(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Invalid(m) | Failure::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
        };
    }
    match err.downcast_ref::<pclab::Error>() {
        Some(pclab::Error::ScaleLimit { .. }) => 3,
        Some(
            pclab::Error::InvalidParameter(_)
            | pclab::Error::BadModulus(_)
            | pclab::Error::BasisMismatch { .. }
            | pclab::Error::FieldMismatch { .. }
            | pclab::Error::Precondition(_)
            | pclab::Error::ForeignVariable(_),
        ) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let g = &cli.global;
    match cli.command {
        Command::Gen { family, n, ell, axioms } => commands::gen(g, family, n, ell, axioms),
        Command::Refute { family, n, ell, print } => commands::refute(g, family, n, ell, print),
        Command::Check {
            proof,
            axioms,
            derivation,
        } => commands::check(g, &proof, axioms.as_deref(), derivation),
        Command::Sample { axioms, steps } => commands::sample(g, &axioms, steps),
        Command::Transform { kind } => commands::transform(g, &kind),
        Command::VerifyLemmas {
            n,
            ell,
            which,
            max_degree,
            samples,
            pairs,
        } => commands::verify_lemmas(g, n, ell, which, max_degree, samples, pairs),
        Command::Experiment { kind, grid } => experiment::run(g, kind, &grid),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
