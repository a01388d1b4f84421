//! Command-line frontend: prediction tables, algebra file operations,
//! Cayley-Hamilton identity checks, matrix-tuple probes, and the quantum
//! sl₂ experiments.
//!
//! Exit codes: 0 all checks pass (or inconclusive with
//! `--allow-inconclusive`), 1 validation or verification failure,
//! 2 usage error, 3 inconclusive trials without the flag.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod render;

#[derive(Parser)]
#[command(
    name = "chtrace",
    version,
    about = "Cayley-Hamilton trace-algebra workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Emit a JSON report instead of text.
    #[arg(long, default_value_t = false)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Degree and multiplicity predictions for a simple type at ℓ.
    Predict {
        /// Compact type name, e.g. A2, D5, E7, G2.
        #[arg(long = "type")]
        type_name: String,
        #[arg(long)]
        ell: u32,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Operations on an algebra file (structure constants + trace).
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Polarized Cayley-Hamilton vanishing on random matrix tuples.
    Chcheck {
        /// Degree n of the multilinear identity CH(x1..xn).
        #[arg(long)]
        n: usize,
        /// Matrix size of the sampled tuples.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Invariant probes of a matrix tuple: Artin semisimplicity, the
    /// discriminant probe, and optional trace-expression evaluation.
    Matinv {
        /// JSON file holding an array of square matrices (rows of
        /// integers, "p/q" strings, or tagged scalars).
        #[arg(long)]
        tuple: std::path::PathBuf,
        /// Trace expression in s-expression syntax to evaluate.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Quantum sl₂ experiments at an odd root of unity.
    Sl2 {
        #[command(subcommand)]
        op: Sl2Op,
    },
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// Verify the trace-algebra axioms and the CH identity.
    Check {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Basis of the trace-form radical.
    Radical {
        #[arg(long)]
        file: std::path::PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Simple-block sizes and multiplicities of the semisimple quotient.
    Blocks {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Reduced trace and the integer multiplier of the given trace.
    Reduce {
        #[arg(long)]
        file: std::path::PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Args, Clone)]
struct TrialOpts {
    #[arg(long)]
    ell: u32,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Parallelize independent trials over this many threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Treat inconclusive (non-generic) trials as acceptable.
    #[arg(long, default_value_t = false)]
    allow_inconclusive: bool,
}

#[derive(Subcommand)]
enum Sl2Op {
    /// Build one cyclic irreducible representation and report it.
    Build {
        #[arg(long)]
        ell: u32,
        /// Central character as "x,z,y"; entries like 1.5, -2i, 0.3+0.4i.
        #[arg(long)]
        chi: String,
        #[arg(long, default_value_t = 0)]
        branch: usize,
        /// Write the representation matrices to this JSON file.
        #[arg(long)]
        out_file: Option<std::path::PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Clebsch-Gordan verification on random generic pairs.
    Cg {
        #[command(flatten)]
        trial: TrialOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Borel branching verification on random generic representations.
    Branch {
        #[command(flatten)]
        trial: TrialOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Rescaled-trace restriction: r-fold sums decompose with
    /// multiplicity r and block spectrum {(ℓ, r)}.
    Rescale {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Treat inconclusive (non-generic) trials as acceptable.
        #[arg(long, default_value_t = false)]
        allow_inconclusive: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Predict {
            type_name,
            ell,
            out,
        } => commands::predict(&type_name, ell, out.json),
        Command::Algebra { op } => match op {
            AlgebraOp::Check {
                file,
                samples,
                seed,
                out,
            } => commands::algebra_check(&file, samples, seed, out.json),
            AlgebraOp::Radical { file, out } => commands::algebra_radical(&file, out.json),
            AlgebraOp::Blocks { file, seed, out } => {
                commands::algebra_blocks(&file, seed, out.json)
            }
            AlgebraOp::Reduce { file, out } => commands::algebra_reduce(&file, out.json),
        },
        Command::Chcheck {
            n,
            size,
            trials,
            seed,
            out,
        } => commands::chcheck(n, size, trials, seed, out.json),
        Command::Matinv {
            tuple,
            expr,
            trials,
            seed,
            out,
        } => commands::matinv(&tuple, expr.as_deref(), trials, seed, out.json),
        Command::Sl2 { op } => match op {
            Sl2Op::Build {
                ell,
                chi,
                branch,
                out_file,
                out,
            } => commands::sl2_build(ell, &chi, branch, out_file.as_deref(), out.json),
            Sl2Op::Cg { trial, out } => commands::sl2_cg(&trial_config(&trial), out.json),
            Sl2Op::Branch { trial, out } => commands::sl2_branch(&trial_config(&trial), out.json),
            Sl2Op::Rescale {
                ell,
                r,
                seed,
                allow_inconclusive,
                out,
            } => commands::sl2_rescale(ell, r, seed, allow_inconclusive, out.json),
        },
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn trial_config(t: &TrialOpts) -> commands::TrialConfig {
    commands::TrialConfig {
        ell: t.ell,
        trials: t.trials,
        seed: t.seed,
        jobs: t.jobs.max(1),
        allow_inconclusive: t.allow_inconclusive,
    }
}
