//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ldoi",
    version,
    about = "Analyses of bipartite operators invariant under local diagonal unitary or orthogonal conjugation"
)]
pub struct Cli {
    /// Write a JSON run manifest (command line, seeds, version, wall time,
    /// output digest) to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// Triple JSON read from a file, or from stdin when omitted or `-`.
#[derive(Debug, Args)]
pub struct TripleInput {
    #[arg(value_name = "TRIPLE_JSON", default_value = "-")]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dense d²×d² operator of a triple.
    Embed {
        #[command(flatten)]
        triple: TripleInput,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Triple of a dense operator given as CSV (interleaved re,im columns).
    Extract {
        #[arg(value_name = "CSV", default_value = "-")]
        input: PathBuf,
    },
    /// Check the shared diagonal and the class pattern; exits 2 on violations.
    Validate {
        #[command(flatten)]
        triple: TripleInput,
        #[arg(long, value_enum, default_value_t = ClassArg::Ldoi)]
        class: ClassArg,
    },
    /// Random unitary triple of a class through its block parametrization.
    Sample {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_enum, default_value_t = FieldArg::C)]
        field: FieldArg,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Unitarity report of a triple.
    Check {
        #[command(flatten)]
        triple: TripleInput,
        #[arg(long, value_enum, default_value_t = FieldArg::C)]
        field: FieldArg,
    },
    /// Apply one of the four LDOI-preserving involutions.
    Symmetry {
        #[command(flatten)]
        triple: TripleInput,
        #[arg(long, value_enum)]
        op: SymmetryArg,
    },
    /// Operator product `left · right`, or the DOC composition with `--compose`.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        compose: bool,
    },
    /// Dual and PT unitarity.
    #[command(subcommand)]
    Dual(DualCommand),
    /// Operator Schmidt rank.
    #[command(subcommand)]
    Schmidt(SchmidtCommand),
    /// Operator entanglement and entangling power.
    #[command(subcommand)]
    Entangle(EntangleCommand),
    /// The Hadamardness functional on sign matrices.
    #[command(subcommand)]
    Hadamardness(HadamardnessCommand),
    /// Perfect discrimination and the local numerical range.
    #[command(subcommand)]
    Discriminate(DiscriminateCommand),
    /// Run one analysis over a JSON Lines stream of triples.
    Batch {
        #[arg(long, value_enum)]
        op: BatchOp,
        #[arg(value_name = "JSONL", default_value = "-")]
        input: PathBuf,
    },
    /// Re-run a reproduction suite and write a pass/fail report.
    Reproduce {
        #[arg(value_enum)]
        suite: Suite,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Required by the randomized suites (schmidt-coverage, perfect-none).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DualCommand {
    /// Build a dual unitary triple from a constructive family.
    Make {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        dim: usize,
        /// Pair phase ω as `re,im` (phase-projection only).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        omega: Option<ldoi::C64>,
        /// Projection rank (projection families; default ⌊d/2⌋).
        #[arg(long)]
        rank: Option<usize>,
        /// Use the Fourier matrix as C (ldui family; no seed needed).
        #[arg(long)]
        fourier: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Dual / PT / perfect report of a triple.
    Check {
        #[command(flatten)]
        triple: TripleInput,
    },
    /// Certificate that a triple is not perfect.
    Witness {
        #[command(flatten)]
        triple: TripleInput,
    },
}

#[derive(Debug, Subcommand)]
pub enum SchmidtCommand {
    /// Closed-form rank; `--dense` also reports the dense SVD rank.
    Rank {
        #[command(flatten)]
        triple: TripleInput,
        #[arg(long)]
        dense: bool,
    },
    /// Schmidt coefficients.
    Spectrum {
        #[command(flatten)]
        triple: TripleInput,
    },
    /// Real orthogonal triple with a prescribed rank.
    Make {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum EntangleCommand {
    /// E(X), E(XS), e_p and g_t of a unitary triple.
    Profile {
        #[command(flatten)]
        triple: TripleInput,
        /// Use the dense realignment and partial transpose.
        #[arg(long)]
        oracle: bool,
    },
    /// Haar Monte-Carlo estimate of e_p.
    MonteCarlo {
        #[command(flatten)]
        triple: TripleInput,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// e_p of the dual LDUI triple built from a unimodular C.
    MaxEp {
        /// C as a JSON matrix (entries numbers or [re, im]).
        #[arg(value_name = "MATRIX_JSON", required_unless_present = "dim")]
        input: Option<PathBuf>,
        /// Use the d×d Fourier matrix instead of reading C.
        #[arg(long, conflicts_with = "input")]
        dim: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum HadamardnessCommand {
    /// Exhaustive minimum over dephased d×d sign matrices (2 ≤ d ≤ 6).
    Min {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        workers: Option<usize>,
        /// Include the wall time, which makes the output non-reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// 𝔥 of a sign matrix given as a `+-` grid, `1 -1` rows or nested JSON.
    Eval {
        #[arg(value_name = "MATRIX", default_value = "-")]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum DiscriminateCommand {
    /// Copies needed to perfectly discriminate two unitary triples.
    K {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Smallest spectral arc of a unitary triple.
    Arc {
        #[command(flatten)]
        triple: TripleInput,
    },
    /// Sample ⟨v⊗w|X|v⊗w⟩ over Haar-random product probes.
    LocalRange {
        #[command(flatten)]
        triple: TripleInput,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Ldoi,
    Ldui,
    Cldui,
}

impl From<ClassArg> for ldoi::InvarianceClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Ldoi => Self::Ldoi,
            ClassArg::Ldui => Self::Ldui,
            ClassArg::Cldui => Self::Cldui,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    #[value(alias = "complex")]
    C,
    #[value(alias = "real")]
    R,
}

impl From<FieldArg> for ldoi::Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::C => Self::Complex,
            FieldArg::R => Self::Real,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    Transpose,
    Adjoint,
    Realign,
    PartialTranspose,
}

impl From<SymmetryArg> for ldoi::Symmetry {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::Transpose => Self::Transpose,
            SymmetryArg::Adjoint => Self::Adjoint,
            SymmetryArg::Realign => Self::Realign,
            SymmetryArg::PartialTranspose => Self::PartialTranspose,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Projection,
    PhaseProjection,
    Ldui,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BatchOp {
    Validate,
    Check,
    Dual,
    Witness,
    Schmidt,
    Entangle,
    Arc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Table1,
    SchmidtCoverage,
    MaxEp,
    PerfectNone,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::SchmidtCoverage => "schmidt-coverage",
            Suite::MaxEp => "max-ep",
            Suite::PerfectNone => "perfect-none",
        }
    }
}

fn parse_complex(s: &str) -> Result<ldoi::C64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(ldoi::C64::new(num(re)?, num(im)?))
}
