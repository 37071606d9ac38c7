use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hypergeom", version, about = "Exact Euler-data, linking and mirror-transform checks for complete flag manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Euler-data identity for every r ⪯ d ⪯ max-degree.
    VerifyEulerData {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degree: DegreeBound,
    },
    /// Compare restricted Euler data with balloon products at α = λ/δ.
    CheckLink {
        #[command(flatten)]
        common: Common,
        /// Largest multiple δ of each balloon class.
        #[arg(long, default_value_t = 1)]
        delta_max: i64,
    },
    /// Exact α-degrees of τ*j_0*Q_d against ⟨c_1, d⟩.
    DegreeAudit {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degree: DegreeBound,
    },
    /// Assemble B_d = τ*j_0*Q_d ∩ 𝕀_d from an I-data file.
    AssembleSeries {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degree: DegreeBound,
        #[command(flatten)]
        input: Input,
    },
    /// Integrality of the Euler-series pairing for every d ⪯ max-degree.
    EulerSeriesCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degree: DegreeBound,
        #[command(flatten)]
        input: Input,
        /// Largest total order of ζ-monomials.
        #[arg(long, default_value_t = 2)]
        zeta_order: u32,
        /// Add 1 to one restriction of B before checking, as `DEGREE@POINT`
        /// (for example `1@12`).
        #[arg(long)]
        perturb: Option<String>,
    },
    /// Normalize B to A with deg_α A_d ≤ −2 and report (f, g).
    MirrorTransform {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degree: DegreeBound,
        #[command(flatten)]
        input: Input,
    },
    /// Run the built-in example suites.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyEulerData { .. } => "verify-euler-data",
            Command::CheckLink { .. } => "check-link",
            Command::DegreeAudit { .. } => "degree-audit",
            Command::AssembleSeries { .. } => "assemble-series",
            Command::EulerSeriesCheck { .. } => "euler-series-check",
            Command::MirrorTransform { .. } => "mirror-transform",
            Command::Selftest { .. } => "selftest",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::VerifyEulerData { common, .. }
            | Command::CheckLink { common, .. }
            | Command::DegreeAudit { common, .. }
            | Command::AssembleSeries { common, .. }
            | Command::EulerSeriesCheck { common, .. }
            | Command::MirrorTransform { common, .. }
            | Command::Selftest { common } => common,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Size of the flag manifold Fl(n).
    #[arg(long)]
    pub n: Option<usize>,
    /// Worker threads.
    #[arg(long, env = "HYPERGEOM_JOBS")]
    pub jobs: Option<usize>,
    /// Where to write the report; standard output when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DegreeBound {
    /// A multidegree `d1,d2,…` or a single bound applied to every entry.
    #[arg(long, default_value = "1")]
    pub max_degree: String,
}

#[derive(Debug, Args)]
pub struct Input {
    /// I-data file (JSON).
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}
