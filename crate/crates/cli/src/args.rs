//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug, Clone)]
#[command(name = "tightlab", version, about = "Ideals, Jacobian criteria and bounded tight-closure experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Ring file describing T = K[x..] and the defining ideal.
    #[arg(long, global = true)]
    pub ring: Option<PathBuf>,
    /// Monomial order override: grevlex, lex or elim:K.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// File of `component ...;` statements naming the minimal primes.
    #[arg(long, global = true)]
    pub components: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Reduced Gröbner basis of the defining ideal or of --ideal.
    Gb {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Krull dimension of R.
    Dim {
        #[command(flatten)]
        common: Common,
    },
    /// Height (and big height when available) of the defining ideal or --ideal.
    Height {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Minimal primes: derived for monomial ideals, otherwise verified.
    MinPrimes {
        #[command(flatten)]
        common: Common,
    },
    /// Whether all minimal primes share one height.
    Equiheight {
        #[command(flatten)]
        common: Common,
    },
    /// Jacobian matrix of the defining relations.
    Jacobian {
        #[command(flatten)]
        common: Common,
    },
    /// Fitting ideals of the Jacobian presentation (all indices by default).
    Fitting {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Jacobian ideal of R.
    JacobianIdeal {
        #[command(flatten)]
        common: Common,
    },
    /// Determinantal rank of the Jacobian matrix at a prime.
    RankAt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: Option<String>,
    },
    /// Jacobian criterion for regularity at a prime.
    RegularAt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: Option<String>,
    },
    /// Ideal defining the singular locus.
    SingLocus {
        #[command(flatten)]
        common: Common,
    },
    /// Bracket power I^[q].
    FrobPower {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        e: Option<u32>,
    },
    /// Bounded certificate for u in I*.
    TcCertify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long, default_value_t = 3)]
        e_max: u32,
    },
    /// Refutation of u in I* by a Jacobian multiplier.
    TcRefute {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Bounded search for u in the Frobenius closure of I.
    FrobClosure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 3)]
        e_max: u32,
    },
    /// Checks that Jacobian multipliers send certified members of I* into I.
    Harness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: Option<String>,
        /// Comma-separated candidate polynomials.
        #[arg(long)]
        candidates: Option<String>,
        #[arg(long, default_value_t = 3)]
        e_max: u32,
    },
    /// Membership of delta*u in I + m^N for N = 1..n_max.
    KrullCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        /// Defaults to the ideal of all variables.
        #[arg(long)]
        m: Option<String>,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Truncates every relation at degree N in the variables of m.
    Truncate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        m: Option<String>,
    },
    /// Runs the queries of one or more ring files over a list of primes; CSV.
    Sweep {
        /// Ring files (families may use `char p;`).
        #[arg(long = "ring", required = true)]
        rings: Vec<PathBuf>,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        e_max: u32,
        /// Leave the wall_ms column empty so output is byte-stable.
        #[arg(long)]
        no_timing: bool,
        /// Worker threads (defaults to available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Dim { .. } => "dim",
            Command::Height { .. } => "height",
            Command::MinPrimes { .. } => "min-primes",
            Command::Equiheight { .. } => "equiheight",
            Command::Jacobian { .. } => "jacobian",
            Command::Fitting { .. } => "fitting",
            Command::JacobianIdeal { .. } => "jacobian-ideal",
            Command::RankAt { .. } => "rank-at",
            Command::RegularAt { .. } => "regular-at",
            Command::SingLocus { .. } => "sing-locus",
            Command::FrobPower { .. } => "frob-power",
            Command::TcCertify { .. } => "tc-certify",
            Command::TcRefute { .. } => "tc-refute",
            Command::FrobClosure { .. } => "frob-closure",
            Command::Harness { .. } => "harness",
            Command::KrullCheck { .. } => "krull-check",
            Command::Truncate { .. } => "truncate",
            Command::Sweep { .. } => "sweep",
        }
    }

    pub fn common(&self) -> Option<&Common> {
        Some(match self {
            Command::Gb { common, .. }
            | Command::Dim { common }
            | Command::Height { common, .. }
            | Command::MinPrimes { common }
            | Command::Equiheight { common }
            | Command::Jacobian { common }
            | Command::Fitting { common, .. }
            | Command::JacobianIdeal { common }
            | Command::RankAt { common, .. }
            | Command::RegularAt { common, .. }
            | Command::SingLocus { common }
            | Command::FrobPower { common, .. }
            | Command::TcCertify { common, .. }
            | Command::TcRefute { common, .. }
            | Command::FrobClosure { common, .. }
            | Command::Harness { common, .. }
            | Command::KrullCheck { common, .. }
            | Command::Truncate { common, .. } => common,
            Command::Sweep { .. } => return None,
        })
    }
}
