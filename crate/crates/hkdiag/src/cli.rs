use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hkdiag", version, about = "Diagonals of rational bivariate generating functions, exactly")]
pub struct Cli {
    /// Number of series terms to compute (results are known mod z^PREC).
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..=100_000))]
    pub prec: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagonal of F = num/den by residues, cross-checked against direct expansion.
    Diag(FunctionArgs),
    /// Puiseux branches of the substituted denominator D(t, z).
    Branches(BranchesArgs),
    /// Guess an algebraic equation P(z, g) = 0 from coefficients.
    GuessAlgeq(GuessAlgeqArgs),
    /// Guess a linear recurrence with polynomial coefficients.
    GuessRec(GuessRecArgs),
    /// Check a recurrence against coefficients and report the first failing window.
    VerifyRec(VerifyRecArgs),
    /// Generalized binomial series B = 1 + u*B^m.
    Gbs(GbsArgs),
    /// Harmonic-number identity grid and the related series identities.
    Harmonic(HarmonicArgs),
    /// Check every reference value for the built-in instance.
    CheckAll,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// Use F = (1+x)(1-x)^2 / (1 - x - x^2 + x^3 - y).
    #[arg(long, conflicts_with_all = ["num", "den"])]
    pub paper_a348410: bool,

    /// Numerator polynomial in x, y.
    #[arg(long)]
    pub num: Option<String>,

    /// Denominator polynomial in x, y, with nonzero constant term.
    #[arg(long)]
    pub den: Option<String>,
}

#[derive(Debug, Args)]
pub struct BranchesArgs {
    #[command(flatten)]
    pub function: FunctionArgs,

    /// Give D(t, z) directly instead of F.
    #[arg(long, conflicts_with_all = ["paper_a348410", "num", "den"])]
    pub tz: Option<String>,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Coefficient file: one rational per line, or b-file `index value` rows.
    #[arg(long, conflicts_with = "paper_a348410")]
    pub input: Option<PathBuf>,

    /// Use the diagonal coefficients of the built-in instance.
    #[arg(long)]
    pub paper_a348410: bool,

    /// Use only the first COUNT coefficients (default: all of the file, 60 for the built-in data).
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GuessAlgeqArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[arg(long)]
    pub deg_g: usize,

    #[arg(long)]
    pub deg_z: usize,

    /// Coefficients required beyond the number of unknowns.
    #[arg(long, default_value_t = hkdiag_core::guess::DEFAULT_MARGIN)]
    pub margin: usize,
}

#[derive(Debug, Args)]
pub struct GuessRecArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[arg(long)]
    pub order: usize,

    /// Degree bound for the coefficient polynomials.
    #[arg(long)]
    pub deg: usize,

    #[arg(long, default_value_t = hkdiag_core::guess::DEFAULT_MARGIN)]
    pub margin: usize,

    /// Only require the relation for windows starting at m >= FROM.
    #[arg(long, default_value_t = 0)]
    pub from: usize,
}

#[derive(Debug, Args)]
pub struct VerifyRecArgs {
    #[command(flatten)]
    pub data: DataArgs,

    /// Coefficient polynomials p0;p1;...;pr in m, for sum p_i(m)*a(m+i) = 0.
    #[arg(long, conflicts_with = "known_recurrence")]
    pub rec: Option<String>,

    /// Use the known order-4 recurrence for the built-in instance.
    #[arg(long)]
    pub known_recurrence: bool,

    #[arg(long, default_value_t = 0)]
    pub from: usize,
}

#[derive(Debug, Args)]
pub struct GbsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
}

#[derive(Debug, Args)]
pub struct HarmonicArgs {
    /// Parameter range, `a..b` (inclusive) or a single value.
    #[arg(long, default_value = "1..6")]
    pub m: String,

    #[arg(long, default_value = "1..20")]
    pub n: String,

    /// Check sum C(mk,k) u^k = 1/(1 - m + m/B) to O(u^PREC) instead.
    #[arg(long, conflicts_with_all = ["log", "gf"])]
    pub gkp: bool,

    /// Check the logarithmic identity and its two derived forms to O(w^PREC) instead.
    #[arg(long, conflicts_with = "gf")]
    pub log: bool,

    /// Check the generating function of the right-hand side against -log(1-z)/(1-z) instead.
    #[arg(long)]
    pub gf: bool,
}
