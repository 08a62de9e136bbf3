use std::path::PathBuf;

use antisym_core::lp::{LpForm, Parity};
use antisym_core::werner::VerifyLevel;
use antisym_core::{Rational, TdVariant};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "antisym", version, about = "Exact bounds for the antisymmetric Werner state")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write results to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Squashed-entanglement and key upper bound from antisymmetric extensions.
    Squashed(SquashedArgs),
    /// Purity linear programmes and their dual.
    #[command(subcommand)]
    Lp(LpCommand),
    /// Exact representation-theoretic checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// All bounds for one `d` and `n` in a single table.
    Bounds(BoundsArgs),
    /// See-saw lower estimate of the maximal reduced purity.
    Purity(PurityArgs),
}

#[derive(Args, Debug)]
pub struct SquashedArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=100_000))]
    pub d: u64,
    /// Also print the extension cmi for every k.
    #[arg(long)]
    pub all_k: bool,
}

#[derive(Subcommand, Debug)]
pub enum LpCommand {
    /// Solve the symmetry-reduced LP for zeta exactly.
    Zeta(ZetaArgs),
    /// Check the analytic dual point.
    Dual(DualArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("dim").required(true).args(["d", "dinf"])))]
pub struct ZetaArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=100_000))]
    pub d: Option<u64>,
    /// Use the d = infinity limit.
    #[arg(long)]
    pub dinf: bool,
    /// Defaults to truncated2 with --dinf and full3 otherwise.
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
    #[arg(long, value_enum, default_value_t = ParityArg::None)]
    pub parity: ParityArg,
    /// Which finite-d constraint matrix to use.
    #[arg(long, value_enum, default_value_t = VariantArg::Projector)]
    pub variant: VariantArg,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("point").multiple(true).requires_all(["beta", "gamma"]).args(["beta", "gamma"])))]
pub struct DualArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=500))]
    pub n: u64,
    /// Geometric ratio of the dual point, as `p/q` or a decimal.
    #[arg(long, value_parser = parse_rational)]
    pub beta: Option<Rational>,
    /// Scale of the dual point, as `p/q` or a decimal.
    #[arg(long, value_parser = parse_rational)]
    pub gamma: Option<Rational>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Young projectors, plethysms and partial-transpose overlaps at one d.
    Rep(RepArgs),
}

#[derive(Args, Debug)]
pub struct RepArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=7))]
    pub d: u64,
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    pub level: LevelArg,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=100_000))]
    pub d: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200))]
    pub n: u64,
}

#[derive(Args, Debug)]
pub struct PurityArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
    pub d: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub iters: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Full3,
    Truncated2,
}

impl From<FormArg> for LpForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Full3 => LpForm::Full3,
            FormArg::Truncated2 => LpForm::Truncated2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    None,
    Even,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::None => Parity::None,
            ParityArg::Even => Parity::Even211,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Projector,
    HalfQ,
    HalfQAltCorner,
}

impl From<VariantArg> for TdVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Projector => TdVariant::Projector,
            VariantArg::HalfQ => TdVariant::HalfQ,
            VariantArg::HalfQAltCorner => TdVariant::HalfQAltCorner,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Fast,
    Full,
}

impl From<LevelArg> for VerifyLevel {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Fast => VerifyLevel::Fast,
            LevelArg::Full => VerifyLevel::Full,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    antisym_core::rational::parse(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}
