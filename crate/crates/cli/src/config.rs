//! Command-line flags.

use std::path::PathBuf;
use std::str::FromStr;

use bernlike_core::{Family, FamilySpec, TestFunction};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "bernlike", version, about = "Bernstein-like bases and alpha-Bernstein operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Tabulate F_{n,0..n} on a uniform grid.
    Basis(BasisArgs),
    /// Tabulate the operator image of a named function.
    Operator(OperatorArgs),
    /// Compare moments by direct summation and by the degree recurrence.
    Moments(MomentsArgs),
    /// Maximum grid error of the operator image per degree.
    Converge(ConvergeArgs),
    /// Scaled residuals against the Voronovskaja (or Gruss-Voronovskaja) limit.
    Voronovskaja(VoronovskajaArgs),
    /// Monotonicity / convexity preservation checks.
    Shape(ShapeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Alpha,
    Classical,
    Sq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = FamilyName::Alpha)]
    pub family: FamilyName,
    /// alpha in [0, 1] for the alpha family.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// nu >= 0 for the sq family.
    #[arg(long, default_value_t = 0.5)]
    pub nu: f64,
}

impl FamilyArgs {
    pub fn build(&self) -> Result<Family, CliError> {
        self.build_with_alpha(self.alpha)
    }

    pub fn build_with_alpha(&self, alpha: f64) -> Result<Family, CliError> {
        let spec = match self.family {
            FamilyName::Alpha => {
                check_alpha(alpha)?;
                FamilySpec::alpha(alpha)?
            }
            FamilyName::Classical => FamilySpec::classical(),
            FamilyName::Sq => {
                if !(self.nu >= 0.0 && self.nu.is_finite()) {
                    return Err(CliError::Usage(format!("--nu must be >= 0, got {}", self.nu)));
                }
                FamilySpec::sq_root(self.nu)?
            }
        };
        Ok(Family::new(spec)?)
    }
}

pub fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--alpha must lie in [0, 1], got {alpha}")))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to PATH instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BasisArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
    /// START:END:STEP over alpha; one table per member.
    #[arg(long)]
    pub alpha_sweep: Option<Sweep>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OperatorArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long = "fn")]
    pub function: FunctionName,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Comma-separated moment powers.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub powers: Vec<usize>,
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long = "fn")]
    pub function: FunctionName,
    /// Comma-separated increasing degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<usize>,
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VoronovskajaArgs {
    /// Estimate n[B(fh) - B(f)B(h)] instead of n[B(f) - f].
    #[arg(long)]
    pub gruss: bool,
    #[arg(long)]
    pub f: FunctionName,
    /// Second function for --gruss.
    #[arg(long)]
    pub h: Option<FunctionName>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub z: f64,
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
    pub degrees: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckName {
    /// Image of increasing data is increasing.
    Monotone,
    /// Image of convex data is convex.
    Convex,
    /// The basis itself is monotonicity preserving.
    Basis,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ShapeArgs {
    #[arg(long, value_enum)]
    pub check: CheckName,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// One-column data file (whitespace/newline separated decimals).
    #[arg(long, conflicts_with_all = ["function", "random"])]
    pub data: Option<PathBuf>,
    /// Sample a named function at k/n instead of reading a file.
    #[arg(long = "fn", conflicts_with = "random")]
    pub function: Option<FunctionName>,
    /// Run this many random data vectors of the requested class.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Degree n (required with --fn, --random and --check basis).
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
    /// Override the default tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write to PATH instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Named target functions with analytic derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionName {
    Exp,
    Sin,
    Square,
    Abs,
    Runge,
    Linear,
    Const,
}

impl FunctionName {
    pub fn function(self) -> TestFunction {
        match self {
            Self::Exp => TestFunction::Exp,
            Self::Sin => TestFunction::Sin,
            Self::Square => TestFunction::Square,
            Self::Abs => TestFunction::AbsCentered,
            Self::Runge => TestFunction::Runge,
            Self::Linear => TestFunction::Identity,
            Self::Const => TestFunction::Constant(1.0),
        }
    }
}

impl FromStr for FunctionName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "exp" => Self::Exp,
            "sin" => Self::Sin,
            "square" | "sq" | "t2" => Self::Square,
            "abs" => Self::Abs,
            "runge" => Self::Runge,
            "linear" | "id" | "identity" => Self::Linear,
            "const" | "constant" => Self::Const,
            other => {
                return Err(format!(
                    "unknown function `{other}` (expected exp, sin, square, abs, runge, linear/id, const)"
                ))
            }
        })
    }
}

/// `START:END:STEP` with a positive step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sweep {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Sweep {
    /// Members `start + i * step` up to `end`, rounded to 12 decimals.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| ((self.start + i as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, step] = parts[..] else {
            return Err(format!("expected START:END:STEP, got `{s}`"));
        };
        let parse = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
        let sweep = Self { start: parse(start)?, end: parse(end)?, step: parse(step)? };
        if !(sweep.step > 0.0) || !(sweep.end >= sweep.start) {
            return Err(format!("sweep `{s}` needs step > 0 and END >= START"));
        }
        Ok(sweep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_members() {
        let s: Sweep = "0:1:0.2".parse().unwrap();
        assert_eq!(s.values(), vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0]);
        assert!("0:1".parse::<Sweep>().is_err());
        assert!("1:0:0.2".parse::<Sweep>().is_err());
        assert!("0:1:0".parse::<Sweep>().is_err());
    }

    #[test]
    fn function_aliases() {
        assert_eq!("id".parse::<FunctionName>().unwrap(), FunctionName::Linear);
        assert_eq!("linear".parse::<FunctionName>().unwrap(), FunctionName::Linear);
        assert!("cosh".parse::<FunctionName>().is_err());
    }
}
