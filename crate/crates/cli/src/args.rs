use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use xbounds_core::{GridAxis, Spacing};

use crate::number::from_db;

#[derive(Debug, Parser)]
#[command(
    name = "xbounds",
    version,
    about = "Sum-capacity bounds for the Gaussian X channel in mixed interference"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every bound at one channel.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// CSV of full evaluations over an (a², b²) grid.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// CSV of receiver-1 MAC rate and bounds A and C against a².
    #[command(allow_negative_numbers = true)]
    Curve(CurveArgs),
    /// CSV of the bound-A δ-threshold on a² against P₁.
    Thresholds(ThresholdsArgs),
    /// δ-thresholds and membership at one channel.
    #[command(allow_negative_numbers = true)]
    Delta(DeltaArgs),
    /// Randomized cross-check of the bounds against the covariance oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Powers {
    #[arg(long)]
    pub p1: f64,
    #[arg(long)]
    pub p2: f64,
    /// Read --p1/--p2 in dB (P = 10^(dB/10)).
    #[arg(long)]
    pub db: bool,
}

impl Powers {
    pub fn linear(&self) -> (f64, f64) {
        if self.db {
            (from_db(self.p1), from_db(self.p2))
        } else {
            (self.p1, self.p2)
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub a2: f64,
    #[arg(long)]
    pub b2: f64,
    #[command(flatten)]
    pub powers: Powers,
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long)]
    pub a2: f64,
    #[arg(long)]
    pub b2: f64,
    #[command(flatten)]
    pub powers: Powers,
    #[arg(long)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// a² range as min:max:count, or a single value (artifact default).
    #[arg(long, default_value = "1:20:200")]
    pub a2: RangeArg,
    /// b² range as min:max:count, or a single value (artifact default).
    #[arg(long, default_value = "0:1:200")]
    pub b2: RangeArg,
    #[command(flatten)]
    pub powers: Powers,
    /// Adds δ-membership and certifying bounds to every row.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Logarithmic spacing on both axes.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// a² range as min:max:count (artifact default).
    #[arg(long, default_value = "1:100:200")]
    pub a2: RangeArg,
    #[arg(long)]
    pub b2: f64,
    #[command(flatten)]
    pub powers: Powers,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Logarithmic spacing in a².
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct ThresholdsArgs {
    /// Comma-separated δ values, one curve each (artifact default).
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.5")]
    pub delta: Vec<f64>,
    /// P₁ range as min:max:count (artifact default).
    #[arg(long, default_value = "0:10:101")]
    pub p1: RangeArg,
    /// Logarithmic spacing in P₁.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Draws per genie flavor.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Absolute tolerance in bits for the oracle checks.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Shift ηρ away from its optimum by this amount before checking.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub perturb_etarho: f64,
}

/// `min:max:count`, or a bare value for a one-point axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeArg {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl RangeArg {
    pub fn axis(self, log: bool) -> GridAxis {
        GridAxis {
            min: self.min,
            max: self.max,
            count: self.count,
            spacing: if log { Spacing::Log } else { Spacing::Linear },
        }
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{t}` is not a number"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Ok(RangeArg {
                    min: v,
                    max: v,
                    count: 1,
                })
            }
            [min, max, count] => {
                let count = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| format!("`{count}` is not a point count"))?;
                Ok(RangeArg {
                    min: num(min)?,
                    max: num(max)?,
                    count,
                })
            }
            _ => Err(format!(
                "expected min:max:count or a single value, got `{s}`"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn range_syntax() {
        assert_eq!(
            "1:20:200".parse::<RangeArg>().unwrap(),
            RangeArg {
                min: 1.0,
                max: 20.0,
                count: 200
            }
        );
        assert_eq!(
            "0.5".parse::<RangeArg>().unwrap(),
            RangeArg {
                min: 0.5,
                max: 0.5,
                count: 1
            }
        );
        assert!("1:2".parse::<RangeArg>().is_err());
        assert!("1:2:x".parse::<RangeArg>().is_err());
        assert!("1:2:-3".parse::<RangeArg>().is_err());
        assert!("a:2:3".parse::<RangeArg>().is_err());
    }

    #[test]
    fn negative_db_powers_parse() {
        let cli = Cli::try_parse_from([
            "xbounds", "eval", "--a2", "10", "--b2", "0.5", "--p1", "-3", "--p2", "-3", "--db",
        ])
        .unwrap();
        let Command::Eval(args) = cli.command else {
            panic!("eval expected")
        };
        let (p1, p2) = args.powers.linear();
        assert_eq!(p1, 10f64.powf(-0.3));
        assert_eq!(p2, p1);
    }
}
