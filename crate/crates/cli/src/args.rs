use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Debug, Parser)]
#[command(name = "eraser", version, about = "Delayed-choice quantum eraser simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bob's screen pattern for one configuration.
    Pattern(Common),
    /// Isometry audit of the composite emission map on the excited sector.
    AuditUnitarity(Common),
    /// Bob's pattern with and without Alice's pulse.
    AuditSignaling(Common),
    /// Vary one parameter and record visibility and signaling gap.
    Sweep(SweepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Pattern(_) => "pattern",
            Command::AuditUnitarity(_) => "audit-unitarity",
            Command::AuditSignaling(_) => "audit-signaling",
            Command::Sweep(_) => "sweep",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Pattern(c) | Command::AuditUnitarity(c) | Command::AuditSignaling(c) => c,
            Command::Sweep(s) => &s.common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Instantaneous,
    Rate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvolutionArg {
    Correct,
    Ingraham,
}

/// Sweepable parameters, named as their flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    SPhi,
    SGamma,
    GammaT,
    Separation,
    LambdaGamma,
    LambdaPhi,
    ScreenDistance,
    ScreenHalfwidth,
}

impl SweepParam {
    /// Key in the resolved configuration.
    pub fn config_key(self) -> &'static str {
        match self {
            SweepParam::SPhi => "s_phi_override",
            SweepParam::SGamma => "s_gamma_override",
            SweepParam::GammaT => "gamma_t",
            SweepParam::Separation => "separation",
            SweepParam::LambdaGamma => "lambda_gamma",
            SweepParam::LambdaPhi => "lambda_phi",
            SweepParam::ScreenDistance => "screen_distance",
            SweepParam::ScreenHalfwidth => "screen_halfwidth",
        }
    }

    /// Column header in sweep.csv.
    pub fn column(self) -> &'static str {
        match self {
            SweepParam::SPhi => "s_phi",
            SweepParam::SGamma => "s_gamma",
            other => other.config_key(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long)]
    pub lambda_gamma: Option<f64>,
    #[arg(long)]
    pub lambda_phi: Option<f64>,
    #[arg(long)]
    pub separation: Option<f64>,
    #[arg(long)]
    pub screen_distance: Option<f64>,
    #[arg(long)]
    pub screen_halfwidth: Option<f64>,
    /// Odd number of screen samples [default: 201]
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Override the φ-mode overlap instead of deriving it from the geometry.
    #[arg(long, allow_negative_numbers = true)]
    pub s_phi: Option<f64>,
    /// Override the γ-mode overlap instead of deriving it from the geometry.
    #[arg(long, allow_negative_numbers = true)]
    pub s_gamma: Option<f64>,
    /// [default: instantaneous]
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    /// Emission time in units of 1/Γ (rate regime).
    #[arg(long)]
    pub gamma_t: Option<f64>,
    /// [default: true]
    #[arg(long, value_name = "BOOL")]
    pub alice_pulse: Option<bool>,
    /// [default: correct]
    #[arg(long, value_enum)]
    pub evolution: Option<EvolutionArg>,
    /// [default: true]
    #[arg(long, value_name = "BOOL")]
    pub late_decay: Option<bool>,
    /// Configuration file: flat key=value lines, a JSON object, or a previous manifest.json.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out_dir: PathBuf,
}

impl Common {
    /// Flag values as configuration overrides.
    pub fn overrides(&self) -> Vec<(&'static str, Value)> {
        let mut out = Vec::new();
        let mut num = |key, v: Option<f64>| {
            if let Some(v) = v {
                out.push((key, Value::from(v)));
            }
        };
        num("lambda_gamma", self.lambda_gamma);
        num("lambda_phi", self.lambda_phi);
        num("separation", self.separation);
        num("screen_distance", self.screen_distance);
        num("screen_halfwidth", self.screen_halfwidth);
        num("s_phi_override", self.s_phi);
        num("s_gamma_override", self.s_gamma);
        num("gamma_t", self.gamma_t);
        if let Some(n) = self.grid_points {
            out.push(("grid_points", Value::from(n)));
        }
        if let Some(r) = self.regime {
            let name = match r {
                RegimeArg::Instantaneous => "instantaneous",
                RegimeArg::Rate => "rate",
            };
            out.push(("regime", Value::from(name)));
        }
        if let Some(e) = self.evolution {
            let name = match e {
                EvolutionArg::Correct => "correct",
                EvolutionArg::Ingraham => "ingraham",
            };
            out.push(("evolution", Value::from(name)));
        }
        if let Some(b) = self.alice_pulse {
            out.push(("alice_pulse", Value::from(b)));
        }
        if let Some(b) = self.late_decay {
            out.push(("include_late_decay", Value::from(b)));
        }
        out
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[command(flatten)]
    pub common: Common,
}
