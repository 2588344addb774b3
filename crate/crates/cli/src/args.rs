use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tfd_core::linalg::C64;
use tfd_core::opo::SliceOrder;

use crate::config::{ConfigFile, CutoffSetting};

#[derive(Debug, Parser)]
#[command(name = "tfd", version, about = "Thermal coherent states: figure data, convergence studies, verification and the OPO demo")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand; they override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// JSON file with any of the keys hbar, lambda, epsilon, cutoff, tail_tol, out, seed.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// `adaptive` or a fixed number of Fock levels per mode.
    #[arg(long, global = true)]
    pub cutoff: Option<CutoffSetting>,
    /// Tail-population tolerance of the adaptive cutoff, in (0, 1e-4].
    #[arg(long, global = true)]
    pub tail_tol: Option<f64>,
    /// Output path (CSV, or JSON for verify).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the randomized parameter grid.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

impl GlobalArgs {
    pub fn as_config(&self) -> ConfigFile {
        ConfigFile {
            hbar: self.hbar,
            lambda: self.lambda,
            epsilon: self.epsilon,
            cutoff: self.cutoff,
            tail_tol: self.tail_tol,
            out: self.out.clone(),
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean-amplitude factors e^θ, (e^θ − 1)/θ and 1 against θ.
    Fig1(Fig1Args),
    /// Trotter-state P representation along the real axis for several θ.
    Fig2(Fig2Args),
    /// P representation of all three kinds along the real axis.
    Fig3(Fig3Args),
    /// Distance of the N-slice product state to the combined exponential.
    Converge(ConvergeArgs),
    /// Runs the property suite; exits 1 if any property fails.
    Verify(VerifyArgs),
    /// Parametric oscillator round trips: distance, purity, photons, Q.
    Opo(OpoArgs),
}

impl Command {
    pub fn default_out(&self) -> &'static str {
        match self {
            Command::Fig1(_) => "fig1.csv",
            Command::Fig2(_) => "fig2.csv",
            Command::Fig3(_) => "fig3.csv",
            Command::Converge(_) => "converge.csv",
            Command::Verify(_) => "verify.json",
            Command::Opo(_) => "opo.csv",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Fig1Args {
    #[arg(long, default_value_t = 0.0)]
    pub theta_min: f64,
    #[arg(long, default_value_t = 2.0)]
    pub theta_max: f64,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct AxisArgs {
    /// Lower end of the μ axis; chosen from the curves when omitted.
    #[arg(long, allow_negative_numbers = true)]
    pub mu_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu_max: Option<f64>,
    #[arg(long, default_value_t = 20001)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Fig2Args {
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [0.4, 0.6, 0.8])]
    pub thetas: Vec<f64>,
    #[command(flatten)]
    pub axis: AxisArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Fig3Args {
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.4)]
    pub theta: f64,
    #[command(flatten)]
    pub axis: AxisArgs,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    s.parse::<C64>().map_err(|e| format!("`{s}` is not a complex number (e.g. 0.8, -0.3i, 0.5+0.2i): {e}"))
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[arg(long, default_value = "0.8", value_parser = parse_complex, allow_negative_numbers = true)]
    pub alpha: C64,
    #[arg(long, default_value = "0.8", value_parser = parse_complex, allow_negative_numbers = true)]
    pub zeta: C64,
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    /// Ascending slice counts.
    #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64, 128, 256, 512])]
    pub n_list: Vec<usize>,
    /// Fock levels per mode; falls back to a fixed --cutoff, then 30.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Flips the sign of the (1 − cosh θ) term in the harness's parameter map.
    #[arg(long)]
    pub sabotage: bool,
    /// Number of seeded random parameter points added to the fixed grid.
    #[arg(long, default_value_t = 3)]
    pub random_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    InteractionFirst,
    DriveFirst,
}

impl From<OrderArg> for SliceOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::InteractionFirst => SliceOrder::InteractionFirst,
            OrderArg::DriveFirst => SliceOrder::DriveFirst,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OpoArgs {
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub chi2: f64,
    #[arg(long, default_value = "0.4", value_parser = parse_complex, allow_negative_numbers = true)]
    pub gs: C64,
    #[arg(long, default_value = "0.4", value_parser = parse_complex, allow_negative_numbers = true)]
    pub gi: C64,
    #[arg(long, default_value_t = 0.8)]
    pub t1: f64,
    #[arg(long, default_value_t = 2.0)]
    pub t2: f64,
    #[arg(long, default_value_t = 32)]
    pub round_trips: usize,
    /// Fock levels per mode of the dense round-trip unitaries; falls back to a fixed --cutoff, then 20.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = OrderArg::InteractionFirst)]
    pub order: OrderArg,
    /// Points on the Q-function slice.
    #[arg(long, default_value_t = 201)]
    pub q_points: usize,
}
