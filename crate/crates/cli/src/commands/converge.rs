//! Distance of the N-slice product state to the combined-exponential state.

use tfd_core::fockspace::Cutoff;
use tfd_core::tfd_states::{build_state, build_trotter_finite, DisplacementParams, StateKind, ThermalParams};

use super::log_log_slope;
use crate::args::ConvergeArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::FigureTable;

pub const DEFAULT_DIM: usize = 30;

pub fn converge_table(args: &ConvergeArgs, cfg: &RunConfig) -> CliResult<FigureTable> {
    if args.n_list.is_empty() || args.n_list[0] == 0 || args.n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::BadArgs(format!(
            "slice counts must be positive and strictly ascending, got {:?}",
            args.n_list
        )));
    }
    let d = args.dim.or(cfg.cutoff.fixed_dim()).unwrap_or(DEFAULT_DIM);
    let cut = Cutoff::fixed(d).with_tail_tol(cfg.tail_tol);
    let dp = DisplacementParams::new(args.alpha, args.zeta);
    let tp = ThermalParams::from_theta_with_epsilon(args.theta, cfg.epsilon)?;
    let reference = build_state(StateKind::Trotter, &dp, &tp, &cut)?;
    let mut table = FigureTable::new(["n", "distance"]);
    let mut points = Vec::with_capacity(args.n_list.len());
    for &n in &args.n_list {
        let finite = build_trotter_finite(&dp, &tp, n, &cut)?;
        let dist = reference.aligned_distance(&finite)?;
        points.push((n as f64, dist));
        table.push(vec![n as f64, dist])?;
    }
    if let Some(slope) = log_log_slope(&points) {
        table.add_comment("slope", slope);
    }
    Ok(table)
}

pub fn run(args: &ConvergeArgs, cfg: &RunConfig) -> CliResult<()> {
    let table = converge_table(args, cfg)?;
    table.write(&cfg.out)?;
    println!("wrote {}", cfg.out.display());
    Ok(())
}
