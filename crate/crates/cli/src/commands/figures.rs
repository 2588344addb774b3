//! Figure data: amplitude factors and P representations along the real axis.

use tfd_core::linalg::C64;
use tfd_core::observables::fig1_ordinate;
use tfd_core::quasiprob::{p_rep, GaussianQP};
use tfd_core::tfd_states::StateKind;

use super::linspace;
use crate::args::{AxisArgs, Fig1Args, Fig2Args, Fig3Args};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::FigureTable;

const SPAN_SIGMAS: f64 = 8.0;

pub fn fig1_table(args: &Fig1Args) -> CliResult<FigureTable> {
    if !(args.theta_min >= 0.0) {
        return Err(CliError::BadArgs(format!("theta_min must be non-negative, got {}", args.theta_min)));
    }
    let mut table = FigureTable::new(["theta", "round", "trotter", "double"]);
    for theta in linspace(args.theta_min, args.theta_max, args.steps)? {
        table.push(vec![
            theta,
            fig1_ordinate(StateKind::Round, theta),
            fig1_ordinate(StateKind::Trotter, theta),
            fig1_ordinate(StateKind::Double, theta),
        ])?;
    }
    Ok(table)
}

pub fn fig1(args: &Fig1Args, cfg: &RunConfig) -> CliResult<()> {
    fig1_table(args)?.write(&cfg.out)?;
    println!("wrote {}", cfg.out.display());
    Ok(())
}

/// Real-μ slice through the curves; the default range covers every curve to
/// eight widths.
fn p_table(curves: &[(String, GaussianQP)], axis: &AxisArgs) -> CliResult<FigureTable> {
    let lo = curves
        .iter()
        .map(|(_, g)| g.mean().re - SPAN_SIGMAS * g.sigma())
        .fold(f64::INFINITY, f64::min);
    let hi = curves
        .iter()
        .map(|(_, g)| g.mean().re + SPAN_SIGMAS * g.sigma())
        .fold(f64::NEG_INFINITY, f64::max);
    let mus = linspace(axis.mu_min.unwrap_or(lo), axis.mu_max.unwrap_or(hi), axis.steps)?;
    let mut table = FigureTable::new(std::iter::once("mu".to_string()).chain(curves.iter().map(|(n, _)| n.clone())));
    for mu in mus {
        let mut row = vec![mu];
        row.extend(curves.iter().map(|(_, g)| g.evaluate(C64::new(mu, 0.0))));
        table.push(row)?;
    }
    Ok(table)
}

pub fn fig2_table(args: &Fig2Args) -> CliResult<FigureTable> {
    if args.thetas.is_empty() {
        return Err(CliError::BadArgs("at least one theta is required".into()));
    }
    let curves = args
        .thetas
        .iter()
        .map(|&theta| {
            let g = p_rep(StateKind::Trotter, C64::new(args.alpha, 0.0), theta)?;
            Ok((format!("p_trotter_theta_{theta}"), g))
        })
        .collect::<CliResult<Vec<_>>>()?;
    p_table(&curves, &args.axis)
}

pub fn fig2(args: &Fig2Args, cfg: &RunConfig) -> CliResult<()> {
    fig2_table(args)?.write(&cfg.out)?;
    println!("wrote {}", cfg.out.display());
    Ok(())
}

pub fn fig3_table(args: &Fig3Args) -> CliResult<FigureTable> {
    let alpha = C64::new(args.alpha, 0.0);
    let curves = [StateKind::Round, StateKind::Trotter, StateKind::Double]
        .into_iter()
        .map(|kind| Ok((format!("p_{}", kind.name()), p_rep(kind, alpha, args.theta)?)))
        .collect::<CliResult<Vec<_>>>()?;
    p_table(&curves, &args.axis)
}

pub fn fig3(args: &Fig3Args, cfg: &RunConfig) -> CliResult<()> {
    fig3_table(args)?.write(&cfg.out)?;
    println!("wrote {}", cfg.out.display());
    Ok(())
}
