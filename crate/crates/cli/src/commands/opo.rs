//! Parametric-oscillator demo: sliced versus closed round trips and the
//! signal-mode state.

use std::path::PathBuf;

use serde::Serialize;
use tfd_core::fockspace::coherent_vector;
use tfd_core::gaussian_oracle::{moments_from_cf, reduce_to_signal, reduced_to_qp};
use tfd_core::linalg::C64;
use tfd_core::opo::{closed_unitary, signal_density, sliced_unitary, OpoParams, SliceOrder};
use tfd_core::quasiprob::{q_func_numeric, QpKind};
use tfd_core::tfd_states::StateKind;

use super::linspace;
use crate::args::OpoArgs;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{write_json, FigureTable};

pub const DEFAULT_DIM: usize = 20;
const Q_SPAN_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpoReport {
    pub chi2: f64,
    pub g_s: [f64; 2],
    pub g_i: [f64; 2],
    pub t1: f64,
    pub t2: f64,
    pub round_trips: usize,
    pub order: SliceOrder,
    pub dim: usize,
    pub theta: f64,
    /// Operator-norm distance between the sliced and closed unitaries at `dim`.
    pub sliced_closed_distance: f64,
    pub signal_dim: usize,
    pub purity: f64,
    pub purity_oracle: f64,
    pub mean_photon_number: f64,
    pub mean_photon_number_oracle: f64,
    pub mean_amplitude: [f64; 2],
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn evaluate(args: &OpoArgs, cfg: &RunConfig) -> CliResult<(OpoReport, FigureTable)> {
    let op = OpoParams::new(args.chi2, args.gs, args.gi, args.t1, args.t2, args.round_trips)?;
    let d = args.dim.or(cfg.cutoff.fixed_dim()).unwrap_or(DEFAULT_DIM);
    let order = SliceOrder::from(args.order);
    let sliced = sliced_unitary(&op, d, order)?;
    let closed = closed_unitary(&op, d)?;
    let distance = sliced.sub(&closed)?.op_norm();

    let rho = signal_density(&op, &cfg.cutoff_policy())?;
    let rg = reduce_to_signal(&moments_from_cf(StateKind::Trotter, op.gamma_s(), op.gamma_i(), op.theta()));
    let q_oracle = reduced_to_qp(&rg, QpKind::Q)?;
    let mean = rho.mean_amplitude();
    let report = OpoReport {
        chi2: op.chi2,
        g_s: pair(op.g_s),
        g_i: pair(op.g_i),
        t1: op.t1,
        t2: op.t2,
        round_trips: op.round_trips,
        order,
        dim: d,
        theta: op.theta(),
        sliced_closed_distance: distance,
        signal_dim: rho.dim(),
        purity: rho.purity(),
        purity_oracle: rg.purity(),
        mean_photon_number: rho.mean_photon_number(),
        mean_photon_number_oracle: rg.mean_photon_number(),
        mean_amplitude: pair(mean),
    };

    // Q along the real direction through the mean; ρ is zero-padded until the
    // coherent sandwiches are representable.
    if args.q_points < 2 {
        return Err(crate::CliError::BadArgs(format!("need at least 2 Q points, got {}", args.q_points)));
    }
    let half = Q_SPAN_SIGMAS * q_oracle.sigma();
    let xs = linspace(mean.re - half, mean.re + half, args.q_points)?;
    let reach = xs.iter().map(|x| C64::new(*x, mean.im).norm()).fold(0.0, f64::max);
    let mut pad = rho.dim();
    while coherent_vector(C64::new(reach, 0.0), pad, cfg.tail_tol).is_err() {
        pad += pad / 2;
    }
    let rho_q = rho.padded(pad)?;
    let mut table = FigureTable::new(["re_mu", "q_signal", "q_oracle"]);
    for x in xs {
        let mu = C64::new(x, mean.im);
        table.push(vec![x, q_func_numeric(&rho_q, mu, cfg.tail_tol)?, q_oracle.evaluate(mu)])?;
    }
    Ok((report, table))
}

/// JSON report path next to the CSV.
pub fn report_path(csv: &std::path::Path) -> PathBuf {
    if csv.extension().is_some_and(|e| e == "json") {
        csv.with_extension("report.json")
    } else {
        csv.with_extension("json")
    }
}

pub fn run(args: &OpoArgs, cfg: &RunConfig) -> CliResult<()> {
    let (report, table) = evaluate(args, cfg)?;
    table.write(&cfg.out)?;
    let json = report_path(&cfg.out);
    write_json(&json, &report)?;
    println!(
        "sliced-closed distance {:.3e}, purity {:.9}, mean photons {:.9}",
        report.sliced_closed_distance, report.purity, report.mean_photon_number
    );
    println!("wrote {} and {}", cfg.out.display(), json.display());
    Ok(())
}
