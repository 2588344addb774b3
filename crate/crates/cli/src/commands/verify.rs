//! Property suite over a fixed and a seeded random parameter grid.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use tfd_core::equivalence::{map_double_to_round, map_trotter_to_round, one_minus_cosh_over, sinh_over};
use tfd_core::fockspace::{Cutoff, Slot};
use tfd_core::linalg::C64;
use tfd_core::observables::{state_moments, uncertainty_product, PhysicalConstants};
use tfd_core::opo::{closed_state, signal_density, OpoParams};
use tfd_core::quasiprob::{q_func, q_func_numeric, wigner, wigner_numeric_grid, WignerQuadrature};
use tfd_core::tfd_states::{
    build_state, build_state_at, eigen_residual, xi_eigenvalue, DisplacementParams, StateKind, ThermalParams,
};
use tfd_core::Exec;

use crate::args::VerifyArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::write_json;

/// The suite compares states to 1e-9, which needs a far smaller tail than the
/// figure commands.
pub const VERIFY_TAIL_TOL: f64 = 1e-22;
pub const MAX_RANDOM_ALPHA: f64 = 1.2;
pub const MAX_RANDOM_THETA: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub property: String,
    pub parameters: BTreeMap<String, f64>,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub seed: u64,
    pub sabotage: bool,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub alpha: C64,
    pub zeta: C64,
    pub theta: f64,
}

impl GridPoint {
    fn parameters(&self) -> BTreeMap<String, f64> {
        BTreeMap::from([
            ("alpha_re".to_string(), self.alpha.re),
            ("alpha_im".to_string(), self.alpha.im),
            ("zeta_re".to_string(), self.zeta.re),
            ("zeta_im".to_string(), self.zeta.im),
            ("theta".to_string(), self.theta),
        ])
    }
}

/// Two fixed points followed by `random` seeded ones.
pub fn grid(seed: u64, random: usize) -> Vec<GridPoint> {
    let mut points = vec![
        GridPoint {
            alpha: C64::new(0.8, 0.0),
            zeta: C64::new(0.8, 0.0),
            theta: 0.5,
        },
        GridPoint {
            alpha: C64::new(0.6, 0.5),
            zeta: C64::new(-0.3, 0.7),
            theta: 0.3,
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        C64::from_polar(
            rng.gen_range(0.0..MAX_RANDOM_ALPHA),
            rng.gen_range(0.0..std::f64::consts::TAU),
        )
    };
    for _ in 0..random {
        let alpha = draw(&mut rng);
        let zeta = draw(&mut rng);
        let theta = rng.gen_range(0.05..MAX_RANDOM_THETA);
        points.push(GridPoint { alpha, zeta, theta });
    }
    points
}

/// The harness's own combined-exponential map; `sabotage` flips the sign of
/// the `(1 − cosh θ)` term.
pub fn harness_map(alpha: C64, zeta: C64, theta: f64, sabotage: bool) -> (C64, C64, f64) {
    let sign = if sabotage { -1.0 } else { 1.0 };
    let c2 = sinh_over(theta);
    let c3 = sign * one_minus_cosh_over(theta);
    let phase = map_trotter_to_round(alpha, zeta, theta).phase_theta;
    (alpha * c2 + zeta.conj() * c3, zeta * c2 + alpha.conj() * c3, phase)
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, property: &str, parameters: BTreeMap<String, f64>, value: f64, tolerance: f64) {
        let passed = value.is_finite() && value <= tolerance;
        self.checks.push(Check {
            property: property.to_string(),
            parameters,
            value,
            tolerance,
            passed,
        });
    }
}

fn point_checks(p: &GridPoint, cut: &Cutoff, pc: &PhysicalConstants, sabotage: bool, rec: &mut Recorder) -> CliResult<()> {
    let params = p.parameters();
    let tp = ThermalParams::from_theta_with_epsilon(p.theta, pc.epsilon())?;
    let dp = DisplacementParams::new(p.alpha, p.zeta);

    let trotter = build_state(StateKind::Trotter, &dp, &tp, cut)?;
    let d = trotter.dim_per_mode();
    let (ar, zr, phase) = harness_map(p.alpha, p.zeta, p.theta, sabotage);
    let round = build_state_at(StateKind::Round, &DisplacementParams::new(ar, zr), &tp, d)?;
    rec.record("equivalence.trotter_round", params.clone(), trotter.distance(&round.with_phase(phase))?, 1e-9);

    let double = build_state_at(StateKind::Double, &dp, &tp, d)?;
    let (ad, zd) = map_double_to_round(p.alpha, p.zeta, p.theta);
    let round = build_state_at(StateKind::Round, &DisplacementParams::new(ad, zd), &tp, d)?;
    rec.record("equivalence.double_round", params.clone(), double.distance(&round)?, 1e-9);

    let expected = uncertainty_product(p.theta, pc);
    for kind in StateKind::ALL {
        let st = match kind {
            StateKind::Trotter => trotter.clone(),
            _ => build_state(kind, &dp, &tp, cut)?,
        };
        let f = xi_eigenvalue(kind, &dp, &tp);
        rec.record(&format!("eigen_residual.{}", kind.name()), params.clone(), eigen_residual(&st, f, &tp)?, 1e-6);
        let m = state_moments(&st, pc)?;
        let rel = (m.uncertainty_product() - expected).abs() / expected;
        let floor = m.uncertainty_product() >= 0.5 * pc.hbar() * (1.0 - 1e-12);
        rec.record(
            &format!("uncertainty.{}", kind.name()),
            params.clone(),
            if floor { rel } else { f64::INFINITY },
            1e-7,
        );
    }

    // closed-form quasiprobabilities assume tilde invariance
    let inv = DisplacementParams::tilde_invariant(p.alpha);
    let mut inv_params = params.clone();
    inv_params.insert("zeta_re".into(), p.alpha.re);
    inv_params.insert("zeta_im".into(), -p.alpha.im);
    let rho = build_state(StateKind::Round, &inv, &tp, cut)?.reduced(Slot::Ordinary);
    let q = q_func(StateKind::Round, p.alpha, p.theta)?;
    let offsets = [C64::new(0.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, -2.0), C64::new(-1.5, 1.5)];
    let mut worst: f64 = 0.0;
    for o in offsets {
        let mu = q.mean() + o * q.sigma();
        worst = worst.max((q_func_numeric(&rho, mu, 1e-8)? - q.evaluate(mu)).abs());
    }
    rec.record("quasiprob.q_function", inv_params.clone(), worst, 1e-6);
    let w = wigner(StateKind::Round, p.alpha, p.theta)?;
    let mus: Vec<C64> = offsets[..3].iter().map(|o| w.mean() + o * w.sigma()).collect();
    let num = wigner_numeric_grid(&rho, &mus, &WignerQuadrature::default(), Exec::default())?;
    let worst = mus
        .iter()
        .zip(&num)
        .map(|(mu, v)| (v - w.evaluate(*mu)).abs())
        .fold(0.0, f64::max);
    rec.record("quasiprob.wigner", inv_params, worst, 1e-6);

    // signal ↔ ordinary, idler ↔ tilde with T₁ = T₂ = 1
    let op = OpoParams::new(p.theta, p.alpha, p.zeta, 1.0, 1.0, 1)?;
    let st = closed_state(&op, cut)?;
    let eq = map_trotter_to_round(p.alpha, p.zeta, p.theta);
    let round = build_state_at(
        StateKind::Round,
        &DisplacementParams::new(eq.alpha_prime, eq.zeta_prime),
        &tp,
        st.dim_per_mode(),
    )?;
    rec.record("opo.identification", params.clone(), st.distance(&round.with_phase(eq.phase_theta))?, 1e-9);
    let rho = signal_density(&op, cut)?;
    rec.record("opo.signal_purity", params, (rho.purity() - 1.0 / (2.0 * p.theta).cosh()).abs(), 1e-6);
    Ok(())
}

pub fn suite(cfg: &RunConfig, sabotage: bool, random_points: usize) -> CliResult<Summary> {
    let pc = cfg.physical()?;
    let tol = cfg.tail_tol.min(VERIFY_TAIL_TOL);
    let cut = cfg.cutoff_policy().with_tail_tol(tol);
    let mut rec = Recorder { checks: Vec::new() };
    for p in grid(cfg.seed, random_points) {
        point_checks(&p, &cut, &pc, sabotage, &mut rec)?;
    }
    let failed = rec.checks.iter().filter(|c| !c.passed).count();
    Ok(Summary {
        seed: cfg.seed,
        sabotage,
        passed: failed == 0,
        total: rec.checks.len(),
        failed,
        checks: rec.checks,
    })
}

fn describe(c: &Check) -> String {
    let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
    format!("{} [{}]", c.property, params.join(" "))
}

pub fn run(args: &VerifyArgs, cfg: &RunConfig) -> CliResult<()> {
    let summary = suite(cfg, args.sabotage, args.random_points)?;
    for c in &summary.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} value={:.3e} tol={:.1e}", describe(c), c.value, c.tolerance);
    }
    println!("{} of {} checks passed", summary.total - summary.failed, summary.total);
    write_json(&cfg.out, &summary)?;
    if summary.passed {
        Ok(())
    } else {
        let failing: Vec<String> = summary.checks.iter().filter(|c| !c.passed).map(describe).collect();
        Err(CliError::PropertyFailure(format!(
            "{} of {} checks failed:\n  {}",
            summary.failed,
            summary.total,
            failing.join("\n  ")
        )))
    }
}
