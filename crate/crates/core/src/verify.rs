//! Seeded property checks grouped into suites, as driven by `dqcalc verify`.
//!
//! Every check draws its trials from [`trial_rng`], runs them in parallel and
//! reduces the defects in trial order, so a report depends only on
//! `(suite, trials, seed, tolerance override)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{DualQuaternion, Quaternion};
use crate::calculus::{
    apply, apply_quaternion, apply_via_screw, cayley_dq_forms, complexify, exp_dq, inv_dq, log_dq, pow_dq,
    screw_factor, LogBranch,
};
use crate::error::CalcError;
use crate::oracle::{nc_derivative, poly_eval_dq, poly_eval_dq_ordered, poly_eval_quat, taylor_exp};
use crate::pauli::{apply_anticommuting_pair, pascal_row_by_pauli_expansion, pauli_pascal_row};
use crate::polynomial::ValidPolynomial;
use crate::sampling::{
    anticommuting_pauli_pair, complex_polynomial, dual_quaternion_in_ball, dual_quaternion_in_box, quaternion_in_box,
    quaternion_with_norm, trial_rng, unit_vector, valid_polynomial, vector_in_box,
};
use crate::valid::{check_valid, eval_g, eval_h, ValidFunction};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 1000;

/// Degree cap and coefficient bound for random polynomials.
pub const POLY_MAX_DEGREE: u32 = 8;
pub const POLY_COEFF_BOUND: f64 = 1.0;
/// Number of series terms for the exponential oracle.
pub const TAYLOR_TERMS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Oracle,
    Roundtrip,
    Screw,
    Axioms,
    Pauli,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Oracle => "oracle",
            Suite::Roundtrip => "roundtrip",
            Suite::Screw => "screw",
            Suite::Axioms => "axioms",
            Suite::Pauli => "pauli",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Suite::All),
            "oracle" => Ok(Suite::Oracle),
            "roundtrip" => Ok(Suite::Roundtrip),
            "screw" => Ok(Suite::Screw),
            "axioms" => Ok(Suite::Axioms),
            "pauli" => Ok(Suite::Pauli),
            other => Err(format!("unknown suite '{other}'")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub trials: usize,
    pub max_defect: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_defect <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<40} {}  max_defect={:.3e}  tol={:.1e}  trials={}",
            format!("[{}] {}", self.suite, self.name),
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_defect,
            self.tolerance,
            self.trials
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed={} trials={}", self.seed, self.trials)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {} failed: {}", self.checks.len(), failed, if failed == 0 { "PASS" } else { "FAIL" })
    }
}

/// Harness configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    /// Replaces every per-check tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trials: DEFAULT_TRIALS, seed: DEFAULT_SEED, tolerance: None }
    }
}

fn sanitize(d: f64) -> f64 {
    if d.is_nan() {
        f64::INFINITY
    } else {
        d
    }
}

fn defect_or_inf(r: Result<f64, CalcError>) -> f64 {
    r.map(sanitize).unwrap_or(f64::INFINITY)
}

/// Runs `trial` for indices `0..trials` with independent generators and
/// returns the largest defect.
pub fn max_defect<F>(seed: u64, check: u64, trials: usize, trial: F) -> f64
where
    F: Fn(&mut ChaCha8Rng, usize) -> f64 + Sync,
{
    let defects: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, check, t as u64);
            sanitize(trial(&mut rng, t))
        })
        .collect();
    defects.into_iter().fold(0.0, f64::max)
}

fn rel(value: DualQuaternion, reference: DualQuaternion) -> f64 {
    value.relative_defect(reference)
}

/// A quaternion whose point `a0 + i|a1|` stays at least `margin` away from `(-∞, 0]`.
pub fn quaternion_off_negative_axis<R: Rng + ?Sized>(rng: &mut R, min_norm: f64, max_norm: f64, margin: f64) -> Quaternion {
    loop {
        let norm = rng.random_range(min_norm..=max_norm);
        let a = quaternion_with_norm(rng, norm);
        let z = complexify(a);
        let dist = if z.re > 0.0 { z.norm() } else { z.im.abs() };
        if dist >= margin {
            return a;
        }
    }
}

/// A quaternion with `|1 - A| >= margin` and components in `[-1, 1]`.
pub fn quaternion_away_from_one<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> Quaternion {
    loop {
        let a = quaternion_in_box(rng, 1.0);
        if (Quaternion::ONE - a).norm() >= margin {
            return a;
        }
    }
}

/// Builtin or polynomial chosen by trial index, with an argument inside its domain.
fn builtin_case<R: Rng + ?Sized>(rng: &mut R, trial: usize) -> (ValidFunction, DualQuaternion) {
    let dual = quaternion_in_box(rng, 1.0);
    match trial % 4 {
        0 => (ValidFunction::exp(), DualQuaternion::new(quaternion_in_box(rng, 1.0), dual)),
        1 => {
            let alpha = rng.random_range(-2.0..=2.0);
            let a = quaternion_off_negative_axis(rng, 0.5, 2.0, 0.25);
            (ValidFunction::pow(alpha).expect("finite exponent"), DualQuaternion::new(a, dual))
        }
        2 => (ValidFunction::cayley(), DualQuaternion::new(quaternion_away_from_one(rng, 0.5), dual)),
        _ => (
            ValidFunction::polynomial(valid_polynomial(rng, POLY_MAX_DEGREE, POLY_COEFF_BOUND)),
            DualQuaternion::new(quaternion_in_box(rng, 1.0), dual),
        ),
    }
}

struct Check {
    suite: Suite,
    name: &'static str,
    tolerance: f64,
    run: fn(&VerifyConfig, u64) -> (usize, f64),
}

const CHECKS: &[Check] = &[
    Check { suite: Suite::Oracle, name: "apply_vs_direct_algebra", tolerance: 1e-8, run: oracle_equivalence },
    Check { suite: Suite::Oracle, name: "directional_derivative", tolerance: 1e-10, run: derivative_consistency },
    Check { suite: Suite::Oracle, name: "scalar_part_centrality", tolerance: 1e-13, run: centrality },
    Check { suite: Suite::Oracle, name: "exp_three_way", tolerance: 1e-10, run: exp_three_way },
    Check { suite: Suite::Oracle, name: "exp_sinc_pi_edge", tolerance: 1e-12, run: exp_sinc_edge },
    Check { suite: Suite::Axioms, name: "calculus_axioms", tolerance: 1e-9, run: axioms },
    Check { suite: Suite::Axioms, name: "conjugation_function", tolerance: 1e-12, run: conjugation_function },
    Check { suite: Suite::Axioms, name: "norm_preservation", tolerance: 1e-11, run: norm_preservation },
    Check { suite: Suite::Axioms, name: "builtin_validity", tolerance: 1e-12, run: builtin_validity },
    Check { suite: Suite::Roundtrip, name: "exp_log", tolerance: 1e-9, run: log_roundtrip },
    Check { suite: Suite::Roundtrip, name: "exp_log_scalar_real", tolerance: 1e-9, run: log_roundtrip_scalar },
    Check { suite: Suite::Roundtrip, name: "inverse_two_sided", tolerance: 1e-12, run: inverse_two_sided },
    Check { suite: Suite::Roundtrip, name: "square_vs_product", tolerance: 1e-10, run: square_vs_product },
    Check { suite: Suite::Roundtrip, name: "pow_minus_one_vs_inverse", tolerance: 1e-10, run: pow_minus_one },
    Check { suite: Suite::Roundtrip, name: "half_power_squared", tolerance: 1e-9, run: half_power_squared },
    Check { suite: Suite::Roundtrip, name: "cayley_two_forms", tolerance: 1e-11, run: cayley_forms },
    Check { suite: Suite::Screw, name: "screw_vs_direct", tolerance: 1e-9, run: screw_vs_direct },
    Check { suite: Suite::Screw, name: "screw_reassembly", tolerance: 1e-12, run: screw_reassembly },
    Check { suite: Suite::Pauli, name: "anticommuting_pair", tolerance: 1e-10, run: pauli_pairs },
    Check { suite: Suite::Pauli, name: "pascal_rows_0_to_8", tolerance: 0.0, run: pascal_rows },
];

/// Runs every check of `suite` (all suites for [`Suite::All`]).
pub fn run(suite: Suite, config: &VerifyConfig) -> Report {
    let checks = CHECKS
        .iter()
        .enumerate()
        .filter(|(_, c)| suite == Suite::All || c.suite == suite)
        .map(|(id, c)| {
            let (trials, defect) = (c.run)(config, id as u64);
            CheckResult {
                suite: c.suite,
                name: c.name,
                trials,
                max_defect: defect,
                tolerance: config.tolerance.unwrap_or(c.tolerance),
            }
        })
        .collect();
    Report { seed: config.seed, trials: config.trials, checks }
}

fn oracle_equivalence(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let p = valid_polynomial(rng, POLY_MAX_DEGREE, POLY_COEFF_BOUND);
        let eta = dual_quaternion_in_box(rng);
        defect_or_inf(apply(&ValidFunction::polynomial(p.clone()), eta).map(|v| rel(v, poly_eval_dq(&p, eta))))
    });
    (cfg.trials, d)
}

fn derivative_consistency(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let p = valid_polynomial(rng, POLY_MAX_DEGREE, POLY_COEFF_BOUND);
        let eta = dual_quaternion_in_box(rng);
        let first_order = DualQuaternion::new(poly_eval_quat(&p, eta.real), nc_derivative(&p, eta.real, eta.dual));
        rel(first_order, poly_eval_dq(&p, eta))
    });
    (cfg.trials, d)
}

fn centrality(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let p = valid_polynomial(rng, POLY_MAX_DEGREE, POLY_COEFF_BOUND);
        let eta = dual_quaternion_in_box(rng);
        let zeta = dual_quaternion_in_box(rng);
        let s = DualQuaternion::new(Quaternion::from_real(eta.real.w), Quaternion::from_real(eta.dual.w));
        let order = rel(poly_eval_dq_ordered(&p, eta, true), poly_eval_dq_ordered(&p, eta, false));
        order.max(rel(s * zeta, zeta * s))
    });
    (cfg.trials, d)
}

fn exp_three_way(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let exp = ValidFunction::exp();
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let eta = dual_quaternion_in_ball(rng, 2.0);
        let series = taylor_exp(eta, TAYLOR_TERMS);
        let closed = exp_dq(eta);
        let general = apply(&exp, eta);
        defect_or_inf(general.map(|g| rel(closed, series).max(rel(g, series)).max(rel(g, closed))))
    });
    (cfg.trials, d)
}

fn exp_sinc_edge(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(50);
    let exp = ValidFunction::exp();
    let d = max_defect(cfg.seed, id, trials, |rng, _| {
        let axis = unit_vector(rng);
        let w = vector_in_box(rng, 1.0);
        let perp = w - axis.scale(w.dot(axis));
        let eta = DualQuaternion::new(axis.scale(PI).to_quaternion(), perp.to_quaternion());
        let minus_one = DualQuaternion::from_real(-Quaternion::ONE);
        let general = defect_or_inf(apply(&exp, eta).map(|g| (g - minus_one).component_norm()));
        (exp_dq(eta) - minus_one).component_norm().max(general)
    });
    (trials, d)
}

fn axioms(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(500);
    let d = max_defect(cfg.seed, id, trials, |rng, _| {
        let p = valid_polynomial(rng, POLY_MAX_DEGREE, POLY_COEFF_BOUND);
        let q = valid_polynomial(rng, POLY_MAX_DEGREE, POLY_COEFF_BOUND);
        let a = rng.random_range(-2.0..=2.0);
        let eta = dual_quaternion_in_box(rng);
        let f = |poly: ValidPolynomial| apply(&ValidFunction::polynomial(poly), eta);
        defect_or_inf((|| {
            let (fp, fq) = (f(p.clone())?, f(q.clone())?);
            Ok(rel(f(p.clone() + q.clone())?, fp + fq)
                .max(rel(f(p.clone() * q.clone())?, fp * fq))
                .max(rel(f(p.conj())?, fp.conj()))
                .max(rel(f(p.scale(a))?, fp.scale(a)))
                .max(rel(f(ValidPolynomial::constant(1.0))?, DualQuaternion::ONE))
                .max(rel(f(ValidPolynomial::z())?, eta)))
        })())
    });
    (trials, d)
}

fn conjugation_function(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let conj = ValidFunction::polynomial(ValidPolynomial::conjugation());
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let eta = dual_quaternion_in_box(rng);
        defect_or_inf(apply(&conj, eta).map(|v| rel(v, eta.conj())))
    });
    (cfg.trials, d)
}

fn norm_preservation(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(500);
    let d = max_defect(cfg.seed, id, trials, |rng, t| {
        let (f, eta) = builtin_case(rng, t);
        let a = eta.real;
        defect_or_inf(apply_quaternion(&f, a).map(|fa| {
            let fz = f.eval(complexify(a)).norm();
            (fa.norm() - fz).abs() / (1.0 + fa.norm())
        }))
    });
    (trials, d)
}

fn builtin_validity(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(200);
    let d = max_defect(cfg.seed, id, trials, |rng, t| {
        let f = match t % 4 {
            0 => ValidFunction::exp(),
            1 => ValidFunction::pow(rng.random_range(-2.0..=2.0)).expect("finite exponent"),
            2 => ValidFunction::cayley(),
            _ => ValidFunction::polynomial(valid_polynomial(rng, POLY_MAX_DEGREE, POLY_COEFF_BOUND)),
        };
        let z = loop {
            let z = Complex64::from_polar(3.0 * rng.random::<f64>().sqrt(), rng.random_range(-PI..PI));
            if f.in_domain(z) && (z - 1.0).norm() > 0.1 {
                break z;
            }
        };
        let report = check_valid(&f, &[z]);
        let fz = f.eval(z);
        let validity = report.max_defect / (1.0 + fz.norm());
        let recon = (|| {
            let (g, h) = (eval_g(&f, z)?, eval_h(&f, z)?);
            Ok::<_, CalcError>((fz - Complex64::new(g, z.im * h)).norm() / (1.0 + fz.norm()))
        })();
        validity.max(defect_or_inf(recon))
    });
    (trials, d)
}

fn log_argument<R: Rng + ?Sized>(rng: &mut R) -> DualQuaternion {
    let norm = 10f64.powf(rng.random_range(-1.0..=1.0));
    DualQuaternion::new(quaternion_with_norm(rng, norm), quaternion_in_box(rng, 1.0))
}

fn log_roundtrip(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(500);
    let d = max_defect(cfg.seed, id, trials, |rng, _| {
        let eta = log_argument(rng);
        defect_or_inf(log_dq(eta, &LogBranch::default()).map(|l| rel(exp_dq(l), eta)))
    });
    (trials, d)
}

fn log_roundtrip_scalar(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(50);
    let d = max_defect(cfg.seed, id, trials, |rng, t| {
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let a0 = sign * 10f64.powf(rng.random_range(-1.0..=1.0));
        let b0 = rng.random_range(-1.0..=1.0);
        // every third case has b1 = 0 and exercises the fallback axis
        let b1 = if t % 3 == 0 { crate::algebra::Vector3::ZERO } else { vector_in_box(rng, 1.0) };
        let eta = DualQuaternion::new(Quaternion::from_real(a0), Quaternion::from_parts(b0, b1));
        defect_or_inf(log_dq(eta, &LogBranch::default()).map(|l| rel(exp_dq(l), eta)))
    });
    (trials, d)
}

fn power_argument<R: Rng + ?Sized>(rng: &mut R) -> DualQuaternion {
    DualQuaternion::new(quaternion_off_negative_axis(rng, 0.5, 2.0, 0.25), quaternion_in_box(rng, 1.0))
}

fn inverse_two_sided(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let norm = rng.random_range(0.5..=2.0);
        let eta = DualQuaternion::new(quaternion_with_norm(rng, norm), quaternion_in_box(rng, 1.0));
        defect_or_inf(inv_dq(eta).map(|inv| {
            (eta * inv - DualQuaternion::ONE)
                .component_norm()
                .max((inv * eta - DualQuaternion::ONE).component_norm())
        }))
    });
    (cfg.trials, d)
}

fn square_vs_product(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let eta = power_argument(rng);
        defect_or_inf(pow_dq(eta, 2.0).map(|v| rel(v, eta * eta)))
    });
    (cfg.trials, d)
}

fn pow_minus_one(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let eta = power_argument(rng);
        defect_or_inf((|| Ok(rel(pow_dq(eta, -1.0)?, inv_dq(eta)?)))())
    });
    (cfg.trials, d)
}

fn half_power_squared(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let eta = power_argument(rng);
        defect_or_inf(pow_dq(eta, 0.5).map(|r| rel(r * r, eta)))
    });
    (cfg.trials, d)
}

fn cayley_forms(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(500);
    let d = max_defect(cfg.seed, id, trials, |rng, _| {
        let eta = DualQuaternion::new(quaternion_away_from_one(rng, 0.5), quaternion_in_box(rng, 1.0));
        defect_or_inf(cayley_dq_forms(eta).map(|(closed, sandwich)| rel(closed, sandwich)))
    });
    (trials, d)
}

fn screw_vs_direct(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(500);
    let d = max_defect(cfg.seed, id, trials, |rng, t| {
        let (f, eta) = builtin_case(rng, t);
        defect_or_inf((|| Ok(rel(apply_via_screw(&f, eta)?, apply(&f, eta)?)))())
    });
    (trials, d)
}

fn screw_reassembly(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let trials = cfg.trials.min(500);
    let d = max_defect(cfg.seed, id, trials, |rng, _| {
        let eta = dual_quaternion_in_box(rng);
        let s = screw_factor(eta);
        let core_dual = s.core.dual.vector();
        let axis = s.core.real.vector();
        let parallel = core_dual.cross(axis).norm() / (1.0 + axis.norm() * core_dual.norm());
        rel(s.reassemble(), eta).max(parallel)
    });
    (trials, d)
}

fn pauli_pairs(cfg: &VerifyConfig, id: u64) -> (usize, f64) {
    let d = max_defect(cfg.seed, id, cfg.trials, |rng, _| {
        let (a, b) = anticommuting_pauli_pair(rng, 1.5);
        let coeffs = complex_polynomial(rng, 10, 1.0);
        let direct = (&a + &b).horner(&coeffs);
        defect_or_inf(
            apply_anticommuting_pair(&coeffs, &a, &b).map(|m| (&m - &direct).norm() / direct.norm().max(1.0)),
        )
    });
    (cfg.trials, d)
}

fn pascal_rows(_: &VerifyConfig, _: u64) -> (usize, f64) {
    let mismatches = (0..=8usize)
        .filter(|&n| {
            let split: Vec<i64> = pauli_pascal_row(n).expect("n <= 8").into_iter().map(|c| c as i64).collect();
            split != pascal_row_by_pauli_expansion(n)
        })
        .count();
    (9, mismatches as f64)
}
