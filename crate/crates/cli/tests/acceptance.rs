//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Sampling uses its own seed so these trials are disjoint from the ones in
//! `dqcalc verify`; the reference values come from direct algebra, series,
//! matrix arithmetic and `num_complex`, never from the closed forms under test.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dqcalc::calculus::complexify;
use dqcalc::oracle::{nc_derivative, poly_eval_dq, poly_eval_quat, taylor_exp};
use dqcalc::pauli::{apply_anticommuting_pair, pauli_pascal_row};
use dqcalc::sampling::{
    anticommuting_pauli_pair, complex_polynomial, dual_quaternion_in_ball, dual_quaternion_in_box, quaternion_in_box,
    quaternion_with_norm, trial_rng, unit_vector, valid_polynomial, vector_in_box,
};
use dqcalc::{
    apply, apply_quaternion, apply_via_screw, cayley_dq_forms, exp_dq, inv_dq, log_dq, pow_dq, screw_factor,
    ComplexMatrix, ComplexScalar, DualQuaternion, LogBranch, Quaternion, ValidFunction, ValidPolynomial, Vector3,
};
use rand::Rng;

const SEED: u64 = 20_260_101;

struct Outcome {
    id: u32,
    title: &'static str,
    detail: String,
    passed: bool,
}

fn worst(defects: impl IntoIterator<Item = f64>) -> f64 {
    defects.into_iter().map(|d| if d.is_nan() { f64::INFINITY } else { d }).fold(0.0, f64::max)
}

fn rel(v: DualQuaternion, r: DualQuaternion) -> f64 {
    v.relative_defect(r)
}

fn outcome(id: u32, title: &'static str, parts: &[(&str, usize, f64, f64)]) -> Outcome {
    let passed = parts.iter().all(|&(_, _, d, tol)| d <= tol);
    let detail = parts
        .iter()
        .map(|(name, n, d, tol)| format!("{name}: {d:.3e} <= {tol:.0e} over {n}"))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { id, title, detail, passed }
}

/// Off `(-∞, 0]` by at least 0.25 in the complexified plane, `|A| ∈ [0.5, 2]`.
fn principal_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let norm = rng.random_range(0.5..=2.0);
        let a = quaternion_with_norm(rng, norm);
        let z = complexify(a);
        let dist = if z.re > 0.0 { z.norm() } else { z.im.abs() };
        if dist >= 0.25 {
            return a;
        }
    }
}

fn away_from_one<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let a = quaternion_in_box(rng, 1.0);
        if (Quaternion::ONE - a).norm() >= 0.5 {
            return a;
        }
    }
}

/// Builtins and polynomials in rotation, each with an in-domain argument and
/// the scalar complex function used as reference.
fn rotating_case<R: Rng>(rng: &mut R, t: usize) -> (ValidFunction, Box<dyn Fn(ComplexScalar) -> ComplexScalar>, Quaternion) {
    match t % 4 {
        0 => (ValidFunction::exp(), Box::new(|z: ComplexScalar| z.exp()), quaternion_in_box(rng, 1.0)),
        1 => {
            let alpha: f64 = rng.random_range(-2.0..=2.0);
            let a = principal_quaternion(rng);
            (ValidFunction::pow(alpha).unwrap(), Box::new(move |z: ComplexScalar| z.powf(alpha)), a)
        }
        2 => {
            let one = ComplexScalar::new(1.0, 0.0);
            (ValidFunction::cayley(), Box::new(move |z| (one + z) / (one - z)), away_from_one(rng))
        }
        _ => {
            let p = valid_polynomial(rng, 8, 1.0);
            let q = p.clone();
            (ValidFunction::polynomial(p), Box::new(move |z| q.eval(z)), quaternion_in_box(rng, 1.0))
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let d = worst((0..1000).map(|t| {
        let mut rng = trial_rng(SEED, 1, t);
        let p = valid_polynomial(&mut rng, 8, 1.0);
        let eta = dual_quaternion_in_box(&mut rng);
        apply(&ValidFunction::polynomial(p.clone()), eta).map_or(f64::INFINITY, |v| rel(v, poly_eval_dq(&p, eta)))
    }));
    let elapsed = start.elapsed();
    let mut o = outcome(1, "closed form vs direct algebra on polynomials", &[("relative defect", 1000, d, 1e-8)]);
    o.detail.push_str(&format!("; runtime {:.2}s <= 30s", elapsed.as_secs_f64()));
    o.passed &= elapsed <= Duration::from_secs(30);
    o
}

fn criterion_2() -> Outcome {
    let d = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 2, t);
        let p = valid_polynomial(&mut rng, 8, 1.0);
        let q = valid_polynomial(&mut rng, 8, 1.0);
        let s: f64 = rng.random_range(-2.0..=2.0);
        let eta = dual_quaternion_in_box(&mut rng);
        let f = |poly: ValidPolynomial| apply(&ValidFunction::polynomial(poly), eta).unwrap();
        let (fp, fq) = (f(p.clone()), f(q.clone()));
        [
            rel(f(p.clone() + q.clone()), fp + fq),
            rel(f(p.clone() * q.clone()), fp * fq),
            rel(f(p.conj()), fp.conj()),
            rel(f(p.scale(s)), fp.scale(s)),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }));
    outcome(2, "calculus axioms (sum, product, conjugate, real scalar)", &[("defect", 500, d, 1e-9)])
}

fn criterion_3() -> Outcome {
    let d = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 3, t);
        let p = valid_polynomial(&mut rng, 8, 1.0);
        let eta = dual_quaternion_in_box(&mut rng);
        let linear = DualQuaternion::new(poly_eval_quat(&p, eta.real), nc_derivative(&p, eta.real, eta.dual));
        rel(linear, poly_eval_dq(&p, eta))
    }));
    outcome(3, "noncommutative directional derivative", &[("defect", 500, d, 1e-10)])
}

fn criterion_4() -> Outcome {
    let exp = ValidFunction::exp();
    let three_way = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 4, t);
        let eta = dual_quaternion_in_ball(&mut rng, 2.0);
        let series = taylor_exp(eta, 40);
        let closed = exp_dq(eta);
        let general = apply(&exp, eta).unwrap();
        rel(closed, series).max(rel(general, series)).max(rel(general, closed))
    }));
    let minus_one = DualQuaternion::from_real(-Quaternion::ONE);
    let edge = worst((0..50).map(|t| {
        let mut rng = trial_rng(SEED, 40, t);
        let axis = unit_vector(&mut rng);
        let w = vector_in_box(&mut rng, 1.0);
        let perp = w - axis.scale(w.dot(axis));
        let eta = DualQuaternion::new(axis.scale(PI).to_quaternion(), perp.to_quaternion());
        let series = (taylor_exp(eta, 60) - minus_one).component_norm();
        let closed = (exp_dq(eta) - minus_one).component_norm();
        let general = (apply(&exp, eta).unwrap() - minus_one).component_norm();
        series.max(closed).max(general)
    }));
    outcome(
        4,
        "exp closed form, general calculus and 40-term series",
        &[("three-way defect", 500, three_way, 1e-10), ("sinc(pi) edge", 50, edge, 1e-12)],
    )
}

fn criterion_5() -> Outcome {
    let branch = LogBranch::default();
    let random = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 5, t);
        let norm = 10f64.powf(rng.random_range(-1.0..=1.0));
        let eta = DualQuaternion::new(quaternion_with_norm(&mut rng, norm), quaternion_in_box(&mut rng, 1.0));
        log_dq(eta, &branch).map_or(f64::INFINITY, |l| rel(exp_dq(l), eta))
    }));
    let constructed = worst((0..50).map(|t| {
        let mut rng = trial_rng(SEED, 50, t);
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let a0 = sign * 10f64.powf(rng.random_range(-1.0..=1.0));
        let b1 = if t % 4 < 2 { Vector3::ZERO } else { vector_in_box(&mut rng, 1.0) };
        let eta = DualQuaternion::new(Quaternion::from_real(a0), Quaternion::from_parts(rng.random_range(-1.0..=1.0), b1));
        log_dq(eta, &branch).map_or(f64::INFINITY, |l| rel(exp_dq(l), eta))
    }));
    outcome(
        5,
        "exp(log(eta)) round trip",
        &[("random", 500, random, 1e-9), ("scalar real part", 50, constructed, 1e-9)],
    )
}

fn criterion_6() -> Outcome {
    let d = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 6, t);
        let (f, scalar, a) = rotating_case(&mut rng, t as usize);
        let fa = apply_quaternion(&f, a).unwrap().norm();
        (fa - scalar(complexify(a)).norm()).abs() / (1.0 + fa)
    }));
    outcome(6, "quaternion norm equals complex modulus", &[("scaled defect", 500, d, 1e-11)])
}

fn criterion_7() -> Outcome {
    let n = 1000;
    let inverse = worst((0..n).map(|t| {
        let mut rng = trial_rng(SEED, 7, t);
        let eta = DualQuaternion::new(principal_quaternion(&mut rng), quaternion_in_box(&mut rng, 1.0));
        let inv = inv_dq(eta).unwrap();
        (eta * inv - DualQuaternion::ONE).component_norm().max((inv * eta - DualQuaternion::ONE).component_norm())
    }));
    let powers: Vec<[f64; 3]> = (0..n)
        .map(|t| {
            let mut rng = trial_rng(SEED, 70, t);
            let eta = DualQuaternion::new(principal_quaternion(&mut rng), quaternion_in_box(&mut rng, 1.0));
            let root = pow_dq(eta, 0.5).unwrap();
            [
                rel(pow_dq(eta, 2.0).unwrap(), eta * eta),
                rel(pow_dq(eta, -1.0).unwrap(), inv_dq(eta).unwrap()),
                rel(root * root, eta),
            ]
        })
        .collect();
    let column = |i: usize| worst(powers.iter().map(|p| p[i]));
    outcome(
        7,
        "inverse and powers",
        &[
            ("eta * inv", n as usize, inverse, 1e-12),
            ("pow 2", n as usize, column(0), 1e-10),
            ("pow -1", n as usize, column(1), 1e-10),
            ("sqrt squared", n as usize, column(2), 1e-9),
        ],
    )
}

fn criterion_8() -> Outcome {
    let d = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 8, t);
        let eta = DualQuaternion::new(away_from_one(&mut rng), quaternion_in_box(&mut rng, 1.0));
        let (closed, sandwich) = cayley_dq_forms(eta).unwrap();
        rel(closed, sandwich)
    }));
    outcome(8, "Cayley transform, two forms", &[("defect", 500, d, 1e-11)])
}

fn criterion_9() -> Outcome {
    let direct = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 9, t);
        let (f, _, a) = rotating_case(&mut rng, t as usize);
        let eta = DualQuaternion::new(a, quaternion_in_box(&mut rng, 1.0));
        rel(apply_via_screw(&f, eta).unwrap(), apply(&f, eta).unwrap())
    }));
    let reassembly = worst((0..500).map(|t| {
        let mut rng = trial_rng(SEED, 90, t);
        let eta = dual_quaternion_in_box(&mut rng);
        let s = screw_factor(eta);
        let one_plus = DualQuaternion::new(Quaternion::ONE, s.r.to_quaternion());
        let one_minus = DualQuaternion::new(Quaternion::ONE, -s.r.to_quaternion());
        rel(one_plus * s.core * one_minus, eta)
    }));
    outcome(
        9,
        "screw factorization path",
        &[("vs direct", 500, direct, 1e-9), ("reassembly", 500, reassembly, 1e-12)],
    )
}

/// `(a σx + b σy)^n` expanded word by word: each word is `±σx^{n-j} σy^j`.
fn pascal_by_words(n: usize) -> Vec<i64> {
    let (sx, sy) = (ComplexMatrix::pauli_x(), ComplexMatrix::pauli_y());
    let power = |m: &ComplexMatrix, k: usize| (0..k).fold(ComplexMatrix::identity(2), |acc, _| &acc * m);
    let mut row = vec![0i64; n + 1];
    for word in 0..(1usize << n) {
        let product = (0..n).fold(ComplexMatrix::identity(2), |acc, bit| {
            if word >> bit & 1 == 1 {
                &acc * &sy
            } else {
                &acc * &sx
            }
        });
        let j = word.count_ones() as usize;
        let normal = &power(&sx, n - j) * &power(&sy, j);
        let sign = if (&product - &normal).norm() < 1e-12 {
            1
        } else if (&product + &normal).norm() < 1e-12 {
            -1
        } else {
            panic!("word {word:b} is not ± the normal-ordered product");
        };
        row[j] += sign;
    }
    row
}

fn criterion_10() -> Outcome {
    let n = 1000;
    let pairs = worst((0..n).map(|t| {
        let mut rng = trial_rng(SEED, 10, t);
        let (a, b) = anticommuting_pauli_pair(&mut rng, 1.5);
        let coeffs = complex_polynomial(&mut rng, 10, 1.0);
        let sum = &a + &b;
        let direct = coeffs
            .iter()
            .rev()
            .fold(ComplexMatrix::zeros(2), |acc, &c| &(&acc * &sum) + &ComplexMatrix::identity(2).scale(c));
        let split = apply_anticommuting_pair(&coeffs, &a, &b).unwrap();
        (&split - &direct).norm() / direct.norm().max(1.0)
    }));
    let mismatched = (0..=8)
        .filter(|&n| {
            let row: Vec<i64> = pauli_pascal_row(n).unwrap().into_iter().map(|c| c as i64).collect();
            row != pascal_by_words(n)
        })
        .count();
    outcome(
        10,
        "anti-commuting pairs and Pauli-Pascal rows",
        &[("pair defect", n as usize, pairs, 1e-10), ("rows 0..=8 mismatched", 9, mismatched as f64, 0.0)],
    )
}

fn criterion_11() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_dqcalc"))
            .args(["verify", "--suite", "all", "--seed", "42", "--trials", "1000"])
            .output()
            .expect("spawn dqcalc")
    };
    let (first, second) = (run(), run());
    let identical = first.stdout == second.stdout && !first.stdout.is_empty();
    let ok = first.status.success() && second.status.success();
    Outcome {
        id: 11,
        title: "verify report is deterministic",
        detail: format!(
            "byte-identical: {identical}; exit codes {:?}/{:?}; {} bytes",
            first.status.code(),
            second.status.code(),
            first.stdout.len()
        ),
        passed: identical && ok,
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut failed = 0;
    for c in criteria {
        let o = c();
        if !o.passed {
            failed += 1;
        }
        println!("criterion {:>2} {}  {} ({})", o.id, if o.passed { "PASS" } else { "FAIL" }, o.title, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
