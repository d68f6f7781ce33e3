//! Function spec strings and JSON input/output for the `eval` subcommand.

use std::fs;
use std::str::FromStr;

use dqcalc::calculus::ResolvedLogBranch;
use dqcalc::{
    apply, cayley_dq, dq_abs, exp_dq, inv_dq, log_dq_with_branch, pow_dq, CalcError, DualQuaternion, LogBranch,
    ValidFunction, ValidPolynomial, Vector3,
};
use serde::Serialize;

/// A parsed `--fn` value. Polynomials still refer to their file.
#[derive(Debug, Clone, PartialEq)]
pub enum FnSpec {
    Exp,
    Log,
    Pow(f64),
    Cayley,
    Inv,
    Abs,
    PolyFile(String),
}

/// A spec with any file contents loaded.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedSpec {
    Exp,
    Log,
    Pow(f64),
    Cayley,
    Inv,
    Abs,
    Poly(ValidPolynomial),
}

impl FromStr for FnSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exp" => return Ok(FnSpec::Exp),
            "log" => return Ok(FnSpec::Log),
            "cayley" => return Ok(FnSpec::Cayley),
            "inv" => return Ok(FnSpec::Inv),
            "abs" => return Ok(FnSpec::Abs),
            _ => {}
        }
        if let Some(alpha) = s.strip_prefix("pow:") {
            let alpha: f64 = alpha.parse().map_err(|_| format!("bad exponent in '{s}'"))?;
            if !alpha.is_finite() {
                return Err(format!("exponent must be finite in '{s}'"));
            }
            return Ok(FnSpec::Pow(alpha));
        }
        if let Some(path) = s.strip_prefix("poly:@") {
            if path.is_empty() {
                return Err("poly:@ needs a file path".into());
            }
            return Ok(FnSpec::PolyFile(path.to_string()));
        }
        Err(format!("unknown function '{s}' (expected exp, log, pow:ALPHA, cayley, inv, abs or poly:@FILE)"))
    }
}

impl FnSpec {
    pub fn load(self) -> Result<LoadedSpec, String> {
        Ok(match self {
            FnSpec::Exp => LoadedSpec::Exp,
            FnSpec::Log => LoadedSpec::Log,
            FnSpec::Pow(a) => LoadedSpec::Pow(a),
            FnSpec::Cayley => LoadedSpec::Cayley,
            FnSpec::Inv => LoadedSpec::Inv,
            FnSpec::Abs => LoadedSpec::Abs,
            FnSpec::PolyFile(path) => {
                let text = fs::read_to_string(&path).map_err(|e| format!("cannot read {path}: {e}"))?;
                let p: ValidPolynomial =
                    serde_json::from_str(&text).map_err(|e| format!("bad polynomial JSON in {path}: {e}"))?;
                if !p.is_finite() {
                    return Err(format!("non-finite coefficient in {path}"));
                }
                LoadedSpec::Poly(p)
            }
        })
    }
}

/// Reads a dual quaternion from inline JSON or `@file`.
pub fn parse_dual_quaternion(arg: &str) -> Result<DualQuaternion, String> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
        None => arg.to_string(),
    };
    let eta: DualQuaternion = serde_json::from_str(&text).map_err(|e| format!("bad dual quaternion JSON: {e}"))?;
    if !eta.is_finite() {
        return Err("dual quaternion components must be finite".into());
    }
    Ok(eta)
}

/// Parses `x,y,z`.
pub fn parse_axis(s: &str) -> Result<Vector3, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad axis component '{p}'")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [x, y, z] => Ok(Vector3::new(*x, *y, *z)),
        _ => Err(format!("axis needs three components, got '{s}'")),
    }
}

#[derive(Debug, Serialize)]
pub struct BranchJson {
    pub t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub axis: Vector3,
    pub p: Vector3,
}

impl From<ResolvedLogBranch> for BranchJson {
    fn from(b: ResolvedLogBranch) -> Self {
        BranchJson { t: b.t, n: b.n, axis: b.axis, p: b.p }
    }
}

#[derive(Debug, Serialize)]
pub struct LogJson {
    pub result: DualQuaternion,
    pub branch: BranchJson,
}

pub enum Output {
    Value(DualQuaternion),
    Log(LogJson),
}

pub fn evaluate(spec: &LoadedSpec, eta: DualQuaternion, branch: &LogBranch) -> Result<Output, CalcError> {
    let value = match spec {
        LoadedSpec::Exp => exp_dq(eta),
        LoadedSpec::Log => {
            let (result, b) = log_dq_with_branch(eta, branch)?;
            return Ok(Output::Log(LogJson { result, branch: b.into() }));
        }
        LoadedSpec::Pow(alpha) => pow_dq(eta, *alpha)?,
        LoadedSpec::Cayley => cayley_dq(eta)?,
        LoadedSpec::Inv => inv_dq(eta)?,
        LoadedSpec::Abs => dq_abs(eta)?.to_dual_quaternion(),
        LoadedSpec::Poly(p) => apply(&ValidFunction::polynomial(p.clone()), eta)?,
    };
    Ok(Output::Value(value))
}
