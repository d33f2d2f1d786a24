//! Run configuration, dispatch and JSON reports for the experiments.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::fundamental_invariants;
use crate::nilcone::{
    basis_check, delta_evaluation_matrix, gl3_suite, jacobian_minor_certificate, power_weight_dimension_scan, question_experiment,
    seq::delta_evaluation_matrix_random, GenerationReport, ScanMethod, Verdict,
};
use crate::poly::Polynomial;
use crate::ring::{Characteristic, Ctx, RingContext};
use crate::semiinv::{basic, verify_semiinvariant, Family};
use crate::weight::Weight;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    Invariants { n: usize },
    HwvBuild { n: usize, t: usize, set: Vec<usize>, family: Family },
    HwvVerify { n: usize, polynomial: String, lambda: Weight },
    Delta { n: usize, t: usize, randomized: bool },
    Basis { n: usize, t: usize, family: Family },
    Jacobian { n: usize, t: usize },
    Gl3 { cap: u32 },
    Scan { n: usize, t: usize, r: u32, method: ScanMethod },
    Question { n: usize, lambda: Weight, tuple_cap: Option<usize> },
}

impl Command {
    fn n(&self) -> usize {
        match self {
            Command::Invariants { n }
            | Command::HwvBuild { n, .. }
            | Command::HwvVerify { n, .. }
            | Command::Delta { n, .. }
            | Command::Basis { n, .. }
            | Command::Jacobian { n, .. }
            | Command::Scan { n, .. }
            | Command::Question { n, .. } => *n,
            Command::Gl3 { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub characteristic: Option<u64>,
    pub max_degree: Option<u32>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, characteristic: None, max_degree: None, seed: 0 }
    }

    /// Checks everything that can be checked without running the experiment.
    pub fn validate(&self) -> Result<Ctx> {
        let ch = Characteristic::from_option(self.characteristic)?;
        let n = self.command.n();
        let ctx = RingContext::with(n, ch, Vec::<String>::new())?;
        let t_range = |t: usize| {
            if t == 0 || t >= n {
                Err(Error::InvalidArgument(format!("t = {t} must lie in 1..={}", n - 1)))
            } else {
                Ok(())
            }
        };
        let weight_len = |w: &Weight| {
            if w.n() != n {
                Err(Error::InvalidArgument(format!("weight {w} has length {} but n = {n}", w.n())))
            } else {
                Ok(())
            }
        };
        match &self.command {
            Command::HwvBuild { t, .. } | Command::Delta { t, .. } | Command::Basis { t, .. } | Command::Scan { t, .. } => t_range(*t)?,
            Command::Jacobian { t, .. } => {
                if n < 3 || (*t != 1 && *t != n - 2) {
                    return Err(Error::InvalidArgument(format!("jacobian needs t = 1 or t = n-2 and n >= 3 (got n = {n}, t = {t})")));
                }
            }
            Command::HwvVerify { lambda, .. } | Command::Question { lambda, .. } => weight_len(lambda)?,
            Command::Invariants { .. } | Command::Gl3 { .. } => {}
        }
        if let Command::Scan { method: ScanMethod::Counting, .. } = self.command {
            if ch != Characteristic::Zero {
                return Err(Error::InvalidArgument("the counting scan is only valid in characteristic 0".into()));
            }
        }
        if matches!(self.command, Command::Gl3 { .. } | Command::Jacobian { .. }) && ch != Characteristic::Zero {
            return Err(Error::InvalidArgument("this experiment runs over the rationals only".into()));
        }
        Ok(ctx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
        }
    }

    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Generates => Outcome::Pass,
            Verdict::DoesNotGenerate => Outcome::Fail,
            Verdict::Inconclusive => Outcome::Inconclusive,
        }
    }

    fn check(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDims {
    pub degree: u32,
    pub hwv_dim: u64,
    pub quotient_dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub inputs: RunConfig,
    pub per_degree_dims: Vec<DegreeDims>,
    pub verdict: Outcome,
    pub results: Value,
    pub certificates: Vec<Certificate>,
    pub timing: Timing,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report without the wall-clock time, for reproducibility comparisons.
    pub fn deterministic_part(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v.as_object_mut().expect("object").remove("timing");
        v
    }
}

fn poly_cert(name: impl Into<String>, f: &Polynomial) -> Certificate {
    Certificate { name: name.into(), value: f.content_hash() }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn generation_dims(g: &GenerationReport) -> Vec<DegreeDims> {
    g.layers.iter().map(|l| DegreeDims { degree: l.degree, hwv_dim: l.hwv_dim as u64, quotient_dim: l.quotient_dim as u64 }).collect()
}

/// Runs the configured experiment.
pub fn dispatch(config: &RunConfig) -> Result<Report> {
    let ctx = config.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut dims = Vec::new();
    let mut certificates = Vec::new();
    let (verdict, results) = match &config.command {
        Command::Invariants { .. } => {
            let s = fundamental_invariants(&ctx);
            for (i, f) in s.iter().enumerate() {
                certificates.push(poly_cert(format!("s{}", i + 1), f));
            }
            (Outcome::Pass, json!({ "invariants": s.iter().map(ToString::to_string).collect::<Vec<_>>() }))
        }
        Command::HwvBuild { t, set, family, .. } => {
            let c = basic(&ctx, *family, *t, set)?;
            let cert = verify_semiinvariant(&c.poly, &c.claimed_weight)?;
            certificates.push(poly_cert("polynomial", &c.poly));
            let result = json!({
                "polynomial": c.poly.to_string(),
                "weight": c.claimed_weight,
                "degree": c.degree(),
                "provenance": c.provenance,
                "semi_invariance": cert,
            });
            (Outcome::check(cert.holds), result)
        }
        Command::HwvVerify { polynomial, lambda, .. } => {
            let f = Polynomial::parse(&ctx, polynomial)?;
            let cert = verify_semiinvariant(&f, lambda)?;
            certificates.push(poly_cert("polynomial", &f));
            (Outcome::check(cert.holds), json!({ "polynomial": f.to_string(), "semi_invariance": cert }))
        }
        Command::Delta { t, randomized, .. } => {
            let (_, cert) = if *randomized { delta_evaluation_matrix_random(&ctx, *t, &mut rng)? } else { delta_evaluation_matrix(&ctx, *t)? };
            certificates.push(Certificate { name: "rank".into(), value: cert.rank.to_string() });
            (Outcome::check(cert.holds()), to_value(&cert))
        }
        Command::Basis { t, family, .. } => {
            let rep = basis_check(&ctx, *t, *family, config.max_degree)?;
            dims = generation_dims(&rep.generation);
            certificates.push(Certificate { name: "quotient_total".into(), value: rep.generation.quotient_total().to_string() });
            let outcome = match rep.generation.verdict {
                Verdict::Inconclusive => Outcome::Inconclusive,
                _ => Outcome::check(rep.is_basis()),
            };
            (outcome, to_value(&rep))
        }
        Command::Jacobian { t, .. } => {
            let (_, cert) = jacobian_minor_certificate(&ctx, *t)?;
            certificates.push(Certificate { name: "determinant".into(), value: cert.determinant.clone() });
            (Outcome::check(cert.is_unit), to_value(&cert))
        }
        Command::Gl3 { cap } => {
            let rep = gl3_suite(*cap, &mut rng)?;
            certificates.push(Certificate { name: "jacobian_rank".into(), value: rep.jacobian_rank.to_string() });
            (Outcome::check(rep.passes()), to_value(&rep))
        }
        Command::Scan { n, t, r, method } => {
            if ctx.characteristic() != Characteristic::Zero {
                return Err(Error::InvalidArgument("the scan runs in characteristic 0".into()));
            }
            let rep = power_weight_dimension_scan(*n, *t, *r, *method, config.max_degree)?;
            dims = rep.layers.iter().map(|l| DegreeDims { degree: l.degree, hwv_dim: l.hwv_dim, quotient_dim: l.quotient_dim }).collect();
            certificates.push(Certificate { name: "total".into(), value: rep.total.to_string() });
            let outcome = if !rep.complete {
                Outcome::Inconclusive
            } else {
                Outcome::check(rep.total == rep.target && rep.tail_vanishes != Some(false))
            };
            (outcome, to_value(&rep))
        }
        Command::Question { lambda, tuple_cap, .. } => {
            let rep = question_experiment(&ctx, lambda, *tuple_cap, config.max_degree)?;
            dims = generation_dims(&rep.generation);
            for o in rep.tuples.iter().filter(|o| !o.zero) {
                certificates.push(Certificate { name: format!("tuple{:?}", o.tuple), value: o.hash.clone().unwrap_or_default() });
            }
            (Outcome::from_verdict(rep.verdict), to_value(&rep))
        }
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        inputs: config.clone(),
        per_degree_dims: dims,
        verdict,
        results,
        certificates,
        timing: Timing { wall_seconds: start.elapsed().as_secs_f64() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_report() {
        let r = dispatch(&RunConfig::new(Command::Delta { n: 4, t: 2, randomized: false })).unwrap();
        assert_eq!(r.verdict, Outcome::Pass);
        assert_eq!(r.results["subsets"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn invalid_configs() {
        assert!(RunConfig::new(Command::Delta { n: 4, t: 4, randomized: false }).validate().is_err());
        assert!(RunConfig::new(Command::Jacobian { n: 5, t: 2 }).validate().is_err());
        let mut c = RunConfig::new(Command::Invariants { n: 3 });
        c.characteristic = Some(4);
        assert!(c.validate().is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let mut c = RunConfig::new(Command::Delta { n: 4, t: 2, randomized: true });
        c.seed = 11;
        let a = dispatch(&c).unwrap();
        let b = dispatch(&a.inputs).unwrap();
        assert_eq!(a.deterministic_part(), b.deterministic_part());
    }
}
