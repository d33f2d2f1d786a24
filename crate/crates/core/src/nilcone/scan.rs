use serde::{Deserialize, Serialize};

use crate::combinat::zero_weight_multiplicity;
use crate::error::{Error, Result};
use crate::ring::{Characteristic, RingContext};
use crate::weight::{lambda_t, Weight};

use super::counting::counting_profile;
use super::generation::{default_degree_cap, generation_check, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMethod {
    /// Exact linear algebra on each weight stratum.
    Brute,
    /// Weight counting plus freeness; characteristic zero only.
    Counting,
    /// Brute force for n ≤ 4, counting above.
    Auto,
}

impl std::str::FromStr for ScanMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(ScanMethod::Brute),
            "counting" => Ok(ScanMethod::Counting),
            "auto" => Ok(ScanMethod::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown scan method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanLayer {
    pub degree: u32,
    pub hwv_dim: u64,
    pub quotient_dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub t: usize,
    pub r: u32,
    pub lambda: Weight,
    pub method: ScanMethod,
    pub target: u64,
    pub layers: Vec<ScanLayer>,
    /// Σ q_d over the computed layers.
    pub total: u64,
    /// The accumulated quotient dimension reached dim L(λ)_0 within the cap.
    pub complete: bool,
    /// Counting only: q_d vanishes on the extra degrees computed past the last generator.
    pub tail_vanishes: Option<bool>,
}

/// Total Nakayama-quotient dimension for λ = r·λᵗ.
pub fn power_weight_dimension_scan(n: usize, t: usize, r: u32, method: ScanMethod, max_degree: Option<u32>) -> Result<ScanReport> {
    let lambda = lambda_t(n, t)?.scaled(r as i64);
    let target = zero_weight_multiplicity(&lambda)?;
    let cap = max_degree.unwrap_or_else(|| default_degree_cap(&lambda));
    let method = match method {
        ScanMethod::Auto if n <= 4 => ScanMethod::Brute,
        ScanMethod::Auto => ScanMethod::Counting,
        m => m,
    };
    let (layers, complete, tail_vanishes) = match method {
        ScanMethod::Brute => {
            let ctx = RingContext::with(n, Characteristic::Zero, Vec::<String>::new())?;
            let rep = generation_check(&ctx, &lambda, &[], Some(cap))?;
            let layers = rep
                .layers
                .iter()
                .map(|l| ScanLayer { degree: l.degree, hwv_dim: l.hwv_dim as u64, quotient_dim: l.quotient_dim as u64 })
                .collect();
            (layers, rep.verdict != Verdict::Inconclusive, None)
        }
        _ => counting_scan(&lambda, target, cap)?,
    };
    let total = layers.iter().map(|l: &ScanLayer| l.quotient_dim).sum();
    Ok(ScanReport { n, t, r, lambda, method, target, layers, total, complete, tail_vanishes })
}

const TAIL: u32 = 3;

fn counting_scan(lambda: &Weight, target: u64, cap: u32) -> Result<(Vec<ScanLayer>, bool, Option<bool>)> {
    let mut bound = (lambda.n() as u32 * 2).min(cap);
    loop {
        let p = counting_profile(lambda, bound + TAIL)?;
        let mut acc = 0;
        for d in 0..=bound as usize {
            acc += p.quotient_dims[d];
            if acc > target {
                return Err(Error::Precondition(format!("quotient dimensions exceed dim L(λ)_0 = {target}")));
            }
            if acc == target {
                let layers = (0..=d)
                    .map(|k| ScanLayer { degree: k as u32, hwv_dim: p.hwv_dims[k], quotient_dim: p.quotient_dims[k] })
                    .collect();
                let tail = p.quotient_dims[d + 1..].iter().all(|&q| q == 0);
                return Ok((layers, true, Some(tail)));
            }
        }
        if bound >= cap {
            let layers = (0..=bound as usize)
                .map(|k| ScanLayer { degree: k as u32, hwv_dim: p.hwv_dims[k], quotient_dim: p.quotient_dims[k] })
                .collect();
            return Ok((layers, false, None));
        }
        bound = (bound * 2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_and_counting_agree_for_small_n() {
        for (n, t, r) in [(3, 1, 1), (3, 2, 2), (4, 1, 1), (4, 3, 2)] {
            let a = power_weight_dimension_scan(n, t, r, ScanMethod::Brute, None).unwrap();
            let b = power_weight_dimension_scan(n, t, r, ScanMethod::Counting, None).unwrap();
            assert_eq!(a.layers, b.layers, "n={n} t={t} r={r}");
            assert_eq!(a.total, a.target);
            assert_eq!(b.tail_vanishes, Some(true));
        }
    }
}
