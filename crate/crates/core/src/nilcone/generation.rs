use serde::{Deserialize, Serialize};

use crate::combinat::zero_weight_multiplicity;
use crate::error::{Error, Result};
use crate::invariants::{fundamental_invariants, subsets};
use crate::linalg::RowEchelon;
use crate::poly::Polynomial;
use crate::ring::Ctx;
use crate::semiinv::{basic, Family, HwvCandidate};
use crate::weight::{lambda_t, mu_t, Weight};

use super::space::hwv_layer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Generates,
    DoesNotGenerate,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeLayer {
    pub degree: u32,
    /// dim B_d.
    pub hwv_dim: usize,
    /// dim of Σ_i s_i·B_{d-i}.
    pub relation_dim: usize,
    /// dim B_d / Σ_i s_i·B_{d-i}.
    pub quotient_dim: usize,
    pub candidates: usize,
    /// Rank of the candidates in the quotient.
    pub candidate_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub lambda: Weight,
    /// dim L(λ)_0: the number of free generators over the invariants.
    pub target: u64,
    pub degree_cap: u32,
    pub layers: Vec<DegreeLayer>,
    pub verdict: Verdict,
    /// Degrees where the candidates do not span the quotient.
    pub failing_degrees: Vec<u32>,
}

impl GenerationReport {
    pub fn quotient_total(&self) -> u64 {
        self.layers.iter().map(|l| l.quotient_dim as u64).sum()
    }

    pub fn per_degree_dims(&self) -> Vec<(u32, usize)> {
        self.layers.iter().map(|l| (l.degree, l.hwv_dim)).collect()
    }
}

pub fn default_degree_cap(lambda: &Weight) -> u32 {
    let n = lambda.n() as u32;
    2 * n * lambda.max_abs() as u32 + n * n
}

/// Decides whether the candidates generate the highest weight vectors of
/// weight λ as a module over the invariants.
///
/// The module is free of rank dim L(λ)_0, so by graded Nakayama it is
/// enough to find, degree by degree, the quotients of B_d by the part coming
/// from lower degrees, until their dimensions add up to that rank. The
/// candidates generate if and only if they span each quotient.
pub fn generation_check(ctx: &Ctx, lambda: &Weight, candidates: &[HwvCandidate], max_degree: Option<u32>) -> Result<GenerationReport> {
    if lambda.n() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: format!("weight of length {}", ctx.n()), got: lambda.n().to_string() });
    }
    let target = zero_weight_multiplicity(lambda)?;
    let cap = max_degree.unwrap_or_else(|| default_degree_cap(lambda));
    let mut by_degree: Vec<Vec<&Polynomial>> = Vec::new();
    for (k, c) in candidates.iter().enumerate() {
        if c.poly.ctx() != ctx && **c.poly.ctx() != **ctx {
            return Err(Error::ContextMismatch);
        }
        if c.is_zero() {
            return Err(Error::Precondition(format!("candidate {k} is zero")));
        }
        let w = c.poly.torus_weight()?;
        if w != *lambda || !c.poly.is_homogeneous() {
            return Err(Error::Precondition(format!("candidate {k} is not homogeneous of weight {lambda}")));
        }
        let d = c.poly.degree().expect("nonzero") as usize;
        if by_degree.len() <= d {
            by_degree.resize(d + 1, Vec::new());
        }
        by_degree[d].push(&c.poly);
    }
    let invariants = fundamental_invariants(ctx);
    let ch = ctx.characteristic();
    let mut spaces: Vec<Vec<Polynomial>> = Vec::new();
    let mut layers = Vec::new();
    let mut failing_degrees = Vec::new();
    let mut total = 0u64;
    let mut verdict = Verdict::Inconclusive;
    for d in 0..=cap {
        let layer = hwv_layer(ctx, lambda, d)?;
        let stratum = &layer.stratum;
        let mut relations = RowEchelon::new(stratum.len(), ch);
        for (i, s) in invariants.iter().enumerate() {
            let Some(lower) = (d as usize).checked_sub(i + 1).and_then(|e| spaces.get(e)) else { continue };
            for g in lower {
                relations.insert(stratum.coordinates(&(s * g))?)?;
            }
        }
        let mut full = relations.clone();
        for v in &layer.basis {
            full.insert(v.clone())?;
        }
        if full.rank() != layer.basis.len() {
            return Err(Error::Precondition(format!("products of invariants with lower highest weight vectors leave B_{d}")));
        }
        let mut with_candidates = relations.clone();
        let cands = by_degree.get(d as usize).map(Vec::as_slice).unwrap_or(&[]);
        for f in cands {
            let coords = stratum.coordinates(f)?;
            if !full.contains(&coords)? {
                return Err(Error::Precondition(format!("a candidate of degree {d} is not U-invariant")));
            }
            with_candidates.insert(coords)?;
        }
        let quotient_dim = layer.basis.len() - relations.rank();
        let candidate_rank = with_candidates.rank() - relations.rank();
        if candidate_rank < quotient_dim {
            failing_degrees.push(d);
        }
        layers.push(DegreeLayer {
            degree: d,
            hwv_dim: layer.basis.len(),
            relation_dim: relations.rank(),
            quotient_dim,
            candidates: cands.len(),
            candidate_rank,
        });
        spaces.push(layer.basis.iter().map(|v| stratum.polynomial(ctx, v)).collect::<Result<_>>()?);
        total += quotient_dim as u64;
        if total > target {
            return Err(Error::Precondition(format!("quotient dimensions exceed dim L(λ)_0 = {target}")));
        }
        if total == target {
            verdict = if failing_degrees.is_empty() { Verdict::Generates } else { Verdict::DoesNotGenerate };
            break;
        }
    }
    if verdict == Verdict::Inconclusive && !failing_degrees.is_empty() {
        verdict = Verdict::DoesNotGenerate;
    }
    Ok(GenerationReport { lambda: lambda.clone(), target, degree_cap: cap, layers, verdict, failing_degrees })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCheckReport {
    pub family: Family,
    pub t: usize,
    pub candidate_count: usize,
    pub generation: GenerationReport,
}

impl BasisCheckReport {
    /// The candidates are exactly a basis: they generate and there are dim L(λ)_0 of them.
    pub fn is_basis(&self) -> bool {
        self.generation.verdict == Verdict::Generates && self.candidate_count as u64 == self.generation.target
    }
}

/// Checks that {u_{t,I}} (or {v_{t,I}}) over the t-subsets I of {2..n} is a
/// basis of the highest weight vectors of weight λᵗ (or μᵗ).
pub fn basis_check(ctx: &Ctx, t: usize, family: Family, max_degree: Option<u32>) -> Result<BasisCheckReport> {
    let n = ctx.n();
    let lambda = match family {
        Family::U => lambda_t(n, t)?,
        Family::V => mu_t(n, t)?,
    };
    let candidates = subsets(n - 1, t)
        .into_iter()
        .map(|s| basic(ctx, family, t, &s.iter().map(|i| i + 1).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let generation = generation_check(ctx, &lambda, &candidates, max_degree)?;
    Ok(BasisCheckReport { family, t, candidate_count: candidates.len(), generation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;
    use crate::semiinv::u_basic;

    #[test]
    fn basis_for_small_n() {
        let ctx = RingContext::new(3).unwrap();
        for t in 1..=2 {
            for family in [Family::U, Family::V] {
                let r = basis_check(&ctx, t, family, None).unwrap();
                assert!(r.is_basis(), "{family:?} t={t}: {r:?}");
            }
        }
    }

    #[test]
    fn missing_generator_is_detected() {
        let ctx = RingContext::new(3).unwrap();
        let lambda = lambda_t(3, 1).unwrap();
        let only = vec![u_basic(&ctx, 1, &[2]).unwrap()];
        let r = generation_check(&ctx, &lambda, &only, None).unwrap();
        assert_eq!(r.verdict, Verdict::DoesNotGenerate);
        assert_eq!(r.target, 2);
        assert_eq!(r.quotient_total(), 2);
    }

    #[test]
    fn tiny_cap_is_inconclusive() {
        let ctx = RingContext::new(3).unwrap();
        let lambda = lambda_t(3, 1).unwrap();
        let c = vec![u_basic(&ctx, 1, &[2]).unwrap()];
        let r = generation_check(&ctx, &lambda, &c, Some(1)).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn invariants_generated_by_constant() {
        let ctx = RingContext::new(3).unwrap();
        let one = HwvCandidate::new(Polynomial::one(&ctx), Weight::zero(3), crate::semiinv::Provenance::Other);
        let r = generation_check(&ctx, &Weight::zero(3), &[one], None).unwrap();
        assert_eq!(r.verdict, Verdict::Generates);
        assert_eq!(r.layers.len(), 1);
    }
}
