//! The semi-invariants u_{t,I}, v_{t,I}, the general construction from a
//! tensor E and a tuple of fundamental invariants, the involution φ, and
//! the exact B-semi-invariance check.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::fundamental_invariants;
use crate::linalg::PolyMatrix;
use crate::poly::{elementary_conjugation, Polynomial};
use crate::ring::{Ctx, Scalar};
use crate::tensor::TensorExpression;
use crate::weight::{lambda_t, mu_t, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    UBasic { t: usize, set: Vec<usize> },
    VBasic { t: usize, set: Vec<usize> },
    AppliedTensor { tuple: Vec<usize> },
    Gl3 { label: String },
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HwvCandidate {
    pub poly: Polynomial,
    pub claimed_weight: Weight,
    pub provenance: Provenance,
}

impl HwvCandidate {
    pub fn new(poly: Polynomial, claimed_weight: Weight, provenance: Provenance) -> Self {
        HwvCandidate { poly, claimed_weight, provenance }
    }

    /// Only [`apply_hwv`] can produce a zero candidate.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    U,
    V,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(Family::U),
            "v" => Ok(Family::V),
            _ => Err(Error::InvalidArgument(format!("family must be `u` or `v`, got `{s}`"))),
        }
    }
}

fn check_set(n: usize, t: usize, set: &[usize]) -> Result<Vec<usize>> {
    if t == 0 || t >= n {
        return Err(Error::InvalidArgument(format!("t = {t} must lie in 1..={}", n - 1)));
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != set.len() || s.len() != t || s.iter().any(|&i| i < 2 || i > n) {
        return Err(Error::InvalidArgument(format!("{set:?} is not a {t}-subset of {{2..{n}}}")));
    }
    Ok(s)
}

/// Caches ∂_{ab} s_i for one context.
pub struct InvariantDerivatives {
    invariants: Vec<Polynomial>,
    cache: HashMap<(usize, usize, usize), Polynomial>,
}

impl InvariantDerivatives {
    pub fn new(ctx: &Ctx) -> Self {
        InvariantDerivatives { invariants: fundamental_invariants(ctx), cache: HashMap::new() }
    }

    pub fn invariant(&self, i: usize) -> &Polynomial {
        &self.invariants[i - 1]
    }

    /// ∂_{ab} s_i (1-based).
    pub fn get(&mut self, a: usize, b: usize, i: usize) -> Result<Polynomial> {
        if i == 0 || i > self.invariants.len() {
            return Err(Error::IndexOutOfRange { index: i, n: self.invariants.len() });
        }
        if let Some(p) = self.cache.get(&(a, b, i)) {
            return Ok(p.clone());
        }
        let p = self.invariants[i - 1].partial_derivative(a, b)?;
        self.cache.insert((a, b, i), p.clone());
        Ok(p)
    }
}

/// u_{t,I} = det((∂_{1i} s_j)) with rows i = n-t+1..n and columns j ∈ I.
pub fn u_basic(ctx: &Ctx, t: usize, set: &[usize]) -> Result<HwvCandidate> {
    u_basic_with(&mut InvariantDerivatives::new(ctx), ctx, t, set)
}

pub fn u_basic_with(ds: &mut InvariantDerivatives, ctx: &Ctx, t: usize, set: &[usize]) -> Result<HwvCandidate> {
    let n = ctx.n();
    let set = check_set(n, t, set)?;
    let rows: Vec<usize> = (n - t + 1..=n).collect();
    let m = derivative_matrix(ds, ctx, &rows, &set, |i| (1, i))?;
    Ok(HwvCandidate::new(m.determinant()?, lambda_t(n, t)?, Provenance::UBasic { t, set }))
}

/// v_{t,I} = det((∂_{in} s_j)) with rows i = 1..t and columns j ∈ I.
pub fn v_basic(ctx: &Ctx, t: usize, set: &[usize]) -> Result<HwvCandidate> {
    v_basic_with(&mut InvariantDerivatives::new(ctx), ctx, t, set)
}

pub fn v_basic_with(ds: &mut InvariantDerivatives, ctx: &Ctx, t: usize, set: &[usize]) -> Result<HwvCandidate> {
    let n = ctx.n();
    let set = check_set(n, t, set)?;
    let rows: Vec<usize> = (1..=t).collect();
    let m = derivative_matrix(ds, ctx, &rows, &set, |i| (i, n))?;
    Ok(HwvCandidate::new(m.determinant()?, mu_t(n, t)?, Provenance::VBasic { t, set }))
}

pub fn basic(ctx: &Ctx, family: Family, t: usize, set: &[usize]) -> Result<HwvCandidate> {
    match family {
        Family::U => u_basic(ctx, t, set),
        Family::V => v_basic(ctx, t, set),
    }
}

fn derivative_matrix(
    ds: &mut InvariantDerivatives,
    ctx: &Ctx,
    rows: &[usize],
    set: &[usize],
    pos: impl Fn(usize) -> (usize, usize),
) -> Result<PolyMatrix> {
    let mut entries = Vec::with_capacity(rows.len());
    for &i in rows {
        let (a, b) = pos(i);
        entries.push(set.iter().map(|&j| ds.get(a, b, j)).collect::<Result<Vec<_>>>()?);
    }
    PolyMatrix::from_rows(ctx, entries)
}

/// Σ over the terms of E of coeff · ∏_j ∂_{a_j b_j} s_{i_j}.
///
/// The result may be zero; no division by the coefficient content is
/// performed in any characteristic.
pub fn apply_hwv(ctx: &Ctx, e: &TensorExpression, tuple: &[usize]) -> Result<HwvCandidate> {
    apply_hwv_with(&mut InvariantDerivatives::new(ctx), ctx, e, tuple)
}

pub fn apply_hwv_with(ds: &mut InvariantDerivatives, ctx: &Ctx, e: &TensorExpression, tuple: &[usize]) -> Result<HwvCandidate> {
    if tuple.len() != e.t() {
        return Err(Error::DimensionMismatch { expected: format!("tuple of length {}", e.t()), got: tuple.len().to_string() });
    }
    if e.n() != ctx.n() {
        return Err(Error::ContextMismatch);
    }
    let mut acc = Polynomial::zero(ctx);
    for term in e.terms() {
        let mut prod = Polynomial::from_int(ctx, term.coeff);
        for (&(a, b), &i) in term.pairs.iter().zip(tuple) {
            if prod.is_zero() {
                break;
            }
            prod = &prod * &ds.get(a, b, i)?;
        }
        acc = &acc + &prod;
    }
    let weight = e.terms().first().map(|t| e.term_weight(t)).unwrap_or_else(|| Weight::zero(ctx.n()));
    Ok(HwvCandidate::new(acc, weight, Provenance::AppliedTensor { tuple: tuple.to_vec() }))
}

/// Pullback along A ↦ P Aᵀ P with P the longest Weyl element:
/// x[i][j] ↦ x[n+1-j][n+1-i].
pub fn phi_involution(f: &Polynomial) -> Polynomial {
    let ctx = f.ctx().clone();
    let n = ctx.n();
    f.rename_vars(|v| match ctx.matrix_position(v) {
        Some((i, j)) => ctx.var(n + 1 - j, n + 1 - i).expect("in range"),
        None => v,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiInvarianceCertificate {
    pub holds: bool,
    pub weight_matches: bool,
    pub actual_weight: Option<Weight>,
    /// First simple root index `i` with f((I-cE_{i,i+1})X(I+cE_{i,i+1})) ≠ f(X).
    pub failing_root: Option<usize>,
    /// The nonzero difference for the failing root, in text form.
    pub residual: Option<String>,
}

/// Checks that `f` is U-invariant (as a polynomial identity in a formal
/// parameter, valid in every characteristic) and has torus weight `lambda`.
pub fn verify_semiinvariant(f: &Polynomial, lambda: &Weight) -> Result<SemiInvarianceCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    if lambda.n() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: format!("weight of length {}", ctx.n()), got: lambda.n().to_string() });
    }
    let actual_weight = match f.torus_weight() {
        Ok(w) => Some(w),
        Err(Error::NotWeightHomogeneous { .. }) => None,
        Err(e) => return Err(e),
    };
    let weight_matches = actual_weight.as_ref() == Some(lambda);
    let mut failing_root = None;
    let mut residual = None;
    for i in 1..ctx.n() {
        let diff = unipotent_residual(f, i)?;
        if !diff.is_zero() {
            failing_root = Some(i);
            residual = Some(diff.to_string());
            break;
        }
    }
    Ok(SemiInvarianceCertificate {
        holds: weight_matches && failing_root.is_none(),
        weight_matches,
        actual_weight,
        failing_root,
        residual,
    })
}

/// f((I - cE_{i,i+1}) X (I + cE_{i,i+1})) - f(X) in the ring extended by c.
pub fn unipotent_residual(f: &Polynomial, i: usize) -> Result<Polynomial> {
    let (mut sub, ext, _) = elementary_conjugation(f.ctx(), i, i + 1, 1)?;
    Ok(&sub.apply(f) - &f.embed(&ext)?)
}

/// Gcd of the integer coefficients (zero for the zero polynomial).
pub fn coefficient_content(f: &Polynomial) -> Scalar {
    if f.is_zero() {
        Scalar::zero()
    } else {
        f.content()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn parse(ctx: &Ctx, s: &str) -> Polynomial {
        Polynomial::parse(ctx, s).unwrap()
    }

    #[test]
    fn u_and_v_small_cases() {
        let ctx = RingContext::new(2).unwrap();
        assert_eq!(u_basic(&ctx, 1, &[2]).unwrap().poly, parse(&ctx, "-x[2][1]"));
        let ctx3 = RingContext::new(3).unwrap();
        assert_eq!(v_basic(&ctx3, 1, &[2]).unwrap().poly, parse(&ctx3, "-x[3][1]"));
        let ctx5 = RingContext::new(5).unwrap();
        assert_eq!(u_basic(&ctx5, 2, &[3, 5]).unwrap().degree(), Some(6));
        let ctx4 = RingContext::new(4).unwrap();
        assert_eq!(v_basic(&ctx4, 1, &[4]).unwrap().degree(), Some(3));
    }

    #[test]
    fn bad_index_sets() {
        let ctx = RingContext::new(4).unwrap();
        assert!(u_basic(&ctx, 2, &[1, 2]).is_err());
        assert!(u_basic(&ctx, 2, &[2]).is_err());
        assert!(v_basic(&ctx, 2, &[3, 3]).is_err());
        assert!(v_basic(&ctx, 4, &[2, 3, 4, 5]).is_err());
    }

    #[test]
    fn set_order_does_not_matter() {
        let ctx = RingContext::new(4).unwrap();
        assert_eq!(u_basic(&ctx, 2, &[4, 2]).unwrap().poly, u_basic(&ctx, 2, &[2, 4]).unwrap().poly);
    }

    #[test]
    fn semi_invariance_examples() {
        let ctx = RingContext::new(3).unwrap();
        let u = u_basic(&ctx, 2, &[2, 3]).unwrap();
        assert!(verify_semiinvariant(&u.poly, &u.claimed_weight).unwrap().holds);

        let x12 = parse(&ctx, "x[1][2]");
        let cert = verify_semiinvariant(&x12, &Weight::new(vec![-1, 1, 0])).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.failing_root, Some(1));
        assert!(cert.residual.unwrap().contains("x[1][1] * c"));

        let s1 = parse(&ctx, "x[1][1] + x[2][2] + x[3][3]");
        assert!(verify_semiinvariant(&s1, &Weight::zero(3)).unwrap().holds);
        let wrong = verify_semiinvariant(&s1, &Weight::new(vec![1, 0, -1])).unwrap();
        assert!(!wrong.holds && !wrong.weight_matches);
    }

    #[test]
    fn phi_examples() {
        let ctx = RingContext::new(3).unwrap();
        assert_eq!(phi_involution(&parse(&ctx, "x[1][2]")), parse(&ctx, "x[2][3]"));
        let p = parse(&ctx, "x[1][2]*x[3][1] - 2*x[2][2]^2");
        assert_eq!(phi_involution(&phi_involution(&p)), p);
        for s in fundamental_invariants(&ctx) {
            assert_eq!(phi_involution(&s), s);
        }
    }

    #[test]
    fn apply_length_mismatch() {
        let ctx = RingContext::new(3).unwrap();
        let e = crate::tensor::highest_weight_tensor(&lambda_t(3, 2).unwrap()).unwrap();
        assert!(apply_hwv(&ctx, &e, &[2]).is_err());
    }
}
