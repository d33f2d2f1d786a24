use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{PolyMatrix, RationalMatrix};
use crate::poly::Polynomial;
use crate::ring::{Ctx, RingContext, Scalar};
use crate::semiinv::{u_basic, v_basic, HwvCandidate, Provenance};
use crate::weight::Weight;

use super::generation::{generation_check, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl3Family {
    pub l1: u32,
    pub l2: u32,
    pub lambda: Weight,
    pub elements: Vec<String>,
    pub verdict: Verdict,
    pub target: u64,
    pub nonzero_on_point: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gl3Report {
    pub checks: Vec<SubCheck>,
    pub families: Vec<Gl3Family>,
    pub jacobian_rank: usize,
    pub random_point: Vec<Vec<i64>>,
}

impl Gl3Report {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The generators of k[gl_3]^U beyond the invariants.
pub struct Gl3Generators {
    pub xi31: Polynomial,
    /// |X^{(1,3)}|, the minor on rows {2,3} and columns {1,2}.
    pub x13: Polynomial,
    pub d1: Polynomial,
    pub d2: Polynomial,
}

/// Determinant of X with row `i` and column `j` removed.
fn cominor(ctx: &Ctx, i: usize, j: usize) -> Result<Polynomial> {
    PolyMatrix::generic(ctx).delete(i, j)?.determinant()
}

impl Gl3Generators {
    pub fn new(ctx: &Ctx) -> Result<Self> {
        let x = |i, j| Polynomial::x(ctx, i, j);
        let x13 = cominor(ctx, 1, 3)?;
        let d1 = &(&x(2, 1)? * &x13) + &(&x(3, 1)? * &cominor(ctx, 1, 2)?);
        let d2 = &(&x(3, 1)? * &cominor(ctx, 2, 3)?) + &(&x(3, 2)? * &x13);
        Ok(Gl3Generators { xi31: x(3, 1)?, x13, d1, d2 })
    }
}

/// λ = l₁ϖ₁ + l₂ϖ₂ in ε-coordinates, when it lies in the root lattice.
pub fn gl3_weight(l1: u32, l2: u32) -> Option<Weight> {
    let (a, b) = (l1 as i64, l2 as i64);
    if (a - b) % 3 != 0 {
        return None;
    }
    Some(Weight::new(vec![(2 * a + b) / 3, (b - a) / 3, -(a + 2 * b) / 3]))
}

/// d·ξ₃₁^i·|X^{(1,3)}|^{a-i} for 0 ≤ i ≤ a = min(l₁, l₂).
pub fn gl3_family(g: &Gl3Generators, l1: u32, l2: u32) -> Vec<Polynomial> {
    let d = if l1 >= l2 { g.d1.pow((l1 - l2) / 3) } else { g.d2.pow((l2 - l1) / 3) };
    let a = l1.min(l2);
    (0..=a).map(|i| &(&d * &g.xi31.pow(i)) * &g.x13.pow(a - i)).collect()
}

pub fn nilpotent_test_point() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]])
}

/// The GL₃ checks: d₁, d₂ against u and v, the defining relation, the module
/// bases for every root-lattice l₁ϖ₁ + l₂ϖ₂ with l₁ + l₂ ≤ `cap`, their
/// values on a nilpotent matrix, and the Jacobian rank of the seven
/// algebra generators at a random point.
pub fn gl3_suite<R: Rng>(cap: u32, rng: &mut R) -> Result<Gl3Report> {
    let ctx = RingContext::new(3)?;
    let g = Gl3Generators::new(&ctx)?;
    let s: Vec<Polynomial> = (1..=3).map(|i| crate::invariants::fundamental_invariant(&ctx, i)).collect::<Result<_>>()?;
    let mut checks = Vec::new();

    let u = u_basic(&ctx, 2, &[2, 3])?.poly;
    let v = v_basic(&ctx, 2, &[2, 3])?.poly;
    let a_ok = g.d1 == -u && g.d2 == v;
    checks.push(SubCheck {
        name: "d1_d2_identification".into(),
        pass: a_ok,
        detail: format!("d1 = {}; d2 = {}", g.d1, g.d2),
    });

    let relation = &(&(&(&(&g.d1 * &g.d2) - &g.x13.pow(3)) - &(&(&g.xi31 * &g.x13.pow(2)) * &s[0]))
        - &(&(&g.xi31.pow(2) * &g.x13) * &s[1]))
        - &(&g.xi31.pow(3) * &s[2]);
    checks.push(SubCheck { name: "relation".into(), pass: relation.is_zero(), detail: format!("residual = {relation}") });

    let point = nilpotent_test_point();
    let mut families = Vec::new();
    for total in 0..=cap {
        for l1 in 0..=total {
            let l2 = total - l1;
            let Some(lambda) = gl3_weight(l1, l2) else { continue };
            let elems = gl3_family(&g, l1, l2);
            let candidates: Vec<HwvCandidate> = elems
                .iter()
                .enumerate()
                .map(|(i, f)| HwvCandidate::new(f.clone(), lambda.clone(), Provenance::Gl3 { label: format!("l=({l1},{l2}) i={i}") }))
                .collect();
            let rep = generation_check(&ctx, &lambda, &candidates, None)?;
            let nonzero = elems.iter().map(|f| f.evaluate(&point)).collect::<Result<Vec<_>>>()?.iter().all(|c| !c.is_zero());
            families.push(Gl3Family {
                l1,
                l2,
                lambda,
                elements: elems.iter().map(ToString::to_string).collect(),
                verdict: rep.verdict,
                target: rep.target,
                nonzero_on_point: nonzero,
            });
        }
    }
    let bases_ok = families.iter().all(|f| f.verdict == Verdict::Generates && f.target as usize == f.elements.len());
    checks.push(SubCheck {
        name: "module_bases".into(),
        pass: bases_ok,
        detail: format!("{} weights with l1 + l2 <= {cap}", families.len()),
    });
    checks.push(SubCheck {
        name: "nonzero_on_nilpotent".into(),
        pass: families.iter().all(|f| f.nonzero_on_point),
        detail: "at [[0,0,0],[1,0,0],[1,1,0]]".into(),
    });

    let gens = [s[0].clone(), s[1].clone(), s[2].clone(), g.xi31.clone(), g.x13.clone(), g.d1.clone(), g.d2.clone()];
    let random_point: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    let rows: Vec<&[i64]> = random_point.iter().map(Vec::as_slice).collect();
    let a = RationalMatrix::from_i64(&rows);
    let jac = PolyMatrix::jacobian(&gens, &(0..9).collect::<Vec<_>>())?.evaluate(&a)?;
    let jacobian_rank = jac.rank();
    checks.push(SubCheck { name: "jacobian_rank".into(), pass: jacobian_rank == 6, detail: format!("rank {jacobian_rank} at {random_point:?}") });

    Ok(Gl3Report { checks, families, jacobian_rank, random_point })
}

/// Values of the seven generators at a matrix, for checking the relation numerically.
pub fn generator_values(a: &RationalMatrix) -> Result<Vec<Scalar>> {
    let ctx = RingContext::new(3)?;
    let g = Gl3Generators::new(&ctx)?;
    let mut out: Vec<Scalar> = (1..=3).map(|i| crate::invariants::fundamental_invariant(&ctx, i)?.evaluate(a)).collect::<Result<_>>()?;
    for f in [&g.xi31, &g.x13, &g.d1, &g.d2] {
        out.push(f.evaluate(a)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_of_the_families() {
        assert_eq!(gl3_weight(1, 1), Some(Weight::new(vec![1, 0, -1])));
        assert_eq!(gl3_weight(3, 0), Some(Weight::new(vec![2, -1, -1])));
        assert_eq!(gl3_weight(0, 3), Some(Weight::new(vec![1, 1, -2])));
        assert_eq!(gl3_weight(1, 0), None);
    }

    #[test]
    fn adjoint_family() {
        let ctx = RingContext::new(3).unwrap();
        let g = Gl3Generators::new(&ctx).unwrap();
        let fam = gl3_family(&g, 1, 1);
        assert_eq!(fam, vec![g.x13.clone(), g.xi31.clone()]);
    }

    #[test]
    fn relation_holds_at_a_point() {
        let a = RationalMatrix::from_i64(&[&[2, -1, 3], &[0, 5, 1], &[4, 1, -2]]);
        let v = generator_values(&a).unwrap();
        let (s1, s2, s3, xi, x13, d1, d2) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6]);
        let lhs = d1 * d2 - x13 * x13 * x13 - xi * x13 * x13 * s1 - xi * xi * x13 * s2 - xi * xi * xi * s3;
        assert!(lhs.is_zero());
    }
}
