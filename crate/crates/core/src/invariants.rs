//! The fundamental invariants s_1, …, s_n of the conjugation action:
//! s_i is the sum of the principal i×i minors of 𝒳.

use crate::error::{check_index, Result};
use crate::linalg::PolyMatrix;
use crate::poly::{elementary_conjugation, Polynomial};
use crate::ring::Ctx;

/// Index subsets of `1..=n` of size `k`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn fundamental_invariant(ctx: &Ctx, i: usize) -> Result<Polynomial> {
    check_index(i, ctx.n())?;
    let x = PolyMatrix::generic(ctx);
    let mut acc = Polynomial::zero(ctx);
    for lambda in subsets(ctx.n(), i) {
        acc = &acc + &x.submatrix(&lambda, &lambda)?.determinant()?;
    }
    Ok(acc)
}

/// `[s_1, …, s_n]`.
pub fn fundamental_invariants(ctx: &Ctx) -> Vec<Polynomial> {
    (1..=ctx.n()).map(|i| fundamental_invariant(ctx, i).expect("index in range")).collect()
}

/// True iff `f(g⁻¹Xg) = f` for every `g = I ± c·E_{i,i+1}` and
/// `g = I ± c·E_{i+1,i}`, with `c` a formal parameter. These elements
/// generate GL_n together with the torus, and invariance under them forces
/// weight zero.
pub fn invariance_check(f: &Polynomial) -> Result<bool> {
    let ctx = f.ctx();
    let n = ctx.n();
    for i in 1..n {
        for (a, b) in [(i, i + 1), (i + 1, i)] {
            for sign in [1, -1] {
                let (mut sub, ext, _) = elementary_conjugation(ctx, a, b, sign)?;
                if sub.apply(f) != f.embed(&ext)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(5, 3).len(), 10);
    }

    #[test]
    fn small_invariants() {
        let ctx = RingContext::new(2).unwrap();
        assert_eq!(fundamental_invariant(&ctx, 1).unwrap(), Polynomial::parse(&ctx, "x[1][1] + x[2][2]").unwrap());
        assert_eq!(
            fundamental_invariant(&ctx, 2).unwrap(),
            Polynomial::parse(&ctx, "x[1][1]*x[2][2] - x[1][2]*x[2][1]").unwrap()
        );
        assert!(fundamental_invariant(&ctx, 3).is_err());
        assert!(fundamental_invariant(&ctx, 0).is_err());
    }

    #[test]
    fn s2_for_n3_is_sum_of_principal_minors() {
        let ctx = RingContext::new(3).unwrap();
        let expected = Polynomial::parse(
            &ctx,
            "x[1][1]*x[2][2] - x[1][2]*x[2][1] + x[1][1]*x[3][3] - x[1][3]*x[3][1] + x[2][2]*x[3][3] - x[2][3]*x[3][2]",
        )
        .unwrap();
        assert_eq!(fundamental_invariant(&ctx, 2).unwrap(), expected);
    }

    #[test]
    fn invariance_examples() {
        let ctx = RingContext::new(3).unwrap();
        let s = fundamental_invariants(&ctx);
        assert!(invariance_check(&s[2]).unwrap());
        assert!(!invariance_check(&Polynomial::x(&ctx, 1, 1).unwrap()).unwrap());
        let combo = &(&s[0] * &s[1]) - &s[2];
        assert!(invariance_check(&combo).unwrap());
    }

    #[test]
    fn degree_and_weight() {
        let ctx = RingContext::new(4).unwrap();
        for (i, s) in fundamental_invariants(&ctx).iter().enumerate() {
            assert!(s.is_homogeneous());
            assert_eq!(s.degree(), Some(i as u32 + 1));
            assert!(s.torus_weight().unwrap().is_zero());
        }
    }
}
