use glhwv::combinat::{kostka_count, semistandard_tableaux, Partition};
use glhwv::invariants::fundamental_invariant;
use glhwv::linalg::{PolyMatrix, RationalMatrix};
use glhwv::semiinv::phi_involution;
use glhwv::{Characteristic, Ctx, Monomial, Polynomial, RingContext, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

type RawPoly = Vec<(Vec<(usize, u32)>, i64, i64)>;

fn raw_poly(vars: usize, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec((0..vars, 1u32..3), 0..4), -5i64..6, 1i64..4), 0..max_terms)
}

fn build(ctx: &Ctx, raw: &RawPoly) -> Polynomial {
    Polynomial::from_terms(ctx, raw.iter().map(|(m, p, q)| (Monomial::from_exponents(m.iter().copied()), Scalar::new((*p).into(), (*q).into()))))
        .unwrap()
}

fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..5, n), n)
}

fn rational(rows: &[Vec<i64>]) -> RationalMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RationalMatrix::from_i64(&refs)
}

fn constant_matrix(ctx: &Ctx, a: &RationalMatrix) -> PolyMatrix {
    PolyMatrix::from_fn(ctx, a.rows(), a.cols(), |i, j| Polynomial::constant(ctx, a.get(i, j).clone()).unwrap())
}

fn ctx3() -> Ctx {
    RingContext::new(3).unwrap()
}

/// A partition with at most four parts and three cut points splitting its size into a content vector.
fn shape_and_cuts() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    prop::collection::vec(1u32..4, 1..5).prop_flat_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size: u32 = parts.iter().sum();
        (Just(parts), prop::collection::vec(0..=size, 3))
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_term_order(raw in raw_poly(9, 8)) {
        let ctx = ctx3();
        let f = build(&ctx, &raw);
        let mut rev = raw.clone();
        rev.reverse();
        prop_assert_eq!(&f, &build(&ctx, &rev));
        prop_assert_eq!(Polynomial::parse(&ctx, &f.to_string()).unwrap(), f.clone());
        prop_assert!(f.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn ring_axioms(a in raw_poly(9, 5), b in raw_poly(9, 5), c in raw_poly(9, 5)) {
        let ctx = ctx3();
        let (f, g, h) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        prop_assert_eq!(&(&f * &(&g + &h)), &(&(&f * &g) + &(&f * &h)));
        prop_assert_eq!(&(&f * &g), &(&g * &f));
        prop_assert!((&(&f + &g) - &g - f.clone()).is_zero());
    }

    #[test]
    fn leibniz_rule(a in raw_poly(9, 5), b in raw_poly(9, 5), i in 1usize..4, j in 1usize..4) {
        let ctx = ctx3();
        let (f, g) = (build(&ctx, &a), build(&ctx, &b));
        let lhs = (&f * &g).partial_derivative(i, j).unwrap();
        let rhs = &(&f.partial_derivative(i, j).unwrap() * &g) + &(&f * &g.partial_derivative(i, j).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_is_additive(a in raw_poly(9, 5), b in raw_poly(9, 5)) {
        let ctx = ctx3();
        let (f, g) = (build(&ctx, &a), build(&ctx, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).degree(), Some(f.degree().unwrap() + g.degree().unwrap()));
    }

    #[test]
    fn substitution_commutes_with_evaluation(raw in raw_poly(9, 6), a in small_matrix(3), b in small_matrix(3)) {
        let ctx = ctx3();
        let f = build(&ctx, &raw);
        let (a, b) = (rational(&a), rational(&b));
        let xb = PolyMatrix::generic(&ctx).mul(&constant_matrix(&ctx, &b)).unwrap();
        prop_assert_eq!(f.substitute_matrix(&xb).unwrap().evaluate(&a).unwrap(), f.evaluate(&a.mul(&b).unwrap()).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in small_matrix(4), b in small_matrix(4)) {
        let (a, b) = (rational(&a), rational(&b));
        prop_assert_eq!(a.mul(&b).unwrap().determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn cofactor_and_elimination_determinants_agree(a in small_matrix(4)) {
        let ctx = RingContext::new(4).unwrap();
        let a = rational(&a);
        let generic = PolyMatrix::generic(&ctx).determinant().unwrap();
        prop_assert_eq!(generic.evaluate(&a).unwrap(), a.determinant().unwrap());
    }

    #[test]
    fn rank_of_transpose(rows in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 1..6)) {
        let m = rational(&rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let null = m.nullspace();
        prop_assert_eq!(null.len(), m.cols() - m.rank());
        for v in null {
            for r in 0..m.rows() {
                let dot: Scalar = m.row(r).iter().zip(&v).map(|(x, y)| x * y).sum();
                prop_assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn rank_mod_p_never_exceeds_rank(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 1..5)) {
        let m = rational(&rows);
        prop_assert!(m.rank_in(Characteristic::Prime(3)).unwrap() <= m.rank());
    }

    #[test]
    fn invariants_survive_unipotent_conjugation(a in small_matrix(3), u in prop::collection::vec(-3i64..4, 3)) {
        let ctx = ctx3();
        let a = rational(&a);
        let g = RationalMatrix::from_i64(&[&[1, u[0], u[1]], &[0, 1, u[2]], &[0, 0, 1]]);
        let ginv = RationalMatrix::from_i64(&[&[1, -u[0], u[0] * u[2] - u[1]], &[0, 1, -u[2]], &[0, 0, 1]]);
        prop_assert_eq!(g.mul(&ginv).unwrap(), RationalMatrix::identity(3));
        let conj = g.mul(&a).unwrap().mul(&ginv).unwrap();
        for i in 1..=3 {
            let s = fundamental_invariant(&ctx, i).unwrap();
            prop_assert_eq!(s.evaluate(&conj).unwrap(), s.evaluate(&a).unwrap());
        }
    }

    #[test]
    fn phi_is_an_involution_reversing_weights(raw in raw_poly(16, 6)) {
        let ctx = RingContext::new(4).unwrap();
        let f = build(&ctx, &raw);
        prop_assert_eq!(phi_involution(&phi_involution(&f)), f.clone());
        if let Ok(w) = f.torus_weight() {
            prop_assert_eq!(phi_involution(&f).torus_weight().unwrap(), w.dual());
        }
    }

    #[test]
    fn kostka_counts_ignore_content_order((parts, cuts) in shape_and_cuts(), seed in 0usize..24) {
        let shape = Partition::new(parts).unwrap();
        let mut cuts = cuts;
        cuts.sort_unstable();
        let content: Vec<u32> = [0].iter().chain(&cuts).zip(cuts.iter().chain(&[shape.size()])).map(|(a, b)| b - a).collect();
        let mut shuffled = content.clone();
        shuffled.rotate_left(seed % 4);
        shuffled.swap(0, seed % 3 + 1);
        let k = kostka_count(&shape, &content).unwrap();
        prop_assert_eq!(k, kostka_count(&shape, &shuffled).unwrap());
        prop_assert_eq!(k, semistandard_tableaux(&shape, &content).unwrap().len() as u64);
    }
}

#[test]
fn generic_determinant_of_product() {
    // det over the polynomial ring: det(X·B) = det X · det B
    let ctx = ctx3();
    let b = RationalMatrix::from_i64(&[&[2, 1, 0], &[0, 1, -1], &[3, 0, 1]]);
    let x = PolyMatrix::generic(&ctx);
    let lhs = x.mul(&constant_matrix(&ctx, &b)).unwrap().determinant().unwrap();
    let rhs = x.determinant().unwrap().scale(&b.determinant().unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(b.determinant().unwrap(), Scalar::from_integer(BigInt::from(-1)));
}
