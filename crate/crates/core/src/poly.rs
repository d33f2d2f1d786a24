//! Sparse multivariate polynomials over a [`RingContext`].

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_index, Error, Result};
use crate::linalg::{PolyMatrix, RationalMatrix};
use crate::monomial::Monomial;
use crate::ring::{content, Ctx, RingContext, Scalar};
use crate::weight::Weight;

/// Canonical form: a term map without zero coefficients, ordered by the
/// lexicographic monomial order. Equal polynomials have identical maps.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Scalar>,
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Scalar::one()).expect("1 is a unit")
    }

    pub fn constant(ctx: &Ctx, c: Scalar) -> Result<Self> {
        Self::from_terms(ctx, [(Monomial::one(), c)])
    }

    pub fn from_int(ctx: &Ctx, c: i64) -> Self {
        Self::from_terms_unchecked(ctx, [(Monomial::one(), ctx.scalar_of(c))])
    }

    /// The coordinate function `x[i][j]` (1-based).
    pub fn x(ctx: &Ctx, i: usize, j: usize) -> Result<Self> {
        let v = ctx.var(i, j)?;
        Ok(Self::monomial(ctx, Monomial::var(v)))
    }

    pub fn param(ctx: &Ctx, name: &str) -> Result<Self> {
        let v = ctx
            .param(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter `{name}`")))?;
        Ok(Self::monomial(ctx, Monomial::var(v)))
    }

    pub fn monomial(ctx: &Ctx, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Scalar::one());
        Polynomial { ctx: ctx.clone(), terms }
    }

    /// Builds a polynomial from possibly repeated monomials and arbitrary rationals.
    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if let Some(v) = m.max_var() {
                if v >= ctx.num_vars() {
                    return Err(Error::IndexOutOfRange { index: v, n: ctx.num_vars() });
                }
            }
            let c = ctx.reduce(&c)?;
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        Ok(Self::normalized(ctx, acc))
    }

    fn from_terms_unchecked(ctx: &Ctx, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        Self::normalized(ctx, acc)
    }

    fn normalized(ctx: &Ctx, mut acc: BTreeMap<Monomial, Scalar>) -> Self {
        if ctx.characteristic() != crate::ring::Characteristic::Zero {
            for c in acc.values_mut() {
                *c = ctx.reduce_int(std::mem::take(c));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial { ctx: ctx.clone(), terms: acc }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn content(&self) -> Scalar {
        content(self.terms.values())
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut acc = self.terms.clone();
        for (m, c) in &other.terms {
            *acc.entry(m.clone()).or_insert_with(Scalar::zero) += c;
        }
        Ok(Self::normalized(&self.ctx, acc))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut acc = self.terms.clone();
        for (m, c) in &other.terms {
            *acc.entry(m.clone()).or_insert_with(Scalar::zero) -= c;
        }
        Ok(Self::normalized(&self.ctx, acc))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|v| *v += &c).or_insert(c);
            }
        }
        Ok(Self::normalized(&self.ctx, acc.into_iter().collect()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        let c = self.ctx.reduce(c)?;
        Ok(Self::normalized(&self.ctx, self.terms.iter().map(|(m, v)| (m.clone(), v * &c)).collect()))
    }

    pub fn scale_int(&self, c: i64) -> Polynomial {
        self.scale(&Scalar::from_integer(BigInt::from(c))).expect("integers reduce in any characteristic")
    }

    /// ∂/∂x[i][j] (1-based).
    pub fn partial_derivative(&self, i: usize, j: usize) -> Result<Polynomial> {
        let v = self.ctx.var(i, j)?;
        Ok(self.derivative_var(v))
    }

    /// Formal derivative with respect to variable index `v`.
    pub fn derivative_var(&self, v: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.lower(v)?;
            Some((rest, c * BigRational::from_integer(BigInt::from(e))))
        });
        Self::from_terms_unchecked(&self.ctx, terms)
    }

    /// Re-expresses the polynomial in a context whose variables extend this one.
    pub fn embed(&self, target: &Ctx) -> Result<Polynomial> {
        if !self.ctx.embeds_into(target) {
            return Err(Error::ContextMismatch);
        }
        Ok(Polynomial { ctx: target.clone(), terms: self.terms.clone() })
    }

    /// Restricts to a smaller context; fails if a dropped parameter occurs.
    pub fn restrict(&self, target: &Ctx) -> Result<Polynomial> {
        if !target.embeds_into(&self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let bound = target.num_vars();
        for m in self.terms.keys() {
            if let Some(v) = m.max_var() {
                if v >= bound {
                    return Err(Error::ParameterPresent(self.ctx.var_name(v)));
                }
            }
        }
        Ok(Polynomial { ctx: target.clone(), terms: self.terms.clone() })
    }

    /// Replaces every `x[i][j]` by `M[i][j]`. Parameters of `self` are kept.
    ///
    /// The result lives in the matrix's context, which must extend `self`'s.
    pub fn substitute_matrix(&self, m: &PolyMatrix) -> Result<Polynomial> {
        let n = self.ctx.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n}x{n}"),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let target = m.ctx().clone();
        if !self.ctx.embeds_into(&target) {
            return Err(Error::ContextMismatch);
        }
        let mut images: Vec<Polynomial> = Vec::with_capacity(self.ctx.num_vars());
        for i in 0..n {
            for j in 0..n {
                images.push(m.get(i, j).clone());
            }
        }
        for v in n * n..self.ctx.num_vars() {
            images.push(Polynomial::monomial(&target, Monomial::var(v)));
        }
        Ok(Substitution::new(&target, images).apply(self))
    }

    /// Exact value at a numeric matrix. Parameters are not allowed.
    pub fn evaluate(&self, a: &RationalMatrix) -> Result<Scalar> {
        let n = self.ctx.n();
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n}x{n}"),
                got: format!("{}x{}", a.rows(), a.cols()),
            });
        }
        let ch = self.ctx.characteristic();
        let vals: Vec<Scalar> = (0..n * n).map(|v| ch.reduce(a.get(v / n, v % n))).collect::<Result<_>>()?;
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.iter() {
                if v >= n * n {
                    return Err(Error::ParameterPresent(self.ctx.var_name(v)));
                }
                if vals[v].is_zero() {
                    term = Scalar::zero();
                    break;
                }
                term *= num_traits::pow(vals[v].clone(), e as usize);
            }
            total += term;
        }
        ch.reduce(&total)
    }

    /// The common torus weight of all monomials; `x[i][j]` has weight ε_j - ε_i.
    pub fn torus_weight(&self) -> Result<Weight> {
        let mut first: Option<(Weight, &Monomial)> = None;
        for m in self.terms.keys() {
            let w = monomial_weight(&self.ctx, m)?;
            match &first {
                None => first = Some((w, m)),
                Some((w0, m0)) if *w0 != w => {
                    return Err(Error::NotWeightHomogeneous {
                        first: format_monomial(&self.ctx, m0),
                        second: format_monomial(&self.ctx, m),
                    })
                }
                _ => {}
            }
        }
        first.map(|(w, _)| w).ok_or(Error::ZeroPolynomial)
    }

    /// Applies a variable renaming (an algebra endomorphism permuting variables).
    pub(crate) fn rename_vars(&self, f: impl Fn(usize) -> usize) -> Polynomial {
        Self::from_terms_unchecked(&self.ctx, self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Coefficients of the powers of the parameter variable `v`: entry `k`
    /// is the coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let mut out: Vec<BTreeMap<Monomial, Scalar>> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            let rest = if e == 0 { m.clone() } else { Monomial::from_exponents(m.iter().filter(|&(w, _)| w != v)) };
            if out.len() <= e {
                out.resize_with(e + 1, BTreeMap::new);
            }
            out[e].insert(rest, c.clone());
        }
        out.into_iter().map(|terms| Polynomial { ctx: self.ctx.clone(), terms }).collect()
    }

    /// Same polynomial with its leading coefficient made positive.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    /// `self == ±other`; `Some(1)` or `Some(-1)` gives the sign.
    pub fn sign_relative_to(&self, other: &Polynomial) -> Option<i32> {
        if self == other {
            Some(1)
        } else if *self == -other.clone() {
            Some(-1)
        } else {
            None
        }
    }
}

pub(crate) fn monomial_weight(ctx: &RingContext, m: &Monomial) -> Result<Weight> {
    let n = ctx.n();
    let mut w = vec![0i64; n];
    for (v, e) in m.iter() {
        let (i, j) = ctx.matrix_position(v).ok_or_else(|| Error::ParameterPresent(ctx.var_name(v)))?;
        w[j - 1] += e as i64;
        w[i - 1] -= e as i64;
    }
    Ok(Weight::new(w))
}

pub(crate) fn format_monomial(ctx: &RingContext, m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| if e == 1 { ctx.var_name(v) } else { format!("{}^{e}", ctx.var_name(v)) })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// An algebra homomorphism given by images of the variables, with cached
/// powers so that many polynomials can be pushed through cheaply.
#[derive(Clone)]
pub struct Substitution {
    target: Ctx,
    images: Vec<Polynomial>,
    powers: HashMap<(usize, u32), Polynomial>,
}

impl Substitution {
    pub fn new(target: &Ctx, images: Vec<Polynomial>) -> Self {
        Substitution { target: target.clone(), images, powers: HashMap::new() }
    }

    fn power(&mut self, v: usize, e: u32) -> Polynomial {
        if e == 1 {
            return self.images[v].clone();
        }
        if let Some(p) = self.powers.get(&(v, e)) {
            return p.clone();
        }
        let lower = self.power(v, e - 1);
        let p = &lower * &self.images[v];
        self.powers.insert((v, e), p.clone());
        p
    }

    /// Image of a single monomial.
    pub fn apply_monomial(&mut self, m: &Monomial) -> Polynomial {
        let mut acc = Polynomial::one(&self.target);
        for (v, e) in m.iter() {
            let p = self.power(v, e);
            acc = &acc * &p;
        }
        acc
    }

    pub fn apply(&mut self, f: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &f.terms {
            let img = self.apply_monomial(m);
            for (mm, cc) in img.terms {
                let v = cc * c;
                acc.entry(mm).and_modify(|x| *x += &v).or_insert(v);
            }
        }
        Polynomial::normalized(&self.target, acc.into_iter().collect())
    }
}

/// Conjugation by an elementary unipotent `g = I + s·c·E_ij` for a formal
/// parameter `c`: the map `f ↦ f(g⁻¹ X g)`.
///
/// Returns the substitution into the context extended by `c` and the index of `c`.
pub fn elementary_conjugation(ctx: &Ctx, i: usize, j: usize, sign: i64) -> Result<(Substitution, Ctx, usize)> {
    check_index(i, ctx.n())?;
    check_index(j, ctx.n())?;
    if i == j {
        return Err(Error::InvalidArgument("elementary unipotent needs i != j".into()));
    }
    let (ext, c) = ctx.extended("c");
    let n = ctx.n();
    let cpoly = Polynomial::monomial(&ext, Monomial::var(c)).scale_int(sign);
    let x = PolyMatrix::generic(&ext);
    let mut g = PolyMatrix::identity(&ext, n);
    let mut ginv = PolyMatrix::identity(&ext, n);
    g.set(i - 1, j - 1, cpoly.clone());
    ginv.set(i - 1, j - 1, -cpoly);
    let conj = ginv.mul(&x)?.mul(&g)?;
    let mut images = Vec::with_capacity(ext.num_vars());
    for a in 0..n {
        for b in 0..n {
            images.push(conj.get(a, b).clone());
        }
    }
    for v in n * n..ext.num_vars() {
        images.push(Polynomial::monomial(&ext, Monomial::var(v)));
    }
    Ok((Substitution::new(&ext, images), ext, c))
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial operands from different ring contexts")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        let ctx = self.ctx.clone();
        Polynomial::normalized(&ctx, self.terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Characteristic;

    fn x(ctx: &Ctx, i: usize, j: usize) -> Polynomial {
        Polynomial::x(ctx, i, j).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let ctx = RingContext::new(2).unwrap();
        let sum = &(&x(&ctx, 1, 1) + &x(&ctx, 2, 2)) + &(-x(&ctx, 2, 2));
        assert_eq!(sum, x(&ctx, 1, 1));
        let prod = &x(&ctx, 1, 2) * &x(&ctx, 2, 1);
        assert_eq!(prod.len(), 1);
        assert_eq!(prod.degree(), Some(2));
        let det = &(&x(&ctx, 1, 1) * &x(&ctx, 2, 2)) - &prod;
        assert_eq!(det.pow(0), Polynomial::one(&ctx));
        assert_eq!(det.pow(3), &(&det * &det) * &det);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = RingContext::new(2).unwrap();
        let b = RingContext::new(3).unwrap();
        assert_eq!(x(&a, 1, 1).checked_add(&x(&b, 1, 1)), Err(Error::ContextMismatch));
    }

    #[test]
    fn partial_derivatives() {
        let ctx = RingContext::new(2).unwrap();
        let det = &(&x(&ctx, 1, 1) * &x(&ctx, 2, 2)) - &(&x(&ctx, 1, 2) * &x(&ctx, 2, 1));
        assert_eq!(det.partial_derivative(1, 2).unwrap(), -x(&ctx, 2, 1));
        assert!(x(&ctx, 2, 2).partial_derivative(1, 1).unwrap().is_zero());
        let sq = x(&ctx, 1, 1).pow(2);
        assert_eq!(sq.partial_derivative(1, 1).unwrap(), x(&ctx, 1, 1).scale_int(2));
        assert!(det.partial_derivative(3, 1).is_err());
    }

    #[test]
    fn derivative_in_characteristic_p() {
        let ctx = RingContext::with(2, Characteristic::Prime(3), Vec::<String>::new()).unwrap();
        let cube = x(&ctx, 1, 1).pow(3);
        assert!(cube.partial_derivative(1, 1).unwrap().is_zero());
    }

    #[test]
    fn torus_weights() {
        let ctx = RingContext::new(2).unwrap();
        assert_eq!(x(&ctx, 2, 1).torus_weight().unwrap(), Weight::new(vec![1, -1]));
        let tr = &x(&ctx, 1, 1) + &x(&ctx, 2, 2);
        assert_eq!(tr.torus_weight().unwrap(), Weight::zero(2));
        let mixed = &x(&ctx, 1, 2) + &x(&ctx, 2, 1);
        assert!(matches!(mixed.torus_weight(), Err(Error::NotWeightHomogeneous { .. })));
        assert_eq!(Polynomial::zero(&ctx).torus_weight(), Err(Error::ZeroPolynomial));
        let pctx = RingContext::with(2, Characteristic::Zero, ["c"]).unwrap();
        assert!(matches!(
            Polynomial::param(&pctx, "c").unwrap().torus_weight(),
            Err(Error::ParameterPresent(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        let ctx = RingContext::with(2, Characteristic::Zero, ["c"]).unwrap();
        let id = PolyMatrix::identity(&ctx, 2);
        assert!(x(&ctx, 1, 2).substitute_matrix(&id).unwrap().is_zero());

        let c = Polynomial::param(&ctx, "c").unwrap();
        let mut m = PolyMatrix::generic(&ctx);
        let img = &x(&ctx, 1, 1) + &(&c * &x(&ctx, 2, 1));
        m.set(0, 0, img.clone());
        assert_eq!(x(&ctx, 1, 1).substitute_matrix(&m).unwrap(), img);
    }

    #[test]
    fn trace_survives_unipotent_conjugation() {
        let ctx = RingContext::new(2).unwrap();
        let tr = &x(&ctx, 1, 1) + &x(&ctx, 2, 2);
        let (mut sub, ext, _) = elementary_conjugation(&ctx, 1, 2, 1).unwrap();
        assert_eq!(sub.apply(&tr), tr.embed(&ext).unwrap());
        // x[1][2] picks up c·(x11 - x22) - c²·x21
        let moved = sub.apply(&x(&ctx, 1, 2));
        assert_eq!(moved.coefficients_in(ext.param("c").unwrap()).len(), 3);
    }

    #[test]
    fn evaluation() {
        let ctx = RingContext::new(2).unwrap();
        let a = RationalMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert_eq!(x(&ctx, 2, 1).evaluate(&a).unwrap(), Scalar::one());
        let bad = RationalMatrix::from_i64(&[&[1]]);
        assert!(x(&ctx, 1, 1).evaluate(&bad).is_err());
    }
}
