use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{primitive_integer_vector, RowEchelon};
use crate::monomial::Monomial;
use crate::poly::{elementary_conjugation, Polynomial};
use crate::ring::{Characteristic, Ctx, Scalar};
use crate::weight::Weight;

/// Monomials in the matrix variables of a fixed degree and torus weight,
/// in increasing monomial order.
#[derive(Debug, Clone)]
pub struct WeightStratum {
    pub degree: u32,
    pub weight: Weight,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl WeightStratum {
    pub fn new(ctx: &Ctx, weight: &Weight, degree: u32) -> Result<Self> {
        let n = ctx.n();
        if weight.n() != n {
            return Err(Error::DimensionMismatch { expected: format!("weight of length {n}"), got: weight.n().to_string() });
        }
        let mut monomials = Vec::new();
        if weight.coords().iter().sum::<i64>() == 0 {
            let mut need: Vec<i64> = weight.coords().to_vec();
            let mut exps = Vec::with_capacity(n * n);
            enumerate(n, 0, degree, &mut need, &mut exps, &mut monomials);
        }
        monomials.sort();
        let index = monomials.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        Ok(WeightStratum { degree, weight: weight.clone(), monomials, index })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `f` in the monomial basis; fails if `f` has a monomial outside the stratum.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (m, c) in f.terms() {
            let k = self.position(m).ok_or_else(|| {
                Error::Precondition(format!("polynomial is not of degree {} and weight {}", self.degree, self.weight))
            })?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn polynomial(&self, ctx: &Ctx, coords: &[Scalar]) -> Result<Polynomial> {
        Polynomial::from_terms(ctx, self.monomials.iter().cloned().zip(coords.iter().cloned()))
    }
}

/// Depth-first over variables in row-major order; `need` is the weight still to be produced.
fn enumerate(n: usize, var: usize, left: u32, need: &mut [i64], exps: &mut Vec<(usize, u32)>, out: &mut Vec<Monomial>) {
    let l1: i64 = need.iter().map(|x| x.abs()).sum();
    if l1 > 2 * left as i64 {
        return;
    }
    if var == n * n {
        if left == 0 && l1 == 0 {
            out.push(Monomial::from_exponents(exps.iter().copied()));
        }
        return;
    }
    let (i, j) = (var / n, var % n);
    for e in (0..=left).rev() {
        if i != j {
            need[j] -= e as i64;
            need[i] += e as i64;
        }
        if e > 0 {
            exps.push((var, e));
        }
        enumerate(n, var + 1, left - e, need, exps, out);
        if e > 0 {
            exps.pop();
        }
        if i != j {
            need[j] += e as i64;
            need[i] -= e as i64;
        }
    }
}

/// One graded piece of the highest weight vectors: the stratum and a basis
/// of the U-invariants in it, as coordinate vectors.
#[derive(Debug, Clone)]
pub struct HwvLayer {
    pub stratum: WeightStratum,
    pub basis: Vec<Vec<Scalar>>,
}

/// Solves the U-invariance conditions on a weight stratum. For each simple
/// root the image under `X ↦ (I - cE_{i,i+1}) X (I + cE_{i,i+1})` minus the
/// original must vanish coefficientwise in `c`, which is exact in every
/// characteristic.
pub fn hwv_layer(ctx: &Ctx, lambda: &Weight, degree: u32) -> Result<HwvLayer> {
    let stratum = WeightStratum::new(ctx, lambda, degree)?;
    let ch = ctx.characteristic();
    if stratum.is_empty() {
        return Ok(HwvLayer { stratum, basis: Vec::new() });
    }
    let n = ctx.n();
    let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, Scalar)>> = BTreeMap::new();
    for i in 1..n {
        let (sub, ext, c) = elementary_conjugation(ctx, i, i + 1, 1)?;
        let images: Vec<Vec<(Monomial, Scalar)>> = stratum
            .monomials()
            .par_iter()
            .map_init(
                || sub.clone(),
                |s, m| {
                    let img = s.apply_monomial(m);
                    img.terms().filter(|(mm, _)| mm.exponent(c) > 0).map(|(mm, cc)| (mm.clone(), cc.clone())).collect()
                },
            )
            .collect();
        drop(ext);
        for (k, img) in images.into_iter().enumerate() {
            for (mm, cc) in img {
                rows.entry((i, mm)).or_default().push((k, cc));
            }
        }
    }
    let mut ech = RowEchelon::new(stratum.len(), ch);
    for entries in rows.into_values() {
        let mut row = vec![Scalar::zero(); stratum.len()];
        for (k, c) in entries {
            row[k] += c;
        }
        ech.insert(row)?;
        if ech.rank() == stratum.len() {
            break;
        }
    }
    let basis = ech.nullspace().into_iter().map(|v| normalize_vector(&v, ch)).collect();
    Ok(HwvLayer { stratum, basis })
}

fn normalize_vector(v: &[Scalar], ch: Characteristic) -> Vec<Scalar> {
    match ch {
        Characteristic::Zero => primitive_integer_vector(v),
        Characteristic::Prime(_) => v.to_vec(),
    }
}

/// A basis of the highest weight vectors of weight `lambda` in degree `degree`.
pub fn hwv_space(ctx: &Ctx, lambda: &Weight, degree: u32) -> Result<Vec<Polynomial>> {
    let layer = hwv_layer(ctx, lambda, degree)?;
    layer.basis.iter().map(|v| layer.stratum.polynomial(ctx, v)).collect()
}
