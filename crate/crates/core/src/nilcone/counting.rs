//! Dimensions of the highest weight vectors by counting monomials.
//!
//! In characteristic zero dim B_d is the multiplicity of L(λ) in S^d(gl_n),
//! which the Weyl alternation Σ_w sgn(w)·dim S^d(gl_n)_{λ+ρ-wρ} gives from
//! weight-space sizes. Freeness over the invariants then turns the Hilbert
//! series of B into the quotient dimensions q_d.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::tensor::permutations;
use crate::weight::Weight;

const MAX_N: usize = 8;

type Key = [i8; MAX_N];

/// Weight-space sizes of S^d(gl_n) for d ≤ `max_degree`, restricted to a set of target weights.
fn weight_counts(n: usize, targets: &[Weight], max_degree: u32) -> Result<Vec<Vec<u128>>> {
    if n > MAX_N {
        return Err(Error::InvalidArgument(format!("counting supports n ≤ {MAX_N}")));
    }
    let dmax = max_degree as usize;
    let key_of = |w: &[i64]| -> Result<Key> {
        let mut k = [0i8; MAX_N];
        for (slot, &c) in k.iter_mut().zip(w) {
            *slot = i8::try_from(c).map_err(|_| Error::InvalidArgument("weight coordinate too large".into()))?;
        }
        Ok(k)
    };
    let target_keys: Vec<Key> = targets.iter().map(|t| key_of(t.coords())).collect::<Result<_>>()?;
    // Off-diagonal variables; x[i][j] adds ε_j - ε_i.
    let vars: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut states: HashMap<Key, Vec<u128>> = HashMap::new();
    let mut init = vec![0u128; dmax + 1];
    init[0] = 1;
    states.insert([0; MAX_N], init);
    let dist = |k: &Key| -> i64 {
        target_keys
            .iter()
            .map(|t| (0..n).map(|c| (t[c] as i64 - k[c] as i64).abs()).sum::<i64>())
            .min()
            .unwrap_or(i64::MAX)
    };
    for &(i, j) in &vars {
        let mut next: HashMap<Key, Vec<u128>> = HashMap::new();
        for (key, counts) in &states {
            let mut k = *key;
            for e in 0..=dmax {
                if e > 0 {
                    k[j] = k[j].checked_add(1).ok_or_else(|| Error::InvalidArgument("degree too large".into()))?;
                    k[i] = k[i].checked_sub(1).ok_or_else(|| Error::InvalidArgument("degree too large".into()))?;
                }
                let slack = dist(&k);
                let entry = next.entry(k).or_insert_with(|| vec![0; dmax + 1]);
                let mut any = false;
                for d in 0..=dmax - e {
                    if counts[d] != 0 && slack <= 2 * (dmax - d - e) as i64 {
                        entry[d + e] += counts[d];
                        any = true;
                    }
                }
                if !any && entry.iter().all(|&c| c == 0) {
                    next.remove(&k);
                }
            }
        }
        states = next;
    }
    let mut out = Vec::with_capacity(targets.len());
    for key in &target_keys {
        let off = states.get(key).cloned().unwrap_or_else(|| vec![0; dmax + 1]);
        // Diagonal variables have weight zero: n of them fill the remaining degree.
        let full: Vec<u128> = (0..=dmax)
            .map(|d| (0..=d).map(|k| off[k] * binomial((n + d - k - 1) as u64, (d - k) as u64) as u128).sum())
            .collect();
        out.push(full);
    }
    Ok(out)
}

/// dim B_d for d = 0..=max_degree, in characteristic zero.
pub fn hwv_dimensions(lambda: &Weight, max_degree: u32) -> Result<Vec<u64>> {
    let n = lambda.n();
    let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let perms = permutations(n);
    let targets: Vec<Weight> = perms
        .iter()
        .map(|(_, w)| {
            // (wρ)_{w(i)} = ρ_i
            let mut wrho = vec![0i64; n];
            for (i, &wi) in w.iter().enumerate() {
                wrho[wi] = rho[i];
            }
            Weight::new((0..n).map(|k| lambda.coords()[k] + rho[k] - wrho[k]).collect())
        })
        .collect();
    let counts = weight_counts(n, &targets, max_degree)?;
    (0..=max_degree as usize)
        .map(|d| {
            let v: i128 = perms.iter().zip(&counts).map(|((s, _), c)| *s as i128 * c[d] as i128).sum();
            u64::try_from(v).map_err(|_| Error::Precondition(format!("negative alternating sum {v} in degree {d}")))
        })
        .collect()
}

/// Coefficients of H(t)·∏_{i=1}^n (1 - t^i), truncated to the length of `hilbert`.
pub fn quotient_dimensions(n: usize, hilbert: &[u64]) -> Result<Vec<u64>> {
    let mut q: Vec<i128> = hilbert.iter().map(|&h| h as i128).collect();
    for i in 1..=n {
        for d in (i..q.len()).rev() {
            q[d] -= q[d - i];
        }
    }
    q.into_iter()
        .enumerate()
        .map(|(d, v)| u64::try_from(v).map_err(|_| Error::Precondition(format!("negative quotient dimension {v} in degree {d}"))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingProfile {
    pub hwv_dims: Vec<u64>,
    pub quotient_dims: Vec<u64>,
}

pub fn counting_profile(lambda: &Weight, max_degree: u32) -> Result<CountingProfile> {
    let hwv_dims = hwv_dimensions(lambda, max_degree)?;
    let quotient_dims = quotient_dimensions(lambda.n(), &hwv_dims)?;
    Ok(CountingProfile { hwv_dims, quotient_dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_hilbert_series() {
        // k[s1, s2, s3]: coefficients of 1/((1-t)(1-t²)(1-t³))
        let dims = hwv_dimensions(&Weight::zero(3), 6).unwrap();
        assert_eq!(dims, vec![1, 1, 2, 3, 4, 5, 7]);
        let q = quotient_dimensions(3, &dims).unwrap();
        assert_eq!(q, vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn adjoint_of_gl3() {
        let p = counting_profile(&Weight::new(vec![1, 0, -1]), 5).unwrap();
        assert_eq!(&p.hwv_dims[..3], &[0, 1, 2]);
        assert_eq!(p.quotient_dims, vec![0, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn gl2_weights() {
        // the weight (1,-1) is generated by x21 in degree 1
        let p = counting_profile(&Weight::new(vec![1, -1]), 6).unwrap();
        assert_eq!(p.quotient_dims, vec![0, 1, 0, 0, 0, 0, 0]);
    }
}
