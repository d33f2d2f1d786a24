//! Elements of gl_n^{⊗t} as signed sums of elementary tensors
//! `E_{a_1 b_1} ⊗ … ⊗ E_{a_t b_t}`, and the highest weight vector E_λ.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinat::{split, Partition};
use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorTerm {
    pub coeff: i64,
    /// `(a_j, b_j)`, 1-based, one per tensor factor `E_{a_j b_j}`.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorExpression {
    n: usize,
    t: usize,
    terms: Vec<TensorTerm>,
}

impl TensorExpression {
    /// Canonicalizes: merges equal pair lists, drops zero terms, sorts.
    pub fn new(n: usize, t: usize, terms: impl IntoIterator<Item = TensorTerm>) -> Result<Self> {
        let mut acc: BTreeMap<Vec<(usize, usize)>, i64> = BTreeMap::new();
        for term in terms {
            if term.pairs.len() != t {
                return Err(Error::DimensionMismatch { expected: format!("{t} tensor factors"), got: term.pairs.len().to_string() });
            }
            if let Some(&(a, b)) = term.pairs.iter().find(|&&(a, b)| a == 0 || b == 0 || a > n || b > n) {
                return Err(Error::InvalidArgument(format!("pair ({a},{b}) outside 1..={n}")));
            }
            *acc.entry(term.pairs).or_insert(0) += term.coeff;
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(pairs, coeff)| TensorTerm { coeff, pairs }).collect();
        Ok(TensorExpression { n, t, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Tensor degree.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn terms(&self) -> &[TensorTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weight Σ_j (ε_{a_j} - ε_{b_j}) of one term.
    pub fn term_weight(&self, term: &TensorTerm) -> Weight {
        let mut w = vec![0i64; self.n];
        for &(a, b) in &term.pairs {
            w[a - 1] += 1;
            w[b - 1] -= 1;
        }
        Weight::new(w)
    }

    /// Simultaneous place permutation: factor `k` moves to position `perm[k]`.
    pub fn place_permuted(&self, perm: &[usize]) -> TensorExpression {
        let terms = self.terms.iter().map(|term| {
            let mut pairs = term.pairs.clone();
            for (k, &p) in perm.iter().enumerate() {
                pairs[p] = term.pairs[k];
            }
            TensorTerm { coeff: term.coeff, pairs }
        });
        TensorExpression::new(self.n, self.t, terms).expect("permutation keeps pairs valid")
    }

    pub fn negated(&self) -> TensorExpression {
        TensorExpression {
            n: self.n,
            t: self.t,
            terms: self.terms.iter().map(|t| TensorTerm { coeff: -t.coeff, pairs: t.pairs.clone() }).collect(),
        }
    }

    /// True if every simultaneous place permutation maps the tensor to ±itself,
    /// so that the order of the arguments it is applied to only affects the sign.
    pub fn is_sign_symmetric(&self) -> bool {
        (0..self.t.saturating_sub(1)).all(|k| {
            let mut perm: Vec<usize> = (0..self.t).collect();
            perm.swap(k, k + 1);
            let moved = self.place_permuted(&perm);
            moved == *self || moved == self.negated()
        })
    }
}

/// Signed permutations of `0..len` that only move positions within each
/// column of the row-reading tableau of `shape`.
pub fn column_stabilizer(shape: &Partition) -> Vec<(i64, Vec<usize>)> {
    let t = shape.size() as usize;
    let mut start = 0;
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); shape.parts().first().copied().unwrap_or(0) as usize];
    for &len in shape.parts() {
        for (j, col) in columns.iter_mut().enumerate().take(len as usize) {
            col.push(start + j);
        }
        start += len as usize;
    }
    let mut out = vec![(1i64, (0..t).collect::<Vec<_>>())];
    for col in columns.iter().filter(|c| c.len() > 1) {
        let local = permutations(col.len());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for (sign, base) in &out {
            for (lsign, lp) in &local {
                let mut p = base.clone();
                for (k, &target) in lp.iter().enumerate() {
                    p[col[k]] = col[target];
                }
                next.push((sign * lsign, p));
            }
        }
        out = next;
    }
    out
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn permutations(k: usize) -> Vec<(i64, Vec<usize>)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(i64, Vec<usize>)>) {
        if cur.len() == used.len() {
            let inversions = (0..cur.len()).flat_map(|i| (i + 1..cur.len()).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((if inversions % 2 == 0 { 1 } else { -1 }, cur.clone()));
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// Applies a place permutation to a word: the letter at position `k` moves to `perm[k]`.
fn permute_word(word: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; word.len()];
    for (k, &p) in perm.iter().enumerate() {
        out[p] = word[k];
    }
    out
}

/// E_λ for a nonzero dominant root-lattice weight λ = [λ⁺, λ⁻]: the image of
/// `A_{λ⁺}·e_{λ⁺} ⊗ A_{λ⁻}·e*_{λ⁻}` in gl_n^{⊗t}, where A is the signed sum
/// over the column stabilizer of the row-reading tableau.
pub fn highest_weight_tensor(lambda: &Weight) -> Result<TensorExpression> {
    if lambda.is_zero() || !lambda.is_dominant() || !lambda.in_root_lattice() {
        return Err(Error::Precondition(format!("weight {lambda} must be nonzero, dominant and in the root lattice")));
    }
    let n = lambda.n();
    let bip = split(lambda)?;
    let t = bip.plus.size() as usize;
    // e_{λ⁺}: the k-th factor is e_i for k in row i; e*_{λ⁻} uses e*_{n-i+1}.
    let row_word = |p: &Partition, f: &dyn Fn(usize) -> usize| -> Vec<usize> {
        p.parts().iter().enumerate().flat_map(|(i, &len)| std::iter::repeat_n(f(i + 1), len as usize)).collect()
    };
    let upper = row_word(&bip.plus, &|i| i);
    let lower = row_word(&bip.minus, &|i| n - i + 1);
    let mut terms = Vec::new();
    for (s1, p1) in column_stabilizer(&bip.plus) {
        let a = permute_word(&upper, &p1);
        for (s2, p2) in column_stabilizer(&bip.minus) {
            let b = permute_word(&lower, &p2);
            terms.push(TensorTerm { coeff: s1 * s2, pairs: a.iter().copied().zip(b.iter().copied()).collect() });
        }
    }
    TensorExpression::new(n, t, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{lambda_t, mu_t};

    #[test]
    fn lambda_t_tensor_is_antisymmetrized_first_row() {
        for n in 2..=5 {
            for t in 1..n {
                let e = highest_weight_tensor(&lambda_t(n, t).unwrap()).unwrap();
                assert_eq!(e.terms().len(), (1..=t).product::<usize>());
                for term in e.terms() {
                    assert!(term.pairs.iter().all(|&(a, _)| a == 1));
                    let mut cols: Vec<usize> = term.pairs.iter().map(|&(_, b)| b).collect();
                    cols.sort_unstable();
                    assert_eq!(cols, (n - t + 1..=n).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn two_varpi_two_has_four_terms() {
        let e = highest_weight_tensor(&Weight::new(vec![1, 1, -1, -1])).unwrap();
        assert_eq!(e.t(), 2);
        assert_eq!(e.terms().len(), 4);
        let expected = TensorExpression::new(
            4,
            2,
            [
                TensorTerm { coeff: 1, pairs: vec![(1, 4), (2, 3)] },
                TensorTerm { coeff: -1, pairs: vec![(1, 3), (2, 4)] },
                TensorTerm { coeff: -1, pairs: vec![(2, 4), (1, 3)] },
                TensorTerm { coeff: 1, pairs: vec![(2, 3), (1, 4)] },
            ],
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn highest_root_gives_single_term() {
        let e = highest_weight_tensor(&Weight::new(vec![1, 0, 0, -1])).unwrap();
        assert_eq!(e.terms(), &[TensorTerm { coeff: 1, pairs: vec![(1, 4)] }]);
    }

    #[test]
    fn every_term_has_weight_lambda() {
        let weights = [vec![2, 0, -1, -1], vec![1, 1, -1, -1], vec![2, 1, -1, -2], vec![3, 0, -1, -1, -1], vec![2, 2, -2, -2]];
        for w in weights {
            let lambda = Weight::new(w);
            let e = highest_weight_tensor(&lambda).unwrap();
            assert!(!e.is_zero());
            for term in e.terms() {
                assert_eq!(e.term_weight(term), lambda);
            }
        }
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(highest_weight_tensor(&Weight::zero(3)).is_err());
        assert!(highest_weight_tensor(&Weight::new(vec![-1, 1])).is_err());
        assert!(highest_weight_tensor(&Weight::new(vec![1, 0, 0])).is_err());
    }

    #[test]
    fn sign_symmetry() {
        assert!(highest_weight_tensor(&mu_t(4, 3).unwrap()).unwrap().is_sign_symmetric());
        assert!(highest_weight_tensor(&Weight::new(vec![1, 1, -1, -1])).unwrap().is_sign_symmetric());
        assert!(!highest_weight_tensor(&Weight::new(vec![2, 1, -1, -2])).unwrap().is_sign_symmetric());
    }

    #[test]
    fn column_stabilizer_sizes() {
        let p = Partition::new(vec![2, 2, 1]).unwrap();
        // columns {0,2,4} and {1,3}
        assert_eq!(column_stabilizer(&p).len(), 12);
        assert_eq!(permutations(3).iter().filter(|(s, _)| *s < 0).count(), 3);
    }
}
