use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::subsets;
use crate::linalg::RationalMatrix;
use crate::ring::{Ctx, Scalar};
use crate::semiinv::{v_basic_with, InvariantDerivatives};

/// A sequence σ of distinct indices in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NilpotentSeq(Vec<usize>);

impl NilpotentSeq {
    pub fn new(seq: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &s in &seq {
            if s == 0 || s > n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidArgument(format!("{seq:?} is not a sequence of distinct indices in 1..={n}")));
            }
        }
        if seq.is_empty() {
            return Err(Error::InvalidArgument("empty sequence".into()));
        }
        Ok(NilpotentSeq(seq))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A_σ with A_σ(e_{σ_i}) = e_{σ_{i-1}} for i >= 2 and A_σ(e_j) = 0 otherwise.
pub fn nilpotent_from_sequence(seq: &NilpotentSeq, n: usize) -> Result<RationalMatrix> {
    let s = seq.as_slice();
    if s.iter().any(|&v| v > n) {
        return Err(Error::InvalidArgument(format!("{s:?} has entries beyond n = {n}")));
    }
    let mut a = RationalMatrix::zeros(n, n);
    for w in s.windows(2) {
        a.set(w[0] - 1, w[1] - 1, Scalar::one());
    }
    Ok(a)
}

fn check_subset(set: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut desc = set.to_vec();
    desc.sort_unstable_by(|a, b| b.cmp(a));
    desc.dedup();
    if desc.is_empty() || desc.len() != set.len() || desc.iter().any(|&i| i < 2 || i > n) {
        return Err(Error::InvalidArgument(format!("{set:?} is not a nonempty subset of {{2..{n}}}")));
    }
    Ok(desc)
}

/// σ(I) for I = {i_1 > … > i_t}: length i_1, σ_1 = n, σ_{i_j} = j, and the
/// free slots filled with the largest unused values in decreasing order.
pub fn sigma_choice(set: &[usize], n: usize) -> Result<NilpotentSeq> {
    sigma_choice_by(set, n, |free| free.sort_unstable_by(|a, b| b.cmp(a)))
}

/// σ(I) with the free slots filled by a random selection of unused values.
pub fn sigma_choice_random<R: Rng>(set: &[usize], n: usize, rng: &mut R) -> Result<NilpotentSeq> {
    sigma_choice_by(set, n, |free| free.shuffle(rng))
}

fn sigma_choice_by(set: &[usize], n: usize, order: impl FnOnce(&mut Vec<usize>)) -> Result<NilpotentSeq> {
    let desc = check_subset(set, n)?;
    let len = desc[0];
    let mut seq = vec![0usize; len];
    seq[0] = n;
    for (j, &i) in desc.iter().enumerate() {
        seq[i - 1] = j + 1;
    }
    let mut unused: Vec<usize> = (1..=n).filter(|v| !seq.contains(v)).collect();
    order(&mut unused);
    let mut fill = unused.into_iter();
    for slot in seq.iter_mut().filter(|s| **s == 0) {
        *slot = fill.next().expect("n >= len leaves enough values");
    }
    NilpotentSeq::new(seq, n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaCertificate {
    pub n: usize,
    pub t: usize,
    /// Row and column labels: the t-subsets of {2..n} in lexicographic order.
    pub subsets: Vec<Vec<usize>>,
    pub sequences: Vec<NilpotentSeq>,
    /// `values[I][J] = v_{t,I}(A_{σ(J)})`, as strings.
    pub values: Vec<Vec<String>>,
    pub diagonal_units: bool,
    pub off_diagonal_zero: bool,
    pub rank: usize,
}

impl DeltaCertificate {
    pub fn holds(&self) -> bool {
        self.diagonal_units && self.off_diagonal_zero && self.rank == self.subsets.len()
    }
}

/// The matrix `v_{t,I}(A_{σ(J)})` over pairs of t-subsets of {2..n}.
pub fn delta_evaluation_matrix(ctx: &Ctx, t: usize) -> Result<(RationalMatrix, DeltaCertificate)> {
    delta_with_sequences(ctx, t, |set| sigma_choice(set, ctx.n()))
}

/// As [`delta_evaluation_matrix`] but with σ(J) completed at random.
pub fn delta_evaluation_matrix_random<R: Rng>(ctx: &Ctx, t: usize, rng: &mut R) -> Result<(RationalMatrix, DeltaCertificate)> {
    let n = ctx.n();
    delta_with_sequences(ctx, t, |set| sigma_choice_random(set, n, rng))
}

fn delta_with_sequences(
    ctx: &Ctx,
    t: usize,
    mut choose: impl FnMut(&[usize]) -> Result<NilpotentSeq>,
) -> Result<(RationalMatrix, DeltaCertificate)> {
    let n = ctx.n();
    if t == 0 || t >= n {
        return Err(Error::InvalidArgument(format!("t = {t} must lie in 1..={}", n - 1)));
    }
    let sets: Vec<Vec<usize>> = subsets(n - 1, t).into_iter().map(|s| s.into_iter().map(|i| i + 1).collect()).collect();
    let sequences = sets.iter().map(|s| choose(s)).collect::<Result<Vec<_>>>()?;
    let points = sequences.iter().map(|s| nilpotent_from_sequence(s, n)).collect::<Result<Vec<_>>>()?;
    let mut ds = InvariantDerivatives::new(ctx);
    let mut rows = Vec::with_capacity(sets.len());
    for set in &sets {
        let v = v_basic_with(&mut ds, ctx, t, set)?;
        rows.push(points.iter().map(|a| v.poly.evaluate(a)).collect::<Result<Vec<_>>>()?);
    }
    let m = RationalMatrix::from_rows(rows)?;
    let k = sets.len();
    let unit = |c: &Scalar| c.abs().is_one() || ctx.characteristic().reduce(&(c * c)).is_ok_and(|s| s.is_one());
    let diagonal_units = (0..k).all(|i| unit(m.get(i, i)));
    let off_diagonal_zero = (0..k).all(|i| (0..k).all(|j| i == j || m.get(i, j).is_zero()));
    let rank = m.rank_in(ctx.characteristic())?;
    let values = m.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    let cert = DeltaCertificate { n, t, subsets: sets, sequences, values, diagonal_units, off_diagonal_zero, rank };
    Ok((m, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;
    use rand::SeedableRng;

    #[test]
    fn nilpotent_matrix_of_decreasing_sequence() {
        let a = nilpotent_from_sequence(&NilpotentSeq::new(vec![3, 2, 1], 3).unwrap(), 3).unwrap();
        assert_eq!(a, RationalMatrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]));
        let z = nilpotent_from_sequence(&NilpotentSeq::new(vec![4], 4).unwrap(), 4).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn invalid_sequences() {
        assert!(NilpotentSeq::new(vec![1, 1], 3).is_err());
        assert!(NilpotentSeq::new(vec![4], 3).is_err());
        assert!(NilpotentSeq::new(vec![], 3).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_choice(&[3, 2], 4).unwrap().as_slice(), &[4, 2, 1]);
        for n in 2..=6 {
            let s = sigma_choice(&[n], n).unwrap();
            assert_eq!(s.as_slice()[0], n);
            assert_eq!(s.as_slice()[n - 1], 1);
        }
        assert_eq!(sigma_choice(&[2, 5], 6).unwrap().len(), 5);
        assert!(sigma_choice(&[1], 4).is_err());
        assert!(sigma_choice(&[], 4).is_err());
    }

    #[test]
    fn random_completion_respects_the_rule() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let s = sigma_choice_random(&[5, 3, 2], 6, &mut rng).unwrap();
            let v = s.as_slice();
            assert_eq!((v.len(), v[0], v[4], v[2], v[1]), (5, 6, 1, 2, 3));
        }
    }

    #[test]
    fn small_delta_matrices() {
        let ctx = RingContext::new(3).unwrap();
        let (m, cert) = delta_evaluation_matrix(&ctx, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(cert.holds());
        let ctx4 = RingContext::new(4).unwrap();
        let (m, cert) = delta_evaluation_matrix(&ctx4, 2).unwrap();
        assert_eq!((m.rows(), m.rank()), (3, 3));
        assert!(cert.holds());
    }
}
