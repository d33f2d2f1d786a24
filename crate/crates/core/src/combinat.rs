//! Partitions, semistandard tableaux and Kostka numbers.
//!
//! Tableaux here have weakly increasing rows and strictly increasing
//! columns, with entries in `1..=n`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Drops trailing zeros from a weakly decreasing nonnegative vector.
    pub fn from_padded(parts: &[i64]) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidArgument(format!("{parts:?} has negative parts")));
        }
        Self::new(parts.iter().filter(|&&p| p > 0).map(|&p| p as u32).collect())
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The length l(λ).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The transpose shape.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    fn padded(&self, n: usize) -> Vec<i64> {
        let mut v: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        v.resize(n, 0);
        v
    }
}

/// The unique pair of partitions with `λ = λ⁺ - w_0(λ⁻)` and `l(λ⁺) + l(λ⁻) <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionSplit {
    pub plus: Partition,
    pub minus: Partition,
}

impl BipartitionSplit {
    /// `[λ⁺, λ⁻]` as a weight of rank `n`.
    pub fn reconstruct(&self, n: usize) -> Result<Weight> {
        if self.plus.len() + self.minus.len() > n {
            return Err(Error::InvalidArgument(format!(
                "l(plus) + l(minus) = {} exceeds n = {n}",
                self.plus.len() + self.minus.len()
            )));
        }
        let plus = Weight::new(self.plus.padded(n));
        let minus = Weight::new(self.minus.padded(n)).reversed();
        Ok(&plus - &minus)
    }
}

pub fn split(lambda: &Weight) -> Result<BipartitionSplit> {
    if !lambda.is_dominant() {
        return Err(Error::Precondition(format!("weight {lambda} is not dominant")));
    }
    let c = lambda.coords();
    let plus = Partition(c.iter().filter(|&&v| v > 0).map(|&v| v as u32).collect());
    let minus = Partition(c.iter().rev().filter(|&&v| v < 0).map(|&v| (-v) as u32).collect());
    Ok(BipartitionSplit { plus, minus })
}

/// A filling of a Young diagram, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pub shape: Partition,
    pub rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| below > above));
        let shape_ok = self.rows.len() == self.shape.len()
            && self.rows.iter().zip(self.shape.parts()).all(|(r, &p)| r.len() == p as usize);
        rows_ok && cols_ok && shape_ok
    }

    /// Number of entries equal to each of `1..=n`.
    pub fn content(&self, n: usize) -> Vec<u32> {
        let mut c = vec![0; n];
        for &v in self.rows.iter().flatten() {
            c[v as usize - 1] += 1;
        }
        c
    }
}

fn check_content(shape: &Partition, content: &[u32]) -> Result<()> {
    let total: u32 = content.iter().sum();
    if total != shape.size() {
        return Err(Error::InvalidArgument(format!(
            "shape has {} boxes but content sums to {total}",
            shape.size()
        )));
    }
    Ok(())
}

/// All semistandard tableaux of the given shape and content, by filling
/// boxes in reading order.
pub fn semistandard_tableaux(shape: &Partition, content: &[u32]) -> Result<Vec<Tableau>> {
    check_content(shape, content)?;
    let parts = shape.parts();
    let cells: Vec<(usize, usize)> =
        parts.iter().enumerate().flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j))).collect();
    let mut rows: Vec<Vec<u32>> = parts.iter().map(|&p| vec![0; p as usize]).collect();
    let mut left = content.to_vec();
    let mut out = Vec::new();

    fn rec(k: usize, cells: &[(usize, usize)], rows: &mut Vec<Vec<u32>>, left: &mut [u32], shape: &Partition, out: &mut Vec<Tableau>) {
        if k == cells.len() {
            out.push(Tableau { shape: shape.clone(), rows: rows.clone() });
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { rows[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { rows[i - 1][j] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=left.len() as u32 {
            if left[v as usize - 1] == 0 {
                continue;
            }
            left[v as usize - 1] -= 1;
            rows[i][j] = v;
            rec(k + 1, cells, rows, left, shape, out);
            left[v as usize - 1] += 1;
        }
    }
    rec(0, &cells, &mut rows, &mut left, shape, &mut out);
    Ok(out)
}

/// The Kostka number K_{shape, content}.
///
/// The entries equal to `i` form a horizontal strip, so the tableaux are
/// enumerated as chains of shapes, one strip per value, with memoization
/// on `(value, current shape)`.
pub fn kostka_count(shape: &Partition, content: &[u32]) -> Result<u64> {
    check_content(shape, content)?;
    let target = shape.parts().to_vec();
    let mut memo: HashMap<(usize, Vec<u32>), u64> = HashMap::new();
    Ok(strips(0, vec![0; target.len()], &target, content, &mut memo))
}

fn strips(k: usize, cur: Vec<u32>, target: &[u32], content: &[u32], memo: &mut HashMap<(usize, Vec<u32>), u64>) -> u64 {
    if k == content.len() {
        return u64::from(cur == target);
    }
    if let Some(&v) = memo.get(&(k, cur.clone())) {
        return v;
    }
    let mut total = 0u64;
    let mut next = cur.clone();
    add_strip(0, content[k], &cur, target, &mut next, &mut |shape| {
        total += strips(k + 1, shape.to_vec(), target, content, memo);
    });
    memo.insert((k, cur), total);
    total
}

/// Enumerates shapes `next` with `cur ⊆ next ⊆ target`, `|next| - |cur| = size`
/// and `next[r] <= cur[r-1]` (a horizontal strip).
fn add_strip(r: usize, size: u32, cur: &[u32], target: &[u32], next: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if r == cur.len() {
        if size == 0 {
            f(next);
        }
        return;
    }
    let cap = if r == 0 { target[0] } else { target[r].min(cur[r - 1]) };
    let room = cap.saturating_sub(cur[r]);
    for add in 0..=room.min(size) {
        next[r] = cur[r] + add;
        add_strip(r + 1, size - add, cur, target, next, f);
    }
    next[r] = cur[r];
}

/// dim L(λ)_0 for a dominant root-lattice weight λ: twisting by a power of
/// the determinant turns it into a Kostka number with constant content.
pub fn zero_weight_multiplicity(lambda: &Weight) -> Result<u64> {
    if !lambda.is_dominant() || !lambda.in_root_lattice() {
        return Err(Error::Precondition(format!("weight {lambda} must be dominant and in the root lattice")));
    }
    let n = lambda.n();
    let shift = (-lambda.coords()[n - 1]).max(0);
    let shifted: Vec<i64> = lambda.coords().iter().map(|c| c + shift).collect();
    let shape = Partition::from_padded(&shifted)?;
    kostka_count(&shape, &vec![shift as u32; n])
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
