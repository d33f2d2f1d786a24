//! Weights of the diagonal torus of GL_n, written in the basis ε_1..ε_n.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPredicates {
    pub dominant: bool,
    pub in_root_lattice: bool,
    pub primitive: bool,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// ε_i (1-based).
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        w[i - 1] = 1;
        Weight(w)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn in_root_lattice(&self) -> bool {
        self.0.iter().sum::<i64>() == 0
    }

    /// `w_0(λ)`: the reversed tuple.
    pub fn reversed(&self) -> Self {
        Weight(self.0.iter().rev().copied().collect())
    }

    /// `-w_0(λ)`, the highest weight of the dual module.
    pub fn dual(&self) -> Self {
        -self.reversed()
    }

    pub fn scaled(&self, r: i64) -> Self {
        Weight(self.0.iter().map(|c| c * r).collect())
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Nonzero, dominant, in the root lattice, and not the sum of two such weights.
    pub fn is_primitive(&self) -> bool {
        if self.is_zero() || !self.is_dominant() || !self.in_root_lattice() {
            return false;
        }
        // A summand μ with λ-μ dominant satisfies μ_1 <= λ_1 and μ_n >= λ_n,
        // so every coordinate is bounded by max|λ_i|.
        let bound = self.max_abs();
        let mut found = false;
        dominant_root_weights(self.n(), bound, &mut |mu| {
            if found || mu.iter().all(|&c| c == 0) {
                return;
            }
            let rest = Weight(self.0.iter().zip(mu).map(|(a, b)| a - b).collect());
            if !rest.is_zero() && rest.is_dominant() {
                found = true;
            }
        });
        !found
    }

    pub fn predicates(&self) -> WeightPredicates {
        WeightPredicates {
            dominant: self.is_dominant(),
            in_root_lattice: self.in_root_lattice(),
            primitive: self.is_primitive(),
        }
    }

    fn check_len(&self, other: &Weight) {
        assert_eq!(self.n(), other.n(), "weights of different rank");
    }
}

/// Calls `f` on every weakly decreasing integer vector of length `n` with
/// coordinates in `-bound..=bound` and coordinate sum zero.
fn dominant_root_weights(n: usize, bound: i64, f: &mut dyn FnMut(&[i64])) {
    fn rec(buf: &mut Vec<i64>, n: usize, bound: i64, upper: i64, sum: i64, f: &mut dyn FnMut(&[i64])) {
        let k = buf.len();
        if k == n {
            if sum == 0 {
                f(buf);
            }
            return;
        }
        let left = (n - k) as i64;
        for c in (-bound..=upper).rev() {
            // remaining coordinates are all <= c and >= -bound
            if sum + c * left < 0 {
                break;
            }
            if sum + c - bound * (left - 1) > 0 {
                continue;
            }
            buf.push(c);
            rec(buf, n, bound, c, sum + c, f);
            buf.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, bound, bound, 0, f);
}

/// λ^t = (t, 0, …, 0, -1, …, -1) with t trailing -1's.
pub fn lambda_t(n: usize, t: usize) -> Result<Weight> {
    check_t(n, t)?;
    let mut w = vec![0; n];
    w[0] = t as i64;
    for c in &mut w[n - t..] {
        *c -= 1;
    }
    Ok(Weight(w))
}

/// μ^t = (1, …, 1, 0, …, 0, -t) with t leading 1's.
pub fn mu_t(n: usize, t: usize) -> Result<Weight> {
    check_t(n, t)?;
    let mut w = vec![0; n];
    for c in &mut w[..t] {
        *c += 1;
    }
    w[n - 1] -= t as i64;
    Ok(Weight(w))
}

fn check_t(n: usize, t: usize) -> Result<()> {
    if n < 2 || t == 0 || t >= n {
        return Err(Error::InvalidArgument(format!("t = {t} must lie in 1..={}", n.saturating_sub(1))));
    }
    Ok(())
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.check_len(rhs);
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.check_len(rhs);
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, e.g. `2,0,-1,-1`.
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad weight coordinate `{}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::InvalidArgument("empty weight".into()));
        }
        Ok(Weight(coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_weights() {
        assert_eq!(lambda_t(4, 2).unwrap(), Weight::new(vec![2, 0, -1, -1]));
        assert_eq!(mu_t(3, 2).unwrap(), Weight::new(vec![1, 1, -2]));
        assert_eq!(lambda_t(2, 1).unwrap(), Weight::new(vec![1, -1]));
        assert_eq!(mu_t(2, 1).unwrap(), Weight::new(vec![1, -1]));
        assert!(lambda_t(4, 4).is_err());
        assert!(mu_t(4, 0).is_err());
    }

    #[test]
    fn mu_is_dual_of_lambda() {
        for n in 2..=6 {
            for t in 1..n {
                assert_eq!(mu_t(n, t).unwrap(), lambda_t(n, t).unwrap().dual());
            }
        }
    }

    #[test]
    fn special_weights_are_primitive() {
        for n in 2..=6 {
            for t in 1..n {
                assert!(lambda_t(n, t).unwrap().is_primitive(), "lambda n={n} t={t}");
                assert!(mu_t(n, t).unwrap().is_primitive(), "mu n={n} t={t}");
            }
        }
    }

    #[test]
    fn non_primitive_weights() {
        assert!(!Weight::new(vec![2, -2]).is_primitive());
        assert!(!Weight::zero(3).is_primitive());
        assert!(!Weight::new(vec![-1, 1]).is_primitive());
        assert!(!Weight::new(vec![2, 0, 0, -2]).is_primitive());
        // 2ϖ_2 for n = 4 is primitive
        assert!(Weight::new(vec![1, 1, -1, -1]).is_primitive());
        let p = Weight::new(vec![1, 0, 0, -1]).predicates();
        assert!(p.dominant && p.in_root_lattice && p.primitive);
    }

    #[test]
    fn parse_and_display() {
        let w: Weight = "2, 0,-1,-1".parse().unwrap();
        assert_eq!(w.to_string(), "2,0,-1,-1");
        assert!("1,a".parse::<Weight>().is_err());
    }
}
