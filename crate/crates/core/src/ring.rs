//! Ring contexts: the coordinate ring k[gl_n] in the variables `x[i][j]`,
//! optionally extended by named formal parameters, over Q or F_p.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};

/// Coefficients are exact rationals. In prime characteristic they are kept
/// as integer representatives in `0..p`.
pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn from_option(p: Option<u64>) -> Result<Self> {
        match p {
            None | Some(0) => Ok(Characteristic::Zero),
            Some(p) if is_prime(p) => Ok(Characteristic::Prime(p)),
            Some(p) => Err(Error::InvalidArgument(format!("characteristic {p} is not prime"))),
        }
    }

    pub fn value(self) -> u64 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        }
    }

    /// Maps a rational into the prime field (identity in characteristic 0).
    pub fn reduce(self, c: &Scalar) -> Result<Scalar> {
        match self {
            Characteristic::Zero => Ok(c.clone()),
            Characteristic::Prime(p) => {
                let pb = BigInt::from(p);
                let num = c.numer().mod_floor(&pb);
                let den = c.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::DivisionByZero(p));
                }
                let inv = mod_inverse(&den, &pb);
                Ok(BigRational::from_integer((num * inv).mod_floor(&pb)))
            }
        }
    }

    /// Like [`reduce`](Self::reduce) for values known to be integral.
    pub(crate) fn reduce_int(self, c: Scalar) -> Scalar {
        match self {
            Characteristic::Zero => c,
            Characteristic::Prime(p) => {
                debug_assert!(c.is_integer());
                BigRational::from_integer(c.to_integer().mod_floor(&BigInt::from(p)))
            }
        }
    }

    pub fn inverse(self, c: &Scalar) -> Result<Scalar> {
        match self {
            Characteristic::Zero => {
                if c.is_zero() {
                    Err(Error::DivisionByZero(0))
                } else {
                    Ok(c.recip())
                }
            }
            Characteristic::Prime(p) => {
                let pb = BigInt::from(p);
                let v = self.reduce(c)?.to_integer();
                if v.is_zero() {
                    return Err(Error::DivisionByZero(p));
                }
                Ok(BigRational::from_integer(mod_inverse(&v, &pb)))
            }
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The polynomial ring k[x_11, ..., x_nn, params...].
///
/// Variable order is fixed: the matrix entries row-major, then the
/// parameters in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    n: usize,
    characteristic: Characteristic,
    params: Vec<String>,
}

pub type Ctx = Arc<RingContext>;

impl RingContext {
    pub fn new(n: usize) -> Result<Ctx> {
        Self::with(n, Characteristic::Zero, Vec::<String>::new())
    }

    pub fn with(
        n: usize,
        characteristic: Characteristic,
        params: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Ctx> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("matrix size n = {n} must be at least 2")));
        }
        if let Characteristic::Prime(p) = characteristic {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("characteristic {p} is not prime")));
            }
        }
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        for (k, name) in params.iter().enumerate() {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && name != "x";
            if !valid {
                return Err(Error::InvalidArgument(format!("bad parameter name `{name}`")));
            }
            if params[..k].contains(name) {
                return Err(Error::InvalidArgument(format!("duplicate parameter `{name}`")));
            }
        }
        Ok(Arc::new(RingContext { n, characteristic, params }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn num_matrix_vars(&self) -> usize {
        self.n * self.n
    }

    pub fn num_vars(&self) -> usize {
        self.n * self.n + self.params.len()
    }

    /// Index of `x[i][j]` (1-based matrix indices).
    pub fn var(&self, i: usize, j: usize) -> Result<usize> {
        check_index(i, self.n)?;
        check_index(j, self.n)?;
        Ok((i - 1) * self.n + (j - 1))
    }

    /// Inverse of [`var`](Self::var); `None` for parameters.
    pub fn matrix_position(&self, var: usize) -> Option<(usize, usize)> {
        (var < self.n * self.n).then(|| (var / self.n + 1, var % self.n + 1))
    }

    pub fn param(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name).map(|k| self.n * self.n + k)
    }

    pub fn var_name(&self, var: usize) -> String {
        match self.matrix_position(var) {
            Some((i, j)) => format!("x[{i}][{j}]"),
            None => self.params[var - self.n * self.n].clone(),
        }
    }

    /// `ctx` extended by one more parameter. The name is made fresh if needed.
    pub fn extended(&self, name: &str) -> (Ctx, usize) {
        let mut fresh = name.to_string();
        while self.params.contains(&fresh) {
            fresh.push('_');
        }
        let mut params = self.params.clone();
        params.push(fresh);
        let ext = Arc::new(RingContext { n: self.n, characteristic: self.characteristic, params });
        let idx = ext.num_vars() - 1;
        (ext, idx)
    }

    /// True if `other` has the same matrix variables and characteristic and
    /// this context's parameters as a prefix.
    pub fn embeds_into(&self, other: &RingContext) -> bool {
        self.n == other.n
            && self.characteristic == other.characteristic
            && other.params.len() >= self.params.len()
            && other.params[..self.params.len()] == self.params[..]
    }

    pub fn reduce(&self, c: &Scalar) -> Result<Scalar> {
        self.characteristic.reduce(c)
    }

    pub(crate) fn reduce_int(&self, c: Scalar) -> Scalar {
        self.characteristic.reduce_int(c)
    }

    pub(crate) fn scalar_of(&self, v: i64) -> Scalar {
        self.reduce_int(BigRational::from_integer(BigInt::from(v)))
    }
}

/// Gcd of the numerators over the lcm of the denominators: the positive
/// rational `g` such that every coefficient divided by `g` is an integer
/// and the resulting integers are coprime.
pub fn content<'a>(coeffs: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Scalar::zero();
    }
    BigRational::new(num.abs(), den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_layout_is_row_major_then_params() {
        let ctx = RingContext::with(3, Characteristic::Zero, ["c"]).unwrap();
        assert_eq!(ctx.var(1, 1).unwrap(), 0);
        assert_eq!(ctx.var(2, 1).unwrap(), 3);
        assert_eq!(ctx.param("c"), Some(9));
        assert_eq!(ctx.var_name(5), "x[2][3]");
        assert_eq!(ctx.var_name(9), "c");
        assert!(ctx.var(4, 1).is_err());
    }

    #[test]
    fn rejects_small_n_and_composite_characteristic() {
        assert!(RingContext::new(1).is_err());
        assert!(RingContext::with(3, Characteristic::Prime(9), Vec::<String>::new()).is_err());
        assert!(Characteristic::from_option(Some(7)).is_ok());
    }

    #[test]
    fn prime_reduction_inverts_denominators() {
        let ch = Characteristic::Prime(7);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(ch.reduce(&half).unwrap(), BigRational::from_integer(4.into()));
        let bad = BigRational::new(1.into(), 14.into());
        assert_eq!(ch.reduce(&bad), Err(Error::DivisionByZero(7)));
    }

    #[test]
    fn extension_picks_fresh_name() {
        let ctx = RingContext::with(2, Characteristic::Zero, ["c"]).unwrap();
        let (ext, idx) = ctx.extended("c");
        assert_eq!(ext.params(), &["c".to_string(), "c_".to_string()]);
        assert_eq!(idx, 5);
        assert!(ctx.embeds_into(&ext));
        assert!(!ext.embeds_into(&ctx));
    }

    #[test]
    fn content_of_mixed_rationals() {
        let cs = [BigRational::new(4.into(), 3.into()), BigRational::new((-6).into(), 5.into())];
        assert_eq!(content(cs.iter()), BigRational::new(2.into(), 15.into()));
    }
}
