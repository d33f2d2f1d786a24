//! Exact linear algebra: determinants of polynomial matrices, and rank,
//! determinant and nullspace of rational matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_index, Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Characteristic, Ctx, Scalar};

/// A dense matrix of polynomials over one ring context.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_fn(ctx: &Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { ctx: ctx.clone(), rows, cols, entries }
    }

    pub fn from_rows(ctx: &Ctx, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: format!("rows of length {c}"), got: "ragged rows".into() });
        }
        if rows.iter().flatten().any(|p| p.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(PolyMatrix { ctx: ctx.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// The matrix 𝒳 = (x[i][j]) of coordinate functions.
    pub fn generic(ctx: &Ctx) -> Self {
        let n = ctx.n();
        Self::from_fn(ctx, n, n, |i, j| Polynomial::x(ctx, i + 1, j + 1).expect("in range"))
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        Self::from_fn(ctx, n, n, |i, j| if i == j { Polynomial::one(ctx) } else { Polynomial::zero(ctx) })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(p.ctx() == &self.ctx, "entry from a different ring context");
        self.entries[i * self.cols + j] = p;
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                got: format!("{} rows", other.rows),
            });
        }
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::from_fn(&self.ctx, self.rows, other.cols, |i, j| {
            let mut acc = Polynomial::zero(&self.ctx);
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `M_{Λ1,Λ2}`: rows in `Λ1`, columns in `Λ2` (1-based), both taken in
    /// increasing order.
    pub fn submatrix(&self, row_set: &[usize], col_set: &[usize]) -> Result<PolyMatrix> {
        let rows = sorted_indices(row_set, self.rows)?;
        let cols = sorted_indices(col_set, self.cols)?;
        Ok(Self::from_fn(&self.ctx, rows.len(), cols.len(), |i, j| self.get(rows[i] - 1, cols[j] - 1).clone()))
    }

    /// The matrix with row `i` and column `j` (1-based) removed.
    pub fn delete(&self, i: usize, j: usize) -> Result<PolyMatrix> {
        check_index(i, self.rows)?;
        check_index(j, self.cols)?;
        let rows: Vec<usize> = (1..=self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (1..=self.cols).filter(|&c| c != j).collect();
        self.submatrix(&rows, &cols)
    }

    /// Determinant by cofactor expansion along the first remaining row,
    /// memoized on the set of remaining columns.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ctx));
        }
        if n > 20 {
            return Err(Error::InvalidArgument(format!("cofactor expansion of a {n}x{n} matrix")));
        }
        let mut memo: HashMap<u32, Polynomial> = HashMap::new();
        Ok(self.minor_det(0, (1u32 << n) - 1, &mut memo))
    }

    fn minor_det(&self, row: usize, cols: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if row == self.rows {
            return Polynomial::one(&self.ctx);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(&self.ctx);
        let mut sign = 1;
        for c in 0..self.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = self.get(row, c);
            if !entry.is_zero() {
                let sub = self.minor_det(row + 1, cols & !(1 << c), memo);
                if !sub.is_zero() {
                    let term = entry * &sub;
                    acc = if sign > 0 { &acc + &term } else { &acc - &term };
                }
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Jacobian of `polys` with respect to the given variable indices.
    pub fn jacobian(polys: &[Polynomial], vars: &[usize]) -> Result<PolyMatrix> {
        let ctx = polys.first().ok_or_else(|| Error::InvalidArgument("empty polynomial list".into()))?.ctx().clone();
        if polys.iter().any(|p| p.ctx() != &ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::from_fn(&ctx, polys.len(), vars.len(), |i, j| polys[i].derivative_var(vars[j])))
    }

    /// Entry-wise evaluation at a numeric matrix.
    pub fn evaluate(&self, a: &RationalMatrix) -> Result<RationalMatrix> {
        let data = self.entries.iter().map(|p| p.evaluate(a)).collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }
}

fn sorted_indices(set: &[usize], bound: usize) -> Result<Vec<usize>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != set.len() {
        return Err(Error::InvalidArgument(format!("repeated index in {set:?}")));
    }
    for &i in &v {
        check_index(i, bound)?;
    }
    Ok(v)
}

/// A dense matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: format!("rows of length {c}"), got: "ragged rows".into() });
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_integer(BigInt::from(v))).collect()).collect();
        Self::from_rows(data).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                got: format!("{} rows", other.rows),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Integer rows obtained by clearing each row's denominators.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let lcm = self.row(i).iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                scale *= &lcm;
                self.row(i).iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
            })
            .collect();
        (rows, scale)
    }

    /// Fraction-free (Bareiss) elimination. Returns the rank and the
    /// determinant of the leading pivot block with the row-swap sign.
    fn bareiss(&self) -> (usize, BigInt, BigInt) {
        let (mut a, scale) = self.integer_rows();
        let (m, n) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut sign = BigInt::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else { continue };
            if p != rank {
                a.swap(p, rank);
                sign = -sign;
            }
            for r in rank + 1..m {
                for c in col + 1..n {
                    let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                    a[r][c] = v;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        (rank, sign * prev, scale)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let (rank, det, scale) = self.bareiss();
        if rank < self.rows {
            return Ok(Scalar::zero());
        }
        Ok(BigRational::new(det, scale))
    }

    /// Rank over the prime field or over Q.
    pub fn rank_in(&self, ch: Characteristic) -> Result<usize> {
        match ch {
            Characteristic::Zero => Ok(self.rank()),
            Characteristic::Prime(_) => {
                let mut ech = RowEchelon::new(self.cols, ch);
                for i in 0..self.rows {
                    ech.insert(self.row(i).to_vec())?;
                }
                Ok(ech.rank())
            }
        }
    }

    /// A basis of `{v : M v = 0}` over Q.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.nullspace_in(Characteristic::Zero).expect("rational elimination cannot fail")
    }

    pub fn nullspace_in(&self, ch: Characteristic) -> Result<Vec<Vec<Scalar>>> {
        let mut ech = RowEchelon::new(self.cols, ch);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec())?;
        }
        Ok(ech.nullspace())
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Rows are inserted one at a time and reduced against the existing pivots;
/// zero entries are skipped so sparse constraint rows stay cheap.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    cols: usize,
    ch: Characteristic,
    /// (pivot column, row with a 1 in that column), sorted by column.
    pivots: Vec<(usize, Vec<Scalar>)>,
}

impl RowEchelon {
    pub fn new(cols: usize, ch: Characteristic) -> Self {
        RowEchelon { cols, ch, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, row: &mut [Scalar]) -> Result<()> {
        for (pc, prow) in &self.pivots {
            if row[*pc].is_zero() {
                continue;
            }
            let f = std::mem::take(&mut row[*pc]);
            for (c, v) in prow.iter().enumerate().skip(pc + 1) {
                if !v.is_zero() {
                    let t = &row[c] - &f * v;
                    row[c] = self.ch.reduce(&t)?;
                }
            }
        }
        Ok(())
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &[Scalar]) -> Result<bool> {
        let mut r = self.normalize(row)?;
        self.reduce(&mut r)?;
        Ok(r.iter().all(Zero::is_zero))
    }

    fn normalize(&self, row: &[Scalar]) -> Result<Vec<Scalar>> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: format!("{} columns", self.cols), got: row.len().to_string() });
        }
        row.iter().map(|c| self.ch.reduce(c)).collect()
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: Vec<Scalar>) -> Result<bool> {
        let mut r = self.normalize(&row)?;
        self.reduce(&mut r)?;
        let Some(pc) = r.iter().position(|c| !c.is_zero()) else { return Ok(false) };
        let inv = self.ch.inverse(&r[pc])?;
        for v in r.iter_mut().skip(pc) {
            if !v.is_zero() {
                *v = self.ch.reduce(&(&*v * &inv))?;
            }
        }
        for (_, prow) in self.pivots.iter_mut() {
            if prow[pc].is_zero() {
                continue;
            }
            let f = std::mem::take(&mut prow[pc]);
            for c in pc + 1..self.cols {
                if !r[c].is_zero() {
                    let t = &prow[c] - &f * &r[c];
                    prow[c] = self.ch.reduce(&t)?;
                }
            }
        }
        let at = self.pivots.partition_point(|(c, _)| *c < pc);
        self.pivots.insert(at, (pc, r));
        Ok(true)
    }

    /// Basis of the solution space of the inserted rows, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (pc, prow) in &self.pivots {
                    if !prow[f].is_zero() {
                        v[*pc] = self.ch.reduce(&-prow[f].clone()).expect("integral in prime mode");
                    }
                }
                v
            })
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }
}

/// Makes an integer vector primitive: clears denominators, divides by the
/// content and makes the first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Scalar]) -> Vec<Scalar> {
    let lcm = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|x| BigRational::from_integer(x / &g * &sign)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn q(v: i64) -> Scalar {
        Scalar::from_integer(v.into())
    }

    #[test]
    fn small_determinants() {
        let ctx = RingContext::new(2).unwrap();
        let x = PolyMatrix::generic(&ctx);
        let det = x.determinant().unwrap();
        assert_eq!(det, Polynomial::parse(&ctx, "x[1][1]*x[2][2] - x[1][2]*x[2][1]").unwrap());
        let one = x.submatrix(&[1], &[1]).unwrap();
        assert_eq!(one.determinant().unwrap(), Polynomial::x(&ctx, 1, 1).unwrap());
        let nonsq = x.submatrix(&[1], &[1, 2]).unwrap();
        assert!(matches!(nonsq.determinant(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn submatrix_and_deletion() {
        let ctx = RingContext::new(4).unwrap();
        let x = PolyMatrix::generic(&ctx);
        let s = x.submatrix(&[4, 3], &[1, 2]).unwrap();
        assert_eq!(s.get(0, 0), &Polynomial::x(&ctx, 3, 1).unwrap());
        assert_eq!(s.get(1, 1), &Polynomial::x(&ctx, 4, 2).unwrap());
        assert!(x.submatrix(&[5], &[1]).is_err());
        let ctx3 = RingContext::new(3).unwrap();
        let d = PolyMatrix::generic(&ctx3).delete(1, 3).unwrap();
        assert_eq!((d.rows(), d.cols()), (2, 2));
        assert_eq!(d.get(1, 1), &Polynomial::x(&ctx3, 3, 2).unwrap());
    }

    #[test]
    fn rank_and_nullspace_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert!(id.nullspace().is_empty());
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(primitive_integer_vector(&ns[0]), vec![q(2), q(-1)]);
    }

    #[test]
    fn rational_determinant_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), q(1)],
            vec![q(3), BigRational::new(2.into(), 3.into())],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), BigRational::new((-8).into(), 3.into()));
        let swap = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant().unwrap(), q(-1));
    }

    #[test]
    fn prime_field_rank() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[3, 1]]);
        assert_eq!(m.rank_in(Characteristic::Zero).unwrap(), 2);
        assert_eq!(m.rank_in(Characteristic::Prime(5)).unwrap(), 1);
    }

    #[test]
    fn echelon_membership() {
        let mut e = RowEchelon::new(3, Characteristic::Zero);
        assert!(e.insert(vec![q(1), q(1), q(0)]).unwrap());
        assert!(e.insert(vec![q(0), q(1), q(1)]).unwrap());
        assert!(!e.insert(vec![q(1), q(2), q(1)]).unwrap());
        assert!(e.contains(&[q(2), q(3), q(1)]).unwrap());
        assert!(!e.contains(&[q(0), q(0), q(1)]).unwrap());
        assert_eq!(e.nullspace(), vec![vec![q(1), q(-1), q(1)]]);
    }
}
