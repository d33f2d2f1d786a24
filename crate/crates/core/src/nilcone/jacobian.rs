use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::subsets;
use crate::linalg::RationalMatrix;
use crate::ring::{Ctx, Scalar};
use crate::semiinv::{v_basic_with, InvariantDerivatives};

use super::seq::{nilpotent_from_sequence, NilpotentSeq};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobianCertificate {
    pub n: usize,
    pub t: usize,
    /// Row labels: `s_i`, then `v_{t,I}`.
    pub rows: Vec<String>,
    /// The selected variables `(i, j)`.
    pub columns: Vec<(usize, usize)>,
    pub point: NilpotentSeq,
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub is_unit: bool,
}

/// Columns (1,1)..(1,n), (n,1)..(n,n-2), (2,1).
pub fn minor_columns(n: usize) -> Vec<(usize, usize)> {
    let mut cols: Vec<(usize, usize)> = (1..=n).map(|j| (1, j)).collect();
    cols.extend((1..=n - 2).map(|j| (n, j)));
    cols.push((2, 1));
    cols
}

/// The minor of the Jacobian of (s_1..s_n, v_{t,I}) on [`minor_columns`],
/// evaluated at A_σ for σ = (n, n-1, …, 1).
pub fn jacobian_minor_certificate(ctx: &Ctx, t: usize) -> Result<(Scalar, JacobianCertificate)> {
    let n = ctx.n();
    if n < 3 || (t != 1 && t != n - 2) {
        return Err(Error::InvalidArgument(format!("t = {t} must be 1 or n-2 with n >= 3 (got n = {n})")));
    }
    let columns = minor_columns(n);
    let point = NilpotentSeq::new((1..=n).rev().collect(), n)?;
    let a = nilpotent_from_sequence(&point, n)?;
    let mut ds = InvariantDerivatives::new(ctx);
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for i in 1..=n {
        labels.push(format!("s{i}"));
        rows.push(ds.invariant(i).clone());
    }
    for set in subsets(n - 1, t) {
        let set: Vec<usize> = set.into_iter().map(|i| i + 1).collect();
        labels.push(format!("v{t}{set:?}"));
        rows.push(v_basic_with(&mut ds, ctx, t, &set)?.poly);
    }
    debug_assert_eq!(rows.len(), columns.len());
    let entries = rows
        .iter()
        .map(|f| columns.iter().map(|&(i, j)| f.partial_derivative(i, j)?.evaluate(&a)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = RationalMatrix::from_rows(entries)?;
    let det = m.determinant()?;
    let unit = ctx.characteristic().reduce(&(&det * &det))? == Scalar::from_integer(1.into());
    let cert = JacobianCertificate {
        n,
        t,
        rows: labels,
        columns,
        point,
        matrix: m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        determinant: det.to_string(),
        is_unit: unit,
    };
    Ok((det, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    #[test]
    fn column_selection() {
        assert_eq!(minor_columns(3), vec![(1, 1), (1, 2), (1, 3), (3, 1), (2, 1)]);
    }

    #[test]
    fn gl3_certificate_is_unit() {
        let ctx = RingContext::new(3).unwrap();
        let (det, cert) = jacobian_minor_certificate(&ctx, 1).unwrap();
        assert!(cert.is_unit, "{det}");
    }

    #[test]
    fn rejects_other_t() {
        let ctx = RingContext::new(5).unwrap();
        assert!(jacobian_minor_certificate(&ctx, 2).is_err());
    }
}
