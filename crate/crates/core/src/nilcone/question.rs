use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ctx;
use crate::semiinv::{apply_hwv_with, coefficient_content, InvariantDerivatives};
use crate::tensor::highest_weight_tensor;
use crate::weight::Weight;

use super::generation::{generation_check, GenerationReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleOutcome {
    pub tuple: Vec<usize>,
    pub zero: bool,
    pub degree: Option<u32>,
    /// Gcd of the integer coefficients, as a string.
    pub content: String,
    pub polynomial: Option<String>,
    pub hash: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionReport {
    pub lambda: Weight,
    pub tensor_terms: usize,
    /// Whether permuting the tuple can only change the sign of the result,
    /// in which case one tuple per multiset is tried.
    pub sign_symmetric: bool,
    pub tuples: Vec<TupleOutcome>,
    pub generation: GenerationReport,
    pub verdict: Verdict,
}

/// Tuples over {2..n} of length t: non-decreasing ones if `multisets`, else all, in lexicographic order.
fn tuples(n: usize, t: usize, multisets: bool) -> Vec<Vec<usize>> {
    fn rec(n: usize, t: usize, multisets: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        let lo = if multisets { cur.last().copied().unwrap_or(2) } else { 2 };
        for i in lo..=n {
            cur.push(i);
            rec(n, t, multisets, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, t, multisets, &mut Vec::with_capacity(t), &mut out);
    out
}

/// Applies E_λ to tuples of fundamental invariants s_i with i ≥ 2 and asks
/// whether the nonzero results generate the highest weight vectors of weight λ.
pub fn question_experiment(ctx: &Ctx, lambda: &Weight, tuple_cap: Option<usize>, max_degree: Option<u32>) -> Result<QuestionReport> {
    if lambda.n() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: format!("weight of length {}", ctx.n()), got: lambda.n().to_string() });
    }
    let e = highest_weight_tensor(lambda)?;
    let sign_symmetric = e.is_sign_symmetric();
    let mut all = tuples(ctx.n(), e.t(), sign_symmetric);
    if let Some(cap) = tuple_cap {
        all.truncate(cap);
    }
    let mut ds = InvariantDerivatives::new(ctx);
    let mut outcomes = Vec::with_capacity(all.len());
    let mut candidates = Vec::new();
    for tuple in all {
        let c = apply_hwv_with(&mut ds, ctx, &e, &tuple)?;
        let zero = c.is_zero();
        outcomes.push(TupleOutcome {
            tuple,
            zero,
            degree: c.degree(),
            content: coefficient_content(&c.poly).to_string(),
            polynomial: (!zero).then(|| c.poly.to_string()),
            hash: (!zero).then(|| c.poly.content_hash()),
        });
        if !zero {
            candidates.push(c);
        }
    }
    let generation = generation_check(ctx, lambda, &candidates, max_degree)?;
    let verdict = generation.verdict;
    Ok(QuestionReport { lambda: lambda.clone(), tensor_terms: e.terms().len(), sign_symmetric, tuples: outcomes, generation, verdict })
}
