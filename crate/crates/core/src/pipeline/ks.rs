//! Kurosawa-Satoh: f(x, y) = x·(Rᵀ Q y) from two binary codes of equal
//! dimension, claiming PC(min d⊥ - 1) of order min d - 1.

use crate::boolfn::{mm_build, AffineMap, VectorialFunction};
use crate::codes::LinearCode;

use super::{conventions_hash, Certificate, Claimed, CodeEntry, Dimensions, PipelineError, RawClaim, Verified};

/// Exact distance within budget, else the recorded bound.
fn distance(c: &LinearCode, budget: u64) -> Result<(usize, bool), PipelineError> {
    if let Some(d) = c.distance_bound {
        if c.message_count() > budget as u128 {
            return Ok((d, false));
        }
    }
    // the zero code has no nonzero word; its distance exceeds any weight
    Ok((c.min_distance(budget)?.unwrap_or(c.len() + 1), true))
}

pub fn kurosawa_satoh(
    c1: &LinearCode,
    c2: &LinearCode,
    name: &str,
    budget: u64,
) -> Result<(VectorialFunction, Certificate), PipelineError> {
    if c1.field().degree() != 1 || c2.field().degree() != 1 {
        return Err(PipelineError::Dimension("codes must be binary".into()));
    }
    if c1.dim() != c2.dim() {
        return Err(PipelineError::Dimension(format!(
            "dimensions {} and {} differ",
            c1.dim(),
            c2.dim()
        )));
    }
    let (c1d, c2d) = (c1.dual(), c2.dual());
    let d = [
        distance(c1, budget)?,
        distance(c2, budget)?,
        distance(&c1d, budget)?,
        distance(&c2d, budget)?,
    ];
    let (d1, d2, e1, e2) = (d[0].0, d[1].0, d[2].0, d[3].0);
    let raw = RawClaim {
        l: e1.min(e2) as i64 - 1,
        k: d1.min(d2) as i64 - 1,
        t: -1,
    };
    let claimed = Claimed {
        t: None,
        ..Claimed::from_raw(raw)
    };
    let (q, r) = (c1.canonical(), c2.canonical());
    let zero = vec![0; c2.len()];
    let phi = AffineMap::from_matrix(&r.transpose().mul(&q), &zero)?;
    let function = mm_build(vec![phi], None)?;
    let code_entry = |label: &str, c: &LinearCode, (d, exact): (usize, bool)| CodeEntry {
        name: label.into(),
        n: c.len(),
        k: c.dim(),
        d_bound: Some(d),
        d_exact: exact.then_some(d),
    };
    let certificate = Certificate {
        construction: name.to_string(),
        params: serde_json::json!({
            "c1": c1.to_text(),
            "c2": c2.to_text(),
        }),
        dimensions: Dimensions {
            w: 1,
            w_prime: 1,
            n: c1.len(),
            n_prime: c2.len(),
            m: 1,
            x_bits: c2.len(),
            y_bits: c1.len(),
            variables: c1.len() + c2.len(),
        },
        claimed,
        raw: Some(raw),
        verified: Verified::pending(),
        codes: vec![
            code_entry("C1", c1, d[0]),
            code_entry("C2", c2, d[1]),
            code_entry("C1-dual", &c1d, d[2]),
            code_entry("C2-dual", &c2d, d[3]),
        ],
        audits: Vec::new(),
        validation: Vec::new(),
        offsets: None,
        conventions_hash: conventions_hash(),
    };
    Ok((function, certificate))
}
