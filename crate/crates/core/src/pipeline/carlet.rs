//! Carlet's sufficient conditions for PC(l) of order k of x·φ(y) + h(y),
//! specialised to affine φ(y) = A y + v.

use crate::boolfn::{alphas_up_to, AffineMap, MMStructure};

use super::PipelineError;

fn low_weight_count(n: u32, l: u32) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for j in 1..=l.min(n) as u128 {
        c = c * (n as u128 - j + 1) / j;
        total += c;
    }
    total
}

/// (cond1, cond2):
/// cond1: wt(Aᵀγ) >= k + 1 for every γ with 1 <= wt(γ) <= l, so each sum of
/// at most l coordinates of φ is k-resilient;
/// cond2: wt(A b) >= k + 1 for every b with 1 <= wt(b) <= l, so φ(y + b)
/// and φ(y) differ in at least k + 1 coordinates.
pub fn carlet_check(phi: &AffineMap, l: u32, k: u32, budget: u64) -> Result<(bool, bool), PipelineError> {
    let (r, s) = (phi.rows(), phi.cols());
    let needed = low_weight_count(r, l) + low_weight_count(s, l);
    if needed > budget as u128 {
        return Err(crate::codes::CodeError::BudgetExceeded {
            needed,
            budget: budget as u128,
        }
        .into());
    }
    let cond1 = alphas_up_to(r, l)
        .into_iter()
        .all(|g| phi.apply_transpose(g).count_ones() > k);
    let cond2 = alphas_up_to(s, l)
        .into_iter()
        .all(|b| phi.linear_part(b).count_ones() > k);
    Ok((cond1, cond2))
}

/// Both conditions for every nonzero combination Σ a_j φ_j.
pub fn carlet_check_vectorial(mm: &MMStructure, l: u32, k: u32, budget: u64) -> Result<(bool, bool), PipelineError> {
    let mut out = (true, true);
    for a in 1..1u64 << mm.phis.len() {
        let (phi, _) = mm.combined(a);
        let (c1, c2) = carlet_check(&phi, l, k, budget)?;
        out = (out.0 && c1, out.1 && c2);
    }
    Ok(out)
}
