//! Certificates: formula claims kept apart from oracle-verified values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boolfn::{
    check_budget, combination, max_pc_degree, max_pc_degree_of_order, mm_exact_resiliency, resiliency_order,
    VectorialFunction, Verdict,
};
use crate::codes::LinearCode;

use super::{Check, OffsetChoice, PipelineError, RawClaim};

/// Every convention a certificate depends on. Hashed into each certificate
/// so that a change of convention invalidates stored ones.
pub const CONVENTIONS: &str = "\
field: GF(2^w) polynomial basis; moduli w1=0b10 w2=0b111 w3=0b1011 w4=0b10011 w6=0b1000011 w8=0x11b, else smallest irreducible
self-dual basis: lexicographically first by depth-first search over increasing elements
expansion: coordinate j of a is Tr(a e_j); rows of B(C) are B(e_j g_i), i major
p1 places: affine a = 0..q-1 then infinity; degree 2 places x^2+bx+c ordered by (b, c)
elliptic places: O first, then affine points by (x, y)
rr basis p1: x^j / D; elliptic: (A + B y) / Z by pole order at O
truth tables: variable x_j is index bit j-1; MM inputs x block low, y block high
ag construction: Q_i, R_i rref generators; phi_i(y) = R_i^T Q_i y + v_i; v_i rows of rref B'(C_L(P', H)) independent modulo B'(C_L(P', max U')), first rows otherwise
pc(l) of order k: exactly k variables fixed, 1 <= wt(alpha) <= min(l, n - k)
";

pub fn conventions_hash() -> String {
    let digest = Sha256::digest(CONVENTIONS.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claimed {
    /// `None`: no PC claim (l <= 0).
    pub l: Option<u32>,
    /// `None`: k < 0, no order claim.
    pub k: Option<u32>,
    /// `None`: no resiliency claim (t < 0 or not part of the construction).
    pub t: Option<u32>,
}

impl Claimed {
    pub fn from_raw(raw: RawClaim) -> Self {
        Self {
            l: (raw.l > 0).then_some(raw.l as u32),
            k: (raw.k >= 0).then_some(raw.k as u32),
            t: (raw.t >= 0).then_some(raw.t as u32),
        }
    }
}

/// Oracle results; `None` when not determined within budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verified {
    /// Least over combinations of the largest l with PC(l).
    pub l: Option<u32>,
    /// Largest k' (scanned from 0 up to claimed k + 1) such that every
    /// combination satisfies PC(claimed l) of order k' for all orders up to k'.
    pub k: Option<u32>,
    /// Least resiliency order over combinations (-1: some combination is
    /// unbalanced).
    pub t: Option<i32>,
    /// `exhaustive`, `structured`, `budget-exceeded` or `pending`.
    pub method: String,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Verified {
    pub fn pending() -> Self {
        Self {
            l: None,
            k: None,
            t: None,
            method: "pending".into(),
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub w: u32,
    pub w_prime: u32,
    pub n: usize,
    pub n_prime: usize,
    pub m: usize,
    pub x_bits: usize,
    pub y_bits: usize,
    pub variables: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeEntry {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d_bound: Option<usize>,
    pub d_exact: Option<usize>,
}

impl CodeEntry {
    /// Exact distance when the code has at most `budget` messages.
    pub fn describe(name: &str, c: &LinearCode, budget: u64) -> Self {
        Self {
            name: name.into(),
            n: c.len(),
            k: c.dim(),
            d_bound: c.distance_bound,
            d_exact: c.min_distance(budget).ok().flatten(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub name: String,
    pub verdict: Verdict,
    pub value: Option<i64>,
    pub required: Option<i64>,
}

impl Audit {
    pub fn boolean(name: &str, ok: bool) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::from_bool(ok),
            value: None,
            required: None,
        }
    }

    pub fn measured(name: &str, value: i64, required: i64) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::from_bool(value >= required),
            value: Some(value),
            required: Some(required),
        }
    }

    pub fn unknown(name: &str, required: i64) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Unknown,
            value: None,
            required: Some(required),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub construction: String,
    pub params: serde_json::Value,
    pub dimensions: Dimensions,
    pub claimed: Claimed,
    pub raw: Option<RawClaim>,
    pub verified: Verified,
    pub codes: Vec<CodeEntry>,
    pub audits: Vec<Audit>,
    pub validation: Vec<Check>,
    pub offsets: Option<OffsetChoice>,
    pub conventions_hash: String,
}

impl Certificate {
    /// Verified against claimed, one verdict per claimed parameter.
    pub fn comparison(&self) -> Vec<(&'static str, Verdict)> {
        let c = &self.claimed;
        let v = &self.verified;
        let cmp = |claim: Option<i64>, got: Option<i64>| match (claim, got) {
            (None, _) => None,
            (Some(_), None) => Some(Verdict::Unknown),
            (Some(a), Some(b)) => Some(Verdict::from_bool(b >= a)),
        };
        [
            ("l", cmp(c.l.map(i64::from), v.l.map(i64::from))),
            ("k", cmp(c.k.map(i64::from), v.k.map(i64::from))),
            ("t", cmp(c.t.map(i64::from), v.t.map(i64::from))),
        ]
        .into_iter()
        .filter_map(|(n, x)| x.map(|x| (n, x)))
        .collect()
    }

    /// Pass only when every claimed parameter is verified.
    pub fn verdict(&self) -> Verdict {
        self.comparison()
            .into_iter()
            .fold(Verdict::Pass, |acc, (_, v)| acc.and(v))
    }

    pub fn audits_verdict(&self) -> Verdict {
        self.audits.iter().fold(Verdict::Pass, |acc, a| acc.and(a.verdict))
    }

    pub fn to_json(&self) -> Result<String, PipelineError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Fill `verified` from the function. Tables within `mat_budget` bits are
/// checked exhaustively; otherwise resiliency comes from the MM structure
/// and PC values stay unknown.
pub fn certify(
    f: &VectorialFunction,
    claimed: &Claimed,
    mat_budget: u64,
    enum_budget: u64,
) -> Result<Verified, PipelineError> {
    let m = f.outputs();
    let n = f.inputs();
    if check_budget(n, mat_budget).is_ok() {
        let tables = f.materialize(mat_budget)?;
        let combos: Vec<_> = (1..1u64 << m).map(|a| combination(&tables, a)).collect();
        let per: Vec<(u32, i32)> = combos
            .par_iter()
            .map(|c| (max_pc_degree(c), resiliency_order(c)))
            .collect();
        let l = per.iter().map(|x| x.0).min();
        let t = per.iter().map(|x| x.1).min();
        let mut notes = Vec::new();
        let k = match claimed.l {
            None => None,
            Some(lc) => {
                let top = claimed.k.map_or(0, |k| k + 1).min(n);
                let mut best: Option<u32> = None;
                for kk in 0..=top {
                    let need = lc.min(n - kk);
                    let got: Option<Vec<u32>> = combos
                        .iter()
                        .map(|c| max_pc_degree_of_order(c, kk, enum_budget))
                        .collect();
                    match got {
                        None => {
                            notes.push(format!("order {kk} not checked: over enumeration budget"));
                            break;
                        }
                        Some(v) if v.iter().all(|&x| x >= need) => best = Some(kk),
                        Some(_) => break,
                    }
                }
                best
            }
        };
        return Ok(Verified {
            l,
            k,
            t,
            method: "exhaustive".into(),
            notes,
        });
    }
    if let Some(mm) = f.structure() {
        let hs_constant = mm
            .hs
            .iter()
            .all(|h| h.weight() == 0 || h.weight() == 1u64 << h.n());
        if hs_constant {
            let t = (1..1u64 << m)
                .map(|a| mm_exact_resiliency(mm, a, enum_budget))
                .collect::<Result<Vec<_>, _>>();
            if let Ok(ts) = t {
                return Ok(Verified {
                    l: None,
                    k: None,
                    t: ts.into_iter().min(),
                    method: "structured".into(),
                    notes: vec![format!(
                        "{n} variables not materialized; PC values are claim plus audit only"
                    )],
                });
            }
        }
    }
    Ok(Verified {
        l: None,
        k: None,
        t: None,
        method: "budget-exceeded".into(),
        notes: Vec::new(),
    })
}
