//! The AG-code construction of vectorial resilient PC(l)-of-order-k
//! functions, the Kurosawa-Satoh comparator, the Carlet condition checker,
//! presets and certificates.

mod carlet;
mod certificate;
mod ks;
mod params;
mod presets;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agc::{AgCode, AgcError};
use crate::boolfn::{mm_build, AffineMap, BoolFnError, VectorialFunction};
use crate::codes::{CodeError, LinearCode};
use crate::curve::{Backend, CurveError, Divisor};
use crate::field::BinaryField;
use crate::matrix::Matrix;

pub use carlet::{carlet_check, carlet_check_vectorial};
pub use certificate::{
    certify, conventions_hash, Audit, Certificate, Claimed, CodeEntry, Dimensions, Verified, CONVENTIONS,
};
pub use ks::kurosawa_satoh;
pub use params::{validate_params, Check, ParamsFile, Theorem1Params, ValidationReport};
pub use presets::{preset, Preset, PRESET_NAMES};

/// Default enumeration budget in messages (or subfunctions).
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("hypotheses fail: {}", .0.failures().join("; "))]
    Validation(ValidationReport),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("need {needed} places off P for divisor supports, curve has {available}")]
    InsufficientPlaces { needed: usize, available: usize },
    #[error("{0}")]
    Dimension(String),
    #[error(transparent)]
    Agc(#[from] AgcError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    BoolFn(#[from] BoolFnError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl PipelineError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            PipelineError::Code(CodeError::BudgetExceeded { .. })
                | PipelineError::BoolFn(BoolFnError::Budget { .. })
                | PipelineError::BoolFn(BoolFnError::Code(CodeError::BudgetExceeded { .. }))
        )
    }
}

/// Formula values before degenerate-case handling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawClaim {
    pub l: i64,
    pub k: i64,
    pub t: i64,
}

/// l = min(deg max U - 2g + 1, deg max U' - 2g' + 1),
/// k = min(n - deg max U - 1, n' - deg max U' - 1),
/// t = n' - deg max{U', H} - 1.
pub fn claimed_parameters(p: &Theorem1Params) -> Result<Claimed, PipelineError> {
    let report = validate_params(p);
    if !report.passed() {
        return Err(PipelineError::Validation(report));
    }
    let raw = raw_claim(p)?;
    Ok(Claimed::from_raw(raw))
}

fn raw_claim(p: &Theorem1Params) -> Result<RawClaim, PipelineError> {
    let max_u = Divisor::max_all(&p.u)?;
    let max_up = Divisor::max_all(&p.u_prime)?;
    let mut all = p.u_prime.clone();
    all.push(p.h.clone());
    let max_uph = Divisor::max_all(&all)?;
    let (g, gp) = (p.curve.genus() as i64, p.curve_prime.genus() as i64);
    let (n, np) = (p.places.len() as i64, p.places_prime.len() as i64);
    Ok(RawClaim {
        l: (max_u.degree() - 2 * g + 1).min(max_up.degree() - 2 * gp + 1),
        k: (n - max_u.degree() - 1).min(np - max_up.degree() - 1),
        t: np - max_uph.degree() - 1,
    })
}

/// How the offsets v_i were drawn from B'(C_L(P', H)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetChoice {
    /// Row indices into the rref generator of B'(C_L(P', H)).
    pub rows: Vec<usize>,
    /// `first-rows`, `independent-mod-max-u-prime`, or `first-rows-fallback`.
    pub rule: String,
}

/// Output of [`build_theorem1`].
#[derive(Debug, Clone)]
pub struct Construction {
    pub function: VectorialFunction,
    pub certificate: Certificate,
    /// Q_i, R_i as rref generators, i = 1..m.
    pub q: Vec<Matrix>,
    pub r: Vec<Matrix>,
    pub v: Vec<Vec<u32>>,
    pub offsets: OffsetChoice,
    /// B'(C_L(P', max U')).
    pub max_u_prime_code: LinearCode,
}

fn expanded(b: &Backend, places: &[crate::curve::Place], g: &Divisor) -> Result<LinearCode, PipelineError> {
    let code = AgCode::evaluation(b, places, g)?;
    let basis = b.field().self_dual_basis();
    Ok(code.code().expand(&basis)?)
}

/// Rows of `h` chosen as offsets: greedily independent modulo `m`, which
/// is what the nonvanishing of Σ a_i v_i needs. When that cannot supply
/// `count` rows the first `count` rows are used and the audit will show it.
fn choose_offsets(h: &Matrix, m: &Matrix, count: usize) -> OffsetChoice {
    let mut acc = m.clone();
    let mut rows = Vec::new();
    for i in 0..h.rows() {
        if rows.len() == count {
            break;
        }
        let row = h.select_rows(&[i]);
        if acc.rows() == 0 || !acc.spans(h.row(i)) {
            acc = if acc.rows() == 0 { row } else { acc.vstack(&row) };
            rows.push(i);
        }
    }
    let first: Vec<usize> = (0..count).collect();
    if rows.len() < count {
        OffsetChoice {
            rows: first,
            rule: "first-rows-fallback".into(),
        }
    } else if rows == first {
        OffsetChoice {
            rows,
            rule: "first-rows".into(),
        }
    } else {
        OffsetChoice {
            rows,
            rule: "independent-mod-max-u-prime".into(),
        }
    }
}

/// Build the AG-code function and its certificate (claims plus
/// construction-time audits; `verified` is filled by [`certify`]).
pub fn build_theorem1(p: &Theorem1Params, name: &str, budget: u64) -> Result<Construction, PipelineError> {
    let report = validate_params(p);
    if !report.passed() {
        return Err(PipelineError::Validation(report));
    }
    let raw = raw_claim(p)?;
    let claimed = Claimed::from_raw(raw);
    let m = p.u.len();
    let (f, fp) = (p.curve.field(), p.curve_prime.field());
    let (w, wp) = (f.degree() as usize, fp.degree() as usize);
    let (n, np) = (p.places.len(), p.places_prime.len());
    let gf2 = BinaryField::new(1).expect("GF(2)");

    let mut codes = Vec::new();
    let mut q = Vec::with_capacity(m);
    let mut r = Vec::with_capacity(m);
    let mut c2 = Vec::with_capacity(m);
    for i in 0..m {
        let c1 = expanded(&p.curve, &p.places, &p.u[i])?;
        let c2i = expanded(&p.curve_prime, &p.places_prime, &p.u_prime[i])?;
        if c1.dim() != c2i.dim() {
            return Err(PipelineError::Dimension(format!(
                "B(C_L(P, U_{})) has dimension {} but B'(C_L(P', U'_{})) has {}",
                i + 1,
                c1.dim(),
                i + 1,
                c2i.dim()
            )));
        }
        codes.push(CodeEntry::describe(&format!("Q{}", i + 1), &c1, budget));
        codes.push(CodeEntry::describe(&format!("R{}", i + 1), &c2i, budget));
        q.push(c1.canonical());
        r.push(c2i.canonical());
        c2.push(c2i);
    }
    let hcode = expanded(&p.curve_prime, &p.places_prime, &p.h)?;
    let max_up = Divisor::max_all(&p.u_prime)?;
    let mcode = expanded(&p.curve_prime, &p.places_prime, &max_up)?;
    codes.push(CodeEntry::describe("H", &hcode, budget));
    codes.push(CodeEntry::describe("max-U-prime", &mcode, budget));
    if hcode.dim() < m {
        return Err(PipelineError::Dimension(format!(
            "B'(C_L(P', H)) has dimension {} < m = {m}",
            hcode.dim()
        )));
    }
    let hgen = hcode.canonical();
    let offsets = choose_offsets(&hgen, &mcode.canonical(), m);
    let v: Vec<Vec<u32>> = offsets.rows.iter().map(|&i| hgen.row(i).to_vec()).collect();
    if Matrix::from_rows(gf2, wp * np, &v).rank() < m {
        return Err(PipelineError::Dimension("offsets v_i are dependent".into()));
    }

    let phis = (0..m)
        .map(|i| AffineMap::from_matrix(&r[i].transpose().mul(&q[i]), &v[i]))
        .collect::<Result<Vec<_>, _>>()?;
    let function = mm_build(phis, None)?;

    let mut audits = Vec::new();
    // image of φ_i lies in v_i + C_2^i
    let mm = function.structure().expect("structured");
    let s = (w * n) as u32;
    let mut probes: Vec<u64> = (0..s).map(|j| 1u64 << j).collect();
    probes.push(if s == 64 { !0 } else { (1u64 << s) - 1 });
    for (i, phi) in mm.phis.iter().enumerate() {
        let ok = probes.iter().all(|&y| {
            let img = phi.linear_part(y);
            let bits: Vec<u32> = (0..(wp * np)).map(|b| (img >> b & 1) as u32).collect();
            c2[i].contains(&bits)
        });
        audits.push(Audit::boolean(&format!("image-in-coset-{}", i + 1), ok));
    }
    // Σ a_i v_i + B'(C_L(P', max U')) has weight >= t + 1
    let required = raw.t.max(0) + 1;
    for a in 1..1u64 << m {
        let va: Vec<u32> = (0..wp * np)
            .map(|b| (0..m).filter(|i| a >> i & 1 == 1).fold(0, |acc, i| acc ^ v[i][b]))
            .collect();
        let audit = match mcode.coset_min_weight(&va, budget) {
            Ok(wt) => Audit::measured(
                &format!("offset-coset-weight-a{}", a),
                wt as i64,
                required,
            ),
            Err(CodeError::BudgetExceeded { .. }) => Audit::unknown(&format!("offset-coset-weight-a{}", a), required),
            Err(e) => return Err(e.into()),
        };
        audits.push(audit);
    }

    let certificate = Certificate {
        construction: name.to_string(),
        params: serde_json::to_value(p.to_file())?,
        dimensions: Dimensions {
            w: w as u32,
            w_prime: wp as u32,
            n,
            n_prime: np,
            m,
            x_bits: wp * np,
            y_bits: w * n,
            variables: w * n + wp * np,
        },
        claimed,
        raw: Some(raw),
        verified: Verified::pending(),
        codes,
        audits,
        validation: report.checks,
        offsets: Some(offsets.clone()),
        conventions_hash: conventions_hash(),
    };
    Ok(Construction {
        function,
        certificate,
        q,
        r,
        v,
        offsets,
        max_u_prime_code: mcode,
    })
}

#[cfg(test)]
mod tests;
