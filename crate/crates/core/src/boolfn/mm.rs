//! Affine Maiorana-McFarland functions F_j(x, y) = x·φ_j(y) + h_j(y).
//!
//! Inputs are laid out with x in the low r index bits and y in the next s.

use rayon::prelude::*;

use crate::codes::LinearCode;
use crate::field::BinaryField;
use crate::matrix::Matrix;

use super::{check_budget, resiliency_order, BoolFnError, TruthTable};

fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        !0
    } else {
        (1u64 << bits) - 1
    }
}

fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

/// y ↦ A y + v with A an r × s binary matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    r: u32,
    s: u32,
    cols: Vec<u64>,
    v: u64,
}

impl AffineMap {
    pub fn new(r: u32, s: u32, cols: Vec<u64>, v: u64) -> Result<Self, BoolFnError> {
        if r > 64 || s > 64 || cols.len() != s as usize {
            return Err(BoolFnError::Dimension(format!(
                "{} columns for an {r} x {s} map",
                cols.len()
            )));
        }
        let m = low_mask(r);
        if cols.iter().any(|c| c & !m != 0) || v & !m != 0 {
            return Err(BoolFnError::Dimension("entries beyond row r".into()));
        }
        Ok(Self { r, s, cols, v })
    }

    pub fn zero(r: u32, s: u32) -> Self {
        Self::new(r, s, vec![0; s as usize], 0).expect("valid shape")
    }

    pub fn identity(n: u32) -> Self {
        Self::new(n, n, (0..n).map(|j| 1u64 << j).collect(), 0).expect("valid shape")
    }

    /// From a binary r × s matrix and a length-r offset.
    pub fn from_matrix(a: &Matrix, v: &[u32]) -> Result<Self, BoolFnError> {
        if a.field().degree() != 1 || v.len() != a.rows() {
            return Err(BoolFnError::Dimension("binary matrix and offset of length r".into()));
        }
        let cols = (0..a.cols())
            .map(|c| (0..a.rows()).fold(0u64, |acc, r| acc | (a.get(r, c) as u64) << r))
            .collect();
        let v = v.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        Self::new(a.rows() as u32, a.cols() as u32, cols, v)
    }

    pub fn to_matrix(&self) -> Matrix {
        let gf2 = BinaryField::new(1).expect("GF(2)");
        let mut m = Matrix::zeros(gf2, self.r as usize, self.s as usize);
        for (c, &col) in self.cols.iter().enumerate() {
            for r in 0..self.r as usize {
                m.set(r, c, (col >> r & 1) as u32);
            }
        }
        m
    }

    pub fn rows(&self) -> u32 {
        self.r
    }

    pub fn cols(&self) -> u32 {
        self.s
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn offset(&self) -> u64 {
        self.v
    }

    pub fn linear_part(&self, y: u64) -> u64 {
        self.cols
            .iter()
            .enumerate()
            .filter(|(j, _)| y >> j & 1 == 1)
            .fold(0, |acc, (_, c)| acc ^ c)
    }

    pub fn apply(&self, y: u64) -> u64 {
        self.linear_part(y) ^ self.v
    }

    /// Aᵀγ as an s-bit mask.
    pub fn apply_transpose(&self, gamma: u64) -> u64 {
        self.cols
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &c)| acc | (parity(c & gamma) as u64) << j)
    }

    pub fn add(&self, other: &AffineMap) -> Result<AffineMap, BoolFnError> {
        if (self.r, self.s) != (other.r, other.s) {
            return Err(BoolFnError::Dimension("maps of different shapes".into()));
        }
        Ok(AffineMap {
            r: self.r,
            s: self.s,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a ^ b).collect(),
            v: self.v ^ other.v,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MMStructure {
    pub r: u32,
    pub s: u32,
    pub phis: Vec<AffineMap>,
    /// Tables on the s y-variables.
    pub hs: Vec<TruthTable>,
}

impl MMStructure {
    /// Σ a_j φ_j and Σ a_j h_j.
    pub fn combined(&self, a: u64) -> (AffineMap, TruthTable) {
        let mut phi = AffineMap::zero(self.r, self.s);
        let mut h = TruthTable::zero(self.s);
        for j in (0..self.phis.len()).filter(|j| a >> j & 1 == 1) {
            phi = phi.add(&self.phis[j]).expect("shared shape");
            h = h.xor(&self.hs[j]);
        }
        (phi, h)
    }
}

/// A map GF(2)^n → GF(2)^m in structured and/or tabulated form.
#[derive(Debug, Clone)]
pub struct VectorialFunction {
    n: u32,
    m: usize,
    mm: Option<MMStructure>,
    tables: Option<Vec<TruthTable>>,
}

/// F_j(x, y) = x·φ_j(y) + h_j(y); `hs` defaults to zero.
pub fn mm_build(phis: Vec<AffineMap>, hs: Option<Vec<TruthTable>>) -> Result<VectorialFunction, BoolFnError> {
    let first = phis
        .first()
        .ok_or_else(|| BoolFnError::Dimension("at least one output".into()))?;
    let (r, s) = (first.r, first.s);
    if phis.iter().any(|p| (p.r, p.s) != (r, s)) {
        return Err(BoolFnError::Dimension("maps of different shapes".into()));
    }
    if r + s > 128 {
        return Err(BoolFnError::Dimension(format!("{} inputs", r + s)));
    }
    let hs = hs.unwrap_or_else(|| vec![TruthTable::zero(s); phis.len()]);
    if hs.len() != phis.len() || hs.iter().any(|h| h.n() != s) {
        return Err(BoolFnError::Dimension("one h table on s variables per output".into()));
    }
    Ok(VectorialFunction {
        n: r + s,
        m: phis.len(),
        mm: Some(MMStructure { r, s, phis, hs }),
        tables: None,
    })
}

/// 64-bit patterns of the linear functions x ↦ x·c on 6 variables.
fn linear_words() -> [u64; 64] {
    let mut out = [0u64; 64];
    for (c, w) in out.iter_mut().enumerate() {
        for x in 0..64u64 {
            if parity(x & c as u64) {
                *w |= 1 << x;
            }
        }
    }
    out
}

fn materialize_mm(mm: &MMStructure, j: usize) -> TruthTable {
    let (r, s) = (mm.r, mm.s);
    let phi = &mm.phis[j];
    let h = &mm.hs[j];
    let mut t = TruthTable::zero(r + s);
    if r >= 6 {
        let lin = linear_words();
        let per_y = 1usize << (r - 6);
        t.words
            .par_chunks_mut(per_y)
            .enumerate()
            .for_each(|(y, chunk)| {
                let p = phi.apply(y as u64);
                let base = lin[(p & 63) as usize];
                let hb = h.get(y as u64);
                for (xhi, w) in chunk.iter_mut().enumerate() {
                    let flip = parity(xhi as u64 & (p >> 6)) ^ hb;
                    *w = if flip { !base } else { base };
                }
            });
    } else {
        for y in 0..1u64 << s {
            let p = phi.apply(y);
            let hb = h.get(y);
            for x in 0..1u64 << r {
                if parity(x & p) ^ hb {
                    t.set(x | y << r, true);
                }
            }
        }
    }
    t
}

impl VectorialFunction {
    pub fn from_tables(tables: Vec<TruthTable>) -> Result<Self, BoolFnError> {
        let n = tables
            .first()
            .ok_or_else(|| BoolFnError::Dimension("at least one output".into()))?
            .n();
        if tables.iter().any(|t| t.n() != n) {
            return Err(BoolFnError::Dimension("outputs differ in variable count".into()));
        }
        Ok(Self {
            n,
            m: tables.len(),
            mm: None,
            tables: Some(tables),
        })
    }

    pub fn inputs(&self) -> u32 {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn structure(&self) -> Option<&MMStructure> {
        self.mm.as_ref()
    }

    /// Output j at bit j.
    pub fn evaluate(&self, input: u128) -> u64 {
        if let Some(t) = &self.tables {
            return t
                .iter()
                .enumerate()
                .fold(0, |acc, (j, t)| acc | (t.get(input as u64) as u64) << j);
        }
        let mm = self.mm.as_ref().expect("structured or tabulated");
        let x = (input as u64) & low_mask(mm.r);
        let y = ((input >> mm.r) as u64) & low_mask(mm.s);
        let mut out = 0;
        for (j, (phi, h)) in mm.phis.iter().zip(&mm.hs).enumerate() {
            if parity(x & phi.apply(y)) ^ h.get(y) {
                out |= 1 << j;
            }
        }
        out
    }

    /// Exact truth tables of every output.
    pub fn materialize(&self, budget: u64) -> Result<Vec<TruthTable>, BoolFnError> {
        if let Some(t) = &self.tables {
            return Ok(t.clone());
        }
        check_budget(self.n, budget)?;
        let mm = self.mm.as_ref().expect("structured or tabulated");
        Ok((0..self.m).map(|j| materialize_mm(mm, j)).collect())
    }

    /// Keep the tables alongside the structure.
    pub fn materialized(mut self, budget: u64) -> Result<Self, BoolFnError> {
        let t = self.materialize(budget)?;
        self.tables = Some(t);
        Ok(self)
    }
}

/// Exact resiliency order of Σ a_j F_j from the structure: the least weight
/// in the image coset v_a + colspace(A_a), minus one. Falls back to the
/// truth table when h_a is not constant.
pub fn mm_exact_resiliency(mm: &MMStructure, a: u64, budget: u64) -> Result<i32, BoolFnError> {
    let (phi, h) = mm.combined(a);
    let weight = h.weight();
    if weight != 0 && weight != 1 << mm.s {
        let f = VectorialFunction {
            n: mm.r + mm.s,
            m: 1,
            mm: Some(MMStructure {
                r: mm.r,
                s: mm.s,
                phis: vec![phi],
                hs: vec![h],
            }),
            tables: None,
        };
        return Ok(resiliency_order(&f.materialize(budget)?[0]));
    }
    let a_mat = phi.to_matrix();
    let code = LinearCode::span(&a_mat.transpose());
    let v: Vec<u32> = (0..mm.r).map(|i| (phi.offset() >> i & 1) as u32).collect();
    let w = code.coset_min_weight(&v, budget)?;
    Ok(w as i32 - 1)
}
