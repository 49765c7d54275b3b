//! Linear codes over GF(2^w): duality, exhaustive distance enumeration and
//! binary expansion under a self-dual basis.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{BinaryField, FieldError, SelfDualBasis};
use crate::matrix::Matrix;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("enumeration needs {needed} messages, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("generator has rank {rank} but {rows} rows")]
    RankDefect { rank: usize, rows: usize },
    #[error("basis field {basis:?} does not match code field {code:?}")]
    FieldMismatch {
        basis: BinaryField,
        code: BinaryField,
    },
    #[error("vector length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("malformed code file: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A linear [n, k] code with a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    gen: Matrix,
    /// Known lower bounds on the minimum distance and the dual distance.
    pub distance_bound: Option<usize>,
    pub dual_distance_bound: Option<usize>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen.field() == other.gen.field()
            && self.len() == other.len()
            && self.canonical() == other.canonical()
    }
}

impl LinearCode {
    /// Requires `gen` to have full row rank.
    pub fn from_generator(gen: Matrix) -> Result<Self, CodeError> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(CodeError::RankDefect {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(LinearCode {
            gen,
            distance_bound: None,
            dual_distance_bound: None,
        })
    }

    /// The code spanned by the rows of `m`, generator in rref.
    pub fn span(m: &Matrix) -> Self {
        LinearCode {
            gen: m.row_space_basis(),
            distance_bound: None,
            dual_distance_bound: None,
        }
    }

    pub fn with_bounds(mut self, d: Option<usize>, dual: Option<usize>) -> Self {
        self.distance_bound = d;
        self.dual_distance_bound = dual;
        self
    }

    pub fn field(&self) -> BinaryField {
        self.gen.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Length n.
    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension k.
    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical generator: the rref, which identifies the code.
    pub fn canonical(&self) -> Matrix {
        self.gen.row_space_basis()
    }

    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        self.gen.vec_mul(msg)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.len() && self.gen.spans(v)
    }

    /// Null space under the standard inner product Σ x_i y_i.
    pub fn dual(&self) -> LinearCode {
        let ns = if self.dim() == 0 {
            Matrix::identity(self.field(), self.len())
        } else {
            self.gen.null_space()
        };
        LinearCode {
            gen: ns,
            distance_bound: self.dual_distance_bound,
            dual_distance_bound: self.distance_bound,
        }
    }

    /// Number of messages q^k, saturating.
    pub fn message_count(&self) -> u128 {
        let bits = self.field().degree() as u128 * self.dim() as u128;
        if bits >= 127 {
            u128::MAX
        } else {
            1u128 << bits
        }
    }

    fn check_budget(&self, budget: u64) -> Result<(), CodeError> {
        let needed = self.message_count();
        if needed > budget as u128 {
            return Err(CodeError::BudgetExceeded {
                needed,
                budget: budget as u128,
            });
        }
        Ok(())
    }

    /// Weight distribution A_0..A_n.
    pub fn weight_distribution(&self, budget: u64) -> Result<Vec<u64>, CodeError> {
        self.coset_weight_distribution(&vec![0; self.len()], budget)
    }

    /// Weight distribution of the coset v + C.
    pub fn coset_weight_distribution(&self, v: &[u32], budget: u64) -> Result<Vec<u64>, CodeError> {
        if v.len() != self.len() {
            return Err(CodeError::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        self.check_budget(budget)?;
        if self.field().degree() == 1 {
            Ok(binary_coset_weights(&self.gen, v))
        } else {
            Ok(symbol_coset_weights(&self.gen, v))
        }
    }

    /// Exact minimum distance; `None` encodes the infinite distance of k = 0.
    pub fn min_distance(&self, budget: u64) -> Result<Option<usize>, CodeError> {
        let mut dist = self.weight_distribution(budget)?;
        dist[0] -= 1;
        Ok(dist.iter().position(|&a| a > 0))
    }

    /// min over codewords x of wt(v + x); 0 when v is a codeword.
    pub fn coset_min_weight(&self, v: &[u32], budget: u64) -> Result<usize, CodeError> {
        let dist = self.coset_weight_distribution(v, budget)?;
        Ok(dist.iter().position(|&a| a > 0).expect("coset is nonempty"))
    }

    /// Binary image under a self-dual basis: rows are B(e_j g_i).
    pub fn expand(&self, basis: &SelfDualBasis) -> Result<LinearCode, CodeError> {
        let f = self.field();
        if basis.field() != f {
            return Err(CodeError::FieldMismatch {
                basis: basis.field(),
                code: f,
            });
        }
        let gf2 = BinaryField::new(1)?;
        let w = f.degree() as usize;
        let mut rows = Vec::with_capacity(self.dim() * w);
        for i in 0..self.dim() {
            for &e in basis.elements() {
                rows.push(expand_vector(basis, &scale_row(&f, self.gen.row(i), e)));
            }
        }
        let gen = Matrix::from_rows(gf2, self.len() * w, &rows);
        Ok(LinearCode {
            gen,
            distance_bound: self.distance_bound,
            dual_distance_bound: self.dual_distance_bound,
        })
    }

    /// Code-file text: header `w n k`, then k rows of n hex symbols.
    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut s = format!("{} {} {}\n", f.degree(), self.len(), self.dim());
        for r in 0..self.dim() {
            let syms: Vec<String> = self.gen.row(r).iter().map(|&c| f.to_hex(c)).collect();
            let _ = writeln!(s, "{}", syms.join(" "));
        }
        s
    }

    pub fn write_to(&self, mut out: impl Write) -> Result<(), CodeError> {
        out.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn read_from(input: impl BufRead) -> Result<LinearCode, CodeError> {
        let mut lines = input
            .lines()
            .map(|l| l.map(|s| s.trim().to_string()))
            .filter(|l| !matches!(l, Ok(s) if s.is_empty()));
        let header = lines
            .next()
            .ok_or_else(|| CodeError::Format("missing header".into()))??;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| CodeError::Format(format!("bad header {header:?}")))?;
        let [w, n, k] = nums[..] else {
            return Err(CodeError::Format(format!("bad header {header:?}")));
        };
        let field = BinaryField::new(w as u32)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| CodeError::Format("missing generator row".into()))??;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| field.from_hex(t))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(CodeError::Format(format!("row has {} symbols, expected {n}", row.len())));
            }
            rows.push(row);
        }
        LinearCode::from_generator(Matrix::from_rows(field, n, &rows))
    }
}

fn scale_row(f: &BinaryField, row: &[u32], c: u32) -> Vec<u32> {
    row.iter().map(|&x| f.mul(x, c)).collect()
}

/// Concatenate B(x_i) for every coordinate, w bits per symbol.
pub fn expand_vector(basis: &SelfDualBasis, v: &[u32]) -> Vec<u32> {
    let w = basis.field().degree();
    let mut out = Vec::with_capacity(v.len() * w as usize);
    for &x in v {
        let bits = basis.expand(x);
        out.extend((0..w).map(|j| (bits >> j) & 1));
    }
    out
}

fn pack(row: &[u32]) -> Vec<u64> {
    let mut words = vec![0u64; row.len().div_ceil(64).max(1)];
    for (i, &b) in row.iter().enumerate() {
        if b & 1 == 1 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

fn weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Gray-code enumeration over packed rows, split over the top message bits
/// so partial histograms can be merged in a fixed order.
fn binary_coset_weights(gen: &Matrix, v: &[u32]) -> Vec<u64> {
    let n = gen.cols();
    let k = gen.rows();
    let rows: Vec<Vec<u64>> = (0..k).map(|r| pack(gen.row(r))).collect();
    let offset = pack(v);
    let split = k.min(6);
    let inner = k - split;
    let partials: Vec<Vec<u64>> = (0u64..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut cur = offset.clone();
            for b in 0..split {
                if prefix >> b & 1 == 1 {
                    for (c, r) in cur.iter_mut().zip(&rows[inner + b]) {
                        *c ^= r;
                    }
                }
            }
            let mut hist = vec![0u64; n + 1];
            hist[weight(&cur)] += 1;
            for i in 1u64..1 << inner {
                let flip = i.trailing_zeros() as usize;
                for (c, r) in cur.iter_mut().zip(&rows[flip]) {
                    *c ^= r;
                }
                hist[weight(&cur)] += 1;
            }
            hist
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    for p in partials {
        for (h, x) in hist.iter_mut().zip(p) {
            *h += x;
        }
    }
    hist
}

fn symbol_coset_weights(gen: &Matrix, v: &[u32]) -> Vec<u64> {
    let f = gen.field();
    let n = gen.cols();
    let k = gen.rows();
    let q = f.order();
    // multiples[r][c] = c * row_r
    let multiples: Vec<Vec<Vec<u32>>> = (0..k)
        .map(|r| f.elements().map(|c| scale_row(&f, gen.row(r), c)).collect())
        .collect();
    fn walk(mult: &[Vec<Vec<u32>>], depth: usize, cur: &mut Vec<u32>, hist: &mut [u64]) {
        if depth == mult.len() {
            hist[cur.iter().filter(|&&x| x != 0).count()] += 1;
            return;
        }
        for m in &mult[depth] {
            for (c, x) in cur.iter_mut().zip(m) {
                *c ^= x;
            }
            walk(mult, depth + 1, cur, hist);
            for (c, x) in cur.iter_mut().zip(m) {
                *c ^= x;
            }
        }
    }
    if k == 0 {
        let mut hist = vec![0u64; n + 1];
        hist[v.iter().filter(|&&x| x != 0).count()] += 1;
        return hist;
    }
    let partials: Vec<Vec<u64>> = (0..q as usize)
        .into_par_iter()
        .map(|c0| {
            let mut cur: Vec<u32> = v.iter().zip(&multiples[0][c0]).map(|(a, b)| a ^ b).collect();
            let mut hist = vec![0u64; n + 1];
            walk(&multiples[1..], 0, &mut cur, &mut hist);
            hist
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    for p in partials {
        for (h, x) in hist.iter_mut().zip(p) {
            *h += x;
        }
    }
    hist
}

/// Binary repetition, Hamming and other small reference codes.
pub mod catalog {
    use super::*;

    pub fn repetition(field: BinaryField, n: usize) -> LinearCode {
        let gen = Matrix::from_rows(field, n, &[vec![1; n]]);
        LinearCode::from_generator(gen).expect("rank 1")
    }

    /// Binary Hamming [7,4,3] in systematic form [I | P].
    pub fn hamming7() -> LinearCode {
        let gf2 = BinaryField::new(1).expect("GF(2)");
        let rows = [
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ];
        LinearCode::from_generator(Matrix::from_rows(gf2, 7, &rows)).expect("full rank")
    }

    pub fn full_space(field: BinaryField, n: usize) -> LinearCode {
        LinearCode::from_generator(Matrix::identity(field, n)).expect("identity")
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    const BUDGET: u64 = 1 << 22;

    fn gf(w: u32) -> BinaryField {
        BinaryField::new(w).unwrap()
    }

    #[test]
    fn dual_examples() {
        let full = full_space(gf(2), 5);
        assert_eq!(full.dual().dim(), 0);
        let simplex = hamming7().dual();
        assert_eq!(simplex.dim(), 3);
        // enumerate all 8 simplex codewords by hand
        let g = simplex.generator();
        for m in 1u32..8 {
            let msg: Vec<u32> = (0..3).map(|i| (m >> i) & 1).collect();
            let cw = g.vec_mul(&msg);
            assert_eq!(cw.iter().filter(|&&x| x == 1).count(), 4);
        }
        let rep = repetition(gf(2), 3);
        let d = rep.dual();
        assert_eq!(d.dim(), 2);
        for r in 0..2 {
            let row = d.generator().row(r);
            assert_eq!(row[0] ^ row[1] ^ row[2], 0);
        }
    }

    #[test]
    fn double_dual_is_identity() {
        let f = gf(3);
        let m = Matrix::from_rows(f, 6, &[vec![1, 2, 3, 4, 5, 6], vec![0, 7, 1, 1, 0, 2]]);
        let c = LinearCode::from_generator(m).unwrap();
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(repetition(gf(1), 5).min_distance(BUDGET).unwrap(), Some(5));
        assert_eq!(hamming7().min_distance(BUDGET).unwrap(), Some(3));
        assert_eq!(full_space(gf(2), 5).min_distance(BUDGET).unwrap(), Some(1));
        assert_eq!(full_space(gf(2), 5).dual().min_distance(BUDGET).unwrap(), None);
        let err = full_space(gf(2), 12).min_distance(1 << 20);
        assert!(matches!(err, Err(CodeError::BudgetExceeded { .. })));
    }

    #[test]
    fn weight_distribution_examples() {
        let empty = full_space(gf(2), 4).dual();
        assert_eq!(empty.weight_distribution(BUDGET).unwrap(), vec![1, 0, 0, 0, 0]);
        let simplex = hamming7().dual().weight_distribution(BUDGET).unwrap();
        assert_eq!(simplex, vec![1, 0, 0, 0, 7, 0, 0, 0]);
        let rep4 = repetition(gf(2), 3).weight_distribution(BUDGET).unwrap();
        assert_eq!(rep4, vec![1, 0, 0, 3]);
        let h = hamming7().weight_distribution(BUDGET).unwrap();
        assert_eq!(h.iter().sum::<u64>(), 16);
    }

    #[test]
    fn expand_examples() {
        let b1 = gf(1).self_dual_basis();
        let h = hamming7();
        assert_eq!(h.expand(&b1).unwrap(), h);
        let b4 = gf(2).self_dual_basis();
        let e = full_space(gf(2), 1).expand(&b4).unwrap();
        assert_eq!((e.len(), e.dim()), (2, 2));
        let rep = repetition(gf(2), 2).expand(&b4).unwrap();
        assert_eq!((rep.len(), rep.dim()), (4, 2));
        assert_eq!(rep.min_distance(BUDGET).unwrap(), Some(2));
        assert!(repetition(gf(3), 2).expand(&b4).is_err());
    }

    #[test]
    fn coset_examples() {
        let rep = repetition(gf(1), 4);
        assert_eq!(rep.coset_min_weight(&[0, 0, 0, 0], BUDGET).unwrap(), 0);
        assert_eq!(rep.coset_min_weight(&[1, 1, 1, 1], BUDGET).unwrap(), 0);
        assert_eq!(rep.coset_min_weight(&[1, 0, 0, 0], BUDGET).unwrap(), 1);
        // Hamming is perfect: every non-codeword is at distance exactly 1
        let h = hamming7();
        assert_eq!(h.coset_min_weight(&[1, 0, 0, 0, 0, 0, 0], BUDGET).unwrap(), 1);
    }

    #[test]
    fn code_file_round_trip() {
        let c = LinearCode::from_generator(Matrix::from_rows(gf(2), 3, &[vec![1, 2, 3]])).unwrap();
        let text = c.to_text();
        assert_eq!(text, "2 3 1\n1 2 3\n");
        let back = LinearCode::read_from(text.as_bytes()).unwrap();
        assert_eq!(back, c);
        assert!(LinearCode::read_from("2 3 1\n1 2\n".as_bytes()).is_err());
    }
}
