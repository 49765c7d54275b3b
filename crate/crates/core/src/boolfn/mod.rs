//! Boolean functions as bit-packed truth tables, Walsh analysis and the
//! propagation and resiliency criteria.
//!
//! Variable x_j is bit j-1 of the table index.

mod anf;
mod io;
mod mm;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::CodeError;

pub use anf::{anf, anf_to_string, from_anf, parse_anf};
pub use io::{read_bftt, write_bftt, BFTT_MAGIC};
pub use mm::{mm_build, mm_exact_resiliency, AffineMap, MMStructure, VectorialFunction};

/// Default materialization budget in bits per table (n <= 26).
pub const DEFAULT_MAT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Error)]
pub enum BoolFnError {
    #[error("2^{n} table bits exceed the budget of {budget}")]
    Budget { n: u32, budget: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Masks of the bit positions whose index has bit j clear.
const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Bit i of the word is moved to position i ^ a (a < 64).
#[inline]
fn permute_word(mut w: u64, a: u64) -> u64 {
    for (j, &m) in LOW.iter().enumerate() {
        if a >> j & 1 == 1 {
            let s = 1 << j;
            w = ((w & m) << s) | ((w >> s) & m);
        }
    }
    w
}

fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn valid_mask(n: u32) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

pub fn check_budget(n: u32, budget: u64) -> Result<(), BoolFnError> {
    if n >= 64 || (1u64 << n) > budget {
        return Err(BoolFnError::Budget { n, budget });
    }
    Ok(())
}

/// Outcome of a check that may be cut short by a budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates, then Unknown.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn from_fn(n: u32, f: impl Fn(u64) -> bool) -> Self {
        let mut t = Self::zero(n);
        for i in 0..1u64 << n {
            if f(i) {
                t.set(i, true);
            }
        }
        t
    }

    /// Words must number max(1, 2^(n-6)); stray bits beyond 2^n are rejected.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self, BoolFnError> {
        if words.len() != word_count(n) {
            return Err(BoolFnError::Dimension(format!(
                "{} words for {} variables",
                words.len(),
                n
            )));
        }
        if words[0] & !valid_mask(n) != 0 {
            return Err(BoolFnError::Format("bits set beyond 2^n".into()));
        }
        Ok(Self { n, words })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    pub fn set(&mut self, i: u64, v: bool) {
        let w = &mut self.words[(i >> 6) as usize];
        if v {
            *w |= 1 << (i & 63);
        } else {
            *w &= !(1 << (i & 63));
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.n > 0 && self.weight() == 1 << (self.n - 1)
    }

    pub fn xor(&self, other: &TruthTable) -> TruthTable {
        assert_eq!(self.n, other.n, "tables on different variable counts");
        TruthTable {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn complement(&self) -> TruthTable {
        let mask = valid_mask(self.n);
        TruthTable {
            n: self.n,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    /// The table of f(x) + f(x + α).
    pub fn derivative(&self, alpha: u64) -> TruthTable {
        let (hi, lo) = ((alpha >> 6) as usize, alpha & 63);
        TruthTable {
            n: self.n,
            words: (0..self.words.len())
                .map(|i| self.words[i] ^ permute_word(self.words[i ^ hi], lo))
                .collect(),
        }
    }

    /// Weight of the derivative in direction α, without allocating it.
    pub fn derivative_weight(&self, alpha: u64) -> u64 {
        let (hi, lo) = ((alpha >> 6) as usize, alpha & 63);
        let w = &self.words;
        (0..w.len())
            .map(|i| (w[i] ^ permute_word(w[i ^ hi], lo)).count_ones() as u64)
            .sum()
    }

    /// Subfunction with the variables in `fixed` (0-based positions, a bit
    /// mask) set to the matching bits of `values`; the free variables keep
    /// their relative order.
    pub fn restrict(&self, fixed: u64, values: u64) -> TruthTable {
        let free: Vec<u32> = (0..self.n).filter(|j| fixed >> j & 1 == 0).collect();
        let base = values & fixed;
        let m = free.len() as u32;
        let lo_bits = m.min(8);
        let deposit = |y: u64, pos: &[u32]| -> u64 {
            pos.iter()
                .enumerate()
                .filter(|(b, _)| y >> b & 1 == 1)
                .fold(0, |acc, (_, &p)| acc | 1 << p)
        };
        let lo_tab: Vec<u64> = (0..1u64 << lo_bits)
            .map(|y| deposit(y, &free[..lo_bits as usize]))
            .collect();
        let hi_tab: Vec<u64> = (0..1u64 << (m - lo_bits))
            .map(|y| deposit(y, &free[lo_bits as usize..]))
            .collect();
        let mut out = TruthTable::zero(m);
        let lo_mask = (1u64 << lo_bits) - 1;
        for y in 0..1u64 << m {
            let idx = base | lo_tab[(y & lo_mask) as usize] | hi_tab[(y >> lo_bits) as usize];
            if self.get(idx) {
                out.set(y, true);
            }
        }
        out
    }
}

/// In-place fast Walsh-Hadamard transform.
pub fn fwht<T>(v: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_mut(2 * h) {
            let (a, b) = chunk.split_at_mut(h);
            for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
}

/// W(u) = Σ_x (-1)^{f(x) + u·x}.
pub fn walsh_spectrum(t: &TruthTable) -> Vec<i32> {
    let mut v: Vec<i32> = (0..1u64 << t.n)
        .map(|i| if t.get(i) { -1 } else { 1 })
        .collect();
    fwht(&mut v);
    v
}

/// r(α) = Σ_x (-1)^{f(x) + f(x + α)}, computed from the squared spectrum.
pub fn autocorrelation(t: &TruthTable) -> Vec<i64> {
    let mut v: Vec<i64> = walsh_spectrum(t).iter().map(|&w| (w as i64) * (w as i64)).collect();
    fwht(&mut v);
    let shift = t.n;
    v.iter().map(|&x| x >> shift).collect()
}

/// Largest t with W(u) = 0 for every wt(u) <= t; -1 when unbalanced.
pub fn resiliency_order(t: &TruthTable) -> i32 {
    resiliency_from_spectrum(&walsh_spectrum(t), t.n)
}

pub fn resiliency_from_spectrum(w: &[i32], n: u32) -> i32 {
    let min_wt = w
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(u, _)| (u as u64).count_ones() as i32)
        .min()
        .unwrap_or(n as i32 + 1);
    min_wt - 1
}

/// Resiliency by definition: the largest t such that fixing any t variables
/// to any values leaves a balanced subfunction; -1 when unbalanced.
pub fn resiliency_by_fixing(t: &TruthTable) -> i32 {
    if !t.is_balanced() {
        return -1;
    }
    let n = t.n;
    let mut best = 0;
    for k in 1..n {
        let ok = subsets_of_weight(n, k).into_par_iter().all(|s| {
            // weight of the subfunction for every assignment of s
            let mut counts = vec![0u64; 1 << k];
            let pos: Vec<u32> = (0..n).filter(|j| s >> j & 1 == 1).collect();
            for x in 0..1u64 << n {
                if t.get(x) {
                    let c = pos
                        .iter()
                        .enumerate()
                        .fold(0usize, |acc, (b, &p)| acc | ((x >> p & 1) as usize) << b);
                    counts[c] += 1;
                }
            }
            counts.iter().all(|&c| c == 1 << (n - k - 1))
        });
        if !ok {
            break;
        }
        best = k as i32;
    }
    best
}

/// All n-bit masks of weight exactly k, in increasing order.
pub fn subsets_of_weight(n: u32, k: u32) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut x: u64 = (1 << k) - 1;
    while x < 1 << n {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// All nonzero α on n variables with wt(α) <= l, by weight then value.
pub fn alphas_up_to(n: u32, l: u32) -> Vec<u64> {
    (1..=l.min(n)).flat_map(|w| subsets_of_weight(n, w)).collect()
}

/// PC(l): every derivative with 1 <= wt(α) <= l is balanced.
pub fn pc_check(t: &TruthTable, l: u32) -> bool {
    if t.n == 0 {
        return true;
    }
    let half = 1u64 << (t.n - 1);
    alphas_up_to(t.n, l)
        .into_par_iter()
        .all(|a| t.derivative_weight(a) == half)
}

/// Number of subfunctions C(n, k)·2^k, saturating.
pub fn fixing_count(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c.saturating_mul(1u128 << k.min(100))
}

/// PC(l) of order k: fixing any k variables to any constants leaves a
/// function satisfying PC(min(l, n - k)) in the remaining variables.
pub fn pc_order_check(t: &TruthTable, l: u32, k: u32, budget: u64) -> Verdict {
    if k > t.n {
        return Verdict::Pass;
    }
    if fixing_count(t.n, k) > budget as u128 {
        return Verdict::Unknown;
    }
    let l_eff = l.min(t.n - k);
    let jobs: Vec<(u64, u64)> = subsets_of_weight(t.n, k)
        .into_iter()
        .flat_map(|s| {
            let pos: Vec<u32> = (0..t.n).filter(|j| s >> j & 1 == 1).collect();
            (0..1u64 << k).map(move |c| (s, spread(c, &pos)))
        })
        .collect();
    Verdict::from_bool(
        jobs.into_par_iter()
            .all(|(s, c)| pc_check(&t.restrict(s, c), l_eff)),
    )
}

fn spread(c: u64, pos: &[u32]) -> u64 {
    pos.iter()
        .enumerate()
        .filter(|(b, _)| c >> b & 1 == 1)
        .fold(0, |acc, (_, &p)| acc | 1 << p)
}

/// Largest l such that PC(l) holds: one less than the least weight of a
/// nonzero α with r(α) != 0, or n when there is none.
pub fn max_pc_degree(t: &TruthTable) -> u32 {
    let r = autocorrelation(t);
    r.iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &x)| x != 0)
        .map(|(a, _)| (a as u64).count_ones() - 1)
        .min()
        .unwrap_or(t.n)
}

/// Largest l <= n - k for which PC(l) of order k holds; `None` over budget.
pub fn max_pc_degree_of_order(t: &TruthTable, k: u32, budget: u64) -> Option<u32> {
    if k > t.n || fixing_count(t.n, k) > budget as u128 {
        return None;
    }
    let jobs: Vec<(u64, u64)> = subsets_of_weight(t.n, k)
        .into_iter()
        .flat_map(|s| {
            let pos: Vec<u32> = (0..t.n).filter(|j| s >> j & 1 == 1).collect();
            (0..1u64 << k).map(move |c| (s, spread(c, &pos)))
        })
        .collect();
    jobs.into_par_iter()
        .map(|(s, c)| max_pc_degree(&t.restrict(s, c)))
        .min()
}

/// Nonlinearity 2^(n-1) - max|W|/2 and whether f is bent.
pub fn nonlinearity(t: &TruthTable) -> (u64, bool) {
    let w = walsh_spectrum(t);
    let max = w.iter().map(|x| x.unsigned_abs() as u64).max().unwrap_or(0);
    let bent = t.n.is_multiple_of(2) && w.iter().all(|x| x.unsigned_abs() as u64 == 1 << (t.n / 2));
    ((1u64 << t.n) / 2 - max / 2, bent)
}

/// Σ a_j f_j over the tables selected by the bits of `a`.
pub fn combination(tables: &[TruthTable], a: u64) -> TruthTable {
    let n = tables.first().map_or(0, |t| t.n);
    tables
        .iter()
        .enumerate()
        .filter(|(j, _)| a >> j & 1 == 1)
        .fold(TruthTable::zero(n), |acc, (_, t)| acc.xor(t))
}

/// Criteria for one nonzero output combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboReport {
    pub a: u64,
    pub resiliency: i32,
    /// Exact largest l with PC(l) (order 0).
    pub max_pc: u32,
    /// PC(l) of order k for the requested (l, k).
    pub pc_order: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorialReport {
    pub l: u32,
    pub k: u32,
    pub t: Option<i32>,
    pub combos: Vec<ComboReport>,
    pub resiliency: i32,
    pub max_pc: u32,
    pub pc_order: Verdict,
    pub verdict: Verdict,
}

/// Every nonzero combination of the outputs checked for PC(l) of order k and
/// t-resiliency (`None` skips the resiliency requirement).
pub fn vectorial_criteria(
    tables: &[TruthTable],
    l: u32,
    k: u32,
    t: Option<i32>,
    budget: u64,
) -> Result<VectorialReport, BoolFnError> {
    let m = tables.len();
    if m == 0 || m > 20 {
        return Err(BoolFnError::Dimension(format!("{m} outputs")));
    }
    let n = tables[0].n;
    if tables.iter().any(|x| x.n != n) {
        return Err(BoolFnError::Dimension("outputs differ in variable count".into()));
    }
    let combos: Vec<ComboReport> = (1..1u64 << m)
        .into_par_iter()
        .map(|a| {
            let f = combination(tables, a);
            let w = walsh_spectrum(&f);
            ComboReport {
                a,
                resiliency: resiliency_from_spectrum(&w, n),
                max_pc: max_pc_degree(&f),
                pc_order: pc_order_check(&f, l, k, budget),
            }
        })
        .collect();
    let resiliency = combos.iter().map(|c| c.resiliency).min().unwrap();
    let max_pc = combos.iter().map(|c| c.max_pc).min().unwrap();
    let pc_order = combos.iter().fold(Verdict::Pass, |v, c| v.and(c.pc_order));
    let res_ok = Verdict::from_bool(t.is_none_or(|t| resiliency >= t));
    Ok(VectorialReport {
        l,
        k,
        t,
        combos,
        resiliency,
        max_pc,
        pc_order,
        verdict: pc_order.and(res_ok),
    })
}
