//! Algebraic normal form via the binary Möbius transform.

use super::{BoolFnError, TruthTable, LOW};

/// Coefficient table: bit u is set when the monomial Π_{j ∈ u} x_j occurs.
/// The transform is an involution, so `anf(anf(t)) == t`.
pub fn anf(t: &TruthTable) -> TruthTable {
    let mut words = t.words().to_vec();
    for w in words.iter_mut() {
        for (j, &m) in LOW.iter().enumerate() {
            *w ^= (*w & m) << (1 << j);
        }
    }
    let mut h = 1;
    while h < words.len() {
        for chunk in words.chunks_mut(2 * h) {
            let (a, b) = chunk.split_at_mut(h);
            for (x, y) in a.iter().zip(b.iter_mut()) {
                *y ^= x;
            }
        }
        h *= 2;
    }
    // in-word steps for j >= n push bits past 2^n; drop them
    words[0] &= super::valid_mask(t.n());
    TruthTable::from_words(t.n(), words).expect("same shape")
}

/// Table of the function with the given ANF coefficients.
pub fn from_anf(coeffs: &TruthTable) -> TruthTable {
    anf(coeffs)
}

/// `x1x2+x3+1`: higher degree first, then by index; `0` when empty.
pub fn anf_to_string(coeffs: &TruthTable) -> String {
    let mut monos: Vec<u64> = (0..1u64 << coeffs.n()).filter(|&u| coeffs.get(u)).collect();
    monos.sort_by_key(|&u| std::cmp::Reverse((u.count_ones(), u.reverse_bits())));
    if monos.is_empty() {
        return "0".into();
    }
    monos
        .iter()
        .map(|&u| {
            if u == 0 {
                "1".to_string()
            } else {
                (0..64)
                    .filter(|j| u >> j & 1 == 1)
                    .map(|j| format!("x{}", j + 1))
                    .collect()
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Parse ANF text on n variables into a coefficient table.
pub fn parse_anf(n: u32, s: &str) -> Result<TruthTable, BoolFnError> {
    let bad = |m: &str| BoolFnError::Format(format!("{m} in {s:?}"));
    let mut out = TruthTable::zero(n);
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(out);
    }
    for term in compact.split('+') {
        let mono = if term == "1" {
            0u64
        } else {
            let mut u = 0u64;
            for var in term.split('x').skip(1) {
                let j: u32 = var.parse().map_err(|_| bad("bad variable"))?;
                if j == 0 || j > n {
                    return Err(bad("variable out of range"));
                }
                u |= 1 << (j - 1);
            }
            if u == 0 || !term.starts_with('x') {
                return Err(bad("empty monomial"));
            }
            u
        };
        out.set(mono, !out.get(mono));
    }
    Ok(out)
}
