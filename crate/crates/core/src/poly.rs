//! Dense univariate polynomials over a [`BinaryField`], coefficients stored
//! low degree first and kept trimmed (no trailing zeros; zero is `[]`).

use crate::field::BinaryField;

pub type Poly = Vec<u32>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn is_zero(p: &[u32]) -> bool {
    degree(p).is_none()
}

pub fn one() -> Poly {
    vec![1]
}

pub fn monomial(d: usize) -> Poly {
    let mut p = vec![0; d + 1];
    p[d] = 1;
    p
}

pub fn add(a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) ^ b.get(i).copied().unwrap_or(0))
        .collect();
    trim(out)
}

pub fn scale(f: &BinaryField, a: &[u32], c: u32) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &BinaryField, a: &[u32], b: &[u32]) -> Poly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= f.mul(x, y);
        }
    }
    trim(out)
}

pub fn pow(f: &BinaryField, a: &[u32], e: u32) -> Poly {
    let mut r = one();
    for _ in 0..e {
        r = mul(f, &r, a);
    }
    r
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(f: &BinaryField, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut rem = trim(a.to_vec());
    let mut quo = vec![0; rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul(rem[dr], lead_inv);
        quo[dr - db] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            rem[dr - db + j] ^= f.mul(c, bj);
        }
        rem = trim(rem);
    }
    (trim(quo), rem)
}

pub fn gcd(f: &BinaryField, a: &[u32], b: &[u32]) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero(&b) {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    make_monic(f, &a)
}

pub fn make_monic(f: &BinaryField, a: &[u32]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("nonzero");
            scale(f, &a[..=d], inv)
        }
    }
}

pub fn eval(f: &BinaryField, p: &[u32], x: u32) -> u32 {
    p.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
}

/// Map coefficients through `m` (e.g. a field embedding).
pub fn map(p: &[u32], m: impl Fn(u32) -> u32) -> Poly {
    trim(p.iter().map(|&c| m(c)).collect())
}

/// Coefficients of p(a + t) as a polynomial in t.
pub fn taylor_shift(f: &BinaryField, p: &[u32], a: u32) -> Poly {
    // Horner with the linear polynomial (a + t)
    let lin = vec![a, 1];
    let mut acc: Poly = Vec::new();
    for &c in p.iter().rev() {
        acc = add(&mul(f, &acc, &lin), &[c]);
    }
    acc
}

/// Coefficient vector reversed to length `d + 1`: t^d p(1/t).
pub fn reversed(p: &[u32], d: usize) -> Poly {
    let mut out = vec![0; d + 1];
    for (i, &c) in p.iter().enumerate() {
        if c != 0 {
            out[d - i] = c;
        }
    }
    trim(out)
}

pub fn has_root(f: &BinaryField, p: &[u32]) -> bool {
    f.elements().any(|x| eval(f, p, x) == 0)
}
