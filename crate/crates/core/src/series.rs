//! Truncated Laurent series over a [`BinaryField`].
//!
//! A series stores the coefficients of t^val .. t^(val + len - 1); every
//! coefficient below the absolute precision `val + len` is exact. Nonzero
//! series are normalized so the first stored coefficient is nonzero; a zero
//! series has no coefficients and `val` equal to its absolute precision.

use crate::field::BinaryField;
use crate::poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub val: i64,
    pub coeffs: Vec<u32>,
}

impl Series {
    pub fn zero(abs_prec: i64) -> Self {
        Series {
            val: abs_prec,
            coeffs: Vec::new(),
        }
    }

    /// An exact polynomial known to relative precision `prec`.
    pub fn from_poly(p: &[u32], prec: usize) -> Self {
        let mut coeffs = p.to_vec();
        coeffs.resize(coeffs.len().max(prec), 0);
        Series { val: 0, coeffs }.normalized_to(prec)
    }

    pub fn constant(c: u32, prec: usize) -> Self {
        Self::from_poly(&[c], prec)
    }

    /// The monomial t^k.
    pub fn t_power(k: i64, prec: usize) -> Self {
        let mut coeffs = vec![0; prec.max(1)];
        coeffs[0] = 1;
        Series { val: k, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn abs_prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of t^k, if within precision.
    pub fn coeff(&self, k: i64) -> Option<u32> {
        if k >= self.abs_prec() {
            return None;
        }
        if k < self.val {
            return Some(0);
        }
        Some(self.coeffs[(k - self.val) as usize])
    }

    fn normalize(mut self) -> Self {
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            None => Series::zero(self.abs_prec()),
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
                self
            }
        }
    }

    fn normalized_to(self, prec: usize) -> Self {
        let mut s = self.normalize();
        if !s.is_zero() {
            s.coeffs.truncate(prec.max(1));
        }
        s
    }

    pub fn add(&self, other: &Series) -> Series {
        let hi = self.abs_prec().min(other.abs_prec());
        let lo = self.val.min(other.val).min(hi);
        let coeffs = (lo..hi)
            .map(|k| self.coeff(k).unwrap() ^ other.coeff(k).unwrap())
            .collect();
        Series { val: lo, coeffs }.normalize()
    }

    pub fn mul(&self, f: &BinaryField, other: &Series) -> Series {
        if self.is_zero() || other.is_zero() {
            // zero times a normalized series: precision shifts by the other valuation
            let shift = if self.is_zero() { other.val } else { self.val };
            let base = if self.is_zero() { self.val } else { other.val };
            return Series::zero(base + shift);
        }
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![0; len];
        for i in 0..len {
            let a = self.coeffs[i];
            if a == 0 {
                continue;
            }
            for j in 0..len - i {
                coeffs[i + j] ^= f.mul(a, other.coeffs[j]);
            }
        }
        Series {
            val: self.val + other.val,
            coeffs,
        }
        .normalize()
    }

    pub fn scale(&self, f: &BinaryField, c: u32) -> Series {
        if c == 0 {
            return Series::zero(self.abs_prec());
        }
        Series {
            val: self.val,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    /// Multiplicative inverse; `None` for a series indistinguishable from zero.
    pub fn inv(&self, f: &BinaryField) -> Option<Series> {
        if self.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let a0inv = f.inv(self.coeffs[0]).ok()?;
        let mut out = vec![0u32; n];
        out[0] = a0inv;
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k {
                s ^= f.mul(self.coeffs[j], out[k - j]);
            }
            out[k] = f.mul(s, a0inv);
        }
        Some(Series {
            val: -self.val,
            coeffs: out,
        })
    }

    /// p(s) by Horner's rule.
    pub fn compose_poly(f: &BinaryField, p: &[u32], s: &Series, prec: usize) -> Series {
        let p = poly::trim(p.to_vec());
        let Some((&lead, rest)) = p.split_last() else {
            return Series::zero(EXACT);
        };
        let mut acc = Series::constant(lead, prec);
        for &c in rest.iter().rev() {
            acc = acc.mul(f, s);
            if c != 0 {
                acc = acc.add(&Series::constant(c, prec));
            }
        }
        acc
    }
}

/// Absolute precision used for exact zeros.
pub const EXACT: i64 = 1 << 40;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_plus_t() {
        let f = BinaryField::new(2).unwrap();
        let s = Series::from_poly(&[1, 1], 8);
        let inv = s.inv(&f).unwrap();
        // 1/(1+t) = 1 + t + t^2 + ... in characteristic 2
        assert_eq!(inv.coeffs, vec![1; 8]);
        let one = s.mul(&f, &inv);
        assert_eq!(one.val, 0);
        assert_eq!(one.coeffs[0], 1);
        assert!(one.coeffs[1..].iter().all(|&c| c == 0));
    }

    #[test]
    fn cancellation_raises_valuation() {
        let a = Series::from_poly(&[1, 1, 1], 6);
        let b = Series::from_poly(&[1, 1], 6);
        let s = a.add(&b);
        assert_eq!(s.val, 2);
        assert_eq!(s.coeff(2), Some(1));
    }

    #[test]
    fn compose_poly_evaluates_at_polynomial_series() {
        let f = BinaryField::new(2).unwrap();
        // p(x) = x^2 + 1 at x = 1 + t gives t^2
        let s = Series::from_poly(&[1, 1], 6);
        let r = Series::compose_poly(&f, &[1, 0, 1], &s, 6);
        assert_eq!(r.val, 2);
        assert_eq!(r.coeff(2), Some(1));
    }
}
