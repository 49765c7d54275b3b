//! Arithmetic in GF(2^w) for 1 <= w <= 16.
//!
//! Elements are carried as raw `u32` bit-strings in the polynomial basis
//! (bit `i` is the coefficient of `x^i`). Hot paths pass raw values through
//! [`BinaryField`]; the checked [`FieldElement`] wrapper remembers its field
//! so mixed-field arithmetic is rejected.

use std::fmt;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} outside 1..=16")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {w}")]
    NotIrreducible { w: u32, modulus: u32 },
    #[error("value {value:#x} is not an element of GF(2^{w})")]
    NotAnElement { w: u32, value: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("basis does not belong to this field")]
    BasisMismatch,
    #[error("malformed hex field element {0:?}")]
    BadHex(String),
}

/// Pinned moduli; other degrees use the smallest irreducible polynomial.
fn pinned_modulus(w: u32) -> Option<u32> {
    match w {
        1 => Some(0b10),
        2 => Some(0b111),
        3 => Some(0b1011),
        4 => Some(0b10011),
        6 => Some(0b1000011),
        8 => Some(0x11b),
        _ => None,
    }
}

/// The field GF(2^w) defined by a fixed irreducible modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryField {
    w: u32,
    modulus: u32,
    /// bit i = Tr(x^i); the absolute trace is linear over GF(2).
    trace_mask: u32,
}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})[{:#x}]", self.w, self.modulus)
    }
}

impl BinaryField {
    /// The field of degree `w` with the pinned modulus.
    pub fn new(w: u32) -> Result<Self, FieldError> {
        if w == 0 || w > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(w));
        }
        let modulus = match pinned_modulus(w) {
            Some(m) => m,
            None => smallest_irreducible(w),
        };
        Ok(Self::build(w, modulus))
    }

    pub fn with_modulus(w: u32, modulus: u32) -> Result<Self, FieldError> {
        if w == 0 || w > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(w));
        }
        if w > 1 && !is_irreducible_gf2(modulus, w) || (w == 1 && modulus >> 1 != 1) {
            return Err(FieldError::NotIrreducible { w, modulus });
        }
        Ok(Self::build(w, modulus))
    }

    fn build(w: u32, modulus: u32) -> Self {
        let mut f = BinaryField {
            w,
            modulus,
            trace_mask: 0,
        };
        let mut mask = 0;
        for i in 0..w {
            if f.trace_slow(1 << i) == 1 {
                mask |= 1 << i;
            }
        }
        f.trace_mask = mask;
        f
    }

    pub fn degree(&self) -> u32 {
        self.w
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, 2^w.
    pub fn order(&self) -> u32 {
        1 << self.w
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order()
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order()
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        if !self.contains(value) {
            return Err(FieldError::NotAnElement { w: self.w, value });
        }
        Ok(FieldElement { field: *self, value })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let top = 1u32 << self.w;
        let mut r = 0;
        while b != 0 {
            if b & 1 != 0 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        r
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        while e != 0 {
            if e & 1 != 0 {
                r = self.mul(r, a);
            }
            a = self.square(a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::InverseOfZero);
        }
        Ok(self.pow(a, (self.order() - 2) as u64))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^(2^k).
    pub fn frobenius(&self, mut a: u32, k: u32) -> u32 {
        for _ in 0..(k % self.w) {
            a = self.square(a);
        }
        a
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    #[inline]
    pub fn trace(&self, a: u32) -> u32 {
        (a & self.trace_mask).count_ones() & 1
    }

    fn trace_slow(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut c = a;
        for _ in 0..self.w {
            acc ^= c;
            c = self.square(c);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Lowercase hex, zero padded to ceil(w/4) digits so that string order
    /// matches numeric order.
    pub fn to_hex(&self, a: u32) -> String {
        let width = self.w.div_ceil(4) as usize;
        format!("{:0width$x}", a, width = width)
    }

    pub fn from_hex(&self, s: &str) -> Result<u32, FieldError> {
        let v = u32::from_str_radix(s.trim(), 16).map_err(|_| FieldError::BadHex(s.to_string()))?;
        if !self.contains(v) {
            return Err(FieldError::NotAnElement { w: self.w, value: v });
        }
        Ok(v)
    }

    /// Self-dual basis: the lexicographically first sorted tuple
    /// e_1 < ... < e_w with Tr(e_i e_j) = δ_ij.
    pub fn self_dual_basis(&self) -> SelfDualBasis {
        let mut chosen = Vec::with_capacity(self.w as usize);
        let found = self.extend_orthonormal(&mut chosen, 1);
        assert!(found, "no self-dual basis found for {:?}", self);
        SelfDualBasis {
            field: *self,
            elements: chosen,
        }
    }

    fn extend_orthonormal(&self, chosen: &mut Vec<u32>, start: u32) -> bool {
        if chosen.len() == self.w as usize {
            return true;
        }
        for e in start..self.order() {
            if self.trace(e) != 1 {
                continue;
            }
            if chosen.iter().any(|&c| self.trace(self.mul(c, e)) != 0) {
                continue;
            }
            chosen.push(e);
            if self.extend_orthonormal(chosen, e + 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// A checked element that knows its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: BinaryField,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.to_hex(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.to_hex(self.value))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arith {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

impl FieldElement {
    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(FieldElement {
            field: self.field,
            value: self.value ^ other.value,
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(FieldElement {
            field: self.field,
            value: self.field.mul(self.value, other.value),
        })
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(FieldElement {
            field: self.field,
            value: self.field.inv(self.value)?,
        })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            field: self.field,
            value: self.field.pow(self.value, e),
        }
    }

    pub fn trace(&self) -> u32 {
        self.field.trace(self.value)
    }

    pub fn frobenius(&self, k: u32) -> FieldElement {
        FieldElement {
            field: self.field,
            value: self.field.frobenius(self.value, k),
        }
    }

    /// Single entry point for the binary/unary operations; `rhs` is ignored
    /// by `Inv` and `Pow`.
    pub fn arith(
        op: Arith,
        a: &FieldElement,
        rhs: Option<&FieldElement>,
    ) -> Result<FieldElement, FieldError> {
        match op {
            Arith::Add => a.add(rhs.ok_or(FieldError::MixedFields)?),
            Arith::Mul => a.mul(rhs.ok_or(FieldError::MixedFields)?),
            Arith::Inv => a.inv(),
            Arith::Pow(e) => Ok(a.pow(e)),
        }
    }
}

/// Basis e_1..e_w of GF(2^w) over GF(2) with Tr(e_i e_j) = δ_ij.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualBasis {
    field: BinaryField,
    elements: Vec<u32>,
}

impl SelfDualBasis {
    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Coordinates (a_1..a_w) with a = Σ a_j e_j, as bit j-1 of the result.
    /// Self-duality gives a_j = Tr(a e_j).
    pub fn expand(&self, a: u32) -> u32 {
        let mut bits = 0;
        for (j, &e) in self.elements.iter().enumerate() {
            bits |= self.field.trace(self.field.mul(a, e)) << j;
        }
        bits
    }

    pub fn expand_element(&self, a: &FieldElement) -> Result<Vec<u8>, FieldError> {
        if a.field != self.field {
            return Err(FieldError::BasisMismatch);
        }
        let bits = self.expand(a.value);
        Ok((0..self.field.w).map(|j| ((bits >> j) & 1) as u8).collect())
    }

    /// Inverse of [`expand`](Self::expand).
    pub fn combine(&self, bits: u32) -> u32 {
        self.elements
            .iter()
            .enumerate()
            .filter(|(j, _)| bits >> j & 1 == 1)
            .fold(0, |acc, (_, &e)| acc ^ e)
    }
}

/// Carry-less polynomial remainder over GF(2).
fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        let shift = (63 - a.leading_zeros()) - db;
        a ^= b << shift;
    }
    a
}

/// Trial division by every polynomial of degree 1..=w/2.
pub fn is_irreducible_gf2(poly: u32, w: u32) -> bool {
    if poly >> w != 1 {
        return false;
    }
    for d in 1..=w / 2 {
        for q in (1u64 << d)..(1u64 << (d + 1)) {
            if gf2_rem(poly as u64, q) == 0 {
                return false;
            }
        }
    }
    true
}

pub fn smallest_irreducible(w: u32) -> u32 {
    ((1u32 << w)..(1u32 << (w + 1)))
        .find(|&p| is_irreducible_gf2(p, w))
        .expect("irreducible polynomials exist in every degree")
}

/// GF(q^2) built as an independent field of degree 2w, together with an
/// embedding of GF(q) and a decomposition over the basis {1, θ}.
#[derive(Debug, Clone)]
pub struct QuadraticExtension {
    base: BinaryField,
    big: BinaryField,
    embed: Vec<u32>,
    theta: u32,
    /// big-field element -> (c0, c1) packed as c0 | c1 << w.
    split: Vec<u32>,
}

impl QuadraticExtension {
    pub fn new(base: BinaryField) -> Result<Self, FieldError> {
        let w = base.degree();
        if 2 * w > 12 {
            return Err(FieldError::DegreeOutOfRange(2 * w));
        }
        let big = BinaryField::new(2 * w)?;
        // image of x: the smallest root of the base modulus inside big
        let root = big
            .elements()
            .find(|&r| {
                let mut acc = 0;
                for i in (0..=w).rev() {
                    acc = big.mul(acc, r) ^ ((base.modulus() >> i) & 1);
                }
                acc == 0 && (w > 1 || r == 0)
            })
            .expect("base modulus splits in the quadratic extension");
        let embed: Vec<u32> = base
            .elements()
            .map(|c| {
                let mut acc = 0;
                for i in (0..w).rev() {
                    acc = big.mul(acc, root) ^ ((c >> i) & 1);
                }
                acc
            })
            .collect();
        let mut in_image = vec![false; big.order() as usize];
        for &e in &embed {
            in_image[e as usize] = true;
        }
        let theta = big
            .elements()
            .find(|&e| !in_image[e as usize])
            .expect("proper extension");
        let mut split = vec![u32::MAX; big.order() as usize];
        for c0 in base.elements() {
            for c1 in base.elements() {
                let z = embed[c0 as usize] ^ big.mul(embed[c1 as usize], theta);
                split[z as usize] = c0 | (c1 << w);
            }
        }
        debug_assert!(split.iter().all(|&s| s != u32::MAX));
        Ok(Self {
            base,
            big,
            embed,
            theta,
            split,
        })
    }

    pub fn base(&self) -> BinaryField {
        self.base
    }

    pub fn big(&self) -> BinaryField {
        self.big
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    #[inline]
    pub fn embed(&self, a: u32) -> u32 {
        self.embed[a as usize]
    }

    /// (c0, c1) in GF(q) with z = c0 + c1·θ.
    pub fn decompose(&self, z: u32) -> (u32, u32) {
        let s = self.split[z as usize];
        let mask = self.base.order() - 1;
        (s & mask, s >> self.base.degree())
    }

    pub fn is_base(&self, z: u32) -> bool {
        self.decompose(z).1 == 0
    }

    /// Inverse of `embed` on the image; `None` outside GF(q).
    pub fn restrict(&self, z: u32) -> Option<u32> {
        let (c0, c1) = self.decompose(z);
        (c1 == 0).then_some(c0)
    }

    /// The q-power Frobenius of the big field.
    pub fn conjugate(&self, z: u32) -> u32 {
        self.big.frobenius(z, self.base.degree())
    }
}
