//! Curve backends, places, divisors and Riemann-Roch spaces.
//!
//! Two backends are provided: the projective line over GF(2^w) and the
//! genus-one curve y² + y = x³ (the q = 2 Hermitian curve), both exposing
//! the [`CurveBackend`] interface the AG-code layer builds on.

mod elliptic;
mod line;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{BinaryField, FieldError};
use crate::poly::Poly;

pub use elliptic::EllipticCurve;
pub use line::ProjectiveLine;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("places of degree {0} are not supported")]
    UnsupportedDegree(u32),
    #[error("unsupported place {0}")]
    UnsupportedPlace(String),
    #[error("divisor has negative coefficient at {0}")]
    NotEffective(String),
    #[error("places belong to different curve backends")]
    BackendMismatch,
    #[error("function has a pole at {0}")]
    Pole(String),
    #[error("cannot parse place {0:?}")]
    BadPlace(String),
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("local expansion did not converge at {0}")]
    Precision(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinePlace {
    /// Zero locus of a monic irreducible polynomial (low degree first).
    Finite(Poly),
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EllipticPlace {
    Infinity,
    /// GF(q)-rational affine point.
    Point { x: u32, y: u32 },
    /// Degree-2 place, keyed by the smaller member of its Frobenius orbit
    /// (coordinates in GF(q²)).
    Orbit { x: u32, y: u32 },
}

/// A closed point of one of the backends.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Line(LinePlace),
    Elliptic(EllipticPlace),
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Line(LinePlace::Infinity) => 1,
            Place::Line(LinePlace::Finite(p)) => (p.len() - 1) as u32,
            Place::Elliptic(EllipticPlace::Orbit { .. }) => 2,
            Place::Elliptic(_) => 1,
        }
    }

    fn kind(&self) -> u8 {
        match self {
            Place::Line(_) => 0,
            Place::Elliptic(_) => 1,
        }
    }
}

/// A finite formal sum of places with nonzero integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(place: Place, coeff: i64) -> Self {
        let mut d = Self::zero();
        d.set(place, coeff);
        d
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Place, i64)>) -> Result<Self, CurveError> {
        let mut d = Self::zero();
        for (p, c) in pairs {
            let cur = d.coeff(&p);
            d.set(p, cur + c);
        }
        d.check_kind()?;
        Ok(d)
    }

    fn set(&mut self, place: Place, coeff: i64) {
        if coeff == 0 {
            self.coeffs.remove(&place);
        } else {
            self.coeffs.insert(place, coeff);
        }
    }

    fn check_kind(&self) -> Result<(), CurveError> {
        let mut kinds = self.coeffs.keys().map(Place::kind);
        if let Some(k) = kinds.next() {
            if kinds.any(|o| o != k) {
                return Err(CurveError::BackendMismatch);
            }
        }
        Ok(())
    }

    fn compatible(&self, other: &Divisor) -> Result<(), CurveError> {
        match (self.coeffs.keys().next(), other.coeffs.keys().next()) {
            (Some(a), Some(b)) if a.kind() != b.kind() => Err(CurveError::BackendMismatch),
            _ => Ok(()),
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.iter().map(|(p, c)| c * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    fn combine(&self, other: &Divisor, op: impl Fn(i64, i64) -> i64) -> Result<Divisor, CurveError> {
        self.compatible(other)?;
        let mut d = Divisor::zero();
        for p in self.support().chain(other.support()) {
            d.set(p.clone(), op(self.coeff(p), other.coeff(p)));
        }
        Ok(d)
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor, CurveError> {
        self.combine(other, |a, b| a + b)
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        let mut d = Divisor::zero();
        for (p, c) in self.iter() {
            d.set(p.clone(), c * k);
        }
        d
    }

    /// Coefficient-wise maximum: the smallest divisor dominating both.
    pub fn max(&self, other: &Divisor) -> Result<Divisor, CurveError> {
        self.combine(other, i64::max)
    }

    /// Coefficient-wise minimum: the largest divisor dominated by both.
    pub fn min(&self, other: &Divisor) -> Result<Divisor, CurveError> {
        self.combine(other, i64::min)
    }

    pub fn max_all<'a>(divs: impl IntoIterator<Item = &'a Divisor>) -> Result<Divisor, CurveError> {
        divs.into_iter()
            .try_fold(Divisor::zero(), |acc, d| acc.max(d))
    }

    pub fn disjoint(&self, other: &Divisor) -> Result<bool, CurveError> {
        self.compatible(other)?;
        Ok(self.support().all(|p| other.coeff(p) == 0))
    }
}

/// A rational function on one of the backends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Function {
    /// num(x) / den(x), coprime, den monic.
    Line { num: Poly, den: Poly },
    /// (a(x) + b(x)·y) / c(x) with gcd(a, b, c) = 1 and c monic.
    Elliptic { a: Poly, b: Poly, c: Poly },
}

impl Function {
    pub fn is_zero(&self) -> bool {
        match self {
            Function::Line { num, .. } => crate::poly::is_zero(num),
            Function::Elliptic { a, b, .. } => crate::poly::is_zero(a) && crate::poly::is_zero(b),
        }
    }
}

/// First coefficients of a function in powers of the pinned local parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalExpansion {
    /// Order of vanishing (negative for poles); `None` for the zero function.
    pub valuation: Option<i64>,
    /// Exponent of the first entry of `coeffs`: min(valuation, 0).
    pub start: i64,
    /// Coefficients over the residue field of the place (GF(q) for degree
    /// one, GF(q²) in the backend's extension representation for degree two).
    pub coeffs: Vec<u32>,
}

impl LocalExpansion {
    pub fn coeff(&self, k: i64) -> u32 {
        if k < self.start {
            return 0;
        }
        self.coeffs.get((k - self.start) as usize).copied().unwrap_or(0)
    }
}

/// Operations every curve backend provides.
pub trait CurveBackend: Send + Sync + fmt::Debug {
    /// Stable identifier such as `p1-gf4` or `elliptic-gf4`.
    fn name(&self) -> String;
    fn field(&self) -> BinaryField;
    fn genus(&self) -> u32;
    /// Degree-one places in canonical order.
    fn rational_places(&self) -> Vec<Place>;
    fn places_of_degree(&self, d: u32) -> Result<Vec<Place>, CurveError>;
    /// A basis of L(G) for effective G supported on places of degree <= 2.
    fn rr_space(&self, g: &Divisor) -> Result<Vec<Function>, CurveError>;
    fn evaluate(&self, f: &Function, p: &Place) -> Result<u32, CurveError>;
    fn local_expansion(
        &self,
        f: &Function,
        p: &Place,
        order: usize,
    ) -> Result<LocalExpansion, CurveError>;
    fn owns(&self, p: &Place) -> bool;
    fn place_to_string(&self, p: &Place) -> String;
    fn parse_place(&self, s: &str) -> Result<Place, CurveError>;
    fn function_to_string(&self, f: &Function) -> String;
    /// The constant function 1.
    fn one(&self) -> Function;

    fn valuation(&self, f: &Function, p: &Place) -> Result<Option<i64>, CurveError> {
        Ok(self.local_expansion(f, p, 1)?.valuation)
    }
}

pub type Backend = Arc<dyn CurveBackend>;

/// Backends by name: `p1-gf2`, `p1-gf4`, `p1-gf8`, `p1-gf16`, `elliptic-gf4`.
pub fn backend_by_name(name: &str) -> Result<Backend, CurveError> {
    let b: Backend = match name {
        "p1-gf2" => Arc::new(ProjectiveLine::new(1)?),
        "p1-gf4" => Arc::new(ProjectiveLine::new(2)?),
        "p1-gf8" => Arc::new(ProjectiveLine::new(3)?),
        "p1-gf16" => Arc::new(ProjectiveLine::new(4)?),
        "elliptic-gf4" => Arc::new(EllipticCurve::new(2)?),
        _ => return Err(CurveError::UnknownCurve(name.to_string())),
    };
    Ok(b)
}

/// One `{place, coeff}` entry of the JSON divisor dialect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntry {
    pub place: String,
    pub coeff: i64,
}

pub fn divisor_to_entries(b: &dyn CurveBackend, d: &Divisor) -> Vec<DivisorEntry> {
    d.iter()
        .map(|(p, c)| DivisorEntry {
            place: b.place_to_string(p),
            coeff: c,
        })
        .collect()
}

pub fn divisor_from_entries(b: &dyn CurveBackend, entries: &[DivisorEntry]) -> Result<Divisor, CurveError> {
    let pairs = entries
        .iter()
        .map(|e| Ok((b.parse_place(&e.place)?, e.coeff)))
        .collect::<Result<Vec<_>, CurveError>>()?;
    Divisor::from_pairs(pairs)
}

pub fn divisor_to_string(b: &dyn CurveBackend, d: &Divisor) -> String {
    if d.is_zero() {
        return "0".to_string();
    }
    d.iter()
        .map(|(p, c)| format!("{}·{}", c, b.place_to_string(p)))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests;
