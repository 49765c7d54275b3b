//! The projective line over GF(2^w).

use crate::field::{BinaryField, QuadraticExtension};
use crate::poly::{self, Poly};
use crate::series::Series;

use super::text;
use super::{CurveBackend, CurveError, Divisor, Function, LinePlace, LocalExpansion, Place};

#[derive(Debug, Clone)]
pub struct ProjectiveLine {
    field: BinaryField,
    ext: QuadraticExtension,
}

impl ProjectiveLine {
    /// Supported for 1 <= w <= 4.
    pub fn new(w: u32) -> Result<Self, CurveError> {
        if !(1..=4).contains(&w) {
            return Err(CurveError::Field(crate::field::FieldError::DegreeOutOfRange(w)));
        }
        let field = BinaryField::new(w)?;
        Ok(Self {
            field,
            ext: QuadraticExtension::new(field)?,
        })
    }

    fn reduce(&self, num: &[u32], den: &[u32]) -> Function {
        let f = &self.field;
        let g = poly::gcd(f, num, den);
        let (n, _) = poly::divrem(f, num, &g);
        let (d, _) = poly::divrem(f, den, &g);
        let lead = d[d.len() - 1];
        let inv = f.inv(lead).expect("nonzero");
        Function::Line {
            num: poly::scale(f, &n, inv),
            den: poly::scale(f, &d, inv),
        }
    }

    pub fn rational(&self, num: Poly, den: Poly) -> Function {
        self.reduce(&num, &den)
    }

    fn parts<'a>(&self, f: &'a Function) -> Result<(&'a Poly, &'a Poly), CurveError> {
        match f {
            Function::Line { num, den } => Ok((num, den)),
            _ => Err(CurveError::BackendMismatch),
        }
    }

    fn line_place<'a>(&self, p: &'a Place) -> Result<&'a LinePlace, CurveError> {
        match p {
            Place::Line(lp) => Ok(lp),
            _ => Err(CurveError::BackendMismatch),
        }
    }

    /// The point of the place over GF(q²) used for the local parameter.
    fn anchor(&self, g: &[u32]) -> u32 {
        let big = self.ext.big();
        let emb = poly::map(g, |c| self.ext.embed(c));
        big.elements()
            .find(|&z| poly::eval(&big, &emb, z) == 0)
            .expect("degree <= 2 places split over GF(q^2)")
    }
}

impl CurveBackend for ProjectiveLine {
    fn name(&self) -> String {
        format!("p1-gf{}", self.field.order())
    }

    fn field(&self) -> BinaryField {
        self.field
    }

    fn genus(&self) -> u32 {
        0
    }

    fn rational_places(&self) -> Vec<Place> {
        let mut out: Vec<Place> = self
            .field
            .elements()
            .map(|a| Place::Line(LinePlace::Finite(vec![a, 1])))
            .collect();
        out.push(Place::Line(LinePlace::Infinity));
        out
    }

    /// Degree-2 places are the monic irreducible quadratics x² + bx + c,
    /// ordered by (b, c).
    fn places_of_degree(&self, d: u32) -> Result<Vec<Place>, CurveError> {
        match d {
            1 => Ok(self.rational_places()),
            2 => {
                let f = &self.field;
                let mut out = Vec::new();
                for b in f.elements() {
                    for c in f.elements() {
                        let p = vec![c, b, 1];
                        if !poly::has_root(f, &p) {
                            out.push(Place::Line(LinePlace::Finite(p)));
                        }
                    }
                }
                Ok(out)
            }
            _ => Err(CurveError::UnsupportedDegree(d)),
        }
    }

    /// L(G) = { h / Π g_i^{n_i} : deg h <= deg Π g_i^{n_i} + n_∞ }, with
    /// monomial numerators in increasing degree.
    fn rr_space(&self, g: &Divisor) -> Result<Vec<Function>, CurveError> {
        let f = &self.field;
        let mut den = poly::one();
        let mut n_inf = 0i64;
        for (p, c) in g.iter() {
            let lp = self.line_place(p)?;
            if c < 0 {
                return Err(CurveError::NotEffective(self.place_to_string(p)));
            }
            if p.degree() > 2 {
                return Err(CurveError::UnsupportedDegree(p.degree()));
            }
            match lp {
                LinePlace::Infinity => n_inf = c,
                LinePlace::Finite(q) => den = poly::mul(f, &den, &poly::pow(f, q, c as u32)),
            }
        }
        let top = poly::degree(&den).unwrap() as i64 + n_inf;
        Ok((0..=top as usize)
            .map(|j| self.reduce(&poly::monomial(j), &den))
            .collect())
    }

    fn evaluate(&self, func: &Function, p: &Place) -> Result<u32, CurveError> {
        let f = &self.field;
        let (num, den) = self.parts(func)?;
        let pole = || CurveError::Pole(self.place_to_string(p));
        match self.line_place(p)? {
            LinePlace::Infinity => {
                let dn = poly::degree(num);
                let dd = poly::degree(den).unwrap();
                match dn {
                    None => Ok(0),
                    Some(dn) if dn < dd => Ok(0),
                    Some(dn) if dn == dd => Ok(f.div(num[dn], den[dd])?),
                    Some(_) => Err(pole()),
                }
            }
            LinePlace::Finite(q) if q.len() == 2 => {
                let a = q[0];
                let dv = poly::eval(f, den, a);
                if dv == 0 {
                    return Err(pole());
                }
                Ok(f.div(poly::eval(f, num, a), dv)?)
            }
            LinePlace::Finite(_) => Err(CurveError::UnsupportedPlace(format!(
                "evaluation at degree-2 place {}",
                self.place_to_string(p)
            ))),
        }
    }

    fn local_expansion(
        &self,
        func: &Function,
        p: &Place,
        order: usize,
    ) -> Result<LocalExpansion, CurveError> {
        let (num, den) = self.parts(func)?;
        let big = self.ext.big();
        let num_e = poly::map(num, |c| self.ext.embed(c));
        let den_e = poly::map(den, |c| self.ext.embed(c));
        let lp = self.line_place(p)?;
        if p.degree() > 2 {
            return Err(CurveError::UnsupportedDegree(p.degree()));
        }
        if poly::is_zero(num) {
            return Ok(LocalExpansion {
                valuation: None,
                start: 0,
                coeffs: vec![0; order],
            });
        }
        let dn = poly::degree(num).unwrap();
        let dd = poly::degree(den).unwrap();
        let prec = order + dn + dd + 4;
        let (n_s, d_s) = match lp {
            LinePlace::Infinity => {
                // t = 1/x: num(1/t)/den(1/t) = t^(dd - dn) rev(num)/rev(den)
                let mut n_s = Series::from_poly(&poly::reversed(&num_e, dn), prec);
                n_s.val -= dn as i64;
                let mut d_s = Series::from_poly(&poly::reversed(&den_e, dd), prec);
                d_s.val -= dd as i64;
                (n_s, d_s)
            }
            LinePlace::Finite(q) => {
                let theta = self.anchor(q);
                (
                    Series::from_poly(&poly::taylor_shift(&big, &num_e, theta), prec),
                    Series::from_poly(&poly::taylor_shift(&big, &den_e, theta), prec),
                )
            }
        };
        let s = n_s.mul(&big, &d_s.inv(&big).expect("denominator is nonzero"));
        finish_expansion(&self.ext, s, p.degree(), order, || self.place_to_string(p))
    }

    fn owns(&self, p: &Place) -> bool {
        match p {
            Place::Line(LinePlace::Infinity) => true,
            Place::Line(LinePlace::Finite(q)) => {
                q.len() >= 2
                    && q.len() <= 3
                    && q.last() == Some(&1)
                    && q.iter().all(|&c| self.field.contains(c))
                    && !poly::has_root(&self.field, q) == (q.len() == 3)
            }
            _ => false,
        }
    }

    fn place_to_string(&self, p: &Place) -> String {
        match p {
            Place::Line(LinePlace::Infinity) => "inf".into(),
            Place::Line(LinePlace::Finite(q)) => text::poly_to_string(&self.field, q),
            other => format!("{other:?}"),
        }
    }

    fn parse_place(&self, s: &str) -> Result<Place, CurveError> {
        if s.trim() == "inf" {
            return Ok(Place::Line(LinePlace::Infinity));
        }
        let q = text::parse_poly(&self.field, s)?;
        let place = Place::Line(LinePlace::Finite(q));
        if !self.owns(&place) {
            return Err(CurveError::BadPlace(s.to_string()));
        }
        Ok(place)
    }

    fn function_to_string(&self, f: &Function) -> String {
        match f {
            Function::Line { num, den } if den.len() == 1 => text::poly_to_string(&self.field, num),
            Function::Line { num, den } => format!(
                "({})/({})",
                text::poly_to_string(&self.field, num),
                text::poly_to_string(&self.field, den)
            ),
            other => format!("{other:?}"),
        }
    }

    fn one(&self) -> Function {
        Function::Line {
            num: poly::one(),
            den: poly::one(),
        }
    }
}

/// Package a series (over the big field) as a local expansion in the residue
/// field of a place of the given degree.
pub(super) fn finish_expansion(
    ext: &QuadraticExtension,
    s: Series,
    degree: u32,
    order: usize,
    name: impl Fn() -> String,
) -> Result<LocalExpansion, CurveError> {
    if s.is_zero() {
        return Err(CurveError::Precision(name()));
    }
    let start = s.val.min(0);
    let mut coeffs = Vec::with_capacity(order);
    for k in start..start + order as i64 {
        let c = s.coeff(k).ok_or_else(|| CurveError::Precision(name()))?;
        let c = if degree == 1 {
            ext.restrict(c).ok_or_else(|| CurveError::Precision(name()))?
        } else {
            c
        };
        coeffs.push(c);
    }
    Ok(LocalExpansion {
        valuation: Some(s.val),
        start,
        coeffs,
    })
}
