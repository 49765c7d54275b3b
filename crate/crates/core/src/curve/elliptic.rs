//! The genus-one curve y² + y = x³ over GF(2^w).
//!
//! Over GF(4) this is the Hermitian curve for q = 2 with nine rational
//! points. F_y = 1 in characteristic 2, so x - a is a local parameter at
//! every affine point; at O the parameter is t = x/y.

use crate::field::{BinaryField, QuadraticExtension};
use crate::matrix::Matrix;
use crate::poly::{self, Poly};
use crate::series::Series;

use super::line::finish_expansion;
use super::{CurveBackend, CurveError, Divisor, EllipticPlace, Function, LocalExpansion, Place};

#[derive(Debug, Clone)]
pub struct EllipticCurve {
    field: BinaryField,
    ext: QuadraticExtension,
}

impl EllipticCurve {
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

    /// Solutions y of y² + y = x³ in the big field.
    fn ys_over(&self, x: u32) -> Vec<u32> {
        let big = self.ext.big();
        let rhs = big.mul(big.square(x), x);
        big.elements()
            .filter(|&y| big.square(y) ^ y == rhs)
            .collect()
    }

    fn on_curve_big(&self, x: u32, y: u32) -> bool {
        let big = self.ext.big();
        big.square(y) ^ y == big.mul(big.square(x), x)
    }

    /// Canonical place of a big-field point.
    fn place_of(&self, x: u32, y: u32) -> Place {
        match (self.ext.restrict(x), self.ext.restrict(y)) {
            (Some(a), Some(b)) => Place::Elliptic(EllipticPlace::Point { x: a, y: b }),
            _ => {
                let c = (self.ext.conjugate(x), self.ext.conjugate(y));
                let (kx, ky) = (x, y).min(c);
                Place::Elliptic(EllipticPlace::Orbit { x: kx, y: ky })
            }
        }
    }

    /// Representative big-field point of a finite place.
    fn anchor(&self, p: &EllipticPlace) -> Option<(u32, u32)> {
        match *p {
            EllipticPlace::Infinity => None,
            EllipticPlace::Point { x, y } => Some((self.ext.embed(x), self.ext.embed(y))),
            EllipticPlace::Orbit { x, y } => Some((x, y)),
        }
    }

    /// Minimal polynomial over GF(q) of the x-coordinate of a finite place.
    fn x_min_poly(&self, p: &EllipticPlace) -> Poly {
        let (x, _) = self.anchor(p).expect("finite place");
        let xc = self.ext.conjugate(x);
        if xc == x {
            vec![self.ext.restrict(x).expect("fixed by Frobenius"), 1]
        } else {
            let big = self.ext.big();
            let c0 = self.ext.restrict(big.mul(x, xc)).expect("norm lies in GF(q)");
            let c1 = self.ext.restrict(x ^ xc).expect("trace lies in GF(q)");
            vec![c0, c1, 1]
        }
    }

    fn ell_place<'a>(&self, p: &'a Place) -> Result<&'a EllipticPlace, CurveError> {
        match p {
            Place::Elliptic(e) => Ok(e),
            _ => Err(CurveError::BackendMismatch),
        }
    }

    fn parts<'a>(&self, f: &'a Function) -> Result<(&'a Poly, &'a Poly, &'a Poly), CurveError> {
        match f {
            Function::Elliptic { a, b, c } => Ok((a, b, c)),
            _ => Err(CurveError::BackendMismatch),
        }
    }

    /// Canonical (a + b y)/c: common factor removed and c monic.
    pub fn function(&self, a: Poly, b: Poly, c: Poly) -> Function {
        let f = &self.field;
        let g = poly::gcd(f, &poly::gcd(f, &a, &b), &c);
        let g = if poly::is_zero(&g) { poly::one() } else { g };
        let (a, _) = poly::divrem(f, &a, &g);
        let (b, _) = poly::divrem(f, &b, &g);
        let (c, _) = poly::divrem(f, &c, &g);
        let inv = f.inv(c[c.len() - 1]).expect("nonzero denominator");
        Function::Elliptic {
            a: poly::scale(f, &a, inv),
            b: poly::scale(f, &b, inv),
            c: poly::scale(f, &c, inv),
        }
    }

    fn monomial(&self, i: usize, j: usize) -> Function {
        let m = poly::monomial(i);
        if j == 0 {
            self.function(m, Vec::new(), poly::one())
        } else {
            self.function(Vec::new(), m, poly::one())
        }
    }

    /// Series of (a + b y)/c at a place with working relative precision `prec`.
    fn series_at(
        &self,
        a: &[u32],
        b: &[u32],
        c: &[u32],
        p: &EllipticPlace,
        prec: usize,
    ) -> Series {
        let big = self.ext.big();
        let emb = |q: &[u32]| poly::map(q, |v| self.ext.embed(v));
        let (ae, be, ce) = (emb(a), emb(b), emb(c));
        match self.anchor(p) {
            None => {
                // w = 1/y satisfies w + w² = t³ with t = x/y
                let mut wc = vec![0u32; prec + 3];
                for i in 1..wc.len() {
                    let sq = if i % 2 == 0 { big.square(wc[i / 2]) } else { 0 };
                    wc[i] = u32::from(i == 3) ^ sq;
                }
                let w = Series {
                    val: 3,
                    coeffs: wc[3..3 + prec].to_vec(),
                };
                let y = w.inv(&big).expect("w is nonzero");
                let x = Series::t_power(1, prec).mul(&big, &y);
                let num = Series::compose_poly(&big, &ae, &x, prec)
                    .add(&Series::compose_poly(&big, &be, &x, prec).mul(&big, &y));
                let den = Series::compose_poly(&big, &ce, &x, prec);
                num.mul(&big, &den.inv(&big).expect("nonzero denominator"))
            }
            Some((x0, y0)) => {
                // y = y0 + u(t), u + u² = x0² t + x0 t² + t³, t = x - x0
                let mut uc = vec![0u32; prec];
                let rhs = [0, big.square(x0), x0, 1];
                for i in 1..prec {
                    let sq = if i % 2 == 0 { big.square(uc[i / 2]) } else { 0 };
                    uc[i] = rhs.get(i).copied().unwrap_or(0) ^ sq;
                }
                uc[0] = y0;
                let y = Series { val: 0, coeffs: uc };
                let shift = |q: &[u32]| Series::from_poly(&poly::taylor_shift(&big, q, x0), prec);
                let num = shift(&ae).add(&shift(&be).mul(&big, &y));
                let den = shift(&ce);
                num.mul(&big, &den.inv(&big).expect("nonzero denominator"))
            }
        }
    }
}

impl CurveBackend for EllipticCurve {
    fn name(&self) -> String {
        format!("elliptic-gf{}", self.field.order())
    }

    fn field(&self) -> BinaryField {
        self.field
    }

    fn genus(&self) -> u32 {
        1
    }

    /// O first, then affine points by (x, y).
    fn rational_places(&self) -> Vec<Place> {
        let f = &self.field;
        let mut out = vec![Place::Elliptic(EllipticPlace::Infinity)];
        for x in f.elements() {
            let rhs = f.mul(f.square(x), x);
            for y in f.elements() {
                if f.square(y) ^ y == rhs {
                    out.push(Place::Elliptic(EllipticPlace::Point { x, y }));
                }
            }
        }
        out
    }

    fn places_of_degree(&self, d: u32) -> Result<Vec<Place>, CurveError> {
        match d {
            1 => Ok(self.rational_places()),
            2 => {
                let big = self.ext.big();
                let mut out = Vec::new();
                for x in big.elements() {
                    for y in self.ys_over(x) {
                        if self.ext.is_base(x) && self.ext.is_base(y) {
                            continue;
                        }
                        let p = self.place_of(x, y);
                        if !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
                out.sort();
                Ok(out)
            }
            _ => Err(CurveError::UnsupportedDegree(d)),
        }
    }

    /// Shift finite poles to O with Z = Π m_P(x)^{e}, search inside
    /// L(N·O) = span{x^i y^j : j <= 1, 2i + 3j <= N} for functions vanishing
    /// to the required order at the zeros of Z, then divide by Z.
    fn rr_space(&self, g: &Divisor) -> Result<Vec<Function>, CurveError> {
        let f = self.field;
        let mut n_o = 0i64;
        // minimal polynomial -> exponent
        let mut factors: Vec<(Poly, i64)> = Vec::new();
        for (p, c) in g.iter() {
            let ep = self.ell_place(p)?;
            if c < 0 {
                return Err(CurveError::NotEffective(self.place_to_string(p)));
            }
            if !self.owns(p) {
                return Err(CurveError::UnsupportedPlace(self.place_to_string(p)));
            }
            match ep {
                EllipticPlace::Infinity => n_o = c,
                _ => {
                    let m = self.x_min_poly(ep);
                    match factors.iter_mut().find(|(q, _)| *q == m) {
                        Some((_, e)) => *e = (*e).max(c),
                        None => factors.push((m, c)),
                    }
                }
            }
        }
        let mut z = poly::one();
        for (m, e) in &factors {
            z = poly::mul(&f, &z, &poly::pow(&f, m, *e as u32));
        }
        let n = n_o as usize + 2 * poly::degree(&z).unwrap();
        let mut monos: Vec<(usize, usize)> = Vec::new();
        for order in 0..=n {
            if order == 1 {
                continue;
            }
            let (i, j) = if order % 2 == 0 { (order / 2, 0) } else { ((order - 3) / 2, 1) };
            monos.push((i, j));
        }

        // vanishing conditions at the zeros of Z
        let big = self.ext.big();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (m, e) in &factors {
            let m_big = poly::map(m, |c| self.ext.embed(c));
            let x0 = big
                .elements()
                .find(|&z| poly::eval(&big, &m_big, z) == 0)
                .expect("x-polynomial splits over GF(q^2)");
            let ys = self.ys_over(x0);
            let mut points: Vec<(u32, u32)> = Vec::new();
            for &y in &ys {
                let p = self.place_of(x0, y);
                // both ys over a rational x may form a single degree-2 place
                if points.iter().any(|&(px, py)| self.place_of(px, py) == p) {
                    continue;
                }
                points.push((x0, y));
            }
            for (px, py) in points {
                let place = self.place_of(px, py);
                let need = e - g.coeff(&place);
                if need <= 0 {
                    continue;
                }
                let Place::Elliptic(ep) = &place else { unreachable!() };
                let ep = match ep {
                    EllipticPlace::Orbit { .. } => EllipticPlace::Orbit { x: px, y: py },
                    other => other.clone(),
                };
                let expansions: Vec<Series> = monos
                    .iter()
                    .map(|&(i, j)| {
                        let xi = poly::monomial(i);
                        let (a, b) = if j == 0 { (xi, Vec::new()) } else { (Vec::new(), xi) };
                        self.series_at(&a, &b, &poly::one(), &ep, need as usize + 2 * n + 8)
                    })
                    .collect();
                for k in 0..need {
                    let coeffs: Vec<u32> = expansions
                        .iter()
                        .map(|s| s.coeff(k).expect("enough precision"))
                        .collect();
                    let (r0, r1): (Vec<u32>, Vec<u32>) =
                        coeffs.iter().map(|&c| self.ext.decompose(c)).unzip();
                    rows.push(r0);
                    rows.push(r1);
                }
            }
        }
        let sols = if rows.is_empty() {
            Matrix::identity(f, monos.len())
        } else {
            Matrix::from_rows(f, monos.len(), &rows).null_space()
        };
        let mut out = Vec::with_capacity(sols.rows());
        for r in 0..sols.rows() {
            let mut a: Poly = Vec::new();
            let mut b: Poly = Vec::new();
            for (k, &(i, j)) in monos.iter().enumerate() {
                let c = sols.get(r, k);
                if c == 0 {
                    continue;
                }
                let target = if j == 0 { &mut a } else { &mut b };
                if target.len() <= i {
                    target.resize(i + 1, 0);
                }
                target[i] ^= c;
            }
            out.push(self.function(poly::trim(a), poly::trim(b), z.clone()));
        }
        Ok(out)
    }

    fn evaluate(&self, func: &Function, p: &Place) -> Result<u32, CurveError> {
        let (a, b, c) = self.parts(func)?;
        let f = &self.field;
        let ep = self.ell_place(p)?;
        if let EllipticPlace::Point { x, y } = *ep {
            let cv = poly::eval(f, c, x);
            if cv != 0 {
                let nv = poly::eval(f, a, x) ^ f.mul(poly::eval(f, b, x), y);
                return Ok(f.div(nv, cv)?);
            }
        }
        if p.degree() != 1 {
            return Err(CurveError::UnsupportedPlace(format!(
                "evaluation at degree-2 place {}",
                self.place_to_string(p)
            )));
        }
        let e = self.local_expansion(func, p, 1)?;
        match e.valuation {
            None => Ok(0),
            Some(v) if v < 0 => Err(CurveError::Pole(self.place_to_string(p))),
            Some(_) => Ok(e.coeff(0)),
        }
    }

    fn local_expansion(
        &self,
        func: &Function,
        p: &Place,
        order: usize,
    ) -> Result<LocalExpansion, CurveError> {
        let (a, b, c) = self.parts(func)?;
        let ep = self.ell_place(p)?;
        if func.is_zero() {
            return Ok(LocalExpansion {
                valuation: None,
                start: 0,
                coeffs: vec![0; order],
            });
        }
        let size = a.len() + b.len() + c.len();
        let mut prec = order + 2 * size + 8;
        for _ in 0..6 {
            let s = self.series_at(a, b, c, ep, prec);
            if let Ok(e) = finish_expansion(&self.ext, s, p.degree(), order, || self.place_to_string(p)) {
                return Ok(e);
            }
            prec *= 2;
        }
        Err(CurveError::Precision(self.place_to_string(p)))
    }

    fn owns(&self, p: &Place) -> bool {
        match p {
            Place::Elliptic(EllipticPlace::Infinity) => true,
            Place::Elliptic(EllipticPlace::Point { x, y }) => {
                self.field.contains(*x)
                    && self.field.contains(*y)
                    && self.on_curve_big(self.ext.embed(*x), self.ext.embed(*y))
            }
            Place::Elliptic(EllipticPlace::Orbit { x, y }) => {
                self.ext.big().contains(*x)
                    && self.ext.big().contains(*y)
                    && self.on_curve_big(*x, *y)
                    && self.place_of(*x, *y) == *p
            }
            _ => false,
        }
    }

    fn place_to_string(&self, p: &Place) -> String {
        let (f, big) = (&self.field, self.ext.big());
        match p {
            Place::Elliptic(EllipticPlace::Infinity) => "O".into(),
            Place::Elliptic(EllipticPlace::Point { x, y }) => {
                format!("({},{})", f.to_hex(*x), f.to_hex(*y))
            }
            Place::Elliptic(EllipticPlace::Orbit { x, y }) => {
                format!("orbit({},{})", big.to_hex(*x), big.to_hex(*y))
            }
            other => format!("{other:?}"),
        }
    }

    fn parse_place(&self, s: &str) -> Result<Place, CurveError> {
        let bad = || CurveError::BadPlace(s.to_string());
        let s = s.trim();
        if s == "O" {
            return Ok(Place::Elliptic(EllipticPlace::Infinity));
        }
        let (orbit, body) = match s.strip_prefix("orbit") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let inner = body
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (hx, hy) = inner.split_once(',').ok_or_else(bad)?;
        let fld = if orbit { self.ext.big() } else { self.field };
        let x = fld.from_hex(hx).map_err(|_| bad())?;
        let y = fld.from_hex(hy).map_err(|_| bad())?;
        let place = if orbit {
            Place::Elliptic(EllipticPlace::Orbit { x, y })
        } else {
            Place::Elliptic(EllipticPlace::Point { x, y })
        };
        if !self.owns(&place) {
            return Err(bad());
        }
        Ok(place)
    }

    fn function_to_string(&self, func: &Function) -> String {
        use super::text::poly_to_string;
        match func {
            Function::Elliptic { a, b, c } => {
                let f = &self.field;
                let mut num = Vec::new();
                if !poly::is_zero(a) {
                    num.push(poly_to_string(f, a));
                }
                if !poly::is_zero(b) {
                    num.push(if b == &poly::one() {
                        "y".to_string()
                    } else {
                        format!("({})*y", poly_to_string(f, b))
                    });
                }
                let num = if num.is_empty() { "0".to_string() } else { num.join("+") };
                if c == &poly::one() {
                    num
                } else {
                    format!("({})/({})", num, poly_to_string(f, c))
                }
            }
            other => format!("{other:?}"),
        }
    }

    fn one(&self) -> Function {
        self.monomial(0, 0)
    }
}
