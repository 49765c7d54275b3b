//! Polynomial text for P1 place names, e.g. `x^2+x+w` or `x+w^2`.
//!
//! Nonzero coefficients are written as powers of w, the class of x in the
//! field's polynomial basis (primitive for every pinned modulus with
//! w <= 4). `{hex}` is accepted as an alternative coefficient spelling.

use crate::field::BinaryField;
use crate::poly::{self, Poly};

use super::CurveError;

fn discrete_log(f: &BinaryField, c: u32) -> Option<u64> {
    let gen = if f.degree() == 1 { 1 } else { 2 };
    let mut acc = 1;
    for k in 0..f.order() as u64 {
        if acc == c {
            return Some(k);
        }
        acc = f.mul(acc, gen);
    }
    None
}

pub fn coeff_to_string(f: &BinaryField, c: u32) -> String {
    match c {
        0 => "0".into(),
        1 => "1".into(),
        _ => match discrete_log(f, c) {
            Some(1) => "w".into(),
            Some(k) => format!("w^{k}"),
            None => format!("{{{}}}", f.to_hex(c)),
        },
    }
}

pub fn parse_coeff(f: &BinaryField, s: &str) -> Result<u32, CurveError> {
    let bad = || CurveError::BadPlace(s.to_string());
    let s = s.trim();
    if let Some(hex) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        return f.from_hex(hex).map_err(|_| bad());
    }
    match s {
        "0" => Ok(0),
        "1" => Ok(1),
        "w" if f.degree() > 1 => Ok(2),
        _ => {
            let k: u64 = s
                .strip_prefix("w^")
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            if f.degree() == 1 {
                return Err(bad());
            }
            Ok(f.pow(2, k))
        }
    }
}

pub fn poly_to_string(f: &BinaryField, p: &[u32]) -> String {
    let mut terms = Vec::new();
    for (d, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let xpart = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{d}"),
        };
        let term = if d == 0 {
            coeff_to_string(f, c)
        } else if c == 1 {
            xpart
        } else {
            format!("{}*{}", coeff_to_string(f, c), xpart)
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn parse_poly(f: &BinaryField, s: &str) -> Result<Poly, CurveError> {
    let bad = || CurveError::BadPlace(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out: Poly = Vec::new();
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, deg) = match term.rfind('x') {
            None => (parse_coeff(f, term)?, 0usize),
            Some(i) => {
                let head = &term[..i];
                let tail = &term[i + 1..];
                let coef = match head.strip_suffix('*') {
                    Some(c) => parse_coeff(f, c)?,
                    None if head.is_empty() => 1,
                    None => return Err(bad()),
                };
                let deg = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .ok_or_else(bad)?
                        .parse()
                        .map_err(|_| bad())?
                };
                (coef, deg)
            }
        };
        if out.len() <= deg {
            out.resize(deg + 1, 0);
        }
        out[deg] ^= coef;
    }
    Ok(poly::trim(out))
}
