//! Named parameter sets with pinned place orders and divisor choices.

use crate::codes::{catalog, LinearCode};
use crate::curve::{backend_by_name, Backend, Divisor, Place};

use super::{PipelineError, Theorem1Params};

pub const PRESET_NAMES: &[&str] = &[
    "example1",
    "example1-tiny",
    "example1-tiny-h",
    "example2(n,m,t,t')",
    "corollary2-g1",
    "ks-hamming",
    "ks-repetition",
];

#[derive(Debug, Clone)]
pub enum Preset {
    Theorem1(Theorem1Params),
    KurosawaSatoh(LinearCode, LinearCode),
}

/// Same curve, P = P', U_i = U'_i: the construction template.
fn symmetric(b: Backend, places: Vec<Place>, u: Vec<Divisor>, h: Divisor) -> Theorem1Params {
    Theorem1Params {
        curve: b.clone(),
        curve_prime: b,
        places: places.clone(),
        places_prime: places,
        u: u.clone(),
        u_prime: u,
        h,
    }
}

/// P = the first n rational places. Each of U_1..U_m (degree t) and H
/// (degree t', zero when t' = 0) is a multiple of a single place: the first
/// unused degree-2 place when the degree is even, else the first unused
/// rational place outside P.
pub fn example2(n: usize, m: usize, t: i64, tp: i64) -> Result<Theorem1Params, PipelineError> {
    let b = backend_by_name("elliptic-gf4")?;
    let rational = b.rational_places();
    if n > rational.len() {
        return Err(PipelineError::InsufficientPlaces {
            needed: n,
            available: rational.len(),
        });
    }
    let places = rational[..n].to_vec();
    let mut pool: Vec<Place> = b.places_of_degree(2)?;
    pool.extend(rational[n..].iter().cloned());
    let available = pool.len();
    let mut take = |deg: i64| -> Result<Divisor, PipelineError> {
        let i = pool
            .iter()
            .position(|p| deg % p.degree() as i64 == 0)
            .ok_or(PipelineError::InsufficientPlaces {
                needed: m + usize::from(tp > 0),
                available,
            })?;
        let p = pool.remove(i);
        let c = deg / p.degree() as i64;
        Ok(Divisor::single(p, c))
    };
    let u = (0..m).map(|_| take(t)).collect::<Result<Vec<_>, _>>()?;
    let h = if tp > 0 { take(tp)? } else { Divisor::zero() };
    Ok(symmetric(b, places, u, h))
}

fn parse_example2(name: &str) -> Option<(usize, usize, i64, i64)> {
    let inner = name.strip_prefix("example2(")?.strip_suffix(')')?;
    let v: Vec<i64> = inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    match v[..] {
        [n, m, t, tp] if n > 0 && m > 0 && t >= 0 && tp >= 0 => Some((n as usize, m as usize, t, tp)),
        _ => None,
    }
}

pub fn preset(name: &str) -> Result<Preset, PipelineError> {
    match name {
        "example1" => {
            let b = backend_by_name("p1-gf4")?;
            let q = b.places_of_degree(2)?;
            let u = vec![Divisor::single(q[0].clone(), 1), Divisor::single(q[1].clone(), 1)];
            Ok(Preset::Theorem1(symmetric(b.clone(), b.rational_places(), u, Divisor::zero())))
        }
        "example1-tiny" => {
            let b = backend_by_name("p1-gf4")?;
            let pts = b.rational_places();
            let u = vec![Divisor::single(pts[3].clone(), 1)];
            Ok(Preset::Theorem1(symmetric(b, pts[..3].to_vec(), u, Divisor::zero())))
        }
        // as above with H = one place at infinity, so the offsets leave C_2
        "example1-tiny-h" => {
            let b = backend_by_name("p1-gf4")?;
            let pts = b.rational_places();
            let u = vec![Divisor::single(pts[3].clone(), 1)];
            let h = Divisor::single(pts[4].clone(), 1);
            Ok(Preset::Theorem1(symmetric(b, pts[..3].to_vec(), u, h)))
        }
        // m = g = 1, deg U = 2g, deg H = 2: resiliency n - ceil(7g/2) - 1
        "corollary2-g1" => Ok(Preset::Theorem1(example2(7, 1, 2, 2)?)),
        "ks-hamming" => Ok(Preset::KurosawaSatoh(catalog::hamming7(), catalog::hamming7())),
        "ks-repetition" => {
            let gf2 = crate::field::BinaryField::new(1).expect("GF(2)");
            let c = catalog::repetition(gf2, 3);
            Ok(Preset::KurosawaSatoh(c.clone(), c))
        }
        _ => match parse_example2(name) {
            Some((n, m, t, tp)) => Ok(Preset::Theorem1(example2(n, m, t, tp)?)),
            None => Err(PipelineError::UnknownPreset(name.to_string())),
        },
    }
}
