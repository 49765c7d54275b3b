//! Functional codes C_L(P, G) and their duals, the residual codes.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::curve::{divisor_to_entries, divisor_to_string, Backend, CurveError, Divisor, DivisorEntry, Place};
use crate::matrix::Matrix;

#[derive(Debug, Error)]
pub enum AgcError {
    #[error("deg G = {deg} outside the window {lower} < deg G < {n}")]
    DegreeWindow { deg: i64, lower: i64, n: usize },
    #[error("place {0} lies in both P and supp(G)")]
    SupportOverlap(String),
    #[error("evaluation place {0} is not rational")]
    NotRational(String),
    #[error("place {0} repeated in P")]
    RepeatedPlace(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A functional code together with the data that defines it.
#[derive(Debug, Clone)]
pub struct AgCode {
    backend: Backend,
    places: Vec<Place>,
    g: Divisor,
    code: LinearCode,
}

/// JSON sidecar written next to a code file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgCodeSidecar {
    pub curve: String,
    pub genus: u32,
    pub places: Vec<String>,
    pub divisor: Vec<DivisorEntry>,
    pub n: usize,
    pub k: usize,
    pub d_bound: Option<usize>,
    pub dual_d_bound: Option<usize>,
}

type Cache = RwLock<HashMap<String, LinearCode>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cache_key(b: &Backend, places: &[Place], g: &Divisor) -> String {
    let ps: Vec<String> = places.iter().map(|p| b.place_to_string(p)).collect();
    format!("{}|{}|{}", b.name(), ps.join(";"), divisor_to_string(b.as_ref(), g))
}

fn positive(x: i64) -> Option<usize> {
    (x > 0).then_some(x as usize)
}

impl AgCode {
    /// C_L(P, G) with the standing window 2g - 2 < deg G < n enforced.
    pub fn functional(b: &Backend, places: &[Place], g: &Divisor) -> Result<Self, AgcError> {
        let lower = 2 * b.genus() as i64 - 2;
        if g.degree() <= lower {
            return Err(AgcError::DegreeWindow {
                deg: g.degree(),
                lower,
                n: places.len(),
            });
        }
        Self::evaluation(b, places, g)
    }

    /// C_L(P, G) requiring only deg G < n, so that evaluation stays
    /// injective. Used for auxiliary divisors such as H = 0.
    pub fn evaluation(b: &Backend, places: &[Place], g: &Divisor) -> Result<Self, AgcError> {
        let n = places.len();
        if g.degree() >= n as i64 {
            return Err(AgcError::DegreeWindow {
                deg: g.degree(),
                lower: 2 * b.genus() as i64 - 2,
                n,
            });
        }
        for (i, p) in places.iter().enumerate() {
            if !b.owns(p) || p.degree() != 1 {
                return Err(AgcError::NotRational(format!("{p:?}")));
            }
            if g.coeff(p) != 0 {
                return Err(AgcError::SupportOverlap(b.place_to_string(p)));
            }
            if places[..i].contains(p) {
                return Err(AgcError::RepeatedPlace(b.place_to_string(p)));
            }
        }
        let key = cache_key(b, places, g);
        let cached = cache().read().expect("cache lock").get(&key).cloned();
        let code = match cached {
            Some(c) => c,
            None => {
                let basis = b.rr_space(g)?;
                let rows = basis
                    .iter()
                    .map(|f| places.iter().map(|p| b.evaluate(f, p)).collect())
                    .collect::<Result<Vec<Vec<u32>>, CurveError>>()?;
                let gen = Matrix::from_rows(b.field(), n, &rows);
                let gg = b.genus() as i64;
                let code = LinearCode::from_generator(gen)?.with_bounds(
                    positive(n as i64 - g.degree()),
                    positive(g.degree() - 2 * gg + 2),
                );
                cache().write().expect("cache lock").insert(key, code.clone());
                code
            }
        };
        Ok(Self {
            backend: b.clone(),
            places: places.to_vec(),
            g: g.clone(),
            code,
        })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// The residual code, computed as the dual of the functional code.
    pub fn residual(&self) -> LinearCode {
        self.code.dual()
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn divisor(&self) -> &Divisor {
        &self.g
    }

    pub fn sidecar(&self) -> AgCodeSidecar {
        let b = self.backend.as_ref();
        AgCodeSidecar {
            curve: b.name(),
            genus: b.genus(),
            places: self.places.iter().map(|p| b.place_to_string(p)).collect(),
            divisor: divisor_to_entries(b, &self.g),
            n: self.code.len(),
            k: self.code.dim(),
            d_bound: self.code.distance_bound,
            dual_d_bound: self.code.dual_distance_bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{backend_by_name, LinePlace};

    const BUDGET: u64 = 1 << 22;

    #[test]
    fn p1_two_quadratic_places_give_full_space() {
        let b = backend_by_name("p1-gf4").unwrap();
        let q = b.places_of_degree(2).unwrap();
        let g = Divisor::from_pairs([(q[0].clone(), 1), (q[1].clone(), 1)]).unwrap();
        let c = AgCode::functional(&b, &b.rational_places(), &g).unwrap();
        assert_eq!((c.code().len(), c.code().dim()), (5, 5));
        assert_eq!(c.residual().dim(), 0);
    }

    #[test]
    fn elliptic_three_o() {
        let b = backend_by_name("elliptic-gf4").unwrap();
        let pts = b.rational_places();
        let g = Divisor::single(pts[0].clone(), 3);
        let c = AgCode::functional(&b, &pts[1..], &g).unwrap();
        assert_eq!((c.code().len(), c.code().dim()), (8, 3));
        // one below the Singleton bound
        let d = c.code().min_distance(BUDGET).unwrap().unwrap();
        assert_eq!(d, 5);
        let r = c.residual();
        assert_eq!(r.dim(), 5);
        assert!(r.min_distance(BUDGET).unwrap().unwrap() >= 3);
    }

    #[test]
    fn binary_line_code() {
        let b = backend_by_name("p1-gf2").unwrap();
        let q = b.places_of_degree(2).unwrap();
        let g = Divisor::single(q[0].clone(), 1);
        let c = AgCode::functional(&b, &b.rational_places(), &g).unwrap();
        assert_eq!((c.code().len(), c.code().dim()), (3, 3));
        assert_eq!(c.code().min_distance(BUDGET).unwrap(), Some(1));
    }

    #[test]
    fn window_and_support_errors() {
        let b = backend_by_name("elliptic-gf4").unwrap();
        let pts = b.rational_places();
        let zero = Divisor::zero();
        assert!(matches!(
            AgCode::functional(&b, &pts[1..], &zero),
            Err(AgcError::DegreeWindow { .. })
        ));
        assert_eq!(AgCode::evaluation(&b, &pts[1..], &zero).unwrap().code().dim(), 1);
        let g = Divisor::single(pts[1].clone(), 2);
        assert!(matches!(
            AgCode::functional(&b, &pts[1..], &g),
            Err(AgcError::SupportOverlap(_))
        ));
        let big = Divisor::single(pts[0].clone(), 8);
        assert!(matches!(
            AgCode::functional(&b, &pts[1..], &big),
            Err(AgcError::DegreeWindow { .. })
        ));
    }

    #[test]
    fn generator_reproduces_evaluation_and_permutes_with_p() {
        let b = backend_by_name("elliptic-gf4").unwrap();
        let pts = b.rational_places();
        let g = Divisor::single(pts[0].clone(), 4);
        let fwd = AgCode::functional(&b, &pts[1..], &g).unwrap();
        let basis = b.rr_space(&g).unwrap();
        for (i, f) in basis.iter().enumerate() {
            for (j, p) in pts[1..].iter().enumerate() {
                assert_eq!(fwd.code().generator().get(i, j), b.evaluate(f, p).unwrap());
            }
        }
        let mut rev: Vec<Place> = pts[1..].to_vec();
        rev.reverse();
        let bwd = AgCode::functional(&b, &rev, &g).unwrap();
        let (gf, gb) = (fwd.code().generator(), bwd.code().generator());
        for i in 0..gf.rows() {
            for j in 0..8 {
                assert_eq!(gf.get(i, j), gb.get(i, 7 - j));
            }
        }
    }

    #[test]
    fn distance_bounds_hold_on_small_instances() {
        for name in ["p1-gf4", "p1-gf8", "elliptic-gf4"] {
            let b = backend_by_name(name).unwrap();
            let gg = b.genus() as i64;
            let pts = b.rational_places();
            let anchor = pts[0].clone();
            let places = &pts[1..];
            let n = places.len() as i64;
            for deg in (2 * gg - 1).max(1)..=(n - 1).min(6) {
                let g = Divisor::single(anchor.clone(), deg);
                let c = AgCode::functional(&b, places, &g).unwrap();
                assert_eq!(c.code().dim() as i64, deg - gg + 1);
                assert_eq!(c.code().dim() + c.residual().dim(), places.len());
                if c.code().message_count() <= BUDGET as u128 {
                    let d = c.code().min_distance(BUDGET).unwrap().unwrap() as i64;
                    assert!(d >= n - deg, "{name} deg {deg}");
                }
                let r = c.residual();
                if r.dim() > 0 && r.message_count() <= BUDGET as u128 {
                    let d = r.min_distance(BUDGET).unwrap().unwrap() as i64;
                    assert!(d >= deg - 2 * gg + 2, "{name} deg {deg} residual");
                }
            }
        }
    }

    #[test]
    fn sidecar_round_trips_through_json() {
        let b = backend_by_name("p1-gf4").unwrap();
        let pts = b.rational_places();
        let g = Divisor::single(Place::Line(LinePlace::Infinity), 2);
        let c = AgCode::functional(&b, &pts[..4], &g).unwrap();
        let s = c.sidecar();
        assert_eq!(s.d_bound, Some(2));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<AgCodeSidecar>(&json).unwrap(), s);
    }
}
