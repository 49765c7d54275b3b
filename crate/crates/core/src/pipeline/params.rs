//! AG construction parameter sets, their JSON form and hypothesis validation.

use serde::{Deserialize, Serialize};

use crate::curve::{backend_by_name, divisor_from_entries, divisor_to_entries, Backend, Divisor, DivisorEntry, Place};

use super::PipelineError;

#[derive(Debug, Clone)]
pub struct Theorem1Params {
    pub curve: Backend,
    pub curve_prime: Backend,
    pub places: Vec<Place>,
    pub places_prime: Vec<Place>,
    pub u: Vec<Divisor>,
    pub u_prime: Vec<Divisor>,
    pub h: Divisor,
}

/// JSON parameter file. Places and divisor supports use the backend's
/// place syntax (`x+w`, `x^2+x+w`, `inf`; `O`, `(1,2)`, `orbit(..)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub curve: String,
    pub curve_prime: String,
    pub places: Vec<String>,
    pub places_prime: Vec<String>,
    pub u: Vec<Vec<DivisorEntry>>,
    pub u_prime: Vec<Vec<DivisorEntry>>,
    #[serde(default)]
    pub h: Vec<DivisorEntry>,
}

impl Theorem1Params {
    pub fn from_file(f: &ParamsFile) -> Result<Self, PipelineError> {
        let curve = backend_by_name(&f.curve)?;
        let curve_prime = backend_by_name(&f.curve_prime)?;
        let parse_places = |b: &Backend, ps: &[String]| {
            ps.iter().map(|s| b.parse_place(s)).collect::<Result<Vec<_>, _>>()
        };
        let parse_divs = |b: &Backend, ds: &[Vec<DivisorEntry>]| {
            ds.iter()
                .map(|d| divisor_from_entries(b.as_ref(), d))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(Self {
            places: parse_places(&curve, &f.places)?,
            places_prime: parse_places(&curve_prime, &f.places_prime)?,
            u: parse_divs(&curve, &f.u)?,
            u_prime: parse_divs(&curve_prime, &f.u_prime)?,
            h: divisor_from_entries(curve_prime.as_ref(), &f.h)?,
            curve,
            curve_prime,
        })
    }

    pub fn to_file(&self) -> ParamsFile {
        let (b, bp) = (self.curve.as_ref(), self.curve_prime.as_ref());
        ParamsFile {
            curve: b.name(),
            curve_prime: bp.name(),
            places: self.places.iter().map(|p| b.place_to_string(p)).collect(),
            places_prime: self.places_prime.iter().map(|p| bp.place_to_string(p)).collect(),
            u: self.u.iter().map(|d| divisor_to_entries(b, d)).collect(),
            u_prime: self.u_prime.iter().map(|d| divisor_to_entries(bp, d)).collect(),
            h: divisor_to_entries(bp, &self.h),
        }
    }

    pub fn m(&self) -> usize {
        self.u.len()
    }
}

/// One named hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Informational checks are reported but do not affect validity.
    #[serde(default)]
    pub informational: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed && !c.informational)
            .map(|c| format!("{} ({})", c.name, c.detail))
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
            informational: false,
        });
    }
}

fn places_ok(b: &Backend, ps: &[Place]) -> Result<(), String> {
    for (i, p) in ps.iter().enumerate() {
        if !b.owns(p) || p.degree() != 1 {
            return Err(format!("{} is not a rational place", b.place_to_string(p)));
        }
        if ps[..i].contains(p) {
            return Err(format!("{} repeated", b.place_to_string(p)));
        }
    }
    Ok(())
}

fn divisors_ok(b: &Backend, ds: &[&Divisor]) -> Result<(), String> {
    for d in ds {
        for (p, c) in d.iter() {
            if !b.owns(p) {
                return Err(format!("{:?} does not belong to {}", p, b.name()));
            }
            if c < 0 {
                return Err(format!("negative coefficient at {}", b.place_to_string(p)));
            }
            if p.degree() > 2 {
                return Err(format!("{} has degree {}", b.place_to_string(p), p.degree()));
            }
        }
    }
    Ok(())
}

fn support_names(b: &Backend, d: &Divisor, ps: &[Place]) -> Vec<String> {
    d.support()
        .filter(|p| ps.contains(p))
        .map(|p| b.place_to_string(p))
        .collect()
}

/// Check every hypothesis by name. Structural problems (unparseable
/// supports, mismatched m) short-circuit the degree checks.
pub fn validate_params(p: &Theorem1Params) -> ValidationReport {
    let mut r = ValidationReport { checks: Vec::new() };
    let m = p.u.len();
    r.push(
        "output-count",
        m >= 1 && p.u_prime.len() == m,
        format!("m = {m}, m' = {}", p.u_prime.len()),
    );
    let pl = places_ok(&p.curve, &p.places).and(places_ok(&p.curve_prime, &p.places_prime));
    r.push("rational-places", pl.is_ok(), pl.err().unwrap_or_default());
    let mut primed: Vec<&Divisor> = p.u_prime.iter().collect();
    primed.push(&p.h);
    let dv = divisors_ok(&p.curve, &p.u.iter().collect::<Vec<_>>()).and(divisors_ok(&p.curve_prime, &primed));
    r.push("effective-divisors", dv.is_ok(), dv.err().unwrap_or_default());
    if !r.passed() {
        return r;
    }

    let (g, gp) = (p.curve.genus() as i64, p.curve_prime.genus() as i64);
    let (n, np) = (p.places.len() as i64, p.places_prime.len() as i64);
    let (w, wp) = (p.curve.field().degree() as i64, p.curve_prime.field().degree() as i64);
    let max_u = Divisor::max_all(&p.u).expect("one backend");
    let max_up = Divisor::max_all(&p.u_prime).expect("one backend");

    let overlap = support_names(&p.curve, &max_u, &p.places);
    r.push("supp-max-U-off-P", overlap.is_empty(), overlap.join(", "));
    let overlap = support_names(&p.curve_prime, &max_up, &p.places_prime);
    r.push("supp-max-U'-off-P'", overlap.is_empty(), overlap.join(", "));

    let d = max_u.degree();
    r.push(
        "deg-max-U-window",
        2 * g - 2 < d && d < n,
        format!("{} < {d} < {n}", 2 * g - 2),
    );
    let dp = max_up.degree();
    r.push(
        "deg-max-U'-window",
        2 * gp - 2 < dp && dp < np,
        format!("{} < {dp} < {np}", 2 * gp - 2),
    );

    for i in 0..m {
        let a = w * (p.u[i].degree() - g + 1);
        let b = wp * (p.u_prime[i].degree() - gp + 1);
        r.push(
            &format!("dimension-match-{}", i + 1),
            a == b,
            format!("w(deg U_{0} - g + 1) = {a}, w'(deg U'_{0} - g' + 1) = {b}", i + 1),
        );
    }

    let dh = p.h.degree();
    r.push(
        "deg-H-plus-max-U'-below-n'",
        dh + dp < np,
        format!("{dh} + {dp} < {np}"),
    );
    r.push(
        "dim-H-covers-m",
        wp * (dh - gp + 1) >= m as i64,
        format!("w'(deg H - g' + 1) = {} >= {m}", wp * (dh - gp + 1)),
    );

    let mut clash = Vec::new();
    for (i, a) in primed.iter().enumerate() {
        for (j, b) in primed.iter().enumerate().skip(i + 1) {
            if !a.disjoint(b).unwrap_or(false) {
                let name = |k: usize| if k == m { "H".to_string() } else { format!("U'_{}", k + 1) };
                clash.push(format!("{} and {}", name(i), name(j)));
            }
        }
    }
    r.push("U'-and-H-disjoint", clash.is_empty(), clash.join(", "));

    r.checks.push(Check {
        name: "deg-H-above-2g'-2".into(),
        passed: 2 * gp - 2 < dh,
        detail: format!("{} < {dh}", 2 * gp - 2),
        informational: true,
    });
    r
}
