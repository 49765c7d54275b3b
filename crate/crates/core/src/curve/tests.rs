use super::*;
use crate::poly;

fn p1(w: u32) -> ProjectiveLine {
    ProjectiveLine::new(w).unwrap()
}

fn ell() -> EllipticCurve {
    EllipticCurve::new(2).unwrap()
}

fn finite(q: Vec<u32>) -> Place {
    Place::Line(LinePlace::Finite(q))
}

#[test]
fn p1_place_counts() {
    assert_eq!(p1(2).rational_places().len(), 5);
    assert_eq!(p1(2).places_of_degree(2).unwrap().len(), 6);
    assert_eq!(p1(1).places_of_degree(2).unwrap().len(), 1);
    assert_eq!(p1(3).places_of_degree(2).unwrap().len(), 28);
    assert_eq!(p1(2).rational_places().last(), Some(&Place::Line(LinePlace::Infinity)));
}

#[test]
fn p1_first_quadratics_over_gf4() {
    let b = p1(2);
    let q = b.places_of_degree(2).unwrap();
    assert_eq!(b.place_to_string(&q[0]), "x^2+x+w");
    assert_eq!(b.place_to_string(&q[1]), "x^2+x+w^2");
}

#[test]
fn p1_rr_space_of_quadratic_place() {
    let b = p1(2);
    let g = b.places_of_degree(2).unwrap()[0].clone();
    let basis = b.rr_space(&Divisor::single(g.clone(), 1)).unwrap();
    assert_eq!(basis.len(), 3);
    let Place::Line(LinePlace::Finite(gp)) = &g else { panic!() };
    for (j, f) in basis.iter().enumerate() {
        assert_eq!(f, &Function::Line { num: poly::monomial(j), den: gp.clone() });
        assert_eq!(b.valuation(f, &g).unwrap(), Some(-1));
    }
}

#[test]
fn p1_dimension_matches_degree_plus_one() {
    let b = p1(2);
    let places = b.places_of_degree(2).unwrap();
    let inf = Place::Line(LinePlace::Infinity);
    for (i, p) in places.iter().enumerate() {
        for c in 0..3 {
            let g = Divisor::from_pairs([(p.clone(), c), (inf.clone(), i as i64 % 2)]).unwrap();
            assert_eq!(b.rr_space(&g).unwrap().len() as i64, g.degree() + 1);
        }
    }
}

#[test]
fn p1_expansion_at_root() {
    // 1/(x+1) at x = 1 is t^-1
    let b = p1(2);
    let f = b.rational(poly::one(), vec![1, 1]);
    let e = b.local_expansion(&f, &finite(vec![1, 1]), 3).unwrap();
    assert_eq!(e.valuation, Some(-1));
    assert_eq!(e.start, -1);
    assert_eq!(e.coeffs, vec![1, 0, 0]);
    assert!(matches!(b.evaluate(&f, &finite(vec![1, 1])), Err(CurveError::Pole(_))));
    assert_eq!(b.evaluate(&f, &finite(vec![0, 1])).unwrap(), 1);
}

#[test]
fn p1_intersection_of_spaces_is_space_of_min() {
    let b = p1(2);
    let q = b.places_of_degree(2).unwrap();
    let inf = Place::Line(LinePlace::Infinity);
    let u1 = Divisor::from_pairs([(q[0].clone(), 1), (inf.clone(), 1)]).unwrap();
    let u2 = Divisor::from_pairs([(q[1].clone(), 1), (inf.clone(), 2)]).unwrap();
    let m = u1.min(&u2).unwrap();
    // a function lies in L(U1) ∩ L(U2) iff it has no pole beyond min(U1, U2)
    let in_space = |f: &Function, d: &Divisor| {
        b.places_of_degree(1)
            .unwrap()
            .into_iter()
            .chain(q.iter().cloned())
            .all(|p| b.valuation(f, &p).unwrap().is_none_or(|v| v >= -d.coeff(&p)))
    };
    let lm = b.rr_space(&m).unwrap();
    assert_eq!(lm.len(), 2);
    for f in &lm {
        assert!(in_space(f, &u1) && in_space(f, &u2));
    }
    let extra = b.rr_space(&u1).unwrap();
    assert!(extra.iter().any(|f| !in_space(f, &u2)));
}

#[test]
fn elliptic_has_nine_points_and_no_quadratic_places() {
    let e = ell();
    let pts = e.rational_places();
    assert_eq!(pts.len(), 9);
    assert_eq!(pts[0], Place::Elliptic(EllipticPlace::Infinity));
    assert_eq!(e.places_of_degree(2).unwrap().len(), 0);
    let names: Vec<String> = pts.iter().map(|p| e.place_to_string(p)).collect();
    assert_eq!(names[1], "(0,0)");
    assert_eq!(names[2], "(0,1)");
    for (p, n) in pts.iter().zip(&names) {
        assert_eq!(&e.parse_place(n).unwrap(), p);
    }
    assert!(e.parse_place("(1,1)").is_err());
}

#[test]
fn elliptic_over_gf2_has_quadratic_places() {
    // y² + y = x³ over GF(2): 3 points, 9 over GF(4), so (9 - 3)/2 = 3 of degree 2
    let e = EllipticCurve::new(1).unwrap();
    assert_eq!(e.rational_places().len(), 3);
    assert_eq!(e.places_of_degree(2).unwrap().len(), 3);
}

#[test]
fn elliptic_dimension_is_degree() {
    let e = ell();
    let pts = e.rational_places();
    for n in 1..6 {
        let g = Divisor::single(pts[0].clone(), n);
        assert_eq!(e.rr_space(&g).unwrap().len() as i64, n);
    }
    let g = Divisor::from_pairs([(pts[3].clone(), 2), (pts[4].clone(), 1), (pts[0].clone(), 1)]).unwrap();
    assert_eq!(e.rr_space(&g).unwrap().len(), 4);
    let g = Divisor::single(pts[5].clone(), 3);
    assert_eq!(e.rr_space(&g).unwrap().len(), 3);
}

#[test]
fn elliptic_rr_basis_respects_poles() {
    let e = ell();
    let pts = e.rational_places();
    let g = Divisor::from_pairs([(pts[3].clone(), 2), (pts[6].clone(), 1), (pts[0].clone(), 1)]).unwrap();
    for f in e.rr_space(&g).unwrap() {
        for p in &pts {
            let v = e.valuation(&f, p).unwrap().unwrap();
            assert!(v >= -g.coeff(p), "{} at {}", e.function_to_string(&f), e.place_to_string(p));
        }
    }
}

#[test]
fn elliptic_expansion_at_infinity() {
    let e = ell();
    let o = Place::Elliptic(EllipticPlace::Infinity);
    let x = e.function(vec![0, 1], Vec::new(), poly::one());
    let y = e.function(Vec::new(), poly::one(), poly::one());
    assert_eq!(e.valuation(&x, &o).unwrap(), Some(-2));
    assert_eq!(e.valuation(&y, &o).unwrap(), Some(-3));
    // t² x has leading coefficient 1
    let ex = e.local_expansion(&x, &o, 4).unwrap();
    assert_eq!(ex.coeff(-2), 1);
}

#[test]
fn elliptic_expansion_at_finite_point() {
    let e = ell();
    let p = e.parse_place("(1,2)").unwrap();
    let y = e.function(Vec::new(), poly::one(), poly::one());
    let ex = e.local_expansion(&y, &p, 4).unwrap();
    assert_eq!(ex.valuation, Some(0));
    assert_eq!(ex.coeff(0), 2);
    // y - y0 = x0² t + ..., x0 = 1
    assert_eq!(ex.coeff(1), 1);
    // y + 2 vanishes to order 1, and (y + 2)/(x + 1) is a unit there
    let f = e.function(vec![2], poly::one(), vec![1, 1]);
    assert_eq!(e.valuation(&f, &p).unwrap(), Some(0));
    assert_eq!(e.evaluate(&f, &p).unwrap(), 1);
}

#[test]
fn evaluation_agrees_with_coordinates() {
    let e = ell();
    let y = e.function(Vec::new(), poly::one(), poly::one());
    for p in e.rational_places().into_iter().skip(1) {
        let Place::Elliptic(EllipticPlace::Point { y: y0, .. }) = p else { panic!() };
        assert_eq!(e.evaluate(&y, &p).unwrap(), y0);
    }
}

#[test]
fn divisor_arithmetic() {
    let b = p1(2);
    let pts = b.rational_places();
    let a = Divisor::from_pairs([(pts[0].clone(), 2), (pts[1].clone(), -1)]).unwrap();
    let c = Divisor::from_pairs([(pts[0].clone(), 1), (pts[2].clone(), 3)]).unwrap();
    assert_eq!(a.degree(), 1);
    assert!(!a.is_effective());
    assert_eq!(a.max(&c).unwrap().degree(), 5);
    assert_eq!(a.min(&c).unwrap().degree(), 0);
    assert_eq!(a.add(&c).unwrap().coeff(&pts[0]), 3);
    let mixed = Divisor::single(ell().rational_places()[0].clone(), 1);
    assert_eq!(a.add(&mixed), Err(CurveError::BackendMismatch));
    let entries = divisor_to_entries(&b, &c);
    assert_eq!(divisor_from_entries(&b, &entries).unwrap(), c);
}

#[test]
fn backend_lookup() {
    for name in ["p1-gf2", "p1-gf4", "p1-gf8", "p1-gf16", "elliptic-gf4"] {
        assert_eq!(backend_by_name(name).unwrap().name(), name);
    }
    assert!(backend_by_name("hermitian-gf9").is_err());
}
