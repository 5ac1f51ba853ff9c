//! Property checks shared by the proptest suite and the acceptance runner.
#![allow(dead_code)]

use std::sync::Arc;

use fglobs::fgl::{fgl_make, fgl_pushforward, k_series, Coord, Fgl, FglLabel};
use fglobs::frobenius::{sharp_coordinate, SharpSpec};
use fglobs::obstruction::{obstruction_series, OrientationData};
use fglobs::ring::{rat, GenId, Poly, RingSpec};
use fglobs::series::{long_divide_by_p_series, Exps, Series, Trunc, Var};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn todd_ring() -> Arc<RingSpec> {
    Arc::new(RingSpec::todd())
}

pub fn beta(k: u32) -> Poly {
    Poly::gen(GenId::beta()).pow(k)
}

/// x + Σ c_i β^i x^(i+1), homogeneous of degree 2.
pub fn todd_coord(cs: &[(i64, i64)], tr: Trunc) -> Series {
    let mut terms = vec![(Exps::xt(1, 0), Poly::one())];
    for (i, &(n, d)) in cs.iter().enumerate() {
        let i = i as u32 + 1;
        terms.push((Exps::xt(i + 1, 0), beta(i).scale(&rat(n, d))));
    }
    Series::from_terms(&todd_ring(), tr, terms).unwrap()
}

pub fn coeffs(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=6), n)
}

pub fn universal(tr: Trunc) -> Fgl {
    let cap = (tr.full_xy().x_max as i64 - 1).max(1) as u32;
    fgl_make(&FglLabel::Universal, &Arc::new(RingSpec::universal(cap)), tr).unwrap()
}

pub fn todd(tr: Trunc) -> Fgl {
    fgl_make(&FglLabel::Todd, &todd_ring(), tr).unwrap()
}

pub type Check = Result<(), TestCaseError>;

pub fn homogeneity(cs: &[(i64, i64)], ds: &[(i64, i64)]) -> Check {
    let tr = Trunc::new(6, -6, 3);
    let f = todd_coord(cs, tr);
    let g = todd_coord(ds, tr);
    let t = Series::var(&todd_ring(), tr, Var::T).unwrap();
    let law = todd(tr);
    let h = law.x_plus(&t).unwrap();
    for s in [
        f.add(&g).unwrap(),
        f.mul(&g).unwrap(),
        f.compose(&g).unwrap(),
        f.reversion().unwrap(),
        f.compose(&h).unwrap(),
        f.compose(&t).unwrap().inverse().unwrap(),
        h.divide_by_unit(&t).unwrap(),
    ] {
        let d = s.homogeneous_degree();
        prop_assert!(d.is_ok(), "{:?}", d);
    }
    prop_assert_eq!(f.mul(&g).unwrap().homogeneous_degree().unwrap(), Some(4));
    prop_assert_eq!(f.compose(&g).unwrap().homogeneous_degree().unwrap(), Some(2));
    Ok(())
}

pub fn rationals(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=9), n)
}

pub fn reversion_round_trip(cs: &[(i64, i64)]) -> Check {
    let n = cs.len() as u32 + 1;
    let tr = Trunc::new(n, 0, 0);
    let ring = Arc::new(RingSpec::additive());
    let mut terms = vec![(Exps::xt(1, 0), Poly::one())];
    for (i, &(a, b)) in cs.iter().enumerate() {
        terms.push((Exps::xt(i as u32 + 2, 0), Poly::constant(rat(a, b))));
    }
    let f = Series::from_terms(&ring, tr, terms).unwrap();
    let g = f.reversion().unwrap();
    let x = Series::var(&ring, tr, Var::X).unwrap();
    prop_assert!(f.compose(&g).unwrap().agrees_with(&x).unwrap());
    prop_assert!(g.compose(&f).unwrap().agrees_with(&x).unwrap());
    prop_assert!(g.is_certified(&Exps::xt(n, 0)));
    Ok(())
}

pub fn pushforward_axioms(cs: &[(i64, i64)]) -> Check {
    let law = todd(Trunc::bivariate(8));
    let g = Coord::new(todd_coord(cs, *law.trunc())).unwrap();
    let pushed = fgl_pushforward(&law, &g).unwrap();
    prop_assert!(pushed.unit_holds().unwrap());
    prop_assert!(pushed.is_commutative().unwrap());
    prop_assert!(pushed.is_associative(8).unwrap());
    Ok(())
}

pub fn universal_axioms() -> Check {
    let f = universal(Trunc::bivariate(8));
    prop_assert!(f.unit_holds().unwrap());
    prop_assert!(f.is_commutative().unwrap());
    prop_assert!(f.is_associative(8).unwrap());
    Ok(())
}

pub fn k_additivity(laws: &[Fgl], k: i64, l: i64) -> Check {
    for f in laws {
        let sum = k_series(f, k + l).unwrap();
        let composed = f.sum(&k_series(f, k).unwrap(), &k_series(f, l).unwrap()).unwrap();
        prop_assert!(sum.agrees_with(&composed).unwrap(), "k = {}, l = {}", k, l);
    }
    Ok(())
}

pub fn k_laws() -> Vec<Fgl> {
    vec![todd(Trunc::new(0, 0, 6)), universal(Trunc::new(0, 0, 5))]
}

pub fn universal_integrality(degree: u32) -> Check {
    let f = universal(Trunc::bivariate(degree));
    for (e, c) in f.law().terms() {
        if e.x + e.y <= degree {
            for (m, r) in c.terms() {
                prop_assert!(r.is_integer(), "x^{} y^{}: {} {}", e.x, e.y, r, m.text());
            }
        }
    }
    prop_assert!(f.law().is_certified(&Exps::new(degree / 2, degree - degree / 2, 0, 0)));
    Ok(())
}

pub fn division_reconstruction(cs: &[(i64, i64)], bound: i32, p: u32) -> Check {
    let tr = Trunc::new(0, -4, 6);
    let ring = todd_ring();
    let law = todd(tr);
    let ps = k_series(&law, p as i64).unwrap().rewindow(tr).unwrap();
    // A homogeneous Laurent polynomial of degree 0: c_k β^k t^k.
    let terms: Vec<_> = cs
        .iter()
        .enumerate()
        .map(|(i, &(n, d))| {
            let k = i as i32 - 4;
            let b = if k >= 0 { beta(k as u32) } else { Poly::one() };
            (Exps::xt(0, k), b.scale(&rat(n, d)))
        })
        .collect();
    let s = Series::from_terms(&ring, tr, terms).unwrap();
    let div = long_divide_by_p_series(&s, &ps, p, bound).unwrap();
    prop_assert!(div.reconstruct(&ps).unwrap().agrees_with(&s).unwrap());
    prop_assert!(div.remainder.terms().all(|(e, _)| e.t >= bound));
    Ok(())
}

pub fn window_stability(x: u32, t: i32, dx: u32, dt: i32, p: u32) -> Check {
    let small = Trunc::new(x, -(x as i32) - 1, t);
    let mut big = small.widened(dx, dt);
    big.t_min -= 2;
    let frob = |w: Trunc| sharp_coordinate(&todd(w), &SharpSpec::lift(p)).unwrap().rewindow(w).unwrap();
    let a = frob(small);
    let b = frob(big).rewindow(small).unwrap();
    prop_assert_eq!(a.reported_text(), b.reported_text());
    let obs = |w: Trunc| obstruction_series(&OrientationData::todd_p_typical(p, w).unwrap()).unwrap();
    let oa = obs(small);
    let ob = obs(big);
    for (e, c) in oa.reported_terms() {
        prop_assert_eq!(&ob.coeff(*e).unwrap(), c, "{:?}", e);
    }
    for (e, c) in ob.terms().filter(|(e, _)| e.x <= small.x_max && e.t <= small.t_max) {
        prop_assert_eq!(&oa.coeff(*e).unwrap(), c, "{:?}", e);
    }
    Ok(())
}
