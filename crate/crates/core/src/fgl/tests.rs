use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::ring::{int, rat};

fn beta(k: u32) -> Poly {
    Poly::gen(GenId::beta()).pow(k)
}

fn todd(tr: Trunc) -> Fgl {
    fgl_make(&FglLabel::Todd, &Arc::new(RingSpec::todd()), tr).unwrap()
}

fn xcoeff(s: &Series, n: u32) -> Poly {
    s.coeff(Exps::xt(n, 0)).unwrap()
}

fn tcoeff(s: &Series, n: i32) -> Poly {
    s.coeff(Exps::xt(0, n)).unwrap()
}

#[test]
fn todd_and_additive_laws() {
    let f = todd(Trunc::bivariate(4));
    assert_eq!(f.law().coeff(Exps::new(1, 1, 0, 0)).unwrap(), -&beta(1));
    assert_eq!(f.law().len(), 3);
    let a = fgl_make(&FglLabel::Additive, &Arc::new(RingSpec::additive()), Trunc::bivariate(4)).unwrap();
    assert_eq!(a.law().len(), 2);
    assert!(f.is_commutative().unwrap() && f.is_associative(5).unwrap());
}

#[test]
fn universal_law_low_terms() {
    let r = Arc::new(RingSpec::universal(4));
    let f = fgl_make(&FglLabel::Universal, &r, Trunc::bivariate(5)).unwrap();
    assert_eq!(f.law().coeff(Exps::new(1, 1, 0, 0)).unwrap(), Poly::gen(GenId::b(1)).scale(&int(2)));
    assert!(f.is_commutative().unwrap());
    assert!(f.is_associative(6).unwrap());
    assert!(matches!(
        fgl_make(&FglLabel::Universal, &Arc::new(RingSpec::universal(2)), Trunc::bivariate(5)),
        Err(Error::IndexCap(_))
    ));
}

#[test]
fn todd_k_series() {
    let f = todd(Trunc::new(0, 0, 6));
    let three = k_series(&f, 3).unwrap();
    assert_eq!(tcoeff(&three, 1), Poly::from_int(3));
    assert_eq!(tcoeff(&three, 2), beta(1).scale(&int(-3)));
    assert_eq!(tcoeff(&three, 3), beta(2));
    assert_eq!(three.len(), 3);
    let two = k_series(&f, 2).unwrap();
    assert_eq!(two.text(), "2*t - β*t^2");
    assert_eq!(k_series(&f, 1).unwrap().text(), "t");
    assert!(k_series(&f, 0).unwrap().is_empty());
}

#[test]
fn todd_formal_inverse_is_geometric() {
    let f = todd(Trunc::bivariate(6));
    let iota = formal_inverse(&f).unwrap();
    for n in 1..=6 {
        assert_eq!(xcoeff(&iota, n), -&beta(n - 1));
    }
    let x = Series::var(f.ring(), *f.trunc(), Var::X).unwrap();
    assert!(f.sum(&x, &iota).unwrap().is_empty());
    let minus_two = k_series(&f, -2).unwrap();
    let two = k_series(&f, 2).unwrap();
    // [-2]t +_F [2]t = 0
    assert!(f.x_plus(&minus_two).unwrap().compose(&two).unwrap().is_empty());
}

#[test]
fn todd_log_and_exp() {
    let f = todd(Trunc::bivariate(6));
    let log = fgl_log(&f).unwrap();
    for n in 1..=6 {
        assert_eq!(xcoeff(&log, n), beta(n - 1).scale(&rat(1, n as i64)));
    }
    let exp = fgl_exp(&f).unwrap();
    let x = Series::var(f.ring(), *f.trunc(), Var::X).unwrap();
    assert!(exp.compose(&log).unwrap().agrees_with(&x).unwrap());
}

#[test]
fn universal_m1() {
    let r = Arc::new(RingSpec::universal(4));
    let f = fgl_make(&FglLabel::Universal, &r, Trunc::bivariate(4)).unwrap();
    let m1 = f.bordism_class(1).unwrap();
    assert_eq!(m1.text(), "-2*b1");
}

#[test]
fn three_typical_todd_log() {
    // The Todd log has coefficient β^(n-1)/n at x^n.
    let f = todd(Trunc::bivariate(10));
    let log = fgl_log(&f).unwrap();
    let (lp, ep) = p_typify(&log, 3).unwrap();
    assert_eq!(xcoeff(&lp, 3), beta(2).scale(&rat(1, 3)));
    assert_eq!(xcoeff(&lp, 9), beta(8).scale(&rat(1, 9)));
    assert_eq!(lp.len(), 3);
    let x = Series::var(f.ring(), *f.trunc(), Var::X).unwrap();
    assert!(lp.compose(&ep).unwrap().agrees_with(&x).unwrap());
    let (lp2, _) = p_typify(&log, 2).unwrap();
    assert_eq!(xcoeff(&lp2, 2), beta(1).scale(&rat(1, 2)));
    assert_eq!(xcoeff(&lp2, 4), beta(3).scale(&rat(1, 4)));
    assert_eq!(xcoeff(&lp2, 8), beta(7).scale(&rat(1, 8)));
}

#[test]
fn quillen_coordinate_for_todd() {
    let f = todd(Trunc::bivariate(9));
    let c = quillen_idempotent_coord(&f, 3).unwrap();
    let s = c.series();
    assert_eq!(xcoeff(s, 2), beta(1).scale(&rat(1, 2)));
    assert!(xcoeff(s, 3).is_zero());
    assert_eq!(xcoeff(s, 4), beta(3).scale(&rat(-1, 4)));
    assert_eq!(xcoeff(s, 5), beta(4).scale(&rat(-1, 20)));
    let c2 = quillen_idempotent_coord(&f, 2).unwrap();
    assert!(xcoeff(c2.series(), 2).is_zero());
    let a = fgl_make(&FglLabel::Additive, &Arc::new(RingSpec::additive()), Trunc::bivariate(9)).unwrap();
    assert_eq!(quillen_idempotent_coord(&a, 3).unwrap().series().text(), "x");
}

#[test]
fn pushforward_along_quillen_coordinate_is_typical() {
    let f = todd(Trunc::bivariate(9));
    let c = quillen_idempotent_coord(&f, 3).unwrap();
    let g = fgl_pushforward(&f, &c).unwrap();
    let log = fgl_log(&g).unwrap();
    for n in [2, 4, 5, 6, 7, 8] {
        assert!(xcoeff(&log, n).is_zero(), "x^{n}");
    }
    assert_eq!(xcoeff(&log, 3), beta(2).scale(&rat(1, 3)));
    let id = Coord::identity(f.ring(), *f.trunc()).unwrap();
    assert!(fgl_pushforward(&f, &id).unwrap().law().agrees_with(f.law()).unwrap());
}

#[test]
fn coefficient_pushforward() {
    let f = todd(Trunc::new(0, 0, 6));
    let three = k_series(&f, 3).unwrap();
    let kill: BTreeMap<GenId, Poly> = [(GenId::beta(), Poly::zero())].into();
    assert_eq!(pushforward_coeffs(&kill, &three, f.ring()).unwrap().text(), "3*t");
    let triple: BTreeMap<GenId, Poly> = [(GenId::beta(), beta(1).scale(&int(3)))].into();
    let pushed = pushforward_coeffs(&triple, &three, f.ring()).unwrap();
    assert_eq!(tcoeff(&pushed, 3), beta(2).scale(&int(9)));
    let none: BTreeMap<GenId, Poly> = BTreeMap::new();
    assert!(matches!(pushforward_coeffs(&none, &three, f.ring()), Err(Error::MissingRule(_))));
}

#[test]
fn hazewinkel_recursion() {
    let l = hazewinkel_lambdas(2, 2);
    assert_eq!(l[0], Poly::one());
    let v1 = Poly::gen(GenId::v(2, 1));
    let v2 = Poly::gen(GenId::v(2, 2));
    assert_eq!(l[1], v1.scale(&rat(1, 2)));
    assert_eq!(l[2], &v2.scale(&rat(1, 2)) + &v1.pow(3).scale(&rat(1, 4)));
    // 2·λ_2 = λ_1·v_1^2 + v_2
    assert_eq!(l[2].scale(&int(2)), &(&l[1] * &v1.pow(2)) + &v2);
}

#[test]
fn hazewinkel_rewrite_rejects_non_typical_classes() {
    let r = Arc::new(RingSpec::universal(4));
    let tr = Trunc::new(2, 0, 0);
    let s = Series::from_terms(&r, tr, [(Exps::xt(2, 0), Poly::gen(GenId::m(1)))]).unwrap();
    let out = hazewinkel_rewrite(&s, 2, 2).unwrap();
    assert_eq!(out.text(), "v1*x^2");
    let bad = Series::from_terms(&r, tr, [(Exps::xt(2, 0), Poly::gen(GenId::m(2)))]).unwrap();
    assert!(matches!(hazewinkel_rewrite(&bad, 2, 2), Err(Error::Rewrite(_))));
}

#[test]
fn ptypical_rule_sends_b1_to_log_class() {
    let r = Arc::new(RingSpec::universal(3));
    let rule = ptypical_rule(2, &r).unwrap();
    // exp of x + m_1 x^2/2 starts x - m_1 x^2/2.
    assert_eq!(rule[&GenId::b(1)], Poly::gen(GenId::m(1)).scale(&rat(-1, 2)));
    assert!(rule[&GenId::m(2)].is_zero());
    assert_eq!(rule[&GenId::m(3)], Poly::gen(GenId::m(3)));
}
