use std::sync::Arc;

use super::*;
use crate::ring::{int, rat, GenId, RingSpec};

fn todd() -> Arc<RingSpec> {
    Arc::new(RingSpec::todd())
}

fn beta(k: u32) -> Poly {
    Poly::gen(GenId::beta()).pow(k)
}

fn s(ring: &Arc<RingSpec>, tr: Trunc, terms: &[(u32, i32, Poly)]) -> Series {
    Series::from_terms(ring, tr, terms.iter().map(|(x, t, c)| (Exps::xt(*x, *t), c.clone()))).unwrap()
}

fn three_series(ring: &Arc<RingSpec>, tr: Trunc) -> Series {
    s(ring, tr, &[(0, 1, Poly::from_int(3)), (0, 2, beta(1).scale(&int(-3))), (0, 3, beta(2))])
}

#[test]
fn arithmetic_examples() {
    let r = todd();
    let tr = Trunc::new(4, -4, 4);
    let x = Series::var(&r, tr, Var::X).unwrap();
    let tinv = s(&r, tr, &[(0, -1, Poly::one())]);
    assert_eq!(x.mul(&tinv).unwrap().text(), "x*t^-1");
    let xt = s(&r, tr, &[(1, 0, Poly::one()), (0, 1, Poly::one())]);
    assert_eq!(xt.mul(&xt).unwrap().text(), "t^2 + 2*x*t + x^2");
    let todd_sum = s(&r, tr, &[(1, 0, Poly::one()), (0, 1, Poly::one()), (1, 1, -&beta(1))]);
    let one = Series::one(&r, tr).unwrap();
    assert_eq!(todd_sum.mul(&one).unwrap(), todd_sum);
}

#[test]
fn unit_division_examples() {
    let r = todd();
    let tr = Trunc::new(4, -4, 4);
    let x2 = s(&r, tr, &[(2, 0, Poly::one())]);
    let t = s(&r, tr, &[(0, 1, Poly::one())]);
    assert_eq!(x2.divide_by_unit(&t).unwrap().text(), "x^2*t^-1");
    let two = s(&r, tr, &[(0, 1, Poly::from_int(2)), (0, 2, -&beta(1))]);
    assert_eq!(two.divide_by_unit(&t).unwrap().text(), "2 - β*t");
    let xxt = s(&r, tr, &[(2, 0, Poly::one()), (1, 1, Poly::one())]);
    assert_eq!(xxt.divide_by_unit(&t).unwrap().text(), "x + x^2*t^-1");
}

#[test]
fn inverse_of_non_unit_fails() {
    let r = todd();
    let tr = Trunc::new(4, -4, 4);
    let b = s(&r, tr, &[(0, 0, beta(1))]);
    assert!(matches!(b.inverse(), Err(Error::Division(_))));
    let x = Series::var(&r, tr, Var::X).unwrap();
    assert!(matches!(x.inverse(), Err(Error::Division(_))));
}

#[test]
fn inverse_of_laurent_unit_has_tracked_precision() {
    let r = todd();
    let tr = Trunc::new(0, -6, 6);
    let u = s(&r, tr, &[(0, 1, Poly::from_int(2)), (0, 2, -&beta(1))]);
    let inv = u.inverse().unwrap();
    assert_eq!(inv.prec(), Some(6));
    let back = u.mul(&inv).unwrap();
    assert_eq!(back.text(), "1");
    assert_eq!(back.prec(), Some(7));
    // 1/(2t - βt²) = 1/(2t) · Σ (βt/2)^k
    assert_eq!(inv.coeff(Exps::xt(0, 2)).unwrap(), beta(3).scale(&rat(1, 16)));
}

#[test]
fn composition_examples() {
    let r = Arc::new(RingSpec::additive());
    let tr = Trunc::new(6, 0, 0);
    let f = s(&r, tr, &[(1, 0, Poly::one()), (2, 0, Poly::one())]);
    let g = s(&r, tr, &[(1, 0, Poly::from_int(2))]);
    assert_eq!(f.compose(&g).unwrap().text(), "2*x + 4*x^2");
    let x = Series::var(&r, tr, Var::X).unwrap();
    assert_eq!(x.compose(&f).unwrap(), f);
    let c = s(&r, tr, &[(0, 0, Poly::one()), (1, 0, Poly::one())]);
    assert!(matches!(f.compose(&c), Err(Error::Composition(_))));
}

#[test]
fn reversion_catalan() {
    let r = Arc::new(RingSpec::universal(4));
    let tr = Trunc::new(4, 0, 0);
    let b1 = Poly::gen(GenId::b(1));
    let f = s(&r, tr, &[(1, 0, Poly::one()), (2, 0, b1.clone())]);
    let g = f.reversion().unwrap();
    let want = s(
        &r,
        tr,
        &[
            (1, 0, Poly::one()),
            (2, 0, -&b1),
            (3, 0, b1.pow(2).scale(&int(2))),
            (4, 0, b1.pow(3).scale(&int(-5))),
        ],
    );
    assert!(g.agrees_with(&want).unwrap());
    assert_eq!(g.x_cap(), Some(4));
    let x = Series::var(&r, tr, Var::X).unwrap();
    assert!(f.compose(&g).unwrap().agrees_with(&x).unwrap());
    assert!(x.reversion().unwrap().agrees_with(&x).unwrap());
}

#[test]
fn long_division_examples() {
    let r = todd();
    let tr = Trunc::new(0, -4, 6);
    let p3 = three_series(&r, tr);
    let d = long_divide_by_p_series(&p3, &p3, 3, 4).unwrap();
    assert!(d.remainder.is_empty());

    let three = s(&r, tr, &[(0, 0, Poly::from_int(3))]);
    let d = long_divide_by_p_series(&three, &p3, 3, 1).unwrap();
    assert_eq!(d.remainder.text(), "3*β*t - β^2*t^2");
    assert_eq!(d.multiples, vec![(0, Poly::one())]);
    assert!(d.reconstruct(&p3).unwrap().agrees_with(&three).unwrap());
}

#[test]
fn long_division_requires_t_series() {
    let r = todd();
    let tr = Trunc::new(2, -4, 6);
    let p3 = three_series(&r, tr);
    let x = Series::var(&r, tr, Var::X).unwrap();
    assert!(matches!(long_divide_by_p_series(&x, &p3, 3, 2), Err(Error::Spec(_))));
}

#[test]
fn substitution_of_t() {
    let r = todd();
    let tr = Trunc::new(2, -3, 3);
    let t = s(&r, tr, &[(0, 1, Poly::one())]);
    let two_t = s(&r, tr, &[(0, 1, Poly::from_int(2)), (0, 2, -&beta(1))]);
    // t ↦ [2](t) in x·t^-1
    let a = s(&r, tr, &[(1, -1, Poly::one())]);
    let sub = substitute(&a, Var::T, &two_t).unwrap();
    let direct = Series::var(&r, tr, Var::X).unwrap().divide_by_unit(&two_t).unwrap();
    assert!(sub.agrees_with(&direct).unwrap());
    assert_eq!(substitute(&a, Var::T, &t).unwrap(), a);
}

#[test]
fn window_underflow_is_reported() {
    let r = todd();
    let tr = Trunc::new(2, -1, 3);
    let a = s(&r, tr, &[(1, -1, Poly::one())]);
    assert!(matches!(a.mul(&a), Err(Error::WindowUnderflow(_))));
}

#[test]
fn truncated_factor_pollutes_composition() {
    // f known to x^2 only; f(x + t) is then known below total degree 3.
    let r = todd();
    let tr = Trunc::new(6, 0, 4);
    let f = s(&r, tr, &[(1, 0, Poly::one()), (2, 0, beta(1))]).limit_x(2).unwrap();
    let g = s(&r, tr, &[(1, 0, Poly::one()), (0, 1, Poly::one())]);
    let fg = f.compose(&g).unwrap();
    assert_eq!(fg.prec(), Some(3));
    assert!(fg.coeff(Exps::xt(0, 3)).is_err());
    assert_eq!(fg.coeff(Exps::xt(1, 1)).unwrap(), beta(1).scale(&int(2)));
}

#[test]
fn rendering_and_json() {
    let r = todd();
    let tr = Trunc::new(9, -3, 4);
    let a = s(&r, tr, &[(0, -3, beta(3).scale(&rat(-1215, 8))), (0, -2, beta(4).scale(&rat(15957, 32)))]);
    assert_eq!(a.text(), "-1215/8*β^3*t^-3 + 15957/32*β^4*t^-2");
    let j = a.to_json();
    assert_eq!(j[0]["t_exp"], -3);
    assert_eq!(j[1]["poly"][0]["num"], "15957");
}

#[test]
fn homogeneity_check() {
    let r = todd();
    let tr = Trunc::new(3, 0, 3);
    let p3 = three_series(&r, tr);
    assert_eq!(p3.homogeneous_degree().unwrap(), Some(2));
    let bad = s(&r, tr, &[(0, 1, Poly::one()), (0, 2, Poly::one())]);
    assert!(bad.homogeneous_degree().is_err());
}
