//! Tate-valued Frobenius and sharp coordinates, Euler classes, the Frobenius
//! action on coefficients, and MU-Steenrod operations.

mod steenrod;


use std::collections::BTreeMap;
use std::sync::Arc;

use num::traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgl::{
    fgl_log, fgl_make, fgl_pushforward, k_series_in, pushforward_coeffs, pushforward_coeffs_series, Coord,
    Fgl, FglLabel,
};
use crate::ring::{is_prime, GenId, Poly, Rat, RingSpec};
use crate::series::{long_divide_by_p_series, substitute, Exps, Series, Trunc, Var};

pub use steenrod::{
    bullett_macdonald_experiment, steenrod_component, steenrod_total, steenrod_total_of_power, BmOrdering, BmReport,
    BmRow,
};

/// Circle characters L^(a_1) ⊕ … ⊕ L^(a_m) defining a sharp coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpSpec {
    pub weights: Vec<i64>,
    /// Work modulo [p]_F(t) rather than in A((t)).
    pub mod_p_series: bool,
}

impl SharpSpec {
    /// Weights 1..p-1 modulo the p-series: the Frobenius coordinate.
    pub fn frobenius(p: u32) -> SharpSpec {
        SharpSpec { weights: (1..p as i64).collect(), mod_p_series: true }
    }

    /// Weights 1..p-1 without reduction: the lift used for total operations.
    pub fn lift(p: u32) -> SharpSpec {
        SharpSpec { weights: (1..p as i64).collect(), mod_p_series: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.contains(&0) {
            return Err(Error::Division("weight 0 gives [0](t) = 0, which is not a unit".into()));
        }
        Ok(())
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Spec(format!("{p} is not prime")));
    }
    Ok(())
}

/// x · ∏ (x +_F [a](t)) / [a](t), held in the law's full window.
pub fn sharp_coordinate(f: &Fgl, spec: &SharpSpec) -> Result<Series> {
    sharp_coordinate_in(f, spec, Var::T)
}

/// [`sharp_coordinate`] in the Laurent variable `v`.
pub fn sharp_coordinate_in(f: &Fgl, spec: &SharpSpec, v: Var) -> Result<Series> {
    spec.validate()?;
    let mut out = Series::var(f.ring(), *f.trunc(), Var::X)?;
    for &a in &spec.weights {
        let ka = k_series_in(f, a, v)?;
        let factor = f.x_plus(&ka)?.divide_by_unit(&ka)?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// χ = ∏_{k=1}^{p-1} [k]_F(t).
pub fn euler_chi(f: &Fgl, p: u32) -> Result<Series> {
    check_prime(p)?;
    let mut chi = Series::one(f.ring(), *f.trunc())?;
    for k in 1..p as i64 {
        chi = chi.mul(&k_series_in(f, k, Var::T)?)?;
    }
    let fact: i64 = (1..p as i64).product();
    let lead = chi.coeff(Exps::xt(0, p as i32 - 1))?;
    if lead != Poly::from_int(fact) || chi.min_exponent(Var::T) != Some(p as i32 - 1) {
        return Err(Error::Spec(format!("Euler class does not start with {fact}·t^{}", p - 1)));
    }
    Ok(chi)
}

/// A ring map on coefficients, generators going to Laurent series in t (or s).
#[derive(Clone, Debug)]
pub struct FrobAction {
    prime: u32,
    ring: Arc<RingSpec>,
    var: Var,
    rule: BTreeMap<GenId, Series>,
}

impl FrobAction {
    pub fn from_rule(prime: u32, ring: Arc<RingSpec>, var: Var, rule: BTreeMap<GenId, Series>) -> FrobAction {
        FrobAction { prime, ring, var, rule }
    }

    /// Generators sent to polynomials (no Laurent variable involved).
    pub fn from_polys(prime: u32, ring: &Arc<RingSpec>, polys: &BTreeMap<GenId, Poly>) -> Result<FrobAction> {
        let tr = Trunc::new(0, 0, 0);
        let mut rule = BTreeMap::new();
        for (g, c) in polys {
            rule.insert(*g, Series::constant(ring, tr, c.clone())?);
        }
        Ok(FrobAction::from_rule(prime, ring.clone(), Var::T, rule))
    }

    /// β ↦ p·β on the Todd ring.
    pub fn todd(p: u32, ring: &Arc<RingSpec>) -> Result<FrobAction> {
        let polys = [(GenId::beta(), Poly::gen(GenId::beta()).scale(&Rat::from_integer(p.into())))].into();
        FrobAction::from_polys(p, ring, &polys)
    }

    /// Every generator fixed.
    pub fn identity(p: u32, ring: &Arc<RingSpec>) -> Result<FrobAction> {
        let polys = ring.generators().map(|g| (g, Poly::gen(g))).collect();
        FrobAction::from_polys(p, ring, &polys)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn rule(&self) -> &BTreeMap<GenId, Series> {
        &self.rule
    }

    pub fn image(&self, g: GenId) -> Option<&Series> {
        self.rule.get(&g)
    }

    /// Replaces the image of one generator.
    pub fn with_image(mut self, g: GenId, img: Series) -> FrobAction {
        self.rule.insert(g, img);
        self
    }

    /// Applies the map to every coefficient of `s`.
    pub fn apply(&self, s: &Series) -> Result<Series> {
        let tr = *s.trunc();
        let mut rule = BTreeMap::new();
        for (g, img) in &self.rule {
            let img = if img.is_exact() { img.rewindow(tr)? } else { img.rewindow(img.trunc().intersect(&tr)?)? };
            rule.insert(*g, img);
        }
        let out = pushforward_coeffs_series(&rule, s, &self.ring)?;
        out.rewindow(tr.intersect(out.trunc())?)
    }

    /// Images with every negative t-degree cleared by long division by `pseries`.
    pub fn reduced(&self, pseries: &Series) -> Result<FrobAction> {
        let mut rule = BTreeMap::new();
        for (g, img) in &self.rule {
            let tr = img.trunc().intersect(pseries.trunc())?;
            let d = long_divide_by_p_series(&img.rewindow(tr)?, &pseries.rewindow(tr)?, self.prime, 0)?;
            rule.insert(*g, d.remainder);
        }
        Ok(FrobAction { rule, ..self.clone() })
    }

    pub fn to_json(&self) -> Value {
        let rule: serde_json::Map<String, Value> =
            self.rule.iter().map(|(g, s)| (g.name(), Value::String(s.text()))).collect();
        json!({"prime": self.prime, "ring": self.ring.label().to_string(), "rule": rule})
    }
}

/// exp(x) = x + Σ b_i x^(i+1) in the law's window.
fn universal_exp(f: &Fgl) -> Result<Series> {
    let ring = f.ring();
    let tr = *f.trunc();
    let cap = ring.max_index();
    let mut terms = vec![(Exps::xt(1, 0), Poly::one())];
    for i in 1..tr.x_max.min(cap + 1) {
        terms.push((Exps::xt(i + 1, 0), Poly::gen(GenId::b(i))));
    }
    Series::from_terms(ring, tr, terms)?.limit_x(cap + 1)
}

/// The map on coefficients induced by the sharp coordinate G in variable `v`:
/// G_*F is the law of the image, so its coefficients are the images of F's.
///
/// Todd: β ↦ -[xy](G_*F). Universal: b_i ↦ [x^(i+1)] G(exp(x)) and
/// m_d ↦ (d+1)·[x^(d+1)] log(G^-1(x)), for i, d ≤ `d_max`.
pub fn coefficient_action(f: &Fgl, spec: &SharpSpec, v: Var, d_max: u32) -> Result<FrobAction> {
    let p = spec.weights.len() as u32 + 1;
    let ring = f.ring().clone();
    let mut rule = BTreeMap::new();
    match f.label() {
        FglLabel::Additive => {}
        FglLabel::Todd => {
            let g = Coord::new(sharp_coordinate_in(f, spec, v)?)?;
            let pushed = fgl_pushforward(f, &g)?;
            let xy = pushed.law().coeff_of(Var::X, 1)?.coeff_of(Var::Y, 1)?;
            rule.insert(GenId::beta(), xy.neg());
        }
        FglLabel::Universal => {
            let xlim = d_max + 1;
            if f.trunc().x_max < xlim {
                return Err(Error::Truncation(format!("the window reaches x^{} only; need x^{xlim}", f.trunc().x_max)));
            }
            let g = sharp_coordinate_in(f, spec, v)?.limit_x(xlim)?;
            let exp = universal_exp(f)?.limit_x(xlim)?;
            let ge = g.compose(&exp)?;
            for i in 1..=d_max.min(ring.max_index()) {
                rule.insert(GenId::b(i), ge.coeff_of(Var::X, i as i32 + 1)?);
            }
            if ring.contains(GenId::m(1)) {
                let log = fgl_log(f)?.limit_x(xlim)?;
                let lg = log.compose(&g.reversion()?)?;
                for d in 1..=d_max.min(ring.max_index()) {
                    let c = lg.coeff_of(Var::X, d as i32 + 1)?.scale(&Rat::from_integer((d + 1).into()));
                    rule.insert(GenId::m(d), c);
                }
            }
        }
        FglLabel::Pushforward(_) => {
            return Err(Error::Spec("no coefficient action is defined for a pushforward law".into()));
        }
    }
    Ok(FrobAction::from_rule(p, ring, v, rule))
}

/// The Frobenius on universal coefficients: m_d ↦ Fr(m_d) and b_i ↦ Fr(b_i)
/// for indices up to `d_max`, as unreduced Laurent representatives.
pub fn frobenius_on_coefficients(p: u32, d_max: u32, trunc: Trunc) -> Result<FrobAction> {
    check_prime(p)?;
    if trunc.x_max < d_max + 1 {
        return Err(Error::Truncation(format!(
            "the window reaches x^{} only; Fr(m_{d_max}) needs x^{}",
            trunc.x_max,
            d_max + 1
        )));
    }
    let cap = (trunc.precision() - 2).max(d_max as i64).max(1) as u32;
    let ring = Arc::new(RingSpec::universal(cap));
    let f = fgl_make(&FglLabel::Universal, &ring, trunc)?;
    coefficient_action(&f, &SharpSpec::frobenius(p), Var::T, d_max)
}

/// Whether t ↦ [j](t) fixes the Frobenius coordinate, modulo [p]_F(t) when
/// `mod_p_series` is set and exactly otherwise, within the law's window.
pub fn fpx_invariance_check(f: &Fgl, p: u32, j: u32, mod_p_series: bool) -> Result<bool> {
    check_prime(p)?;
    if j == 0 || j >= p {
        return Err(Error::Precondition(format!("j must be a unit 1..{} mod {p}", p - 1)));
    }
    let win = *f.window();
    let frob = sharp_coordinate(f, &SharpSpec::frobenius(p))?.rewindow(win)?;
    let kj = k_series_in(f, j as i64, Var::T)?;
    let moved = substitute(&frob, Var::T, &kj)?;
    let d = moved.sub(&frob)?;
    if !mod_p_series {
        return Ok(d.is_empty());
    }
    let pseries = k_series_in(f, p as i64, Var::T)?;
    let gt = d.trunc().grading.t;
    for n in 0..=win.x_max {
        let slice = d.coeff_of(Var::X, n as i32)?;
        let tr = slice.trunc().intersect(pseries.trunc())?;
        let slice = slice.rewindow(tr)?;
        let bound = match slice.prec() {
            Some(pr) => (pr - 1).div_euclid(gt) as i32,
            None => win.t_max + 1,
        };
        let div = long_divide_by_p_series(&slice, &pseries.rewindow(tr)?, p, bound)?;
        if !div.non_integral_multiples(p).is_empty() {
            return Ok(false);
        }
        let pr = Rat::from_integer(p.into());
        for (e, c) in div.remainder.terms() {
            if div.remainder.is_certified(e) && !c.scale(&(Rat::one() / &pr)).is_p_integral(p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Frobenius coordinate of the universal law pushed to F_p (b_i ↦ 0,
/// coefficients reduced mod p), over the additive ring.
pub fn frobenius_fp_view(p: u32) -> Result<Series> {
    check_prime(p)?;
    let window = Trunc::new(p, 1 - p as i32, 0);
    let cap = (window.precision() - 2).max(1) as u32;
    let ring = Arc::new(RingSpec::universal(cap));
    let f = fgl_make(&FglLabel::Universal, &ring, window)?;
    let frob = sharp_coordinate(&f, &SharpSpec::frobenius(p))?;
    let kill: BTreeMap<GenId, Poly> = ring.generators().map(|g| (g, Poly::zero())).collect();
    let add = Arc::new(RingSpec::additive());
    let pushed = pushforward_coeffs(&kill, &frob, &add)?;
    let out = pushed.rewindow(window)?.mod_p(p)?;
    out.certify_box()?;
    Ok(out)
}

/// (x·t^(p-1) - x^p)/t^(p-1) over the additive ring, coefficients mod p.
pub fn fp_closed_form(p: u32) -> Result<Series> {
    let window = Trunc::new(p, 1 - p as i32, 0);
    let ring = Arc::new(RingSpec::additive());
    Series::from_terms(&ring, window, [(Exps::xt(1, 0), Poly::one()), (Exps::xt(p, 1 - p as i32), Poly::from_int(-1))])?
        .mod_p(p)
}

/// Symmetric representative of a residue: values above p/2 become negative.
fn symmetric(c: &Rat, p: u32) -> Rat {
    let pr = Rat::from_integer(p.into());
    if c * Rat::from_integer(2.into()) > pr {
        c - pr
    } else {
        c.clone()
    }
}

/// Renders a series over F_p as a fraction over the least power of t,
/// e.g. "(x·t^4 - x^5)/t^4".
pub fn fp_fraction_text(s: &Series, p: u32) -> Result<String> {
    let reduced = s.mod_p(p)?;
    let low = reduced.min_exponent(Var::T).unwrap_or(0).min(0);
    let mut terms = Vec::new();
    for (e, c) in reduced.reported_terms() {
        let c = c.as_constant().ok_or_else(|| Error::Spec("F_p rendering expects numeric coefficients".into()))?;
        terms.push((Exps { t: e.t - low, ..*e }, Poly::constant(symmetric(&c, p))));
    }
    let tr = s.trunc();
    let num = Series::from_terms(s.ring(), Trunc::new(tr.x_max, 0, tr.t_max - low), terms)?;
    let body = num.truncated_polynomial().display_text();
    Ok(match low {
        0 => body,
        -1 => format!("({body})/t"),
        k => format!("({body})/t^{}", -k),
    })
}
