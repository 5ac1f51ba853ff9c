use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{frobenius_commutator, OrientationData};
use crate::error::{Error, Result};
use crate::fgl::{fgl_make, pushforward_coeffs, Coord, Fgl, FglLabel};
use crate::frobenius::{coefficient_action, sharp_coordinate, FrobAction, SharpSpec};
use crate::ring::{int, GenId, GenKind, Poly, RingSpec};
use crate::series::{Exps, Series, Trunc, Var};

/// The x^2 comparison for one value of d in f_1 = d·(xy-coefficient of F).
#[derive(Clone, Debug)]
pub struct RigidityRow {
    pub d: i64,
    /// x^2 coefficient of the commutator divided by g_1(t).
    pub ratio: Series,
    /// (2d+1) − Σ(j+1)f_j t^j / Σ f_j t^j.
    pub matches_ratio_formula: bool,
    /// Whether the ratio also equals (−2d+1) + Σ(j+1)f_j t^j / Σ f_j t^j.
    pub matches_sign_variant: bool,
    pub t0_coefficient: Poly,
}

/// Coefficient of t^n of the ratio once f_1 = … = f_(n−1) = 0.
#[derive(Clone, Debug)]
pub struct InductionStep {
    pub n: u32,
    pub coefficient: Poly,
    pub forces_n_f_n: bool,
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub p: u32,
    pub order: u32,
    /// x-degrees whose commutator coefficient vanishes for f = x.
    pub identity_zero_degrees: Vec<u32>,
    pub identity_satisfies_all: bool,
    pub g1: Series,
    pub g1_is_unit: bool,
    /// ψ(b_1) = b_1 + g_1(t); with F = x + y + 2b_1xy + …, the xy coefficient
    /// moves by 2g_1(t).
    pub b1_rule_holds: bool,
    pub rows: Vec<RigidityRow>,
    pub t0_forces_d_zero: bool,
    pub induction: Vec<InductionStep>,
}

impl RigidityReport {
    pub fn all_hold(&self) -> bool {
        self.identity_satisfies_all
            && self.g1_is_unit
            && self.b1_rule_holds
            && self.rows.iter().all(|r| r.matches_ratio_formula)
            && self.t0_forces_d_zero
            && self.induction.iter().all(|s| s.forces_n_f_n)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "d": r.d,
                    "ratio": r.ratio.reported_text(),
                    "matches_ratio_formula": r.matches_ratio_formula,
                    "matches_sign_variant": r.matches_sign_variant,
                    "t0_coefficient": r.t0_coefficient.text(),
                })
            })
            .collect();
        let steps: Vec<Value> = self
            .induction
            .iter()
            .map(|s| json!({"n": s.n, "coefficient": s.coefficient.text(), "forces_n_f_n": s.forces_n_f_n}))
            .collect();
        json!({
            "p": self.p,
            "order": self.order,
            "identity_satisfies_all": self.identity_satisfies_all,
            "identity_zero_degrees": self.identity_zero_degrees,
            "g1": self.g1.reported_text(),
            "g1_is_unit": self.g1_is_unit,
            "b1_rule_holds": self.b1_rule_holds,
            "x2_rows": rows,
            "t0_forces_d_zero": self.t0_forces_d_zero,
            "induction": steps,
            "all_hold": self.all_hold(),
        })
    }

    pub fn text(&self) -> String {
        let mut out = format!("cyclotomic rigidity at p = {}, order {}\n", self.p, self.order);
        out.push_str(&format!(
            "f = x: commutator vanishes in x-degrees {:?}: {}\n",
            self.identity_zero_degrees, self.identity_satisfies_all
        ));
        out.push_str(&format!("g_1(t) = {} ; unit: {}\n", self.g1.display_text(), self.g1_is_unit));
        out.push_str(&format!("ψ(b_1) = b_1 + g_1(t): {}\n", self.b1_rule_holds));
        for r in &self.rows {
            out.push_str(&format!(
                "d = {}: x^2 coefficient / g_1 = (2d+1) - R(t): {} ; (-2d+1) + R(t): {} ; t^0 coefficient {}\n",
                r.d,
                r.matches_ratio_formula,
                r.matches_sign_variant,
                r.t0_coefficient.text()
            ));
        }
        out.push_str(&format!("t^0 comparison forces d = 0: {}\n", self.t0_forces_d_zero));
        for s in &self.induction {
            out.push_str(&format!("n = {}: t^{} coefficient {} ; equals -n·f_n: {}\n", s.n, s.n, s.coefficient.text(), s.forces_n_f_n));
        }
        out
    }
}

fn generic_coord(ring: &Arc<RingSpec>, tr: Trunc) -> Result<Coord> {
    let mut terms = vec![(Exps::xt(1, 0), Poly::one())];
    for i in 1..tr.x_max.min(ring.max_index() + 1) {
        terms.push((Exps::xt(i + 1, 0), Poly::gen(GenId::f(i))));
    }
    Coord::new(Series::from_terms(ring, tr, terms)?.limit_x(ring.max_index() + 1)?)
}

/// Σ_j c_j f_j t^j with f_0 = 1, as a series in t.
fn f_series(ring: &Arc<RingSpec>, tr: Trunc, weight: impl Fn(u32) -> i64) -> Result<Series> {
    let mut terms = vec![(Exps::xt(0, 0), Poly::from_int(weight(0)))];
    for j in 1..=ring.max_index() {
        if j as i32 <= tr.t_max {
            terms.push((Exps::xt(0, j as i32), Poly::gen(GenId::f(j)).scale(&int(weight(j)))));
        }
    }
    Series::from_terms(ring, tr, terms)
}

fn psi(f: &Fgl, spec: &SharpSpec, rule_f1: Option<Series>) -> Result<FrobAction> {
    let ring = f.ring().clone();
    let mut act = coefficient_action(f, spec, Var::T, ring.max_index().min(f.trunc().x_max - 1))?;
    for g in ring.generators().filter(|g| g.kind == GenKind::F) {
        let img = match (&rule_f1, g.index) {
            (Some(r), 1) => r.clone(),
            _ => Series::constant(&ring, *f.trunc(), Poly::gen(g))?,
        };
        act = act.with_image(g, img);
    }
    Ok(act)
}

/// Expands ψ_p∘φ(x) − φ^{tT}∘ψ_p(x) over Q[b_i, f_i]((t)) at p = 2 with ψ_2
/// the unreduced sharp coordinate, and checks the x^2 coefficient argument:
/// f = x satisfies every constraint, the x^2 coefficient is g_1(t) times
/// (2d+1) − R(t), its t^0 term forces d = 0 and its t^n term forces n·f_n = 0.
pub fn cyclotomic_rigidity_constraints(p: u32, order: u32) -> Result<RigidityReport> {
    if p != 2 {
        return Err(Error::Precondition("the rigidity computation is carried out at p = 2".into()));
    }
    if order == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    let spec = SharpSpec::lift(p);

    // f = x against every x-degree up to the order.
    let id_window = Trunc::new(order, -(order as i32) - 1, 1);
    let id_ring = Arc::new(RingSpec::rigidity(p, (id_window.precision() - 2).max(1) as u32));
    let fid = fgl_make(&FglLabel::Universal, &id_ring, id_window)?;
    let id = OrientationData::new(fid.clone(), Coord::identity(&id_ring, *fid.trunc())?, psi(&fid, &spec, None)?, p)?;
    let comm = frobenius_commutator(&id)?;
    let mut identity_zero_degrees = Vec::new();
    for k in 1..=order {
        let c = comm.coeff_of(Var::X, k as i32)?;
        if c.is_empty() && c.is_certified(&Exps::xt(0, 0)) {
            identity_zero_degrees.push(k);
        }
    }
    let identity_satisfies_all = identity_zero_degrees.len() == order as usize;

    // The x^2 coefficient, certified to t^order after dividing by g_1.
    let window = Trunc::new(2, -(order as i32) - 3, order as i32 + 1);
    let ring = Arc::new(RingSpec::rigidity(p, (window.precision() - 2) as u32));
    let law = fgl_make(&FglLabel::Universal, &ring, window)?;
    let tr = *law.trunc();
    let g1 = sharp_coordinate(&law, &spec)?.coeff_of(Var::X, 2)?;
    let g1_is_unit = g1.min_exponent(Var::T) == Some(-1)
        && g1.coeff(Exps::xt(0, -1))? == Poly::one()
        && g1.inverse().is_ok();
    let base = psi(&law, &spec, None)?;
    let b1 = Series::constant(&ring, tr, Poly::gen(GenId::b(1)))?;
    let b1_img = base.image(GenId::b(1)).ok_or_else(|| Error::MissingRule("b1".into()))?;
    let b1_rule_holds = b1_img.agrees_with(&b1.add(&g1)?)?;
    let coord = generic_coord(&ring, tr)?;

    let report_tr = Trunc::new(0, window.t_min, order as i32);
    let num = f_series(&ring, report_tr, |j| j as i64 + 1)?;
    let den = f_series(&ring, report_tr, |_| 1)?;
    let r = num.divide_by_unit(&den)?;
    let mut rows = Vec::new();
    for d in [-2i64, -1, 0, 1, 2, 3] {
        let rule = Series::constant(&ring, tr, Poly::gen(GenId::f(1)))?.add(&g1.scale(&int(2 * d)))?;
        let data = OrientationData::new(law.clone(), coord.clone(), psi(&law, &spec, Some(rule))?, p)?;
        let x2 = frobenius_commutator(&data)?.coeff_of(Var::X, 2)?;
        let ratio = x2.divide_by_unit(&g1)?;
        if !ratio.is_certified(&Exps::xt(0, order as i32)) {
            return Err(Error::Truncation(format!("the x^2 coefficient is not certified to t^{order}")));
        }
        let ratio = ratio.rewindow(report_tr)?;
        let c = |k: i64| Series::constant(&ring, report_tr, Poly::from_int(k));
        let expected = c(2 * d + 1)?.sub(&r)?;
        let variant = c(1 - 2 * d)?.add(&r)?;
        rows.push(RigidityRow {
            d,
            matches_ratio_formula: ratio.agrees_with(&expected)?,
            matches_sign_variant: ratio.agrees_with(&variant)?,
            t0_coefficient: ratio.coeff(Exps::xt(0, 0))?,
            ratio,
        });
    }
    let t0_forces_d_zero = rows.iter().all(|r| (r.t0_coefficient == Poly::from_int(2 * r.d)) && (r.t0_coefficient.is_zero() == (r.d == 0)));

    let zero_row = rows.iter().find(|r| r.d == 0).expect("d = 0 is tested");
    let mut induction = Vec::new();
    for n in 1..=order {
        let rule: BTreeMap<GenId, Poly> = ring
            .generators()
            .map(|g| (g, if g.kind == GenKind::F && g.index < n { Poly::zero() } else { Poly::gen(g) }))
            .collect();
        let reduced = pushforward_coeffs(&rule, &zero_row.ratio, &ring)?;
        let coefficient = reduced.coeff(Exps::xt(0, n as i32))?;
        let lower_vanish = (0..n as i32).all(|k| reduced.coeff(Exps::xt(0, k)).map_or(false, |c| c.is_zero()));
        let target = Poly::gen(GenId::f(n)).scale(&int(-(n as i64)));
        induction.push(InductionStep { n, forces_n_f_n: lower_vanish && coefficient == target, coefficient });
    }

    Ok(RigidityReport {
        p,
        order,
        identity_zero_degrees,
        identity_satisfies_all,
        g1: g1.rewindow(Trunc::new(0, window.t_min, order as i32))?,
        g1_is_unit,
        b1_rule_holds,
        rows,
        t0_forces_d_zero,
        induction,
    })
}
