use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{en_vanishing_bound, Level};
use crate::error::{Error, Result};
use crate::fgl::{fgl_make, hazewinkel_rule, k_series, ptypical_rule, pushforward_coeffs, FglLabel};
use crate::frobenius::{coefficient_action, euler_chi, SharpSpec};
use crate::ring::{is_prime, poly_mod_p, GenId, Poly, RingSpec};
use crate::series::{long_divide_by_p_series, DivisionRemainder, Exps, Series, Trunc, Var};

/// The d-th JN obstruction series over the Hazewinkel generators.
#[derive(Clone, Debug)]
pub struct JnResult {
    pub p: u32,
    pub d: u32,
    pub tbd: i32,
    /// −φ(χ^(−d)·Fr(m_d)).
    pub series: Series,
    /// φ_*[p](t), the divisor.
    pub p_series: Series,
    pub division: DivisionRemainder,
    /// Coefficient of t^tbd after clearing lower degrees, reduced mod p.
    pub leading: Poly,
}

impl JnResult {
    pub fn leading_text(&self) -> String {
        format!("t^{}·({})", self.tbd, self.leading.text())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "d": self.d,
            "tbd": self.tbd,
            "series": self.series.reported_text(),
            "remainder": self.division.remainder.reported_text(),
            "leading_mod_p": self.leading.text(),
            "leading_poly": self.leading.to_json(),
        })
    }

    pub fn text(&self) -> String {
        format!(
            "JN_{}(t) at p = {}: {} mod ({}, <{}>(t), t^{})\n",
            self.d,
            self.p,
            self.leading_text(),
            self.p,
            self.p,
            self.tbd + 1
        )
    }
}

/// A window certifying the t^tbd coefficient: x up to d+1, and t deep
/// enough to absorb χ^(−d).
pub fn jn_default_window(p: u32, d: u32, tbd: i32) -> Trunc {
    let shift = (d * (p - 1)) as i32;
    Trunc::new(d + 1, -((d * p) as i32) - 1, tbd + shift)
}

fn is_power_minus_one(d: u32, p: u32) -> bool {
    let mut q = p as u64;
    while q <= d as u64 + 1 {
        if q == d as u64 + 1 {
            return true;
        }
        q *= p as u64;
    }
    false
}

/// The classifying map of the p-typification, written in v_1..v_depth.
fn phi_rule(p: u32, universal: &Arc<RingSpec>) -> Result<(BTreeMap<GenId, Poly>, u32)> {
    let cap = universal.max_index();
    let mut depth = 0;
    while (p as u64).pow(depth + 1) <= cap as u64 + 1 {
        depth += 1;
    }
    let haz = hazewinkel_rule(p, depth);
    let mut rule = BTreeMap::new();
    for (g, img) in ptypical_rule(p, universal)? {
        rule.insert(g, img.map_gens(&haz)?);
    }
    Ok((rule, depth))
}

/// JN_d(t) = −φ(χ^(−d)·Fr(m_d)) for the Quillen idempotent φ, long-divided by
/// φ_*[p](t) until every t-degree below tbd is cleared. Fr(m_d) is read off
/// log_F ∘ G^(−1) for the Frobenius coordinate G of the universal law.
pub fn jn_obstruction(p: u32, d: u32, n: Level, window: Trunc) -> Result<JnResult> {
    if !is_prime(p) {
        return Err(Error::Spec(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    if is_power_minus_one(d, p) {
        return Err(Error::Precondition(format!(
            "d = {d} has the form {p}^j - 1, where φ([CP^d]) does not vanish"
        )));
    }
    let tbd = en_vanishing_bound(p, n, &window)?;
    let cap = (window.precision() - 2).max(d as i64).max(1) as u32;
    let ring = Arc::new(RingSpec::universal(cap));
    let f = fgl_make(&FglLabel::Universal, &ring, window)?;
    let act = coefficient_action(&f, &SharpSpec::frobenius(p), Var::T, d)?;
    let fr_m = act.image(GenId::m(d)).ok_or_else(|| Error::IndexCap(format!("no image for m_{d}")))?;
    let chi = euler_chi(&f, p)?;
    let tr = fr_m.trunc().intersect(chi.trunc())?;
    let total = fr_m.rewindow(tr)?.mul(&chi.rewindow(tr)?.inverse()?.pow(d)?)?;
    let (rule, depth) = phi_rule(p, &ring)?;
    let bp = Arc::new(RingSpec::bp(p, depth));
    let series = pushforward_coeffs(&rule, &total, &bp)?.neg();
    let p_series = pushforward_coeffs(&rule, &k_series(&f, p as i64)?, &bp)?;
    let tr = series.trunc().intersect(p_series.trunc())?;
    let division = long_divide_by_p_series(&series.rewindow(tr)?, &p_series.rewindow(tr)?, p, tbd)?;
    let at = Exps::xt(0, tbd);
    if !division.remainder.is_certified(&at) {
        return Err(Error::Truncation(format!("JN_{d} is not certified at t^{tbd} in this window")));
    }
    let leading = poly_mod_p(&division.remainder.coeff(at)?, p)?;
    Ok(JnResult { p, d, tbd, series, p_series, division, leading })
}
