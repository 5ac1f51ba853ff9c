use std::collections::BTreeMap;
use std::sync::Arc;

use num::traits::One;

use crate::error::{Error, Result};
use crate::ring::{GenId, GenKind, Monomial, Poly, Rat, RingLabel, RingSpec};
use crate::series::{Exps, Series, Trunc, Var};

/// Applies a generator substitution to every coefficient.
pub fn pushforward_coeffs(rule: &BTreeMap<GenId, Poly>, s: &Series, target: &Arc<RingSpec>) -> Result<Series> {
    s.map_coeffs(target, |c| c.map_gens(rule))
}

/// Like [`pushforward_coeffs`], but generators may map to Laurent series in t and s.
pub fn pushforward_coeffs_series(
    rule: &BTreeMap<GenId, Series>,
    s: &Series,
    target: &Arc<RingSpec>,
) -> Result<Series> {
    let mut tr = *s.trunc();
    for img in rule.values() {
        if img.ring() != target {
            return Err(Error::Spec("rule images must lie over the target ring".into()));
        }
        if img.raw_terms().keys().any(|e| e.x > 0 || e.y > 0) {
            return Err(Error::Spec("rule images must be free of x and y".into()));
        }
        tr = tr.intersect(img.trunc())?;
    }
    // x and y caps survive the substitution; a degree bound does not.
    if s.prec().is_some() && rule.values().any(|i| i.val().map_or(false, |v| v < 0)) {
        return Err(Error::Truncation(
            "a rule image of negative degree moves unknown terms of an inexact series into the window".into(),
        ));
    }
    let mut groups: BTreeMap<Monomial, BTreeMap<Exps, Poly>> = BTreeMap::new();
    for (e, c) in s.raw_terms() {
        for (m, r) in c.terms() {
            groups.entry(m.clone()).or_default().insert(*e, Poly::constant(r.clone()));
        }
    }
    let empty = |raw| Series::from_parts(target.clone(), tr, s.x_cap(), s.y_cap(), s.prec(), raw);
    let mut out = empty(BTreeMap::new())?;
    let mut powers: BTreeMap<(GenId, u32), Series> = BTreeMap::new();
    for (m, raw) in groups {
        let mut img = Series::one(target, tr)?;
        for &(g, k) in m.factors() {
            if !powers.contains_key(&(g, k)) {
                let base = rule.get(&g).ok_or_else(|| Error::MissingRule(g.name()))?;
                powers.insert((g, k), base.rewindow(tr)?.pow(k)?);
            }
            img = img.mul(&powers[&(g, k)])?;
        }
        out = out.add(&empty(raw)?.mul(&img)?)?;
    }
    Ok(out)
}

/// λ_0..λ_depth with p·λ_n = Σ_{i<n} λ_i v_{n-i}^(p^i).
pub fn hazewinkel_lambdas(p: u32, depth: u32) -> Vec<Poly> {
    let inv_p = Rat::one() / Rat::from_integer(p.into());
    let mut lambdas = vec![Poly::one()];
    for n in 1..=depth {
        let mut acc = Poly::zero();
        for i in 0..n {
            let v = Poly::gen(GenId::v(p, n - i)).pow(p.pow(i));
            acc += &(&lambdas[i as usize] * &v);
        }
        lambdas.push(acc.scale(&inv_p));
    }
    lambdas
}

/// m_{p^j - 1} ↦ p^j λ_j, v_j ↦ v_j.
pub fn hazewinkel_rule(p: u32, depth: u32) -> BTreeMap<GenId, Poly> {
    let lambdas = hazewinkel_lambdas(p, depth);
    let mut rule = BTreeMap::new();
    for j in 1..=depth {
        let pj = Rat::from_integer(p.pow(j).into());
        rule.insert(GenId::m(p.pow(j) - 1), lambdas[j as usize].scale(&pj));
        rule.insert(GenId::v(p, j), Poly::gen(GenId::v(p, j)));
    }
    rule
}

/// Rewrites the p-typical log classes m_{p^j - 1} in Hazewinkel generators.
pub fn hazewinkel_rewrite(s: &Series, p: u32, depth: u32) -> Result<Series> {
    let target = Arc::new(RingSpec::bp(p, depth));
    let rule = hazewinkel_rule(p, depth);
    for (_, c) in s.terms() {
        for g in c.generators() {
            if !rule.contains_key(&g) {
                return Err(Error::Rewrite(format!(
                    "{} is not in the {p}-typical subring up to v_{depth}",
                    g.name()
                )));
            }
        }
    }
    pushforward_coeffs(&rule, s, &target)
}

/// The classifying map of the p-typification on the universal ring:
/// b_i goes to the x^(i+1) coefficient of the p-typical exponential, written in
/// the m_{p^j - 1}; m_i survives exactly when i + 1 is a power of p.
pub fn ptypical_rule(p: u32, universal: &Arc<RingSpec>) -> Result<BTreeMap<GenId, Poly>> {
    if universal.label() != RingLabel::UniversalMu {
        return Err(Error::Spec("p-typification rule is defined on the universal ring".into()));
    }
    let n = universal.max_index();
    let tr = Trunc::new(n + 1, 0, 0);
    let mut terms = vec![(Exps::xt(1, 0), Poly::one())];
    let mut q = p;
    while q <= n + 1 {
        let c = Poly::gen(GenId::m(q - 1)).scale(&(Rat::one() / Rat::from_integer(q.into())));
        terms.push((Exps::xt(q, 0), c));
        q *= p;
    }
    let exp = Series::from_terms(universal, tr, terms)?.reversion()?;
    let mut rule = BTreeMap::new();
    for g in universal.generators() {
        let img = match g.kind {
            GenKind::B => exp.coeff(Var::X.exps(g.index as i32 + 1))?,
            GenKind::M if is_power(g.index + 1, p) => Poly::gen(g),
            GenKind::M => Poly::zero(),
            _ => Poly::gen(g),
        };
        rule.insert(g, img);
    }
    Ok(rule)
}

fn is_power(mut n: u32, p: u32) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}
