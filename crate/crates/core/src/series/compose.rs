//! Composition, substitution of Laurent variables, and reversion.

use std::collections::BTreeMap;

use num::traits::One;

use super::{Exps, Grading, Series};
use crate::error::{Error, Result};
use crate::ring::{Poly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    T,
    S,
}

impl Var {
    pub fn exps(self, k: i32) -> Exps {
        let mut e = Exps::default();
        self.set(&mut e, k);
        e
    }

    pub fn exponent(self, e: &Exps) -> i32 {
        match self {
            Var::X => e.x as i32,
            Var::Y => e.y as i32,
            Var::T => e.t,
            Var::S => e.s,
        }
    }

    pub fn set(self, e: &mut Exps, k: i32) {
        match self {
            Var::X => e.x = k as u32,
            Var::Y => e.y = k as u32,
            Var::T => e.t = k,
            Var::S => e.s = k,
        }
    }

    pub fn weight(self, g: &Grading) -> i64 {
        match self {
            Var::X => g.x,
            Var::Y => g.y,
            Var::T => g.t,
            Var::S => g.s,
        }
    }
}

impl Series {
    /// Σ_k coeffs[k]·g^k by Horner's rule. `cap` is the largest power whose
    /// coefficient is known (terms beyond it are unknown); the unknown tail is
    /// charged to the result's x-cap or precision.
    fn horner(coeffs: &[Series], g: &Series, cap: Option<u32>) -> Result<Series> {
        let mut r = coeffs.last().cloned().ok_or_else(|| Error::Composition("empty series".into()))?;
        for c in coeffs.iter().rev().skip(1) {
            r = r.mul(g)?.add(c)?;
        }
        match cap {
            None => Ok(r),
            Some(n) => {
                let xo = g.true_x_order();
                if xo >= 1 {
                    let bound = (n as u64 + 1) * xo as u64 - 1;
                    r.limit_x(bound.min(u32::MAX as u64) as u32)
                } else {
                    match g.val() {
                        Some(v) if v > 0 => r.limit_prec((n as i64 + 1) * v),
                        None => Ok(r),
                        _ => Err(Error::Composition(
                            "substituted series has non-positive valuation; composition does not converge".into(),
                        )),
                    }
                }
            }
        }
    }

    fn check_substitutable(g: &Series) -> Result<()> {
        if g.raw_terms().keys().any(|e| e.is_constant()) {
            return Err(Error::Composition("substituted series has a nonzero constant term".into()));
        }
        Ok(())
    }

    /// Coefficients of a series in `v` as series in the other variables, for
    /// exponents 0..=top.
    fn slices(&self, v: Var, top: u32) -> Result<Vec<Series>> {
        (0..=top).map(|k| self.coeff_of(v, k as i32)).collect()
    }

    /// The largest power of x (or y) that has to be visited.
    fn top_power(&self, v: Var, g: &Series) -> Result<(u32, Option<u32>)> {
        let cap = match v {
            Var::X => self.x_cap(),
            Var::Y => self.y_cap(),
            _ => unreachable!(),
        };
        let stored = self.max_exponent(v).unwrap_or(0).max(0) as u32;
        match cap {
            Some(c) => Ok((c, Some(c))),
            None => {
                // Unknown terms of high degree in v must land at high degree.
                if self.prec().is_some() {
                    let w = v.weight(&self.trunc().grading);
                    if g.val().map_or(false, |gv| gv < w) {
                        return Err(Error::Composition(
                            "substitution lowers degrees of an inexact series; precision cannot be certified".into(),
                        ));
                    }
                }
                Ok((stored, None))
            }
        }
    }

    /// f(g): substitutes g for x in a series without y.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        self.check_ring(g)?;
        if self.raw_terms().keys().any(|e| e.y > 0) {
            return Err(Error::Spec("compose expects a series in x without y".into()));
        }
        Series::check_substitutable(g)?;
        let (top, cap) = self.top_power(Var::X, g)?;
        let mut coeffs = self.slices(Var::X, top)?;
        let trunc = self.trunc().intersect(g.trunc())?;
        for c in coeffs.iter_mut() {
            *c = c.rewindow(trunc)?;
        }
        Series::horner(&coeffs, g, cap)
    }

    /// F(gx, gy) for a series in x and y.
    pub fn compose_xy(&self, gx: &Series, gy: &Series) -> Result<Series> {
        self.check_ring(gx)?;
        self.check_ring(gy)?;
        Series::check_substitutable(gx)?;
        Series::check_substitutable(gy)?;
        let trunc = self.trunc().intersect(gx.trunc())?.intersect(gy.trunc())?;
        let identity_x = gx.is_exact() && gx.len() == 1 && gx.coeff(Var::X.exps(1)).map_or(false, |c| c == Poly::one());
        let (top, cap) = self.top_power(Var::Y, gy)?;
        let mut coeffs = Vec::with_capacity(top as usize + 1);
        for b in 0..=top {
            let fb = self.coeff_of(Var::Y, b as i32)?.rewindow(trunc)?;
            coeffs.push(if identity_x { fb } else { fb.compose(gx)? });
        }
        Series::horner(&coeffs, gy, cap)
    }

    /// Renames x to y (the window's y bound takes the old x bound).
    pub fn x_as_y(&self) -> Result<Series> {
        if self.raw_terms().keys().any(|e| e.y > 0) {
            return Err(Error::Spec("series already involves y".into()));
        }
        let raw = self.raw_terms().iter().map(|(e, c)| (Exps { x: 0, y: e.x, ..*e }, c.clone())).collect();
        Series::from_parts(self.ring().clone(), *self.trunc(), None, self.x_cap(), self.prec(), raw)
    }

    /// The compositional inverse g with f(g(x)) = x, by Lagrange inversion:
    /// g_n = (1/n)·[x^(n-1)] (x/f)^n.
    pub fn reversion(&self) -> Result<Series> {
        if self.raw_terms().keys().any(|e| e.y > 0) {
            return Err(Error::Spec("reversion expects a series in x".into()));
        }
        if self.raw_terms().keys().any(|e| e.x == 0) {
            return Err(Error::Reversion("series has an x-free term".into()));
        }
        let trunc = *self.trunc();
        let n_max = self.x_cap().map_or(trunc.x_max, |c| c.min(trunc.x_max));
        let q = self.coeff_shift_x_down()?;
        let h = q.inverse().map_err(|e| Error::Reversion(format!("linear coefficient is not a unit: {e}")))?;
        let mut low = trunc;
        low.x_max = n_max.saturating_sub(1);
        let h = h.rewindow(low)?;
        let mut out = Series::zero(self.ring(), trunc);
        let mut pw = h.clone();
        for n in 1..=n_max {
            let c = pw.coeff_of(Var::X, n as i32 - 1)?.rewindow(trunc)?;
            let term = c.scale(&(Rat::one() / Rat::from_integer(n.into()))).shift(Var::X.exps(n as i32))?;
            out = out.add(&term)?;
            if n < n_max {
                pw = pw.mul(&h)?;
            }
        }
        let linear_only = self.is_exact() && self.raw_terms().keys().all(|e| e.x == 1);
        if linear_only {
            Ok(out)
        } else {
            out.limit_x(n_max)
        }
    }

    /// f/x for f without x-free terms.
    fn coeff_shift_x_down(&self) -> Result<Series> {
        let raw: BTreeMap<Exps, Poly> =
            self.raw_terms().iter().map(|(e, c)| (Exps { x: e.x - 1, ..*e }, c.clone())).collect();
        let gx = self.trunc().grading.x;
        Series::from_parts(
            self.ring().clone(),
            *self.trunc(),
            self.x_cap().map(|c| c - 1),
            self.y_cap(),
            self.prec().map(|p| p - gx),
            raw,
        )
    }
}

/// Replaces the Laurent variable `v` (t or s) of `s` by `h`, a series whose
/// lead is a nonzero rational times a t,s monomial.
pub fn substitute(s: &Series, v: Var, h: &Series) -> Result<Series> {
    if !matches!(v, Var::T | Var::S) {
        return Err(Error::Spec("only t and s can be substituted by Laurent series".into()));
    }
    s.check_ring(h)?;
    if h.raw_terms().keys().any(|e| e.x > 0 || e.y > 0) {
        return Err(Error::Spec("substituted Laurent series must be free of x and y".into()));
    }
    let trunc = s.trunc().intersect(h.trunc())?;
    let g = trunc.grading;
    let w = v.weight(&g);
    let hv = h.val().ok_or_else(|| Error::Composition("substituting zero".into()))?;
    let lo_stored = s.min_exponent(v).unwrap_or(0);
    let hi = s.max_exponent(v).unwrap_or(0);
    let mut lo = lo_stored;
    if s.prec().is_some() {
        if hv < w {
            return Err(Error::Composition(
                "substitution lowers degrees of an inexact series; precision cannot be certified".into(),
            ));
        }
        // Unknown terms at the lowest admissible exponent lose the most.
        let vmin = match v {
            Var::T => trunc.t_min,
            _ => trunc.s_min,
        };
        lo = lo.min(vmin);
    }
    let mut out = Series::zero(s.ring(), trunc);
    let h_inv = if lo < 0 { Some(h.inverse()?) } else { None };
    let mut pos = Series::one(s.ring(), trunc)?;
    let mut neg = Series::one(s.ring(), trunc)?;
    let mut cache: BTreeMap<i32, Series> = BTreeMap::new();
    cache.insert(0, pos.clone());
    for k in 1..=hi.max(0) {
        pos = pos.mul(h)?;
        cache.insert(k, pos.clone());
    }
    for k in 1..=(-lo).max(0) {
        neg = neg.mul(h_inv.as_ref().unwrap())?;
        cache.insert(-k, neg.clone());
    }
    for k in lo..=hi {
        let c = s.coeff_of(v, k)?.rewindow(trunc)?;
        if c.is_empty() && c.prec().is_none() {
            continue;
        }
        out = out.add(&c.mul(&cache[&k])?)?;
    }
    Ok(out)
}
