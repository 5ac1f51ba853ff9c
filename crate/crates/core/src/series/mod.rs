//! Truncated series in x, y (power series) and t, s (Laurent), with exact
//! polynomial coefficients.
//!
//! A series knows its coefficients on the region
//! `{x <= x_cap} ∩ {y <= y_cap} ∩ {weighted degree < prec}` (a missing cap means
//! nothing is unknown in that direction). Stored terms all lie in that region,
//! so every stored coefficient is exact and every absent coefficient inside the
//! region is a certified zero.

mod compose;
mod division;
mod render;
mod trunc;

use std::collections::BTreeMap;
use std::sync::Arc;

use num::traits::{One, Zero};

pub use compose::{substitute, Var};
pub use division::{long_divide_by_p_series, DivisionRemainder};
pub use trunc::{Grading, Trunc};

use crate::error::{Error, Result};
use crate::ring::{Poly, Rat, RingSpec};

/// Exponents of a term. The field order is the storage and display order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exps {
    pub x: u32,
    pub y: u32,
    pub s: i32,
    pub t: i32,
}

impl Exps {
    pub fn new(x: u32, y: u32, t: i32, s: i32) -> Exps {
        Exps { x, y, s, t }
    }

    pub fn xt(x: u32, t: i32) -> Exps {
        Exps { x, y: 0, s: 0, t }
    }

    pub fn degree(&self, g: &Grading) -> i64 {
        g.x * self.x as i64 + g.y * self.y as i64 + g.t * self.t as i64 + g.s * self.s as i64
    }

    fn add(&self, o: &Exps) -> Exps {
        Exps { x: self.x + o.x, y: self.y + o.y, s: self.s + o.s, t: self.t + o.t }
    }

    fn is_zero(&self) -> bool {
        *self == Exps::default()
    }
}

fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn add_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

#[derive(Clone, Debug)]
pub struct Series {
    ring: Arc<RingSpec>,
    trunc: Trunc,
    x_cap: Option<u32>,
    y_cap: Option<u32>,
    prec: Option<i64>,
    /// Every true term, known or not, has at least this x-exponent.
    x_floor: u32,
    terms: BTreeMap<Exps, Poly>,
}

impl PartialEq for Series {
    fn eq(&self, o: &Series) -> bool {
        self.ring == o.ring
            && self.trunc == o.trunc
            && self.x_cap == o.x_cap
            && self.y_cap == o.y_cap
            && self.prec == o.prec
            && self.terms == o.terms
    }
}

impl Series {
    /// Builds a series from raw parts, clipping to the window.
    fn finish(
        ring: Arc<RingSpec>,
        trunc: Trunc,
        x_cap: Option<u32>,
        y_cap: Option<u32>,
        prec: Option<i64>,
        raw: BTreeMap<Exps, Poly>,
    ) -> Result<Series> {
        let xc = x_cap.map_or(trunc.x_max, |c| c.min(trunc.x_max));
        let yc = y_cap.map_or(trunc.y_max, |c| c.min(trunc.y_max));
        let wp = trunc.precision();
        let pc = prec.map_or(wp, |p| p.min(wp));
        let (mut cut_x, mut cut_y, mut cut_p) = (false, false, false);
        let mut terms = BTreeMap::new();
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            if e.x > xc {
                cut_x = true;
                continue;
            }
            if e.y > yc {
                cut_y = true;
                continue;
            }
            if e.degree(&trunc.grading) >= pc {
                cut_p = true;
                continue;
            }
            if e.t < trunc.t_min || e.s < trunc.s_min {
                return Err(Error::WindowUnderflow(render::term_text(&e, &c)));
            }
            terms.insert(e, c);
        }
        Ok(Series {
            ring,
            trunc,
            x_cap: (x_cap.is_some() || cut_x).then_some(xc),
            y_cap: (y_cap.is_some() || cut_y).then_some(yc),
            prec: (prec.is_some() || cut_p).then_some(pc),
            x_floor: 0,
            terms,
        })
    }

    pub fn from_terms(
        ring: &Arc<RingSpec>,
        trunc: Trunc,
        terms: impl IntoIterator<Item = (Exps, Poly)>,
    ) -> Result<Series> {
        trunc.validate()?;
        let mut raw: BTreeMap<Exps, Poly> = BTreeMap::new();
        for (e, c) in terms {
            ring.check(&c)?;
            *raw.entry(e).or_default() += &c;
        }
        Series::finish(ring.clone(), trunc, None, None, None, raw)
    }

    pub fn zero(ring: &Arc<RingSpec>, trunc: Trunc) -> Series {
        Series { ring: ring.clone(), trunc, x_cap: None, y_cap: None, prec: None, x_floor: 0, terms: BTreeMap::new() }
    }

    pub fn monomial(ring: &Arc<RingSpec>, trunc: Trunc, e: Exps, c: Poly) -> Result<Series> {
        Series::from_terms(ring, trunc, [(e, c)])
    }

    pub fn constant(ring: &Arc<RingSpec>, trunc: Trunc, c: Poly) -> Result<Series> {
        Series::monomial(ring, trunc, Exps::default(), c)
    }

    pub fn one(ring: &Arc<RingSpec>, trunc: Trunc) -> Result<Series> {
        Series::constant(ring, trunc, Poly::one())
    }

    pub fn var(ring: &Arc<RingSpec>, trunc: Trunc, v: Var) -> Result<Series> {
        Series::monomial(ring, trunc, v.exps(1), Poly::one())
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    pub fn x_cap(&self) -> Option<u32> {
        self.x_cap
    }

    pub fn y_cap(&self) -> Option<u32> {
        self.y_cap
    }

    /// Weighted degree from which coefficients are unknown; `None` when exact.
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.x_cap.is_none() && self.y_cap.is_none() && self.prec.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn degree(&self, e: &Exps) -> i64 {
        e.degree(&self.trunc.grading)
    }

    /// Whether the coefficient at `e` is known.
    pub fn is_certified(&self, e: &Exps) -> bool {
        self.x_cap.map_or(true, |c| e.x <= c)
            && self.y_cap.map_or(true, |c| e.y <= c)
            && self.prec.map_or(true, |p| self.degree(e) < p)
            && e.t >= self.trunc.t_min
            && e.s >= self.trunc.s_min
    }

    /// The coefficient at `e`, failing when it is not certified.
    pub fn coeff(&self, e: Exps) -> Result<Poly> {
        if !self.is_certified(&e) {
            return Err(Error::Truncation(format!(
                "coefficient x^{} y^{} t^{} s^{} is outside the known region",
                e.x, e.y, e.t, e.s
            )));
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_default())
    }

    /// Lower bound for the degree of every true term; `None` for exact zero.
    pub fn val(&self) -> Option<i64> {
        let stored = self.terms.keys().map(|e| self.degree(e)).min();
        min_opt(stored, self.prec)
    }

    fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.degree(e)).max()
    }

    /// Minimal x-exponent over stored terms.
    pub fn x_order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.x).min()
    }

    /// Least x-exponent any true term can have.
    pub(crate) fn true_x_order(&self) -> u32 {
        let stored = self.terms.keys().map(|e| e.x).min();
        let unknown = if self.prec.is_some() || self.y_cap.is_some() {
            Some(self.x_floor)
        } else {
            self.x_cap.map(|c| (c + 1).max(self.x_floor))
        };
        match (stored, unknown) {
            (Some(s), Some(u)) => s.min(u),
            (Some(s), None) => s,
            (None, Some(u)) => u,
            (None, None) => u32::MAX,
        }
    }

    /// Records that every true term is divisible by x^n (the caller's guarantee).
    pub fn with_x_floor(mut self, n: u32) -> Series {
        self.x_floor = self.x_floor.max(n);
        self
    }

    fn floored(mut self, n: u32) -> Series {
        self.x_floor = if n == u32::MAX { 0 } else { n };
        self
    }

    fn check_ring(&self, other: &Series) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Spec(format!(
                "series over {} and {} cannot be combined",
                self.ring.label(),
                other.ring.label()
            )))
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let trunc = self.trunc.intersect(&other.trunc)?;
        let mut raw = self.terms.clone();
        for (e, c) in &other.terms {
            *raw.entry(*e).or_default() += c;
        }
        let fl = self.true_x_order().min(other.true_x_order());
        Ok(self.clip(other, trunc, raw)?.floored(fl))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let trunc = self.trunc.intersect(&other.trunc)?;
        let mut raw = self.terms.clone();
        for (e, c) in &other.terms {
            *raw.entry(*e).or_default() -= c;
        }
        let fl = self.true_x_order().min(other.true_x_order());
        Ok(self.clip(other, trunc, raw)?.floored(fl))
    }

    fn clip(&self, other: &Series, trunc: Trunc, raw: BTreeMap<Exps, Poly>) -> Result<Series> {
        let x_cap = min_opt(self.x_cap, other.x_cap);
        let y_cap = min_opt(self.y_cap, other.y_cap);
        let prec = min_opt(self.prec, other.prec);
        // Terms of one summand outside the other's knowledge are unknown in the sum.
        let ok = |e: &Exps| {
            x_cap.map_or(true, |c| e.x <= c)
                && y_cap.map_or(true, |c| e.y <= c)
                && prec.map_or(true, |p| e.degree(&trunc.grading) < p)
        };
        let raw = raw.into_iter().filter(|(e, _)| ok(e)).collect();
        Series::finish(self.ring.clone(), trunc, x_cap, y_cap, prec, raw)
    }

    pub fn neg(&self) -> Series {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Series {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
            return out;
        }
        for v in out.terms.values_mut() {
            *v = v.scale(c);
        }
        out
    }

    pub fn mul_poly(&self, c: &Poly) -> Result<Series> {
        self.ring.check(c)?;
        let raw = self.terms.iter().map(|(e, v)| (*e, v * c)).collect();
        Ok(Series::finish(self.ring.clone(), self.trunc, self.x_cap, self.y_cap, self.prec, raw)?.floored(self.x_floor))
    }

    /// Multiplication by the monomial x^a y^b t^c s^d; caps move with it.
    pub fn shift(&self, by: Exps) -> Result<Series> {
        let g = self.trunc.grading;
        let raw = self.terms.iter().map(|(e, v)| (e.add(&by), v.clone())).collect();
        let fl = self.true_x_order().saturating_add(by.x);
        Ok(Series::finish(
            self.ring.clone(),
            self.trunc,
            self.x_cap.map(|c| c + by.x),
            self.y_cap.map(|c| c + by.y),
            self.prec.map(|p| p + by.degree(&g)),
            raw,
        )?
        .floored(fl))
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let trunc = self.trunc.intersect(&other.trunc)?;
        let g = trunc.grading;
        let wp = trunc.precision();

        let kx = min_opt(self.x_cap, other.x_cap);
        let ky = min_opt(self.y_cap, other.y_cap);
        let kp = min_opt(add_opt(self.prec, other.val()), add_opt(other.prec, self.val()));
        let ex = kx.map_or(trunc.x_max, |c| c.min(trunc.x_max));
        let ey = ky.map_or(trunc.y_max, |c| c.min(trunc.y_max));
        let ep = kp.map_or(wp, |p| p.min(wp));

        let max_x = |s: &Series| s.terms.keys().map(|e| e.x).max().unwrap_or(0);
        let max_y = |s: &Series| s.terms.keys().map(|e| e.y).max().unwrap_or(0);
        let both = !self.terms.is_empty() && !other.terms.is_empty();
        let over_x = both && max_x(self) + max_x(other) > trunc.x_max;
        let over_y = both && max_y(self) + max_y(other) > trunc.y_max;
        let over_p = both && self.max_degree().unwrap() + other.max_degree().unwrap() >= wp;

        let b_terms: Vec<(Exps, i64, &Poly)> =
            other.terms.iter().map(|(e, c)| (*e, e.degree(&g), c)).collect();
        let mut raw: BTreeMap<Exps, Poly> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = ea.degree(&g);
            for (eb, db, cb) in &b_terms {
                if ea.x + eb.x > ex {
                    // b is sorted by x first.
                    break;
                }
                if ea.y + eb.y > ey || da + db >= ep {
                    continue;
                }
                let prod = ca * *cb;
                *raw.entry(ea.add(eb)).or_default() += &prod;
            }
        }
        let fl = self.true_x_order().saturating_add(other.true_x_order());
        Ok(Series::finish(
            self.ring.clone(),
            trunc,
            if kx.is_some() || over_x { Some(ex) } else { None },
            if ky.is_some() || over_y { Some(ey) } else { None },
            if kp.is_some() || over_p { Some(ep) } else { None },
            raw,
        )?
        .floored(fl))
    }

    pub fn pow(&self, n: u32) -> Result<Series> {
        let mut result = Series::one(&self.ring, self.trunc)?;
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Coefficient of `v^k` as a series in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: i32) -> Result<Series> {
        let g = self.trunc.grading;
        if v == Var::X && (k < 0 || (k as u32) < self.true_x_order()) {
            return Ok(Series::zero(&self.ring, self.trunc));
        }
        let mut raw = BTreeMap::new();
        for (e, c) in &self.terms {
            if v.exponent(e) == k {
                let mut e2 = *e;
                v.set(&mut e2, 0);
                raw.insert(e2, c.clone());
            }
        }
        let (x_cap, y_cap) = match v {
            Var::X => {
                if self.x_cap.map_or(false, |c| k as i64 > c as i64) {
                    return Err(Error::Truncation(format!("x^{k} coefficient is beyond the known x-degree")));
                }
                (None, self.y_cap)
            }
            Var::Y => {
                if self.y_cap.map_or(false, |c| k as i64 > c as i64) {
                    return Err(Error::Truncation(format!("y^{k} coefficient is beyond the known y-degree")));
                }
                (self.x_cap, None)
            }
            _ => (self.x_cap, self.y_cap),
        };
        let prec = self.prec.map(|p| p - v.weight(&g) * k as i64);
        let fl = if v == Var::X { 0 } else { self.x_floor };
        Ok(Series::finish(self.ring.clone(), self.trunc, x_cap, y_cap, prec, raw)?.floored(fl))
    }

    /// Largest exponent of `v` among stored terms.
    pub fn max_exponent(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|e| v.exponent(e)).max()
    }

    pub fn min_exponent(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|e| v.exponent(e)).min()
    }

    /// Exchanges the roles of two variables of the same kind (x<->y or t<->s).
    pub fn swap(&self, a: Var, b: Var) -> Result<Series> {
        let laurent = |v: Var| matches!(v, Var::T | Var::S);
        if laurent(a) != laurent(b) {
            return Err(Error::Spec("can only swap x with y or t with s".into()));
        }
        let mut tr = self.trunc;
        let mut g = tr.grading;
        match (a, b) {
            (Var::X, Var::Y) | (Var::Y, Var::X) => {
                std::mem::swap(&mut tr.x_max, &mut tr.y_max);
                std::mem::swap(&mut g.x, &mut g.y);
            }
            (Var::T, Var::S) | (Var::S, Var::T) => {
                std::mem::swap(&mut tr.t_min, &mut tr.s_min);
                std::mem::swap(&mut tr.t_max, &mut tr.s_max);
                std::mem::swap(&mut g.t, &mut g.s);
            }
            _ => return Ok(self.clone()),
        }
        tr.grading = g;
        let raw = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                let (ea, eb) = (a.exponent(e), b.exponent(e));
                a.set(&mut e2, eb);
                b.set(&mut e2, ea);
                (e2, c.clone())
            })
            .collect();
        let (x_cap, y_cap) = if matches!(a, Var::X | Var::Y) {
            (self.y_cap, self.x_cap)
        } else {
            (self.x_cap, self.y_cap)
        };
        Series::finish(self.ring.clone(), tr, x_cap, y_cap, self.prec, raw)
    }

    /// Termwise antiderivative in x: x^n ↦ x^(n+1)/(n+1).
    pub fn integrate_x(&self) -> Result<Series> {
        let raw = self
            .terms
            .iter()
            .map(|(e, c)| (Exps { x: e.x + 1, ..*e }, c.scale(&(Rat::one() / Rat::from_integer((e.x + 1).into())))))
            .collect();
        let gx = self.trunc.grading.x;
        let fl = self.true_x_order().saturating_add(1);
        Ok(Series::finish(
            self.ring.clone(),
            self.trunc,
            self.x_cap.map(|c| c + 1),
            self.y_cap,
            self.prec.map(|p| p + gx),
            raw,
        )?
        .floored(fl))
    }

    /// Same knowledge, viewed through a different window.
    pub fn rewindow(&self, trunc: Trunc) -> Result<Series> {
        trunc.validate()?;
        if trunc.grading != self.trunc.grading {
            return Err(Error::Spec("rewindow cannot change the grading".into()));
        }
        // An exact series had nothing clipped, so it stays exact in a larger window;
        // otherwise the caps carry over unchanged.
        Ok(Series::finish(self.ring.clone(), trunc, self.x_cap, self.y_cap, self.prec, self.terms.clone())?
            .floored(self.x_floor))
    }

    /// Marks every coefficient of weighted degree >= `p` as unknown.
    pub fn limit_prec(&self, p: i64) -> Result<Series> {
        Series::finish(
            self.ring.clone(),
            self.trunc,
            self.x_cap,
            self.y_cap,
            Some(self.prec.map_or(p, |q| q.min(p))),
            self.terms.clone(),
        )
        .map(|r| r.floored(self.x_floor))
    }

    pub fn limit_x(&self, c: u32) -> Result<Series> {
        Series::finish(
            self.ring.clone(),
            self.trunc,
            Some(self.x_cap.map_or(c, |d| d.min(c))),
            self.y_cap,
            self.prec,
            self.terms.clone(),
        )
        .map(|r| r.floored(self.x_floor))
    }

    /// True when the two series agree on their common knowledge region.
    pub fn agrees_with(&self, other: &Series) -> Result<bool> {
        Ok(self.sub(other)?.is_empty())
    }

    /// Applies a map to every coefficient; zero images are dropped.
    pub fn map_coeffs(&self, ring: &Arc<RingSpec>, f: impl Fn(&Poly) -> Result<Poly>) -> Result<Series> {
        let mut raw = BTreeMap::new();
        for (e, c) in &self.terms {
            let img = f(c)?;
            ring.check(&img)?;
            raw.insert(*e, img);
        }
        Ok(Series::finish(ring.clone(), self.trunc, self.x_cap, self.y_cap, self.prec, raw)?.floored(self.x_floor))
    }

    /// Reduction of every coefficient modulo p.
    pub fn mod_p(&self, p: u32) -> Result<Series> {
        self.map_coeffs(&self.ring.clone(), |c| c.mod_p(p))
    }

    /// The multiplicative inverse. The lead is the x,y-free term of least
    /// weighted degree and must be a nonzero rational times a t,s monomial;
    /// every other x,y-free term must have strictly larger degree.
    pub fn inverse(&self) -> Result<Series> {
        let g = self.trunc.grading;
        let free: Vec<(&Exps, &Poly)> = self.terms.iter().filter(|(e, _)| e.x == 0 && e.y == 0).collect();
        let lead = free
            .iter()
            .min_by_key(|(e, _)| e.degree(&g))
            .ok_or_else(|| Error::Division("no x,y-free term to invert".into()))?;
        let (le, lc) = (*lead.0, lead.1);
        let ld = le.degree(&g);
        if free.iter().filter(|(e, _)| e.degree(&g) == ld).count() > 1 {
            return Err(Error::Division("leading term is not a monomial".into()));
        }
        let c = lc
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Division(format!("leading coefficient {lc} is not invertible in Q")))?;
        if self.prec.map_or(false, |p| p <= ld) {
            return Err(Error::Division("leading term is not certified".into()));
        }
        let inv_exps = Exps { x: 0, y: 0, s: -le.s, t: -le.t };
        let lead_inv = Series::monomial(&self.ring, self.trunc, inv_exps, Poly::constant(Rat::one() / c))?;
        let normalized = self.mul(&lead_inv)?;
        let q = Series::one(&self.ring, self.trunc)?.sub(&normalized)?;
        for (e, _) in q.terms() {
            if e.x == 0 && e.y == 0 && e.degree(&g) <= 0 {
                return Err(Error::Division("series is not a unit: competing leading terms".into()));
            }
        }
        // (1 + q)(1 + q^2)(1 + q^4)... = 1/(1 - q) once q^(2^j) truncates away.
        let mut result = Series::one(&self.ring, self.trunc)?.add(&q)?;
        let mut qp = q;
        for _ in 0..64 {
            qp = qp.mul(&qp)?;
            if qp.is_empty() {
                return result.mul(&lead_inv);
            }
            result = result.mul(&Series::one(&self.ring, self.trunc)?.add(&qp)?)?;
        }
        Err(Error::Division("inverse did not converge within the window".into()))
    }

    pub fn divide_by_unit(&self, u: &Series) -> Result<Series> {
        self.mul(&u.inverse()?)
    }

    /// Checks that every coefficient has degree `d - 2 * (x + y + t + s)`.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        let mut found: Option<i64> = None;
        for (e, c) in &self.terms {
            let cd = c.degree_of()?;
            let d = cd + 2 * (e.x as i64 + e.y as i64 + e.t as i64 + e.s as i64);
            match found {
                None => found = Some(d),
                Some(f) if f != d => return Err(Error::Inhomogeneous(f, d)),
                _ => {}
            }
        }
        Ok(found)
    }

    /// Terms inside the reporting box of the window, in canonical order.
    pub fn reported_terms(&self) -> impl Iterator<Item = (&Exps, &Poly)> {
        let tr = self.trunc;
        self.terms.iter().filter(move |(e, _)| {
            e.x <= tr.x_max && e.y <= tr.y_max && e.t <= tr.t_max && e.s <= tr.s_max
        })
    }

    /// Returns an error unless every coefficient in the reporting box is certified.
    pub fn certify_box(&self) -> Result<()> {
        let tr = &self.trunc;
        let corner = Exps { x: tr.x_max.min(self.x_cap.unwrap_or(u32::MAX)), y: 0, s: tr.s_max, t: tr.t_max };
        if self.x_cap.map_or(false, |c| c < tr.x_max) {
            return Err(Error::Truncation(format!(
                "x-degrees above {} are unknown; the window asks for {}",
                self.x_cap.unwrap(),
                tr.x_max
            )));
        }
        if !self.is_certified(&corner) {
            return Err(Error::Truncation(format!(
                "known to weighted degree {} only; the window needs {}",
                self.prec.unwrap_or(i64::MAX),
                corner.degree(&tr.grading) + 1
            )));
        }
        Ok(())
    }

    pub fn text(&self) -> String {
        render::series_text(self.terms.iter())
    }

    /// Text with "·" as the product sign, as used in reports.
    pub fn display_text(&self) -> String {
        render::series_text_sep(self.reported_terms(), "·")
    }

    /// The stored terms regarded as an exact Laurent polynomial.
    pub fn truncated_polynomial(&self) -> Series {
        Series { x_cap: None, y_cap: None, prec: None, ..self.clone() }
    }

    pub fn reported_text(&self) -> String {
        render::series_text(self.reported_terms())
    }

    pub fn to_json(&self) -> serde_json::Value {
        render::series_json(self.reported_terms())
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Exps, Poly> {
        &self.terms
    }

    pub(crate) fn from_parts(
        ring: Arc<RingSpec>,
        trunc: Trunc,
        x_cap: Option<u32>,
        y_cap: Option<u32>,
        prec: Option<i64>,
        raw: BTreeMap<Exps, Poly>,
    ) -> Result<Series> {
        Series::finish(ring, trunc, x_cap, y_cap, prec, raw)
    }
}

impl Exps {
    pub(crate) fn is_constant(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests;
