use std::collections::BTreeMap;
use std::sync::Arc;

use super::{fgl_log, Fgl};
use crate::error::{Error, Result};
use crate::ring::{Poly, RingSpec};
use crate::series::{Exps, Series, Var};

/// A coordinate change f(x) = x + Σ f_i x^(i+1).
#[derive(Clone, Debug)]
pub struct Coord {
    series: Series,
    source: Arc<RingSpec>,
    target: Arc<RingSpec>,
}

impl Coord {
    pub fn new(series: Series) -> Result<Coord> {
        let ring = series.ring().clone();
        Coord::between(series, ring.clone(), ring)
    }

    pub fn between(series: Series, source: Arc<RingSpec>, target: Arc<RingSpec>) -> Result<Coord> {
        if series.raw_terms().keys().any(|e| e.y > 0 || e.x == 0) {
            return Err(Error::Spec("a coordinate is a series in x without constant term".into()));
        }
        let lin = series.coeff_of(Var::X, 1)?;
        let one = Series::one(series.ring(), *series.trunc())?;
        if !lin.agrees_with(&one)? || !lin.is_certified(&Exps::default()) {
            return Err(Error::Spec("a coordinate must have linear coefficient exactly 1".into()));
        }
        Ok(Coord { series, source, target })
    }

    pub fn identity(ring: &Arc<RingSpec>, trunc: crate::series::Trunc) -> Result<Coord> {
        Coord::new(Series::var(ring, trunc, Var::X)?)
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }

    /// f_i, the coefficient of x^(i+1).
    pub fn coefficient(&self, i: u32) -> Result<Series> {
        self.series.coeff_of(Var::X, i as i32 + 1)
    }

    /// g∘h.
    pub fn then(&self, inner: &Coord) -> Result<Coord> {
        Coord::new(self.series.compose(&inner.series)?)
    }

    pub fn inverse(&self) -> Result<Coord> {
        Coord::new(self.series.reversion()?)
    }
}

/// Keeps the x^(p^i) terms of a logarithm; returns it with its reversion.
pub fn p_typify(log: &Series, p: u32) -> Result<(Series, Series)> {
    if log.raw_terms().keys().any(|e| e.y != 0 || e.t != 0 || e.s != 0) {
        return Err(Error::Spec("p-typification takes a logarithm in x alone".into()));
    }
    let tr = *log.trunc();
    let gx = tr.grading.x;
    // First x-degree whose coefficient is unknown.
    let by_prec = log.prec().map(|q| ((q + gx - 1) / gx).max(0) as u64);
    let by_cap = log.x_cap().map(|c| c as u64 + 1);
    let first_unknown = match (by_prec, by_cap) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let is_power = |mut n: u32| {
        while n % p == 0 {
            n /= p;
        }
        n == 1
    };
    let raw: BTreeMap<Exps, Poly> =
        log.raw_terms().iter().filter(|(e, _)| is_power(e.x)).map(|(e, c)| (*e, c.clone())).collect();
    let cap = first_unknown.map(|k| {
        let mut q: u64 = 1;
        while q < k {
            q *= p as u64;
        }
        (q - 1).min(u32::MAX as u64) as u32
    });
    let lp = Series::from_parts(log.ring().clone(), tr, cap, None, None, raw)?;
    let ep = lp.reversion()?;
    Ok((lp, ep))
}

/// The coordinate exp_ptyp(log_F(x)) whose pushforward of F is p-typical.
pub fn quillen_idempotent_coord(f: &Fgl, p: u32) -> Result<Coord> {
    let log = fgl_log(f)?;
    let (_, ep) = p_typify(&log, p)?;
    Coord::new(ep.compose(&log)?)
}
