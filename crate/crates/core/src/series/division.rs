//! Long division of Laurent series in t by a p-series.

use num::traits::One;

use super::{Exps, Series};
use crate::error::{Error, Result};
use crate::ring::{Poly, Rat};

/// Outcome of [`long_divide_by_p_series`].
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionRemainder {
    /// Supported in t-degrees at or above the bound.
    pub remainder: Series,
    /// `(d, m)`: at step d the multiple m·t^(d-1)·[p](t) was subtracted.
    pub multiples: Vec<(i32, Poly)>,
}

impl DivisionRemainder {
    /// Σ m·t^(d-1)·pseries + remainder, for checking the reconstruction identity.
    pub fn reconstruct(&self, pseries: &Series) -> Result<Series> {
        let mut out = self.remainder.clone();
        for (d, m) in &self.multiples {
            let step = pseries.mul_poly(m)?.shift(Exps::xt(0, d - 1))?;
            out = out.add(&step)?;
        }
        Ok(out)
    }

    /// The multiples whose coefficients are not p-integral.
    pub fn non_integral_multiples(&self, p: u32) -> Vec<(i32, Poly)> {
        self.multiples.iter().filter(|(_, m)| !m.is_p_integral(p)).cloned().collect()
    }
}

fn t_only(s: &Series) -> bool {
    s.raw_terms().keys().all(|e| e.x == 0 && e.y == 0 && e.s == 0)
}

/// Clears every t-degree below `bound`, lowest first: the coefficient c at t^d
/// is removed by subtracting (c/p)·t^(d-1)·pseries, whose lead is c·t^d.
pub fn long_divide_by_p_series(s: &Series, pseries: &Series, p: u32, bound: i32) -> Result<DivisionRemainder> {
    if !t_only(s) || !t_only(pseries) {
        return Err(Error::Spec("long division works on series in t alone".into()));
    }
    let lead = pseries.coeff(Exps::xt(0, 1))?;
    let low = pseries.min_exponent(super::Var::T);
    if lead != Poly::from_int(p as i64) || low != Some(1) {
        return Err(Error::Spec(format!("divisor must be {p}·t + O(t^2)")));
    }
    let inv_p = Rat::one() / Rat::from_integer(p.into());
    let mut rem = s.clone();
    let mut multiples = Vec::new();
    loop {
        let Some((e, c)) = rem.raw_terms().iter().next().map(|(e, c)| (*e, c.clone())) else {
            break;
        };
        if e.t >= bound {
            break;
        }
        let m = c.scale(&inv_p);
        let step = pseries.mul_poly(&m)?.shift(Exps::xt(0, e.t - 1))?;
        let next = rem.sub(&step)?;
        if next.raw_terms().get(&e).map_or(false, |c| !c.is_zero()) {
            return Err(Error::Division("lead term failed to cancel".into()));
        }
        multiples.push((e.t, m));
        rem = next;
    }
    if let Some(pr) = rem.prec() {
        if pr <= bound as i64 * rem.trunc().grading.t {
            return Err(Error::Truncation(format!(
                "series is known below t^{} only; division needs t^{}",
                pr,
                bound
            )));
        }
    }
    Ok(DivisionRemainder { remainder: rem, multiples })
}
