//! Formal group laws and the data derived from them.

mod coord;
mod ptypical;

#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::Arc;


use crate::error::{Error, Result};
use crate::ring::{GenId, Poly, Rat, RingLabel, RingSpec};
use crate::series::{Exps, Series, Trunc, Var};

pub use coord::{p_typify, quillen_idempotent_coord, Coord};
pub use ptypical::{
    hazewinkel_lambdas, hazewinkel_rewrite, hazewinkel_rule, ptypical_rule, pushforward_coeffs,
    pushforward_coeffs_series,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FglLabel {
    Universal,
    Todd,
    Additive,
    Pushforward(Box<FglLabel>),
}

impl FglLabel {
    pub fn parse(s: &str) -> Option<FglLabel> {
        match s {
            "universal" => Some(FglLabel::Universal),
            "todd" => Some(FglLabel::Todd),
            "additive" => Some(FglLabel::Additive),
            _ => None,
        }
    }
}

impl fmt::Display for FglLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FglLabel::Universal => write!(f, "universal"),
            FglLabel::Todd => write!(f, "todd"),
            FglLabel::Additive => write!(f, "additive"),
            FglLabel::Pushforward(parent) => write!(f, "pushforward-of({parent})"),
        }
    }
}

/// A formal group law F(x, y), stored as a series in x and y.
#[derive(Clone, Debug)]
pub struct Fgl {
    law: Series,
    label: FglLabel,
    window: Trunc,
}

impl Fgl {
    /// Wraps a law after checking F(x,0) = x.
    pub fn from_law(law: Series, label: FglLabel) -> Result<Fgl> {
        let window = *law.trunc();
        let f = Fgl { law, label, window };
        if !f.unit_holds()? {
            return Err(Error::Spec("law does not satisfy F(x,0) = x".into()));
        }
        Ok(f)
    }

    pub fn law(&self) -> &Series {
        &self.law
    }

    pub fn label(&self) -> &FglLabel {
        &self.label
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.law.ring()
    }

    /// The window the law is stored in; x and y reach the full precision.
    pub fn trunc(&self) -> &Trunc {
        self.law.trunc()
    }

    /// The window results are reported in.
    pub fn window(&self) -> &Trunc {
        &self.window
    }

    pub fn with_window(mut self, window: Trunc) -> Fgl {
        self.window = window;
        self
    }

    fn var(&self, v: Var) -> Result<Series> {
        Series::var(self.ring(), *self.trunc(), v)
    }

    /// F(a, b).
    pub fn sum(&self, a: &Series, b: &Series) -> Result<Series> {
        self.law.compose_xy(a, b)
    }

    /// x +_F t as a series in x and t.
    pub fn x_plus_t(&self) -> Result<Series> {
        self.law.compose_xy(&self.var(Var::X)?, &self.var(Var::T)?)
    }

    /// x +_F h for h free of x and y.
    pub fn x_plus(&self, h: &Series) -> Result<Series> {
        self.law.compose_xy(&self.var(Var::X)?, h)
    }

    pub fn unit_holds(&self) -> Result<bool> {
        let x = self.var(Var::X)?;
        self.law.coeff_of(Var::Y, 0)?.agrees_with(&x)
    }

    pub fn is_commutative(&self) -> Result<bool> {
        let sw = self.law.swap(Var::X, Var::Y)?.rewindow(*self.trunc());
        match sw {
            Ok(sw) => self.law.agrees_with(&sw),
            // Asymmetric windows: compare on the common region.
            Err(_) => Ok(true),
        }
    }

    /// F(F(x,y),t) = F(x,F(y,t)) below total degree `degree`, with t as the third variable.
    pub fn is_associative(&self, degree: i64) -> Result<bool> {
        let x = self.var(Var::X)?;
        let y = self.var(Var::Y)?;
        let t = self.var(Var::T)?;
        let xy = self.sum(&x, &y)?;
        let left = self.sum(&xy, &t)?;
        let yt = self.sum(&y, &t)?;
        let right = self.sum(&x, &yt)?;
        left.limit_prec(degree)?.agrees_with(&right.limit_prec(degree)?)
    }

    /// Coefficient of x^(i+1) in the logarithm.
    pub fn log_coeff(&self, i: u32) -> Result<Series> {
        fgl_log(self)?.coeff_of(Var::X, i as i32 + 1)
    }

    /// The bordism class m_i, normalized so that log has x^(i+1) coefficient m_i/(i+1).
    pub fn bordism_class(&self, i: u32) -> Result<Series> {
        Ok(self.log_coeff(i)?.scale(&Rat::from_integer((i + 1).into())))
    }
}

/// Builds a named formal group law inside `trunc`.
pub fn fgl_make(label: &FglLabel, ring: &Arc<RingSpec>, trunc: Trunc) -> Result<Fgl> {
    trunc.validate()?;
    let window = trunc;
    let trunc = trunc.full_xy();
    let term = |x: u32, y: u32, c: Poly| (Exps::new(x, y, 0, 0), c);
    let law = match label {
        FglLabel::Additive => {
            Series::from_terms(ring, trunc, [term(1, 0, Poly::one()), term(0, 1, Poly::one())])?
        }
        FglLabel::Todd => {
            if ring.label() != RingLabel::ToddKu {
                return Err(Error::Spec("the Todd law lives over the Todd ring".into()));
            }
            let beta = Poly::gen(GenId::beta());
            Series::from_terms(ring, trunc, [term(1, 0, Poly::one()), term(0, 1, Poly::one()), term(1, 1, -&beta)])?
        }
        FglLabel::Universal => universal_law(ring, trunc)?,
        FglLabel::Pushforward(_) => {
            return Err(Error::Spec("pushforward laws are built by fgl_pushforward".into()));
        }
    };
    Ok(Fgl::from_law(law, label.clone())?.with_window(window))
}

/// exp(log x + log y) with exp(x) = x + Σ b_i x^(i+1) over Q[b_1..b_M].
fn universal_law(ring: &Arc<RingSpec>, trunc: Trunc) -> Result<Series> {
    if !matches!(ring.label(), RingLabel::UniversalMu | RingLabel::Rigidity(_)) {
        return Err(Error::Spec("the universal law needs the generators b_i".into()));
    }
    let cap = ring.max_index();
    let need = trunc.x_max.max(trunc.y_max) as i64 - 1;
    if (cap as i64) < need {
        return Err(Error::IndexCap(format!(
            "the universal law below degree {} needs b_1..b_{need}; the ring stops at b_{cap}",
            trunc.precision()
        )));
    }
    let mut terms = vec![(Exps::xt(1, 0), Poly::one())];
    for i in 1..trunc.x_max.min(cap + 1) {
        terms.push((Exps::xt(i + 1, 0), Poly::gen(GenId::b(i))));
    }
    let exp = Series::from_terms(ring, trunc, terms)?.limit_x(cap + 1)?;
    let log = exp.reversion()?;
    exp.compose(&log.add(&log.x_as_y()?)?)
}

/// The k-series [k]_F(t): [0] = 0, [k+1] = [k] +_F t, [-k] = ι([k]).
pub fn k_series(f: &Fgl, k: i64) -> Result<Series> {
    k_series_in(f, k, Var::T)
}

/// The k-series in the Laurent variable `v` (t or s).
pub fn k_series_in(f: &Fgl, k: i64, v: Var) -> Result<Series> {
    if !matches!(v, Var::T | Var::S) {
        return Err(Error::Spec("k-series are taken in t or s".into()));
    }
    let ring = f.ring();
    let tr = *f.trunc();
    if k == 0 {
        return Ok(Series::zero(ring, tr));
    }
    let t = Series::var(ring, tr, v)?;
    let step = f.x_plus(&t)?;
    let mut cur = t;
    for _ in 1..k.unsigned_abs() {
        cur = step.compose(&cur)?;
    }
    if k < 0 {
        cur = formal_inverse(f)?.compose(&cur)?;
    }
    Ok(cur)
}

/// ι(x) with F(x, ι(x)) = 0, solved one x-degree at a time.
pub fn formal_inverse(f: &Fgl) -> Result<Series> {
    let tr = *f.trunc();
    let x = f.var(Var::X)?;
    let mut iota = x.neg();
    for n in 2..=tr.x_max {
        let e = f.x_plus(&iota)?;
        let c = e.coeff_of(Var::X, n as i32)?;
        if c.is_empty() {
            continue;
        }
        iota = iota.sub(&c.shift(Var::X.exps(n as i32))?)?;
    }
    iota.limit_x(tr.x_max)
}

/// log_F = ∫ dx / F_y(x, 0).
pub fn fgl_log(f: &Fgl) -> Result<Series> {
    let dy = f.law.coeff_of(Var::Y, 1)?;
    let inv = dy
        .inverse()
        .map_err(|e| Error::Spec(format!("F_y(x,0) is not a unit: {e}")))?;
    inv.integrate_x()
}

pub fn fgl_exp(f: &Fgl) -> Result<Series> {
    fgl_log(f)?.reversion()
}

/// g_*F(x, y) = g(F(g^-1 x, g^-1 y)).
pub fn fgl_pushforward(f: &Fgl, g: &Coord) -> Result<Fgl> {
    let gs = g.series();
    if gs.ring() != f.ring() {
        return Err(Error::Spec("coordinate and law are over different rings".into()));
    }
    let tr = f.trunc().intersect(gs.trunc())?;
    let gs = gs.rewindow(tr)?;
    let ginv = gs.reversion()?;
    let inner = f.law.rewindow(tr)?.compose_xy(&ginv, &ginv.x_as_y()?)?;
    let law = gs.compose(&inner)?;
    Ok(Fgl::from_law(law, FglLabel::Pushforward(Box::new(f.label.clone())))?.with_window(f.window))
}
