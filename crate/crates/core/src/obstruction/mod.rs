//! The E_n obstruction pipeline: Frobenius commutators, obstruction series,
//! long-division verdicts, the JN obstruction and the cyclotomic rigidity check.

mod jn;
mod rigidity;


use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgl::{fgl_make, k_series, quillen_idempotent_coord, Coord, Fgl, FglLabel};
use crate::frobenius::{euler_chi, sharp_coordinate, FrobAction, SharpSpec};
use crate::ring::{is_prime, RingSpec};
use crate::series::{long_divide_by_p_series, Exps, Series, Trunc, Var};

pub use jn::{jn_default_window, jn_obstruction, JnResult};
pub use rigidity::{cyclotomic_rigidity_constraints, RigidityReport};

/// An orientation φ with φ(x_u) = f(x) into a ring carrying the law `base_fgl`,
/// together with the Frobenius on that ring's coefficients.
#[derive(Clone, Debug)]
pub struct OrientationData {
    pub base_fgl: Fgl,
    pub coord: Coord,
    pub frob: FrobAction,
    pub prime: u32,
}

impl OrientationData {
    pub fn new(base_fgl: Fgl, coord: Coord, frob: FrobAction, prime: u32) -> Result<OrientationData> {
        if !is_prime(prime) {
            return Err(Error::Spec(format!("{prime} is not prime")));
        }
        if coord.series().ring() != base_fgl.ring() || frob.ring() != base_fgl.ring() {
            return Err(Error::Spec("coordinate, Frobenius and law must share one ring".into()));
        }
        if frob.prime() != prime {
            return Err(Error::Spec(format!("the Frobenius action is for p = {}, not {prime}", frob.prime())));
        }
        Ok(OrientationData { base_fgl, coord, frob, prime })
    }

    /// The p-typified Todd orientation: f = exp_typ(log_Td(x)), β ↦ pβ.
    pub fn todd_p_typical(p: u32, window: Trunc) -> Result<OrientationData> {
        let ring = Arc::new(RingSpec::todd());
        let f = fgl_make(&FglLabel::Todd, &ring, window)?;
        let coord = quillen_idempotent_coord(&f, p)?;
        let frob = FrobAction::todd(p, &ring)?;
        OrientationData::new(f, coord, frob, p)
    }

    /// f = x over the Todd law.
    pub fn identity(p: u32, window: Trunc) -> Result<OrientationData> {
        let ring = Arc::new(RingSpec::todd());
        let f = fgl_make(&FglLabel::Todd, &ring, window)?;
        let coord = Coord::identity(&ring, *f.trunc())?;
        let frob = FrobAction::todd(p, &ring)?;
        OrientationData::new(f, coord, frob, p)
    }

    /// f = x over the universal law, coefficients fixed by the Frobenius.
    pub fn identity_universal(p: u32, window: Trunc) -> Result<OrientationData> {
        let cap = (window.full_xy().x_max as i64 - 1).max(1) as u32;
        let ring = Arc::new(RingSpec::universal(cap));
        let f = fgl_make(&FglLabel::Universal, &ring, window)?;
        let coord = Coord::identity(&ring, *f.trunc())?;
        let frob = FrobAction::identity(p, &ring)?;
        OrientationData::new(f, coord, frob, p)
    }

    /// Looks up a named preset: `todd-p-typical` or `identity`.
    pub fn preset(name: &str, p: u32, window: Trunc) -> Result<OrientationData> {
        match name {
            "todd-p-typical" => OrientationData::todd_p_typical(p, window),
            "identity" => OrientationData::identity(p, window),
            "identity-universal" => OrientationData::identity_universal(p, window),
            other => Err(Error::Config(format!(
                "unknown orientation {other:?}; expected todd-p-typical, identity or identity-universal"
            ))),
        }
    }

    pub fn window(&self) -> &Trunc {
        self.base_fgl.window()
    }

    /// The user window with the law's Laurent floors.
    fn report_window(&self) -> Trunc {
        let mut w = *self.window();
        w.t_min = w.t_min.min(self.base_fgl.trunc().t_min);
        w
    }
}

/// Fr(f)(x·∏(x +_F [k]t)/[k]t) − f(x)·∏ f(x +_F [k]t)/f([k]t), unreduced.
pub fn frobenius_commutator(data: &OrientationData) -> Result<Series> {
    let f = &data.base_fgl;
    let fx = data.coord.series().rewindow(*f.trunc())?;
    let frob = sharp_coordinate(f, &SharpSpec::lift(data.prime))?;
    let first = data.frob.apply(&fx)?.compose(&frob)?;
    let mut second = fx.clone();
    for k in 1..data.prime as i64 {
        let kt = k_series(f, k)?;
        let num = fx.compose(&f.x_plus(&kt)?)?;
        let den = fx.compose(&kt)?;
        let ratio = num.divide_by_unit(&den).map_err(|e| match e {
            Error::Division(m) => Error::Division(format!("f([{k}](t)) is not a unit: {m}")),
            other => other,
        })?;
        second = second.mul(&ratio)?;
    }
    first.sub(&second)?.rewindow(data.report_window())
}

/// χ·[Fr, f] with χ = ∏_{k<p} [k]_F(t): the t-inverted obstruction series.
pub fn obstruction_series(data: &OrientationData) -> Result<Series> {
    let comm = frobenius_commutator(data)?;
    let chi = euler_chi(&data.base_fgl, data.prime)?;
    let tr = comm.trunc().intersect(chi.trunc()).unwrap_or(*comm.trunc());
    comm.mul(&chi.rewindow(tr)?)?.rewindow(data.report_window())
}

/// The E_n level n, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl Level {
    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "inf" | "infinity" | "∞" => Some(Level::Infinite),
            _ => s.parse().ok().filter(|&n| n >= 1).map(Level::Finite),
        }
    }

    fn to_json(self) -> Value {
        match self {
            Level::Finite(n) => json!(n),
            Level::Infinite => json!("inf"),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Infinite => write!(f, "inf"),
        }
    }
}

/// ⌊(n−1)(p−1)/2⌋, the top t-degree that must vanish mod p; ∞ gives `t_max`.
pub fn en_vanishing_bound(p: u32, n: Level, trunc: &Trunc) -> Result<i32> {
    match n {
        Level::Finite(0) => Err(Error::Precondition("n must be at least 1".into())),
        Level::Finite(n) => Ok(((n as i64 - 1) * (p as i64 - 1) / 2) as i32),
        Level::Infinite => Ok(trunc.t_max.max(0)),
    }
}

/// One x-degree of a verdict.
#[derive(Clone, Debug)]
pub struct VerdictSlice {
    pub x_degree: u32,
    pub laurent_coefficient: Series,
    /// Terms of t-degree at most tbd left after long division, reduced mod p.
    pub remainder_mod_p: Series,
}

#[derive(Clone, Debug)]
pub struct ObstructionVerdict {
    pub p: u32,
    pub n: Level,
    pub tbd: i32,
    pub slices: Vec<VerdictSlice>,
    pub first_failure: Option<u32>,
    pub excluded_n: Option<Level>,
}

impl ObstructionVerdict {
    pub fn failed(&self) -> bool {
        self.first_failure.is_some()
    }

    pub fn slice(&self, x_degree: u32) -> Option<&VerdictSlice> {
        self.slices.iter().find(|s| s.x_degree == x_degree)
    }

    pub fn to_json(&self) -> Value {
        let slices: Vec<Value> = self
            .slices
            .iter()
            .map(|s| {
                json!({
                    "x_degree": s.x_degree,
                    "laurent_coefficient": s.laurent_coefficient.reported_text(),
                    "remainder_terms": s.remainder_mod_p.to_json(),
                })
            })
            .collect();
        json!({
            "p": self.p,
            "n": self.n.to_json(),
            "tbd": self.tbd,
            "slices": slices,
            "first_failure": self.first_failure,
            "excluded_n": self.excluded_n.map(Level::to_json),
        })
    }

    pub fn text(&self) -> String {
        let mut out = format!("E_{} obstruction at p = {}, vanishing bound t^{}\n", self.n, self.p, self.tbd);
        for s in &self.slices {
            out.push_str(&format!("x^{}: remainder {} (mod {})\n", s.x_degree, s.remainder_mod_p.display_text(), self.p));
        }
        match self.first_failure {
            Some(x) => out.push_str(&format!("obstruction found: first failure at x^{x}; not E_{}\n", self.n)),
            None => out.push_str("no obstruction found in the window\n"),
        }
        out
    }
}

/// Long-divides each x-coefficient of the obstruction series by [p]_F(t) until
/// every t-degree below tbd is cleared, then reduces what is left at t-degrees
/// up to tbd mod p. A nonzero residue excludes E_n.
pub fn en_verdict(data: &OrientationData, n: Level) -> Result<ObstructionVerdict> {
    let p = data.prime;
    let window = *data.window();
    let tbd = en_vanishing_bound(p, n, &window)?;
    if window.t_max < tbd {
        return Err(Error::Precondition(format!("the window stops at t^{} below the bound t^{tbd}", window.t_max)));
    }
    let obs = obstruction_series(data)?;
    let pseries = k_series(&data.base_fgl, p as i64)?;
    let mut slices = Vec::new();
    for x in 1..=window.x_max {
        let coeff = obs.coeff_of(Var::X, x as i32)?;
        let tr = coeff.trunc().intersect(pseries.trunc())?;
        let div = long_divide_by_p_series(&coeff.rewindow(tr)?, &pseries.rewindow(tr)?, p, tbd)?;
        let low: Vec<(Exps, _)> =
            div.remainder.terms().filter(|(e, _)| e.t <= tbd).map(|(e, c)| (*e, c.clone())).collect();
        let certified = Exps::xt(0, tbd);
        if !div.remainder.is_certified(&certified) {
            return Err(Error::Truncation(format!("the x^{x} remainder at t^{tbd} is not certified by the window")));
        }
        let rem = Series::from_terms(coeff.ring(), Trunc::new(0, tr.t_min, tbd), low)?
            .mod_p(p)
            .map_err(|e| attach_x_degree(e, x))?;
        slices.push(VerdictSlice { x_degree: x, laurent_coefficient: coeff, remainder_mod_p: rem });
    }
    let first_failure = slices.iter().find(|s| !s.remainder_mod_p.is_empty()).map(|s| s.x_degree);
    Ok(ObstructionVerdict { p, n, tbd, slices, first_failure, excluded_n: first_failure.map(|_| n) })
}

fn attach_x_degree(e: Error, x: u32) -> Error {
    match e {
        Error::PIntegrality { p, coeff, .. } => Error::PIntegrality { p, coeff, x_degree: Some(x) },
        other => other,
    }
}
