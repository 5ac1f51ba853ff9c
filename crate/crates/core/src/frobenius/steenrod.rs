use std::sync::Arc;

use serde_json::{json, Value};

use super::{coefficient_action, sharp_coordinate, sharp_coordinate_in, SharpSpec};
use crate::error::{Error, Result};
use crate::fgl::{fgl_make, Fgl, FglLabel};
use crate::ring::{RingLabel, RingSpec};
use crate::series::{substitute, Exps, Grading, Series, Trunc, Var};

/// The total operation on x: Σ_i P^(-i)(x)·t^i, the sharp coordinate with
/// weights 1..p-1 and no reduction.
pub fn steenrod_total(f: &Fgl, p: u32) -> Result<Series> {
    sharp_coordinate(f, &SharpSpec::lift(p))
}

/// The total operation on x^k.
pub fn steenrod_total_of_power(f: &Fgl, p: u32, k: u32) -> Result<Series> {
    steenrod_total(f, p)?.pow(k)
}

/// P^j(α), the coefficient of t^(-j) in the total operation; j may be negative.
pub fn steenrod_component(total: &Series, j: i32) -> Result<Series> {
    total.coeff_of(Var::T, -j)
}

/// One α = x^k of the experiment.
#[derive(Clone, Debug)]
pub struct BmRow {
    pub k: u32,
    pub lhs: Series,
    pub rhs: Series,
    pub difference: Series,
    /// Difference with coefficients reduced mod p, when they are p-integral.
    pub difference_mod_p: Option<Series>,
    /// Whether every reported coefficient of both sides is unchanged in a wider window.
    pub stable: bool,
}

/// Both sides expanded in one region of the (s, t) plane.
#[derive(Clone, Debug)]
pub struct BmOrdering {
    pub name: String,
    pub grading: Grading,
    pub rows: Vec<BmRow>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BmReport {
    pub interpretation: String,
    pub law: String,
    pub prime: u32,
    pub orderings: Vec<BmOrdering>,
}

const INTERPRETATION: &str = "Sq_t(a) = sum_i Sq^i(a) t^-i. The inner operation Sq_s is applied to a = x^k; the \
outer Sq_t acts on the result as the ring map sending x to x(x +_F t)/t and each coefficient of the formal group \
law to its image under the coefficient pushforward along that coordinate, with s treated as a scalar. The left side \
substitutes s(s +_F t)/t for s, the right side exchanges the roles of s and t and substitutes t(t +_F s)/s for t. \
Both sides are expanded as Laurent series in the region set by the grading; the composite is taken on the stored \
polynomial truncation and checked for stability against a wider window.";

impl BmReport {
    pub fn to_json(&self) -> Value {
        let orderings: Vec<Value> = self
            .orderings
            .iter()
            .map(|o| {
                let rows: Vec<Value> = o
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "k": r.k,
                            "lhs": r.lhs.to_json(),
                            "rhs": r.rhs.to_json(),
                            "difference": r.difference.to_json(),
                            "difference_text": r.difference.reported_text(),
                            "difference_mod_p": r.difference_mod_p.as_ref().map(|d| d.reported_text()),
                            "stable": r.stable,
                        })
                    })
                    .collect();
                json!({
                    "name": o.name,
                    "grading": {"x": o.grading.x, "t": o.grading.t, "s": o.grading.s},
                    "rows": rows,
                    "error": o.error,
                })
            })
            .collect();
        json!({
            "experiment": "bullett-macdonald",
            "interpretation": self.interpretation,
            "law": self.law,
            "p": self.prime,
            "orderings": orderings,
        })
    }

    pub fn text(&self) -> String {
        let mut out = format!("Bullett-MacDonald experiment, {} law, p = {}\n", self.law, self.prime);
        out.push_str(&format!("interpretation: {}\n", self.interpretation));
        for o in &self.orderings {
            out.push_str(&format!("ordering {}:\n", o.name));
            if let Some(e) = &o.error {
                out.push_str(&format!("  error: {e}\n"));
            }
            for r in &o.rows {
                let modp = r.difference_mod_p.as_ref().map_or("n/a".to_string(), |d| d.reported_text());
                out.push_str(&format!(
                    "  k={}: difference {} ; mod {}: {} ; stable: {}\n",
                    r.k,
                    r.difference.reported_text(),
                    self.prime,
                    modp,
                    r.stable
                ));
            }
        }
        out
    }
}

fn ring_for(label: &FglLabel, window: &Trunc) -> Result<Arc<RingSpec>> {
    Ok(Arc::new(match label {
        FglLabel::Todd => RingSpec::todd(),
        FglLabel::Additive => RingSpec::additive(),
        FglLabel::Universal => {
            let full = window.full_xy();
            RingSpec::universal((full.x_max.max(full.y_max) as i64 - 1).max(1) as u32)
        }
        FglLabel::Pushforward(_) => {
            return Err(Error::Spec("the experiment runs on the universal, Todd or additive law".into()))
        }
    }))
}

/// Both sides of the displayed identity for one window, as exact truncations.
fn sides(label: &FglLabel, window: Trunc, k_max: u32) -> Result<Vec<(Series, Series)>> {
    let ring = ring_for(label, &window)?;
    // Expansions of 1/(s + t) reach far below the reported box.
    let mut work = window;
    let floor = -4 * window.precision() as i32;
    work.t_min = floor;
    work.s_min = floor;
    let f = fgl_make(label, &ring, work)?;
    let spec = SharpSpec::lift(2);
    let gt = sharp_coordinate_in(&f, &spec, Var::T)?;
    let gs = sharp_coordinate_in(&f, &spec, Var::S)?;
    let d_max = if ring.label() == RingLabel::UniversalMu {
        ring.max_index().min(f.trunc().x_max.saturating_sub(1))
    } else {
        0
    };
    let frt = coefficient_action(&f, &spec, Var::T, d_max)?;
    let frs = coefficient_action(&f, &spec, Var::S, d_max)?;
    let tr = *f.trunc();
    let s = Series::var(&ring, tr, Var::S)?;
    let t = Series::var(&ring, tr, Var::T)?;
    // s(s +_F t)/t and t(t +_F s)/s
    let u = f.sum(&s, &t)?.mul(&s)?.divide_by_unit(&t)?;
    let w = f.sum(&t, &s)?.mul(&t)?.divide_by_unit(&s)?;
    let mut out = Vec::new();
    for k in 0..=k_max {
        let h = frt.apply(&gs.pow(k)?)?.compose(&gt)?;
        let h2 = frs.apply(&gt.pow(k)?)?.compose(&gs)?;
        let lhs = substitute(&h.truncated_polynomial(), Var::S, &u.truncated_polynomial())?;
        let rhs = substitute(&h2.truncated_polynomial(), Var::T, &w.truncated_polynomial())?;
        out.push((clip_box(&lhs, &window)?, clip_box(&rhs, &window)?));
    }
    Ok(out)
}

fn in_box(e: &Exps, w: &Trunc) -> bool {
    e.x <= w.x_max && e.t <= w.t_max && e.s <= w.s_max && e.t >= w.t_min && e.s >= w.s_min
}

/// The terms inside the reporting box, as an exact polynomial in `window`.
fn clip_box(s: &Series, window: &Trunc) -> Result<Series> {
    let terms = s.terms().filter(|(e, _)| in_box(e, window)).map(|(e, c)| (*e, c.clone()));
    Series::from_terms(s.ring(), *window, terms.collect::<Vec<_>>())
}

fn box_terms(s: &Series, window: &Trunc) -> Vec<(Exps, String)> {
    s.terms().filter(|(e, _)| in_box(e, window)).map(|(e, c)| (*e, c.text())).collect()
}

/// Evaluates both sides of the speculated Bullett–MacDonald identity on x^k,
/// k ≤ `k_max`, at p = 2 in two expansion regions. Nothing is asserted.
pub fn bullett_macdonald_experiment(label: &FglLabel, p: u32, window: Trunc, k_max: u32) -> Result<BmReport> {
    if p != 2 {
        return Err(Error::Precondition("the displayed identity is stated for p = 2".into()));
    }
    window.validate()?;
    if window.s_min == 0 && window.s_max == 0 {
        return Err(Error::Precondition("the experiment needs a Laurent window in s".into()));
    }
    let orderings = [
        ("s below t", Grading { x: 2, y: 2, t: 1, s: 2 }),
        ("t below s", Grading { x: 2, y: 2, t: 2, s: 1 }),
    ];
    let mut out = Vec::new();
    for (name, g) in orderings {
        let win = window.with_grading(g);
        let wide = {
            let mut w = win.with_s(win.s_min - 2, win.s_max + 2);
            w.t_min -= 2;
            w.t_max += 2;
            w.with_grading(g)
        };
        let mut ord = BmOrdering { name: name.to_string(), grading: g, rows: Vec::new(), error: None };
        match sides(label, win, k_max).and_then(|a| Ok((a, sides(label, wide, k_max)?))) {
            Ok((narrow, broad)) => {
                for (k, ((lhs, rhs), (lw, rw))) in narrow.into_iter().zip(broad).enumerate() {
                    let stable = box_terms(&lhs, &win) == box_terms(&lw, &win) && box_terms(&rhs, &win) == box_terms(&rw, &win);
                    let difference = lhs.sub(&rhs)?;
                    let difference_mod_p = difference.mod_p(p).ok();
                    ord.rows.push(BmRow { k: k as u32, lhs, rhs, difference, difference_mod_p, stable });
                }
            }
            Err(e) => ord.error = Some(e.to_string()),
        }
        out.push(ord);
    }
    if out.iter().all(|o| o.rows.is_empty()) {
        return Err(Error::Truncation(format!(
            "no coefficient could be compared: {}",
            out.iter().filter_map(|o| o.error.clone()).collect::<Vec<_>>().join("; ")
        )));
    }
    Ok(BmReport { interpretation: INTERPRETATION.to_string(), law: label.to_string(), prime: p, orderings: out })
}
