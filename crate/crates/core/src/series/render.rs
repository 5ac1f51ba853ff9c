use serde_json::{json, Value};

use super::Exps;
use crate::ring::{rat_text, Poly};

fn vars_text(e: &Exps) -> Vec<String> {
    let mut out = Vec::new();
    for (name, k) in [("x", e.x as i32), ("y", e.y as i32), ("t", e.t), ("s", e.s)] {
        match k {
            0 => {}
            1 => out.push(name.to_string()),
            k => out.push(format!("{name}^{k}")),
        }
    }
    out
}

/// One term with its sign, e.g. ("-", "1215/8*β^3*t^-3").
fn signed_term(e: &Exps, c: &Poly) -> (bool, String) {
    signed_term_sep(e, c, "*")
}

fn signed_term_sep(e: &Exps, c: &Poly, sep: &str) -> (bool, String) {
    let vars = vars_text(e);
    if let Some(((m, r), true)) = c.terms().next().map(|t| (t, c.len() == 1)) {
        let neg = r < &num::zero();
        let a = if neg { -r.clone() } else { r.clone() };
        let mut parts = Vec::new();
        let unit = a == num::one();
        if !unit || (m.is_one() && vars.is_empty()) {
            parts.push(rat_text(&a));
        }
        if !m.is_one() {
            parts.push(m.text());
        }
        parts.extend(vars);
        return (neg, parts.join(sep));
    }
    let mut parts = vec![format!("({})", c.text())];
    parts.extend(vars);
    (false, parts.join(sep))
}

pub(crate) fn term_text(e: &Exps, c: &Poly) -> String {
    let (neg, body) = signed_term(e, c);
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub(crate) fn series_text<'a>(terms: impl Iterator<Item = (&'a Exps, &'a Poly)>) -> String {
    series_text_sep(terms, "*")
}

/// Like [`series_text`] with a chosen product sign, e.g. "·" for reports.
pub(crate) fn series_text_sep<'a>(terms: impl Iterator<Item = (&'a Exps, &'a Poly)>, sep: &str) -> String {
    let mut s = String::new();
    for (i, (e, c)) in terms.enumerate() {
        let (neg, body) = signed_term_sep(e, c, sep);
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub(crate) fn series_json<'a>(terms: impl Iterator<Item = (&'a Exps, &'a Poly)>) -> Value {
    Value::Array(
        terms
            .map(|(e, c)| json!({"x_exp": e.x, "y_exp": e.y, "t_exp": e.t, "s_exp": e.s, "poly": c.to_json()}))
            .collect(),
    )
}
