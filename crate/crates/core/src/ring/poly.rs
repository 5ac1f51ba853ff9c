//! Sparse polynomials over Q in graded generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::traits::{One, Zero};
use serde_json::{json, Map, Value};
use smallvec::SmallVec;

use super::gen::GenId;
use super::rat::{int, is_negative, parse_rat, rat_mod_p, rat_text, Rat};
use crate::error::{Error, Result};

/// Product of generator powers. Ordered by weight, then lexicographically
/// on (name class, index).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    weight: i64,
    factors: SmallVec<[(GenId, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn of(g: GenId, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        let mut factors = SmallVec::new();
        factors.push((g, e));
        Monomial { weight: g.weight() * e as i64, factors }
    }

    pub fn from_factors(mut list: Vec<(GenId, u32)>) -> Monomial {
        list.retain(|&(_, e)| e > 0);
        list.sort();
        let mut factors: SmallVec<[(GenId, u32); 4]> = SmallVec::new();
        for (g, e) in list {
            match factors.last_mut() {
                Some((h, f)) if *h == g => *f += e,
                _ => factors.push((g, e)),
            }
        }
        let weight = factors.iter().map(|(g, e)| g.weight() * *e as i64).sum();
        Monomial { weight, factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(g, e)| g.degree as i64 * *e as i64).sum()
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.factors
    }

    pub fn exponent(&self, g: GenId) -> u32 {
        self.factors.iter().find(|(h, _)| *h == g).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut factors = SmallVec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    factors.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&a[i..]);
        factors.extend_from_slice(&b[j..]);
        Monomial { weight: self.weight + other.weight, factors }
    }

    pub fn text(&self) -> String {
        self.factors
            .iter()
            .map(|(g, e)| if *e == 1 { g.name() } else { format!("{}^{}", g.name(), e) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Finite Q-linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Poly {
        Poly::constant(int(n))
    }

    pub fn gen(g: GenId) -> Poly {
        Poly::term(Monomial::of(g, 1), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// The value when the polynomial is a rational constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn generators(&self) -> BTreeSet<GenId> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(g, _)| *g)).collect()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(n, v)| (n.mul(m), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Common degree of all terms.
    pub fn degree_of(&self) -> Result<i64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next().ok_or(Error::ZeroDegree)?;
        for e in it {
            if e != d {
                return Err(Error::Inhomogeneous(d, e));
            }
        }
        Ok(d)
    }

    /// Reduction modulo p: coefficients become representatives in {1, .., p-1}.
    pub fn mod_p(&self, p: u32) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let r = rat_mod_p(c, p).ok_or_else(|| Error::PIntegrality {
                p,
                coeff: rat_text(c),
                x_degree: None,
            })?;
            out.add_term(m.clone(), int(r as i64));
        }
        Ok(out)
    }

    pub fn is_p_integral(&self, p: u32) -> bool {
        self.terms.values().all(|c| super::rat::is_p_integral(c, p))
    }

    /// Applies a generator substitution multiplicatively.
    pub fn map_gens(&self, rule: &BTreeMap<GenId, Poly>) -> Result<Poly> {
        let mut powers: BTreeMap<(GenId, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut img = Poly::constant(c.clone());
            for &(g, e) in m.factors() {
                let base = rule.get(&g).ok_or_else(|| Error::MissingRule(g.name()))?;
                let pw = powers.entry((g, e)).or_insert_with(|| base.pow(e));
                img = &img * pw;
            }
            out += &img;
        }
        Ok(out)
    }

    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let a = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&rat_text(&a));
            } else if a.is_one() {
                s.push_str(&m.text());
            } else {
                s.push_str(&rat_text(&a));
                s.push('*');
                s.push_str(&m.text());
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let mono: Map<String, Value> =
                        m.factors().iter().map(|(g, e)| (g.name(), json!(e))).collect();
                    json!({
                        "monomial": mono,
                        "num": c.numer().to_string(),
                        "den": c.denom().to_string(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value, p: Option<u32>) -> Result<Poly> {
        let bad = |what: &str| Error::Spec(format!("malformed polynomial JSON: {what}"));
        let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
        let mut out = Poly::zero();
        for t in arr {
            let mono = t.get("monomial").and_then(Value::as_object).ok_or_else(|| bad("monomial"))?;
            let mut factors = Vec::new();
            for (name, e) in mono {
                let g = GenId::parse(name, p).ok_or_else(|| bad(name))?;
                let e = e.as_u64().ok_or_else(|| bad("exponent"))? as u32;
                factors.push((g, e));
            }
            let num = t.get("num").and_then(Value::as_str).ok_or_else(|| bad("num"))?;
            let den = t.get("den").and_then(Value::as_str).ok_or_else(|| bad("den"))?;
            let c = parse_rat(num, den).ok_or_else(|| bad("rational"))?;
            out.add_term(Monomial::from_factors(factors), c);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (ma, ca) = self.terms.iter().next().unwrap();
            let (mb, cb) = rhs.terms.iter().next().unwrap();
            out.terms.insert(ma.mul(mb), ca * cb);
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat::rat;

    fn beta() -> Poly {
        Poly::gen(GenId::beta())
    }

    #[test]
    fn additive_inverse() {
        assert!((&beta() + &(-&beta())).is_zero());
    }

    #[test]
    fn monomial_product_and_cancellation() {
        let p = &beta() * &Poly::gen(GenId::b(1));
        assert_eq!(p.text(), "β*b1");
        let half = beta().scale(&rat(1, 2));
        let two = beta().scale(&int(2));
        assert_eq!(&half * &two, beta().pow(2));
    }

    #[test]
    fn degrees() {
        assert_eq!(beta().degree_of(), Ok(-2));
        let bm = &Poly::gen(GenId::b(1)) * &Poly::gen(GenId::m(2));
        assert_eq!(bm.degree_of(), Ok(-6));
        let mixed = &beta() + &Poly::gen(GenId::b(1)).pow(2);
        assert_eq!(mixed.degree_of(), Err(Error::Inhomogeneous(-2, -4)));
        assert_eq!(Poly::zero().degree_of(), Err(Error::ZeroDegree));
    }

    #[test]
    fn reduction_mod_p() {
        let b3 = beta().pow(3).scale(&rat(-1215, 8));
        assert!(b3.mod_p(3).unwrap().is_zero());
        assert!(matches!(beta().scale(&rat(1, 3)).mod_p(3), Err(Error::PIntegrality { p: 3, .. })));
        // 3 divides 37570767, so this coefficient vanishes mod 3.
        assert!(beta().pow(10).scale(&rat(-37570767, 6400)).mod_p(3).unwrap().is_zero());
        let rem = beta().pow(10).scale(&rat(-1158538511, 179200));
        assert_eq!(rem.mod_p(3).unwrap(), beta().pow(10));
    }

    #[test]
    fn rendering() {
        let p = &beta().pow(3).scale(&rat(-1215, 8)) + &beta().pow(4).scale(&rat(15957, 32));
        assert_eq!(p.text(), "-1215/8*β^3 + 15957/32*β^4");
        let q = &Poly::from_int(-1) + &beta();
        assert_eq!(q.text(), "-1 + β");
        assert_eq!(Poly::zero().text(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = &(&Poly::gen(GenId::v(2, 1)).pow(6) + &Poly::gen(GenId::v(2, 2)).pow(2))
            .scale(&rat(3, 7))
            + &Poly::from_int(5);
        let v = p.to_json();
        assert_eq!(Poly::from_json(&v, Some(2)).unwrap(), p);
    }

    #[test]
    fn substitution() {
        let rule: BTreeMap<GenId, Poly> = [(GenId::beta(), beta().scale(&int(3)))].into();
        let p = &beta().pow(2) + &beta();
        assert_eq!(p.map_gens(&rule).unwrap(), &beta().pow(2).scale(&int(9)) + &beta().scale(&int(3)));
        let empty = BTreeMap::new();
        assert_eq!(p.map_gens(&empty), Err(Error::MissingRule("β".into())));
    }
}
