use std::collections::BTreeSet;
use std::fmt;

use super::gen::{GenId, GenKind};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingLabel {
    /// Q[b_1..b_N] together with the log coefficients m_1..m_N.
    UniversalMu,
    ToddKu,
    /// No generators; doubles as the F_p view once coefficients are reduced.
    Additive,
    Bp(u32),
    Rigidity(u32),
}

impl fmt::Display for RingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingLabel::UniversalMu => write!(f, "universal-MU"),
            RingLabel::ToddKu => write!(f, "todd-ku"),
            RingLabel::Additive => write!(f, "additive"),
            RingLabel::Bp(p) => write!(f, "bp({p})"),
            RingLabel::Rigidity(p) => write!(f, "rigidity({p})"),
        }
    }
}

/// A declared set of graded generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    label: RingLabel,
    max_index: u32,
    generators: BTreeSet<GenId>,
}

impl RingSpec {
    pub fn universal(max_index: u32) -> RingSpec {
        let generators = (1..=max_index).flat_map(|i| [GenId::b(i), GenId::m(i)]).collect();
        RingSpec { label: RingLabel::UniversalMu, max_index, generators }
    }

    pub fn todd() -> RingSpec {
        RingSpec { label: RingLabel::ToddKu, max_index: 1, generators: [GenId::beta()].into() }
    }

    pub fn additive() -> RingSpec {
        RingSpec { label: RingLabel::Additive, max_index: 1, generators: BTreeSet::new() }
    }

    /// v_1..v_depth, plus the p-typical log classes m_{p^j - 1} they replace.
    pub fn bp(p: u32, depth: u32) -> RingSpec {
        let mut generators = BTreeSet::new();
        for j in 1..=depth {
            generators.insert(GenId::v(p, j));
            generators.insert(GenId::m(p.pow(j) - 1));
        }
        RingSpec { label: RingLabel::Bp(p), max_index: depth, generators }
    }

    pub fn rigidity(p: u32, max_index: u32) -> RingSpec {
        let generators = (1..=max_index).flat_map(|i| [GenId::b(i), GenId::f(i)]).collect();
        RingSpec { label: RingLabel::Rigidity(p), max_index, generators }
    }

    pub fn label(&self) -> RingLabel {
        self.label
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.generators.iter().copied()
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.generators.contains(&g)
    }

    /// The prime used to grade v_i, when the ring has one.
    pub fn prime(&self) -> Option<u32> {
        match self.label {
            RingLabel::Bp(p) | RingLabel::Rigidity(p) => Some(p),
            _ => None,
        }
    }

    /// Looks up a generator, failing loudly past the index cap.
    pub fn gen(&self, kind: GenKind, index: u32) -> Result<GenId> {
        let g = match kind {
            GenKind::Beta => GenId::beta(),
            GenKind::B => GenId::b(index),
            GenKind::M => GenId::m(index),
            GenKind::F => GenId::f(index),
            GenKind::V => match self.prime() {
                Some(p) => GenId::v(p, index),
                None => return Err(Error::Spec(format!("{} has no v generators", self.label))),
            },
        };
        if self.contains(g) {
            Ok(g)
        } else {
            Err(Error::IndexCap(format!("{} is not a generator of {} (cap {})", g, self.label, self.max_index)))
        }
    }

    pub fn check(&self, a: &Poly) -> Result<()> {
        match a.generators().into_iter().find(|g| !self.contains(*g)) {
            Some(g) => Err(Error::Spec(format!("{} does not belong to {}", g, self.label))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Mul,
    Negate,
    Scale(super::rat::Rat),
}

/// Ring arithmetic with membership checks; `b` is ignored by unary operations.
pub fn poly_arith(ring: &RingSpec, a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
    ring.check(a)?;
    ring.check(b)?;
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Mul => a * b,
        PolyOp::Negate => -a,
        PolyOp::Scale(c) => a.scale(&c),
    })
}
