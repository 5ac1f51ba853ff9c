use std::fmt;

use serde::{Deserialize, Serialize};

/// Name class of a generator. The derived order is the display order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    Beta,
    B,
    M,
    V,
    F,
}

/// A polynomial generator together with its cohomological degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub kind: GenKind,
    pub index: u32,
    pub degree: i32,
}

impl GenId {
    pub fn beta() -> GenId {
        GenId { kind: GenKind::Beta, index: 1, degree: -2 }
    }

    pub fn b(i: u32) -> GenId {
        GenId { kind: GenKind::B, index: i, degree: -2 * i as i32 }
    }

    pub fn m(i: u32) -> GenId {
        GenId { kind: GenKind::M, index: i, degree: -2 * i as i32 }
    }

    pub fn f(i: u32) -> GenId {
        GenId { kind: GenKind::F, index: i, degree: -2 * i as i32 }
    }

    /// Hazewinkel generator v_i at the prime p, of degree -2(p^i - 1).
    pub fn v(p: u32, i: u32) -> GenId {
        GenId { kind: GenKind::V, index: i, degree: -2 * (p.pow(i) as i32 - 1) }
    }

    /// Half the negated degree.
    pub fn weight(&self) -> i64 {
        -(self.degree as i64) / 2
    }

    pub fn name(&self) -> String {
        match self.kind {
            GenKind::Beta => "β".to_string(),
            GenKind::B => format!("b{}", self.index),
            GenKind::M => format!("m{}", self.index),
            GenKind::V => format!("v{}", self.index),
            GenKind::F => format!("f{}", self.index),
        }
    }

    /// Inverse of [`GenId::name`]; `p` is needed to grade `v_i`.
    pub fn parse(name: &str, p: Option<u32>) -> Option<GenId> {
        if name == "β" || name == "beta" {
            return Some(GenId::beta());
        }
        let (head, rest) = name.split_at(1);
        let i: u32 = rest.parse().ok()?;
        if i == 0 {
            return None;
        }
        match head {
            "b" => Some(GenId::b(i)),
            "m" => Some(GenId::m(i)),
            "f" => Some(GenId::f(i)),
            "v" => p.map(|p| GenId::v(p, i)),
            _ => None,
        }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
