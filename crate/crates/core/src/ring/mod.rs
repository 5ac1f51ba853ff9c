//! Exact coefficient arithmetic: rationals, graded generators, sparse polynomials.

mod gen;
mod poly;
mod rat;
mod spec;

pub use gen::{GenId, GenKind};
pub use poly::{Monomial, Poly};
pub use rat::{int, is_p_integral, is_prime, parse_rat, rat, rat_mod_p, rat_text, Rat};
pub use spec::{poly_arith, PolyOp, RingLabel, RingSpec};

/// Reduction of a polynomial modulo p.
pub fn poly_mod_p(a: &Poly, p: u32) -> crate::Result<Poly> {
    a.mod_p(p)
}

pub fn degree_of(a: &Poly) -> crate::Result<i64> {
    a.degree_of()
}
