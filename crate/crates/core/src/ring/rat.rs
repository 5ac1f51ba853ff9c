//! Exact rationals and their reduction modulo a prime.

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigRational;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Residue of `r` in {0, .., p-1}, or `None` when p divides the denominator.
pub fn rat_mod_p(r: &Rat, p: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = r.numer().mod_floor(&pb);
    let den = den.to_u64().unwrap();
    let inv = mod_inverse(den, p as u64);
    Some(((num.to_u64().unwrap() * inv) % p as u64) as u32)
}

pub fn is_p_integral(r: &Rat, p: u32) -> bool {
    !r.denom().is_multiple_of(&BigInt::from(p))
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn rat_text(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(num: &str, den: &str) -> Option<Rat> {
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert_eq!(rat_mod_p(&rat(-1215, 8), 3), Some(0));
        assert_eq!(rat_mod_p(&rat(1, 3), 3), None);
        assert_eq!(rat_mod_p(&rat(-37570767, 6400), 3), Some(0));
        assert_eq!(rat_mod_p(&rat(-1158538511, 179200), 3), Some(1));
        assert_eq!(rat_mod_p(&rat(1, 2), 5), Some(3));
        assert_eq!(rat_mod_p(&int(-1), 2), Some(1));
    }

    #[test]
    fn text() {
        assert_eq!(rat_text(&rat(-1215, 8)), "-1215/8");
        assert_eq!(rat_text(&rat(4, 2)), "2");
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
