//! Prime fields GF(p).
//!
//! Only prime orders are supported. Prime powers would need polynomial
//! arithmetic; everything else in the W(q) construction goes through
//! [`FieldElement`], so a table-driven GF(pᵉ) could replace it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// The field GF(p) for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "field order must be prime (prime powers are not supported yet), got {p}"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn order(self) -> u32 {
        self.p
    }

    pub fn element(self, value: u32) -> FieldElement {
        FieldElement {
            value: value % self.p,
            p: self.p,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.p).map(move |v| self.element(v))
    }
}

/// An element of GF(p). Mixing elements of different fields panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<FieldElement> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (self.value as u64, self.p - 2, 1u64);
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(FieldElement {
            value: acc as u32,
            p: self.p,
        })
    }

    fn same_field(self, other: FieldElement) -> u64 {
        assert_eq!(self.p, other.p, "elements of GF({}) and GF({})", self.p, other.p);
        self.p as u64
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let p = self.same_field(rhs);
        FieldElement {
            value: ((self.value as u64 + rhs.value as u64) % p) as u32,
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let p = self.same_field(rhs);
        FieldElement {
            value: ((self.value as u64 * rhs.value as u64) % p) as u32,
            p: self.p,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn field_axioms_small_primes() {
        for p in [2, 3, 5, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                assert_eq!(a - a, f.zero());
                match a.inverse() {
                    Some(inv) => assert_eq!(a * inv, f.one()),
                    None => assert!(a.is_zero()),
                }
                for b in f.elements() {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                }
            }
        }
    }
}
