use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::MAX_PRIME;

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `F_p` for a small prime `p`, with a precomputed inverse table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    inv: Vec<u32>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        let p = p as u32;
        let mut inv = vec![0; p as usize];
        for a in 1..p {
            inv[a as usize] = (1..p).find(|b| a * b % p == 1).expect("p is prime");
        }
        Ok(PrimeField { p, inv })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn element(&self, value: u64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: (value % self.p as u64) as u32,
            p: self.p,
        }
    }
}

/// A residue modulo a small prime. Mixing moduli in one operation panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    p: u32,
}

impl PrimeFieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let mut acc = 1u32;
        let mut base = self.value;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Some(PrimeFieldElement {
            value: acc,
            p: self.p,
        })
    }

    fn same(self, other: Self) -> u32 {
        assert_eq!(self.p, other.p, "mixed moduli");
        self.p
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = self.same(rhs);
        PrimeFieldElement {
            value: (self.value + rhs.value) % p,
            p,
        }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = self.same(rhs);
        PrimeFieldElement {
            value: (self.value + p - rhs.value) % p,
            p,
        }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.same(rhs);
        PrimeFieldElement {
            value: self.value * rhs.value % p,
            p,
        }
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElement {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}
