//! Prime-field arithmetic.
//!
//! A [`Field`] is a small `Copy` handle carrying the modulus; elements are
//! plain residues ([`Fe`]) and all arithmetic goes through the field so that
//! several moduli can coexist in one process.

use std::fmt;

use crate::error::{Error, Result};

/// Residue modulo the prime of some [`Field`], always in `0..p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p` for an odd prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
}

impl Default for Field {
    fn default() -> Self {
        Field {
            p: Field::DEFAULT_PRIME,
        }
    }
}

impl Field {
    /// The Mersenne prime `2^31 - 1`.
    pub const DEFAULT_PRIME: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || p >= (1 << 62) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into the field.
    #[inline]
    pub fn elem(self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    pub fn from_u64(self, v: u64) -> Fe {
        Fe(v % self.p)
    }

    /// Parses a decimal integer of arbitrary length, reducing modulo `p`.
    pub fn parse(self, s: &str) -> Option<Fe> {
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut acc = 0u64;
        for b in digits.bytes() {
            acc = ((acc as u128 * 10 + (b - b'0') as u128) % self.p as u128) as u64;
        }
        let v = Fe(acc);
        Some(if neg { self.neg(v) } else { v })
    }

    #[inline]
    pub fn add(self, a: Fe, b: Fe) -> Fe {
        let s = a.0 + b.0;
        Fe(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(self, a: Fe, b: Fe) -> Fe {
        Fe(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    pub fn neg(self, a: Fe) -> Fe {
        Fe(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(self, a: Fe, b: Fe) -> Fe {
        Fe(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64)
    }

    pub fn pow(self, mut base: Fe, mut exp: u64) -> Fe {
        let mut acc = Fe::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// `1/2`, which exists because `p` is odd.
    pub fn half(self) -> Fe {
        Fe(self.p.div_ceil(2))
    }

    /// Centered representative in `(-p/2, p/2]`.
    pub fn signed(self, a: Fe) -> i64 {
        if a.0 > self.p / 2 {
            a.0 as i64 - self.p as i64
        } else {
            a.0 as i64
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
