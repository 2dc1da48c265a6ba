//! Arithmetic in prime fields F_p.
//!
//! Elements are plain `u32` residues in `0..p`; every operation takes the
//! field by reference so that matrices and algebra elements stay `Vec<u32>`.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b*c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(&self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn from_usize(&self, v: usize) -> u32 {
        (v as u64 % self.p as u64) as u32
    }

    /// Smallest generator of the cyclic group F_p^×.
    pub fn primitive_root(&self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = (self.p - 1) as u64;
        let factors = prime_factors(order);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, order / q) != 1))
            .expect("F_p^x is cyclic")
    }

    /// A primitive `n`-th root of unity, built from the smallest primitive root.
    pub fn root_of_unity(&self, n: u64) -> Result<u32> {
        if !(self.p as u64 - 1).is_multiple_of(n) {
            return Err(Error::BadPrime {
                p: self.p,
                exponent: n,
            });
        }
        Ok(self.pow(self.primitive_root(), (self.p as u64 - 1) / n))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_and_roots() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.primitive_root(), 3);
        let z = f.root_of_unity(3).unwrap();
        assert_eq!(f.pow(z, 3), 1);
        assert_ne!(z, 1);
        assert!(f.root_of_unity(4).is_err());
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(2).unwrap().primitive_root(), 1);
    }
}
