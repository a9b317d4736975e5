//! Scalar arithmetic in the chain ring `Z_{p^r}`.
//!
//! Every value is kept as a canonical residue in `[0, p^r)`. The maximal
//! ideal is generated by `p`, which doubles as the uniformizer used in
//! standard-form pivots, and the residue field is `Z_p`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The ambient ring `Z_{p^r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RingParams {
    p: u64,
    r: u32,
    modulus: u64,
}

/// A canonical residue of `Z_{p^r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Scalar(u64);

/// An element of the digit set `{0, 1, ..., p - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Digit(u64);

impl Scalar {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl Digit {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}^{}", self.p, self.r)
    }
}

/// Validates `p` and `r` and builds the ring `Z_{p^r}`.
pub fn make_ring(p: u64, r: u32) -> Result<RingParams> {
    RingParams::new(p, r)
}

impl RingParams {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::BadExponent(r));
        }
        let modulus = p
            .checked_pow(r)
            .filter(|&m| m < 1 << 63)
            .ok_or(Error::Overflow { p, r })?;
        Ok(RingParams { p, r, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The uniformizer of the maximal ideal; always `p`.
    pub fn gamma(&self) -> u64 {
        self.p
    }

    /// Size of the residue field `Z_{p^r} / (p)`.
    pub fn residual_field_size(&self) -> u64 {
        self.p
    }

    pub fn scalar(&self, value: i64) -> Scalar {
        Scalar(self.reduce(value))
    }

    pub fn digit(&self, value: u64) -> Option<Digit> {
        (value < self.p).then_some(Digit(value))
    }

    /// Canonical residue of an arbitrary signed integer.
    pub fn reduce(&self, value: i64) -> u64 {
        (value as i128).rem_euclid(self.modulus as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// `p^i` for `0 <= i <= r`; `p^r` is returned as an integer, not reduced.
    pub fn p_pow(&self, i: u32) -> u64 {
        debug_assert!(i <= self.r);
        self.p.pow(i)
    }

    /// Largest `i <= r` such that `p^i` divides `a`, with `valuation(0) = r`.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.r;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        let mut a = a;
        (0..self.r)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn recompose(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| self.add(self.mul(acc, self.p), d % self.modulus))
    }

    pub fn inverse(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::NotAUnit(a));
        }
        // Extended Euclid on (a, p^r).
        let (mut old_r, mut r) = (a as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(old_s.rem_euclid(self.modulus as i128) as u64)
    }
}

/// The `r` base-`p` digits of `a`, least significant first.
pub fn p_adic_digits(a: Scalar, ring: &RingParams) -> Vec<Digit> {
    ring.digits(a.0).into_iter().map(Digit).collect()
}

/// Inverse of [`p_adic_digits`].
pub fn recompose(digits: &[Digit], ring: &RingParams) -> Scalar {
    let raw: Vec<u64> = digits.iter().map(|d| d.0).collect();
    Scalar(ring.recompose(&raw))
}

pub fn valuation(a: Scalar, ring: &RingParams) -> u32 {
    ring.valuation(a.0)
}

pub fn unit_inverse(a: Scalar, ring: &RingParams) -> Result<Scalar> {
    ring.inverse(a.0).map(Scalar)
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, r: u32) -> RingParams {
        make_ring(p, r).unwrap()
    }

    #[test]
    fn make_ring_examples() {
        assert_eq!(z(2, 3).modulus(), 8);
        assert_eq!(z(3, 2).modulus(), 9);
        assert_eq!(make_ring(4, 2), Err(Error::NotPrime(4)));
        assert_eq!(make_ring(1, 2), Err(Error::NotPrime(1)));
        assert_eq!(make_ring(3, 0), Err(Error::BadExponent(0)));
        assert_eq!(make_ring(2, 63), Err(Error::Overflow { p: 2, r: 63 }));
        assert_eq!(z(2, 62).modulus(), 1 << 62);
        assert_eq!(make_ring(3, 40), Err(Error::Overflow { p: 3, r: 40 }));
        let ring = z(5, 2);
        assert_eq!(ring.gamma(), 5);
        assert_eq!(ring.residual_field_size(), 5);
    }

    #[test]
    fn primality_against_trial_division() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(9_223_372_036_854_775_783));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn digit_examples() {
        let digits = |a: u64, ring: &RingParams| -> Vec<u64> {
            p_adic_digits(ring.scalar(a as i64), ring).iter().map(|d| d.value()).collect()
        };
        assert_eq!(digits(0, &z(2, 3)), vec![0, 0, 0]);
        assert_eq!(digits(6, &z(2, 3)), vec![0, 1, 1]);
        assert_eq!(digits(7, &z(3, 2)), vec![1, 2]);
    }

    #[test]
    fn digits_round_trip_exhaustively() {
        for (p, r) in [(2, 16), (3, 10), (251, 2), (7, 5)] {
            let ring = z(p, r);
            for a in 0..ring.modulus() {
                let d = p_adic_digits(Scalar(a), &ring);
                assert_eq!(d.len(), r as usize);
                assert!(d.iter().all(|x| x.value() < p));
                assert_eq!(recompose(&d, &ring), Scalar(a));
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(Scalar(4), &z(2, 3)), 2);
        assert_eq!(valuation(Scalar(0), &z(2, 3)), 3);
        assert_eq!(valuation(Scalar(6), &z(3, 2)), 1);
    }

    #[test]
    fn valuation_is_multiplicative_up_to_r() {
        for (p, r) in [(2, 4), (3, 3), (5, 2)] {
            let ring = z(p, r);
            for a in 0..ring.modulus() {
                assert_eq!(ring.valuation(a) == r, a == 0);
                for b in 0..ring.modulus() {
                    let v = ring.valuation(ring.mul(a, b));
                    assert_eq!(v, r.min(ring.valuation(a) + ring.valuation(b)));
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(unit_inverse(Scalar(3), &z(2, 3)), Ok(Scalar(3)));
        assert_eq!(unit_inverse(Scalar(1), &z(3, 2)), Ok(Scalar(1)));
        assert_eq!(unit_inverse(Scalar(2), &z(2, 3)), Err(Error::NotAUnit(2)));
        assert_eq!(unit_inverse(Scalar(0), &z(2, 3)), Err(Error::NotAUnit(0)));
    }

    #[test]
    fn every_unit_has_an_inverse() {
        for (p, r) in [(2, 10), (3, 6), (7, 3), (4_294_967_291, 1)] {
            let ring = z(p, r);
            let step = (ring.modulus() / 5000).max(1);
            let mut a = 1;
            while a < ring.modulus() {
                if a % p != 0 {
                    let b = ring.inverse(a).unwrap();
                    assert_eq!(ring.mul(a, b), 1);
                }
                a += step;
            }
        }
    }

    #[test]
    fn arithmetic_stays_canonical_near_the_limit() {
        let ring = z(2, 62);
        let m = ring.modulus();
        assert_eq!(ring.add(m - 1, m - 1), m - 2);
        assert_eq!(ring.sub(0, 1), m - 1);
        assert_eq!(ring.neg(1), m - 1);
        assert_eq!(ring.mul(m - 1, m - 1), 1);
        assert_eq!(ring.reduce(-1), m - 1);
        assert_eq!(ring.reduce(i64::MIN), 0);
    }
}
