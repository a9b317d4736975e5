use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{RingParams, Scalar};

/// An element of `Z_{p^r}^n` stored as canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector {
    ring: RingParams,
    coords: Vec<u64>,
}

impl Vector {
    /// Builds a vector, reducing every entry into `[0, p^r)`.
    pub fn new(ring: RingParams, coords: &[i64]) -> Self {
        let coords = coords.iter().map(|&c| ring.reduce(c)).collect();
        Vector { ring, coords }
    }

    /// Builds a vector from entries that are already canonical.
    pub fn from_residues(ring: RingParams, coords: Vec<u64>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < ring.modulus()));
        Vector { ring, coords }
    }

    pub fn zero(ring: RingParams, n: usize) -> Self {
        Vector { ring, coords: vec![0; n] }
    }

    pub fn unit(ring: RingParams, n: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, n);
        v.coords[i] = 1;
        v
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.ring.scalar(self.coords[i] as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: u64) -> Vector {
        let ring = self.ring;
        let c = c % ring.modulus();
        Vector {
            ring,
            coords: self.coords.iter().map(|&x| ring.mul(x, c)).collect(),
        }
    }

    /// `p^i · self`.
    pub fn scale_p_pow(&self, i: u32) -> Vector {
        if i >= self.ring.r() {
            return Vector::zero(self.ring, self.len());
        }
        self.scale(self.ring.p_pow(i))
    }

    /// Smallest valuation over all coordinates; `r` for the zero vector.
    pub fn valuation(&self) -> u32 {
        self.coords
            .iter()
            .map(|&c| self.ring.valuation(c))
            .min()
            .unwrap_or(self.ring.r())
    }

    pub(crate) fn check_compatible(&self, other: &Vector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn add_scaled_assign(&mut self, c: u64, other: &Vector) {
        let ring = self.ring;
        for (x, &y) in self.coords.iter_mut().zip(&other.coords) {
            *x = ring.add(*x, ring.mul(c, y));
        }
    }

    /// Coordinates reordered so that entry `s` is `self[perm[s]]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Vector {
        Vector {
            ring: self.ring,
            coords: perm.iter().map(|&j| self.coords[j]).collect(),
        }
    }

    /// Inverse of [`Vector::permuted`].
    pub(crate) fn unpermuted(&self, perm: &[usize]) -> Vector {
        let mut coords = vec![0; self.len()];
        for (s, &j) in perm.iter().enumerate() {
            coords[j] = self.coords[s];
        }
        Vector { ring: self.ring, coords }
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        let ring = self.ring;
        Vector {
            ring,
            coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| ring.add(a, b)).collect(),
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        let ring = self.ring;
        Vector {
            ring,
            coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| ring.sub(a, b)).collect(),
        }
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        let ring = self.ring;
        Vector {
            ring,
            coords: self.coords.iter().map(|&a| ring.neg(a)).collect(),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A possibly redundant list of generators for a submodule of `Z_{p^r}^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    ring: RingParams,
    n: usize,
    rows: Vec<Vector>,
}

impl GeneratorSet {
    pub fn new(ring: RingParams, n: usize, rows: Vec<Vector>) -> Result<Self> {
        for row in &rows {
            if row.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(GeneratorSet { ring, n, rows })
    }

    /// Convenience constructor from integer rows.
    pub fn from_rows(ring: RingParams, n: usize, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows.iter().map(|r| Vector::new(ring, r)).collect();
        Self::new(ring, n, rows)
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }
}
