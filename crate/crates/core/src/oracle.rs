//! Exhaustive reference computations for small instances.
//!
//! Nothing here touches the standard-form machinery; every answer comes
//! from enumerating ring elements, digit tuples or the whole ambient space.
//! Results are `BTreeSet`s, so iteration order is lexicographic.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::pbasis::Independence;
use crate::ring::{Digit, RingParams};
use crate::vector::{GeneratorSet, Vector};

pub const DEFAULT_MAX_STATES: u128 = 1 << 16;

/// Upper bound on the number of states an oracle call may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_states: u128,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl EnumerationGuard {
    pub fn new(max_states: u128) -> Self {
        EnumerationGuard { max_states }
    }

    fn admit(&self, base: u64, exponent: usize) -> Result<()> {
        let states = u32::try_from(exponent)
            .ok()
            .and_then(|e| (base as u128).checked_pow(e))
            .unwrap_or(u128::MAX);
        if states > self.max_states {
            return Err(Error::TooLarge {
                states,
                max: self.max_states,
            });
        }
        Ok(())
    }
}

/// Steps `tuple` to the next element of `[0, base)^len` in lexicographic
/// order; returns `false` after the last one.
fn next_tuple(tuple: &mut [u64], base: u64) -> bool {
    for x in tuple.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn combine(ring: RingParams, n: usize, coeffs: &[u64], vectors: &[Vector]) -> Vector {
    let m = ring.modulus() as u128;
    let mut acc = vec![0u128; n];
    for (&c, v) in coeffs.iter().zip(vectors) {
        for (a, &x) in acc.iter_mut().zip(v.coords()) {
            *a = (*a + c as u128 * x as u128) % m;
        }
    }
    Vector::from_residues(ring, acc.into_iter().map(|a| a as u64).collect())
}

/// The ring span `{Σ c_j v_j}`, by breadth-first closure under adding generators.
pub fn enumerate_span(gens: &GeneratorSet, guard: &EnumerationGuard) -> Result<BTreeSet<Vector>> {
    let ring = gens.ring();
    let zero = Vector::zero(ring, gens.n());
    let mut seen: HashSet<Vector> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(u) = queue.pop_front() {
        for g in gens.rows() {
            let w = Vector::from_residues(
                ring,
                u.coords()
                    .iter()
                    .zip(g.coords())
                    .map(|(&a, &b)| ((a as u128 + b as u128) % ring.modulus() as u128) as u64)
                    .collect(),
            );
            if seen.insert(w.clone()) {
                if seen.len() as u128 > guard.max_states {
                    return Err(Error::TooLarge {
                        states: seen.len() as u128,
                        max: guard.max_states,
                    });
                }
                queue.push_back(w);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The p-span `{Σ a_j v_j : a_j ∈ {0..p-1}}` and whether two digit tuples
/// collide on the same vector.
pub fn enumerate_p_span(
    ring: RingParams,
    n: usize,
    seq: &[Vector],
    guard: &EnumerationGuard,
) -> Result<(BTreeSet<Vector>, bool)> {
    guard.admit(ring.p(), seq.len())?;
    let mut out = BTreeSet::new();
    let mut collision = false;
    let mut digits = vec![0u64; seq.len()];
    loop {
        if !out.insert(combine(ring, n, &digits, seq)) {
            collision = true;
        }
        if !next_tuple(&mut digits, ring.p()) {
            break;
        }
    }
    Ok((out, collision))
}

/// Every vector of `Z_{p^r}^n` orthogonal to all of `elements`.
pub fn brute_dual(
    elements: &BTreeSet<Vector>,
    ring: RingParams,
    n: usize,
    guard: &EnumerationGuard,
) -> Result<BTreeSet<Vector>> {
    Ok(all_vectors(ring, n, guard)?
        .into_iter()
        .filter(|v| {
            elements.iter().all(|u| {
                u.coords()
                    .iter()
                    .zip(v.coords())
                    .fold(0u128, |acc, (&x, &y)| (acc + x as u128 * y as u128) % ring.modulus() as u128)
                    == 0
            })
        })
        .collect())
}

/// Exhaustive p-linear independence check over all digit tuples.
pub fn brute_p_independent(ring: RingParams, n: usize, vectors: &[Vector], guard: &EnumerationGuard) -> Result<Independence> {
    guard.admit(ring.p(), vectors.len())?;
    let mut digits = vec![0u64; vectors.len()];
    while next_tuple(&mut digits, ring.p()) {
        if combine(ring, n, &digits, vectors).is_zero() {
            let witness = digits.iter().map(|&d| ring.digit(d).expect("digit below p")).collect();
            return Ok(Independence::Dependent(witness));
        }
    }
    Ok(Independence::Independent)
}

/// All `p^{rn}` vectors of the ambient space.
pub fn all_vectors(ring: RingParams, n: usize, guard: &EnumerationGuard) -> Result<Vec<Vector>> {
    guard.admit(ring.modulus(), n)?;
    let mut out = Vec::new();
    let mut coords = vec![0u64; n];
    loop {
        out.push(Vector::from_residues(ring, coords.clone()));
        if !next_tuple(&mut coords, ring.modulus()) {
            break;
        }
    }
    Ok(out)
}

/// All digit tuples in `A_p^k` that combine `vectors` into `target`.
pub fn brute_p_coordinates(
    ring: RingParams,
    n: usize,
    vectors: &[Vector],
    target: &Vector,
    guard: &EnumerationGuard,
) -> Result<Vec<Vec<Digit>>> {
    guard.admit(ring.p(), vectors.len())?;
    let mut digits = vec![0u64; vectors.len()];
    let mut hits = Vec::new();
    loop {
        if &combine(ring, n, &digits, vectors) == target {
            hits.push(digits.iter().map(|&d| ring.digit(d).expect("digit below p")).collect());
        }
        if !next_tuple(&mut digits, ring.p()) {
            break;
        }
    }
    Ok(hits)
}

/// All ring coefficient tuples in `Z_{p^r}^k` that combine `vectors` into `target`.
pub fn brute_ring_coordinates(
    ring: RingParams,
    n: usize,
    vectors: &[Vector],
    target: &Vector,
    guard: &EnumerationGuard,
) -> Result<Vec<Vec<u64>>> {
    guard.admit(ring.modulus(), vectors.len())?;
    let mut coeffs = vec![0u64; vectors.len()];
    let mut hits = Vec::new();
    loop {
        if &combine(ring, n, &coeffs, vectors) == target {
            hits.push(coeffs.clone());
        }
        if !next_tuple(&mut coeffs, ring.modulus()) {
            break;
        }
    }
    Ok(hits)
}
