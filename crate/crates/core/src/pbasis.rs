//! p-generator sequences, p-linear independence and p-bases.
//!
//! A sequence `(v_1, ..., v_k)` is a p-generator sequence when `p·v_k = 0`
//! and each `p·v_i` is a digit combination of `v_{i+1}, ..., v_k`. For such
//! a sequence the digit span and the ring span coincide, so membership
//! questions reduce to standard-form back-substitution. A p-basis is a
//! p-generator sequence whose digit combinations are all distinct; its
//! length is `log_p` of the module size.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{brute_p_independent, EnumerationGuard};
use crate::ring::{Digit, RingParams};
use crate::submodule::{reduce, Reduction, StandardForm, Submodule};
use crate::vector::Vector;

/// Outcome of a p-linear independence test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Independence {
    Independent,
    /// A nonzero digit tuple whose combination is the zero vector.
    Dependent(Vec<Digit>),
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// Outcome of a p-generator sequence test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SequenceCheck {
    Valid,
    /// Smallest 0-based index `i` where `p·v_i` is not a digit combination
    /// of the later vectors (or, for the last vector, `p·v_i != 0`).
    Violation(usize),
}

impl SequenceCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, SequenceCheck::Valid)
    }
}

fn check_space(ring: RingParams, n: usize, vectors: &[Vector]) -> Result<()> {
    for v in vectors {
        if v.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// Standard forms of every suffix `vectors[j..]`, `j = 0..=k`.
fn suffix_forms(ring: RingParams, n: usize, vectors: &[Vector]) -> Vec<StandardForm> {
    (0..=vectors.len())
        .map(|j| reduce(ring, n, &vectors[j..], false).sf)
        .collect()
}

/// Condition of the generator-sequence definition at `i`, assuming the
/// suffix after `i` is already a generator sequence (so its digit span is
/// the module `suffixes[i + 1]`).
fn local_condition(vectors: &[Vector], suffixes: &[StandardForm], i: usize) -> bool {
    let pv = vectors[i].scale_p_pow(1);
    if i + 1 == vectors.len() {
        pv.is_zero()
    } else {
        suffixes[i + 1].solve(&pv).is_some()
    }
}

/// Largest index whose local condition fails while its suffix is valid.
fn last_violation(vectors: &[Vector], suffixes: &[StandardForm]) -> Option<usize> {
    (0..vectors.len()).rev().find(|&i| !local_condition(vectors, suffixes, i))
}

/// Tests the p-generator sequence conditions and reports the smallest
/// failing index.
///
/// Conditions whose suffix is itself a generator sequence are decided by
/// back-substitution. Earlier indices, whose suffix digit span need not be
/// a module, are decided by enumerating digits over the offending part of
/// the suffix; that enumeration is bounded by `guard`.
pub fn is_p_generator_sequence(
    ring: RingParams,
    n: usize,
    seq: &[Vector],
    guard: &EnumerationGuard,
) -> Result<SequenceCheck> {
    check_space(ring, n, seq)?;
    let suffixes = suffix_forms(ring, n, seq);
    let Some(last) = last_violation(seq, &suffixes) else {
        return Ok(SequenceCheck::Valid);
    };
    let tail = &suffixes[last + 1];
    for i in 0..last {
        let target = seq[i].scale_p_pow(1);
        if suffixes[i + 1].solve(&target).is_none() {
            return Ok(SequenceCheck::Violation(i));
        }
        // digit span of seq[i+1..] = digit combos of seq[i+1..=last] + tail module
        let free = &seq[i + 1..=last];
        let states = (ring.p() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
        if states > guard.max_states {
            return Err(Error::TooLarge {
                states,
                max: guard.max_states,
            });
        }
        let mut digits = vec![0u64; free.len()];
        let mut found = false;
        loop {
            let mut rest = target.clone();
            for (&d, v) in digits.iter().zip(free) {
                rest.add_scaled_assign(ring.neg(d), v);
            }
            if tail.solve(&rest).is_some() {
                found = true;
                break;
            }
            if !next_digits(&mut digits, ring.p()) {
                break;
            }
        }
        if !found {
            return Ok(SequenceCheck::Violation(i));
        }
    }
    Ok(SequenceCheck::Violation(last))
}

fn next_digits(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Tests p-linear independence.
///
/// For p-generator sequences the answer is exact and polynomial: every
/// suffix span must grow by a factor of exactly `p` when the next vector is
/// prepended. Other families fall back to exhaustive search under `guard`.
pub fn is_p_independent(
    ring: RingParams,
    n: usize,
    vectors: &[Vector],
    guard: &EnumerationGuard,
) -> Result<Independence> {
    check_space(ring, n, vectors)?;
    let suffixes = suffix_forms(ring, n, vectors);
    if last_violation(vectors, &suffixes).is_some() {
        return brute_p_independent(ring, n, vectors, guard);
    }
    let stalled = (0..vectors.len())
        .rev()
        .find(|&j| suffixes[j].p_dimension() != suffixes[j + 1].p_dimension() + 1);
    let Some(j) = stalled else {
        return Ok(Independence::Independent);
    };
    // vectors[j+1..] is a p-basis and v_j lies in its span.
    let tail = PBasis::new(ring, n, vectors[j + 1..].to_vec())?;
    let coords = tail
        .p_coordinates(&-&vectors[j])?
        .expect("v_j lies in the span of the suffix");
    let zero = ring.digit(0).expect("0 < p");
    let mut witness = vec![zero; j];
    witness.push(ring.digit(1).expect("1 < p"));
    witness.extend(coords);
    Ok(Independence::Dependent(witness))
}

/// An ordered p-linearly independent p-generator sequence.
#[derive(Clone)]
pub struct PBasis {
    ring: RingParams,
    n: usize,
    vectors: Vec<Vector>,
    /// `carries[j]`: digits of `p·v_j` over `v_{j+1}, ..., v_k`.
    carries: Vec<Vec<u64>>,
    solver: Reduction,
}

impl fmt::Debug for PBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PBasis")
            .field("ring", &self.ring)
            .field("n", &self.n)
            .field("vectors", &self.vectors)
            .finish()
    }
}

impl PartialEq for PBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.n == other.n && self.vectors == other.vectors
    }
}

impl Eq for PBasis {}

impl PBasis {
    /// Validates `vectors` as a p-basis.
    pub fn new(ring: RingParams, n: usize, vectors: Vec<Vector>) -> Result<Self> {
        check_space(ring, n, &vectors)?;
        let k = vectors.len();
        let suffixes: Vec<Reduction> = (0..=k).map(|j| reduce(ring, n, &vectors[j..], true)).collect();
        let forms: Vec<StandardForm> = suffixes.iter().map(|s| s.sf.clone()).collect();
        if let Some(i) = last_violation(&vectors, &forms) {
            return Err(Error::NotAPBasis(format!(
                "p times vector {i} is not a digit combination of the later vectors"
            )));
        }
        if forms[0].p_dimension() != k {
            return Err(Error::NotAPBasis(format!(
                "{k} vectors span a module of p-dimension {}",
                forms[0].p_dimension()
            )));
        }

        let mut carries: Vec<Vec<u64>> = vec![Vec::new(); k];
        for j in (0..k).rev() {
            let pv = vectors[j].scale_p_pow(1);
            let ring_coeffs = if j + 1 == k {
                Vec::new()
            } else {
                suffixes[j + 1].solve_over_inputs(&pv).expect("checked above")
            };
            carries[j] = normalize(ring, ring_coeffs, &carries[j + 1..]);
        }
        let solver = suffixes.into_iter().next().expect("k + 1 >= 1 suffixes");
        Ok(PBasis {
            ring,
            n,
            vectors,
            carries,
            solver,
        })
    }

    pub fn empty(ring: RingParams, n: usize) -> Self {
        Self::new(ring, n, Vec::new()).expect("empty sequence is a p-basis")
    }

    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vector> {
        self.vectors
    }

    /// The p-dimension, i.e. the number of vectors.
    pub fn pdim(&self) -> usize {
        self.vectors.len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The module spanned (equivalently, digit-spanned) by the basis.
    pub fn span(&self) -> Submodule {
        Submodule::from_standard_form(self.solver.sf.clone())
    }

    /// The unique digit tuple expressing `v`, or `None` outside the span.
    ///
    /// Solves over the ring first, then pushes the high part of each
    /// coefficient down the sequence: `c·v_j = (c mod p)·v_j + (c div p)·p·v_j`,
    /// and `p·v_j` is a known digit combination of the later vectors.
    pub fn p_coordinates(&self, v: &Vector) -> Result<Option<Vec<Digit>>> {
        check_space(self.ring, self.n, std::slice::from_ref(v))?;
        let Some(ring_coeffs) = self.solve_ring(v) else {
            return Ok(None);
        };
        let digits = normalize(self.ring, ring_coeffs, &self.carries);
        Ok(Some(
            digits
                .into_iter()
                .map(|d| self.ring.digit(d).expect("normalized to a digit"))
                .collect(),
        ))
    }

    fn solve_ring(&self, v: &Vector) -> Option<Vec<u64>> {
        if self.vectors.is_empty() {
            return v.is_zero().then(Vec::new);
        }
        self.solver.solve_over_inputs(v)
    }

    /// `Σ a_j v_j` for a digit tuple.
    pub fn combine(&self, digits: &[Digit]) -> Vector {
        let mut acc = Vector::zero(self.ring, self.n);
        for (d, v) in digits.iter().zip(&self.vectors) {
            acc.add_scaled_assign(d.value(), v);
        }
        acc
    }
}

/// Rewrites ring coefficients over `v_start..v_k` as digits, given the
/// carry table for those vectors.
fn normalize(ring: RingParams, mut coeffs: Vec<u64>, carries: &[Vec<u64>]) -> Vec<u64> {
    let p = ring.p();
    for j in 0..coeffs.len() {
        let c = coeffs[j];
        coeffs[j] = c % p;
        let high = c / p;
        if high == 0 {
            continue;
        }
        for (l, &g) in carries[j].iter().enumerate() {
            let slot = &mut coeffs[j + 1 + l];
            *slot = ring.add(*slot, ring.mul(high, g));
        }
    }
    coeffs
}

pub fn p_coordinates(basis: &PBasis, v: &Vector) -> Result<Option<Vec<Digit>>> {
    basis.p_coordinates(v)
}

/// Chains `g, p·g, ..., p^{r-i-1}·g` for every block-`i` row `g`, in row order.
pub fn p_basis_from_standard_form(sf: &StandardForm) -> PBasis {
    let ring = sf.ring();
    let mut vectors = Vec::with_capacity(sf.p_dimension());
    for (t, &level) in sf.levels().iter().enumerate() {
        let g = sf.original_row(t);
        for e in 0..(ring.r() - level) {
            vectors.push(g.scale_p_pow(e));
        }
    }
    PBasis::new(ring, sf.n(), vectors).expect("standard-form chains form a p-basis")
}

impl Submodule {
    pub fn p_basis(&self) -> PBasis {
        p_basis_from_standard_form(self.standard_form())
    }
}

pub fn p_dimension(m: &Submodule) -> usize {
    m.p_dimension()
}

/// `{v ∈ M : p·v = 0}`, spanned by `p^{r-i-1}·g` over block-`i` rows `g`.
pub fn socle(m: &Submodule) -> Submodule {
    let sf = m.standard_form();
    let r = m.ring().r();
    let rows: Vec<Vector> = sf
        .levels()
        .iter()
        .enumerate()
        .map(|(t, &level)| sf.original_row(t).scale_p_pow(r - level - 1))
        .collect();
    Submodule::from_vectors(m.ring(), m.n(), &rows).expect("rows share the ambient space")
}

/// Extends a p-basis of a submodule `N ⊆ M` to a p-basis of `M`.
///
/// Each round takes the first chain vector of `M`'s standard-form p-basis
/// outside the current span, finds the least `e >= 1` with `p^e·v` inside,
/// and prepends `p^{e-1}·v`. The input vectors keep their relative order at
/// the end of the result.
pub fn extend_p_basis(sub_basis: &PBasis, m: &Submodule) -> Result<PBasis> {
    if sub_basis.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    if sub_basis.n() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: sub_basis.n(),
        });
    }
    if let Some(i) = sub_basis.vectors().iter().position(|v| !m.contains(v).unwrap_or(false)) {
        return Err(Error::NotASubmoduleOf(format!(
            "basis vector {i} ({}) is not in the target module",
            sub_basis.vectors()[i]
        )));
    }

    let ring = m.ring();
    let target = m.p_dimension();
    let candidates = m.p_basis().into_vectors();
    let mut current = sub_basis.clone();
    while current.pdim() < target {
        let span = current.span();
        let v = candidates
            .iter()
            .find(|c| !span.contains(c).expect("same ambient space"))
            .expect("M is spanned by its chain basis, so some candidate lies outside a proper submodule");
        let e = (1..=ring.r())
            .find(|&e| span.contains(&v.scale_p_pow(e)).expect("same ambient space"))
            .expect("p^r v = 0 lies in every span");
        let mut vectors = Vec::with_capacity(current.pdim() + 1);
        vectors.push(v.scale_p_pow(e - 1));
        vectors.extend(current.vectors().iter().cloned());
        current = PBasis::new(ring, m.n(), vectors)?;
    }
    Ok(current)
}
