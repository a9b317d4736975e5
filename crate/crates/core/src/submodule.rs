//! Standard-form generator matrices and the [`Submodule`] type built on them.
//!
//! A generator matrix is in standard form when, after permuting columns,
//! its rows fall into blocks `0..r` where block `i` has `k_i` rows with
//! pivot `p^i` on the diagonal, zeros left of and below every pivot, and
//! every entry of block `i` divisible by `p^i`. The parameters
//! `(k_0, ..., k_{r-1})` depend only on the module, and
//! `|M| = p^{Σ (r - i) k_i}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{RingParams, Scalar};
use crate::vector::{GeneratorSet, Vector};

/// A generator matrix in standard form.
///
/// `rows` are stored in standard-form column order: row `t` has its pivot
/// in column `t`. Column `s` of the standard form is column
/// `permutation[s]` of the ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    ring: RingParams,
    n: usize,
    rows: Vec<Vector>,
    levels: Vec<u32>,
    permutation: Vec<usize>,
    k: Vec<usize>,
}

/// The invariants `k_0, ..., k_{r-1}` and their sum `k(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub k: Vec<usize>,
    pub total: usize,
}

/// Result of row-reducing a list of vectors, optionally with the row
/// operations that produced it: `sf.original_row(t) = Σ_j transform[t][j] · input[j]`.
#[derive(Debug, Clone)]
pub(crate) struct Reduction {
    pub sf: StandardForm,
    pub transform: Option<Vec<Vec<u64>>>,
}

impl Reduction {
    /// Ring coefficients over the input rows that combine to `v`, if any.
    pub fn solve_over_inputs(&self, v: &Vector) -> Option<Vec<u64>> {
        let ring = self.sf.ring;
        let transform = self.transform.as_ref().expect("reduction was built without a transform");
        let inputs = transform.first().map_or(0, Vec::len);
        let coeffs = self.sf.solve(v)?;
        let mut out = vec![0u64; inputs];
        for (c, t_row) in coeffs.iter().zip(transform) {
            for (o, &t) in out.iter_mut().zip(t_row) {
                *o = ring.add(*o, ring.mul(*c, t));
            }
        }
        Some(out)
    }
}

/// Row-reduces `rows` to standard form.
///
/// Levels are processed in increasing order. Within level `i` the
/// not-yet-pivoted columns are scanned left to right; the pivot is the
/// remaining row of least valuation in that column (ties go to the lower
/// index), accepted only when that valuation is exactly `i`. The pivot row
/// is scaled so the pivot equals `p^i`, cleared out of every remaining row,
/// and reduced modulo `p^i` in every earlier pivot row.
pub(crate) fn reduce(ring: RingParams, n: usize, rows: &[Vector], track: bool) -> Reduction {
    let m = rows.len();
    let mut work: Vec<Vector> = rows.to_vec();
    let mut trans: Option<Vec<Vec<u64>>> = track.then(|| {
        (0..m)
            .map(|i| {
                let mut e = vec![0; m];
                e[i] = 1;
                e
            })
            .collect()
    });
    let mut remaining: Vec<usize> = (0..m).filter(|&i| !work[i].is_zero()).collect();
    let mut pivots: Vec<(usize, usize, u32)> = Vec::new();
    let mut pivot_col = vec![false; n];

    'levels: for level in 0..ring.r() {
        let pivot_value = ring.p_pow(level);
        for col in 0..n {
            remaining.retain(|&i| !work[i].is_zero());
            if remaining.is_empty() {
                break 'levels;
            }
            if pivot_col[col] {
                continue;
            }
            let (best_val, best) = remaining
                .iter()
                .map(|&i| (ring.valuation(work[i].coords()[col]), i))
                .min()
                .expect("remaining is non-empty");
            debug_assert!(best_val >= level);
            if best_val != level {
                continue;
            }

            let unit = work[best].coords()[col] / pivot_value;
            let inv = ring.inverse(unit).expect("pivot quotient is a unit");
            work[best] = work[best].scale(inv);
            if let Some(t) = trans.as_mut() {
                t[best] = t[best].iter().map(|&x| ring.mul(x, inv)).collect();
            }
            remaining.retain(|&i| i != best);

            let others = remaining.iter().copied().chain(pivots.iter().map(|&(row, _, _)| row));
            let others: Vec<usize> = others.collect();
            for i in others {
                let q = work[i].coords()[col] / pivot_value;
                if q == 0 {
                    continue;
                }
                let neg_q = ring.neg(q % ring.modulus());
                let pivot_row = work[best].clone();
                work[i].add_scaled_assign(neg_q, &pivot_row);
                if let Some(t) = trans.as_mut() {
                    let pivot_t = t[best].clone();
                    for (x, y) in t[i].iter_mut().zip(pivot_t) {
                        *x = ring.add(*x, ring.mul(neg_q, y));
                    }
                }
            }
            pivots.push((best, col, level));
            pivot_col[col] = true;
        }
    }

    let mut permutation: Vec<usize> = pivots.iter().map(|&(_, col, _)| col).collect();
    permutation.extend((0..n).filter(|&c| !pivot_col[c]));
    let mut k = vec![0usize; ring.r() as usize];
    for &(_, _, level) in &pivots {
        k[level as usize] += 1;
    }
    let sf = StandardForm {
        ring,
        n,
        rows: pivots.iter().map(|&(row, _, _)| work[row].permuted(&permutation)).collect(),
        levels: pivots.iter().map(|&(_, _, level)| level).collect(),
        permutation,
        k,
    };
    let transform = trans.map(|t| pivots.iter().map(|&(row, _, _)| t[row].clone()).collect());
    Reduction { sf, transform }
}

/// Reduces a generator set to standard form.
pub fn standard_form(gens: &GeneratorSet) -> StandardForm {
    reduce(gens.ring(), gens.n(), gens.rows(), false).sf
}

pub fn parameters(sf: &StandardForm) -> Parameters {
    Parameters {
        k: sf.k.clone(),
        total: sf.rows.len(),
    }
}

impl StandardForm {
    pub fn ring(&self) -> RingParams {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows in standard-form column order.
    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    /// Block index of each row; row `t` has pivot `p^{levels[t]}`.
    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    /// `k(M)`, the number of rows.
    pub fn k_total(&self) -> usize {
        self.rows.len()
    }

    pub fn parameters(&self) -> Parameters {
        parameters(self)
    }

    pub fn original_row(&self, t: usize) -> Vector {
        self.rows[t].unpermuted(&self.permutation)
    }

    /// Rows mapped back to the ambient column order.
    pub fn original_rows(&self) -> Vec<Vector> {
        (0..self.rows.len()).map(|t| self.original_row(t)).collect()
    }

    /// `Σ (r - i) k_i`.
    pub fn p_dimension(&self) -> usize {
        let r = self.ring.r() as usize;
        self.k.iter().enumerate().map(|(i, &ki)| (r - i) * ki).sum()
    }

    /// Back-substitutes `v` (ambient column order) against the pivots.
    ///
    /// Returns coefficients `c_t` with `Σ c_t · row_t = v`, each reduced into
    /// `[0, p^{r - level_t})`, or `None` when `v` is outside the span.
    pub fn solve(&self, v: &Vector) -> Option<Vec<u64>> {
        let ring = self.ring;
        let mut residual = v.permuted(&self.permutation);
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (t, (row, &level)) in self.rows.iter().zip(&self.levels).enumerate() {
            let entry = residual.coords()[t];
            let pivot = ring.p_pow(level);
            if entry % pivot != 0 {
                return None;
            }
            let c = (entry / pivot) % ring.p_pow(ring.r() - level);
            if c != 0 {
                residual.add_scaled_assign(ring.neg(c), row);
            }
            coeffs.push(c);
        }
        residual.is_zero().then_some(coeffs)
    }

    /// Checks every structural invariant of the standard form.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let ring = self.ring;
        let mut seen = vec![false; self.n];
        for &c in &self.permutation {
            if c >= self.n || std::mem::replace(&mut seen[c], true) {
                return Err(format!("permutation {:?} is not a bijection", self.permutation));
            }
        }
        if self.permutation.len() != self.n {
            return Err("permutation has the wrong length".into());
        }
        if self.rows.len() > self.n || self.levels.len() != self.rows.len() {
            return Err("too many rows".into());
        }
        if self.k.iter().sum::<usize>() != self.rows.len() {
            return Err("k does not sum to the row count".into());
        }
        if self.levels.windows(2).any(|w| w[0] > w[1]) {
            return Err("rows are not grouped by block".into());
        }
        for (i, &ki) in self.k.iter().enumerate() {
            if self.levels.iter().filter(|&&l| l as usize == i).count() != ki {
                return Err(format!("k_{i} disagrees with the row levels"));
            }
        }
        for (t, row) in self.rows.iter().enumerate() {
            let level = self.levels[t];
            let pivot = ring.p_pow(level);
            if row.coords()[t] != pivot {
                return Err(format!("row {t}: pivot is not p^{level}"));
            }
            if row.coords().iter().any(|&x| x % pivot != 0) {
                return Err(format!("row {t}: entry not divisible by p^{level}"));
            }
            if row.coords()[..t].iter().any(|&x| x != 0) {
                return Err(format!("row {t}: nonzero entry left of the pivot"));
            }
            for (u, other) in self.rows.iter().enumerate() {
                let x = other.coords()[t];
                if u > t && x != 0 {
                    return Err(format!("row {u}: nonzero entry below pivot {t}"));
                }
                if u < t && x >= pivot {
                    return Err(format!("row {u}: entry above pivot {t} is not reduced"));
                }
            }
        }
        Ok(())
    }
}

/// A submodule of `Z_{p^r}^n`, held through its standard form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    sf: StandardForm,
    pdim: usize,
    cardinality: Option<u128>,
}

impl Submodule {
    pub fn from_standard_form(sf: StandardForm) -> Self {
        let pdim = sf.p_dimension();
        let cardinality = u32::try_from(pdim)
            .ok()
            .and_then(|d| (sf.ring.p() as u128).checked_pow(d));
        Submodule { sf, pdim, cardinality }
    }

    pub fn span(gens: &GeneratorSet) -> Self {
        Self::from_standard_form(standard_form(gens))
    }

    pub fn from_vectors(ring: RingParams, n: usize, rows: &[Vector]) -> Result<Self> {
        Ok(Self::span(&GeneratorSet::new(ring, n, rows.to_vec())?))
    }

    pub fn from_rows(ring: RingParams, n: usize, rows: &[&[i64]]) -> Result<Self> {
        Ok(Self::span(&GeneratorSet::from_rows(ring, n, rows)?))
    }

    pub fn zero(ring: RingParams, n: usize) -> Self {
        Self::from_standard_form(reduce(ring, n, &[], false).sf)
    }

    pub fn full(ring: RingParams, n: usize) -> Self {
        let rows: Vec<Vector> = (0..n).map(|i| Vector::unit(ring, n, i)).collect();
        Self::from_standard_form(reduce(ring, n, &rows, false).sf)
    }

    pub fn ring(&self) -> RingParams {
        self.sf.ring
    }

    pub fn n(&self) -> usize {
        self.sf.n
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.sf
    }

    pub fn parameters(&self) -> Parameters {
        self.sf.parameters()
    }

    /// Canonical generators in ambient column order.
    pub fn generators(&self) -> Vec<Vector> {
        self.sf.original_rows()
    }

    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet::new(self.ring(), self.n(), self.generators()).expect("rows share the ambient space")
    }

    /// `p^{Σ (r - i) k_i}`, or `None` if it does not fit in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        self.cardinality
    }

    /// `log_p |M| = Σ (r - i) k_i`.
    pub fn p_dimension(&self) -> usize {
        self.pdim
    }

    pub fn is_zero(&self) -> bool {
        self.sf.rows.is_empty()
    }

    pub(crate) fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.ring() != self.ring() {
            return Err(Error::RingMismatch);
        }
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_same_space(&self, other: &Submodule) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// Coefficients over the standard-form rows expressing `v`, or `None`
    /// when `v` is not in the module. A block-`i` coefficient lies in
    /// `[0, p^{r - i})`.
    pub fn span_membership(&self, v: &Vector) -> Result<Option<Vec<Scalar>>> {
        self.check_vector(v)?;
        let ring = self.ring();
        Ok(self
            .sf
            .solve(v)
            .map(|cs| cs.into_iter().map(|c| ring.scalar(c as i64)).collect()))
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self.sf.solve(v).is_some())
    }

    pub fn is_subset_of(&self, other: &Submodule) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self.generators().iter().all(|g| other.sf.solve(g).is_some()))
    }

    /// Span equality: generators of `self` lie in `other` and the sizes agree.
    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self.pdim == other.pdim && self.is_subset_of(other)?)
    }
}

pub fn submodules_equal(a: &Submodule, b: &Submodule) -> Result<bool> {
    a.equals(b)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::oracle::{enumerate_span, EnumerationGuard};
    use crate::ring::make_ring;

    fn worked_m() -> Submodule {
        let z8 = make_ring(2, 3).unwrap();
        Submodule::from_rows(z8, 3, &[&[2, 0, 1], &[0, 4, 0]]).unwrap()
    }

    fn span_set(ring: RingParams, n: usize, rows: Vec<Vector>) -> BTreeSet<Vector> {
        let gens = GeneratorSet::new(ring, n, rows).unwrap();
        enumerate_span(&gens, &EnumerationGuard::default()).unwrap()
    }

    #[test]
    fn worked_example_standard_form() {
        let m = worked_m();
        let sf = m.standard_form();
        sf.check_invariants().unwrap();
        assert_eq!(sf.k(), &[1, 0, 1]);
        assert_eq!(sf.k_total(), 2);
        assert_eq!(sf.permutation(), &[2, 1, 0]);
        let rows: Vec<String> = sf.rows().iter().map(|r| r.to_string()).collect();
        assert_eq!(rows, ["1 0 2", "0 4 0"]);
        assert_eq!(m.cardinality(), Some(16));
        assert_eq!(m.p_dimension(), 4);

        // Span of the permuted-back rows equals the span of the input rows.
        let z8 = m.ring();
        let original = span_set(z8, 3, vec![Vector::new(z8, &[2, 0, 1]), Vector::new(z8, &[0, 4, 0])]);
        let recovered = span_set(z8, 3, m.generators());
        assert_eq!(original.len(), 16);
        assert_eq!(original, recovered);
    }

    #[test]
    fn trivial_standard_forms() {
        let z8 = make_ring(2, 3).unwrap();
        let zero = Submodule::from_rows(z8, 3, &[]).unwrap();
        assert_eq!(zero.parameters(), Parameters { k: vec![0, 0, 0], total: 0 });
        assert_eq!(zero.cardinality(), Some(1));
        assert_eq!(zero.p_dimension(), 0);
        assert_eq!(zero, Submodule::zero(z8, 3));

        let full = Submodule::full(z8, 3);
        assert_eq!(full.parameters(), Parameters { k: vec![3, 0, 0], total: 3 });
        assert_eq!(full.cardinality(), Some(512));

        let z9 = make_ring(3, 2).unwrap();
        let id = Submodule::from_rows(z9, 2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(id.standard_form().k(), &[2, 0]);
        assert_eq!(id.generators(), vec![Vector::new(z9, &[1, 0]), Vector::new(z9, &[0, 1])]);
        assert_eq!(id.cardinality(), Some(81));
    }

    #[test]
    fn pivots_are_normalized_and_entries_reduced() {
        let z27 = make_ring(3, 3).unwrap();
        let m = Submodule::from_rows(z27, 4, &[&[6, 3, 12, 9], &[2, 5, 7, 1], &[9, 0, 18, 0]]).unwrap();
        m.standard_form().check_invariants().unwrap();
        let expected = span_set(z27, 4, vec![
            Vector::new(z27, &[6, 3, 12, 9]),
            Vector::new(z27, &[2, 5, 7, 1]),
            Vector::new(z27, &[9, 0, 18, 0]),
        ]);
        assert_eq!(span_set(z27, 4, m.generators()), expected);
        assert_eq!(m.cardinality(), Some(expected.len() as u128));
    }

    #[test]
    fn membership_examples() {
        let m = worked_m();
        let z8 = m.ring();
        let coeffs = m.span_membership(&Vector::new(z8, &[4, 4, 6])).unwrap().unwrap();
        let rebuilt = m
            .generators()
            .iter()
            .zip(&coeffs)
            .fold(Vector::zero(z8, 3), |acc, (g, c)| &acc + &g.scale(c.value()));
        assert_eq!(rebuilt, Vector::new(z8, &[4, 4, 6]));
        // block-0 coefficient lives in [0, 8), block-2 coefficient in [0, 2)
        assert!(coeffs[0].value() < 8 && coeffs[1].value() < 2);

        assert_eq!(m.span_membership(&Vector::new(z8, &[1, 0, 0])).unwrap(), None);
        let zero = m.span_membership(&Vector::zero(z8, 3)).unwrap().unwrap();
        assert!(zero.iter().all(|c| c.value() == 0));

        let err = m.span_membership(&Vector::zero(z8, 2)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 3, found: 2 });
    }

    #[test]
    fn equality_examples() {
        let m = worked_m();
        let z8 = m.ring();
        let shuffled = Submodule::from_rows(z8, 3, &[&[0, 4, 0], &[6, 0, 3], &[2, 0, 1], &[0, 0, 0]]).unwrap();
        assert!(submodules_equal(&m, &shuffled).unwrap());
        assert!(!submodules_equal(&m, &Submodule::zero(z8, 3)).unwrap());

        let all: Vec<Vector> = span_set(z8, 3, m.generators()).into_iter().collect();
        let from_listing = Submodule::from_vectors(z8, 3, &all).unwrap();
        assert!(submodules_equal(&m, &from_listing).unwrap());

        let other = Submodule::zero(z8, 2);
        assert!(matches!(m.equals(&other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn transform_reproduces_rows() {
        let z8 = make_ring(2, 3).unwrap();
        let rows = vec![
            Vector::new(z8, &[2, 0, 1]),
            Vector::new(z8, &[0, 4, 0]),
            Vector::new(z8, &[6, 4, 3]),
            Vector::new(z8, &[1, 1, 1]),
        ];
        let red = reduce(z8, 3, &rows, true);
        let t = red.transform.as_ref().unwrap();
        for (i, sf_row) in red.sf.original_rows().iter().enumerate() {
            let combo = rows
                .iter()
                .zip(&t[i])
                .fold(Vector::zero(z8, 3), |acc, (r, &c)| &acc + &r.scale(c));
            assert_eq!(&combo, sf_row);
        }
        let target = Vector::new(z8, &[3, 5, 7]);
        if let Some(c) = red.solve_over_inputs(&target) {
            let combo = rows
                .iter()
                .zip(&c)
                .fold(Vector::zero(z8, 3), |acc, (r, &x)| &acc + &r.scale(x));
            assert_eq!(combo, target);
        }
    }
}
