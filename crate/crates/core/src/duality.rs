//! The bilinear form `⟨u, v⟩ = Σ u_i v_i`, dual modules, sums and intersections.

use serde::Serialize;

use crate::error::Result;
use crate::ring::Scalar;
use crate::submodule::Submodule;
use crate::vector::Vector;

pub fn inner_product(u: &Vector, v: &Vector) -> Result<Scalar> {
    u.check_compatible(v)?;
    let ring = u.ring();
    let sum = u
        .coords()
        .iter()
        .zip(v.coords())
        .fold(0, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)));
    Ok(ring.scalar(sum as i64))
}

/// `M⊥ = {v : ⟨u, v⟩ = 0 for all u ∈ M}`.
///
/// Works in standard-form coordinates, where row `t` of `G` has pivot
/// `p^{l_t}` in column `t`. Column operations clear every non-pivot entry,
/// bottom row first, giving an invertible `V` with `G·V = D` and
/// `D` row `t` equal to `p^{l_t}·e_t`. Then `G·x = 0` exactly when
/// `y = V^{-1}·x` has `y_t ∈ p^{r - l_t}·Z` for pivot columns, so `M⊥` is
/// spanned by `p^{r - l_t}` times pivot columns of `V` and the remaining
/// columns of `V`.
pub fn dual(m: &Submodule) -> Submodule {
    let ring = m.ring();
    let n = m.n();
    let r = ring.r();
    let sf = m.standard_form();
    let levels = sf.levels();
    let k = levels.len();

    let mut g: Vec<Vec<u64>> = sf.rows().iter().map(|row| row.coords().to_vec()).collect();
    // v[i][j]: row i, column j of V
    let mut v: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();

    for t in (0..k).rev() {
        let pivot = ring.p_pow(levels[t]);
        for j in 0..n {
            if j == t || g[t][j] == 0 {
                continue;
            }
            // column_j -= q · column_t
            let neg_q = ring.neg(g[t][j] / pivot);
            for row in g.iter_mut().take(t + 1) {
                row[j] = ring.add(row[j], ring.mul(neg_q, row[t]));
            }
            for row in v.iter_mut() {
                row[j] = ring.add(row[j], ring.mul(neg_q, row[t]));
            }
        }
    }
    debug_assert!((0..k).all(|t| (0..n).all(|j| g[t][j] == if j == t { ring.p_pow(levels[t]) } else { 0 })));

    let perm = sf.permutation();
    let gens: Vec<Vector> = (0..n)
        .map(|j| {
            let scale = if j < k { ring.p_pow(r - levels[j]) % ring.modulus() } else { 1 };
            let col: Vec<u64> = v.iter().map(|row| ring.mul(row[j], scale)).collect();
            Vector::from_residues(ring, col).unpermuted(perm)
        })
        .filter(|c| !c.is_zero())
        .collect();
    Submodule::from_vectors(ring, n, &gens).expect("columns share the ambient space")
}

/// `{u + v : u ∈ a, v ∈ b}`.
pub fn sum(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    a.check_same_space(b)?;
    let mut rows = a.generators();
    rows.extend(b.generators());
    Submodule::from_vectors(a.ring(), a.n(), &rows)
}

/// `a ∩ b`, computed as `(a⊥ + b⊥)⊥`.
pub fn intersect(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    a.check_same_space(b)?;
    Ok(dual(&sum(&dual(a), &dual(b))?))
}

impl Submodule {
    pub fn dual(&self) -> Submodule {
        dual(self)
    }
}

/// Size and dimension relations between a module and its dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub r: u32,
    pub k: Vec<usize>,
    pub k_total: usize,
    pub dual_k: Vec<usize>,
    pub dual_k_total: usize,
    pub p_dim: usize,
    pub dual_p_dim: usize,
    pub cardinality: Option<u128>,
    pub dual_cardinality: Option<u128>,
    /// `p-dim(M) + p-dim(M⊥) = r·n`.
    pub dimension_sum_holds: bool,
    /// `|M|·|M⊥| = p^{rn}`.
    pub cardinality_product_holds: bool,
    /// `k(M⊥) = n - k_0(M)`, `k_0(M⊥) = n - k(M)`, `k_i(M⊥) = k_{r-i}(M)`.
    pub dual_parameters_hold: bool,
    pub double_dual_holds: bool,
}

impl DimensionReport {
    pub fn all_hold(&self) -> bool {
        self.dimension_sum_holds
            && self.cardinality_product_holds
            && self.dual_parameters_hold
            && self.double_dual_holds
    }
}

pub fn verify_dimension_identities(m: &Submodule) -> DimensionReport {
    let ring = m.ring();
    let (n, r) = (m.n(), ring.r());
    let d = dual(m);
    let k = m.standard_form().k().to_vec();
    let dk = d.standard_form().k().to_vec();
    let (k_total, dk_total) = (m.standard_form().k_total(), d.standard_form().k_total());

    let dimension_sum_holds = m.p_dimension() + d.p_dimension() == r as usize * n;

    // Compare exponents of p so the check never overflows.
    let cardinality_product_holds = match (m.cardinality(), d.cardinality()) {
        (Some(a), Some(b)) => {
            let total = u32::try_from(r as usize * n)
                .ok()
                .and_then(|e| (ring.p() as u128).checked_pow(e));
            match (a.checked_mul(b), total) {
                (Some(prod), Some(total)) => prod == total,
                _ => dimension_sum_holds,
            }
        }
        _ => dimension_sum_holds,
    };

    let dual_parameters_hold = dk_total + k[0] == n
        && dk[0] + k_total == n
        && (1..r as usize).all(|i| dk[i] == k[r as usize - i]);

    let double_dual_holds = dual(&d).equals(m).unwrap_or(false);

    DimensionReport {
        n,
        r,
        k,
        k_total,
        dual_k: dk,
        dual_k_total: dk_total,
        p_dim: m.p_dimension(),
        dual_p_dim: d.p_dimension(),
        cardinality: m.cardinality(),
        dual_cardinality: d.cardinality(),
        dimension_sum_holds,
        cardinality_product_holds,
        dual_parameters_hold,
        double_dual_holds,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::error::Error;
    use crate::oracle::{brute_dual, enumerate_span, EnumerationGuard};
    use crate::ring::{make_ring, RingParams};

    fn z8() -> RingParams {
        make_ring(2, 3).unwrap()
    }

    fn worked_m() -> Submodule {
        Submodule::from_rows(z8(), 3, &[&[2, 0, 1], &[0, 4, 0]]).unwrap()
    }

    fn elements(m: &Submodule) -> BTreeSet<Vector> {
        enumerate_span(&m.generator_set(), &EnumerationGuard::default()).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        let z9 = make_ring(3, 2).unwrap();
        let ip = |a: &[i64], b: &[i64], ring| inner_product(&Vector::new(ring, a), &Vector::new(ring, b)).unwrap().value();
        assert_eq!(ip(&[2, 0, 1], &[0, 4, 0], z8()), 0);
        assert_eq!(ip(&[1, 0], &[1, 0], z9), 1);
        assert_eq!(ip(&[2, 0, 1], &[2, 0, 1], z8()), 5);
        let err = inner_product(&Vector::zero(z8(), 3), &Vector::zero(z8(), 2)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 3, found: 2 });
    }

    #[test]
    fn dual_of_worked_example() {
        let m = worked_m();
        let d = dual(&m);
        assert_eq!(d.standard_form().k_total(), 2);
        assert_eq!(d.standard_form().k(), &[1, 1, 0]);
        assert_eq!(d.cardinality(), Some(32));
        let brute = brute_dual(&elements(&m), z8(), 3, &EnumerationGuard::default()).unwrap();
        assert_eq!(elements(&d), brute);
    }

    #[test]
    fn dual_trivial_cases() {
        let zero = Submodule::zero(z8(), 3);
        let full = Submodule::full(z8(), 3);
        assert!(dual(&zero).equals(&full).unwrap());
        assert!(dual(&full).is_zero());
    }

    #[test]
    fn sum_examples() {
        let m = worked_m();
        let zero = Submodule::zero(z8(), 3);
        assert!(sum(&m, &zero).unwrap().equals(&m).unwrap());
        assert!(sum(&m, &m).unwrap().equals(&m).unwrap());
        let a = Submodule::from_rows(z8(), 3, &[&[2, 0, 1]]).unwrap();
        let b = Submodule::from_rows(z8(), 3, &[&[0, 4, 0]]).unwrap();
        assert!(sum(&a, &b).unwrap().equals(&m).unwrap());
        assert!(sum(&m, &Submodule::zero(z8(), 2)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let m = worked_m();
        let zero = Submodule::zero(z8(), 3);
        assert!(intersect(&m, &m).unwrap().equals(&m).unwrap());
        assert!(intersect(&m, &zero).unwrap().is_zero());
        let a = Submodule::from_rows(z8(), 3, &[&[2, 0, 1]]).unwrap();
        let b = Submodule::from_rows(z8(), 3, &[&[0, 4, 0]]).unwrap();
        let (ea, eb) = (elements(&a), elements(&b));
        assert_eq!((ea.len(), eb.len()), (8, 2));
        assert_eq!(ea.intersection(&eb).count(), 1);
        assert!(intersect(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn identities_for_worked_example() {
        let report = verify_dimension_identities(&worked_m());
        assert_eq!((report.p_dim, report.dual_p_dim), (4, 5));
        assert_eq!((report.cardinality, report.dual_cardinality), (Some(16), Some(32)));
        assert!(report.all_hold());

        let zero = verify_dimension_identities(&Submodule::zero(z8(), 3));
        assert_eq!((zero.p_dim, zero.dual_p_dim), (0, 9));
        assert!(zero.all_hold());
        let full = verify_dimension_identities(&Submodule::full(z8(), 3));
        assert_eq!((full.p_dim, full.dual_p_dim), (9, 0));
        assert!(full.all_hold());
    }
}
