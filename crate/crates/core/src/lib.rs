//! Submodules of `Z_{p^r}^n` and their p-bases.
//!
//! Every submodule `M` of `Z_{p^r}^n` has a generator matrix in standard
//! form, and from it an ordered p-basis: a sequence of vectors whose
//! combinations with digit coefficients `0..p` reach every element of `M`
//! exactly once. This crate computes standard forms, p-bases, digit
//! coordinates, socles, duals, sums and intersections, extends p-bases of
//! submodules, and ships an exhaustive [`oracle`] for checking all of it on
//! small instances.
//!
//! ```
//! use zpr::{make_ring, Submodule, Vector};
//!
//! let z8 = make_ring(2, 3).unwrap();
//! let m = Submodule::from_rows(z8, 3, &[&[2, 0, 1], &[0, 4, 0]]).unwrap();
//! assert_eq!(m.standard_form().k(), &[1, 0, 1]);
//! assert_eq!(m.cardinality(), Some(16));
//!
//! let basis = m.p_basis();
//! let digits = basis.p_coordinates(&Vector::new(z8, &[4, 4, 6])).unwrap().unwrap();
//! assert_eq!(digits.iter().map(|d| d.value()).collect::<Vec<_>>(), [0, 1, 1, 1]);
//! ```

pub mod cli;
pub mod duality;
pub mod error;
pub mod oracle;
pub mod pbasis;
pub mod ring;
pub mod submodule;
pub mod vector;

pub use duality::{dual, inner_product, intersect, sum, verify_dimension_identities, DimensionReport};
pub use error::{Error, Result};
pub use oracle::EnumerationGuard;
pub use pbasis::{
    extend_p_basis, is_p_generator_sequence, is_p_independent, p_basis_from_standard_form, p_coordinates,
    p_dimension, socle, Independence, PBasis, SequenceCheck,
};
pub use ring::{make_ring, p_adic_digits, recompose, unit_inverse, valuation, Digit, RingParams, Scalar};
pub use submodule::{parameters, standard_form, submodules_equal, Parameters, StandardForm, Submodule};
pub use vector::{GeneratorSet, Vector};
