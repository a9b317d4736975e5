#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use zpr::oracle::{enumerate_span, EnumerationGuard};
use zpr::{make_ring, RingParams, Submodule, Vector};

/// Ambient spaces small enough to enumerate completely.
pub const CORPUS: [(u64, u32, usize); 6] = [(2, 1, 3), (2, 2, 2), (2, 3, 2), (3, 1, 2), (3, 2, 2), (5, 1, 2)];

/// The sixteen listed elements of the worked example in `Z_8^3`.
pub const WORKED_LISTING: [[i64; 3]; 16] = [
    [0, 0, 0], [2, 0, 1], [4, 0, 2], [6, 0, 3], [0, 0, 4], [2, 0, 5], [4, 0, 6], [6, 0, 7],
    [0, 4, 0], [2, 4, 1], [4, 4, 2], [6, 4, 3], [0, 4, 4], [2, 4, 5], [4, 4, 6], [6, 4, 7],
];

pub fn z8() -> RingParams {
    make_ring(2, 3).unwrap()
}

pub fn worked_module() -> Submodule {
    Submodule::from_rows(z8(), 3, &[&[2, 0, 1], &[0, 4, 0]]).unwrap()
}

pub fn worked_listing() -> BTreeSet<Vector> {
    WORKED_LISTING.iter().map(|c| Vector::new(z8(), c)).collect()
}

pub fn rings() -> Vec<(RingParams, usize)> {
    CORPUS.iter().map(|&(p, r, n)| (make_ring(p, r).unwrap(), n)).collect()
}

/// A random vector whose entries are scaled by a random power of `p`, so
/// every valuation shows up.
pub fn random_vector<R: Rng>(rng: &mut R, ring: RingParams, n: usize) -> Vector {
    let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(0..ring.modulus()) as i64).collect();
    let e = rng.gen_range(0..=ring.r());
    Vector::new(ring, &coords).scale_p_pow(e)
}

pub fn random_generators<R: Rng>(rng: &mut R, ring: RingParams, n: usize) -> Vec<Vector> {
    let count = rng.gen_range(0..=n + 2);
    (0..count).map(|_| random_vector(rng, ring, n)).collect()
}

pub fn random_module<R: Rng>(rng: &mut R, ring: RingParams, n: usize) -> (Vec<Vector>, Submodule) {
    let gens = random_generators(rng, ring, n);
    let m = Submodule::from_vectors(ring, n, &gens).unwrap();
    (gens, m)
}

/// A random ring combination of the module's generators.
pub fn random_member<R: Rng>(rng: &mut R, m: &Submodule) -> Vector {
    let ring = m.ring();
    m.generators().iter().fold(Vector::zero(ring, m.n()), |acc, g| {
        &acc + &g.scale(rng.gen_range(0..ring.modulus()))
    })
}

/// Shuffled, duplicated and unit-scaled copy of a generator list.
pub fn re_present<R: Rng>(rng: &mut R, ring: RingParams, gens: &[Vector]) -> Vec<Vector> {
    let mut out = Vec::new();
    for g in gens {
        let copies = rng.gen_range(1..=2);
        for _ in 0..copies {
            let unit = loop {
                let u = rng.gen_range(1..ring.modulus());
                if u % ring.p() != 0 {
                    break u;
                }
            };
            out.push(g.scale(unit));
        }
    }
    out.shuffle(rng);
    out
}

pub fn elements(m: &Submodule) -> BTreeSet<Vector> {
    enumerate_span(&m.generator_set(), &EnumerationGuard::default()).unwrap()
}
