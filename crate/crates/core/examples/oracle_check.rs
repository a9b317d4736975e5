//! Cross-check the algebra against exhaustive enumeration on random inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zpr::oracle::{brute_dual, enumerate_p_span, enumerate_span, EnumerationGuard};
use zpr::{dual, make_ring, Error, GeneratorSet, Submodule, Vector};

fn main() -> zpr::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let guard = EnumerationGuard::default();
    let ring = make_ring(3, 2)?;
    let n = 3;
    for trial in 0..20 {
        let rows: Vec<Vector> = (0..rng.gen_range(0..=4))
            .map(|_| Vector::from_residues(ring, (0..n).map(|_| rng.gen_range(0..ring.modulus())).collect()))
            .collect();
        let gens = GeneratorSet::new(ring, n, rows.clone())?;
        let span = enumerate_span(&gens, &guard)?;
        let m = Submodule::from_vectors(ring, n, &rows)?;
        let (pspan, collision) = enumerate_p_span(ring, n, m.p_basis().vectors(), &guard)?;
        let dual_ok = brute_dual(&span, ring, n, &guard)? == enumerate_span(&dual(&m).generator_set(), &guard)?;
        println!(
            "trial {trial:2}: |M| = {:3}, p-span ok {}, unique digits {}, dual ok {dual_ok}",
            span.len(),
            pspan == span,
            !collision
        );
    }

    // the guard refuses work beyond its budget instead of hanging
    let big = make_ring(5, 3)?;
    let m = Submodule::full(big, 4);
    match enumerate_span(&m.generator_set(), &guard) {
        Err(Error::TooLarge { states, max }) => println!("refused: at least {states} states, limit {max}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
