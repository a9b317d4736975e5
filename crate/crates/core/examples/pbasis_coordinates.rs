//! Digit coordinates against a p-basis, and what goes wrong for a sequence
//! that is not one.

use zpr::{
    is_p_generator_sequence, is_p_independent, make_ring, EnumerationGuard, Independence, PBasis, SequenceCheck,
    Submodule, Vector,
};

fn main() -> zpr::Result<()> {
    let z4 = make_ring(2, 2)?;
    let m = Submodule::from_rows(z4, 3, &[&[1, 1, 0], &[0, 2, 2]])?;
    let basis = m.p_basis();
    println!("p-basis of M (|M| = {:?}):", m.cardinality());
    for v in basis.vectors() {
        println!("  {v}");
    }
    for target in [[1, 3, 2], [2, 0, 2], [0, 1, 0]] {
        let v = Vector::new(z4, &target);
        match basis.p_coordinates(&v)? {
            Some(d) => {
                let digits: Vec<u64> = d.iter().map(|x| x.value()).collect();
                assert_eq!(basis.combine(&d), v);
                println!("{v} -> digits {digits:?}");
            }
            None => println!("{v} is not in M"),
        }
    }

    let guard = EnumerationGuard::default();
    // 2·(1,1,0) = (2,2,0) must come *after* (1,1,0) for the chain to close up
    let backwards = vec![Vector::new(z4, &[2, 2, 0]), Vector::new(z4, &[1, 1, 0])];
    match is_p_generator_sequence(z4, 3, &backwards, &guard)? {
        SequenceCheck::Valid => println!("generator sequence"),
        SequenceCheck::Violation(i) => println!("p * v[{i}] escapes the digit span of the later vectors"),
    }
    println!("accepted as a p-basis: {}", PBasis::new(z4, 3, backwards).is_ok());

    let redundant = vec![Vector::new(z4, &[1, 1, 0]), Vector::new(z4, &[2, 2, 0]), Vector::new(z4, &[2, 2, 0])];
    if let Independence::Dependent(w) = is_p_independent(z4, 3, &redundant, &guard)? {
        println!("dependence witness: {:?}", w.iter().map(|d| d.value()).collect::<Vec<_>>());
    }
    Ok(())
}
