//! Standard form is a canonical invariant: shuffled, duplicated and
//! unit-scaled generators give the same parameters and the same module.

use zpr::{make_ring, Submodule, Vector};

fn main() -> zpr::Result<()> {
    let z9 = make_ring(3, 2)?;
    let rows = [Vector::new(z9, &[3, 6, 1, 0]), Vector::new(z9, &[2, 2, 2, 2]), Vector::new(z9, &[5, -1, 13, 3])];
    let a = Submodule::from_vectors(z9, 4, &rows)?;

    // reorder, double a row (2 is a unit mod 9) and add a redundant sum
    let other = [rows[2].scale(2), rows[0].clone(), &rows[0] + &rows[1], rows[1].clone()];
    let b = Submodule::from_vectors(z9, 4, &other)?;

    for (name, m) in [("a", &a), ("b", &b)] {
        let sf = m.standard_form();
        println!("{name}: k = {:?}, levels = {:?}, permutation = {:?}", sf.k(), sf.levels(), sf.permutation());
        for row in sf.original_rows() {
            println!("   {row}");
        }
    }
    println!("same module: {}", a.equals(&b)?);
    println!("invariants: {:?}", a.standard_form().check_invariants());
    Ok(())
}
