//! p-dimension behaves like vector-space dimension under sum and intersection.

use zpr::{intersect, make_ring, sum, Submodule};

fn main() -> zpr::Result<()> {
    let z8 = make_ring(2, 3)?;
    let a = Submodule::from_rows(z8, 3, &[&[2, 0, 1], &[0, 4, 0]])?;
    let b = Submodule::from_rows(z8, 3, &[&[1, 1, 0], &[0, 2, 6]])?;
    let s = sum(&a, &b)?;
    let x = intersect(&a, &b)?;
    for (name, m) in [("A", &a), ("B", &b), ("A+B", &s), ("A∩B", &x)] {
        println!("{name:>4}: k = {:?}, |.| = {:?}, p-dim {}", m.standard_form().k(), m.cardinality(), m.p_dimension());
    }
    let lhs = s.p_dimension() + x.p_dimension();
    let rhs = a.p_dimension() + b.p_dimension();
    println!("p-dim(A+B) + p-dim(A∩B) = {lhs}, p-dim A + p-dim B = {rhs}");
    assert_eq!(lhs, rhs);
    Ok(())
}
