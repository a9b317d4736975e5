//! The submodule of Z_8^3 generated by (2,0,1) and (0,4,0), end to end.

use zpr::{dual, make_ring, socle, verify_dimension_identities, Submodule, Vector};

fn main() -> zpr::Result<()> {
    let z8 = make_ring(2, 3)?;
    let m = Submodule::from_rows(z8, 3, &[&[2, 0, 1], &[0, 4, 0]])?;

    let sf = m.standard_form();
    println!("standard form (permuted coordinates, permutation {:?}):", sf.permutation());
    for row in sf.rows() {
        println!("  {row}");
    }
    println!("k = {:?}, |M| = {:?}, p-dim = {}", sf.k(), m.cardinality(), m.p_dimension());

    let basis = m.p_basis();
    println!("p-basis:");
    for v in basis.vectors() {
        println!("  {v}");
    }

    // (4,4,6) has four ring representations over the generators but one digit tuple
    let target = Vector::new(z8, &[4, 4, 6]);
    let digits = basis.p_coordinates(&target)?.expect("(4,4,6) lies in M");
    println!("digits of {target}: {:?}", digits.iter().map(|d| d.value()).collect::<Vec<_>>());

    let d = dual(&m);
    println!("dual: k = {:?}, |M⊥| = {:?}", d.standard_form().k(), d.cardinality());
    println!("socle p-dim: {}", socle(&m).p_dimension());
    println!("identities hold: {}", verify_dimension_identities(&m).all_hold());
    Ok(())
}
