//! Orthogonal modules and the counting identities that tie them to M.

use zpr::{dual, inner_product, make_ring, verify_dimension_identities, Submodule};

fn main() -> zpr::Result<()> {
    let z25 = make_ring(5, 2)?;
    let m = Submodule::from_rows(z25, 4, &[&[1, 2, 3, 4], &[0, 5, 10, 0]])?;
    let d = dual(&m);
    println!("M⊥ generators:");
    for g in d.generators() {
        println!("  {g}");
        for h in m.generators() {
            assert_eq!(inner_product(&g, &h)?.value(), 0);
        }
    }
    let report = verify_dimension_identities(&m);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    println!("(M⊥)⊥ = M: {}", dual(&d).equals(&m)?);
    Ok(())
}
