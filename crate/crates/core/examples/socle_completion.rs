//! Extend a p-basis of a submodule N ⊆ M to a p-basis of M; the socle is the
//! natural starting point.

use zpr::{extend_p_basis, make_ring, socle, Submodule};

fn main() -> zpr::Result<()> {
    let z27 = make_ring(3, 3)?;
    let m = Submodule::from_rows(z27, 3, &[&[1, 3, 0], &[0, 9, 3], &[0, 0, 9]])?;
    let soc = socle(&m);
    let start = soc.p_basis();
    println!("M: k = {:?}, p-dim {}", m.standard_form().k(), m.p_dimension());
    println!("socle p-basis ({} vectors):", start.pdim());
    for v in start.vectors() {
        println!("  {v}");
    }

    let full = extend_p_basis(&start, &m)?;
    println!("extended to {} vectors (new ones first):", full.pdim());
    for (i, v) in full.vectors().iter().enumerate() {
        let tag = if i < full.pdim() - start.pdim() { "+" } else { " " };
        println!(" {tag} {v}");
    }
    assert_eq!(full.span(), m);

    let outside = Submodule::from_rows(z27, 3, &[&[1, 0, 0]])?;
    if let Err(e) = extend_p_basis(&outside.p_basis(), &m) {
        println!("rejected: {e}");
    }
    Ok(())
}
