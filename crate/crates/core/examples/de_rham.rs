//! De Rham cohomology of polynomial rings over `Z` and its comparison with
//! the suspension complex.

use fgl_thh::cohomology::{de_rham_cohomology, de_rham_comparison};
use fgl_thh::exactalg::Error;

fn main() -> Result<(), Error> {
    let (_, table) = de_rham_cohomology(&[1], 12)?;
    for h in &table {
        println!("H^{} = {}", h.degree, h.group);
    }
    let (_, two) = de_rham_cohomology(&[1, 2], 8)?;
    println!("two generators: {}", two.iter().map(|h| h.group.to_string()).collect::<Vec<_>>().join(", "));
    let r = de_rham_comparison(10)?;
    println!("chain maps hold: {}", r.chain_maps_hold());
    Ok(())
}
