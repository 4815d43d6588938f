//! Localized tables for the typical complex at the small primes.

use fgl_thh::cohomology::{bp_cohomology_table, bp_range};
use fgl_thh::exactalg::Error;

fn main() -> Result<(), Error> {
    for p in [2, 3, 5] {
        let (_, table) = bp_cohomology_table(p, bp_range(p), false)?;
        println!("p = {p}");
        for h in table.iter().filter(|h| h.group.free_rank > 0 || !h.group.invariant_factors.is_empty()) {
            print!("  H^{} = {}", h.degree, h.group);
            let gens: Vec<String> = h.classes().map(|c| c.element.to_string()).collect();
            println!("    {}", gens.join(", "));
        }
    }
    Ok(())
}
