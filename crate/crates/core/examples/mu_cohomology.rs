//! The cohomology table of the `MU` complex with chosen generators.
//!
//! `cargo run --release --example mu_cohomology -- 12`

use fgl_thh::algebroid::CoordFlavor;
use fgl_thh::cohomology::cohomology_groups;
use fgl_thh::exactalg::Error;

fn main() -> Result<(), Error> {
    let d: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let (_, table) = cohomology_groups(CoordFlavor::MovingC, d)?;
    for h in &table {
        println!("H^{} = {}", h.degree, h.group);
        for c in h.classes() {
            let order = if c.order == 0.into() { "inf".to_string() } else { c.order.to_string() };
            println!("    [{order}] {}", c.element);
        }
    }
    Ok(())
}
