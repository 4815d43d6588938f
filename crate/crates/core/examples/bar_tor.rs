//! Tor of the three coalgebras through the bar complex.

use fgl_thh::cohomology::{bar_tor_check, Coalgebra};
use fgl_thh::exactalg::Error;

fn main() -> Result<(), Error> {
    for c in [Coalgebra::C, Coalgebra::B, Coalgebra::T(2), Coalgebra::T(3)] {
        let r = bar_tor_check(c, 8, 3)?;
        println!("{c:?}: exterior = {}", r.ok);
        for row in r.rows.iter().filter(|r| r.chain_rank > 0) {
            println!("  q = {}, weight = {:2}: rank {} (expected {})", row.q, row.weight, row.rank, row.expected_rank);
        }
    }
    Ok(())
}
