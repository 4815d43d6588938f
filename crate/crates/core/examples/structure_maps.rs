//! Right unit, conjugation and coproduct of the `MU` Hopf algebroid, and
//! the typical right unit at `p = 2`.

use fgl_thh::algebroid::{MuAlgebroid, TypicalAlgebroid};
use fgl_thh::exactalg::Error;
use fgl_thh::fgl::{hazewinkel_generators, lazard_generators, GeneratorSource};

fn main() -> Result<(), Error> {
    let n = 4;
    let alg = MuAlgebroid::new(lazard_generators(n + 1, GeneratorSource::Standard)?, n)?;
    for k in 1..=n {
        println!("eta_R(x_{k}) = {}", alg.eta_r_x(k)?);
    }
    for k in 1..=n {
        println!("c_{k} = {}", alg.moving_coordinate(k)?);
    }
    for k in 1..=n {
        println!("chi(b_{k}) = {}", alg.conjugation_chi(k)?);
    }
    println!("axiom failures: {}", alg.hopf_axiom_failures()?.len());

    let bp = TypicalAlgebroid::new(hazewinkel_generators(2, 3)?);
    for k in 1..=3 {
        let (e, integral) = bp.eta_r_v(k)?;
        println!("eta_R(v_{k}) = {e}    (2-integral: {integral})");
    }
    Ok(())
}
