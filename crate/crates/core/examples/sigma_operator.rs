//! The suspension operator on the base generators and exterior classes,
//! in the moving, split and typical presentations.

use fgl_thh::exactalg::Error;
use fgl_thh::fgl::{hazewinkel_generators, lazard_generators, GeneratorSource};
use fgl_thh::thh::SigmaTable;

fn show(name: &str, base: &str, t: &SigmaTable) {
    println!("-- {name}");
    for k in 1..=t.max_n() {
        println!("sigma({base}_{k}) = {}", t.on_base(k));
    }
    for k in 1..=t.max_n() {
        let e = t.on_ext(k);
        if !e.is_zero() {
            println!("sigma of exterior class {k} = {e}");
        }
    }
}

fn main() -> Result<(), Error> {
    let basis = lazard_generators(4, GeneratorSource::Standard)?;
    show("moving", "x", &SigmaTable::mu_moving(&basis, 4)?);
    show("split", "x", &SigmaTable::mu_split(&basis, 4)?);
    for p in [2, 3] {
        show(&format!("typical, p = {p}"), "v", &SigmaTable::bp(&hazewinkel_generators(p, 3)?)?);
    }
    Ok(())
}
