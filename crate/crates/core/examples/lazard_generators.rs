//! Lazard ring generators `x_n` written in the logarithm coefficients `m_n`.

use fgl_thh::exactalg::Error;
use fgl_thh::fgl::{lazard_divisor, lazard_generators, GeneratorSource};

fn main() -> Result<(), Error> {
    let basis = lazard_generators(6, GeneratorSource::Standard)?;
    for n in 1..=basis.max_weight() {
        println!("x_{n} = {}    (divisor {})", basis.x_in_m(n), lazard_divisor(n));
    }
    let auto = lazard_generators(6, GeneratorSource::Auto)?;
    println!();
    for n in 1..=auto.max_weight() {
        println!("auto x_{n} = {}", auto.x_in_m(n));
    }
    Ok(())
}
