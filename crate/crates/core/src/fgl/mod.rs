//! Integral bases: Lazard generators `x_n` against the logarithm
//! coefficients `m_n`, and Hazewinkel generators `v_n` against `l_n`.

mod lazard;
mod typical;

pub use lazard::{
    a_table, auto_generator_expr, lazard_divisor, monomials_of_weight, GeneratorSource, LazardBasis, Provenance,
};
pub use typical::{is_prime, typical_table, TypicalBasis};

/// The basis with the classical generators through weight 4.
pub fn lazard_generators(max_weight: usize, source: GeneratorSource) -> Result<LazardBasis, crate::exactalg::Error> {
    LazardBasis::new(max_weight, source)
}

pub fn hazewinkel_generators(p: u32, max_n: usize) -> Result<TypicalBasis, crate::exactalg::Error> {
    TypicalBasis::hazewinkel(p, max_n)
}
