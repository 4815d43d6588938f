//! `Tor^A(Z, Z)` for a polynomial algebra `A` from its normalized bar
//! complex, compared with the exterior algebra on the generators.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::subsets;
use crate::exactalg::{
    plain_table, subquotient_group, typical_weight, Error, Family, GenTable, IntMatrix, Monomial, B, C, T,
};
use crate::fgl::monomials_of_weight;

/// The polynomial algebra whose bar complex is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "algebra", content = "prime")]
pub enum Coalgebra {
    /// `Z[c_1, c_2, ...]`, `|c_n| = n`.
    C,
    /// `Z[b_1, b_2, ...]`, `|b_n| = n`.
    B,
    /// `Z_(p)[t_1, t_2, ...]`, `|t_n| = p^n - 1`.
    T(u32),
}

impl Coalgebra {
    fn table(&self, weight_max: u32) -> Arc<GenTable> {
        let family = |f: Family| plain_table(f, weight_max as usize);
        match *self {
            Coalgebra::C => family(C),
            Coalgebra::B => family(B),
            Coalgebra::T(p) => {
                let mut n = 0;
                while typical_weight(p, n + 1) <= weight_max {
                    n += 1;
                }
                GenTable::new(T.generators(n, |k| typical_weight(p, k)))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BarTorRow {
    pub q: usize,
    pub weight: u32,
    pub chain_rank: usize,
    pub rank: usize,
    #[serde(serialize_with = "crate::exactalg::big_json::many")]
    pub torsion: Vec<BigInt>,
    pub expected_rank: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BarTorReport {
    pub coalgebra: Coalgebra,
    pub rows: Vec<BarTorRow>,
    pub ok: bool,
}

/// `q`-tuples of non-unit monomials of total weight `w`.
fn bar_basis(q: usize, w: u32, cache: &[Vec<Monomial>]) -> Vec<Vec<Monomial>> {
    if q == 0 {
        return if w == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=w {
        for rest in bar_basis(q - 1, w - first, cache) {
            for m in &cache[first as usize] {
                let mut t = Vec::with_capacity(q);
                t.push(m.clone());
                t.extend(rest.iter().cloned());
                out.push(t);
            }
        }
    }
    out.sort();
    out
}

/// `d[a_1|...|a_q] = sum_{i<q} (-1)^i [a_1|...|a_i a_{i+1}|...|a_q]`.
fn bar_differential(src: &[Vec<Monomial>], tgt: &[Vec<Monomial>]) -> IntMatrix {
    let index: HashMap<&Vec<Monomial>, usize> = tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (j, s) in src.iter().enumerate() {
        for i in 0..s.len().saturating_sub(1) {
            let mut t = s[..i].to_vec();
            t.push(s[i].mul(&s[i + 1]));
            t.extend(s[i + 2..].iter().cloned());
            let r = index[&t];
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            m[(r, j)] += BigInt::from(sign);
        }
    }
    m
}

/// Homology of the normalized bar complex in bar degrees `0..=q_max` and
/// weights `0..=weight_max`.
pub fn bar_tor_check(coalgebra: Coalgebra, weight_max: u32, q_max: usize) -> Result<BarTorReport, Error> {
    if weight_max > 8 || q_max > 3 {
        return Err(Error::DegreeGuard { degree: weight_max.max(q_max as u32), limit: 8 });
    }
    let table = coalgebra.table(weight_max);
    let cache: Vec<Vec<Monomial>> = (0..=weight_max).map(|w| monomials_of_weight(&table, w)).collect();
    let mut rows = Vec::new();
    for q in 0..=q_max {
        for w in 0..=weight_max {
            let here = bar_basis(q, w, &cache);
            let below = if q == 0 { Vec::new() } else { bar_basis(q - 1, w, &cache) };
            let above = bar_basis(q + 1, w, &cache);
            let d_out = bar_differential(&here, &below);
            let d_in = bar_differential(&above, &here);
            let h = subquotient_group(&d_in, &d_out)?;
            let expected_rank = subsets(table.len(), q)
                .iter()
                .filter(|s| s.iter().map(|&v| table.weight(v)).sum::<u32>() == w)
                .count();
            let ok = h.group.invariant_factors.is_empty() && h.group.free_rank == expected_rank;
            rows.push(BarTorRow {
                q,
                weight: w,
                chain_rank: here.len(),
                rank: h.group.free_rank,
                torsion: h.group.invariant_factors.clone(),
                expected_rank,
                ok,
            });
        }
    }
    let ok = rows.iter().all(|r| r.ok);
    Ok(BarTorReport { coalgebra, rows, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_weights() {
        let r = bar_tor_check(Coalgebra::C, 4, 2).unwrap();
        assert!(r.ok);
        let get = |q, w| r.rows.iter().find(|x| x.q == q && x.weight == w).unwrap().rank;
        assert_eq!((get(0, 0), get(0, 1), get(1, 3), get(2, 3), get(2, 2)), (1, 0, 1, 1, 0));
    }
}
