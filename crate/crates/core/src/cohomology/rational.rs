//! Rational exactness, checked a second way: the differential is rewritten
//! in logarithm coordinates (`m_n` for `MU`, `l_n` for `BP`), where
//! `sigma(m_n)` is simply the `n`-th exterior class.

use serde::Serialize;

use super::{DegreeCohomology, Rule, Source, ThhComplex};
use crate::algebroid::CoordFlavor;
use crate::exactalg::{rational_rank, smith_normal_form, Error, GradedPoly, IntMatrix, Q};
use crate::thh::{ExtElement, SigmaTable};

#[derive(Clone, Debug, Serialize)]
pub struct RationalRow {
    pub degree: u32,
    pub q: usize,
    pub dimension: usize,
    /// Rank of the incoming differential in log coordinates.
    pub rank_in: usize,
    /// Rank of the outgoing differential in log coordinates.
    pub rank_out: usize,
    /// Rank of the outgoing differential over `Z`, in the integral basis.
    pub integral_rank_out: usize,
    pub injective: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalReport {
    pub d_max: u32,
    pub free_ranks: Vec<usize>,
    pub rows: Vec<RationalRow>,
    pub ok: bool,
}

impl RationalReport {
    pub fn row(&self, degree: u32, q: usize) -> Option<&RationalRow> {
        self.rows.iter().find(|r| r.degree == degree && r.q == q)
    }
}

/// The same complex with the base written in logarithm coordinates.
fn log_complex(complex: &ThhComplex) -> Result<Option<ThhComplex>, Error> {
    let sigma = complex.sigma();
    let ext = sigma.alphabet();
    let table = match complex.source() {
        Source::Mu(basis) => {
            let m = basis.m_table();
            let n = sigma.max_n();
            let on_base: Vec<ExtElement> = match sigma.flavor() {
                Some(CoordFlavor::AbsoluteB) => (1..=n)
                    .map(|v| {
                        let mut out = ExtElement::zero(m, ext);
                        for j in 1..=v {
                            let mv = if j == v { GradedPoly::one(m) } else { GradedPoly::var(m, (v - j - 1) as u16) };
                            let c = mv.scale_int(-((v - j + 1) as i64));
                            out = &out + &ExtElement::generator(m, ext, j).mul_base(&c);
                        }
                        out
                    })
                    .collect(),
                _ => (1..=n).map(|v| ExtElement::generator(m, ext, v)).collect(),
            };
            let on_ext = (1..=n).map(|k| sigma.on_ext(k).map_coeffs(m, |c| basis.rewrite_x_to_m(c))).collect();
            SigmaTable::from_parts(sigma.flavor(), m, ext, on_base, on_ext)?
        }
        Source::Bp(basis) => {
            let l = basis.l_table();
            let n = sigma.max_n();
            let on_base = (1..=n).map(|v| ExtElement::generator(l, ext, v)).collect();
            let on_ext = vec![ExtElement::zero(l, ext); n];
            SigmaTable::from_parts(sigma.flavor(), l, ext, on_base, on_ext)?
        }
        Source::Plain => return Ok(None),
    };
    Ok(Some(ThhComplex::from_sigma(table, complex.max_degree(), Rule::Right)))
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| Q::from_integer(x.clone())).collect()).collect()
}

fn rank(m: &IntMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        rational_rank(&to_rational(m))
    }
}

/// Free ranks of the computed groups must be `1, 0, 0, ...`; independently,
/// every slice `C(d, q)` must be rationally exact in log coordinates, with
/// the same ranks as the integral differentials.
pub fn rational_collapse_check(complex: &ThhComplex, table: &[DegreeCohomology]) -> Result<RationalReport, Error> {
    let d_max = table.iter().map(|h| h.degree).max().ok_or(Error::Shape("empty cohomology table".into()))?;
    complex.check_degree(d_max)?;
    let free_ranks: Vec<usize> = table.iter().map(|h| h.group.free_rank).collect();
    let mut ok = free_ranks.iter().enumerate().all(|(d, &r)| r == usize::from(d == 0));
    let mut rows = Vec::new();
    if let Some(log) = log_complex(complex)? {
        for d in 0..=d_max {
            for q in complex.q_range(d) {
                let dimension = log.basis(d, q).len();
                if dimension == 0 {
                    continue;
                }
                let rank_out = rank(&log.differential(d, q)?);
                let rank_in = if d == 0 || q == 0 { 0 } else { rank(&log.differential(d - 1, q - 1)?) };
                let integral_rank_out = smith_normal_form(&complex.differential(d, q)?).rank();
                let expected_h = usize::from(d == 0);
                let exact = rank_in + rank_out + expected_h == dimension && integral_rank_out == rank_out;
                ok &= exact;
                rows.push(RationalRow {
                    degree: d,
                    q,
                    dimension,
                    rank_in,
                    rank_out,
                    integral_rank_out,
                    injective: rank_out == dimension,
                    exact,
                });
            }
        }
    }
    Ok(RationalReport { d_max, free_ranks, rows, ok })
}
