use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Error, Q};

/// Clears denominators row by row so that elimination runs over `Z`.
fn integer_rows(a: &[Vec<Q>], rhs: Option<&[Q]>) -> Vec<Vec<BigInt>> {
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            let extra = rhs.map(|r| &r[i]);
            let den = row.iter().chain(extra).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().chain(extra).map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) row echelon form in place; returns pivot columns
/// among the first `ncols` columns.
fn bareiss(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let width = m[r].len();
        for i in r + 1..m.len() {
            for j in c + 1..width {
                m[i][j] = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Solves `A x = rhs` exactly. A consistent system with a nontrivial
/// kernel is reported as underdetermined rather than given an arbitrary
/// particular solution.
pub fn solve_rational_linear(a: &[Vec<Q>], rhs: &[Q]) -> Result<Vec<Q>, Error> {
    if a.len() != rhs.len() {
        return Err(Error::Shape(format!("{} equations but {} right-hand sides", a.len(), rhs.len())));
    }
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("ragged coefficient matrix".into()));
    }
    let mut m = integer_rows(a, Some(rhs));
    let pivots = bareiss(&mut m, n);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::NoSolution);
    }
    if rank < n {
        return Err(Error::Underdetermined { kernel_dim: n - rank });
    }
    let mut x = vec![Q::zero(); n];
    for r in (0..rank).rev() {
        let c = pivots[r];
        let mut acc = Q::from_integer(m[r][n].clone());
        for j in c + 1..n {
            if !m[r][j].is_zero() {
                acc -= Q::from_integer(m[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / Q::from_integer(m[r][c].clone());
    }
    Ok(x)
}

pub fn rational_rank(a: &[Vec<Q>]) -> usize {
    let n = a.first().map_or(0, Vec::len);
    let mut m = integer_rows(a, None);
    bareiss(&mut m, n).len()
}
