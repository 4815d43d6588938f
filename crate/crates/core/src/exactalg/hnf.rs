use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Column Hermite normal form `A * V = H`: `H` is in column echelon form
/// with positive pivots, entries left of a pivot reduced into
/// `[0, pivot)`, and `V` unimodular.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub v: IntMatrix,
    /// `(row, column)` of every pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

pub fn hermite_normal_form(a: &IntMatrix) -> Hnf {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut v = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut c = 0;
    for i in 0..rows {
        if c == cols {
            break;
        }
        // Euclid across columns c.. in row i.
        loop {
            let nz: Vec<usize> = (c..cols).filter(|&j| !h[(i, j)].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let &jmin = nz.iter().min_by_key(|&&j| h[(i, j)].abs()).unwrap();
            h.swap_cols(c, jmin);
            v.swap_cols(c, jmin);
            let mut done = true;
            for j in c + 1..cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, c)]);
                h.add_col(j, c, &-&q);
                v.add_col(j, c, &-q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            h.negate_col(c);
            v.negate_col(c);
        }
        let piv = h[(i, c)].clone();
        for j in 0..c {
            let q = h[(i, j)].div_floor(&piv);
            if !q.is_zero() {
                h.add_col(j, c, &-&q);
                v.add_col(j, c, &-q);
            }
        }
        pivots.push((i, c));
        c += 1;
    }
    Hnf { h, v, pivots }
}

impl Hnf {
    /// Reduces `x` modulo the column lattice of `H`, leaving each pivot
    /// coordinate in `[0, pivot)`. Returns the reduced vector.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut x = x.to_vec();
        for &(i, c) in &self.pivots {
            let q = x[i].div_floor(&self.h[(i, c)]);
            if q.is_zero() {
                continue;
            }
            for (r, xr) in x.iter_mut().enumerate() {
                let hv = &self.h[(r, c)];
                if !hv.is_zero() {
                    *xr -= &q * hv;
                }
            }
        }
        x
    }
}
