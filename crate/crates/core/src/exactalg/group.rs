use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hnf::{hermite_normal_form, Hnf};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::Error;

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Normalizes an arbitrary list of cyclic orders (zeros mean `Z`, ones
    /// are dropped) into a divisor chain.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let free_rank = orders.iter().filter(|d| d.is_zero()).count();
        let mut powers: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
        for d in orders.iter().filter(|d| !d.is_zero()) {
            for (p, e) in factorize(&d.abs()) {
                let pe = num_traits::pow(p.clone(), e as usize);
                match powers.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(pe),
                    None => powers.push((p, vec![pe])),
                }
            }
        }
        let len = powers.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut inv = vec![BigInt::one(); len];
        for (_, mut v) in powers {
            v.sort();
            for (k, pe) in v.into_iter().rev().enumerate() {
                inv[len - 1 - k] *= pe;
            }
        }
        Self { free_rank, invariant_factors: inv }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Prime-power decomposition of the torsion part, sorted by prime and
    /// then by exponent.
    pub fn primary_factors(&self) -> Vec<BigInt> {
        let mut out: Vec<(BigInt, BigInt)> = Vec::new();
        for d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                out.push((p.clone(), num_traits::pow(p, e as usize)));
            }
        }
        out.sort();
        out.into_iter().map(|(_, q)| q).collect()
    }

    /// The localization at `p`: only the `p`-primary torsion survives.
    pub fn localize(&self, p: u32) -> Self {
        let p = BigInt::from(p);
        let inv = self
            .invariant_factors
            .iter()
            .map(|d| p_part(d, &p))
            .filter(|d| !d.is_one())
            .collect();
        Self { free_rank: self.free_rank, invariant_factors: inv }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        orders.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank + other.free_rank));
        Self::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// The largest power of `p` dividing `d`.
pub(crate) fn p_part(d: &BigInt, p: &BigInt) -> BigInt {
    let mut d = d.abs();
    let mut out = BigInt::one();
    if d.is_zero() {
        return BigInt::zero();
    }
    while d.is_multiple_of(p) {
        d /= p;
        out *= p;
    }
    out
}

/// Trial-division factorization; the numbers met here are tiny.
pub(crate) fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// `ker(d_out) / im(d_in)` for maps `Z^l --d_in--> Z^n --d_out--> Z^m`,
/// together with the data needed to name classes.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FinAbGroup,
    /// One lift per cyclic summand, in the middle basis: torsion summands
    /// in divisor-chain order first, then the free ones.
    pub generators: Vec<Vec<BigInt>>,
    /// Order of each generator, zero for the free summands.
    pub orders: Vec<BigInt>,
    d_out: IntMatrix,
    /// `V^{-1}` rows `rank..` of the SNF of `d_out`: kernel coordinates.
    kernel_coords: IntMatrix,
    /// Rows of `U'` for the nontrivial summands.
    class_rows: IntMatrix,
    image: Hnf,
    labels: Vec<String>,
}

/// Computes `ker(d_out)/im(d_in)`; `d_out * d_in` must vanish.
pub fn subquotient_group(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<Subquotient, Error> {
    let n = d_in.rows();
    if d_out.cols() != n {
        return Err(Error::Shape(format!(
            "d_in lands in rank {n} but d_out starts from rank {}",
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero() {
        return Err(Error::ComplexViolation(format!("d_out * d_in = {comp}")));
    }
    let s = smith_normal_form(d_out);
    let r = s.rank();
    let kernel_coords = s.v_inv.rows_range(r..n);
    let kernel = s.v.columns(r..n);
    let m = kernel_coords.mul(d_in)?;
    let s2 = smith_normal_form(&m);
    let k = n - r;
    let diag: Vec<BigInt> =
        (0..k).map(|i| if i < s2.rank() { s2.diagonal[i].clone() } else { BigInt::zero() }).collect();
    let keep: Vec<usize> = (0..k).filter(|&i| !diag[i].is_one()).collect();
    let lifts = kernel.mul(&s2.u_inv)?;
    let image = hermite_normal_form(d_in);
    let all_cols: Vec<usize> = (0..k).collect();
    let class_rows = s2.u.select(&keep, &all_cols);
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for &i in &keep {
        let g = canonical_lift(&image, &lifts.column(i), !diag[i].is_zero());
        generators.push(g);
        orders.push(diag[i].clone());
    }
    let group = FinAbGroup {
        free_rank: diag.iter().filter(|d| d.is_zero()).count(),
        invariant_factors: diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect(),
    };
    let labels = if d_out.col_labels().len() == n {
        d_out.col_labels().to_vec()
    } else {
        d_in.row_labels().to_vec()
    };
    Ok(Subquotient { group, generators, orders, d_out: d_out.clone(), kernel_coords, class_rows, image, labels })
}

/// Reduces a lift modulo the image and picks the sign whose reduced form
/// has the smaller entries.
fn canonical_lift(image: &Hnf, x: &[BigInt], torsion: bool) -> Vec<BigInt> {
    let a = image.reduce(x);
    if !torsion {
        return normalize_sign(a);
    }
    let neg: Vec<BigInt> = x.iter().map(|v| -v).collect();
    let b = image.reduce(&neg);
    let size = |v: &[BigInt]| -> (BigInt, usize) {
        (v.iter().map(|e| e.abs()).sum(), v.iter().filter(|e| !e.is_zero()).count())
    };
    let (sa, sb) = (size(&a), size(&b));
    
    if sb < sa || (sb == sa && leading_negative(&a)) { b } else { a }
}

fn leading_negative(v: &[BigInt]) -> bool {
    v.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative())
}

fn normalize_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    if leading_negative(&v) {
        v.into_iter().map(|e| -e).collect()
    } else {
        v
    }
}

impl Subquotient {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        self.d_out.cols()
    }

    /// Coordinates of the class of a cocycle against `generators`: torsion
    /// coordinates are reduced into `[0, order)`. Errors if `x` is not a
    /// cocycle.
    pub fn class_of(&self, x: &[BigInt]) -> Result<Vec<BigInt>, Error> {
        if x.len() != self.dimension() {
            return Err(Error::Shape(format!("vector of length {} in rank {}", x.len(), self.dimension())));
        }
        if self.d_out.mul_vec(x).iter().any(|v| !v.is_zero()) {
            return Err(Error::Identity("element is not a cocycle".into()));
        }
        let c = self.kernel_coords.mul_vec(x);
        let w = self.class_rows.mul_vec(&c);
        Ok(w
            .into_iter()
            .zip(&self.orders)
            .map(|(wi, d)| if d.is_zero() { wi } else { wi.mod_floor(d) })
            .collect())
    }

    /// Order of the class of `x`; zero when it has infinite order.
    pub fn order_of(&self, x: &[BigInt]) -> Result<BigInt, Error> {
        let w = self.class_of(x)?;
        let mut ord = BigInt::one();
        for (wi, d) in w.iter().zip(&self.orders) {
            if wi.is_zero() {
                continue;
            }
            if d.is_zero() {
                return Ok(BigInt::zero());
            }
            ord = ord.lcm(&(d / wi.gcd(d)));
        }
        Ok(ord)
    }

    /// `p`-primary part of the order of the class of `x`.
    pub fn local_order_of(&self, x: &[BigInt], p: u32) -> Result<BigInt, Error> {
        let o = self.order_of(x)?;
        Ok(if o.is_zero() { o } else { p_part(&o, &BigInt::from(p)) })
    }

    /// Whether the classes of `xs` generate the whole group.
    pub fn spans(&self, xs: &[Vec<BigInt>]) -> Result<bool, Error> {
        let k = self.orders.len();
        if k == 0 {
            return Ok(true);
        }
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); k];
        for x in xs {
            for (i, wi) in self.class_of(x)?.into_iter().enumerate() {
                rows[i].push(wi);
            }
        }
        for (i, d) in self.orders.iter().enumerate() {
            for (j, row) in rows.iter_mut().enumerate() {
                row.push(if i == j { d.clone() } else { BigInt::zero() });
            }
        }
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        Ok(s.rank() == k && s.diagonal.iter().all(One::is_one))
    }

    /// Whether the classes of `xs` with the claimed orders form an internal
    /// direct sum decomposition of the group.
    pub fn is_decomposition(&self, xs: &[Vec<BigInt>], orders: &[BigInt]) -> Result<bool, Error> {
        if xs.len() != orders.len() || !self.spans(xs)? {
            return Ok(false);
        }
        for (x, o) in xs.iter().zip(orders) {
            if &self.order_of(x)? != o {
                return Ok(false);
            }
        }
        if self.group.free_rank > 0 {
            let free = orders.iter().filter(|o| o.is_zero()).count();
            return Ok(free == self.group.free_rank
                && orders.iter().filter(|o| !o.is_zero()).product::<BigInt>() == self.group.torsion_order());
        }
        Ok(orders.iter().product::<BigInt>() == self.group.torsion_order())
    }

    /// The localization at `p`: summands of order prime to `p` are dropped
    /// and each remaining torsion generator is multiplied into its
    /// `p`-primary part.
    pub fn localize(&self, p: u32) -> Subquotient {
        let pb = BigInt::from(p);
        let mut out = self.clone();
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        let mut rows = Vec::new();
        for (i, (g, d)) in self.generators.iter().zip(&self.orders).enumerate() {
            if d.is_zero() {
                gens.push(g.clone());
                orders.push(d.clone());
                rows.push(i);
                continue;
            }
            let pp = p_part(d, &pb);
            if pp.is_one() {
                continue;
            }
            let unit = d / &pp;
            let x: Vec<BigInt> = g.iter().map(|e| e * &unit).collect();
            gens.push(canonical_lift(&self.image, &x, true));
            orders.push(pp);
            rows.push(i);
        }
        // Class coordinates of a multiple of a generator rescale; keep the
        // original rows and let the orders reduce them.
        let all_cols: Vec<usize> = (0..self.class_rows.cols()).collect();
        out.class_rows = self.class_rows.select(&rows, &all_cols);
        // In a localized summand Z/p^a the coordinate w of the original
        // Z/d summand maps to w / unit, which is invertible mod p^a; the
        // rescaling is folded into the coordinates here.
        for (r, &i) in rows.iter().enumerate() {
            let d = &self.orders[i];
            if d.is_zero() {
                continue;
            }
            let pp = &orders[r];
            let unit = d / pp;
            let inv = mod_inverse(&unit.mod_floor(pp), pp);
            for j in all_cols.iter().copied() {
                let v = &out.class_rows[(r, j)] * &inv;
                out.class_rows[(r, j)] = v;
            }
        }
        out.generators = gens;
        out.orders = orders;
        out.group = self.group.localize(p);
        out
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "{a} is not invertible modulo {m}");
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn z_mod_two_in_degree_three() {
        let d_in = IntMatrix::from_rows(&[vec![-2]]);
        let d_out = IntMatrix::zeros(0, 1);
        let s = subquotient_group(&d_in, &d_out).unwrap();
        assert_eq!(s.group.invariant_factors, bi(&[2]));
        assert_eq!(s.generators, vec![bi(&[1])]);
        assert_eq!(s.order_of(&bi(&[3])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn injective_out_gives_zero() {
        let d_in = IntMatrix::zeros(2, 0);
        let d_out = IntMatrix::from_rows(&[vec![1, 0], vec![0, 3], vec![1, 1]]);
        assert!(subquotient_group(&d_in, &d_out).unwrap().group.is_zero());
    }

    #[test]
    fn complex_violation_detected() {
        let d_in = IntMatrix::from_rows(&[vec![1]]);
        let d_out = IntMatrix::from_rows(&[vec![1]]);
        assert!(matches!(subquotient_group(&d_in, &d_out), Err(Error::ComplexViolation(_))));
    }

    #[test]
    fn chain_normalization_and_primary_parts() {
        let g = FinAbGroup::from_cyclic_orders(&bi(&[16, 6, 5]));
        assert_eq!(g.invariant_factors, bi(&[2, 240]));
        assert_eq!(g.primary_factors(), bi(&[2, 16, 3, 5]));
        assert_eq!(g.localize(2).invariant_factors, bi(&[2, 16]));
        assert_eq!(g.localize(7), FinAbGroup::zero());
        assert_eq!(g.to_string(), "Z/2 + Z/240");
    }

    #[test]
    fn decomposition_check() {
        // Z/4 + Z/3 presented as coker of diag(4, 3) = Z/12.
        let d_in = IntMatrix::from_rows(&[vec![4, 0], vec![0, 3]]);
        let d_out = IntMatrix::zeros(0, 2);
        let s = subquotient_group(&d_in, &d_out).unwrap();
        assert_eq!(s.group.invariant_factors, bi(&[12]));
        assert!(s.is_decomposition(&[bi(&[1, 0]), bi(&[0, 1])], &bi(&[4, 3])).unwrap());
        assert!(!s.is_decomposition(&[bi(&[2, 0]), bi(&[0, 1])], &bi(&[2, 3])).unwrap());
        assert!(s.spans(&[bi(&[1, 1])]).unwrap());
        let l = s.localize(2);
        assert_eq!(l.group.invariant_factors, bi(&[4]));
        assert_eq!(l.order_of(&bi(&[1, 0])).unwrap(), BigInt::from(4));
        assert_eq!(l.order_of(&bi(&[0, 1])).unwrap(), BigInt::from(1));
    }
}
