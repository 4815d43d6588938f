//! Truncated power series with polynomial coefficients, compositional
//! inversion, and formal group laws built from a logarithm.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactalg::{Error, GenTable, GradedPoly, Q};

/// `sum_k coeffs[k] x^k` for `k <= bound`. The coefficient of `x^k` in
/// every series built here has weight `k - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    table: Arc<GenTable>,
    coeffs: Vec<GradedPoly>,
}

impl TruncatedSeries {
    pub fn zero(table: &Arc<GenTable>, bound: usize) -> Self {
        Self { table: table.clone(), coeffs: vec![GradedPoly::zero(table); bound + 1] }
    }

    /// The identity series `x`.
    pub fn x(table: &Arc<GenTable>, bound: usize) -> Self {
        let mut s = Self::zero(table, bound);
        if bound >= 1 {
            s.coeffs[1] = GradedPoly::one(table);
        }
        s
    }

    pub fn from_coeffs(table: &Arc<GenTable>, coeffs: Vec<GradedPoly>) -> Self {
        Self { table: table.clone(), coeffs }
    }

    /// `x + sum_{n >= 1} c(n) x^{n+1}` through `x^bound`.
    pub fn strict(table: &Arc<GenTable>, bound: usize, c: impl Fn(usize) -> GradedPoly) -> Self {
        let mut s = Self::x(table, bound);
        for k in 2..=bound {
            s.coeffs[k] = c(k - 1);
        }
        s
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &GradedPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: GradedPoly) {
        self.coeffs[k] = c;
    }

    /// Zero constant term and leading coefficient one.
    pub fn is_strict(&self) -> bool {
        self.coeffs[0].is_zero() && (self.bound() == 0 || self.coeffs[1] == GradedPoly::one(&self.table))
    }

    pub fn truncate(&self, bound: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(bound + 1);
        s
    }

    pub fn map_coeffs(&self, table: &Arc<GenTable>, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        Self { table: table.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_bound(&self, other: &Self) -> Result<(), Error> {
        if self.bound() != other.bound() {
            return Err(Error::Truncation(format!("series bounds {} and {}", self.bound(), other.bound())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_bound(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.try_add(b)).collect::<Result<_, _>>()?;
        Ok(Self { table: self.table.clone(), coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_bound(other)?;
        let n = self.bound();
        let mut out = Self::zero(&self.table, n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].try_add(&self.coeffs[i].try_mul(&other.coeffs[j])?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GradedPoly) -> Self {
        Self { table: self.table.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `self^0, self^1, ..., self^k`.
    pub fn powers(&self, k: usize) -> Vec<Self> {
        let mut out = vec![Self::one(&self.table, self.bound())];
        for i in 1..=k {
            let next = out[i - 1].mul(self).expect("same bound");
            out.push(next);
        }
        out
    }

    fn one(table: &Arc<GenTable>, bound: usize) -> Self {
        let mut s = Self::zero(table, bound);
        s.coeffs[0] = GradedPoly::one(table);
        s
    }

    /// `1 / self`, for a series with constant term one.
    pub fn reciprocal(&self) -> Result<Self, Error> {
        if self.coeffs[0] != GradedPoly::one(&self.table) {
            return Err(Error::Unsupported("reciprocal of a series without unit constant term".into()));
        }
        let n = self.bound();
        let mut r = Self::one(&self.table, n);
        for k in 1..=n {
            let mut acc = GradedPoly::zero(&self.table);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !r.coeffs[k - i].is_zero() {
                    acc = acc.try_add(&self.coeffs[i].try_mul(&r.coeffs[k - i])?)?;
                }
            }
            r.coeffs[k] = acc.neg();
        }
        Ok(r)
    }
}

/// `f(g(x))`; `g` must have zero constant term.
pub fn compose(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries, Error> {
    f.check_bound(g)?;
    if !g.coeffs[0].is_zero() {
        return Err(Error::Unsupported("composing with a series that has a constant term".into()));
    }
    let n = f.bound();
    let mut out = TruncatedSeries::zero(&f.table, n);
    let mut pw = TruncatedSeries::one(&f.table, n);
    for k in 0..=n {
        if k > 0 {
            pw = pw.mul(g)?;
        }
        if f.coeffs[k].is_zero() {
            continue;
        }
        for (i, c) in pw.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[i] = out.coeffs[i].try_add(&f.coeffs[k].try_mul(c)?)?;
            }
        }
    }
    Ok(out)
}

/// Compositional inverse of a strict series by Lagrange inversion:
/// `[x^n] g = (1/n) [x^{n-1}] (x / f(x))^n`.
pub fn comp_inverse(f: &TruncatedSeries) -> Result<TruncatedSeries, Error> {
    if !f.is_strict() {
        return Err(Error::Unsupported("compositional inverse of a non-strict series".into()));
    }
    let n = f.bound();
    if n <= 1 {
        return Ok(f.clone());
    }
    // f(x)/x, kept through x^{n-1}
    let mut shifted = TruncatedSeries::zero(&f.table, n - 1);
    for k in 0..n {
        shifted.coeffs[k] = f.coeffs[k + 1].clone();
    }
    let h = shifted.reciprocal()?;
    let mut out = TruncatedSeries::x(&f.table, n);
    let mut hp = h.clone();
    for k in 2..=n {
        hp = hp.mul(&h)?;
        let inv_k = Q::new(BigInt::one(), BigInt::from(k));
        out.coeffs[k] = hp.coeffs[k - 1].scale(&inv_k);
    }
    Ok(out)
}

/// Two-variable series `sum coeffs[(i, j)] x^i y^j`, `i + j <= bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries {
    table: Arc<GenTable>,
    bound: usize,
    coeffs: BTreeMap<(usize, usize), GradedPoly>,
}

impl BivariateSeries {
    pub fn zero(table: &Arc<GenTable>, bound: usize) -> Self {
        Self { table: table.clone(), bound, coeffs: BTreeMap::new() }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn coeff(&self, i: usize, j: usize) -> GradedPoly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| GradedPoly::zero(&self.table))
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: GradedPoly) {
        assert!(i + j <= self.bound, "coefficient beyond the truncation");
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &GradedPoly)> {
        self.coeffs.iter()
    }

    fn add_to(&mut self, i: usize, j: usize, c: &GradedPoly) {
        let cur = self.coeff(i, j);
        self.set_coeff(i, j, &cur + c);
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.table, self.bound);
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &other.coeffs {
                if i1 + i2 + j1 + j2 <= self.bound {
                    out.add_to(i1 + i2, j1 + j2, &(a * b));
                }
            }
        }
        out
    }

    /// `sum_k f_k self^k` for a one-variable `f`.
    pub fn compose_into(&self, f: &TruncatedSeries) -> Self {
        let mut out = Self::zero(&self.table, self.bound);
        let mut pw = Self::zero(&self.table, self.bound);
        pw.set_coeff(0, 0, GradedPoly::one(&self.table));
        for k in 0..=self.bound.min(f.bound()) {
            if k > 0 {
                pw = pw.mul(self);
            }
            if f.coeff(k).is_zero() {
                continue;
            }
            for (&(i, j), c) in &pw.coeffs {
                out.add_to(i, j, &(f.coeff(k) * c));
            }
        }
        out
    }

    /// The series in `x` alone plus the series in `y` alone.
    pub fn split_sum(f: &TruncatedSeries, g: &TruncatedSeries) -> Self {
        let mut out = Self::zero(f.table(), f.bound());
        for k in 0..=f.bound() {
            out.add_to(k, 0, f.coeff(k));
            out.add_to(0, k, g.coeff(k));
        }
        out
    }
}

/// A formal group law `F(x, y) = x + y + sum a_ij x^i y^j`, truncated at
/// total degree `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct FGLaw {
    series: BivariateSeries,
}

impl FGLaw {
    pub fn additive(table: &Arc<GenTable>, bound: usize) -> Self {
        let mut s = BivariateSeries::zero(table, bound);
        s.set_coeff(1, 0, GradedPoly::one(table));
        s.set_coeff(0, 1, GradedPoly::one(table));
        Self { series: s }
    }

    pub fn bound(&self) -> usize {
        self.series.bound
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.series.table
    }

    pub fn series(&self) -> &BivariateSeries {
        &self.series
    }

    /// The coefficient `a_ij`, for `i, j >= 1`.
    pub fn a(&self, i: usize, j: usize) -> GradedPoly {
        self.series.coeff(i, j)
    }

    pub fn is_commutative(&self) -> bool {
        self.series.coeffs.iter().all(|(&(i, j), c)| self.series.coeff(j, i) == *c)
    }

    pub fn map_coeffs(&self, table: &Arc<GenTable>, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        let mut s = BivariateSeries::zero(table, self.bound());
        for (&(i, j), c) in &self.series.coeffs {
            s.set_coeff(i, j, f(c));
        }
        Self { series: s }
    }

    /// `F(u, v)` for one-variable series without constant term.
    pub fn eval(&self, u: &TruncatedSeries, v: &TruncatedSeries) -> Result<TruncatedSeries, Error> {
        u.check_bound(v)?;
        if !u.coeff(0).is_zero() || !v.coeff(0).is_zero() {
            return Err(Error::Unsupported("formal sum of series with constant terms".into()));
        }
        if u.bound() > self.bound() {
            return Err(Error::Truncation(format!(
                "law known through degree {} but series run to {}",
                self.bound(),
                u.bound()
            )));
        }
        let n = u.bound();
        let up = u.powers(n);
        let vp = v.powers(n);
        let mut out = TruncatedSeries::zero(u.table(), n);
        for (&(i, j), c) in &self.series.coeffs {
            if i + j > n {
                continue;
            }
            let term = up[i].mul(&vp[j])?.scale(c);
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// `log(x) = x + sum_{n >= 1} m_n x^{n+1}` over a table holding the
/// family `m` (or any family `name_n`).
pub fn universal_log(table: &Arc<GenTable>, family: crate::exactalg::Family, bound: usize) -> TruncatedSeries {
    TruncatedSeries::strict(table, bound, |n| GradedPoly::gen(table, &family.var_name(n)))
}

/// `F(x, y) = exp(log x + log y)` with `exp` the compositional inverse of
/// `log`. Uses `(log x + log y)^k = sum_r C(k, r) log(x)^r log(y)^{k-r}`.
pub fn fgl_from_log(log: &TruncatedSeries) -> Result<FGLaw, Error> {
    let n = log.bound();
    let exp = comp_inverse(log)?;
    let p = log.powers(n);
    let table = log.table();
    let mut s = BivariateSeries::zero(table, n);
    s.set_coeff(1, 0, GradedPoly::one(table));
    s.set_coeff(0, 1, GradedPoly::one(table));
    for i in 1..n {
        for j in 1..=n - i {
            let mut acc = GradedPoly::zero(table);
            for k in 2..=i + j {
                let e = exp.coeff(k);
                if e.is_zero() {
                    continue;
                }
                let mut inner = GradedPoly::zero(table);
                let mut binom = BigInt::one();
                for r in 0..=k {
                    if r > 0 {
                        binom = binom * BigInt::from(k - r + 1) / BigInt::from(r);
                    }
                    if r == 0 || r > i || k - r > j || k - r == 0 {
                        continue;
                    }
                    let a = p[r].coeff(i);
                    let b = p[k - r].coeff(j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    inner = &inner + &(a * b).scale(&Q::from_integer(binom.clone()));
                }
                if !inner.is_zero() {
                    acc = &acc + &(e * &inner);
                }
            }
            s.set_coeff(i, j, acc);
        }
    }
    Ok(FGLaw { series: s })
}

/// `F(t_1, F(t_2, ... F(t_{k-1}, t_k)))`; the empty sum is zero.
pub fn fgl_formal_sum(law: &FGLaw, terms: &[TruncatedSeries]) -> Result<TruncatedSeries, Error> {
    let Some(last) = terms.last() else {
        return Ok(TruncatedSeries::zero(law.table(), law.bound()));
    };
    let mut acc = last.clone();
    for t in terms[..terms.len() - 1].iter().rev() {
        acc = law.eval(t, &acc)?;
    }
    Ok(acc)
}

/// `c x^k` as a series through `x^bound`.
pub fn monomial_series(table: &Arc<GenTable>, bound: usize, c: GradedPoly, k: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(table, bound);
    if k <= bound {
        s.set_coeff(k, c);
    }
    s
}

/// Whether every coefficient `x^k` has weight `k - 1` (or vanishes).
pub fn is_weight_homogeneous(s: &TruncatedSeries) -> bool {
    s.coeffs().iter().enumerate().all(|(k, c)| c.is_zero() || (k >= 1 && c.homogeneous_weight() == Some(k as u32 - 1)))
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xk = match k {
                0 => String::new(),
                1 => "x".into(),
                k => format!("x^{k}"),
            };
            parts.push(if c.len() == 1 && c.constant_term().is_one() {
                if k == 0 { "1".into() } else { xk }
            } else if k == 0 {
                format!("({c})")
            } else {
                format!("({c})*{xk}")
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        write!(f, "{} + O(x^{})", parts.join(" + "), self.bound() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, plain_table, q, table_of, B, C, M};

    fn b_table(n: usize) -> Arc<GenTable> {
        plain_table(B, n)
    }

    #[test]
    fn compose_with_identity_and_itself() {
        let t = b_table(4);
        let f = TruncatedSeries::strict(&t, 5, |n| GradedPoly::gen(&t, &B.var_name(n)));
        let x = TruncatedSeries::x(&t, 5);
        assert_eq!(compose(&f, &x).unwrap(), f);
        assert_eq!(compose(&x, &f).unwrap(), f);
        let g = TruncatedSeries::strict(&t, 3, |n| if n == 1 { GradedPoly::gen(&t, "b_1") } else { GradedPoly::zero(&t) });
        let gg = compose(&g, &g).unwrap();
        assert_eq!(*gg.coeff(2), GradedPoly::gen(&t, "b_1").scale_int(2));
        assert_eq!(*gg.coeff(3), GradedPoly::gen(&t, "b_1").pow(2).scale_int(2));
    }

    #[test]
    fn conjugates_of_a_strict_series() {
        let t = b_table(6);
        let f = universal_log(&t, B, 7);
        let g = comp_inverse(&f).unwrap();
        assert_eq!(*g.coeff(3), parse_poly(&t, "2 b_1^2 - b_2").unwrap());
        assert_eq!(*g.coeff(5), parse_poly(&t, "14b_1^4 - 21b_1^2b_2 + 3b_2^2 + 6b_1b_3 - b_4").unwrap());
        assert_eq!(compose(&f, &g).unwrap(), TruncatedSeries::x(&t, 7));
        assert_eq!(compose(&g, &f).unwrap(), TruncatedSeries::x(&t, 7));
        assert_eq!(comp_inverse(&g).unwrap(), f);
        assert!(is_weight_homogeneous(&g));
        let x = TruncatedSeries::x(&t, 4);
        assert_eq!(comp_inverse(&x).unwrap(), x);
    }

    #[test]
    fn law_from_logarithm() {
        let t = plain_table(M, 5);
        let log = universal_log(&t, M, 6);
        let f = fgl_from_log(&log).unwrap();
        assert_eq!(f.a(1, 1), parse_poly(&t, "-2m_1").unwrap());
        assert_eq!(f.a(2, 2), parse_poly(&t, "-20m_1^3 + 24m_1m_2 - 6m_3").unwrap());
        assert_eq!(f.a(2, 3), parse_poly(&t, "72m_1^4 - 132m_1^2m_2 + 27m_2^2 + 44m_1m_3 - 10m_4").unwrap());
        assert!(f.is_commutative());
        for (_, c) in f.series().terms() {
            assert!(c.is_integral());
        }
        // log F(x, y) = log x + log y
        let lhs = f.series().compose_into(&log);
        assert_eq!(lhs, BivariateSeries::split_sum(&log, &log));
    }

    #[test]
    fn additive_specialization() {
        let t = plain_table(M, 4);
        let log = TruncatedSeries::x(&t, 5);
        assert_eq!(fgl_from_log(&log).unwrap(), FGLaw::additive(&t, 5));
    }

    /// Trivariate check of `F(F(x, y), z) = F(x, F(y, z))`.
    #[test]
    fn associativity_by_expansion() {
        type Tri = BTreeMap<[usize; 3], GradedPoly>;
        let t = plain_table(M, 4);
        let n = 5;
        let f = fgl_from_log(&universal_log(&t, M, n)).unwrap();
        let mul = |a: &Tri, b: &Tri| {
            let mut out: Tri = BTreeMap::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                    if e.iter().sum::<usize>() <= n {
                        let cur = out.remove(&e).unwrap_or_else(|| GradedPoly::zero(&t));
                        let s = &cur + &(ca * cb);
                        if !s.is_zero() {
                            out.insert(e, s);
                        }
                    }
                }
            }
            out
        };
        let apply = |u: &Tri, v: &Tri| {
            let mut out: Tri = BTreeMap::new();
            let one: Tri = [([0, 0, 0], GradedPoly::one(&t))].into_iter().collect();
            let mut up = vec![one.clone()];
            let mut vp = vec![one];
            for k in 1..=n {
                up.push(mul(&up[k - 1], u));
                vp.push(mul(&vp[k - 1], v));
            }
            for (&(i, j), c) in f.series().terms() {
                for (e, d) in mul(&up[i], &vp[j]) {
                    let cur = out.remove(&e).unwrap_or_else(|| GradedPoly::zero(&t));
                    let s = &cur + &(c * &d);
                    if !s.is_zero() {
                        out.insert(e, s);
                    }
                }
            }
            out
        };
        let var = |k: usize| -> Tri {
            let mut e = [0; 3];
            e[k] = 1;
            [(e, GradedPoly::one(&t))].into_iter().collect()
        };
        let (x, y, z) = (var(0), var(1), var(2));
        assert_eq!(apply(&apply(&x, &y), &z), apply(&x, &apply(&y, &z)));
    }

    #[test]
    fn formal_sums() {
        let t = table_of(&[(M, 3, &|n| n as u32), (C, 3, &|n| n as u32)]);
        let bound = 4;
        let x = TruncatedSeries::x(&t, bound);
        let c1 = monomial_series(&t, bound, GradedPoly::gen(&t, "c_1"), 2);
        let add = FGLaw::additive(&t, bound);
        assert_eq!(fgl_formal_sum(&add, &[x.clone(), c1.clone()]).unwrap(), x.add(&c1).unwrap());
        let f = fgl_from_log(&universal_log(&t, M, bound)).unwrap();
        let s = fgl_formal_sum(&f, &[x, c1]).unwrap();
        // x + c_1 x^2 + a_11 c_1 x^3 + ...
        assert_eq!(*s.coeff(2), GradedPoly::gen(&t, "c_1"));
        assert_eq!(*s.coeff(3), &f.a(1, 1) * &GradedPoly::gen(&t, "c_1"));
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(1).constant_term(), q(1));
    }
}
