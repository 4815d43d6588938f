use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gens::{GenTable, Var};
use super::{Error, Q};

/// A monomial: sparse exponent list sorted by generator index, with its
/// cached total weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    weight: u32,
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self { weight: 0, exps: Vec::new() }
    }

    pub fn var(table: &GenTable, v: Var, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self { weight: table.weight(v) * e, exps: vec![(v, e)] }
    }

    /// Builds from an arbitrary exponent list; merges repeats, drops zeros.
    pub fn from_exponents(table: &GenTable, exps: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in exps {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let weight = map.iter().map(|(&v, &e)| table.weight(v) * e).sum();
        Self { weight, exps: map.into_iter().collect() }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Self { weight: self.weight + other.weight, exps }
    }

    /// `self / v`, with the exponent it had; `None` if `v` does not divide.
    pub fn without_one(&self, table: &GenTable, v: Var) -> Option<(u32, Self)> {
        let i = self.exps.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let e = self.exps[i].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(i);
        } else {
            exps[i].1 -= 1;
        }
        Some((e, Self { weight: self.weight - table.weight(v), exps }))
    }

    /// Splits off the part supported on generators satisfying `pred`.
    pub fn split(&self, table: &GenTable, pred: impl Fn(Var) -> bool) -> (Self, Self) {
        let (yes, no): (Vec<_>, Vec<_>) = self.exps.iter().partition(|(v, _)| pred(*v));
        (Self::from_exponents(table, yes), Self::from_exponents(table, no))
    }

    /// Total degree in generators satisfying `pred`.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.exps.iter().filter(|(v, _)| pred(*v)).map(|&(_, e)| e).sum()
    }

    pub fn render(&self, table: &GenTable, sep: &str, tex: bool) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| {
                let g = table.gen(v);
                let base = if tex { g.tex.as_str() } else { g.name.as_str() };
                match (e, tex) {
                    (1, _) => base.to_string(),
                    (e, true) if e >= 10 => format!("{base}^{{{e}}}"),
                    (e, _) => format!("{base}^{e}"),
                }
            })
            .collect();
        parts.join(sep)
    }
}

/// Graded lexicographic order: total weight first; within a weight the
/// monomial with the larger exponent at the first differing generator
/// comes first (`x_1^2 < x_2`, matching the usual listing of a basis).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.cmp(&other.weight).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.exps.get(i), other.exps.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => match a.1.cmp(&b.1) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            o => return o.reverse(),
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients over a weighted
/// generator table.
///
/// `declared` records the weight of a polynomial known to be homogeneous.
/// Adding two homogeneous polynomials of different weights is an error.
#[derive(Clone)]
pub struct GradedPoly {
    table: Arc<GenTable>,
    terms: BTreeMap<Monomial, Q>,
    declared: Option<u32>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
    }
}

impl Eq for GradedPoly {}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({})", self)
    }
}

impl GradedPoly {
    pub fn zero(table: &Arc<GenTable>) -> Self {
        Self { table: table.clone(), terms: BTreeMap::new(), declared: None }
    }

    pub fn constant(table: &Arc<GenTable>, c: impl Into<Q>) -> Self {
        Self::term(table, Monomial::one(), c.into())
    }

    pub fn one(table: &Arc<GenTable>) -> Self {
        Self::constant(table, Q::one())
    }

    pub fn term(table: &Arc<GenTable>, m: Monomial, c: Q) -> Self {
        let w = m.weight();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { table: table.clone(), terms, declared: Some(w) }
    }

    pub fn var(table: &Arc<GenTable>, v: Var) -> Self {
        Self::term(table, Monomial::var(table, v, 1), Q::one())
    }

    /// The generator with the given name. Panics if it is not in the table.
    pub fn gen(table: &Arc<GenTable>, name: &str) -> Self {
        let v = table.lookup(name).unwrap_or_else(|| panic!("unknown generator {name} in {table}"));
        Self::var(table, v)
    }

    /// Builds from raw terms without any homogeneity declaration.
    pub fn from_terms(table: &Arc<GenTable>, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p.declared = p.homogeneous_weight();
        p
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Declared weight, if the polynomial is flagged homogeneous.
    pub fn declared_weight(&self) -> Option<u32> {
        self.declared
    }

    /// Weight shared by every term, computed from the terms themselves.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Flags the polynomial homogeneous after checking that it is.
    pub fn homogenize(mut self) -> Result<Self, Error> {
        if self.is_zero() {
            return Ok(self);
        }
        match self.homogeneous_weight() {
            Some(w) => {
                self.declared = Some(w);
                Ok(self)
            }
            None => Err(Error::NotHomogeneous(self.to_string())),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_table(&self, other: &Self) -> Result<(), Error> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(Error::TableMismatch(self.table.to_string(), other.table.to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_table(other)?;
        let declared = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.declared,
            (_, true) => self.declared,
            _ => match (self.declared, other.declared) {
                (Some(a), Some(b)) if a != b => return Err(Error::WeightMismatch(a, b)),
                (Some(a), Some(_)) => Some(a),
                _ => None,
            },
        };
        let (mut acc, small) =
            if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc.declared = declared;
        Ok(acc)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_table(other)?;
        let mut out = Self::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out.declared = match (self.declared, other.declared) {
            (Some(a), Some(b)) => Some(a + b),
            _ => out.homogeneous_weight(),
        };
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            let mut z = Self::zero(&self.table);
            z.declared = self.declared;
            return z;
        }
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = &*c * s;
        }
        p
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&Q::from_integer(BigInt::from(s)))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Self {
        let mut out = Self::zero(&self.table);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1 * c);
        }
        out.declared = self.declared.map(|w| w + m.weight());
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.table);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Keeps only the terms of the given weight.
    pub fn weight_part(&self, w: u32) -> Self {
        let mut p = Self::zero(&self.table);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.weight() == w) {
            p.terms.insert(m.clone(), c.clone());
        }
        p.declared = Some(w);
        p
    }

    /// Keeps only the terms satisfying `pred`.
    pub fn filter_terms(&self, pred: impl Fn(&Monomial) -> bool) -> Self {
        let mut p = Self::zero(&self.table);
        for (m, c) in self.terms.iter().filter(|(m, _)| pred(m)) {
            p.terms.insert(m.clone(), c.clone());
        }
        p.declared = self.declared;
        p
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.without_one(&self.table, v) {
                out.add_term(rest, c * Q::from_integer(BigInt::from(e)));
            }
        }
        out.declared = self.declared.and_then(|w| w.checked_sub(self.table.weight(v)));
        out
    }

    /// Ring map into another table, given the image of every generator.
    /// Powers of images are cached per call.
    pub fn substitute(&self, target: &Arc<GenTable>, image: impl Fn(Var) -> GradedPoly) -> Self {
        let mut cache: BTreeMap<(Var, u32), GradedPoly> = BTreeMap::new();
        let mut images: BTreeMap<Var, GradedPoly> = BTreeMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = GradedPoly::constant(target, c.clone());
            for &(v, e) in m.exponents() {
                let img = images.entry(v).or_insert_with(|| image(v)).clone();
                let pw = cache.entry((v, e)).or_insert_with(|| img.pow(e)).clone();
                acc = acc.try_mul(&pw).expect("substitution images must live in the target table");
                if acc.is_zero() {
                    break;
                }
            }
            for (m2, c2) in acc.terms {
                out.add_term(m2, c2);
            }
        }
        out.declared = out.homogeneous_weight();
        out
    }

    /// Re-expresses a polynomial in a table that contains all of its
    /// generators (matched by name).
    pub fn embed(&self, target: &Arc<GenTable>) -> Result<Self, Error> {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = Vec::with_capacity(m.exponents().len());
            for &(v, e) in m.exponents() {
                let name = self.table.name(v);
                let w = target.lookup(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                exps.push((w, e));
            }
            out.add_term(Monomial::from_exponents(target, exps), c.clone());
        }
        out.declared = self.declared;
        Ok(out)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when no denominator is divisible by `p`, i.e. the polynomial
    /// has coefficients in the localization at `p`.
    pub fn is_p_integral(&self, p: u32) -> bool {
        let p = BigInt::from(p);
        self.terms.values().all(|c| !c.denom().is_multiple_of(&p))
    }

    /// Least common multiple of all denominators.
    pub fn denominator(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one())
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_terms(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer())))
            .collect()
    }

    pub fn max_abs_coeff(&self) -> Option<f64> {
        self.terms.values().filter_map(|c| c.abs().to_f64()).reduce(f64::max)
    }

    /// Renders with `*` between factors, e.g. `-4*x_1*x_2 + 3*x_3`.
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    /// Renders in TeX, e.g. `-4 x_1 x_2 + 3 x_3`.
    pub fn to_tex(&self) -> String {
        self.render(true)
    }

    fn render(&self, tex: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let sep = if tex { " " } else { "*" };
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if tex && !abs.is_integer() {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            } else {
                abs.to_string()
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else {
                if !abs.is_one() {
                    out.push_str(&coeff);
                    out.push_str(sep);
                }
                out.push_str(&m.render(&self.table, sep, tex));
            }
        }
        out
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr<&GradedPoly> for &GradedPoly {
            type Output = GradedPoly;
            fn $m(self, rhs: &GradedPoly) -> GradedPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$try(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly::neg(self)
    }
}

impl std::ops::Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly::neg(&self)
    }
}

/// Integer rational shorthand.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::gens::{plain_table, table_of, B, X};

    #[test]
    fn monomial_order_lists_lower_indices_first() {
        let t = plain_table(X, 4);
        let m = |e: &[(Var, u32)]| Monomial::from_exponents(&t, e.iter().copied());
        let mut basis = [m(&[(3, 1)]), m(&[(1, 2)]), m(&[(0, 1), (2, 1)]), m(&[(0, 4)]), m(&[(0, 2), (1, 1)])];
        basis.sort();
        let names: Vec<String> = basis.iter().map(|b| b.render(&t, "", false)).collect();
        assert_eq!(names, ["x_1^4", "x_1^2x_2", "x_1x_3", "x_2^2", "x_4"]);
    }

    #[test]
    fn trivial_arithmetic() {
        let t = table_of(&[(X, 2, &|n| n as u32), (B, 2, &|n| n as u32)]);
        let x1 = GradedPoly::gen(&t, "x_1");
        let b1 = GradedPoly::gen(&t, "b_1");
        let b2 = GradedPoly::gen(&t, "b_2");
        let two_b1 = b1.scale_int(2);
        assert_eq!(&two_b1 * &two_b1, (&b1 * &b1).scale_int(4));
        assert_eq!((&x1 + &two_b1) + two_b1.neg(), x1);
        // (2b1^2 - b2)(-b1) = -2b1^3 + b1 b2
        let lhs = (b1.pow(2).scale_int(2) - b2.clone()) * b1.neg();
        let rhs = b1.pow(3).scale_int(-2) + &b1 * &b2;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_add_rejects_weight_mismatch() {
        let t = plain_table(X, 2);
        let x1 = GradedPoly::gen(&t, "x_1");
        let x2 = GradedPoly::gen(&t, "x_2");
        assert!(matches!(x1.try_add(&x2), Err(Error::WeightMismatch(1, 2))));
        assert!(x1.try_add(&x1.pow(2)).is_err());
        assert!(x1.pow(2).try_add(&x2).is_ok());
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let t1 = plain_table(X, 2);
        let t2 = plain_table(B, 2);
        let a = GradedPoly::gen(&t1, "x_1");
        let b = GradedPoly::gen(&t2, "b_1");
        assert!(matches!(a.try_mul(&b), Err(Error::TableMismatch(..))));
    }

    #[test]
    fn derivative_and_substitution() {
        let t = plain_table(X, 2);
        let x1 = GradedPoly::gen(&t, "x_1");
        let x2 = GradedPoly::gen(&t, "x_2");
        let p = x1.pow(3) * x2.clone();
        assert_eq!(p.derivative(0), (x1.pow(2) * x2.clone()).scale_int(3));
        let swapped = p.substitute(&t, |v| if v == 0 { x1.scale_int(2) } else { x2.clone() });
        assert_eq!(swapped, p.scale_int(8));
    }

    #[test]
    fn rendering() {
        let t = plain_table(X, 2);
        let p = GradedPoly::gen(&t, "x_1").pow(2).scale_int(-4) + GradedPoly::gen(&t, "x_2").scale_int(3);
        assert_eq!(p.to_text(), "-4*x_1^2 + 3*x_2");
        assert_eq!(p.to_tex(), "-4 x_1^2 + 3 x_2");
    }
}
