use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::exactalg::{GenTable, GradedPoly, Monomial, Var, Q};

/// An element of a tensor power `B^{(x)k}` of a polynomial ring, stored as a
/// map from `k`-tuples of monomials to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    table: Arc<GenTable>,
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Q>,
}

impl Tensor {
    pub fn zero(table: &Arc<GenTable>, arity: usize) -> Self {
        Self { table: table.clone(), arity, terms: BTreeMap::new() }
    }

    /// `1 (x) ... (x) 1`.
    pub fn unit(table: &Arc<GenTable>, arity: usize) -> Self {
        let mut t = Self::zero(table, arity);
        t.terms.insert(vec![Monomial::one(); arity], Q::one());
        t
    }

    pub fn from_poly(p: &GradedPoly) -> Self {
        let mut t = Self::zero(p.table(), 1);
        for (m, c) in p.terms() {
            t.add_term(vec![m.clone()], c.clone());
        }
        t
    }

    /// `p` placed in factor `i` of an `arity`-fold tensor, ones elsewhere.
    pub fn in_factor(p: &GradedPoly, i: usize, arity: usize) -> Self {
        let mut t = Self::zero(p.table(), arity);
        for (m, c) in p.terms() {
            let mut key = vec![Monomial::one(); arity];
            key[i] = m.clone();
            t.add_term(key, c.clone());
        }
        t
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Vec<Monomial>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "tensor arities differ");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(&self.table, self.arity);
        if !s.is_zero() {
            for (k, c) in &self.terms {
                out.terms.insert(k.clone(), c * s);
            }
        }
        out
    }

    /// Factorwise product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "tensor arities differ");
        let mut out = Self::zero(&self.table, self.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = k1.iter().zip(k2).map(|(a, b)| a.mul(b)).collect();
                out.add_term(key, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::unit(&self.table, self.arity);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Replaces factor `i` by its image under the multiplicative map that
    /// sends each generator `v` to `f(v)`, an `r`-fold tensor.
    pub fn apply_at(&self, i: usize, r: usize, f: impl Fn(Var) -> Tensor) -> Tensor {
        let mut images: BTreeMap<Monomial, Tensor> = BTreeMap::new();
        let mut out = Self::zero(&self.table, self.arity - 1 + r);
        for (key, c) in &self.terms {
            let m = &key[i];
            let img = images
                .entry(m.clone())
                .or_insert_with(|| {
                    let mut acc = Tensor::unit(&self.table, r);
                    for &(v, e) in m.exponents() {
                        acc = acc.mul(&f(v).pow(e));
                    }
                    acc
                })
                .clone();
            for (ik, ic) in &img.terms {
                let mut nk = key[..i].to_vec();
                nk.extend(ik.iter().cloned());
                nk.extend(key[i + 1..].iter().cloned());
                out.add_term(nk, c * ic);
            }
        }
        out
    }

    /// Applies the augmentation (all generators to zero) to factor `i`.
    pub fn counit_at(&self, i: usize) -> Tensor {
        let mut out = Self::zero(&self.table, self.arity - 1);
        for (key, c) in &self.terms {
            if key[i].is_one() {
                let mut nk = key.clone();
                nk.remove(i);
                out.add_term(nk, c.clone());
            }
        }
        out
    }

    /// Applies a ring endomorphism, given on generators, to factor `i`.
    pub fn map_factor(&self, i: usize, f: impl Fn(Var) -> GradedPoly) -> Tensor {
        self.apply_at(i, 1, |v| Tensor::from_poly(&f(v)))
    }

    /// Multiplies all factors together.
    pub fn fold(&self) -> GradedPoly {
        let terms = self.terms.iter().map(|(k, c)| {
            let m = k.iter().fold(Monomial::one(), |acc, m| acc.mul(m));
            (m, c.clone())
        });
        GradedPoly::from_terms(&self.table, terms)
    }

    /// Renders a two-fold tensor grouped by the right factor, e.g.
    /// `b_3 (x) 1 + (b_1^2 + 2*b_2) (x) b_1 + 3*b_1 (x) b_2 + 1 (x) b_3`.
    pub fn render_grouped(&self, tex: bool) -> String {
        assert_eq!(self.arity, 2, "grouped rendering needs a two-fold tensor");
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            groups.entry(k[1].clone()).or_default().push((k[0].clone(), c.clone()));
        }
        let otimes = if tex { " \\otimes " } else { " (x) " };
        let sep = if tex { " " } else { "*" };
        let mono = |m: &Monomial| if m.is_one() { "1".to_string() } else { m.render(&self.table, sep, tex) };
        let mut out = String::new();
        // constant right factor first, then increasing
        for (i, (right, lefts)) in groups.iter().enumerate() {
            let left = GradedPoly::from_terms(&self.table, lefts.iter().cloned());
            let (sign, body) = if lefts.len() == 1 {
                let (m, c) = &lefts[0];
                let coeff = c.abs();
                let body = if coeff.is_one() {
                    mono(m)
                } else if m.is_one() {
                    coeff.to_string()
                } else {
                    format!("{coeff}{sep}{}", mono(m))
                };
                (c.is_negative(), body)
            } else {
                let s = if tex { left.to_tex() } else { left.to_text() };
                (false, format!("({s})"))
            };
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            let _ = write!(out, "{body}{otimes}{}", mono(right));
        }
        out
    }
}
