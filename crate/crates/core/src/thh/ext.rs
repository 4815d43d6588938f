use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::exactalg::{Error, GenTable, GradedPoly, Monomial, Q};

/// The exterior generators `name_1, name_2, ...` and their odd degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtAlphabet {
    pub name: String,
    pub tex: String,
    degrees: Vec<u32>,
}

impl ExtAlphabet {
    pub fn new(name: &str, tex: &str, degrees: Vec<u32>) -> Arc<Self> {
        assert!(degrees.iter().all(|d| d % 2 == 1), "exterior generators sit in odd degrees");
        Arc::new(Self { name: name.into(), tex: tex.into(), degrees })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degree of generator `i` (zero-based).
    pub fn degree(&self, i: u16) -> u32 {
        self.degrees[i as usize]
    }

    pub fn set_degree(&self, s: &[u16]) -> u32 {
        s.iter().map(|&i| self.degree(i)).sum()
    }

    pub fn symbol(&self, i: u16, tex: bool) -> String {
        let n = i as usize + 1;
        match (tex, n < 10) {
            (true, true) => format!("{}_{n}", self.tex),
            (true, false) => format!("{}_{{{n}}}", self.tex),
            (false, _) => format!("{}_{n}", self.name),
        }
    }

    pub fn render_set(&self, s: &[u16], tex: bool) -> String {
        let parts: Vec<String> = s.iter().map(|&i| self.symbol(i, tex)).collect();
        parts.join(if tex { " " } else { "*" })
    }
}

/// An element of `R (x) E(generators)` for a polynomial ring `R` in even
/// degrees: a map from strictly increasing index sets to coefficients in
/// `R`, the coefficient written on the left.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement {
    base: Arc<GenTable>,
    ext: Arc<ExtAlphabet>,
    terms: BTreeMap<Vec<u16>, GradedPoly>,
}

/// Sign of the shuffle taking `a ++ b` to sorted order, or `None` when the
/// sets meet.
pub fn merge_sign(a: &[u16], b: &[u16]) -> Option<(i64, Vec<u16>)> {
    let mut inversions = 0usize;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            inversions += a.len() - i;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, out))
}

impl ExtElement {
    pub fn zero(base: &Arc<GenTable>, ext: &Arc<ExtAlphabet>) -> Self {
        Self { base: base.clone(), ext: ext.clone(), terms: BTreeMap::new() }
    }

    pub fn from_base(p: &GradedPoly, ext: &Arc<ExtAlphabet>) -> Self {
        let mut out = Self::zero(p.table(), ext);
        out.add_term(Vec::new(), p.clone());
        out
    }

    pub fn one(base: &Arc<GenTable>, ext: &Arc<ExtAlphabet>) -> Self {
        Self::from_base(&GradedPoly::one(base), ext)
    }

    /// The generator `name_n`, one-based.
    pub fn generator(base: &Arc<GenTable>, ext: &Arc<ExtAlphabet>, n: usize) -> Self {
        Self::term(ext, vec![(n - 1) as u16], GradedPoly::one(base))
    }

    /// `coeff * name_{s_1} ... name_{s_k}` for an arbitrary index list; it is
    /// sorted with the sign of the permutation, and repeated indices give 0.
    pub fn term(ext: &Arc<ExtAlphabet>, indices: Vec<u16>, coeff: GradedPoly) -> Self {
        let mut out = Self::zero(coeff.table(), ext);
        let mut acc: Vec<u16> = Vec::new();
        let mut sign = 1;
        for i in indices {
            match merge_sign(&acc, &[i]) {
                None => return out,
                Some((s, m)) => {
                    sign *= s;
                    acc = m;
                }
            }
        }
        out.add_term(acc, coeff.scale_int(sign));
        out
    }

    pub fn base(&self) -> &Arc<GenTable> {
        &self.base
    }

    pub fn alphabet(&self) -> &Arc<ExtAlphabet> {
        &self.ext
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &GradedPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &[u16]) -> GradedPoly {
        self.terms.get(s).cloned().unwrap_or_else(|| GradedPoly::zero(&self.base))
    }

    pub(crate) fn add_term(&mut self, s: Vec<u16>, c: GradedPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.ext != other.ext || *self.base != *other.base {
            return Err(Error::TableMismatch(self.ext.name.clone(), other.ext.name.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = Self::zero(&self.base, &self.ext);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if let Some((sign, u)) = merge_sign(s, t) {
                    out.add_term(u, (a * b).scale_int(sign));
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, q: &Q) -> Self {
        let mut out = Self::zero(&self.base, &self.ext);
        if !q.is_zero() {
            for (s, c) in &self.terms {
                out.terms.insert(s.clone(), c.scale(q));
            }
        }
        out
    }

    /// Multiplies every coefficient by a base polynomial.
    pub fn mul_base(&self, p: &GradedPoly) -> Self {
        let mut out = Self::zero(&self.base, &self.ext);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * p);
        }
        out
    }

    /// Applies a map to every coefficient, keeping the exterior part.
    pub fn map_coeffs(&self, base: &Arc<GenTable>, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        let mut out = Self::zero(base, &self.ext);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), f(c));
        }
        out
    }

    /// Degree of a term: twice the base weight plus the exterior degrees.
    pub fn term_degree(&self, s: &[u16], m: &Monomial) -> u32 {
        2 * m.weight() + self.ext.set_degree(s)
    }

    /// The common degree of all terms, if there is one.
    pub fn degree(&self) -> Option<u32> {
        let mut d = None;
        for (s, c) in &self.terms {
            for (m, _) in c.terms() {
                let e = self.term_degree(s, m);
                match d {
                    None => d = Some(e),
                    Some(x) if x != e => return None,
                    _ => {}
                }
            }
        }
        d
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(GradedPoly::is_integral)
    }

    /// Number of exterior factors, if all terms agree.
    pub fn exterior_count(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_tex(&self) -> String {
        self.render(true)
    }

    fn render(&self, tex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let sep = if tex { " " } else { "*" };
        let mut out = String::new();
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let ext = self.ext.render_set(s, tex);
            let single = c.len() == 1;
            let all_neg = c.terms().all(|(_, q)| q.is_negative());
            let (neg, body) = if single {
                let (m, q) = c.terms().next().unwrap();
                let abs = GradedPoly::term(&self.base, m.clone(), q.abs());
                let txt = if tex { abs.to_tex() } else { abs.to_text() };
                let body = if s.is_empty() {
                    txt
                } else if abs.constant_term().is_one() {
                    ext.clone()
                } else if m.is_one() && tex {
                    format!("{txt}{ext}")
                } else {
                    format!("{txt}{sep}{ext}")
                };
                (q.is_negative(), body)
            } else {
                let p = if all_neg { c.neg() } else { c.clone() };
                let txt = if tex { p.to_tex() } else { p.to_text() };
                let body = if s.is_empty() { txt } else { format!("({txt}){sep}{ext}") };
                (all_neg, body)
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtElement({self})")
    }
}

macro_rules! ext_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&ExtElement> for &ExtElement {
            type Output = ExtElement;
            fn $m(self, rhs: &ExtElement) -> ExtElement {
                let f: fn(&ExtElement, &ExtElement) -> Result<ExtElement, Error> = $body;
                f(self, rhs).expect("exterior elements over different tables")
            }
        }
    };
}

ext_binop!(Add, add, |a, b| a.try_add(b));
ext_binop!(Sub, sub, |a, b| a.try_add(&b.neg()));
ext_binop!(Mul, mul, |a, b| a.try_mul(b));
