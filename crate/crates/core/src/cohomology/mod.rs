//! Cohomology of `(pi_* THH, sigma)`: the complex splits by internal degree
//! `d` and exterior count `q`, with `sigma` mapping `C(d, q)` to
//! `C(d+1, q+1)`.

mod bar;
mod de_rham;
mod rational;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use bar::{bar_tor_check, BarTorReport, BarTorRow, Coalgebra};
pub use de_rham::{de_rham_cohomology, de_rham_comparison, de_rham_complex, single_generator_table, DeRhamReport, InducedMap};
pub use rational::{rational_collapse_check, RationalReport};

use crate::algebroid::CoordFlavor;
use crate::exactalg::{subquotient_group, Error, FinAbGroup, GradedPoly, IntMatrix, Monomial, Q};
use crate::fgl::{monomials_of_weight, GeneratorSource, LazardBasis, TypicalBasis};
use crate::thh::{ExtElement, SigmaTable};

/// A basis element `m * E_S` of `pi_* THH`.
pub type BasisElement = (Monomial, Vec<u16>);

/// Which signs to use for the differential: the right rule (as in the
/// `sigma` tables) or the left one `sigma'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Right,
    Left,
}

/// The graded ring with its differential, truncated to degrees where every
/// needed generator is present.
#[derive(Clone, Debug)]
pub struct ThhComplex {
    sigma: SigmaTable,
    max_degree: u32,
    rule: Rule,
    source: Source,
}

#[derive(Clone, Debug)]
pub(crate) enum Source {
    Mu(Box<LazardBasis>),
    Bp(Box<TypicalBasis>),
    Plain,
}

/// Primes for which BP tables run without `allow_large_prime`.
pub const DESK_PRIMES: [u32; 3] = [2, 3, 5];

/// Top of the degree range covered by the closed-form BP table.
pub fn bp_range(p: u32) -> u32 {
    2 * p * p + 4 * p - 6
}

impl ThhComplex {
    /// `THH(MU)` with generators through weight `n`; degrees up to `2n`.
    pub fn mu(flavor: CoordFlavor, n: usize) -> Result<Self, Error> {
        let basis = LazardBasis::new(n.max(1), GeneratorSource::Standard)?;
        let sigma = match flavor {
            CoordFlavor::MovingC => SigmaTable::mu_moving(&basis, n.max(1))?,
            CoordFlavor::AbsoluteB => SigmaTable::mu_split(&basis, n.max(1))?,
            CoordFlavor::TypicalT(_) => return Err(Error::Unsupported("use ThhComplex::bp".into())),
        };
        Ok(Self { sigma, max_degree: 2 * n as u32, rule: Rule::Right, source: Source::Mu(Box::new(basis)) })
    }

    /// `THH(BP)` at `p` through internal degree `max_degree`.
    pub fn bp(p: u32, max_degree: u32) -> Result<Self, Error> {
        // every generator of degree <= max_degree + 1
        let mut n = 1;
        while 2 * p.pow(n as u32 + 1) - 2 <= max_degree + 1 {
            n += 1;
        }
        let basis = TypicalBasis::hazewinkel(p, n)?;
        let sigma = SigmaTable::bp(&basis)?;
        Ok(Self { sigma, max_degree, rule: Rule::Right, source: Source::Bp(Box::new(basis)) })
    }

    /// Any table; the caller vouches that all generators of degree at most
    /// `max_degree + 1` are present.
    pub fn from_sigma(sigma: SigmaTable, max_degree: u32, rule: Rule) -> Self {
        Self { sigma, max_degree, rule, source: Source::Plain }
    }

    pub fn sigma(&self) -> &SigmaTable {
        &self.sigma
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub(crate) fn source(&self) -> &Source {
        &self.source
    }

    pub fn check_degree(&self, d: u32) -> Result<(), Error> {
        if d > self.max_degree {
            return Err(Error::DegreeGuard { degree: d, limit: self.max_degree });
        }
        Ok(())
    }

    /// The basis of `C(d, q)`: exterior words in lexicographic order, each
    /// times the base monomials of the right weight in canonical order.
    /// Valid one degree past `max_degree`, as needed for outgoing maps.
    pub fn basis(&self, d: u32, q: usize) -> Vec<BasisElement> {
        let ext = self.sigma.alphabet();
        let base = self.sigma.base_table();
        let mut out = Vec::new();
        for s in subsets(ext.len(), q) {
            let sd = ext.set_degree(&s);
            if sd > d || !(d - sd).is_multiple_of(2) {
                continue;
            }
            for m in monomials_of_weight(base, (d - sd) / 2) {
                out.push((m, s.clone()));
            }
        }
        out
    }

    /// Exterior counts that can occur in degree `d`.
    pub fn q_range(&self, d: u32) -> std::ops::RangeInclusive<usize> {
        let ext = self.sigma.alphabet();
        let mut q = 0;
        let mut total = 0;
        for i in 0..ext.len() as u16 {
            total += ext.degree(i);
            if total > d {
                break;
            }
            q += 1;
        }
        0..=q
    }

    pub fn element(&self, e: &BasisElement) -> ExtElement {
        let c = GradedPoly::term(self.sigma.base_table(), e.0.clone(), Q::one());
        ExtElement::term(self.sigma.alphabet(), e.1.clone(), c)
    }

    pub fn label(&self, e: &BasisElement) -> String {
        self.element(e).to_text()
    }

    fn differential_of(&self, e: &BasisElement) -> ExtElement {
        let s = self.sigma.sigma_basis(&e.0, &e.1);
        match self.rule {
            Rule::Right => s,
            Rule::Left if e.1.len() % 2 == 1 => s.neg(),
            Rule::Left => s,
        }
    }

    /// Coordinates of an element of `C(d, q)` in `basis(d, q)`.
    pub fn coordinates(&self, x: &ExtElement, basis: &[BasisElement]) -> Result<Vec<BigInt>, Error> {
        let index: HashMap<(&Monomial, &[u16]), usize> =
            basis.iter().enumerate().map(|(i, (m, s))| ((m, s.as_slice()), i)).collect();
        let mut v = vec![BigInt::zero(); basis.len()];
        for (s, c) in x.terms() {
            for (m, q) in c.terms() {
                let Some(&i) = index.get(&(m, s.as_slice())) else {
                    return Err(Error::Shape(format!("{x} has a term outside the basis")));
                };
                if !q.is_integer() {
                    return Err(Error::NonIntegral(format!("coefficient {q} in {x}")));
                }
                v[i] = q.to_integer();
            }
        }
        Ok(v)
    }

    /// The labelled matrix of the differential `C(d, q) -> C(d+1, q+1)`;
    /// rows are targets, columns sources.
    pub fn differential(&self, d: u32, q: usize) -> Result<IntMatrix, Error> {
        let src = self.basis(d, q);
        let tgt = self.basis(d + 1, q + 1);
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for (j, e) in src.iter().enumerate() {
            let img = self.differential_of(e);
            for (i, c) in self.coordinates(&img, &tgt)?.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        let rows = tgt.iter().map(|e| self.label(e)).collect();
        let cols = src.iter().map(|e| self.label(e)).collect();
        m.with_labels(rows, cols)
    }

    /// One internal degree: bases and outgoing differentials for every `q`.
    pub fn assemble(&self, d: u32) -> Result<DegreeComplex, Error> {
        self.check_degree(d)?;
        let mut blocks = Vec::new();
        for q in self.q_range(d) {
            let basis = self.basis(d, q);
            if basis.is_empty() {
                continue;
            }
            let labels = basis.iter().map(|e| self.label(e)).collect();
            let outgoing = self.differential(d, q)?;
            blocks.push(Block { q, basis, labels, outgoing });
        }
        Ok(DegreeComplex { degree: d, flavor: self.sigma.flavor(), blocks })
    }

    /// `H(d, q)` as a subquotient of `C(d, q)`.
    pub fn cohomology_at(&self, d: u32, q: usize) -> Result<Part, Error> {
        self.check_degree(d)?;
        let basis = self.basis(d, q);
        let d_out = self.differential(d, q)?;
        let d_in = if d == 0 || q == 0 {
            let labels = basis.iter().map(|e| self.label(e)).collect();
            IntMatrix::zeros(basis.len(), 0).with_labels(labels, Vec::new())?
        } else {
            self.differential(d - 1, q - 1)?
        };
        let sub = subquotient_group(&d_in, &d_out)?;
        let classes = sub
            .generators
            .iter()
            .zip(&sub.orders)
            .map(|(g, o)| Class { order: o.clone(), element: self.vector_element(g, &basis) })
            .collect();
        Ok(Part { q, dimension: basis.len(), group: sub.group.clone(), classes, sub: Arc::new(sub), basis })
    }

    /// `H(d) = sum_q H(d, q)`.
    pub fn cohomology(&self, d: u32) -> Result<DegreeCohomology, Error> {
        let mut parts = Vec::new();
        let mut group = FinAbGroup::zero();
        for q in self.q_range(d) {
            if self.basis(d, q).is_empty() {
                continue;
            }
            let part = self.cohomology_at(d, q)?;
            group = group.direct_sum(&part.group);
            parts.push(part);
        }
        Ok(DegreeCohomology { degree: d, group, parts, localized_at: None })
    }

    /// All degrees `0..=d_max`, in parallel; see [`thread_pool`].
    pub fn cohomology_table(&self, d_max: u32) -> Result<Vec<DegreeCohomology>, Error> {
        self.check_degree(d_max)?;
        let pool = thread_pool()?;
        pool.install(|| (0..=d_max).into_par_iter().map(|d| self.cohomology(d)).collect())
    }

    fn vector_element(&self, v: &[BigInt], basis: &[BasisElement]) -> ExtElement {
        let mut out = self.sigma.zero();
        for (c, e) in v.iter().zip(basis) {
            if !c.is_zero() {
                out = &out + &self.element(e).scale(&Q::from_integer(c.clone()));
            }
        }
        out
    }
}

/// All `q`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, q: usize) -> Vec<Vec<u16>> {
    fn go(start: usize, n: usize, q: usize, acc: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if acc.len() == q {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            acc.push(i as u16);
            go(i + 1, n, q, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, q, &mut Vec::new(), &mut out);
    out
}

/// A rayon pool sized by `FGLTHH_THREADS` when set.
pub fn thread_pool() -> Result<rayon::ThreadPool, Error> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("FGLTHH_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => b = b.num_threads(n),
            _ => return Err(Error::Parse(format!("FGLTHH_THREADS must be a positive integer, got {v:?}"))),
        }
    }
    b.build().map_err(|e| Error::Unsupported(e.to_string()))
}

/// One internal degree of the complex.
#[derive(Clone, Debug)]
pub struct DegreeComplex {
    pub degree: u32,
    pub flavor: Option<CoordFlavor>,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub q: usize,
    pub basis: Vec<BasisElement>,
    pub labels: Vec<String>,
    /// To `C(d+1, q+1)`.
    pub outgoing: IntMatrix,
}

/// A cyclic summand with a lift of its generator.
#[derive(Clone, Debug)]
pub struct Class {
    /// Zero for a free summand.
    pub order: BigInt,
    pub element: ExtElement,
}

/// `H(d, q)`.
#[derive(Clone, Debug)]
pub struct Part {
    pub q: usize,
    pub dimension: usize,
    pub group: FinAbGroup,
    pub classes: Vec<Class>,
    sub: Arc<crate::exactalg::Subquotient>,
    basis: Vec<BasisElement>,
}

#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: u32,
    pub group: FinAbGroup,
    pub parts: Vec<Part>,
    pub localized_at: Option<u32>,
}

impl Part {
    fn vector(&self, x: &ExtElement, complex: &ThhComplex) -> Result<Vec<BigInt>, Error> {
        complex.coordinates(x, &self.basis)
    }

    /// Order of the class of a cocycle (zero if infinite).
    pub fn order_of(&self, x: &ExtElement, complex: &ThhComplex) -> Result<BigInt, Error> {
        self.sub.order_of(&self.vector(x, complex)?)
    }

    /// Whether a list of cocycles with claimed orders is an internal direct
    /// sum decomposition.
    pub fn is_decomposition(&self, xs: &[ExtElement], orders: &[BigInt], complex: &ThhComplex) -> Result<bool, Error> {
        let vs = xs.iter().map(|x| self.vector(x, complex)).collect::<Result<Vec<_>, _>>()?;
        self.sub.is_decomposition(&vs, orders)
    }

    /// Generators of the prime-power summands, each a multiple of one of
    /// the divisor-chain generators.
    pub fn primary_classes(&self) -> Vec<Class> {
        let mut out = Vec::new();
        for c in &self.classes {
            if c.order.is_zero() {
                out.push(c.clone());
                continue;
            }
            for (p, pe) in prime_powers(&c.order) {
                let _ = p;
                let cof = &c.order / &pe;
                out.push(Class { order: pe, element: c.element.scale(&Q::from_integer(cof)) });
            }
        }
        out
    }

    fn localize(&self, p: u32, complex: &ThhComplex) -> Part {
        let sub = self.sub.localize(p);
        let classes = sub
            .generators
            .iter()
            .zip(&sub.orders)
            .map(|(g, o)| Class { order: o.clone(), element: complex.vector_element(&strip_units(g, p), &self.basis) })
            .collect();
        Part {
            q: self.q,
            dimension: self.dimension,
            group: sub.group.clone(),
            classes,
            sub: Arc::new(sub),
            basis: self.basis.clone(),
        }
    }
}

impl DegreeCohomology {
    /// Decomposition check across all `q`: elements are sorted into the
    /// parts by exterior count, and a part receiving nothing must vanish.
    pub fn is_decomposition(&self, xs: &[ExtElement], orders: &[BigInt], complex: &ThhComplex) -> Result<bool, Error> {
        for part in &self.parts {
            let (mut ys, mut os) = (Vec::new(), Vec::new());
            for (x, o) in xs.iter().zip(orders) {
                if x.exterior_count() == Some(part.q) {
                    ys.push(x.clone());
                    os.push(o.clone());
                }
            }
            if !part.is_decomposition(&ys, &os, complex)? {
                return Ok(false);
            }
        }
        let placed = xs.iter().filter(|x| self.parts.iter().any(|p| x.exterior_count() == Some(p.q))).count();
        Ok(placed == xs.len())
    }

    /// Order of the class of a cocycle in the part matching its exterior
    /// count.
    pub fn order_of(&self, x: &ExtElement, complex: &ThhComplex) -> Result<BigInt, Error> {
        let q = x.exterior_count().ok_or_else(|| Error::Shape(format!("{x} mixes exterior counts")))?;
        match self.parts.iter().find(|p| p.q == q) {
            Some(p) => p.order_of(x, complex),
            None => Err(Error::Shape(format!("no part with exterior count {q} in degree {}", self.degree))),
        }
    }

    pub fn classes(&self) -> impl Iterator<Item = &Class> {
        self.parts.iter().flat_map(|p| p.classes.iter())
    }

    pub fn primary_classes(&self) -> Vec<Class> {
        self.parts.iter().flat_map(|p| p.primary_classes()).collect()
    }

    /// The localization at `p`, with generators multiplied into their
    /// `p`-primary parts.
    pub fn localize(&self, p: u32, complex: &ThhComplex) -> DegreeCohomology {
        let parts: Vec<Part> = self.parts.iter().map(|part| part.localize(p, complex)).collect();
        let group = parts.iter().fold(FinAbGroup::zero(), |g, part| g.direct_sum(&part.group));
        DegreeCohomology { degree: self.degree, group, parts, localized_at: Some(p) }
    }
}

/// Divides out the prime-to-`p` part of the content, a unit after
/// localizing.
fn strip_units(g: &[BigInt], p: u32) -> Vec<BigInt> {
    let mut u = g.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if u.is_zero() {
        return g.to_vec();
    }
    let p = BigInt::from(p);
    while u.is_multiple_of(&p) {
        u /= &p;
    }
    g.iter().map(|x| x / &u).collect()
}

fn prime_powers(n: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut pe = BigInt::one();
            while n.is_multiple_of(&p) {
                n /= &p;
                pe *= &p;
            }
            out.push((p.clone(), pe));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n.clone(), n));
    }
    out
}

/// `H(pi_* THH(MU), sigma)` in degrees `0..=d_max`.
pub fn cohomology_groups(flavor: CoordFlavor, d_max: u32) -> Result<(ThhComplex, Vec<DegreeCohomology>), Error> {
    let n = (d_max as usize).div_ceil(2).max(1);
    let complex = match flavor {
        CoordFlavor::TypicalT(p) => ThhComplex::bp(p, d_max)?,
        _ => ThhComplex::mu(flavor, n)?,
    };
    let table = complex.cohomology_table(d_max)?;
    let table = match flavor {
        CoordFlavor::TypicalT(p) => table.iter().map(|h| h.localize(p, &complex)).collect(),
        _ => table,
    };
    Ok((complex, table))
}

/// `H(pi_* THH(BP), sigma)` over `Z_(p)` in degrees `0..=d_max`, which may
/// not exceed `2p^2 + 4p - 6`.
pub fn bp_cohomology_table(p: u32, d_max: u32, allow_large_prime: bool) -> Result<(ThhComplex, Vec<DegreeCohomology>), Error> {
    if !crate::fgl::is_prime(p) {
        return Err(Error::Unsupported(format!("{p} is not prime")));
    }
    if !allow_large_prime && !DESK_PRIMES.contains(&p) {
        return Err(Error::Unsupported(format!("prime {p} outside {DESK_PRIMES:?}")));
    }
    if d_max > bp_range(p) {
        return Err(Error::DegreeGuard { degree: d_max, limit: bp_range(p) });
    }
    cohomology_groups(CoordFlavor::TypicalT(p), d_max)
}

#[cfg(test)]
mod tests;
