use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{
    hermite_normal_form, parse_poly, plain_table, rational_rank, solve_rational_linear, Error, GenTable, Generator,
    GradedPoly, IntMatrix, Monomial, Q, M, X,
};
use crate::series::{fgl_from_log, universal_log, FGLaw};

/// Where a Lazard generator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The classical choice `a_11, a_12, a_22 - a_13, a_14`.
    Standard,
    User,
    /// A Bezout combination of the `a_{i, n+1-i}`.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    /// Classical generators through weight 4, automatic above.
    Standard,
    /// Automatic choice in every weight.
    Auto,
    /// Expressions in the `a_{i,j}` for the first few weights, automatic
    /// above.
    User(Vec<String>),
}

/// Integral polynomial generators `x_n` of the Lazard ring, with their
/// expansions in the logarithm coefficients `m_n` and back.
#[derive(Clone, Debug)]
pub struct LazardBasis {
    max_weight: usize,
    m_table: Arc<GenTable>,
    x_table: Arc<GenTable>,
    a_table: Arc<GenTable>,
    law: FGLaw,
    x_in_a: Vec<GradedPoly>,
    x_in_m: Vec<GradedPoly>,
    m_in_x: Vec<GradedPoly>,
    provenance: Vec<Provenance>,
}

/// `p` if `n + 1` is a power of the prime `p`, otherwise 1.
pub fn lazard_divisor(n: usize) -> u64 {
    let k = n as u64 + 1;
    let mut p = 2;
    while p * p <= k && !k.is_multiple_of(p) {
        p += 1;
    }
    if !k.is_multiple_of(p) {
        p = k;
    }
    let mut r = k;
    while r.is_multiple_of(p) {
        r /= p;
    }
    if r == 1 {
        p
    } else {
        1
    }
}

/// Table of the coefficients `a_{i,j}`, `i <= j`, `i + j - 1 <= max_weight`.
pub fn a_table(max_weight: usize) -> Arc<GenTable> {
    let mut gens = Vec::new();
    for w in 1..=max_weight {
        for i in 1..=w.div_ceil(2) {
            let j = w + 1 - i;
            gens.push(Generator::new(format!("a_{{{i},{j}}}"), format!("a_{{{i}{j}}}"), w as u32));
        }
    }
    GenTable::new(gens)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// An integer combination `sum_i lambda_i a_{i, n+1-i}` whose indecomposable
/// part is `+-d_n m_n`, from the Hermite form of the binomial row
/// `C(n+1, i)`, rendered as an expression in the `a_{i,j}`.
pub fn auto_generator_expr(n: usize) -> String {
    let cols: Vec<usize> = (1..=n.div_ceil(2)).collect();
    let row: Vec<BigInt> = cols.iter().map(|&i| binomial(n + 1, i)).collect();
    let h = hermite_normal_form(&IntMatrix::from_rows(&[row]));
    let lambda = h.v.column(0);
    let mut parts = Vec::new();
    for (&i, l) in cols.iter().zip(&lambda) {
        if l.is_zero() {
            continue;
        }
        let sign = if l.is_negative() { "-" } else { "+" };
        let abs = l.abs();
        let c = if abs.is_one() { String::new() } else { format!("{abs} ") };
        parts.push(format!("{sign} {c}a_{{{i},{}}}", n + 1 - i));
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}

const STANDARD_GENERATORS: [&str; 4] = ["a_{1,1}", "a_{1,2}", "a_{2,2} - a_{1,3}", "a_{1,4}"];

impl LazardBasis {
    /// Builds `x_1 .. x_max_weight`. Each `x_n` is checked to have
    /// indecomposable coefficient `+-d_n` on `m_n`, which makes it a
    /// polynomial generator.
    pub fn new(max_weight: usize, source: GeneratorSource) -> Result<Self, Error> {
        let m_table = plain_table(M, max_weight);
        let x_table = plain_table(X, max_weight);
        let a_tab = a_table(max_weight);
        let law = fgl_from_log(&universal_log(&m_table, M, max_weight + 1))?;
        let a_image = |v: crate::exactalg::Var| {
            let name = a_tab.name(v);
            let inner = &name[3..name.len() - 1];
            let (i, j) = inner.split_once(',').expect("a_{i,j}");
            law.a(i.parse().unwrap(), j.parse().unwrap())
        };
        let mut x_in_a = Vec::new();
        let mut x_in_m = Vec::new();
        let mut provenance = Vec::new();
        for n in 1..=max_weight {
            let (expr, prov) = match &source {
                GeneratorSource::Standard if n <= 4 => (STANDARD_GENERATORS[n - 1].to_string(), Provenance::Standard),
                GeneratorSource::User(list) if n <= list.len() => (list[n - 1].clone(), Provenance::User),
                _ => (auto_generator_expr(n), Provenance::Auto),
            };
            let xa = parse_poly(&a_tab, &expr)?;
            if xa.homogeneous_weight() != Some(n as u32) || !xa.is_integral() {
                return Err(Error::Identity(format!("x_{n} = {expr} is not an integral element of weight {n}")));
            }
            let xm = xa.substitute(&m_table, a_image);
            let lead = xm.coeff(&Monomial::var(&m_table, (n - 1) as u16, 1));
            let d = Q::from_integer(BigInt::from(lazard_divisor(n)));
            if lead.abs() != d {
                return Err(Error::Identity(format!(
                    "x_{n} = {expr} has m_{n}-coefficient {lead}, not a generator (need +-{d})"
                )));
            }
            x_in_a.push(xa);
            x_in_m.push(xm);
            provenance.push(prov);
        }
        let mut basis = Self {
            max_weight,
            m_table,
            x_table,
            a_table: a_tab,
            law,
            x_in_a,
            x_in_m,
            m_in_x: Vec::new(),
            provenance,
        };
        for n in 1..=max_weight {
            let xm = &basis.x_in_m[n - 1];
            let mv = Monomial::var(&basis.m_table, (n - 1) as u16, 1);
            let lead = xm.coeff(&mv);
            let rest = xm.filter_terms(|m| *m != mv);
            let rest_x = rest.substitute(&basis.x_table, |v| basis.m_in_x[v as usize].clone());
            let xn = GradedPoly::var(&basis.x_table, (n - 1) as u16);
            let mn = (&xn - &rest_x).scale(&(Q::one() / lead));
            basis.m_in_x.push(mn);
        }
        Ok(basis)
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn m_table(&self) -> &Arc<GenTable> {
        &self.m_table
    }

    pub fn x_table(&self) -> &Arc<GenTable> {
        &self.x_table
    }

    pub fn a_table(&self) -> &Arc<GenTable> {
        &self.a_table
    }

    /// The universal law in the `m` basis, through total degree
    /// `max_weight + 1`.
    pub fn law(&self) -> &FGLaw {
        &self.law
    }

    pub fn x_in_a(&self, n: usize) -> &GradedPoly {
        &self.x_in_a[n - 1]
    }

    pub fn x_in_m(&self, n: usize) -> &GradedPoly {
        &self.x_in_m[n - 1]
    }

    pub fn m_in_x(&self, n: usize) -> &GradedPoly {
        &self.m_in_x[n - 1]
    }

    pub fn provenance(&self, n: usize) -> Provenance {
        self.provenance[n - 1]
    }

    /// `m`-expansion of an `x`-polynomial.
    pub fn rewrite_x_to_m(&self, p: &GradedPoly) -> GradedPoly {
        p.substitute(&self.m_table, |v| self.x_in_m[v as usize].clone())
    }

    fn weight_guard(&self, p: &GradedPoly) -> Result<(), Error> {
        if let Some(w) = p.terms().map(|(m, _)| m.weight()).max() {
            if w as usize > self.max_weight {
                return Err(Error::DegreeGuard { degree: w, limit: self.max_weight as u32 });
            }
        }
        Ok(())
    }

    /// Rewrites a polynomial in the `m_n` into the `x_n`; the flag is true
    /// when the result has integer coefficients, i.e. lies in `L`.
    pub fn rewrite_m_to_x(&self, p: &GradedPoly) -> Result<(GradedPoly, bool), Error> {
        self.weight_guard(p)?;
        let out = p.substitute(&self.x_table, |v| self.m_in_x[v as usize].clone());
        let integral = out.is_integral();
        Ok((out, integral))
    }

    /// The same rewrite by solving a linear system against the
    /// `m`-expansions of all `x`-monomials of the given weight.
    pub fn rewrite_m_to_x_linear(&self, p: &GradedPoly) -> Result<GradedPoly, Error> {
        self.weight_guard(p)?;
        let Some(w) = p.homogeneous_weight() else {
            return if p.is_zero() { Ok(GradedPoly::zero(&self.x_table)) } else { Err(Error::NotHomogeneous(p.to_string())) };
        };
        let xs = monomials_of_weight(&self.x_table, w);
        let ms = monomials_of_weight(&self.m_table, w);
        let images: Vec<GradedPoly> =
            xs.iter().map(|m| self.rewrite_x_to_m(&GradedPoly::term(&self.x_table, m.clone(), Q::one()))).collect();
        let a: Vec<Vec<Q>> = ms.iter().map(|mm| images.iter().map(|im| im.coeff(mm)).collect()).collect();
        let rhs: Vec<Q> = ms.iter().map(|mm| p.coeff(mm)).collect();
        debug_assert_eq!(rational_rank(&a), xs.len());
        let sol = solve_rational_linear(&a, &rhs)?;
        Ok(GradedPoly::from_terms(&self.x_table, xs.into_iter().zip(sol)))
    }
}

/// All monomials of the given weight over a table, in canonical order.
pub fn monomials_of_weight(table: &Arc<GenTable>, w: u32) -> Vec<Monomial> {
    fn go(table: &GenTable, start: usize, left: u32, acc: &mut Vec<(u16, u32)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_exponents(table, acc.iter().copied()));
            return;
        }
        for v in start..table.len() {
            let wt = table.weight(v as u16);
            if wt > left {
                continue;
            }
            let mut e = 1;
            while e * wt <= left {
                acc.push((v as u16, e));
                go(table, v + 1, left - e * wt, acc, out);
                acc.pop();
                e += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(table, 0, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}
