//! The operator `sigma` on `pi_*(THH)` for `MU` and `BP`: an even
//! polynomial ring tensored with an exterior algebra, with `sigma` a
//! derivation of degree one.

mod ext;

use std::sync::Arc;

use serde::Serialize;

pub use ext::{merge_sign, ExtAlphabet, ExtElement};

use crate::algebroid::CoordFlavor;
use crate::exactalg::{plain_table, Error, GenTable, GradedPoly, Monomial, B, C, L, M, Q, T};
use crate::fgl::{typical_table, LazardBasis, TypicalBasis};
use crate::series::{comp_inverse, TruncatedSeries};

/// `sigma` on generators, extended to everything by the right Leibniz rule
/// `sigma(ab) = a sigma(b) + (-1)^{|b|} sigma(a) b`.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    flavor: Option<CoordFlavor>,
    base: Arc<GenTable>,
    ext: Arc<ExtAlphabet>,
    on_base: Vec<ExtElement>,
    on_ext: Vec<ExtElement>,
}

fn mu_alphabet(flavor: CoordFlavor, n: usize) -> Arc<ExtAlphabet> {
    let degrees = (1..=n).map(|k| 2 * k as u32 + 1).collect();
    match flavor {
        CoordFlavor::AbsoluteB => ExtAlphabet::new("e", "e", degrees),
        _ => ExtAlphabet::new("lambda'", "\\lambda'", degrees),
    }
}

fn check_lazard(basis: &LazardBasis, n: usize) -> Result<(), Error> {
    if n > basis.max_weight() {
        return Err(Error::Truncation(format!("sigma through x_{n} needs the basis through weight {n}")));
    }
    Ok(())
}

/// `d x_k / d m_v` over the `m` table.
fn jacobian_entry(basis: &LazardBasis, k: usize, v: usize) -> GradedPoly {
    basis.x_in_m(k).derivative((v - 1) as u16)
}

/// `lambda'_v` written in the split classes: `-sum_j (v-j+1) m_{v-j} e_j`,
/// coefficients rewritten into `x`. These are the linear parts of the
/// moving coordinates `c_v` in the absolute ones.
pub fn lambda_prime_in_e(basis: &LazardBasis, n: usize) -> Result<Vec<ExtElement>, Error> {
    check_lazard(basis, n)?;
    let x = basis.x_table();
    let ext = mu_alphabet(CoordFlavor::AbsoluteB, n);
    (1..=n).map(|v| lambda_prime_row(basis, x, &ext, v)).collect()
}

fn lambda_prime_row(basis: &LazardBasis, x: &Arc<GenTable>, ext: &Arc<ExtAlphabet>, v: usize) -> Result<ExtElement, Error> {
    let m = basis.m_table();
    let mut out = ExtElement::zero(x, ext);
    for j in 1..=v {
        let mv = if j == v { GradedPoly::one(m) } else { GradedPoly::var(m, (v - j - 1) as u16) };
        let coeff = integral_rewrite(basis, &mv.scale_int(-((v - j + 1) as i64)))?;
        out = &out + &ExtElement::generator(x, ext, j).mul_base(&coeff);
    }
    Ok(out)
}

fn integral_rewrite(basis: &LazardBasis, p: &GradedPoly) -> Result<GradedPoly, Error> {
    let (out, ok) = basis.rewrite_m_to_x(p)?;
    if !ok {
        return Err(Error::NonIntegral(format!("{p} is not in the Lazard ring: {out}")));
    }
    Ok(out)
}

impl SigmaTable {
    /// Moving coordinates: `sigma(x_k) = sum_v (d x_k / d m_v) lambda'_v`
    /// and `sigma(lambda'_v) = 0`.
    pub fn mu_moving(basis: &LazardBasis, n: usize) -> Result<Self, Error> {
        check_lazard(basis, n)?;
        let x = basis.x_table().clone();
        let ext = mu_alphabet(CoordFlavor::MovingC, n);
        let mut on_base = Vec::with_capacity(n);
        for k in 1..=n {
            let mut s = ExtElement::zero(&x, &ext);
            for v in 1..=k {
                let c = integral_rewrite(basis, &jacobian_entry(basis, k, v))?;
                s = &s + &ExtElement::generator(&x, &ext, v).mul_base(&c);
            }
            on_base.push(s);
        }
        let on_ext = vec![ExtElement::zero(&x, &ext); n];
        Ok(Self { flavor: Some(CoordFlavor::MovingC), base: x, ext, on_base, on_ext })
    }

    /// Absolute coordinates: `sigma(x_k)` is the moving formula with each
    /// `lambda'_v` expanded in the `e_j`; `sigma(e_n)` is then forced by
    /// `sigma^2(x_n) = 0`, since the coefficient of `e_n` in `sigma(x_n)`
    /// is the nonzero integer `-d_n`.
    pub fn mu_split(basis: &LazardBasis, n: usize) -> Result<Self, Error> {
        check_lazard(basis, n)?;
        let x = basis.x_table().clone();
        let m = basis.m_table();
        let ext = mu_alphabet(CoordFlavor::AbsoluteB, n);
        let mut on_base = Vec::with_capacity(n);
        for k in 1..=n {
            // collect the coefficient of each e_j over the m table first
            let mut s = ExtElement::zero(&x, &ext);
            for j in 1..=k {
                let mut c = GradedPoly::zero(m);
                for v in j..=k {
                    let mv = if j == v { GradedPoly::one(m) } else { GradedPoly::var(m, (v - j - 1) as u16) };
                    let lam = mv.scale_int(-((v - j + 1) as i64));
                    c = &c + &(&jacobian_entry(basis, k, v) * &lam);
                }
                let c = integral_rewrite(basis, &c)?;
                s = &s + &ExtElement::generator(&x, &ext, j).mul_base(&c);
            }
            on_base.push(s);
        }
        let mut table =
            Self { flavor: Some(CoordFlavor::AbsoluteB), base: x.clone(), ext: ext.clone(), on_base, on_ext: Vec::new() };
        for k in 1..=n {
            let sx = table.on_base[k - 1].clone();
            let lead = sx.coeff(&[(k - 1) as u16]);
            let d = lead.constant_term();
            if lead.len() != 1 || d == Q::from_integer(0.into()) {
                return Err(Error::Unsupported(format!("coefficient of e_{k} in sigma(x_{k}) is {lead}")));
            }
            // P_k sigma(e_k) = sum_j sigma(P_j) e_j - sum_{j<k} P_j sigma(e_j)
            let mut rhs = ExtElement::zero(&x, &ext);
            for j in 1..=k {
                let pj = sx.coeff(&[(j - 1) as u16]);
                let ej = ExtElement::generator(&x, &ext, j);
                rhs = &rhs + &(&table.sigma_base_poly(&pj) * &ej);
                if j < k {
                    rhs = &rhs - &table.on_ext[j - 1].mul_base(&pj);
                }
            }
            let se = rhs.scale(&(Q::from_integer(1.into()) / d));
            if !se.is_integral() {
                return Err(Error::NonIntegral(format!("sigma(e_{k}) = {se}")));
            }
            table.on_ext.push(se);
        }
        Ok(table)
    }

    /// `BP` at the prime of the basis: `sigma(v_n) = sum_k (d v_n / d l_k)
    /// lambda_k`, checked against the recursion
    /// `p lambda_n = sigma(v_n) + sum_{i<n} (v_{n-i}^{p^i} lambda_i
    /// + p^i l_i v_{n-i}^{p^i - 1} sigma(v_{n-i}))`.
    pub fn bp(basis: &TypicalBasis) -> Result<Self, Error> {
        let (p, n) = (basis.prime(), basis.max_n());
        let v = basis.v_table().clone();
        let degrees = (1..=n).map(|k| 2 * p.pow(k as u32) - 1).collect();
        let ext = ExtAlphabet::new("lambda", "\\lambda", degrees);
        let mut on_base: Vec<ExtElement> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut s = ExtElement::zero(&v, &ext);
            for j in 1..=k {
                let d = basis.v_in_ell(k).derivative((j - 1) as u16);
                let (c, _) = basis.rewrite_ell_to_v(&d)?;
                if !c.is_integral() {
                    return Err(Error::NonIntegral(format!("d v_{k} / d l_{j} = {c}")));
                }
                s = &s + &ExtElement::generator(&v, &ext, j).mul_base(&c);
            }
            let rec = bp_recursion_step(basis, &ext, &on_base, k);
            if rec != s {
                return Err(Error::ComplexViolation(format!("sigma(v_{k}): {s} against recursion {rec}")));
            }
            on_base.push(s);
        }
        let on_ext = vec![ExtElement::zero(&v, &ext); n];
        Ok(Self { flavor: Some(CoordFlavor::TypicalT(p)), base: v, ext, on_base, on_ext })
    }

    /// The algebraic de Rham differential on a polynomial ring: `d(g_n)`
    /// is the exterior generator `dg_n` of degree `2|g_n| + 1`, and the
    /// exterior generators are closed. Use [`SigmaTable::apply_left`] for
    /// the usual left rule `d(a w) = da w + a dw`.
    pub fn de_rham(base: &Arc<GenTable>) -> Self {
        let n = base.len();
        let fam = base.name(0).split('_').next().unwrap_or("x").to_string();
        let tex = base.gen(0).tex.split('_').next().unwrap_or("x").to_string();
        let degrees = (0..n).map(|v| 2 * base.weight(v as u16) + 1).collect();
        let ext = ExtAlphabet::new(&format!("d{fam}"), &format!("d{tex}"), degrees);
        let on_base = (1..=n).map(|k| ExtElement::generator(base, &ext, k)).collect();
        let on_ext = vec![ExtElement::zero(base, &ext); n];
        Self { flavor: None, base: base.clone(), ext, on_base, on_ext }
    }

    /// A table from explicit images of the generators.
    pub fn from_parts(
        flavor: Option<CoordFlavor>,
        base: &Arc<GenTable>,
        ext: &Arc<ExtAlphabet>,
        on_base: Vec<ExtElement>,
        on_ext: Vec<ExtElement>,
    ) -> Result<Self, Error> {
        if on_ext.len() != ext.len() {
            return Err(Error::Shape(format!("{} exterior images for {} generators", on_ext.len(), ext.len())));
        }
        for x in on_base.iter().chain(&on_ext) {
            if x.alphabet() != ext || **x.base() != **base {
                return Err(Error::TableMismatch(base.name(0).into(), x.base().name(0).into()));
            }
        }
        Ok(Self { flavor, base: base.clone(), ext: ext.clone(), on_base, on_ext })
    }

    /// The coordinate flavor; `None` for a de Rham complex.
    pub fn flavor(&self) -> Option<CoordFlavor> {
        self.flavor
    }

    pub fn base_table(&self) -> &Arc<GenTable> {
        &self.base
    }

    pub fn alphabet(&self) -> &Arc<ExtAlphabet> {
        &self.ext
    }

    pub fn max_n(&self) -> usize {
        self.on_base.len()
    }

    /// `sigma` of the `n`-th polynomial generator.
    pub fn on_base(&self, n: usize) -> &ExtElement {
        &self.on_base[n - 1]
    }

    /// `sigma` of the `n`-th exterior generator.
    pub fn on_ext(&self, n: usize) -> &ExtElement {
        &self.on_ext[n - 1]
    }

    /// The `n`-th exterior generator as an element.
    pub fn ext_gen(&self, n: usize) -> ExtElement {
        ExtElement::generator(&self.base, &self.ext, n)
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement::zero(&self.base, &self.ext)
    }

    pub fn from_base(&self, p: &GradedPoly) -> ExtElement {
        ExtElement::from_base(p, &self.ext)
    }

    /// `sigma` on the even part: `sum_v (d a / d x_v) sigma(x_v)`.
    pub fn sigma_base_poly(&self, a: &GradedPoly) -> ExtElement {
        let mut out = self.zero();
        let mut vars: Vec<u16> = a.terms().flat_map(|(m, _)| m.exponents().iter().map(|&(v, _)| v)).collect();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            let n = v as usize + 1;
            assert!(n <= self.max_n(), "sigma table built through {} only", self.max_n());
            out = &out + &self.on_base[v as usize].mul_base(&a.derivative(v));
        }
        out
    }

    /// `sigma` of a product of exterior generators.
    pub fn sigma_ext_word(&self, s: &[u16]) -> ExtElement {
        let k = s.len();
        let mut out = self.zero();
        for r in 0..k {
            let se = &self.on_ext[s[r] as usize];
            if se.is_zero() {
                continue;
            }
            let left = ExtElement::term(&self.ext, s[..r].to_vec(), GradedPoly::one(&self.base));
            let right = ExtElement::term(&self.ext, s[r + 1..].to_vec(), GradedPoly::one(&self.base));
            let t = &(&left * se) * &right;
            out = if (k - 1 - r).is_multiple_of(2) { &out + &t } else { &out - &t };
        }
        out
    }

    /// `sigma` of a basis element `m * E_S`.
    pub fn sigma_basis(&self, m: &Monomial, s: &[u16]) -> ExtElement {
        let a = GradedPoly::term(&self.base, m.clone(), Q::from_integer(1.into()));
        self.sigma_term(&a, s)
    }

    fn sigma_term(&self, a: &GradedPoly, s: &[u16]) -> ExtElement {
        let es = ExtElement::term(&self.ext, s.to_vec(), GradedPoly::one(&self.base));
        let first = &self.sigma_base_poly(a) * &es;
        let first = if s.len().is_multiple_of(2) { first } else { first.neg() };
        &first + &self.sigma_ext_word(s).mul_base(a)
    }

    /// `sigma` on an arbitrary element.
    pub fn apply(&self, x: &ExtElement) -> ExtElement {
        let mut out = self.zero();
        for (s, a) in x.terms() {
            out = &out + &self.sigma_term(a, s);
        }
        out
    }

    /// The left-derivation convention `sigma'(x) = (-1)^{|x|} sigma(x)`.
    pub fn apply_left(&self, x: &ExtElement) -> ExtElement {
        let mut out = self.zero();
        for (s, a) in x.terms() {
            let t = self.sigma_term(a, s);
            out = if s.len() % 2 == 0 { &out + &t } else { &out - &t };
        }
        out
    }

    /// The text name of the `n`-th polynomial generator.
    pub fn base_name(&self, n: usize) -> &str {
        self.base.name((n - 1) as u16)
    }
}

fn bp_recursion_step(basis: &TypicalBasis, ext: &Arc<ExtAlphabet>, known: &[ExtElement], n: usize) -> ExtElement {
    let p = basis.prime();
    let v = basis.v_table();
    let mut out = ExtElement::generator(v, ext, n).scale(&Q::from_integer(p.into()));
    for i in 1..n {
        let e = p.pow(i as u32);
        let vni = GradedPoly::var(v, (n - i - 1) as u16);
        let t1 = ExtElement::generator(v, ext, i).mul_base(&vni.pow(e));
        let pl = basis.ell_in_v(i).scale(&Q::from_integer(e.into()));
        let t2 = known[n - i - 1].mul_base(&(&pl * &vni.pow(e - 1)));
        out = &(&out - &t1) - &t2;
    }
    out
}

/// The Hurewicz map into the algebroid, with the integrality verdict: for
/// moving coordinates `m_n -> c_n`, for absolute ones `m_n -> chi(b_n)`,
/// and for `BP` `l_n -> t_n` (integrality then meaning `p`-local).
#[derive(Clone, Debug)]
pub enum Hurewicz<'a> {
    Mu(&'a LazardBasis, CoordFlavor),
    Bp(&'a TypicalBasis),
}

impl Hurewicz<'_> {
    pub fn apply(&self, p: &GradedPoly) -> Result<(GradedPoly, bool), Error> {
        match self {
            Hurewicz::Mu(basis, flavor) => {
                let n = basis.max_weight();
                let in_m = basis.rewrite_x_to_m(p);
                match flavor {
                    CoordFlavor::MovingC => {
                        let c = plain_table(C, n);
                        let out = in_m.substitute(&c, |v| GradedPoly::var(&c, v));
                        let ok = out.is_integral();
                        Ok((out, ok))
                    }
                    CoordFlavor::AbsoluteB => {
                        let b = plain_table(B, n);
                        let f = TruncatedSeries::strict(&b, n + 1, |k| GradedPoly::var(&b, (k - 1) as u16));
                        let inv = comp_inverse(&f)?;
                        let out = in_m.substitute(&b, |v| inv.coeff(v as usize + 2).clone());
                        let ok = out.is_integral();
                        Ok((out, ok))
                    }
                    CoordFlavor::TypicalT(_) => Err(Error::Unsupported("p-typical flavor over MU".into())),
                }
            }
            Hurewicz::Bp(basis) => {
                let t = typical_table(T, basis.prime(), basis.max_n());
                let in_l = basis.rewrite_v_to_ell(p);
                let out = in_l.substitute(&t, |v| GradedPoly::var(&t, v));
                let ok = out.is_p_integral(basis.prime());
                Ok((out, ok))
            }
        }
    }

    /// The source and target families, for display.
    pub fn families(&self) -> (&'static str, &'static str) {
        match self {
            Hurewicz::Mu(_, CoordFlavor::AbsoluteB) => (M.name, B.name),
            Hurewicz::Mu(..) => (M.name, C.name),
            Hurewicz::Bp(_) => (L.name, T.name),
        }
    }
}

/// One line of a sigma table for display.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaLine {
    pub source: String,
    pub source_tex: String,
    pub text: String,
    pub tex: String,
}

impl SigmaTable {
    /// `sigma` on every generator, polynomial ones first.
    pub fn lines(&self) -> Vec<SigmaLine> {
        let mut out = Vec::new();
        for n in 1..=self.max_n() {
            let g = self.base.gen((n - 1) as u16);
            let s = &self.on_base[n - 1];
            out.push(SigmaLine { source: g.name.clone(), source_tex: g.tex.clone(), text: s.to_text(), tex: s.to_tex() });
        }
        for n in 1..=self.max_n() {
            let s = &self.on_ext[n - 1];
            out.push(SigmaLine {
                source: self.ext.symbol((n - 1) as u16, false),
                source_tex: self.ext.symbol((n - 1) as u16, true),
                text: s.to_text(),
                tex: s.to_tex(),
            });
        }
        out
    }
}
