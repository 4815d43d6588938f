//! Structure maps of the Hopf algebroids `(L, LB)`, `(L, LC)` and `(V, VT)`.
//!
//! Everything integral is produced by computing over the rational
//! logarithm coefficients (`m_n`, `l_n`) and rewriting.

mod tensor;

use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

pub use tensor::Tensor;

use crate::exactalg::{
    plain_table, table_of, typical_weight, Error, Family, GenTable, GradedPoly, Monomial, Var, B, B_OUTER, C, L, M, Q, T, V, X,
};
use crate::fgl::{LazardBasis, TypicalBasis};
use crate::series::{
    comp_inverse, compose, fgl_formal_sum, fgl_from_log, monomial_series, universal_log, BivariateSeries, FGLaw,
    TruncatedSeries,
};

/// Which coordinates parametrize the strict isomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "flavor", content = "prime")]
pub enum CoordFlavor {
    /// `f(x) = x + sum b_n x^{n+1}`, exterior classes `e_n`.
    AbsoluteB,
    /// `phi(x) = sum^F c_n x^{n+1}`, exterior classes `lambda'_n`.
    MovingC,
    /// `phi(x) = sum^F t_n x^{p^n}`, exterior classes `lambda_n`.
    TypicalT(u32),
}

impl CoordFlavor {
    pub fn coordinate_family(&self) -> Family {
        match self {
            Self::AbsoluteB => B,
            Self::MovingC => C,
            Self::TypicalT(_) => T,
        }
    }

    pub fn weight(&self, n: usize) -> u32 {
        match self {
            Self::TypicalT(p) => typical_weight(*p, n),
            _ => n as u32,
        }
    }
}

fn two_family(a: Family, b: Family, n: usize, w: &dyn Fn(usize) -> u32) -> Arc<GenTable> {
    table_of(&[(a, n, w), (b, n, w)])
}

fn linear_weight(n: usize) -> u32 {
    n as u32
}

/// The `b`-linear part of `eta_R(m_n)` over `LB (x) Q`:
/// `-sum_{j=1}^n (n-j+1) m_{n-j} b_j`, with `m_0 = 1`. The `m` and `b`
/// generators are looked up by name in `table`.
pub fn eta_r_linear_part(table: &Arc<GenTable>, n: usize) -> GradedPoly {
    let mut out = GradedPoly::zero(table);
    for j in 1..=n {
        let bj = GradedPoly::gen(table, &B.var_name(j));
        let coeff = -((n - j + 1) as i64);
        let term = if j == n { bj } else { &GradedPoly::gen(table, &M.var_name(n - j)) * &bj };
        out = &out + &term.scale_int(coeff);
    }
    out
}

/// The Hopf algebroids `(L, LB) = (L, LC)` through weight `max_n`.
#[derive(Clone, Debug)]
pub struct MuAlgebroid {
    basis: LazardBasis,
    max_n: usize,
    b: Arc<GenTable>,
    b2: Arc<GenTable>,
    mb: Arc<GenTable>,
    xb: Arc<GenTable>,
    mc: Arc<GenTable>,
    xc: Arc<GenTable>,
    conj: Vec<GradedPoly>,
    eta_abs: Vec<GradedPoly>,
    c_mb: Vec<GradedPoly>,
    m_in_x_xb: Vec<GradedPoly>,
    m_in_x_xc: Vec<GradedPoly>,
}

impl MuAlgebroid {
    /// Builds all tables through weight `max_n`; the Lazard basis must reach
    /// at least that weight.
    pub fn new(basis: LazardBasis, max_n: usize) -> Result<Self, Error> {
        if basis.max_weight() < max_n {
            return Err(Error::DegreeGuard { degree: max_n as u32, limit: basis.max_weight() as u32 });
        }
        let w: &dyn Fn(usize) -> u32 = &linear_weight;
        let b = plain_table(B, max_n);
        let b2 = two_family(B, B_OUTER, max_n, w);
        let mb = two_family(M, B, max_n, w);
        let xb = two_family(X, B, max_n, w);
        let mc = two_family(M, C, max_n, w);
        let xc = two_family(X, C, max_n, w);

        let f = TruncatedSeries::strict(&b, max_n + 1, |n| GradedPoly::gen(&b, &B.var_name(n)));
        let finv = comp_inverse(&f)?;
        let conj: Vec<GradedPoly> = (1..=max_n).map(|n| finv.coeff(n + 1).clone()).collect();

        // sum_n eta_R(m_n) x^{n+1} = log(f^{-1}(x)) over MB
        let phi = finv.map_coeffs(&mb, |c| c.embed(&mb).expect("b lives in MB"));
        let log = universal_log(&mb, M, max_n + 1);
        let lphi = compose(&log, &phi)?;
        let eta_abs: Vec<GradedPoly> = (1..=max_n).map(|n| lphi.coeff(n + 1).clone()).collect();

        let embed_all = |t: &Arc<GenTable>| -> Result<Vec<GradedPoly>, Error> {
            (1..=max_n).map(|n| basis.m_in_x(n).embed(t)).collect()
        };
        let m_in_x_xb = embed_all(&xb)?;
        let m_in_x_xc = embed_all(&xc)?;

        let mut alg = Self {
            basis,
            max_n,
            b,
            b2,
            mb,
            xb,
            mc,
            xc,
            conj,
            eta_abs,
            c_mb: Vec::new(),
            m_in_x_xb,
            m_in_x_xc,
        };
        alg.c_mb = alg.moving_coordinates_by_log();
        Ok(alg)
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn basis(&self) -> &LazardBasis {
        &self.basis
    }

    pub fn b_table(&self) -> &Arc<GenTable> {
        &self.b
    }

    pub fn mb_table(&self) -> &Arc<GenTable> {
        &self.mb
    }

    pub fn xb_table(&self) -> &Arc<GenTable> {
        &self.xb
    }

    pub fn mc_table(&self) -> &Arc<GenTable> {
        &self.mc
    }

    pub fn xc_table(&self) -> &Arc<GenTable> {
        &self.xc
    }

    fn check_n(&self, n: usize) -> Result<(), Error> {
        if n > self.max_n {
            Err(Error::Truncation(format!("weight {n} requested, tables built through {}", self.max_n)))
        } else {
            Ok(())
        }
    }

    /// `chi(b_n)`, the coefficients of `f^{-1}`.
    pub fn conjugation_chi(&self, n: usize) -> Result<&GradedPoly, Error> {
        self.check_n(n)?;
        Ok(&self.conj[n - 1])
    }

    /// `bar m_n`, the coefficients of `exp`, over the `m` table.
    pub fn exp_coefficient(&self, n: usize) -> Result<GradedPoly, Error> {
        self.check_n(n)?;
        let m = self.basis.m_table();
        let exp = comp_inverse(&universal_log(m, M, n + 1))?;
        Ok(exp.coeff(n + 1).clone())
    }

    /// `psi(b_n)` as a two-fold tensor, read off from `f'(f''(x))`: the left
    /// factor carries the coefficients of the inner series, the right factor
    /// those of the outer one.
    pub fn coproduct_psi(&self, n: usize) -> Result<Tensor, Error> {
        self.check_n(n)?;
        let b2 = &self.b2;
        let inner = TruncatedSeries::strict(b2, n + 1, |k| GradedPoly::gen(b2, &B.var_name(k)));
        let outer = TruncatedSeries::strict(b2, n + 1, |k| GradedPoly::gen(b2, &B_OUTER.var_name(k)));
        let comp = compose(&outer, &inner)?;
        let coeff = comp.coeff(n + 1);
        let half = self.max_n as Var;
        let mut t = Tensor::zero(&self.b, 2);
        for (m, c) in coeff.terms() {
            let (l, r) = m.split(b2, |v| v < half);
            let l = Monomial::from_exponents(&self.b, l.exponents().iter().copied());
            let r = Monomial::from_exponents(
                &self.b,
                r.exponents().iter().map(|&(v, e)| (v - half, e)),
            );
            let lp = GradedPoly::term(&self.b, l, Q::one());
            let rp = GradedPoly::term(&self.b, r, c.clone());
            t = t.add(&Tensor::in_factor(&lp, 0, 2).mul(&Tensor::in_factor(&rp, 1, 2)));
        }
        Ok(t)
    }

    /// `psi` extended multiplicatively to a polynomial in the `b_n`.
    pub fn coproduct_of(&self, p: &GradedPoly) -> Result<Tensor, Error> {
        let psis: Vec<Tensor> = (1..=self.max_n).map(|n| self.coproduct_psi(n)).collect::<Result<_, _>>()?;
        Ok(Tensor::from_poly(p).apply_at(0, 2, |v| psis[v as usize].clone()))
    }

    /// `eta_R(m_n)` in `LB (x) Q`: the weight-`n` part of
    /// `sum_i m_i (sum_j bar b_j)^{i+1}`.
    pub fn eta_r_absolute(&self, n: usize) -> Result<GradedPoly, Error> {
        if n == 0 {
            return Ok(GradedPoly::one(&self.mb));
        }
        self.check_n(n)?;
        Ok(self.eta_abs[n - 1].clone())
    }

    /// `eta_R(m_n) = sum_{(i+1)(j+1) = n+1} m_i c_j^{i+1}` in `LC (x) Q`.
    pub fn eta_r_moving(&self, n: usize) -> Result<GradedPoly, Error> {
        if n == 0 {
            return Ok(GradedPoly::one(&self.mc));
        }
        self.check_n(n)?;
        Ok(divisor_sum(&self.mc, n, |i| M.var_name(i), |j| C.var_name(j)))
    }

    /// Rewrites the `m_n` of a polynomial over `MB` into the `x_n`, keeping
    /// the `b_n`; the flag reports integrality.
    pub fn rewrite_mb_to_xb(&self, p: &GradedPoly) -> (GradedPoly, bool) {
        rewrite_mixed(p, &self.xb, self.max_n, &self.m_in_x_xb)
    }

    pub fn rewrite_mc_to_xc(&self, p: &GradedPoly) -> (GradedPoly, bool) {
        rewrite_mixed(p, &self.xc, self.max_n, &self.m_in_x_xc)
    }

    /// The image under `eta_R` of a polynomial in the `m_n`, over `MB`.
    pub fn eta_r_of_m_poly(&self, p: &GradedPoly) -> GradedPoly {
        p.substitute(&self.mb, |v| self.eta_abs[v as usize].clone())
    }

    /// `eta_R(x_n)` in `LB = L[b_n]`; errors if the rewrite fails to be
    /// integral.
    pub fn eta_r_x(&self, n: usize) -> Result<GradedPoly, Error> {
        self.check_n(n)?;
        let em = self.eta_r_of_m_poly(self.basis.x_in_m(n));
        let (out, ok) = self.rewrite_mb_to_xb(&em);
        if !ok {
            return Err(Error::NonIntegral(format!("eta_R(x_{n}) = {out}")));
        }
        Ok(out)
    }

    /// `eta_R(x_n)` in `LC = L[c_n]`.
    pub fn eta_r_x_moving(&self, n: usize) -> Result<GradedPoly, Error> {
        self.check_n(n)?;
        let images: Vec<GradedPoly> = (1..=self.max_n).map(|k| self.eta_r_moving(k)).collect::<Result<_, _>>()?;
        let em = self.basis.x_in_m(n).substitute(&self.mc, |v| images[v as usize].clone());
        let (out, ok) = self.rewrite_mc_to_xc(&em);
        if !ok {
            return Err(Error::NonIntegral(format!("eta_R(x_{n}) = {out}")));
        }
        Ok(out)
    }

    /// `c_n = eta_R(m_n) - m_n - sum_{i, j >= 1, (i+1)(j+1) = n+1} m_i c_j^{i+1}`.
    fn moving_coordinates_by_log(&self) -> Vec<GradedPoly> {
        let mut cs: Vec<GradedPoly> = Vec::new();
        for n in 1..=self.max_n {
            let mut c = &self.eta_abs[n - 1] - &GradedPoly::gen(&self.mb, &M.var_name(n));
            for i in 1..n {
                if (n + 1) % (i + 1) != 0 {
                    continue;
                }
                let j = (n + 1) / (i + 1) - 1;
                let mi = GradedPoly::gen(&self.mb, &M.var_name(i));
                c = &c - &(&mi * &cs[j - 1].pow((i + 1) as u32));
            }
            cs.push(c);
        }
        cs
    }

    /// The universal law over `MB` through weight `max_n`, whatever the
    /// reach of the Lazard basis.
    fn law_over_mb(&self) -> Result<FGLaw, Error> {
        fgl_from_log(&universal_log(&self.mb, M, self.max_n + 1))
    }

    /// `c_n` over `MB`.
    pub fn moving_coordinate_mb(&self, n: usize) -> Result<&GradedPoly, Error> {
        self.check_n(n)?;
        Ok(&self.c_mb[n - 1])
    }

    /// `c_n` in `LB`, integral.
    pub fn moving_coordinate(&self, n: usize) -> Result<GradedPoly, Error> {
        self.check_n(n)?;
        let (out, ok) = self.rewrite_mb_to_xb(&self.c_mb[n - 1]);
        if !ok {
            return Err(Error::NonIntegral(format!("c_{n} = {out}")));
        }
        Ok(out)
    }

    /// The same coordinates by solving `sum^F c_k x^{k+1} = f^{-1}(x)` one
    /// degree at a time, with `F` the universal law.
    pub fn moving_coordinates_by_formal_sum(&self, n: usize) -> Result<Vec<GradedPoly>, Error> {
        self.check_n(n)?;
        let mb = &self.mb;
        let law = self.law_over_mb()?;
        let bound = n + 1;
        let mut cs: Vec<GradedPoly> = Vec::new();
        for k in 1..=n {
            let mut terms = vec![TruncatedSeries::x(mb, bound)];
            for (j, c) in cs.iter().enumerate() {
                terms.push(monomial_series(mb, bound, c.clone(), j + 2));
            }
            let partial = fgl_formal_sum(&law, &terms)?;
            let target = self.conj[k - 1].embed(mb)?;
            cs.push(&target - partial.coeff(k + 1));
        }
        Ok(cs)
    }

    /// The law `f(F(f^{-1} x, f^{-1} y))` classified by the right unit, over
    /// `MB`, through total degree `bound`.
    pub fn transported_law(&self, bound: usize) -> Result<BivariateSeries, Error> {
        self.check_n(bound - 1)?;
        let mb = &self.mb;
        let law = self.law_over_mb()?;
        let f = TruncatedSeries::strict(mb, bound, |k| GradedPoly::gen(mb, &B.var_name(k)));
        let finv = comp_inverse(&f)?;
        let mut u = BivariateSeries::zero(mb, bound);
        let mut v = BivariateSeries::zero(mb, bound);
        for k in 1..=bound {
            u.set_coeff(k, 0, finv.coeff(k).clone());
            v.set_coeff(0, k, finv.coeff(k).clone());
        }
        let up = bivariate_powers(&u, bound);
        let vp = bivariate_powers(&v, bound);
        let mut fuv = BivariateSeries::zero(mb, bound);
        for (&(i, j), c) in law.series().terms() {
            if i + j > bound {
                continue;
            }
            let t = up[i].mul(&vp[j]);
            for (&(a, b), d) in t.terms() {
                let cur = fuv.coeff(a, b);
                fuv.set_coeff(a, b, &cur + &(c * d));
            }
        }
        Ok(fuv.compose_into(&f))
    }

    /// Checks the Hopf algebroid identities through weight `max_n`: both
    /// counit laws and coassociativity of `psi`, the antipode on both sides,
    /// `chi^2 = 1`, `eta_R` agreeing with the transported law on every
    /// `a_ij`, and `epsilon eta_R = 1`. Returns the failing identities.
    pub fn hopf_axiom_failures(&self) -> Result<Vec<String>, Error> {
        let n = self.max_n;
        let b = &self.b;
        let mut bad = Vec::new();
        let psis: Vec<Tensor> = (1..=n).map(|k| self.coproduct_psi(k)).collect::<Result<_, _>>()?;
        for k in 1..=n {
            let bk = GradedPoly::var(b, (k - 1) as Var);
            let psi = &psis[k - 1];
            if psi.counit_at(1) != Tensor::from_poly(&bk) || psi.counit_at(0) != Tensor::from_poly(&bk) {
                bad.push(format!("counit on b_{k}"));
            }
            let left = psi.apply_at(0, 2, |v| psis[v as usize].clone());
            let right = psi.apply_at(1, 2, |v| psis[v as usize].clone());
            if left != right {
                bad.push(format!("coassociativity on b_{k}"));
            }
            for side in 0..2 {
                if !psi.map_factor(side, |v| self.conj[v as usize].clone()).fold().is_zero() {
                    bad.push(format!("antipode (factor {side}) on b_{k}"));
                }
            }
            if self.conj[k - 1].substitute(b, |v| self.conj[v as usize].clone()) != bk {
                bad.push(format!("chi^2 on b_{k}"));
            }
            let x = GradedPoly::var(&self.xb, (k - 1) as Var);
            if Self::epsilon(&self.eta_r_x(k)?, B) != x {
                bad.push(format!("epsilon eta_R on x_{k}"));
            }
        }
        if n >= 1 {
            let law = self.transported_law(n + 1)?;
            for i in 1..=n {
                for j in 1..=n + 1 - i {
                    if law.coeff(i, j) != self.eta_r_a(i, j)? {
                        bad.push(format!("eta_R(a_{i}{j}) against the transported law"));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// `eta_R` applied to `a_ij`, by substituting into its `m`-expansion.
    pub fn eta_r_a(&self, i: usize, j: usize) -> Result<GradedPoly, Error> {
        self.check_n(i + j - 1)?;
        Ok(self.eta_r_of_m_poly(&self.basis.law().a(i, j)))
    }

    /// The augmentation `b_n, c_n -> 0` on a polynomial over a mixed table
    /// whose coordinate family has the given name.
    pub fn epsilon(p: &GradedPoly, coordinate: Family) -> GradedPoly {
        let prefix = format!("{}_", coordinate.name);
        let t = p.table().clone();
        p.filter_terms(|m| m.exponents().iter().all(|&(v, _)| !t.name(v).starts_with(&prefix)))
    }
}

fn bivariate_powers(s: &BivariateSeries, k: usize) -> Vec<BivariateSeries> {
    let mut one = BivariateSeries::zero(s.table(), s.bound());
    one.set_coeff(0, 0, GradedPoly::one(s.table()));
    let mut out = vec![one];
    for i in 1..=k {
        let next = out[i - 1].mul(s);
        out.push(next);
    }
    out
}

/// `sum_{(i+1)(j+1) = n+1} m_i c_j^{i+1}` with `m_0 = c_0 = 1`.
fn divisor_sum(
    table: &Arc<GenTable>,
    n: usize,
    base: impl Fn(usize) -> String,
    coord: impl Fn(usize) -> String,
) -> GradedPoly {
    let mut out = GradedPoly::zero(table);
    for i in 0..=n {
        if !(n + 1).is_multiple_of(i + 1) {
            continue;
        }
        let j = (n + 1) / (i + 1) - 1;
        let mi = if i == 0 { GradedPoly::one(table) } else { GradedPoly::gen(table, &base(i)) };
        let cj = if j == 0 { GradedPoly::one(table) } else { GradedPoly::gen(table, &coord(j)) };
        out = &out + &(&mi * &cj.pow((i + 1) as u32));
    }
    out
}

/// Substitutes `m_k -> m_in_x[k]` (already over `target`) and keeps the
/// second family, which sits at offset `max_n` in both tables.
fn rewrite_mixed(p: &GradedPoly, target: &Arc<GenTable>, max_n: usize, m_in_x: &[GradedPoly]) -> (GradedPoly, bool) {
    let out = p.substitute(target, |v| {
        if (v as usize) < max_n {
            m_in_x[v as usize].clone()
        } else {
            GradedPoly::var(target, v)
        }
    });
    let ok = out.is_integral();
    (out, ok)
}

/// The Hopf algebroid `(V, VT)` at a prime.
#[derive(Clone, Debug)]
pub struct TypicalAlgebroid {
    basis: TypicalBasis,
    lt: Arc<GenTable>,
    vt: Arc<GenTable>,
}

impl TypicalAlgebroid {
    pub fn new(basis: TypicalBasis) -> Self {
        let p = basis.prime();
        let n = basis.max_n();
        let w = move |k: usize| typical_weight(p, k);
        let lt = table_of(&[(L, n, &w), (T, n, &w)]);
        let vt = table_of(&[(V, n, &w), (T, n, &w)]);
        Self { basis, lt, vt }
    }

    pub fn basis(&self) -> &TypicalBasis {
        &self.basis
    }

    pub fn lt_table(&self) -> &Arc<GenTable> {
        &self.lt
    }

    pub fn vt_table(&self) -> &Arc<GenTable> {
        &self.vt
    }

    /// `eta_R(l_n) = sum_{i+j=n} l_i t_j^{p^i}` in `VT (x) Q`.
    pub fn eta_r_typical(&self, n: usize) -> Result<GradedPoly, Error> {
        if n > self.basis.max_n() {
            return Err(Error::Truncation(format!("index {n} beyond {}", self.basis.max_n())));
        }
        let p = self.basis.prime();
        let lt = &self.lt;
        let mut out = GradedPoly::zero(lt);
        for i in 0..=n {
            let j = n - i;
            let li = if i == 0 { GradedPoly::one(lt) } else { GradedPoly::gen(lt, &L.var_name(i)) };
            let tj = if j == 0 { GradedPoly::one(lt) } else { GradedPoly::gen(lt, &T.var_name(j)) };
            out = &out + &(&li * &tj.pow(p.pow(i as u32)));
        }
        Ok(out)
    }

    /// `eta_R(v_n)` in `VT`, rewritten from the `l`-side; the flag reports
    /// `p`-local integrality.
    pub fn eta_r_v(&self, n: usize) -> Result<(GradedPoly, bool), Error> {
        let images: Vec<GradedPoly> =
            (1..=self.basis.max_n()).map(|k| self.eta_r_typical(k)).collect::<Result<_, _>>()?;
        let vl = self.basis.v_in_ell(n);
        let e = vl.substitute(&self.lt, |v| images[v as usize].clone());
        let max_n = self.basis.max_n();
        let l_in_v: Vec<GradedPoly> =
            (1..=max_n).map(|k| self.basis.ell_in_v(k).embed(&self.vt)).collect::<Result<_, _>>()?;
        let out = rewrite_mixed(&e, &self.vt, max_n, &l_in_v).0;
        let ok = out.is_p_integral(self.basis.prime());
        Ok((out, ok))
    }

    /// The map `alpha: LC (x) Q -> VT (x) Q`: `m_n, c_n` go to `l_k, t_k`
    /// when `n + 1 = p^k` and to zero otherwise.
    pub fn alpha(&self, p_mc: &GradedPoly) -> GradedPoly {
        let p = self.basis.prime();
        let src = p_mc.table().clone();
        let lt = self.lt.clone();
        p_mc.substitute(&lt, |v| {
            let name = src.name(v);
            let (fam, idx) = name.split_once('_').expect("indexed generator");
            let n: usize = idx.parse().expect("numeric index");
            match typical_index(p, n) {
                Some(k) if k <= self.basis.max_n() => {
                    let target = if fam == M.name { L.var_name(k) } else { T.var_name(k) };
                    GradedPoly::gen(&lt, &target)
                }
                _ => GradedPoly::zero(&lt),
            }
        })
    }
}

/// `k` with `n + 1 = p^k`, if any.
pub fn typical_index(p: u32, n: usize) -> Option<usize> {
    let mut q = n as u64 + 1;
    let mut k = 0;
    while q.is_multiple_of(p as u64) {
        q /= p as u64;
        k += 1;
    }
    (q == 1 && k > 0).then_some(k)
}
