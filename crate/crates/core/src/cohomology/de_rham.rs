//! Algebraic de Rham complexes and the two comparison maps
//! `(Omega_L, d) -> (pi_* THH(MU), sigma') -> (Omega_C, d)`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::{DegreeCohomology, Rule, ThhComplex};
use crate::algebroid::CoordFlavor;
use crate::exactalg::{plain_table, Error, FinAbGroup, GenTable, Generator, GradedPoly, C};
use crate::thh::{ExtElement, Hurewicz, SigmaTable};

/// The de Rham complex of `Z[x_1, ..., x_k]` with the given weights, rule
/// `d(a w) = da w + a dw`.
pub fn de_rham_complex(base: &Arc<GenTable>, max_degree: u32) -> ThhComplex {
    ThhComplex::from_sigma(SigmaTable::de_rham(base), max_degree, Rule::Left)
}

/// `H_dR` of the polynomial ring on generators of the given weights.
pub fn de_rham_cohomology(weights: &[u32], d_max: u32) -> Result<(ThhComplex, Vec<DegreeCohomology>), Error> {
    if weights.is_empty() || weights.contains(&0) {
        return Err(Error::Shape("generator weights must be positive".into()));
    }
    let gens = weights.iter().enumerate().map(|(i, &w)| Generator::new(format!("x_{}", i + 1), format!("x_{{{}}}", i + 1), w));
    let table = GenTable::new(gens.collect());
    let complex = de_rham_complex(&table, d_max);
    let groups = complex.cohomology_table(d_max)?;
    Ok((complex, groups))
}

/// One generator of weight 1: `d(x^{k+1}) = (k+1) x^k dx` gives
/// `Z/(k+1)` in degree `2k + 3`.
pub fn single_generator_table(d_max: u32) -> Result<Vec<FinAbGroup>, Error> {
    Ok(de_rham_cohomology(&[1], d_max)?.1.into_iter().map(|h| h.group).collect())
}

/// The map on cohomology in one degree: orders of the images of the source
/// generators.
#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    pub degree: u32,
    pub source: String,
    pub target: String,
    #[serde(serialize_with = "crate::exactalg::big_json::many")]
    pub image_orders: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeRhamReport {
    pub d_max: u32,
    pub lazard: Vec<String>,
    pub thh: Vec<String>,
    pub homology: Vec<String>,
    /// Basis elements where `sigma' phi - phi d` does not vanish.
    pub first_residuals: usize,
    /// Basis elements where `d psi - psi sigma'` does not vanish.
    pub second_residuals: usize,
    pub first_induced: Vec<InducedMap>,
    pub second_induced: Vec<InducedMap>,
}

impl DeRhamReport {
    pub fn chain_maps_hold(&self) -> bool {
        self.first_residuals == 0 && self.second_residuals == 0
    }
}

struct Comparison {
    omega_l: ThhComplex,
    thh: ThhComplex,
    omega_c: ThhComplex,
    hurewicz_images: Vec<GradedPoly>,
}

impl Comparison {
    fn new(d_max: u32) -> Result<Self, Error> {
        let n = (d_max as usize).div_ceil(2).max(1);
        let mut thh = ThhComplex::mu(CoordFlavor::MovingC, n)?;
        thh.rule = Rule::Left;
        let super::Source::Mu(basis) = thh.source() else { unreachable!() };
        let omega_l = de_rham_complex(basis.x_table(), thh.max_degree());
        let c = plain_table(C, basis.max_weight());
        let omega_c = de_rham_complex(&c, thh.max_degree());
        let h = Hurewicz::Mu(basis, CoordFlavor::MovingC);
        let mut hurewicz_images = Vec::new();
        for k in 1..=basis.max_weight() {
            let (img, ok) = h.apply(&GradedPoly::var(basis.x_table(), (k - 1) as u16))?;
            if !ok {
                return Err(Error::NonIntegral(format!("h(x_{k}) = {img}")));
            }
            hurewicz_images.push(img.embed(&c)?);
        }
        Ok(Self { omega_l, thh, omega_c, hurewicz_images })
    }

    /// `a dx_S -> a sigma(x_{s_1}) ... sigma(x_{s_k})`.
    fn phi(&self, w: &ExtElement) -> ExtElement {
        let s = self.thh.sigma();
        let mut out = s.zero();
        for (set, a) in w.terms() {
            let mut t = s.from_base(a);
            for &i in set {
                t = &t * s.on_base(i as usize + 1);
            }
            out = &out + &t;
        }
        out
    }

    /// `a lambda'_S -> h(a) dc_{s_1} ... dc_{s_k}`.
    fn psi(&self, y: &ExtElement) -> ExtElement {
        let s = self.omega_c.sigma();
        let c = s.base_table();
        let mut out = s.zero();
        for (set, a) in y.terms() {
            let h = a.substitute(c, |v| self.hurewicz_images[v as usize].clone());
            let mut t = s.from_base(&h);
            for &i in set {
                t = &t * &s.ext_gen(i as usize + 1);
            }
            out = &out + &t;
        }
        out
    }

    fn residuals(&self, d_max: u32) -> (usize, usize) {
        let (mut first, mut second) = (0, 0);
        for d in 0..=d_max {
            for q in self.omega_l.q_range(d) {
                for e in self.omega_l.basis(d, q) {
                    let w = self.omega_l.element(&e);
                    let lhs = self.thh.sigma().apply_left(&self.phi(&w));
                    let rhs = self.phi(&self.omega_l.sigma().apply_left(&w));
                    first += usize::from(lhs != rhs);
                }
            }
            for q in self.thh.q_range(d) {
                for e in self.thh.basis(d, q) {
                    let y = self.thh.element(&e);
                    let lhs = self.omega_c.sigma().apply_left(&self.psi(&y));
                    let rhs = self.psi(&self.thh.sigma().apply_left(&y));
                    second += usize::from(lhs != rhs);
                }
            }
        }
        (first, second)
    }
}

fn induced(
    src: &[DegreeCohomology],
    tgt: &[DegreeCohomology],
    target: &ThhComplex,
    map: impl Fn(&ExtElement) -> ExtElement,
) -> Result<Vec<InducedMap>, Error> {
    let mut out = Vec::new();
    for (hs, ht) in src.iter().zip(tgt) {
        let mut image_orders = Vec::new();
        for class in hs.classes() {
            let img = map(&class.element);
            image_orders.push(if img.is_zero() { BigInt::from(1) } else { ht.order_of(&img, target)? });
        }
        out.push(InducedMap {
            degree: hs.degree,
            source: hs.group.to_string(),
            target: ht.group.to_string(),
            image_orders,
        });
    }
    Ok(out)
}

/// Builds both comparison maps through degree `d_max`, checks that they
/// commute with the differentials on every basis element, and reports the
/// induced maps on cohomology.
pub fn de_rham_comparison(d_max: u32) -> Result<DeRhamReport, Error> {
    let cmp = Comparison::new(d_max)?;
    let (first_residuals, second_residuals) = cmp.residuals(d_max);
    let hl = cmp.omega_l.cohomology_table(d_max)?;
    let ht = cmp.thh.cohomology_table(d_max)?;
    let hc = cmp.omega_c.cohomology_table(d_max)?;
    let first_induced = induced(&hl, &ht, &cmp.thh, |w| cmp.phi(w))?;
    let second_induced = induced(&ht, &hc, &cmp.omega_c, |y| cmp.psi(y))?;
    let show = |t: &[DegreeCohomology]| t.iter().map(|h| h.group.to_string()).collect();
    Ok(DeRhamReport {
        d_max,
        lazard: show(&hl),
        thh: show(&ht),
        homology: show(&hc),
        first_residuals,
        second_residuals,
        first_induced,
        second_induced,
    })
}
