//! The invariant suite behind `fgl-thh verify`.

use serde::Serialize;

use crate::algebroid::{CoordFlavor, MuAlgebroid, TypicalAlgebroid};
use crate::cohomology::{bar_tor_check, rational_collapse_check, Coalgebra, Source, ThhComplex};
use crate::exactalg::{Error, GradedPoly, Q};
use crate::fgl::{GeneratorSource, LazardBasis, TypicalBasis};
use crate::thh::{lambda_prime_in_e, Hurewicz, SigmaTable};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>) -> Self {
        let ok = failures.is_empty();
        let detail = failures.into_iter().take(3).collect::<Vec<_>>().join("; ");
        Self { name: name.into(), ok, detail }
    }
}

/// Runs every invariant for the flavor through degree `d`.
pub fn verify_suite(flavor: CoordFlavor, d: u32) -> Result<Vec<Check>, Error> {
    match flavor {
        CoordFlavor::TypicalT(p) => bp_suite(p, d),
        f => mu_suite(f, d),
    }
}

fn complex_checks(c: &ThhComplex, d: u32, out: &mut Vec<Check>) -> Result<(), Error> {
    let mut sq = Vec::new();
    let mut dd = Vec::new();
    for deg in 0..=d {
        for q in c.q_range(deg) {
            for e in c.basis(deg, q) {
                let x = c.sigma().apply(&c.element(&e));
                if !c.sigma().apply(&x).is_zero() {
                    sq.push(format!("sigma^2({}) != 0", c.label(&e)));
                }
            }
            if deg < d && !c.basis(deg, q).is_empty() {
                let prod = c.differential(deg + 1, q + 1)?.mul(&c.differential(deg, q)?)?;
                if !prod.is_zero() {
                    dd.push(format!("d o d != 0 from degree {deg}, q = {q}"));
                }
            }
        }
    }
    out.push(Check::new("sigma squares to zero", sq));
    out.push(Check::new("d o d = 0 on the assembled matrices", dd));
    let table = c.cohomology_table(d)?;
    let r = rational_collapse_check(c, &table)?;
    let bad: Vec<String> =
        r.rows.iter().filter(|x| !x.exact).map(|x| format!("degree {}, q = {} not exact over Q", x.degree, x.q)).collect();
    out.push(Check::new("rational collapse", bad));
    Ok(())
}

fn mu_suite(flavor: CoordFlavor, d: u32) -> Result<Vec<Check>, Error> {
    let n = (d as usize).div_ceil(2).max(1);
    let mut out = Vec::new();
    let c = ThhComplex::mu(flavor, n)?;
    complex_checks(&c, d, &mut out)?;

    let other = ThhComplex::mu(
        if flavor == CoordFlavor::MovingC { CoordFlavor::AbsoluteB } else { CoordFlavor::MovingC },
        n,
    )?;
    let (a, b) = (c.cohomology_table(d)?, other.cohomology_table(d)?);
    let bad = a
        .iter()
        .zip(&b)
        .filter(|(x, y)| x.group != y.group)
        .map(|(x, y)| format!("degree {}: {} vs {}", x.degree, x.group, y.group))
        .collect();
    out.push(Check::new("moving and split tables agree", bad));

    let basis = LazardBasis::new(n, GeneratorSource::Standard)?;
    let alg_n = n.min(6);
    let alg = MuAlgebroid::new(LazardBasis::new(alg_n + 1, GeneratorSource::Standard)?, alg_n)?;
    out.push(Check::new("Hopf algebroid axioms", alg.hopf_axiom_failures()?));

    let by_sum = alg.moving_coordinates_by_formal_sum(alg_n)?;
    let mut bad = Vec::new();
    for (k, c2) in by_sum.iter().enumerate() {
        if alg.moving_coordinate_mb(k + 1)? != c2 {
            bad.push(format!("c_{} differs between the two routes", k + 1));
        }
    }
    out.push(Check::new("moving coordinates by two routes", bad));

    let mut bad = Vec::new();
    for f in [CoordFlavor::MovingC, CoordFlavor::AbsoluteB] {
        let h = Hurewicz::Mu(&basis, f);
        for k in 1..=n {
            let (img, ok) = h.apply(&GradedPoly::var(basis.x_table(), (k - 1) as u16))?;
            if !ok {
                bad.push(format!("h(x_{k}) = {img} not integral"));
            }
        }
    }
    out.push(Check::new("Hurewicz images integral", bad));

    let mv = SigmaTable::mu_moving(&basis, n)?;
    let sp = SigmaTable::mu_split(&basis, n)?;
    let l = lambda_prime_in_e(&basis, n)?;
    let mut bad = Vec::new();
    for k in 1..=n {
        let mut img = sp.zero();
        for (s, coeff) in mv.on_base(k).terms() {
            img = &img + &l[s[0] as usize].mul_base(coeff);
        }
        if &img != sp.on_base(k) {
            bad.push(format!("sigma(x_{k}) differs across flavors"));
        }
    }
    out.push(Check::new("sigma coherent across flavors", bad));
    Ok(out)
}

fn bp_suite(p: u32, d: u32) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let c = ThhComplex::bp(p, d)?;
    let Source::Bp(basis) = c.source() else { unreachable!("built from a typical basis") };
    let basis: &TypicalBasis = basis;

    let mut res = Vec::new();
    let mut integral = Vec::new();
    for n in 1..=basis.max_n() {
        let r = basis.recursion_residual(n);
        if !r.is_zero() {
            res.push(format!("residual at n = {n}: {r}"));
        }
        let scaled = basis.ell_in_v(n).scale(&Q::from_integer(p.pow(n as u32).into()));
        if !scaled.is_integral() {
            integral.push(format!("p^{n} l_{n} = {scaled}"));
        }
    }
    out.push(Check::new("Hazewinkel recursion", res));
    out.push(Check::new("p^n l_n integral", integral));

    complex_checks(&c, d, &mut out)?;

    let alg = TypicalAlgebroid::new(basis.clone());
    let mut bad = Vec::new();
    for n in 1..=basis.max_n().min(3) {
        let (e, ok) = alg.eta_r_v(n)?;
        if !ok {
            bad.push(format!("eta_R(v_{n}) = {e}"));
        }
    }
    out.push(Check::new("eta_R(v_n) p-integral", bad));

    let mut bad = Vec::new();
    for n in 1..=basis.max_n() {
        let (img, ok) = Hurewicz::Bp(basis).apply(&GradedPoly::var(basis.v_table(), (n - 1) as u16))?;
        if !ok {
            bad.push(format!("h(v_{n}) = {img}"));
        }
    }
    out.push(Check::new("Hurewicz images p-integral", bad));

    let r = bar_tor_check(Coalgebra::T(p), 8, 3)?;
    let bad = r.rows.iter().filter(|x| !x.ok).map(|x| format!("q = {}, weight = {}", x.q, x.weight)).collect();
    out.push(Check::new("bar complex of T(p) is exterior", bad));
    Ok(out)
}
