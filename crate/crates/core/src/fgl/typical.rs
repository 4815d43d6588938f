use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exactalg::{typical_weight, Error, GenTable, GradedPoly, Q, L, V};

/// Hazewinkel generators `v_n` of the `p`-typical ring, with the
/// logarithm coefficients `l_n` expressed in them and back.
#[derive(Clone, Debug)]
pub struct TypicalBasis {
    p: u32,
    max_n: usize,
    l_table: Arc<GenTable>,
    v_table: Arc<GenTable>,
    ell_in_v: Vec<GradedPoly>,
    v_in_ell: Vec<GradedPoly>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn typical_table(fam: crate::exactalg::Family, p: u32, count: usize) -> Arc<GenTable> {
    GenTable::new(fam.generators(count, |n| typical_weight(p, n)))
}

impl TypicalBasis {
    /// Solves `p l_n = sum_{i<n} l_i v_{n-i}^{p^i}` with `l_0 = 1`.
    pub fn hazewinkel(p: u32, max_n: usize) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        let l_table = typical_table(L, p, max_n);
        let v_table = typical_table(V, p, max_n);
        let inv_p = Q::new(BigInt::one(), BigInt::from(p));
        let mut ell_in_v: Vec<GradedPoly> = Vec::new();
        let mut v_in_ell: Vec<GradedPoly> = Vec::new();
        for n in 1..=max_n {
            // sum_{i=1}^{n-1} l_i v_{n-i}^{p^i}, in both bases
            let mut tail_v = GradedPoly::zero(&v_table);
            let mut tail_l = GradedPoly::zero(&l_table);
            for i in 1..n {
                let e = p.pow(i as u32);
                let vv = GradedPoly::var(&v_table, (n - i - 1) as u16).pow(e);
                tail_v = &tail_v + &(&ell_in_v[i - 1] * &vv);
                let lv = v_in_ell[n - i - 1].pow(e);
                tail_l = &tail_l + &(&GradedPoly::var(&l_table, (i - 1) as u16) * &lv);
            }
            let vn = GradedPoly::var(&v_table, (n - 1) as u16);
            ell_in_v.push((&vn + &tail_v).scale(&inv_p));
            let ln = GradedPoly::var(&l_table, (n - 1) as u16).scale_int(p as i64);
            v_in_ell.push(&ln - &tail_l);
        }
        Ok(Self { p, max_n, l_table, v_table, ell_in_v, v_in_ell })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn l_table(&self) -> &Arc<GenTable> {
        &self.l_table
    }

    pub fn v_table(&self) -> &Arc<GenTable> {
        &self.v_table
    }

    pub fn ell_in_v(&self, n: usize) -> &GradedPoly {
        &self.ell_in_v[n - 1]
    }

    pub fn v_in_ell(&self, n: usize) -> &GradedPoly {
        &self.v_in_ell[n - 1]
    }

    /// `p l_n - sum_{i<n} l_i v_{n-i}^{p^i}` evaluated in the `v` basis;
    /// zero for a correct table.
    pub fn recursion_residual(&self, n: usize) -> GradedPoly {
        let p = self.p;
        let mut rhs = GradedPoly::var(&self.v_table, (n - 1) as u16);
        for i in 1..n {
            let vv = GradedPoly::var(&self.v_table, (n - i - 1) as u16).pow(p.pow(i as u32));
            rhs = &rhs + &(self.ell_in_v(i) * &vv);
        }
        &self.ell_in_v(n).scale_int(p as i64) - &rhs
    }

    fn weight_guard(&self, q: &GradedPoly) -> Result<(), Error> {
        let limit = typical_weight(self.p, self.max_n);
        for (m, _) in q.terms() {
            if m.weight() > limit {
                return Err(Error::DegreeGuard { degree: m.weight(), limit });
            }
        }
        Ok(())
    }

    /// Rewrites a polynomial in the `l_n` into the `v_n`. The flag is true
    /// when the result lies in `Z_(p)[v_n]`; a denominator with a prime
    /// factor other than `p` is an error, since the rationals here only
    /// ever acquire powers of `p`.
    pub fn rewrite_ell_to_v(&self, q: &GradedPoly) -> Result<(GradedPoly, bool), Error> {
        self.weight_guard(q)?;
        let out = q.substitute(&self.v_table, |v| self.ell_in_v[v as usize].clone());
        let mut den = out.denominator();
        let p = BigInt::from(self.p);
        while den.is_multiple_of(&p) {
            den /= &p;
        }
        if !den.is_one() {
            return Err(Error::NonIntegral(format!("denominator prime to {} in {out}", self.p)));
        }
        let integral = out.is_p_integral(self.p);
        Ok((out, integral))
    }

    /// The inverse rewrite, exact over `Q`.
    pub fn rewrite_v_to_ell(&self, q: &GradedPoly) -> GradedPoly {
        q.substitute(&self.l_table, |v| self.v_in_ell[v as usize].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    #[test]
    fn low_degree_formulas() {
        let b = TypicalBasis::hazewinkel(2, 3).unwrap();
        let v = b.v_table();
        assert_eq!(b.ell_in_v(2).scale_int(4), parse_poly(v, "2v_2 + v_1^3").unwrap());
        let b = TypicalBasis::hazewinkel(3, 3).unwrap();
        let v = b.v_table();
        assert_eq!(b.ell_in_v(1).scale_int(3), parse_poly(v, "v_1").unwrap());
        assert_eq!(
            b.ell_in_v(3).scale_int(27),
            parse_poly(v, "9v_3 + 3(v_1 v_2^3 + v_1^9 v_2) + v_1^13").unwrap()
        );
    }

    #[test]
    fn residual_and_lemma() {
        for p in [2, 3, 5] {
            let b = TypicalBasis::hazewinkel(p, 4).unwrap();
            for n in 1..=4 {
                assert!(b.recursion_residual(n).is_zero());
                let scaled = b.ell_in_v(n).scale_int((p as i64).pow(n as u32));
                assert!(scaled.is_integral(), "p^n l_n not integral at p={p}, n={n}");
                let back = b.rewrite_v_to_ell(b.ell_in_v(n));
                assert_eq!(back, GradedPoly::var(b.l_table(), (n - 1) as u16));
            }
        }
    }

    #[test]
    fn verdicts() {
        let b = TypicalBasis::hazewinkel(5, 2).unwrap();
        let (l, v) = (b.l_table(), b.v_table());
        let (r, ok) = b.rewrite_ell_to_v(&parse_poly(l, "25 l_2").unwrap()).unwrap();
        assert_eq!(r, parse_poly(v, "5v_2 + v_1^6").unwrap());
        assert!(ok);
        let (r, ok) = b.rewrite_ell_to_v(&GradedPoly::gen(l, "l_1")).unwrap();
        assert_eq!(r, parse_poly(v, "1/5 v_1").unwrap());
        assert!(!ok);
        assert!(TypicalBasis::hazewinkel(4, 2).is_err());
    }
}
