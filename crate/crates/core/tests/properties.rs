use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use fgl_thh::algebroid::CoordFlavor;
use fgl_thh::cohomology::ThhComplex;
use fgl_thh::exactalg::{
    invariant_factors, plain_table, subquotient_group, GenTable, GradedPoly, IntMatrix, Monomial, Q, B,
};
use fgl_thh::fgl::monomials_of_weight;
use fgl_thh::series::{comp_inverse, TruncatedSeries};
use fgl_thh::thh::{merge_sign, ExtElement};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols)
        .prop_map(move |xs| IntMatrix::from_rows(&xs.chunks(cols.max(1)).map(<[i64]>::to_vec).take(rows).collect::<Vec<_>>()))
}

fn permuted(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> IntMatrix {
    m.select(rows, cols)
}

fn shuffle(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Homogeneous polynomial of weight `w` with small coefficients.
fn poly_of_weight(table: Arc<GenTable>, w: u32) -> impl Strategy<Value = GradedPoly> {
    let monos = monomials_of_weight(&table, w);
    prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
        let terms = monos.iter().cloned().zip(cs).map(|(m, c)| (m, Q::from_integer(c.into())));
        GradedPoly::from_terms(&table, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_invariant_under_permutation(
        (m, r, c) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (matrix(r, c), shuffle(r), shuffle(c)))
    ) {
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&permuted(&m, &r, &c)));
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&m.transpose()));
    }

    /// Reordering the basis of the middle term does not change the
    /// subquotient `ker d_out / im d_in`.
    #[test]
    fn subquotient_invariant_under_basis_order(
        (a, b, perm) in (1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(k, n, l)| (matrix(n, k), matrix(l, n), shuffle(n)))
    ) {
        // keep d_out only when it composes to zero with d_in
        let d_in = a;
        let d_out = {
            let prod = b.mul(&d_in).unwrap();
            if prod.is_zero() { b } else { IntMatrix::zeros(b.rows(), b.cols()) }
        };
        let h = subquotient_group(&d_in, &d_out).unwrap().group;
        let all_rows: Vec<usize> = (0..d_out.rows()).collect();
        let all_cols: Vec<usize> = (0..d_in.cols()).collect();
        let h2 = subquotient_group(&d_in.select(&perm, &all_cols), &d_out.select(&all_rows, &perm)).unwrap().group;
        prop_assert_eq!(h, h2);
    }

    #[test]
    fn polynomial_ring_axioms(
        (p, q, r) in (0u32..=3, 0u32..=3, 0u32..=3).prop_flat_map(|(a, b, c)| {
            let t = plain_table(B, 3);
            (poly_of_weight(t.clone(), a), poly_of_weight(t.clone(), b), poly_of_weight(t, c))
        })
    ) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        if q.homogeneous_weight() == r.homogeneous_weight() || q.is_zero() || r.is_zero() {
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }
    }

    #[test]
    fn exterior_signs_graded_commute(
        s in prop::collection::btree_set(0u16..8, 0..4),
        t in prop::collection::btree_set(0u16..8, 0..4),
    ) {
        let s: Vec<u16> = s.into_iter().collect();
        let t: Vec<u16> = t.into_iter().collect();
        match (merge_sign(&s, &t), merge_sign(&t, &s)) {
            (Some((a, u)), Some((b, v))) => {
                prop_assert_eq!(u, v);
                let sign = if (s.len() * t.len()).is_multiple_of(2) { 1 } else { -1 };
                prop_assert_eq!(a, sign * b);
            }
            (None, None) => prop_assert!(s.iter().any(|x| t.contains(x))),
            _ => prop_assert!(false, "asymmetric overlap"),
        }
    }

    #[test]
    fn reversion_is_an_involution(cs in prop::collection::vec(-5i64..=5, 5)) {
        let t = plain_table(B, 1);
        let f = TruncatedSeries::strict(&t, 6, |k| GradedPoly::constant(&t, Q::from_integer(BigInt::from(cs[k - 1]))));
        let g = comp_inverse(&f).unwrap();
        prop_assert_eq!(comp_inverse(&g).unwrap(), f);
    }

    /// `sigma(xy) = (-1)^{|y|} sigma(x) y + x sigma(y)` with `|y|` the
    /// exterior count, and `sigma^2 = 0`, on random basis elements.
    #[test]
    fn sigma_is_a_graded_derivation(
        split in any::<bool>(),
        i in 0usize..64, j in 0usize..64,
        dx in 0u32..=6, dy in 0u32..=6,
    ) {
        let flavor = if split { CoordFlavor::AbsoluteB } else { CoordFlavor::MovingC };
        let c = ThhComplex::mu(flavor, 6).unwrap();
        let pick = |d: u32, k: usize| -> Option<ExtElement> {
            let all: Vec<_> = c.q_range(d).flat_map(|q| c.basis(d, q)).collect();
            (!all.is_empty()).then(|| c.element(&all[k % all.len()]))
        };
        if let (Some(x), Some(y)) = (pick(dx, i), pick(dy, j)) {
            let s = c.sigma();
            let q = y.exterior_count().unwrap();
            let lhs = s.apply(&(&x * &y));
            let first = &s.apply(&x) * &y;
            let first = if q % 2 == 0 { first } else { first.neg() };
            let rhs = &first + &(&x * &s.apply(&y));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(s.apply(&s.apply(&(&x * &y))).is_zero());
        }
    }
}

#[test]
fn monomial_order_is_canonical() {
    let t = plain_table(B, 4);
    let ms = monomials_of_weight(&t, 4);
    let mut sorted = ms.clone();
    sorted.sort();
    assert_eq!(ms, sorted);
    assert_eq!(ms.len(), 5);
    assert!(ms.iter().all(|m: &Monomial| m.weight() == 4));
}
