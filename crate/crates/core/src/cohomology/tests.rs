use super::*;
use crate::exactalg::parse_poly;

fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.try_into().unwrap()).collect()).collect()
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn moving_matrices_and_labels() {
    let c = ThhComplex::mu(CoordFlavor::MovingC, 5).unwrap();
    let m = c.differential(4, 0).unwrap();
    assert_eq!(int_rows(&m), vec![vec![-4, -4], vec![0, -3]]);
    assert_eq!(m.col_labels(), ["x_1^2", "x_2"]);
    assert_eq!(m.row_labels(), ["x_1*lambda'_1", "lambda'_2"]);
    let m = c.differential(7, 1).unwrap();
    assert_eq!(int_rows(&m), vec![vec![0, -3, 2, 0]]);
    let m = c.differential(8, 0).unwrap();
    let want = vec![
        vec![-8, -4, -5, 0, 0],
        vec![0, -4, -4, -8, 4],
        vec![0, 0, -2, 0, -8],
        vec![0, -3, -6, 0, -3],
        vec![0, 0, 0, -6, -6],
        vec![0, 0, -2, 0, -8],
        vec![0, 0, 0, 0, -5],
    ];
    assert_eq!(int_rows(&m), want);
    let m = c.differential(9, 1).unwrap();
    assert_eq!(int_rows(&m), vec![vec![0, -3, -6, 4, 4, 0, 0], vec![0, 0, -2, 0, 0, 2, 0]]);
    let z = c.assemble(0).unwrap();
    assert_eq!(z.blocks.len(), 1);
    assert_eq!(z.blocks[0].labels, ["1"]);
    assert!(z.blocks[0].outgoing.is_zero());
}

#[test]
fn moving_table_through_ten() {
    let (_, t) = cohomology_groups(CoordFlavor::MovingC, 10).unwrap();
    let shown: Vec<String> = t.iter().map(|h| h.group.to_string()).collect();
    let want = ["Z", "0", "0", "Z/2", "0", "Z/12", "0", "Z/12", "0", "Z/2 + Z/240", "Z/2"];
    assert_eq!(shown, want);
    assert_eq!(t[9].group.primary_factors(), big(&[2, 16, 3, 5]));
}

#[test]
fn split_generators_decompose() {
    let (c, t) = cohomology_groups(CoordFlavor::AbsoluteB, 10).unwrap();
    let x = c.sigma().base_table();
    let e = |n| c.sigma().ext_gen(n);
    let p = |s: &str| c.sigma().from_base(&parse_poly(x, s).unwrap());
    let e4p = &(&e(4) - &(&p("x_1^2") * &e(2))) - &(&p("x_3") * &e(1));
    let e4pp = &(&p("x_1 x_2") * &e(1)) + &(&p("3x_2") * &e(2));
    assert!(t[9].is_decomposition(&[e4p, e4pp], &big(&[240, 2]), &c).unwrap());
    let e3p = &(&e(3) + &(&p("2x_1") * &e(2))) + &(&p("x_2") * &e(1));
    assert!(t[7].is_decomposition(&[e3p], &big(&[12]), &c).unwrap());
    let l13 = &e(1) * &e(3);
    assert!(t[10].is_decomposition(&[l13], &big(&[2]), &c).unwrap());
}

#[test]
fn bp_at_two() {
    let (c, t) = bp_cohomology_table(2, 10, false).unwrap();
    let shown: Vec<String> = t.iter().map(|h| h.group.to_string()).collect();
    let want = ["Z", "0", "0", "Z/2", "0", "Z/4", "0", "Z/4", "0", "Z/16", "Z/2"];
    assert_eq!(shown, want);
    let v = c.sigma().base_table();
    let p = |s: &str| c.sigma().from_base(&parse_poly(v, s).unwrap());
    let l = |n| c.sigma().ext_gen(n);
    let g = &(&p("v_2") * &l(1)) + &(&p("v_1") * &l(2));
    assert!(t[9].is_decomposition(&[g], &big(&[16]), &c).unwrap());
    assert!(bp_cohomology_table(2, 11, false).is_err());
    assert!(bp_cohomology_table(7, 10, false).is_err());
}

#[test]
fn rational_checks() {
    let c = ThhComplex::mu(CoordFlavor::MovingC, 5).unwrap();
    let t = c.cohomology_table(10).unwrap();
    let r = rational_collapse_check(&c, &t).unwrap();
    assert!(r.ok);
    assert!(r.row(10, 0).unwrap().injective);
    assert_eq!(r.row(10, 0).unwrap().dimension, 7);
    assert!(c.cohomology_table(11).is_err());
    let s = ThhComplex::mu(CoordFlavor::AbsoluteB, 4).unwrap();
    let t = s.cohomology_table(8).unwrap();
    assert!(rational_collapse_check(&s, &t).unwrap().ok);
}

#[test]
fn de_rham_single_generator_and_comparison() {
    let t = single_generator_table(12).unwrap();
    for (d, g) in t.iter().enumerate() {
        let want = match d {
            0 => "Z".to_string(),
            d if d >= 5 && d % 2 == 1 => format!("Z/{}", (d - 3) / 2 + 1),
            _ => "0".to_string(),
        };
        assert_eq!(g.to_string(), want, "degree {d}");
    }
    let r = de_rham_comparison(8).unwrap();
    assert!(r.chain_maps_hold());
    assert_eq!(r.thh[3], "Z/2");
    assert_eq!(r.lazard[3], "0");
}

#[test]
fn localization_keeps_prime_part() {
    let (c, t) = bp_cohomology_table(3, 14, false).unwrap();
    let p = |n: usize| t[n].group.to_string();
    assert_eq!((p(5), p(9), p(13), p(2)), ("Z/3".into(), "Z/3".into(), "Z/9".into(), "0".into()));
    let g = &t[13].classes().next().unwrap().element;
    assert_eq!(t[13].order_of(g, &c).unwrap(), BigInt::from(9));
}
