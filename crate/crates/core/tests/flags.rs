use equigeo::chevalley::build_from_label;
use equigeo::flags::{centralizer_type, enumerate_strata, max_centralizer_with_center, strata_records, strata_text};
use equigeo::linalg::{parse_vec, q, Q};
use equigeo::rootsys::{parse_types_label, CartanType, RootSystem};
use equigeo::Error;
use proptest::prelude::*;

fn rs(label: &str) -> RootSystem {
    RootSystem::new(CartanType::parse(label).unwrap())
}

fn types(label: &str) -> Vec<CartanType> {
    parse_types_label(label).unwrap()
}

#[test]
fn zero_vector_is_degenerate_full_algebra() {
    let r = rs("F4");
    let t = centralizer_type(&r, &vec![q(0); 4]).unwrap();
    assert!(t.degenerate);
    assert_eq!((t.center_dim, t.total_dim), (0, 52));
    assert_eq!(t.components, types("F4"));
}

#[test]
fn d6_weighted_vector() {
    let r = rs("D6");
    let u = parse_vec("1 1 2 2 -3 -3").unwrap();
    // Oracle: ±e_i ± e_j is orthogonal to u iff u_i = ±u_j for the matching sign.
    let mut orth = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            orth += 2 * (u[i] == u[j]) as usize + 2 * (u[i] == -u[j].clone()) as usize;
        }
    }
    let t = centralizer_type(&r, &u).unwrap();
    assert_eq!(t.total_dim, 6 + orth);
    assert_eq!((t.center_dim, t.total_dim), (3, 12));
    assert_eq!(t.components, types("A1+A1+A1"));
}

#[test]
fn e7_appendix_vector_has_so8_centralizer() {
    let r = rs("E7");
    // 7(e1 + 3e2 + f7) + 5(e3 − e4 − e5 − e6), with f7 = √2·e7.
    let u = parse_vec("7 21 5 -5 -5 -5 7").unwrap();
    let t = centralizer_type(&r, &u).unwrap();
    assert_eq!((t.center_dim, t.total_dim), (3, 31));
    assert_eq!(t.components, types("D4"));
    let g = build_from_label("E7").unwrap();
    assert_eq!(g.centralizer(&g.cartan_element(&u).unwrap()).unwrap().len(), 31);
}

#[test]
fn a1_has_two_strata() {
    let s = enumerate_strata(&rs("A1")).unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!((s[0].centralizer.total_dim, s[0].orbit_dim), (1, 2));
    assert_eq!((s[1].centralizer.total_dim, s[1].orbit_dim), (3, 0));
}

#[test]
fn f4_center_one_strata() {
    let r = rs("F4");
    let s = enumerate_strata(&r).unwrap();
    let c1: Vec<_> = s.iter().filter(|s| s.centralizer.center_dim == 1).collect();
    let max = c1.iter().map(|s| s.centralizer.total_dim).max().unwrap();
    assert_eq!(max, 22);
    for s in c1.iter().filter(|s| s.centralizer.total_dim == 22) {
        assert_eq!(s.orbit_dim + 1, 31);
        assert!(s.centralizer.components == types("B3") || s.centralizer.components == types("C3"));
    }
}

#[test]
fn exceptional_center_three_bounds() {
    let (m, w) = max_centralizer_with_center(&rs("E7"), 3).unwrap();
    assert_eq!(m, 31);
    assert!(w.iter().all(|s| s.centralizer.components == types("D4")));
    let (m, w) = max_centralizer_with_center(&rs("E8"), 3).unwrap();
    assert_eq!(m, 48);
    assert!(w.iter().all(|s| s.centralizer.components == types("D5")));
    assert_eq!(max_centralizer_with_center(&rs("E7"), 4).unwrap().0, 19);
}

#[test]
fn center_bound_is_monotone_and_checked() {
    for label in ["G2", "F4", "E6", "B4", "C3"] {
        let r = rs(label);
        assert_eq!(max_centralizer_with_center(&r, 0).unwrap().0, r.algebra_dim());
        let maxes: Vec<usize> = (0..=r.rank()).map(|c| max_centralizer_with_center(&r, c).unwrap().0).collect();
        assert!(maxes.windows(2).all(|w| w[0] >= w[1]), "{label}: {maxes:?}");
        assert_eq!(*maxes.last().unwrap(), r.rank());
        assert!(matches!(
            max_centralizer_with_center(&r, r.rank() + 1),
            Err(Error::CenterBound { .. })
        ));
    }
}

#[test]
fn strata_invariants() {
    for label in ["A4", "B3", "C4", "D5", "G2", "F4", "E6"] {
        let r = rs(label);
        let strata = enumerate_strata(&r).unwrap();
        assert_eq!(strata.iter().map(|s| s.multiplicity).sum::<usize>(), 1 << r.rank());
        for s in &strata {
            assert_eq!(s.orbit_dim % 2, 0);
            assert_eq!(s.orbit_dim + s.centralizer.total_dim, r.algebra_dim());
            assert_eq!(s.centralizer.total_dim, s.centralizer.center_dim + s.centralizer.semisimple_dim());
        }
        let regular = strata.iter().find(|s| s.subset.is_empty()).unwrap();
        assert_eq!(regular.centralizer.total_dim, r.rank());
        let full = strata.iter().find(|s| s.subset.len() == r.rank()).unwrap();
        assert_eq!(full.centralizer.total_dim, r.algebra_dim());
    }
}

#[test]
fn stratum_exports_are_aligned() {
    let s = enumerate_strata(&rs("B2")).unwrap();
    let text = strata_text(&s);
    assert_eq!(text.lines().count(), s.len() + 1);
    assert_eq!(strata_records(&s).lines().count(), s.len());
    assert!(strata_records(&s).contains("\tB2\t0\t10\t0\t"));
}

fn small_coords() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-2i64..=2, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn centralizer_type_matches_kernel(c in small_coords(), which in 0usize..5) {
        let label = ["A3", "B3", "C3", "G2", "D4"][which];
        let g = build_from_label(label).unwrap();
        let r = g.root_system().unwrap().clone();
        let u: Vec<Q> = (0..r.rank())
            .map(|i| q(c[i]))
            .zip(r.simple_roots())
            .fold(vec![q(0); r.dim()], |acc, (x, a)| equigeo::linalg::add(&acc, &equigeo::linalg::scale(&x, a)));
        let t = centralizer_type(&r, &u).unwrap();
        prop_assert_eq!(t.total_dim, g.centralizer(&g.cartan_element(&u).unwrap()).unwrap().len());
        prop_assert_eq!(t.total_dim, t.center_dim + t.semisimple_dim());
    }
}
