use equigeo::chevalley::{build_algebra, build_from_label, chevalley_constants, compact_form, so_matrix_algebra, su_matrix_algebra, JacobiScope};
use equigeo::linalg::{self, parse_vec, q, Echelon, Q};
use equigeo::rootsys::{CartanType, RootSystem};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ct(s: &str) -> CartanType {
    CartanType::parse(s).unwrap()
}

#[test]
fn g2_simple_pair_constant() {
    let rs = RootSystem::new(ct("G2"));
    let sc = chevalley_constants(&rs);
    let a1 = rs.root_index(&rs.simple_roots()[0]).unwrap();
    let a2 = rs.root_index(&rs.simple_roots()[1]).unwrap();
    // Oracle: the α1-string through α2 starts at α2 (α2 − α1 is not a root), so p = 0.
    assert!(!rs.is_root(&linalg::sub(&rs.simple_roots()[1], &rs.simple_roots()[0])));
    assert_eq!(sc.get(a1, a2).abs(), 1);
    sc.verify_magnitudes().unwrap();
}

#[test]
fn a1_has_no_constants() {
    let sc = chevalley_constants(&RootSystem::new(ct("A1")));
    assert!(sc.positive_entries().is_empty());
}

#[test]
fn magnitudes_follow_root_strings() {
    for label in ["A3", "B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8"] {
        let sc = chevalley_constants(&RootSystem::new(ct(label)));
        sc.verify_magnitudes().unwrap_or_else(|e| panic!("{label}: {e}"));
        for a in 0..sc.root_system().all_roots().len() {
            for b in 0..sc.root_system().all_roots().len() {
                assert_eq!(sc.get(a, b), -sc.get(b, a));
                let (na, nb) = (sc.root_system().negate_index(a), sc.root_system().negate_index(b));
                assert_eq!(sc.get(na, nb), -sc.get(a, b));
            }
        }
    }
}

#[test]
fn dimensions() {
    for (label, dim) in [("A1", 3), ("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248)] {
        assert_eq!(build_algebra(&[ct(label)]).dim(), dim, "{label}");
    }
    assert_eq!(so_matrix_algebra(3).dim(), 3);
    assert_eq!(so_matrix_algebra(7).dim(), 21);
    assert_eq!(so_matrix_algebra(12).dim(), 66);
    assert_eq!(su_matrix_algebra(6).dim(), 35);
}

#[test]
fn exhaustive_jacobi_on_small_algebras() {
    for label in ["A1", "A2", "B2", "G2", "A1+A1", "B3", "C3", "A4", "D4", "F4"] {
        let g = build_from_label(label).unwrap();
        let s = g.verify_default(7);
        assert_eq!(s.scope, JacobiScope::Exhaustive);
        assert!(s.passed(), "{label}: {s:?}");
    }
    for n in [3, 4, 5, 7] {
        let g = so_matrix_algebra(n);
        assert!(g.verify_default(7).passed());
    }
    assert!(su_matrix_algebra(3).verify_default(7).passed());
}

#[test]
fn sampled_jacobi_on_large_algebras() {
    for label in ["E6", "E7", "E8"] {
        let g = build_from_label(label).unwrap();
        let s = g.verify_default(2024);
        assert_eq!(s.scope, JacobiScope::Sampled(10_000));
        assert!(s.passed(), "{label}: {s:?}");
    }
}

#[test]
fn bi_form_is_rescaled_negative_killing() {
    for label in ["A1", "A2", "B2", "G2", "A1+A1", "G2+A1", "B3"] {
        let g = build_from_label(label).unwrap();
        let k = g.killing_by_trace();
        let want = linalg::mat_scale(&-g.bi_scale().clone(), &k);
        assert_eq!(g.bi_form(), &want, "{label}");
        assert!(linalg::is_positive_definite(g.bi_form()));
        // Torus and root planes are orthogonal.
        let r = g.root_system().unwrap().rank();
        for i in 0..r {
            for j in r..g.dim() {
                assert!(g.bi_form()[i][j].is_zero());
            }
        }
    }
}

#[test]
fn so_matrix_form_is_trace_form() {
    for n in [3, 5, 6, 7] {
        let g = so_matrix_algebra(n);
        let d = g.dim();
        let factor = g.bi_scale() * q(n as i64 - 2);
        for i in 0..d {
            for j in 0..d {
                let t = g.neg_trace_form(&linalg::unit(d, i), &linalg::unit(d, j)).unwrap();
                assert_eq!(g.bi_form()[i][j], &factor * t);
            }
        }
    }
}

#[test]
fn su2_bracket_lands_in_cartan() {
    let g = build_algebra(&[ct("A1")]);
    let u = linalg::unit(3, 1);
    let v = linalg::unit(3, 2);
    let b = g.bracket(&u, &v).unwrap();
    assert!(!b[0].is_zero());
    assert!(b[1].is_zero() && b[2].is_zero());
    assert!(linalg::is_zero_vec(&g.bracket(&u, &u).unwrap()));
    assert!(g.bracket(&u, &[q(1)]).is_err());
}

#[test]
fn torus_is_orthogonal_to_root_planes() {
    let g = build_algebra(&[ct("B2")]);
    let h1 = linalg::unit(g.dim(), 0);
    for j in 2..g.dim() {
        assert!(g.killing(&h1, &linalg::unit(g.dim(), j)).unwrap().is_zero());
    }
}

#[test]
fn witness_centralizers() {
    let g = build_algebra(&[ct("A5")]);
    let x = g.cartan_element(&parse_vec("1 -1 2 -2 -3 3").unwrap()).unwrap();
    assert_eq!(g.centralizer(&x).unwrap().len(), 5);
    let g = build_algebra(&[ct("C2")]);
    let x = g.cartan_element(&parse_vec("2 1").unwrap()).unwrap();
    assert_eq!(g.centralizer(&x).unwrap().len(), 2);
    let zero = linalg::zeros(g.dim());
    assert_eq!(g.centralizer(&zero).unwrap().len(), g.dim());
    // Not in the span of the A5 roots.
    let a5 = build_algebra(&[ct("A5")]);
    assert!(a5.cartan_element(&parse_vec("1 0 0 0 0 0").unwrap()).is_err());
}

#[test]
fn centralizer_matches_root_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for label in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
        let g = build_from_label(label).unwrap();
        let rs = g.root_system().unwrap().clone();
        for _ in 0..15 {
            // Random small integer combination of simple roots, often singular.
            let c: Vec<Q> = (0..rs.rank()).map(|_| q(rng.gen_range(-1..=1))).collect();
            let u = linalg::combine(&c, rs.simple_roots(), rs.dim());
            let x = g.cartan_element(&u).unwrap();
            let oracle = rs.rank() + rs.orthogonal_subsystem(&u).len();
            assert_eq!(g.centralizer(&x).unwrap().len(), oracle, "{label}");
        }
    }
}

#[test]
fn simple_ideals_of_sums_and_so4() {
    let g = build_from_label("A1+A1").unwrap();
    let ideals = g.simple_ideals();
    assert_eq!(ideals.iter().map(|i| i.basis.len()).collect::<Vec<_>>(), vec![3, 3]);

    let g = so_matrix_algebra(4);
    let ideals = g.simple_ideals();
    assert_eq!(ideals.len(), 2);
    // Oracle: so(4) = span(L12+L34, L13−L24, L14+L23) ⊕ span(L12−L34, L13+L24, L14−L23).
    // Basis order: L12 L13 L14 L23 L24 L34.
    let plus = ["1 0 0 0 0 1", "0 1 0 0 -1 0", "0 0 1 1 0 0"];
    let minus = ["1 0 0 0 0 -1", "0 1 0 0 1 0", "0 0 1 -1 0 0"];
    let span = |vs: &[Vec<Q>]| {
        let mut e = Echelon::new(6);
        for v in vs {
            e.insert_dense(v);
        }
        let mut b = e.basis();
        b.sort();
        b
    };
    let want: Vec<Vec<Vec<Q>>> = [plus, minus].iter().map(|s| span(&s.iter().map(|x| parse_vec(x).unwrap()).collect::<Vec<_>>())).collect();
    let got: Vec<Vec<Vec<Q>>> = ideals.iter().map(|i| span(&i.basis)).collect();
    assert!(want.iter().all(|w| got.contains(w)));
    let g = build_algebra(&[ct("G2")]);
    assert_eq!(g.simple_ideals().len(), 1);
}

#[test]
fn compact_form_is_deterministic() {
    let rs = RootSystem::new(ct("F4"));
    let a = compact_form(&chevalley_constants(&rs));
    let b = compact_form(&chevalley_constants(&rs));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            assert_eq!(a.basis_bracket(i, j), b.basis_bracket(i, j));
        }
    }
}
