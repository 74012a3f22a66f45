use std::sync::Arc;

use equigeo::chevalley::{build_from_label, so_matrix_algebra, CompactLieAlgebra};
use equigeo::linalg::{self, q, Echelon, Q};
use equigeo::pairfile::G2_FORM;
use equigeo::pairs::{
    isotypic_split, local_decompose, symmetric_pair_test, three_form_stabilizer, EmbeddingSpec, ReductivePair, SplitVerdict,
};
use equigeo::Error;
use num_traits::Zero;

fn long_roots(g: &CompactLieAlgebra) -> Vec<Vec<Q>> {
    let rs = g.root_system().unwrap();
    let max = rs.all_roots().iter().map(|r| rs.inner(r, r)).max().unwrap();
    rs.all_roots().iter().filter(|r| rs.inner(r, r) == max).cloned().collect()
}

fn g2_su3() -> ReductivePair {
    let g = Arc::new(build_from_label("G2").unwrap());
    let rs = g.root_system().unwrap().clone();
    let spec = EmbeddingSpec::Regular { roots: long_roots(&g), torus: rs.simple_roots().to_vec() };
    ReductivePair::new("g2-su3", g, &spec).unwrap()
}

fn so7_g2() -> ReductivePair {
    let g = Arc::new(so_matrix_algebra(7));
    let images = three_form_stabilizer(&g, 7, &G2_FORM).unwrap();
    ReductivePair::new("so7-g2", g, &EmbeddingSpec::Explicit { images }).unwrap()
}

/// Diagonal su(2) in k copies of su(2): sums of corresponding basis vectors,
/// with copy `c` weighted by `w[c]`.
fn weighted_diagonal(g: &CompactLieAlgebra, w: &[i64]) -> Vec<Vec<Q>> {
    let rs = g.root_system().unwrap();
    let n = g.dim();
    let mut out = vec![linalg::zeros(n); 3];
    for (c, wc) in w.iter().enumerate() {
        let (u, v) = g.root_plane(rs.root_index(&rs.simple_roots()[c]).unwrap()).unwrap();
        out[0][c] = q(*wc);
        out[1][u] = q(*wc);
        out[2][v] = q(*wc);
    }
    out
}

fn is_invariant(pair: &ReductivePair, sub: &[Vec<Q>]) -> bool {
    let e = Echelon::from_dense(pair.g().dim(), sub);
    pair.h_basis().iter().all(|x| sub.iter().all(|y| e.contains(&pair.g().bracket(x, y).unwrap())))
}

#[test]
fn identity_embedding_has_zero_m() {
    let g = Arc::new(build_from_label("B2").unwrap());
    let rs = g.root_system().unwrap().clone();
    let spec = EmbeddingSpec::Regular { roots: rs.all_roots().to_vec(), torus: rs.simple_roots().to_vec() };
    let p = ReductivePair::new("b2", g, &spec).unwrap();
    assert_eq!((p.dim_h(), p.dim_m()), (10, 0));
    assert!(symmetric_pair_test(&p).unwrap());
    assert_eq!(isotypic_split(&p).unwrap().verdict, SplitVerdict::Empty);
}

#[test]
fn g2_long_roots_give_su3() {
    let p = g2_su3();
    assert_eq!((p.dim_h(), p.dim_m()), (8, 6));
    p.verify().unwrap();
    assert!(!symmetric_pair_test(&p).unwrap());
    // Long roots of G2 form an A2 subsystem.
    let g = p.g();
    let types = equigeo::rootsys::classify_subsystem(g.root_system().unwrap().gram(), &long_roots(g)).unwrap();
    assert_eq!(equigeo::rootsys::types_label(&types), "A2");
}

#[test]
fn short_roots_are_not_closed() {
    let g = Arc::new(build_from_label("G2").unwrap());
    let rs = g.root_system().unwrap().clone();
    let max = rs.all_roots().iter().map(|r| rs.inner(r, r)).max().unwrap();
    let short: Vec<Vec<Q>> = rs.all_roots().iter().filter(|r| rs.inner(r, r) < max).cloned().collect();
    let spec = EmbeddingSpec::Regular { roots: short, torus: vec![] };
    assert!(matches!(ReductivePair::new("bad", g, &spec), Err(Error::NotClosed(_))));
}

#[test]
fn g2_in_so7_annihilates_the_form() {
    let g = so_matrix_algebra(7);
    let images = three_form_stabilizer(&g, 7, &G2_FORM).unwrap();
    assert_eq!(images.len(), 14);
    // Independent oracle: evaluate X·ω(e_i, e_j, e_k) with explicit 7×7 matrices.
    let omega = |i: usize, j: usize, k: usize| -> i64 {
        let mut s = 0;
        for t in G2_FORM {
            let t = [t[0] - 1, t[1] - 1, t[2] - 1];
            for (perm, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)] {
                if [i, j, k] == [t[perm[0]], t[perm[1]], t[perm[2]]] {
                    s += sign;
                }
            }
        }
        s
    };
    for x in &images {
        let m = g.matrix_of(x).unwrap();
        let col = |v: usize| -> Vec<Q> { (0..7).map(|r| m.get(r, v).re).collect() };
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    let mut s = Q::zero();
                    for r in 0..7 {
                        s += &col(i)[r] * q(omega(r, j, k)) + &col(j)[r] * q(omega(i, r, k)) + &col(k)[r] * q(omega(i, j, r));
                    }
                    assert!(s.is_zero());
                }
            }
        }
    }
}

#[test]
fn so7_over_g2_is_irreducible_seven() {
    let p = so7_g2();
    assert_eq!((p.dim_h(), p.dim_m()), (14, 7));
    p.verify().unwrap();
    assert!(!symmetric_pair_test(&p).unwrap());
    let s = isotypic_split(&p).unwrap();
    assert_eq!(s.commutant_dim, 1);
    assert_eq!(s.verdict, SplitVerdict::Irreducible);
    assert_eq!(s.summands.len(), 1);
    assert_eq!(s.summands[0].basis.len(), 7);
}

#[test]
fn g2_over_su3_is_not_proven_irreducible() {
    let s = isotypic_split(&g2_su3()).unwrap();
    // The 6-dimensional isotropy module is of complex type.
    assert_eq!(s.commutant_dim, 2);
    assert_eq!(s.summands.len(), 1);
    assert_eq!(s.verdict, SplitVerdict::Indeterminate);
}

#[test]
fn diagonal_in_three_copies_splits() {
    let g = Arc::new(build_from_label("A1+A1+A1").unwrap());
    let images = weighted_diagonal(&g, &[1, 1, 1]);
    let p = ReductivePair::new("diag", g.clone(), &EmbeddingSpec::Explicit { images }).unwrap();
    assert_eq!(p.dim_m(), 6);
    p.verify().unwrap();
    // Oracle: the (x, x, −2x) combinations form an invariant 3-dimensional subspace of m.
    let oracle = weighted_diagonal(&g, &[1, 1, -2]);
    assert!(oracle.iter().all(|w| linalg::is_zero_vec(&p.pr_h(w).unwrap())));
    assert!(is_invariant(&p, &oracle));

    let s = isotypic_split(&p).unwrap();
    assert!(matches!(s.verdict, SplitVerdict::Reducible { .. }));
    assert_eq!(s.summands.iter().map(|x| x.basis.len()).collect::<Vec<_>>(), vec![3, 3]);
    for a in &s.summands {
        assert!(is_invariant(&p, &a.basis));
    }
    for x in &s.summands[0].basis {
        for y in &s.summands[1].basis {
            assert!(g.inner(x, y).is_zero());
        }
    }
}

fn swap_matrix() -> Vec<Vec<Q>> {
    // su(2) + su(2): basis h1 h2 u1 v1 u2 v2.
    let perm = [1, 0, 4, 5, 2, 3];
    let mut m = vec![linalg::zeros(6); 6];
    for (j, &i) in perm.iter().enumerate() {
        m[i][j] = q(1);
    }
    m
}

#[test]
fn swap_involution_gives_symmetric_pair() {
    let g = Arc::new(build_from_label("A1+A1").unwrap());
    let p = ReductivePair::new("swap", g.clone(), &EmbeddingSpec::Involution { matrix: swap_matrix() }).unwrap();
    assert_eq!((p.dim_h(), p.dim_m()), (3, 3));
    assert!(symmetric_pair_test(&p).unwrap());
    let d = local_decompose(&p).unwrap();
    let f = d.failure.expect("diagonal does not split");
    assert_eq!((f.projection_dim, f.intersection_dim), (3, 0));
    assert_eq!(d.factors.len(), 1);
}

#[test]
fn non_involution_is_rejected() {
    let g = Arc::new(build_from_label("A1+A1").unwrap());
    let mut m = linalg::identity(6);
    m[2][2] = q(-1);
    assert!(matches!(ReductivePair::new("bad", g, &EmbeddingSpec::Involution { matrix: m }), Err(Error::NotInvolution(_))));
}

#[test]
fn explicit_images_must_close() {
    let g = Arc::new(build_from_label("A2").unwrap());
    let n = g.dim();
    let spec = EmbeddingSpec::Explicit { images: vec![linalg::unit(n, 2), linalg::unit(n, 3)] };
    assert!(matches!(ReductivePair::new("bad", g, &spec), Err(Error::NotSubalgebra(_))));
}

#[test]
fn block_pair_decomposes_into_two_factors() {
    let g = Arc::new(build_from_label("G2+A1").unwrap());
    let rs = g.root_system().unwrap().clone();
    let max = rs.inner(&rs.simple_roots()[1], &rs.simple_roots()[1]).max(rs.inner(&rs.simple_roots()[0], &rs.simple_roots()[0]));
    // Long roots of the G2 component together with the A1 roots.
    let a1 = rs.simple_roots()[2].clone();
    let mut roots: Vec<Vec<Q>> = rs
        .all_roots()
        .iter()
        .filter(|r| rs.inner(r, &a1).is_zero() && rs.inner(r, r) == max)
        .cloned()
        .collect();
    roots.push(a1.clone());
    roots.push(a1.iter().map(|x| -x).collect());
    let spec = EmbeddingSpec::Regular { roots, torus: rs.simple_roots().to_vec() };
    let p = ReductivePair::new("block", g.clone(), &spec).unwrap();
    assert_eq!((g.dim(), p.dim_h()), (17, 11));
    let d = local_decompose(&p).unwrap();
    assert!(d.failure.is_none());
    assert_eq!(d.factors.len(), 2);
    let dims: Vec<(usize, usize)> = d.factors.iter().map(|f| (f.pair.g().dim(), f.pair.dim_h())).collect();
    assert_eq!(dims.iter().map(|x| x.0).sum::<usize>(), 17);
    assert_eq!(dims.iter().map(|x| x.1).sum::<usize>(), 11);
    assert!(dims.contains(&(14, 8)) && dims.contains(&(3, 3)));
    for f in &d.factors {
        f.pair.verify().unwrap();
    }
}

#[test]
fn simple_algebra_is_its_own_factor() {
    let d = local_decompose(&so7_g2()).unwrap();
    assert!(d.failure.is_none());
    assert_eq!(d.factors.len(), 1);
    assert_eq!(d.factors[0].pair.dim_m(), 7);
}

#[test]
fn torus_only_pairs_refuse_full_operations() {
    let g = Arc::new(build_from_label("C2").unwrap());
    let spec = EmbeddingSpec::TorusRestricted { torus: vec![vec![q(1), q(-2)]], dim_h: Some(4) };
    let p = ReductivePair::new("t", g, &spec).unwrap();
    assert!(p.is_torus_only());
    assert_eq!(p.dim_m(), 6);
    assert_eq!(p.torus_m().len(), 1);
    assert!(matches!(symmetric_pair_test(&p), Err(Error::TorusOnly(_))));
    assert!(matches!(isotypic_split(&p), Err(Error::TorusOnly(_))));
    assert!(matches!(local_decompose(&p), Err(Error::TorusOnly(_))));
}

#[test]
fn projectors_sum_to_identity() {
    let p = g2_su3();
    let ph = p.projector_h().unwrap();
    let pm = p.projector_m().unwrap();
    assert_eq!(linalg::mat_add(ph, &pm), linalg::identity(14));
    assert_eq!(linalg::mat_mul(ph, ph), *ph);
    // t ∩ h is the full torus here.
    assert_eq!(p.torus_h().len(), 2);
    assert!(p.torus_m().is_empty());
}
