#![allow(dead_code)]

use std::sync::Arc;

use equigeo::chevalley::{build_from_label, so_matrix_algebra, CompactLieAlgebra};
use equigeo::linalg::{self, q, Q};
use equigeo::pairs::{tensor_product_embedding, three_form_stabilizer, EmbeddingSpec, ReductivePair};

pub use equigeo::pairfile::G2_FORM;

pub fn long_roots(g: &CompactLieAlgebra) -> Vec<Vec<Q>> {
    let rs = g.root_system().unwrap();
    let max = rs.all_roots().iter().map(|r| rs.inner(r, r)).max().unwrap();
    rs.all_roots().iter().filter(|r| rs.inner(r, r) == max).cloned().collect()
}

pub fn g2_su3() -> ReductivePair {
    let g = Arc::new(build_from_label("G2").unwrap());
    let rs = g.root_system().unwrap().clone();
    let spec = EmbeddingSpec::Regular { roots: long_roots(&g), torus: rs.simple_roots().to_vec() };
    ReductivePair::new("g2-su3", g, &spec).unwrap()
}

pub fn so7_g2() -> ReductivePair {
    let g = Arc::new(so_matrix_algebra(7));
    let images = three_form_stabilizer(&g, 7, &G2_FORM).unwrap();
    ReductivePair::new("so7-g2", g, &EmbeddingSpec::Explicit { images }).unwrap()
}

pub fn su6_su2su3() -> ReductivePair {
    let (g, images) = tensor_product_embedding(2, 3).unwrap();
    ReductivePair::new("su6-su2su3", Arc::new(g), &EmbeddingSpec::Explicit { images }).unwrap()
}

/// Weighted diagonal copies `(w_1 x, …, w_k x)` of the basis of su(2) in a sum of k copies.
pub fn weighted_diagonal(g: &CompactLieAlgebra, w: &[i64]) -> Vec<Vec<Q>> {
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

/// Embeds per-copy su(2) elements (coordinates h, u, v) into a sum of copies.
pub fn place(g: &CompactLieAlgebra, parts: &[Vec<Q>]) -> Vec<Q> {
    let rs = g.root_system().unwrap();
    let mut x = linalg::zeros(g.dim());
    for (c, p) in parts.iter().enumerate() {
        let (u, v) = g.root_plane(rs.root_index(&rs.simple_roots()[c]).unwrap()).unwrap();
        x[c] = p[0].clone();
        x[u] = p[1].clone();
        x[v] = p[2].clone();
    }
    x
}

pub fn su2_cubed_diagonal() -> ReductivePair {
    let g = Arc::new(build_from_label("A1+A1+A1").unwrap());
    let images = weighted_diagonal(&g, &[1, 1, 1]);
    ReductivePair::new("su2-cubed-diag", g, &EmbeddingSpec::Explicit { images }).unwrap()
}

pub fn swap_pair() -> ReductivePair {
    let g = Arc::new(build_from_label("A1+A1").unwrap());
    // Basis h1 h2 followed by the two root planes; swapping copies swaps them pairwise.
    let perm = [1, 0, 4, 5, 2, 3];
    let mut m = vec![linalg::zeros(6); 6];
    for (j, &i) in perm.iter().enumerate() {
        m[i][j] = q(1);
    }
    ReductivePair::new("swap", g, &EmbeddingSpec::Involution { matrix: m }).unwrap()
}

pub fn group_pair(label: &str) -> ReductivePair {
    ReductivePair::group(label, Arc::new(build_from_label(label).unwrap()))
}

/// Integer combination of the m basis.
pub fn m_vector(p: &ReductivePair, coeffs: &[i64]) -> Vec<Q> {
    let c: Vec<Q> = coeffs.iter().map(|&x| q(x)).collect();
    p.from_m_coords(&c)
}
