//! Embedded subalgebras `h ⊂ g`, the orthogonal reductive decomposition
//! `g = h + m`, isotypic splitting of `m` and local product decomposition.

use std::sync::Arc;

use num_traits::Zero;

use crate::chevalley::{commutant_basis, CompactLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix, Q};
use crate::rootsys::CartanType;

/// How `h` sits inside `g`.
#[derive(Clone, Debug, PartialEq)]
pub enum EmbeddingSpec {
    /// Root planes of a closed root subset plus a subspace of the Cartan
    /// subalgebra (vectors in the root system's ambient coordinates).
    Regular { roots: Vec<Vec<Q>>, torus: Vec<Vec<Q>> },
    /// Only `t ∩ h` is known; `dim_h` is the declared dimension of `h`.
    TorusRestricted { torus: Vec<Vec<Q>>, dim_h: Option<usize> },
    /// A basis of `h` given by its coordinates in `g`.
    Explicit { images: Vec<Vec<Q>> },
    /// An automorphism of `g` (acting on coordinate columns); `h` is its +1 eigenspace.
    Involution { matrix: Matrix },
}

/// `g = h + m` with `m` the bi-orthogonal complement of `h`.
#[derive(Clone, Debug)]
pub struct ReductivePair {
    name: String,
    g: Arc<CompactLieAlgebra>,
    h_basis: Vec<Vec<Q>>,
    m_basis: Vec<Vec<Q>>,
    torus_only: bool,
    torus_h: Vec<Vec<Q>>,
    torus_m: Vec<Vec<Q>>,
    declared_dim_h: Option<usize>,
    projector_h: Option<Matrix>,
    m_gram_inv: Option<Matrix>,
}

/// Checks that `span(basis)` is closed under the bracket.
pub fn check_subalgebra(g: &CompactLieAlgebra, basis: &[Vec<Q>]) -> Result<()> {
    let e = Echelon::from_dense(g.dim(), basis);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !e.contains(&g.bracket(&basis[i], &basis[j])?) {
                return Err(Error::NotSubalgebra(format!("[h{}, h{}] leaves the span", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Resolves an embedding to a verified basis of `h` (or of `t ∩ h` for torus-only specs).
pub fn resolve_embedding(g: &CompactLieAlgebra, spec: &EmbeddingSpec) -> Result<Vec<Vec<Q>>> {
    let n = g.dim();
    match spec {
        EmbeddingSpec::Regular { roots, torus } => {
            let rs = g.root_system().ok_or_else(|| Error::NotSubalgebra("regular embeddings need a root-system algebra".into()))?;
            let mut idx = Vec::new();
            for r in roots {
                let i = rs.root_index(r).ok_or_else(|| Error::NotClosed(format!("[{}] is not a root", linalg::fmt_vec(r))))?;
                idx.push(i);
            }
            for &i in &idx {
                if !idx.contains(&rs.negate_index(i)) {
                    return Err(Error::NotClosed("root set is not closed under negation".into()));
                }
                for &j in &idx {
                    let s = linalg::add(&rs.all_roots()[i], &rs.all_roots()[j]);
                    if let Some(k) = rs.root_index(&s) {
                        if !idx.contains(&k) {
                            return Err(Error::NotClosed(format!("sum [{}] missing", linalg::fmt_vec(&s))));
                        }
                    }
                }
            }
            let mut e = Echelon::new(n);
            let mut basis = Vec::new();
            for t in torus {
                let x = g.cartan_element(t)?;
                if e.insert_dense(&x) {
                    basis.push(x);
                }
            }
            let np = rs.positive_roots().len();
            let mut planes: Vec<usize> = idx.iter().filter(|&&i| i < np).copied().collect();
            planes.sort();
            for i in planes {
                let (a, b) = g.root_plane(i).unwrap();
                basis.push(linalg::unit(n, a));
                basis.push(linalg::unit(n, b));
            }
            check_subalgebra(g, &basis)?;
            Ok(basis)
        }
        EmbeddingSpec::TorusRestricted { torus, .. } => {
            let mut e = Echelon::new(n);
            let mut basis = Vec::new();
            for t in torus {
                let x = g.cartan_element(t)?;
                if e.insert_dense(&x) {
                    basis.push(x);
                }
            }
            Ok(basis)
        }
        EmbeddingSpec::Explicit { images } => {
            for v in images {
                g.check_len(v)?;
            }
            if linalg::rank(images) != images.len() {
                return Err(Error::NotSubalgebra("images are linearly dependent".into()));
            }
            check_subalgebra(g, images)?;
            Ok(images.clone())
        }
        EmbeddingSpec::Involution { matrix } => {
            if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, got: matrix.len() });
            }
            if linalg::mat_mul(matrix, matrix) != linalg::identity(n) {
                return Err(Error::NotInvolution("matrix does not square to the identity".into()));
            }
            let cols: Vec<Vec<Q>> = linalg::transpose(matrix);
            for i in 0..n {
                for j in i + 1..n {
                    let lhs = linalg::mat_vec(matrix, g.basis_bracket_dense(i, j).as_slice());
                    let rhs = g.bracket(&cols[i], &cols[j])?;
                    if lhs != rhs {
                        return Err(Error::NotInvolution(format!("not a bracket automorphism on ({}, {})", i + 1, j + 1)));
                    }
                }
            }
            let fixed = linalg::mat_sub(matrix, &linalg::identity(n));
            let basis: Vec<Vec<Q>> = linalg::kernel(&fixed, n).into_iter().map(|v| linalg::primitive(&v)).collect();
            check_subalgebra(g, &basis)?;
            Ok(basis)
        }
    }
}

impl CompactLieAlgebra {
    pub fn basis_bracket_dense(&self, i: usize, j: usize) -> Vec<Q> {
        linalg::to_dense(self.basis_bracket(i, j), self.dim())
    }
}

impl ReductivePair {
    pub fn new(name: &str, g: Arc<CompactLieAlgebra>, spec: &EmbeddingSpec) -> Result<Self> {
        let h = resolve_embedding(&g, spec)?;
        match spec {
            EmbeddingSpec::TorusRestricted { torus, dim_h } => Self::torus_restricted(name, g, torus, *dim_h),
            _ => Ok(Self::from_basis(name, g, h)),
        }
    }

    fn torus_restricted(name: &str, g: Arc<CompactLieAlgebra>, torus: &[Vec<Q>], dim_h: Option<usize>) -> Result<Self> {
        let rs = g.root_system().ok_or(Error::NotInTorus)?;
        let mut e = Echelon::new(rs.dim());
        let mut torus_h = Vec::new();
        for t in torus {
            if rs.simple_coords(t).is_none() {
                return Err(Error::NotInTorus);
            }
            if e.insert_dense(t) {
                torus_h.push(t.clone());
            }
        }
        let torus_m = linalg::orthogonal_complement_in(rs.simple_roots(), &torus_h, rs.gram());
        let h_basis = torus_h.iter().map(|t| g.cartan_element(t)).collect::<Result<Vec<_>>>()?;
        if let Some(d) = dim_h {
            if d > g.dim() || d < torus_h.len() {
                return Err(Error::DimensionMismatch { expected: g.dim(), got: d });
            }
        }
        Ok(ReductivePair {
            name: name.to_string(),
            g,
            h_basis,
            m_basis: Vec::new(),
            torus_only: true,
            torus_h,
            torus_m,
            declared_dim_h: dim_h,
            projector_h: None,
            m_gram_inv: None,
        })
    }

    /// Builds the pair from an already verified basis of `h`.
    pub fn from_basis(name: &str, g: Arc<CompactLieAlgebra>, h_basis: Vec<Vec<Q>>) -> Self {
        let n = g.dim();
        let m_basis = g.complement(&h_basis);
        let h_gram_inv = linalg::inverse(&linalg::gram(&h_basis, g.bi_form())).expect("bi form is definite");
        let mut projector_h = vec![linalg::zeros(n); n];
        for j in 0..n {
            let pair: Vec<Q> = h_basis.iter().map(|h| g.bi_form()[j].iter().zip(h).map(|(a, b)| a * b).sum()).collect();
            let c = linalg::mat_vec(&h_gram_inv, &pair);
            let col = linalg::combine(&c, &h_basis, n);
            for i in 0..n {
                projector_h[i][j] = col[i].clone();
            }
        }
        let m_gram_inv = linalg::inverse(&linalg::gram(&m_basis, g.bi_form())).expect("bi form is definite");
        let (torus_h, torus_m) = match g.root_system() {
            Some(rs) => {
                let r = rs.rank();
                // t ∩ h: Cartan elements in h, read back in ambient coordinates.
                let cartan: Vec<Vec<Q>> = (0..r).map(|j| linalg::unit(n, j)).collect();
                let inter = intersect(&cartan, &h_basis, n);
                let to_ambient = |x: &Vec<Q>| linalg::combine(&x[..r], rs.simple_roots(), rs.dim());
                let th: Vec<Vec<Q>> = inter.iter().map(to_ambient).collect();
                let tm = intersect(&cartan, &m_basis, n).iter().map(to_ambient).collect();
                (th, tm)
            }
            None => (Vec::new(), Vec::new()),
        };
        ReductivePair {
            name: name.to_string(),
            g,
            h_basis,
            m_basis,
            torus_only: false,
            torus_h,
            torus_m,
            declared_dim_h: None,
            projector_h: Some(projector_h),
            m_gram_inv: Some(m_gram_inv),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> &Arc<CompactLieAlgebra> {
        &self.g
    }

    pub fn is_torus_only(&self) -> bool {
        self.torus_only
    }

    pub fn guard(&self, op: &'static str) -> Result<()> {
        if self.torus_only {
            Err(Error::TorusOnly(op))
        } else {
            Ok(())
        }
    }

    /// Basis of `h` (for torus-only pairs: of `t ∩ h`).
    pub fn h_basis(&self) -> &[Vec<Q>] {
        &self.h_basis
    }

    /// Basis of `m` (empty for torus-only pairs).
    pub fn m_basis(&self) -> &[Vec<Q>] {
        &self.m_basis
    }

    pub fn dim_h(&self) -> usize {
        self.declared_dim_h.unwrap_or(self.h_basis.len())
    }

    pub fn dim_m(&self) -> usize {
        self.g.dim() - self.dim_h()
    }

    /// `t ∩ h` in the root system's ambient coordinates.
    pub fn torus_h(&self) -> &[Vec<Q>] {
        &self.torus_h
    }

    /// `t ∩ m` in the root system's ambient coordinates.
    pub fn torus_m(&self) -> &[Vec<Q>] {
        &self.torus_m
    }

    pub fn projector_h(&self) -> Option<&Matrix> {
        self.projector_h.as_ref()
    }

    pub fn projector_m(&self) -> Option<Matrix> {
        self.projector_h.as_ref().map(|p| linalg::mat_sub(&linalg::identity(self.g.dim()), p))
    }

    pub fn pr_h(&self, v: &[Q]) -> Result<Vec<Q>> {
        self.guard("pr_h")?;
        Ok(linalg::mat_vec(self.projector_h.as_ref().unwrap(), v))
    }

    pub fn pr_m(&self, v: &[Q]) -> Result<Vec<Q>> {
        Ok(linalg::sub(v, &self.pr_h(v)?))
    }

    /// Coordinates of `pr_m(v)` in `m_basis`.
    pub fn m_coords(&self, v: &[Q]) -> Result<Vec<Q>> {
        self.guard("m_coords")?;
        let pairings: Vec<Q> = self.m_basis.iter().map(|b| self.g.inner(b, v)).collect();
        Ok(linalg::mat_vec(self.m_gram_inv.as_ref().unwrap(), &pairings))
    }

    pub fn from_m_coords(&self, c: &[Q]) -> Vec<Q> {
        linalg::combine(c, &self.m_basis, self.g.dim())
    }

    /// Matrix of `ad(x)|_m` in `m_basis` coordinates, for `x ∈ h`.
    pub fn ad_on_m(&self, x: &[Q]) -> Result<Matrix> {
        self.guard("ad_on_m")?;
        let cols: Vec<Vec<Q>> = self.m_basis.iter().map(|b| self.m_coords(&self.g.bracket(x, b)?)).collect::<Result<_>>()?;
        Ok(linalg::transpose(&cols))
    }

    /// Checks `⟨h, m⟩ = 0`, `[h, h] ⊆ h` and `[h, m] ⊆ m` on basis elements.
    pub fn verify(&self) -> Result<()> {
        self.guard("verify")?;
        for h in &self.h_basis {
            for m in &self.m_basis {
                if !self.g.inner(h, m).is_zero() {
                    return Err(Error::NotSubalgebra("h and m are not orthogonal".into()));
                }
                if !linalg::is_zero_vec(&self.pr_h(&self.g.bracket(h, m)?)?) {
                    return Err(Error::NotSubalgebra("[h, m] is not contained in m".into()));
                }
            }
        }
        check_subalgebra(&self.g, &self.h_basis)
    }
}

/// Basis of `span(a) ∩ span(b)` (both independent lists).
pub fn intersect(a: &[Vec<Q>], b: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i − Σ y_j b_j = 0.
    let mut cols: Vec<Vec<Q>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<Q>>()));
    let rows = linalg::transpose(&cols);
    let ker = linalg::kernel(&rows, cols.len());
    let mut e = Echelon::new(n);
    let mut out = Vec::new();
    for k in ker {
        let v = linalg::primitive(&linalg::combine(&k[..a.len()], a, n));
        if e.insert_dense(&v) {
            out.push(v);
        }
    }
    out
}

/// `true` iff `[m, m] ⊆ h` on all basis pairs.
pub fn symmetric_pair_test(pair: &ReductivePair) -> Result<bool> {
    pair.guard("symmetric_pair_test")?;
    let m = pair.m_basis();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let b = pair.g().bracket(&m[i], &m[j])?;
            if !linalg::is_zero_vec(&pair.pr_m(&b)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SplitVerdict {
    /// `m = 0`.
    Empty,
    /// The commutant of `ad(h)|_m` is one-dimensional.
    Irreducible,
    /// A proper invariant subspace (in `m` coordinates of the ambient algebra) was found.
    Reducible { witness: Vec<Vec<Q>> },
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summand {
    /// Basis vectors of the summand, as elements of `g`.
    pub basis: Vec<Vec<Q>>,
    /// Dimension of the commutant of `ad(h)` on this summand.
    pub commutant_dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotypicSplit {
    pub summands: Vec<Summand>,
    pub commutant_dim: usize,
    pub verdict: SplitVerdict,
}

impl IsotypicSplit {
    /// True when no two summands are isomorphic and each is irreducible.
    pub fn multiplicity_free(&self) -> bool {
        matches!(self.verdict, SplitVerdict::Irreducible)
            || (self.commutant_dim == self.summands.len() && self.summands.iter().all(|s| s.commutant_dim == 1))
    }
}

fn casimir_on_m(pair: &ReductivePair, ads: &[Matrix]) -> Matrix {
    let g = pair.g();
    let d = pair.m_basis().len();
    let hg_inv = linalg::inverse(&linalg::gram(pair.h_basis(), g.bi_form())).expect("definite");
    let mut c = vec![linalg::zeros(d); d];
    for a in 0..ads.len() {
        for b in 0..ads.len() {
            if hg_inv[a][b].is_zero() {
                continue;
            }
            c = linalg::mat_add(&c, &linalg::mat_scale(&hg_inv[a][b], &linalg::mat_mul(&ads[a], &ads[b])));
        }
    }
    c
}

/// Restricts operators on a space (coordinates) to an invariant subspace with basis `w`.
fn compress(ops: &[Matrix], w: &[Vec<Q>]) -> Vec<Matrix> {
    ops.iter()
        .map(|op| {
            let cols: Vec<Vec<Q>> = w
                .iter()
                .map(|v| linalg::coordinates(w, &linalg::mat_vec(op, v)).expect("subspace is invariant"))
                .collect();
            linalg::transpose(&cols)
        })
        .collect()
}

/// Candidate commutant elements: the basis, their bi-symmetric parts and pairwise sums.
fn candidates(comm: &[Matrix], wg: &Matrix) -> Vec<Matrix> {
    let wg_inv = linalg::inverse(wg).expect("definite");
    let half = Q::new(1.into(), 2.into());
    let mut out: Vec<Matrix> = comm.to_vec();
    for t in comm {
        let adj = linalg::mat_mul(&wg_inv, &linalg::mat_mul(&linalg::transpose(t), wg));
        out.push(linalg::mat_scale(&half, &linalg::mat_add(t, &adj)));
    }
    for i in 0..comm.len() {
        for j in i + 1..comm.len() {
            out.push(linalg::mat_add(&comm[i], &comm[j]));
        }
    }
    out
}

/// Splits a subspace `w` (coordinates in m) along kernels `ker(T − λ)` of
/// commutant elements at rational eigenvalues, together with their orthogonal complements.
fn refine(ops: &[Matrix], w: Vec<Vec<Q>>, gram: &Matrix, out: &mut Vec<(Vec<Vec<Q>>, usize)>) {
    let k = w.len();
    let local = compress(ops, &w);
    let comm = commutant_basis(&local, k);
    if comm.len() <= 1 {
        out.push((w, comm.len()));
        return;
    }
    let wg = linalg::gram(&w, gram);
    let dim = w[0].len();
    for t in candidates(&comm, &wg) {
        for lambda in linalg::rational_roots(&linalg::minimal_polynomial(&t)) {
            let shifted = linalg::mat_sub(&t, &linalg::mat_scale(&lambda, &linalg::identity(k)));
            let ker = linalg::kernel(&shifted, k);
            if ker.is_empty() || ker.len() == k {
                continue;
            }
            let first: Vec<Vec<Q>> = ker.iter().map(|c| linalg::combine(c, &w, dim)).collect();
            let rest = linalg::orthogonal_complement_in(&w, &first, gram);
            refine(ops, first, gram, out);
            refine(ops, rest, gram, out);
            return;
        }
    }
    out.push((w, comm.len()));
}

/// Decomposes `m` into `ad(h)`-invariant, mutually orthogonal summands.
pub fn isotypic_split(pair: &ReductivePair) -> Result<IsotypicSplit> {
    pair.guard("isotypic_split")?;
    let d = pair.m_basis().len();
    if d == 0 {
        return Ok(IsotypicSplit { summands: Vec::new(), commutant_dim: 0, verdict: SplitVerdict::Empty });
    }
    let ads: Vec<Matrix> = pair.h_basis().iter().map(|x| pair.ad_on_m(x)).collect::<Result<_>>()?;
    let commutant_dim = commutant_basis(&ads, d).len();
    let m_gram = linalg::gram(pair.m_basis(), pair.g().bi_form());
    let whole: Vec<Vec<Q>> = (0..d).map(|i| linalg::unit(d, i)).collect();
    let mut pieces: Vec<(Vec<Vec<Q>>, usize)> = Vec::new();
    if commutant_dim == 1 {
        pieces.push((whole, 1));
    } else {
        let blocks = match linalg::rational_eigenspaces(&casimir_on_m(pair, &ads)) {
            Some(spaces) => spaces.into_iter().map(|(_, vs)| vs).collect(),
            None => vec![whole],
        };
        for b in blocks {
            refine(&ads, b, &m_gram, &mut pieces);
        }
    }
    let summands: Vec<Summand> = pieces
        .into_iter()
        .map(|(w, c)| Summand { basis: w.iter().map(|x| pair.from_m_coords(x)).collect(), commutant_dim: c })
        .collect();
    let verdict = if commutant_dim == 1 {
        SplitVerdict::Irreducible
    } else if summands.len() >= 2 {
        SplitVerdict::Reducible { witness: summands[0].basis.clone() }
    } else {
        SplitVerdict::Indeterminate
    };
    Ok(IsotypicSplit { summands, commutant_dim, verdict })
}

/// A factor `(g_B, h ∩ g_B)` of a local product decomposition.
#[derive(Clone, Debug)]
pub struct Factor {
    pub pair: ReductivePair,
    /// Types of the simple ideals making up `g_B` (None for an ideal of unknown type).
    pub ideal_types: Vec<Option<CartanType>>,
}

/// Witness that `h` is not the sum of its intersections with the simple ideals.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitFailure {
    pub ideal: usize,
    pub projection_dim: usize,
    pub intersection_dim: usize,
}

#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub factors: Vec<Factor>,
    /// Set when `h` does not split along the simple ideals of `g`; the
    /// factors are then the finest blocks of ideals along which it does split.
    pub failure: Option<SplitFailure>,
}

fn ideal_projector(g: &CompactLieAlgebra, basis: &[Vec<Q>]) -> Matrix {
    let n = g.dim();
    let inv = linalg::inverse(&linalg::gram(basis, g.bi_form())).expect("definite");
    let mut p = vec![linalg::zeros(n); n];
    for j in 0..n {
        let e = linalg::unit(n, j);
        let c = linalg::mat_vec(&inv, &basis.iter().map(|b| g.inner(b, &e)).collect::<Vec<_>>());
        let col = linalg::combine(&c, basis, n);
        for i in 0..n {
            p[i][j] = col[i].clone();
        }
    }
    p
}

/// Splits the pair along blocks of simple ideals of `g`.
pub fn local_decompose(pair: &ReductivePair) -> Result<LocalDecomposition> {
    pair.guard("local_decompose")?;
    let g = pair.g();
    let n = g.dim();
    let ideals = g.simple_ideals();
    if ideals.len() <= 1 {
        let types = ideals.iter().map(|i| i.cartan_type).collect();
        return Ok(LocalDecomposition { factors: vec![Factor { pair: pair.clone(), ideal_types: types }], failure: None });
    }
    let projectors: Vec<Matrix> = ideals.iter().map(|i| ideal_projector(g, &i.basis)).collect();
    let h_span = Echelon::from_dense(n, pair.h_basis());
    let k = ideals.len();
    let valid = |mask: usize| -> bool {
        pair.h_basis().iter().all(|h| {
            let mut v = linalg::zeros(n);
            for (i, p) in projectors.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v = linalg::add(&v, &linalg::mat_vec(p, h));
                }
            }
            h_span.contains(&v)
        })
    };
    let valid_masks: Vec<usize> = (1..(1usize << k)).filter(|&m| valid(m)).collect();
    let failure = (0..k).find(|&i| !valid_masks.contains(&(1 << i))).map(|i| {
        let proj: Vec<Vec<Q>> = pair.h_basis().iter().map(|h| linalg::mat_vec(&projectors[i], h)).collect();
        SplitFailure {
            ideal: i,
            projection_dim: linalg::rank(&proj),
            intersection_dim: intersect(&ideals[i].basis, pair.h_basis(), n).len(),
        }
    });
    // Finest blocks: the smallest valid set containing each ideal.
    let mut blocks: Vec<usize> = Vec::new();
    for i in 0..k {
        let atom = valid_masks.iter().filter(|&&m| m & (1 << i) != 0).fold(usize::MAX, |acc, &m| acc & m);
        if !blocks.contains(&atom) {
            blocks.push(atom);
        }
    }
    let mut factors = Vec::new();
    for mask in blocks {
        let members: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let basis: Vec<Vec<Q>> = members.iter().flat_map(|&i| ideals[i].basis.clone()).collect();
        let types: Vec<Option<CartanType>> = members.iter().map(|&i| ideals[i].cartan_type).collect();
        let known: Option<Vec<CartanType>> = types.iter().copied().collect();
        let name = format!("{}[{}]", pair.name(), members.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
        let sub = Arc::new(g.restrict(&name, &basis, known)?);
        // h ∩ g_B in the coordinates of the restricted basis.
        let gram_inv = linalg::inverse(&linalg::gram(&basis, g.bi_form())).expect("definite");
        let h_local: Vec<Vec<Q>> = intersect(&basis, pair.h_basis(), n)
            .iter()
            .map(|v| linalg::mat_vec(&gram_inv, &basis.iter().map(|b| g.inner(b, v)).collect::<Vec<_>>()))
            .collect();
        factors.push(Factor { pair: ReductivePair::from_basis(&name, sub, h_local), ideal_types: types });
    }
    Ok(LocalDecomposition { factors, failure })
}

impl ReductivePair {
    /// The pair `(g, g)` with `m = 0`.
    pub fn trivial(name: &str, g: Arc<CompactLieAlgebra>) -> Self {
        let n = g.dim();
        let basis = (0..n).map(|i| linalg::unit(n, i)).collect();
        Self::from_basis(name, g, basis)
    }

    /// The pair `(g, 0)`.
    pub fn group(name: &str, g: Arc<CompactLieAlgebra>) -> Self {
        Self::from_basis(name, g, Vec::new())
    }
}

/// Sign and sorted index triple of a 3-form term `e_{abc}`.
fn sort_triple(t: [usize; 3]) -> (i32, [usize; 3]) {
    let mut t = t;
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (sign, t)
}

/// Elements of the `so(n)` matrix algebra annihilating the 3-form
/// `Σ e_a ∧ e_b ∧ e_c` over the given (1-based) index triples.
pub fn three_form_stabilizer(g: &CompactLieAlgebra, n: usize, terms: &[[usize; 3]]) -> Result<Vec<Vec<Q>>> {
    let mut coeff = std::collections::BTreeMap::new();
    for t in terms {
        let (s, k) = sort_triple([t[0] - 1, t[1] - 1, t[2] - 1]);
        if k[0] == k[1] || k[1] == k[2] {
            return Err(Error::Parse("degenerate 3-form term".into()));
        }
        coeff.insert(k, s);
    }
    let omega = |t: [usize; 3]| -> i32 {
        let (s, k) = sort_triple(t);
        coeff.get(&k).map_or(0, |c| s * c)
    };
    let d = g.dim();
    if d != n * (n - 1) / 2 {
        return Err(Error::DimensionMismatch { expected: n * (n - 1) / 2, got: d });
    }
    // Column for each basis element L_ab: its action on ω evaluated on sorted triples.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut basis_idx = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            basis_idx.push((a, b));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut row = linalg::zeros(d);
                for (col, &(a, b)) in basis_idx.iter().enumerate() {
                    // L_ab e_b = e_a, L_ab e_a = −e_b.
                    let act = |v: usize| -> Option<(i32, usize)> {
                        if v == b {
                            Some((1, a))
                        } else if v == a {
                            Some((-1, b))
                        } else {
                            None
                        }
                    };
                    let mut s = 0;
                    let triple = [i, j, k];
                    for p in 0..3 {
                        if let Some((c, w)) = act(triple[p]) {
                            let mut t = triple;
                            t[p] = w;
                            if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                                s -= c * omega(t);
                            }
                        }
                    }
                    row[col] = Q::from_integer(s.into());
                }
                rows.push(row);
            }
        }
    }
    Ok(linalg::kernel(&rows, d).into_iter().map(|v| linalg::primitive(&v)).collect())
}

/// `su(p) ⊕ su(q) ⊂ su(pq)` via `A ⊗ 1 + 1 ⊗ B`: the ambient matrix algebra
/// and the images of the two factors' bases.
pub fn tensor_product_embedding(p: usize, q: usize) -> Result<(CompactLieAlgebra, Vec<Vec<Q>>)> {
    use crate::chevalley::{su_matrix_algebra, GMatrix};
    if p < 2 || q < 2 {
        return Err(Error::Parse("tensor factors need size at least 2".into()));
    }
    let g = su_matrix_algebra(p * q);
    let (a, b) = (su_matrix_algebra(p), su_matrix_algebra(q));
    let mut mats: Vec<GMatrix> = Vec::new();
    for i in 0..a.dim() {
        mats.push(a.matrix_of(&linalg::unit(a.dim(), i)).unwrap().kron(&GMatrix::identity(q)));
    }
    for i in 0..b.dim() {
        mats.push(GMatrix::identity(p).kron(&b.matrix_of(&linalg::unit(b.dim(), i)).unwrap()));
    }
    let images = mats
        .iter()
        .map(|m| g.coords_of_matrix(m).ok_or_else(|| Error::NotSubalgebra("image outside su(pq)".into())))
        .collect::<Result<_>>()?;
    Ok((g, images))
}
