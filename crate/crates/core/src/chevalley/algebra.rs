use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, sparse_axpy, to_dense, to_sparse, Echelon, Matrix, SparseVec, Q};
use crate::rootsys::{CartanType, RootSystem};

use super::constants::StructureConstants;

/// How an algebra was realized.
#[derive(Clone, Debug)]
pub enum Backend {
    /// Compact form of a complex semisimple algebra from its root system.
    Roots(Box<StructureConstants>),
    /// Span of `size × size` complex matrices (`so-matrix` / `su-matrix`).
    Matrix { family: String, size: usize, mats: Vec<super::GMatrix> },
    /// A subalgebra of another algebra, in a chosen basis.
    Restricted { parent: String },
}

/// A simple ideal (or the center) as a set of basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    pub cartan_type: Option<CartanType>,
    pub basis: Vec<Vec<Q>>,
}

/// Exact structure constants of a compact real Lie algebra together with
/// its invariant inner product.
#[derive(Clone, Debug)]
pub struct CompactLieAlgebra {
    name: String,
    backend: Backend,
    labels: Vec<String>,
    table: Vec<SparseVec>,
    bi: Matrix,
    bi_scale: Q,
    known_ideals: Option<Vec<Ideal>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobiScope {
    Exhaustive,
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationSummary {
    pub scope: JacobiScope,
    pub triples: usize,
    pub jacobi_ok: bool,
    pub invariance_ok: bool,
    pub positive_definite: bool,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.jacobi_ok && self.invariance_ok && self.positive_definite
    }
}

impl CompactLieAlgebra {
    /// Assembles an algebra from a full bracket table (`table[i*dim + j] = [b_i, b_j]`).
    /// The invariant form is the negative Killing form rescaled to an
    /// integer matrix of content 1, unless `form` supplies `(bi, scale)`.
    pub(crate) fn assemble(
        name: String,
        backend: Backend,
        labels: Vec<String>,
        table: Vec<SparseVec>,
        form: Option<(Matrix, Q)>,
        known_ideals: Option<Vec<Ideal>>,
    ) -> Self {
        let mut g = CompactLieAlgebra {
            name,
            backend,
            labels,
            table,
            bi: Vec::new(),
            bi_scale: Q::one(),
            known_ideals,
        };
        let (bi, scale) = form.unwrap_or_else(|| {
            let neg_killing: Matrix = g.killing_by_trace().into_iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            normalize_integer(&neg_killing)
        });
        g.bi = bi;
        g.bi_scale = scale;
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn root_system(&self) -> Option<&RootSystem> {
        match &self.backend {
            Backend::Roots(sc) => Some(sc.root_system()),
            _ => None,
        }
    }

    pub fn constants(&self) -> Option<&StructureConstants> {
        match &self.backend {
            Backend::Roots(sc) => Some(sc),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The invariant inner product `⟨·,·⟩_bi` on basis coordinates.
    pub fn bi_form(&self) -> &Matrix {
        &self.bi
    }

    /// `bi = scale · (−Killing)`.
    pub fn bi_scale(&self) -> &Q {
        &self.bi_scale
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn check_len(&self, x: &[Q]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() })
        }
    }

    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let t = self.basis_bracket(*i, *j);
                if !t.is_empty() {
                    out = sparse_axpy(&out, &(a * b), t);
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(to_dense(&self.bracket_sparse(&to_sparse(x), &to_sparse(y)), self.dim()))
    }

    /// `⟨x, y⟩_bi`.
    pub fn killing(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(linalg::form(&self.bi, x, y))
    }

    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        linalg::form(&self.bi, x, y)
    }

    /// Columns `[x, b_j]` of `ad(x)`, as sparse vectors.
    pub fn ad_columns(&self, x: &[Q]) -> Vec<SparseVec> {
        let xs = to_sparse(x);
        (0..self.dim())
            .map(|j| {
                let mut out: SparseVec = Vec::new();
                for (i, a) in &xs {
                    let t = self.basis_bracket(*i, j);
                    if !t.is_empty() {
                        out = sparse_axpy(&out, a, t);
                    }
                }
                out
            })
            .collect()
    }

    /// Dense matrix of `ad(x)` (row = output coordinate).
    pub fn ad_matrix(&self, x: &[Q]) -> Matrix {
        let n = self.dim();
        let mut m = vec![linalg::zeros(n); n];
        for (j, col) in self.ad_columns(x).into_iter().enumerate() {
            for (i, v) in col {
                m[i][j] = v;
            }
        }
        m
    }

    /// Basis of the centralizer `{y : [x, y] = 0}`.
    pub fn centralizer(&self, x: &[Q]) -> Result<Vec<Vec<Q>>> {
        self.check_len(x)?;
        let n = self.dim();
        let cols = self.ad_columns(x);
        let mut rows: Vec<SparseVec> = vec![Vec::new(); n];
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col {
                rows[i].push((j, v));
            }
        }
        let mut e = Echelon::new(n);
        for r in rows {
            e.insert(r);
        }
        Ok(e.kernel())
    }

    /// `trace(ad b_i ∘ ad b_j)` for all basis pairs.
    pub fn killing_by_trace(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Vec<SparseVec>> = (0..n).map(|i| (0..n).map(|l| self.basis_bracket(i, l).clone()).collect()).collect();
        let entry = |i: usize, j: usize| -> Q {
            // Σ_l (ad_i ad_j e_l)_l = Σ_l Σ_m (ad_j e_l)_m (ad_i e_m)_l
            let mut s = Q::zero();
            for l in 0..n {
                for (m, c) in &ads[j][l] {
                    if let Ok(k) = ads[i][*m].binary_search_by_key(&l, |(k, _)| *k) {
                        s += c * &ads[i][*m][k].1;
                    }
                }
            }
            s
        };
        let rows: Vec<Vec<Q>> = (0..n).into_par_iter().map(|i| (0..n).map(|j| if j < i { Q::zero() } else { entry(i, j) }).collect()).collect();
        let mut out = rows;
        for i in 0..n {
            for j in 0..i {
                out[i][j] = out[j][i].clone();
            }
        }
        out
    }

    fn jacobi_triple(&self, i: usize, j: usize, k: usize) -> bool {
        let e = |a: usize| vec![(a, Q::one())];
        let t1 = self.bracket_sparse(self.basis_bracket(i, j), &e(k));
        let t2 = self.bracket_sparse(self.basis_bracket(j, k), &e(i));
        let t3 = self.bracket_sparse(self.basis_bracket(k, i), &e(j));
        let s = sparse_axpy(&sparse_axpy(&t1, &Q::one(), &t2), &Q::one(), &t3);
        s.is_empty()
    }

    fn invariance_triple(&self, i: usize, j: usize, k: usize) -> bool {
        // ⟨[b_i, b_j], b_k⟩ + ⟨b_j, [b_i, b_k]⟩ = 0
        let n = self.dim();
        let a = linalg::form(&self.bi, &to_dense(self.basis_bracket(i, j), n), &linalg::unit(n, k));
        let b = linalg::form(&self.bi, &linalg::unit(n, j), &to_dense(self.basis_bracket(i, k), n));
        (a + b).is_zero()
    }

    /// Jacobi identity and ad-invariance: every basis triple when
    /// `exhaustive`, otherwise `samples` triples drawn from `seed`.
    pub fn verify(&self, exhaustive: bool, samples: usize, seed: u64) -> VerificationSummary {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = if exhaustive {
            let mut t = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        t.push((i, j, k));
                    }
                }
            }
            t
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        };
        let jacobi_ok = triples.par_iter().all(|&(i, j, k)| self.jacobi_triple(i, j, k));
        let inv_triples: Vec<(usize, usize, usize)> = if exhaustive {
            (0..n).flat_map(|i| (0..n).flat_map(move |j| (j..n).map(move |k| (i, j, k)))).collect()
        } else {
            triples.clone()
        };
        let invariance_ok = inv_triples.par_iter().all(|&(i, j, k)| self.invariance_triple(i, j, k));
        VerificationSummary {
            scope: if exhaustive { JacobiScope::Exhaustive } else { JacobiScope::Sampled(samples) },
            triples: triples.len(),
            jacobi_ok,
            invariance_ok,
            positive_definite: linalg::is_positive_definite(&self.bi),
        }
    }

    /// Default policy: exhaustive up to dimension 52, else 10^4 sampled triples.
    pub fn verify_default(&self, seed: u64) -> VerificationSummary {
        self.verify(self.dim() <= 52, 10_000, seed)
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut e = Echelon::new(n);
        for j in 0..n {
            // rows of ad(b_j)
            let mut rows: Vec<SparseVec> = vec![Vec::new(); n];
            for i in 0..n {
                for (k, v) in self.basis_bracket(j, i) {
                    rows[*k].push((i, v.clone()));
                }
            }
            for r in rows {
                e.insert(r);
            }
        }
        e.kernel()
    }

    /// Simple ideals (plus the center, typed `None`, when nonzero).
    pub fn simple_ideals(&self) -> Vec<Ideal> {
        if let Some(k) = &self.known_ideals {
            return k.clone();
        }
        let center = self.center();
        let mut out = self.split_semisimple(&center);
        if !center.is_empty() {
            out.push(Ideal { cartan_type: None, basis: center });
        }
        out
    }

    fn split_semisimple(&self, center: &[Vec<Q>]) -> Vec<Ideal> {
        let n = self.dim();
        let derived = self.complement(center);
        // Commutant of ad(g) restricted to [g, g]; its idempotents cut out the simple ideals.
        let d = derived.len();
        if d == 0 {
            return Vec::new();
        }
        let gens = self.generating_set();
        let coords = |v: &[Q]| linalg::coordinates(&derived, v).expect("derived algebra is an ideal");
        let ad_on: Vec<Matrix> = gens
            .iter()
            .map(|&g| {
                let cols: Vec<Vec<Q>> = derived.iter().map(|b| coords(&self.bracket(&linalg::unit(n, g), b).unwrap())).collect();
                linalg::transpose(&cols)
            })
            .collect();
        let commutant = commutant_basis(&ad_on, d);
        if commutant.len() <= 1 {
            return vec![Ideal { cartan_type: None, basis: derived }];
        }
        for attempt in 1..=8i64 {
            let coeffs: Vec<Q> = (0..commutant.len()).map(|k| Q::from_integer((attempt * 7 + 3 * k as i64 * k as i64 + k as i64).into())).collect();
            let mut t = vec![linalg::zeros(d); d];
            for (c, m) in coeffs.iter().zip(&commutant) {
                t = linalg::mat_add(&t, &linalg::mat_scale(c, m));
            }
            if let Some(spaces) = linalg::rational_eigenspaces(&t) {
                if spaces.len() == commutant.len() {
                    return spaces
                        .into_iter()
                        .map(|(_, vs)| Ideal {
                            // su(2) is the only compact simple algebra of dimension 3.
                            cartan_type: (vs.len() == 3).then(|| CartanType { series: 'A', rank: 1 }),
                            basis: vs.iter().map(|c| linalg::combine(c, &derived, n)).collect(),
                        })
                        .collect();
                }
            }
        }
        vec![Ideal { cartan_type: None, basis: derived }]
    }

    /// bi-orthogonal complement of a subspace.
    pub fn complement(&self, sub: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let n = self.dim();
        let ambient: Vec<Vec<Q>> = (0..n).map(|i| linalg::unit(n, i)).collect();
        if sub.is_empty() {
            return ambient;
        }
        linalg::orthogonal_complement_in(&ambient, sub, &self.bi)
    }

    /// Basis indices whose generated subalgebra is the whole algebra.
    fn generating_set(&self) -> Vec<usize> {
        let n = self.dim();
        let mut gens = Vec::new();
        let mut span = Echelon::new(n);
        for i in 0..n {
            if span.rank() == n {
                break;
            }
            if span.contains(&linalg::unit(n, i)) {
                continue;
            }
            gens.push(i);
            let vs: Vec<Vec<Q>> = gens.iter().map(|&g| linalg::unit(n, g)).collect();
            span = self.generated_subalgebra(&vs);
        }
        gens
    }

    /// Rank: the root system's, or the smallest centralizer dimension over
    /// a few seeded random elements.
    pub fn rank(&self) -> usize {
        if let Some(rs) = self.root_system() {
            return rs.rank();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..4)
            .map(|_| {
                let x: Vec<Q> = (0..self.dim()).map(|_| Q::from_integer(rng.gen_range(-9i64..=9).into())).collect();
                self.centralizer(&x).map(|c| c.len()).unwrap_or(self.dim())
            })
            .min()
            .unwrap_or(0)
    }

    /// The subalgebra spanned by an independent, bracket-closed `basis`,
    /// with the restricted inner product.
    pub fn restrict(&self, name: &str, basis: &[Vec<Q>], cartan_types: Option<Vec<CartanType>>) -> Result<CompactLieAlgebra> {
        let k = basis.len();
        let gram = linalg::gram(basis, &self.bi);
        let gram_inv = linalg::inverse(&gram).ok_or_else(|| Error::NotSubalgebra("degenerate basis".into()))?;
        let coords = |v: &[Q]| -> Result<Vec<Q>> {
            let c = linalg::mat_vec(&gram_inv, &basis.iter().map(|b| self.inner(b, v)).collect::<Vec<_>>());
            if linalg::combine(&c, basis, self.dim()) != v {
                return Err(Error::NotSubalgebra(format!("{name} is not closed under the bracket")));
            }
            Ok(c)
        };
        let mut table: Vec<SparseVec> = vec![Vec::new(); k * k];
        for i in 0..k {
            for j in i + 1..k {
                let c = to_sparse(&coords(&self.bracket(&basis[i], &basis[j])?)?);
                table[j * k + i] = c.iter().map(|(a, x)| (*a, -x)).collect();
                table[i * k + j] = c;
            }
        }
        let labels = (1..=k).map(|i| format!("b{i}")).collect();
        let ideals = cartan_types.and_then(|ts| {
            (ts.len() == 1).then(|| vec![Ideal { cartan_type: Some(ts[0]), basis: (0..k).map(|i| linalg::unit(k, i)).collect() }])
        });
        Ok(CompactLieAlgebra::assemble(
            name.to_string(),
            Backend::Restricted { parent: self.name.clone() },
            labels,
            table,
            Some((gram, self.bi_scale.clone())),
            ideals,
        ))
    }

    /// Echelon form of the subalgebra generated by `vs`.
    pub fn generated_subalgebra(&self, vs: &[Vec<Q>]) -> Echelon {
        let n = self.dim();
        let mut e = Echelon::new(n);
        let mut basis: Vec<Vec<Q>> = Vec::new();
        for v in vs {
            if e.insert_dense(v) {
                basis.push(v.clone());
            }
        }
        let mut k = 0;
        while k < basis.len() {
            for j in 0..=k {
                let b = self.bracket(&basis[j], &basis[k]).unwrap();
                if e.insert_dense(&b) {
                    basis.push(b);
                }
            }
            k += 1;
        }
        e
    }
}

/// Matrices `T` (on a `d`-dimensional space) commuting with every given operator.
pub fn commutant_basis(ops: &[Matrix], d: usize) -> Vec<Matrix> {
    // Unknown T flattened row-major: T[a][b] -> a*d + b. Equation (T X - X T)[a][c] = 0.
    let mut e = Echelon::new(d * d);
    for x in ops {
        for a in 0..d {
            for c in 0..d {
                let mut row: Vec<(usize, Q)> = Vec::new();
                for b in 0..d {
                    if !x[b][c].is_zero() {
                        row.push((a * d + b, x[b][c].clone()));
                    }
                    if !x[a][b].is_zero() {
                        row.push((b * d + c, -x[a][b].clone()));
                    }
                }
                row.sort_by_key(|(k, _)| *k);
                let mut merged: SparseVec = Vec::new();
                for (k, v) in row {
                    match merged.last_mut() {
                        Some((lk, lv)) if *lk == k => *lv += v,
                        _ => merged.push((k, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                e.insert(merged);
            }
        }
    }
    e.kernel().into_iter().map(|flat| flat.chunks(d).map(|r| r.to_vec()).collect()).collect()
}

/// Rescales a symmetric rational matrix to integer entries with content 1;
/// returns the scaled matrix and the factor applied.
pub fn normalize_integer(m: &Matrix) -> (Matrix, Q) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in m.iter().flatten() {
        l = l.lcm(x.denom());
    }
    let mut g = BigInt::zero();
    for x in m.iter().flatten() {
        g = g.gcd(&(x * Q::from_integer(l.clone())).to_integer());
    }
    if g.is_zero() {
        return (m.clone(), Q::one());
    }
    let f = Q::new(l, g);
    (linalg::mat_scale(&f, m), f)
}
