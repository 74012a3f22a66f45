//! Chevalley structure constants, compact real forms and a matrix backend.
//!
//! The compact form of a root-system algebra has basis
//! `h_1..h_r, u_1, v_1, u_2, v_2, …` where `h_j = i·H_{α_j}` (simple root
//! `α_j` viewed in the Cartan subalgebra), and for the `k`-th positive root
//! `β`: `u_k = e_β − e_{−β}`, `v_k = i(e_β + e_{−β})`. Brackets are
//! computed in the complex Chevalley basis and converted back, so every
//! structure constant is rational.

mod algebra;
mod constants;
mod matrix;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use algebra::{commutant_basis, normalize_integer, Backend, CompactLieAlgebra, Ideal, JacobiScope, VerificationSummary};
pub use constants::{StructureConstants, CONVENTION_VERSION};
pub use matrix::{so_matrix_algebra, su_matrix_algebra, GMatrix};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec, Q};
use crate::rootsys::{parse_types_label, CartanType, RootSystem};

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gauss {
    pub re: Q,
    pub im: Q,
}

impl Gauss {
    pub fn new(re: Q, im: Q) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: Q) -> Self {
        Gauss { re, im: Q::zero() }
    }

    pub fn i() -> Self {
        Gauss { re: Q::zero(), im: Q::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Gauss { re: &self.re * c, im: &self.im * c }
    }
}

impl Add for &Gauss {
    type Output = Gauss;
    fn add(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Gauss {
    type Output = Gauss;
    fn sub(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Gauss {
    type Output = Gauss;
    fn mul(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -&self.re, im: -&self.im }
    }
}

pub fn chevalley_constants(rs: &RootSystem) -> StructureConstants {
    StructureConstants::new(rs)
}

/// Element of the complexified algebra: `H_w + Σ c_γ e_γ` with `w` complex.
struct Complex {
    torus: Vec<Gauss>,
    roots: BTreeMap<usize, Gauss>,
}

fn complex_basis(rs: &RootSystem, b: usize) -> Complex {
    let r = rs.rank();
    let mut torus = vec![Gauss::default(); rs.dim()];
    let mut roots = BTreeMap::new();
    if b < r {
        for (t, x) in torus.iter_mut().zip(&rs.simple_roots()[b]) {
            t.im = x.clone();
        }
    } else {
        let k = (b - r) / 2;
        let nk = rs.negate_index(k);
        if (b - r) % 2 == 0 {
            roots.insert(k, Gauss::real(Q::one()));
            roots.insert(nk, Gauss::real(-Q::one()));
        } else {
            roots.insert(k, Gauss::i());
            roots.insert(nk, Gauss::i());
        }
    }
    Complex { torus, roots }
}

fn complex_pairing(rs: &RootSystem, root: &[Q], w: &[Gauss]) -> Gauss {
    let re: Vec<Q> = w.iter().map(|g| g.re.clone()).collect();
    let im: Vec<Q> = w.iter().map(|g| g.im.clone()).collect();
    Gauss::new(rs.inner(root, &re), rs.inner(root, &im))
}

fn complex_bracket(sc: &StructureConstants, x: &Complex, y: &Complex) -> Complex {
    let rs = sc.root_system();
    let mut torus = vec![Gauss::default(); rs.dim()];
    let mut roots: BTreeMap<usize, Gauss> = BTreeMap::new();
    let mut add_root = |k: usize, c: Gauss| {
        let e = roots.entry(k).or_default();
        *e = &*e + &c;
    };
    for (&d, c) in &y.roots {
        let p = complex_pairing(rs, &rs.all_roots()[d], &x.torus);
        add_root(d, &p * c);
    }
    for (&g, c) in &x.roots {
        let p = complex_pairing(rs, &rs.all_roots()[g], &y.torus);
        add_root(g, -&(&p * c));
    }
    for (&g, cg) in &x.roots {
        for (&d, cd) in &y.roots {
            let coef = cg * cd;
            if d == rs.negate_index(g) {
                let gv = &rs.all_roots()[g];
                let f = Q::from_integer(2.into()) / rs.inner(gv, gv);
                for (t, a) in torus.iter_mut().zip(gv) {
                    *t = &*t + &coef.scale(&(&f * a));
                }
            } else {
                let n = sc.get(g, d);
                if n != 0 {
                    let sum = rs.root_index(&linalg::add(&rs.all_roots()[g], &rs.all_roots()[d])).unwrap();
                    add_root(sum, coef.scale(&Q::from_integer(n.into())));
                }
            }
        }
    }
    roots.retain(|_, c| !c.is_zero());
    Complex { torus, roots }
}

fn complex_to_real(rs: &RootSystem, x: &Complex) -> SparseVec {
    let r = rs.rank();
    let np = rs.positive_roots().len();
    let mut out: SparseVec = Vec::new();
    assert!(x.torus.iter().all(|g| g.re.is_zero()), "torus part is not in the compact form");
    let v: Vec<Q> = x.torus.iter().map(|g| g.im.clone()).collect();
    if !linalg::is_zero_vec(&v) {
        let c = rs.simple_coords(&v).expect("torus part lies in the span of the roots");
        out.extend(c.into_iter().enumerate().filter(|(_, c)| !c.is_zero()));
    }
    let half = Q::new(1.into(), 2.into());
    for k in 0..np {
        let zero = Gauss::default();
        let dp = x.roots.get(&k).unwrap_or(&zero);
        let dm = x.roots.get(&rs.negate_index(k)).unwrap_or(&zero);
        let a = (dp - dm).scale(&half);
        let s = (dp + dm).scale(&half);
        assert!(a.im.is_zero() && s.re.is_zero(), "root part is not in the compact form");
        if !a.re.is_zero() {
            out.push((r + 2 * k, a.re));
        }
        if !s.im.is_zero() {
            out.push((r + 2 * k + 1, s.im));
        }
    }
    out
}

/// The compact real form with basis `h_j, u_k, v_k` and
/// `⟨·,·⟩_bi = −Killing` rescaled to an integer matrix of content 1.
pub fn compact_form(sc: &StructureConstants) -> CompactLieAlgebra {
    let rs = sc.root_system();
    let r = rs.rank();
    let np = rs.positive_roots().len();
    let n = r + 2 * np;
    let mut labels: Vec<String> = (1..=r).map(|j| format!("h{j}")).collect();
    for k in 1..=np {
        labels.push(format!("u{k}"));
        labels.push(format!("v{k}"));
    }
    let basis: Vec<Complex> = (0..n).map(|b| complex_basis(rs, b)).collect();
    let mut table: Vec<SparseVec> = vec![Vec::new(); n * n];
    let rows: Vec<Vec<(usize, SparseVec)>> = {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .map(|i| {
                (i + 1..n)
                    .map(|j| (j, complex_to_real(rs, &complex_bracket(sc, &basis[i], &basis[j]))))
                    .collect()
            })
            .collect()
    };
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row {
            table[j * n + i] = v.iter().map(|(k, x)| (*k, -x)).collect();
            table[i * n + j] = v;
        }
    }
    // −Killing on each simple component is c_k times the gram form on the torus,
    // with c_k = Σ_γ (γ, α)² / (α, α) over the component's roots.
    let comp_const: Vec<Q> = (0..rs.components().len())
        .map(|c| {
            let idx: Vec<usize> = (0..rs.all_roots().len()).filter(|&i| rs.component_of_root(i) == c).collect();
            let a = &rs.all_roots()[idx[0]];
            idx.iter().map(|&i| rs.inner(&rs.all_roots()[i], a).pow(2)).sum::<Q>() / rs.inner(a, a)
        })
        .collect();
    let mut bi = vec![linalg::zeros(n); n];
    for i in 0..r {
        for j in 0..r {
            let (ci, cj) = (rs.component_of_simple(i), rs.component_of_simple(j));
            if ci == cj {
                bi[i][j] = &comp_const[ci] * rs.inner(&rs.simple_roots()[i], &rs.simple_roots()[j]);
            }
        }
    }
    for k in 0..np {
        let b = &rs.positive_roots()[k];
        let v = Q::from_integer(4.into()) * &comp_const[rs.component_of_root(k)] / rs.inner(b, b);
        bi[r + 2 * k][r + 2 * k] = v.clone();
        bi[r + 2 * k + 1][r + 2 * k + 1] = v;
    }
    let (bi, scale) = normalize_integer(&bi);
    let ideals = (0..rs.components().len())
        .map(|c| {
            let mut basis = Vec::new();
            for j in (0..r).filter(|&j| rs.component_of_simple(j) == c) {
                basis.push(linalg::unit(n, j));
            }
            for k in (0..np).filter(|&k| rs.component_of_root(k) == c) {
                basis.push(linalg::unit(n, r + 2 * k));
                basis.push(linalg::unit(n, r + 2 * k + 1));
            }
            Ideal { cartan_type: Some(rs.components()[c]), basis }
        })
        .collect();
    CompactLieAlgebra::assemble(rs.label(), Backend::Roots(Box::new(sc.clone())), labels, table, Some((bi, scale)), Some(ideals))
}

/// Compact form of a sum of simple types in the default realization.
pub fn build_algebra(types: &[CartanType]) -> CompactLieAlgebra {
    let rs = RootSystem::direct_sum(types);
    compact_form(&StructureConstants::new(&rs))
}

/// Parses `G2`, `A1+A1`, `so-matrix 7` or `su-matrix 6`.
pub fn build_from_label(label: &str) -> Result<CompactLieAlgebra> {
    let words: Vec<&str> = label.split_whitespace().collect();
    match words.as_slice() {
        ["so-matrix", n] => {
            let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad size in `{label}`")))?;
            if n < 3 {
                return Err(Error::Parse("so-matrix needs n ≥ 3".into()));
            }
            Ok(so_matrix_algebra(n))
        }
        ["su-matrix", n] => {
            let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad size in `{label}`")))?;
            if n < 2 {
                return Err(Error::Parse("su-matrix needs n ≥ 2".into()));
            }
            Ok(su_matrix_algebra(n))
        }
        [types] => Ok(build_algebra(&parse_types_label(types)?)),
        _ => Err(Error::Parse(format!("unknown algebra `{label}`"))),
    }
}

impl CompactLieAlgebra {
    /// The Cartan element `i·H_u` for `u` in the root system's ambient space.
    pub fn cartan_element(&self, u: &[Q]) -> Result<Vec<Q>> {
        let rs = self.root_system().ok_or(Error::NotInTorus)?;
        if u.len() != rs.dim() {
            return Err(Error::DimensionMismatch { expected: rs.dim(), got: u.len() });
        }
        let c = rs.simple_coords(u).ok_or(Error::NotInTorus)?;
        let mut x = linalg::zeros(self.dim());
        x[..rs.rank()].clone_from_slice(&c);
        Ok(x)
    }

    /// Basis indices `(u_k, v_k)` spanning the real root plane of `±root`.
    pub fn root_plane(&self, root_index: usize) -> Option<(usize, usize)> {
        let rs = self.root_system()?;
        let k = root_index % rs.positive_roots().len();
        Some((rs.rank() + 2 * k, rs.rank() + 2 * k + 1))
    }
}
