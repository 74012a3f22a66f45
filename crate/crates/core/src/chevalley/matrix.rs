use num_traits::{One, Zero};

use crate::linalg::{self, Echelon, SparseVec, Q};
use crate::rootsys::CartanType;

use super::algebra::{Backend, CompactLieAlgebra, Ideal};
use super::Gauss;

/// Sparse square matrix over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct GMatrix {
    pub size: usize,
    /// `(row, col, value)` sorted by position, without zeros.
    pub entries: Vec<(usize, usize, Gauss)>,
}

impl GMatrix {
    pub fn zero(size: usize) -> Self {
        GMatrix { size, entries: Vec::new() }
    }

    pub fn from_entries(size: usize, entries: Vec<(usize, usize, Gauss)>) -> Self {
        let mut m = GMatrix::zero(size);
        for (i, j, v) in entries {
            m.add_entry(i, j, &v);
        }
        m
    }

    fn add_entry(&mut self, i: usize, j: usize, v: &Gauss) {
        match self.entries.binary_search_by_key(&(i, j), |(a, b, _)| (*a, *b)) {
            Ok(k) => {
                let s = &self.entries[k].2 + v;
                if s.is_zero() {
                    self.entries.remove(k);
                } else {
                    self.entries[k].2 = s;
                }
            }
            Err(k) if !v.is_zero() => self.entries.insert(k, (i, j, v.clone())),
            Err(_) => {}
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Gauss {
        self.entries
            .binary_search_by_key(&(i, j), |(a, b, _)| (*a, *b))
            .map(|k| self.entries[k].2.clone())
            .unwrap_or_default()
    }

    pub fn add(&self, o: &GMatrix) -> GMatrix {
        let mut m = self.clone();
        for (i, j, v) in &o.entries {
            m.add_entry(*i, *j, v);
        }
        m
    }

    pub fn scale(&self, c: &Gauss) -> GMatrix {
        GMatrix::from_entries(self.size, self.entries.iter().map(|(i, j, v)| (*i, *j, v * c)).collect())
    }

    pub fn mul(&self, o: &GMatrix) -> GMatrix {
        let mut m = GMatrix::zero(self.size);
        for (i, k, a) in &self.entries {
            for (k2, j, b) in &o.entries {
                if k == k2 {
                    m.add_entry(*i, *j, &(a * b));
                }
            }
        }
        m
    }

    pub fn commutator(&self, o: &GMatrix) -> GMatrix {
        self.mul(o).add(&o.mul(self).scale(&Gauss::real(-Q::one())))
    }

    pub fn trace(&self) -> Gauss {
        self.entries.iter().filter(|(i, j, _)| i == j).fold(Gauss::default(), |acc, (_, _, v)| &acc + v)
    }

    /// Kronecker product `self ⊗ o` (indices `i·o.size + k`).
    pub fn kron(&self, o: &GMatrix) -> GMatrix {
        let n = o.size;
        let mut entries = Vec::new();
        for (i, j, a) in &self.entries {
            for (k, l, b) in &o.entries {
                entries.push((i * n + k, j * n + l, a * b));
            }
        }
        GMatrix::from_entries(self.size * n, entries)
    }

    pub fn identity(size: usize) -> Self {
        GMatrix::from_entries(size, (0..size).map(|i| (i, i, Gauss::real(Q::one()))).collect())
    }

    /// Real coordinates `(re, im)` of every entry, flattened row-major.
    fn flat(&self) -> SparseVec {
        let mut out = Vec::new();
        for (i, j, v) in &self.entries {
            let p = 2 * (i * self.size + j);
            if !v.re.is_zero() {
                out.push((p, v.re.clone()));
            }
            if !v.im.is_zero() {
                out.push((p + 1, v.im.clone()));
            }
        }
        out
    }
}

/// Expresses matrices in a fixed real basis.
struct Coordinatizer {
    width: usize,
    echelon: Echelon,
}

impl Coordinatizer {
    fn new(mats: &[GMatrix]) -> Self {
        let size = mats[0].size;
        let width = 2 * size * size;
        let k = mats.len();
        let mut echelon = Echelon::new(width + k);
        for (t, m) in mats.iter().enumerate() {
            let mut row = m.flat();
            row.push((width + t, Q::one()));
            assert!(echelon.insert(row), "matrix basis is linearly dependent");
        }
        Coordinatizer { width, echelon }
    }

    fn coords(&self, m: &GMatrix) -> Option<SparseVec> {
        let r = self.echelon.reduce(m.flat());
        if r.iter().any(|(c, _)| *c < self.width) {
            return None;
        }
        Some(r.into_iter().map(|(c, x)| (c - self.width, -x)).collect())
    }
}

fn from_matrices(name: String, family: &str, size: usize, mats: Vec<GMatrix>, labels: Vec<String>, ideal_type: Option<CartanType>) -> CompactLieAlgebra {
    let n = mats.len();
    let coord = Coordinatizer::new(&mats);
    let mut table: Vec<SparseVec> = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let c = coord.coords(&mats[i].commutator(&mats[j])).expect("matrix basis closes under the commutator");
            table[j * n + i] = c.iter().map(|(k, x)| (*k, -x)).collect();
            table[i * n + j] = c;
        }
    }
    let ideals = ideal_type.map(|t| {
        vec![Ideal { cartan_type: Some(t), basis: (0..n).map(|i| linalg::unit(n, i)).collect() }]
    });
    CompactLieAlgebra::assemble(name, Backend::Matrix { family: family.to_string(), size, mats }, labels, table, None, ideals)
}

/// `so(n)` with basis `L_ij = E_ij − E_ji` (`i < j`, lexicographic).
pub fn so_matrix_algebra(n: usize) -> CompactLieAlgebra {
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            mats.push(GMatrix::from_entries(n, vec![(i, j, Gauss::real(Q::one())), (j, i, Gauss::real(-Q::one()))]));
            labels.push(format!("L{}_{}", i + 1, j + 1));
        }
    }
    let ty = match n {
        3 => CartanType::new('A', 1).ok(),
        4 => None,
        5 => CartanType::new('B', 2).ok(),
        6 => CartanType::new('A', 3).ok(),
        _ if n % 2 == 1 => CartanType::new('B', (n - 1) / 2).ok(),
        _ => CartanType::new('D', n / 2).ok(),
    };
    from_matrices(format!("so-matrix {n}"), "so", n, mats, labels, ty)
}

/// `su(n)` with basis `i(E_jj − E_{j+1,j+1})`, then `E_ij − E_ji`, `i(E_ij + E_ji)` for `i < j`.
pub fn su_matrix_algebra(n: usize) -> CompactLieAlgebra {
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for j in 0..n - 1 {
        mats.push(GMatrix::from_entries(n, vec![(j, j, Gauss::i()), (j + 1, j + 1, -&Gauss::i())]));
        labels.push(format!("d{}", j + 1));
    }
    for i in 0..n {
        for j in i + 1..n {
            mats.push(GMatrix::from_entries(n, vec![(i, j, Gauss::real(Q::one())), (j, i, Gauss::real(-Q::one()))]));
            labels.push(format!("x{}_{}", i + 1, j + 1));
            mats.push(GMatrix::from_entries(n, vec![(i, j, Gauss::i()), (j, i, Gauss::i())]));
            labels.push(format!("y{}_{}", i + 1, j + 1));
        }
    }
    from_matrices(format!("su-matrix {n}"), "su", n, mats, labels, CartanType::new('A', n - 1).ok())
}

impl CompactLieAlgebra {
    /// The matrix of an element (matrix backend only).
    pub fn matrix_of(&self, x: &[Q]) -> Option<GMatrix> {
        let Backend::Matrix { mats, size, .. } = self.backend() else { return None };
        let mut m = GMatrix::zero(*size);
        for (c, b) in x.iter().zip(mats) {
            if !c.is_zero() {
                m = m.add(&b.scale(&Gauss::real(c.clone())));
            }
        }
        Some(m)
    }

    /// Coordinates of a matrix in the basis (None when outside the algebra).
    pub fn coords_of_matrix(&self, m: &GMatrix) -> Option<Vec<Q>> {
        let Backend::Matrix { mats, .. } = self.backend() else { return None };
        let c = Coordinatizer::new(mats).coords(m)?;
        Some(linalg::to_dense(&c, self.dim()))
    }

    /// `−trace(xy)` of the defining matrices (matrix backend only).
    pub fn neg_trace_form(&self, x: &[Q], y: &[Q]) -> Option<Q> {
        let t = self.matrix_of(x)?.mul(&self.matrix_of(y)?).trace();
        debug_assert!(t.im.is_zero());
        Some(-t.re)
    }
}
