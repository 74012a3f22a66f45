//! Exact rational linear algebra: sparse row echelon forms, kernels, dense
//! matrix helpers and rational spectra of small operators.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Matrix = Vec<Vec<Q>>;
/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Q)>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    v.iter().map(fmt_q).collect::<Vec<_>>().join(" ")
}

pub fn parse_vec(s: &str) -> Result<Vec<Q>> {
    s.split_whitespace().map(parse_q).collect()
}

pub fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Q> {
    let mut out = zeros(n);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c * b` on sorted sparse vectors.
pub fn sparse_axpy(a: &SparseVec, c: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let s = &a[i].1 + c * &b[j].1;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_get(v: &SparseVec, col: usize) -> Option<&Q> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &v[k].1)
}

/// Reduced row echelon form built incrementally from sparse rows.
///
/// Every stored row has a leading 1 in its pivot column and zeros in all
/// other pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn from_dense<'a, I: IntoIterator<Item = &'a Vec<Q>>>(ncols: usize, rows: I) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(to_sparse(r));
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Subtracts the row space component, leaving only non-pivot columns.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<(usize, Q)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_of.get(c).map(|&r| (r, x.clone())))
            .collect();
        for (r, x) in hits {
            v = sparse_axpy(&v, &-x, &self.rows[r]);
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(to_sparse(v)).is_empty()
    }

    /// Inserts a row; returns `true` when it was independent of the span.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, x) in r.iter_mut() {
                *x *= &inv;
            }
        }
        let p = r[0].0;
        for k in 0..self.rows.len() {
            if let Some(x) = sparse_get(&self.rows[k], p).cloned() {
                self.rows[k] = sparse_axpy(&self.rows[k], &-x, &r);
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn insert_dense(&mut self, row: &[Q]) -> bool {
        self.insert(to_sparse(row))
    }

    /// Basis of `{x : row · x = 0 for every stored row}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut free_entries: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
        for row in &self.rows {
            let p = row[0].0;
            for (c, x) in &row[1..] {
                free_entries.entry(*c).or_default().push((p, x.clone()));
            }
        }
        (0..self.ncols)
            .filter(|c| !self.pivot_of.contains_key(c))
            .map(|f| {
                let mut v = zeros(self.ncols);
                v[f] = Q::one();
                if let Some(es) = free_entries.get(&f) {
                    for (p, x) in es {
                        v[*p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|r| to_dense(r, self.ncols)).collect()
    }
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    Echelon::from_dense(n, rows).rank()
}

/// Null space of the matrix with the given rows and `ncols` columns.
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    Echelon::from_dense(ncols, rows).kernel()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// `aᵀ G b` for a dense symmetric form `G`.
pub fn form(g: &Matrix, a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() || g[i][j].is_zero() {
                continue;
            }
            s += ai * &g[i][j] * bj;
        }
    }
    s
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Linear combination `Σ c_k v_k`.
pub fn combine(coeffs: &[Q], vectors: &[Vec<Q>], n: usize) -> Vec<Q> {
    let mut out = zeros(n);
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let bt = transpose(b);
    a.iter().map(|r| bt.iter().map(|c| dot(r, c)).collect()).collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| sub(x, y)).collect()
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| add(x, y)).collect()
}

pub fn mat_scale(c: &Q, a: &Matrix) -> Matrix {
    a.iter().map(|r| scale(c, r)).collect()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut e = Echelon::new(2 * n);
    for (i, row) in m.iter().enumerate() {
        let mut aug = row.clone();
        aug.extend(unit(n, i));
        e.insert_dense(&aug);
    }
    if e.rank() < n || e.pivots().iter().any(|&p| p >= n) {
        return None;
    }
    let mut inv = vec![zeros(n); n];
    for row in e.rows() {
        let p = row[0].0;
        for (c, x) in row {
            if *c >= n {
                inv[p][c - n] = x.clone();
            }
        }
    }
    Some(inv)
}

/// Symmetric positive definiteness by an exact LDLᵀ sweep.
pub fn is_positive_definite(m: &Matrix) -> bool {
    let n = m.len();
    let mut a = m.clone();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    true
}

pub fn gram(vectors: &[Vec<Q>], g: &Matrix) -> Matrix {
    vectors.iter().map(|a| vectors.iter().map(|b| form(g, a, b)).collect()).collect()
}

/// Vectors in `span(ambient)` orthogonal (under `g`) to every vector of `against`.
pub fn orthogonal_complement_in(ambient: &[Vec<Q>], against: &[Vec<Q>], g: &Matrix) -> Vec<Vec<Q>> {
    if ambient.is_empty() {
        return Vec::new();
    }
    let n = ambient[0].len();
    let rows: Vec<Vec<Q>> = against.iter().map(|a| ambient.iter().map(|w| form(g, a, w)).collect()).collect();
    kernel(&rows, ambient.len())
        .into_iter()
        .map(|c| primitive(&combine(&c, ambient, n)))
        .collect()
}

/// Coordinates of `v` in an independent list `basis` (None when `v` is outside the span).
pub fn coordinates(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = v.len();
    let k = basis.len();
    let mut e = Echelon::new(n + k);
    for (i, b) in basis.iter().enumerate() {
        let mut aug = b.clone();
        aug.extend(unit(k, i));
        e.insert_dense(&aug);
    }
    let mut target = v.to_vec();
    target.extend(zeros(k));
    let r = e.reduce(to_sparse(&target));
    if r.iter().any(|(c, _)| *c < n) {
        return None;
    }
    let mut out = zeros(k);
    for (c, x) in r {
        out[c - n] = -x;
    }
    Some(out)
}

/// Clears denominators and divides by the content; the first nonzero entry stays positive.
pub fn primitive(v: &[Q]) -> Vec<Q> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| x.signum());
    ints.into_iter().map(|x| Q::from_integer(x * &sign / &g)).collect()
}

/// Monic minimal polynomial of a square matrix, coefficients from constant term up.
pub fn minimal_polynomial(a: &Matrix) -> Vec<Q> {
    let n = a.len();
    let flat = |m: &Matrix| m.iter().flatten().cloned().collect::<Vec<Q>>();
    let width = n * n;
    let mut e = Echelon::new(width + n + 1);
    let mut power = identity(n);
    for k in 0..=n {
        let mut row = flat(&power);
        row.extend(unit(n + 1, k));
        let r = e.reduce(to_sparse(&row));
        if r.iter().all(|(c, _)| *c >= width) {
            let mut coeffs = zeros(k + 1);
            for (c, x) in r {
                coeffs[c - width] = x;
            }
            let lead = coeffs[k].clone();
            return coeffs.iter().map(|x| x / &lead).collect();
        }
        e.insert(r);
        power = mat_mul(&power, a);
    }
    unreachable!("Cayley-Hamilton bounds the degree")
}

pub fn eval_poly(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots of `p` (coefficients from the constant term up).
///
/// Roots are located numerically and then confirmed by exact evaluation,
/// so every returned value is a true root; irrational roots are skipped.
pub fn rational_roots(p: &[Q]) -> Vec<Q> {
    let mut p: Vec<Q> = p.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if p[0].is_zero() {
        roots.push(Q::zero());
    }
    let lead = p[deg].clone();
    let monic: Vec<Q> = p.iter().map(|c| c / &lead).collect();
    let prim = primitive(&p);
    let lead_int = prim[deg].abs();
    for z in durand_kerner(&monic) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        for cand in rational_candidates(z.re, &lead_int) {
            if eval_poly(&p, &cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    roots
}

fn rational_candidates(x: f64, lead: &Q) -> Vec<Q> {
    let mut out = Vec::new();
    if let Some(l) = lead.to_f64() {
        if l < 9.0e15 {
            let s = (x * l).round();
            if s.is_finite() {
                if let Some(num) = num_traits::FromPrimitive::from_f64(s) {
                    out.push(Q::from_integer(num) / lead);
                }
            }
        }
    }
    // Continued-fraction convergents with moderate denominators.
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..24 {
        let a = r.floor();
        let ai: BigInt = match num_traits::FromPrimitive::from_f64(a) {
            Some(v) => v,
            None => break,
        };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(1_000_000) {
            break;
        }
        out.push(Q::new(h2.clone(), k2.clone()));
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

fn durand_kerner(monic: &[Q]) -> Vec<Complex64> {
    let deg = monic.len() - 1;
    let c: Vec<f64> = monic.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Vec::new();
    }
    let bound = 1.0 + c[..deg].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, k| acc * z + k);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    z
}

/// Eigenspaces of `a` when it is diagonalizable over the rationals.
pub fn rational_eigenspaces(a: &Matrix) -> Option<Vec<(Q, Vec<Vec<Q>>)>> {
    let n = a.len();
    let mp = minimal_polynomial(a);
    let roots = rational_roots(&mp);
    if roots.len() + 1 != mp.len() {
        return None;
    }
    let spaces: Vec<(Q, Vec<Vec<Q>>)> = roots
        .into_iter()
        .map(|l| {
            let shifted: Matrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { &a[i][j] - &l } else { a[i][j].clone() }).collect())
                .collect();
            (l, kernel(&shifted, n))
        })
        .collect();
    debug_assert_eq!(spaces.iter().map(|(_, s)| s.len()).sum::<usize>(), n);
    Some(spaces)
}
