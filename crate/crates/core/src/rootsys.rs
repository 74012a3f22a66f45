//! Root systems of types A–G realized in rational quadratic spaces.
//!
//! Default realizations (gram is the identity unless noted):
//!
//! | type | space | simple roots |
//! |------|-------|--------------|
//! | A_n  | R^{n+1} | e_i − e_{i+1} |
//! | B_n  | R^n | e_i − e_{i+1}, e_n |
//! | C_2  | R^2 | e_2, e_1 − e_2 (roots ±e_1, ±e_2, ±e_1 ± e_2) |
//! | C_n, n ≥ 3 | R^n | e_i − e_{i+1}, 2e_n |
//! | D_n  | R^n | e_i − e_{i+1}, e_{n−1} + e_n |
//! | G_2  | R^3 | e_1 − e_2, −2e_1 + e_2 + e_3 |
//! | F_4  | R^4 | e_2 − e_3, e_3 − e_4, e_4, ½(e_1 − e_2 − e_3 − e_4) |
//! | E_6  | as E_7 | α_2, …, α_7 of the E_7 realization |
//! | E_7  | R^7, gram diag(1,…,1,2) | e_i − e_{i+1} (i ≤ 5), e_5 + e_6, −½(e_1 + … + e_6 + f_7) |
//! | E_8  | R^8 | ½(e_1 + e_8) − ½(e_2 + … + e_7), e_1 + e_2, e_{i−2} − e_{i−3} (i ≥ 3) |
//!
//! In the E_7 space the last basis vector `f_7` has norm 2, so it plays the
//! role of √2·e_7 and every root has rational coordinates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{self, fmt_vec, form, parse_vec, q, qr, unit, zeros, Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub series: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: char, rank: usize) -> Result<Self> {
        let series = series.to_ascii_uppercase();
        let ok = match series {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 3,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::InvalidRank { series, rank })
        }
    }

    /// Parses labels such as `G2` or `E8`.
    pub fn parse(label: &str) -> Result<Self> {
        let mut chars = label.trim().chars();
        let series = chars.next().ok_or_else(|| Error::Parse("empty Cartan type".into()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Cartan type `{label}`")))?;
        CartanType::new(series, rank)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    /// Dimension of the compact simple Lie algebra of this type.
    pub fn algebra_dim(&self) -> usize {
        let n = self.rank;
        match self.series {
            'A' => n * (n + 2),
            'B' | 'C' => n * (2 * n + 1),
            'D' => n * (2 * n - 1),
            'E' => [78, 133, 248][n - 6],
            'F' => 52,
            'G' => 14,
            _ => unreachable!(),
        }
    }

    pub fn root_count(&self) -> usize {
        self.algebra_dim() - self.rank
    }

    /// Cartan matrix `A_ij = 2(α_i, α_j)/(α_j, α_j)` of the default simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let (gram, simple) = default_simple_roots(*self);
        cartan_matrix_of(&gram, &simple)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

pub fn types_label(types: &[CartanType]) -> String {
    if types.is_empty() {
        return "0".to_string();
    }
    types.iter().map(|t| t.label()).collect::<Vec<_>>().join("+")
}

pub fn parse_types_label(label: &str) -> Result<Vec<CartanType>> {
    if label == "0" {
        return Ok(Vec::new());
    }
    label.split('+').map(CartanType::parse).collect()
}

fn diag_gram(n: usize) -> Matrix {
    linalg::identity(n)
}

fn e(n: usize, i: usize) -> Vec<Q> {
    unit(n, i)
}

fn vec_of(n: usize, entries: &[(usize, Q)]) -> Vec<Q> {
    let mut v = zeros(n);
    for (i, x) in entries {
        v[*i] += x;
    }
    v
}

fn e7_space() -> (Matrix, Vec<Vec<Q>>) {
    let n = 7;
    let mut gram = diag_gram(n);
    gram[6][6] = q(2);
    let mut simple: Vec<Vec<Q>> = (0..5).map(|i| linalg::sub(&e(n, i), &e(n, i + 1))).collect();
    simple.push(vec_of(n, &[(4, q(1)), (5, q(1))]));
    simple.push(vec![qr(-1, 2); 7]);
    (gram, simple)
}

/// Gram matrix of the ambient space and simple roots of the default realization.
pub fn default_simple_roots(t: CartanType) -> (Matrix, Vec<Vec<Q>>) {
    let n = t.rank;
    let chain = |dim: usize, len: usize| -> Vec<Vec<Q>> {
        (0..len).map(|i| linalg::sub(&e(dim, i), &e(dim, i + 1))).collect()
    };
    match t.series {
        'A' => (diag_gram(n + 1), chain(n + 1, n)),
        'B' => {
            let mut s = chain(n, n - 1);
            s.push(e(n, n - 1));
            (diag_gram(n), s)
        }
        'C' if n == 2 => (diag_gram(2), vec![e(2, 1), vec![q(1), q(-1)]]),
        'C' => {
            let mut s = chain(n, n - 1);
            s.push(vec_of(n, &[(n - 1, q(2))]));
            (diag_gram(n), s)
        }
        'D' => {
            let mut s = chain(n, n - 1);
            s.push(vec_of(n, &[(n - 2, q(1)), (n - 1, q(1))]));
            (diag_gram(n), s)
        }
        'G' => (diag_gram(3), vec![vec![q(1), q(-1), q(0)], vec![q(-2), q(1), q(1)]]),
        'F' => {
            let h = qr(1, 2);
            (
                diag_gram(4),
                vec![
                    vec![q(0), q(1), q(-1), q(0)],
                    vec![q(0), q(0), q(1), q(-1)],
                    vec![q(0), q(0), q(0), q(1)],
                    vec![h.clone(), -h.clone(), -h.clone(), -h],
                ],
            )
        }
        'E' if n == 6 => {
            let (gram, s) = e7_space();
            (gram, s[1..].to_vec())
        }
        'E' if n == 7 => e7_space(),
        'E' => {
            let d = 8;
            let h = qr(1, 2);
            let mut a1 = vec![-h.clone(); 8];
            a1[0] = h.clone();
            a1[7] = h;
            let mut s = vec![a1, vec_of(d, &[(0, q(1)), (1, q(1))])];
            for i in 0..6 {
                s.push(linalg::sub(&e(d, i + 1), &e(d, i)));
            }
            (diag_gram(d), s)
        }
        _ => unreachable!(),
    }
}

pub fn cartan_matrix_of(gram: &Matrix, simple: &[Vec<Q>]) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| {
                    let v = q(2) * form(gram, a, b) / form(gram, b, b);
                    v.to_integer().to_i64().filter(|_| v.is_integer()).unwrap_or(i64::MIN)
                })
                .collect()
        })
        .collect()
}

fn block_diag(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![zeros(n); n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[off + i][off + j] = x.clone();
            }
        }
        off += b.len();
    }
    out
}

fn pad(v: &[Q], off: usize, n: usize) -> Vec<Q> {
    let mut out = zeros(n);
    for (i, x) in v.iter().enumerate() {
        out[off + i] = x.clone();
    }
    out
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    components: Vec<CartanType>,
    gram: Matrix,
    simple: Vec<Vec<Q>>,
    positive: Vec<Vec<Q>>,
    all: Vec<Vec<Q>>,
    pos_coeffs: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    simple_gram_inv: Matrix,
    index: HashMap<Vec<Q>, usize>,
}

impl RootSystem {
    /// The default realization of a simple type.
    pub fn new(t: CartanType) -> Self {
        Self::direct_sum(&[t])
    }

    /// Orthogonal direct sum of default realizations, in block coordinates.
    pub fn direct_sum(types: &[CartanType]) -> Self {
        let parts: Vec<(Matrix, Vec<Vec<Q>>)> = types.iter().map(|t| default_simple_roots(*t)).collect();
        let n: usize = parts.iter().map(|(g, _)| g.len()).sum();
        let gram = block_diag(&parts.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>());
        let mut simple = Vec::new();
        let mut off = 0;
        for (g, s) in &parts {
            simple.extend(s.iter().map(|v| pad(v, off, n)));
            off += g.len();
        }
        Self::generate(types.to_vec(), gram, simple)
    }

    /// A user-supplied realization; the simple roots must have the Cartan
    /// matrix of the given types (up to reordering).
    pub fn from_realization(types: &[CartanType], gram: Matrix, simple: Vec<Vec<Q>>) -> Result<Self> {
        let label = types_label(types);
        let dim = gram.len();
        if gram.iter().any(|r| r.len() != dim) || simple.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: simple.first().map_or(0, |v| v.len()) });
        }
        if !linalg::is_positive_definite(&gram) || gram != linalg::transpose(&gram) {
            return Err(Error::Parse("gram matrix is not symmetric positive definite".into()));
        }
        let expected_rank: usize = types.iter().map(|t| t.rank).sum();
        if simple.len() != expected_rank || linalg::rank(&simple) != expected_rank {
            return Err(Error::WrongCartanMatrix(label));
        }
        let found = cartan_components(&cartan_matrix_of(&gram, &simple)).ok_or_else(|| Error::WrongCartanMatrix(label.clone()))?;
        let mut want = types.to_vec();
        want.sort();
        let mut got: Vec<CartanType> = found.into_iter().map(|(t, _)| t).collect();
        got.sort();
        if canonical(&want) != canonical(&got) {
            return Err(Error::WrongCartanMatrix(label));
        }
        Ok(Self::generate(types.to_vec(), gram, simple))
    }

    fn generate(components: Vec<CartanType>, gram: Matrix, simple: Vec<Vec<Q>>) -> Self {
        let r = simple.len();
        let cartan = cartan_matrix_of(&gram, &simple);
        // Closure under simple reflections, in simple-root coordinates.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut c = vec![0i64; r];
            c[i] = 1;
            seen.insert(c.clone());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| c[j] * cartan[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut d = c.clone();
                d[i] -= pairing;
                if seen.insert(d.clone()) {
                    queue.push_back(d);
                }
            }
        }
        let mut pos_coeffs: Vec<Vec<i64>> = seen.into_iter().filter(|c| c.iter().all(|&x| x >= 0)).collect();
        pos_coeffs.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
        let dim = gram.len();
        let positive: Vec<Vec<Q>> = pos_coeffs
            .iter()
            .map(|c| {
                let coeffs: Vec<Q> = c.iter().map(|&x| q(x)).collect();
                linalg::combine(&coeffs, &simple, dim)
            })
            .collect();
        let mut all = positive.clone();
        all.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<Q>>()));
        let index = all.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let simple_gram_inv = linalg::inverse(&linalg::gram(&simple, &gram)).expect("simple roots are independent");
        RootSystem { components, gram, simple, positive, all, pos_coeffs, cartan, simple_gram_inv, index }
    }

    pub fn components(&self) -> &[CartanType] {
        &self.components
    }

    pub fn label(&self) -> String {
        types_label(&self.components)
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Dimension of the ambient quadratic space.
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Dimension of the Lie algebra: rank plus number of roots.
    pub fn algebra_dim(&self) -> usize {
        self.rank() + self.all.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Vec<Q>] {
        &self.positive
    }

    /// Positive roots followed by their negatives in the same order.
    pub fn all_roots(&self) -> &[Vec<Q>] {
        &self.all
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Simple-root coefficients of the `i`-th positive root.
    pub fn positive_coeffs(&self, i: usize) -> &[i64] {
        &self.pos_coeffs[i]
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        form(&self.gram, a, b)
    }

    /// Index into `all_roots`.
    pub fn root_index(&self, v: &[Q]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        self.index.contains_key(v)
    }

    /// Index of the negative of root `i`.
    pub fn negate_index(&self, i: usize) -> usize {
        let np = self.positive.len();
        if i < np {
            i + np
        } else {
            i - np
        }
    }

    /// Index of the simple component containing simple root `i`.
    pub fn component_of_simple(&self, i: usize) -> usize {
        let mut off = 0;
        for (k, t) in self.components.iter().enumerate() {
            off += t.rank;
            if i < off {
                return k;
            }
        }
        unreachable!()
    }

    /// Component index of the `i`-th root of `all_roots`.
    pub fn component_of_root(&self, i: usize) -> usize {
        let p = i % self.positive.len();
        let j = self.pos_coeffs[p].iter().position(|&c| c != 0).unwrap();
        self.component_of_simple(j)
    }

    pub fn reflect(&self, alpha: &[Q], v: &[Q]) -> Vec<Q> {
        let c = q(2) * self.inner(v, alpha) / self.inner(alpha, alpha);
        linalg::sub(v, &linalg::scale(&c, alpha))
    }

    /// Coordinates of `v` in the simple-root basis, if `v` lies in their span.
    pub fn simple_coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let pairings: Vec<Q> = self.simple.iter().map(|a| self.inner(a, v)).collect();
        let c = linalg::mat_vec(&self.simple_gram_inv, &pairings);
        let back = linalg::combine(&c, &self.simple, self.dim());
        (back == v).then_some(c)
    }

    /// Weyl-conjugates `u` into the closed dominant chamber by simple-reflection
    /// descent; returns the image and the indices of the reflections applied.
    pub fn dominant_representative(&self, u: &[Q]) -> (Vec<Q>, Vec<usize>) {
        let mut v = u.to_vec();
        let mut word = Vec::new();
        loop {
            let neg = (0..self.rank()).find(|&i| self.inner(&self.simple[i], &v).is_negative());
            match neg {
                Some(i) => {
                    v = self.reflect(&self.simple[i], &v);
                    word.push(i);
                }
                None => return (v, word),
            }
        }
    }

    /// Roots orthogonal to `u`, in `all_roots` order.
    pub fn orthogonal_subsystem(&self, u: &[Q]) -> Vec<Vec<Q>> {
        self.all.iter().filter(|a| self.inner(a, u).is_zero()).cloned().collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.label(), self.rank(), self.dim());
        for row in &self.gram {
            s.push_str(&fmt_vec(row));
            s.push('\n');
        }
        s.push_str(&format!("simple {}\n", self.rank()));
        for v in &self.simple {
            s.push_str(&fmt_vec(v));
            s.push('\n');
        }
        s.push_str(&format!("roots {}\n", self.all.len()));
        for v in &self.all {
            s.push_str(&fmt_vec(v));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("root system text: {m}"));
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split_whitespace().collect();
        if header.len() != 3 {
            return Err(bad("header must be `type rank dim`"));
        }
        let types = parse_types_label(header[0])?;
        let rank: usize = header[1].parse().map_err(|_| bad("rank"))?;
        let dim: usize = header[2].parse().map_err(|_| bad("dim"))?;
        let mut gram = Vec::with_capacity(dim);
        for _ in 0..dim {
            gram.push(parse_vec(lines.next().ok_or_else(|| bad("gram"))?)?);
        }
        if lines.next() != Some(format!("simple {rank}").as_str()) {
            return Err(bad("expected `simple` section"));
        }
        let mut simple = Vec::with_capacity(rank);
        for _ in 0..rank {
            simple.push(parse_vec(lines.next().ok_or_else(|| bad("simple root"))?)?);
        }
        let rs = RootSystem::from_realization(&types, gram, simple)?;
        if lines.next() != Some(format!("roots {}", rs.all.len()).as_str()) {
            return Err(bad("root count"));
        }
        for want in &rs.all {
            let got = parse_vec(lines.next().ok_or_else(|| bad("root"))?)?;
            if &got != want {
                return Err(bad("listed roots differ from the generated ones"));
            }
        }
        Ok(rs)
    }

    /// Hex SHA-256 of the text serialization.
    pub fn realization_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

/// Replaces the low-rank coincidences C2 → B2 and D3 → A3.
pub fn canonical(types: &[CartanType]) -> Vec<CartanType> {
    let mut out: Vec<CartanType> = types
        .iter()
        .map(|t| match (t.series, t.rank) {
            ('C', 2) => CartanType { series: 'B', rank: 2 },
            ('D', 3) => CartanType { series: 'A', rank: 3 },
            _ => *t,
        })
        .collect();
    out.sort();
    out
}

/// Splits a Cartan matrix into connected components and identifies each.
/// Returns the type and the indices of the component's simple roots.
fn cartan_components(cartan: &[Vec<i64>]) -> Option<Vec<(CartanType, Vec<usize>)>> {
    let r = cartan.len();
    let mut comp = vec![usize::MAX; r];
    let mut out = Vec::new();
    for start in 0..r {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..r {
                if comp[j] == usize::MAX && cartan[i][j] != 0 {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort();
        let sub: Vec<Vec<i64>> = members.iter().map(|&i| members.iter().map(|&j| cartan[i][j]).collect()).collect();
        out.push((identify_connected(&sub)?, members));
    }
    Some(out)
}

fn identify_connected(a: &[Vec<i64>]) -> Option<CartanType> {
    let r = a.len();
    if a.iter().enumerate().any(|(i, row)| row[i] != 2) {
        return None;
    }
    let bond = |i: usize, j: usize| a[i][j] * a[j][i];
    let mut max_bond = 0;
    let mut degree = vec![0usize; r];
    for i in 0..r {
        for j in 0..r {
            if i != j && a[i][j] != 0 {
                degree[i] += 1;
                max_bond = max_bond.max(bond(i, j));
            }
        }
    }
    let guess = if r == 1 {
        CartanType::new('A', 1).ok()
    } else if max_bond == 3 {
        CartanType::new('G', 2).ok()
    } else if max_bond == 2 {
        let lengths = relative_lengths(a)?;
        let short = lengths.iter().filter(|&&l| l == 1).count();
        if r == 4 && short == 2 && degree.iter().all(|&d| d <= 2) {
            let ends_double = (0..r).any(|i| degree[i] == 1 && (0..r).any(|j| j != i && a[i][j] != 0 && bond(i, j) == 2));
            if ends_double {
                CartanType::new('C', 4).ok()
            } else {
                CartanType::new('F', 4).ok()
            }
        } else if short == 1 || r == 2 {
            CartanType::new('B', r).ok()
        } else {
            CartanType::new('C', r).ok()
        }
    } else {
        let branch: Vec<usize> = (0..r).filter(|&i| degree[i] >= 3).collect();
        match branch.as_slice() {
            [] => CartanType::new('A', r).ok(),
            [b] if degree[*b] == 3 => {
                let mut arms: Vec<usize> = (0..r)
                    .filter(|&j| j != *b && a[*b][j] != 0)
                    .map(|j| arm_length(a, *b, j))
                    .collect();
                arms.sort();
                match arms.as_slice() {
                    [1, 1, _] => CartanType::new('D', r).ok(),
                    [1, 2, 2] => CartanType::new('E', 6).ok(),
                    [1, 2, 3] => CartanType::new('E', 7).ok(),
                    [1, 2, 4] => CartanType::new('E', 8).ok(),
                    _ => None,
                }
            }
            _ => None,
        }
    }?;
    let guess = if guess.series == 'D' && guess.rank == 3 { CartanType { series: 'A', rank: 3 } } else { guess };
    cartan_isomorphic(a, &guess.cartan_matrix()).then_some(guess)
}

/// Squared root lengths relative to the shortest (1, 2 or 3) for a connected Cartan matrix.
fn relative_lengths(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let r = a.len();
    // (α_j,α_j)/(α_i,α_i) = a_ji / a_ij for adjacent i, j.
    let mut len: Vec<Option<Q>> = vec![None; r];
    len[0] = Some(Q::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..r {
            if j != i && a[i][j] != 0 && len[j].is_none() {
                let li = len[i].clone().unwrap();
                len[j] = Some(li * Q::new(a[j][i].into(), a[i][j].into()));
                stack.push(j);
            }
        }
    }
    let len: Vec<Q> = len.into_iter().collect::<Option<_>>()?;
    let min = len.iter().min()?.clone();
    len.iter().map(|l| (l / &min).to_integer().to_i64()).collect()
}

fn arm_length(a: &[Vec<i64>], from: usize, first: usize) -> usize {
    let mut prev = from;
    let mut cur = first;
    let mut n = 1;
    loop {
        let next = (0..a.len()).find(|&j| j != cur && j != prev && a[cur][j] != 0);
        match next {
            Some(j) => {
                prev = cur;
                cur = j;
                n += 1;
            }
            None => return n,
        }
    }
}

/// Whether two Cartan matrices agree after a simultaneous permutation.
pub fn cartan_isomorphic(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    fn extend(a: &[Vec<i64>], b: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = perm.len();
        if k == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] {
                continue;
            }
            if (0..k).all(|i| a[k][i] == b[c][perm[i]] && a[i][k] == b[perm[i]][c]) {
                used[c] = true;
                perm.push(c);
                if extend(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }
    extend(a, b, &mut Vec::new(), &mut vec![false; n])
}

/// Decomposes a root subsystem (given as vectors in a quadratic space) into
/// irreducible types, sorted. Rank-2 type BC is reported as `B2` and D3 as `A3`.
pub fn classify_subsystem(gram: &Matrix, roots: &[Vec<Q>]) -> Result<Vec<CartanType>> {
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let set: HashSet<&Vec<Q>> = roots.iter().collect();
    if set.len() != roots.len() {
        return Err(Error::NotClosed("repeated root".into()));
    }
    for a in roots {
        if a.iter().all(|x| x.is_zero()) {
            return Err(Error::NotClosed("zero vector".into()));
        }
        let aa = form(gram, a, a);
        for b in roots {
            let c = q(2) * form(gram, a, b) / &aa;
            if !c.is_integer() {
                return Err(Error::NotClosed("non-integral pairing".into()));
            }
            let refl = linalg::sub(b, &linalg::scale(&c, a));
            if !set.contains(&refl) {
                return Err(Error::NotClosed(format!("reflection of [{}] missing", fmt_vec(b))));
            }
        }
    }
    let positive = generic_positive(gram, roots);
    let pos_set: HashSet<&Vec<Q>> = positive.iter().collect();
    let simple: Vec<Vec<Q>> = positive
        .iter()
        .filter(|b| !positive.iter().any(|a| pos_set.contains(&linalg::sub(b, a))))
        .cloned()
        .collect();
    if linalg::rank(&simple) != simple.len() {
        return Err(Error::NotClosed("decomposable simple system".into()));
    }
    let comps = cartan_components(&cartan_matrix_of(gram, &simple))
        .ok_or_else(|| Error::NotClosed("unrecognized Cartan matrix".into()))?;
    // Every positive root must lie in exactly one component with the right count.
    let mut counts = vec![0usize; comps.len()];
    for b in &positive {
        let c = linalg::coordinates(&simple, b).ok_or_else(|| Error::NotClosed("root outside simple span".into()))?;
        let support: HashSet<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
        let k = comps
            .iter()
            .position(|(_, m)| support.iter().all(|i| m.contains(i)))
            .ok_or_else(|| Error::NotClosed("root spans several components".into()))?;
        counts[k] += 1;
    }
    for ((t, _), n) in comps.iter().zip(&counts) {
        if 2 * n != t.root_count() {
            return Err(Error::NotClosed(format!("component {t} has {} roots", 2 * n)));
        }
    }
    Ok(canonical(&comps.into_iter().map(|(t, _)| t).collect::<Vec<_>>()))
}

/// Roots positive under a linear functional that vanishes on none of them.
fn generic_positive(gram: &Matrix, roots: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = gram.len();
    for base in 2i64.. {
        let mut z = zeros(n);
        let mut p = Q::one();
        for zi in z.iter_mut() {
            *zi = p.clone();
            p /= q(base) + qr(1, 7);
        }
        let vals: Vec<Q> = roots.iter().map(|a| form(gram, a, &z)).collect();
        if vals.iter().all(|v| !v.is_zero()) {
            return roots.iter().zip(&vals).filter(|(_, v)| v.is_positive()).map(|(a, _)| a.clone()).collect();
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_ranks() {
        assert!(CartanType::new('B', 1).is_err());
        assert!(CartanType::new('D', 2).is_err());
        assert!(CartanType::new('E', 5).is_err());
        assert!(CartanType::new('F', 3).is_err());
        assert!(CartanType::new('X', 3).is_err());
    }

    #[test]
    fn c2_uses_plain_coordinates() {
        let rs = RootSystem::new(CartanType::new('C', 2).unwrap());
        let mut got: Vec<String> = rs.all_roots().iter().map(|v| fmt_vec(v)).collect();
        got.sort();
        let mut want = vec!["1 0", "-1 0", "0 1", "0 -1", "1 1", "1 -1", "-1 1", "-1 -1"];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn wrong_cartan_matrix_rejected() {
        let gram = linalg::identity(3);
        let simple = vec![vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)]];
        let err = RootSystem::from_realization(&[CartanType::new('B', 2).unwrap()], gram.clone(), simple.clone());
        assert!(err.is_err());
        assert!(RootSystem::from_realization(&[CartanType::new('A', 2).unwrap()], gram, simple).is_ok());
    }

    #[test]
    fn text_round_trip() {
        for label in ["A2", "C2", "G2", "E6"] {
            let rs = RootSystem::new(CartanType::parse(label).unwrap());
            let back = RootSystem::from_text(&rs.to_text()).unwrap();
            assert_eq!(back.to_text(), rs.to_text());
        }
    }

    #[test]
    fn classify_low_rank_coincidences() {
        let rs = RootSystem::new(CartanType::new('D', 3).unwrap());
        let t = classify_subsystem(rs.gram(), rs.all_roots()).unwrap();
        assert_eq!(types_label(&t), "A3");
        let rs = RootSystem::new(CartanType::new('C', 4).unwrap());
        let t = classify_subsystem(rs.gram(), rs.all_roots()).unwrap();
        assert_eq!(types_label(&t), "C4");
    }

    #[test]
    fn classify_rejects_non_closed() {
        let gram = linalg::identity(2);
        let roots = vec![vec![q(1), q(0)], vec![q(-1), q(0)], vec![q(1), q(1)], vec![q(-1), q(-1)]];
        assert!(classify_subsystem(&gram, &roots).is_err());
    }
}
