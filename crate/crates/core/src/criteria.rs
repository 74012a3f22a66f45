//! Geodesic and equigeodesic criteria on reductive pairs, the numeric
//! bounds for Finsler equigeodesic spaces and the classification verdict.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chevalley::commutant_basis;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix, Q};
use crate::pairs::{isotypic_split, local_decompose, symmetric_pair_test, IsotypicSplit, ReductivePair, SplitFailure, SplitVerdict};
use crate::rootsys::CartanType;

pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_TRIALS: usize = 8;
/// Random coordinates are drawn from `{−B..B} \ {0}`.
pub const COORD_BOUND: i64 = 13;
const PERTURBATIONS: usize = 3;

/// A bi-symmetric, positive definite operator on `m` commuting with `ad(h)`,
/// stored as a matrix in `m_basis` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricOperator {
    matrix: Matrix,
}

fn m_gram(pair: &ReductivePair) -> Matrix {
    linalg::gram(pair.m_basis(), pair.g().bi_form())
}

/// Orthogonal projector (in m coordinates) onto the span of `cols`.
fn projector(cols: &[Vec<Q>], gram: &Matrix) -> Matrix {
    let inv = linalg::inverse(&linalg::gram(cols, gram)).expect("definite");
    let d = gram.len();
    let mut p = vec![linalg::zeros(d); d];
    for j in 0..d {
        let e = linalg::unit(d, j);
        let pairing: Vec<Q> = cols.iter().map(|c| linalg::form(gram, c, &e)).collect();
        let col = linalg::combine(&linalg::mat_vec(&inv, &pairing), cols, d);
        for i in 0..d {
            p[i][j] = col[i].clone();
        }
    }
    p
}

impl MetricOperator {
    pub fn identity(pair: &ReductivePair) -> Self {
        MetricOperator { matrix: linalg::identity(pair.m_basis().len()) }
    }

    /// `Σ c_i · id` on the summands of a split.
    pub fn block(pair: &ReductivePair, split: &IsotypicSplit, scalars: &[Q]) -> Result<Self> {
        if scalars.len() != split.summands.len() {
            return Err(Error::DimensionMismatch { expected: split.summands.len(), got: scalars.len() });
        }
        if scalars.iter().any(|c| *c <= Q::zero()) {
            return Err(Error::BadMetric("block scalars must be positive".into()));
        }
        let blocks: Vec<Vec<Vec<Q>>> = split.summands.iter().map(|s| s.basis.clone()).collect();
        Self::from_summands(pair, &blocks, scalars)
    }

    /// `Σ c_i · id` on given mutually orthogonal invariant subspaces of `m`
    /// (elements of `g`), validated as a metric operator.
    pub fn from_summands(pair: &ReductivePair, blocks: &[Vec<Vec<Q>>], scalars: &[Q]) -> Result<Self> {
        if scalars.len() != blocks.len() {
            return Err(Error::DimensionMismatch { expected: blocks.len(), got: scalars.len() });
        }
        let gram = m_gram(pair);
        let d = gram.len();
        let mut matrix = vec![linalg::zeros(d); d];
        for (b, c) in blocks.iter().zip(scalars) {
            let cols: Vec<Vec<Q>> = b.iter().map(|v| pair.m_coords(v)).collect::<Result<_>>()?;
            matrix = linalg::mat_add(&matrix, &linalg::mat_scale(c, &projector(&cols, &gram)));
        }
        Self::from_matrix(pair, matrix)
    }

    /// Validates an arbitrary matrix in m coordinates.
    pub fn from_matrix(pair: &ReductivePair, matrix: Matrix) -> Result<Self> {
        pair.guard("metric operator")?;
        let d = pair.m_basis().len();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: matrix.len() });
        }
        let gl = linalg::mat_mul(&m_gram(pair), &matrix);
        if gl != linalg::transpose(&gl) {
            return Err(Error::BadMetric("not symmetric for the bi-invariant form".into()));
        }
        if !linalg::is_positive_definite(&gl) {
            return Err(Error::BadMetric("not positive definite".into()));
        }
        for x in pair.h_basis() {
            let ad = pair.ad_on_m(x)?;
            if linalg::mat_mul(&ad, &matrix) != linalg::mat_mul(&matrix, &ad) {
                return Err(Error::BadMetric("does not commute with ad(h)".into()));
            }
        }
        Ok(MetricOperator { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `Λ(v_m)` as an element of `g`.
    pub fn apply(&self, pair: &ReductivePair, v: &[Q]) -> Result<Vec<Q>> {
        let c = pair.m_coords(v)?;
        Ok(pair.from_m_coords(&linalg::mat_vec(&self.matrix, &c)))
    }
}

/// Basis of the bi-symmetric operators on `m` commuting with `ad(h)`.
pub fn symmetric_commutant(pair: &ReductivePair) -> Result<Vec<Matrix>> {
    pair.guard("symmetric_commutant")?;
    let d = pair.m_basis().len();
    let ads: Vec<Matrix> = pair.h_basis().iter().map(|x| pair.ad_on_m(x)).collect::<Result<_>>()?;
    let gram = m_gram(pair);
    let inv = linalg::inverse(&gram).expect("definite");
    let half = Q::new(1.into(), 2.into());
    let mut e = Echelon::new(d * d);
    let mut out = Vec::new();
    for t in commutant_basis(&ads, d) {
        let adj = linalg::mat_mul(&inv, &linalg::mat_mul(&linalg::transpose(&t), &gram));
        let s = linalg::mat_scale(&half, &linalg::mat_add(&t, &adj));
        if e.insert_dense(&s.concat()) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Metric operators whose span contains every metric operator: the identity
/// and `id + εS` for each symmetric commutant basis element `S`.
pub fn metric_operator_family(pair: &ReductivePair) -> Result<Vec<MetricOperator>> {
    let id = MetricOperator::identity(pair);
    let gram = m_gram(pair);
    let d = id.matrix.len();
    let mut out = vec![id.clone()];
    let mut span = Echelon::new(d * d);
    span.insert_dense(&id.matrix.concat());
    for s in symmetric_commutant(pair)? {
        if !span.insert_dense(&s.concat()) {
            continue;
        }
        let mut eps = Q::one();
        loop {
            let m = linalg::mat_add(&id.matrix, &linalg::mat_scale(&eps, &s));
            if linalg::is_positive_definite(&linalg::mat_mul(&gram, &m)) {
                out.push(MetricOperator { matrix: m });
                break;
            }
            eps /= Q::from_integer(2.into());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    HoldsProbabilistically,
    Indeterminate,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails-with-witness",
            Outcome::HoldsProbabilistically => "holds-probabilistically",
            Outcome::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Witness vectors in `g` coordinates; their meaning is given by `note`.
    pub witness: Vec<Vec<Q>>,
    pub trials: usize,
    pub seed: u64,
    pub note: String,
}

impl Verdict {
    fn new(outcome: Outcome, witness: Vec<Vec<Q>>, note: impl Into<String>) -> Self {
        Verdict { outcome, witness, trials: 0, seed: 0, note: note.into() }
    }
}

fn require_m_part(pair: &ReductivePair, u: &[Q]) -> Result<Vec<Q>> {
    pair.guard("criterion")?;
    pair.g().check_len(u)?;
    let um = pair.pr_m(u)?;
    if linalg::is_zero_vec(&um) {
        return Err(Error::VectorInH);
    }
    Ok(um)
}

/// `⟨Λu_m, [w, u]⟩ = 0` for every `w` in `m`.
pub fn riemannian_geodesic_vector(pair: &ReductivePair, lambda: &MetricOperator, u: &[Q]) -> Result<bool> {
    let um = require_m_part(pair, u)?;
    let lu = lambda.apply(pair, &um)?;
    for w in pair.m_basis() {
        if !pair.g().inner(&lu, &pair.g().bracket(w, u)?).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `[Λ(u_m), u]_m = 0` for every metric operator when the isotropy
/// module is multiplicity free; otherwise the outcome is indeterminate.
pub fn riemannian_equigeodesic_vector(pair: &ReductivePair, u: &[Q]) -> Result<Verdict> {
    let um = require_m_part(pair, u)?;
    let split = isotypic_split(pair)?;
    let free = split.verdict == SplitVerdict::Irreducible || split.commutant_dim == split.summands.len();
    if !free {
        return Ok(Verdict::new(
            Outcome::Indeterminate,
            Vec::new(),
            "isotropy module has multiplicities; metric operators may mix isomorphic summands",
        ));
    }
    let gram = m_gram(pair);
    let uc = pair.m_coords(&um)?;
    for s in &split.summands {
        let cols: Vec<Vec<Q>> = s.basis.iter().map(|v| pair.m_coords(v)).collect::<Result<_>>()?;
        let part = pair.from_m_coords(&linalg::mat_vec(&projector(&cols, &gram), &uc));
        let b = pair.pr_m(&pair.g().bracket(&part, u)?)?;
        if !linalg::is_zero_vec(&b) {
            return Ok(Verdict::new(
                Outcome::Fails,
                vec![u.to_vec(), part, b],
                "[u_i, u]_m ≠ 0 for the summand component u_i (witness: u, u_i, [u_i, u]_m)",
            ));
        }
    }
    Ok(Verdict::new(Outcome::Holds, Vec::new(), "all summand components commute with u modulo h"))
}

/// Checks `[Λ(u_m), u]_m = 0` for each operator of an explicit family.
pub fn riemannian_equigeodesic_family(pair: &ReductivePair, u: &[Q], family: &[MetricOperator]) -> Result<Verdict> {
    let um = require_m_part(pair, u)?;
    for (k, lam) in family.iter().enumerate() {
        let lu = lam.apply(pair, &um)?;
        let b = pair.pr_m(&pair.g().bracket(&lu, u)?)?;
        if !linalg::is_zero_vec(&b) {
            return Ok(Verdict::new(
                Outcome::Fails,
                vec![u.to_vec(), lu, b],
                format!("operator {k} of the family gives [Λu_m, u]_m ≠ 0 (witness: u, Λu_m, [Λu_m, u]_m)"),
            ));
        }
    }
    Ok(Verdict::new(Outcome::Holds, Vec::new(), format!("holds for all {} operators of the family", family.len())))
}

/// The subspaces `[h,u]`, `V_u`, and the algebraic splitting of `V_u` at `u ∈ m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceData {
    pub u: Vec<Q>,
    pub hu: Vec<Vec<Q>>,
    /// Centralizer of `u` in `h`.
    pub stabilizer: Vec<Vec<Q>>,
    pub v_u: Vec<Vec<Q>>,
    /// Joint kernel of `ad(c_h(u))` on `V_u`.
    pub v_u0: Vec<Vec<Q>>,
    pub v_u1: Vec<Vec<Q>>,
}

fn span_basis(n: usize, vs: impl IntoIterator<Item = Vec<Q>>) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(n);
    vs.into_iter().filter(|v| e.insert_dense(v)).collect()
}

pub fn slice_data(pair: &ReductivePair, u: &[Q]) -> Result<SliceData> {
    pair.guard("slice_data")?;
    let g = pair.g();
    g.check_len(u)?;
    if linalg::is_zero_vec(u) {
        return Err(Error::ZeroVector);
    }
    if !linalg::is_zero_vec(&pair.pr_h(u)?) {
        return Err(Error::NotInM);
    }
    let n = g.dim();
    let brackets: Vec<Vec<Q>> = pair.h_basis().iter().map(|x| g.bracket(x, u)).collect::<Result<_>>()?;
    let hu = span_basis(n, brackets.iter().cloned());
    let stabilizer: Vec<Vec<Q>> = if brackets.is_empty() {
        Vec::new()
    } else {
        linalg::kernel(&linalg::transpose(&brackets), brackets.len())
            .iter()
            .map(|c| linalg::combine(c, pair.h_basis(), n))
            .collect()
    };
    let v_u = linalg::orthogonal_complement_in(pair.m_basis(), &hu, g.bi_form());
    let v_u0 = if stabilizer.is_empty() || v_u.is_empty() {
        v_u.clone()
    } else {
        // Rows: for each stabilizer element c and coordinate i, Σ_k a_k [c, v_k]_i = 0.
        let mut rows = Vec::new();
        for c in &stabilizer {
            let cols: Vec<Vec<Q>> = v_u.iter().map(|v| g.bracket(c, v)).collect::<Result<_>>()?;
            rows.extend(linalg::transpose(&cols));
        }
        linalg::kernel(&rows, v_u.len()).iter().map(|a| linalg::primitive(&linalg::combine(a, &v_u, n))).collect()
    };
    let v_u1 = linalg::orthogonal_complement_in(&v_u, &v_u0, g.bi_form());
    Ok(SliceData { u: u.to_vec(), hu, stabilizer, v_u, v_u0, v_u1 })
}

/// Sufficient test of `[u, m]_m ⊆ [u, h] + V_{u,1}` using the algebraic `V_{u,1}`.
pub fn finsler_equigeodesic_vector(pair: &ReductivePair, u: &[Q]) -> Result<Verdict> {
    let sd = slice_data(pair, u)?;
    let g = pair.g();
    let e = Echelon::from_dense(g.dim(), &[sd.hu.clone(), sd.v_u1.clone()].concat());
    for w in pair.m_basis() {
        let b = pair.pr_m(&g.bracket(u, w)?)?;
        if !e.contains(&b) {
            return Ok(Verdict::new(
                Outcome::Indeterminate,
                vec![u.to_vec(), w.clone()],
                "[u, w]_m lies outside [u, h] + V_{u,1} (algebraic); the group fixed set may differ",
            ));
        }
    }
    Ok(Verdict::new(Outcome::Holds, Vec::new(), "[u, m]_m ⊆ [u, h] + V_{u,1}"))
}

fn random_m(pair: &ReductivePair, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let c: Vec<Q> = (0..pair.m_basis().len())
        .map(|_| {
            let mut x = 0;
            while x == 0 {
                x = rng.gen_range(-COORD_BOUND..=COORD_BOUND);
            }
            linalg::q(x)
        })
        .collect();
    pair.from_m_coords(&c)
}

/// First `w` in the m basis with `[w, u]_m ∉ [h, u]`.
fn space_violation(pair: &ReductivePair, u: &[Q]) -> Result<Option<Vec<Q>>> {
    let g = pair.g();
    let brackets: Vec<Vec<Q>> = pair.h_basis().iter().map(|x| g.bracket(x, u)).collect::<Result<_>>()?;
    let e = Echelon::from_dense(g.dim(), &brackets);
    for w in pair.m_basis() {
        if !e.contains(&pair.pr_m(&g.bracket(w, u)?)?) {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

enum Trial {
    Pass,
    Accidental,
    Fail(Vec<Q>, Vec<Q>),
}

/// Tests `[m, u]_m ⊆ [h, u]` at seeded random `u ∈ m`.
pub fn finsler_space_check(pair: &ReductivePair, trials: usize, seed: u64) -> Result<Verdict> {
    pair.guard("finsler_space_check")?;
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let done = |outcome, witness, note: &str| Verdict { outcome, witness, trials, seed, note: note.to_string() };
    if pair.m_basis().is_empty() {
        return Ok(done(Outcome::HoldsProbabilistically, Vec::new(), "m = 0"));
    }
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Trial> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let u = random_m(pair, &mut rng);
            let Some(w) = space_violation(pair, &u)? else { return Ok(Trial::Pass) };
            let eps = Q::new(1.into(), 100.into());
            for _ in 0..PERTURBATIONS {
                let d = random_m(pair, &mut rng);
                let up = linalg::add(&u, &linalg::scale(&eps, &d));
                if space_violation(pair, &up)?.is_none() {
                    return Ok(Trial::Accidental);
                }
            }
            Ok(Trial::Fail(u, w))
        })
        .collect::<Result<_>>()?;
    for r in &results {
        if let Trial::Fail(u, w) = r {
            return Ok(done(Outcome::Fails, vec![u.clone(), w.clone()], "[w, u]_m ∉ [h, u] (witness: u, w), stable under perturbation"));
        }
    }
    if results.iter().any(|r| matches!(r, Trial::Accidental)) {
        return Ok(done(Outcome::Indeterminate, Vec::new(), "a violation vanished under perturbation"));
    }
    Ok(done(Outcome::HoldsProbabilistically, Vec::new(), "[m, u]_m ⊆ [h, u] at every sample"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCheck {
    pub vector: Vec<Q>,
    pub centralizer_dim: usize,
    pub passes: bool,
}

/// The numeric necessary conditions for a Finsler equigeodesic space.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma5Report {
    pub dim_g: usize,
    pub dim_h: usize,
    pub rank: usize,
    pub dim_m: usize,
    /// `2 dim h + rk g`.
    pub lhs: usize,
    /// `2 dim h + rk g > dim m`.
    pub dims_pass: bool,
    /// `dim g − 2 dim h`, the lower bound for centralizer dimensions.
    pub centralizer_bound: i64,
    pub witnesses: Vec<WitnessCheck>,
}

impl Lemma5Report {
    pub fn witnesses_pass(&self) -> bool {
        self.witnesses.iter().all(|w| w.passes)
    }
}

pub fn lemma5_numeric(dim_g: usize, dim_h: usize, rank: usize) -> Lemma5Report {
    let dim_m = dim_g - dim_h;
    let lhs = 2 * dim_h + rank;
    Lemma5Report {
        dim_g,
        dim_h,
        rank,
        dim_m,
        lhs,
        dims_pass: lhs > dim_m,
        centralizer_bound: dim_g as i64 - 2 * dim_h as i64,
        witnesses: Vec::new(),
    }
}

/// Evaluates the centralizer bound at witnesses `u ∈ m` (for torus-only
/// pairs: Cartan elements of `t ∩ m`).
pub fn lemma5_with_witnesses(pair: &ReductivePair, witnesses: &[Vec<Q>]) -> Result<Lemma5Report> {
    let g = pair.g();
    let rank = g.rank();
    let mut report = lemma5_numeric(g.dim(), pair.dim_h(), rank);
    for u in witnesses {
        g.check_len(u)?;
        if pair.is_torus_only() {
            let rs = g.root_system().ok_or(Error::NotInTorus)?;
            if u[rs.rank()..].iter().any(|x| !x.is_zero()) {
                return Err(Error::NotInTorus);
            }
            let amb = linalg::combine(&u[..rs.rank()], rs.simple_roots(), rs.dim());
            if pair.torus_h().iter().any(|t| !rs.inner(t, &amb).is_zero()) {
                return Err(Error::NotInM);
            }
        } else if !linalg::is_zero_vec(&pair.pr_h(u)?) {
            return Err(Error::NotInM);
        }
        let c = g.centralizer(u)?.len();
        report.witnesses.push(WitnessCheck { vector: u.clone(), centralizer_dim: c, passes: c as i64 >= report.centralizer_bound });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorLabel {
    Symmetric,
    Spin7G2,
    G2Su3,
    Other,
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorLabel::Symmetric => "symmetric",
            FactorLabel::Spin7G2 => "spin7-g2",
            FactorLabel::G2Su3 => "g2-su3",
            FactorLabel::Other => "other",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FinslerClassification {
    /// Whether the pair is Finsler equigeodesic according to its factor labels.
    pub equigeodesic: bool,
    pub factors: Vec<(String, usize, usize, FactorLabel)>,
    pub split_failure: Option<SplitFailure>,
    pub space_check: Verdict,
}

impl FinslerClassification {
    /// The space-level check agrees with the label-based verdict.
    pub fn consistent(&self) -> bool {
        match self.space_check.outcome {
            Outcome::HoldsProbabilistically => self.equigeodesic,
            Outcome::Fails => !self.equigeodesic,
            _ => false,
        }
    }
}

fn only_type(types: &[Option<CartanType>]) -> Option<CartanType> {
    match types {
        [Some(t)] => Some(*t),
        _ => None,
    }
}

pub fn classify_finsler(pair: &ReductivePair, trials: usize, seed: u64) -> Result<FinslerClassification> {
    let dec = local_decompose(pair)?;
    let mut factors = Vec::new();
    for f in &dec.factors {
        let p = &f.pair;
        let dims = (p.g().dim(), p.dim_h());
        let ty = only_type(&f.ideal_types).map(|t| t.label());
        let label = if symmetric_pair_test(p)? {
            FactorLabel::Symmetric
        } else if dims == (21, 14) && ty.as_deref() == Some("B3") {
            FactorLabel::Spin7G2
        } else if dims == (14, 8) && ty.as_deref() == Some("G2") {
            FactorLabel::G2Su3
        } else {
            FactorLabel::Other
        };
        factors.push((p.name().to_string(), dims.0, dims.1, label));
    }
    let equigeodesic = factors.iter().all(|f| f.3 != FactorLabel::Other);
    let space_check = finsler_space_check(pair, trials, seed)?;
    Ok(FinslerClassification { equigeodesic, factors, split_failure: dec.failure, space_check })
}
