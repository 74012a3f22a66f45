//! Plain-text pair specifications.
//!
//! ```text
//! # leading comment lines are kept
//! name so7-g2
//! case 5                     (optional)
//! ambient so-matrix 7        (any label accepted by build_from_label)
//! embedding explicit         (regular | torus | explicit | involution)
//! dim_h 55                   (torus only, optional)
//! root 1 -1 0                (regular: roots in the root system's coordinates)
//! torus 1 1 -2               (regular, torus: vectors in the Cartan subalgebra)
//! image 0 1 0 ...            (explicit: basis of h in g coordinates)
//! row 1 0 0 ...              (involution: matrix rows acting on g coordinates)
//! witness 0 0 1 ...          (vector in g coordinates)
//! torus-witness 1 -1 2 ...   (vector in root-system coordinates)
//! ```
//!
//! Numbers are integers or `p/q`, separated by single spaces. `to_text`
//! writes the lines in the order above, so canonical files round-trip
//! byte for byte.

use std::sync::Arc;

use crate::chevalley::{build_from_label, so_matrix_algebra, CompactLieAlgebra, Gauss, GMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, fmt_q, parse_vec, q, Q};
use crate::pairs::{tensor_product_embedding, three_form_stabilizer, EmbeddingSpec, ReductivePair};

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Algebra(Vec<Q>),
    Torus(Vec<Q>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairSpecFile {
    pub comments: Vec<String>,
    pub name: String,
    pub case: Option<String>,
    pub ambient: String,
    pub embedding: EmbeddingSpec,
    pub witnesses: Vec<Witness>,
}

fn line(key: &str, v: &[Q]) -> String {
    let mut s = key.to_string();
    for x in v {
        s.push(' ');
        s += &fmt_q(x);
    }
    s.push('\n');
    s
}

impl PairSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut comments = Vec::new();
        let (mut name, mut case, mut ambient, mut kind, mut dim_h) = (None, None, None, None, None);
        let (mut roots, mut torus, mut images, mut rows, mut witnesses) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut body = false;
        for (no, raw) in text.lines().enumerate() {
            let err = |m: &str| Error::Parse(format!("line {}: {m}", no + 1));
            if let Some(c) = raw.strip_prefix('#') {
                if body {
                    return Err(err("comments are only allowed before the first entry"));
                }
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
                continue;
            }
            if raw.trim().is_empty() {
                continue;
            }
            body = true;
            let (key, rest) = raw.split_once(' ').ok_or_else(|| err("missing value"))?;
            let vec = || parse_vec(rest).map_err(|e| err(&e.to_string()));
            match key {
                "name" => name = Some(rest.to_string()),
                "case" => case = Some(rest.to_string()),
                "ambient" => ambient = Some(rest.to_string()),
                "embedding" => kind = Some(rest.to_string()),
                "dim_h" => dim_h = Some(rest.parse::<usize>().map_err(|_| err("bad dim_h"))?),
                "root" => roots.push(vec()?),
                "torus" => torus.push(vec()?),
                "image" => images.push(vec()?),
                "row" => rows.push(vec()?),
                "witness" => witnesses.push(Witness::Algebra(vec()?)),
                "torus-witness" => witnesses.push(Witness::Torus(vec()?)),
                _ => return Err(err(&format!("unknown key `{key}`"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing `{k}`"));
        let kind = kind.ok_or_else(|| missing("embedding"))?;
        let unused = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Parse(format!("`{what}` lines do not belong to a {kind} embedding")))
            }
        };
        unused(kind == "torus" || dim_h.is_none(), "dim_h")?;
        unused(kind == "regular" || roots.is_empty(), "root")?;
        unused(kind == "regular" || kind == "torus" || torus.is_empty(), "torus")?;
        unused(kind == "explicit" || images.is_empty(), "image")?;
        unused(kind == "involution" || rows.is_empty(), "row")?;
        let embedding = match kind.as_str() {
            "regular" => EmbeddingSpec::Regular { roots, torus },
            "torus" => EmbeddingSpec::TorusRestricted { torus, dim_h },
            "explicit" => EmbeddingSpec::Explicit { images },
            "involution" => EmbeddingSpec::Involution { matrix: rows },
            other => return Err(Error::Parse(format!("unknown embedding `{other}`"))),
        };
        Ok(PairSpecFile {
            comments,
            name: name.ok_or_else(|| missing("name"))?,
            case,
            ambient: ambient.ok_or_else(|| missing("ambient"))?,
            embedding,
            witnesses,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            s += &if c.is_empty() { "#\n".to_string() } else { format!("# {c}\n") };
        }
        s += &format!("name {}\n", self.name);
        if let Some(c) = &self.case {
            s += &format!("case {c}\n");
        }
        s += &format!("ambient {}\n", self.ambient);
        match &self.embedding {
            EmbeddingSpec::Regular { roots, torus } => {
                s += "embedding regular\n";
                roots.iter().for_each(|r| s += &line("root", r));
                torus.iter().for_each(|t| s += &line("torus", t));
            }
            EmbeddingSpec::TorusRestricted { torus, dim_h } => {
                s += "embedding torus\n";
                if let Some(d) = dim_h {
                    s += &format!("dim_h {d}\n");
                }
                torus.iter().for_each(|t| s += &line("torus", t));
            }
            EmbeddingSpec::Explicit { images } => {
                s += "embedding explicit\n";
                images.iter().for_each(|v| s += &line("image", v));
            }
            EmbeddingSpec::Involution { matrix } => {
                s += "embedding involution\n";
                matrix.iter().for_each(|r| s += &line("row", r));
            }
        }
        for w in &self.witnesses {
            s += &match w {
                Witness::Algebra(v) => line("witness", v),
                Witness::Torus(v) => line("torus-witness", v),
            };
        }
        s
    }

    pub fn build_algebra(&self) -> Result<CompactLieAlgebra> {
        build_from_label(&self.ambient)
    }

    /// Builds the pair on an already constructed ambient algebra.
    pub fn build_with(&self, g: Arc<CompactLieAlgebra>) -> Result<ReductivePair> {
        ReductivePair::new(&self.name, g, &self.embedding)
    }

    pub fn build(&self) -> Result<ReductivePair> {
        self.build_with(Arc::new(self.build_algebra()?))
    }

    /// Witnesses in `g` coordinates.
    pub fn witness_vectors(&self, g: &CompactLieAlgebra) -> Result<Vec<Vec<Q>>> {
        self.witnesses
            .iter()
            .map(|w| match w {
                Witness::Algebra(v) => {
                    g.check_len(v)?;
                    Ok(v.clone())
                }
                Witness::Torus(v) => g.cartan_element(v),
            })
            .collect()
    }
}

fn vecs(rows: &[&str]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| parse_vec(r).expect("literal vector")).collect()
}

fn torus_fixture(name: &str, case: &str, ambient: &str, dim_h: usize, torus: &[&str], witness: &str) -> PairSpecFile {
    PairSpecFile {
        comments: vec![format!("torus data for case {case}; only t∩h is recorded")],
        name: name.into(),
        case: Some(case.into()),
        ambient: ambient.into(),
        embedding: EmbeddingSpec::TorusRestricted { torus: vecs(torus), dim_h: Some(dim_h) },
        witnesses: vec![Witness::Torus(vecs(&[witness]).remove(0))],
    }
}

/// `X ↦ D X D` on so(n) with `D = diag(1^k, (-1)^(n-k))`, as a matrix on coordinates.
pub fn so_block_involution(n: usize, k: usize) -> Result<Vec<Vec<Q>>> {
    let g = so_matrix_algebra(n);
    let d = GMatrix::from_entries(n, (0..n).map(|i| (i, i, Gauss::real(q(if i < k { 1 } else { -1 })))).collect());
    let dim = g.dim();
    let mut m = vec![linalg::zeros(dim); dim];
    for j in 0..dim {
        let x = g.matrix_of(&linalg::unit(dim, j)).ok_or_else(|| Error::Parse("not a matrix algebra".into()))?;
        let y = g.coords_of_matrix(&d.mul(&x).mul(&d)).ok_or_else(|| Error::NotInvolution("image leaves so(n)".into()))?;
        for i in 0..dim {
            m[i][j] = y[i].clone();
        }
    }
    Ok(m)
}

/// The 3-form whose stabilizer in so(7) is G2 (indices from 1).
pub const G2_FORM: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 7, 5], [3, 7, 4], [3, 6, 5]];

/// The fixture files shipped in the repository, by file name.
pub fn builtin_fixtures() -> Result<Vec<(String, PairSpecFile)>> {
    let mut out = vec![
        torus_fixture("case1", "1", "A5", 11, &["1 -1 1 -1 1 -1", "1 1 -1 -1 0 0", "0 0 1 1 -1 -1"], "1 -1 2 -2 -3 3"),
        torus_fixture("case2", "2", "C2", 3, &["1 -2"], "2 1"),
        torus_fixture(
            "case8",
            "8",
            "D6",
            24,
            &["1 1 1 1 1 1", "1 -1 0 0 0 0", "0 0 1 -1 0 0", "0 0 0 0 1 -1"],
            "1 1 2 2 -3 -3",
        ),
        torus_fixture(
            "case9",
            "9",
            "D8",
            39,
            &["1 1 1 1 1 1 1 1", "1 -1 0 0 0 0 0 0", "0 0 1 -1 0 0 0 0", "0 0 0 0 1 -1 0 0", "0 0 0 0 0 0 1 -1"],
            "1 1 2 2 3 3 -6 -6",
        ),
        torus_fixture(
            "appendix-e7",
            "appendix",
            "E7",
            55,
            &[
                "0 0 0 1 -1 0 0",
                "0 0 0 0 1 -1 0",
                "0 0 1 -1 1 1 0",
                "-1/2 1/2 -3/2 -1/2 -1/2 -1/2 -1/2",
                "2 0 0 0 0 0 -1",
            ],
            "7 21 5 -5 -5 -5 7",
        ),
    ];
    out[4].comments.push("coordinates e1..e6 and f7 = √2·e7".into());
    let mut out: Vec<(String, PairSpecFile)> = out.into_iter().map(named).collect();

    let so7 = so_matrix_algebra(7);
    out.push(named(PairSpecFile {
        comments: vec!["G2 as the stabilizer of a generic 3-form on R^7".into()],
        name: "so7-g2".into(),
        case: None,
        ambient: "so-matrix 7".into(),
        embedding: EmbeddingSpec::Explicit { images: three_form_stabilizer(&so7, 7, &G2_FORM)? },
        witnesses: Vec::new(),
    }));

    let g2 = build_from_label("G2")?;
    let rs = g2.root_system().ok_or(Error::NotInTorus)?;
    let max = rs.all_roots().iter().map(|r| rs.inner(r, r)).max().unwrap_or_default();
    out.push(named(PairSpecFile {
        comments: vec!["su(3) on the long roots of G2".into()],
        name: "g2-su3".into(),
        case: None,
        ambient: "G2".into(),
        embedding: EmbeddingSpec::Regular {
            roots: rs.all_roots().iter().filter(|r| rs.inner(r, r) == max).cloned().collect(),
            torus: rs.simple_roots().to_vec(),
        },
        witnesses: Vec::new(),
    }));

    let a1a1 = build_from_label("A1+A1")?;
    let rs = a1a1.root_system().ok_or(Error::NotInTorus)?;
    let mut diag = vec![linalg::zeros(6); 3];
    for c in 0..2 {
        let (u, v) = a1a1.root_plane(rs.root_index(&rs.simple_roots()[c]).ok_or(Error::NotInTorus)?).ok_or(Error::NotInTorus)?;
        diag[0][c] = q(1);
        diag[1][u] = q(1);
        diag[2][v] = q(1);
    }
    out.push(named(PairSpecFile {
        comments: vec!["diagonal su(2) in su(2)+su(2)".into()],
        name: "su2su2-diag".into(),
        case: None,
        ambient: "A1+A1".into(),
        embedding: EmbeddingSpec::Explicit { images: diag },
        witnesses: Vec::new(),
    }));

    for (n, k) in [(4, 1), (5, 2), (6, 3)] {
        out.push(named(PairSpecFile {
            comments: vec![format!("fixed points of conjugation by diag(1^{k}, (-1)^{})", n - k)],
            name: format!("so{n}-so{k}so{}", n - k),
            case: None,
            ambient: format!("so-matrix {n}"),
            embedding: EmbeddingSpec::Involution { matrix: so_block_involution(n, k)? },
            witnesses: Vec::new(),
        }));
    }

    let (_, images) = tensor_product_embedding(2, 3)?;
    out.push(named(PairSpecFile {
        comments: vec!["su(2)+su(3) acting on C^2 ⊗ C^3".into()],
        name: "su6-su2su3".into(),
        case: None,
        ambient: "su-matrix 6".into(),
        embedding: EmbeddingSpec::Explicit { images },
        witnesses: Vec::new(),
    }));

    out.push(named(PairSpecFile {
        comments: vec!["the group SU(2) itself: h = 0".into()],
        name: "su2-trivial".into(),
        case: None,
        ambient: "A1".into(),
        embedding: EmbeddingSpec::Explicit { images: Vec::new() },
        witnesses: vec![Witness::Algebra(vecs(&["1 2 -1"]).remove(0))],
    }));
    Ok(out)
}

fn named(f: PairSpecFile) -> (String, PairSpecFile) {
    (format!("{}.pair", f.name), f)
}
