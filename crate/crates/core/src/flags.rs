//! Centralizers of torus vectors and the strata of adjoint orbits.
//!
//! A vector `u` in the Cartan subalgebra is conjugated into the closed
//! dominant chamber; the simple roots orthogonal to it form a Dynkin
//! subdiagram whose components give the semisimple part of `c_g(u)`, while
//! the deleted nodes give its center.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::rootsys::{classify_subsystem, types_label, CartanType, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralizerType {
    pub center_dim: usize,
    pub components: Vec<CartanType>,
    pub total_dim: usize,
    /// Set for `u = 0`, where the "centralizer" is the whole algebra.
    pub degenerate: bool,
}

impl CentralizerType {
    pub fn semisimple_dim(&self) -> usize {
        self.components.iter().map(|t| t.algebra_dim()).sum()
    }
}

impl fmt::Display for CentralizerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + R^{} (dim {})", types_label(&self.components), self.center_dim, self.total_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagStratum {
    /// Smallest subset (in bitmask order) producing this centralizer type.
    pub subset: Vec<usize>,
    /// How many raw subsets collapsed onto this stratum.
    pub multiplicity: usize,
    pub centralizer: CentralizerType,
    pub orbit_dim: usize,
}

pub fn centralizer_type(rs: &RootSystem, u: &[Q]) -> Result<CentralizerType> {
    if u.len() != rs.dim() {
        return Err(Error::DimensionMismatch { expected: rs.dim(), got: u.len() });
    }
    rs.simple_coords(u).ok_or(Error::NotInTorus)?;
    let (dominant, _) = rs.dominant_representative(u);
    let k = rs.simple_roots().iter().filter(|a| rs.inner(a, &dominant).is_zero()).count();
    let orth = rs.orthogonal_subsystem(&dominant);
    let components = classify_subsystem(rs.gram(), &orth)?;
    let ty = CentralizerType {
        center_dim: rs.rank() - k,
        components,
        total_dim: rs.rank() + orth.len(),
        degenerate: u.iter().all(|x| x.is_zero()),
    };
    debug_assert_eq!(ty.total_dim, ty.center_dim + ty.semisimple_dim());
    Ok(ty)
}

/// The centralizer type attached to a subset of simple roots.
pub fn subset_type(rs: &RootSystem, subset: &[usize]) -> Result<CentralizerType> {
    let np = rs.positive_roots().len();
    let mut roots = Vec::new();
    for i in 0..np {
        let c = rs.positive_coeffs(i);
        if (0..rs.rank()).all(|j| c[j] == 0 || subset.contains(&j)) {
            roots.push(rs.positive_roots()[i].clone());
            roots.push(rs.all_roots()[rs.negate_index(i)].clone());
        }
    }
    Ok(CentralizerType {
        center_dim: rs.rank() - subset.len(),
        components: classify_subsystem(rs.gram(), &roots)?,
        total_dim: rs.rank() + roots.len(),
        degenerate: subset.len() == rs.rank(),
    })
}

pub fn enumerate_strata(rs: &RootSystem) -> Result<Vec<FlagStratum>> {
    let n = rs.rank();
    let types: Vec<CentralizerType> = (0u32..1 << n)
        .into_par_iter()
        .map(|mask| subset_type(rs, &mask_indices(mask, n)))
        .collect::<Result<_>>()?;
    let mut seen: BTreeMap<(usize, Vec<CartanType>), usize> = BTreeMap::new();
    let mut out: Vec<FlagStratum> = Vec::new();
    for (mask, ty) in types.into_iter().enumerate() {
        let key = (ty.center_dim, ty.components.clone());
        if let Some(&i) = seen.get(&key) {
            out[i].multiplicity += 1;
            continue;
        }
        seen.insert(key, out.len());
        out.push(FlagStratum {
            subset: mask_indices(mask as u32, n),
            multiplicity: 1,
            orbit_dim: rs.algebra_dim() - ty.total_dim,
            centralizer: ty,
        });
    }
    Ok(out)
}

fn mask_indices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Largest centralizer among strata whose center has dimension at least
/// `cmin`, with every stratum attaining it.
pub fn max_centralizer_with_center(rs: &RootSystem, cmin: usize) -> Result<(usize, Vec<FlagStratum>)> {
    if cmin > rs.rank() {
        return Err(Error::CenterBound { cmin, rank: rs.rank() });
    }
    let strata: Vec<FlagStratum> =
        enumerate_strata(rs)?.into_iter().filter(|s| s.centralizer.center_dim >= cmin).collect();
    let max = strata.iter().map(|s| s.centralizer.total_dim).max().unwrap_or(0);
    Ok((max, strata.into_iter().filter(|s| s.centralizer.total_dim == max).collect()))
}

pub fn strata_text(strata: &[FlagStratum]) -> String {
    let rows: Vec<[String; 5]> = strata
        .iter()
        .map(|s| {
            [
                format!("{{{}}}", s.subset.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")),
                types_label(&s.centralizer.components),
                s.centralizer.center_dim.to_string(),
                s.centralizer.total_dim.to_string(),
                s.orbit_dim.to_string(),
            ]
        })
        .collect();
    let head = ["subset", "semisimple", "center", "dim c", "orbit"];
    let mut w: Vec<usize> = head.iter().map(|h| h.len()).collect();
    for r in &rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells.iter().zip(&w).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(head.to_vec());
    for r in &rows {
        out += &line(r.iter().map(|s| s.as_str()).collect());
    }
    out
}

/// `stratum <subset> <semisimple> <center> <dim c> <orbit> <multiplicity>`, tab separated.
pub fn strata_records(strata: &[FlagStratum]) -> String {
    strata
        .iter()
        .map(|s| {
            format!(
                "stratum\t{}\t{}\t{}\t{}\t{}\t{}\n",
                s.subset.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","),
                types_label(&s.centralizer.components),
                s.centralizer.center_dim,
                s.centralizer.total_dim,
                s.orbit_dim,
                s.multiplicity
            )
        })
        .collect()
}
