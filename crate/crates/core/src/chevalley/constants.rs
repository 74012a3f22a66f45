use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::rootsys::RootSystem;

/// Bumped whenever the sign convention or the table layout changes.
pub const CONVENTION_VERSION: u32 = 1;

/// Integer constants `N(a, b)` with `[e_a, e_b] = N(a, b) e_{a+b}` in a
/// Chevalley basis, for root indices into `RootSystem::all_roots`.
///
/// Positive roots are processed in height-then-lex order; for every
/// non-simple positive root `ξ` the extraspecial pair `(r, s)` (with `r`
/// earliest) gets `N(r, s) = +(p + 1)`. All other values follow from the
/// standard relations of a Chevalley basis.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    rs: RootSystem,
    table: HashMap<(usize, usize), i64>,
}

impl StructureConstants {
    pub fn new(rs: &RootSystem) -> Self {
        let np = rs.positive_roots().len();
        let mut sc = StructureConstants { rs: rs.clone(), table: HashMap::new() };
        // Positive pairs grouped by their sum, visited in order of the sum.
        let mut by_sum: Vec<Vec<(usize, usize)>> = vec![Vec::new(); np];
        for r in 0..np {
            for s in r + 1..np {
                let sum = linalg::add(&rs.positive_roots()[r], &rs.positive_roots()[s]);
                if let Some(x) = rs.root_index(&sum) {
                    by_sum[x].push((r, s));
                }
            }
        }
        for (xi, pairs) in by_sum.iter().enumerate() {
            let Some(&(r1, s1)) = pairs.first() else { continue };
            let xi_vec = &rs.positive_roots()[xi];
            let xi_len = rs.inner(xi_vec, xi_vec);
            let n1 = sc.string_p(r1, s1) + 1;
            sc.set_positive(r1, s1, n1);
            let (mr1, ms1) = (rs.negate_index(r1), rs.negate_index(s1));
            for &(r, s) in &pairs[1..] {
                let mut acc = Q::from_integer(0.into());
                for (a, b, c, d) in [(s, mr1, r, ms1), (mr1, r, s, ms1)] {
                    let diff = linalg::add(&rs.all_roots()[a], &rs.all_roots()[b]);
                    let (x, y) = (sc.get(a, b), sc.get(c, d));
                    if x != 0 && y != 0 {
                        acc += Q::from_integer((x * y).into()) / rs.inner(&diff, &diff);
                    }
                }
                let n = &xi_len * acc / Q::from_integer(n1.into());
                let n = n.to_integer().to_i64().filter(|_| n.is_integer()).expect("integral structure constant");
                sc.set_positive(r, s, n);
            }
        }
        sc
    }

    fn set_positive(&mut self, r: usize, s: usize, n: i64) {
        self.table.insert((r, s), n);
        self.table.insert((s, r), -n);
    }

    /// Largest `p` with `b - p·a` a root (indices into all roots).
    fn string_p(&self, a: usize, b: usize) -> i64 {
        let (av, bv) = (&self.rs.all_roots()[a], &self.rs.all_roots()[b]);
        let mut p = 0;
        let mut cur = linalg::sub(bv, av);
        while self.rs.is_root(&cur) {
            p += 1;
            cur = linalg::sub(&cur, av);
        }
        p
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `N(a, b)` for any root indices; zero when `a + b` is not a root.
    pub fn get(&self, a: usize, b: usize) -> i64 {
        let rs = &self.rs;
        let np = rs.positive_roots().len();
        let sum = linalg::add(&rs.all_roots()[a], &rs.all_roots()[b]);
        let Some(sum_idx) = rs.root_index(&sum) else { return 0 };
        if a < np && b < np {
            return self.table.get(&(a, b)).copied().unwrap_or(0);
        }
        // a + b + c = 0 with N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b).
        let c = rs.negate_index(sum_idx);
        let trip = [a, b, c];
        let len = |i: usize| rs.inner(&rs.all_roots()[i], &rs.all_roots()[i]);
        let positives = trip.iter().filter(|&&i| i < np).count();
        // With two negatives, flip every sign: N(-x,-y) = -N(x,y).
        let (trip, sign) = if positives == 2 { (trip, 1) } else { (trip.map(|i| rs.negate_index(i)), -1) };
        for k in 0..3 {
            let (x, y) = (trip[k], trip[(k + 1) % 3]);
            if x < np && y < np {
                // N(trip[k], trip[k+1]) / len(trip[k+2]) = N(trip[0], trip[1]) / len(trip[2])
                let known = Q::from_integer(self.table[&(x, y)].into());
                let z = trip[(k + 2) % 3];
                let val = known / len(z) * len(trip[2]);
                return sign * val.to_integer().to_i64().expect("small constant");
            }
        }
        unreachable!()
    }

    /// Checks `|N(a, b)| = p + 1` over all pairs of roots whose sum is a root.
    pub fn verify_magnitudes(&self) -> Result<()> {
        let n = self.rs.all_roots().len();
        for a in 0..n {
            for b in 0..n {
                let sum = linalg::add(&self.rs.all_roots()[a], &self.rs.all_roots()[b]);
                if !self.rs.is_root(&sum) {
                    continue;
                }
                let want = self.string_p(a, b) + 1;
                if self.get(a, b).abs() != want {
                    return Err(Error::Parse(format!("|N({a},{b})| = {} but p + 1 = {want}", self.get(a, b))));
                }
            }
        }
        Ok(())
    }

    /// Positive-pair entries `(r, s, N)` with `r < s`, in order.
    pub fn positive_entries(&self) -> Vec<(usize, usize, i64)> {
        let mut out: Vec<(usize, usize, i64)> =
            self.table.iter().filter(|((r, s), _)| r < s).map(|(&(r, s), &n)| (r, s, n)).collect();
        out.sort();
        out
    }

    /// Text form: `chevalley <version> <type> <realization hash>`, a count, then `r s N` lines.
    pub fn to_text(&self) -> String {
        let entries = self.positive_entries();
        let mut s = format!(
            "chevalley {} {} {}\n{}\n",
            CONVENTION_VERSION,
            self.rs.label(),
            self.rs.realization_hash(),
            entries.len()
        );
        for (r, t, n) in entries {
            s.push_str(&format!("{r} {t} {n}\n"));
        }
        s
    }

    pub fn from_text(rs: &RootSystem, text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("structure constants: {m}"));
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split_whitespace().collect();
        let version = CONVENTION_VERSION.to_string();
        let hash = rs.realization_hash();
        let label = rs.label();
        if header != ["chevalley", version.as_str(), label.as_str(), hash.as_str()] {
            return Err(bad("header does not match this realization"));
        }
        let count: usize = lines.next().and_then(|l| l.parse().ok()).ok_or_else(|| bad("count"))?;
        let np = rs.positive_roots().len();
        let mut sc = StructureConstants { rs: rs.clone(), table: HashMap::new() };
        for _ in 0..count {
            let f: Vec<i64> = lines
                .next()
                .ok_or_else(|| bad("truncated"))?
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| bad("entry")))
                .collect::<Result<_>>()?;
            if f.len() != 3 || f[0] < 0 || f[1] < 0 || f[0] as usize >= np || f[1] as usize >= np {
                return Err(bad("entry"));
            }
            sc.set_positive(f[0] as usize, f[1] as usize, f[2]);
        }
        if lines.next().is_some() {
            return Err(bad("trailing data"));
        }
        Ok(sc)
    }
}
