//! The list of non-symmetric strongly isotropy irreducible pairs, with
//! closed-form dimensions, and the dimension filter `2 dim h + rk g > dim m`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::rootsys::{canonical, types_label, CartanType};

/// A polynomial with rational coefficients in up to two parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    terms: Vec<(Q, [u32; 2])>,
}

impl Poly {
    pub fn constant(c: i64) -> Self {
        Poly { terms: vec![(q(c), [0, 0])] }
    }

    /// Terms `(numerator, denominator, exponent of first parameter, exponent of second)`.
    pub fn new(terms: &[(i64, i64, u32, u32)]) -> Self {
        Poly { terms: terms.iter().map(|&(n, d, a, b)| (Q::new(n.into(), d.into()), [a, b])).collect() }
    }

    pub fn eval(&self, x: &[i64]) -> Q {
        let var = |i: usize| x.get(i).copied().unwrap_or(0);
        self.terms
            .iter()
            .map(|(c, [a, b])| {
                let mut v = c.clone();
                if *a > 0 {
                    v *= q(var(0).pow(*a));
                }
                if *b > 0 {
                    v *= q(var(1).pow(*b));
                }
                v
            })
            .sum()
    }

    fn eval_usize(&self, x: &[i64]) -> usize {
        let v = self.eval(x);
        assert!(v.is_integer() && !v.is_zero() && v > Q::zero(), "formula is not a positive integer at {x:?}");
        v.to_integer().to_usize().expect("dimension overflows usize")
    }
}

/// A simple factor of g or h, with its size given as a formula.
#[derive(Clone, Debug)]
pub enum Family {
    Su(Poly),
    So(Poly),
    Sp(Poly),
    Exceptional(char, usize),
}

impl Family {
    fn size(&self, x: &[i64]) -> usize {
        match self {
            Family::Su(p) | Family::So(p) | Family::Sp(p) => p.eval_usize(x),
            Family::Exceptional(_, r) => *r,
        }
    }

    pub fn label(&self, x: &[i64]) -> String {
        match self {
            Family::Su(_) => format!("su({})", self.size(x)),
            Family::So(_) => format!("so({})", self.size(x)),
            Family::Sp(_) => format!("sp({})", self.size(x)),
            Family::Exceptional(s, r) => format!("{s}{r}"),
        }
    }

    pub fn types(&self, x: &[i64]) -> Vec<CartanType> {
        let k = self.size(x);
        match self {
            Family::Su(_) => vec![CartanType { series: 'A', rank: k - 1 }],
            Family::So(_) => so_types(k),
            Family::Sp(_) if k == 1 => vec![CartanType { series: 'A', rank: 1 }],
            Family::Sp(_) => vec![CartanType { series: 'C', rank: k }],
            Family::Exceptional(s, r) => vec![CartanType { series: *s, rank: *r }],
        }
    }
}

fn so_types(k: usize) -> Vec<CartanType> {
    let a = |r| CartanType { series: 'A', rank: r };
    match k {
        3 => vec![a(1)],
        4 => vec![a(1), a(1)],
        6 => vec![a(3)],
        _ if k % 2 == 1 => vec![CartanType { series: 'B', rank: k / 2 }],
        _ => vec![CartanType { series: 'D', rank: k / 2 }],
    }
}

/// Parses labels such as `su(2)+G2` or `sp(1)+so(7)` into canonical types.
pub fn algebra_types(label: &str) -> Result<Vec<CartanType>> {
    let mut out = Vec::new();
    for part in label.split('+') {
        let part = part.trim();
        let fam = if let Some(rest) = part.strip_suffix(')') {
            let (name, size) = rest.split_once('(').ok_or_else(|| Error::Parse(format!("bad algebra `{part}`")))?;
            let k: i64 = size.parse().map_err(|_| Error::Parse(format!("bad size in `{part}`")))?;
            let p = Poly::constant(k);
            match name {
                "su" if k >= 2 => Family::Su(p),
                "so" if k >= 3 => Family::So(p),
                "sp" if k >= 1 => Family::Sp(p),
                _ => return Err(Error::Parse(format!("bad algebra `{part}`"))),
            }
        } else {
            let t = CartanType::parse(part)?;
            Family::Exceptional(t.series, t.rank)
        };
        out.extend(fam.types(&[]));
    }
    Ok(canonical(&out))
}

#[derive(Clone, Debug)]
pub struct SurveyRow {
    pub g: Family,
    pub h: Vec<Family>,
    pub dim_g: Poly,
    pub dim_h: Poly,
    pub dim_g_text: &'static str,
    pub dim_h_text: &'static str,
    pub params: &'static [&'static str],
    pub condition: &'static str,
    /// Smallest admissible value of each parameter.
    pub minimum: [i64; 2],
}

impl SurveyRow {
    fn admissible(&self, x: &[i64]) -> bool {
        match self.params.len() {
            0 => true,
            1 => x[0] >= self.minimum[0],
            _ => x[0] >= x[1] && x[1] >= self.minimum[1] && x[0] * x[1] > 4,
        }
    }

    fn deficit(&self, x: &[i64]) -> i64 {
        let e = self.instantiate(0, x);
        e.dim_m() as i64 - e.lhs() as i64
    }

    fn instantiate(&self, row: usize, x: &[i64]) -> SurveyEntry {
        let g_types = canonical(&self.g.types(x));
        let h_types = canonical(&self.h.iter().flat_map(|f| f.types(x)).collect::<Vec<_>>());
        SurveyEntry {
            row,
            params: self.params.iter().map(|s| s.to_string()).zip(x.iter().copied()).collect(),
            g_label: self.g.label(x),
            h_label: self.h.iter().map(|f| f.label(x)).collect::<Vec<_>>().join("+"),
            dim_g: self.dim_g.eval_usize(x),
            dim_h: self.dim_h.eval_usize(x),
            rank: g_types.iter().map(|t| t.rank).sum(),
            g_types,
            h_types,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyEntry {
    pub row: usize,
    pub params: Vec<(String, i64)>,
    pub g_label: String,
    pub h_label: String,
    pub g_types: Vec<CartanType>,
    pub h_types: Vec<CartanType>,
    pub dim_g: usize,
    pub dim_h: usize,
    pub rank: usize,
}

impl SurveyEntry {
    pub fn dim_m(&self) -> usize {
        self.dim_g - self.dim_h
    }

    /// `2 dim h + rk g`.
    pub fn lhs(&self) -> usize {
        2 * self.dim_h + self.rank
    }

    /// Dimensions of g and h computed from their Cartan types.
    pub fn type_dims(&self) -> (usize, usize) {
        let d = |ts: &[CartanType]| ts.iter().map(|t| t.algebra_dim()).sum();
        (d(&self.g_types), d(&self.h_types))
    }

    pub fn printed_dims_consistent(&self) -> bool {
        self.type_dims() == (self.dim_g, self.dim_h)
    }

    pub fn passes_filter(&self) -> bool {
        self.lhs() > self.dim_m()
    }

    fn key(&self) -> (String, usize, String, usize) {
        (types_label(&self.g_types), self.dim_g, types_label(&self.h_types), self.dim_h)
    }
}

impl fmt::Display for SurveyEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g_label, self.h_label)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " [{}]", p.join(", "))?;
        }
        Ok(())
    }
}

fn p1(terms: &[(i64, i64, u32)]) -> Poly {
    Poly::new(&terms.iter().map(|&(n, d, a)| (n, d, a, 0)).collect::<Vec<_>>())
}

fn fixed(g: Family, h: Vec<Family>, dg: i64, dh: i64, dg_text: &'static str, dh_text: &'static str) -> SurveyRow {
    SurveyRow {
        g,
        h,
        dim_g: Poly::constant(dg),
        dim_h: Poly::constant(dh),
        dim_g_text: dg_text,
        dim_h_text: dh_text,
        params: &[],
        condition: "",
        minimum: [0, 0],
    }
}

fn c(k: i64) -> Poly {
    Poly::constant(k)
}

fn ex(s: char, r: usize) -> Family {
    Family::Exceptional(s, r)
}

/// Table rows in order.
pub fn table1() -> Vec<SurveyRow> {
    use Family::{So, Sp, Su};
    let n = |k: i64| p1(&[(1, 1, 1), (k, 1, 0)]);
    let one = |terms: &[(i64, i64, u32)]| p1(terms);
    let fam1 = |g: Family,
                h: Vec<Family>,
                dg: Poly,
                dh: Poly,
                dg_text: &'static str,
                dh_text: &'static str,
                min: i64| SurveyRow {
        g,
        h,
        dim_g: dg,
        dim_h: dh,
        dim_g_text: dg_text,
        dim_h_text: dh_text,
        params: &["n"],
        condition: match min {
            2 => "n >= 2",
            3 => "n >= 3",
            4 => "n >= 4",
            _ => "n >= 5",
        },
        minimum: [min, 0],
    };
    // (2n^2 + n)(2n^2 + n - 1)/2 = 2n^4 + 2n^3 - n^2/2 - n/2
    let so_2n2_n = one(&[(2, 1, 4), (2, 1, 3), (-1, 2, 2), (-1, 2, 1)]);
    vec![
        SurveyRow {
            g: Su(Poly::new(&[(1, 1, 1, 1)])),
            h: vec![Su(Poly::new(&[(1, 1, 1, 0)])), Su(Poly::new(&[(1, 1, 0, 1)]))],
            dim_g: Poly::new(&[(1, 1, 2, 2), (-1, 1, 0, 0)]),
            dim_h: Poly::new(&[(1, 1, 2, 0), (1, 1, 0, 2), (-2, 1, 0, 0)]),
            dim_g_text: "p^2 q^2 - 1",
            dim_h_text: "p^2 + q^2 - 2",
            params: &["p", "q"],
            condition: "p >= q >= 2, pq > 4",
            minimum: [2, 2],
        },
        fixed(Su(c(16)), vec![So(c(10))], 255, 45, "255", "45"),
        fixed(Su(c(27)), vec![ex('E', 6)], 728, 78, "728", "78"),
        fam1(
            Su(one(&[(1, 2, 2), (-1, 2, 1)])),
            vec![Su(n(0))],
            one(&[(1, 4, 4), (-1, 2, 3), (1, 4, 2), (-1, 1, 0)]),
            one(&[(1, 1, 2), (-1, 1, 0)]),
            "n^2 (n-1)^2 / 4 - 1",
            "n^2 - 1",
            5,
        ),
        fam1(
            Su(one(&[(1, 2, 2), (1, 2, 1)])),
            vec![Su(n(0))],
            one(&[(1, 4, 4), (1, 2, 3), (1, 4, 2), (-1, 1, 0)]),
            one(&[(1, 1, 2), (-1, 1, 0)]),
            "n^2 (n+1)^2 / 4 - 1",
            "n^2 - 1",
            3,
        ),
        fixed(Sp(c(2)), vec![So(c(3))], 10, 3, "10", "3"),
        fixed(Sp(c(7)), vec![Sp(c(3))], 105, 21, "105", "21"),
        fixed(Sp(c(10)), vec![Su(c(6))], 210, 35, "210", "35"),
        fixed(Sp(c(16)), vec![So(c(12))], 528, 66, "528", "66"),
        fixed(Sp(c(28)), vec![ex('E', 7)], 1596, 133, "1596", "133"),
        fixed(So(c(20)), vec![Su(c(4))], 190, 15, "190", "15"),
        fixed(So(c(70)), vec![Su(c(8))], 2415, 63, "2415", "63"),
        fam1(
            So(one(&[(1, 1, 2), (-1, 1, 0)])),
            vec![Su(n(0))],
            one(&[(1, 2, 4), (-3, 2, 2), (1, 1, 0)]),
            one(&[(1, 1, 2), (-1, 1, 0)]),
            "(n^2-1)(n^2-2)/2",
            "n^2 - 1",
            3,
        ),
        fixed(So(c(16)), vec![So(c(9))], 120, 36, "120", "36"),
        fam1(
            So(one(&[(2, 1, 2), (1, 1, 1)])),
            vec![So(one(&[(2, 1, 1), (1, 1, 0)]))],
            so_2n2_n.clone(),
            one(&[(2, 1, 2), (1, 1, 1)]),
            "(2n^2+n)(2n^2+n-1)/2",
            "n(2n+1)",
            2,
        ),
        fam1(
            So(one(&[(2, 1, 2), (3, 1, 1)])),
            vec![So(one(&[(2, 1, 1), (1, 1, 0)]))],
            // (2n^2+3n)(2n^2+3n-1)/2 = 2n^4 + 6n^3 + 7n^2/2 - 3n/2
            one(&[(2, 1, 4), (6, 1, 3), (7, 2, 2), (-3, 2, 1)]),
            one(&[(2, 1, 2), (1, 1, 1)]),
            "(2n^2+3n)(2n^2+3n-1)/2",
            "n(2n+1)",
            2,
        ),
        fixed(So(c(42)), vec![Sp(c(4))], 861, 36, "861", "36"),
        fam1(
            So(one(&[(2, 1, 2), (-1, 1, 1), (-1, 1, 0)])),
            vec![Sp(n(0))],
            // (2n^2-n-1)(2n^2-n-2)/2 = 2n^4 - 2n^3 - 5n^2/2 + 3n/2 + 1
            one(&[(2, 1, 4), (-2, 1, 3), (-5, 2, 2), (3, 2, 1), (1, 1, 0)]),
            one(&[(2, 1, 2), (1, 1, 1)]),
            "(2n^2-n-1)(2n^2-n-2)/2",
            "2n^2 + n",
            3,
        ),
        fam1(
            So(one(&[(2, 1, 2), (1, 1, 1)])),
            vec![Sp(n(0))],
            so_2n2_n,
            one(&[(2, 1, 2), (1, 1, 1)]),
            "(2n^2+n)(2n^2+n-1)/2",
            "2n^2 + n",
            3,
        ),
        fixed(So(c(128)), vec![So(c(16))], 8128, 120, "8128", "120"),
        fam1(
            So(one(&[(2, 1, 2), (-1, 1, 1)])),
            vec![So(one(&[(2, 1, 1)]))],
            // (2n^2-n)(2n^2-n-1)/2 = 2n^4 - 2n^3 - n^2/2 + n/2
            one(&[(2, 1, 4), (-2, 1, 3), (-1, 2, 2), (1, 2, 1)]),
            one(&[(2, 1, 2), (-1, 1, 1)]),
            "(2n^2-n)(2n^2-n-1)/2",
            "n(2n-1)",
            4,
        ),
        fam1(
            So(one(&[(2, 1, 2), (1, 1, 1), (-1, 1, 0)])),
            vec![So(one(&[(2, 1, 1)]))],
            // (2n^2+n-1)(2n^2+n-2)/2 = 2n^4 + 2n^3 - 5n^2/2 - 3n/2 + 1
            one(&[(2, 1, 4), (2, 1, 3), (-5, 2, 2), (-3, 2, 1), (1, 1, 0)]),
            one(&[(2, 1, 2), (-1, 1, 1)]),
            "(2n^2+n-1)(2n^2+n-2)/2",
            "n(2n-1)",
            4,
        ),
        fixed(So(c(7)), vec![ex('G', 2)], 21, 14, "21", "14"),
        fixed(So(c(14)), vec![ex('G', 2)], 91, 14, "91", "14"),
        fixed(So(c(26)), vec![ex('F', 4)], 325, 52, "325", "52"),
        fixed(So(c(52)), vec![ex('F', 4)], 1326, 52, "1326", "52"),
        fixed(So(c(78)), vec![ex('E', 6)], 3003, 78, "3003", "78"),
        fixed(So(c(133)), vec![ex('E', 7)], 8778, 133, "8778", "133"),
        fixed(So(c(248)), vec![ex('E', 8)], 30628, 248, "30628", "248"),
        fixed(ex('G', 2), vec![So(c(3))], 14, 3, "14", "3"),
        fixed(ex('G', 2), vec![Su(c(3))], 14, 8, "14", "8"),
        fixed(ex('F', 4), vec![So(c(3)), ex('G', 2)], 52, 17, "52", "17"),
        fixed(ex('F', 4), vec![Su(c(3)), Su(c(3))], 52, 18, "52", "18"),
        fixed(ex('E', 6), vec![Su(c(3))], 78, 8, "78", "8"),
        fixed(ex('E', 6), vec![ex('G', 2)], 78, 14, "78", "14"),
        fixed(ex('E', 6), vec![Su(c(3)), ex('G', 2)], 78, 22, "78", "22"),
        fixed(ex('E', 6), vec![Su(c(3)), Su(c(3)), Su(c(3))], 78, 24, "78", "24"),
        fixed(ex('E', 7), vec![Su(c(3))], 133, 8, "133", "8"),
        fixed(ex('E', 7), vec![Sp(c(3)), ex('G', 2)], 133, 35, "133", "35"),
        fixed(ex('E', 7), vec![Su(c(2)), ex('F', 4)], 133, 55, "133", "55"),
        fixed(ex('E', 7), vec![Su(c(3)), Su(c(6))], 133, 43, "133", "43"),
        fixed(ex('E', 8), vec![ex('G', 2), ex('F', 4)], 248, 66, "248", "66"),
        fixed(ex('E', 8), vec![Su(c(9))], 248, 80, "248", "80"),
        fixed(ex('E', 8), vec![Su(c(3)), ex('E', 6)], 248, 86, "248", "86"),
        fam1(
            Sp(n(0)),
            vec![Sp(c(1)), So(n(0))],
            one(&[(2, 1, 2), (1, 1, 1)]),
            one(&[(1, 2, 2), (-1, 2, 1), (3, 1, 0)]),
            "2n^2 + n",
            "n(n-1)/2 + 3",
            3,
        ),
        fam1(
            So(one(&[(4, 1, 1)])),
            vec![Sp(c(1)), Sp(n(0))],
            one(&[(8, 1, 2), (-2, 1, 1)]),
            one(&[(2, 1, 2), (1, 1, 1), (3, 1, 0)]),
            "2n(4n-1)",
            "2n^2 + n + 3",
            3,
        ),
    ]
}

/// Every row instantiated at all admissible parameters with `dim g <= bound`.
pub fn table1_entries(bound: usize) -> Vec<SurveyEntry> {
    let mut out = Vec::new();
    for (i, row) in table1().iter().enumerate() {
        for x in scanned_params(row, bound) {
            out.push(row.instantiate(i, &x));
        }
    }
    out
}

fn scanned_params(row: &SurveyRow, bound: usize) -> Vec<Vec<i64>> {
    let fits = |x: &[i64]| row.dim_g.eval(x) <= q(bound as i64);
    let mut out = Vec::new();
    match row.params.len() {
        0 => {
            if fits(&[]) {
                out.push(Vec::new());
            }
        }
        1 => {
            let mut n = row.minimum[0];
            while fits(&[n]) {
                out.push(vec![n]);
                n += 1;
            }
        }
        _ => {
            let mut qv = row.minimum[1];
            while fits(&[qv, qv]) {
                let mut p = qv;
                while fits(&[p, qv]) {
                    if row.admissible(&[p, qv]) {
                        out.push(vec![p, qv]);
                    }
                    p += 1;
                }
                qv += 1;
            }
        }
    }
    out
}

/// Evidence that a parametrized row fails the filter beyond the scan: on the
/// next `TAIL` parameter values the deficit `dim m - 2 dim h - rk g` is
/// nonnegative and nondecreasing in each parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailCertificate {
    pub row: usize,
    pub g_label: String,
    pub tail: Vec<(Vec<i64>, i64)>,
    pub holds: bool,
}

pub const TAIL: i64 = 8;

fn certificate(i: usize, row: &SurveyRow, bound: usize) -> Option<TailCertificate> {
    let scanned = scanned_params(row, bound);
    let mut tail: Vec<Vec<i64>> = Vec::new();
    let mut holds = true;
    match row.params.len() {
        0 => return None,
        1 => {
            let start = scanned.last().map(|x| x[0] + 1).unwrap_or(row.minimum[0]);
            tail = (start..start + TAIL).map(|n| vec![n]).collect();
            let d: Vec<i64> = tail.iter().map(|x| row.deficit(x)).collect();
            holds &= d.iter().all(|&v| v >= 0) && d.windows(2).all(|w| w[0] <= w[1]);
        }
        _ => {
            let pmax = scanned.iter().map(|x| x[0]).max().unwrap_or(row.minimum[0]);
            let fits = |x: &[i64]| row.dim_g.eval(x) <= q(bound as i64);
            for p in row.minimum[0]..=pmax + TAIL {
                for qv in row.minimum[1]..=p {
                    let x = [p, qv];
                    if row.admissible(&x) && !fits(&x) {
                        tail.push(x.to_vec());
                    }
                }
            }
            for x in &tail {
                let d = row.deficit(x);
                holds &= d >= 0 && row.deficit(&[x[0] + 1, x[1]]) >= d;
                if x[1] < x[0] {
                    holds &= row.deficit(&[x[0], x[1] + 1]) >= d;
                }
            }
        }
    }
    Some(TailCertificate {
        row: i,
        g_label: row.g.label(&tail[0]),
        tail: tail.iter().map(|x| (x.clone(), row.deficit(x))).collect(),
        holds,
    })
}

/// Rows of the regenerated table, as printed: (g, dim g, h, dim h).
pub const TABLE2: [(&str, usize, &str, usize); 9] = [
    ("su(6)", 35, "su(2)+su(3)", 11),
    ("sp(2)", 10, "so(3)", 3),
    ("F4", 52, "su(2)+G2", 17),
    ("F4", 52, "su(3)+su(3)", 18),
    ("E7", 133, "so(3)+F4", 55),
    ("E7", 133, "su(3)+su(6)", 43),
    ("E8", 248, "su(3)+E6", 86),
    ("so(12)", 66, "sp(1)+sp(3)", 24),
    ("so(16)", 120, "sp(1)+sp(4)", 39),
];

/// Pairs that pass the filter and are already known to be Finsler
/// equigeodesic, so they are not part of the table.
pub const KNOWN_EQUIGEODESIC: [(&str, &str); 2] = [("so(7)", "G2"), ("G2", "su(3)")];

#[derive(Clone, Debug)]
pub struct Table2Run {
    pub bound: usize,
    pub scanned: usize,
    pub kept: Vec<SurveyEntry>,
    pub known_equigeodesic: Vec<SurveyEntry>,
    pub table2: Vec<SurveyEntry>,
    pub certificates: Vec<TailCertificate>,
    /// Scanned entries whose printed dimensions differ from their types.
    pub inconsistent: Vec<SurveyEntry>,
}

impl Table2Run {
    pub fn matches_golden(&self) -> bool {
        let golden: Result<BTreeSet<_>> = TABLE2
            .iter()
            .map(|(g, dg, h, dh)| Ok((types_label(&algebra_types(g)?), *dg, types_label(&algebra_types(h)?), *dh)))
            .collect();
        let got: BTreeSet<_> = self.table2.iter().map(|e| e.key()).collect();
        golden.map(|g| g == got && got.len() == self.table2.len()).unwrap_or(false)
    }

    pub fn certificates_hold(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }
}

pub fn filter_table2(entries: &[SurveyEntry], bound: usize) -> Result<Table2Run> {
    let known: Vec<(String, String)> = KNOWN_EQUIGEODESIC
        .iter()
        .map(|(g, h)| Ok((types_label(&algebra_types(g)?), types_label(&algebra_types(h)?))))
        .collect::<Result<_>>()?;
    let kept: Vec<SurveyEntry> = entries.iter().filter(|e| e.passes_filter()).cloned().collect();
    let (known_equigeodesic, table2): (Vec<_>, Vec<_>) = kept
        .iter()
        .cloned()
        .partition(|e| known.contains(&(types_label(&e.g_types), types_label(&e.h_types))));
    let certificates = table1().iter().enumerate().filter_map(|(i, r)| certificate(i, r, bound)).collect();
    let inconsistent = entries.iter().filter(|e| !e.printed_dims_consistent()).cloned().collect();
    Ok(Table2Run { bound, scanned: entries.len(), kept, known_equigeodesic, table2, certificates, inconsistent })
}

pub fn run_table2(bound: usize) -> Result<Table2Run> {
    filter_table2(&table1_entries(bound), bound)
}

pub fn table2_text(run: &Table2Run) -> String {
    let mut rows: Vec<[String; 7]> = vec![[
        "no".into(),
        "g".into(),
        "dim g".into(),
        "h".into(),
        "dim h".into(),
        "2dim h+rk".into(),
        "dim m".into(),
    ]];
    for (i, e) in run.table2.iter().enumerate() {
        rows.push([
            (i + 1).to_string(),
            e.g_label.clone(),
            e.dim_g.to_string(),
            e.h_label.clone(),
            e.dim_h.to_string(),
            e.lhs().to_string(),
            e.dim_m().to_string(),
        ]);
    }
    let mut out = format!("table 2 (dim g <= {}, {} instances scanned)\n", run.bound, run.scanned);
    out += &aligned(&rows);
    out += "also passing, known Finsler equigeodesic:\n";
    for e in &run.known_equigeodesic {
        out += &format!("  {e}: {} > {}\n", e.lhs(), e.dim_m());
    }
    out += "tail certificates:\n";
    for c in &run.certificates {
        let first = &c.tail[0];
        out += &format!(
            "  row {:>2} {:<12} from {:?}: {} points, deficit >= {}, {}\n",
            c.row + 1,
            c.g_label,
            first.0,
            c.tail.len(),
            c.tail.iter().map(|t| t.1).min().unwrap_or(0),
            if c.holds { "holds" } else { "FAILS" }
        );
    }
    if !run.inconsistent.is_empty() {
        out += "printed dimensions that differ from the Cartan types:\n";
        for e in &run.inconsistent {
            let (dg, dh) = e.type_dims();
            out += &format!("  {e}: printed ({}, {}), from types ({dg}, {dh})\n", e.dim_g, e.dim_h);
        }
    }
    out += &format!("matches golden: {}\n", run.matches_golden());
    out
}

pub fn table2_records(run: &Table2Run) -> String {
    let mut out = String::new();
    for e in &run.table2 {
        out += &format!("table2\t{}\t{}\t{}\t{}\t{}\t{}\n", e.g_label, e.dim_g, e.h_label, e.dim_h, e.lhs(), e.dim_m());
    }
    for e in &run.known_equigeodesic {
        out += &format!("known\t{}\t{}\t{}\t{}\t{}\t{}\n", e.g_label, e.dim_g, e.h_label, e.dim_h, e.lhs(), e.dim_m());
    }
    for c in &run.certificates {
        out += &format!("certificate\t{}\t{}\t{}\t{}\n", c.row + 1, c.g_label, c.tail.len(), c.holds);
    }
    for e in &run.inconsistent {
        let (dg, dh) = e.type_dims();
        out += &format!("inconsistent\t{}\t{}\t{}\t{}\t{dg}\t{dh}\n", e.g_label, e.h_label, e.dim_g, e.dim_h);
    }
    out += &format!("golden\t{}\n", run.matches_golden());
    out
}

pub(crate) fn aligned<const N: usize>(rows: &[[String; N]]) -> String {
    let mut w = [0usize; N];
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(w).map(|(c, w)| format!("{c:<w$}")).collect();
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}
