use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use equigeo::criteria::{
    classify_finsler, finsler_equigeodesic_vector, finsler_space_check, lemma5_with_witnesses,
    riemannian_equigeodesic_vector, Verdict,
};
use equigeo::flags::{enumerate_strata, strata_records, strata_text};
use equigeo::linalg::fmt_vec;
use equigeo::pairfile::{builtin_fixtures, PairSpecFile};
use equigeo::pairs::symmetric_pair_test;
use equigeo::rootsys::{CartanType, RootSystem};
use equigeo::survey::{run_case, CASE_IDS, run_table2, table2_records, table2_text};
use equigeo::Error;

mod cache;

#[derive(Parser)]
#[command(name = "equigeo", version, about = "Exact checks of equigeodesic criteria on compact homogeneous spaces")]
struct Cli {
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,
    #[arg(long, global = true, env = "EQUIGEO_CACHE_DIR", default_value = ".equigeo-cache")]
    cache_dir: PathBuf,
    /// Exhaustive Jacobi verification regardless of dimension.
    #[arg(long, global = true)]
    verify_full: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory holding the golden reports.
    #[arg(long, global = true, env = "EQUIGEO_GOLDEN_DIR", hide = true)]
    golden_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Riemannian,
    FinslerVector,
    FinslerSpace,
    Symmetric,
    Lemma5,
    Classify,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Riemannian => "riemannian",
            Which::FinslerVector => "finsler-vector",
            Which::FinslerSpace => "finsler-space",
            Which::Symmetric => "symmetric",
            Which::Lemma5 => "lemma5",
            Which::Classify => "classify",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load from the cache) the compact algebra of a simple type.
    Build { series: char, rank: usize },
    /// Run one criterion on a pair file.
    Check {
        pairfile: PathBuf,
        #[arg(value_enum)]
        which: Which,
    },
    /// Replay a case and diff it against its golden report.
    Case {
        id: String,
        #[arg(long, hide = true)]
        bless: bool,
    },
    /// Regenerate Table 2 and diff it against its golden report.
    Table2 {
        #[arg(long, hide = true)]
        bless: bool,
    },
    /// Centralizer strata of the flag manifolds of a simple type.
    Strata { series: char, rank: usize },
    /// Built-in pair fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Write every built-in fixture into a directory.
    Export { dir: PathBuf },
}

/// Exit status for a failed mathematical comparison; usage errors use 2.
struct Mismatch;

/// Key/value report rendered as aligned text or tab-separated records.
struct Report {
    kind: &'static str,
    rows: Vec<(String, String)>,
}

impl Report {
    fn new(kind: &'static str) -> Self {
        Report { kind, rows: Vec::new() }
    }

    fn add(&mut self, key: &str, value: impl ToString) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    fn verdict(&mut self, v: &Verdict) {
        self.add("outcome", v.outcome);
        if v.trials > 0 {
            self.add("trials", v.trials);
            self.add("seed", v.seed);
        }
        self.add("note", &v.note);
        for w in &v.witness {
            self.add("witness", fmt_vec(w));
        }
    }

    fn render(&self, format: Format) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.rows {
            out += &match format {
                Format::Text => format!("{k:<width$}  {v}\n"),
                Format::Records => format!("{}\t{k}\t{v}\n", self.kind),
            };
        }
        out
    }
}

impl Cli {
    fn config(&self) -> String {
        let verify = if self.verify_full { "full" } else { "fast" };
        match self.format {
            Format::Text => format!("config seed={} trials={} verify={verify}\n", self.seed, self.trials),
            Format::Records => {
                format!("config\tseed\t{}\nconfig\ttrials\t{}\nconfig\tverify\t{verify}\n", self.seed, self.trials)
            }
        }
    }

    fn golden_dir(&self) -> PathBuf {
        self.golden_dir.clone().unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden"))
    }
}

fn root_system(series: char, rank: usize) -> Result<RootSystem> {
    Ok(RootSystem::new(CartanType::new(series, rank)?))
}

fn build(cli: &Cli, series: char, rank: usize) -> Result<Option<Mismatch>> {
    let rs = root_system(series, rank)?;
    let (g, status) = cache::load_or_build(&cli.cache_dir, &rs, cli.seed)?;
    let path = cache::entry_path(&cli.cache_dir, &rs);
    match &status {
        cache::Status::Hit => eprintln!("cache: hit {}", path.display()),
        cache::Status::Miss => eprintln!("cache: miss, wrote {}", path.display()),
        cache::Status::Rebuilt(why) => {
            eprintln!("warning: cache entry {} rejected ({why}); rebuilt", path.display())
        }
    }
    let summary = if cli.verify_full { g.verify(true, 0, cli.seed) } else { g.verify_default(cli.seed) };
    let mut r = Report::new("build");
    r.add("algebra", rs.label());
    r.add("dim", g.dim());
    r.add("rank", rs.rank());
    r.add("roots", rs.all_roots().len());
    let scope = match summary.scope {
        equigeo::chevalley::JacobiScope::Exhaustive => "exhaustive".to_string(),
        equigeo::chevalley::JacobiScope::Sampled(n) => format!("sampled ({n} triples)"),
    };
    let pf = |ok: bool| if ok { "pass" } else { "FAIL" };
    r.add("jacobi", format!("{scope} {}", pf(summary.jacobi_ok)));
    r.add("ad-invariance", pf(summary.invariance_ok));
    r.add("positive definite", pf(summary.positive_definite));
    print!("{}{}", cli.config(), r.render(cli.format));
    Ok((!summary.passed()).then_some(Mismatch))
}

fn check(cli: &Cli, file: &Path, which: Which) -> Result<Option<Mismatch>> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let spec = PairSpecFile::parse(&text).with_context(|| format!("parsing {}", file.display()))?;
    let pair = spec.build()?;
    let full_h = !matches!(which, Which::Lemma5);
    if full_h && pair.is_torus_only() {
        let guard = pair.guard(which.name()).unwrap_err();
        let hint = match &spec.case {
            Some(c) => format!("; its torus-level argument is replayed by `equigeo case {c}`"),
            None => String::new(),
        };
        bail!("refused: pair `{}` is torus-only. guard: {guard}{hint}", spec.name);
    }
    let witnesses = spec.witness_vectors(pair.g())?;
    let mut r = Report::new("check");
    r.add("pair", &spec.name);
    r.add("ambient", &spec.ambient);
    r.add("dim g", pair.g().dim());
    r.add("dim h", pair.dim_h());
    r.add("criterion", which.name());
    let mut mismatch = None;
    match which {
        Which::Riemannian | Which::FinslerVector => {
            if witnesses.is_empty() {
                bail!("{} has no witness lines; {} needs a vector", file.display(), which.name());
            }
            for (i, u) in witnesses.iter().enumerate() {
                r.add("vector", format!("{}: {}", i + 1, fmt_vec(u)));
                let v = if which == Which::Riemannian {
                    riemannian_equigeodesic_vector(&pair, u)?
                } else {
                    finsler_equigeodesic_vector(&pair, u)?
                };
                r.verdict(&v);
            }
        }
        Which::FinslerSpace => r.verdict(&finsler_space_check(&pair, cli.trials, cli.seed)?),
        Which::Symmetric => r.add("[m,m] in h", symmetric_pair_test(&pair)?),
        Which::Lemma5 => {
            let l = lemma5_with_witnesses(&pair, &witnesses)?;
            r.add("rank", l.rank);
            r.add("dim m", l.dim_m);
            r.add("2 dim h + rk", l.lhs);
            r.add("dimension condition", if l.dims_pass { "holds" } else { "fails" });
            r.add("centralizer bound", l.centralizer_bound);
            for w in &l.witnesses {
                r.add("witness", fmt_vec(&w.vector));
                r.add("dim c_g(u)", w.centralizer_dim);
                r.add("centralizer condition", if w.passes { "holds" } else { "fails" });
            }
        }
        Which::Classify => {
            let c = classify_finsler(&pair, cli.trials, cli.seed)?;
            r.add("finsler equigeodesic", c.equigeodesic);
            for (name, dg, dh, label) in &c.factors {
                r.add("factor", format!("{name} dim g {dg} dim h {dh} label {label}"));
            }
            if let Some(f) = &c.split_failure {
                r.add("split failure", format!("{f:?}"));
            }
            r.verdict(&c.space_check);
            r.add("consistent", c.consistent());
            if !c.consistent() {
                mismatch = Some(Mismatch);
            }
        }
    }
    print!("{}{}", cli.config(), r.render(cli.format));
    Ok(mismatch)
}

/// Prints the report, then compares `golden_text` with the stored file.
fn golden(cli: &Cli, name: &str, golden_text: &str, shown: &str, bless: bool, pass: bool) -> Result<Option<Mismatch>> {
    let path = cli.golden_dir().join(name);
    if bless {
        fs::write(&path, golden_text).with_context(|| format!("writing {}", path.display()))?;
        eprintln!("blessed {}", path.display());
    }
    let stored = fs::read_to_string(&path).with_context(|| format!("missing golden file {}", path.display()))?;
    print!("{}{shown}", cli.config());
    let mut bad = !pass;
    if stored != golden_text {
        bad = true;
        eprintln!("golden diff against {}:", path.display());
        let (a, b): (Vec<&str>, Vec<&str>) = (stored.lines().collect(), golden_text.lines().collect());
        for i in 0..a.len().max(b.len()) {
            let (x, y) = (a.get(i), b.get(i));
            if x != y {
                x.into_iter().for_each(|l| eprintln!("-{l}"));
                y.into_iter().for_each(|l| eprintln!("+{l}"));
            }
        }
    } else {
        eprintln!("golden: clean ({})", path.display());
    }
    Ok(bad.then_some(Mismatch))
}

fn case(cli: &Cli, id: &str, bless: bool) -> Result<Option<Mismatch>> {
    let report = run_case(id)?;
    let text = report.to_text();
    let shown = if cli.format == Format::Records { report.to_records() } else { text.clone() };
    golden(cli, &format!("case-{id}.txt"), &text, &shown, bless, report.pass())
}

fn table2(cli: &Cli, bless: bool) -> Result<Option<Mismatch>> {
    let run = run_table2(248)?;
    let text = table2_text(&run);
    let shown = if cli.format == Format::Records { table2_records(&run) } else { text.clone() };
    golden(cli, "table2.txt", &text, &shown, bless, run.matches_golden() && run.certificates_hold())
}

fn run(cli: &Cli) -> Result<Option<Mismatch>> {
    match &cli.command {
        Command::Build { series, rank } => build(cli, *series, *rank),
        Command::Check { pairfile, which } => check(cli, pairfile, *which),
        Command::Case { id, bless } => case(cli, id, *bless),
        Command::Table2 { bless } => table2(cli, *bless),
        Command::Strata { series, rank } => {
            let strata = enumerate_strata(&root_system(*series, *rank)?)?;
            let body = match cli.format {
                Format::Text => strata_text(&strata),
                Format::Records => strata_records(&strata),
            };
            print!("{}{body}", cli.config());
            Ok(None)
        }
        Command::Fixtures { action: FixturesAction::Export { dir } } => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (file, spec) in builtin_fixtures()? {
                let path = dir.join(&file);
                fs::write(&path, spec.to_text()).with_context(|| format!("writing {}", path.display()))?;
                println!("{}", path.display());
            }
            Ok(None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Mismatch)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::UnknownCase(_)) = e.downcast_ref::<Error>() {
                eprintln!("known cases: {}", CASE_IDS.join(", "));
            }
            ExitCode::from(2)
        }
    }
}
