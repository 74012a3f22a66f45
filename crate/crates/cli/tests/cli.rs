use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("equigeo-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equigeo"))
        .args(args)
        .env("EQUIGEO_CACHE_DIR", cache)
        .env_remove("EQUIGEO_GOLDEN_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    repo().join("fixtures").join(format!("{name}.pair")).to_string_lossy().into_owned()
}

#[test]
fn build_reports_and_caches() {
    let cache = scratch("build");
    let o = run(&["build", "G", "2"], &cache);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("config seed=2024 trials=8 verify=fast\n"));
    assert!(out.contains("dim                14\n"));
    assert!(out.contains("jacobi             exhaustive pass\n"));
    assert!(stderr(&o).contains("cache: miss"));
    let again = run(&["build", "G", "2"], &cache);
    assert!(stderr(&again).contains("cache: hit"));
    assert_eq!(stdout(&again), out);
    let a1 = run(&["build", "A", "1"], &cache);
    assert!(stdout(&a1).contains("dim                3\n"));
}

#[test]
fn build_e8_samples_jacobi() {
    let cache = scratch("e8");
    let o = run(&["build", "E", "8"], &cache);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dim                248\n"));
    assert!(out.contains("jacobi             sampled (10000 triples) pass\n"));
}

#[test]
fn corrupt_cache_entries_are_rebuilt() {
    let cache = scratch("corrupt");
    let clean = stdout(&run(&["build", "B", "3"], &cache));
    let entry = cache.join("B3.chevalley");
    let text = fs::read_to_string(&entry).unwrap();

    // Payload edited, digest left alone.
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.len() - 1;
    let n: i64 = lines[last].rsplit(' ').next().unwrap().parse().unwrap();
    let head = lines[last].rsplit_once(' ').unwrap().0.to_string();
    lines[last] = format!("{head} {}", -n);
    fs::write(&entry, lines.join("\n") + "\n").unwrap();
    let o = run(&["build", "B", "3"], &cache);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("hash mismatch"), "{}", stderr(&o));
    assert_eq!(stdout(&o), clean);
    assert_eq!(fs::read_to_string(&entry).unwrap(), text);

    fs::write(&entry, "not a cache file").unwrap();
    let o = run(&["build", "B", "3"], &cache);
    assert!(stderr(&o).contains("warning"));
    assert_eq!(stdout(&o), clean);
}

#[test]
fn usage_errors_exit_2() {
    let cache = scratch("usage");
    assert_eq!(run(&["build", "Q", "2"], &cache).status.code(), Some(2));
    assert_eq!(run(&["build", "G", "3"], &cache).status.code(), Some(2));
    assert_eq!(run(&["case", "10"], &cache).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent.pair", "symmetric"], &cache).status.code(), Some(2));
    assert_eq!(run(&["check", &fixture("so7-g2"), "sideways"], &cache).status.code(), Some(2));
    // No witness lines for a per-vector criterion.
    assert_eq!(run(&["check", &fixture("so7-g2"), "riemannian"], &cache).status.code(), Some(2));
}

#[test]
fn check_reports_outcomes() {
    let cache = scratch("check");
    let o = run(&["check", &fixture("so7-g2"), "finsler-space"], &cache);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("outcome    holds-probabilistically\n"));
    assert!(out.contains("seed       2024\n"));

    let out = stdout(&run(&["check", &fixture("g2-su3"), "classify"], &cache));
    assert!(out.contains("finsler equigeodesic  true\n"));
    assert!(out.contains("label g2-su3"));

    let out = stdout(&run(&["check", &fixture("su2-trivial"), "finsler-space", "--seed", "7"], &cache));
    assert!(out.starts_with("config seed=7 trials=8 verify=fast\n"));
    assert!(out.contains("fails-with-witness"));
    assert!(out.contains("witness"));

    let out = stdout(&run(&["check", &fixture("so6-so3so3"), "symmetric"], &cache));
    assert!(out.contains("[m,m] in h  true\n"));
}

#[test]
fn torus_only_pairs_are_refused() {
    let cache = scratch("torus");
    let o = run(&["check", &fixture("case1"), "finsler-space"], &cache);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("torus-only"));
    assert!(err.contains("guard: operation `finsler-space`"));
    assert!(err.contains("`equigeo case 1`"));
    // The centralizer bound only needs t∩m.
    let o = run(&["check", &fixture("case1"), "lemma5"], &cache);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dim c_g(u)             5\n"));
    assert!(out.contains("centralizer bound      13\n"));
}

#[test]
fn cases_diff_clean_against_golden() {
    let cache = scratch("cases");
    let o = run(&["case", "8"], &cache);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("golden: clean"));
    let out = stdout(&o);
    assert!(out.contains("dim c_g(u)                    12"));
    assert!(out.contains("bound dim g - 2 dim h         18"));
    assert!(out.ends_with("status: pass\n"));
    let out = stdout(&run(&["case", "appendix"], &cache));
    assert!(out.contains("D4+R^3"));
    let o = run(&["table2"], &cache);
    assert_eq!(o.status.code(), Some(0));
    let rows = stdout(&o).lines().filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit())).count();
    assert_eq!(rows, 9);
}

#[test]
fn golden_mismatch_exits_1() {
    let cache = scratch("golden");
    let golden = scratch("golden-dir");
    let stored = fs::read_to_string(repo().join("golden/case-2.txt")).unwrap();
    fs::write(golden.join("case-2.txt"), stored.replace("pass", "pas")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_equigeo"))
        .args(["case", "2"])
        .env("EQUIGEO_CACHE_DIR", &cache)
        .env("EQUIGEO_GOLDEN_DIR", &golden)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("golden diff"));
    let missing = Command::new(env!("CARGO_BIN_EXE_equigeo"))
        .args(["case", "1"])
        .env("EQUIGEO_CACHE_DIR", &cache)
        .env("EQUIGEO_GOLDEN_DIR", &golden)
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("missing golden file"));
}

#[test]
fn reports_are_byte_deterministic() {
    let cache = scratch("det");
    for args in [
        vec!["case", "1", "--format", "records"],
        vec!["strata", "F", "4"],
        vec!["check", &fixture("su6-su2su3"), "finsler-space"],
        vec!["check", &fixture("su2su2-diag"), "classify", "--format", "records"],
    ] {
        let a = run(&args, &cache);
        let b = run(&args, &cache);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
    }
    let rec = stdout(&run(&["case", "1", "--format", "records"], &cache));
    assert!(rec.starts_with("config\tseed\t2024\nconfig\ttrials\t8\nconfig\tverify\tfast\ncase\t1\t"));
}

#[test]
fn fixtures_export_matches_repository() {
    let cache = scratch("export");
    let dir = scratch("export-dir");
    let o = run(&["fixtures", "export", dir.to_str().unwrap()], &cache);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 13);
    for n in names {
        let a = fs::read(dir.join(&n)).unwrap();
        let b = fs::read(repo().join("fixtures").join(&n)).unwrap();
        assert_eq!(a, b, "{n:?}");
    }
}
