use equigeo::linalg::q;
use equigeo::rootsys::types_label;
use equigeo::survey::{
    algebra_types, run_case, run_table2, table1, table1_entries, Source, KNOWN_EQUIGEODESIC, TABLE2,
};
use equigeo::Error;

#[test]
fn table_has_every_row() {
    assert_eq!(table1().len(), 46);
}

#[test]
fn fixed_rows_match_printed_dims() {
    let e = table1_entries(300);
    let find = |g: &str, h: &str| e.iter().find(|x| x.g_label == g && x.h_label == h).unwrap().clone();
    assert_eq!((find("su(16)", "so(10)").dim_g, find("su(16)", "so(10)").dim_h), (255, 45));
    let sp3 = find("sp(3)", "sp(1)+so(3)");
    assert_eq!((sp3.dim_g, sp3.dim_h), (21, 6));
    assert!(table1_entries(9).is_empty());
}

#[test]
fn formulas_agree_with_factored_forms_and_types() {
    // Oracle: the factored forms, evaluated in integer arithmetic, and the
    // dimensions of the simple factors derived from their Cartan types.
    let factored: Vec<(usize, fn(i64) -> i64)> = vec![
        (3, |n| n * n * (n - 1) * (n - 1) / 4 - 1),
        (4, |n| n * n * (n + 1) * (n + 1) / 4 - 1),
        (12, |n| (n * n - 1) * (n * n - 2) / 2),
        (14, |n| (2 * n * n + n) * (2 * n * n + n - 1) / 2),
        (15, |n| (2 * n * n + 3 * n) * (2 * n * n + 3 * n - 1) / 2),
        (17, |n| (2 * n * n - n - 1) * (2 * n * n - n - 2) / 2),
        (18, |n| (2 * n * n + n) * (2 * n * n + n - 1) / 2),
        (20, |n| (2 * n * n - n) * (2 * n * n - n - 1) / 2),
        (21, |n| (2 * n * n + n - 1) * (2 * n * n + n - 2) / 2),
        (44, |n| 2 * n * n + n),
        (45, |n| 2 * n * (4 * n - 1)),
    ];
    let rows = table1();
    for (i, f) in factored {
        for n in 2..12 {
            assert_eq!(rows[i].dim_g.eval(&[n]), q(f(n)), "row {} at n={n}", i + 1);
        }
    }
    let mut mismatched = Vec::new();
    for e in table1_entries(5000) {
        let dg: usize = e.g_types.iter().map(|t| t.algebra_dim()).sum();
        let dh: usize = e.h_types.iter().map(|t| t.algebra_dim()).sum();
        assert_eq!(e.type_dims(), (dg, dh));
        if (e.dim_g, e.dim_h) != (dg, dh) {
            mismatched.push((e.to_string(), e.dim_h, dh));
        }
    }
    // The printed dimension of su(3)+su(3) inside F4 is 18; its type gives 16.
    assert_eq!(mismatched, vec![("(F4, su(3)+su(3))".to_string(), 18, 16)]);
}

#[test]
fn filter_regenerates_the_table() {
    let run = run_table2(248).unwrap();
    assert!(run.matches_golden());
    assert_eq!(run.table2.len(), 9);
    assert_eq!(run.known_equigeodesic.len(), KNOWN_EQUIGEODESIC.len());
    assert!(run.certificates_hold());
    assert_eq!(run.inconsistent.len(), 1);
    let get = |g: &str| run.table2.iter().filter(|e| e.g_label == g).cloned().collect::<Vec<_>>();
    assert_eq!((get("sp(2)")[0].dim_g, get("sp(2)")[0].dim_h), (10, 3));
    assert_eq!((get("E8")[0].dim_g, get("E8")[0].dim_h), (248, 86));
    let so16 = &get("so(16)")[0];
    assert_eq!((so16.lhs(), so16.dim_m()), (86, 81));
    // Hand-checked exclusion.
    let e6 = table1_entries(248).into_iter().find(|e| e.g_label == "E6" && e.h_label == "su(3)").unwrap();
    assert_eq!((e6.lhs(), e6.dim_m()), (22, 70));
    assert!(!e6.passes_filter());
}

#[test]
fn filter_boundary_cases_are_excluded() {
    // Oracle: equality 2 dim h + rk g = dim m does not pass.
    for (g, h) in [("so(8)", "su(3)"), ("E6", "su(3)+su(3)+su(3)"), ("E8", "su(9)"), ("sp(3)", "sp(1)+so(3)")] {
        let e = table1_entries(248).into_iter().find(|e| e.g_label == g && e.h_label == h).unwrap();
        assert_eq!(e.lhs(), e.dim_m(), "{g}");
        assert!(!e.passes_filter());
    }
}

#[test]
fn golden_labels_parse_to_types() {
    for (g, dg, h, dh) in TABLE2 {
        let gt = algebra_types(g).unwrap();
        let ht = algebra_types(h).unwrap();
        assert_eq!(gt.iter().map(|t| t.algebra_dim()).sum::<usize>(), dg, "{g}");
        let from_type = ht.iter().map(|t| t.algebra_dim()).sum::<usize>();
        if (g, h) == ("F4", "su(3)+su(3)") {
            assert_eq!((from_type, dh), (16, 18));
        } else {
            assert_eq!(from_type, dh, "{h}");
        }
    }
    assert_eq!(types_label(&algebra_types("so(3)+F4").unwrap()), types_label(&algebra_types("su(2)+F4").unwrap()));
    assert!(algebra_types("xx(3)").is_err());
}

#[test]
fn torus_cases() {
    for id in ["1", "2", "8", "9"] {
        let r = run_case(id).unwrap();
        assert!(r.pass(), "{}", r.to_text());
    }
    let r = run_case("1").unwrap();
    let get = |r: &equigeo::survey::CaseReport, name: &str| r.checks.iter().find(|c| c.name == name).unwrap().clone();
    assert_eq!(get(&r, "dim c_g(u)").computed, "5");
    assert_eq!(get(&r, "bound dim g - 2 dim h").computed, "13");
    let r = run_case("2").unwrap();
    assert_eq!(get(&r, "dim c_g(u)").computed, "2");
    assert!(r.inputs.iter().any(|(k, _)| k.contains("derived")));
    let r = run_case("8").unwrap();
    assert_eq!(get(&r, "type of c_g(u)").computed, "A1+A1+A1+R^3");
    let r = run_case("9").unwrap();
    assert_eq!((get(&r, "dim c_g(u)").computed.as_str(), get(&r, "bound dim g - 2 dim h").computed.as_str()), ("16", "42"));
}

#[test]
fn flag_cases() {
    for id in ["3", "4", "5", "6"] {
        let r = run_case(id).unwrap();
        assert!(r.pass(), "{}", r.to_text());
    }
    let r = run_case("5").unwrap();
    assert_eq!(r.assumptions.len(), 2);
    assert!(r.checks.iter().all(|c| c.source == Source::Stated));
}

#[test]
fn appendix_case() {
    let r = run_case("appendix").unwrap();
    assert!(r.pass(), "{}", r.to_text());
    let c = r.checks.iter().find(|c| c.name == "type of c_g(u')").unwrap();
    assert_eq!(c.computed, "D4+R^3");
}

#[test]
fn e8_case() {
    let r = run_case("7").unwrap();
    assert!(r.pass(), "{}", r.to_text());
}

#[test]
fn reports_are_deterministic() {
    let a = run_case("8").unwrap();
    let b = run_case("8").unwrap();
    assert_eq!(a.to_text(), b.to_text());
    assert_eq!(a.to_records(), b.to_records());
    assert!(a.to_records().lines().all(|l| l.starts_with("case\t8\t")));
    assert!(matches!(run_case("10"), Err(Error::UnknownCase(_))));
}
