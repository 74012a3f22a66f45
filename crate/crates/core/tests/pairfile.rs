use std::path::PathBuf;

use equigeo::linalg::{q, qr, Q};
use equigeo::pairfile::{builtin_fixtures, PairSpecFile, Witness};
use equigeo::pairs::{symmetric_pair_test, EmbeddingSpec};
use equigeo::Error;
use proptest::prelude::*;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn shipped_fixtures_are_current() {
    // Set EQUIGEO_BLESS=1 to rewrite the directory.
    let dir = fixtures_dir();
    let bless = std::env::var_os("EQUIGEO_BLESS").is_some();
    for (file, spec) in builtin_fixtures().unwrap() {
        let path = dir.join(&file);
        let text = spec.to_text();
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {file}"));
        assert_eq!(on_disk, text, "{file} is stale");
        assert_eq!(PairSpecFile::parse(&on_disk).unwrap(), spec);
    }
}

#[test]
fn fixtures_build_with_expected_dimensions() {
    let expected = [
        ("case1", 35, 11, true),
        ("case2", 10, 3, true),
        ("case8", 66, 24, true),
        ("case9", 120, 39, true),
        ("appendix-e7", 133, 55, true),
        ("so7-g2", 21, 14, false),
        ("g2-su3", 14, 8, false),
        ("su2su2-diag", 6, 3, false),
        ("so4-so1so3", 6, 3, false),
        ("so5-so2so3", 10, 4, false),
        ("so6-so3so3", 15, 6, false),
        ("su6-su2su3", 35, 11, false),
        ("su2-trivial", 3, 0, false),
    ];
    let all = builtin_fixtures().unwrap();
    assert_eq!(all.len(), expected.len());
    for (name, dg, dh, torus) in expected {
        let (_, spec) = all.iter().find(|(_, s)| s.name == name).unwrap();
        let pair = spec.build().unwrap();
        assert_eq!((pair.g().dim(), pair.dim_h(), pair.is_torus_only()), (dg, dh, torus), "{name}");
        for w in spec.witness_vectors(pair.g()).unwrap() {
            assert_eq!(w.len(), dg);
        }
    }
}

#[test]
fn involution_fixtures_are_symmetric() {
    for (_, spec) in builtin_fixtures().unwrap() {
        if matches!(spec.embedding, EmbeddingSpec::Involution { .. }) {
            assert!(symmetric_pair_test(&spec.build().unwrap()).unwrap(), "{}", spec.name);
        }
    }
}

#[test]
fn torus_witness_maps_to_cartan() {
    let spec = PairSpecFile::parse("name t\nambient C2\nembedding torus\ntorus 1 -2\ntorus-witness 2 1\n").unwrap();
    let pair = spec.build().unwrap();
    let w = spec.witness_vectors(pair.g()).unwrap();
    assert_eq!(w[0][2..].iter().filter(|x| **x != q(0)).count(), 0);
    assert_eq!(w[0], pair.g().cartan_element(&[q(2), q(1)]).unwrap());
}

#[test]
fn malformed_files_are_rejected() {
    for bad in [
        "ambient A1\nembedding explicit\n",
        "name x\nembedding explicit\n",
        "name x\nambient A1\n",
        "name x\nambient A1\nembedding sideways\n",
        "name x\nambient A1\nembedding explicit\nroot 1 0\n",
        "name x\nambient A1\nembedding explicit\nimage 1 a 0\n",
        "name x\nambient A1\nembedding explicit\ncolour red\n",
        "name x\n# late comment\nambient A1\nembedding explicit\n",
        "name x\nambient A1\nembedding regular\ndim_h 3\n",
    ] {
        assert!(matches!(PairSpecFile::parse(bad), Err(Error::Parse(_))), "{bad:?}");
    }
    let wrong_len = PairSpecFile::parse("name x\nambient A1\nembedding explicit\nwitness 1 0\n").unwrap();
    let g = wrong_len.build_algebra().unwrap();
    assert!(wrong_len.witness_vectors(&g).is_err());
}

fn small_q() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..6).prop_map(|(n, d)| qr(n, d))
}

proptest! {
    #[test]
    fn text_round_trips(
        comments in prop::collection::vec("[a-z ()0-9]{0,12}", 0..3),
        images in prop::collection::vec(prop::collection::vec(small_q(), 3), 0..3),
        witness in prop::collection::vec(small_q(), 3),
        case in prop::option::of("[0-9]{1,2}"),
    ) {
        let spec = PairSpecFile {
            comments: comments.iter().map(|c| c.trim().to_string()).collect(),
            name: "p".into(),
            case,
            ambient: "A1".into(),
            embedding: EmbeddingSpec::Explicit { images },
            witnesses: vec![Witness::Algebra(witness)],
        };
        let text = spec.to_text();
        let back = PairSpecFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.to_text(), text);
    }
}
