//! Cross-module invariants pinned over the bundled diagram corpus.

use khoflow_core::branched::determinant;
use khoflow_core::corpus::Corpus;
use khoflow_core::khovanov::{build_cube, graded_euler_det, kh_homology, khr_homology};

#[test]
fn corpus_determinants() {
    let corpus = Corpus::bundled();
    for (name, det) in [
        ("unknot", 1),
        ("unlink2", 0),
        ("unlink6", 0),
        ("trefoil", 3),
        ("trefoil_mirror", 3),
        ("figure8", 5),
        ("7_2", 11),
        ("l10a18", 10),
        ("p237", 1),
        ("t35", 1),
        ("unknot_r1", 1),
        ("unknot_r2", 1),
        ("trefoil_r1", 3),
        ("figure8_r1", 5),
    ] {
        let d = corpus.diagram(name).unwrap();
        assert_eq!(determinant(&d).unwrap(), det, "determinant of {name}");
    }
}

#[test]
fn alternating_entries_have_thin_total_dims() {
    let corpus = Corpus::bundled();
    for (name, khr_total) in [("trefoil", 3), ("figure8", 5), ("7_2", 11), ("l10a18", 10)] {
        let d = corpus.diagram(name).unwrap();
        assert_eq!(khr_homology(&d).unwrap().total_dim(), khr_total, "{name}");
    }
}

#[test]
fn graded_euler_det_matches_goeritz_det_up_to_ten_crossings() {
    let corpus = Corpus::bundled();
    for name in corpus.names() {
        let d = corpus.diagram(name).unwrap();
        if d.n_crossings() > 10 {
            continue;
        }
        assert_eq!(
            graded_euler_det(&d).unwrap(),
            determinant(&d).unwrap(),
            "euler-characteristic determinant of {name}"
        );
    }
}

#[test]
fn kh_is_twice_khr_on_corpus_small() {
    let corpus = Corpus::bundled();
    for name in corpus.names() {
        let d = corpus.diagram(name).unwrap();
        if d.n_crossings() > 10 {
            continue;
        }
        assert_eq!(
            kh_homology(&d).unwrap().total_dim(),
            2 * khr_homology(&d).unwrap().total_dim(),
            "{name}"
        );
    }
}

#[test]
fn khr_tables_agree_across_reidemeister_pairs() {
    let corpus = Corpus::bundled();
    for (a, b) in corpus.reidemeister_pairs() {
        let da = corpus.diagram(a).unwrap();
        let db = corpus.diagram(b).unwrap();
        assert_eq!(
            khr_homology(&da).unwrap(),
            khr_homology(&db).unwrap(),
            "pair ({a}, {b})"
        );
    }
}

#[test]
fn cube_faces_commute_on_whole_corpus() {
    let corpus = Corpus::bundled();
    for name in corpus.names() {
        let d = corpus.diagram(name).unwrap();
        assert!(build_cube(&d).unwrap().faces_commute(), "{name}");
    }
}

#[test]
fn double_mirror_of_seven_two_restores_circle_counts() {
    let corpus = Corpus::bundled();
    let d = corpus.diagram("7_2").unwrap();
    let mm = d.mirror().mirror();
    for mask in 0u64..1 << d.n_crossings() {
        assert_eq!(
            mm.resolve_mask(mask).n_circles(),
            d.resolve_mask(mask).n_circles(),
            "mask {mask}"
        );
    }
}

#[test]
fn pretzel_skein_triple_dets() {
    let corpus = Corpus::bundled();
    let d = corpus.diagram("p237").unwrap();
    let (k2, k1, k0) = d.skein_triple(0).unwrap();
    assert_eq!(k2.n_components(), 1);
    assert_eq!(k1.n_components(), 1, "the 1-resolution is a knot");
    assert_eq!(k0.n_components(), 2, "the 0-resolution is a 2-component link");
    assert_eq!(determinant(&k2).unwrap(), 1);
    assert_eq!(determinant(&k1).unwrap(), 11);
    assert_eq!(determinant(&k0).unwrap(), 10);
}
