use exact_algebra::{ExactMatrix, FieldSpec};
use matroid_core::RepresentedMatroid;
use template_engine::determined_template;

use crate::*;

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[test]
fn named_matroid_shapes() {
    let expect = [
        ("F7", 3, 7),
        ("V1", 3, 9),
        ("V2", 4, 8),
        ("V3", 4, 9),
        ("P1", 3, 9),
        ("P2", 4, 8),
        ("P3", 3, 9),
        ("Pappus", 3, 9),
        ("B11", 3, 11),
        ("S10", 3, 10),
        ("Y9", 3, 9),
        ("B11\\p", 3, 10),
        ("V1*", 6, 9),
    ];
    for (name, r, n) in expect {
        let m = catalog_matroid(name).unwrap();
        assert_eq!((m.rank(), m.size()), (r, n), "{name}");
    }
}

#[test]
fn every_listed_entry_resolves() {
    for e in entries() {
        let ok = match e.kind {
            Kind::Matroid => catalog_matroid(&e.name).is_ok(),
            Kind::Matrix => catalog_matrix(&e.name).is_ok(),
            Kind::Family => family(&e.name, 4).is_ok(),
            Kind::Template => minimal_templates(gf4()).unwrap().iter().any(|(n, _)| n.starts_with(e.name.trim_end_matches('n'))),
        };
        assert!(ok, "{}", e.name);
    }
    assert!(matches!(catalog_matroid("nope"), Err(CatalogError::Unknown(_))));
}

#[test]
fn rank_four_eight_element_matroids_are_self_dual() {
    for name in ["V2", "P2"] {
        let m = catalog_matroid(name).unwrap();
        assert!(m.is_isomorphic(&m.dual()).is_some(), "{name}");
    }
}

#[test]
fn named_matroids_are_simple() {
    for name in ["V1", "V2", "V3", "P1", "P2", "P3", "Pappus", "B11", "F7"] {
        let m = catalog_matroid(name).unwrap();
        assert_eq!(m.simplify().size(), m.size(), "{name}");
    }
}

#[test]
fn b11_hub_and_its_deletions() {
    let b = catalog_matroid("B11").unwrap();
    let hub = b11_hub();
    let lines = three_point_lines(&b);
    assert_eq!(lines.iter().filter(|&&c| c == 5).count(), 1);
    let h = b.index_of(&hub).unwrap();
    let nine = b.index_of("9").unwrap();
    let eleven = b.index_of("11").unwrap();
    let trio = 1u64 << h | 1 << nine | 1 << eleven;
    assert_eq!(b.rank_of_set(trio), 2);
    assert!(catalog_matroid("S10").unwrap().is_isomorphic(&catalog_matroid("B11\\p").unwrap()).is_none());
}

#[test]
fn b11_from_both_printed_matrices() {
    let b = catalog_matroid("B11").unwrap();
    assert!(b.matroids_equal(&b11_from_iv().unwrap()).unwrap());
    let u = determined_template(&catalog_matrix("III'").unwrap()).universal_matroid(3).unwrap();
    assert!(u.simplify().is_isomorphic(&b).is_some());
}

#[test]
fn b11_automorphism_preserves_the_matroid() {
    let b = catalog_matroid("B11").unwrap();
    let perm: Vec<usize> = b
        .ground()
        .iter()
        .map(|l| {
            let (_, img) = b11_automorphism().into_iter().find(|(a, _)| a == l).unwrap();
            b.index_of(&img).unwrap()
        })
        .collect();
    assert!(b.is_automorphism(&perm));
    let mut not_auto = perm.clone();
    not_auto.swap(0, 1);
    assert!(!b.is_automorphism(&not_auto));
}

#[test]
fn matrix_shapes() {
    let shape = |n: &str| {
        let m = catalog_matrix(n).unwrap();
        (m.nrows(), m.ncols())
    };
    assert_eq!(shape("I"), (5, 6));
    assert_eq!(shape("XVI"), (4, 4));
    assert_eq!(shape("III'"), (3, 5));
    assert_eq!(shape("XVIII'"), (3, 3));
    assert_eq!(roman_names().len(), 18);
    assert_eq!(table_letters().len(), 20);
    assert_eq!(table_entry("S").unwrap().0, None);
    assert!(matches!(catalog_matrix("XIX"), Err(CatalogError::Unknown(_))));
    for l in table_letters() {
        let m = catalog_matrix(&format!("Table{l}")).unwrap();
        assert!(m.ncols() > 0, "{l}");
    }
}

#[test]
fn matrices_agree_with_hand_copies() {
    let f = gf4();
    let xvi = ExactMatrix::from_tokens(f, &[&["1", "a", "1", "0"], &["a", "a^2", "a^2", "a^2"], &["a", "1", "a^2", "a"], &["1", "0", "1", "1"]]).unwrap();
    assert_eq!(catalog_matrix("XVI").unwrap(), xvi);
    let v = ExactMatrix::from_tokens(f, &[&["1", "a", "0"], &["a", "a^2", "0"], &["a", "0", "a^2"], &["1", "0", "a"], &["0", "1", "1"]]).unwrap();
    assert_eq!(catalog_matrix("V").unwrap(), v);
}

#[test]
fn text_round_trip() {
    for n in roman_names() {
        let m = catalog_matrix(n).unwrap();
        assert_eq!(ExactMatrix::from_text(&m.to_text()).unwrap(), m, "{n}");
    }
}

#[test]
fn family_sizes() {
    for r in 2..7 {
        assert_eq!(family("T2", r).unwrap().size(), r + binom2(r - 1) + 3 * (r - 1));
        assert_eq!(family("G", r).unwrap().size(), r + binom2(r - 2) + 4 * (r - 2) + 3);
        assert_eq!(family("HP", r).unwrap().size(), r + binom2(r - 2) + 4 * (r - 2) + 3);
        assert_eq!(family("MK", r).unwrap().size(), binom2(r + 1));
    }
    assert_eq!(catalog_matroid("K5").unwrap().size(), 10);
    assert_eq!(catalog_matroid("T2_4").unwrap().rank(), 4);
    assert!(matches!(family("G", 1), Err(CatalogError::RankTooSmall { .. })));
}

#[test]
fn families_are_simple_and_full_rank() {
    for (name, _) in FAMILIES {
        for r in 2..6 {
            let m = family(name, r).unwrap();
            assert_eq!(m.rank(), r);
            assert_eq!(m.simplify().size(), m.size(), "{name} {r}");
        }
    }
}

#[test]
fn families_pairwise_non_isomorphic() {
    for r in [4, 5] {
        let ms: Vec<RepresentedMatroid> = ["T2", "G", "HP"].iter().map(|n| family(n, r).unwrap()).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(ms[i].is_isomorphic(&ms[j]).is_none(), "{i} {j} at {r}");
            }
        }
    }
}

#[test]
fn hp_rescaling_keeps_the_matroid() {
    for r in 2..6 {
        let a = family("HP", r).unwrap();
        let b = RepresentedMatroid::from_matrix(&hp_rescaled_matrix(r).unwrap()).unwrap();
        assert!(a.matroids_equal(&b).unwrap(), "{r}");
    }
}

#[test]
fn family_templates_generate_their_families() {
    for name in ["T2", "G", "HP", "MK"] {
        let yt = family_template(name).unwrap();
        for r in 3..6 {
            let u = yt.universal_matroid(r).unwrap().simplify();
            assert!(u.is_isomorphic(&family(name, r).unwrap()).is_some(), "{name} {r}");
        }
    }
}

#[test]
fn gf5_templates_match_over_gf5() {
    for name in ["T2", "G", "HP"] {
        let a = family_template(name).unwrap();
        let b = family_template_gf5(name).unwrap();
        assert_eq!(b.field(), FieldSpec::Gf(5));
        for r in 3..5 {
            let ua = a.universal_matroid(r).unwrap().simplify();
            let ub = b.universal_matroid(r).unwrap().simplify();
            assert!(ua.is_isomorphic(&ub).is_some(), "{name} {r}");
        }
    }
}

#[test]
fn t2_pair_is_one_matroid() {
    let (a, b) = t2_gf4_gf5_pair();
    let ma = RepresentedMatroid::from_matrix(&a).unwrap();
    let mb = RepresentedMatroid::from_matrix(&b).unwrap();
    assert!(ma.matroids_equal(&mb).unwrap());
    assert_eq!((ma.rank(), ma.size()), (3, 8));
}

#[test]
fn minimal_template_counts() {
    // GF(4): three fixed, three Φ_CXk, and Φ_3.
    assert_eq!(minimal_templates(gf4()).unwrap().len(), 7);
    // GF(5): three fixed, four Φ_CXk, and Φ_2.
    assert_eq!(minimal_templates(FieldSpec::Gf(5)).unwrap().len(), 8);
    assert!(minimal_templates(FieldSpec::Rational).is_err());
}
