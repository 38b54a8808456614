use exact_algebra::{ExactMatrix, FieldSpec, Scalar};
use matroid_core::{combinations, mask_of, members, RepresentedMatroid};
use partial_field::{check_partial_field, eval_frac, MembershipOracle, Presentation};
use poly_groebner::{parse_poly, var_names, GbBudget, MonoOrder, PolyIdeal, Q};
use proptest::prelude::*;

use crate::*;

fn gf4() -> FieldSpec {
    FieldSpec::make(4).unwrap()
}

fn gf4_matrix(rows: &[&[&str]]) -> ExactMatrix {
    ExactMatrix::from_tokens(gf4(), rows).unwrap()
}

fn p0_i() -> ExactMatrix {
    gf4_matrix(&[
        &["1", "1", "a", "a", "a", "a^2"],
        &["a", "a", "a", "a", "a^2", "a"],
        &["a", "a", "1", "1", "1", "1"],
        &["1", "0", "1", "0", "0", "0"],
        &["0", "1", "0", "1", "0", "0"],
    ])
}

fn p0_ii() -> ExactMatrix {
    gf4_matrix(&[
        &["1", "a", "1", "a^2", "0"],
        &["a", "a", "a^2", "0", "1"],
        &["a", "1", "0", "a^2", "a"],
        &["1", "0", "a^2", "1", "a"],
        &["0", "1", "1", "1", "1"],
    ])
}

fn p0_v() -> ExactMatrix {
    gf4_matrix(&[&["1", "a", "0"], &["a", "a^2", "0"], &["a", "0", "a^2"], &["1", "0", "a"], &["0", "1", "1"]])
}

fn p0_xv() -> ExactMatrix {
    gf4_matrix(&[&["a", "a", "a^2", "a^2"], &["a^2", "a^2", "a", "a"], &["1", "0", "1", "0"], &["0", "1", "0", "1"]])
}

fn p0_xvi() -> ExactMatrix {
    gf4_matrix(&[&["1", "a", "1", "0"], &["a", "a^2", "a^2", "a^2"], &["a", "1", "a^2", "a"], &["1", "0", "1", "1"]])
}

fn ideal_of(texts: &[&str], n: usize) -> PolyIdeal<Q> {
    let names = var_names(n);
    let gens = texts.iter().map(|t| parse_poly::<Q>(t, &names, MonoOrder::DegRevLex).unwrap()).collect();
    PolyIdeal::new(gens, MonoOrder::DegRevLex, GbBudget::unlimited()).unwrap()
}

struct Golden {
    p0: ExactMatrix,
    nvars: usize,
    ideal: &'static [&'static str],
    keep: usize,
    gens: &'static [&'static str],
    name: &'static str,
}

fn golden_i() -> Golden {
    Golden {
        p0: p0_i(),
        nvars: 12,
        ideal: &[
            "z11^2 + z11 - 1", "z0 + z11", "z1 - z11", "z2 + z11", "z3 - z11", "z4 - z11", "z5 + z11", "z6 - z11",
            "z7 + z11", "z8 + z11", "z9 - z11 + 1", "z10 + z11 + 1",
        ],
        keep: 2,
        gens: &["-1", "z2", "z2 + 1", "z2 - 1", "z2^2 - 2*z2"],
        name: "G",
    }
}

fn golden_ii() -> Golden {
    Golden {
        p0: p0_ii(),
        nvars: 10,
        ideal: &[
            "z9^2 + z9 - 1", "z0 + z9", "z1 - z9", "z2 - z9", "z3 + z9", "z4 + z9 + 1", "z5 - z9 - 1", "z6 - z9 - 1",
            "z7 + z9 + 1", "z8 + z9",
        ],
        keep: 8,
        gens: &["-1", "z8", "z8 + 1", "z8 - 1", "z8 - 2", "z8^2 - 2*z8", "-2*z8 + 3", "2*z8 + 1"],
        name: "G",
    }
}

fn golden_v() -> Golden {
    Golden {
        p0: p0_v(),
        nvars: 6,
        ideal: &["z1*z5 + z5 + 1", "z0 + z1", "z2 - z5", "z3 + z5 + 1", "z4 + z5 + 1"],
        keep: 0,
        gens: &["-1", "z0", "z0 + 1", "z0 - 1", "1/z0", "1/(z0 + 1)", "1/(z0 - 1)"],
        name: "K2",
    }
}

fn golden_xvi() -> Golden {
    Golden {
        p0: p0_xvi(),
        nvars: 8,
        ideal: &["z3*z7 + z3 + z7", "z0 + z7", "z1 - z7", "z2 + z3 + 1", "z4 + z7 + 1", "z5 - z7 - 1", "z6 + z7 + 1"],
        keep: 7,
        gens: &["-1", "z7", "z7 + 1", "z7 - 1", "z7 + 2", "2*z7 + 1", "1/z7", "1/(z7 + 1)", "1/(z7 - 1)", "1/(z7 + 2)"],
        name: "PT",
    }
}

fn run_golden(g: &Golden) {
    let rep = template_representation(&g.p0, false).unwrap();
    assert_eq!(rep.nvars(), g.nvars);
    let m = rep.matroid().unwrap();
    let ideal = zero_determinant_ideal(&m, &rep, GbBudget::unlimited()).unwrap();
    assert!(ideal.same_ideal(&ideal_of(g.ideal, g.nvars)), "ideal differs: {:?}", ideal.basis());

    let opts = UpfOptions { keep: vec![g.keep], ..UpfOptions::default() };
    let upf = universal_partial_field(&m, &rep, &opts).unwrap();
    assert_eq!(upf.substitutions.free, vec![g.keep]);
    assert_eq!(upf.identification.as_ref().map(|i| i.name.as_str()), Some(g.name));

    // the printed generator list passes on its own
    let names = rep.names();
    let gens: Vec<&str> = g.gens.to_vec();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let residual: Vec<String> = upf.presentation.ideal_texts();
    let residual: Vec<&str> = residual.iter().map(String::as_str).collect();
    let pres = Presentation::parse("printed", &name_refs, &residual, &gens).unwrap();
    let oracle = MembershipOracle::new(&pres);
    assert!(check_partial_field(&m, &upf.matrix, &oracle, &[]).unwrap().is_true());
}

#[test]
fn template_variable_counts() {
    assert_eq!(template_representation(&p0_i(), false).unwrap().nvars(), 12);
    assert_eq!(template_representation(&p0_v(), false).unwrap().nvars(), 6);
    let rep = template_representation(&p0_i(), false).unwrap();
    // first P0 column of matrix I: [-1, z0, z1, 1, 0]
    let c = 5 + 10;
    let texts = rep.avar.to_texts(&rep.names());
    let col: Vec<&str> = texts.iter().map(|r| r[c].as_str()).collect();
    assert_eq!(col, ["-1", "z0", "z1", "1", "0"]);
    assert_eq!(rep.variables[11], (1, c + 5));
}

#[test]
fn seeded_pairs_and_the_relation_they_encode() {
    let seeded = template_representation(&p0_i(), true).unwrap();
    let texts = seeded.avar.to_texts(&seeded.names());
    let col: Vec<&str> = texts.iter().map(|r| r[15].as_str()).collect();
    assert_eq!(col, ["-1", "-z0", "z0", "1", "0"]);
    // without seeding the ideal forces the same shape
    let rep = template_representation(&p0_i(), false).unwrap();
    let ideal = zero_determinant_ideal(&rep.matroid().unwrap(), &rep, GbBudget::unlimited()).unwrap();
    assert!(ideal.contains(&parse_poly::<Q>("z0 + z1", &rep.names(), MonoOrder::DegRevLex).unwrap()));
}

#[test]
fn dispatcher_recognizes_frames() {
    let rep = template_representation(&p0_v(), false).unwrap();
    let again = variable_representation(&rep.a4).unwrap();
    assert_eq!(again.kind, RepKind::Template);
    assert_eq!(again.avar, rep.avar);
    let u24 = ExactMatrix::from_i64(FieldSpec::make(5).unwrap(), &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
    let f = variable_representation(&u24).unwrap();
    assert_eq!(f.kind, RepKind::Forest);
    assert_eq!(f.nvars(), 1);
    let bad = ExactMatrix::from_i64(FieldSpec::make(5).unwrap(), &[vec![1, 1], vec![1, 2]]);
    assert!(matches!(forest_representation(&bad), Err(UpfError::NotStandardForm(_))));
    assert!(matches!(template_representation(&bad, false), Err(UpfError::NotGf4)));
}

#[test]
fn golden_matrix_i() {
    run_golden(&golden_i());
}

#[test]
fn golden_matrix_ii() {
    run_golden(&golden_ii());
}

#[test]
fn golden_matrix_v() {
    run_golden(&golden_v());
}

#[test]
fn golden_matrix_xvi() {
    run_golden(&golden_xvi());
}

#[test]
fn matrix_xv_is_two_regular() {
    let rep = template_representation(&p0_xv(), false).unwrap();
    let m = rep.matroid().unwrap();
    let ideal = zero_determinant_ideal(&m, &rep, GbBudget::unlimited()).unwrap();
    let printed = ["z0 + z3 + 1", "z1 - z3", "z2 + z3 + 1", "z4 + z7 + 1", "z5 - z7", "z6 + z7 + 1"];
    assert!(ideal.same_ideal(&ideal_of(&printed, 8)));
    let upf = universal_partial_field(&m, &rep, &UpfOptions { keep: vec![3, 7], ..UpfOptions::default() }).unwrap();
    assert_eq!(upf.substitutions.free, vec![3, 7]);
    assert!(upf.presentation.ideal().is_zero_ideal());
    assert_eq!(upf.identification.unwrap().name, "U2");
}

#[test]
fn rank_one_is_regular() {
    let a = ExactMatrix::from_i64(gf4(), &[vec![1, 1]]);
    let rep = variable_representation(&a).unwrap();
    let m = RepresentedMatroid::from_matrix(&a).unwrap();
    let upf = universal_partial_field(&m, &rep, &UpfOptions::default()).unwrap();
    assert_eq!(upf.presentation.generator_texts(), ["-1"]);
    assert_eq!(upf.identification.unwrap().name, "U0");
}

#[test]
fn uniform_matroid_has_zero_ideal() {
    let u24 = ExactMatrix::from_tokens(gf4(), &[&["1", "0", "1", "1"], &["0", "1", "1", "a"]]).unwrap();
    let rep = variable_representation(&u24).unwrap();
    let m = RepresentedMatroid::from_matrix(&u24).unwrap();
    assert!(zero_determinant_ideal(&m, &rep, GbBudget::unlimited()).unwrap().is_zero_ideal());
    // [1,1] is the D_2 column, so this is read as a template; near-regular,
    // which is not among the identified candidates
    assert_eq!(rep.kind, RepKind::Template);
    let upf = universal_partial_field(&m, &rep, &UpfOptions::default()).unwrap();
    assert_eq!(upf.substitutions.free.len(), 1);
    assert_eq!(upf.presentation.generator_texts(), ["-1", "z0", "z0 + 1"]);
    assert!(upf.identification.is_none());
}

#[test]
fn pattern_mismatch_is_reported() {
    let rep = template_representation(&p0_v(), false).unwrap();
    let other = template_representation(&p0_xvi(), false).unwrap().matroid().unwrap();
    assert!(matches!(zero_determinant_ideal(&other, &rep, GbBudget::unlimited()), Err(UpfError::PatternMismatch(_))));
}

// ---------------------------------------------------------------------------
// representability against exhaustive search

fn fano(field: FieldSpec) -> ExactMatrix {
    ExactMatrix::from_i64(field, &[vec![1, 0, 0, 0, 1, 1, 1], vec![0, 1, 0, 1, 0, 1, 1], vec![0, 0, 1, 1, 1, 0, 1]])
}

fn non_fano() -> ExactMatrix {
    ExactMatrix::from_i64(FieldSpec::make(3).unwrap(), &[vec![1, 0, 0, 0, 1, 1, 1], vec![0, 1, 0, 1, 0, 1, 1], vec![0, 0, 1, 1, 1, 0, 1]])
}

fn k4() -> ExactMatrix {
    ExactMatrix::from_i64(FieldSpec::make(2).unwrap(), &[vec![1, 0, 0, 1, 1, 0], vec![0, 1, 0, 1, 0, 1], vec![0, 0, 1, 0, 1, 1]])
}

fn u_2_n(n: usize) -> ExactMatrix {
    let f = FieldSpec::make(7).unwrap();
    let mut rows = vec![vec![1i64, 0], vec![0, 1]];
    for k in 0..n - 2 {
        rows[0].push(1);
        rows[1].push(k as i64 + 1);
    }
    ExactMatrix::from_i64(f, &rows)
}

/// Tries every value for the variables of the forest representation and
/// compares the bases of the result with those of `m`.
fn brute_force(m: &RepresentedMatroid, q: u32) -> bool {
    let rep = forest_representation(m.matrix()).unwrap();
    let field = FieldSpec::make(q).unwrap();
    let elems = field.elements();
    let n = rep.nvars();
    assert!(n <= 8);
    let mut idx = vec![0usize; n];
    loop {
        let values: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
        let mut ok = true;
        let mut rows = Vec::new();
        for r in 0..rep.avar.nrows() {
            let mut row = Vec::new();
            for c in 0..rep.avar.ncols() {
                match eval_frac(field, rep.avar.get(r, c), &values) {
                    Some(v) => row.push(v),
                    None => ok = false,
                }
            }
            rows.push(row);
        }
        if ok {
            let a = ExactMatrix::from_rows(field, rows).unwrap();
            let r = m.rank();
            let all: Vec<usize> = (0..r).collect();
            let same = combinations(m.size(), r).all(|s| {
                let nonzero = !field.is_zero(&a.submatrix(&all, &members(s)).det().unwrap());
                nonzero == m.is_basis(s)
            });
            if same {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return false;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn small_matroids() -> Vec<(&'static str, RepresentedMatroid)> {
    let mk = |a: ExactMatrix| RepresentedMatroid::from_matrix(&a).unwrap();
    vec![
        ("F7", mk(fano(FieldSpec::make(2).unwrap()))),
        ("F7-", mk(non_fano())),
        ("K4", mk(k4())),
        ("U24", mk(u_2_n(4))),
        ("U25", mk(u_2_n(5))),
        ("U26", mk(u_2_n(6))),
        ("V", mk(template_representation(&p0_v(), false).unwrap().a4)),
    ]
}

#[test]
fn representability_matches_exhaustive_search() {
    for (name, m) in small_matroids() {
        let n = forest_representation(m.matrix()).unwrap().nvars();
        if n > 8 {
            continue;
        }
        for q in [2, 3, 4] {
            let fast = is_representable_over(&m, q, GbBudget::unlimited()).unwrap();
            assert_eq!(fast.is_yes(), brute_force(&m, q), "{name} over GF({q})");
        }
    }
}

#[test]
fn fano_gates() {
    let m = RepresentedMatroid::from_matrix(&fano(FieldSpec::make(2).unwrap())).unwrap();
    assert_eq!(is_representable_over(&m, 2, GbBudget::unlimited()).unwrap(), Answer::Yes);
    assert_eq!(is_representable_over(&m, 3, GbBudget::unlimited()).unwrap(), Answer::No);
    assert_eq!(is_representable_over(&m, 4, GbBudget::unlimited()).unwrap(), Answer::Yes);
    let report = characteristic_set(&m, &DEFAULT_PRIMES, true, GbBudget::unlimited()).unwrap();
    assert_eq!(report.solvable(), vec![2]);
    let j = report.to_json("F7");
    assert_eq!(j["primes"]["2"], true);
    assert_eq!(j["zero"], false);
}

#[test]
fn regular_and_non_fano_reports() {
    let k = RepresentedMatroid::from_matrix(&k4()).unwrap();
    let all = characteristic_set(&k, &DEFAULT_PRIMES, true, GbBudget::unlimited()).unwrap();
    assert_eq!(all.solvable(), vec![2, 3, 5, 7, 11, 13, 0]);
    let nf = RepresentedMatroid::from_matrix(&non_fano()).unwrap();
    let r = characteristic_set(&nf, &DEFAULT_PRIMES, true, GbBudget::unlimited()).unwrap();
    assert_eq!(r.solvable(), vec![3, 5, 7, 11, 13, 0]);
    assert_eq!(r.tested_primes, DEFAULT_PRIMES.to_vec());
}

#[test]
fn uniform_needs_enough_elements() {
    let u25 = RepresentedMatroid::from_matrix(&u_2_n(5)).unwrap();
    assert_eq!(is_representable_over(&u25, 3, GbBudget::unlimited()).unwrap(), Answer::No);
    assert_eq!(is_representable_over(&u25, 4, GbBudget::unlimited()).unwrap(), Answer::Yes);
    let u26 = RepresentedMatroid::from_matrix(&u_2_n(6)).unwrap();
    assert_eq!(is_representable_over(&u26, 4, GbBudget::unlimited()).unwrap(), Answer::No);
    assert_eq!(is_representable_over(&u26, 5, GbBudget::unlimited()).unwrap(), Answer::Yes);
}

#[test]
fn deletion_never_loses_characteristics() {
    for (name, m) in small_matroids() {
        let full = characteristic_set(&m, &[2, 3, 5], true, GbBudget::unlimited()).unwrap().solvable();
        for e in 0..m.size() {
            let d = m.delete_set(mask_of(&[e]));
            let sub = characteristic_set(&d, &[2, 3, 5], true, GbBudget::unlimited()).unwrap().solvable();
            assert!(full.iter().all(|p| sub.contains(p)), "{name} minus {e}: {full:?} vs {sub:?}");
        }
    }
}

#[test]
fn tiny_budget_gives_unknown() {
    let m = RepresentedMatroid::from_matrix(&non_fano()).unwrap();
    let r = characteristic_set(&m, &[3], false, GbBudget::spairs(1)).unwrap();
    assert!(r.has_unknown() || r.solvable() == vec![3]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pattern_fidelity(entries in proptest::collection::vec(0u8..4, 12)) {
        let rows: Vec<Vec<Scalar>> = entries.chunks(4).map(|c| c.iter().map(|&v| Scalar::Gf(v)).collect()).collect();
        let p0 = ExactMatrix::from_rows(gf4(), rows).unwrap();
        let rep = template_representation(&p0, false).unwrap();
        let field = gf4();
        for r in 0..rep.a4.nrows() {
            for c in 0..rep.a4.ncols() {
                prop_assert_eq!(field.is_zero(rep.a4.get(r, c)), rep.avar.get(r, c).is_zero());
            }
        }
        for f in &rep.forced {
            prop_assert!(f.value == 1 || f.value == -1);
        }
    }

    #[test]
    fn forest_entries_are_ones(entries in proptest::collection::vec(0u8..4, 9)) {
        let field = gf4();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (i, chunk) in entries.chunks(3).enumerate() {
            let mut row: Vec<Scalar> = (0..3).map(|j| Scalar::Gf(u8::from(i == j))).collect();
            row.extend(chunk.iter().map(|&v| Scalar::Gf(v)));
            rows.push(row);
        }
        let a = ExactMatrix::from_rows(field, rows).unwrap();
        let rep = forest_representation(&a).unwrap();
        for f in rep.forced.iter().filter(|f| f.reason == ForcedReason::Forest) {
            prop_assert!(field.is_one(rep.a4.get(f.row, f.col)));
        }
        // scaling rows and columns keeps the matroid
        let m1 = RepresentedMatroid::from_matrix(&a).unwrap();
        let m2 = rep.matroid().unwrap();
        prop_assert!(m1.matroids_equal(&m2).unwrap());
    }
}


#[test]
fn homomorphism_search() {
    let sym = |n: &str| match partial_field::pf_catalog(n).unwrap() {
        partial_field::PartialField::Symbolic(p) => p,
        _ => unreachable!(),
    };
    assert!(find_homomorphism(&sym("G"), &sym("G"), 10_000).is_some());
    assert!(find_homomorphism(&sym("G"), &sym("K2"), 10_000).is_none());
    assert!(find_homomorphism(&sym("K2"), &sym("U2"), 10_000).is_none());
}
