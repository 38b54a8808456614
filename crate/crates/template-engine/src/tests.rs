use std::collections::HashMap;

use exact_algebra::{ExactMatrix, FieldSpec, Scalar};
use matroid_core::RepresentedMatroid;
use proptest::prelude::*;

use crate::*;

fn gf(q: u32) -> FieldSpec {
    FieldSpec::make(q).unwrap()
}

fn m(f: FieldSpec, rows: &[&[&str]]) -> ExactMatrix {
    ExactMatrix::from_tokens(f, rows).unwrap()
}

fn s(f: FieldSpec, t: &str) -> Scalar {
    f.parse_scalar(t).unwrap()
}

fn v(f: FieldSpec, toks: &[&str]) -> Vec<Scalar> {
    toks.iter().map(|t| s(f, t)).collect()
}

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn t2() -> YTemplate {
    let f = gf(4);
    YTemplate::new(ExactMatrix::empty(f, 1), m(f, &[&["a", "a^2"]])).unwrap()
}

fn g_template() -> YTemplate {
    let f = gf(4);
    YTemplate::new(m(f, &[&["1", "1", "1"], &["1", "a", "a^2"]]), m(f, &[&["a", "0"], &["0", "a"]])).unwrap()
}

fn hp() -> YTemplate {
    let f = gf(4);
    YTemplate::new(m(f, &[&["1"], &["1"]]), m(f, &[&["1", "a"], &["a", "1"]])).unwrap()
}

fn k4(f: FieldSpec) -> RepresentedMatroid {
    RepresentedMatroid::from_matrix(&ExactMatrix::identity(f, 3).hcat(&ExactMatrix::build_dn(f, 3)).unwrap()).unwrap()
}

// ---- groups

#[test]
fn gamma_and_span() {
    let f = gf(4);
    let g = Gamma::generated_by(f, &s(f, "a")).unwrap();
    assert_eq!(g.order(), 3);
    assert!(Gamma::trivial(f).is_subgroup_of(&g));
    let d = AddGroup::span(f, 1, &[vec![f.one()]], &g).unwrap();
    assert_eq!(d.order(), 4);
    let d1 = AddGroup::span(f, 1, &[vec![f.one()]], &Gamma::trivial(f)).unwrap();
    assert_eq!(d1.order(), 2);
    assert!(d1.is_subgroup_of(&d));
    assert!(!d1.is_closed_under(&g));
    let f5 = gf(5);
    let two = AddGroup::span(f5, 2, &[v(f5, &["1", "2"])], &Gamma::trivial(f5)).unwrap();
    assert_eq!(two.elements().len(), 5);
    assert!(two.contains(&v(f5, &["3", "1"])));
    assert!(!two.contains(&v(f5, &["1", "1"])));
    assert!(!two.vanishes_at(0));
}

#[test]
fn new_rejects_open_groups_and_infinite_fields() {
    let q = FieldSpec::Rational;
    let err = FrameTemplate::new(q, &q.one(), vec![], vec![], vec![], vec![], ExactMatrix::zeros(q, 0, 0), &[], &[]);
    assert_eq!(err.unwrap_err(), TemplateError::NotFinite);
    let f = gf(3);
    let dup = FrameTemplate::new(f, &f.one(), labels(&["c"]), labels(&["c"]), vec![], vec![], ExactMatrix::zeros(f, 1, 1), &[], &[]);
    assert!(matches!(dup, Err(TemplateError::Invalid(_))));
}

// ---- respecting

fn small_template() -> FrameTemplate {
    // X = {x}, Y1 = {y}, A1 = [1], Γ = {1}
    let f = gf(3);
    FrameTemplate::new(f, &f.one(), vec![], labels(&["x"]), vec![], labels(&["y"]), m(f, &[&["1"]]), &[], &[]).unwrap()
}

fn with_labels(a: ExactMatrix, rows: &[&str], cols: &[&str]) -> ExactMatrix {
    a.with_row_labels(labels(rows)).unwrap().with_col_labels(labels(cols)).unwrap()
}

#[test]
fn respects_block_example() {
    let f = gf(3);
    let phi = small_template();
    let a = with_labels(m(f, &[&["0", "0", "1"], &["1", "1", "0"], &["2", "0", "0"]]), &["x", "b1", "b2"], &["g", "z", "y"]);
    assert!(respects_check(&a, &phi, &labels(&["z"]), false).unwrap());
    // nonzero X entry in Z
    let bad = with_labels(m(f, &[&["0", "1", "1"], &["1", "1", "0"], &["2", "0", "0"]]), &["x", "b1", "b2"], &["g", "z", "y"]);
    assert!(!respects_check(&bad, &phi, &labels(&["z"]), false).unwrap());
    // zero Z column only when virtual
    let zero = with_labels(m(f, &[&["0", "0", "1"], &["1", "0", "0"], &["2", "0", "0"]]), &["x", "b1", "b2"], &["g", "z", "y"]);
    assert!(!respects_check(&zero, &phi, &labels(&["z"]), false).unwrap());
    assert!(respects_check(&zero, &phi, &labels(&["z"]), true).unwrap());
    // Z unit entry must be 1
    let two = with_labels(m(f, &[&["0", "0", "1"], &["1", "2", "0"], &["2", "0", "0"]]), &["x", "b1", "b2"], &["g", "z", "y"]);
    assert!(!respects_check(&two, &phi, &labels(&["z"]), false).unwrap());
    // frame column e1 - 2 e2 needs -2 = 1 in Γ
    let frame = with_labels(m(f, &[&["0", "0", "1"], &["1", "1", "0"], &["1", "0", "0"]]), &["x", "b1", "b2"], &["g", "z", "y"]);
    assert!(!respects_check(&frame, &phi, &labels(&["z"]), false).unwrap());
    // A1 mismatch
    let top = with_labels(m(f, &[&["0", "0", "2"], &["1", "1", "0"], &["2", "0", "0"]]), &["x", "b1", "b2"], &["g", "z", "y"]);
    assert!(!respects_check(&top, &phi, &labels(&["z"]), false).unwrap());
}

#[test]
fn respects_checks_delta_and_lambda() {
    let f = gf(3);
    let phi = phi_cxk(f, &f.one()).unwrap();
    // Δ = GF(3) on c, Λ = GF(3) on x
    let a = with_labels(m(f, &[&["1", "2"], &["2", "1"]]), &["x", "b1"], &["c", "g"]);
    assert!(respects_check(&a, &phi, &[], false).unwrap());
    let phi_c3 = phi_c(f).unwrap().apply_reduction(&Reduction::Delta(vec![])).unwrap();
    let a = with_labels(m(f, &[&["2"]]), &["b1"], &["c"]);
    assert!(!respects_check(&a, &phi_c3, &[], false).unwrap());
    let a = with_labels(m(f, &[&["0"]]), &["b1"], &["c"]);
    assert!(respects_check(&a, &phi_c3, &[], false).unwrap());
    let missing = with_labels(m(f, &[&["0"]]), &["b1"], &["q"]);
    assert!(matches!(respects_check(&missing, &phi_c3, &[], false), Err(TemplateError::LabelMismatch(_))));
}

// ---- conforming streams

fn trivial_template(f: FieldSpec) -> FrameTemplate {
    FrameTemplate::new(f, &f.one(), vec![], vec![], vec![], vec![], ExactMatrix::zeros(f, 0, 0), &[], &[]).unwrap()
}

#[test]
fn trivial_template_gives_clique() {
    let f = gf(3);
    let all: Vec<_> = conforming_matrices(&trivial_template(f), 3, ConformOptions::default()).unwrap().collect();
    assert_eq!(all.len(), 1);
    let mm = all[0].matroid().unwrap();
    assert_eq!((mm.size(), mm.rank()), (6, 3));
    assert!(mm.is_isomorphic(&k4(f)).is_some());
}

#[test]
fn rank_zero_stream_is_empty_matrix() {
    let f = gf(3);
    let all: Vec<_> = conforming_matrices(&trivial_template(f), 0, ConformOptions::default()).unwrap().collect();
    assert_eq!(all.len(), 1);
    assert_eq!((all[0].conforming.nrows(), all[0].conforming.ncols()), (0, 0));
    assert!(matches!(conforming_matrices(&small_template(), 0, ConformOptions::default()), Err(TemplateError::RankTooSmall { .. })));
}

#[test]
fn stream_respects_and_truncates() {
    let phi = ops_template();
    for virtual_ in [false, true] {
        let opts = ConformOptions { virtual_, ..Default::default() };
        let mut n = 0;
        for cm in conforming_matrices(&phi, 4, opts).unwrap() {
            assert!(respects_check(&cm.respecting, &phi, &cm.z, virtual_).unwrap());
            n += 1;
        }
        assert_eq!(n, 9);
    }
    let mut st = conforming_matrices(&phi, 4, ConformOptions { max_matrices: 4, ..Default::default() }).unwrap();
    assert_eq!(st.by_ref().count(), 4);
    assert!(st.truncated());
}

#[test]
fn simple_stream_drops_parallel_columns() {
    let phi = t2().to_frame_template().unwrap();
    let opts = ConformOptions { virtual_: true, simple: true, ..Default::default() };
    let cm = conforming_matrices(&phi, 3, opts).unwrap().next().unwrap();
    let mm = cm.matroid().unwrap();
    assert_eq!(mm.size(), mm.simplify().size());
}

#[test]
fn phi_c_rank_two_contains_proof_block() {
    // for each v, [0 1 1; 1 0 -v] sits inside a rank-2 respecting matrix of
    // Φ_C, and contracting c gives M([1 v])
    let f = gf(3);
    let phi = phi_c(f).unwrap();
    let all: Vec<_> = conforming_matrices(&phi, 2, ConformOptions::default()).unwrap().collect();
    assert_eq!(all.len(), 9);
    for val in f.elements() {
        let want_c = vec![f.one(), f.neg(&val)];
        let hit = all
            .iter()
            .find(|cm| {
                let a = &cm.respecting;
                let j = a.col_index("c").unwrap();
                a.column(j) == want_c
            })
            .expect("assignment present");
        let a = &hit.respecting;
        let cols: Vec<Vec<Scalar>> = (0..a.ncols()).map(|j| a.column(j)).collect();
        assert!(cols.contains(&vec![f.zero(), f.one()]));
        assert!(cols.contains(&vec![f.one(), f.zero()]));
        let block = with_labels(
            ExactMatrix::from_rows(f, vec![vec![f.zero(), f.one(), f.one()], vec![f.one(), f.zero(), f.neg(&val)]]).unwrap(),
            &["r1", "r2"],
            &["f", "e", "c"],
        );
        let contracted = RepresentedMatroid::from_matrix(&block).unwrap().contract(&["c"]).unwrap();
        let direct = RepresentedMatroid::from_matrix(
            &ExactMatrix::from_rows(f, vec![vec![f.one(), val.clone()]]).unwrap().with_col_labels(labels(&["f", "e"])).unwrap(),
        )
        .unwrap();
        assert!(contracted.matroids_equal(&direct).unwrap());
    }
}

#[test]
fn universal_matches_virtual_stream() {
    for (yt, r) in [(t2(), 3), (hp(), 3)] {
        let phi = yt.to_frame_template().unwrap();
        let opts = ConformOptions { virtual_: true, ..Default::default() };
        let all: Vec<_> = conforming_matrices(&phi, r, opts).unwrap().collect();
        assert_eq!(all.len(), 1);
        let streamed = all[0].matroid().unwrap();
        let uni = yt.universal_matroid(r).unwrap();
        assert_eq!(streamed.size(), uni.size());
        assert!(streamed.is_isomorphic(&uni).is_some());
    }
}

// ---- reductions and template minors

/// GF(3); C = {c}, X = {x1, x2}, Y0 = {y0}, Y1 = {y1};
/// A1 = [1 1 2; 0 1 1]; Δ = <(1,0,1)>; Λ = <(0,1)>.
fn ops_template() -> FrameTemplate {
    let f = gf(3);
    FrameTemplate::new(
        f,
        &f.one(),
        labels(&["c"]),
        labels(&["x1", "x2"]),
        labels(&["y0"]),
        labels(&["y1"]),
        m(f, &[&["1", "1", "2"], &["0", "1", "1"]]),
        &[v(f, &["1", "0", "1"])],
        &[v(f, &["0", "1"])],
    )
    .unwrap()
}

type Bottoms = HashMap<String, Vec<Scalar>>;

/// Each maximal (virtually) conforming matroid keyed by the bottoms of its
/// C and Y columns. Frame columns are relabelled by their entries outside
/// `drop`, so matroids from different templates can be compared.
fn keyed(phi: &FrameTemplate, r: usize, virtual_: bool, drop: &[&str]) -> Vec<(Bottoms, RepresentedMatroid)> {
    let f = phi.field();
    let opts = ConformOptions { virtual_, ..Default::default() };
    let mut out = Vec::new();
    for mut cm in conforming_matrices(phi, r, opts).unwrap() {
        let a = &cm.conforming;
        let keep: Vec<usize> = (0..a.nrows()).filter(|&i| !drop.contains(&a.row_labels()[i].as_str())).collect();
        let bottom: Vec<usize> = (0..a.nrows()).filter(|&i| !phi.x().contains(&a.row_labels()[i])).collect();
        let mut key = HashMap::new();
        for l in phi.cols() {
            let j = a.col_index(&l).unwrap();
            key.insert(l, bottom.iter().map(|&i| a.get(i, j).clone()).collect());
        }
        let names: Vec<String> = (0..a.ncols())
            .map(|j| {
                let l = &a.col_labels()[j];
                if l.starts_with('g') {
                    let parts: Vec<String> = keep.iter().map(|&i| f.format(a.get(i, j))).collect();
                    format!("g[{}]", parts.join(","))
                } else {
                    l.clone()
                }
            })
            .collect();
        cm.conforming = cm.conforming.clone().with_col_labels(names).unwrap();
        out.push((key, cm.matroid().unwrap()));
    }
    out
}

fn lookup<'a>(table: &'a [(Bottoms, RepresentedMatroid)], key: &Bottoms) -> &'a RepresentedMatroid {
    &table.iter().find(|(k, _)| k == key).expect("matching Δ assignment").1
}

#[test]
fn subgroup_reductions_keep_respecting() {
    let phi = ops_template();
    let f = phi.field();
    let reduced = [
        phi.apply_reduction(&Reduction::Lambda(vec![])).unwrap(),
        phi.apply_reduction(&Reduction::Delta(vec![])).unwrap(),
    ];
    for t in &reduced {
        for cm in conforming_matrices(t, 4, ConformOptions::default()).unwrap() {
            assert!(respects_check(&cm.respecting, &phi, &cm.z, false).unwrap());
        }
    }
    let f5 = gf(5);
    let g5 = FrameTemplate::new(f5, &s(f5, "2"), vec![], labels(&["x"]), vec![], vec![], ExactMatrix::zeros(f5, 1, 0), &[], &[vec![f5.one()]]).unwrap();
    let r5 = g5.apply_reduction(&Reduction::Gamma(s(f5, "4"))).unwrap();
    assert_eq!(r5.gamma().order(), 2);
    for cm in conforming_matrices(&r5, 3, ConformOptions::default()).unwrap() {
        assert!(respects_check(&cm.respecting, &g5, &cm.z, false).unwrap());
        assert!(respects_check(&cm.respecting, &r5, &cm.z, false).unwrap());
    }
    let err = phi.apply_reduction(&Reduction::Delta(vec![v(f, &["1", "1", "1"])])).unwrap_err();
    assert!(matches!(err, TemplateError::Precondition { op: 3, .. }));
}

#[test]
fn remove_y1_deletes_its_z_columns() {
    let phi = ops_template();
    let red = phi.apply_reduction(&Reduction::RemoveY1("y1".into())).unwrap();
    assert_eq!(red.a1().ncols(), phi.a1().ncols() - 1);
    let small = keyed(&red, 4, false, &[]);
    for (mut key, mm) in keyed(&phi, 4, false, &[]) {
        key.remove("y1");
        let expect = mm.delete(&["z.y1.1", "z.y1.2"]).unwrap();
        assert!(lookup(&small, &key).matroids_equal(&expect).unwrap());
    }
}

#[test]
fn contract_unit_c_matches_contraction() {
    let phi = ops_template();
    let f = phi.field();
    let red = phi.apply_reduction(&Reduction::ContractUnitC("c".into())).unwrap();
    assert_eq!(red.x(), &labels(&["x2"])[..]);
    assert!(red.c().is_empty());
    let small = keyed(&red, 3, false, &[]);
    let row = phi.a1().row(0).to_vec();
    for (key, mm) in keyed(&phi, 4, false, &["x1"]) {
        let dc = key["c"].clone();
        let mut shifted = HashMap::new();
        for (j, l) in phi.cols().iter().enumerate().skip(1) {
            let col: Vec<Scalar> = key[l].iter().zip(&dc).map(|(a, d)| f.sub(a, &f.mul(d, &row[j]))).collect();
            shifted.insert(l.clone(), col);
        }
        assert!(lookup(&small, &shifted).matroids_equal(&mm).unwrap());
    }
    // c is no longer a unit column after a row operation mixing it in
    let mixed = phi
        .apply_reduction(&Reduction::Row(RowOp::AddMultiple { target: "x2".into(), source: "x1".into(), factor: f.one() }))
        .unwrap();
    assert!(matches!(mixed.apply_reduction(&Reduction::ContractUnitC("c".into())), Err(TemplateError::Precondition { op: 7, .. })));
}

#[test]
fn zero_row_and_zero_c_are_inert() {
    let f = gf(3);
    let t = FrameTemplate::new(
        f,
        &f.one(),
        labels(&["c"]),
        labels(&["x1", "x2"]),
        vec![],
        labels(&["y"]),
        m(f, &[&["0", "1"], &["0", "0"]]),
        &[v(f, &["0", "1"])],
        &[v(f, &["1", "0"])],
    )
    .unwrap();
    let no_row = t.apply_reduction(&Reduction::RemoveZeroRow("x2".into())).unwrap();
    assert_eq!(no_row.x().len(), 1);
    let table = keyed(&no_row, 2, false, &[]);
    for (key, mm) in keyed(&t, 3, false, &["x2"]) {
        assert!(lookup(&table, &key).matroids_equal(&mm).unwrap());
    }
    let no_c = t.apply_reduction(&Reduction::RemoveZeroC("c".into())).unwrap();
    let table = keyed(&no_c, 3, false, &[]);
    for (mut key, mm) in keyed(&t, 3, false, &[]) {
        key.remove("c");
        assert!(lookup(&table, &key).matroids_equal(&mm).unwrap());
    }
    assert!(matches!(t.apply_reduction(&Reduction::RemoveZeroRow("x1".into())), Err(TemplateError::Precondition { op: 6, .. })));
}

#[test]
fn row_operation_updates_lambda() {
    let phi = ops_template();
    let f = phi.field();
    let t = phi.row_operation(&RowOp::Swap("x1".into(), "x2".into())).unwrap();
    assert!(t.lambda().contains(&v(f, &["1", "0"])));
    assert!(!t.lambda().contains(&v(f, &["0", "1"])));
    assert_eq!(t.a1().row(0), phi.a1().row(1));
    let t = phi.row_operation(&RowOp::AddMultiple { target: "x1".into(), source: "x2".into(), factor: f.one() }).unwrap();
    assert!(t.lambda().contains(&v(f, &["1", "1"])));
    assert!(phi.row_operation(&RowOp::Scale("x1".into(), f.zero())).is_err());
}

#[test]
fn y_shift_matches_virtual_z_column() {
    let phi = ops_template();
    let shifted = phi.y_shift("y1").unwrap();
    assert!(shifted.y1().is_empty());
    assert_eq!(shifted.y0(), &labels(&["y0", "y1"])[..]);
    let table = keyed(&shifted, 4, true, &[]);
    for (key, mm) in keyed(&phi, 4, true, &[]) {
        let cut = mm.delete(&["z.y1.1", "z.y1.2"]).unwrap();
        let names = cut.ground().iter().map(|l| if l == "z.y1.0" { "y1".to_string() } else { l.clone() }).collect();
        assert!(lookup(&table, &key).matroids_equal(&cut.relabel(names).unwrap()).unwrap());
    }
    assert!(phi.y_shift("y0").is_err());
}

#[test]
fn template_minor_ops() {
    let phi = ops_template();
    let f = phi.field();
    let del = phi.apply_template_minor_op(&MinorOp::DeleteY0("y0".into())).unwrap();
    let table = keyed(&del, 4, false, &[]);
    for (mut key, mm) in keyed(&phi, 4, false, &[]) {
        key.remove("y0");
        assert!(lookup(&table, &key).matroids_equal(&mm.delete(&["y0"]).unwrap()).unwrap());
    }
    // (11) with Λ vanishing at x1: contract y0 on row x1
    let con = phi.apply_template_minor_op(&MinorOp::ContractY0AtRow { x: "x1".into(), y: "y0".into() }).unwrap();
    assert_eq!(con.x(), &labels(&["x2"])[..]);
    let table = keyed(&con, 3, false, &[]);
    let row = phi.a1().row(0).to_vec();
    let piv = row[1].clone();
    for (key, mm) in keyed(&phi, 4, false, &["x1"]) {
        let ratio: Vec<Scalar> = key["y0"].iter().map(|d| f.div(d, &piv).unwrap()).collect();
        let mut shifted = HashMap::new();
        for (j, l) in phi.cols().iter().enumerate() {
            if l == "y0" {
                continue;
            }
            let col: Vec<Scalar> = key[l].iter().zip(&ratio).map(|(a, q)| f.sub(a, &f.mul(q, &row[j]))).collect();
            shifted.insert(l.clone(), col);
        }
        assert!(lookup(&table, &shifted).matroids_equal(&mm.contract(&["y0"]).unwrap()).unwrap());
    }
    let err = phi.apply_template_minor_op(&MinorOp::ContractY0AtRow { x: "x2".into(), y: "y0".into() }).unwrap_err();
    assert!(matches!(err, TemplateError::Precondition { op: 11, .. }));
    // (12) needs Δ to vanish at y0, which it does
    let c12 = phi.apply_template_minor_op(&MinorOp::ContractY0 { y: "y0".into(), x: None }).unwrap();
    assert_eq!(c12.x().len(), 1);
    assert!(!c12.cols().contains(&"y0".to_string()));
    let err = phi.apply_template_minor_op(&MinorOp::ContractY0 { y: "y1".into(), x: None }).unwrap_err();
    assert!(matches!(err, TemplateError::Precondition { op: 12, .. }));
}

#[test]
fn standard_form_cases() {
    let f = gf(3);
    let plain = small_template();
    let sf = plain.standard_form().unwrap();
    assert_eq!(sf.template, plain);
    assert_eq!(sf.x1, labels(&["x"]));
    assert!(sf.c0.is_empty());
    let cx = phi_cxk(f, &s(f, "2")).unwrap();
    let sf = cx.standard_form().unwrap();
    assert_eq!((sf.c0.clone(), sf.x0.clone()), (labels(&["c"]), labels(&["x"])));
    assert!(f.is_one(sf.template.a1().get(0, 0)));
    assert_eq!(sf.template.standard_form().unwrap(), sf);
}

#[test]
fn minimal_templates() {
    let f = gf(4);
    assert_eq!(phi_n(f, 3).unwrap().gamma().order(), 3);
    assert!(phi_n(f, 2).is_err());
    assert_eq!(phi_n(gf(7), 2).unwrap().gamma().order(), 2);
    assert_eq!(phi_c(f).unwrap().delta().order(), 2);
    assert_eq!(phi_x(f).unwrap().lambda().order(), 2);
    assert_eq!(phi_y0(f).unwrap().y0().len(), 1);
    assert!(phi_cxk(f, &f.zero()).is_err());
}

#[test]
fn frame_json_round_trip() {
    let phi = ops_template();
    let back = FrameTemplate::from_json(&phi.to_json()).unwrap();
    assert_eq!(back, phi);
    let yt = g_template();
    assert_eq!(YTemplate::from_json(&yt.to_json()).unwrap(), yt);
    assert!(FrameTemplate::from_json(&serde_json::json!({"C": []})).is_err());
}

// ---- universal matroids

#[test]
fn empty_y_template_is_clique() {
    let f = gf(4);
    let yt = YTemplate::new(ExactMatrix::empty(f, 0), ExactMatrix::empty(f, 0)).unwrap();
    let u = yt.universal_matroid(3).unwrap();
    assert!(u.matroids_equal(&k4(f).relabel(labels(&["e1", "e2", "e3", "d1,2", "d1,3", "d2,3"])).unwrap()).unwrap());
}

#[test]
fn epsilon_counts_for_families() {
    let u = t2().universal_matroid(4).unwrap();
    assert_eq!(u.epsilon(), 16);
    assert_eq!(epsilon_formula(t2().stats().unwrap(), 4).unwrap(), 16);
    let st = g_template().stats().unwrap();
    assert_eq!(st, YTemplateStats { c: 2, d: 2, yhat: 5 });
    assert_eq!(epsilon_formula(st, 5).unwrap(), 23);
    assert_eq!(g_template().universal_matroid(5).unwrap().epsilon(), 23);
    let zero = YTemplateStats { c: 0, d: 0, yhat: 0 };
    for r in 0..7 {
        assert_eq!(epsilon_formula(zero, r).unwrap(), r + r * r.saturating_sub(1) / 2);
    }
    assert!(epsilon_formula(st, 1).is_err());
}

#[test]
fn lift_shapes_and_correspondence() {
    let l = t2().lift();
    assert_eq!((l.p0().nrows(), l.p0().ncols(), l.p1().ncols()), (3, 2, 0));
    let f = gf(4);
    let plain = YTemplate::new(m(f, &[&["1", "a"]]), ExactMatrix::empty(f, 1)).unwrap();
    assert_eq!(plain.lift().p0(), plain.p0());
    for yt in [t2(), g_template(), hp()] {
        for r in [4, 5] {
            let d = yt.p1().ncols();
            let lifted = yt.lift().universal_matroid(r + d).unwrap();
            let map = yt.lift_correspondence(r).unwrap();
            let image = map.apply(&lifted).unwrap();
            assert!(image.matroids_equal(&yt.universal_matroid(r).unwrap()).unwrap(), "r = {r}");
        }
    }
}

#[test]
fn normalize_rows_correspondence() {
    for yt in [t2(), g_template(), hp()] {
        let n = yt.normalize_rows();
        let f = yt.field();
        for c in 0..n.p0().ncols() {
            let sum = (0..n.p0().nrows()).fold(f.zero(), |a, r| f.add(&a, n.p0().get(r, c)));
            assert!(f.is_zero(&sum));
        }
        for c in 0..n.p1().ncols() {
            let sum = (0..n.p1().nrows()).fold(f.zero(), |a, r| f.add(&a, n.p1().get(r, c)));
            assert!(f.is_one(&sum));
        }
        for r in yt.nrows() + 1..=yt.nrows() + 2 {
            let image = yt.normalize_correspondence(r).unwrap().apply(&n.universal_matroid(r).unwrap()).unwrap();
            assert!(image.matroids_equal(&yt.universal_matroid(r).unwrap()).unwrap());
        }
    }
    assert!(t2().normalize_correspondence(1).is_err());
}

#[test]
fn complete_is_idempotent() {
    assert!(g_template().is_complete());
    let f = gf(4);
    let g = YTemplate::new(m(f, &[&["1"], &["a"], &["0"]]), ExactMatrix::empty(f, 3)).unwrap();
    assert!(!g.is_complete());
    let c = g.complete();
    assert!(c.is_complete());
    assert_eq!(c.complete(), c);
    assert_eq!(c.p0().ncols(), 4);
}

#[test]
fn determined_template_is_parallel_connection() {
    let f = gf(4);
    let p0 = m(f, &[&["1", "a"], &["a", "0"], &["1", "1"]]);
    let mm = p0.nrows();
    let k = p0.ncols();
    for r in [3, 4, 5] {
        let uni = determined_template(&p0).universal_matroid(r).unwrap();
        // [I_r | D_r | P0; 0]
        let mut direct = ExactMatrix::identity(f, r).hcat(&ExactMatrix::build_dn(f, r)).unwrap();
        direct = direct.hcat(&p0.vcat(&ExactMatrix::zeros(f, r - mm, k)).unwrap()).unwrap();
        let mut names: Vec<String> = (1..=r).map(|i| format!("e{i}")).collect();
        let mut dm = 0;
        for i in 1..=r {
            for j in i + 1..=r {
                names.push(if j <= mm {
                    dm += 1;
                    format!("y{}", k + dm)
                } else if i <= mm {
                    format!("u{i}.{}", j - mm)
                } else {
                    format!("d{},{}", i - mm, j - mm)
                });
            }
        }
        names.extend((1..=k).map(|j| format!("y{j}")));
        let direct = RepresentedMatroid::from_matrix(&direct.with_col_labels(names).unwrap()).unwrap();
        assert!(uni.matroids_equal(&direct).unwrap(), "r = {r}");
    }
}

#[test]
fn strip_row_is_semi_strongly_equivalent() {
    let f = gf(4);
    let p0 = m(f, &[&["1"], &["a"], &["a^2"]]);
    let stripped = strip_row(&p0, 2).unwrap();
    assert_eq!(stripped.nrows(), 2);
    let full = determined_template(&p0);
    for r in [3, 4] {
        let a = full.universal_matroid(r).unwrap();
        let b = stripped.universal_matroid(r).unwrap();
        assert!(a.is_isomorphic(&b).is_some(), "r = {r}");
    }
    assert_eq!(strip_row(&m(f, &[&["1"], &["a"]]), 0).unwrap_err(), TemplateError::RowSum);
}

// ---- contractible submatrices

#[test]
fn contractible_cases() {
    let f = gf(4);
    let cases: Vec<(ExactMatrix, usize)> = vec![
        (m(f, &[&["1", "a"], &["a", "a"], &["a", "1"], &["1", "0"], &["0", "1"]]), 5),
        (m(f, &[&["1", "a"], &["a", "a^2"], &["a", "0"], &["1", "0"], &["0", "1"]]), 5),
        (m(f, &[&["1"], &["a"], &["a"], &["1"]]), 4),
        (m(f, &[&["a", "a"], &["a^2", "0"], &["0", "a^2"], &["1", "0"], &["0", "1"]]), 5),
        (m(f, &[&["a", "a^2"], &["a^2", "a"], &["1", "0"], &["0", "1"]]), 4),
    ];
    for (i, (p0, rows)) in cases.iter().enumerate() {
        let c = find_contractible(p0).unwrap_or_else(|| panic!("case {i}"));
        assert_eq!(c.rows(), *rows, "case {i}");
    }
    let one = find_contractible(&cases[2].0).unwrap();
    assert_eq!(one.q.column(0), v(f, &["1", "a", "a"]));
    assert!(find_contractible(&m(f, &[&["1"], &["0"]])).is_none());
    // semi-parallel pair
    let a = [v(f, &["1", "a", "a", "1", "0"])];
    assert!(is_semi_parallel_extension(f, &a, &v(f, &["1", "a", "a", "0", "1"])));
    assert!(!is_semi_parallel_extension(f, &a, &v(f, &["1", "a", "1", "0", "1"])));
}

// ---- properties

fn gf4_matrix(rows: usize, entries: &[u8]) -> ExactMatrix {
    let f = gf(4);
    let cols = if rows == 0 { 0 } else { entries.len() / rows };
    let rs = (0..rows).map(|r| (0..cols).map(|c| Scalar::Gf(entries[r * cols + c])).collect()).collect();
    if rows == 0 {
        return ExactMatrix::empty(f, 0);
    }
    ExactMatrix::from_rows(f, rs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn epsilon_formula_matches_direct(
        c in 1usize..3,
        p1 in proptest::collection::vec(1u8..4, 4),
        p0 in proptest::collection::vec(0u8..4, 4),
        d in 0usize..3,
        k in 0usize..3,
        extra in 0usize..3,
    ) {
        let p1m = gf4_matrix(c, &p1[..c * d]);
        let p0m = gf4_matrix(c, &p0[..c * k.min(4 / c)]);
        // [I | P1] must have distinct columns
        let f = gf(4);
        let mut seen: Vec<Vec<Scalar>> = (0..c).map(|i| (0..c).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        let mut distinct = true;
        for j in 0..p1m.ncols() {
            let col = p1m.column(j);
            if seen.contains(&col) { distinct = false; }
            seen.push(col);
        }
        prop_assume!(distinct);
        let yt = YTemplate::new(p0m, p1m).unwrap();
        let r = c + extra;
        prop_assert_eq!(epsilon_formula(yt.stats().unwrap(), r).unwrap(), yt.universal_matroid(r).unwrap().epsilon());
    }

    #[test]
    fn normalize_correspondence_random(
        c in 0usize..3,
        p1 in proptest::collection::vec(0u8..4, 4),
        p0 in proptest::collection::vec(0u8..4, 4),
        d in 0usize..3,
        k in 0usize..3,
        extra in 1usize..3,
    ) {
        let (p1m, p0m) = if c == 0 {
            (ExactMatrix::empty(gf(4), 0), ExactMatrix::empty(gf(4), 0))
        } else {
            (gf4_matrix(c, &p1[..c * d.min(4 / c)]), gf4_matrix(c, &p0[..c * k.min(4 / c)]))
        };
        let yt = YTemplate::new(p0m, p1m).unwrap();
        let r = c + extra;
        let image = yt.normalize_correspondence(r).unwrap().apply(&yt.normalize_rows().universal_matroid(r).unwrap()).unwrap();
        prop_assert!(image.matroids_equal(&yt.universal_matroid(r).unwrap()).unwrap());
    }

    #[test]
    fn standard_form_shape(entries in proptest::collection::vec(0u8..3, 6)) {
        let f = gf(3);
        let a1 = ExactMatrix::from_rows(f, entries.chunks(3).map(|r| r.iter().map(|&x| f.from_i64(x as i64)).collect()).collect()).unwrap();
        let t = FrameTemplate::new(f, &f.one(), labels(&["c1", "c2"]), labels(&["x1", "x2"]), vec![], labels(&["y"]), a1, &[], &[vec![f.one(), f.one()]]).unwrap();
        let sf = t.standard_form().unwrap();
        let a = sf.template.a1();
        for (i, x) in sf.x0.iter().enumerate() {
            let ri = a.row_index(x).unwrap();
            for (j, c) in sf.c0.iter().enumerate() {
                let want = if i == j { f.one() } else { f.zero() };
                prop_assert_eq!(a.get(ri, a.col_index(c).unwrap()), &want);
            }
        }
        for x in &sf.x1 {
            let ri = a.row_index(x).unwrap();
            for c in t.c() {
                prop_assert!(f.is_zero(a.get(ri, a.col_index(c).unwrap())));
            }
        }
        prop_assert_eq!(sf.template.standard_form().unwrap(), sf.clone());
    }
}
