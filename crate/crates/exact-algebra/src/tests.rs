use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use crate::{AlgebraError, ExactMatrix, FieldSpec, Scalar, GF4, QQ, SUPPORTED_ORDERS};

fn gf(q: u8) -> FieldSpec {
    FieldSpec::make(q as u32).unwrap()
}

fn tok(f: FieldSpec, s: &str) -> Scalar {
    f.parse_scalar(s).unwrap()
}

#[test]
fn gf4_generator_relation() {
    let a = tok(GF4, "a");
    assert_eq!(GF4.mul(&a, &a), GF4.add(&a, &GF4.one()));
    let labels: Vec<String> = GF4.elements().iter().map(|x| GF4.format(x)).collect();
    assert_eq!(labels, ["0", "1", "a", "a^2"]);
    assert_eq!(tok(GF4, "w+1"), tok(GF4, "a^2"));
    assert_eq!(tok(GF4, "α"), a);
}

#[test]
fn gf5_golden_root_is_three() {
    let f = gf(5);
    let roots: Vec<Scalar> = f
        .elements()
        .into_iter()
        .filter(|x| f.is_zero(&f.sub(&f.sub(&f.mul(x, x), x), &f.one())))
        .collect();
    assert_eq!(roots, vec![f.from_i64(3)]);
}

#[test]
fn gf2_char_two() {
    let f = gf(2);
    for x in f.elements() {
        assert!(f.is_zero(&f.add(&x, &x)));
    }
}

#[test]
fn unsupported_order_rejected() {
    assert!(matches!(FieldSpec::make(6), Err(AlgebraError::UnsupportedField(_))));
    assert!(FieldSpec::make(16).is_err());
}

#[test]
fn field_axioms_exhaustive() {
    for &q in &SUPPORTED_ORDERS {
        let f = gf(q);
        let els = f.elements();
        for x in &els {
            assert_eq!(f.add(x, &f.zero()), *x);
            assert_eq!(f.mul(x, &f.one()), *x);
            assert!(f.is_zero(&f.add(x, &f.neg(x))));
            if !f.is_zero(x) {
                assert!(f.is_one(&f.mul(x, &f.inv(x).unwrap())));
            }
            for y in &els {
                assert_eq!(f.add(x, y), f.add(y, x));
                assert_eq!(f.mul(x, y), f.mul(y, x));
                for z in &els {
                    assert_eq!(f.add(&f.add(x, y), z), f.add(x, &f.add(y, z)));
                    assert_eq!(f.mul(&f.mul(x, y), z), f.mul(x, &f.mul(y, z)));
                    assert_eq!(f.mul(x, &f.add(y, z)), f.add(&f.mul(x, y), &f.mul(x, z)));
                }
            }
        }
        assert_eq!(f.pow(&f.primitive_element().unwrap(), (q - 1) as u64), f.one());
    }
}

#[test]
fn frobenius_on_gf4() {
    let f = GF4;
    for x in f.elements() {
        for y in f.elements() {
            assert_eq!(f.frobenius(&f.add(&x, &y)), f.add(&f.frobenius(&x), &f.frobenius(&y)));
            assert_eq!(f.frobenius(&f.mul(&x, &y)), f.mul(&f.frobenius(&x), &f.frobenius(&y)));
        }
    }
    assert_eq!(f.frobenius(&f.zero()), f.zero());
    assert_eq!(f.frobenius(&f.one()), f.one());
    assert_eq!(f.frobenius(&tok(f, "a")), tok(f, "a^2"));
}

#[test]
fn rref_examples() {
    let m = ExactMatrix::from_tokens(GF4, &[&["1", "a"], &["a", "a^2"]]).unwrap();
    assert_eq!(m.rank(), 1);
    let m = ExactMatrix::identity(GF4, 3).hcat(&ExactMatrix::build_dn(GF4, 3)).unwrap();
    assert_eq!(m.rank(), 3);
    assert_eq!(ExactMatrix::empty(GF4, 3).rank(), 0);
    assert_eq!(ExactMatrix::zeros(GF4, 0, 0).rank(), 0);
}

#[test]
fn pivot_one_by_one() {
    let m = ExactMatrix::from_tokens(GF4, &[&["1", "a"]]).unwrap();
    let p = m.pivot(0, 1).unwrap();
    // columns swap: the old unit column now holds a^{-1}
    assert!(GF4.is_one(p.get(0, 0)));
    assert_eq!(*p.get(0, 1), GF4.inv(&tok(GF4, "a")).unwrap());
    assert_eq!(p.col_labels(), ["2", "1"]);
}

#[test]
fn pivot_on_zero_fails() {
    let m = ExactMatrix::from_i64(GF4, &[vec![1, 0, 0], vec![0, 1, 1]]);
    assert!(matches!(m.pivot(0, 2), Err(AlgebraError::ZeroPivot(..))));
}

#[test]
fn det_examples() {
    assert_eq!(ExactMatrix::identity(gf(7), 4).det().unwrap(), gf(7).one());
    let m = ExactMatrix::from_tokens(GF4, &[&["1", "a"], &["a", "1"]]).unwrap();
    assert_eq!(m.det().unwrap(), tok(GF4, "a"));
    let m = ExactMatrix::from_i64(QQ, &[vec![1, 1, 3], vec![2, 2, 5], vec![7, 7, 1]]);
    assert_eq!(m.det().unwrap(), QQ.zero());
    assert!(ExactMatrix::zeros(QQ, 2, 3).det().is_err());
}

#[test]
fn bareiss_with_fractions() {
    let half = Scalar::Rat(BigRational::new(BigInt::from(1), BigInt::from(2)));
    let mut m = ExactMatrix::from_i64(QQ, &[vec![0, 3], vec![4, 5]]);
    m.set(0, 0, half);
    // det = 1/2*5 - 12 = -19/2
    assert_eq!(m.det().unwrap(), QQ.parse_scalar("-19/2").unwrap());
}

#[test]
fn dn_shape_and_order() {
    let d3 = ExactMatrix::build_dn(QQ, 3);
    assert_eq!(d3, ExactMatrix::from_i64(QQ, &[vec![1, 1, 0], vec![-1, 0, 1], vec![0, -1, -1]])
        .with_col_labels(vec!["d(1,2)".into(), "d(1,3)".into(), "d(2,3)".into()])
        .unwrap());
    assert_eq!(ExactMatrix::build_dn(GF4, 4).ncols(), 6);
    let d = ExactMatrix::build_dn(gf(2), 4);
    for c in 0..d.ncols() {
        assert_eq!(d.column(c).iter().filter(|x| gf(2).is_one(x)).count(), 2);
    }
    assert_eq!(ExactMatrix::build_dn(GF4, 0).nrows(), 0);
}

#[test]
fn text_round_trip() {
    let m = ExactMatrix::from_tokens(GF4, &[&["1", "0", "a"], &["a^2", "1", "1"]]).unwrap();
    let t = m.to_text();
    assert_eq!(t, "field 4\n1 0 a\na^2 1 1\n");
    assert_eq!(ExactMatrix::from_text(&t).unwrap(), m);
    let e = ExactMatrix::empty(GF4, 2);
    assert_eq!(ExactMatrix::from_text(&e.to_text()).unwrap(), e);
    let r = ExactMatrix::from_tokens(QQ, &[&["-1/3", "2"]]).unwrap();
    assert_eq!(ExactMatrix::from_text(&r.to_text()).unwrap(), r);
}

fn arb_field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![gf(2), gf(3), GF4, gf(5), gf(7), gf(8), gf(9), QQ])
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    (arb_field(), prop::collection::vec(-3i64..13, rows * cols)).prop_map(move |(f, v)| {
        let mut m = ExactMatrix::zeros(f, rows, cols);
        for (i, x) in v.iter().enumerate() {
            let s = match f {
                FieldSpec::Gf(q) => Scalar::Gf(x.rem_euclid(q as i64) as u8),
                FieldSpec::Rational => f.from_i64(*x),
            };
            m.set(i / cols, i % cols, s);
        }
        m
    })
}

proptest! {
    #[test]
    fn rref_idempotent(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.rank, twice.rank);
    }

    #[test]
    fn rank_of_transpose(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn det_multiplicative(a in (1usize..5).prop_flat_map(|n| arb_matrix(n, n)), seed in any::<u64>()) {
        // second factor over the same field, derived from the seed
        let f = a.field();
        let n = a.nrows();
        let mut b = ExactMatrix::zeros(f, n, n);
        let mut s = seed;
        for i in 0..n {
            for j in 0..n {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                b.set(i, j, f.from_i64(((s >> 33) % 11) as i64 - 5));
            }
        }
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), f.mul(&a.det().unwrap(), &b.det().unwrap()));
    }

    #[test]
    fn det_row_operation_invariant(a in (2usize..5).prop_flat_map(|n| arb_matrix(n, n)), k in -4i64..5) {
        let f = a.field();
        let mut b = a.clone();
        let s = f.from_i64(k);
        for c in 0..a.ncols() {
            let v = f.add(b.get(1, c), &f.mul(&s, a.get(0, c)));
            b.set(1, c, v);
        }
        prop_assert_eq!(a.det().unwrap(), b.det().unwrap());
    }

    #[test]
    fn double_pivot_row_equivalent(v in prop::collection::vec(0u8..4, 6), r in 0usize..3, c in 3usize..5) {
        // [I3 | 3x2 block] over GF(4)
        let mut m = ExactMatrix::identity(GF4, 3).hcat(&ExactMatrix::zeros(GF4, 3, 2).prefix_cols("x")).unwrap();
        for (i, x) in v.iter().enumerate() {
            m.set(i / 2, 3 + i % 2, Scalar::Gf(*x));
        }
        prop_assume!(!GF4.is_zero(m.get(r, c)));
        let p = m.pivot(r, c).unwrap();
        let back = p.pivot(r, c).unwrap();
        // same labels in the same places, and the same row space up to column scaling
        prop_assert_eq!(back.col_labels(), m.col_labels());
        let mut scaled = back.clone();
        for j in 0..m.ncols() {
            let nz = (0..3).find(|&i| !GF4.is_zero(m.get(i, j)));
            if let Some(i) = nz {
                let s = GF4.div(m.get(i, j), back.get(i, j)).unwrap();
                scaled.scale_col(j, &s);
            }
        }
        prop_assert_eq!(scaled.rref().matrix, m.rref().matrix);
    }

    #[test]
    fn text_format_round_trips(m in (0usize..4, 0usize..5).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
        let back = ExactMatrix::from_text(&m.to_text()).unwrap();
        prop_assert_eq!(back.rank(), m.rank());
        if m.nrows() > 0 {
            prop_assert_eq!(back, m);
        }
    }
}
