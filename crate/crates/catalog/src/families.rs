use exact_algebra::{ExactMatrix, FieldSpec, Scalar};
use matroid_core::RepresentedMatroid;
use template_engine::YTemplate;

use crate::{gf4, parse_rows, CatalogError};

pub const FAMILIES: [(&str, &str); 4] = [
    ("T2", "T^2_r, rank r >= 2"),
    ("G", "G_r, rank r >= 2"),
    ("HP", "HP_r, rank r >= 2"),
    ("MK", "M(K_{r+1}), rank r >= 1"),
];

fn min_rank(name: &str) -> Option<usize> {
    match name {
        "T2" | "G" | "HP" => Some(2),
        "MK" => Some(1),
        _ => None,
    }
}

fn unit(f: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect()
}

fn from_columns(f: FieldSpec, r: usize, cols: Vec<Vec<Scalar>>) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(f, r, cols.len());
    for (c, col) in cols.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            m.set(i, c, v);
        }
    }
    m
}

/// `[I_r | 0; D_{r-t} | for each top vector k: k; I_{r-t} | tail; 0]` where
/// `t` is the length of the top vectors.
fn block_family(f: FieldSpec, r: usize, tops: &[Vec<Scalar>], tail: &[Vec<Scalar>]) -> ExactMatrix {
    let t = tops.first().or(tail.first()).map_or(0, |v| v.len());
    let n = r - t;
    let mut cols: Vec<Vec<Scalar>> = (0..r).map(|i| unit(f, r, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut c = vec![f.zero(); r];
            c[t + i] = f.one();
            c[t + j] = f.neg(&f.one());
            cols.push(c);
        }
    }
    for top in tops {
        for b in 0..n {
            let mut c = top.clone();
            c.extend(unit(f, n, b));
            cols.push(c);
        }
    }
    for top in tail {
        let mut c = top.clone();
        c.resize(r, f.zero());
        cols.push(c);
    }
    from_columns(f, r, cols)
}

fn v(f: FieldSpec, toks: &[&str]) -> Vec<Scalar> {
    toks.iter().map(|t| f.parse_scalar(t).expect("catalog data is well formed")).collect()
}

/// The block matrix of a family at rank `r`, columns labelled 1..n.
pub fn family_matrix(name: &str, r: usize) -> Result<ExactMatrix, CatalogError> {
    let min = min_rank(name).ok_or_else(|| CatalogError::Unknown(name.into()))?;
    if r < min {
        return Err(CatalogError::RankTooSmall { name: name.into(), r, min });
    }
    let f = gf4();
    let last = [v(f, &["1", "1"]), v(f, &["1", "a"]), v(f, &["1", "a^2"])];
    Ok(match name {
        "T2" => block_family(f, r, &[v(f, &["1"]), v(f, &["a"]), v(f, &["a^2"])], &[]),
        "G" => block_family(f, r, &[v(f, &["1", "0"]), v(f, &["0", "1"]), v(f, &["a", "0"]), v(f, &["0", "a"])], &last),
        "HP" => block_family(f, r, &[v(f, &["a", "0"]), v(f, &["0", "1"]), v(f, &["a", "a"]), v(f, &["a^2", "1"])], &last),
        _ => ExactMatrix::identity(f, r).hcat(&ExactMatrix::build_dn(f, r))?.with_col_labels((1..=r + r * (r - 1) / 2).map(|i| i.to_string()).collect())?,
    })
}

/// HP_r after scaling its top row by a^2, its first column and last three
/// columns by a, and reordering the last three. Labels follow the columns of
/// [`family_matrix`] so the two represent the same matroid.
pub fn hp_rescaled_matrix(r: usize) -> Result<ExactMatrix, CatalogError> {
    if r < 2 {
        return Err(CatalogError::RankTooSmall { name: "HP".into(), r, min: 2 });
    }
    let f = gf4();
    let last = [v(f, &["1", "1"]), v(f, &["1", "a"]), v(f, &["1", "a^2"])];
    let m = block_family(f, r, &[v(f, &["1", "0"]), v(f, &["0", "1"]), v(f, &["1", "a"]), v(f, &["a", "1"])], &last);
    let n = m.ncols();
    let mut labels: Vec<String> = (1..=n - 3).map(|i| i.to_string()).collect();
    labels.extend([n, n - 2, n - 1].iter().map(|i| i.to_string()));
    Ok(m.with_col_labels(labels)?)
}

pub fn family(name: &str, r: usize) -> Result<RepresentedMatroid, CatalogError> {
    Ok(RepresentedMatroid::from_matrix(&family_matrix(name, r)?)?)
}

/// Φ(T^2), Φ(G), Φ(HP) over GF(4), and the clique template for MK.
pub fn family_template(name: &str) -> Result<YTemplate, CatalogError> {
    let f = gf4();
    let yt = match name {
        "T2" => YTemplate::new(ExactMatrix::empty(f, 1), parse_rows(f, "a a^2"))?,
        "G" => YTemplate::new(parse_rows(f, "1 1 1; 1 a a^2"), parse_rows(f, "a 0; 0 a"))?,
        "HP" => YTemplate::new(parse_rows(f, "1; 1"), parse_rows(f, "1 a; a 1"))?,
        "MK" => YTemplate::new(ExactMatrix::empty(f, 0), ExactMatrix::empty(f, 0))?,
        _ => return Err(CatalogError::Unknown(name.into())),
    };
    Ok(yt)
}

/// The GF(5) templates paired with Φ(T^2), Φ(G), Φ(HP).
pub fn family_template_gf5(name: &str) -> Result<YTemplate, CatalogError> {
    let f = FieldSpec::Gf(5);
    let yt = match name {
        "T2" => YTemplate::new(ExactMatrix::empty(f, 1), parse_rows(f, "3 4"))?,
        "G" => YTemplate::new(parse_rows(f, "1 1 1; 4 2 3"), parse_rows(f, "3 0; 0 3"))?,
        "HP" => YTemplate::new(parse_rows(f, "1; 4"), parse_rows(f, "1 3; 3 1"))?,
        _ => return Err(CatalogError::Unknown(name.into())),
    };
    Ok(yt)
}
