//! Named matroids, matrices, families and templates used throughout the
//! workspace, built from their printed quaternary representations.

mod data;
mod families;

use exact_algebra::{AlgebraError, ExactMatrix, FieldSpec};
use matroid_core::{MatroidError, RepresentedMatroid};
use template_engine::{phi_c, phi_cxk, phi_n, phi_x, phi_y0, FrameTemplate, TemplateError};

pub use families::{family, family_matrix, family_template, family_template_gf5, hp_rescaled_matrix, FAMILIES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    Unknown(String),
    #[error("{name} needs rank at least {min}, got {r}")]
    RankTooSmall { name: String, r: usize, min: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Template(#[from] TemplateError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Matroid,
    Matrix,
    Family,
    Template,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Matroid => "matroid",
            Kind::Matrix => "matrix",
            Kind::Family => "family",
            Kind::Template => "template",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: Kind,
    pub note: String,
}

pub fn gf4() -> FieldSpec {
    FieldSpec::Gf(4)
}

/// Parses `"1 a; 0 a^2"`-style rows.
pub(crate) fn parse_rows(field: FieldSpec, text: &str) -> ExactMatrix {
    let rows: Vec<Vec<&str>> = text.split(';').map(|r| r.split_whitespace().collect()).collect();
    let refs: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
    ExactMatrix::from_tokens(field, &refs).expect("catalog data is well formed")
}

const MATROIDS: [(&str, &str); 12] = [
    ("F7", "Fano plane, binary"),
    ("V1", "rank 3, 9 elements, characteristic set {2}"),
    ("V2", "rank 4, 8 elements, self-dual, characteristic set {2}"),
    ("V3", "rank 4, 9 elements, characteristic set {2}"),
    ("P1", "rank 3, 9 elements, every characteristic but 3"),
    ("P2", "rank 4, 8 elements, self-dual, every characteristic but 3"),
    ("P3", "rank 3, 9 elements, every characteristic but 3"),
    ("Pappus", "rank 3, 9 elements, quaternary representation"),
    ("B11", "Betsy Ross matroid, M([I3|D3|III'])"),
    ("S10", "B11 with the hub deleted"),
    ("Y9", "B11 \\ {9, 11}, the Perles configuration"),
    ("B11\\p", "B11 \\ 2, the non-hub single-element deletion"),
];

/// Every name the catalog answers to. Duals of the matroids (`V1*` and so
/// on) are accepted as well but not listed.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let e = |name: &str, kind, note: &str| CatalogEntry { name: name.into(), kind, note: note.into() };
    for (n, note) in MATROIDS {
        out.push(e(n, Kind::Matroid, note));
    }
    for (n, _) in data::ROMAN {
        out.push(e(n, Kind::Matrix, "GF(4) P0 candidate"));
        out.push(e(&format!("{n}'"), Kind::Matrix, "first row removed"));
    }
    for (n, _, rank, minor) in data::TABLE {
        let note = match rank {
            Some(r) => format!("forbidden in P1: {minor} at rank {r}"),
            None => format!("forbidden in P1: {minor}"),
        };
        out.push(e(&format!("Table{n}"), Kind::Matrix, &note));
    }
    for (n, note) in FAMILIES {
        out.push(e(n, Kind::Family, note));
    }
    for n in ["PhiC", "PhiX", "PhiY0", "PhiCXk", "Phin"] {
        out.push(e(n, Kind::Template, "minimal frame template"));
    }
    out
}

fn labelled(field: FieldSpec, text: &str) -> Result<RepresentedMatroid, CatalogError> {
    Ok(RepresentedMatroid::from_matrix(&parse_rows(field, text))?)
}

/// A named matroid with its printed column labels; `name*` gives the dual.
pub fn catalog_matroid(name: &str) -> Result<RepresentedMatroid, CatalogError> {
    if let Some(base) = name.strip_suffix('*') {
        return Ok(catalog_matroid(base)?.dual());
    }
    let f = gf4();
    match name {
        "F7" => labelled(FieldSpec::Gf(2), data::F7),
        "V1" => labelled(f, data::V1),
        "V2" => labelled(f, data::V2),
        "V3" => labelled(f, data::V3),
        "P1" => labelled(f, data::P1),
        "P2" => labelled(f, data::P2),
        "P3" => labelled(f, data::P3),
        "Pappus" => labelled(f, data::PAPPUS),
        "B11" => labelled(f, data::B11),
        "S10" => {
            let b = catalog_matroid("B11")?;
            let hub = b11_hub();
            Ok(b.delete(&[hub])?)
        }
        "Y9" => Ok(catalog_matroid("B11")?.delete(&["9", "11"])?),
        "B11\\p" => Ok(catalog_matroid("B11")?.delete(&["2"])?),
        _ => match family_name_rank(name) {
            Some((fam, r)) => family(fam, r),
            None => Err(CatalogError::Unknown(name.into())),
        },
    }
}

/// `K5`, `T2_4`, `G_5`, `HP_6`, `MK_3` style names.
fn family_name_rank(name: &str) -> Option<(&'static str, usize)> {
    if let Some(n) = name.strip_prefix('K') {
        let n: usize = n.parse().ok()?;
        return (n >= 2).then_some(("MK", n - 1));
    }
    let (fam, r) = name.split_once('_')?;
    let fam = FAMILIES.iter().map(|(n, _)| *n).find(|n| *n == fam)?;
    Some((fam, r.parse().ok()?))
}

/// `[I3 | D3 | IV']` with its columns labelled as the matching elements of
/// B11.
pub fn b11_from_iv() -> Result<RepresentedMatroid, CatalogError> {
    let a = parse_rows(gf4(), data::B11_IV).with_col_labels(data::B11_IV_LABELS.iter().map(|s| s.to_string()).collect())?;
    Ok(RepresentedMatroid::from_matrix(&a)?)
}

/// The automorphism of B11 as label pairs.
pub fn b11_automorphism() -> Vec<(String, String)> {
    data::B11_PHI.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// The element of B11 on five three-point lines.
pub fn b11_hub() -> String {
    let b = labelled(gf4(), data::B11).expect("catalog data is well formed");
    let counts = three_point_lines(&b);
    let i = counts.iter().position(|&c| c == 5).expect("B11 has a hub");
    b.ground()[i].clone()
}

/// For each element, the number of lines (rank-2 flats) through it with
/// exactly three points. Assumes a simple matroid.
pub fn three_point_lines(m: &RepresentedMatroid) -> Vec<usize> {
    let n = m.size();
    let mut lines = std::collections::HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let pair = 1u64 << a | 1u64 << b;
            if m.rank_of_set(pair) != 2 {
                continue;
            }
            let flat = (0..n).filter(|&e| m.rank_of_set(pair | 1 << e) == 2).fold(0u64, |acc, e| acc | 1 << e);
            lines.insert(flat);
        }
    }
    let mut out = vec![0; n];
    for l in lines.into_iter().filter(|l| l.count_ones() == 3) {
        for (e, c) in out.iter_mut().enumerate() {
            if l >> e & 1 == 1 {
                *c += 1;
            }
        }
    }
    out
}

/// Matrices I..XVIII, their primed versions, and `TableA`..`TableT`.
pub fn catalog_matrix(name: &str) -> Result<ExactMatrix, CatalogError> {
    let f = gf4();
    if let Some(t) = name.strip_prefix("Table") {
        if let Some((_, rows, _, _)) = data::TABLE.iter().find(|(n, ..)| *n == t) {
            return Ok(parse_rows(f, rows));
        }
    }
    let (base, primed) = match name.strip_suffix('\'') {
        Some(b) => (b, true),
        None => (name, false),
    };
    let (_, rows) = data::ROMAN.iter().find(|(n, _)| *n == base).ok_or_else(|| CatalogError::Unknown(name.into()))?;
    let m = parse_rows(f, rows);
    if primed {
        Ok(m.select_rows(&(1..m.nrows()).collect::<Vec<_>>()))
    } else {
        Ok(m)
    }
}

/// Rank and excluded minor recorded for a Table entry (`A`..`T`).
pub fn table_entry(letter: &str) -> Result<(Option<usize>, String), CatalogError> {
    data::TABLE
        .iter()
        .find(|(n, ..)| *n == letter)
        .map(|(_, _, r, m)| (*r, m.to_string()))
        .ok_or_else(|| CatalogError::Unknown(format!("Table{letter}")))
}

pub fn table_letters() -> Vec<&'static str> {
    data::TABLE.iter().map(|(n, ..)| *n).collect()
}

pub fn roman_names() -> Vec<&'static str> {
    data::ROMAN.iter().map(|(n, _)| *n).collect()
}

/// The printed GF(4) and GF(5) matrices whose vector matroids certify the
/// T^2 template pair, columns labelled 1..8.
pub fn t2_gf4_gf5_pair() -> (ExactMatrix, ExactMatrix) {
    (parse_rows(gf4(), data::T2_PAIR.0), parse_rows(FieldSpec::Gf(5), data::T2_PAIR.1))
}

/// The minimal templates over `f`: Φ_C, Φ_X, Φ_Y0, Φ_CXk for each nonzero
/// k, and Φ_n for each prime n dividing |f| - 1.
pub fn minimal_templates(f: FieldSpec) -> Result<Vec<(String, FrameTemplate)>, CatalogError> {
    let q = f.order().ok_or(TemplateError::NotFinite)?;
    let mut out = vec![("PhiC".to_string(), phi_c(f)?), ("PhiX".to_string(), phi_x(f)?), ("PhiY0".to_string(), phi_y0(f)?)];
    for k in f.elements().into_iter().filter(|k| !f.is_zero(k)) {
        out.push((format!("PhiCXk[{}]", f.format(&k)), phi_cxk(f, &k)?));
    }
    for n in 2..q {
        if (q - 1) % n == 0 && (2..n).all(|d| n % d != 0) {
            out.push((format!("Phi{n}"), phi_n(f, n)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
