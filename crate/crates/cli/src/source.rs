//! Resolution of command-line sources: catalog names, matrix literals,
//! template literals and files in the matrix text format.

use std::path::Path;

use exact_algebra::{ExactMatrix, FieldSpec};
use matroid_core::RepresentedMatroid;
use template_engine::YTemplate;

use crate::CliError;

/// Splits `s` on `sep` where it is not nested inside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn default_labels(m: ExactMatrix) -> Result<ExactMatrix, CliError> {
    let n = m.ncols();
    Ok(m.with_col_labels((1..=n).map(|i| i.to_string()).collect())?)
}

/// Rows `1 a; 0 a^2` or `1,a;0,a^2`. `None` when some token is not a
/// scalar of `field`.
fn numeric(field: FieldSpec, inner: &str) -> Option<ExactMatrix> {
    let rows: Vec<Vec<&str>> = inner
        .split(';')
        .map(|r| r.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect())
        .collect();
    let rows: Option<Vec<Vec<_>>> =
        rows.iter().map(|r| r.iter().map(|t| field.parse_scalar(t).ok()).collect()).collect();
    ExactMatrix::from_rows(field, rows?).ok()
}

/// `I`, `I3`, `D`, `D3`, a catalog matrix name, a bracketed literal, each
/// optionally negated with a leading `-`. Sizes left out are taken from
/// `rows`.
fn block(field: FieldSpec, tok: &str, rows: Option<usize>) -> Result<Option<ExactMatrix>, CliError> {
    let tok = tok.trim();
    if let Some(rest) = tok.strip_prefix('-') {
        return Ok(block(field, rest, rows)?.map(|m| m.map_entries(|x| field.neg(x))));
    }
    if tok.starts_with('[') {
        return matrix_literal(field, tok, rows).map(Some);
    }
    let sized = |rest: &str| -> Result<Option<usize>, CliError> {
        if rest.is_empty() {
            Ok(rows)
        } else {
            rest.parse().map(Some).map_err(|_| input(format!("bad block size in `{tok}`")))
        }
    };
    if let Some(rest) = tok.strip_prefix('I').filter(|r| r.chars().all(|c| c.is_ascii_digit())) {
        return Ok(sized(rest)?.map(|n| ExactMatrix::identity(field, n)));
    }
    if let Some(rest) = tok.strip_prefix('D').filter(|r| r.chars().all(|c| c.is_ascii_digit())) {
        return Ok(sized(rest)?.map(|n| ExactMatrix::build_dn(field, n)));
    }
    let m = catalog::catalog_matrix(tok).map_err(|e| input(e.to_string()))?;
    if m.field() != field {
        return Err(input(format!("`{tok}` is over {:?}, not {:?}", m.field(), field)));
    }
    Ok(Some(m))
}

/// `[I|D3|III']`, `[1,1]^T`, `[1 0; a a^2]`, `[]`. An empty literal has
/// `rows` rows (zero when unknown).
pub fn matrix_literal(field: FieldSpec, text: &str, rows: Option<usize>) -> Result<ExactMatrix, CliError> {
    let text = text.trim();
    let (body, transpose) = match text.strip_suffix("^T") {
        Some(b) => (b.trim(), true),
        None => (text, false),
    };
    let inner = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| input(format!("`{text}` is not a bracketed matrix")))?
        .trim();
    let m = if inner.is_empty() || inner == "∅" {
        ExactMatrix::empty(field, rows.unwrap_or(0))
    } else if let Some(m) = numeric(field, inner) {
        m
    } else {
        let toks = split_top(inner, '|');
        let mut blocks: Vec<Option<ExactMatrix>> =
            toks.iter().map(|t| block(field, t, None)).collect::<Result<_, _>>()?;
        let n = blocks.iter().flatten().map(|b| b.nrows()).next().or(rows);
        let n = n.ok_or_else(|| input(format!("cannot infer the row count of `{text}`")))?;
        for (b, t) in blocks.iter_mut().zip(&toks) {
            if b.is_none() {
                *b = block(field, t, Some(n))?;
            }
        }
        let mut acc = ExactMatrix::empty(field, n);
        for b in blocks.into_iter().flatten() {
            if b.nrows() != n {
                return Err(input(format!("blocks of `{text}` have different row counts")));
            }
            let off = acc.ncols();
            let labels = (off..off + b.ncols()).map(|i| format!("c{i}")).collect();
            acc = acc.hcat(&b.with_col_labels(labels)?)?;
        }
        acc
    };
    let m = if transpose { m.transpose() } else { m };
    default_labels(m)
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input(format!("cannot read `{path}`: {e}")))
}

/// A matrix given by catalog name, literal, or text file.
pub fn resolve_matrix(field: FieldSpec, src: &str) -> Result<ExactMatrix, CliError> {
    let src = src.trim();
    if src.starts_with('[') {
        return matrix_literal(field, src, None);
    }
    if let Ok(m) = catalog::catalog_matrix(src) {
        return Ok(m);
    }
    if Path::new(src).is_file() {
        return default_labels(ExactMatrix::from_text(&read_file(src)?)?);
    }
    Err(input(format!("`{src}` is neither a catalog matrix, a literal, nor a file")))
}

/// `T2`, `G`, `HP`, `MK` (GF(5) versions when `field` is GF(5)),
/// `YT:<P0>;<P1>` literals, or a JSON file written by `template --json`.
pub fn resolve_template(field: FieldSpec, src: &str) -> Result<YTemplate, CliError> {
    let src = src.trim();
    if let Some(rest) = src.strip_prefix("YT:") {
        let parts = split_top(rest, ';');
        let [p0, p1] = parts.as_slice() else {
            return Err(input(format!("`{src}` should read YT:<P0>;<P1>")));
        };
        let a = matrix_literal(field, p0, None)?;
        let b = matrix_literal(field, p1, None)?;
        let (a, b) = match (a.ncols(), b.ncols()) {
            (0, 0) if a.nrows() != b.nrows() => return Err(input("both template matrices are empty".to_string())),
            (0, _) => (ExactMatrix::empty(field, b.nrows()), b),
            (_, 0) => {
                let n = a.nrows();
                (a, ExactMatrix::empty(field, n))
            }
            _ => (a, b),
        };
        return Ok(YTemplate::new(a, b)?);
    }
    let family = match field {
        FieldSpec::Gf(5) => catalog::family_template_gf5(src),
        _ => catalog::family_template(src),
    };
    if let Ok(t) = family {
        return Ok(t);
    }
    if Path::new(src).is_file() {
        let v: serde_json::Value =
            serde_json::from_str(&read_file(src)?).map_err(|e| input(format!("`{src}`: {e}")))?;
        return Ok(YTemplate::from_json(v.get("template").unwrap_or(&v))?);
    }
    Err(input(format!("`{src}` is not a template")))
}

/// Splits a trailing `:r=N`.
fn split_rank(src: &str) -> (&str, Option<usize>) {
    if let Some((head, tail)) = src.rsplit_once(":r=") {
        if let Ok(r) = tail.trim().parse() {
            return (head, Some(r));
        }
    }
    (src, None)
}

/// A matroid given by catalog name (`V1`, `B11`, `K5`, `T2_4`, `F7*`),
/// `YT:<P0>;<P1>:r=N`, a matrix literal, or a text file.
pub fn resolve_matroid(field: FieldSpec, src: &str) -> Result<RepresentedMatroid, CliError> {
    let src = src.trim();
    if src.starts_with("YT:") {
        let (t, r) = split_rank(src);
        let r = r.ok_or_else(|| input(format!("`{src}` needs a `:r=N` suffix")))?;
        return Ok(resolve_template(field, t)?.universal_matroid(r)?);
    }
    if let Ok(m) = catalog::catalog_matroid(src) {
        return Ok(m);
    }
    Ok(RepresentedMatroid::from_matrix(&resolve_matrix(field, src)?)?)
}
