use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{FieldSpec, Scalar};
use crate::AlgebraError;

/// Dense matrix over a [`FieldSpec`] with labeled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Scalar>,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn default_row_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("r{i}")).collect()
}

pub fn default_col_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn check_unique(labels: &[String]) -> Result<(), AlgebraError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(AlgebraError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl ExactMatrix {
    pub fn new(
        field: FieldSpec,
        rows: Vec<String>,
        cols: Vec<String>,
        entries: Vec<Scalar>,
    ) -> Result<ExactMatrix, AlgebraError> {
        if entries.len() != rows.len() * cols.len() {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows.len(),
                cols.len()
            )));
        }
        check_unique(&rows)?;
        check_unique(&cols)?;
        Ok(ExactMatrix { field, rows, cols, entries })
    }

    /// Builds a matrix from rows of scalars with default labels.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<ExactMatrix, AlgebraError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        ExactMatrix::new(field, default_row_labels(nrows), default_col_labels(ncols), entries)
    }

    /// Builds a matrix from small integers, reduced into the field.
    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> ExactMatrix {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        ExactMatrix::from_rows(field, rows).expect("rectangular input")
    }

    /// Parses rows of tokens such as `1 a a^2 0`.
    pub fn from_tokens(field: FieldSpec, rows: &[&[&str]]) -> Result<ExactMatrix, AlgebraError> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            out.push(r.iter().map(|t| field.parse_scalar(t)).collect::<Result<Vec<_>, _>>()?);
        }
        ExactMatrix::from_rows(field, out)
    }

    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> ExactMatrix {
        ExactMatrix {
            field,
            rows: default_row_labels(nrows),
            cols: default_col_labels(ncols),
            entries: vec![field.zero(); nrows * ncols],
        }
    }

    /// The empty matrix `[∅]` with the given number of rows.
    pub fn empty(field: FieldSpec, nrows: usize) -> ExactMatrix {
        ExactMatrix::zeros(field, nrows, 0)
    }

    /// Identity matrix with column labels `e1..en`.
    pub fn identity(field: FieldSpec, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m.cols = (1..=n).map(|i| format!("e{i}")).collect();
        m
    }

    /// Signed incidence matrix of K_n: columns `d(i,j)` for i < j with +1 in
    /// row i and -1 in row j, in lexicographic order.
    pub fn build_dn(field: FieldSpec, n: usize) -> ExactMatrix {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut m = ExactMatrix::zeros(field, n, pairs.len());
        for (c, &(i, j)) in pairs.iter().enumerate() {
            m.set(i, c, field.one());
            m.set(j, c, field.neg(&field.one()));
        }
        m.cols = pairs.iter().map(|(i, j)| format!("d({},{})", i + 1, j + 1)).collect();
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols.len() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        let n = self.cols.len();
        self.entries[r * n + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        let n = self.cols.len();
        &self.entries[r * n..(r + 1) * n]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.nrows()).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.cols.iter().position(|l| l == label)
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|l| l == label)
    }

    pub fn with_col_labels(mut self, cols: Vec<String>) -> Result<ExactMatrix, AlgebraError> {
        if cols.len() != self.ncols() {
            return Err(AlgebraError::Shape("column label count".into()));
        }
        check_unique(&cols)?;
        self.cols = cols;
        Ok(self)
    }

    pub fn with_row_labels(mut self, rows: Vec<String>) -> Result<ExactMatrix, AlgebraError> {
        if rows.len() != self.nrows() {
            return Err(AlgebraError::Shape("row label count".into()));
        }
        check_unique(&rows)?;
        self.rows = rows;
        Ok(self)
    }

    /// Prefixes every column label.
    pub fn prefix_cols(mut self, prefix: &str) -> ExactMatrix {
        for l in &mut self.cols {
            *l = format!("{prefix}{l}");
        }
        self
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.ncols() {
            for r in 0..self.nrows() {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix { field: self.field, rows: self.cols.clone(), cols: self.rows.clone(), entries }
    }

    /// Horizontal concatenation; row labels come from `self`.
    pub fn hcat(&self, other: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
        if self.nrows() != other.nrows() || self.field != other.field {
            return Err(AlgebraError::Shape("hcat: row count or field mismatch".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for r in 0..self.nrows() {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        ExactMatrix::new(self.field, self.rows.clone(), cols, entries)
    }

    /// Vertical concatenation; column labels come from `self`.
    pub fn vcat(&self, other: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
        if self.ncols() != other.ncols() || self.field != other.field {
            return Err(AlgebraError::Shape("vcat: column count or field mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        if check_unique(&rows).is_err() {
            rows = default_row_labels(rows.len());
        }
        ExactMatrix::new(self.field, rows, self.cols.clone(), entries)
    }

    pub fn select_cols(&self, idx: &[usize]) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.nrows() * idx.len());
        for r in 0..self.nrows() {
            for &c in idx {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            field: self.field,
            rows: self.rows.clone(),
            cols: idx.iter().map(|&c| self.cols[c].clone()).collect(),
            entries,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.ncols() * idx.len());
        for &r in idx {
            entries.extend_from_slice(self.row(r));
        }
        ExactMatrix {
            field: self.field,
            rows: idx.iter().map(|&r| self.rows[r].clone()).collect(),
            cols: self.cols.clone(),
            entries,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        self.select_rows(rows).select_cols(cols)
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> ExactMatrix {
        ExactMatrix {
            field: self.field,
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale_col(&mut self, c: usize, s: &Scalar) {
        for r in 0..self.nrows() {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    pub fn is_zero_col(&self, c: usize) -> bool {
        (0..self.nrows()).all(|r| self.field.is_zero(self.get(r, c)))
    }

    /// Row index of the single nonzero entry equal to one, if column `c` is a unit vector.
    pub fn unit_row(&self, c: usize) -> Option<usize> {
        let nz: Vec<usize> = (0..self.nrows()).filter(|&r| !self.field.is_zero(self.get(r, c))).collect();
        match nz.as_slice() {
            [r] if self.field.is_one(self.get(*r, c)) => Some(*r),
            _ => None,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.ncols();
        for c in 0..n {
            self.entries.swap(a * n + c, b * n + c);
        }
        self.rows.swap(a, b);
    }

    /// Adds `s` times row `src` to row `dst`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, s: &Scalar) {
        let f = self.field;
        for c in 0..self.ncols() {
            let v = f.add(self.get(dst, c), &f.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        let f = self.field;
        for c in 0..self.ncols() {
            let v = f.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// Reduced row-echelon form. Row labels are kept attached to the rows
    /// they started with only up to swaps; callers needing a clean labeling
    /// relabel afterwards.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..m.ncols() {
            if row == m.nrows() {
                break;
            }
            let Some(p) = (row..m.nrows()).find(|&r| !f.is_zero(m.get(r, c))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, c)).expect("nonzero pivot");
            m.scale_row(row, &inv);
            for r in 0..m.nrows() {
                if r != row && !f.is_zero(m.get(r, c)) {
                    let s = f.neg(m.get(r, c));
                    m.add_row_multiple(r, row, &s);
                }
            }
            pivots.push(c);
            row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Pivots on entry `(r, c)` of a matrix containing an identity on some
    /// columns: column `c` becomes the unit vector of row `r`, and it swaps
    /// places (position and label) with the column that used to be that unit.
    pub fn pivot(&self, r: usize, c: usize) -> Result<ExactMatrix, AlgebraError> {
        let f = self.field;
        if f.is_zero(self.get(r, c)) {
            return Err(AlgebraError::ZeroPivot(self.rows[r].clone(), self.cols[c].clone()));
        }
        let b = (0..self.ncols())
            .find(|&j| j != c && self.unit_row(j) == Some(r) && self.is_unit_basis_col(j))
            .ok_or_else(|| AlgebraError::NotStandardForm(format!("no unit column for row {}", self.rows[r])))?;
        let mut m = self.clone();
        let inv = f.inv(m.get(r, c))?;
        m.scale_row(r, &inv);
        for i in 0..m.nrows() {
            if i != r && !f.is_zero(m.get(i, c)) {
                let s = f.neg(m.get(i, c));
                m.add_row_multiple(i, r, &s);
            }
        }
        // exchange columns b and c
        for i in 0..m.nrows() {
            let n = m.ncols();
            m.entries.swap(i * n + b, i * n + c);
        }
        m.cols.swap(b, c);
        Ok(m)
    }

    fn is_unit_basis_col(&self, j: usize) -> bool {
        self.unit_row(j).is_some()
    }

    /// Exact determinant: Gaussian elimination over finite fields, Bareiss
    /// fraction-free elimination over the rationals.
    pub fn det(&self) -> Result<Scalar, AlgebraError> {
        if self.nrows() != self.ncols() {
            return Err(AlgebraError::Shape(format!("det of {}x{}", self.nrows(), self.ncols())));
        }
        match self.field {
            FieldSpec::Rational => Ok(Scalar::Rat(self.bareiss())),
            FieldSpec::Gf(_) => Ok(self.det_gauss()),
        }
    }

    fn det_gauss(&self) -> Scalar {
        let f = self.field;
        let n = self.nrows();
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(m.get(r, c))) else {
                return f.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, m.get(c, c));
            let inv = f.inv(m.get(c, c)).expect("nonzero pivot");
            for r in c + 1..n {
                if !f.is_zero(m.get(r, c)) {
                    let s = f.neg(&f.mul(m.get(r, c), &inv));
                    m.add_row_multiple(r, c, &s);
                }
            }
        }
        det
    }

    fn bareiss(&self) -> BigRational {
        let n = self.nrows();
        if n == 0 {
            return BigRational::one();
        }
        // clear denominators row by row
        let mut scale = BigRational::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let row: Vec<&BigRational> =
                self.row(r).iter().map(|s| s.as_rational().expect("rational matrix")).collect();
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= BigRational::from_integer(l.clone());
            a.push(row.iter().map(|x| (*x * BigRational::from_integer(l.clone())).to_integer()).collect());
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigRational::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = BigRational::from_integer(a[n - 1][n - 1].clone()) / scale;
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Matrix product.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
        if self.ncols() != other.nrows() || self.field != other.field {
            return Err(AlgebraError::Shape("mul: inner dimension mismatch".into()));
        }
        let f = self.field;
        let mut out = ExactMatrix::zeros(f, self.nrows(), other.ncols());
        out.rows = self.rows.clone();
        out.cols = other.cols.clone();
        for i in 0..self.nrows() {
            for j in 0..other.ncols() {
                let mut acc = f.zero();
                for k in 0..self.ncols() {
                    acc = f.add(&acc, &f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Text format: a `field <order>` header then one row per line. A shape
    /// suffix is added when the matrix has no columns so that `[∅]` round-trips.
    pub fn to_text(&self) -> String {
        let order = match self.field {
            FieldSpec::Gf(q) => q.to_string(),
            FieldSpec::Rational => "Q".to_string(),
        };
        let mut s = format!("field {order}");
        if self.ncols() == 0 {
            s.push_str(&format!(" {}x0", self.nrows()));
        }
        s.push('\n');
        for r in 0..self.nrows() {
            let toks: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            s.push_str(&toks.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<ExactMatrix, AlgebraError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let header = lines.next().ok_or_else(|| AlgebraError::Parse("missing header".into()))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("field") {
            return Err(AlgebraError::Parse(format!("bad header `{header}`")));
        }
        let field = FieldSpec::parse(parts.next().ok_or_else(|| AlgebraError::Parse("missing order".into()))?)?;
        if let Some(shape) = parts.next() {
            let (r, c) = shape
                .split_once('x')
                .ok_or_else(|| AlgebraError::Parse(format!("bad shape `{shape}`")))?;
            let r: usize = r.parse().map_err(|_| AlgebraError::Parse(format!("bad shape `{shape}`")))?;
            if c != "0" {
                return Err(AlgebraError::Parse("shape suffix is only used for empty matrices".into()));
            }
            return Ok(ExactMatrix::empty(field, r));
        }
        let mut rows = Vec::new();
        for l in lines {
            rows.push(l.split_whitespace().map(|t| field.parse_scalar(t)).collect::<Result<Vec<_>, _>>()?);
        }
        ExactMatrix::from_rows(field, rows)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
