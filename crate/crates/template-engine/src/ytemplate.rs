use exact_algebra::{ExactMatrix, FieldSpec, Scalar};
use matroid_core::RepresentedMatroid;
use serde_json::{json, Value};

use crate::frame::FrameTemplate;
use crate::group::{AddGroup, Gamma};
use crate::TemplateError;

/// `YT(P0, P1)`: two matrices over one field with the same rows X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YTemplate {
    p0: ExactMatrix,
    p1: ExactMatrix,
}

/// Sizes entering the extremal count: P1 is `c x d`, and `yhat` is the
/// number of points of `M([I_c | P1 | P0])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YTemplateStats {
    pub c: usize,
    pub d: usize,
    pub yhat: usize,
}

/// `r - c + C(r-c, 2) + (c+d)(r-c) + yhat`.
pub fn epsilon_formula(s: YTemplateStats, r: usize) -> Result<usize, TemplateError> {
    if r < s.c {
        return Err(TemplateError::RankTooSmall { r, min: s.c });
    }
    let n = r - s.c;
    Ok(n + n * n.saturating_sub(1) / 2 + (s.c + s.d) * n + s.yhat)
}

/// Label correspondence between two universal matroids: contract
/// `contract` in the source, then rename each remaining label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    pub contract: Vec<String>,
    pub rename: Vec<(String, String)>,
}

impl LabelMap {
    pub fn apply(&self, m: &RepresentedMatroid) -> Result<RepresentedMatroid, TemplateError> {
        let m = m.contract(&self.contract)?;
        let mut labels = Vec::with_capacity(m.size());
        for l in m.ground() {
            let to = self
                .rename
                .iter()
                .find(|(a, _)| a == l)
                .ok_or_else(|| TemplateError::LabelMismatch(format!("no image for `{l}`")))?;
            labels.push(to.1.clone());
        }
        Ok(m.relabel(labels)?)
    }
}

fn rn(a: String, b: String) -> (String, String) {
    (a, b)
}

fn column_sum(f: FieldSpec, m: &ExactMatrix, c: usize) -> Scalar {
    (0..m.nrows()).fold(f.zero(), |acc, r| f.add(&acc, m.get(r, c)))
}

fn block(f: FieldSpec, rows: usize, cols: Vec<Vec<Scalar>>) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(f, rows, cols.len());
    for (c, col) in cols.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

fn columns(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    (0..m.ncols()).map(|c| m.column(c)).collect()
}

/// `D_n` columns `e_i - e_j`, i < j, in lexicographic order.
fn d_columns(f: FieldSpec, n: usize) -> Vec<Vec<Scalar>> {
    columns(&ExactMatrix::build_dn(f, n))
}

impl YTemplate {
    pub fn new(p0: ExactMatrix, p1: ExactMatrix) -> Result<YTemplate, TemplateError> {
        if p0.field() != p1.field() {
            return Err(TemplateError::Invalid("P0 and P1 are over different fields".into()));
        }
        if p0.nrows() != p1.nrows() {
            return Err(TemplateError::Shape(format!("P0 has {} rows, P1 has {}", p0.nrows(), p1.nrows())));
        }
        Ok(YTemplate { p0, p1 })
    }

    pub fn field(&self) -> FieldSpec {
        self.p0.field()
    }

    pub fn p0(&self) -> &ExactMatrix {
        &self.p0
    }

    pub fn p1(&self) -> &ExactMatrix {
        &self.p1
    }

    /// |X|.
    pub fn nrows(&self) -> usize {
        self.p0.nrows()
    }

    /// The refined template with trivial groups and `A1 = [I | P1 | P0]`:
    /// Y1 holds the identity and P1 columns, Y0 the P0 columns.
    pub fn to_frame_template(&self) -> Result<FrameTemplate, TemplateError> {
        let f = self.field();
        let c = self.nrows();
        let x: Vec<String> = (1..=c).map(|i| format!("x{i}")).collect();
        let y0: Vec<String> = (1..=self.p0.ncols()).map(|j| format!("y{j}")).collect();
        let y1: Vec<String> =
            (1..=c).map(|i| format!("i{i}")).chain((1..=self.p1.ncols()).map(|j| format!("p{j}"))).collect();
        let a1 = self.p0.clone().prefix_cols("y").hcat(&ExactMatrix::identity(f, c))?.hcat(&self.p1.clone().prefix_cols("p"))?;
        let ncols = a1.ncols();
        FrameTemplate::from_parts(
            f,
            Gamma::trivial(f),
            vec![],
            x,
            y0,
            y1,
            a1,
            AddGroup::trivial(f, ncols),
            AddGroup::trivial(f, c),
        )
    }

    /// The rank-`r` universal matrix: `I_r`, then `D_{r-|X|}` on the new
    /// rows, then for each new row b the columns of `I_{|X|}` and of P1 with
    /// a 1 added in row b, then P1 and P0 with zero bottoms.
    ///
    /// Labels: `e{i}`, `d{i},{j}` (new-row indices), `u{x}.{b}`, `p{j}.{b}`,
    /// `p{j}`, `y{j}`.
    pub fn universal_matrix(&self, r: usize) -> Result<ExactMatrix, TemplateError> {
        let f = self.field();
        let c = self.nrows();
        if r < c {
            return Err(TemplateError::RankTooSmall { r, min: c });
        }
        let n = r - c;
        let zero = vec![f.zero(); r];
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        for i in 0..r {
            let mut v = zero.clone();
            v[i] = f.one();
            cols.push(v);
            labels.push(format!("e{}", i + 1));
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut v = zero.clone();
                v[c + i] = f.one();
                v[c + j] = f.neg(&f.one());
                cols.push(v);
                labels.push(format!("d{},{}", i + 1, j + 1));
            }
        }
        for b in 0..n {
            for x in 0..c {
                let mut v = zero.clone();
                v[x] = f.one();
                v[c + b] = f.one();
                cols.push(v);
                labels.push(format!("u{}.{}", x + 1, b + 1));
            }
        }
        let p1 = columns(&self.p1);
        for b in 0..n {
            for (j, pc) in p1.iter().enumerate() {
                let mut v = zero.clone();
                v[..c].clone_from_slice(pc);
                v[c + b] = f.one();
                cols.push(v);
                labels.push(format!("p{}.{}", j + 1, b + 1));
            }
        }
        for (j, pc) in p1.iter().enumerate() {
            let mut v = zero.clone();
            v[..c].clone_from_slice(pc);
            cols.push(v);
            labels.push(format!("p{}", j + 1));
        }
        for (j, pc) in columns(&self.p0).iter().enumerate() {
            let mut v = zero.clone();
            v[..c].clone_from_slice(pc);
            cols.push(v);
            labels.push(format!("y{}", j + 1));
        }
        let rows: Vec<String> = (1..=c).map(|i| format!("x{i}")).chain((1..=n).map(|b| format!("b{b}"))).collect();
        Ok(block(f, r, cols).with_row_labels(rows)?.with_col_labels(labels)?)
    }

    pub fn universal_matroid(&self, r: usize) -> Result<RepresentedMatroid, TemplateError> {
        Ok(RepresentedMatroid::from_matrix(&self.universal_matrix(r)?)?)
    }

    pub fn stats(&self) -> Result<YTemplateStats, TemplateError> {
        let f = self.field();
        let c = self.nrows();
        let a = ExactMatrix::identity(f, c).hcat(&self.p1.clone().prefix_cols("p"))?.hcat(&self.p0.clone().prefix_cols("y"))?;
        let yhat = RepresentedMatroid::from_matrix(&a)?.epsilon();
        Ok(YTemplateStats { c, d: self.p1.ncols(), yhat })
    }

    /// `YT([-P1 P0; I 0], [∅])`.
    pub fn lift(&self) -> YTemplate {
        let f = self.field();
        let (c, d, k) = (self.nrows(), self.p1.ncols(), self.p0.ncols());
        let mut cols = Vec::new();
        for (j, pc) in columns(&self.p1).iter().enumerate() {
            let mut v: Vec<Scalar> = pc.iter().map(|s| f.neg(s)).collect();
            v.extend((0..d).map(|i| if i == j { f.one() } else { f.zero() }));
            cols.push(v);
        }
        for pc in columns(&self.p0) {
            let mut v = pc;
            v.extend(std::iter::repeat(f.zero()).take(d));
            cols.push(v);
        }
        debug_assert_eq!(cols.len(), d + k);
        YTemplate { p0: block(f, c + d, cols), p1: ExactMatrix::empty(f, c + d) }
    }

    /// Correspondence taking the rank-`(r + d)` universal matroid of
    /// [`Self::lift`] to the rank-`r` universal matroid of `self`: contract
    /// the first d columns of the lifted P0; the lifted X rows beyond the
    /// first |X| play the part of the P1 columns.
    pub fn lift_correspondence(&self, r: usize) -> Result<LabelMap, TemplateError> {
        let (c, d, k) = (self.nrows(), self.p1.ncols(), self.p0.ncols());
        if r < c {
            return Err(TemplateError::RankTooSmall { r, min: c });
        }
        let n = r - c;
        let mut rename = Vec::new();
        for i in 1..=c {
            rename.push(rn(format!("e{i}"), format!("e{i}")));
        }
        for j in 1..=d {
            rename.push(rn(format!("e{}", c + j), format!("p{j}")));
        }
        for b in 1..=n {
            rename.push(rn(format!("e{}", c + d + b), format!("e{}", c + b)));
        }
        for i in 1..=n {
            for j in i + 1..=n {
                rename.push(rn(format!("d{i},{j}"), format!("d{i},{j}")));
            }
        }
        for b in 1..=n {
            for x in 1..=c {
                rename.push(rn(format!("u{x}.{b}"), format!("u{x}.{b}")));
            }
            for j in 1..=d {
                rename.push(rn(format!("u{}.{b}", c + j), format!("p{j}.{b}")));
            }
        }
        for j in 1..=k {
            rename.push(rn(format!("y{}", d + j), format!("y{j}")));
        }
        Ok(LabelMap { contract: (1..=d).map(|j| format!("y{j}")).collect(), rename })
    }

    /// True iff every column of `D_{|X|}` is a column of P0.
    pub fn is_complete(&self) -> bool {
        let have = columns(&self.p0);
        d_columns(self.field(), self.nrows()).iter().all(|d| have.contains(d))
    }

    /// Appends the columns of `D_{|X|}` missing from P0.
    pub fn complete(&self) -> YTemplate {
        let f = self.field();
        let mut cols = columns(&self.p0);
        for d in d_columns(f, self.nrows()) {
            if !cols.contains(&d) {
                cols.push(d);
            }
        }
        YTemplate { p0: block(f, self.nrows(), cols), p1: self.p1.clone() }
    }

    /// With `y* = [1..1] - Σ y_i` over the rows of P1, returns
    /// `YT([I P1 P0; -1..-1 -Σy -Σx], [P1; y*])`. The new row is last.
    pub fn normalize_rows(&self) -> YTemplate {
        let f = self.field();
        let c = self.nrows();
        let mut p1cols = Vec::new();
        for (j, mut v) in columns(&self.p1).into_iter().enumerate() {
            v.push(f.sub(&f.one(), &column_sum(f, &self.p1, j)));
            p1cols.push(v);
        }
        let mut p0cols = Vec::new();
        for i in 0..c {
            let mut v = vec![f.zero(); c + 1];
            v[i] = f.one();
            v[c] = f.neg(&f.one());
            p0cols.push(v);
        }
        for (m, src) in [(&self.p1, columns(&self.p1)), (&self.p0, columns(&self.p0))] {
            for (j, mut v) in src.into_iter().enumerate() {
                v.push(f.neg(&column_sum(f, m, j)));
                p0cols.push(v);
            }
        }
        YTemplate { p0: block(f, c + 1, p0cols), p1: block(f, c + 1, p1cols) }
    }

    /// Correspondence from the rank-`r` universal matroid of
    /// [`Self::normalize_rows`] to that of `self` (r > |X|). The first new
    /// row of `self` becomes the added row of X.
    pub fn normalize_correspondence(&self, r: usize) -> Result<LabelMap, TemplateError> {
        let (c, d, k) = (self.nrows(), self.p1.ncols(), self.p0.ncols());
        if r <= c {
            return Err(TemplateError::RankTooSmall { r, min: c + 1 });
        }
        let n = r - c;
        let mut rename = Vec::new();
        for i in 1..=c {
            rename.push(rn(format!("e{i}"), format!("u{i}.1")));
        }
        rename.push(rn(format!("e{}", c + 1), format!("e{}", c + 1)));
        for b in 1..n {
            rename.push(rn(format!("e{}", c + 1 + b), format!("d1,{}", b + 1)));
        }
        for i in 1..n {
            for j in i + 1..n {
                rename.push(rn(format!("d{i},{j}"), format!("d{},{}", i + 1, j + 1)));
            }
        }
        for b in 1..n {
            for i in 1..=c {
                rename.push(rn(format!("u{i}.{b}"), format!("u{i}.{}", b + 1)));
            }
            rename.push(rn(format!("u{}.{b}", c + 1), format!("e{}", c + 1 + b)));
            for j in 1..=d {
                rename.push(rn(format!("p{j}.{b}"), format!("p{j}.{}", b + 1)));
            }
        }
        for j in 1..=d {
            rename.push(rn(format!("p{j}"), format!("p{j}.1")));
        }
        for i in 1..=c {
            rename.push(rn(format!("y{i}"), format!("e{i}")));
        }
        for j in 1..=d {
            rename.push(rn(format!("y{}", c + j), format!("p{j}")));
        }
        for j in 1..=k {
            rename.push(rn(format!("y{}", c + d + j), format!("y{j}")));
        }
        Ok(LabelMap { contract: Vec::new(), rename })
    }

    pub fn to_json(&self) -> Value {
        json!({ "P0": self.p0.to_text(), "P1": self.p1.to_text() })
    }

    pub fn from_json(v: &Value) -> Result<YTemplate, TemplateError> {
        let get = |k: &str| v[k].as_str().ok_or_else(|| TemplateError::Json(format!("missing {k}")));
        YTemplate::new(ExactMatrix::from_text(get("P0")?)?, ExactMatrix::from_text(get("P1")?)?)
    }
}

/// `Φ_{P0} = YT([P0 | D_m], [∅])` for an m-row P0.
pub fn determined_template(p0: &ExactMatrix) -> YTemplate {
    let f = p0.field();
    let m = p0.nrows();
    let mut cols = columns(p0);
    cols.extend(d_columns(f, m));
    YTemplate { p0: block(f, m, cols), p1: ExactMatrix::empty(f, m) }
}

/// Removes row `row` from a P0 whose rows sum to zero and returns the
/// template it determines.
pub fn strip_row(p0: &ExactMatrix, row: usize) -> Result<YTemplate, TemplateError> {
    let f = p0.field();
    if row >= p0.nrows() {
        return Err(TemplateError::Shape(format!("row {row} out of range")));
    }
    if (0..p0.ncols()).any(|c| !f.is_zero(&column_sum(f, p0, c))) {
        return Err(TemplateError::RowSum);
    }
    let keep: Vec<usize> = (0..p0.nrows()).filter(|&r| r != row).collect();
    Ok(determined_template(&p0.select_rows(&keep)))
}
