use std::collections::HashSet;

use exact_algebra::{ExactMatrix, FieldSpec, Scalar};
use matroid_core::RepresentedMatroid;
use serde_json::{json, Value};

use crate::group::{AddGroup, Gamma};
use crate::TemplateError;

/// `(Γ, C, X, Y0, Y1, A1, Δ, Λ)` over a finite field. The columns of `A1`
/// and the coordinates of Δ are ordered C, then Y0, then Y1; the rows of
/// `A1` and the coordinates of Λ follow X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameTemplate {
    field: FieldSpec,
    gamma: Gamma,
    c: Vec<String>,
    x: Vec<String>,
    y0: Vec<String>,
    y1: Vec<String>,
    a1: ExactMatrix,
    delta: AddGroup,
    lambda: AddGroup,
}

impl FrameTemplate {
    /// Builds a template, closing the Δ and Λ generators under Γ-scaling.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: FieldSpec,
        gamma_generator: &Scalar,
        c: Vec<String>,
        x: Vec<String>,
        y0: Vec<String>,
        y1: Vec<String>,
        a1: ExactMatrix,
        delta_gens: &[Vec<Scalar>],
        lambda_gens: &[Vec<Scalar>],
    ) -> Result<FrameTemplate, TemplateError> {
        let gamma = Gamma::generated_by(field, gamma_generator)?;
        let ncols = c.len() + y0.len() + y1.len();
        let delta = AddGroup::span(field, ncols, delta_gens, &gamma)?;
        let lambda = AddGroup::span(field, x.len(), lambda_gens, &gamma)?;
        FrameTemplate::from_parts(field, gamma, c, x, y0, y1, a1, delta, lambda)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        field: FieldSpec,
        gamma: Gamma,
        c: Vec<String>,
        x: Vec<String>,
        y0: Vec<String>,
        y1: Vec<String>,
        a1: ExactMatrix,
        delta: AddGroup,
        lambda: AddGroup,
    ) -> Result<FrameTemplate, TemplateError> {
        if !field.is_finite() {
            return Err(TemplateError::NotFinite);
        }
        if a1.field() != field {
            return Err(TemplateError::Invalid(format!("A1 is over {} but the template is over {field}", a1.field())));
        }
        let mut seen = HashSet::new();
        for l in c.iter().chain(&x).chain(&y0).chain(&y1) {
            if !seen.insert(l.as_str()) {
                return Err(TemplateError::Invalid(format!("label `{l}` appears twice among C, X, Y0, Y1")));
            }
        }
        let cols: Vec<String> = c.iter().chain(&y0).chain(&y1).cloned().collect();
        if a1.nrows() != x.len() || a1.ncols() != cols.len() {
            return Err(TemplateError::Shape(format!(
                "A1 is {}x{}, expected {}x{}",
                a1.nrows(),
                a1.ncols(),
                x.len(),
                cols.len()
            )));
        }
        if delta.len() != cols.len() || lambda.len() != x.len() {
            return Err(TemplateError::Shape("group vector lengths do not match the label sets".into()));
        }
        if !delta.is_closed_under(&gamma) || !lambda.is_closed_under(&gamma) {
            return Err(TemplateError::Invalid("Δ and Λ must be closed under Γ-scaling".into()));
        }
        let a1 = a1.with_row_labels(x.clone())?.with_col_labels(cols)?;
        Ok(FrameTemplate { field, gamma, c, x, y0, y1, a1, delta, lambda })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn gamma(&self) -> &Gamma {
        &self.gamma
    }

    pub fn c(&self) -> &[String] {
        &self.c
    }

    pub fn x(&self) -> &[String] {
        &self.x
    }

    pub fn y0(&self) -> &[String] {
        &self.y0
    }

    pub fn y1(&self) -> &[String] {
        &self.y1
    }

    pub fn a1(&self) -> &ExactMatrix {
        &self.a1
    }

    pub fn delta(&self) -> &AddGroup {
        &self.delta
    }

    pub fn lambda(&self) -> &AddGroup {
        &self.lambda
    }

    /// Column labels of `A1`: C, Y0, Y1.
    pub fn cols(&self) -> Vec<String> {
        self.c.iter().chain(&self.y0).chain(&self.y1).cloned().collect()
    }

    pub(crate) fn col_pos(&self, label: &str) -> Option<usize> {
        self.a1.col_index(label)
    }

    pub(crate) fn row_pos(&self, label: &str) -> Option<usize> {
        self.x.iter().position(|l| l == label)
    }

    pub fn to_json(&self) -> Value {
        let f = self.field;
        let vecs = |g: &AddGroup| -> Vec<Vec<String>> {
            g.generators().iter().map(|v| v.iter().map(|s| f.format(s)).collect()).collect()
        };
        json!({
            "field": f.order(),
            "gamma": f.format(&self.gamma.generator()),
            "C": self.c,
            "X": self.x,
            "Y0": self.y0,
            "Y1": self.y1,
            "A1": (0..self.a1.nrows()).map(|r| self.a1.row(r).iter().map(|s| f.format(s)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "delta": vecs(&self.delta),
            "lambda": vecs(&self.lambda),
        })
    }

    pub fn from_json(v: &Value) -> Result<FrameTemplate, TemplateError> {
        let bad = |m: &str| TemplateError::Json(m.to_string());
        let order = v["field"].as_u64().ok_or_else(|| bad("missing field order"))?;
        let field = FieldSpec::make(order as u32)?;
        let labels = |k: &str| -> Result<Vec<String>, TemplateError> {
            match &v[k] {
                Value::Null => Ok(Vec::new()),
                Value::Array(a) => a.iter().map(|s| s.as_str().map(String::from).ok_or_else(|| bad(k))).collect(),
                _ => Err(bad(k)),
            }
        };
        let rows = |k: &str| -> Result<Vec<Vec<Scalar>>, TemplateError> {
            match &v[k] {
                Value::Null => Ok(Vec::new()),
                Value::Array(a) => a
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| bad(k))?
                            .iter()
                            .map(|t| {
                                let s = match t {
                                    Value::String(s) => s.clone(),
                                    Value::Number(n) => n.to_string(),
                                    _ => return Err(bad(k)),
                                };
                                Ok(field.parse_scalar(&s)?)
                            })
                            .collect()
                    })
                    .collect(),
                _ => Err(bad(k)),
            }
        };
        let gamma = match &v["gamma"] {
            Value::Null => field.one(),
            Value::String(s) => field.parse_scalar(s)?,
            Value::Number(n) => field.parse_scalar(&n.to_string())?,
            _ => return Err(bad("gamma")),
        };
        let (c, x, y0, y1) = (labels("C")?, labels("X")?, labels("Y0")?, labels("Y1")?);
        let a1rows = rows("A1")?;
        let ncols = c.len() + y0.len() + y1.len();
        let a1 = if a1rows.is_empty() {
            ExactMatrix::zeros(field, x.len(), ncols)
        } else {
            ExactMatrix::from_rows(field, a1rows)?
        };
        FrameTemplate::new(field, &gamma, c, x, y0, y1, a1, &rows("delta")?, &rows("lambda")?)
    }
}

fn is_gamma_frame_column(f: FieldSpec, gamma: &Gamma, col: &[Scalar]) -> bool {
    let nz: Vec<&Scalar> = col.iter().filter(|s| !f.is_zero(s)).collect();
    match nz.as_slice() {
        [] => true,
        [a] => f.is_one(a),
        [a, b] => (f.is_one(a) && gamma.contains(&f.neg(b))) || (f.is_one(b) && gamma.contains(&f.neg(a))),
        _ => false,
    }
}

/// Checks the five respecting conditions for `a` with the given Z. With
/// `virtual_` the bottom of a Z column may also be zero.
pub fn respects_check(a: &ExactMatrix, phi: &FrameTemplate, z: &[String], virtual_: bool) -> Result<bool, TemplateError> {
    if a.field() != phi.field {
        return Err(TemplateError::LabelMismatch(format!("matrix over {} for a template over {}", a.field(), phi.field)));
    }
    let row_of = |l: &String| a.row_index(l).ok_or_else(|| TemplateError::LabelMismatch(format!("row `{l}` missing")));
    let col_of = |l: &String| a.col_index(l).ok_or_else(|| TemplateError::LabelMismatch(format!("column `{l}` missing")));
    let xr: Vec<usize> = phi.x.iter().map(row_of).collect::<Result<_, _>>()?;
    let cy: Vec<usize> = phi.cols().iter().map(col_of).collect::<Result<_, _>>()?;
    let zc: Vec<usize> = z.iter().map(col_of).collect::<Result<_, _>>()?;
    if zc.iter().any(|c| cy.contains(c)) {
        return Err(TemplateError::LabelMismatch("Z meets C ∪ Y0 ∪ Y1".into()));
    }
    let f = phi.field;
    let bottom: Vec<usize> = (0..a.nrows()).filter(|r| !xr.contains(r)).collect();
    let rest: Vec<usize> = (0..a.ncols()).filter(|c| !cy.contains(c) && !zc.contains(c)).collect();
    // (ii)
    for (i, &r) in xr.iter().enumerate() {
        for (j, &c) in cy.iter().enumerate() {
            if a.get(r, c) != phi.a1.get(i, j) {
                return Ok(false);
            }
        }
    }
    // (iii)
    for &c in &zc {
        if xr.iter().any(|&r| !f.is_zero(a.get(r, c))) {
            return Ok(false);
        }
        let nz: Vec<usize> = bottom.iter().copied().filter(|&r| !f.is_zero(a.get(r, c))).collect();
        let ok = match nz.as_slice() {
            [] => virtual_,
            [r] => f.is_one(a.get(*r, c)),
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    for &c in &rest {
        let col: Vec<Scalar> = bottom.iter().map(|&r| a.get(r, c).clone()).collect();
        if !is_gamma_frame_column(f, &phi.gamma, &col) {
            return Ok(false);
        }
        // (iv)
        let top: Vec<Scalar> = xr.iter().map(|&r| a.get(r, c).clone()).collect();
        if !phi.lambda.contains(&top) {
            return Ok(false);
        }
    }
    // (v)
    for &r in &bottom {
        let row: Vec<Scalar> = cy.iter().map(|&c| a.get(r, c).clone()).collect();
        if !phi.delta.contains(&row) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug)]
pub struct ConformOptions {
    /// Allow zero columns in the bottom of Z.
    pub virtual_: bool,
    /// Drop zero columns and all but the first of each parallel class
    /// among the frame and Z columns.
    pub simple: bool,
    /// Stop after this many matrices.
    pub max_matrices: usize,
}

impl Default for ConformOptions {
    fn default() -> ConformOptions {
        ConformOptions { virtual_: false, simple: false, max_matrices: 10_000 }
    }
}

/// One respecting matrix with every available frame, Λ and Z column, and
/// the conforming matrix built from it. Any other (virtually) conforming
/// matrix of the same rank and Δ rows is a column submatrix of this one.
#[derive(Clone, Debug)]
pub struct ConformingMatrix {
    pub respecting: ExactMatrix,
    pub conforming: ExactMatrix,
    pub z: Vec<String>,
    pub contract: Vec<String>,
    pub delete: Vec<String>,
}

impl ConformingMatrix {
    /// `M(A) / C \ Y1`.
    pub fn matroid(&self) -> Result<RepresentedMatroid, TemplateError> {
        let m = RepresentedMatroid::from_matrix(&self.conforming)?;
        Ok(m.contract(&self.contract)?.delete(&self.delete)?)
    }
}

/// Maximal conforming matrices of rank `r`, one per assignment of Δ rows
/// to the rows outside X. Assignments run in odometer order with the first
/// bottom row changing fastest.
pub struct ConformingStream {
    phi: FrameTemplate,
    opts: ConformOptions,
    n: usize,
    deltas: Vec<Vec<Scalar>>,
    counter: Vec<usize>,
    pool: Vec<(String, Vec<Scalar>)>,
    done: bool,
    produced: usize,
    truncated: bool,
}

impl ConformingStream {
    /// True once the stream stopped at `max_matrices` with assignments left.
    pub fn truncated(&self) -> bool {
        self.truncated
    }
}

fn projective_key(f: FieldSpec, col: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = col.iter().find(|s| !f.is_zero(s))?;
    let inv = f.inv(lead).expect("nonzero");
    Some(col.iter().map(|s| f.mul(s, &inv)).collect())
}

/// Enumerates matrices conforming to `phi` at rank `r` (rows X plus
/// `r - |X|` new rows).
pub fn conforming_matrices(phi: &FrameTemplate, r: usize, opts: ConformOptions) -> Result<ConformingStream, TemplateError> {
    let nx = phi.x.len();
    if r < nx {
        return Err(TemplateError::RankTooSmall { r, min: nx });
    }
    let f = phi.field;
    let n = r - nx;
    let zero_col = vec![f.zero(); n];
    let mut frames = vec![zero_col.clone()];
    for i in 0..n {
        let mut c = zero_col.clone();
        c[i] = f.one();
        frames.push(c);
    }
    for i in 0..n {
        for j in i + 1..n {
            for g in phi.gamma.elements() {
                let mut c = zero_col.clone();
                c[i] = f.one();
                c[j] = f.neg(g);
                frames.push(c);
            }
        }
    }
    let mut pool = Vec::new();
    for lam in phi.lambda.elements() {
        for fr in &frames {
            let col: Vec<Scalar> = lam.iter().chain(fr).cloned().collect();
            if col.iter().all(|s| f.is_zero(s)) {
                continue;
            }
            pool.push((format!("g{}", pool.len() + 1), col));
        }
    }
    Ok(ConformingStream {
        phi: phi.clone(),
        opts,
        n,
        deltas: phi.delta.elements(),
        counter: vec![0; n],
        pool,
        done: false,
        produced: 0,
        truncated: false,
    })
}

impl Iterator for ConformingStream {
    type Item = ConformingMatrix;

    fn next(&mut self) -> Option<ConformingMatrix> {
        if self.done {
            return None;
        }
        if self.produced == self.opts.max_matrices {
            self.truncated = true;
            self.done = true;
            return None;
        }
        let phi = &self.phi;
        let f = phi.field;
        let nx = phi.x.len();
        let rows: Vec<String> = phi.x.iter().cloned().chain((1..=self.n).map(|b| format!("b{b}"))).collect();
        let nr = rows.len();
        // C ∪ Y columns: A1 on top, the assigned Δ rows below
        let cy = phi.cols();
        let cy_col = |j: usize| -> Vec<Scalar> {
            let mut col: Vec<Scalar> = (0..nx).map(|i| phi.a1.get(i, j).clone()).collect();
            col.extend(self.counter.iter().map(|&k| self.deltas[k][j].clone()));
            col
        };
        let mut resp: Vec<(String, Vec<Scalar>)> = self.pool.clone();
        let mut conf: Vec<Vec<Scalar>> = self.pool.iter().map(|(_, c)| c.clone()).collect();
        let mut z = Vec::new();
        let y1_start = phi.c.len() + phi.y0.len();
        for (k, y) in phi.y1.iter().enumerate() {
            let ycol = cy_col(y1_start + k);
            let mut bottoms: Vec<Option<usize>> = (0..self.n).map(Some).collect();
            if self.opts.virtual_ {
                bottoms.push(None);
            }
            for b in bottoms {
                let mut col = vec![f.zero(); nr];
                let label = match b {
                    Some(b) => {
                        col[nx + b] = f.one();
                        format!("z.{y}.{}", b + 1)
                    }
                    None => format!("z.{y}.0"),
                };
                let sum: Vec<Scalar> = col.iter().zip(&ycol).map(|(a, b)| f.add(a, b)).collect();
                z.push(label.clone());
                resp.push((label, col));
                conf.push(sum);
            }
        }
        if self.opts.simple {
            let mut seen = HashSet::new();
            let keep: Vec<bool> = conf.iter().map(|c| projective_key(f, c).is_some_and(|k| seen.insert(k))).collect();
            let mut i = 0;
            resp.retain(|_| {
                i += 1;
                keep[i - 1]
            });
            let mut i = 0;
            conf.retain(|_| {
                i += 1;
                keep[i - 1]
            });
            z.retain(|l| resp.iter().any(|(m, _)| m == l));
        }
        for (j, l) in cy.iter().enumerate() {
            let col = cy_col(j);
            resp.push((l.clone(), col.clone()));
            conf.push(col);
        }
        let labels: Vec<String> = resp.iter().map(|(l, _)| l.clone()).collect();
        let build = |cols: Vec<Vec<Scalar>>| -> ExactMatrix {
            let nc = cols.len();
            let mut entries = vec![f.zero(); nr * nc];
            for (c, col) in cols.into_iter().enumerate() {
                for (r, v) in col.into_iter().enumerate() {
                    entries[r * nc + c] = v;
                }
            }
            ExactMatrix::new(f, rows.clone(), labels.clone(), entries).expect("labels are distinct")
        };
        let respecting = build(resp.into_iter().map(|(_, c)| c).collect());
        let conforming = build(conf);
        let item = ConformingMatrix { respecting, conforming, z, contract: phi.c.clone(), delete: phi.y1.clone() };
        self.produced += 1;
        // advance the odometer
        let base = self.deltas.len();
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                self.done = true;
                break;
            }
            self.counter[i] += 1;
            if self.counter[i] < base {
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(item)
    }
}
