use exact_algebra::{ExactMatrix, FieldSpec, Scalar};

use crate::frame::FrameTemplate;
use crate::group::{AddGroup, Gamma};
use crate::TemplateError;

/// An elementary row operation on the X rows, addressed by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(String, String),
    Scale(String, Scalar),
    /// Adds `factor` times row `source` to row `target`.
    AddMultiple { target: String, source: String, factor: Scalar },
}

/// Reductions (1)-(8).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// (1) Γ becomes the subgroup generated by this element.
    Gamma(Scalar),
    /// (2) Λ becomes the Γ-closed group generated by these vectors.
    Lambda(Vec<Vec<Scalar>>),
    /// (3) Δ becomes the Γ-closed group generated by these vectors.
    Delta(Vec<Vec<Scalar>>),
    /// (4)
    RemoveY1(String),
    /// (5)
    Row(RowOp),
    /// (6)
    RemoveZeroRow(String),
    /// (7)
    ContractUnitC(String),
    /// (8)
    RemoveZeroC(String),
}

impl Reduction {
    pub fn id(&self) -> u8 {
        match self {
            Reduction::Gamma(_) => 1,
            Reduction::Lambda(_) => 2,
            Reduction::Delta(_) => 3,
            Reduction::RemoveY1(_) => 4,
            Reduction::Row(_) => 5,
            Reduction::RemoveZeroRow(_) => 6,
            Reduction::ContractUnitC(_) => 7,
            Reduction::RemoveZeroC(_) => 8,
        }
    }
}

/// Template-minor operations (10)-(12).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorOp {
    /// (10)
    DeleteY0(String),
    /// (11) contract `y` using row `x`, where Λ vanishes at `x`.
    ContractY0AtRow { x: String, y: String },
    /// (12) contract `y`, where Δ vanishes at `y`; `x` picks the pivot row
    /// (first nonzero row when `None`).
    ContractY0 { y: String, x: Option<String> },
}

impl MinorOp {
    pub fn id(&self) -> u8 {
        match self {
            MinorOp::DeleteY0(_) => 10,
            MinorOp::ContractY0AtRow { .. } => 11,
            MinorOp::ContractY0 { .. } => 12,
        }
    }
}

/// A template in standard form with its partition: `A1[X0, C0]` is an
/// identity matrix and `A1[X1, C]` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub template: FrameTemplate,
    pub c0: Vec<String>,
    pub c1: Vec<String>,
    pub x0: Vec<String>,
    pub x1: Vec<String>,
}

fn pre(op: u8, reason: impl Into<String>) -> TemplateError {
    TemplateError::Precondition { op, reason: reason.into() }
}

fn row_op_on_vec(f: FieldSpec, v: &mut [Scalar], a: usize, b: usize, op: &RowOp) {
    match op {
        RowOp::Swap(..) => v.swap(a, b),
        RowOp::Scale(_, s) => v[a] = f.mul(&v[a], s),
        RowOp::AddMultiple { factor, .. } => v[a] = f.add(&v[a], &f.mul(factor, &v[b])),
    }
}

impl FrameTemplate {
    fn rebuild(
        &self,
        gamma: Gamma,
        c: Vec<String>,
        x: Vec<String>,
        y0: Vec<String>,
        y1: Vec<String>,
        a1: ExactMatrix,
        delta: AddGroup,
        lambda: AddGroup,
    ) -> Result<FrameTemplate, TemplateError> {
        FrameTemplate::from_parts(self.field(), gamma, c, x, y0, y1, a1, delta, lambda)
    }

    fn with_parts(&self, a1: ExactMatrix, delta: AddGroup, lambda: AddGroup) -> Result<FrameTemplate, TemplateError> {
        self.rebuild(
            self.gamma().clone(),
            self.c().to_vec(),
            self.x().to_vec(),
            self.y0().to_vec(),
            self.y1().to_vec(),
            a1,
            delta,
            lambda,
        )
    }

    /// Drops row `x` and columns `cols`, projecting Λ and `delta`.
    fn drop_labels(&self, x: Option<&str>, cols: &[&str], delta: &AddGroup) -> Result<FrameTemplate, TemplateError> {
        let keep_rows: Vec<usize> = (0..self.x().len()).filter(|&i| Some(self.x()[i].as_str()) != x).collect();
        let all = self.cols();
        let keep_cols: Vec<usize> = (0..all.len()).filter(|&j| !cols.contains(&all[j].as_str())).collect();
        let keep = |v: &[String]| -> Vec<String> { v.iter().filter(|l| !cols.contains(&l.as_str()) && Some(l.as_str()) != x).cloned().collect() };
        let a1 = self.a1().submatrix(&keep_rows, &keep_cols);
        self.rebuild(
            self.gamma().clone(),
            keep(self.c()),
            keep(self.x()),
            keep(self.y0()),
            keep(self.y1()),
            a1,
            delta.project(&keep_cols),
            self.lambda().project(&keep_rows),
        )
    }

    fn require_row(&self, op: u8, x: &str) -> Result<usize, TemplateError> {
        self.row_pos(x).ok_or_else(|| pre(op, format!("`{x}` is not in X")))
    }

    fn require_in(&self, op: u8, set: &[String], name: &str, l: &str) -> Result<usize, TemplateError> {
        if !set.iter().any(|s| s == l) {
            return Err(pre(op, format!("`{l}` is not in {name}")));
        }
        Ok(self.col_pos(l).expect("template columns are labeled"))
    }

    /// Applies one of reductions (1)-(8).
    pub fn apply_reduction(&self, r: &Reduction) -> Result<FrameTemplate, TemplateError> {
        let op = r.id();
        let f = self.field();
        match r {
            Reduction::Gamma(g) => {
                let new = Gamma::generated_by(f, g)?;
                if !new.is_subgroup_of(self.gamma()) || new.order() == self.gamma().order() {
                    return Err(pre(op, "not a proper subgroup of Γ"));
                }
                self.rebuild(
                    new,
                    self.c().to_vec(),
                    self.x().to_vec(),
                    self.y0().to_vec(),
                    self.y1().to_vec(),
                    self.a1().clone(),
                    self.delta().clone(),
                    self.lambda().clone(),
                )
            }
            Reduction::Lambda(gens) => {
                let new = AddGroup::span(f, self.x().len(), gens, self.gamma())?;
                if !new.is_subgroup_of(self.lambda()) || new.dim() == self.lambda().dim() {
                    return Err(pre(op, "not a proper subgroup of Λ"));
                }
                self.with_parts(self.a1().clone(), self.delta().clone(), new)
            }
            Reduction::Delta(gens) => {
                let new = AddGroup::span(f, self.cols().len(), gens, self.gamma())?;
                if !new.is_subgroup_of(self.delta()) || new.dim() == self.delta().dim() {
                    return Err(pre(op, "not a proper subgroup of Δ"));
                }
                self.with_parts(self.a1().clone(), new, self.lambda().clone())
            }
            Reduction::RemoveY1(y) => {
                self.require_in(op, self.y1(), "Y1", y)?;
                self.drop_labels(None, &[y], self.delta())
            }
            Reduction::Row(rop) => self.row_operation(rop),
            Reduction::RemoveZeroRow(x) => {
                let i = self.require_row(op, x)?;
                if (0..self.a1().ncols()).any(|j| !f.is_zero(self.a1().get(i, j))) {
                    return Err(pre(op, format!("row `{x}` of A1 is not zero")));
                }
                if !self.lambda().vanishes_at(i) {
                    return Err(pre(op, format!("Λ does not vanish at `{x}`")));
                }
                self.drop_labels(Some(x), &[], self.delta())
            }
            Reduction::ContractUnitC(c) => {
                let j = self.require_in(op, self.c(), "C", c)?;
                let i = self.a1().unit_row(j).ok_or_else(|| pre(op, format!("A1[X,{c}] is not a unit vector")))?;
                if !self.lambda().vanishes_at(i) && !self.delta().vanishes_at(j) {
                    return Err(pre(op, "neither Λ vanishes at the unit row nor Δ at c"));
                }
                let x = self.x()[i].clone();
                let delta = self.shift_delta(i, j);
                self.drop_labels(Some(&x), &[c], &delta)
            }
            Reduction::RemoveZeroC(c) => {
                let j = self.require_in(op, self.c(), "C", c)?;
                if !self.a1().is_zero_col(j) {
                    return Err(pre(op, format!("A1[X,{c}] is not zero")));
                }
                if !self.delta().vanishes_at(j) {
                    return Err(pre(op, format!("Δ does not vanish at `{c}`")));
                }
                self.drop_labels(None, &[c], self.delta())
            }
        }
    }

    /// `δ -> δ - δ_j A1[i, :]` on every element of Δ.
    fn shift_delta(&self, i: usize, j: usize) -> AddGroup {
        let f = self.field();
        let row = self.a1().row(i).to_vec();
        self.delta().map(self.delta().len(), |d| d.iter().zip(&row).map(|(a, b)| f.sub(a, &f.mul(&d[j], b))).collect())
    }

    /// Reduction (5): the row operation acts on `A1` and, as a change of
    /// basis, on every vector of Λ. Frame and Z blocks carry no X entries
    /// that the operation could change outside those two.
    pub fn row_operation(&self, rop: &RowOp) -> Result<FrameTemplate, TemplateError> {
        let f = self.field();
        let (a, b) = match rop {
            RowOp::Swap(p, q) => (self.require_row(5, p)?, self.require_row(5, q)?),
            RowOp::Scale(p, s) => {
                if f.is_zero(s) {
                    return Err(pre(5, "scaling by zero"));
                }
                let i = self.require_row(5, p)?;
                (i, i)
            }
            RowOp::AddMultiple { target, source, .. } => {
                let (t, s) = (self.require_row(5, target)?, self.require_row(5, source)?);
                if t == s {
                    return Err(pre(5, "source and target rows coincide"));
                }
                (t, s)
            }
        };
        let mut a1 = self.a1().clone();
        for j in 0..a1.ncols() {
            let mut col = a1.column(j);
            row_op_on_vec(f, &mut col, a, b, rop);
            for (i, v) in col.into_iter().enumerate() {
                a1.set(i, j, v);
            }
        }
        let lambda = self.lambda().map(self.x().len(), |v| {
            let mut w = v.to_vec();
            row_op_on_vec(f, &mut w, a, b, rop);
            w
        });
        self.with_parts(a1, self.delta().clone(), lambda)
    }

    /// Row operations making column `j` the unit vector at row `i`.
    fn pivot_rows(&self, op: u8, i: usize, j: usize) -> Result<FrameTemplate, TemplateError> {
        let f = self.field();
        let piv = self.a1().get(i, j).clone();
        if f.is_zero(&piv) {
            return Err(pre(op, "zero pivot"));
        }
        let x = self.x()[i].clone();
        let mut t = self.clone();
        if !f.is_one(&piv) {
            t = t.row_operation(&RowOp::Scale(x.clone(), f.inv(&piv)?))?;
        }
        for k in 0..self.x().len() {
            let v = t.a1().get(k, j).clone();
            if k != i && !f.is_zero(&v) {
                t = t.row_operation(&RowOp::AddMultiple { target: self.x()[k].clone(), source: x.clone(), factor: f.neg(&v) })?;
            }
        }
        Ok(t)
    }

    /// Applies one of operations (10)-(12).
    pub fn apply_template_minor_op(&self, m: &MinorOp) -> Result<FrameTemplate, TemplateError> {
        let op = m.id();
        let f = self.field();
        match m {
            MinorOp::DeleteY0(y) => {
                self.require_in(op, self.y0(), "Y0", y)?;
                self.drop_labels(None, &[y], self.delta())
            }
            MinorOp::ContractY0AtRow { x, y } => {
                let i = self.require_row(op, x)?;
                let j = self.require_in(op, self.y0(), "Y0", y)?;
                if !self.lambda().vanishes_at(i) {
                    return Err(pre(op, format!("Λ does not vanish at `{x}`")));
                }
                if f.is_zero(self.a1().get(i, j)) {
                    return Err(pre(op, format!("A1[{x},{y}] is zero")));
                }
                let t = self.pivot_rows(op, i, j)?;
                let delta = t.shift_delta(i, j);
                t.drop_labels(Some(x), &[y], &delta)
            }
            MinorOp::ContractY0 { y, x } => {
                let j = self.require_in(op, self.y0(), "Y0", y)?;
                if !self.delta().vanishes_at(j) {
                    return Err(pre(op, format!("Δ does not vanish at `{y}`")));
                }
                if self.a1().is_zero_col(j) {
                    return self.drop_labels(None, &[y], self.delta());
                }
                let i = match x {
                    Some(x) => self.require_row(op, x)?,
                    None => (0..self.x().len()).find(|&i| !f.is_zero(self.a1().get(i, j))).expect("nonzero column"),
                };
                if f.is_zero(self.a1().get(i, j)) {
                    return Err(pre(op, "chosen row has a zero entry in column y"));
                }
                let t = self.pivot_rows(op, i, j)?;
                let x = self.x()[i].clone();
                t.drop_labels(Some(&x), &[y], t.delta())
            }
        }
    }

    /// Moves `y` from Y1 to Y0.
    pub fn y_shift(&self, y: &str) -> Result<FrameTemplate, TemplateError> {
        if !self.y1().iter().any(|l| l == y) {
            return Err(TemplateError::Precondition { op: 0, reason: format!("`{y}` is not in Y1") });
        }
        // A1 and Δ are keyed by label; reorder the columns to C, Y0, Y1
        let mut y0 = self.y0().to_vec();
        y0.push(y.to_string());
        let y1: Vec<String> = self.y1().iter().filter(|l| *l != y).cloned().collect();
        let order: Vec<usize> = self
            .c()
            .iter()
            .chain(&y0)
            .chain(&y1)
            .map(|l| self.col_pos(l).expect("known label"))
            .collect();
        let a1 = self.a1().select_cols(&order);
        let delta = self.delta().project(&order);
        self.rebuild(self.gamma().clone(), self.c().to_vec(), self.x().to_vec(), y0, y1, a1, delta, self.lambda().clone())
    }

    /// Row-reduces `A1[X, C]` with operation (5), taking C0 as the pivot
    /// columns in C order; X0 are the first |C0| rows.
    pub fn standard_form(&self) -> Result<StandardForm, TemplateError> {
        let f = self.field();
        let mut t = self.clone();
        let xs = self.x().to_vec();
        let mut k = 0;
        let mut c0 = Vec::new();
        for c in self.c() {
            let j = self.col_pos(c).expect("known label");
            let Some(i) = (k..xs.len()).find(|&i| !f.is_zero(t.a1().get(i, j))) else { continue };
            if i != k {
                t = t.row_operation(&RowOp::Swap(xs[i].clone(), xs[k].clone()))?;
            }
            t = t.pivot_rows(5, k, j)?;
            c0.push(c.clone());
            k += 1;
        }
        let c1 = self.c().iter().filter(|c| !c0.contains(c)).cloned().collect();
        Ok(StandardForm { template: t, c0, c1, x0: xs[..k].to_vec(), x1: xs[k..].to_vec() })
    }
}

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn unit(f: FieldSpec) -> Vec<Vec<Scalar>> {
    vec![vec![f.one()]]
}

/// |C| = 1, Δ = GF(p) on C, everything else trivial.
pub fn phi_c(f: FieldSpec) -> Result<FrameTemplate, TemplateError> {
    FrameTemplate::new(f, &f.one(), labels(&["c"]), vec![], vec![], vec![], ExactMatrix::zeros(f, 0, 1), &unit(f), &[])
}

/// |X| = 1, Λ = GF(p) on X, everything else trivial.
pub fn phi_x(f: FieldSpec) -> Result<FrameTemplate, TemplateError> {
    FrameTemplate::new(f, &f.one(), vec![], labels(&["x"]), vec![], vec![], ExactMatrix::zeros(f, 1, 0), &[], &unit(f))
}

/// |Y0| = 1, Δ = GF(p) on Y0, everything else trivial.
pub fn phi_y0(f: FieldSpec) -> Result<FrameTemplate, TemplateError> {
    FrameTemplate::new(f, &f.one(), vec![], vec![], labels(&["y"]), vec![], ExactMatrix::zeros(f, 0, 1), &unit(f), &[])
}

/// |C| = |X| = 1 with `A1 = [k]` and Δ = Λ = GF(p).
pub fn phi_cxk(f: FieldSpec, k: &Scalar) -> Result<FrameTemplate, TemplateError> {
    if f.is_zero(k) {
        return Err(TemplateError::Invalid("k must be nonzero".into()));
    }
    let a1 = ExactMatrix::from_rows(f, vec![vec![k.clone()]])?;
    FrameTemplate::new(f, &f.one(), labels(&["c"]), labels(&["x"]), vec![], vec![], a1, &unit(f), &unit(f))
}

/// Γ cyclic of prime order `n` dividing q - 1, all else trivial.
pub fn phi_n(f: FieldSpec, n: usize) -> Result<FrameTemplate, TemplateError> {
    let q = f.order().ok_or(TemplateError::NotFinite)?;
    let prime = n >= 2 && (2..n).all(|d| n % d != 0);
    if !prime || (q - 1) % n != 0 {
        return Err(TemplateError::Invalid(format!("{n} is not a prime dividing {}", q - 1)));
    }
    let g = f.pow(&f.primitive_element().expect("finite field"), ((q - 1) / n) as u64);
    FrameTemplate::new(f, &g, vec![], vec![], vec![], vec![], ExactMatrix::zeros(f, 0, 0), &[], &[])
}
