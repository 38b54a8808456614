use std::collections::VecDeque;

use exact_algebra::{ExactMatrix, Scalar};
use matroid_core::{mask_of, RepresentedMatroid};
use partial_field::FracMatrix;
use poly_groebner::{var_names, MonoOrder, Poly, Q, MAX_VARS};

use crate::UpfError;

const DRL: MonoOrder = MonoOrder::DegRevLex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// `[I_r | D_r | P0]` over GF(4).
    Template,
    /// `[I_r | A']` normalized along a spanning forest.
    Forest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForcedReason {
    /// Identity or `D_r` column.
    Frame,
    /// Last nonzero entry of a `P0` column.
    ColumnScale,
    /// A second 1 in a `P0` column, set to -1.
    SecondOne,
    /// Edge of the spanning forest of the fundamental graph.
    Forest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedEntry {
    pub row: usize,
    pub col: usize,
    pub value: i64,
    pub reason: ForcedReason,
}

/// A GF(4) matrix together with a matrix of polynomials in `z0, z1, ...`
/// that has the same zero pattern.
#[derive(Clone, Debug)]
pub struct VariableRepresentation {
    pub kind: RepKind,
    pub a4: ExactMatrix,
    pub avar: FracMatrix,
    /// Column indices of the standardizing basis, one per row.
    pub basis: Vec<usize>,
    pub forced: Vec<ForcedEntry>,
    /// Position of each variable; `z_i` sits at `variables[i]`.
    pub variables: Vec<(usize, usize)>,
}

impl VariableRepresentation {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn names(&self) -> Vec<String> {
        var_names(self.nvars())
    }

    pub fn matroid(&self) -> Result<RepresentedMatroid, UpfError> {
        Ok(RepresentedMatroid::from_matrix(&self.a4)?)
    }
}

fn rows_to_avar(rows: Vec<Vec<Poly<Q>>>, labels: Vec<String>) -> Result<FracMatrix, UpfError> {
    Ok(FracMatrix::from_polys(&rows, labels)?)
}

fn check_vars(n: usize) -> Result<(), UpfError> {
    // one slot stays free for saturation
    if n >= MAX_VARS {
        return Err(UpfError::TooManyVariables(n));
    }
    Ok(())
}

/// Builds `A4 = [I_r | D_r | P0]` with each `P0` column scaled so that its
/// last nonzero entry is 1, and the matching matrix of variables. A second
/// 1 in a column becomes -1; every other nonzero `P0` entry gets a fresh
/// variable, leftmost column first and top to bottom within a column.
/// With `seed_pairs`, a column with values `[1, a, a, 1]` (in row order,
/// zeros skipped) gets `[-1, -z, z, 1]`.
pub fn template_representation(p0: &ExactMatrix, seed_pairs: bool) -> Result<VariableRepresentation, UpfError> {
    let field = p0.field();
    if field.order() != Some(4) {
        return Err(UpfError::NotGf4);
    }
    let r = p0.nrows();
    let k = p0.ncols();
    let mut scaled = p0.clone();
    for c in 0..k {
        if let Some(last) = (0..r).rev().find(|&i| !field.is_zero(p0.get(i, c))) {
            let s = field.inv(p0.get(last, c))?;
            scaled.scale_col(c, &s);
        }
    }
    let scaled = scaled.with_col_labels((1..=k).map(|i| format!("p{i}")).collect())?;
    let frame = ExactMatrix::identity(field, r).hcat(&ExactMatrix::build_dn(field, r))?;
    let a4 = frame.hcat(&scaled)?;
    let nframe = frame.ncols();

    let mut rows = vec![vec![Poly::zero(DRL); a4.ncols()]; r];
    let mut forced = Vec::new();
    for c in 0..nframe {
        for (i, row) in rows.iter_mut().enumerate() {
            let v = if c < r {
                i64::from(i == c)
            } else {
                let (a, b) = dn_pair(r, c - r);
                if i == a {
                    1
                } else if i == b {
                    -1
                } else {
                    0
                }
            };
            if v != 0 {
                row[c] = Poly::from_i64(v, DRL);
                forced.push(ForcedEntry { row: i, col: c, value: v, reason: ForcedReason::Frame });
            }
        }
    }

    let mut variables = Vec::new();
    for c in 0..k {
        let col = nframe + c;
        let nz: Vec<usize> = (0..r).filter(|&i| !field.is_zero(scaled.get(i, c))).collect();
        let Some((&last, upper)) = nz.split_last() else { continue };
        let ones: Vec<usize> = upper.iter().copied().filter(|&i| field.is_one(scaled.get(i, c))).collect();
        let second_one = (ones.len() == 1).then(|| ones[0]);
        let pair = if seed_pairs && nz.len() == 4 && second_one.is_some() {
            let others: Vec<usize> = upper.iter().copied().filter(|&i| Some(i) != second_one).collect();
            (scaled.get(others[0], c) == scaled.get(others[1], c)).then(|| (others[0], others[1]))
        } else {
            None
        };
        rows[last][col] = Poly::one(DRL);
        forced.push(ForcedEntry { row: last, col, value: 1, reason: ForcedReason::ColumnScale });
        let mut pair_var = None;
        for &i in upper {
            if Some(i) == second_one {
                rows[i][col] = Poly::from_i64(-1, DRL);
                forced.push(ForcedEntry { row: i, col, value: -1, reason: ForcedReason::SecondOne });
            } else if let Some((p, q)) = pair {
                let v = *pair_var.get_or_insert_with(|| {
                    variables.push((q, col));
                    variables.len() - 1
                });
                let z = Poly::var(v, DRL);
                rows[i][col] = if i == p { z.neg() } else { z };
            } else {
                variables.push((i, col));
                rows[i][col] = Poly::var(variables.len() - 1, DRL);
            }
        }
    }
    check_vars(variables.len())?;
    let avar = rows_to_avar(rows, a4.col_labels().to_vec())?;
    Ok(VariableRepresentation { kind: RepKind::Template, a4, avar, basis: (0..r).collect(), forced, variables })
}

/// `(i, j)` of the `c`-th column of `D_r`, lexicographic.
fn dn_pair(r: usize, mut c: usize) -> (usize, usize) {
    for i in 0..r {
        let len = r - i - 1;
        if c < len {
            return (i, i + 1 + c);
        }
        c -= len;
    }
    unreachable!("column index beyond D_r")
}

fn unit_columns(a: &ExactMatrix) -> Result<Vec<usize>, UpfError> {
    let field = a.field();
    (0..a.nrows())
        .map(|i| {
            (0..a.ncols())
                .find(|&c| (0..a.nrows()).all(|j| if j == i { field.is_one(a.get(j, c)) } else { field.is_zero(a.get(j, c)) }))
                .ok_or_else(|| UpfError::NotStandardForm(format!("no unit column for row {}", i + 1)))
        })
        .collect()
}

/// Normalizes `[I_r | A']` so that the entries on a spanning forest of the
/// fundamental graph of `A'` are 1, then replaces every other nonzero
/// entry of `A'` by a variable, column-major.
pub fn forest_representation(a: &ExactMatrix) -> Result<VariableRepresentation, UpfError> {
    let field = a.field();
    let r = a.nrows();
    let basis = unit_columns(a)?;
    let nonbasis: Vec<usize> = (0..a.ncols()).filter(|c| !basis.contains(c)).collect();
    let one = field.one();
    let mut rho: Vec<Option<Scalar>> = vec![None; r];
    let mut kappa: Vec<Option<Scalar>> = vec![None; a.ncols()];
    let mut tree: Vec<(usize, usize)> = Vec::new();
    let nz = |i: usize, c: usize| !field.is_zero(a.get(i, c));

    enum Node {
        Row(usize),
        Col(usize),
    }
    let roots: Vec<Node> = (0..r).map(Node::Row).chain(nonbasis.iter().map(|&c| Node::Col(c))).collect();
    for root in roots {
        let mut queue = VecDeque::new();
        match root {
            Node::Row(i) if rho[i].is_none() => {
                rho[i] = Some(one.clone());
                queue.push_back(Node::Row(i));
            }
            Node::Col(c) if kappa[c].is_none() => {
                kappa[c] = Some(one.clone());
                queue.push_back(Node::Col(c));
            }
            _ => continue,
        }
        while let Some(node) = queue.pop_front() {
            match node {
                Node::Row(i) => {
                    for &c in &nonbasis {
                        if nz(i, c) && kappa[c].is_none() {
                            let ri = rho[i].clone().expect("visited row");
                            kappa[c] = Some(field.inv(&field.mul(&ri, a.get(i, c)))?);
                            tree.push((i, c));
                            queue.push_back(Node::Col(c));
                        }
                    }
                }
                Node::Col(c) => {
                    for i in 0..r {
                        if nz(i, c) && rho[i].is_none() {
                            let kc = kappa[c].clone().expect("visited column");
                            rho[i] = Some(field.inv(&field.mul(a.get(i, c), &kc))?);
                            tree.push((i, c));
                            queue.push_back(Node::Row(i));
                        }
                    }
                }
            }
        }
    }

    let mut a4 = a.clone();
    for i in 0..r {
        let ri = rho[i].clone().expect("every row visited");
        for c in 0..a.ncols() {
            let v = if basis.contains(&c) { a.get(i, c).clone() } else { field.mul(&ri, &field.mul(a.get(i, c), kappa[c].as_ref().expect("visited"))) };
            a4.set(i, c, v);
        }
    }

    let mut rows = vec![vec![Poly::zero(DRL); a.ncols()]; r];
    let mut forced = Vec::new();
    let mut variables = Vec::new();
    for (i, &b) in basis.iter().enumerate() {
        rows[i][b] = Poly::one(DRL);
        forced.push(ForcedEntry { row: i, col: b, value: 1, reason: ForcedReason::Frame });
    }
    for &c in &nonbasis {
        for i in 0..r {
            if !nz(i, c) {
                continue;
            }
            if tree.contains(&(i, c)) {
                rows[i][c] = Poly::one(DRL);
                forced.push(ForcedEntry { row: i, col: c, value: 1, reason: ForcedReason::Forest });
            } else {
                variables.push((i, c));
                rows[i][c] = Poly::var(variables.len() - 1, DRL);
            }
        }
    }
    check_vars(variables.len())?;
    let avar = rows_to_avar(rows, a.col_labels().to_vec())?;
    Ok(VariableRepresentation { kind: RepKind::Forest, a4, avar, basis, forced, variables })
}

fn is_template_frame(a: &ExactMatrix) -> bool {
    let field = a.field();
    let r = a.nrows();
    let nframe = r + r * (r - 1) / 2;
    if field.order() != Some(4) || a.ncols() < nframe {
        return false;
    }
    let Ok(frame) = ExactMatrix::identity(field, r).hcat(&ExactMatrix::build_dn(field, r)) else { return false };
    (0..r).all(|i| (0..nframe).all(|c| a.get(i, c) == frame.get(i, c)))
}

/// Template construction when `a` starts with `[I_r | D_r]` over GF(4),
/// forest construction otherwise.
pub fn variable_representation(a: &ExactMatrix) -> Result<VariableRepresentation, UpfError> {
    if a.nrows() > 0 && is_template_frame(a) {
        let r = a.nrows();
        let nframe = r + r * (r - 1) / 2;
        let p0 = a.select_cols(&(nframe..a.ncols()).collect::<Vec<_>>());
        let mut rep = template_representation(&p0, false)?;
        let labels = a.col_labels().to_vec();
        rep.a4 = rep.a4.with_col_labels(labels.clone())?;
        rep.avar = FracMatrix::new(rep.avar.nrows(), rep.avar.ncols(), entries(&rep.avar), labels)?;
        return Ok(rep);
    }
    forest_representation(a)
}

fn entries(m: &FracMatrix) -> Vec<poly_groebner::FracElem<Q>> {
    (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| m.get(r, c).clone())).collect()
}

/// Entry `(i, c)` of a standard form is nonzero iff swapping basis element
/// `i` for `c` gives a basis.
pub(crate) fn check_pattern(m: &RepresentedMatroid, rep: &VariableRepresentation) -> Result<(), UpfError> {
    let r = rep.avar.nrows();
    if m.rank() != r || m.size() != rep.avar.ncols() || rep.basis.len() != r {
        return Err(UpfError::PatternMismatch(format!(
            "shape {}x{} against rank {} on {} elements",
            r,
            rep.avar.ncols(),
            m.rank(),
            m.size()
        )));
    }
    let b = mask_of(&rep.basis);
    if !m.is_basis(b) {
        return Err(UpfError::PatternMismatch("standardizing set is not a basis".into()));
    }
    for (i, &bi) in rep.basis.iter().enumerate() {
        for c in 0..m.size() {
            if rep.basis.contains(&c) {
                continue;
            }
            let swapped = (b & !(1 << bi)) | (1 << c);
            if m.is_basis(swapped) == rep.avar.get(i, c).is_zero() {
                return Err(UpfError::PatternMismatch(format!("({}, {})", i + 1, m.ground()[c])));
            }
        }
    }
    Ok(())
}
