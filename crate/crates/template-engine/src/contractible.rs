use exact_algebra::{ExactMatrix, FieldSpec, Scalar};

/// A contractible submatrix of P0: after scaling column `cols[k]` by
/// `scales[k]` its entry in `unit_rows[k]` is 1, the rows `q_rows` give Q,
/// and the unit rows give the identity below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contractible {
    pub cols: Vec<usize>,
    pub q_rows: Vec<usize>,
    pub unit_rows: Vec<usize>,
    pub scales: Vec<Scalar>,
    pub q: ExactMatrix,
}

impl Contractible {
    pub fn rows(&self) -> usize {
        self.q_rows.len() + self.unit_rows.len()
    }

    /// `[Q; I]`.
    pub fn matrix(&self) -> ExactMatrix {
        let f = self.q.field();
        self.q.vcat(&ExactMatrix::identity(f, self.cols.len()).with_col_labels(self.q.col_labels().to_vec()).expect("same width")).expect("same width")
    }
}

fn nonzero_rows(f: FieldSpec, col: &[Scalar], rows: &[usize]) -> Vec<usize> {
    rows.iter().copied().filter(|&r| !f.is_zero(&col[r])).collect()
}

/// True iff `v` is a semi-parallel extension of the matrix with columns
/// `a`: for some split of the rows into a top part and a nonempty bottom
/// part, every column of `a` has at most one nonzero in the bottom, and
/// `v` scales to `t + e_l` where `t + e_k` (scaled) is a column of `a` and
/// l, k are bottom rows.
pub fn is_semi_parallel_extension(f: FieldSpec, a: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let m = v.len();
    if m > 20 {
        return false;
    }
    let all: Vec<usize> = (0..m).collect();
    'split: for mask in 1u32..(1 << m) {
        let bottom: Vec<usize> = all.iter().copied().filter(|&r| mask >> r & 1 == 1).collect();
        let top: Vec<usize> = all.iter().copied().filter(|&r| mask >> r & 1 == 0).collect();
        let scaled_top = |col: &[Scalar], at: usize| -> Vec<Scalar> {
            let inv = f.inv(&col[at]).expect("nonzero");
            top.iter().map(|&r| f.mul(&col[r], &inv)).collect()
        };
        let mut tops = Vec::new();
        for col in a {
            match nonzero_rows(f, col, &bottom).as_slice() {
                [] => {}
                [k] => tops.push(scaled_top(col, *k)),
                _ => continue 'split,
            }
        }
        if let [l] = nonzero_rows(f, v, &bottom).as_slice() {
            if tops.contains(&scaled_top(v, *l)) {
                return true;
            }
        }
    }
    false
}

fn subsets_desc(items: &[usize]) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).collect())
        .collect();
    out.sort_by_key(|s: &Vec<usize>| std::cmp::Reverse(s.len()));
    out
}

/// Checks the three conditions on the candidate `[Q; I]`.
fn valid(f: FieldSpec, p0: &ExactMatrix, cols: &[usize], unit_rows: &[usize], q_rows: &[usize], scales: &[Scalar]) -> bool {
    if q_rows.is_empty() {
        return false;
    }
    let rows: Vec<usize> = q_rows.iter().chain(unit_rows).copied().collect();
    let qcols: Vec<Vec<Scalar>> = cols
        .iter()
        .zip(scales)
        .map(|(&c, s)| rows.iter().map(|&r| f.mul(p0.get(r, c), s)).collect())
        .collect();
    let mq = q_rows.len();
    let minus_one = f.neg(&f.one());
    for col in &qcols {
        let nz: Vec<&Scalar> = col[..mq].iter().filter(|s| !f.is_zero(s)).collect();
        if nz.is_empty() || (nz.len() == 1 && *nz[0] == minus_one) {
            return false;
        }
    }
    if (0..mq).any(|i| qcols.iter().all(|c| f.is_zero(&c[i]))) {
        return false;
    }
    (0..qcols.len()).all(|k| {
        let rest: Vec<Vec<Scalar>> = qcols.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, c)| c.clone()).collect();
        !is_semi_parallel_extension(f, &rest, &qcols[k])
    })
}

fn assignments(f: FieldSpec, p0: &ExactMatrix, cols: &[usize]) -> Vec<Vec<usize>> {
    // identity row for cols[k]: nonzero there, zero in the other chosen columns
    let options: Vec<Vec<usize>> = cols
        .iter()
        .map(|&c| {
            (0..p0.nrows())
                .rev()
                .filter(|&r| !f.is_zero(p0.get(r, c)) && cols.iter().all(|&o| o == c || f.is_zero(p0.get(r, o))))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(options: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == options.len() {
            out.push(cur.clone());
            return;
        }
        for &r in &options[cur.len()] {
            if !cur.contains(&r) {
                cur.push(r);
                rec(options, cur, out);
                cur.pop();
            }
        }
    }
    rec(&options, &mut cur, &mut out);
    out
}

/// The contractible submatrix of `p0` with the most rows. Ties go to the
/// first column set in mask order and to the latest identity rows.
pub fn find_contractible(p0: &ExactMatrix) -> Option<Contractible> {
    let f = p0.field();
    let (m, k) = (p0.nrows(), p0.ncols());
    if k > 16 || m > 16 {
        return None;
    }
    let mut best: Option<Contractible> = None;
    for mask in 1u32..(1 << k) {
        let cols: Vec<usize> = (0..k).filter(|&c| mask >> c & 1 == 1).collect();
        let support: Vec<usize> = (0..m).filter(|&r| cols.iter().any(|&c| !f.is_zero(p0.get(r, c)))).collect();
        if support.len() <= best.as_ref().map_or(0, |b| b.rows()) {
            continue;
        }
        for unit_rows in assignments(f, p0, &cols) {
            let cands: Vec<usize> = support.iter().copied().filter(|r| !unit_rows.contains(r)).collect();
            let scales: Vec<Scalar> =
                cols.iter().zip(&unit_rows).map(|(&c, &r)| f.inv(p0.get(r, c)).expect("nonzero")).collect();
            for q_rows in subsets_desc(&cands) {
                let total = q_rows.len() + cols.len();
                if total <= best.as_ref().map_or(0, |b| b.rows()) {
                    break;
                }
                if valid(f, p0, &cols, &unit_rows, &q_rows, &scales) {
                    let mut q = ExactMatrix::zeros(f, q_rows.len(), cols.len());
                    for (i, &r) in q_rows.iter().enumerate() {
                        for (j, (&c, s)) in cols.iter().zip(&scales).enumerate() {
                            q.set(i, j, f.mul(p0.get(r, c), s));
                        }
                    }
                    best = Some(Contractible { cols: cols.clone(), q_rows, unit_rows: unit_rows.clone(), scales: scales.clone(), q });
                    break;
                }
            }
        }
    }
    best
}
