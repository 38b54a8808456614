use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use exact_algebra::{ExactMatrix, FieldSpec, Scalar};
use itertools::Itertools;
use serde::Serialize;

use crate::{mask_of, members, ElementSet, MatroidError, MAX_GROUND};

/// A matroid given by a representation in reduced row-echelon form.
///
/// Column order matches the input; the pivot columns carry an identity.
#[derive(Debug)]
pub struct RepresentedMatroid {
    rep: ExactMatrix,
    pivots: Vec<usize>,
    cols: Vec<Vec<Scalar>>,
    bases: OnceLock<Vec<ElementSet>>,
}

impl Clone for RepresentedMatroid {
    fn clone(&self) -> Self {
        let bases = OnceLock::new();
        if let Some(b) = self.bases.get() {
            let _ = bases.set(b.clone());
        }
        RepresentedMatroid { rep: self.rep.clone(), pivots: self.pivots.clone(), cols: self.cols.clone(), bases }
    }
}

/// All `k`-subsets of `0..n` as bit sets, in lexicographic order of their
/// sorted index lists.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = ElementSet> {
    (0..n).combinations(k).map(|c| mask_of(&c))
}

/// Rank of a list of vectors by incremental echelon insertion.
pub(crate) fn rank_of_vectors<'a>(f: FieldSpec, vecs: impl IntoIterator<Item = &'a [Scalar]>) -> usize {
    // rows of the echelon basis paired with their leading position
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for v in vecs {
        let mut v = v.to_vec();
        for (lead, b) in &basis {
            if !f.is_zero(&v[*lead]) {
                let s = f.neg(&v[*lead]);
                for (x, y) in v.iter_mut().zip(b) {
                    if !f.is_zero(y) {
                        *x = f.add(x, &f.mul(&s, y));
                    }
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| !f.is_zero(x)) {
            let inv = f.inv(&v[lead]).expect("nonzero lead");
            for x in v.iter_mut() {
                *x = f.mul(x, &inv);
            }
            basis.push((lead, v));
        }
    }
    basis.len()
}

#[derive(Serialize)]
struct MatroidJson<'a> {
    field: String,
    rank: usize,
    ground: &'a [String],
    rows: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bases: Option<Vec<Vec<String>>>,
}

impl RepresentedMatroid {
    /// Standardizes `a` by row reduction; zero rows disappear and the
    /// column labels become the ground set.
    pub fn from_matrix(a: &ExactMatrix) -> Result<RepresentedMatroid, MatroidError> {
        if a.ncols() > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(a.ncols()));
        }
        let rr = a.rref();
        let keep: Vec<usize> = (0..rr.rank).collect();
        let rep = rr
            .matrix
            .select_rows(&keep)
            .with_row_labels((1..=rr.rank).map(|i| format!("r{i}")).collect())?;
        let cols = (0..rep.ncols()).map(|c| rep.column(c)).collect();
        Ok(RepresentedMatroid { rep, pivots: rr.pivots, cols, bases: OnceLock::new() })
    }

    pub fn field(&self) -> FieldSpec {
        self.rep.field()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    pub fn ground(&self) -> &[String] {
        self.rep.col_labels()
    }

    pub fn full_set(&self) -> ElementSet {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    /// The standardized representation.
    pub fn matrix(&self) -> &ExactMatrix {
        &self.rep
    }

    /// Indices of the columns carrying the identity of the standard form.
    pub fn standard_basis(&self) -> &[usize] {
        &self.pivots
    }

    pub fn column(&self, e: usize) -> &[Scalar] {
        &self.cols[e]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MatroidError> {
        self.rep.col_index(label).ok_or_else(|| MatroidError::UnknownElement(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet, MatroidError> {
        let mut m = 0u64;
        for l in labels {
            m |= 1u64 << self.index_of(l.as_ref())?;
        }
        Ok(m)
    }

    pub fn labels_of(&self, s: ElementSet) -> Vec<String> {
        members(s).into_iter().map(|i| self.ground()[i].clone()).collect()
    }

    pub fn rank_of_set(&self, s: ElementSet) -> usize {
        rank_of_vectors(self.field(), members(s).into_iter().map(|i| self.cols[i].as_slice()))
    }

    pub fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize, MatroidError> {
        Ok(self.rank_of_set(self.set_of(labels)?))
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_of_set(s) == s.count_ones() as usize
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        s.count_ones() as usize == self.rank() && self.is_independent(s)
    }

    /// All bases, in lexicographic order.
    pub fn bases(&self) -> &[ElementSet] {
        self.bases.get_or_init(|| combinations(self.size(), self.rank()).filter(|&s| self.is_independent(s)).collect())
    }

    /// All dependent `r`-subsets, in lexicographic order.
    pub fn nonbases(&self) -> Vec<ElementSet> {
        let b: HashSet<ElementSet> = self.bases().iter().copied().collect();
        combinations(self.size(), self.rank()).filter(|s| !b.contains(s)).collect()
    }

    pub fn bases_labels(&self) -> Vec<Vec<String>> {
        self.bases().iter().map(|&b| self.labels_of(b)).collect()
    }

    /// The unique circuit in `basis + e`.
    pub fn fundamental_circuit(&self, basis: ElementSet, e: usize) -> Result<ElementSet, MatroidError> {
        if !self.is_basis(basis) {
            return Err(MatroidError::NotABasis(format!("{:?}", self.labels_of(basis))));
        }
        if basis >> e & 1 == 1 {
            return Err(MatroidError::ElementInBasis(self.ground()[e].clone()));
        }
        let mut idx = members(basis);
        idx.push(e);
        let rr = self.rep.select_cols(&idx).rref();
        let last = idx.len() - 1;
        let mut c = 1u64 << e;
        for (row, &b) in idx[..last].iter().enumerate() {
            if !self.field().is_zero(rr.matrix.get(row, last)) {
                c |= 1u64 << b;
            }
        }
        Ok(c)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.cols[e].iter().all(|x| self.field().is_zero(x))
    }

    pub fn loops(&self) -> ElementSet {
        mask_of(&(0..self.size()).filter(|&e| self.is_loop(e)).collect::<Vec<_>>())
    }

    pub fn coloops(&self) -> ElementSet {
        let r = self.rank();
        mask_of(&(0..self.size()).filter(|&e| self.rank_of_set(self.full_set() & !(1u64 << e)) < r).collect::<Vec<_>>())
    }

    /// Column scaled so that its first nonzero entry is one; `None` for loops.
    fn normalized_column(&self, e: usize) -> Option<Vec<Scalar>> {
        let f = self.field();
        let lead = self.cols[e].iter().find(|x| !f.is_zero(x))?;
        let inv = f.inv(lead).expect("nonzero");
        Some(self.cols[e].iter().map(|x| f.mul(x, &inv)).collect())
    }

    /// Parallel classes of non-loop elements, each sorted, ordered by first member.
    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut seen: HashMap<Vec<Scalar>, usize> = HashMap::new();
        for e in 0..self.size() {
            if let Some(v) = self.normalized_column(e) {
                let first = *seen.entry(v).or_insert(e);
                classes.entry(first).or_default().push(e);
            }
        }
        classes.into_values().collect()
    }

    /// Number of rank-one flats.
    pub fn epsilon(&self) -> usize {
        self.parallel_classes().len()
    }

    /// Deletes loops and all but the first member of every parallel class.
    pub fn simplify(&self) -> RepresentedMatroid {
        let keep: Vec<usize> = self.parallel_classes().iter().map(|c| c[0]).collect();
        self.restrict_to(&keep)
    }

    fn restrict_to(&self, keep: &[usize]) -> RepresentedMatroid {
        RepresentedMatroid::from_matrix(&self.rep.select_cols(keep)).expect("smaller ground set")
    }

    /// `M | s`.
    pub fn restrict(&self, s: ElementSet) -> RepresentedMatroid {
        self.restrict_to(&members(s))
    }

    /// `M \ s`.
    pub fn delete_set(&self, s: ElementSet) -> RepresentedMatroid {
        self.restrict(self.full_set() & !s)
    }

    /// `M / s`: pivots each independent element of `s` into a unit column,
    /// then drops that row and column. Dependent elements become loops and
    /// are deleted.
    pub fn contract_set(&self, s: ElementSet) -> RepresentedMatroid {
        let f = self.field();
        let mut m = self.rep.clone();
        let mut live_rows: Vec<usize> = (0..m.nrows()).collect();
        for e in members(s) {
            let Some(&row) = live_rows.iter().find(|&&r| !f.is_zero(m.get(r, e))) else {
                continue;
            };
            let inv = f.inv(m.get(row, e)).expect("nonzero");
            for &r in &live_rows {
                if r != row && !f.is_zero(m.get(r, e)) {
                    let s = f.neg(&f.mul(m.get(r, e), &inv));
                    for c in 0..m.ncols() {
                        let v = f.add(m.get(r, c), &f.mul(&s, m.get(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            live_rows.retain(|&r| r != row);
        }
        let keep_cols = members(self.full_set() & !s);
        let out = m.submatrix(&live_rows, &keep_cols);
        RepresentedMatroid::from_matrix(&out).expect("smaller ground set")
    }

    pub fn delete<S: AsRef<str>>(&self, labels: &[S]) -> Result<RepresentedMatroid, MatroidError> {
        Ok(self.delete_set(self.set_of(labels)?))
    }

    pub fn contract<S: AsRef<str>>(&self, labels: &[S]) -> Result<RepresentedMatroid, MatroidError> {
        Ok(self.contract_set(self.set_of(labels)?))
    }

    /// Orthogonal complement representation with the same labels.
    pub fn dual(&self) -> RepresentedMatroid {
        let f = self.field();
        let n = self.size();
        let nonpivots: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut d = ExactMatrix::zeros(f, nonpivots.len(), n);
        for (i, &q) in nonpivots.iter().enumerate() {
            d.set(i, q, f.one());
            for (j, &p) in self.pivots.iter().enumerate() {
                d.set(i, p, f.neg(self.rep.get(j, q)));
            }
        }
        let d = d.with_col_labels(self.ground().to_vec()).expect("same labels");
        RepresentedMatroid::from_matrix(&d).expect("same ground set")
    }

    /// Same matroid with new labels, in column order.
    pub fn relabel(&self, labels: Vec<String>) -> Result<RepresentedMatroid, MatroidError> {
        let rep = self.rep.clone().with_col_labels(labels)?;
        Ok(RepresentedMatroid::from_matrix(&rep)?)
    }

    /// True iff the two matroids have the same bases on the same labels.
    pub fn matroids_equal(&self, other: &RepresentedMatroid) -> Result<bool, MatroidError> {
        let mine: HashSet<&String> = self.ground().iter().collect();
        let theirs: HashSet<&String> = other.ground().iter().collect();
        if mine != theirs || self.size() != other.size() {
            return Err(MatroidError::GroundMismatch);
        }
        if self.rank() != other.rank() {
            return Ok(false);
        }
        // index map self -> other
        let map: Vec<usize> = self.ground().iter().map(|l| other.index_of(l).expect("same labels")).collect();
        Ok(self.is_basis_map(other, &map))
    }

    /// Checks that `map` carries the bases of `self` onto the bases of `other`.
    pub(crate) fn is_basis_map(&self, other: &RepresentedMatroid, map: &[usize]) -> bool {
        if self.bases().len() != other.bases().len() {
            return false;
        }
        let theirs: HashSet<ElementSet> = other.bases().iter().copied().collect();
        self.bases().iter().all(|&b| theirs.contains(&image(b, map)))
    }

    /// True iff the permutation `perm` (given on indices) preserves the bases.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.size() && perm.iter().collect::<HashSet<_>>().len() == perm.len() && self.is_basis_map(self, perm)
    }

    /// Number of 3-element circuits through each element.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.size()];
        let mut pair_ok = vec![vec![false; self.size()]; self.size()];
        for a in 0..self.size() {
            for b in a + 1..self.size() {
                pair_ok[a][b] = self.rank_of_set(1 << a | 1 << b) == 2;
            }
        }
        for t in combinations(self.size(), 3) {
            let [a, b, c] = members(t)[..] else { unreachable!() };
            if pair_ok[a][b] && pair_ok[a][c] && pair_ok[b][c] && self.rank_of_set(t) == 2 {
                out[a] += 1;
                out[b] += 1;
                out[c] += 1;
            }
        }
        out
    }

    /// JSON object with field order, representation rows and ground labels.
    pub fn to_json(&self, with_bases: bool) -> serde_json::Value {
        let f = self.field();
        let rows = (0..self.rep.nrows()).map(|r| self.rep.row(r).iter().map(|x| f.format(x)).collect()).collect();
        let j = MatroidJson {
            field: match f {
                FieldSpec::Gf(q) => q.to_string(),
                FieldSpec::Rational => "Q".into(),
            },
            rank: self.rank(),
            ground: self.ground(),
            rows,
            bases: with_bases.then(|| self.bases_labels()),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

pub(crate) fn image(s: ElementSet, map: &[usize]) -> ElementSet {
    members(s).into_iter().fold(0, |m, i| m | 1u64 << map[i])
}
