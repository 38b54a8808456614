use matroid_core::{combinations, members, RepresentedMatroid};
use poly_groebner::{FracElem, Q};

use crate::member::{Membership, MembershipOracle};
use crate::minors::{FracMatrix, MinorTable};
use crate::PfError;

/// Result of sweeping the bases of a matroid.
#[derive(Clone, Debug)]
pub enum CheckOutcome {
    True,
    False { basis: Vec<String>, determinant: FracElem<Q> },
}

impl CheckOutcome {
    pub fn is_true(&self) -> bool {
        matches!(self, CheckOutcome::True)
    }
}

/// Tests every basis determinant of `avar` for membership. Nonbasis
/// determinants must vanish modulo the ideal. `extra` lists values that
/// are known products of generators and are accepted as they are.
pub fn check_partial_field(
    m: &RepresentedMatroid,
    avar: &FracMatrix,
    oracle: &MembershipOracle,
    extra: &[FracElem<Q>],
) -> Result<CheckOutcome, PfError> {
    let r = m.rank();
    if avar.nrows() != r || avar.ncols() != m.size() {
        return Err(PfError::Shape(format!(
            "matrix is {}x{}, matroid has rank {} on {} elements",
            avar.nrows(),
            avar.ncols(),
            r,
            m.size()
        )));
    }
    let ideal = oracle.presentation().ideal();
    let mut table = MinorTable::new(avar, ideal);
    let all_rows = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    for s in combinations(m.size(), r) {
        let det = table.minor(all_rows, s);
        if m.is_basis(s) {
            if det.is_zero() {
                return Err(PfError::Inconsistent(format!("basis {:?} has zero determinant", m.labels_of(s))));
            }
            if extra.iter().any(|e| e.equal_mod(&det, ideal)) {
                continue;
            }
            if let Membership::NonMember(_) = oracle.test(&det) {
                return Ok(CheckOutcome::False { basis: m.labels_of(s), determinant: det });
            }
        } else if !det.is_zero() {
            return Err(PfError::Inconsistent(format!(
                "nonbasis {:?} has determinant {}",
                m.labels_of(s),
                det.to_text(oracle.presentation().variables())
            )));
        }
    }
    Ok(CheckOutcome::True)
}

/// A square submatrix whose determinant lies outside the partial field.
#[derive(Clone, Debug)]
pub struct PWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub determinant: FracElem<Q>,
}

/// `Ok(())` when every square subdeterminant is 0 or a unit of the partial
/// field; otherwise the first offending submatrix, smallest size first.
pub fn pf_is_p_matrix(a: &FracMatrix, oracle: &MembershipOracle) -> Result<(), PWitness> {
    let ideal = oracle.presentation().ideal();
    let mut table = MinorTable::new(a, ideal);
    let k_max = a.nrows().min(a.ncols());
    for k in 1..=k_max {
        for rows in combinations(a.nrows(), k) {
            for cols in combinations(a.ncols(), k) {
                let det = table.minor(rows, cols);
                if !oracle.is_member(&det) {
                    return Err(PWitness { rows: members(rows), cols: members(cols), determinant: det });
                }
            }
        }
    }
    Ok(())
}
