use exact_algebra::{ExactMatrix, FieldSpec, Scalar};
use poly_groebner::{FracElem, Poly, Q};

use crate::minors::FracMatrix;
use crate::presentation::{PartialField, Presentation};
use crate::PfError;

/// Largest assignment space [`pf_hom_to_field`] will enumerate.
pub const MAX_ASSIGNMENTS: u64 = 1 << 22;

/// Evaluates at field elements; `None` if a coefficient denominator
/// vanishes in the field.
pub fn eval_poly(field: FieldSpec, p: &Poly<Q>, values: &[Scalar]) -> Option<Scalar> {
    let mut acc = field.zero();
    for (m, c) in p.terms() {
        let mut t = field.from_rational(c).ok()?;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = field.mul(&t, &field.pow(values.get(i)?, e as u64));
            }
        }
        acc = field.add(&acc, &t);
    }
    Some(acc)
}

/// `None` when the denominator maps to zero.
pub fn eval_frac(field: FieldSpec, f: &FracElem<Q>, values: &[Scalar]) -> Option<Scalar> {
    let n = eval_poly(field, f.num(), values)?;
    let d = eval_poly(field, f.den(), values)?;
    field.div(&n, &d).ok()
}

fn admissible(p: &Presentation, field: FieldSpec, values: &[Scalar]) -> bool {
    let ideal_ok = p
        .ideal()
        .basis()
        .iter()
        .all(|g| eval_poly(field, g, values).is_some_and(|v| field.is_zero(&v)));
    ideal_ok
        && p.generators().iter().all(|g| {
            let n = eval_poly(field, g.num(), values);
            let d = eval_poly(field, g.den(), values);
            matches!((n, d), (Some(n), Some(d)) if !field.is_zero(&n) && !field.is_zero(&d))
        })
}

/// First assignment of the variables in GF(q), in element-index order, that
/// kills the defining ideal and keeps every generator nonzero.
pub fn pf_hom_to_field(pf: &PartialField, q: u32) -> Result<Option<Vec<Scalar>>, PfError> {
    let field = FieldSpec::make(q).map_err(|e| PfError::Presentation(e.to_string()))?;
    let Some(order) = field.order() else {
        return Err(PfError::Presentation("target must be a finite field".into()));
    };
    let p = match pf {
        PartialField::Symbolic(p) => p,
        PartialField::Field(f) => return Ok((*f == field).then(Vec::new)),
    };
    let n = p.variables().len();
    let space = (order as u64).checked_pow(n as u32).filter(|&s| s <= MAX_ASSIGNMENTS);
    if space.is_none() {
        return Err(PfError::SearchTooLarge(format!("{order}^{n}")));
    }
    let elems = field.elements();
    let mut idx = vec![0usize; n];
    loop {
        let values: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
        if admissible(p, field, &values) {
            return Ok(Some(values));
        }
        // odometer, last variable fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Image of a matrix under the homomorphism `variables -> values`.
pub fn apply_hom(a: &FracMatrix, field: FieldSpec, values: &[Scalar]) -> Result<ExactMatrix, PfError> {
    let mut rows = Vec::with_capacity(a.nrows());
    for r in 0..a.nrows() {
        let mut row = Vec::with_capacity(a.ncols());
        for c in 0..a.ncols() {
            row.push(eval_frac(field, a.get(r, c), values).ok_or_else(|| PfError::Inconsistent(format!("entry ({r},{c}) is undefined")))?);
        }
        rows.push(row);
    }
    let m = if rows.is_empty() { ExactMatrix::zeros(field, 0, a.ncols()) } else { ExactMatrix::from_rows(field, rows)? };
    Ok(m.with_col_labels(a.col_labels().to_vec())?)
}
