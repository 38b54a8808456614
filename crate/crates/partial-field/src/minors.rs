use std::collections::HashMap;

use poly_groebner::{FracElem, MonoOrder, Poly, PolyIdeal, Substitutions, Q};

use crate::PfError;

/// Matrix with entries in a fraction field, columns labelled by ground-set
/// elements.
#[derive(Clone, Debug, PartialEq)]
pub struct FracMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FracElem<Q>>,
    col_labels: Vec<String>,
}

impl FracMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FracElem<Q>>, col_labels: Vec<String>) -> Result<FracMatrix, PfError> {
        if entries.len() != rows * cols || col_labels.len() != cols {
            return Err(PfError::Shape(format!("{} entries / {} labels for a {rows}x{cols} matrix", entries.len(), col_labels.len())));
        }
        Ok(FracMatrix { rows, cols, entries, col_labels })
    }

    pub fn from_polys(rows: &[Vec<Poly<Q>>], col_labels: Vec<String>) -> Result<FracMatrix, PfError> {
        let r = rows.len();
        let c = rows.first().map_or(col_labels.len(), |x| x.len());
        let entries = rows.iter().flatten().cloned().map(FracElem::from_poly).collect();
        FracMatrix::new(r, c, entries, col_labels)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, r: usize, c: usize) -> &FracElem<Q> {
        &self.entries[r * self.cols + c]
    }

    pub fn map(&self, f: impl Fn(&FracElem<Q>) -> FracElem<Q>) -> FracMatrix {
        FracMatrix { entries: self.entries.iter().map(f).collect(), ..self.clone() }
    }

    /// Replaces solved variables by their values.
    pub fn substitute(&self, s: &Substitutions<Q>) -> FracMatrix {
        self.map(|e| s.apply(e.num()).div(&s.apply(e.den())).expect("denominators stay nonzero"))
    }

    pub fn select_cols(&self, idx: &[usize]) -> FracMatrix {
        let mut entries = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            for &c in idx {
                entries.push(self.get(r, c).clone());
            }
        }
        FracMatrix { rows: self.rows, cols: idx.len(), entries, col_labels: idx.iter().map(|&c| self.col_labels[c].clone()).collect() }
    }

    pub fn to_texts(&self, names: &[String]) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_text(names)).collect()).collect()
    }
}

/// Memoized determinants of square submatrices. Columns are scaled to
/// polynomials first; results are reduced modulo the ideal.
pub struct MinorTable<'a> {
    cols: usize,
    entries: Vec<Poly<Q>>,
    scale: Vec<Poly<Q>>,
    dens: Vec<Vec<Poly<Q>>>,
    ideal: &'a PolyIdeal<Q>,
    memo: HashMap<(u64, u64), Poly<Q>>,
}

impl<'a> MinorTable<'a> {
    pub fn new(m: &FracMatrix, ideal: &'a PolyIdeal<Q>) -> MinorTable<'a> {
        assert!(m.rows <= 64 && m.cols <= 64, "matrix too large for bit masks");
        let ord = MonoOrder::DegRevLex;
        let mut scale = Vec::with_capacity(m.cols);
        let mut all_dens = Vec::with_capacity(m.cols);
        let mut entries = vec![Poly::zero(ord); m.rows * m.cols];
        for c in 0..m.cols {
            let mut dens: Vec<Poly<Q>> = Vec::new();
            for r in 0..m.rows {
                let d = m.get(r, c).den();
                if !d.is_constant() && !dens.contains(d) {
                    dens.push(d.clone());
                }
            }
            let d = dens.iter().fold(Poly::one(ord), |acc, x| acc.mul(x));
            for r in 0..m.rows {
                let e = m.get(r, c);
                let k = d.div_exact(e.den()).expect("denominator divides the column product");
                entries[r * m.cols + c] = ideal.normal_form(&e.num().mul(&k));
            }
            scale.push(d);
            all_dens.push(dens);
        }
        MinorTable { cols: m.cols, entries, scale, dens: all_dens, ideal, memo: HashMap::new() }
    }

    /// Determinant of the scaled submatrix.
    pub fn poly_minor(&mut self, rows: u64, cols: u64) -> Poly<Q> {
        debug_assert_eq!(rows.count_ones(), cols.count_ones());
        if rows == 0 {
            return Poly::one(MonoOrder::DegRevLex);
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Poly::zero(MonoOrder::DegRevLex);
        let mut pos = 0;
        let mut cs = cols;
        while cs != 0 {
            let c = cs.trailing_zeros() as usize;
            cs &= cs - 1;
            let e = self.entries[r * self.cols + c].clone();
            if !e.is_zero() {
                let sub = self.poly_minor(rest, cols & !(1 << c));
                if !sub.is_zero() {
                    let t = e.mul(&sub);
                    acc = if pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                }
            }
            pos += 1;
        }
        let acc = if self.ideal.is_zero_ideal() { acc } else { self.ideal.normal_form(&acc) };
        self.memo.insert((rows, cols), acc.clone());
        acc
    }

    /// Determinant of the submatrix as a reduced fraction.
    pub fn minor(&mut self, rows: u64, cols: u64) -> FracElem<Q> {
        let p = self.poly_minor(rows, cols);
        let mut d = Poly::one(MonoOrder::DegRevLex);
        let mut factors: Vec<&Poly<Q>> = Vec::new();
        let mut cs = cols;
        while cs != 0 {
            let c = cs.trailing_zeros() as usize;
            cs &= cs - 1;
            d = d.mul(&self.scale[c]);
            for x in &self.dens[c] {
                if !factors.contains(&x) {
                    factors.push(x);
                }
            }
        }
        let mut f = FracElem::new(p, d);
        for x in factors {
            f = f.cancel_factor(x);
        }
        f.reduce(self.ideal).unwrap_or(f)
    }
}
