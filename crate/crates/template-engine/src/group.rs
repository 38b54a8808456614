use exact_algebra::{FieldSpec, Scalar};

use crate::TemplateError;

/// A multiplicative subgroup of GF(q)^x, stored as its element list
/// (powers of the generator, starting at 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    field: FieldSpec,
    elements: Vec<Scalar>,
}

impl Gamma {
    pub fn generated_by(field: FieldSpec, g: &Scalar) -> Result<Gamma, TemplateError> {
        if !field.is_finite() {
            return Err(TemplateError::NotFinite);
        }
        if field.is_zero(g) {
            return Err(TemplateError::Invalid("Γ generator is zero".into()));
        }
        let mut elements = vec![field.one()];
        let mut x = g.clone();
        while !field.is_one(&x) {
            elements.push(x.clone());
            x = field.mul(&x, g);
        }
        Ok(Gamma { field, elements })
    }

    pub fn trivial(field: FieldSpec) -> Gamma {
        Gamma { field, elements: vec![field.one()] }
    }

    pub fn elements(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The generator (`1` for the trivial group).
    pub fn generator(&self) -> Scalar {
        self.elements.get(1).cloned().unwrap_or_else(|| self.field.one())
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Gamma) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }
}

/// A subgroup of the additive group of GF(q)^n that is closed under
/// scaling by a [`Gamma`]. Kept as a reduced echelon basis over the prime
/// field, so equal groups have equal bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddGroup {
    field: FieldSpec,
    len: usize,
    basis: Vec<Vec<u8>>,
}

impl AddGroup {
    pub fn trivial(field: FieldSpec, len: usize) -> AddGroup {
        AddGroup { field, len, basis: Vec::new() }
    }

    /// Smallest Γ-closed subgroup containing `gens`.
    pub fn span(field: FieldSpec, len: usize, gens: &[Vec<Scalar>], gamma: &Gamma) -> Result<AddGroup, TemplateError> {
        if !field.is_finite() {
            return Err(TemplateError::NotFinite);
        }
        let mut g = AddGroup::trivial(field, len);
        for v in gens {
            if v.len() != len {
                return Err(TemplateError::Shape(format!("group vector of length {} where {len} expected", v.len())));
            }
            for s in gamma.elements() {
                let w: Vec<Scalar> = v.iter().map(|x| field.mul(s, x)).collect();
                g.insert(&w);
            }
        }
        Ok(g)
    }

    /// Every vector of GF(q)^n.
    pub fn full(field: FieldSpec, len: usize) -> AddGroup {
        let mut g = AddGroup::trivial(field, len);
        let k = field.degree();
        for i in 0..len * k {
            let mut d = vec![0u8; len * k];
            d[i] = 1;
            g.insert_digits(d);
        }
        g
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Dimension over the prime field.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn order(&self) -> usize {
        (self.field.characteristic() as usize).pow(self.dim() as u32)
    }

    fn p(&self) -> u8 {
        self.field.characteristic() as u8
    }

    fn to_digits(&self, v: &[Scalar]) -> Vec<u8> {
        let (p, k) = (self.p(), self.field.degree());
        let mut out = Vec::with_capacity(v.len() * k);
        for x in v {
            let mut i = x.as_gf().expect("finite field scalar");
            for _ in 0..k {
                out.push(i % p);
                i /= p;
            }
        }
        out
    }

    fn from_digits(&self, d: &[u8]) -> Vec<Scalar> {
        let (p, k) = (self.p(), self.field.degree());
        d.chunks(k).map(|c| Scalar::Gf(c.iter().rev().fold(0u8, |acc, &x| acc * p + x))).collect()
    }

    fn reduce(&self, d: &mut [u8]) {
        let p = self.p() as u32;
        for b in &self.basis {
            let piv = b.iter().position(|&x| x != 0).expect("basis vectors are nonzero");
            let c = d[piv] as u32;
            if c != 0 {
                for (x, y) in d.iter_mut().zip(b) {
                    *x = ((*x as u32 + (p - c) * *y as u32) % p) as u8;
                }
            }
        }
    }

    fn insert_digits(&mut self, mut d: Vec<u8>) -> bool {
        let p = self.p() as u32;
        self.reduce(&mut d);
        let Some(piv) = d.iter().position(|&x| x != 0) else { return false };
        let inv = (1..p).find(|i| i * d[piv] as u32 % p == 1).expect("prime modulus");
        for x in d.iter_mut() {
            *x = (*x as u32 * inv % p) as u8;
        }
        for b in self.basis.iter_mut() {
            let c = b[piv] as u32;
            if c != 0 {
                for (x, y) in b.iter_mut().zip(&d) {
                    *x = ((*x as u32 + (p - c) * *y as u32) % p) as u8;
                }
            }
        }
        self.basis.push(d);
        self.basis.sort_by_key(|b| b.iter().position(|&x| x != 0));
        true
    }

    /// Adds `v` to the generating set (no Γ-closure).
    fn insert(&mut self, v: &[Scalar]) -> bool {
        let d = self.to_digits(v);
        self.insert_digits(d)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.len {
            return false;
        }
        let mut d = self.to_digits(v);
        self.reduce(&mut d);
        d.iter().all(|&x| x == 0)
    }

    /// Basis over the prime field, as field vectors.
    pub fn generators(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|b| self.from_digits(b)).collect()
    }

    /// All `order()` elements, zero first.
    pub fn elements(&self) -> Vec<Vec<Scalar>> {
        let p = self.p() as u32;
        let dl = self.len * self.field.degree();
        let mut out = Vec::with_capacity(self.order());
        let mut coef = vec![0u32; self.dim()];
        loop {
            let mut d = vec![0u32; dl];
            for (c, b) in coef.iter().zip(&self.basis) {
                for (x, y) in d.iter_mut().zip(b) {
                    *x = (*x + c * *y as u32) % p;
                }
            }
            let d: Vec<u8> = d.into_iter().map(|x| x as u8).collect();
            out.push(self.from_digits(&d));
            let mut i = 0;
            while i < coef.len() {
                coef[i] += 1;
                if coef[i] < p {
                    break;
                }
                coef[i] = 0;
                i += 1;
            }
            if i == coef.len() {
                break;
            }
        }
        out
    }

    pub fn is_subgroup_of(&self, other: &AddGroup) -> bool {
        self.len == other.len && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn is_closed_under(&self, gamma: &Gamma) -> bool {
        self.generators()
            .iter()
            .all(|g| gamma.elements().iter().all(|s| self.contains(&g.iter().map(|x| self.field.mul(s, x)).collect::<Vec<_>>())))
    }

    /// Image under an additive map given on vectors.
    pub fn map(&self, len: usize, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> AddGroup {
        let mut g = AddGroup::trivial(self.field, len);
        for v in self.generators() {
            g.insert(&f(&v));
        }
        g
    }

    /// Restriction to the listed coordinates.
    pub fn project(&self, keep: &[usize]) -> AddGroup {
        self.map(keep.len(), |v| keep.iter().map(|&i| v[i].clone()).collect())
    }

    /// True iff coordinate `i` vanishes on the whole group.
    pub fn vanishes_at(&self, i: usize) -> bool {
        self.generators().iter().all(|g| self.field.is_zero(&g[i]))
    }
}
