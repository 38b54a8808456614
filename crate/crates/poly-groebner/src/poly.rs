use std::cmp::Ordering;

use crate::coeff::{Coeff, Q};
use crate::mono::{Mono, MonoOrder, MAX_VARS};

/// Polynomial with terms sorted strictly descending in its monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C: Coeff> {
    terms: Vec<(Mono, C)>,
    ord: MonoOrder,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(ord: MonoOrder) -> Self {
        Poly { terms: Vec::new(), ord }
    }

    pub fn constant(c: C, ord: MonoOrder) -> Self {
        Poly::monomial(Mono::ONE, c, ord)
    }

    pub fn one(ord: MonoOrder) -> Self {
        Poly::constant(C::one(), ord)
    }

    pub fn from_i64(v: i64, ord: MonoOrder) -> Self {
        Poly::constant(C::from_i64(v), ord)
    }

    pub fn var(i: usize, ord: MonoOrder) -> Self {
        assert!(i < MAX_VARS, "variable index out of range");
        Poly::monomial(Mono::var(i), C::one(), ord)
    }

    pub fn monomial(m: Mono, c: C, ord: MonoOrder) -> Self {
        if c.is_zero() {
            Poly::zero(ord)
        } else {
            Poly { terms: vec![(m, c)], ord }
        }
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(mut terms: Vec<(Mono, C)>, ord: MonoOrder) -> Self {
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, ord));
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out, ord }
    }

    /// Wraps terms already sorted descending, combined and nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Mono, C)>, ord: MonoOrder) -> Self {
        Poly { terms, ord }
    }

    pub fn order(&self) -> MonoOrder {
        self.ord
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant term value, if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &C {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u8 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Bit mask of the variables that occur.
    pub fn variables(&self) -> u64 {
        let mut mask = 0u64;
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    /// Re-sorts the terms for another order.
    pub fn with_order(&self, ord: MonoOrder) -> Self {
        if ord == self.ord {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, ord));
        Poly { terms, ord }
    }

    fn merge(&self, other: &Self, scale: &C, shift: &Mono) -> Self {
        // self + scale * shift * other
        let ord = self.ord;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = shift.mul(&b[j].0);
            if i == a.len() {
                out.push((bm, scale.mul(&b[j].1)));
                j += 1;
                continue;
            }
            match a[i].0.cmp_in(&bm, ord) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, scale.mul(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&scale.mul(&b[j].1));
                    if !c.is_zero() {
                        out.push((bm, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out, ord }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &Self, c: &C, m: &Mono) -> Self {
        debug_assert_eq!(self.ord, other.ord);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        self.merge(other, c, m)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &C::one(), &Mono::ONE)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &C::one().neg(), &Mono::ONE)
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(), ord: self.ord }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(self.ord);
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).collect(), ord: self.ord }
    }

    pub fn mul_term(&self, m: &Mono, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(self.ord);
        }
        Poly { terms: self.terms.iter().map(|(x, y)| (m.mul(x), y.mul(c))).collect(), ord: self.ord }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero(self.ord);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(big, c, m);
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one(self.ord);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Canonical scalar multiple: integer primitive over Q, monic over GF(p).
    pub fn normalized(&self) -> Self {
        let mut p = self.clone();
        C::normalize_terms(&mut p.terms);
        p
    }

    /// Coefficients of powers of `v`: entry k is the coefficient of `v^k`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Mono, C)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            parts[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        parts.into_iter().map(|t| Poly::from_terms(t, self.ord)).collect()
    }

    /// Substitutes the polynomial `q` for variable `v`.
    pub fn substitute(&self, v: usize, q: &Self) -> Self {
        let coeffs = self.coefficients_in(v);
        // Horner in v
        let mut acc = Poly::zero(self.ord);
        for c in coeffs.iter().rev() {
            acc = acc.mul(q).add(c);
        }
        acc
    }

    /// Substitutes constants for some variables.
    pub fn evaluate_partial(&self, values: &[Option<C>]) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut e = [0u8; MAX_VARS];
            for (i, &x) in m.exponents().iter().enumerate() {
                match values.get(i).and_then(|v| v.as_ref()) {
                    Some(val) if x > 0 => {
                        for _ in 0..x {
                            c = c.mul(val);
                        }
                    }
                    _ => e[i] = x,
                }
            }
            terms.push((Mono::from_exponents(&e), c));
        }
        Poly::from_terms(terms, self.ord)
    }

    /// Full evaluation.
    pub fn evaluate(&self, values: &[C]) -> C {
        let vals: Vec<Option<C>> = values.iter().cloned().map(Some).collect();
        self.evaluate_partial(&vals).constant_value().expect("all variables assigned")
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Option<D>) -> Option<Poly<D>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((*m, d));
            }
        }
        Some(Poly { terms, ord: self.ord })
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let lc_inv = d.lc().inv();
        while !rem.is_zero() {
            if !d.lm().divides(rem.lm()) {
                return None;
            }
            let m = d.lm().quotient_of(rem.lm());
            let c = rem.lc().mul(&lc_inv);
            rem = rem.add_scaled(d, &c.neg(), &m);
            quot.push((m, c));
        }
        Some(Poly { terms: quot, ord: self.ord })
    }
}

impl Poly<Q> {
    /// Integer coefficients with content one and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        self.normalized()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Reduction modulo the prime of `D`; `None` if a denominator vanishes.
    pub fn reduce_mod<D: Coeff>(&self) -> Option<Poly<D>> {
        self.map_coeffs(|c| D::from_rational(c))
    }
}
