use std::fmt;

use crate::coeff::Coeff;
use crate::groebner::PolyIdeal;
use crate::mono::MonoOrder;
use crate::poly::Poly;
use crate::text::format_poly;

/// Element of the fraction field `num / den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracElem<C: Coeff> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Coeff> FracElem<C> {
    /// Panics if `den` is zero.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        FracElem { num, den }.normalize()
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        let ord = p.order();
        FracElem { num: p, den: Poly::one(ord) }
    }

    pub fn constant(c: C, ord: MonoOrder) -> Self {
        FracElem::from_poly(Poly::constant(c, ord))
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn order(&self) -> MonoOrder {
        self.num.order()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Cancels an exact quotient, moves constants into the numerator and
    /// normalizes the denominator.
    pub fn normalize(self) -> Self {
        let FracElem { mut num, mut den } = self;
        let ord = num.order();
        if num.is_zero() {
            return FracElem { num, den: Poly::one(ord) };
        }
        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = Poly::one(ord);
            }
        }
        // scale so the denominator is in canonical form
        let canon = den.normalized();
        let factor = canon.lc().mul(&den.lc().inv());
        num = num.scale(&factor);
        den = canon;
        if den.is_constant() {
            let inv = den.lc().inv();
            num = num.scale(&inv);
            den = Poly::one(ord);
        }
        FracElem { num, den }
    }

    /// Divides out `f` from numerator and denominator as often as possible.
    pub fn cancel_factor(self, f: &Poly<C>) -> Self {
        if f.is_constant() {
            return self;
        }
        let FracElem { mut num, mut den } = self;
        loop {
            match (num.div_exact(f), den.div_exact(f)) {
                (Some(a), Some(b)) if !num.is_zero() => {
                    num = a;
                    den = b;
                }
                _ => break,
            }
        }
        FracElem { num, den }.normalize()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return FracElem { num: self.num.add(&o.num), den: self.den.clone() }.normalize();
        }
        FracElem { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }.normalize()
    }

    pub fn neg(&self) -> Self {
        FracElem { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        FracElem { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalize()
    }

    /// `None` when `o` is zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        Some(FracElem { num: self.num.mul(&o.den), den: self.den.mul(&o.num) }.normalize())
    }

    pub fn inv(&self) -> Option<Self> {
        FracElem::from_poly(Poly::one(self.order())).div(self)
    }

    pub fn pow(&self, k: i32) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Some(FracElem { num: base.num.pow(e), den: base.den.pow(e) }.normalize())
    }

    /// Substitutes `value` for variable `v`.
    pub fn substitute(&self, v: usize, value: &FracElem<C>) -> Self {
        let n = substitute_poly(&self.num, v, value);
        let d = substitute_poly(&self.den, v, value);
        n.div(&d).expect("denominator stays nonzero under substitution")
    }

    /// Normal forms of numerator and denominator modulo `ideal`; `None` if
    /// the denominator reduces to zero.
    pub fn reduce(&self, ideal: &PolyIdeal<C>) -> Option<Self> {
        let d = ideal.normal_form(&self.den);
        if d.is_zero() {
            return None;
        }
        Some(FracElem { num: ideal.normal_form(&self.num), den: d }.normalize())
    }

    /// `self == o` in the fraction field of the quotient by `ideal`.
    pub fn equal_mod(&self, o: &Self, ideal: &PolyIdeal<C>) -> bool {
        ideal.contains(&self.num.mul(&o.den).sub(&o.num.mul(&self.den)))
    }

    /// Value at a point; `None` if the denominator vanishes there.
    pub fn evaluate(&self, values: &[C]) -> Option<C> {
        let d = self.den.evaluate(values);
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(values).mul(&d.inv()))
    }

    pub fn with_order(&self, ord: MonoOrder) -> Self {
        FracElem { num: self.num.with_order(ord), den: self.den.with_order(ord) }
    }

    pub fn to_text(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return format_poly(&self.num, names);
        }
        let wrap = |p: &Poly<C>| {
            let s = format_poly(p, names);
            if p.len() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// `p(v = value)` as a fraction.
pub fn substitute_poly<C: Coeff>(p: &Poly<C>, v: usize, value: &FracElem<C>) -> FracElem<C> {
    let coeffs = p.coefficients_in(v);
    let k = coeffs.len() - 1;
    // sum c_i * n^i * d^(k-i) over d^k
    let mut num = Poly::zero(p.order());
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        num = num.add(&c.mul(&value.num.pow(i as u32)).mul(&value.den.pow((k - i) as u32)));
    }
    FracElem { num, den: value.den.pow(k as u32) }.normalize()
}

impl<C: Coeff> fmt::Display for FracElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::text::var_names(crate::MAX_VARS);
        write!(f, "{}", self.to_text(&names))
    }
}
