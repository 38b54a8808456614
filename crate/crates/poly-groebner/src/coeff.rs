use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mono::Mono;

/// Rational coefficients.
pub type Q = BigRational;

/// Coefficient field of a polynomial ring.
pub trait Coeff: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `None` when the denominator vanishes in this field.
    fn from_rational(v: &BigRational) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn characteristic() -> u32;
    /// Sign and magnitude for printing.
    fn is_negative(&self) -> bool;
    fn abs_text(&self) -> String;
    /// Canonical scaling of a nonzero polynomial: monic by default.
    fn normalize_terms(terms: &mut [(Mono, Self)]) {
        if let Some((_, lc)) = terms.first() {
            let inv = lc.inv();
            for (_, c) in terms.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn characteristic() -> u32 {
        0
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    /// Integer coefficients, content one, positive leading coefficient.
    fn normalize_terms(terms: &mut [(Mono, Self)]) {
        if terms.is_empty() {
            return;
        }
        let mut l = BigInt::one();
        for (_, c) in terms.iter() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in terms.iter() {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        let mut s = BigRational::new(l, g);
        if Signed::is_negative(&terms[0].1) {
            s = -s;
        }
        for (_, c) in terms.iter_mut() {
            *c = &*c * &s;
        }
    }
    fn abs_text(&self) -> String {
        let a = self.abs();
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Residues modulo the prime `P`, stored in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u32>(pub u32);

impl<const P: u32> Fp<P> {
    pub fn value(&self) -> u32 {
        self.0
    }
}

impl<const P: u32> Coeff for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }
    fn from_rational(v: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let n = v.numer().mod_floor(&p).to_u32()?;
        let d = v.denom().mod_floor(&p).to_u32()?;
        if d == 0 {
            return None;
        }
        Some(Fp(n).mul(&Fp(d).inv()))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat
        let mut acc = 1u64;
        let mut b = self.0 as u64;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P as u64;
            }
            b = b * b % P as u64;
            e >>= 1;
        }
        Fp(acc as u32)
    }
    fn characteristic() -> u32 {
        P
    }
    fn is_negative(&self) -> bool {
        false
    }
    fn abs_text(&self) -> String {
        self.0.to_string()
    }
}

/// Primes with a monomorphized coefficient type.
pub const DISPATCH_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Runs a generic closure body with `$C` bound to the coefficient type of
/// characteristic `$p` (0 for the rationals). Evaluates to `None` for
/// unsupported characteristics.
#[macro_export]
macro_rules! with_char {
    ($p:expr, $C:ident => $body:expr) => {{
        match $p {
            0 => { type $C = $crate::Q; Some($body) }
            2 => { type $C = $crate::Fp<2>; Some($body) }
            3 => { type $C = $crate::Fp<3>; Some($body) }
            5 => { type $C = $crate::Fp<5>; Some($body) }
            7 => { type $C = $crate::Fp<7>; Some($body) }
            11 => { type $C = $crate::Fp<11>; Some($body) }
            13 => { type $C = $crate::Fp<13>; Some($body) }
            _ => None,
        }
    }};
}
