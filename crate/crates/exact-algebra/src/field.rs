use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::AlgebraError;

/// Orders of the finite fields we carry arithmetic tables for.
pub const SUPPORTED_ORDERS: [u8; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

/// A coefficient field: GF(q) for a small prime power q, or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Gf(u8),
    Rational,
}

/// One field element. Finite-field values are indices `0..q`; for extension
/// fields the index encodes the coefficient vector in base p, so in GF(4)
/// `2` is the generator `a` and `3` is `a + 1 = a^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Gf(u8),
    Rat(BigRational),
}

pub(crate) struct GfTables {
    pub q: usize,
    pub p: u8,
    pub modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `log[x]` for nonzero x, with respect to the generator (index `p` for
    /// extension fields, a primitive root for prime fields).
    log: Vec<u8>,
    exp: Vec<u8>,
}

fn prime_and_degree(q: u8) -> (u8, usize) {
    match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        _ => (q, 1),
    }
}

// Conway polynomials, low coefficient first.
fn conway(q: u8) -> Vec<u8> {
    match q {
        4 => vec![1, 1, 1],
        8 => vec![1, 1, 0, 1],
        9 => vec![2, 2, 1],
        _ => vec![0, 1],
    }
}

impl GfTables {
    fn build(q: u8) -> GfTables {
        let (p, k) = prime_and_degree(q);
        let qs = q as usize;
        let to_vec = |x: usize| -> Vec<u8> {
            let mut v = vec![0u8; k];
            let mut x = x;
            for c in v.iter_mut() {
                *c = (x % p as usize) as u8;
                x /= p as usize;
            }
            v
        };
        let from_vec = |v: &[u8]| -> usize {
            v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };
        let modulus = if k == 1 { vec![0, 1] } else { conway(q) };
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let va = to_vec(a);
            for b in 0..qs {
                let vb = to_vec(b);
                let s: Vec<u8> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = from_vec(&s) as u8;
                let mut prod = vec![0u32; 2 * k];
                for (i, x) in va.iter().enumerate() {
                    for (j, y) in vb.iter().enumerate() {
                        prod[i + j] += *x as u32 * *y as u32;
                    }
                }
                for d in (k..2 * k).rev() {
                    let c = prod[d] % p as u32;
                    if c != 0 {
                        for (i, m) in modulus.iter().enumerate().take(k) {
                            let sub = c * *m as u32 % p as u32;
                            prod[d - k + i] = (prod[d - k + i] + p as u32 - sub) % p as u32;
                        }
                    }
                    prod[d] = 0;
                }
                let r: Vec<u8> = prod[..k].iter().map(|c| (c % p as u32) as u8).collect();
                mul[a * qs + b] = from_vec(&r) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        // primitive element: the generator for extensions, least primitive root otherwise
        let order_of = |g: usize| -> usize {
            let mut x = g;
            let mut n = 1;
            while x != 1 {
                x = mul[x * qs + g] as usize;
                n += 1;
                if n > qs {
                    return 0;
                }
            }
            n
        };
        let gen = if k > 1 {
            p as usize
        } else {
            (1..qs).find(|&g| order_of(g) == qs - 1).unwrap_or(1)
        };
        let mut exp = vec![0u8; qs - 1];
        let mut log = vec![0u8; qs];
        let mut x = 1usize;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = x as u8;
            log[x] = i as u8;
            x = mul[x * qs + gen] as usize;
        }
        GfTables { q: qs, p, modulus, add, mul, neg, inv, log, exp }
    }
}

static TABLES: [OnceLock<GfTables>; 14] = [const { OnceLock::new() }; 14];

pub(crate) fn tables(q: u8) -> &'static GfTables {
    TABLES[q as usize].get_or_init(|| GfTables::build(q))
}

impl FieldSpec {
    /// The field of the given order; `0` means the rationals.
    pub fn make(order: u32) -> Result<FieldSpec, AlgebraError> {
        if order == 0 {
            return Ok(FieldSpec::Rational);
        }
        match u8::try_from(order) {
            Ok(q) if SUPPORTED_ORDERS.contains(&q) => Ok(FieldSpec::Gf(q)),
            _ => Err(AlgebraError::UnsupportedField(order.to_string())),
        }
    }

    /// Parses `4`, `GF(4)`, `GF4`, `Q`, `QQ`, `rational`.
    pub fn parse(s: &str) -> Result<FieldSpec, AlgebraError> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "q" | "qq" | "rational" | "rationals" | "0") {
            return Ok(FieldSpec::Rational);
        }
        let digits = lower
            .trim_start_matches("gf")
            .trim_start_matches('(')
            .trim_end_matches(')');
        match digits.parse::<u32>() {
            Ok(q) if q > 0 => FieldSpec::make(q),
            _ => Err(AlgebraError::UnsupportedField(t.to_string())),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            FieldSpec::Gf(q) => Some(*q as usize),
            FieldSpec::Rational => None,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Gf(q) => prime_and_degree(*q).0 as u32,
            FieldSpec::Rational => 0,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Gf(q) => prime_and_degree(*q).1,
            FieldSpec::Rational => 1,
        }
    }

    /// Monic defining polynomial over the prime field, low coefficient first.
    /// Prime fields and the rationals report `x`.
    pub fn generator_polynomial(&self) -> Vec<u8> {
        match self {
            FieldSpec::Gf(q) => tables(*q).modulus.clone(),
            FieldSpec::Rational => vec![0, 1],
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Gf(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Gf(_) => Scalar::Gf(0),
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Gf(_) => Scalar::Gf(1),
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    /// The element `a` generating the field over its prime field (`1` for prime fields).
    pub fn generator(&self) -> Scalar {
        match self {
            FieldSpec::Gf(q) => {
                let t = tables(*q);
                if t.q == t.p as usize {
                    Scalar::Gf(1)
                } else {
                    Scalar::Gf(t.p)
                }
            }
            FieldSpec::Rational => self.one(),
        }
    }

    /// Multiplicative generator of the field (finite fields only).
    pub fn primitive_element(&self) -> Option<Scalar> {
        match self {
            FieldSpec::Gf(q) => Some(Scalar::Gf(tables(*q).exp.get(1).copied().unwrap_or(1))),
            FieldSpec::Rational => None,
        }
    }

    /// All elements in index order (finite fields only).
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            FieldSpec::Gf(q) => (0..*q).map(Scalar::Gf).collect(),
            FieldSpec::Rational => Vec::new(),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Gf(q) => {
                let p = tables(*q).p as i64;
                Scalar::Gf(v.rem_euclid(p) as u8)
            }
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar, AlgebraError> {
        match self {
            FieldSpec::Rational => Ok(Scalar::Rat(v.clone())),
            FieldSpec::Gf(q) => {
                let p = BigInt::from(tables(*q).p);
                let n = reduce_mod(v.numer(), &p);
                let d = reduce_mod(v.denom(), &p);
                if d == 0 {
                    return Err(AlgebraError::DivisionByZero);
                }
                let n = self.from_i64(n);
                let d = self.from_i64(d);
                self.div(&n, &d)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Gf(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Gf(x) => *x == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Gf(q), Scalar::Gf(x), Scalar::Gf(y)) => {
                let t = tables(*q);
                Scalar::Gf(t.add[*x as usize * t.q + *y as usize])
            }
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Gf(q), Scalar::Gf(x)) => Scalar::Gf(tables(*q).neg[*x as usize]),
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Gf(q), Scalar::Gf(x), Scalar::Gf(y)) => {
                let t = tables(*q);
                Scalar::Gf(t.mul[*x as usize * t.q + *y as usize])
            }
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldSpec::Gf(q), Scalar::Gf(x)) => Scalar::Gf(tables(*q).inv[*x as usize]),
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius map x -> x^p.
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        match self {
            FieldSpec::Gf(_) => self.pow(a, self.characteristic() as u64),
            FieldSpec::Rational => a.clone(),
        }
    }

    /// Discrete log with respect to the primitive element.
    pub fn log(&self, a: &Scalar) -> Option<usize> {
        match (self, a) {
            (FieldSpec::Gf(q), Scalar::Gf(x)) if *x != 0 => Some(tables(*q).log[*x as usize] as usize),
            _ => None,
        }
    }

    /// Renders a scalar with the matrix text alphabet.
    pub fn format(&self, a: &Scalar) -> String {
        match (self, a) {
            (FieldSpec::Gf(q), Scalar::Gf(x)) => {
                let t = tables(*q);
                if t.q == t.p as usize || *x <= 1 {
                    return x.to_string();
                }
                // extension field: express as a power of the generator a
                let g = t.p as usize;
                let mut y = 1usize;
                for k in 0..t.q {
                    if y == *x as usize {
                        return if k == 1 { "a".into() } else { format!("a^{k}") };
                    }
                    y = t.mul[y * t.q + g] as usize;
                }
                unreachable!("generator of an extension field is primitive")
            }
            (FieldSpec::Rational, Scalar::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Parses one token: integers (possibly negative), `p/q`, and for
    /// extension fields `a`, `a^k`, `w`, `w+1`, `a+1`, `a^2+1`-style sums.
    pub fn parse_scalar(&self, tok: &str) -> Result<Scalar, AlgebraError> {
        let t: String = tok.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgebraError::Parse(format!("bad scalar `{tok}` for {self}"));
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return self.from_rational(&BigRational::new(n, d)).map_err(|_| bad());
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return self.from_rational(&BigRational::from_integer(n)).map_err(|_| bad());
        }
        if !matches!(self, FieldSpec::Gf(q) if tables(*q).q != tables(*q).p as usize) {
            return Err(bad());
        }
        // sum of signed terms in the generator
        let mut acc = self.zero();
        let mut rest = t.as_str();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            let val = if let Ok(n) = term.parse::<i64>() {
                self.from_i64(n)
            } else {
                let base = term.chars().next().ok_or_else(bad)?;
                if !matches!(base, 'a' | 'w' | 'α' | 'ω') {
                    return Err(bad());
                }
                let exp_part = &term[base.len_utf8()..];
                let e = if exp_part.is_empty() {
                    1
                } else {
                    exp_part.strip_prefix('^').ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())?
                };
                self.pow(&self.generator(), e)
            };
            let val = if sign < 0 { self.neg(&val) } else { val };
            acc = self.add(&acc, &val);
            if end == rest.len() {
                break;
            }
            sign = if &rest[end..end + 1] == "-" { -1 } else { 1 };
            rest = &rest[end + 1..];
        }
        Ok(acc)
    }
}

fn reduce_mod(v: &BigInt, p: &BigInt) -> i64 {
    let r = ((v % p) + p) % p;
    i64::try_from(r).expect("residue fits")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf(q) => write!(f, "GF({q})"),
            FieldSpec::Rational => write!(f, "QQ"),
        }
    }
}

impl Scalar {
    pub fn as_gf(&self) -> Option<u8> {
        match self {
            Scalar::Gf(x) => Some(*x),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Gf(_) => None,
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}
