use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use poly_groebner::{normal_form, FracElem, Poly, Q};

use crate::presentation::Presentation;

fn qi(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Outcome of a membership query. Exponents are indexed like the
/// presentation's generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Zero,
    Member(Vec<i64>),
    NonMember(String),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::NonMember(_))
    }
}

/// Decides `x in G u {0}` for a fixed presentation.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    pres: Presentation,
    minus: Option<usize>,
    mode: Mode,
}

#[derive(Clone, Debug)]
enum Mode {
    Lattice(Lattice),
    Golden(Golden),
    Search,
}

impl MembershipOracle {
    pub fn new(pres: &Presentation) -> MembershipOracle {
        let minus_one = FracElem::constant(qi(-1), pres.ideal().order());
        let minus = pres.generators().iter().position(|g| g == &minus_one);
        let mode = if pres.ideal().is_zero_ideal() {
            Mode::Lattice(Lattice::new(pres.generators(), minus))
        } else {
            match Golden::new(pres, minus) {
                Some(g) => Mode::Golden(g),
                None => Mode::Search,
            }
        };
        MembershipOracle { pres: pres.clone(), minus, mode }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// Name of the decision procedure in use.
    pub fn method(&self) -> &'static str {
        match self.mode {
            Mode::Lattice(_) => "lattice",
            Mode::Golden(_) => "golden-norm",
            Mode::Search => "bounded-search",
        }
    }

    pub fn test(&self, x: &FracElem<Q>) -> Membership {
        let ideal = self.pres.ideal();
        let Some(x) = x.reduce(ideal) else {
            return Membership::NonMember("denominator vanishes".into());
        };
        if x.is_zero() {
            return Membership::Zero;
        }
        let found = match &self.mode {
            Mode::Lattice(l) => l.solve(&x),
            Mode::Golden(g) => g.solve(&x),
            Mode::Search => self.search(&x),
        };
        let (mut exps, sign_flip) = match found {
            Ok(v) => v,
            Err(why) => return Membership::NonMember(why),
        };
        if sign_flip {
            match self.minus {
                Some(i) => exps[i] += 1,
                None => return Membership::NonMember("sign not reachable without -1".into()),
            }
        }
        Membership::Member(exps)
    }

    pub fn is_member(&self, x: &FracElem<Q>) -> bool {
        self.test(x).is_member()
    }

    /// `prod g_i^{e_i}`.
    pub fn certificate_value(&self, exps: &[i64]) -> FracElem<Q> {
        let ord = self.pres.ideal().order();
        let mut acc = FracElem::constant(qi(1), ord);
        for (g, &e) in self.pres.generators().iter().zip(exps) {
            if e != 0 {
                acc = acc.mul(&g.pow(e as i32).expect("generators are nonzero"));
            }
        }
        acc.reduce(self.pres.ideal()).unwrap_or(acc)
    }

    /// Small exponent vectors, for rings without a structural test.
    fn search(&self, x: &FracElem<Q>) -> Result<(Vec<i64>, bool), String> {
        const BOUND: i64 = 3;
        let gens = self.pres.generators();
        let ideal = self.pres.ideal();
        let idx: Vec<usize> = (0..gens.len()).filter(|&i| Some(i) != self.minus).collect();
        let mut exps = vec![0i64; gens.len()];
        fn rec(
            k: usize,
            budget: i64,
            idx: &[usize],
            exps: &mut Vec<i64>,
            o: &MembershipOracle,
            x: &FracElem<Q>,
            ideal: &poly_groebner::PolyIdeal<Q>,
        ) -> Option<bool> {
            if k == idx.len() {
                let v = o.certificate_value(exps);
                if v.equal_mod(x, ideal) {
                    return Some(false);
                }
                if v.neg().equal_mod(x, ideal) {
                    return Some(true);
                }
                return None;
            }
            for e in -budget..=budget {
                exps[idx[k]] = e;
                if let Some(s) = rec(k + 1, budget - e.abs(), idx, exps, o, x, ideal) {
                    return Some(s);
                }
            }
            exps[idx[k]] = 0;
            None
        }
        match rec(0, BOUND, &idx, &mut exps, self, x, ideal) {
            Some(flip) => Ok((exps, flip)),
            None => Err(format!("no product of generators with total exponent at most {BOUND}")),
        }
    }
}

/// Unique-factorization setting: generators split into pairwise non-dividing
/// polynomial atoms and rational primes; membership is integer lattice
/// membership of the exponent vector.
#[derive(Clone, Debug)]
struct Lattice {
    atoms: Vec<Poly<Q>>,
    primes: Vec<BigInt>,
    ngens: usize,
    /// echelon rows: (vector, combination over generators, pivot column)
    rows: Vec<(Vec<i128>, Vec<i128>, usize)>,
    gen_negative: Vec<bool>,
}

fn is_univariate(p: &Poly<Q>) -> Option<usize> {
    let m = p.variables();
    (m.count_ones() == 1).then(|| m.trailing_zeros() as usize)
}

fn uni_gcd(a: &Poly<Q>, b: &Poly<Q>) -> Poly<Q> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = normal_form(&a, std::slice::from_ref(&b));
        a = b;
        b = r;
    }
    a.normalized()
}

/// Splits polynomials into pairwise non-dividing normalized pieces.
fn refine_atoms(mut s: Vec<Poly<Q>>) -> Vec<Poly<Q>> {
    loop {
        s.retain(|p| !p.is_constant());
        for p in s.iter_mut() {
            *p = p.normalized();
        }
        s.sort_by_key(|p| format!("{p:?}"));
        s.dedup();
        let mut step: Option<(usize, usize, Vec<Poly<Q>>)> = None;
        'outer: for i in 0..s.len() {
            for j in 0..s.len() {
                if i == j {
                    continue;
                }
                if let Some(q) = s[j].div_exact(&s[i]) {
                    step = Some((j, j, vec![q]));
                    break 'outer;
                }
                if let (Some(u), Some(v)) = (is_univariate(&s[i]), is_univariate(&s[j])) {
                    if u == v {
                        let g = uni_gcd(&s[i], &s[j]);
                        if !g.is_constant() {
                            let a = s[i].div_exact(&g).expect("gcd divides");
                            let b = s[j].div_exact(&g).expect("gcd divides");
                            step = Some((i, j, vec![a, b, g]));
                            break 'outer;
                        }
                    }
                }
            }
        }
        match step {
            None => return s,
            Some((i, j, new)) => {
                let (hi, lo) = (i.max(j), i.min(j));
                s.remove(hi);
                if lo != hi {
                    s.remove(lo);
                }
                s.extend(new);
            }
        }
    }
}

fn factor_integer(n: &BigInt, primes: &mut Vec<BigInt>) {
    let mut n = n.abs();
    let mut d = BigInt::from(2);
    while &d * &d <= n && d < BigInt::from(1_000_000) {
        if (&n % &d).is_zero() {
            if !primes.contains(&d) {
                primes.push(d.clone());
            }
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() && !primes.contains(&n) {
        primes.push(n);
    }
}

impl Lattice {
    fn new(gens: &[FracElem<Q>], minus: Option<usize>) -> Lattice {
        let mut polys = Vec::new();
        for g in gens {
            polys.push(g.num().clone());
            polys.push(g.den().clone());
        }
        let atoms = refine_atoms(polys);
        let mut lat = Lattice { atoms, primes: Vec::new(), ngens: gens.len(), rows: Vec::new(), gen_negative: Vec::new() };
        let mut raw = Vec::new();
        for g in gens {
            let (c, v) = lat.split(g).expect("generators factor over their own atoms");
            factor_integer(c.numer(), &mut lat.primes);
            factor_integer(c.denom(), &mut lat.primes);
            raw.push((c, v));
        }
        lat.primes.sort();
        let mut rows: Vec<(Vec<i128>, Vec<i128>)> = Vec::new();
        for (k, (c, v)) in raw.iter().enumerate() {
            lat.gen_negative.push(c.is_negative());
            if Some(k) == minus {
                continue;
            }
            let mut vec = v.clone();
            vec.extend(lat.prime_vector(c).expect("primes collected"));
            let mut comb = vec![0i128; gens.len()];
            comb[k] = 1;
            rows.push((vec, comb));
        }
        lat.rows = echelon(rows);
        lat
    }

    /// Constant factor and atom exponents.
    fn split(&self, x: &FracElem<Q>) -> Option<(Q, Vec<i128>)> {
        let (cn, en) = self.factor(x.num())?;
        let (cd, ed) = self.factor(x.den())?;
        Some((cn / cd, en.iter().zip(&ed).map(|(a, b)| a - b).collect()))
    }

    fn factor(&self, p: &Poly<Q>) -> Option<(Q, Vec<i128>)> {
        let mut rest = p.clone();
        let mut e = vec![0i128; self.atoms.len()];
        for (i, a) in self.atoms.iter().enumerate() {
            while rest.variables() & a.variables() == a.variables() && !rest.is_constant() {
                match rest.div_exact(a) {
                    Some(q) => {
                        rest = q;
                        e[i] += 1;
                    }
                    None => break,
                }
            }
        }
        rest.constant_value().map(|c| (c, e))
    }

    fn prime_vector(&self, c: &Q) -> Option<Vec<i128>> {
        let mut n = c.numer().abs();
        let mut d = c.denom().clone();
        let mut v = vec![0i128; self.primes.len()];
        for (i, p) in self.primes.iter().enumerate() {
            while (&n % p).is_zero() {
                n /= p;
                v[i] += 1;
            }
            while (&d % p).is_zero() {
                d /= p;
                v[i] -= 1;
            }
        }
        (n.is_one() && d.is_one()).then_some(v)
    }

    fn solve(&self, x: &FracElem<Q>) -> Result<(Vec<i64>, bool), String> {
        let (c, mut t) = self.split(x).ok_or("factor outside the generator atoms")?;
        t.extend(self.prime_vector(&c).ok_or("constant has a prime outside the generators")?);
        let mut k = vec![0i128; self.ngens];
        for (row, comb, col) in &self.rows {
            if t[*col] % row[*col] != 0 {
                return Err("exponent vector outside the generator lattice".into());
            }
            let q = t[*col] / row[*col];
            if q != 0 {
                for (a, b) in t.iter_mut().zip(row) {
                    *a -= q * b;
                }
                for (a, b) in k.iter_mut().zip(comb) {
                    *a += q * b;
                }
            }
        }
        if t.iter().any(|&v| v != 0) {
            return Err("exponent vector outside the generator lattice".into());
        }
        let exps: Vec<i64> = k.iter().map(|&v| v as i64).collect();
        let mut neg = c.is_negative();
        for (i, &e) in exps.iter().enumerate() {
            if self.gen_negative[i] && e.rem_euclid(2) == 1 {
                neg = !neg;
            }
        }
        Ok((exps, neg))
    }
}

/// Row echelon form over the integers by gcd reduction, keeping track of
/// row combinations.
fn echelon(mut rows: Vec<(Vec<i128>, Vec<i128>)>) -> Vec<(Vec<i128>, Vec<i128>, usize)> {
    let width = rows.first().map_or(0, |r| r.0.len());
    let mut out = Vec::new();
    for col in 0..width {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].0[col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    let (mut v, mut c) = rows.remove(i);
                    if v[col] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                        c.iter_mut().for_each(|x| *x = -*x);
                    }
                    out.push((v, c, col));
                }
                break;
            }
            let m = *nz.iter().min_by_key(|&&i| rows[i].0[col].abs()).expect("nonempty");
            let (pv, pc) = rows[m].clone();
            for &i in &nz {
                if i == m {
                    continue;
                }
                let q = Integer::div_floor(&rows[i].0[col], &pv[col]);
                for (a, b) in rows[i].0.iter_mut().zip(&pv) {
                    *a -= q * b;
                }
                for (a, b) in rows[i].1.iter_mut().zip(&pc) {
                    *a -= q * b;
                }
            }
        }
    }
    out
}

/// Quotient by a quadratic with discriminant `5 s^2`: the ring embeds in
/// Q(tau) and its units are `+-tau^k`.
#[derive(Clone, Debug)]
struct Golden {
    ideal: poly_groebner::PolyIdeal<Q>,
    var: usize,
    /// image of the variable: p + q tau
    p: Q,
    q: Q,
    /// per generator: tau-exponent and sign
    gens: Vec<(i64, bool)>,
    minus: Option<usize>,
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

fn fib(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..m {
        let t = &a + &b;
        a = b;
        b = t;
    }
    if n < 0 && m % 2 == 0 {
        -a
    } else {
        a
    }
}

impl Golden {
    fn new(pres: &Presentation, minus: Option<usize>) -> Option<Golden> {
        let basis = pres.ideal().basis();
        if basis.len() != 1 {
            return None;
        }
        let m = &basis[0];
        let var = is_univariate(m)?;
        if m.degree_in(var) != 2 {
            return None;
        }
        let cs = m.coefficients_in(var);
        let c = cs[0].constant_value()?;
        let b = cs[1].constant_value()?;
        let a = cs[2].constant_value()?;
        let disc = &b * &b - qi(4) * &a * &c;
        let s = rational_sqrt(&(disc / qi(5)))?;
        if s.is_zero() {
            return None;
        }
        // root (-b + s*sqrt5)/(2a) with sqrt5 = 2 tau - 1
        let two_a = qi(2) * &a;
        let p = (-&b - &s) / &two_a;
        let q = &s / &a;
        let mut g = Golden { ideal: pres.ideal().clone(), var, p, q, gens: Vec::new(), minus };
        for (k, gen) in pres.generators().iter().enumerate() {
            if gen.num().variables() & !(1 << var) != 0 || gen.den().variables() & !(1 << var) != 0 {
                return None;
            }
            let (x, y) = g.image(gen)?;
            let (e, neg) = unit_exponent(&x, &y)?;
            if Some(k) == minus {
                g.gens.push((0, true));
            } else {
                g.gens.push((e, neg));
            }
        }
        Some(g)
    }

    fn image_poly(&self, p: &Poly<Q>) -> Option<(Q, Q)> {
        let r = self.ideal.normal_form(p);
        if r.variables() & !(1 << self.var) != 0 {
            return None;
        }
        let cs = r.coefficients_in(self.var);
        let c0 = cs[0].constant_value()?;
        let c1 = cs.get(1).map_or(Some(Q::zero()), |c| c.constant_value())?;
        Some((c0 + &c1 * &self.p, c1 * &self.q))
    }

    fn image(&self, x: &FracElem<Q>) -> Option<(Q, Q)> {
        let (a, b) = self.image_poly(x.num())?;
        let (c, d) = self.image_poly(x.den())?;
        // (a + b tau)((c + d) - d tau) / N(c + d tau), tau^2 = tau + 1
        let n = &c * &c + &c * &d - &d * &d;
        if n.is_zero() {
            return None;
        }
        let (e, f) = (&c + &d, -d);
        let re = &a * &e + &b * &f;
        let tau = &a * &f + &b * &e + &b * &f;
        Some((re / &n, tau / n))
    }

    fn solve(&self, x: &FracElem<Q>) -> Result<(Vec<i64>, bool), String> {
        let (a, b) = self.image(x).ok_or("element outside Q(tau)")?;
        let (j, neg) = unit_exponent(&a, &b).ok_or("not a unit of Z[tau]")?;
        // extended gcd over the generator exponents
        let mut g = 0i64;
        let mut coeffs = vec![0i64; self.gens.len()];
        for (i, &(k, _)) in self.gens.iter().enumerate() {
            if Some(i) == self.minus || k == 0 {
                continue;
            }
            let e = g.extended_gcd(&k);
            let (ng, u, v) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
            coeffs.iter_mut().for_each(|c| *c *= u);
            coeffs[i] = v;
            g = ng;
        }
        let exps: Vec<i64> = if j == 0 {
            vec![0; self.gens.len()]
        } else {
            if g == 0 || j % g != 0 {
                return Err(format!("tau^{j} outside the generated subgroup"));
            }
            coeffs.iter().map(|c| c * (j / g)).collect()
        };
        let mut flip = neg;
        for (i, &e) in exps.iter().enumerate() {
            if self.gens[i].1 && e.rem_euclid(2) == 1 && Some(i) != self.minus {
                flip = !flip;
            }
        }
        Ok((exps, flip))
    }
}

/// `a + b tau = s * tau^j` for a unit of Z[tau]; returns `(j, s < 0)`.
fn unit_exponent(a: &Q, b: &Q) -> Option<(i64, bool)> {
    if !a.is_integer() || !b.is_integer() {
        return None;
    }
    let (a, b) = (a.to_integer(), b.to_integer());
    let norm = &a * &a + &a * &b - &b * &b;
    if norm.abs() != BigInt::one() {
        return None;
    }
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let val = a.to_f64()? + b.to_f64()? * tau;
    let guess = (val.abs().ln() / tau.ln()).round() as i64;
    for j in [guess, guess - 1, guess + 1] {
        // tau^j = F(j-1) + F(j) tau
        let (x, y) = (fib(j - 1), fib(j));
        if x == a && y == b {
            return Some((j, false));
        }
        if -&x == a && -&y == b {
            return Some((j, true));
        }
    }
    None
}

#[cfg(test)]
pub(crate) fn unit_exponent_for_tests(a: i64, b: i64) -> Option<(i64, bool)> {
    unit_exponent(&qi(a), &qi(b))
}
