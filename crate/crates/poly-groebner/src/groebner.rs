use std::time::{Duration, Instant};

use crate::coeff::Coeff;
use crate::mono::{Mono, MonoOrder};
use crate::poly::Poly;

/// Caps for one Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbBudget {
    pub max_spairs: Option<usize>,
    pub max_time: Option<Duration>,
}

impl GbBudget {
    pub fn unlimited() -> GbBudget {
        GbBudget::default()
    }

    pub fn spairs(n: usize) -> GbBudget {
        GbBudget { max_spairs: Some(n), max_time: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error("S-pair budget exhausted after {0} pairs")]
    SpairBudget(usize),
    #[error("time budget exhausted after {0} pairs")]
    TimeBudget(usize),
}

/// Remainder of `p` on division by `basis` (full reduction, all terms).
pub fn normal_form<C: Coeff>(p: &Poly<C>, basis: &[Poly<C>]) -> Poly<C> {
    let ord = p.order();
    let mut rest = p.clone();
    let mut rem: Vec<(Mono, C)> = Vec::new();
    while !rest.is_zero() {
        let lm = *rest.lm();
        let lc = rest.lc().clone();
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let m = g.lm().quotient_of(&lm);
                let c = lc.mul(&g.lc().inv()).neg();
                rest = rest.add_scaled(g, &c, &m);
            }
            None => {
                rem.push((lm, lc));
                let t = rest.into_terms();
                rest = Poly::from_sorted_unchecked(t[1..].to_vec(), ord);
            }
        }
    }
    Poly::from_sorted_unchecked(rem, ord)
}

/// Reduces only the leading term until it is irreducible.
fn top_reduce<C: Coeff>(p: &Poly<C>, basis: &[&Poly<C>]) -> Poly<C> {
    let mut rest = p.clone();
    while !rest.is_zero() {
        let lm = *rest.lm();
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let m = g.lm().quotient_of(&lm);
                let c = rest.lc().mul(&g.lc().inv()).neg();
                rest = rest.add_scaled(g, &c, &m);
            }
            None => break,
        }
    }
    rest
}

fn spoly<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    let l = f.lm().lcm(g.lm());
    let a = f.lm().quotient_of(&l);
    let b = g.lm().quotient_of(&l);
    let left = f.mul_term(&a, &f.lc().inv());
    left.add_scaled(g, &g.lc().inv().neg(), &b)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

/// Reduced Gröbner basis, normalized and sorted by descending leading monomial.
pub fn groebner<C: Coeff>(gens: &[Poly<C>], ord: MonoOrder, budget: GbBudget) -> Result<Vec<Poly<C>>, GbError> {
    let start = Instant::now();
    let mut polys: Vec<Poly<C>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut input: Vec<Poly<C>> = gens.iter().map(|g| g.with_order(ord).monic()).filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| a.lm().cmp_in(b.lm(), ord));
    input.dedup();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Poly::one(ord)]);
    }
    for g in input {
        let refs: Vec<&Poly<C>> = active.iter().map(|&k| &polys[k]).collect();
        let h = top_reduce(&g, &refs);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(vec![Poly::one(ord)]);
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1, ord);
    }
    let mut done = 0usize;
    while !pairs.is_empty() {
        if let Some(n) = budget.max_spairs {
            if done >= n {
                return Err(GbError::SpairBudget(done));
            }
        }
        if let Some(t) = budget.max_time {
            if done % 16 == 0 && start.elapsed() > t {
                return Err(GbError::TimeBudget(done));
            }
        }
        // normal strategy: smallest lcm first
        let pick = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].lcm.cmp_in(&pairs[b].lcm, ord).then(pairs[a].j.cmp(&pairs[b].j)))
            .expect("nonempty");
        let p = pairs.swap_remove(pick);
        done += 1;
        let s = spoly(&polys[p.i], &polys[p.j]);
        let refs: Vec<&Poly<C>> = active.iter().map(|&k| &polys[k]).collect();
        let h = top_reduce(&s, &refs);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(vec![Poly::one(ord)]);
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1, ord);
    }
    Ok(reduce_basis(active.iter().map(|&k| polys[k].clone()).collect(), ord))
}

/// Gebauer–Möller installation of the new element `h`.
fn update<C: Coeff>(polys: &[Poly<C>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize, _ord: MonoOrder) {
    let lh = *polys[h].lm();
    let cands: Vec<Pair> = active.iter().map(|&g| Pair { i: g, j: h, lcm: lh.lcm(polys[g].lm()) }).collect();
    let mut rest: std::collections::VecDeque<Pair> = cands.into();
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = rest.pop_front() {
        let coprime = lh.coprime(polys[p.i].lm());
        if coprime || !rest.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm)) {
            kept.push(p);
        }
    }
    // product criterion
    kept.retain(|p| !lh.coprime(polys[p.i].lm()));
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(lh.divides(&p.lcm) && lh.lcm(polys[p.i].lm()) != p.lcm && lh.lcm(polys[p.j].lm()) != p.lcm)
    });
    pairs.extend(kept);
    active.retain(|&g| !lh.divides(polys[g].lm()));
    active.push(h);
}

/// Interreduces a minimal basis and normalizes it.
fn reduce_basis<C: Coeff>(mut g: Vec<Poly<C>>, ord: MonoOrder) -> Vec<Poly<C>> {
    // drop elements whose leading monomial is divisible by another's
    g.sort_by(|a, b| a.lm().cmp_in(b.lm(), ord));
    let mut minimal: Vec<Poly<C>> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<C>> = minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, p)| p.clone()).collect();
        let r = normal_form(&minimal[k], &others);
        out.push(r.normalized());
    }
    out.sort_by(|a, b| b.lm().cmp_in(a.lm(), ord));
    out
}

/// An ideal together with its reduced Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal<C: Coeff> {
    generators: Vec<Poly<C>>,
    basis: Vec<Poly<C>>,
    ord: MonoOrder,
}

impl<C: Coeff> PolyIdeal<C> {
    pub fn new(generators: Vec<Poly<C>>, ord: MonoOrder, budget: GbBudget) -> Result<PolyIdeal<C>, GbError> {
        let basis = groebner(&generators, ord, budget)?;
        Ok(PolyIdeal { generators, basis, ord })
    }

    pub fn zero(ord: MonoOrder) -> PolyIdeal<C> {
        PolyIdeal { generators: Vec::new(), basis: Vec::new(), ord }
    }

    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    pub fn basis(&self) -> &[Poly<C>] {
        &self.basis
    }

    pub fn order(&self) -> MonoOrder {
        self.ord
    }

    pub fn contains_one(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, p: &Poly<C>) -> Poly<C> {
        normal_form(&p.with_order(self.ord), &self.basis)
    }

    pub fn contains(&self, p: &Poly<C>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Every basis element of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &PolyIdeal<C>) -> bool {
        other.basis.iter().all(|g| self.contains(g))
    }

    /// Mutual containment.
    pub fn same_ideal(&self, other: &PolyIdeal<C>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// `I : f^inf` by a Rabinowitsch variable `w` that must not occur in the ideal or in `f`.
    pub fn saturate(&self, f: &Poly<C>, w: usize, budget: GbBudget) -> Result<PolyIdeal<C>, GbError> {
        let elim = MonoOrder::Elim(w);
        let mut gens: Vec<Poly<C>> = self.basis.iter().map(|g| g.with_order(elim)).collect();
        let wf = Poly::var(w, elim).mul(&f.with_order(elim)).sub(&Poly::one(elim));
        gens.push(wf);
        let gb = groebner(&gens, elim, budget)?;
        let kept: Vec<Poly<C>> = gb.into_iter().filter(|g| g.degree_in(w) == 0).map(|g| g.with_order(self.ord)).collect();
        let basis = reduce_basis(kept.clone(), self.ord);
        Ok(PolyIdeal { generators: kept, basis, ord: self.ord })
    }
}
