use crate::coeff::Coeff;
use crate::frac::{substitute_poly, FracElem};
use crate::groebner::{GbBudget, GbError, PolyIdeal};
use crate::mono::{MonoOrder, MAX_VARS};
use crate::poly::Poly;

/// Result of eliminating variables that occur linearly in the ideal.
#[derive(Clone, Debug)]
pub struct Substitutions<C: Coeff> {
    /// Solved variables with values in the free variables, sorted by index.
    pub solved: Vec<(usize, FracElem<C>)>,
    /// What remains, in the free variables only.
    pub residual: PolyIdeal<C>,
    pub free: Vec<usize>,
}

impl<C: Coeff> Substitutions<C> {
    pub fn value_of(&self, v: usize) -> Option<&FracElem<C>> {
        self.solved.iter().find(|(x, _)| *x == v).map(|(_, f)| f)
    }

    /// Rewrites a polynomial in the free variables.
    pub fn apply(&self, p: &Poly<C>) -> FracElem<C> {
        let mut acc = FracElem::from_poly(p.with_order(self.residual.order()));
        for (v, val) in &self.solved {
            if acc.num().degree_in(*v) > 0 || acc.den().degree_in(*v) > 0 {
                acc = acc.substitute(*v, val);
            }
        }
        acc
    }
}

struct Pick<C: Coeff> {
    v: usize,
    coeff: Poly<C>,
    rest: Poly<C>,
}

fn choose<C: Coeff>(basis: &[Poly<C>], nvars: usize, blocked: u64) -> Option<Pick<C>> {
    let mut best: Option<(u32, usize, Pick<C>)> = None;
    for g in basis {
        let vars = g.variables();
        for v in 0..nvars {
            if vars >> v & 1 == 0 || blocked >> v & 1 == 1 || g.degree_in(v) != 1 {
                continue;
            }
            let parts = g.coefficients_in(v);
            let cost = if parts[1].is_constant() { 0 } else { 1 + parts[1].total_degree() };
            let better = match &best {
                None => true,
                Some((bc, bv, _)) => (cost, v) < (*bc, *bv),
            };
            if better {
                best = Some((cost, v, Pick { v, coeff: parts[1].clone(), rest: parts[0].clone() }));
            }
        }
    }
    best.map(|(_, _, p)| p)
}

/// Repeatedly solves a basis element that is linear in a non-kept variable,
/// preferring constant coefficients and then low variable indices.
/// Nonconstant coefficients are assumed nonzero: the residual is saturated
/// by them (this needs `nvars < MAX_VARS` for the auxiliary variable).
pub fn extract_substitutions<C: Coeff>(
    ideal: &PolyIdeal<C>,
    nvars: usize,
    keep: &[usize],
    budget: GbBudget,
) -> Result<Substitutions<C>, GbError> {
    let ord = MonoOrder::DegRevLex;
    let mut cur = if ideal.order() == ord {
        ideal.clone()
    } else {
        PolyIdeal::new(ideal.basis().iter().map(|g| g.with_order(ord)).collect(), ord, budget)?
    };
    let mut blocked: u64 = keep.iter().fold(0, |m, &v| m | 1 << v);
    let mut solved: Vec<(usize, FracElem<C>)> = Vec::new();
    while !cur.contains_one() {
        let Some(pick) = choose(cur.basis(), nvars, blocked) else { break };
        let value = FracElem::new(pick.rest.neg(), pick.coeff.clone());
        let gens: Vec<Poly<C>> = cur
            .basis()
            .iter()
            .map(|g| substitute_poly(g, pick.v, &value).num().clone())
            .filter(|g| !g.is_zero())
            .collect();
        for (_, s) in solved.iter_mut() {
            *s = s.substitute(pick.v, &value);
        }
        solved.push((pick.v, value));
        blocked |= 1 << pick.v;
        cur = PolyIdeal::new(gens, ord, budget)?;
        if !pick.coeff.is_constant() && nvars < MAX_VARS {
            cur = cur.saturate(&pick.coeff, nvars, budget)?;
        }
    }
    if !cur.contains_one() {
        for (_, s) in solved.iter_mut() {
            if let Some(r) = s.reduce(&cur) {
                *s = r;
            }
        }
    }
    solved.sort_by_key(|(v, _)| *v);
    let free = (0..nvars).filter(|v| !solved.iter().any(|(x, _)| x == v)).collect();
    Ok(Substitutions { solved, residual: cur, free })
}
