use std::collections::{BTreeMap, HashSet};

use exact_algebra::FieldSpec;
use matroid_core::{combinations, RepresentedMatroid};
use partial_field::MinorTable;
use poly_groebner::{with_char, Coeff, GbBudget, GbError, MonoOrder, Poly, PolyIdeal, Q};
use serde_json::{json, Map, Value};

use crate::varrep::{forest_representation, VariableRepresentation};
use crate::UpfError;

const DRL: MonoOrder = MonoOrder::DegRevLex;

/// Primes tested when none are given.
pub const DEFAULT_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown(String),
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        *self == Answer::Yes
    }

    pub fn to_json(&self) -> Value {
        match self {
            Answer::Yes => json!(true),
            Answer::No => json!(false),
            Answer::Unknown(_) => json!("unknown"),
        }
    }

    fn from_run(r: Option<Result<bool, GbError>>, what: u32) -> Answer {
        match r {
            Some(Ok(true)) => Answer::Yes,
            Some(Ok(false)) => Answer::No,
            Some(Err(e)) => Answer::Unknown(e.to_string()),
            None => Answer::Unknown(format!("characteristic {what} is not supported")),
        }
    }
}

/// The polynomial system of a matroid in the entries of a standard-form
/// representation: nonbasis determinants vanish, basis determinants do
/// not.
#[derive(Clone, Debug)]
pub struct EntrySystem {
    pub rep: VariableRepresentation,
    pub vanishing: Vec<Poly<Q>>,
    /// Nonconstant basis determinants. A basis whose determinant is the
    /// zero polynomial makes the system unsolvable everywhere.
    pub nonvanishing: Vec<Poly<Q>>,
    pub degenerate: bool,
}

pub fn entry_system(m: &RepresentedMatroid) -> Result<EntrySystem, UpfError> {
    let rep = forest_representation(m.matrix())?;
    let r = m.rank();
    let zero = PolyIdeal::zero(DRL);
    let mut table = MinorTable::new(&rep.avar, &zero);
    let all_rows = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    let (mut vanishing, mut nonvanishing) = (Vec::new(), Vec::new());
    let mut seen = HashSet::new();
    let mut degenerate = false;
    for s in combinations(m.size(), r) {
        let p = table.poly_minor(all_rows, s);
        if p.is_zero() {
            degenerate |= m.is_basis(s);
            continue;
        }
        let p = p.normalized();
        if !seen.insert(p.clone()) {
            continue;
        }
        if !m.is_basis(s) {
            vanishing.push(p);
        } else if !p.is_constant() {
            nonvanishing.push(p);
        }
    }
    Ok(EntrySystem { rep, vanishing, nonvanishing, degenerate })
}

fn saturate_all<C: Coeff>(mut ideal: PolyIdeal<C>, sats: &[Poly<C>], w: usize, budget: GbBudget) -> Result<PolyIdeal<C>, GbError> {
    for d in sats {
        if ideal.contains_one() {
            break;
        }
        let nf = ideal.normal_form(d);
        if nf.is_zero() {
            return PolyIdeal::new(vec![Poly::one(DRL)], DRL, budget);
        }
        if !nf.is_constant() {
            ideal = ideal.saturate(&nf, w, budget)?;
        }
    }
    Ok(ideal)
}

/// Solvability over the algebraic closure of the prime field of `C`, or
/// over GF(q) when `field_order` is given.
fn solvable<C: Coeff>(sys: &EntrySystem, field_order: Option<u32>, budget: GbBudget) -> Result<bool, GbError> {
    if sys.degenerate {
        return Ok(false);
    }
    let n = sys.rep.nvars();
    let map = |ps: &[Poly<Q>]| -> Option<Vec<Poly<C>>> { ps.iter().map(|p| p.reduce_mod::<C>()).collect() };
    let (Some(gens), Some(sats)) = (map(&sys.vanishing), map(&sys.nonvanishing)) else {
        return Ok(false);
    };
    if sats.iter().any(|d| d.is_zero()) {
        return Ok(false);
    }
    let gens: Vec<Poly<C>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let ideal = saturate_all(PolyIdeal::new(gens, DRL, budget)?, &sats, n, budget)?;
    if ideal.contains_one() {
        return Ok(false);
    }
    let Some(q) = field_order else { return Ok(true) };
    // restrict to GF(q) points, which may land where a determinant vanishes
    let mut gens = ideal.basis().to_vec();
    for v in 0..n {
        let x = Poly::<C>::var(v, DRL);
        gens.push(x.pow(q).sub(&x));
    }
    let ideal = saturate_all(PolyIdeal::new(gens, DRL, budget)?, &sats, n, budget)?;
    Ok(!ideal.contains_one())
}

/// Whether `m` has a representation over GF(q).
pub fn is_representable_over(m: &RepresentedMatroid, q: u32, budget: GbBudget) -> Result<Answer, UpfError> {
    let field = FieldSpec::make(q).map_err(|_| UpfError::Unsupported(q))?;
    if !field.is_finite() {
        return Err(UpfError::Unsupported(q));
    }
    let p = field.characteristic();
    let sys = entry_system(m)?;
    let run = with_char!(p, C => solvable::<C>(&sys, Some(q), budget));
    if run.is_none() {
        return Err(UpfError::Unsupported(q));
    }
    Ok(Answer::from_run(run, p))
}

/// Per-characteristic solvability, limited to the tested primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicReport {
    pub tested_primes: Vec<u32>,
    pub solvable_at: BTreeMap<u32, Answer>,
    /// `None` when characteristic zero was not requested.
    pub zero: Option<Answer>,
}

impl CharacteristicReport {
    /// Tested characteristics with a representation, zero last.
    pub fn solvable(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.solvable_at.iter().filter(|(_, a)| a.is_yes()).map(|(&p, _)| p).collect();
        if self.zero.as_ref().is_some_and(Answer::is_yes) {
            out.push(0);
        }
        out
    }

    pub fn has_unknown(&self) -> bool {
        self.solvable_at.values().chain(self.zero.iter()).any(|a| matches!(a, Answer::Unknown(_)))
    }

    pub fn to_json(&self, matroid: &str) -> Value {
        let primes: Map<String, Value> = self.solvable_at.iter().map(|(p, a)| (p.to_string(), a.to_json())).collect();
        json!({
            "matroid": matroid,
            "tested_primes": self.tested_primes,
            "primes": primes,
            "zero": self.zero.as_ref().map_or(Value::Null, Answer::to_json),
        })
    }
}

/// Solvability of the entry system over the algebraic closure of GF(p) for
/// each listed prime, and over Q when `include_zero` is set. Primes run in
/// parallel.
pub fn characteristic_set(
    m: &RepresentedMatroid,
    primes: &[u32],
    include_zero: bool,
    budget: GbBudget,
) -> Result<CharacteristicReport, UpfError> {
    let sys = entry_system(m)?;
    let mut chars: Vec<u32> = primes.to_vec();
    if include_zero {
        chars.push(0);
    }
    let answers: Vec<(u32, Answer)> = std::thread::scope(|s| {
        let handles: Vec<_> = chars
            .iter()
            .map(|&p| {
                let sys = &sys;
                s.spawn(move || (p, Answer::from_run(with_char!(p, C => solvable::<C>(sys, None, budget)), p)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });
    let mut solvable_at = BTreeMap::new();
    let mut zero = None;
    for (p, a) in answers {
        if p == 0 {
            zero = Some(a);
        } else {
            solvable_at.insert(p, a);
        }
    }
    Ok(CharacteristicReport { tested_primes: primes.to_vec(), solvable_at, zero })
}
