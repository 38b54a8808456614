use std::collections::HashSet;

use matroid_core::{combinations, RepresentedMatroid};
use partial_field::{check_partial_field, CheckOutcome, FracMatrix, MembershipOracle, MinorTable, PfError, Presentation};
use poly_groebner::{extract_substitutions, format_poly, FracElem, GbBudget, MonoOrder, PolyIdeal, Substitutions, Q};
use serde_json::{json, Value};

use crate::identify::{identify_partial_field, Identification};
use crate::varrep::{check_pattern, VariableRepresentation};
use crate::UpfError;

const DRL: MonoOrder = MonoOrder::DegRevLex;

/// Default number of check rounds before giving up.
pub const DEFAULT_ROUND_CAP: usize = 32;

/// Determinants of `rep.avar` on every nonbasis of `m`, with a Gröbner basis.
pub fn zero_determinant_ideal(
    m: &RepresentedMatroid,
    rep: &VariableRepresentation,
    budget: GbBudget,
) -> Result<PolyIdeal<Q>, UpfError> {
    check_pattern(m, rep)?;
    let r = m.rank();
    let zero = PolyIdeal::zero(DRL);
    let mut table = MinorTable::new(&rep.avar, &zero);
    let all_rows = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    let mut seen = HashSet::new();
    let mut gens = Vec::new();
    for s in combinations(m.size(), r) {
        if m.is_basis(s) {
            continue;
        }
        let p = table.poly_minor(all_rows, s);
        if !p.is_zero() {
            let p = p.normalized();
            if seen.insert(p.clone()) {
                gens.push(p);
            }
        }
    }
    Ok(PolyIdeal::new(gens, DRL, budget)?)
}

#[derive(Clone, Debug)]
pub struct UpfOptions {
    /// Variables the substitution step must leave free.
    pub keep: Vec<usize>,
    /// Generators to start from besides -1.
    pub seeds: Vec<FracElem<Q>>,
    /// Seed with every matrix entry other than 0 and 1 and -1.
    pub seed_entries: bool,
    /// Values accepted as determinants without being generators.
    pub extra: Vec<FracElem<Q>>,
    pub round_cap: usize,
    pub budget: GbBudget,
    /// Catalog partial fields tried by the final identification.
    pub identify: bool,
}

impl Default for UpfOptions {
    fn default() -> UpfOptions {
        UpfOptions {
            keep: Vec::new(),
            seeds: Vec::new(),
            seed_entries: true,
            extra: Vec::new(),
            round_cap: DEFAULT_ROUND_CAP,
            budget: GbBudget::unlimited(),
            identify: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UpfResult {
    pub ideal: PolyIdeal<Q>,
    pub substitutions: Substitutions<Q>,
    /// `avar` after substitution.
    pub matrix: FracMatrix,
    /// Verified presentation: every basis determinant is a member.
    pub presentation: Presentation,
    pub rounds: usize,
    pub identification: Option<Identification>,
}

impl UpfResult {
    pub fn to_json(&self) -> Value {
        let names = self.presentation.variables();
        json!({
            "zero_determinant_ideal": self.ideal.basis().iter().map(|g| format_poly(g, names)).collect::<Vec<_>>(),
            "substitutions": self.substitutions.solved.iter()
                .map(|(v, f)| json!([names[*v], f.to_text(names)]))
                .collect::<Vec<_>>(),
            "free": self.substitutions.free.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
            "residual_ideal": self.presentation.ideal_texts(),
            "generators": self.presentation.generator_texts(),
            "rounds": self.rounds,
            "partial_field": self.identification.as_ref().map(|i| i.to_json()),
        })
    }
}

/// Zero-determinant ideal, substitution of the linearly determined
/// variables, then repeated basis checks; each determinant outside the
/// current group is appended as a generator until every basis passes.
pub fn universal_partial_field(
    m: &RepresentedMatroid,
    rep: &VariableRepresentation,
    opts: &UpfOptions,
) -> Result<UpfResult, UpfError> {
    let ideal = zero_determinant_ideal(m, rep, opts.budget)?;
    if ideal.contains_one() {
        return Err(UpfError::UnitIdeal);
    }
    let substitutions = extract_substitutions(&ideal, rep.nvars(), &opts.keep, opts.budget)?;
    if substitutions.residual.contains_one() {
        return Err(UpfError::UnitIdeal);
    }
    let matrix = rep.avar.substitute(&substitutions);
    let residual = &substitutions.residual;
    let mut pres = Presentation::with_ideal("P_M", rep.names(), residual.clone(), opts.seeds.clone())?;
    if opts.seed_entries {
        for r in 0..matrix.nrows() {
            for c in 0..matrix.ncols() {
                let e = matrix.get(r, c);
                let unit = e.is_polynomial()
                    && e.num().constant_value().is_some_and(|v| v == Q::from_integer(1.into()) || v == Q::from_integer((-1).into()));
                if e.is_zero() || unit {
                    continue;
                }
                if let Some(e) = e.reduce(residual).filter(|x| !x.is_zero()) {
                    pres.add_generator(e);
                }
            }
        }
    }
    let mut rounds = 0;
    loop {
        if rounds == opts.round_cap {
            return Err(UpfError::RoundCap(rounds));
        }
        rounds += 1;
        let oracle = MembershipOracle::new(&pres);
        match check_partial_field(m, &matrix, &oracle, &opts.extra)? {
            CheckOutcome::True => break,
            CheckOutcome::False { basis, determinant } => {
                let before = pres.generators().len();
                pres.add_generator(determinant);
                if pres.generators().len() == before {
                    return Err(PfError::Inconsistent(format!("determinant of {basis:?} is a generator but failed membership")).into());
                }
            }
        }
    }
    let identification = if opts.identify { identify_partial_field(&pres) } else { None };
    Ok(UpfResult { ideal, substitutions, matrix, presentation: pres, rounds, identification })
}
