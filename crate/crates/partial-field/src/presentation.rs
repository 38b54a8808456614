use exact_algebra::FieldSpec;
use poly_groebner::{parse_frac, parse_poly, FracElem, GbBudget, MonoOrder, Poly, PolyIdeal, Q};
use serde_json::{json, Value};

use crate::PfError;

const DRL: MonoOrder = MonoOrder::DegRevLex;

/// A partial field `(R, <generators>)` where `R` is a quotient of a
/// polynomial ring over Q, localized at the generators.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    variables: Vec<String>,
    ideal: PolyIdeal<Q>,
    generators: Vec<FracElem<Q>>,
}

impl Presentation {
    /// Inserts `-1` first when it is missing. Fails if a generator is zero
    /// modulo the ideal or the ideal is the whole ring.
    pub fn new(
        name: &str,
        variables: Vec<String>,
        ideal: Vec<Poly<Q>>,
        generators: Vec<FracElem<Q>>,
    ) -> Result<Presentation, PfError> {
        let ideal = PolyIdeal::new(ideal, DRL, GbBudget::unlimited()).expect("unlimited budget");
        Presentation::with_ideal(name, variables, ideal, generators)
    }

    pub fn with_ideal(
        name: &str,
        variables: Vec<String>,
        ideal: PolyIdeal<Q>,
        generators: Vec<FracElem<Q>>,
    ) -> Result<Presentation, PfError> {
        if ideal.contains_one() {
            return Err(PfError::Presentation(format!("{name}: defining ideal is the unit ideal")));
        }
        let minus_one = FracElem::constant(Q::from_integer((-1).into()), DRL);
        let mut gens: Vec<FracElem<Q>> = Vec::new();
        if !generators.iter().any(|g| g == &minus_one) {
            gens.push(minus_one);
        }
        for g in generators {
            let r = g.reduce(&ideal).ok_or_else(|| PfError::Presentation(format!("{name}: generator with zero denominator")))?;
            if r.is_zero() {
                return Err(PfError::Presentation(format!("{name}: generator {} is zero", g.to_text(&variables))));
            }
            gens.push(g);
        }
        Ok(Presentation { name: name.to_string(), variables, ideal, generators: gens })
    }

    /// Builds a presentation from text.
    pub fn parse(name: &str, variables: &[&str], ideal: &[&str], generators: &[&str]) -> Result<Presentation, PfError> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let id = ideal
            .iter()
            .map(|s| parse_poly::<Q>(s, &vars, DRL))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| PfError::Presentation(e.to_string()))?;
        let gens = generators
            .iter()
            .map(|s| parse_frac::<Q>(s, &vars, DRL))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| PfError::Presentation(e.to_string()))?;
        Presentation::new(name, vars, id, gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn ideal(&self) -> &PolyIdeal<Q> {
        &self.ideal
    }

    pub fn generators(&self) -> &[FracElem<Q>] {
        &self.generators
    }

    pub fn generator_texts(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_text(&self.variables)).collect()
    }

    pub fn ideal_texts(&self) -> Vec<String> {
        self.ideal.basis().iter().map(|g| poly_groebner::format_poly(g, &self.variables)).collect()
    }

    /// Appends a generator unless it is already listed.
    pub fn add_generator(&mut self, g: FracElem<Q>) {
        if !self.generators.iter().any(|h| h.equal_mod(&g, &self.ideal)) {
            self.generators.push(g);
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<FracElem<Q>, PfError> {
        parse_frac::<Q>(s, &self.variables, DRL).map_err(|e| PfError::Presentation(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "variables": self.variables,
            "ideal": self.ideal_texts(),
            "generators": self.generator_texts(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Presentation, PfError> {
        let bad = || PfError::Presentation("malformed presentation JSON".into());
        let strs = |key: &str| -> Result<Vec<String>, PfError> {
            v.get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(bad)?
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(bad))
                .collect()
        };
        let name = v.get("name").and_then(|x| x.as_str()).ok_or_else(bad)?;
        let vars = strs("variables")?;
        let ideal = strs("ideal")?;
        let gens = strs("generators")?;
        fn r(xs: &[String]) -> Vec<&str> {
            xs.iter().map(String::as_str).collect()
        }
        Presentation::parse(name, &r(&vars), &r(&ideal), &r(&gens))
    }
}

/// Either a symbolic presentation or a finite field viewed as a partial field.
#[derive(Clone, Debug)]
pub enum PartialField {
    Symbolic(Presentation),
    Field(FieldSpec),
}

impl PartialField {
    pub fn name(&self) -> String {
        match self {
            PartialField::Symbolic(p) => p.name().to_string(),
            PartialField::Field(f) => match f.order() {
                Some(q) => format!("GF({q})"),
                None => "Q".to_string(),
            },
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PartialField::Symbolic(p) => p.to_json(),
            PartialField::Field(f) => json!({ "name": self.name(), "field": f.order() }),
        }
    }
}

/// Names accepted by [`pf_catalog`].
pub const CATALOG_NAMES: [&str; 7] = ["U2", "K2", "P4", "G", "PPap", "PT", "GF(q)"];

/// Named partial fields. `GF(q)`, `GF4` and `GF(4)` spellings are accepted
/// for finite fields.
pub fn pf_catalog(name: &str) -> Result<PartialField, PfError> {
    let p = |n: &str, vars: &[&str], ideal: &[&str], gens: &[&str]| Presentation::parse(n, vars, ideal, gens).map(PartialField::Symbolic);
    match name {
        "U2" => p("U2", &["a1", "a2"], &[], &["-1", "a1", "a2", "a1 - 1", "a2 - 1", "a1 - a2"]),
        "K2" => p("K2", &["a"], &[], &["-1", "a", "a - 1", "a + 1"]),
        "P4" => p("P4", &["a"], &[], &["-1", "a", "a - 1", "a + 1", "a - 2"]),
        "G" => p("G", &["tau"], &["tau^2 - tau - 1"], &["-1", "tau"]),
        "PPap" => p(
            "PPap",
            &["a1", "a2"],
            &[],
            &["-1", "a1", "a2", "a1 - 1", "a2 - 1", "a1 - a2", "a1*a2 - a1 + 1", "a1*a2 - a2 + 1"],
        ),
        "PT" => p("PT", &["a"], &[], &["-1", "a", "a + 1", "a - 1", "a + 2", "2*a + 1"]),
        _ => {
            let digits = name.trim_start_matches("GF").trim_start_matches('(').trim_end_matches(')');
            if name.starts_with("GF") && !digits.is_empty() {
                let q: u32 = digits.parse().map_err(|_| PfError::UnknownPartialField(name.into()))?;
                let f = FieldSpec::make(q).map_err(|_| PfError::UnknownPartialField(name.into()))?;
                if f.is_finite() {
                    return Ok(PartialField::Field(f));
                }
            }
            Err(PfError::UnknownPartialField(name.into()))
        }
    }
}
