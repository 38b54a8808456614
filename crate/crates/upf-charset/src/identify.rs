use std::collections::HashSet;

use matroid_core::members;
use partial_field::{pf_catalog, Membership, MembershipOracle, PartialField, Presentation};
use poly_groebner::{FracElem, MonoOrder, Poly, Q};
use serde_json::{json, Value};

const DRL: MonoOrder = MonoOrder::DegRevLex;

/// Catalog partial fields tried by [`identify_partial_field`], in order.
const CANDIDATES: [&str; 6] = ["G", "K2", "U2", "PT", "P4", "PPap"];

/// An isomorphism with a catalog partial field, given by the images of the
/// catalog variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub name: String,
    pub images: Vec<(String, String)>,
}

impl Identification {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "images": self.images.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// Substitutes `images[i]` for variable `i` simultaneously; variables with
/// no image are kept. `None` when a denominator becomes zero.
pub fn compose(f: &FracElem<Q>, images: &[Option<FracElem<Q>>]) -> Option<FracElem<Q>> {
    let eval = |p: &Poly<Q>| -> FracElem<Q> {
        let mut acc = FracElem::from_poly(Poly::zero(DRL));
        for (m, c) in p.terms() {
            let mut t = FracElem::constant(c.clone(), DRL);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match images.get(i) {
                    Some(Some(img)) => img.clone(),
                    _ => FracElem::from_poly(Poly::var(i, DRL)),
                };
                t = t.mul(&base.pow(e as i32).expect("positive power"));
            }
            acc = acc.add(&t);
        }
        acc
    };
    eval(f.num()).div(&eval(f.den()))
}

#[derive(Clone, Copy)]
struct Mobius([i64; 4]);

impl Mobius {
    fn apply(&self, v: usize) -> FracElem<Q> {
        let [a, b, c, d] = self.0;
        let x = Poly::var(v, DRL);
        let lin = |p: i64, q: i64| x.scale(&qi(p)).add(&Poly::from_i64(q, DRL));
        FracElem::new(lin(a, b), lin(c, d))
    }

    fn inverse(&self) -> Mobius {
        let [a, b, c, d] = self.0;
        Mobius([d, -b, -c, a])
    }

    fn text(&self, name: &str) -> String {
        self.apply(0).to_text(&[name.to_string()])
    }
}

fn qi(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Invertible maps `x -> (ax + b)/(cx + d)` with small coefficients, one
/// representative per distinct image.
fn mobius_maps() -> Vec<Mobius> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let range = -2..=2;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    if a * d - b * c == 0 {
                        continue;
                    }
                    let m = Mobius([a, b, c, d]);
                    if seen.insert(m.apply(0)) {
                        out.push(m);
                    }
                }
            }
        }
    }
    // identity-like maps first keeps the reported images simple
    out.sort_by_key(|m| m.0.iter().map(|x| x.abs()).sum::<i64>() + i64::from(m.0[2] != 0) * 10);
    out
}

fn is_member(oracle: &MembershipOracle, x: &FracElem<Q>) -> bool {
    matches!(oracle.test(x), Membership::Member(_))
}

/// Maps every generator of `from` into `to` and checks membership, and maps
/// every relation of `from` to zero in `to`.
fn maps_into(from: &Presentation, to: &MembershipOracle, images: &[Option<FracElem<Q>>]) -> bool {
    let ideal = to.presentation().ideal();
    let gens_ok = from.generators().iter().all(|g| {
        compose(g, images)
            .and_then(|x| x.reduce(ideal))
            .is_some_and(|x| !x.is_zero() && is_member(to, &x))
    });
    gens_ok
        && from
            .ideal()
            .basis()
            .iter()
            .all(|h| compose(&FracElem::from_poly(h.clone()), images).is_some_and(|x| ideal.contains(x.num())))
}

fn used_variables(p: &Presentation) -> u64 {
    let mut mask = 0;
    for g in p.generators() {
        mask |= g.num().variables() | g.den().variables();
    }
    for h in p.ideal().basis() {
        mask |= h.variables();
    }
    mask
}

/// Looks for an isomorphism with a catalog partial field whose variables
/// map to Möbius images of single variables. A match means the two
/// generator groups map into each other and the two ideals correspond,
/// so the partial fields are isomorphic.
pub fn identify_partial_field(p: &Presentation) -> Option<Identification> {
    let ours = MembershipOracle::new(p);
    let free = members(used_variables(p));
    if free.is_empty() && p.ideal().is_zero_ideal() {
        let regular = p.generators().iter().all(|g| {
            g.is_polynomial() && g.num().constant_value().is_some_and(|v| v == qi(1) || v == qi(-1))
        });
        return regular.then(|| Identification { name: "U0".into(), images: Vec::new() });
    }
    let maps = mobius_maps();
    for name in CANDIDATES {
        let Ok(PartialField::Symbolic(cat)) = pf_catalog(name) else { continue };
        let k = cat.variables().len();
        if k != free.len() {
            continue;
        }
        let theirs = MembershipOracle::new(&cat);
        let perms: Vec<Vec<usize>> = match k {
            1 => vec![vec![free[0]]],
            2 => vec![vec![free[0], free[1]], vec![free[1], free[0]]],
            _ => continue,
        };
        for perm in perms {
            // per-variable candidates, filtered by generators in that variable alone
            let mut options: Vec<Vec<Mobius>> = Vec::new();
            for (j, &target) in perm.iter().enumerate() {
                let single: Vec<&FracElem<Q>> = cat
                    .generators()
                    .iter()
                    .filter(|g| (g.num().variables() | g.den().variables()) & !(1 << j) == 0)
                    .collect();
                let ok: Vec<Mobius> = maps
                    .iter()
                    .copied()
                    .filter(|mb| {
                        let mut images = vec![None; k];
                        images[j] = Some(mb.apply(target));
                        single.iter().all(|g| {
                            compose(g, &images)
                                .and_then(|x| x.reduce(p.ideal()))
                                .is_some_and(|x| !x.is_zero() && is_member(&ours, &x))
                        })
                    })
                    .collect();
                options.push(ok);
            }
            let mut choice = vec![0usize; k];
            if options.iter().any(|o| o.is_empty()) {
                continue;
            }
            loop {
                let fwd: Vec<Option<FracElem<Q>>> =
                    (0..k).map(|j| Some(options[j][choice[j]].apply(perm[j]))).collect();
                let width = perm.iter().max().map_or(0, |m| m + 1);
                let mut bwd: Vec<Option<FracElem<Q>>> = vec![None; width];
                for j in 0..k {
                    bwd[perm[j]] = Some(options[j][choice[j]].inverse().apply(j));
                }
                if maps_into(&cat, &ours, &fwd) && maps_into(p, &theirs, &bwd) {
                    let names = p.variables();
                    let images = (0..k)
                        .map(|j| (cat.variables()[j].clone(), options[j][choice[j]].text(&names[perm[j]])))
                        .collect();
                    return Some(Identification { name: name.to_string(), images });
                }
                let mut i = 0;
                loop {
                    if i == k {
                        break;
                    }
                    choice[i] += 1;
                    if choice[i] < options[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
    }
    None
}

/// A homomorphism `from -> to` sending each variable of `from` to a Möbius
/// image of one variable of `to`. Returns the image of every variable of
/// `from` (`None` for variables that occur nowhere). Gives up after
/// `max_tries` complete assignments.
pub fn find_homomorphism(from: &Presentation, to: &Presentation, max_tries: usize) -> Option<Vec<Option<FracElem<Q>>>> {
    let oracle = MembershipOracle::new(to);
    let n = from.variables().len();
    let free = members(used_variables(from));
    let maps = mobius_maps();
    let mut options: Vec<Vec<FracElem<Q>>> = Vec::new();
    for &v in &free {
        let single: Vec<&FracElem<Q>> = from
            .generators()
            .iter()
            .filter(|g| (g.num().variables() | g.den().variables()) & !(1 << v) == 0)
            .collect();
        let mut seen = HashSet::new();
        let mut ok = Vec::new();
        for t in 0..to.variables().len() {
            for mb in &maps {
                let img = mb.apply(t);
                let mut images = vec![None; n];
                images[v] = Some(img.clone());
                let fits = single.iter().all(|g| {
                    compose(g, &images)
                        .and_then(|x| x.reduce(to.ideal()))
                        .is_some_and(|x| !x.is_zero() && is_member(&oracle, &x))
                });
                if fits && seen.insert(img.clone()) {
                    ok.push(img);
                }
            }
        }
        if ok.is_empty() {
            return None;
        }
        options.push(ok);
    }
    let mut choice = vec![0usize; free.len()];
    for _ in 0..max_tries {
        let mut images = vec![None; n];
        for (j, &v) in free.iter().enumerate() {
            images[v] = Some(options[j][choice[j]].clone());
        }
        if maps_into(from, &oracle, &images) {
            return Some(images);
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
    None
}
