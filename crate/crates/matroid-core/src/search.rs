use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::matroid::combinations;
use crate::{mask_of, members, ElementSet, RepresentedMatroid};

/// Limits for backtracking searches. `None` means unbounded.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn seconds(s: f64) -> Budget {
        Budget { max_nodes: None, max_time: Some(Duration::from_secs_f64(s)) }
    }
}

/// Certificate that `N` is a minor of `M`: contract, delete, then match labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub contracted: Vec<String>,
    pub deleted: Vec<String>,
    /// Pairs (element of N, element of M).
    pub mapping: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorResult {
    Found(MinorWitness),
    NotFound,
    /// The budget ran out before the search finished.
    Unknown,
}

impl MinorResult {
    pub fn is_found(&self) -> bool {
        matches!(self, MinorResult::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            MinorResult::Found(_) => "true",
            MinorResult::NotFound => "false",
            MinorResult::Unknown => "unknown",
        }
    }
}

struct Clock {
    start: Instant,
    budget: Budget,
    nodes: u64,
    exhausted: bool,
}

impl Clock {
    fn new(budget: Budget) -> Clock {
        Clock { start: Instant::now(), budget, nodes: 0, exhausted: false }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(n) = self.budget.max_nodes {
            if self.nodes > n {
                self.exhausted = true;
            }
        }
        if self.nodes % 512 == 0 {
            if let Some(t) = self.budget.max_time {
                if self.start.elapsed() > t {
                    self.exhausted = true;
                }
            }
        }
        !self.exhausted
    }
}

struct RankCache<'a> {
    m: &'a RepresentedMatroid,
    cache: RefCell<HashMap<ElementSet, usize>>,
}

impl<'a> RankCache<'a> {
    fn new(m: &'a RepresentedMatroid) -> RankCache<'a> {
        RankCache { m, cache: RefCell::new(HashMap::new()) }
    }

    fn rank(&self, s: ElementSet) -> usize {
        if let Some(&r) = self.cache.borrow().get(&s) {
            return r;
        }
        let r = self.m.rank_of_set(s);
        self.cache.borrow_mut().insert(s, r);
        r
    }
}

/// Finds an injection from the target's elements into the host's so that the
/// ranks of all pairs, triples and rank-sized subsets agree. Both matroids
/// must have the same rank; the image is then a restriction isomorphic to the target.
struct Embedder<'a> {
    host: RankCache<'a>,
    target: RankCache<'a>,
    rank: usize,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Embedder<'a> {
    fn new(host: &'a RepresentedMatroid, target: &'a RepresentedMatroid, candidates: Vec<Vec<usize>>) -> Embedder<'a> {
        let order = placement_order(target);
        let candidates = order.iter().map(|&t| candidates[t].clone()).collect();
        Embedder { host: RankCache::new(host), target: RankCache::new(target), rank: target.rank(), order, candidates }
    }

    fn consistent(&self, assigned: &[usize], j: usize) -> bool {
        let tj = self.order[j];
        let hj = assigned[j];
        if self.target.rank(1 << tj) != self.host.rank(1 << hj) {
            return false;
        }
        let mut sizes: Vec<usize> = [2, 3, self.rank].into_iter().filter(|&s| (2..=self.rank).contains(&s)).collect();
        sizes.dedup();
        for s in sizes.into_iter().filter(|&s| s <= j + 1) {
            for rest in combinations(j, s - 1) {
                let idx = members(rest);
                let tset = idx.iter().fold(1u64 << tj, |m, &i| m | 1 << self.order[i]);
                let hset = idx.iter().fold(1u64 << hj, |m, &i| m | 1 << assigned[i]);
                if self.target.rank(tset) != self.host.rank(hset) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&self, clock: &mut Clock) -> Option<Vec<usize>> {
        let m = self.order.len();
        let mut assigned: Vec<usize> = Vec::with_capacity(m);
        let mut used: u64 = 0;
        let mut cursor: Vec<usize> = vec![0; m];
        let mut j = 0usize;
        if m == 0 {
            return Some(Vec::new());
        }
        loop {
            let mut placed = false;
            while cursor[j] < self.candidates[j].len() {
                let h = self.candidates[j][cursor[j]];
                cursor[j] += 1;
                if used >> h & 1 == 1 {
                    continue;
                }
                if !clock.tick() {
                    return None;
                }
                assigned.push(h);
                if self.consistent(&assigned, j) {
                    used |= 1 << h;
                    placed = true;
                    break;
                }
                assigned.pop();
            }
            if placed {
                if j + 1 == m {
                    let mut out = vec![0; m];
                    for (pos, &t) in self.order.iter().enumerate() {
                        out[t] = assigned[pos];
                    }
                    return Some(out);
                }
                j += 1;
                cursor[j] = 0;
            } else {
                if j == 0 {
                    return None;
                }
                j -= 1;
                let h = assigned.pop().expect("assigned");
                used &= !(1 << h);
            }
        }
    }
}

/// Orders target elements so that each next element closes as many
/// triangles with the placed ones as possible.
fn placement_order(target: &RepresentedMatroid) -> Vec<usize> {
    let n = target.size();
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut left: Vec<usize> = (0..n).collect();
    while !left.is_empty() {
        let score = |e: usize| -> usize {
            let mut s = 0;
            for (i, &a) in placed.iter().enumerate() {
                for &b in &placed[i + 1..] {
                    if target.rank_of_set(1 << a | 1 << b | 1 << e) == 2 {
                        s += 1;
                    }
                }
            }
            s
        };
        let best = if placed.len() < 2 || n > 24 {
            0
        } else {
            (0..left.len()).max_by_key(|&i| (score(left[i]), usize::MAX - i)).expect("nonempty")
        };
        placed.push(left.remove(best));
    }
    placed
}

fn invariants(m: &RepresentedMatroid) -> Vec<(usize, usize, usize)> {
    let n = m.size();
    let r = m.rank();
    let mut class_size = vec![0; n];
    for c in m.parallel_classes() {
        for &e in &c {
            class_size[e] = c.len();
        }
    }
    let mut in_bases = vec![0usize; n];
    for &b in m.bases() {
        for e in members(b) {
            in_bases[e] += 1;
        }
    }
    let total = if r == 0 { 0 } else { binom(n - 1, r - 1) };
    let tri = m.triangle_counts();
    (0..n).map(|e| (class_size[e], total - in_bases[e], tri[e])).collect()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl RepresentedMatroid {
    /// Abstract isomorphism; on success returns the image index in `other`
    /// of every element of `self`.
    pub fn is_isomorphic(&self, other: &RepresentedMatroid) -> Option<Vec<usize>> {
        self.isomorphism_within(other, Budget::unlimited()).ok().flatten()
    }

    /// As [`is_isomorphic`](Self::is_isomorphic) with a budget; `Err(())` when it runs out.
    #[allow(clippy::result_unit_err)]
    pub fn isomorphism_within(&self, other: &RepresentedMatroid, budget: Budget) -> Result<Option<Vec<usize>>, ()> {
        if self.size() != other.size() || self.rank() != other.rank() || self.bases().len() != other.bases().len() {
            return Ok(None);
        }
        let a = invariants(self);
        let b = invariants(other);
        let mut sa = a.clone();
        let mut sb = b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return Ok(None);
        }
        let candidates = a.iter().map(|inv| (0..other.size()).filter(|&h| b[h] == *inv).collect()).collect();
        let e = Embedder::new(other, self, candidates);
        let mut clock = Clock::new(budget);
        let found = e.run(&mut clock);
        match found {
            Some(map) if self.is_basis_map(other, &map) => Ok(Some(map)),
            Some(_) => unreachable!("rank-consistent bijection preserves bases"),
            None if clock.exhausted => Err(()),
            None => Ok(None),
        }
    }

    /// Searches for `target` as a minor. Contraction sets range over
    /// independent sets of size `r(M) - r(N)` built from parallel-class
    /// representatives, one per closure when the target has no loops.
    pub fn has_minor(&self, target: &RepresentedMatroid, budget: Budget) -> MinorResult {
        if target.rank() > self.rank() || target.size() > self.size() {
            return MinorResult::NotFound;
        }
        let k = self.rank() - target.rank();
        let reps: Vec<usize> = self.parallel_classes().iter().map(|c| c[0]).collect();
        let target_loopless = target.loops() == 0;
        let mut clock = Clock::new(budget);
        let mut seen_flats: HashSet<ElementSet> = HashSet::new();
        let mut found = None;
        for combo in combinations(reps.len(), k) {
            let cset = mask_of(&members(combo).into_iter().map(|i| reps[i]).collect::<Vec<_>>());
            if !self.is_independent(cset) {
                continue;
            }
            if target_loopless && k > 0 {
                let flat = (0..self.size()).fold(cset, |acc, e| {
                    if self.rank_of_set(cset | 1 << e) == k {
                        acc | 1 << e
                    } else {
                        acc
                    }
                });
                if !seen_flats.insert(flat) {
                    continue;
                }
            }
            let host = self.contract_set(cset);
            // host index -> self index
            let back: Vec<usize> = members(self.full_set() & !cset);
            let loops = host.loops();
            let candidates: Vec<Vec<usize>> = (0..target.size())
                .map(|t| {
                    let tl = target.is_loop(t);
                    (0..host.size()).filter(|&h| (loops >> h & 1 == 1) == tl).collect()
                })
                .collect();
            let e = Embedder::new(&host, target, candidates);
            if let Some(map) = e.run(&mut clock) {
                let image: ElementSet = mask_of(&map.iter().map(|&h| back[h]).collect::<Vec<_>>());
                let deleted = self.full_set() & !cset & !image;
                found = Some(MinorWitness {
                    contracted: self.labels_of(cset),
                    deleted: self.labels_of(deleted),
                    mapping: (0..target.size())
                        .map(|t| (target.ground()[t].clone(), self.ground()[back[map[t]]].clone()))
                        .collect(),
                });
                break;
            }
            if clock.exhausted {
                return MinorResult::Unknown;
            }
        }
        match found {
            Some(w) => MinorResult::Found(w),
            None => MinorResult::NotFound,
        }
    }

    /// Applies a witness and returns the resulting minor with `target` labels.
    pub fn replay_witness(&self, w: &MinorWitness) -> Result<RepresentedMatroid, crate::MatroidError> {
        let c = self.set_of(&w.contracted)?;
        let d = self.set_of(&w.deleted)?;
        let minor = self.contract_set(c).delete(&self.labels_of(d))?;
        let relabel: HashMap<&str, &str> = w.mapping.iter().map(|(t, h)| (h.as_str(), t.as_str())).collect();
        let labels = minor
            .ground()
            .iter()
            .map(|l| relabel.get(l.as_str()).map(|s| s.to_string()).ok_or_else(|| crate::MatroidError::UnknownElement(l.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        minor.relabel(labels)
    }
}
