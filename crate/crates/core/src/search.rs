//! Brute-force oracles over small 3-graphs.
//!
//! A 3-graph on n <= 7 vertices is a bitmask over the C(n,3) triples in
//! lexicographic order. Exhaustive runs walk all masks in ascending order,
//! deciding the highest triple first and pruning any branch in which some pair
//! can no longer reach the requested minimum codegree.

use std::collections::HashMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::split_w;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

/// Default cap on n for exhaustive search.
pub const DEFAULT_MAX_N: usize = 6;
/// Hard cap: masks are u64 and C(7,3) = 35 is the last size worth walking.
pub const HARD_MAX_N: usize = 7;
/// Environment variable raising the exhaustive cap (up to [`HARD_MAX_N`]).
pub const MAX_N_ENV: &str = "TIGHTCOMP_MAX_N";

/// Exhaustive cap in effect, honouring [`MAX_N_ENV`].
pub fn max_exhaustive_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(HARD_MAX_N))
        .unwrap_or(DEFAULT_MAX_N)
}

fn check_feasible(n: usize, cap: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    if n > cap {
        return Err(Error::ExceedsCap {
            what: "exhaustive n",
            value: n as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Triple/pair incidence tables for 3-graphs on n vertices.
#[derive(Clone, Debug)]
pub struct TripleSpace {
    n: usize,
    triples: Vec<[Vertex; 3]>,
    pair_masks: Vec<u64>,
    triple_pairs: Vec<[usize; 3]>,
    adjacency: Vec<u64>,
    vertex_masks: Vec<u32>,
}

impl TripleSpace {
    pub fn new(n: usize) -> Result<Self> {
        check_feasible(n, HARD_MAX_N)?;
        let triples: Vec<[Vertex; 3]> = (0..n as Vertex)
            .combinations(3)
            .map(|t| [t[0], t[1], t[2]])
            .collect();
        let mut pair_id = vec![usize::MAX; n * n];
        let mut next = 0;
        for a in 0..n {
            for b in a + 1..n {
                pair_id[a * n + b] = next;
                next += 1;
            }
        }
        let mut pair_masks = vec![0u64; next];
        let mut triple_pairs = Vec::with_capacity(triples.len());
        let mut vertex_masks = Vec::with_capacity(triples.len());
        for (i, t) in triples.iter().enumerate() {
            let [a, b, c] = t.map(|v| v as usize);
            let ps = [pair_id[a * n + b], pair_id[a * n + c], pair_id[b * n + c]];
            for &p in &ps {
                pair_masks[p] |= 1 << i;
            }
            triple_pairs.push(ps);
            vertex_masks.push((1 << a) | (1 << b) | (1 << c));
        }
        let adjacency = triple_pairs
            .iter()
            .enumerate()
            .map(|(i, ps)| ps.iter().fold(0u64, |m, &p| m | pair_masks[p]) & !(1 << i))
            .collect();
        Ok(Self {
            n,
            triples,
            pair_masks,
            triple_pairs,
            adjacency,
            vertex_masks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_triples(&self) -> usize {
        self.triples.len()
    }

    pub fn full_mask(&self) -> u64 {
        if self.triples.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.triples.len()) - 1
        }
    }

    pub fn min_codegree(&self, mask: u64) -> usize {
        self.pair_masks
            .iter()
            .map(|&pm| (mask & pm).count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// Vertex masks of the tight components of `mask`.
    pub fn components(&self, mask: u64) -> Vec<u32> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut grow = 0;
                let mut f = frontier;
                while f != 0 {
                    let i = f.trailing_zeros() as usize;
                    f &= f - 1;
                    grow |= self.adjacency[i];
                }
                frontier = grow & mask & !comp;
                comp |= frontier;
            }
            rest &= !comp;
            let mut vm = 0;
            let mut c = comp;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                c &= c - 1;
                vm |= self.vertex_masks[i];
            }
            out.push(vm);
        }
        out
    }

    pub fn to_hypergraph(&self, mask: u64) -> Hypergraph {
        let edges = (0..self.triples.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.triples[i]);
        Hypergraph::new(3, self.n, edges).expect("triples are valid and distinct")
    }

    pub fn mask_of(&self, h: &Hypergraph) -> Option<u64> {
        if h.k() != 3 || h.n() != self.n {
            return None;
        }
        let mut mask = 0;
        for e in h.edges() {
            let i = self.triples.binary_search(&[e[0], e[1], e[2]]).ok()?;
            mask |= 1 << i;
        }
        Some(mask)
    }
}

/// Property tested on each enumerated 3-graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Predicate {
    /// Some tight component meets every vertex.
    SpanningComponent,
    /// Every tight component meets fewer than this many vertices.
    TcBelow(usize),
    /// At most this many tight components.
    ComponentCountAtMost(usize),
}

impl Predicate {
    fn holds(&self, n: usize, components: &[u32]) -> bool {
        match *self {
            Predicate::SpanningComponent => {
                components.iter().any(|&vm| vm.count_ones() as usize == n)
            }
            Predicate::TcBelow(t) => {
                components.iter().map(|&vm| vm.count_ones() as usize).max().unwrap_or(0) < t
            }
            Predicate::ComponentCountAtMost(c) => components.len() <= c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Random { samples: u64 },
}

/// A slice of the search space: `count` is a power of two and `index`
/// fixes the membership bits of the top log2(count) triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1 };
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchTask {
    pub n: usize,
    pub mode: Mode,
    /// Conjunction of predicates.
    pub predicates: Vec<Predicate>,
    /// Only graphs with at least this minimum codegree are examined.
    pub min_codegree: usize,
    pub seed: u64,
    pub shard: Shard,
}

/// Tallies over the examined graphs. Masks are reported smallest-first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub examined: u64,
    pub satisfying: u64,
    pub violating: u64,
    /// Largest minimum codegree among satisfying graphs, and the smallest mask attaining it.
    pub best: Option<(usize, u64)>,
    pub first_satisfying: Option<u64>,
    pub first_violation: Option<u64>,
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl SearchOutcome {
    pub fn merge(mut self, other: SearchOutcome) -> SearchOutcome {
        self.examined += other.examined;
        self.satisfying += other.satisfying;
        self.violating += other.violating;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => {
                if a.0 != b.0 {
                    Some(if a.0 > b.0 { a } else { b })
                } else {
                    Some((a.0, a.1.min(b.1)))
                }
            }
            (a, None) => a,
            (None, b) => b,
        };
        self.first_satisfying = min_opt(self.first_satisfying, other.first_satisfying);
        self.first_violation = min_opt(self.first_violation, other.first_violation);
        self
    }

    fn record(&mut self, mask: u64, delta: usize, ok: bool) {
        self.examined += 1;
        if ok {
            self.satisfying += 1;
            self.first_satisfying = min_opt(self.first_satisfying, Some(mask));
            match self.best {
                Some((d, m)) if d > delta || (d == delta && m <= mask) => {}
                _ => self.best = Some((delta, mask)),
            }
        } else {
            self.violating += 1;
            self.first_violation = min_opt(self.first_violation, Some(mask));
        }
    }
}

struct Walker<'a> {
    space: &'a TripleSpace,
    task: &'a SearchTask,
    /// Included triples per pair.
    have: Vec<usize>,
    /// Undecided triples per pair.
    open: Vec<usize>,
    outcome: SearchOutcome,
}

impl Walker<'_> {
    fn evaluate(&mut self, mask: u64) {
        let delta = self.space.min_codegree(mask);
        if delta < self.task.min_codegree {
            return;
        }
        let comps = self.space.components(mask);
        let ok = self
            .task
            .predicates
            .iter()
            .all(|p| p.holds(self.space.n, &comps));
        self.outcome.record(mask, delta, ok);
    }

    /// Decides triple `level - 1`, then recurses downward; 0-branch first so
    /// leaves come in ascending mask order.
    fn walk(&mut self, level: usize, mask: u64) {
        if level == 0 {
            self.evaluate(mask);
            return;
        }
        let t = level - 1;
        let pairs = self.space.triple_pairs[t];

        for &p in &pairs {
            self.open[p] -= 1;
        }
        if pairs
            .iter()
            .all(|&p| self.have[p] + self.open[p] >= self.task.min_codegree)
        {
            self.walk(t, mask);
        }
        for &p in &pairs {
            self.have[p] += 1;
        }
        self.walk(t, mask | (1 << t));
        for &p in &pairs {
            self.have[p] -= 1;
            self.open[p] += 1;
        }
    }

    /// Fix the top bits from the shard index, then walk the rest.
    fn run_shard(&mut self, shard: Shard) {
        let total = self.space.num_triples();
        let bits = shard.count.trailing_zeros() as usize;
        let mut mask = 0u64;
        for j in 0..bits {
            let t = total - 1 - j;
            let include = shard.index >> (bits - 1 - j) & 1 == 1;
            for &p in &self.space.triple_pairs[t] {
                self.open[p] -= 1;
                if include {
                    self.have[p] += 1;
                }
            }
            if include {
                mask |= 1 << t;
            }
        }
        let feasible = self
            .have
            .iter()
            .zip(&self.open)
            .all(|(h, o)| h + o >= self.task.min_codegree);
        if feasible {
            self.walk(total - bits, mask);
        }
    }
}

impl SearchTask {
    pub fn exhaustive(n: usize, predicates: Vec<Predicate>, min_codegree: usize) -> Self {
        Self {
            n,
            mode: Mode::Exhaustive,
            predicates,
            min_codegree,
            seed: 0,
            shard: Shard::WHOLE,
        }
    }

    fn validate(&self) -> Result<TripleSpace> {
        let space = TripleSpace::new(self.n)?;
        let Shard { index, count } = self.shard;
        if !count.is_power_of_two() || index >= count {
            return Err(Error::InvalidParameter(format!(
                "shard {index} of {count}: count must be a power of two above the index"
            )));
        }
        if self.mode == Mode::Exhaustive
            && count.trailing_zeros() as usize > space.num_triples()
        {
            return Err(Error::InvalidParameter(format!(
                "{count} shards exceed 2^{} graphs",
                space.num_triples()
            )));
        }
        Ok(space)
    }

    /// Runs this task's shard only. Exhaustive mode refuses n above
    /// [`max_exhaustive_n`].
    pub fn run(&self) -> Result<SearchOutcome> {
        let space = self.validate()?;
        match self.mode {
            Mode::Exhaustive => {
                check_feasible(self.n, max_exhaustive_n())?;
                let pairs = self.n * (self.n - 1) / 2;
                let mut w = Walker {
                    space: &space,
                    task: self,
                    have: vec![0; pairs],
                    open: vec![self.n - 2; pairs],
                    outcome: SearchOutcome::default(),
                };
                w.run_shard(self.shard);
                Ok(w.outcome)
            }
            Mode::Random { samples } => {
                let seed = self.seed ^ self.shard.index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let per_shard = samples / self.shard.count
                    + u64::from(self.shard.index < samples % self.shard.count);
                let mut w = Walker {
                    space: &space,
                    task: self,
                    have: Vec::new(),
                    open: Vec::new(),
                    outcome: SearchOutcome::default(),
                };
                for _ in 0..per_shard {
                    let mask = rng.gen::<u64>() & space.full_mask();
                    w.evaluate(mask);
                }
                Ok(w.outcome)
            }
        }
    }

    /// Runs every shard of a `shards`-way split on worker threads and merges.
    pub fn run_sharded(&self, shards: u64) -> Result<SearchOutcome> {
        let tasks: Vec<SearchTask> = (0..shards)
            .map(|index| SearchTask {
                shard: Shard { index, count: shards },
                ..self.clone()
            })
            .collect();
        let results: Vec<Result<SearchOutcome>> = std::thread::scope(|s| {
            let handles: Vec<_> = tasks.iter().map(|t| s.spawn(move || t.run())).collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        });
        results
            .into_iter()
            .try_fold(SearchOutcome::default(), |acc, r| Ok(acc.merge(r?)))
    }
}

/// Largest minimum codegree of a 3-graph on n vertices whose tight components
/// all meet fewer than t vertices, with the smallest-mask witness.
/// Returns `None` when no graph qualifies (only for t = 0).
pub fn max_codegree_with_tc_below(n: usize, t: usize, shards: u64) -> Result<Option<(usize, Hypergraph)>> {
    let space = TripleSpace::new(n)?;
    check_feasible(n, max_exhaustive_n())?;
    for d in (0..=n - 2).rev() {
        let task = SearchTask::exhaustive(n, vec![Predicate::TcBelow(t)], d);
        let outcome = if shards > 1 { task.run_sharded(shards)? } else { task.run()? };
        if let Some((delta, mask)) = outcome.best {
            return Ok(Some((delta, space.to_hypergraph(mask))));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct MycroftReport {
    pub n: usize,
    pub threshold: usize,
    pub examined: u64,
    pub violations: u64,
    pub counterexample: Option<String>,
    pub passed: bool,
}

/// Every 3-graph on n vertices with minimum codegree at least floor(n/3) has
/// at most two tight components, one of them spanning.
pub fn verify_mycroft(n: usize, shards: u64) -> Result<MycroftReport> {
    let space = TripleSpace::new(n)?;
    let threshold = n / 3;
    let task = SearchTask::exhaustive(
        n,
        vec![Predicate::ComponentCountAtMost(2), Predicate::SpanningComponent],
        threshold,
    );
    let outcome = if shards > 1 { task.run_sharded(shards)? } else { task.run()? };
    Ok(MycroftReport {
        n,
        threshold,
        examined: outcome.examined,
        violations: outcome.violating,
        counterexample: outcome.first_violation.map(|m| space.to_hypergraph(m).to_text()),
        passed: outcome.violating == 0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityReport {
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub connected_samples: usize,
    /// Smallest and largest minimum codegree among the samples.
    pub sample_codegree_range: (usize, usize),
    pub failure: Option<String>,
    pub split_w_codegree: usize,
    pub split_w_expected: usize,
    pub split_w_connected: bool,
    pub passed: bool,
}

/// Random deletion from the complete k-graph keeping every codegree above
/// (n - k)/2: deletes edges in shuffled order up to a random budget.
pub fn sample_high_codegree(n: usize, k: usize, rng: &mut impl Rng) -> Result<Hypergraph> {
    let mut edges: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(k).collect();
    let mut codegree: HashMap<Vec<Vertex>, usize> = (0..n as Vertex)
        .combinations(k - 1)
        .map(|s| (s, n - k + 1))
        .collect();
    edges.shuffle(rng);
    let budget = rng.gen_range(0..=edges.len());
    let mut keep = Vec::with_capacity(edges.len());
    let mut deleted = 0;
    for e in edges {
        let subs: Vec<Vec<Vertex>> = e.iter().copied().combinations(k - 1).collect();
        let removable = deleted < budget && subs.iter().all(|s| 2 * (codegree[s] - 1) > n - k);
        if removable {
            for s in &subs {
                *codegree.get_mut(s).unwrap() -= 1;
            }
            deleted += 1;
        } else {
            keep.push(e);
        }
    }
    Hypergraph::new(k, n, keep)
}

/// Sampled check that codegree above (n - k)/2 forces hypergraph
/// connectivity, plus the split-W graph showing the threshold is tight.
pub fn verify_connectivity_prop(n: usize, k: usize, samples: usize, seed: u64) -> Result<ConnectivityReport> {
    if k < 2 || n < k || n > 12 {
        return Err(Error::InvalidParameter(format!(
            "sampled connectivity check needs 2 <= k <= n <= 12, got n = {n}, k = {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut connected = 0;
    let mut failure = None;
    let mut range = (usize::MAX, 0);
    for _ in 0..samples {
        let h = sample_high_codegree(n, k, &mut rng)?;
        let d = h.min_codegree()?;
        range = (range.0.min(d), range.1.max(d));
        if 2 * d > n - k && h.is_hypergraph_connected()? {
            connected += 1;
        } else if failure.is_none() {
            failure = Some(h.to_text());
        }
    }
    if samples == 0 {
        range = (0, 0);
    }
    let w = split_w(n, k)?;
    let split_w_codegree = w.min_codegree()?;
    let split_w_expected = (n - k) / 2;
    let split_w_connected = w.is_hypergraph_connected()?;
    Ok(ConnectivityReport {
        n,
        k,
        samples,
        seed,
        connected_samples: connected,
        sample_codegree_range: range,
        passed: connected == samples && split_w_codegree == split_w_expected && !split_w_connected,
        failure,
        split_w_codegree,
        split_w_expected,
        split_w_connected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_space_tables() {
        let s = TripleSpace::new(5).unwrap();
        assert_eq!(s.num_triples(), 10);
        assert_eq!(s.full_mask(), 0x3ff);
        assert_eq!(s.min_codegree(s.full_mask()), 3);
        assert_eq!(s.components(s.full_mask()), vec![0b11111]);
        assert!(s.components(0).is_empty());
        let h = Hypergraph::new(3, 5, [[0u32, 1, 2], [2, 3, 4]]).unwrap();
        let m = s.mask_of(&h).unwrap();
        assert_eq!(s.to_hypergraph(m), h);
        assert_eq!(s.components(m).len(), 2);
        assert!(TripleSpace::new(8).is_err());
    }

    #[test]
    fn bitmask_analysis_matches_hypergraph() {
        let s = TripleSpace::new(5).unwrap();
        for mask in 0..1024u64 {
            let h = s.to_hypergraph(mask);
            assert_eq!(s.min_codegree(mask), h.min_codegree().unwrap());
            let mut comps: Vec<u32> = s.components(mask);
            comps.sort_unstable();
            let mut expected: Vec<u32> = h
                .tight_components()
                .components
                .iter()
                .map(|c| c.vertex_set.iter().fold(0, |m, &v| m | 1 << v))
                .collect();
            expected.sort_unstable();
            assert_eq!(comps, expected, "mask {mask:#x}");
        }
    }

    #[test]
    fn pruned_walk_sees_exactly_the_filtered_graphs() {
        let s = TripleSpace::new(5).unwrap();
        for d in 0..=3 {
            let expected = (0..1024u64).filter(|&m| s.min_codegree(m) >= d).count() as u64;
            let out = SearchTask::exhaustive(5, vec![], d).run().unwrap();
            assert_eq!(out.examined, expected, "d = {d}");
            assert_eq!(out.satisfying, expected);
        }
    }

    #[test]
    fn tiny_oracle_values() {
        let (d, w) = max_codegree_with_tc_below(5, 1, 1).unwrap().unwrap();
        assert_eq!(d, 0);
        assert_eq!(w.num_edges(), 0);
        assert!(max_codegree_with_tc_below(5, 0, 1).unwrap().is_none());
        assert!(max_codegree_with_tc_below(9, 5, 1).is_err());
    }

    #[test]
    fn mycroft_small() {
        for n in [3, 4, 5] {
            let r = verify_mycroft(n, 1).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.examined > 0);
        }
    }

    #[test]
    fn bad_shards_are_rejected() {
        let mut t = SearchTask::exhaustive(5, vec![], 0);
        t.shard = Shard { index: 0, count: 3 };
        assert!(t.run().is_err());
        t.shard = Shard { index: 4, count: 4 };
        assert!(t.run().is_err());
    }

    #[test]
    fn random_mode_is_seeded() {
        let task = SearchTask {
            n: 6,
            mode: Mode::Random { samples: 300 },
            predicates: vec![Predicate::SpanningComponent],
            min_codegree: 0,
            seed: 42,
            shard: Shard::WHOLE,
        };
        let a = task.run().unwrap();
        let b = task.run().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.examined, 300);
    }

    #[test]
    fn connectivity_small() {
        let r = verify_connectivity_prop(8, 3, 30, 7).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.sample_codegree_range.0 >= 3);
        assert!(verify_connectivity_prop(13, 3, 1, 0).is_err());
    }
}
