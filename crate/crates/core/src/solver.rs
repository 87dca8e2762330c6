//! Exact minimum generators for all four variants.
//!
//! Each vertex gets a bitset of the item pairs it resolves. A candidate set is
//! a generator when the union of its bitsets is full (plain variants) or when
//! every pair is covered at least twice (fault-tolerant variants, tracked with
//! a second "covered twice" bitset).
//!
//! The exact search walks candidate sizes upward from the twin lower bound.
//! Within a size it runs an include-first DFS over vertex indices, so the
//! first hit is the lexicographically smallest basis. Twin constraints limit
//! which vertices may be left out, and suffix unions prune branches that can
//! no longer cover every pair.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{Metric, Variant};
use crate::twins::{find_twins, ForcedInclusion};

/// Default node budget for [`exact_dimension`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Largest graph accepted by [`brute_force_dimension`].
pub const BRUTE_FORCE_MAX: usize = 16;

// Cap on the resolver table, in 64-bit words.
const MAX_TABLE_WORDS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub variant: Variant,
    pub value: usize,
    /// Lexicographically smallest basis, sorted.
    pub basis: Vec<usize>,
    pub nodes_explored: u64,
    /// Lower bound the search started from.
    pub bound_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(SolveResult),
    /// Budget ran out. Every size below `lower` was refuted and `witness`
    /// (of size `upper`) is a valid generator.
    Unknown {
        variant: Variant,
        lower: usize,
        upper: usize,
        witness: Vec<usize>,
        nodes_explored: u64,
    },
}

impl SolveOutcome {
    pub fn solved(&self) -> Option<&SolveResult> {
        match self {
            SolveOutcome::Solved(r) => Some(r),
            SolveOutcome::Unknown { .. } => None,
        }
    }

    pub fn value(&self) -> Option<usize> {
        self.solved().map(|r| r.value)
    }
}

type Bits = Vec<u64>;

/// Per-vertex bitsets of resolved item pairs.
struct PairTable {
    words: usize,
    full: Bits,
    rows: Vec<Bits>,
}

impl PairTable {
    fn new(metric: &Metric<'_>, edge: bool) -> Result<Self> {
        let n = metric.graph().vertex_count();
        let m = metric.item_count(edge);
        let pairs = m * m.saturating_sub(1) / 2;
        let words = pairs.div_ceil(64);
        if words.saturating_mul(n) > MAX_TABLE_WORDS {
            return Err(Error::Unsupported(format!(
                "resolver table for {n} vertices and {pairs} pairs is too large"
            )));
        }
        let rows = (0..n)
            .into_par_iter()
            .map(|w| {
                let p = metric.profile(w, edge);
                let mut bits = vec![0u64; words];
                let mut k = 0;
                for i in 0..m {
                    for j in i + 1..m {
                        if p[i] != p[j] {
                            bits[k / 64] |= 1 << (k % 64);
                        }
                        k += 1;
                    }
                }
                bits
            })
            .collect();
        let mut full = vec![u64::MAX; words];
        if !pairs.is_multiple_of(64) {
            full[words - 1] = (1u64 << (pairs % 64)) - 1;
        }
        Ok(PairTable { words, full, rows })
    }

    fn is_full(&self, bits: &[u64]) -> bool {
        bits == self.full.as_slice()
    }
}

/// Running once/twice coverage of the pair table.
#[derive(Clone)]
struct Coverage {
    once: Bits,
    twice: Bits,
}

impl Coverage {
    fn empty(words: usize) -> Self {
        Coverage {
            once: vec![0; words],
            twice: vec![0; words],
        }
    }

    fn add(&mut self, row: &[u64]) {
        for ((o, t), r) in self.once.iter_mut().zip(self.twice.iter_mut()).zip(row) {
            *t |= *o & r;
            *o |= r;
        }
    }

    fn complete(&self, table: &PairTable, need: usize) -> bool {
        if need >= 2 {
            table.is_full(&self.twice)
        } else {
            table.is_full(&self.once)
        }
    }

    /// Whether adding some superset of `rest` could complete the cover.
    fn completable(&self, rest: &Coverage, table: &PairTable, need: usize) -> bool {
        if need >= 2 {
            self.twice
                .iter()
                .zip(&self.once)
                .zip(rest.once.iter().zip(&rest.twice))
                .zip(&table.full)
                .all(|(((t, o), (ro, rt)), f)| (t | (o & ro) | rt) == *f)
        } else {
            self.once
                .iter()
                .zip(&rest.once)
                .zip(&table.full)
                .all(|((o, ro), f)| (o | ro) == *f)
        }
    }
}

fn min_size(variant: Variant, n: usize) -> Result<usize> {
    if variant.is_fault_tolerant() {
        if n < 2 {
            return Err(Error::Unsupported(
                "fault-tolerant dimensions need at least 2 vertices".into(),
            ));
        }
        Ok(2)
    } else {
        Ok(1)
    }
}

fn greedy_with_table(table: &PairTable, n: usize, variant: Variant) -> Result<Vec<usize>> {
    let need = variant.resolvers_needed();
    let mut cov = Coverage::empty(table.words);
    let mut chosen = vec![false; n];
    let mut set = Vec::new();
    while !cov.complete(table, need) {
        let target = if need >= 2 { &cov.twice } else { &cov.once };
        let best = (0..n)
            .filter(|&v| !chosen[v])
            .map(|v| {
                let gain: u32 = table.rows[v]
                    .iter()
                    .zip(target)
                    .map(|(r, c)| (r & !c).count_ones())
                    .sum();
                (gain, v)
            })
            // Highest gain, then lowest index.
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match best {
            Some((gain, v)) if gain > 0 => {
                chosen[v] = true;
                set.push(v);
                cov.add(&table.rows[v]);
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "no {variant} generator exists for this graph"
                )))
            }
        }
    }
    let min = min_size(variant, n)?;
    for (v, picked) in chosen.iter_mut().enumerate() {
        if set.len() >= min {
            break;
        }
        if !*picked {
            *picked = true;
            set.push(v);
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// Greedy set cover over unresolved pairs. Always returns a valid generator.
pub fn greedy_upper_bound(g: &Graph, variant: Variant) -> Result<Vec<usize>> {
    let metric = Metric::new(g)?;
    let table = PairTable::new(&metric, variant.is_edge())?;
    greedy_with_table(&table, g.vertex_count(), variant)
}

struct Search<'a> {
    table: &'a PairTable,
    need: usize,
    n: usize,
    // group index per vertex, if the vertex is constrained
    group_of: Vec<Option<usize>>,
    // per group: picks still required / members not yet decided
    group_need: Vec<usize>,
    group_left: Vec<usize>,
    sum_need: usize,
    suffix: Vec<Coverage>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    NotFound,
    OutOfBudget,
}

impl<'a> Search<'a> {
    fn new(
        table: &'a PairTable,
        n: usize,
        need: usize,
        forced: &ForcedInclusion,
        budget: u64,
    ) -> Self {
        let mut group_of = vec![None; n];
        let mut group_need = Vec::new();
        let mut group_left = Vec::new();
        for (gi, (members, min)) in forced.groups.iter().enumerate() {
            for &m in members {
                group_of[m] = Some(gi);
            }
            group_need.push(*min);
            group_left.push(members.len());
        }
        let sum_need = group_need.iter().sum();
        let mut suffix = vec![Coverage::empty(table.words); n + 1];
        for v in (0..n).rev() {
            let mut c = suffix[v + 1].clone();
            c.add(&table.rows[v]);
            suffix[v] = c;
        }
        Search {
            table,
            need,
            n,
            group_of,
            group_need,
            group_left,
            sum_need,
            suffix,
            chosen: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self, size: usize) -> Step {
        self.chosen.clear();
        let cov = Coverage::empty(self.table.words);
        self.dfs(0, size, &cov)
    }

    fn dfs(&mut self, idx: usize, size: usize, cov: &Coverage) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let picks_left = size - self.chosen.len();
        if picks_left < self.sum_need || picks_left > self.n - idx {
            return Step::NotFound;
        }
        if picks_left == 0 {
            return if cov.complete(self.table, self.need) {
                Step::Found
            } else {
                Step::NotFound
            };
        }
        if !cov.completable(&self.suffix[idx], self.table, self.need) {
            return Step::NotFound;
        }

        let group = self.group_of[idx];

        // Include idx.
        let mut next = cov.clone();
        next.add(&self.table.rows[idx]);
        self.chosen.push(idx);
        let took_need = match group {
            Some(g) => {
                self.group_left[g] -= 1;
                if self.group_need[g] > 0 {
                    self.group_need[g] -= 1;
                    self.sum_need -= 1;
                    true
                } else {
                    false
                }
            }
            None => false,
        };
        let step = self.dfs(idx + 1, size, &next);
        if let Some(g) = group {
            self.group_left[g] += 1;
            if took_need {
                self.group_need[g] += 1;
                self.sum_need += 1;
            }
        }
        if !matches!(step, Step::NotFound) {
            return step;
        }
        self.chosen.pop();

        // Exclude idx, if the group can spare it.
        match group {
            Some(g) => {
                if self.group_left[g] <= self.group_need[g] {
                    return Step::NotFound;
                }
                self.group_left[g] -= 1;
                let step = self.dfs(idx + 1, size, cov);
                self.group_left[g] += 1;
                step
            }
            None => self.dfs(idx + 1, size, cov),
        }
    }
}

/// Exact dimension for `variant`, searching at most `budget` DFS nodes.
pub fn exact_dimension(g: &Graph, variant: Variant, budget: u64) -> Result<SolveOutcome> {
    let n = g.vertex_count();
    let metric = Metric::new(g)?;
    let min = min_size(variant, n)?;
    let table = PairTable::new(&metric, variant.is_edge())?;
    let upper_set = greedy_with_table(&table, n, variant)?;

    let twins = find_twins(g);
    let forced = twins.forced_inclusion(g, variant);
    let bound = twins.lower_bounds().get(variant).max(min);

    let mut search = Search::new(&table, n, variant.resolvers_needed(), &forced, budget);
    for size in bound..=upper_set.len() {
        match search.run(size) {
            Step::Found => {
                let basis = search.chosen.clone();
                debug_assert!(metric
                    .check(variant, &basis)
                    .map(|c| c.accepted)
                    .unwrap_or(false));
                return Ok(SolveOutcome::Solved(SolveResult {
                    variant,
                    value: size,
                    basis,
                    nodes_explored: search.nodes,
                    bound_used: bound,
                }));
            }
            Step::NotFound => {}
            Step::OutOfBudget => {
                return Ok(SolveOutcome::Unknown {
                    variant,
                    lower: size,
                    upper: upper_set.len(),
                    witness: upper_set,
                    nodes_explored: search.budget,
                })
            }
        }
    }
    Err(Error::Unsupported(format!(
        "search missed the greedy {variant} generator of size {}",
        upper_set.len()
    )))
}

/// Unconstrained enumeration of all subsets in size order, checked with the
/// generator predicates directly.
pub fn brute_force_dimension(g: &Graph, variant: Variant) -> Result<SolveResult> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::BruteForceTooLarge {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let metric = Metric::new(g)?;
    let min = min_size(variant, n)?;
    let mut nodes = 0u64;
    for size in min..=n {
        for set in (0..n).combinations(size) {
            nodes += 1;
            if metric.check(variant, &set)?.accepted {
                return Ok(SolveResult {
                    variant,
                    value: size,
                    basis: set,
                    nodes_explored: nodes,
                    bound_used: min,
                });
            }
        }
    }
    Err(Error::Unsupported(format!("no {variant} generator exists")))
}

/// Every minimum generator of `variant`, in lexicographic order.
pub fn brute_force_all_bases(g: &Graph, variant: Variant) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::BruteForceTooLarge {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let metric = Metric::new(g)?;
    for size in min_size(variant, n)?..=n {
        let mut bases = Vec::new();
        for set in (0..n).combinations(size) {
            if metric.check(variant, &set)?.accepted {
                bases.push(set);
            }
        }
        if !bases.is_empty() {
            return Ok(bases);
        }
    }
    Err(Error::Unsupported(format!("no {variant} generator exists")))
}
