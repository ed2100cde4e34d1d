//! Level-by-level breadth-first search over a [`ProblemTheory`], keeping
//! only the undominated frontier.
//!
//! Each level runs the same pipeline: split every frontier member, drop
//! exact duplicates, collapse mutually dominating spaces to one
//! representative, drop representatives dominated by another, then
//! extract feasible solutions from the survivors. The best solutions seen
//! so far are carried along, so the loop needs no recursion.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::theory::{Cost, Direction, ProblemTheory, Space};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exhaustive,
    /// Require at most one undominated space per level.
    Greedy,
}

/// What greedy mode does when a level keeps more than one space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GreedyViolationPolicy {
    #[default]
    Fail,
    FallbackExhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub mode: Mode,
    pub greedy_violation: GreedyViolationPolicy,
    /// Defaults to the theory's `max_depth`.
    pub depth_bound: Option<usize>,
    pub collect_per_level_stats: bool,
    /// Worker threads for splitting and extraction. `None` or `Some(1)`
    /// runs on the calling thread. Results do not depend on it.
    pub threads: Option<usize>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            mode: Mode::Exhaustive,
            greedy_violation: GreedyViolationPolicy::Fail,
            depth_bound: None,
            collect_per_level_stats: true,
            threads: None,
        }
    }
}

impl EngineConfig {
    pub fn greedy() -> Self {
        EngineConfig {
            mode: Mode::Greedy,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelWidth {
    /// Children produced by splitting the previous frontier.
    pub raw: usize,
    /// Spaces left after dominance filtering.
    pub undominated: usize,
}

impl Serialize for LevelWidthPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.0.raw, self.0.undominated).serialize(s)
    }
}

struct LevelWidthPair(LevelWidth);

fn widths_as_pairs<S: serde::Serializer>(widths: &[LevelWidth], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(widths.iter().map(|w| LevelWidthPair(*w)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub levels: usize,
    pub generated: usize,
    pub duplicates_removed: usize,
    pub equivalence_merged: usize,
    pub dominated_pruned: usize,
    /// Sum of undominated widths over levels 1 and deeper.
    pub retained: usize,
    pub locals_found: usize,
    /// Greedy levels that kept more than one space under the fallback policy.
    pub greedy_fallbacks: usize,
    /// `(raw, undominated)` per level, starting at level 1.
    #[serde(serialize_with = "widths_as_pairs")]
    pub per_level_width: Vec<LevelWidth>,
}

impl SearchStats {
    /// Every generated child is accounted for exactly once.
    pub fn is_balanced(&self) -> bool {
        let accounted = self.duplicates_removed
            + self.equivalence_merged
            + self.dominated_pruned
            + self.retained;
        let widths_match = self.per_level_width.is_empty()
            || self.per_level_width.iter().map(|w| w.undominated).sum::<usize>() == self.retained;
        accounted == self.generated && widths_match
    }

    pub fn max_undominated_width(&self) -> usize {
        self.per_level_width
            .iter()
            .map(|w| w.undominated)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult<S> {
    /// Optimal feasible solutions found, in increasing order.
    pub optima: Vec<S>,
    pub optimal_cost: Option<Cost>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("greedy search kept {width} undominated spaces at level {level}")]
    GreedyViolation { level: usize, width: usize },
}

/// Outcome of pruning one level: the undominated spaces in canonical
/// order and how many children each stage removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned<S> {
    pub spaces: Vec<S>,
    pub duplicates: usize,
    pub merged: usize,
    pub pruned: usize,
}

/// A set of same-level spaces in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier<S> {
    pub level: usize,
    pub spaces: Vec<S>,
}

/// Keeps the cost-extremal subset of everything offered so far.
#[derive(Clone, Debug)]
pub struct RunningBest<Z> {
    direction: Direction,
    cost: Option<Cost>,
    optima: BTreeSet<Z>,
}

impl<Z: Ord> RunningBest<Z> {
    pub fn new(direction: Direction) -> Self {
        RunningBest {
            direction,
            cost: None,
            optima: BTreeSet::new(),
        }
    }

    pub fn offer(&mut self, z: Z, cost: Cost) {
        match self.cost.map(|best| self.direction.compare(cost, best)) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => {
                self.optima.insert(z);
            }
            Some(Ordering::Less) | None => {
                self.cost = Some(cost);
                self.optima.clear();
                self.optima.insert(z);
            }
        }
    }

    pub fn cost(&self) -> Option<Cost> {
        self.cost
    }

    pub fn into_parts(self) -> (Option<Cost>, Vec<Z>) {
        (self.cost, self.optima.into_iter().collect())
    }
}

/// The optimal subset of `candidates`: every member whose cost no other
/// member beats. Ties are all kept.
pub fn opt_c<Z: Ord>(
    candidates: impl IntoIterator<Item = (Z, Cost)>,
    direction: Direction,
) -> (Option<Cost>, Vec<Z>) {
    let mut best = RunningBest::new(direction);
    for (z, c) in candidates {
        best.offer(z, c);
    }
    best.into_parts()
}

/// Greedy levels may keep at most one space. Returns the offending width.
pub fn check_greedy(width: usize) -> Result<(), usize> {
    if width <= 1 {
        Ok(())
    } else {
        Err(width)
    }
}

/// Removes canonical duplicates, keeping the first occurrence. The result
/// is in canonical order.
pub fn dedupe<S: Ord>(mut children: Vec<S>) -> (Vec<S>, usize) {
    let before = children.len();
    children.sort();
    children.dedup();
    let removed = before - children.len();
    (children, removed)
}

pub struct Engine<'t, T: ProblemTheory> {
    theory: &'t T,
    config: EngineConfig,
    pool: Option<rayon::ThreadPool>,
}

impl<'t, T: ProblemTheory> Engine<'t, T> {
    pub fn new(theory: &'t T, config: EngineConfig) -> Self {
        let pool = config.threads.filter(|&n| n > 1).map(|n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
        });
        Engine {
            theory,
            config,
            pool,
        }
    }

    /// Children of every frontier member, concatenated in frontier order.
    pub fn expand(&self, frontier: &Frontier<T::Space>) -> Vec<T::Space> {
        match &self.pool {
            Some(pool) => pool.install(|| {
                frontier
                    .spaces
                    .par_iter()
                    .map(|y| self.theory.split(y))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }),
            None => match frontier.spaces.as_slice() {
                [only] => self.theory.split(only),
                spaces => spaces.iter().flat_map(|y| self.theory.split(y)).collect(),
            },
        }
    }

    /// Splits `spaces` into dominance-key groups in key order.
    fn key_groups(&self, spaces: Vec<T::Space>) -> Vec<Vec<T::Space>> {
        let keys: Vec<T::Key> = spaces.iter().map(|y| self.theory.dominance_key(y)).collect();
        if keys.windows(2).all(|w| w[0] == w[1]) {
            return if spaces.is_empty() { Vec::new() } else { vec![spaces] };
        }
        let mut groups: BTreeMap<T::Key, Vec<T::Space>> = BTreeMap::new();
        for (key, y) in keys.into_iter().zip(spaces) {
            groups.entry(key).or_default().push(y);
        }
        groups.into_values().collect()
    }

    /// Splits `spaces` into dominance-key groups, each sorted by
    /// precedence with canonical order among equals.
    fn precedence_groups(&self, spaces: Vec<T::Space>) -> Vec<Vec<T::Space>> {
        self.key_groups(spaces)
            .into_iter()
            .map(|mut group| {
                group.sort_unstable_by(|a, b| self.theory.precedence(a, b).then_with(|| a.cmp(b)));
                group
            })
            .collect()
    }

    /// Calls `visit` once per run of precedence-equal spaces.
    fn for_each_run(group: &[T::Space], theory: &T, mut visit: impl FnMut(&[T::Space])) {
        let mut start = 0;
        while start < group.len() {
            let mut end = start + 1;
            while end < group.len() && theory.precedence(&group[start], &group[end]) == Ordering::Equal {
                end += 1;
            }
            visit(&group[start..end]);
            start = end;
        }
    }

    /// Collapses each class of mutually dominating spaces to its
    /// canonically smallest member. Returns the representatives in
    /// canonical order and the number merged away.
    pub fn reduce_equivalent(&self, spaces: Vec<T::Space>) -> (Vec<T::Space>, usize) {
        let before = spaces.len();
        let mut reps = Vec::with_capacity(before);
        for group in self.precedence_groups(spaces) {
            Self::for_each_run(&group, self.theory, |run| {
                let first = reps.len();
                for y in run {
                    let merged = reps[first..]
                        .iter()
                        .any(|r| self.theory.dominates(r, y) && self.theory.dominates(y, r));
                    if !merged {
                        reps.push(y.clone());
                    }
                }
            });
        }
        let merged = before - reps.len();
        reps.sort();
        (reps, merged)
    }

    /// Drops every representative dominated by another. Returns the
    /// survivors in canonical order and the number pruned.
    pub fn filter_dominated(&self, reps: Vec<T::Space>) -> (Vec<T::Space>, usize) {
        let before = reps.len();
        let mut survivors = Vec::new();
        for group in self.precedence_groups(reps) {
            // undominated members of earlier runs; a dominator always
            // precedes or ties with what it dominates
            let mut kept: Vec<T::Space> = Vec::new();
            Self::for_each_run(&group, self.theory, |run| {
                let mut fresh = Vec::new();
                for (i, y) in run.iter().enumerate() {
                    let beaten = kept.iter().any(|m| self.theory.dominates(m, y))
                        || run
                            .iter()
                            .enumerate()
                            .any(|(j, other)| j != i && self.theory.dominates(other, y));
                    if !beaten {
                        fresh.push(y.clone());
                    }
                }
                kept.extend(fresh);
            });
            survivors.extend(kept);
        }
        let pruned = before - survivors.len();
        survivors.sort();
        (survivors, pruned)
    }

    /// `dedupe`, `reduce_equivalent` and `filter_dominated` in one pass.
    ///
    /// Per key group, the precedence-minimal run is found by a linear scan
    /// and reduced first; whatever its survivors dominate is dropped before
    /// the rest is sorted. Survivors match the staged pipeline. Counts can
    /// differ: a child dominated by a leading survivor is counted as pruned
    /// even when it duplicates or is equivalent to another child.
    pub fn prune_level(&self, children: Vec<T::Space>) -> Pruned<T::Space> {
        let theory = self.theory;
        let mut out = Pruned {
            spaces: Vec::new(),
            duplicates: 0,
            merged: 0,
            pruned: 0,
        };
        for group in self.key_groups(children) {
            let mut lead_at = vec![0];
            for i in 1..group.len() {
                match theory.precedence(&group[i], &group[lead_at[0]]) {
                    Ordering::Less => lead_at = vec![i],
                    Ordering::Equal => lead_at.push(i),
                    Ordering::Greater => {}
                }
            }
            let mut lead: Vec<T::Space> = lead_at.iter().map(|&i| group[i].clone()).collect();
            lead.sort_unstable();

            let mut kept: Vec<T::Space> = Vec::new();
            self.reduce_run(&mut lead, &mut kept, &mut out);
            let mut rest: Vec<T::Space> = Vec::new();
            let mut lead_at = lead_at.into_iter().peekable();
            for (i, y) in group.into_iter().enumerate() {
                if lead_at.peek() == Some(&i) {
                    lead_at.next();
                } else if kept.iter().any(|m| theory.dominates(m, &y)) {
                    out.pruned += 1;
                } else {
                    rest.push(y);
                }
            }
            rest.sort_unstable_by(|a, b| theory.precedence(a, b).then_with(|| a.cmp(b)));
            let mut start = 0;
            while start < rest.len() {
                let mut end = start + 1;
                while end < rest.len()
                    && theory.precedence(&rest[start], &rest[end]) == Ordering::Equal
                {
                    end += 1;
                }
                let mut run: Vec<T::Space> = rest[start..end].to_vec();
                self.reduce_run(&mut run, &mut kept, &mut out);
                start = end;
            }
            out.spaces.extend(kept);
        }
        out.spaces.sort();
        out
    }

    /// Dedupes, merges and filters one canonically sorted run of
    /// precedence-equal spaces, appending its survivors to `kept`.
    fn reduce_run(&self, run: &mut Vec<T::Space>, kept: &mut Vec<T::Space>, out: &mut Pruned<T::Space>) {
        let theory = self.theory;
        let before = run.len();
        run.dedup();
        out.duplicates += before - run.len();
        let mut reps: Vec<&T::Space> = Vec::with_capacity(run.len());
        for y in run.iter() {
            if reps.iter().any(|r| theory.dominates(r, y) && theory.dominates(y, r)) {
                out.merged += 1;
            } else {
                reps.push(y);
            }
        }
        let mut fresh = Vec::new();
        for (i, y) in reps.iter().enumerate() {
            let beaten = kept.iter().any(|m| theory.dominates(m, y))
                || reps
                    .iter()
                    .enumerate()
                    .any(|(j, other)| j != i && theory.dominates(other, y));
            if beaten {
                out.pruned += 1;
            } else {
                fresh.push((*y).clone());
            }
        }
        kept.extend(fresh);
    }

    /// Feasible solutions directly extractable from frontier members, with
    /// their costs.
    pub fn collect_locals(&self, frontier: &Frontier<T::Space>) -> Vec<(T::Solution, Cost)> {
        let local = |y: &T::Space| {
            let z = self.theory.extract(y)?;
            self.theory.feasible(&z).then(|| {
                let c = self.theory.cost(&z);
                (z, c)
            })
        };
        match &self.pool {
            Some(pool) => pool.install(|| frontier.spaces.par_iter().filter_map(local).collect()),
            None => frontier.spaces.iter().filter_map(local).collect(),
        }
    }

    pub fn solve(&self) -> Result<SolveResult<T::Solution>, EngineError> {
        let theory = self.theory;
        let depth_bound = self.config.depth_bound.unwrap_or_else(|| theory.max_depth());
        let mut stats = SearchStats::default();
        let mut best = RunningBest::new(theory.direction());

        let mut frontier = Frontier {
            level: 0,
            spaces: vec![theory.initial()],
        };
        self.absorb_locals(&frontier, &mut best, &mut stats);

        while !frontier.spaces.is_empty() && frontier.level < depth_bound {
            let children = self.expand(&frontier);
            let raw = children.len();
            stats.generated += raw;

            let Pruned {
                spaces: undominated,
                duplicates,
                merged,
                pruned,
            } = self.prune_level(children);
            stats.duplicates_removed += duplicates;
            stats.equivalence_merged += merged;
            stats.dominated_pruned += pruned;

            let level = frontier.level + 1;
            let width = undominated.len();
            stats.retained += width;
            if self.config.collect_per_level_stats {
                stats.per_level_width.push(LevelWidth {
                    raw,
                    undominated: width,
                });
            }
            debug_assert!(undominated.iter().all(|y| y.level() == level));

            if self.config.mode == Mode::Greedy {
                if let Err(width) = check_greedy(width) {
                    match self.config.greedy_violation {
                        GreedyViolationPolicy::Fail => {
                            return Err(EngineError::GreedyViolation { level, width })
                        }
                        GreedyViolationPolicy::FallbackExhaustive => stats.greedy_fallbacks += 1,
                    }
                }
            }

            frontier = Frontier {
                level,
                spaces: undominated,
            };
            stats.levels = level;
            self.absorb_locals(&frontier, &mut best, &mut stats);
        }

        let (optimal_cost, optima) = best.into_parts();
        Ok(SolveResult {
            optima,
            optimal_cost,
            stats,
        })
    }

    fn absorb_locals(
        &self,
        frontier: &Frontier<T::Space>,
        best: &mut RunningBest<T::Solution>,
        stats: &mut SearchStats,
    ) {
        for (z, c) in self.collect_locals(frontier) {
            stats.locals_found += 1;
            best.offer(z, c);
        }
    }
}

/// Runs one search of `theory` under `config`.
pub fn solve<T: ProblemTheory>(
    theory: &T,
    config: &EngineConfig,
) -> Result<SolveResult<T::Solution>, EngineError> {
    Engine::new(theory, config.clone()).solve()
}
