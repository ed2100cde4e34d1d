//! The problem-theory interface consumed by the search engine.
//!
//! A theory bundles one problem instance together with everything the
//! engine needs to search it: the initial space, the split relation that
//! refines a space into subspaces, extraction of complete candidates,
//! the feasibility predicate and cost function of the problem, and the
//! dominance machinery used to prune the frontier.
//!
//! Dominance defaults to "semi-congruent and at least as cheap". Theories
//! whose derived relation is stronger (the greedy graph instantiations)
//! override [`ProblemTheory::dominates`] and [`ProblemTheory::precedence`].

use std::cmp::Ordering;
use std::fmt::Debug;

/// Costs, weights and utilities are natural numbers.
pub type Cost = u64;

/// Optimisation direction of a theory.
///
/// Maximisation only reverses comparisons; stored costs are never negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// Orders two costs so that the better one compares `Less`.
    pub fn compare(self, a: Cost, b: Cost) -> Ordering {
        match self {
            Direction::Minimize => a.cmp(&b),
            Direction::Maximize => b.cmp(&a),
        }
    }

    /// `a` is at least as good as `b`.
    pub fn at_least_as_good(self, a: Cost, b: Cost) -> bool {
        self.compare(a, b) != Ordering::Greater
    }

    /// Picks the better of two costs.
    pub fn best(self, a: Cost, b: Cost) -> Cost {
        if self.at_least_as_good(a, b) {
            a
        } else {
            b
        }
    }
}

/// Outcome of testing dominance in both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominanceVerdict {
    LeftDominates,
    RightDominates,
    Mutual,
    Incomparable,
}

/// A search-space descriptor: a partial solution.
///
/// `Ord` is the canonical order. Equality under it is the duplicate
/// relation used by the engine.
pub trait Space: Clone + Ord + Debug + Send + Sync {
    /// Number of splits separating this space from the initial one.
    fn level(&self) -> usize;
}

/// A global-search theory for one problem instance.
///
/// All methods are pure; implementations must be shareable across
/// threads.
pub trait ProblemTheory: Sync {
    type Space: Space;
    type Solution: Clone + Ord + Debug + Send + Sync;
    /// Partition key for dominance tests: `dominates(a, b)` implies
    /// `dominance_key(a) == dominance_key(b)`.
    type Key: Ord + Clone + Debug;
    /// The extra information a split adds to its parent. Replaying the
    /// same increments on another space realises the extension operator.
    type Increment: Clone + Eq + Debug;

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    /// The initial space, at level 0.
    fn initial(&self) -> Self::Space;

    /// All immediate subspaces of `y`, each at `y.level() + 1`, duplicate
    /// free. Empty for terminal spaces.
    fn split(&self, y: &Self::Space) -> Vec<Self::Space>;

    /// The increment that turned `parent` into `child`.
    fn increment(&self, parent: &Self::Space, child: &Self::Space) -> Self::Increment;

    /// The candidate directly extractable from `y`, if `y` is complete.
    fn extract(&self, y: &Self::Space) -> Option<Self::Solution>;

    fn feasible(&self, z: &Self::Solution) -> bool;

    fn cost(&self, z: &Self::Solution) -> Cost;

    /// Cost of the partial solution `y`; additive over split increments.
    fn partial_cost(&self, y: &Self::Space) -> Cost;

    /// Sufficient condition for "every extension that makes `other`
    /// useable also makes `y` useable".
    fn semi_congruent(&self, y: &Self::Space, other: &Self::Space) -> bool;

    /// `y` is guaranteed to contain a solution at least as good as the
    /// best one in `other`.
    fn dominates(&self, y: &Self::Space, other: &Self::Space) -> bool {
        self.semi_congruent(y, other)
            && self
                .direction()
                .at_least_as_good(self.partial_cost(y), self.partial_cost(other))
    }

    fn dominance_key(&self, y: &Self::Space) -> Self::Key;

    /// A total preorder compatible with dominance: `dominates(a, b)`
    /// implies `precedence(a, b) != Greater`, so mutual dominance implies
    /// `Equal`. The engine sorts by it to avoid all-pairs tests.
    fn precedence(&self, a: &Self::Space, b: &Self::Space) -> Ordering {
        self.direction()
            .compare(self.partial_cost(a), self.partial_cost(b))
    }

    /// Upper bound on the depth of the split tree.
    fn max_depth(&self) -> usize;
}

/// Tests dominance both ways.
pub fn verdict<T: ProblemTheory>(theory: &T, a: &T::Space, b: &T::Space) -> DominanceVerdict {
    match (theory.dominates(a, b), theory.dominates(b, a)) {
        (true, true) => DominanceVerdict::Mutual,
        (true, false) => DominanceVerdict::LeftDominates,
        (false, true) => DominanceVerdict::RightDominates,
        (false, false) => DominanceVerdict::Incomparable,
    }
}

/// Follows the split choices in `increments` starting from `y`.
///
/// Returns `None` as soon as some increment is not available as a split
/// of the current space.
pub fn replay<T: ProblemTheory>(
    theory: &T,
    y: &T::Space,
    increments: &[T::Increment],
) -> Option<T::Space> {
    let mut current = y.clone();
    for inc in increments {
        let next = theory
            .split(&current)
            .into_iter()
            .find(|child| theory.increment(&current, child) == *inc)?;
        current = next;
    }
    Some(current)
}

/// Wraps a theory and turns dominance off, keeping only reflexivity.
///
/// Searching with it explores every distinct space; used to measure how
/// much work the real dominance relation saves.
#[derive(Clone, Debug)]
pub struct WithoutDominance<T>(pub T);

impl<T: ProblemTheory> ProblemTheory for WithoutDominance<T> {
    type Space = T::Space;
    type Solution = T::Solution;
    type Key = T::Key;
    type Increment = T::Increment;

    fn direction(&self) -> Direction {
        self.0.direction()
    }
    fn initial(&self) -> Self::Space {
        self.0.initial()
    }
    fn split(&self, y: &Self::Space) -> Vec<Self::Space> {
        self.0.split(y)
    }
    fn increment(&self, parent: &Self::Space, child: &Self::Space) -> Self::Increment {
        self.0.increment(parent, child)
    }
    fn extract(&self, y: &Self::Space) -> Option<Self::Solution> {
        self.0.extract(y)
    }
    fn feasible(&self, z: &Self::Solution) -> bool {
        self.0.feasible(z)
    }
    fn cost(&self, z: &Self::Solution) -> Cost {
        self.0.cost(z)
    }
    fn partial_cost(&self, y: &Self::Space) -> Cost {
        self.0.partial_cost(y)
    }
    fn semi_congruent(&self, y: &Self::Space, other: &Self::Space) -> bool {
        y == other
    }
    fn dominates(&self, y: &Self::Space, other: &Self::Space) -> bool {
        y == other
    }
    fn dominance_key(&self, y: &Self::Space) -> Self::Key {
        self.0.dominance_key(y)
    }
    fn precedence(&self, a: &Self::Space, b: &Self::Space) -> Ordering {
        self.0.precedence(a, b)
    }
    fn max_depth(&self) -> usize {
        self.0.max_depth()
    }
}
