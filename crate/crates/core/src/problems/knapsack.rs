//! 0-1 knapsack: decide items in index order, maximising utility.

use crate::theory::{Cost, Direction, ProblemTheory, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Item {
    pub weight: Cost,
    pub utility: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub capacity: Cost,
    pub items: Vec<Item>,
}

impl KnapsackInstance {
    pub fn new(capacity: Cost, items: Vec<Item>) -> Self {
        KnapsackInstance { capacity, items }
    }
}

/// A decided prefix of the items. `decisions[i]` is true when item `i`
/// is packed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KnapsackSpace {
    decisions: Vec<bool>,
    weight: Cost,
    utility: Cost,
}

impl KnapsackSpace {
    pub fn decided(&self) -> usize {
        self.decisions.len()
    }

    pub fn weight(&self) -> Cost {
        self.weight
    }

    pub fn utility(&self) -> Cost {
        self.utility
    }

    pub fn selected(&self) -> Vec<usize> {
        self.decisions
            .iter()
            .enumerate()
            .filter_map(|(i, &packed)| packed.then_some(i))
            .collect()
    }
}

impl Space for KnapsackSpace {
    fn level(&self) -> usize {
        self.decisions.len()
    }
}

#[derive(Clone, Debug)]
pub struct KnapsackTheory {
    instance: KnapsackInstance,
}

impl KnapsackTheory {
    pub fn new(instance: KnapsackInstance) -> Self {
        KnapsackTheory { instance }
    }

    pub fn instance(&self) -> &KnapsackInstance {
        &self.instance
    }
}

impl ProblemTheory for KnapsackTheory {
    type Space = KnapsackSpace;
    /// Indices of packed items, increasing.
    type Solution = Vec<usize>;
    type Key = usize;
    /// Whether the next item was packed.
    type Increment = bool;

    fn direction(&self) -> Direction {
        Direction::Maximize
    }

    fn initial(&self) -> KnapsackSpace {
        KnapsackSpace {
            decisions: Vec::new(),
            weight: 0,
            utility: 0,
        }
    }

    fn split(&self, y: &KnapsackSpace) -> Vec<KnapsackSpace> {
        let Some(item) = self.instance.items.get(y.decided()) else {
            return Vec::new();
        };
        let mut out = y.clone();
        out.decisions.push(false);
        let mut children = vec![out];
        if y.weight + item.weight <= self.instance.capacity {
            let mut packed = y.clone();
            packed.decisions.push(true);
            packed.weight += item.weight;
            packed.utility += item.utility;
            children.push(packed);
        }
        children
    }

    fn increment(&self, _parent: &KnapsackSpace, child: &KnapsackSpace) -> bool {
        *child.decisions.last().expect("a split child has a decision")
    }

    fn extract(&self, y: &KnapsackSpace) -> Option<Vec<usize>> {
        (y.decided() == self.instance.items.len()).then(|| y.selected())
    }

    fn feasible(&self, z: &Vec<usize>) -> bool {
        let n = self.instance.items.len();
        let distinct = z.windows(2).all(|w| w[0] < w[1]);
        distinct
            && z.iter().all(|&i| i < n)
            && z.iter().map(|&i| self.instance.items[i].weight).sum::<Cost>()
                <= self.instance.capacity
    }

    fn cost(&self, z: &Vec<usize>) -> Cost {
        z.iter().map(|&i| self.instance.items[i].utility).sum()
    }

    fn partial_cost(&self, y: &KnapsackSpace) -> Cost {
        y.utility
    }

    fn semi_congruent(&self, y: &KnapsackSpace, other: &KnapsackSpace) -> bool {
        y.decided() == other.decided() && y.weight <= other.weight
    }

    fn dominance_key(&self, y: &KnapsackSpace) -> usize {
        y.decided()
    }

    fn max_depth(&self) -> usize {
        self.instance.items.len()
    }
}
