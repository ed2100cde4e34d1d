//! A sorted slice viewed together with at most one extra element.
//!
//! Tree and forest spaces store a shared parent state plus the one edge
//! a split added; comparisons walk this merged view instead of building
//! the child's sorted vectors.

use std::cmp::Ordering;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Overlay<'a, T> {
    base: &'a [T],
    extra: Option<T>,
}

impl<'a, T: Ord + Copy> Overlay<'a, T> {
    pub(crate) fn new(base: &'a [T], extra: Option<T>) -> Self {
        Overlay { base, extra }
    }

    pub(crate) fn len(&self) -> usize {
        self.base.len() + usize::from(self.extra.is_some())
    }

    pub(crate) fn iter(&self) -> OverlayIter<'a, T> {
        OverlayIter {
            base: self.base,
            extra: self.extra,
        }
    }

    pub(crate) fn cmp_by<U: Ord>(&self, other: &Overlay<'_, T>, key: impl Fn(T) -> U) -> Ordering {
        self.iter().map(&key).cmp(other.iter().map(&key))
    }

    /// Copies the merged view into a new sorted vector.
    pub(crate) fn to_vec(self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.len());
        out.extend(self.iter());
        out
    }
}

pub(crate) struct OverlayIter<'a, T> {
    base: &'a [T],
    extra: Option<T>,
}

impl<T: Ord + Copy> Iterator for OverlayIter<'_, T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        match (self.base.first(), self.extra) {
            (Some(&head), Some(x)) if x < head => {
                self.extra = None;
                Some(x)
            }
            (Some(&head), _) => {
                self.base = &self.base[1..];
                Some(head)
            }
            (None, extra) => {
                self.extra = None;
                extra
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.base.len() + usize::from(self.extra.is_some());
        (n, Some(n))
    }
}

/// Inserts `x` into the sorted vector `v`.
pub(crate) fn insert_sorted<T: Ord>(v: &mut Vec<T>, x: T) {
    let at = v.partition_point(|y| *y < x);
    v.insert(at, x);
}
