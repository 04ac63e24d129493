use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A topology on points `0..n`, stored by its closed-set family. Finite
/// spaces admit minimal open neighborhoods: the intersection of all opens
/// containing a point is itself open, which is what makes section
/// membership decidable.
#[derive(Clone, Debug)]
pub struct FiniteTopology {
    point_count: usize,
    closed: Vec<BitSet>,
    opens: Vec<BitSet>,
    min_open: Vec<BitSet>,
}

impl FiniteTopology {
    /// Validates the axioms: empty and full sets present, family closed
    /// under pairwise union and intersection (which suffices for a finite
    /// family).
    pub fn from_closed_sets(point_count: usize, mut closed: Vec<BitSet>) -> Result<Self> {
        let empty = BitSet::new(point_count);
        let full = BitSet::full(point_count);
        if !closed.contains(&empty) {
            return Err(Error::BadTopology("empty set is not closed".into()));
        }
        if !closed.contains(&full) {
            return Err(Error::BadTopology("full set is not closed".into()));
        }
        closed.sort_by(|a, b| a.canonical_cmp(b));
        closed.dedup();
        for a in &closed {
            for b in &closed {
                if !closed.contains(&a.union(b)) {
                    return Err(Error::BadTopology(format!(
                        "union of {a:?} and {b:?} is not closed"
                    )));
                }
                if !closed.contains(&a.intersection(b)) {
                    return Err(Error::BadTopology(format!(
                        "intersection of {a:?} and {b:?} is not closed"
                    )));
                }
            }
        }
        let mut opens: Vec<BitSet> = closed.iter().map(|c| c.complement()).collect();
        opens.sort_by(|a, b| a.canonical_cmp(b));
        let mut min_open = Vec::with_capacity(point_count);
        for p in 0..point_count {
            let mut m = full.clone();
            for u in opens.iter().filter(|u| u.contains(p)) {
                m.intersect_with(u);
            }
            if !opens.contains(&m) {
                return Err(Error::BadTopology(format!(
                    "minimal neighborhood of {p} is not open"
                )));
            }
            min_open.push(m);
        }
        Ok(FiniteTopology {
            point_count,
            closed,
            opens,
            min_open,
        })
    }

    pub fn discrete(point_count: usize) -> Self {
        let mut closed = Vec::new();
        for mask in 0u64..(1 << point_count) {
            closed.push(BitSet::from_iter(
                point_count,
                (0..point_count).filter(|&i| mask & (1 << i) != 0),
            ));
        }
        FiniteTopology::from_closed_sets(point_count, closed).expect("power set is a topology")
    }

    pub fn indiscrete(point_count: usize) -> Self {
        let closed = vec![BitSet::new(point_count), BitSet::full(point_count)];
        FiniteTopology::from_closed_sets(point_count, closed).expect("axioms")
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn closed_sets(&self) -> &[BitSet] {
        &self.closed
    }

    pub fn opens(&self) -> &[BitSet] {
        &self.opens
    }

    pub fn is_open(&self, s: &BitSet) -> bool {
        self.opens.contains(s)
    }

    pub fn is_closed(&self, s: &BitSet) -> bool {
        self.closed.contains(s)
    }

    /// Least open set containing the point.
    pub fn min_open(&self, point: usize) -> &BitSet {
        &self.min_open[point]
    }
}
