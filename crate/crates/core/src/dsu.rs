//! Union-find with rollback, tracking whether each component holds a cycle.
//!
//! No path compression, so every change is a single recorded write that can
//! be undone; union by size keeps `find` logarithmic.

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy)]
enum Change {
    Link { child: usize, root: usize, root_cyclic: bool },
    MarkCyclic(usize),
}

#[derive(Debug, Clone)]
pub struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    cyclic: Vec<bool>,
    history: Vec<Change>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: alloc::vec![1; n],
            cyclic: alloc::vec![false; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, to: usize) {
        while self.history.len() > to {
            match self.history.pop().unwrap() {
                Change::Link { child, root, root_cyclic } => {
                    self.parent[child] = child;
                    self.size[root] -= self.size[child];
                    self.cyclic[root] = root_cyclic;
                }
                Change::MarkCyclic(r) => self.cyclic[r] = false,
            }
        }
    }

    fn link(&mut self, ra: usize, rb: usize) {
        let (child, root) = if self.size[ra] < self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.history.push(Change::Link { child, root, root_cyclic: self.cyclic[root] });
        self.parent[child] = root;
        self.size[root] += self.size[child];
        self.cyclic[root] |= self.cyclic[child];
    }

    /// Adds edge `ab` keeping the structure a forest. Returns `false` (and
    /// changes nothing) if `a` and `b` are already connected.
    pub fn add_forest_edge(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.link(ra, rb);
        true
    }

    /// Adds edge `ab` keeping every component unicyclic at most. Returns
    /// `false` (and changes nothing) if that would create a second cycle.
    pub fn add_pseudoforest_edge(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            if self.cyclic[ra] {
                return false;
            }
            self.history.push(Change::MarkCyclic(ra));
            self.cyclic[ra] = true;
            return true;
        }
        if self.cyclic[ra] && self.cyclic[rb] {
            return false;
        }
        self.link(ra, rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_edges_and_rollback() {
        let mut d = RollbackDsu::new(4);
        assert!(d.add_forest_edge(0, 1));
        let cp = d.checkpoint();
        assert!(d.add_forest_edge(1, 2));
        assert!(!d.add_forest_edge(0, 2));
        d.rollback(cp);
        assert!(!d.same(0, 2));
        assert!(d.add_forest_edge(0, 2));
    }

    #[test]
    fn pseudoforest_allows_one_cycle_per_component() {
        let mut d = RollbackDsu::new(4);
        assert!(d.add_pseudoforest_edge(0, 1));
        assert!(d.add_pseudoforest_edge(0, 1));
        assert!(!d.add_pseudoforest_edge(0, 1));
        assert!(d.add_pseudoforest_edge(2, 3));
        assert!(d.add_pseudoforest_edge(2, 3));
        assert!(!d.add_pseudoforest_edge(1, 2));
        d.rollback(0);
        assert!(d.add_pseudoforest_edge(1, 2));
    }
}
