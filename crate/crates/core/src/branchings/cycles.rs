use alloc::vec;
use alloc::vec::Vec;

use crate::certificate::DecompositionCertificate;
use crate::graph::Digraph;

/// Flat numbering of parallel arc copies: copy `j` of arc class `i` is
/// `offset[i] + j`. For a simple digraph copy ids equal arc indices.
#[derive(Debug, Clone)]
pub struct CopyIndex {
    offset: Vec<usize>,
    arc_of: Vec<usize>,
}

impl CopyIndex {
    pub fn new(d: &Digraph) -> Self {
        let mut offset = Vec::with_capacity(d.num_arc_classes() + 1);
        let mut arc_of = Vec::with_capacity(d.total_arcs());
        offset.push(0);
        for (i, a) in d.arcs().iter().enumerate() {
            arc_of.extend(core::iter::repeat_n(i, a.mult));
            offset.push(arc_of.len());
        }
        CopyIndex { offset, arc_of }
    }

    pub fn len(&self) -> usize {
        self.arc_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arc_of.is_empty()
    }

    pub fn id(&self, arc: usize, copy: usize) -> usize {
        self.offset[arc] + copy
    }

    pub fn arc_of(&self, id: usize) -> usize {
        self.arc_of[id]
    }

    /// Class of every copy, flattened from a certificate's assignment.
    pub fn flatten(&self, assignment: &[Vec<usize>]) -> Vec<usize> {
        assignment.iter().flatten().copied().collect()
    }

    /// Inverse of [`CopyIndex::flatten`].
    pub fn unflatten(&self, classes: &[usize]) -> Vec<Vec<usize>> {
        self.offset.windows(2).map(|w| classes[w[0]..w[1]].to_vec()).collect()
    }
}

/// A directed cycle inside one color class, as copy ids in cycle order
/// starting from the smallest id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonochromaticCycle {
    pub class: usize,
    pub copies: Vec<usize>,
}

/// Every directed cycle of every class. Each class must have indegree ≤ 1
/// at every vertex, which makes its cycles vertex-disjoint.
pub fn monochromatic_cycles(d: &Digraph, coloring: &DecompositionCertificate) -> Vec<MonochromaticCycle> {
    let index = CopyIndex::new(d);
    let classes = index.flatten(&coloring.assignment);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); coloring.k];
    for (id, &c) in classes.iter().enumerate() {
        by_class[c].push(id);
    }
    const NONE: usize = usize::MAX;
    let mut pred = vec![NONE; d.n()];
    let mut walk = vec![0usize; d.n()];
    let mut walk_id = 0;
    let mut out = Vec::new();
    for (class, ids) in by_class.iter().enumerate() {
        for &id in ids {
            let head = d.arcs()[index.arc_of(id)].head;
            debug_assert_eq!(pred[head], NONE, "class {class} has indegree 2 at {head}");
            pred[head] = id;
        }
        for &start_id in ids {
            walk_id += 1;
            let mut x = d.arcs()[index.arc_of(start_id)].head;
            while walk[x] == 0 {
                walk[x] = walk_id;
                match pred[x] {
                    NONE => break,
                    p => x = d.arcs()[index.arc_of(p)].tail,
                }
            }
            if walk[x] == walk_id && pred[x] != NONE {
                let mut copies = Vec::new();
                let mut y = x;
                loop {
                    let p = pred[y];
                    copies.push(p);
                    y = d.arcs()[index.arc_of(p)].tail;
                    if y == x {
                        break;
                    }
                }
                copies.reverse();
                let first = (0..copies.len()).min_by_key(|&i| copies[i]).unwrap();
                copies.rotate_left(first);
                out.push(MonochromaticCycle { class, copies });
            }
        }
        for &id in ids {
            let a = d.arcs()[index.arc_of(id)];
            pred[a.head] = NONE;
            walk[a.head] = 0;
            walk[a.tail] = 0;
        }
    }
    out
}
