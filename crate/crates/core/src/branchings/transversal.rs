//! One arc from each of a family of disjoint arc sets, no two sharing an
//! endpoint.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::cycles::CopyIndex;
use crate::graph::Digraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransversalPhase {
    Greedy,
    Augmented,
    Backtracked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalReport {
    pub smallest_class: usize,
    /// Maximum degree of the line graph of the union of all classes.
    pub line_degree: usize,
    /// smallest_class ≥ line_degree + 2, under which a transversal exists.
    pub precondition_holds: bool,
    pub phase: TransversalPhase,
    pub augmenting_steps: usize,
    pub search_nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    /// The chosen copy id for each class.
    pub chosen: Vec<usize>,
    pub report: TransversalReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransversalError {
    #[error("no independent transversal exists (smallest class {smallest_class}, line degree {line_degree})")]
    Infeasible { smallest_class: usize, line_degree: usize },
    #[error("search stopped after {nodes} nodes (smallest class {smallest_class}, line degree {line_degree})")]
    NodeLimit { nodes: usize, smallest_class: usize, line_degree: usize },
}

const NONE: usize = usize::MAX;
const SEARCH_NODE_LIMIT: usize = 200_000;

struct State<'a> {
    ends: &'a [(usize, usize)],
    occupied: Vec<usize>,
    chosen: Vec<usize>,
}

impl State<'_> {
    fn free(&self, copy: usize) -> bool {
        let (u, v) = self.ends[copy];
        self.occupied[u] == NONE && self.occupied[v] == NONE
    }

    fn assign(&mut self, class: usize, copy: usize) {
        let (u, v) = self.ends[copy];
        self.occupied[u] = class;
        self.occupied[v] = class;
        self.chosen[class] = copy;
    }

    fn release(&mut self, class: usize) {
        let (u, v) = self.ends[self.chosen[class]];
        self.occupied[u] = NONE;
        self.occupied[v] = NONE;
        self.chosen[class] = NONE;
    }

    /// The single class blocking `copy`, if exactly one does.
    fn sole_blocker(&self, copy: usize) -> Option<usize> {
        let (u, v) = self.ends[copy];
        match (self.occupied[u], self.occupied[v]) {
            (NONE, NONE) => None,
            (a, NONE) | (NONE, a) => Some(a),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

/// Picks one copy from every class of `classes` (copy ids of `d`, see
/// [`CopyIndex`]) so that the picks form a matching of the underlying graph.
///
/// Greedy first, then displacement chains (put a copy blocked by a single
/// other class, evict that class's pick and continue with it), then an
/// exhaustive search that always fills the most constrained class next.
pub fn independent_transversal(d: &Digraph, classes: &[Vec<usize>]) -> Result<Transversal, TransversalError> {
    let index = CopyIndex::new(d);
    let ends: Vec<(usize, usize)> = (0..index.len())
        .map(|id| {
            let a = d.arcs()[index.arc_of(id)];
            (a.tail, a.head)
        })
        .collect();
    let mut deg = vec![0usize; d.n()];
    for class in classes {
        for &c in class {
            deg[ends[c].0] += 1;
            deg[ends[c].1] += 1;
        }
    }
    let line_degree = classes.iter().flatten().map(|&c| deg[ends[c].0] + deg[ends[c].1] - 2).max().unwrap_or(0);
    let smallest_class = classes.iter().map(Vec::len).min().unwrap_or(0);
    let mut report = TransversalReport {
        smallest_class,
        line_degree,
        precondition_holds: smallest_class >= line_degree + 2,
        phase: TransversalPhase::Greedy,
        augmenting_steps: 0,
        search_nodes: 0,
    };
    if smallest_class == 0 && !classes.is_empty() {
        return Err(TransversalError::Infeasible { smallest_class, line_degree });
    }
    let sorted: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();

    let mut st = State { ends: &ends, occupied: vec![NONE; d.n()], chosen: vec![NONE; classes.len()] };
    let mut open = Vec::new();
    for (i, cands) in sorted.iter().enumerate() {
        match cands.iter().find(|&&c| st.free(c)) {
            Some(&c) => st.assign(i, c),
            None => open.push(i),
        }
    }
    if open.is_empty() {
        return Ok(Transversal { chosen: st.chosen, report });
    }

    report.phase = TransversalPhase::Augmented;
    let chain_limit = 4 * classes.len() + 64;
    let mut stuck = false;
    for start in open {
        let mut cur = start;
        let mut steps = 0;
        loop {
            if let Some(&c) = sorted[cur].iter().find(|&&c| st.free(c)) {
                st.assign(cur, c);
                break;
            }
            let movable: Vec<(usize, usize)> =
                sorted[cur].iter().filter_map(|&c| st.sole_blocker(c).map(|j| (c, j))).collect();
            if movable.is_empty() || steps == chain_limit {
                stuck = true;
                break;
            }
            let (c, j) = movable[steps % movable.len()];
            st.release(j);
            st.assign(cur, c);
            cur = j;
            steps += 1;
            report.augmenting_steps += 1;
        }
        if stuck {
            break;
        }
    }
    if !stuck {
        return Ok(Transversal { chosen: st.chosen, report });
    }

    report.phase = TransversalPhase::Backtracked;
    let mut st = State { ends: &ends, occupied: vec![NONE; d.n()], chosen: vec![NONE; classes.len()] };
    // frames: (class, candidate list, next candidate)
    let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    let mut nodes = 0;
    'search: loop {
        nodes += 1;
        if nodes > SEARCH_NODE_LIMIT {
            return Err(TransversalError::NodeLimit { nodes: nodes - 1, smallest_class, line_degree });
        }
        let pick = (0..classes.len())
            .filter(|&i| st.chosen[i] == NONE)
            .map(|i| (sorted[i].iter().filter(|&&c| st.free(c)).count(), i))
            .min();
        let descend = match pick {
            None => break 'search,
            Some((0, _)) => false,
            Some((_, i)) => {
                let cands: Vec<usize> = sorted[i].iter().copied().filter(|&c| st.free(c)).collect();
                st.assign(i, cands[0]);
                stack.push((i, cands, 1));
                true
            }
        };
        if descend {
            continue;
        }
        loop {
            let Some((i, cands, next)) = stack.last_mut() else {
                return Err(TransversalError::Infeasible { smallest_class, line_degree });
            };
            let i = *i;
            st.release(i);
            if *next < cands.len() {
                let c = cands[*next];
                *next += 1;
                st.assign(i, c);
                continue 'search;
            }
            stack.pop();
        }
    }
    report.search_nodes = nodes;
    Ok(Transversal { chosen: st.chosen, report })
}

/// True iff `chosen` has one copy from each class and no two picks share an
/// endpoint.
pub(crate) fn is_independent_transversal(d: &Digraph, classes: &[Vec<usize>], chosen: &[usize]) -> bool {
    let index = CopyIndex::new(d);
    let mut used = vec![false; d.n()];
    chosen.len() == classes.len()
        && classes.iter().zip(chosen).all(|(class, &c)| {
            let a = d.arcs()[index.arc_of(c)];
            let ok = class.contains(&c) && !used[a.tail] && !used[a.head];
            used[a.tail] = true;
            used[a.head] = true;
            ok
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn single_and_disjoint_cycles() {
        let d = directed_cycle(6);
        let t = independent_transversal(&d, &[vec![3, 1, 4, 0, 5, 2]]).unwrap();
        assert_eq!(t.chosen, vec![0]);

        let arcs: Vec<_> = (0..4).map(|i| (i, (i + 1) % 4)).chain((0..4).map(|i| (4 + i, 4 + (i + 1) % 4))).collect();
        let d = Digraph::new_simple(8, arcs).unwrap();
        let classes = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]];
        let t = independent_transversal(&d, &classes).unwrap();
        assert!(is_independent_transversal(&d, &classes, &t.chosen));
        assert_eq!(t.report.phase, TransversalPhase::Greedy);
    }

    /// Brute force over all choices.
    fn exists(d: &Digraph, classes: &[Vec<usize>]) -> bool {
        fn rec(d: &Digraph, classes: &[Vec<usize>], picked: &mut Vec<usize>) -> bool {
            if picked.len() == classes.len() {
                return is_independent_transversal(d, classes, picked);
            }
            for &c in &classes[picked.len()] {
                picked.push(c);
                if rec(d, classes, picked) {
                    return true;
                }
                picked.pop();
            }
            false
        }
        rec(d, classes, &mut Vec::new())
    }

    #[test]
    fn cycles_sharing_a_vertex() {
        // two 4-cycles through vertex 0 on 7 vertices
        let d = Digraph::new_simple(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap();
        let classes = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]];
        assert!(exists(&d, &classes));
        let t = independent_transversal(&d, &classes).unwrap();
        assert!(is_independent_transversal(&d, &classes, &t.chosen));
    }

    #[test]
    fn greedy_trap_needs_repair() {
        // class 0 = {0→1, 2→3}; class 1 = {1→4} only. Greedy picks 0→1 for
        // class 0 and blocks class 1.
        let d = Digraph::new_simple(5, [(0, 1), (2, 3), (1, 4)]).unwrap();
        let classes = vec![vec![0, 1], vec![2]];
        let t = independent_transversal(&d, &classes).unwrap();
        assert_eq!(t.chosen, vec![1, 2]);
        assert_ne!(t.report.phase, TransversalPhase::Greedy);
    }

    #[test]
    fn infeasible_instance() {
        let d = Digraph::new_simple(3, [(0, 1), (1, 2)]).unwrap();
        let classes = vec![vec![0], vec![1]];
        assert!(matches!(independent_transversal(&d, &classes), Err(TransversalError::Infeasible { .. })));
    }
}
