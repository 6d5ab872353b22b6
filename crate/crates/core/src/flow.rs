//! Dinic's maximum flow on integer capacities.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub const INF: u64 = u64::MAX / 4;

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    original: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), original: Vec::new() }
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    /// Adds arc `u → v`; returns its id for [`FlowNetwork::flow`].
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.original.push(cap);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        self.original.push(0);
        id
    }

    /// Flow currently routed on arc `id`.
    pub fn flow(&self, id: usize) -> u64 {
        self.original[id] - self.cap[id]
    }

    /// Augments from `s` to `t` until no path remains; returns the amount
    /// added by this call. Arcs are scanned in insertion order.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.adj.len();
        let mut total = 0;
        let mut level = vec![usize::MAX; n];
        let mut next = vec![0usize; n];
        loop {
            level.iter_mut().for_each(|l| *l = usize::MAX);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &e in &self.adj[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && level[y] == usize::MAX {
                        level[y] = level[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            next.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.augment(s, t, INF, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, s: usize, t: usize, limit: u64, level: &[usize], next: &mut [usize]) -> u64 {
        // iterative DFS along the level graph
        let mut path: Vec<usize> = Vec::new();
        let mut x = s;
        loop {
            if x == t {
                let amount = path.iter().map(|&e| self.cap[e]).min().unwrap_or(limit).min(limit);
                for &e in &path {
                    self.cap[e] -= amount;
                    self.cap[e ^ 1] += amount;
                }
                return amount;
            }
            let mut advanced = false;
            while next[x] < self.adj[x].len() {
                let e = self.adj[x][next[x]];
                let y = self.to[e];
                if self.cap[e] > 0 && level[y] == level[x] + 1 {
                    path.push(e);
                    x = y;
                    advanced = true;
                    break;
                }
                next[x] += 1;
            }
            if !advanced {
                if x == s {
                    return 0;
                }
                let e = path.pop().unwrap();
                x = self.to[e ^ 1];
                next[x] += 1;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network: the source side of
    /// a minimum cut once [`FlowNetwork::max_flow`] has run.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &e in &self.adj[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}
