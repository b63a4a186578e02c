//! Exact search for `k` internally edge-disjoint `S`-trees, `|S| = 3`.
//!
//! Only minimal trees need to be considered: deleting non-terminal leaves
//! keeps a packing valid. With three terminals a minimal tree is the path
//! between two terminals plus a branch from the third one, so it is
//! enumerated as a simple `(s0, s1)`-path `P` and, unless `P` already passes
//! through `s2`, a simple path from `s2` to its first vertex on `P`.
//!
//! Internal vertices are exclusive to one tree, which also makes every edge
//! with a non-terminal end exclusive. The only edges two trees could both
//! want are the ones joining two terminals, tracked as a 3-bit mask. The
//! residual state after choosing some trees is therefore the set of
//! consumed vertices plus that mask. Failed states are memoised, trees are
//! tried in order of increasing size, and the last tree is found by
//! breadth-first search.

use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use crate::topology::{Edge, GraphView};

use super::TreeEdges;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackingOutcome {
    Found(Vec<Vec<Edge>>),
    /// The search was exhaustive and no packing exists.
    Infeasible,
    /// The time budget ran out first.
    Indeterminate,
}

impl PackingOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, PackingOutcome::Found(_))
    }
}

/// Searches `view` for `k` internally edge-disjoint trees on `s`.
pub fn generic_stree_packing(
    view: GraphView<'_>,
    s: [usize; 3],
    k: usize,
    budget: Option<Duration>,
) -> PackingOutcome {
    if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] || s.iter().any(|&v| !view.contains(v)) {
        return PackingOutcome::Infeasible;
    }
    let mut packer = Packer::new(view, s, budget.map(|b| Instant::now() + b));
    match packer.solve(k) {
        Status::Found => PackingOutcome::Found(packer.chosen),
        Status::Infeasible => PackingOutcome::Infeasible,
        Status::Timeout => PackingOutcome::Indeterminate,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Found,
    Infeasible,
    Timeout,
}

struct Candidate {
    internal: Vec<usize>,
    terminal_edges: u8,
    edges: Vec<Edge>,
}

struct Packer<'a> {
    view: GraphView<'a>,
    s: [usize; 3],
    terminal_slot: Vec<u8>,
    used: Vec<bool>,
    used_terminal_edges: u8,
    deadline: Option<Instant>,
    ticks: u64,
    timed_out: bool,
    failed: HashSet<(usize, u8, Vec<u64>)>,
    chosen: Vec<Vec<Edge>>,
}

const NO_SLOT: u8 = u8::MAX;

impl<'a> Packer<'a> {
    fn new(view: GraphView<'a>, s: [usize; 3], deadline: Option<Instant>) -> Self {
        let order = view.graph().order();
        let mut terminal_slot = vec![NO_SLOT; order];
        for (i, &t) in s.iter().enumerate() {
            terminal_slot[t] = i as u8;
        }
        Self {
            view,
            s,
            terminal_slot,
            used: vec![false; order],
            used_terminal_edges: 0,
            deadline,
            ticks: 0,
            timed_out: false,
            failed: HashSet::new(),
            chosen: Vec::new(),
        }
    }

    fn is_terminal(&self, v: usize) -> bool {
        self.terminal_slot[v] != NO_SLOT
    }

    /// Bit for the edge joining two terminals, if `a` and `b` are both
    /// terminals.
    fn terminal_edge_bit(&self, a: usize, b: usize) -> Option<u8> {
        let (i, j) = (self.terminal_slot[a], self.terminal_slot[b]);
        if i == NO_SLOT || j == NO_SLOT {
            return None;
        }
        Some(1 << (i + j - 1))
    }

    fn usable_edge(&self, a: usize, b: usize) -> bool {
        match self.terminal_edge_bit(a, b) {
            Some(bit) => self.used_terminal_edges & bit == 0,
            None => !self.used[b] && !self.used[a],
        }
    }

    fn residual_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.view
            .neighbors(v)
            .filter(move |&u| self.usable_edge(v, u))
    }

    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        self.ticks += 1;
        if self.ticks % 1024 == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn state_key(&self, k: usize) -> (usize, u8, Vec<u64>) {
        let mut bits = vec![0u64; self.used.len().div_ceil(64)];
        for (v, &u) in self.used.iter().enumerate() {
            if u {
                bits[v / 64] |= 1 << (v % 64);
            }
        }
        (k, self.used_terminal_edges, bits)
    }

    fn solve(&mut self, k: usize) -> Status {
        if k == 0 {
            return Status::Found;
        }
        if self.out_of_time() {
            return Status::Timeout;
        }
        // every tree needs its own residual edge at each terminal
        if self
            .s
            .iter()
            .any(|&t| self.residual_neighbors(t).count() < k)
        {
            return Status::Infeasible;
        }
        if k == 1 {
            return match self.residual_steiner() {
                Some(tree) => {
                    self.chosen.push(tree);
                    Status::Found
                }
                None => Status::Infeasible,
            };
        }
        let key = self.state_key(k);
        if self.failed.contains(&key) {
            return Status::Infeasible;
        }
        let free = self
            .view
            .vertices()
            .filter(|&v| !self.used[v] && !self.is_terminal(v))
            .count();
        for size in 0..=free {
            let candidates = match self.trees_of_size(size) {
                Some(c) => c,
                None => return Status::Timeout,
            };
            for cand in candidates {
                for &v in &cand.internal {
                    self.used[v] = true;
                }
                self.used_terminal_edges |= cand.terminal_edges;
                self.chosen.push(cand.edges);
                let status = self.solve(k - 1);
                if status == Status::Found {
                    return status;
                }
                self.chosen.pop();
                self.used_terminal_edges &= !cand.terminal_edges;
                for &v in &cand.internal {
                    self.used[v] = false;
                }
                if status == Status::Timeout {
                    return status;
                }
            }
        }
        self.failed.insert(key);
        Status::Infeasible
    }

    /// Breadth-first tree on the terminals in the residual graph.
    fn residual_steiner(&self) -> Option<Vec<Edge>> {
        let order = self.used.len();
        let root = self.s[0];
        let mut parent = vec![usize::MAX; order];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in self.residual_neighbors(v) {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        let mut edges = TreeEdges::default();
        for &t in &self.s[1..] {
            if parent[t] == usize::MAX {
                return None;
            }
            let mut v = t;
            while v != root {
                edges.edge(v, parent[v]);
                v = parent[v];
            }
        }
        Some(edges.finish())
    }

    /// Residual BFS distances from `sources`. Unless `through_terminals`
    /// is set the search does not continue past a terminal.
    fn distances_from(&self, sources: &[usize], through_terminals: bool) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.used.len()];
        let mut queue = VecDeque::new();
        for &v in sources {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            if dist[v] > 0 && !through_terminals && self.is_terminal(v) {
                continue;
            }
            for u in self.residual_neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Every minimal tree with exactly `size` non-terminal vertices,
    /// deduplicated by footprint. `None` on timeout.
    fn trees_of_size(&mut self, size: usize) -> Option<Vec<Candidate>> {
        let [s0, s1, _] = self.s;
        let dist_to_s1 = self.distances_from(&[s1], true);
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut path = vec![s0];
        let mut on_path = vec![false; self.used.len()];
        on_path[s0] = true;
        self.extend_spine(
            size,
            &dist_to_s1,
            &mut path,
            &mut on_path,
            &mut out,
            &mut seen,
        );
        if self.timed_out {
            None
        } else {
            Some(out)
        }
    }

    fn interior_count(&self, path: &[usize]) -> usize {
        path.iter().filter(|&&v| !self.is_terminal(v)).count()
    }

    fn extend_spine(
        &mut self,
        size: usize,
        dist_to_s1: &[usize],
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Candidate>,
        seen: &mut HashSet<(Vec<usize>, u8)>,
    ) {
        if self.out_of_time() {
            return;
        }
        let [_, s1, s2] = self.s;
        let cur = *path.last().expect("spine starts at s0");
        if cur == s1 {
            let used_inside = self.interior_count(path);
            if on_path[s2] {
                if used_inside == size {
                    self.emit(path, &[], out, seen);
                }
            } else if used_inside <= size {
                self.attach_branch(size - used_inside, path, on_path, out, seen);
            }
            return;
        }
        let used_inside = self.interior_count(path);
        let next: Vec<usize> = self.residual_neighbors(cur).collect();
        for u in next {
            if on_path[u] || (self.is_terminal(u) && u != s1 && u != s2) {
                continue;
            }
            let adds = usize::from(!self.is_terminal(u));
            // the d - 1 vertices strictly between u and s1 include s2 at most once
            let d = dist_to_s1[u];
            if d == usize::MAX {
                continue;
            }
            let spare = if on_path[s2] || u == s2 { 1 } else { 2 };
            let need = d.saturating_sub(spare);
            if used_inside + adds + need > size {
                continue;
            }
            path.push(u);
            on_path[u] = true;
            self.extend_spine(size, dist_to_s1, path, on_path, out, seen);
            on_path[u] = false;
            path.pop();
        }
    }

    fn attach_branch(
        &mut self,
        budget: usize,
        spine: &[usize],
        on_spine: &[bool],
        out: &mut Vec<Candidate>,
        seen: &mut HashSet<(Vec<usize>, u8)>,
    ) {
        let s2 = self.s[2];
        let dist = self.distances_from(spine, false);
        let mut branch = vec![s2];
        let mut on_branch = vec![false; self.used.len()];
        on_branch[s2] = true;
        self.extend_branch(
            budget,
            &dist,
            spine,
            on_spine,
            &mut branch,
            &mut on_branch,
            out,
            seen,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_branch(
        &mut self,
        budget: usize,
        dist_to_spine: &[usize],
        spine: &[usize],
        on_spine: &[bool],
        branch: &mut Vec<usize>,
        on_branch: &mut Vec<bool>,
        out: &mut Vec<Candidate>,
        seen: &mut HashSet<(Vec<usize>, u8)>,
    ) {
        if self.out_of_time() {
            return;
        }
        let cur = *branch.last().expect("branch starts at s2");
        let interior = branch.len() - 1;
        let next: Vec<usize> = self.residual_neighbors(cur).collect();
        for u in next {
            if on_spine[u] {
                if interior == budget {
                    branch.push(u);
                    self.emit(spine, branch, out, seen);
                    branch.pop();
                }
                continue;
            }
            if on_branch[u] || self.is_terminal(u) {
                continue;
            }
            let d = dist_to_spine[u];
            if d == usize::MAX || interior + 1 + d.saturating_sub(1) > budget {
                continue;
            }
            branch.push(u);
            on_branch[u] = true;
            self.extend_branch(
                budget,
                dist_to_spine,
                spine,
                on_spine,
                branch,
                on_branch,
                out,
                seen,
            );
            on_branch[u] = false;
            branch.pop();
        }
    }

    fn emit(
        &self,
        spine: &[usize],
        branch: &[usize],
        out: &mut Vec<Candidate>,
        seen: &mut HashSet<(Vec<usize>, u8)>,
    ) {
        let mut edges = TreeEdges::default();
        edges.path(spine).path(branch);
        let edges = edges.finish();
        let mut internal: Vec<usize> = spine
            .iter()
            .chain(branch)
            .copied()
            .filter(|&v| !self.is_terminal(v))
            .collect();
        internal.sort_unstable();
        internal.dedup();
        let terminal_edges = edges
            .iter()
            .filter_map(|&(a, b)| self.terminal_edge_bit(a, b))
            .fold(0u8, |m, b| m | b);
        if seen.insert((internal.clone(), terminal_edges)) {
            out.push(Candidate {
                internal,
                terminal_edges,
                edges,
            });
        }
    }
}
