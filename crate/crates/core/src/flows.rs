//! Internally disjoint path systems via unit vertex-capacity maximum flow.
//!
//! Every query is reduced to a flow on the vertex-split digraph: vertex `v`
//! becomes `v_in -> v_out` with capacity one, each undirected edge `uv`
//! becomes `u_out -> v_in` and `v_out -> u_in`. Augmenting paths are found
//! breadth-first with neighbours scanned in ascending index order, and
//! paths are decoded by following the smallest-index arc carrying flow, so
//! every result is deterministic.

use std::collections::VecDeque;

use serde::Serialize;

use crate::topology::{Graph, GraphView};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    /// Fewer than `required` disjoint paths exist. `cut` is a separating
    /// vertex set of size `found` (terminal-to-terminal edges are not part
    /// of it).
    #[error("only {found} of {required} disjoint paths exist; separating set {cut:?}")]
    Insufficient {
        required: usize,
        found: usize,
        cut: Vec<usize>,
    },
    #[error("invalid path query: {0}")]
    InvalidQuery(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Endpoints {
    Pair {
        source: usize,
        target: usize,
    },
    Fan {
        source: usize,
        targets: Vec<usize>,
    },
    Linkage {
        sources: Vec<usize>,
        targets: Vec<usize>,
    },
}

/// A family of paths with the disjointness contract implied by its
/// endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathSystem {
    pub endpoints: Endpoints,
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    /// Re-checks adjacency along every path and the disjointness contract.
    pub fn validate(&self, view: GraphView<'_>) -> Result<(), String> {
        let g = view.graph();
        for path in &self.paths {
            if path.is_empty() {
                return Err("empty path".into());
            }
            if let Some(&v) = path.iter().find(|&&v| !view.contains(v)) {
                return Err(format!("vertex {v} outside the host view"));
            }
            for w in path.windows(2) {
                if !g.is_adjacent(w[0], w[1]) {
                    return Err(format!("{} and {} are not adjacent", w[0], w[1]));
                }
            }
            let mut sorted = path.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("path {path:?} repeats a vertex"));
            }
        }
        let mut count = vec![0usize; g.order()];
        match &self.endpoints {
            Endpoints::Pair { source, target } => {
                for p in &self.paths {
                    if p[0] != *source || p[p.len() - 1] != *target {
                        return Err(format!("path {p:?} does not join {source} and {target}"));
                    }
                    for &v in interior(p) {
                        count[v] += 1;
                    }
                }
            }
            Endpoints::Fan { source, targets } => {
                let mut termini = Vec::new();
                for p in &self.paths {
                    let end = p[p.len() - 1];
                    if p[0] != *source || !targets.contains(&end) {
                        return Err(format!("path {p:?} is not a fan path"));
                    }
                    for &v in interior(p) {
                        if targets.contains(&v) {
                            return Err(format!("fan path {p:?} passes through target {v}"));
                        }
                        count[v] += 1;
                    }
                    termini.push(end);
                }
                termini.sort_unstable();
                if termini.windows(2).any(|w| w[0] == w[1]) {
                    return Err("fan paths share a terminus".into());
                }
            }
            Endpoints::Linkage { sources, targets } => {
                for p in &self.paths {
                    let (a, b) = (p[0], p[p.len() - 1]);
                    if !sources.contains(&a) || !targets.contains(&b) {
                        return Err(format!("path {p:?} does not link the two sets"));
                    }
                    for &v in interior(p) {
                        if sources.contains(&v) || targets.contains(&v) {
                            return Err(format!("linkage path {p:?} passes through terminal {v}"));
                        }
                    }
                    for &v in p {
                        count[v] += 1;
                    }
                }
            }
        }
        if let Some(v) = count.iter().position(|&c| c > 1) {
            return Err(format!("vertex {v} is shared by two paths"));
        }
        Ok(())
    }
}

fn interior(p: &[usize]) -> &[usize] {
    if p.len() > 2 {
        &p[1..p.len() - 1]
    } else {
        &[]
    }
}

/// Residual network on the split digraph. Node `2v` is `v_in`, `2v + 1` is
/// `v_out`; two extra nodes serve as super source and super sink.
struct SplitNetwork {
    to: Vec<usize>,
    cap: Vec<u32>,
    original: Vec<u32>,
    node_arcs: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn with_nodes(nodes: usize) -> Self {
        Self {
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            node_arcs: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let a = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.original.push(cap);
        self.node_arcs[from].push(a);
        self.to.push(from);
        self.cap.push(0);
        self.original.push(0);
        self.node_arcs[to].push(a + 1);
    }

    /// Builds the split network of `view`. Vertices in `no_transit` get no
    /// `in -> out` arc, so flow can end at them but never pass through.
    fn build(view: GraphView<'_>, no_transit: &[usize]) -> Self {
        let g = view.graph();
        let n = g.order();
        let mut net = Self::with_nodes(2 * n + 2);
        let mut blocked = vec![false; n];
        for &v in no_transit {
            blocked[v] = true;
        }
        for v in view.vertices() {
            if !blocked[v] {
                net.add_arc(2 * v, 2 * v + 1, 1);
            }
            for u in view.neighbors(v) {
                net.add_arc(2 * v + 1, 2 * u, 1);
            }
        }
        // BFS scans arcs in insertion order; sort each node's arcs by head so
        // the scan is ascending by vertex index.
        for arcs in &mut net.node_arcs {
            let to = &net.to;
            arcs.sort_by_key(|&a| to[a]);
        }
        net
    }

    fn source(&self) -> usize {
        self.node_arcs.len() - 2
    }

    fn sink(&self) -> usize {
        self.node_arcs.len() - 1
    }

    fn add_terminal_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.add_arc(from, to, cap);
        let to_arr = &self.to;
        self.node_arcs[from].sort_by_key(|&a| to_arr[a]);
        self.node_arcs[to].sort_by_key(|&a| to_arr[a]);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut pred = vec![usize::MAX; self.node_arcs.len()];
        let mut seen = vec![false; self.node_arcs.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.node_arcs[v] {
                let u = self.to[a];
                if self.cap[a] > 0 && !seen[u] {
                    seen[u] = true;
                    pred[u] = a;
                    if u == t {
                        let mut w = t;
                        while w != s {
                            let arc = pred[w];
                            self.cap[arc] -= 1;
                            self.cap[arc ^ 1] += 1;
                            w = self.to[arc ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(u);
                }
            }
        }
        false
    }

    /// Pushes up to `limit` units from `s` to `t`; returns the flow value.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(s, t) {
            flow += 1;
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.node_arcs.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.node_arcs[v] {
                let u = self.to[a];
                if self.cap[a] > 0 && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// A vertex set meeting every saturated arc that leaves the residual
    /// source side. A split arc contributes its vertex; an edge arc its head,
    /// or its tail when the head is the sink.
    fn cut_vertices(&self, s: usize, t: usize) -> Vec<usize> {
        let side = self.reachable(s);
        let split_nodes = self.node_arcs.len() - 2;
        let mut cut = Vec::new();
        for (from, arcs) in self.node_arcs.iter().enumerate() {
            if !side[from] {
                continue;
            }
            for &a in arcs {
                let to = self.to[a];
                if side[to] || self.original[a] == 0 || self.cap[a] > 0 {
                    continue;
                }
                let pick = if to == t || to >= split_nodes {
                    (from != s && from < split_nodes).then_some(from)
                } else {
                    Some(to)
                };
                cut.extend(pick.map(|node| node / 2));
            }
        }
        cut.sort_unstable();
        cut.dedup();
        cut
    }

    /// Decodes `count` unit paths from `s` to `t` into vertex sequences. The
    /// vertex owning `s` itself is not included.
    fn decode(&mut self, s: usize, t: usize, count: usize) -> Vec<Vec<usize>> {
        let split_nodes = self.node_arcs.len() - 2;
        let mut paths = Vec::with_capacity(count);
        for _ in 0..count {
            let mut path = Vec::new();
            let mut node = s;
            let mut guard = 0;
            while node != t {
                let arc = self.node_arcs[node]
                    .iter()
                    .copied()
                    .find(|&a| self.original[a] > self.cap[a])
                    .expect("flow conservation");
                self.cap[arc] += 1;
                let prev = node;
                node = self.to[arc];
                let entered_vertex =
                    node < split_nodes && (node.is_multiple_of(2) || prev != node - 1);
                if entered_vertex {
                    path.push(node / 2);
                }
                guard += 1;
                assert!(
                    guard <= self.node_arcs.len(),
                    "flow decoding did not terminate"
                );
            }
            paths.push(path);
        }
        paths
    }
}

fn require_vertex(view: GraphView<'_>, v: usize) -> Result<(), FlowError> {
    if v >= view.graph().order() || !view.contains(v) {
        return Err(FlowError::InvalidQuery(format!(
            "vertex {v} is not in the host view"
        )));
    }
    Ok(())
}

/// Maximum number of internally disjoint `(x, y)`-paths, stopping early
/// once `cap` is reached.
pub fn local_connectivity(view: GraphView<'_>, x: usize, y: usize, cap: usize) -> usize {
    let mut net = SplitNetwork::build(view, &[]);
    net.max_flow(2 * x + 1, 2 * y, cap)
}

/// `k` paths from `x` to `y` that share only their ends.
pub fn internally_disjoint_paths(
    view: GraphView<'_>,
    x: usize,
    y: usize,
    k: usize,
) -> Result<PathSystem, FlowError> {
    require_vertex(view, x)?;
    require_vertex(view, y)?;
    if x == y {
        return Err(FlowError::InvalidQuery("source equals target".into()));
    }
    let mut net = SplitNetwork::build(view, &[]);
    let (s, t) = (2 * x + 1, 2 * y);
    let found = net.max_flow(s, t, k);
    if found < k {
        let cut = net.cut_vertices(s, t);
        return Err(FlowError::Insufficient {
            required: k,
            found,
            cut,
        });
    }
    let mut paths = net.decode(s, t, k);
    for p in &mut paths {
        p.insert(0, x);
    }
    paths.sort();
    Ok(PathSystem {
        endpoints: Endpoints::Pair {
            source: x,
            target: y,
        },
        paths,
    })
}

/// A `k`-fan from `x` to `targets`: paths sharing only `x`, ending at
/// distinct targets, with no interior vertex in `targets`.
pub fn fan(
    view: GraphView<'_>,
    x: usize,
    targets: &[usize],
    k: usize,
) -> Result<PathSystem, FlowError> {
    require_vertex(view, x)?;
    if targets.contains(&x) {
        return Err(FlowError::InvalidQuery(
            "fan source lies in the target set".into(),
        ));
    }
    let mut ys = targets.to_vec();
    ys.sort_unstable();
    ys.dedup();
    for &y in &ys {
        require_vertex(view, y)?;
    }
    let mut no_transit = ys.clone();
    no_transit.push(x);
    let mut net = SplitNetwork::build(view, &no_transit);
    let t = net.sink();
    for &y in &ys {
        net.add_terminal_arc(2 * y, t, 1);
    }
    let s = 2 * x + 1;
    let found = net.max_flow(s, t, k);
    if found < k {
        let cut = net.cut_vertices(s, t);
        return Err(FlowError::Insufficient {
            required: k,
            found,
            cut,
        });
    }
    let mut paths = net.decode(s, t, k);
    for p in &mut paths {
        p.insert(0, x);
    }
    paths.sort_by_key(|p| p[p.len() - 1]);
    Ok(PathSystem {
        endpoints: Endpoints::Fan {
            source: x,
            targets: ys,
        },
        paths,
    })
}

/// `k` pairwise vertex-disjoint paths from `sources` to `targets` with no
/// interior vertex in either set. A vertex in both sets is a path of length
/// zero.
pub fn disjoint_linkage(
    view: GraphView<'_>,
    sources: &[usize],
    targets: &[usize],
    k: usize,
) -> Result<PathSystem, FlowError> {
    let mut xs = sources.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let mut ys = targets.to_vec();
    ys.sort_unstable();
    ys.dedup();
    for &v in xs.iter().chain(&ys) {
        require_vertex(view, v)?;
    }
    let shared: Vec<usize> = xs.iter().copied().filter(|v| ys.contains(v)).collect();
    let mut paths: Vec<Vec<usize>> = shared.iter().take(k).map(|&v| vec![v]).collect();
    let remaining = k - paths.len();
    if remaining > 0 {
        let mut no_transit = xs.clone();
        no_transit.extend_from_slice(&ys);
        let mut net = SplitNetwork::build(view, &no_transit);
        let (s, t) = (net.source(), net.sink());
        for &x in xs.iter().filter(|v| !shared.contains(v)) {
            net.add_terminal_arc(s, 2 * x + 1, 1);
        }
        for &y in ys.iter().filter(|v| !shared.contains(v)) {
            net.add_terminal_arc(2 * y, t, 1);
        }
        let found = net.max_flow(s, t, remaining);
        if found < remaining {
            let mut cut = net.cut_vertices(s, t);
            cut.extend_from_slice(&shared);
            cut.sort_unstable();
            return Err(FlowError::Insufficient {
                required: k,
                found: found + paths.len(),
                cut,
            });
        }
        for p in net.decode(s, t, remaining) {
            paths.push(p);
        }
    }
    paths.sort();
    Ok(PathSystem {
        endpoints: Endpoints::Linkage {
            sources: xs,
            targets: ys,
        },
        paths,
    })
}

/// Vertex connectivity `κ(G)`, with `κ(K_m) = m - 1` and `0` for
/// disconnected graphs.
///
/// Uses the Esfahanian–Hakimi reduction: for a minimum-degree vertex `v`,
/// `κ` is the least local connectivity over pairs `(v, w)` with `w` not
/// adjacent to `v`, and over non-adjacent pairs of neighbours of `v`.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let order = g.order();
    if order <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let v = (0..order).min_by_key(|&u| g.degree(u)).expect("non-empty");
    let mut pairs: Vec<(usize, usize)> = (0..order)
        .filter(|&w| w != v && !g.is_adjacent(v, w))
        .map(|w| (v, w))
        .collect();
    let nbrs = g.neighbors(v);
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !g.is_adjacent(a, b) {
                pairs.push((a, b));
            }
        }
    }
    let cap = g.min_degree();
    let values = crate::par::map(&pairs, |&(a, b)| local_connectivity(g.view(), a, b, cap));
    values.into_iter().min().unwrap_or(order - 1).min(order - 1)
}

/// Minimum local connectivity over all non-adjacent pairs. Quadratic in the
/// order; used to cross-check [`vertex_connectivity`].
pub fn vertex_connectivity_all_pairs(g: &Graph) -> usize {
    let order = g.order();
    if order <= 1 || !g.is_connected() {
        return 0;
    }
    let mut best = order - 1;
    for a in 0..order {
        for b in a + 1..order {
            if !g.is_adjacent(a, b) {
                best = best.min(local_connectivity(g.view(), a, b, best));
            }
        }
    }
    best
}
