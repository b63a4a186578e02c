//! Explicit graphs for the burnt pancake graph `BP_n`, the alternating group
//! network `AN_n` and the godan graph `EA_n`, together with the cluster
//! structure used by the tree constructions.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{
    an_generators, compose_unchecked, ea_generators, factorial, Parity, Permutation,
    SignedPermutation,
};

pub const MAX_BP_N: usize = 6;
pub const MAX_PERM_N: usize = 7;

pub type Edge = (usize, usize);

pub fn normalize_edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "BP")]
    BurntPancake,
    #[serde(rename = "AN")]
    AlternatingNetwork,
    #[serde(rename = "EA")]
    Godan,
}

impl Family {
    pub fn code(self) -> &'static str {
        match self {
            Family::BurntPancake => "BP",
            Family::AlternatingNetwork => "AN",
            Family::Godan => "EA",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::BurntPancake => 2,
            _ => 3,
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            Family::BurntPancake => MAX_BP_N,
            _ => MAX_PERM_N,
        }
    }

    pub fn check_n(self, n: usize) -> Result<()> {
        if n < self.min_n() || n > self.max_n() {
            return Err(Error::domain(format!(
                "{} is buildable for {} <= n <= {}, got n = {n}",
                self.code(),
                self.min_n(),
                self.max_n()
            )));
        }
        Ok(())
    }

    pub fn expected_order(self, n: usize) -> usize {
        match self {
            Family::BurntPancake => SignedPermutation::order(n),
            Family::AlternatingNetwork => factorial(n) / 2,
            Family::Godan => factorial(n),
        }
    }

    pub fn expected_size(self, n: usize) -> usize {
        match self {
            Family::BurntPancake => (n * factorial(n)) << (n - 1),
            Family::AlternatingNetwork => factorial(n) * (n - 1) / 4,
            Family::Godan => n * factorial(n) / 2,
        }
    }

    pub fn expected_degree(self, n: usize) -> usize {
        match self {
            Family::AlternatingNetwork => n - 1,
            _ => n,
        }
    }

    pub fn build(self, n: usize) -> Result<Graph> {
        match self {
            Family::BurntPancake => build_burnt_pancake(n),
            Family::AlternatingNetwork => build_alternating_network(n),
            Family::Godan => build_godan(n),
        }
    }

    /// Parses a vertex label in the textual form used by this family.
    /// Unsigned labels may also be written in cycle notation.
    pub fn parse_label(self, n: usize, s: &str) -> Result<VertexLabel> {
        let label = match self {
            Family::BurntPancake => VertexLabel::Signed(s.parse()?),
            _ if s.trim_start().starts_with('(') => {
                VertexLabel::Plain(Permutation::parse_cycles(n, s)?)
            }
            _ => VertexLabel::Plain(s.parse()?),
        };
        if label.len() != n {
            return Err(Error::parse(s, format!("expected {n} entries")));
        }
        if self == Family::AlternatingNetwork {
            if let VertexLabel::Plain(p) = &label {
                if p.parity() == Parity::Odd {
                    return Err(Error::parse(s, "AN vertices are even permutations"));
                }
            }
        }
        Ok(label)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "BP" => Ok(Family::BurntPancake),
            "AN" => Ok(Family::AlternatingNetwork),
            "EA" => Ok(Family::Godan),
            _ => Err(Error::parse(s, "family must be one of BP, AN, EA")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Signed(SignedPermutation),
    Plain(Permutation),
}

impl VertexLabel {
    pub fn len(&self) -> usize {
        match self {
            VertexLabel::Signed(x) => x.len(),
            VertexLabel::Plain(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_signed(&self) -> Option<&SignedPermutation> {
        match self {
            VertexLabel::Signed(x) => Some(x),
            VertexLabel::Plain(_) => None,
        }
    }

    pub fn as_plain(&self) -> Option<&Permutation> {
        match self {
            VertexLabel::Plain(p) => Some(p),
            VertexLabel::Signed(_) => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Signed(x) => x.fmt(f),
            VertexLabel::Plain(p) => p.fmt(f),
        }
    }
}

/// Undirected simple graph on vertices `0..order` with sorted adjacency
/// lists and one permutation label per vertex.
#[derive(Clone, Debug)]
pub struct Graph {
    name: String,
    adjacency: Vec<Vec<usize>>,
    labels: Vec<VertexLabel>,
}

impl Graph {
    /// Sorts every adjacency list and rejects loops, parallel edges and
    /// asymmetric adjacency.
    pub fn new(
        name: impl Into<String>,
        mut adjacency: Vec<Vec<usize>>,
        labels: Vec<VertexLabel>,
    ) -> Result<Self> {
        let order = adjacency.len();
        if labels.len() != order {
            return Err(Error::domain("label count differs from vertex count"));
        }
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("vertex {v} has a parallel edge")));
            }
            if nbrs.iter().any(|&u| u == v || u >= order) {
                return Err(Error::domain(format!(
                    "vertex {v} has a loop or dangling edge"
                )));
            }
        }
        for (v, nbrs) in adjacency.iter().enumerate() {
            for &u in nbrs {
                if adjacency[u].binary_search(&v).is_err() {
                    return Err(Error::domain(format!("edge {v}-{u} is not symmetric")));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            adjacency,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree();
        (d == self.max_degree()).then_some(d)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::with_capacity(self.size());
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            edges.extend(nbrs.iter().filter(|&&u| u > v).map(|&u| (v, u)));
        }
        edges
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn view(&self) -> GraphView<'_> {
        GraphView {
            graph: self,
            allowed: None,
        }
    }

    /// A view restricted to the vertices whose flag in `allowed` is set.
    pub fn restricted<'a>(&'a self, allowed: &'a [bool]) -> GraphView<'a> {
        assert_eq!(allowed.len(), self.order());
        GraphView {
            graph: self,
            allowed: Some(allowed),
        }
    }

    /// The induced subgraph on `vertices` (sorted and deduplicated first),
    /// together with the original index of every new vertex.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let adjacency = keep
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&u| (new_index[u] != usize::MAX).then_some(new_index[u]))
                    .collect()
            })
            .collect();
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let graph = Graph {
            name: format!("{}[induced]", self.name),
            adjacency,
            labels,
        };
        (graph, keep)
    }

    pub fn is_connected(&self) -> bool {
        self.view().is_connected()
    }

    pub fn to_dump(&self) -> GraphDump {
        GraphDump {
            name: self.name.clone(),
            order: self.order(),
            size: self.size(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: self.labels.iter().map(ToString::to_string).collect(),
        }
    }

    /// Graphviz source. Vertices are filled by cluster when a decomposition
    /// is supplied.
    pub fn to_dot(&self, clusters: Option<&ClusterDecomposition>) -> String {
        const PALETTE: [&str; 12] = [
            "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
            "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
        ];
        let mut out = String::new();
        out.push_str(&format!("graph \"{}\" {{\n", self.name));
        out.push_str("  node [shape=box, style=filled, fontname=\"monospace\"];\n");
        let color_of: BTreeMap<ClusterId, &str> = clusters
            .map(|d| {
                d.ids()
                    .enumerate()
                    .map(|(i, id)| (id, PALETTE[i % PALETTE.len()]))
                    .collect()
            })
            .unwrap_or_default();
        for v in 0..self.order() {
            let fill = clusters
                .map(|d| color_of[&d.cluster_of(v)])
                .unwrap_or("white");
            out.push_str(&format!(
                "  {v} [label=\"{}\", fillcolor=\"{fill}\"];\n",
                self.labels[v]
            ));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Stable JSON form of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDump {
    pub name: String,
    pub order: usize,
    pub size: usize,
    pub edges: Vec<[usize; 2]>,
    pub labels: Vec<String>,
}

/// A graph seen through an optional vertex filter.
#[derive(Clone, Copy)]
pub struct GraphView<'a> {
    graph: &'a Graph,
    allowed: Option<&'a [bool]>,
}

impl<'a> GraphView<'a> {
    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn contains(&self, v: usize) -> bool {
        self.allowed.is_none_or(|a| a[v])
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + 'a {
        let allowed = self.allowed;
        self.graph.adjacency[v]
            .iter()
            .copied()
            .filter(move |&u| allowed.is_none_or(|a| a[u]))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + 'a {
        let allowed = self.allowed;
        (0..self.graph.order()).filter(move |&v| allowed.is_none_or(|a| a[v]))
    }

    pub fn order(&self) -> usize {
        match self.allowed {
            None => self.graph.order(),
            Some(a) => a.iter().filter(|&&b| b).count(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Breadth-first parents from `root`; `usize::MAX` marks unreached
    /// vertices and the root is its own parent.
    pub fn bfs_parents(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.graph.order()];
        if !self.contains(root) {
            return parent;
        }
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        parent
    }

    pub fn is_connected(&self) -> bool {
        let Some(root) = self.vertices().next() else {
            return true;
        };
        let parent = self.bfs_parents(root);
        self.vertices().all(|v| parent[v] != usize::MAX)
    }
}

fn check_counts(family: Family, n: usize, g: &Graph) {
    assert_eq!(g.order(), family.expected_order(n), "{family}_{n} order");
    assert_eq!(g.size(), family.expected_size(n), "{family}_{n} size");
    assert_eq!(
        g.regular_degree(),
        Some(family.expected_degree(n)),
        "{family}_{n} regularity"
    );
}

/// `BP_n`: signed permutations, `x ~ y` iff `y` is a signed prefix reversal
/// of `x`. Vertex `v` carries the signed permutation of rank `v`.
pub fn build_burnt_pancake(n: usize) -> Result<Graph> {
    Family::BurntPancake.check_n(n)?;
    let order = SignedPermutation::order(n);
    let labels: Vec<SignedPermutation> = (0..order)
        .map(|r| SignedPermutation::unrank_unchecked(n, r))
        .collect();
    let adjacency = labels
        .iter()
        .map(|x| {
            (1..=n)
                .map(|i| x.prefix_reversal_unchecked(i).rank())
                .collect()
        })
        .collect();
    let labels = labels.into_iter().map(VertexLabel::Signed).collect();
    let g = Graph::new(format!("BP{n}"), adjacency, labels)?;
    check_counts(Family::BurntPancake, n, &g);
    Ok(g)
}

fn cayley_on_permutations(
    name: String,
    n: usize,
    gens: &crate::perm::GeneratorSet,
    keep: impl Fn(&Permutation) -> bool,
) -> Result<Graph> {
    let all: Vec<Permutation> = (0..factorial(n))
        .map(|r| Permutation::unrank(n, r))
        .collect::<Result<_>>()?;
    let mut index_of_rank = vec![usize::MAX; all.len()];
    let mut vertices = Vec::new();
    for (r, p) in all.into_iter().enumerate() {
        if keep(&p) {
            index_of_rank[r] = vertices.len();
            vertices.push(p);
        }
    }
    let mut adjacency = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let mut nbrs = Vec::with_capacity(gens.len());
        for s in gens {
            // u = v s
            let u = compose_unchecked(v, s);
            let idx = index_of_rank[u.rank()];
            if idx == usize::MAX {
                return Err(Error::domain("generator leaves the vertex set"));
            }
            nbrs.push(idx);
        }
        adjacency.push(nbrs);
    }
    let labels = vertices.into_iter().map(VertexLabel::Plain).collect();
    Graph::new(name, adjacency, labels)
}

/// `AN_n` on the even permutations, indexed in lexicographic order.
pub fn build_alternating_network(n: usize) -> Result<Graph> {
    Family::AlternatingNetwork.check_n(n)?;
    let gens = an_generators(n)?;
    let g = cayley_on_permutations(format!("AN{n}"), n, &gens, |p| p.parity() == Parity::Even)?;
    check_counts(Family::AlternatingNetwork, n, &g);
    Ok(g)
}

/// `EA_n` on all of `S_n`; vertex `v` carries the permutation of rank `v`.
pub fn build_godan(n: usize) -> Result<Graph> {
    Family::Godan.check_n(n)?;
    let gens = ea_generators(n)?;
    let g = cayley_on_permutations(format!("EA{n}"), n, &gens, |_| true)?;
    check_counts(Family::Godan, n, &g);
    Ok(g)
}

/// Cluster identifier: a signed symbol for `BP_n` clusters (the fixed last
/// entry), or `1`/`2` for the even/odd part of `EA_n`.
///
/// Ordered as `1 < -1 < 2 < -2 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClusterId(pub i8);

impl ClusterId {
    pub fn value(self) -> i8 {
        self.0
    }

    pub fn opposite(self) -> ClusterId {
        ClusterId(-self.0)
    }

    fn sort_key(self) -> (u8, bool) {
        (self.0.unsigned_abs(), self.0 < 0)
    }

    /// All `2n` burnt pancake cluster ids in cluster order.
    pub fn all_bp(n: usize) -> Vec<ClusterId> {
        (1..=n as i8)
            .flat_map(|i| [ClusterId(i), ClusterId(-i)])
            .collect()
    }
}

impl PartialOrd for ClusterId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClusterId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for ClusterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct ClusterDecomposition {
    cluster_of: Vec<ClusterId>,
    members: BTreeMap<ClusterId, Vec<usize>>,
}

impl ClusterDecomposition {
    fn from_assignment(cluster_of: Vec<ClusterId>) -> Self {
        let mut members: BTreeMap<ClusterId, Vec<usize>> = BTreeMap::new();
        for (v, &c) in cluster_of.iter().enumerate() {
            members.entry(c).or_default().push(v);
        }
        Self {
            cluster_of,
            members,
        }
    }

    pub fn cluster_of(&self, v: usize) -> ClusterId {
        self.cluster_of[v]
    }

    pub fn members(&self, id: ClusterId) -> &[usize] {
        self.members.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn ids(&self) -> impl Iterator<Item = ClusterId> + '_ {
        self.members.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership mask of the union of the given clusters.
    pub fn mask(&self, ids: &[ClusterId]) -> Vec<bool> {
        self.cluster_of.iter().map(|c| ids.contains(c)).collect()
    }
}

/// Clusters of `BP_n` keyed by the last entry of each vertex.
pub fn cluster_decomposition(g: &Graph, n: usize) -> Result<ClusterDecomposition> {
    let cluster_of = g
        .labels()
        .iter()
        .map(|l| match l {
            VertexLabel::Signed(x) if x.len() == n => Ok(ClusterId(x.last())),
            _ => Err(Error::domain("cluster decomposition needs a BP_n graph")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClusterDecomposition::from_assignment(cluster_of))
}

/// Even permutations form part `1`, odd permutations part `2`.
pub fn part_decomposition(g: &Graph) -> Result<ClusterDecomposition> {
    let cluster_of = g
        .labels()
        .iter()
        .map(|l| match l {
            VertexLabel::Plain(p) => Ok(match p.parity() {
                Parity::Even => ClusterId(1),
                Parity::Odd => ClusterId(2),
            }),
            _ => Err(Error::domain(
                "part decomposition needs a permutation graph",
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClusterDecomposition::from_assignment(cluster_of))
}

/// The endpoint of the unique cross edge at `x`: the full signed reversal.
pub fn out_neighbour_bp(x: &SignedPermutation) -> SignedPermutation {
    x.prefix_reversal_unchecked(x.len())
}

/// The matching partner `u (12)`: swaps the first two entries.
pub fn out_neighbour_ea(u: &Permutation) -> Permutation {
    let mut image = u.image().to_vec();
    image.swap(0, 1);
    Permutation::new(image).expect("swapping two entries keeps a bijection")
}

/// All edges with one endpoint in cluster `i` and the other in cluster `j`.
pub fn cross_edge_set(
    g: &Graph,
    dec: &ClusterDecomposition,
    i: ClusterId,
    j: ClusterId,
) -> Result<Vec<Edge>> {
    if i == j {
        return Err(Error::domain(format!(
            "cross edges need two clusters, got {i} twice"
        )));
    }
    let mut edges: Vec<Edge> = dec
        .members(i)
        .iter()
        .flat_map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| dec.cluster_of(u) == j)
                .map(move |&u| normalize_edge(v, u))
        })
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

/// Maps a vertex of cluster `x.last()` onto `BP_{n-1}`: drop the last entry,
/// relabel absolute values order-preservingly onto `1..n-1`, keep signs.
pub fn cluster_relabel(x: &SignedPermutation) -> Result<SignedPermutation> {
    let fixed = x.last().unsigned_abs();
    let entries = x.entries()[..x.len() - 1]
        .iter()
        .map(|&e| {
            let a = e.unsigned_abs();
            let a = if a > fixed { a - 1 } else { a };
            (a as i8) * e.signum()
        })
        .collect();
    SignedPermutation::new(entries)
}

/// Inverse of [`cluster_relabel`] for the cluster with last entry `cluster`.
pub fn cluster_embed(y: &SignedPermutation, cluster: ClusterId) -> Result<SignedPermutation> {
    let fixed = cluster.0.unsigned_abs();
    if fixed == 0 || fixed as usize > y.len() + 1 {
        return Err(Error::domain(format!(
            "cluster {cluster} is not a cluster of BP_{}",
            y.len() + 1
        )));
    }
    let mut entries: Vec<i8> = y
        .entries()
        .iter()
        .map(|&e| {
            let a = e.unsigned_abs();
            let a = if a >= fixed { a + 1 } else { a };
            (a as i8) * e.signum()
        })
        .collect();
    entries.push(cluster.0);
    SignedPermutation::new(entries)
}

/// `BP_n` with every vertex of cluster `j` deleted.
pub fn punctured_bp(n: usize, j: ClusterId) -> Result<Graph> {
    let g = build_burnt_pancake(n)?;
    if j.0 == 0 || j.0.unsigned_abs() as usize > n {
        return Err(Error::domain(format!("{j} is not a cluster of BP_{n}")));
    }
    let keep: Vec<usize> = (0..g.order())
        .filter(|&v| g.label(v).as_signed().map(SignedPermutation::last) != Some(j.0))
        .collect();
    let (mut h, _) = g.induced_subgraph(&keep);
    h.name = format!("BP{n}-C{j}");
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn burnt_pancake_counts() {
        let bp2 = build_burnt_pancake(2).unwrap();
        assert_eq!((bp2.order(), bp2.size()), (8, 8));
        let bp3 = build_burnt_pancake(3).unwrap();
        assert_eq!((bp3.order(), bp3.size()), (48, 72));
        assert!(build_burnt_pancake(1).is_err());
        assert!(build_burnt_pancake(MAX_BP_N + 1).is_err());
    }

    #[test]
    fn bp2_is_a_single_cycle() {
        let g = build_burnt_pancake(2).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        assert!(g.is_connected());
        // walk the cycle from vertex 0
        let (mut prev, mut cur, mut steps) = (0, g.neighbors(0)[0], 1);
        while cur != 0 {
            let next = *g.neighbors(cur).iter().find(|&&u| u != prev).unwrap();
            prev = cur;
            cur = next;
            steps += 1;
        }
        assert_eq!(steps, 8);
    }

    #[test]
    fn bp_adjacency_is_prefix_reversal() {
        let g = build_burnt_pancake(3).unwrap();
        for v in 0..g.order() {
            let x = g.label(v).as_signed().unwrap();
            for i in 1..=3 {
                let y = x.prefix_reversal(i).unwrap();
                assert!(g.is_adjacent(v, y.rank()));
            }
        }
    }

    #[test]
    fn permutation_network_counts() {
        let an3 = build_alternating_network(3).unwrap();
        assert_eq!((an3.order(), an3.size()), (3, 3));
        let ea3 = build_godan(3).unwrap();
        assert_eq!((ea3.order(), ea3.size()), (6, 9));
        let ea4 = build_godan(4).unwrap();
        assert_eq!((ea4.order(), ea4.size()), (24, 48));
        let an4 = build_alternating_network(4).unwrap();
        assert_eq!((an4.order(), an4.size()), (12, 18));
        assert!(build_godan(2).is_err());
        assert!(build_alternating_network(2).is_err());
    }

    #[test]
    fn clusters_of_bp3() {
        let g = build_burnt_pancake(3).unwrap();
        let dec = cluster_decomposition(&g, 3).unwrap();
        assert_eq!(dec.len(), 6);
        assert!(dec.ids().all(|c| dec.members(c).len() == 8));
        assert_eq!(dec.cluster_of(sp("1,2,3").rank()), ClusterId(3));
        assert_eq!(dec.cluster_of(sp("-3,-2,-1").rank()), ClusterId(-1));
        let ids: Vec<i8> = dec.ids().map(ClusterId::value).collect();
        assert_eq!(ids, vec![1, -1, 2, -2, 3, -3]);
    }

    #[test]
    fn out_neighbours() {
        let x = sp("1,2,3");
        let y = out_neighbour_bp(&x);
        assert_eq!(y, sp("-3,-2,-1"));
        assert_eq!(y.last(), -x.first());
        assert_eq!(out_neighbour_bp(&y), x);

        let id = Permutation::identity(4).unwrap();
        let t = out_neighbour_ea(&id);
        assert_eq!(t.image(), &[2, 1, 3, 4]);
        assert_eq!(out_neighbour_ea(&t), id);
        assert_eq!(t.parity(), Parity::Odd);
    }

    #[test]
    fn exactly_one_cross_edge_per_bp3_vertex() {
        let g = build_burnt_pancake(3).unwrap();
        let dec = cluster_decomposition(&g, 3).unwrap();
        for v in 0..g.order() {
            let outside: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| dec.cluster_of(u) != dec.cluster_of(v))
                .collect();
            let x = g.label(v).as_signed().unwrap();
            assert_eq!(outside, vec![out_neighbour_bp(x).rank()]);
        }
    }

    #[test]
    fn cross_edge_examples() {
        let g3 = build_burnt_pancake(3).unwrap();
        let d3 = cluster_decomposition(&g3, 3).unwrap();
        assert_eq!(
            cross_edge_set(&g3, &d3, ClusterId(1), ClusterId(2))
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            cross_edge_set(&g3, &d3, ClusterId(1), ClusterId(-1))
                .unwrap()
                .len(),
            0
        );
        assert!(cross_edge_set(&g3, &d3, ClusterId(1), ClusterId(1)).is_err());
        let g4 = build_burnt_pancake(4).unwrap();
        let d4 = cluster_decomposition(&g4, 4).unwrap();
        assert_eq!(
            cross_edge_set(&g4, &d4, ClusterId(2), ClusterId(3))
                .unwrap()
                .len(),
            8
        );
    }

    #[test]
    fn labels_parse_in_either_notation() {
        let f = Family::Godan;
        assert_eq!(
            f.parse_label(4, "(1 2)(3 4)").unwrap(),
            f.parse_label(4, "2,1,4,3").unwrap()
        );
        assert_eq!(
            f.parse_label(3, "()").unwrap(),
            f.parse_label(3, "1,2,3").unwrap()
        );
        assert!(Family::AlternatingNetwork.parse_label(3, "(1 2)").is_err());
        assert!(Family::BurntPancake.parse_label(2, "(1 2)").is_err());
    }

    #[test]
    fn relabel_examples() {
        assert_eq!(cluster_relabel(&sp("1,2,3")).unwrap(), sp("1,2"));
        assert_eq!(cluster_relabel(&sp("-3,1,2")).unwrap(), sp("-2,1"));
        assert_eq!(
            cluster_embed(&sp("-2,1"), ClusterId(2)).unwrap(),
            sp("-3,1,2")
        );
        assert!(cluster_embed(&sp("1,2"), ClusterId(4)).is_err());
    }

    #[test]
    fn relabel_is_an_isomorphism_onto_bp2() {
        let g3 = build_burnt_pancake(3).unwrap();
        let g2 = build_burnt_pancake(2).unwrap();
        let dec = cluster_decomposition(&g3, 3).unwrap();
        for id in dec.ids() {
            let members = dec.members(id);
            let image = |v: usize| {
                cluster_relabel(g3.label(v).as_signed().unwrap())
                    .unwrap()
                    .rank()
            };
            let mut mapped: Vec<Edge> = Vec::new();
            for &v in members {
                for &u in g3.neighbors(v) {
                    if dec.cluster_of(u) == id && u > v {
                        mapped.push(normalize_edge(image(v), image(u)));
                    }
                }
            }
            mapped.sort_unstable();
            assert_eq!(mapped, g2.edges(), "cluster {id}");
        }
    }

    #[test]
    fn punctured_examples() {
        let h = punctured_bp(3, ClusterId(-3)).unwrap();
        assert_eq!(h.order(), 40);
        let p = punctured_bp(2, ClusterId(1)).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.size(), 5);
        let ends = (0..6).filter(|&v| p.degree(v) == 1).count();
        assert_eq!(ends, 2);
        assert!(p.is_connected());
        assert!(punctured_bp(3, ClusterId(4)).is_err());
    }

    #[test]
    fn dot_and_json_exports() {
        let g = build_burnt_pancake(2).unwrap();
        let dec = cluster_decomposition(&g, 2).unwrap();
        let dot = g.to_dot(Some(&dec));
        assert_eq!(dot.matches(" -- ").count(), 8);
        assert!(dot.contains("label=\"1,2\""));
        let dump = g.to_dump();
        assert_eq!(dump.order, 8);
        assert_eq!(dump.edges.len(), 8);
        assert_eq!(dump.labels[0], "1,2");
    }

    #[test]
    fn graph_new_rejects_bad_input() {
        let l = |s: &str| VertexLabel::Signed(sp(s));
        let labels = vec![l("1,2"), l("2,1")];
        assert!(Graph::new("x", vec![vec![1], vec![]], labels.clone()).is_err());
        assert!(Graph::new("x", vec![vec![0], vec![1]], labels.clone()).is_err());
        assert!(Graph::new("x", vec![vec![1, 1], vec![0, 0]], labels.clone()).is_err());
        assert!(Graph::new("x", vec![vec![1], vec![0]], labels).is_ok());
    }
}
