//! Constructive packings of internally edge-disjoint Steiner trees.
//!
//! For a 3-set `S` of vertices, an `S`-tree is a tree containing `S`.
//! Trees `T_1, …, T_r` are internally edge disjoint when every pair shares
//! exactly the vertices of `S` and no edge. The builders here produce
//! `n - 1` such trees in `BP_n` ([`bp`]) and in `EA_n` ([`ea`]) by
//! following the cluster case analysis; [`packing`] is an exact search used
//! for `AN_n` parts and as an independent oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{normalize_edge, Edge, Family, Graph, GraphView};

pub mod bp;
pub mod ea;
pub mod packing;

pub use bp::BpContext;
pub use ea::EaContext;
pub use packing::{generic_stree_packing, PackingOutcome};

/// Which branch of the case analysis produced a tree set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    /// `BP_2` is an 8-cycle; the single tree is a subpath.
    BpBaseCycle,
    /// All three terminals in one cluster: recurse inside it, plus one tree
    /// through the rest of the graph.
    BpSameCluster,
    /// Two terminals share a cluster: disjoint paths inside it joined to a
    /// fan from the third terminal.
    BpTwoClusters,
    /// Three clusters, `n >= 5`: one transit cluster per tree.
    BpThreeClustersTransit,
    /// Three clusters, `n = 4`, two of them opposite (`j` and `-j`).
    BpThreeClustersOppositePair,
    /// Three clusters, `n = 4`, no opposite pair: two transit clusters plus a
    /// tree routed through the union of two further clusters.
    BpThreeClustersSplitTransit,
    /// Three clusters, `n = 3`, no out-neighbour of a terminal lands among
    /// the home clusters.
    BpThreeClustersDirect,
    /// Three clusters, `n = 3`, exactly one terminal's out-neighbour lands
    /// among the home clusters and is rerouted through a neighbour.
    BpThreeClustersOneBlocked,
    /// Three clusters, `n = 3`, two or three terminals rerouted.
    BpThreeClustersMultiBlocked,
    /// All terminals among the even permutations of `EA_n`.
    EaEvenPartTriple,
    /// Two terminals even, one odd.
    EaEvenPair,
    /// One terminal even, two odd.
    EaOddPair,
    /// All terminals among the odd permutations.
    EaOddPartTriple,
    /// Produced by the generic packing search.
    GenericPacking,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::BpBaseCycle => "bp-base-cycle",
            CaseLabel::BpSameCluster => "bp-same-cluster",
            CaseLabel::BpTwoClusters => "bp-two-clusters",
            CaseLabel::BpThreeClustersTransit => "bp-three-clusters-transit",
            CaseLabel::BpThreeClustersOppositePair => "bp-three-clusters-opposite-pair",
            CaseLabel::BpThreeClustersSplitTransit => "bp-three-clusters-split-transit",
            CaseLabel::BpThreeClustersDirect => "bp-three-clusters-direct",
            CaseLabel::BpThreeClustersOneBlocked => "bp-three-clusters-one-blocked",
            CaseLabel::BpThreeClustersMultiBlocked => "bp-three-clusters-multi-blocked",
            CaseLabel::EaEvenPartTriple => "ea-even-part-triple",
            CaseLabel::EaEvenPair => "ea-even-pair",
            CaseLabel::EaOddPair => "ea-odd-pair",
            CaseLabel::EaOddPartTriple => "ea-odd-part-triple",
            CaseLabel::GenericPacking => "generic-packing",
        }
    }

    /// Every label a `BP_n` builder can emit at the top level.
    pub fn bp_labels(n: usize) -> Vec<CaseLabel> {
        use CaseLabel::*;
        match n {
            0..=2 => vec![BpBaseCycle],
            3 => vec![
                BpSameCluster,
                BpTwoClusters,
                BpThreeClustersDirect,
                BpThreeClustersOneBlocked,
                BpThreeClustersMultiBlocked,
            ],
            4 => vec![
                BpSameCluster,
                BpTwoClusters,
                BpThreeClustersOppositePair,
                BpThreeClustersSplitTransit,
            ],
            _ => vec![BpSameCluster, BpTwoClusters, BpThreeClustersTransit],
        }
    }

    pub fn ea_labels() -> Vec<CaseLabel> {
        use CaseLabel::*;
        vec![EaEvenPartTriple, EaEvenPair, EaOddPair, EaOddPartTriple]
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Irregularities met while building a tree set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Note {
    /// The lone terminal coincided with a fan target; its fan path is the
    /// single vertex.
    DegenerateFanPath,
    /// A lexicographically first attachment candidate was a terminal and
    /// the next candidate was taken.
    TerminalCandidateSkipped,
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Note::DegenerateFanPath => "degenerate-fan-path",
            Note::TerminalCandidateSkipped => "terminal-candidate-skipped",
        })
    }
}

/// Trees over a common terminal triple, each stored as sorted normalized
/// edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STreeSet {
    pub family: Family,
    pub n: usize,
    pub terminals: [usize; 3],
    /// Top-level case.
    pub case: CaseLabel,
    /// The top-level case followed by the cases of any recursive calls.
    pub trace: Vec<CaseLabel>,
    pub notes: Vec<Note>,
    pub trees: Vec<Vec<Edge>>,
}

impl STreeSet {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn trace_string(&self) -> String {
        self.trace
            .iter()
            .map(|c| c.as_str())
            .collect::<Vec<_>>()
            .join(" > ")
    }

    pub fn to_json(&self, host: &Graph) -> STreeSetJson {
        let label = |v: usize| host.label(v).to_string();
        STreeSetJson {
            family: self.family,
            n: self.n,
            s: self.terminals.iter().map(|&v| label(v)).collect(),
            case: self.case,
            trace: self.trace.clone(),
            notes: self.notes.clone(),
            trees: self
                .trees
                .iter()
                .map(|t| t.iter().map(|&(a, b)| [label(a), label(b)]).collect())
                .collect(),
        }
    }
}

/// Serialized form: terminals and edges are given by vertex label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct STreeSetJson {
    pub family: Family,
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub case: CaseLabel,
    pub trace: Vec<CaseLabel>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Note>,
    pub trees: Vec<Vec<[String; 2]>>,
}

pub(crate) fn check_distinct(s: [usize; 3]) -> Result<()> {
    if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
        return Err(Error::domain(format!("terminals {s:?} are not distinct")));
    }
    Ok(())
}

/// Collects edges into a canonical tree edge list.
#[derive(Default)]
pub(crate) struct TreeEdges(Vec<Edge>);

impl TreeEdges {
    pub fn path(&mut self, path: &[usize]) -> &mut Self {
        for w in path.windows(2) {
            self.0.push(normalize_edge(w[0], w[1]));
        }
        self
    }

    pub fn edge(&mut self, a: usize, b: usize) -> &mut Self {
        self.0.push(normalize_edge(a, b));
        self
    }

    pub fn edges(&mut self, edges: &[Edge]) -> &mut Self {
        self.0.extend_from_slice(edges);
        self
    }

    pub fn finish(&mut self) -> Vec<Edge> {
        let mut e = std::mem::take(&mut self.0);
        e.sort_unstable();
        e.dedup();
        e
    }
}

/// A tree spanning `terminals` inside `view`: breadth-first search from the
/// first terminal, then the tree paths back from the others. `None` if some
/// terminal is unreachable.
pub fn steiner_tree(view: GraphView<'_>, terminals: &[usize]) -> Option<Vec<Edge>> {
    let (&root, rest) = terminals.split_first()?;
    let parent = view.bfs_parents(root);
    let mut edges = TreeEdges::default();
    for &t in rest {
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

/// Trees made of `k` internally disjoint `(x, y)`-paths inside `home`, each
/// extended from the neighbour of `x` on it across its matching edge and
/// joined to `z` by a fan inside `away`.
///
/// `out[v]` is the unique neighbour of `v` outside its cluster. When `z`
/// itself is one of the fan targets its fan path is the single vertex `z`.
pub(crate) struct PairWithFan {
    pub trees: Vec<Vec<Edge>>,
    pub degenerate: bool,
}

pub(crate) fn pair_with_fan(
    g: &Graph,
    out: &[usize],
    home: &[bool],
    away: &[bool],
    [x, y, z]: [usize; 3],
    k: usize,
) -> std::result::Result<PairWithFan, crate::flows::FlowError> {
    use crate::flows::{fan, internally_disjoint_paths};

    let paths = internally_disjoint_paths(g.restricted(home), x, y, k)?.paths;
    let firsts: Vec<usize> = paths.iter().map(|p| p[1]).collect();
    let targets: Vec<usize> = firsts.iter().map(|&u| out[u]).collect();
    let degenerate = targets.contains(&z);
    let others: Vec<usize> = targets.iter().copied().filter(|&t| t != z).collect();
    let fan_paths = if others.is_empty() {
        Vec::new()
    } else {
        fan(g.restricted(away), z, &others, others.len())?.paths
    };
    let trees = paths
        .iter()
        .zip(firsts.iter().zip(&targets))
        .map(|(p, (&u, &t))| {
            let mut edges = TreeEdges::default();
            edges.path(p).edge(u, t);
            if t != z {
                let q = fan_paths
                    .iter()
                    .find(|q| q[q.len() - 1] == t)
                    .expect("fan reaches every target");
                edges.path(q);
            }
            edges.finish()
        })
        .collect();
    Ok(PairWithFan { trees, degenerate })
}
