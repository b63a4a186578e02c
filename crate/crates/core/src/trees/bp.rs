//! `n - 1` internally edge-disjoint trees for any 3-set of `BP_n`.
//!
//! The builder dispatches on how many clusters the terminals touch:
//!
//! * one cluster: `n - 2` trees come from the same construction in
//!   `BP_{n-1}` (the cluster relabelled), the last tree leaves through the
//!   three cross edges and connects the out-neighbours outside the cluster;
//! * two clusters: `n - 1` internally disjoint paths between the two
//!   terminals sharing a cluster, each continued across the cross edge at
//!   its first inner vertex and met by a fan from the third terminal;
//! * three clusters: every tree leaves each home cluster through a chosen
//!   attachment vertex and is completed inside one or two transit clusters.
//!   For `n = 3` there is not enough room for that and the two trees are
//!   built directly from the home clusters and the three remaining ones.

use crate::error::{Error, Result};
use crate::flows::fan;
use crate::perm::SignedPermutation;
use crate::topology::{
    build_burnt_pancake, cluster_decomposition, cluster_embed, cluster_relabel,
    ClusterDecomposition, ClusterId, Edge, Family, Graph, VertexLabel,
};

use super::{check_distinct, pair_with_fan, steiner_tree, CaseLabel, Note, STreeSet, TreeEdges};

/// One `BP_m` with its clusters and cross-edge map.
pub struct BpLevel {
    n: usize,
    graph: Graph,
    clusters: ClusterDecomposition,
    out: Vec<usize>,
}

impl BpLevel {
    fn new(n: usize) -> Result<Self> {
        let graph = build_burnt_pancake(n)?;
        let clusters = cluster_decomposition(&graph, n)?;
        let out = (0..graph.order())
            .map(|v| {
                let x = signed(&graph, v);
                x.prefix_reversal_unchecked(n).rank()
            })
            .collect();
        Ok(Self {
            n,
            graph,
            clusters,
            out,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn clusters(&self) -> &ClusterDecomposition {
        &self.clusters
    }

    /// The out-neighbour (cross-edge partner) of `v`.
    pub fn out(&self, v: usize) -> usize {
        self.out[v]
    }

    fn cluster(&self, v: usize) -> ClusterId {
        self.clusters.cluster_of(v)
    }
}

fn signed(g: &Graph, v: usize) -> &SignedPermutation {
    g.label(v)
        .as_signed()
        .expect("BP vertices carry signed labels")
}

/// `BP_2, …, BP_n`, everything the recursive construction needs.
pub struct BpContext {
    levels: Vec<BpLevel>,
}

struct Route {
    /// Transit cluster entered from each of the three home clusters.
    targets: [ClusterId; 3],
    /// Clusters the connecting tree may use.
    connector: Vec<ClusterId>,
}

impl BpContext {
    pub fn new(n: usize) -> Result<Self> {
        Family::BurntPancake.check_n(n)?;
        let levels = (2..=n).map(BpLevel::new).collect::<Result<_>>()?;
        Ok(Self { levels })
    }

    pub fn n(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn level(&self, n: usize) -> &BpLevel {
        &self.levels[n - 2]
    }

    pub fn graph(&self) -> &Graph {
        &self.level(self.n()).graph
    }

    pub fn clusters(&self) -> &ClusterDecomposition {
        &self.level(self.n()).clusters
    }

    pub fn index_of(&self, label: &VertexLabel) -> Result<usize> {
        match label {
            VertexLabel::Signed(x) if x.len() == self.n() => Ok(x.rank()),
            _ => Err(Error::domain(format!(
                "{label} is not a vertex of BP_{}",
                self.n()
            ))),
        }
    }

    /// Trees for a triple of the top-level graph.
    pub fn trees(&self, s: [usize; 3]) -> Result<STreeSet> {
        self.bp_trees(self.n(), s)
    }

    /// The top-level case a triple of `BP_n` falls into.
    pub fn classify(&self, n: usize, s: [usize; 3]) -> Result<CaseLabel> {
        let lvl = self.checked_level(n, s)?;
        if n == 2 {
            return Ok(CaseLabel::BpBaseCycle);
        }
        let c = s.map(|v| lvl.cluster(v));
        let distinct = 1 + usize::from(c[1] != c[0]) + usize::from(c[2] != c[0] && c[2] != c[1]);
        Ok(match distinct {
            1 => CaseLabel::BpSameCluster,
            2 => CaseLabel::BpTwoClusters,
            _ => match n {
                3 => match blocked_terminals(lvl, s).len() {
                    0 => CaseLabel::BpThreeClustersDirect,
                    1 => CaseLabel::BpThreeClustersOneBlocked,
                    _ => CaseLabel::BpThreeClustersMultiBlocked,
                },
                4 if has_opposite_pair(c) => CaseLabel::BpThreeClustersOppositePair,
                4 => CaseLabel::BpThreeClustersSplitTransit,
                _ => CaseLabel::BpThreeClustersTransit,
            },
        })
    }

    fn checked_level(&self, n: usize, s: [usize; 3]) -> Result<&BpLevel> {
        if n < 2 || n > self.n() {
            return Err(Error::domain(format!("level {n} outside 2..={}", self.n())));
        }
        let lvl = self.level(n);
        if let Some(&v) = s.iter().find(|&&v| v >= lvl.graph.order()) {
            return Err(Error::domain(format!("vertex {v} is not in BP_{n}")));
        }
        check_distinct(s)?;
        Ok(lvl)
    }

    /// `n - 1` internally edge-disjoint trees on `s` in `BP_n`.
    pub fn bp_trees(&self, n: usize, s: [usize; 3]) -> Result<STreeSet> {
        let case = self.classify(n, s)?;
        match case {
            CaseLabel::BpBaseCycle => {
                let lvl = self.level(n);
                let tree = steiner_tree(lvl.graph.view(), &s)
                    .ok_or_else(|| Error::construction(case.as_str(), "BP_2 is disconnected"))?;
                Ok(finish(n, s, case, Vec::new(), Vec::new(), vec![tree]))
            }
            CaseLabel::BpSameCluster => self.bp_trees_same_cluster(n, s),
            CaseLabel::BpTwoClusters => self.bp_trees_two_clusters(n, s),
            _ => self.bp_trees_three_clusters(n, s),
        }
    }

    /// All terminals in one cluster `j`.
    pub fn bp_trees_same_cluster(&self, n: usize, s: [usize; 3]) -> Result<STreeSet> {
        let case = CaseLabel::BpSameCluster;
        let lvl = self.checked_level(n, s)?;
        let j = lvl.cluster(s[0]);
        if n < 3 || s.iter().any(|&v| lvl.cluster(v) != j) {
            return Err(Error::domain("terminals do not share a cluster"));
        }
        let lower = self.level(n - 1);
        let inner_s = s.map(|v| {
            cluster_relabel(signed(&lvl.graph, v))
                .expect("cluster vertices relabel")
                .rank()
        });
        let inner = self.bp_trees(n - 1, inner_s).map_err(|e| nest(case, e))?;
        let lift = |w: usize| -> usize {
            cluster_embed(signed(&lower.graph, w), j)
                .expect("relabel image embeds back")
                .rank()
        };
        let mut trees: Vec<Vec<Edge>> = inner
            .trees
            .iter()
            .map(|t| {
                let mut edges = TreeEdges::default();
                for &(a, b) in t {
                    edges.edge(lift(a), lift(b));
                }
                edges.finish()
            })
            .collect();

        let outside = lvl
            .clusters
            .mask(&[j])
            .into_iter()
            .map(|b| !b)
            .collect::<Vec<_>>();
        let outs = s.map(|v| lvl.out(v));
        let connector = steiner_tree(lvl.graph.restricted(&outside), &outs).ok_or_else(|| {
            Error::construction(
                case.as_str(),
                format!("BP_{n} minus cluster {j} is disconnected"),
            )
        })?;
        let mut edges = TreeEdges::default();
        edges.edges(&connector);
        for v in s {
            edges.edge(v, lvl.out(v));
        }
        trees.push(edges.finish());

        let mut trace = vec![case];
        trace.extend(inner.trace);
        Ok(finish(n, s, case, trace, inner.notes, trees))
    }

    /// Two terminals share cluster `C`, the third lies elsewhere.
    pub fn bp_trees_two_clusters(&self, n: usize, s: [usize; 3]) -> Result<STreeSet> {
        let case = CaseLabel::BpTwoClusters;
        let lvl = self.checked_level(n, s)?;
        let c = s.map(|v| lvl.cluster(v));
        let (pair, lone) = if c[0] == c[1] && c[2] != c[0] {
            ([s[0], s[1]], s[2])
        } else if c[0] == c[2] && c[1] != c[0] {
            ([s[0], s[2]], s[1])
        } else if c[1] == c[2] && c[0] != c[1] {
            ([s[1], s[2]], s[0])
        } else {
            return Err(Error::domain("terminals do not span exactly two clusters"));
        };
        let [x, y] = [pair[0].min(pair[1]), pair[0].max(pair[1])];
        let home = lvl.clusters.mask(&[lvl.cluster(x)]);
        let away: Vec<bool> = home.iter().map(|b| !b).collect();
        let built = pair_with_fan(&lvl.graph, &lvl.out, &home, &away, [x, y, lone], n - 1)
            .map_err(|e| Error::construction(case.as_str(), e.to_string()))?;
        let notes = if built.degenerate {
            vec![Note::DegenerateFanPath]
        } else {
            Vec::new()
        };
        Ok(finish(n, s, case, vec![case], notes, built.trees))
    }

    /// The terminals lie in three distinct clusters.
    pub fn bp_trees_three_clusters(&self, n: usize, s: [usize; 3]) -> Result<STreeSet> {
        let case = self.classify(n, s)?;
        let lvl = self.level(n);
        let homes = s.map(|v| lvl.cluster(v));
        let mut notes = Vec::new();
        let trees = match case {
            CaseLabel::BpThreeClustersDirect
            | CaseLabel::BpThreeClustersOneBlocked
            | CaseLabel::BpThreeClustersMultiBlocked => small_three_clusters(lvl, s, case)?,
            CaseLabel::BpThreeClustersTransit | CaseLabel::BpThreeClustersOppositePair => {
                let forbidden: Vec<ClusterId> =
                    homes.iter().flat_map(|&h| [h, h.opposite()]).collect();
                let transit: Vec<ClusterId> = ClusterId::all_bp(n)
                    .into_iter()
                    .filter(|l| !forbidden.contains(l))
                    .take(n - 1)
                    .collect();
                if transit.len() < n - 1 {
                    return Err(Error::construction(
                        case.as_str(),
                        "too few transit clusters",
                    ));
                }
                let routes: Vec<Route> = transit
                    .into_iter()
                    .map(|l| Route {
                        targets: [l; 3],
                        connector: vec![l],
                    })
                    .collect();
                transit_trees(lvl, s, homes, &routes, case, &mut notes)?
            }
            CaseLabel::BpThreeClustersSplitTransit => {
                let d = (1..=4i8)
                    .find(|&a| homes.iter().all(|h| h.value().unsigned_abs() != a as u8))
                    .expect("three home symbols leave one free symbol in BP_4");
                let [_, j2, j3] = homes;
                let routes = vec![
                    Route {
                        targets: [ClusterId(d); 3],
                        connector: vec![ClusterId(d)],
                    },
                    Route {
                        targets: [ClusterId(-d); 3],
                        connector: vec![ClusterId(-d)],
                    },
                    Route {
                        targets: [j2.opposite(), j3.opposite(), j2.opposite()],
                        connector: vec![j2.opposite(), j3.opposite()],
                    },
                ];
                transit_trees(lvl, s, homes, &routes, case, &mut notes)?
            }
            _ => return Err(Error::domain("terminals do not span three clusters")),
        };
        notes.sort_unstable();
        notes.dedup();
        Ok(finish(n, s, case, vec![case], notes, trees))
    }
}

fn finish(
    n: usize,
    terminals: [usize; 3],
    case: CaseLabel,
    mut trace: Vec<CaseLabel>,
    mut notes: Vec<Note>,
    trees: Vec<Vec<Edge>>,
) -> STreeSet {
    if trace.is_empty() {
        trace.push(case);
    }
    notes.sort_unstable();
    notes.dedup();
    STreeSet {
        family: Family::BurntPancake,
        n,
        terminals,
        case,
        trace,
        notes,
        trees,
    }
}

fn nest(case: CaseLabel, e: Error) -> Error {
    match e {
        Error::Construction {
            case: inner,
            reason,
        } => Error::construction(format!("{case} > {inner}"), reason),
        other => Error::construction(case.as_str(), other.to_string()),
    }
}

fn has_opposite_pair(c: [ClusterId; 3]) -> bool {
    c[0] == c[1].opposite() || c[0] == c[2].opposite() || c[1] == c[2].opposite()
}

/// Terminals whose out-neighbour lands in one of the three home clusters.
fn blocked_terminals(lvl: &BpLevel, s: [usize; 3]) -> Vec<usize> {
    let homes = s.map(|v| lvl.cluster(v));
    s.into_iter()
        .filter(|&v| homes.contains(&lvl.cluster(lvl.out(v))))
        .collect()
}

/// The lexicographically smallest vertex of `home` whose out-neighbour lies
/// in `target`, skipping the terminal `avoid`.
fn attachment(
    lvl: &BpLevel,
    home: ClusterId,
    target: ClusterId,
    avoid: usize,
    notes: &mut Vec<Note>,
) -> Option<usize> {
    let mut candidates: Vec<usize> = lvl
        .clusters
        .members(home)
        .iter()
        .copied()
        .filter(|&v| lvl.cluster(lvl.out(v)) == target)
        .collect();
    candidates.sort_by(|&a, &b| lvl.graph.label(a).cmp(lvl.graph.label(b)));
    if candidates.first() == Some(&avoid) {
        notes.push(Note::TerminalCandidateSkipped);
    }
    candidates.into_iter().find(|&v| v != avoid)
}

/// Trees that leave every home cluster through one attachment vertex per
/// route and are completed inside the route's connector clusters.
fn transit_trees(
    lvl: &BpLevel,
    s: [usize; 3],
    homes: [ClusterId; 3],
    routes: &[Route],
    case: CaseLabel,
    notes: &mut Vec<Note>,
) -> Result<Vec<Vec<Edge>>> {
    let k = routes.len();
    let fail = |reason: String| Error::construction(case.as_str(), reason);
    let mut attach = [Vec::new(), Vec::new(), Vec::new()];
    let mut fans = [Vec::new(), Vec::new(), Vec::new()];
    for h in 0..3 {
        for route in routes {
            let a = attachment(lvl, homes[h], route.targets[h], s[h], notes).ok_or_else(|| {
                fail(format!(
                    "no attachment from cluster {} into {}",
                    homes[h], route.targets[h]
                ))
            })?;
            attach[h].push(a);
        }
        let mask = lvl.clusters.mask(&[homes[h]]);
        let system = fan(lvl.graph.restricted(&mask), s[h], &attach[h], k)
            .map_err(|e| fail(format!("fan inside cluster {}: {e}", homes[h])))?;
        fans[h] = system.paths;
    }
    routes
        .iter()
        .enumerate()
        .map(|(i, route)| {
            let entry = [0, 1, 2].map(|h| lvl.out(attach[h][i]));
            let mask = lvl.clusters.mask(&route.connector);
            let connector = steiner_tree(lvl.graph.restricted(&mask), &entry).ok_or_else(|| {
                fail(format!(
                    "connector clusters {:?} are disconnected",
                    route.connector
                ))
            })?;
            let mut edges = TreeEdges::default();
            edges.edges(&connector);
            for h in 0..3 {
                let a = attach[h][i];
                let path = fans[h]
                    .iter()
                    .find(|p| p[p.len() - 1] == a)
                    .expect("fan reaches every attachment");
                edges.path(path).edge(a, lvl.out(a));
            }
            Ok(edges.finish())
        })
        .collect()
}

/// `n = 3`, three distinct clusters. `H` is the union of the home clusters;
/// the first tree stays in `H`, the second crosses out of `H` at every
/// terminal and is completed in the three remaining clusters. A terminal
/// whose out-neighbour lies inside `H` crosses out through a neighbour in
/// its own cluster instead, and that neighbour is withheld from the first
/// tree.
fn small_three_clusters(lvl: &BpLevel, s: [usize; 3], case: CaseLabel) -> Result<Vec<Vec<Edge>>> {
    let fail = |reason: String| Error::construction(case.as_str(), reason);
    let homes = s.map(|v| lvl.cluster(v));
    let in_h = lvl.clusters.mask(&homes);
    let mut second = TreeEdges::default();
    let mut exits = Vec::with_capacity(3);
    let mut withheld = Vec::new();
    for &t in &s {
        if !in_h[lvl.out(t)] {
            second.edge(t, lvl.out(t));
            exits.push(lvl.out(t));
            continue;
        }
        let mut nbrs: Vec<usize> = lvl
            .graph
            .neighbors(t)
            .iter()
            .copied()
            .filter(|&u| lvl.cluster(u) == lvl.cluster(t) && !in_h[lvl.out(u)])
            .collect();
        nbrs.sort_by(|&a, &b| lvl.graph.label(a).cmp(lvl.graph.label(b)));
        let &u = nbrs
            .first()
            .ok_or_else(|| fail(format!("no neighbour of {t} leaves the home clusters")))?;
        second.edge(t, u).edge(u, lvl.out(u));
        exits.push(lvl.out(u));
        withheld.push(u);
    }
    let mut first_mask = in_h.clone();
    for &u in &withheld {
        first_mask[u] = false;
    }
    let first = steiner_tree(lvl.graph.restricted(&first_mask), &s)
        .ok_or_else(|| fail("home clusters disconnected after withholding".into()))?;
    let outside: Vec<bool> = in_h.iter().map(|b| !b).collect();
    let connector = steiner_tree(lvl.graph.restricted(&outside), &exits)
        .ok_or_else(|| fail("remaining clusters are disconnected".into()))?;
    second.edges(&connector);
    Ok(vec![first, second.finish()])
}
