//! `n - 1` internally edge-disjoint trees for any 3-set of `EA_n`.
//!
//! `EA_n` is two copies of `AN_n` (even and odd permutations) joined by the
//! perfect matching `u ~ u (12)`. When all three terminals lie in one part,
//! `n - 2` trees are packed inside that part by exact search and the last
//! tree crosses the matching at every terminal. Otherwise two terminals
//! share a part and the paths-plus-fan construction applies.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::topology::{
    build_godan, part_decomposition, ClusterDecomposition, ClusterId, Family, Graph, VertexLabel,
};

use super::packing::{generic_stree_packing, PackingOutcome};
use super::{check_distinct, pair_with_fan, steiner_tree, CaseLabel, Note, STreeSet, TreeEdges};

pub struct EaContext {
    n: usize,
    graph: Graph,
    parts: ClusterDecomposition,
    out: Vec<usize>,
    masks: [Vec<bool>; 2],
    budget: Option<Duration>,
}

impl EaContext {
    pub fn new(n: usize) -> Result<Self> {
        let graph = build_godan(n)?;
        let parts = part_decomposition(&graph)?;
        let out = (0..graph.order())
            .map(|v| {
                let p = graph
                    .label(v)
                    .as_plain()
                    .expect("EA vertices are permutations");
                crate::topology::out_neighbour_ea(p).rank()
            })
            .collect();
        let masks = [parts.mask(&[ClusterId(1)]), parts.mask(&[ClusterId(2)])];
        Ok(Self {
            n,
            graph,
            parts,
            out,
            masks,
            budget: None,
        })
    }

    /// Caps the time spent by each packing search inside a part.
    pub fn with_budget(mut self, budget: Option<Duration>) -> Self {
        self.budget = budget;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &ClusterDecomposition {
        &self.parts
    }

    pub fn out(&self, v: usize) -> usize {
        self.out[v]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Result<usize> {
        match label {
            VertexLabel::Plain(p) if p.len() == self.n => Ok(p.rank()),
            _ => Err(Error::domain(format!(
                "{label} is not a vertex of EA_{}",
                self.n
            ))),
        }
    }

    fn is_even(&self, v: usize) -> bool {
        self.masks[0][v]
    }

    pub fn classify(&self, s: [usize; 3]) -> Result<CaseLabel> {
        if let Some(&v) = s.iter().find(|&&v| v >= self.graph.order()) {
            return Err(Error::domain(format!("vertex {v} is not in EA_{}", self.n)));
        }
        check_distinct(s)?;
        Ok(match s.iter().filter(|&&v| self.is_even(v)).count() {
            3 => CaseLabel::EaEvenPartTriple,
            2 => CaseLabel::EaEvenPair,
            1 => CaseLabel::EaOddPair,
            _ => CaseLabel::EaOddPartTriple,
        })
    }

    /// `n - 1` internally edge-disjoint trees on `s`.
    pub fn ea_trees(&self, s: [usize; 3]) -> Result<STreeSet> {
        let case = self.classify(s)?;
        let mut notes = Vec::new();
        let trees = match case {
            CaseLabel::EaEvenPartTriple | CaseLabel::EaOddPartTriple => {
                let part = usize::from(case == CaseLabel::EaOddPartTriple);
                self.one_part(s, part, case)?
            }
            _ => {
                let odd_pair = case == CaseLabel::EaOddPair;
                let (mut pair, lone): (Vec<usize>, usize) = {
                    let (same, other): (Vec<usize>, Vec<usize>) =
                        s.into_iter().partition(|&v| self.is_even(v) != odd_pair);
                    (same, other[0])
                };
                pair.sort_unstable();
                let home = &self.masks[usize::from(odd_pair)];
                let away = &self.masks[usize::from(!odd_pair)];
                let built = pair_with_fan(
                    &self.graph,
                    &self.out,
                    home,
                    away,
                    [pair[0], pair[1], lone],
                    self.n - 1,
                )
                .map_err(|e| Error::construction(case.as_str(), e.to_string()))?;
                if built.degenerate {
                    notes.push(Note::DegenerateFanPath);
                }
                built.trees
            }
        };
        Ok(STreeSet {
            family: Family::Godan,
            n: self.n,
            terminals: s,
            case,
            trace: vec![case],
            notes,
            trees,
        })
    }

    fn one_part(
        &self,
        s: [usize; 3],
        part: usize,
        case: CaseLabel,
    ) -> Result<Vec<Vec<crate::topology::Edge>>> {
        let inside = self.graph.restricted(&self.masks[part]);
        let mut trees = match generic_stree_packing(inside, s, self.n - 2, self.budget) {
            PackingOutcome::Found(trees) => trees,
            PackingOutcome::Infeasible => {
                return Err(Error::construction(
                    case.as_str(),
                    format!("no {} trees inside the part", self.n - 2),
                ))
            }
            PackingOutcome::Indeterminate => {
                return Err(Error::construction(
                    case.as_str(),
                    "packing search budget exhausted",
                ))
            }
        };
        let outs = s.map(|v| self.out[v]);
        let connector = steiner_tree(self.graph.restricted(&self.masks[1 - part]), &outs)
            .ok_or_else(|| Error::construction(case.as_str(), "other part is disconnected"))?;
        let mut last = TreeEdges::default();
        last.edges(&connector);
        for v in s {
            last.edge(v, self.out[v]);
        }
        trees.push(last.finish());
        Ok(trees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn idx(s: &str) -> usize {
        s.parse::<Permutation>().unwrap().rank()
    }

    #[test]
    fn every_case_in_ea3() {
        let ctx = EaContext::new(3).unwrap();
        let even = [idx("1,2,3"), idx("2,3,1"), idx("3,1,2")];
        let set = ctx.ea_trees(even).unwrap();
        assert_eq!(set.case, CaseLabel::EaEvenPartTriple);
        assert_eq!(set.len(), 2);
        let odd = [idx("2,1,3"), idx("1,3,2"), idx("3,2,1")];
        assert_eq!(ctx.ea_trees(odd).unwrap().case, CaseLabel::EaOddPartTriple);
        let mixed = [idx("1,2,3"), idx("2,3,1"), idx("1,3,2")];
        assert_eq!(ctx.ea_trees(mixed).unwrap().case, CaseLabel::EaEvenPair);
        let mixed = [idx("1,2,3"), idx("2,1,3"), idx("1,3,2")];
        assert_eq!(ctx.ea_trees(mixed).unwrap().case, CaseLabel::EaOddPair);
    }

    #[test]
    fn degenerate_fan_path_is_noted() {
        let ctx = EaContext::new(3).unwrap();
        // 1,2,3 and 2,3,1 are adjacent via (123); the neighbour of 1,2,3 on
        // the direct path is 2,3,1 whose partner is 3,2,1.
        let s = [idx("1,2,3"), idx("2,3,1"), idx("3,2,1")];
        let set = ctx.ea_trees(s).unwrap();
        assert!(set.notes.contains(&Note::DegenerateFanPath), "{set:?}");
    }

    #[test]
    fn rejects_bad_triples() {
        let ctx = EaContext::new(3).unwrap();
        assert!(ctx.ea_trees([0, 0, 1]).is_err());
        assert!(ctx.ea_trees([0, 1, 6]).is_err());
    }
}
