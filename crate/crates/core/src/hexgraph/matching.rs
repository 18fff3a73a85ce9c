use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{EdgeId, WeightedGraph};
use crate::error::{Error, Result};

/// Largest colour class [`enumerate_matchings`] accepts by default.
pub const DEFAULT_MATCHING_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn new(edges: BTreeSet<EdgeId>) -> Self {
        Matching { edges }
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

struct Frame {
    black: usize,
    candidates: Vec<EdgeId>,
    next: usize,
    chosen: Option<EdgeId>,
}

/// Depth-first stream of perfect matchings. At each step the uncovered black
/// vertex with the fewest free neighbours is branched on, so dead ends are
/// detected as soon as some vertex runs out of options.
pub struct Matchings<'g, W> {
    g: &'g WeightedGraph<W>,
    black_covered: Vec<bool>,
    white_covered: Vec<bool>,
    stack: Vec<Frame>,
    descend: bool,
    exhausted: bool,
}

impl<W: Clone> Matchings<'_, W> {
    fn free_edges(&self, black: usize) -> Vec<EdgeId> {
        self.g
            .black_edges(black)
            .iter()
            .copied()
            .filter(|&e| !self.white_covered[self.g.edge(e).white])
            .collect()
    }

    /// `None` when every black vertex is covered.
    fn pick(&self) -> Option<(usize, Vec<EdgeId>)> {
        let mut best: Option<(usize, Vec<EdgeId>)> = None;
        for v in (0..self.black_covered.len()).filter(|&v| !self.black_covered[v]) {
            let cands = self.free_edges(v);
            let better = best.as_ref().is_none_or(|(_, c)| cands.len() < c.len());
            if better {
                let dead = cands.is_empty();
                best = Some((v, cands));
                if dead {
                    break;
                }
            }
        }
        best
    }

    fn set(&mut self, e: EdgeId, on: bool) {
        let edge = self.g.edge(e);
        self.black_covered[edge.black] = on;
        self.white_covered[edge.white] = on;
    }

    fn current(&self) -> Matching {
        Matching::new(self.stack.iter().filter_map(|f| f.chosen).collect())
    }
}

impl<W: Clone> Iterator for Matchings<'_, W> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.exhausted {
            return None;
        }
        loop {
            if self.descend {
                match self.pick() {
                    None => {
                        self.descend = false;
                        return Some(self.current());
                    }
                    Some((black, candidates)) => self.stack.push(Frame {
                        black,
                        candidates,
                        next: 0,
                        chosen: None,
                    }),
                }
            }
            let Some(top) = self.stack.last_mut() else {
                self.exhausted = true;
                return None;
            };
            let undo = top.chosen.take();
            let step = (top.next < top.candidates.len()).then(|| {
                top.next += 1;
                top.candidates[top.next - 1]
            });
            debug_assert!(step.is_none_or(|e| self.g.edge(e).black == top.black));
            if let Some(e) = undo {
                self.set(e, false);
            }
            match step {
                Some(e) => {
                    self.set(e, true);
                    self.stack.last_mut().expect("frame still present").chosen = Some(e);
                    self.descend = true;
                }
                None => {
                    self.stack.pop();
                    self.descend = false;
                }
            }
        }
    }
}

/// Streams every perfect matching exactly once. Graphs whose colour classes
/// exceed `budget` vertices are refused outright.
pub fn enumerate_matchings<W: Clone>(g: &WeightedGraph<W>, budget: usize) -> Result<Matchings<'_, W>> {
    let size = g.black().len().max(g.white().len());
    if size > budget {
        return Err(Error::BudgetExceeded(format!(
            "matching enumeration on {size} vertices per colour exceeds the budget {budget}"
        )));
    }
    let unbalanced = g.black().len() != g.white().len();
    Ok(Matchings {
        g,
        black_covered: vec![false; g.black().len()],
        white_covered: vec![false; g.white().len()],
        stack: Vec::new(),
        descend: true,
        exhausted: unbalanced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgraph::build_hexagon;
    use crate::products::BoxDims;
    use num_bigint::BigInt;

    fn count(a: u32, b: u32, c: u32) -> usize {
        let g = build_hexagon::<BigInt>(BoxDims::new(a, b, c).unwrap());
        let all: Vec<_> = enumerate_matchings(&g, DEFAULT_MATCHING_BUDGET).unwrap().collect();
        assert!(all.iter().all(|m| g.is_perfect_matching(m)));
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        all.len()
    }

    #[test]
    fn small_hexagons() {
        assert_eq!(count(1, 1, 1), 2);
        assert_eq!(count(1, 1, 2), 3);
        assert_eq!(count(2, 2, 2), 20);
        assert_eq!(count(1, 2, 3), 10);
    }

    #[test]
    fn refuses_over_budget() {
        let g = build_hexagon::<BigInt>(BoxDims::new(3, 3, 3).unwrap());
        assert!(matches!(enumerate_matchings(&g, 10), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn perfect_matching_check_rejects_partial_sets() {
        let g = build_hexagon::<BigInt>(BoxDims::new(1, 1, 1).unwrap());
        let m = Matching::new([0].into_iter().collect());
        assert!(!g.is_perfect_matching(&m));
    }
}
