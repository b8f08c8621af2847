//! Branching enumeration: always cover the lowest-id uncovered vertex,
//! trying its incident edges in edge-id order.

use crate::graph::{EdgeId, Graph, VertexId, WeightSymbol};
use crate::Scalar;

use super::Matching;

/// Every perfect matching of `g` exactly once, in branching order. The
/// empty graph yields one empty matching.
pub fn enumerate_pm(g: &Graph) -> PerfectMatchings<'_> {
    PerfectMatchings {
        g,
        covered: vec![false; g.vertex_count()],
        chosen: Vec::new(),
        stack: Vec::new(),
        descend: true,
        done: false,
    }
}

/// Iterator returned by [`enumerate_pm`].
pub struct PerfectMatchings<'g> {
    g: &'g Graph,
    covered: Vec<bool>,
    chosen: Vec<EdgeId>,
    /// One frame per branching vertex: the vertex and the next position in
    /// its incidence list to try.
    stack: Vec<(VertexId, usize)>,
    descend: bool,
    done: bool,
}

impl PerfectMatchings<'_> {
    fn lowest_uncovered(&self) -> Option<VertexId> {
        let from = self.stack.last().map_or(0, |&(v, _)| v + 1);
        (from..self.covered.len()).find(|&v| !self.covered[v])
    }

    /// Moves the top frame to its next option; pops exhausted frames.
    fn advance(&mut self) -> bool {
        while let Some(&mut (v, ref mut pos)) = self.stack.last_mut() {
            if *pos > 0 {
                let prev = self.chosen.pop().expect("frame has a chosen edge");
                let w = self.g.edges()[prev].other(v);
                self.covered[w] = false;
            }
            let inc = self.g.incident(v);
            let next = (*pos..inc.len()).find(|&i| !self.covered[self.g.edges()[inc[i]].other(v)]);
            match next {
                Some(i) => {
                    *pos = i + 1;
                    let e = inc[i];
                    self.covered[self.g.edges()[e].other(v)] = true;
                    self.chosen.push(e);
                    return true;
                }
                None => {
                    self.covered[v] = false;
                    self.stack.pop();
                }
            }
        }
        false
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        loop {
            if self.descend {
                match self.lowest_uncovered() {
                    None => {
                        self.descend = false;
                        let m = Matching::new(self.chosen.clone());
                        if self.stack.is_empty() {
                            self.done = true;
                        }
                        return Some(m);
                    }
                    Some(v) => {
                        self.covered[v] = true;
                        self.stack.push((v, 0));
                    }
                }
            }
            if self.advance() {
                self.descend = true;
            } else {
                self.done = true;
                return None;
            }
        }
    }
}

/// Weighted sum over perfect matchings by the same branching rule, without
/// materializing the matchings.
pub(super) fn sum<T, F>(g: &Graph, value: &F) -> T
where
    T: Scalar,
    F: Fn(WeightSymbol) -> T,
{
    let weights: Vec<T> = g.edges().iter().map(|e| value(e.weight)).collect();
    let mut covered = vec![false; g.vertex_count()];
    branch(g, &weights, &mut covered, 0)
}

fn branch<T: Scalar>(g: &Graph, weights: &[T], covered: &mut [bool], from: VertexId) -> T {
    let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
        return T::one();
    };
    covered[v] = true;
    let mut total = T::zero();
    for &e in g.incident(v) {
        let w = g.edges()[e].other(v);
        if covered[w] {
            continue;
        }
        covered[w] = true;
        let rest = branch(g, weights, covered, v + 1);
        if !rest.is_zero() {
            total = total + weights[e].clone() * rest;
        }
        covered[w] = false;
    }
    covered[v] = false;
    total
}
