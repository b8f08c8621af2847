//! Frontier dynamic program over a breadth-first vertex order.
//!
//! Vertices are swept one at a time. The state is the set of swept
//! vertices that are still uncovered; each such vertex holds a slot in a
//! 64-bit mask until its last neighbour is swept, at which point it must
//! have been covered. Sweeping `v` either matches it to an uncovered
//! earlier neighbour or leaves it open for a later one.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{Graph, VertexId, WeightSymbol};
use crate::Scalar;

use super::EngineError;

pub const DEFAULT_FRONTIER_CAP: usize = 28;
/// Hard limit imposed by the 64-bit state mask.
pub const MAX_FRONTIER_CAP: usize = 64;

struct Plan {
    order: Vec<VertexId>,
    pos: Vec<usize>,
    /// Slot held by each vertex while it is on the frontier.
    slot: Vec<Option<u32>>,
    /// Mask of slots released after each step.
    expiring: Vec<u64>,
    width: usize,
}

/// Breadth-first from vertex 0, restarting at the lowest unvisited vertex
/// for further components.
fn bfs_order(g: &Graph) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn plan(g: &Graph) -> Plan {
    let order = bfs_order(g);
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let last: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).map(|w| pos[w]).fold(pos[v], usize::max))
        .collect();

    let mut slot = vec![None; n];
    let mut expiring = vec![0u64; n];
    let mut free: Vec<u32> = Vec::new();
    let mut next_slot = 0u32;
    let mut in_use = 0usize;
    let mut width = 0usize;
    let mut holders_by_step: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (i, &v) in order.iter().enumerate() {
        for &w in &holders_by_step[i] {
            let s = slot[w].expect("holder has a slot");
            if s < 64 {
                expiring[i] |= 1u64 << s;
            }
            free.push(s);
            in_use -= 1;
        }
        if last[v] > i {
            free.sort_unstable_by(|a, b| b.cmp(a));
            let s = free.pop().unwrap_or_else(|| {
                next_slot += 1;
                next_slot - 1
            });
            slot[v] = Some(s);
            holders_by_step[last[v]].push(v);
            in_use += 1;
            width = width.max(in_use);
        }
    }
    Plan {
        order,
        pos,
        slot,
        expiring,
        width,
    }
}

/// Largest number of simultaneously open frontier vertices under the
/// breadth-first sweep.
pub fn frontier_width(g: &Graph) -> usize {
    plan(g).width
}

pub(super) fn sum<T, F>(g: &Graph, cap: usize, value: &F) -> Result<T, EngineError>
where
    T: Scalar,
    F: Fn(WeightSymbol) -> T,
{
    let plan = plan(g);
    let cap = cap.min(MAX_FRONTIER_CAP);
    if plan.width > cap {
        return Err(EngineError::Capacity {
            width: plan.width,
            cap,
        });
    }
    let weights: Vec<T> = g.edges().iter().map(|e| value(e.weight)).collect();
    let bit = |w: VertexId| 1u64 << plan.slot[w].expect("frontier vertex has a slot");

    let mut states: BTreeMap<u64, T> = BTreeMap::from([(0, T::one())]);
    for (i, &v) in plan.order.iter().enumerate() {
        let expiring = plan.expiring[i];
        let mut next: BTreeMap<u64, T> = BTreeMap::new();
        for (&mask, val) in &states {
            for &e in g.incident(v) {
                let w = g.edges()[e].other(v);
                if plan.pos[w] < i && plan.slot[w].is_some() && mask & bit(w) != 0 {
                    let matched = mask & !bit(w);
                    if matched & expiring == 0 {
                        accumulate(&mut next, matched, val.clone() * weights[e].clone());
                    }
                }
            }
            // v's slot may reuse one released this step, so the expiry
            // check runs before it is set.
            if let Some(s) = plan.slot[v] {
                if mask & expiring == 0 {
                    accumulate(&mut next, mask | (1 << s), val.clone());
                }
            }
        }
        states = next;
        if states.is_empty() {
            return Ok(T::zero());
        }
    }
    Ok(states.remove(&0).unwrap_or_else(T::zero))
}

fn accumulate<T: Scalar>(map: &mut BTreeMap<u64, T>, mask: u64, val: T) {
    let total = match map.remove(&mask) {
        Some(old) => old + val,
        None => val,
    };
    map.insert(mask, total);
}
