//! Oracles written against plain edge lists, sharing no code with the
//! library beyond reading a graph's edges.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use dimerlab::{Graph, WeightSymbol};

pub type Exps = [u32; 6];

/// Plain edge list: order plus `(u, v, symbol)` with symbol 0 for unit
/// and `1..=6` for a, b, c, x, y, z.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize, u8)>,
}

fn symbol_code(w: WeightSymbol) -> u8 {
    match w {
        WeightSymbol::Unit => 0,
        WeightSymbol::A => 1,
        WeightSymbol::B => 2,
        WeightSymbol::C => 3,
        WeightSymbol::X => 4,
        WeightSymbol::Y => 5,
        WeightSymbol::Z => 6,
    }
}

impl EdgeList {
    pub fn of(g: &Graph) -> Self {
        EdgeList {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.u, e.v, symbol_code(e.weight)))
                .collect(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b, _)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Component sizes as `(vertices, edges)`.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(u, v, _) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let mut sizes: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            sizes.entry(r).or_default().0 += 1;
        }
        for &(u, _, _) in &self.edges {
            let r = find(&mut parent, u);
            sizes.get_mut(&r).unwrap().1 += 1;
        }
        sizes.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn without_edge(&self, k: usize) -> EdgeList {
        let mut out = self.clone();
        out.edges.remove(k);
        out
    }

    /// Edges whose removal disconnects the graph, by brute force.
    pub fn bridges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| !self.without_edge(k).is_connected())
            .collect()
    }

    /// Unweighted line graph, one edge per shared endpoint.
    pub fn line(&self) -> EdgeList {
        let mut pairs = Vec::new();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let (a, b, _) = self.edges[i];
                let (c, d, _) = self.edges[j];
                for shared in [a == c, a == d, b == c, b == d] {
                    if shared {
                        pairs.push((i, j, 0));
                    }
                }
            }
        }
        EdgeList {
            n: self.edges.len(),
            edges: pairs,
        }
    }

    /// Unweighted middle graph: base vertices, then one vertex per edge.
    pub fn middle(&self) -> EdgeList {
        let mut out = self.line();
        out.n = self.n + self.edges.len();
        for e in &mut out.edges {
            e.0 += self.n;
            e.1 += self.n;
        }
        for (k, &(u, v, _)) in self.edges.iter().enumerate() {
            out.edges.push((u, self.n + k, 0));
            out.edges.push((v, self.n + k, 0));
        }
        out
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u8)>> {
        assert!(self.n <= 128, "oracle handles at most 128 vertices");
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    /// Perfect matchings, memoised on the set of covered vertices.
    pub fn count_pm(&self) -> u128 {
        fn go(adj: &[Vec<(usize, u8)>], covered: u128, memo: &mut HashMap<u128, u128>) -> u128 {
            let n = adj.len();
            let Some(v) = (0..n).find(|&v| covered >> v & 1 == 0) else {
                return 1;
            };
            if let Some(&c) = memo.get(&covered) {
                return c;
            }
            let mut total = 0;
            for &(w, _) in &adj[v] {
                if w != v && covered >> w & 1 == 0 {
                    total += go(adj, covered | 1 << v | 1 << w, memo);
                }
            }
            memo.insert(covered, total);
            total
        }
        go(&self.adjacency(), 0, &mut HashMap::new())
    }

    /// Weighted dimer sum as `exponents -> coefficient`.
    pub fn weighted_pm(&self) -> BTreeMap<Exps, u128> {
        type Poly = BTreeMap<Exps, u128>;
        fn go(adj: &[Vec<(usize, u8)>], covered: u128, memo: &mut HashMap<u128, Poly>) -> Poly {
            let n = adj.len();
            let Some(v) = (0..n).find(|&v| covered >> v & 1 == 0) else {
                return [([0; 6], 1)].into();
            };
            if let Some(p) = memo.get(&covered) {
                return p.clone();
            }
            let mut total = Poly::new();
            for &(w, s) in &adj[v] {
                if w != v && covered >> w & 1 == 0 {
                    for (mut e, c) in go(adj, covered | 1 << v | 1 << w, memo) {
                        if s > 0 {
                            e[s as usize - 1] += 1;
                        }
                        *total.entry(e).or_default() += c;
                    }
                }
            }
            memo.insert(covered, total.clone());
            total
        }
        go(&self.adjacency(), 0, &mut HashMap::new())
    }
}

pub fn pow23(a: u32, b: u32) -> u128 {
    2u128.pow(a) * 3u128.pow(b)
}
