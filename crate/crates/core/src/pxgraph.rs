//! Explicit Praeger-Xu graphs.
//!
//! `PX(n, k)` has vertex set `Z_n x {0,1}^k`; `(i, w1 w2 .. wk)` is joined to
//! `(i+1, w2 .. wk b)` for both bits `b`. Vertices are numbered
//! `i * 2^k + w`, reading the word with `w1` as the most significant bit.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

/// A finite simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::domain(format!("edge ({u},{v}) out of range for {vertices} vertices")));
            }
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("repeated edge at vertex {v}")));
            }
        }
        Ok(Graph { adj })
    }

    pub fn edgeless(vertices: usize) -> Self {
        Graph { adj: vec![Vec::new(); vertices] }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.vertex_count()
            && self.edges().all(|(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PxVertex {
    pub layer: usize,
    /// Bit word, first letter most significant.
    pub word: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PxGraph {
    n: usize,
    k: usize,
    graph: Graph,
}

/// Largest `k` accepted, so that `n * 2^k` stays addressable.
pub const MAX_PX_K: usize = 24;

pub fn build_px(n: usize, k: usize) -> Result<PxGraph> {
    crate::cayley::check_range(n, k)?;
    if k > MAX_PX_K {
        return Err(Error::Resource(format!("PX({n},{k}) has more than 2^{MAX_PX_K} vertices per layer")));
    }
    let words = 1usize << k;
    let mask = words - 1;
    let count = n * words;
    let mut adj = vec![Vec::with_capacity(4); count];
    for i in 0..n {
        let next = (i + 1) % n;
        for w in 0..words {
            let v = i * words + w;
            for b in 0..2 {
                let u = next * words + (((w << 1) & mask) | b);
                adj[v].push(u);
                adj[u].push(v);
            }
        }
    }
    for (v, list) in adj.iter_mut().enumerate() {
        list.sort_unstable();
        assert!(
            list.len() == 4 && list.windows(2).all(|w| w[0] != w[1]) && !list.contains(&v),
            "PX({n},{k}) is not simple at vertex {v}"
        );
    }
    Ok(PxGraph { n, k, graph: Graph { adj } })
}

impl PxGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn vertex_index(&self, v: PxVertex) -> Result<usize> {
        if v.layer >= self.n || v.word >> self.k != 0 {
            return Err(Error::domain(format!("vertex ({}, {:#b}) not in PX({},{})", v.layer, v.word, self.n, self.k)));
        }
        Ok((v.layer << self.k) | v.word as usize)
    }

    pub fn index_vertex(&self, idx: usize) -> Result<PxVertex> {
        if idx >= self.vertex_count() {
            return Err(Error::domain(format!("index {idx} out of range for PX({},{})", self.n, self.k)));
        }
        Ok(PxVertex { layer: idx >> self.k, word: (idx & ((1 << self.k) - 1)) as u64 })
    }

    /// The word of `v` as text, first letter first.
    pub fn word_string(&self, v: PxVertex) -> String {
        (0..self.k).rev().map(|i| if (v.word >> i) & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// `(i, w) -> (i + 1, w)`.
    pub fn rotation(&self) -> Permutation {
        let words = 1 << self.k;
        let images = (0..self.vertex_count())
            .map(|v| (v + words) % self.vertex_count())
            .collect();
        Permutation::from_images(images).unwrap()
    }

    /// `(i, w1 .. wk) -> (-i - (k - 1), wk .. w1)`.
    pub fn mirror(&self) -> Permutation {
        let (n, k) = (self.n as i64, self.k as i64);
        let images = (0..self.vertex_count())
            .map(|v| {
                let x = self.index_vertex(v).unwrap();
                let layer = (-(x.layer as i64) - (k - 1)).rem_euclid(n) as usize;
                let word = x.word.reverse_bits() >> (64 - self.k);
                self.vertex_index(PxVertex { layer, word }).unwrap()
            })
            .collect();
        Permutation::from_images(images).unwrap()
    }

    /// Header `n k |V| |E|`, then one `u v` line per edge with `u < v`.
    pub fn edge_list(&self) -> String {
        let mut out = format!("{} {} {} {}\n", self.n, self.k, self.vertex_count(), self.graph.edge_count());
        for (u, v) in self.graph.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron() {
        let px = build_px(3, 1).unwrap();
        let g = px.graph();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 12);
        // K_{2,2,2}: each vertex misses exactly its layer-mate.
        for v in 0..6 {
            for w in 0..6 {
                assert_eq!(g.has_edge(v, w), v / 2 != w / 2, "{v} {w}");
            }
        }
    }

    #[test]
    fn k44() {
        let px = build_px(4, 1).unwrap();
        let g = px.graph();
        assert_eq!(g.vertex_count(), 8);
        for v in 0..8 {
            for w in 0..8 {
                let (lv, lw) = (v / 2, w / 2);
                assert_eq!(g.has_edge(v, w), lv % 2 != lw % 2, "{v} {w}");
            }
        }
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(build_px(5, 2).unwrap().vertex_count(), 20);
        assert_eq!(build_px(6, 3).unwrap().vertex_count(), 48);
    }

    #[test]
    fn range_errors() {
        assert!(build_px(2, 1).is_err());
        assert!(build_px(5, 0).is_err());
        assert!(build_px(5, 5).is_err());
    }

    #[test]
    fn indexing() {
        let px = build_px(5, 2).unwrap();
        assert_eq!(px.vertex_index(PxVertex { layer: 0, word: 0b00 }).unwrap(), 0);
        assert_eq!(px.vertex_index(PxVertex { layer: 1, word: 0b10 }).unwrap(), 6);
        assert_eq!(px.word_string(px.index_vertex(6).unwrap()), "10");
        for idx in 0..px.vertex_count() {
            assert_eq!(px.vertex_index(px.index_vertex(idx).unwrap()).unwrap(), idx);
        }
        assert!(px.index_vertex(20).is_err());
        assert!(px.vertex_index(PxVertex { layer: 0, word: 4 }).is_err());
    }

    #[test]
    fn edge_rule() {
        // (0, 01) -> (1, 10) and (1, 11) in PX(5,2).
        let px = build_px(5, 2).unwrap();
        let v = px.vertex_index(PxVertex { layer: 0, word: 0b01 }).unwrap();
        let mut expect = vec![
            px.vertex_index(PxVertex { layer: 1, word: 0b10 }).unwrap(),
            px.vertex_index(PxVertex { layer: 1, word: 0b11 }).unwrap(),
            // predecessors (4, x0) shift to 01
            px.vertex_index(PxVertex { layer: 4, word: 0b00 }).unwrap(),
            px.vertex_index(PxVertex { layer: 4, word: 0b10 }).unwrap(),
        ];
        expect.sort();
        assert_eq!(px.graph().neighbors(v), expect.as_slice());
    }

    #[test]
    fn rotation_and_mirror_are_automorphisms() {
        for n in 3..=9 {
            for k in 1..n.min(6) {
                let px = build_px(n, k).unwrap();
                assert!(px.graph().is_automorphism(&px.rotation()), "rotation PX({n},{k})");
                assert!(px.graph().is_automorphism(&px.mirror()), "mirror PX({n},{k})");
            }
        }
    }

    #[test]
    fn edge_list_format() {
        let px = build_px(3, 1).unwrap();
        let text = px.edge_list();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("3 1 6 12"));
        assert_eq!(lines.next(), Some("0 2"));
        assert_eq!(text.lines().count(), 13);
    }

    #[test]
    fn generic_graphs() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.is_connected());
        let pet = Graph::petersen();
        assert_eq!(pet.edge_count(), 15);
        assert!((0..10).all(|v| pet.degree(v) == 3));
        assert!(!Graph::edgeless(3).is_connected());
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }
}
