//! Full automorphism group of a small simple graph.
//!
//! Colour refinement is canonical (new colours are ranks of sorted
//! signatures), so two partitions reached by corresponding individualizations
//! carry identical colour names and refinement traces. The group is built
//! bottom-up along a base: at each level every candidate image of the base
//! point is either covered by the orbit so far, ruled out with its whole
//! orbit under the deeper stabilizer, or realized by a search that pairs the
//! fixed left path with a backtracking right path and checks every edge at
//! the discrete leaf.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{orbit, PermGroup, Permutation};
use crate::error::{Error, Result};
use crate::pxgraph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomorphismOptions {
    pub max_vertices: usize,
}

pub const DEFAULT_MAX_VERTICES: usize = 64;

impl Default for AutomorphismOptions {
    fn default() -> Self {
        AutomorphismOptions { max_vertices: DEFAULT_MAX_VERTICES }
    }
}

type Colours = Vec<u32>;

fn colour_count(c: &Colours) -> u32 {
    c.iter().max().map_or(0, |&m| m + 1)
}

/// Refines to the coarsest equitable partition below `colours`. Returns a
/// hash of every intermediate signature list.
fn refine(graph: &Graph, colours: &mut Colours) -> u64 {
    let n = colours.len();
    let mut hasher = DefaultHasher::new();
    let mut count = colour_count(colours);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = graph.neighbors(v).iter().map(|&w| colours[w]).collect();
                nb.sort_unstable();
                (colours[v], nb, v)
            })
            .collect();
        sigs.sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut next = vec![0u32; n];
        let mut c = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                c += 1;
            }
            next[sigs[i].2] = c;
            sigs[i].0.hash(&mut hasher);
            sigs[i].1.hash(&mut hasher);
        }
        *colours = next;
        let new_count = if n == 0 { 0 } else { c + 1 };
        if new_count == count {
            return hasher.finish();
        }
        count = new_count;
    }
}

fn individualize(graph: &Graph, colours: &Colours, v: usize) -> (Colours, u64) {
    let mut c = colours.clone();
    let old = c[v];
    c[v] = colour_count(&c);
    let mut trace = refine(graph, &mut c);
    trace ^= (old as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    (c, trace)
}

fn first_nonsingleton_cell(colours: &Colours) -> Option<u32> {
    let mut sizes = vec![0usize; colour_count(colours) as usize];
    for &c in colours {
        sizes[c as usize] += 1;
    }
    sizes.iter().position(|&s| s > 1).map(|c| c as u32)
}

struct LeftPath {
    base: Vec<usize>,
    /// `parts[i]` is the partition after individualizing `base[..i]`.
    parts: Vec<Colours>,
    traces: Vec<u64>,
}

struct Searcher<'g> {
    graph: &'g Graph,
    left: LeftPath,
}

impl Searcher<'_> {
    /// Right path that has individualized images of `base[..depth]` and sits
    /// at `rc`; tries to finish it into an automorphism.
    fn complete(&self, depth: usize, rc: &Colours) -> Option<Permutation> {
        let base = &self.left.base;
        if depth == base.len() {
            return self.leaf(rc);
        }
        let cell = self.left.parts[depth][base[depth]];
        for y in (0..rc.len()).filter(|&y| rc[y] == cell) {
            if let Some(p) = self.branch(depth, rc, y) {
                return Some(p);
            }
        }
        None
    }

    fn branch(&self, depth: usize, rc: &Colours, y: usize) -> Option<Permutation> {
        let (next, trace) = individualize(self.graph, rc, y);
        if trace != self.left.traces[depth + 1] {
            return None;
        }
        self.complete(depth + 1, &next)
    }

    fn leaf(&self, rc: &Colours) -> Option<Permutation> {
        let lc = self.left.parts.last().unwrap();
        let mut by_colour = vec![usize::MAX; rc.len()];
        for (w, &c) in rc.iter().enumerate() {
            by_colour[c as usize] = w;
        }
        let images = lc.iter().map(|&c| by_colour[c as usize]).collect();
        let p = Permutation::from_images(images).ok()?;
        self.graph.is_automorphism(&p).then_some(p)
    }
}

pub fn automorphism_group(graph: &Graph, options: &AutomorphismOptions) -> Result<PermGroup> {
    let n = graph.vertex_count();
    if n > options.max_vertices {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, above the automorphism cap of {}",
            options.max_vertices
        )));
    }
    let mut root = vec![0u32; n];
    let root_trace = refine(graph, &mut root);
    let mut left = LeftPath { base: Vec::new(), parts: vec![root], traces: vec![root_trace] };
    while let Some(cell) = first_nonsingleton_cell(left.parts.last().unwrap()) {
        let cur = left.parts.last().unwrap();
        let b = (0..n).find(|&v| cur[v] == cell).unwrap();
        let (next, trace) = individualize(graph, cur, b);
        left.base.push(b);
        left.parts.push(next);
        left.traces.push(trace);
    }
    let searcher = Searcher { graph, left };
    let base = searcher.left.base.clone();

    // Generators found at level i fix base[..i].
    let mut deeper: Vec<Permutation> = Vec::new();
    for i in (0..base.len()).rev() {
        let part = &searcher.left.parts[i];
        let cell = part[base[i]];
        let candidates: Vec<usize> = (0..n).filter(|&c| part[c] == cell && c != base[i]).collect();
        let below = deeper.clone();
        let mut covered = vec![false; n];
        let mut failed = vec![false; n];
        for &p in &orbit(base[i], &deeper, n) {
            covered[p] = true;
        }
        for c in candidates {
            if covered[c] || failed[c] {
                continue;
            }
            match searcher.branch(i, part, c) {
                Some(g) => {
                    debug_assert!(base[..i].iter().all(|&b| g.apply(b) == b));
                    deeper.push(g);
                    for p in orbit(base[i], &deeper, n) {
                        covered[p] = true;
                    }
                }
                None => {
                    // No automorphism fixing base[..i] sends base[i] into c's
                    // orbit under the stabilizer of base[..=i].
                    for p in orbit(c, &below, n) {
                        failed[p] = true;
                    }
                }
            }
        }
    }
    Ok(PermGroup::from_bsgs(n, &base, &deeper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::schreier_sims;
    use crate::pxgraph::build_px;

    fn aut(g: &Graph) -> PermGroup {
        automorphism_group(g, &AutomorphismOptions::default()).unwrap()
    }

    /// Counts automorphisms by trying every permutation.
    fn count_by_permutations(g: &Graph) -> u128 {
        fn rec(g: &Graph, img: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut u128) {
            let v = img.len();
            if v == g.vertex_count() {
                *count += 1;
                return;
            }
            for w in 0..g.vertex_count() {
                if used[w] || g.degree(v) != g.degree(w) {
                    continue;
                }
                if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(img[u], w)) {
                    continue;
                }
                used[w] = true;
                img.push(w);
                rec(g, img, used, count);
                img.pop();
                used[w] = false;
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.vertex_count()], &mut count);
        count
    }

    #[test]
    fn fixture_orders() {
        assert_eq!(aut(&Graph::cycle(5)).order(), 10);
        assert_eq!(aut(build_px(3, 1).unwrap().graph()).order(), 48);
        assert_eq!(aut(&Graph::edgeless(3)).order(), 6);
        assert_eq!(aut(&Graph::petersen()).order(), 120);
        assert_eq!(aut(&Graph::edgeless(0)).order(), 1);
    }

    #[test]
    fn matches_exhaustive_count() {
        let mut graphs = vec![Graph::cycle(6), Graph::cycle(7), Graph::petersen()];
        graphs.push(Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]).unwrap());
        graphs.push(Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5), (0, 2)]).unwrap());
        for (n, k) in [(3, 1), (4, 1), (4, 2), (5, 1), (3, 2)] {
            graphs.push(build_px(n, k).unwrap().graph().clone());
        }
        for g in &graphs {
            assert_eq!(aut(g).order(), count_by_permutations(g), "{g:?}");
        }
    }

    #[test]
    fn px_orders_follow_wreath_structure() {
        // |Aut PX(n,k)| = 2^n * 2n away from n = 4.
        for (n, k) in [(5, 1), (5, 2), (6, 2), (7, 2), (12, 1), (24, 1)] {
            let g = aut(build_px(n, k).unwrap().graph());
            assert_eq!(g.order(), (1u128 << n) * 2 * n as u128, "PX({n},{k})");
        }
    }

    #[test]
    fn generators_are_automorphisms_and_chain_is_consistent() {
        let px = build_px(6, 2).unwrap();
        let g = aut(px.graph());
        for x in g.generators() {
            assert!(px.graph().is_automorphism(x));
            assert!(g.contains(x));
        }
        let again = schreier_sims(g.generators(), g.degree()).unwrap();
        assert_eq!(again.order(), g.order());
        assert!(g.contains(&px.rotation()));
        assert!(g.contains(&px.mirror()));
        let a = &g.generators()[0];
        let b = g.generators().last().unwrap();
        assert!(g.contains(&a.then(b)));
    }

    #[test]
    fn cap_is_enforced() {
        let opts = AutomorphismOptions { max_vertices: 5 };
        assert!(matches!(automorphism_group(&Graph::cycle(6), &opts), Err(Error::Resource(_))));
    }
}
