//! Search for a subgroup acting regularly.
//!
//! A regular subgroup holds exactly one element sending 0 to each point, so
//! the search grows a semiregular subgroup `H` one coset at a time: with `u`
//! the least point outside `0^H`, it enumerates the elements `g` of `G` with
//! `0^g = u` through the stabilizer chain (base starting at 0), pruning
//! partial images, and recurses on the closure of `H` and `g`.

use std::collections::HashSet;

use super::{schreier_sims, PermGroup, Permutation};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct Subgroup {
    gens: Vec<Permutation>,
    elements: Vec<Permutation>,
    /// `covered[p]` iff some element sends 0 to `p`.
    covered: Vec<bool>,
}

impl Subgroup {
    fn trivial(n: usize) -> Self {
        let mut covered = vec![false; n];
        covered[0] = true;
        Subgroup { gens: Vec::new(), elements: vec![Permutation::identity(n)], covered }
    }

    fn key(&self) -> Vec<usize> {
        let mut els: Vec<&[usize]> = self.elements.iter().map(|e| e.images()).collect();
        els.sort_unstable();
        els.concat()
    }

    /// `<H, g>` if it stays fixed-point free and no larger than `n`.
    fn extend(&self, g: &Permutation, n: usize) -> Option<Subgroup> {
        let mut gens = self.gens.clone();
        gens.push(g.clone());
        let mut elements = self.elements.clone();
        let mut seen: HashSet<Permutation> = elements.iter().cloned().collect();
        let mut i = 0;
        while i < elements.len() {
            for s in &gens {
                let e = elements[i].then(s);
                if seen.contains(&e) {
                    continue;
                }
                if elements.len() == n || e.has_fixed_point() {
                    return None;
                }
                seen.insert(e.clone());
                elements.push(e);
            }
            i += 1;
        }
        if !n.is_multiple_of(elements.len()) {
            return None;
        }
        let mut covered = vec![false; n];
        for e in &elements {
            covered[e.apply(0)] = true;
        }
        Some(Subgroup { gens, elements, covered })
    }
}

struct Search<'a> {
    chain: &'a PermGroup,
    base: Vec<usize>,
    n: usize,
    nodes: u64,
    budget: u64,
    failed: HashSet<Vec<usize>>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Resource(format!(
                "regular-subgroup search exceeded its budget of {} nodes",
                self.budget
            )));
        }
        Ok(())
    }

    fn grow(&mut self, h: &Subgroup) -> Result<Option<Subgroup>> {
        self.tick()?;
        if h.elements.len() == self.n {
            return Ok(Some(h.clone()));
        }
        let u = h.covered.iter().position(|&c| !c).unwrap();
        let t_u = self.chain.transversal(0, u).expect("group is transitive").clone();
        let mut known = vec![None; self.n];
        known[0] = Some(u);
        self.descend(h, 1, &t_u, &mut known)
    }

    /// `suffix` is `x_i-1 .. x_0` composed so far; the final element is
    /// `x_m .. x_i` followed by `suffix`, and base point `b_i` goes to
    /// `b_i` under `x_i` then `suffix`.
    fn descend(
        &mut self,
        h: &Subgroup,
        level: usize,
        suffix: &Permutation,
        known: &mut Vec<Option<usize>>,
    ) -> Result<Option<Subgroup>> {
        if level == self.base.len() {
            return self.leaf(h, suffix);
        }
        let chain = self.chain;
        let b = self.base[level];
        for &beta in chain.basic_orbits()[level] {
            self.tick()?;
            let x = chain.transversal(level, beta).unwrap();
            let p = x.then(suffix);
            let c = p.apply(b);
            if !admissible(h, known, b, c, self.n) {
                continue;
            }
            known[b] = Some(c);
            let found = self.descend(h, level + 1, &p, known)?;
            known[b] = None;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn leaf(&mut self, h: &Subgroup, g: &Permutation) -> Result<Option<Subgroup>> {
        match g.uniform_cycle_length() {
            Some(l) if l > 1 && self.n.is_multiple_of(l) => {}
            _ => return Ok(None),
        }
        if h.elements.iter().skip(1).any(|e| e.then(g).has_fixed_point()) {
            return Ok(None);
        }
        let Some(next) = h.extend(g, self.n) else { return Ok(None) };
        let key = next.key();
        if self.failed.contains(&key) {
            return Ok(None);
        }
        let found = self.grow(&next)?;
        if found.is_none() {
            self.failed.insert(key);
        }
        Ok(found)
    }
}

/// Can a fixed-point-free extension of `H` send `b` to `c`, given the images
/// already fixed in `known`?
fn admissible(h: &Subgroup, known: &[Option<usize>], b: usize, c: usize, n: usize) -> bool {
    if c == b || known.contains(&Some(c)) {
        return false;
    }
    // e then g has a fixed point at e^-1(b) when e(c) = b.
    if h.elements.iter().skip(1).any(|e| e.apply(c) == b) {
        return false;
    }
    // Any cycle of g closed by this pair must match the others and divide n.
    let mut len = 1;
    let mut cur = c;
    while cur != b {
        match known[cur] {
            Some(next) => {
                cur = next;
                len += 1;
            }
            None => return true,
        }
    }
    if !n.is_multiple_of(len) {
        return false;
    }
    for start in 0..n {
        let mut l = 0;
        let mut x = start;
        loop {
            let next = if x == b { Some(c) } else { known[x] };
            match next {
                Some(y) => {
                    l += 1;
                    x = y;
                    if x == start {
                        if l != len {
                            return false;
                        }
                        break;
                    }
                    if l > n {
                        break;
                    }
                }
                None => break,
            }
        }
    }
    true
}

/// Generators of a regular subgroup of `group`, `None` if there is none.
/// Exceeding `budget` search nodes is a resource error, never `None`.
pub fn has_regular_subgroup(group: &PermGroup, budget: u64) -> Result<Option<Vec<Permutation>>> {
    let n = group.degree();
    if n <= 1 {
        return Ok(Some(Vec::new()));
    }
    if !group.is_transitive() {
        return Err(Error::domain("regular-subgroup search needs a transitive group"));
    }
    let chain = group.rebased(&[0])?;
    let mut search = Search {
        chain: &chain,
        base: chain.base(),
        n,
        nodes: 0,
        budget,
        failed: HashSet::new(),
    };
    let found = search.grow(&Subgroup::trivial(n))?;
    match found {
        Some(h) => {
            if !verify_regular(&h.gens, n)? || !h.gens.iter().all(|g| group.contains(g)) {
                return Err(Error::domain("regular-subgroup witness failed verification"));
            }
            Ok(Some(h.gens))
        }
        None => Ok(None),
    }
}

/// Do `gens` generate a group of order `degree` that is transitive with
/// trivial stabilizer of 0?
pub fn verify_regular(gens: &[Permutation], degree: usize) -> Result<bool> {
    let g = schreier_sims(gens, degree)?;
    if degree == 0 {
        return Ok(true);
    }
    Ok(g.order() == degree as u128 && g.is_transitive() && g.stabilizer(0)?.order() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{automorphism_group, AutomorphismOptions};
    use crate::pxgraph::Graph;

    const BUDGET: u64 = 10_000_000;

    fn aut(g: &Graph) -> PermGroup {
        automorphism_group(g, &AutomorphismOptions::default()).unwrap()
    }

    #[test]
    fn cycle_has_rotations() {
        let gens = has_regular_subgroup(&aut(&Graph::cycle(6)), BUDGET).unwrap().unwrap();
        assert!(verify_regular(&gens, 6).unwrap());
    }

    #[test]
    fn petersen_has_none() {
        assert_eq!(has_regular_subgroup(&aut(&Graph::petersen()), BUDGET).unwrap(), None);
    }

    #[test]
    fn regular_group_is_its_own_witness() {
        // Z2 x Z2 x Z2 acting on itself.
        let gens: Vec<Permutation> = (0..3)
            .map(|bit| Permutation::from_images((0..8).map(|x| x ^ (1 << bit)).collect()).unwrap())
            .collect();
        let g = schreier_sims(&gens, 8).unwrap();
        let found = has_regular_subgroup(&g, BUDGET).unwrap().unwrap();
        assert!(verify_regular(&found, 8).unwrap());
    }

    #[test]
    fn symmetric_group_contains_cyclic() {
        let s5 = schreier_sims(
            &[
                Permutation::parse_with_degree("(0 1)", 5).unwrap(),
                Permutation::parse_with_degree("(0 1 2 3 4)", 5).unwrap(),
            ],
            5,
        )
        .unwrap();
        let found = has_regular_subgroup(&s5, BUDGET).unwrap().unwrap();
        assert!(verify_regular(&found, 5).unwrap());
    }

    #[test]
    fn errors() {
        let intransitive = schreier_sims(&[Permutation::parse_with_degree("(0 1)", 3).unwrap()], 3).unwrap();
        assert!(matches!(has_regular_subgroup(&intransitive, BUDGET), Err(Error::Domain(_))));
        assert!(matches!(has_regular_subgroup(&aut(&Graph::petersen()), 3), Err(Error::Resource(_))));
    }

    #[test]
    fn verify_rejects_non_regular() {
        let s3 = [Permutation::parse_with_degree("(0 1)", 3).unwrap(), Permutation::parse_with_degree("(0 1 2)", 3).unwrap()];
        assert!(!verify_regular(&s3, 3).unwrap());
        assert!(verify_regular(&s3[1..], 3).unwrap());
    }
}
