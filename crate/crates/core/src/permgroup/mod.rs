//! Permutation groups for the brute-force Cayley oracle.
//!
//! Permutations act on the right: `a.then(b)` applies `a` first. A
//! [`PermGroup`] stores a base `b_0, b_1, ..` with strong generators, basic
//! orbits and transversals, so order and membership are exact.
//!
//! The oracle itself lives in [`automorphism`] (full automorphism group of a
//! graph by individualization and refinement) and [`regular`] (search for a
//! subgroup acting regularly, i.e. Sabidussi's criterion).

pub mod automorphism;
pub mod regular;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pxgraph::build_px;

pub use automorphism::{automorphism_group, AutomorphismOptions};
pub use regular::{has_regular_subgroup, verify_regular};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::domain(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || std::mem::replace(&mut used[x], true) {
                    return Err(Error::domain(format!("bad cycle {cycle:?} on {degree} points")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// Cycles of length at least 2, each led by its least point, ordered by leader.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Length of every cycle when all cycles (fixed points included) have the
    /// same length, otherwise `None`.
    pub fn uniform_cycle_length(&self) -> Option<usize> {
        let mut seen = vec![false; self.degree()];
        let mut common = None;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            match common {
                None => common = Some(len),
                Some(c) if c != len => return None,
                _ => {}
            }
        }
        common
    }

    /// Nonidentity with no fixed points and all cycles of one length
    /// (the shape of every nonidentity element of a regular group).
    pub fn is_semiregular(&self) -> bool {
        matches!(self.uniform_cycle_length(), Some(l) if l > 1)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &x)| i == x)
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().fold(1, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    /// Parses cycle notation on exactly `degree` points.
    pub fn parse_with_degree(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(degree, &refs)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    let mut offset = text.len() - text.trim_start().len();
    while !rest.is_empty() {
        let err = |pos: usize, msg: &str| Error::Parse { position: pos, message: msg.to_string() };
        if !rest.starts_with('(') {
            return Err(err(offset, "expected '('"));
        }
        let close = rest.find(')').ok_or_else(|| err(offset, "unclosed cycle"))?;
        let body = &rest[1..close];
        let cycle = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| err(offset + 1, "expected a point index")))
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        offset += close + 1;
        let trimmed = rest[close + 1..].trim_start();
        offset += rest[close + 1..].len() - trimmed.len();
        rest = trimmed;
    }
    Ok(cycles)
}

/// Cycle notation, e.g. `(0 1 2)(3 4)`; the identity is `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{self}", self.degree())
    }
}

/// Degree is one more than the largest point mentioned.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().max().map_or(0, |&m| m + 1);
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(degree, &refs)
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens,
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverse: vec![None; degree],
        };
        level.recompute();
        level
    }

    fn recompute(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for x in &self.gens {
                let q = x.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().then(x);
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
        self.inverse = self.transversal.iter().map(|u| u.as_ref().map(Permutation::inverse)).collect();
    }
}

/// A permutation group with a complete stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), levels: Vec::new() }
    }

    /// Assembles a group from a base and a generating set already known to be
    /// strong for it.
    pub(crate) fn from_bsgs(degree: usize, base: &[usize], strong: &[Permutation]) -> Self {
        let levels = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let gens = strong
                    .iter()
                    .filter(|g| base[..i].iter().all(|&p| g.apply(p) == p))
                    .cloned()
                    .collect();
                Level::new(b, gens, degree)
            })
            .filter(|l| !l.gens.is_empty())
            .collect();
        PermGroup { degree, generators: strong.to_vec(), levels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> Vec<&[Permutation]> {
        self.levels.iter().map(|l| l.gens.as_slice()).collect()
    }

    pub fn basic_orbits(&self) -> Vec<&[usize]> {
        self.levels.iter().map(|l| l.orbit.as_slice()).collect()
    }

    /// Transversal element at `level` mapping the base point to `point`.
    pub fn transversal(&self, level: usize, point: usize) -> Option<&Permutation> {
        self.levels.get(level)?.transversal[point].as_ref()
    }

    /// Product of basic orbit lengths. Saturates at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
            .unwrap_or(u128::MAX)
    }

    /// Strips `g` through the chain starting at `from`; returns the residue and
    /// the level where stripping stopped (`levels.len()` if it went through).
    fn strip_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        strip(&self.levels, g, from)
    }

    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.strip_from(g, 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, j) = self.sift(g);
        j == self.levels.len() && r.is_identity()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit(point, &self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// The same group with a chain whose base starts with `prefix`.
    pub fn rebased(&self, prefix: &[usize]) -> Result<PermGroup> {
        schreier_sims_with_base(&self.generators, self.degree, prefix)
    }

    /// Point stabilizer, with its own stabilizer chain.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        let g = self.rebased(&[point])?;
        let levels: Vec<Level> = g.levels.into_iter().skip_while(|l| l.base == point).collect();
        let generators = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        Ok(PermGroup { degree: self.degree, generators, levels })
    }

    /// All elements, refusing groups larger than `limit`.
    pub fn elements(&self, limit: u128) -> Result<Vec<Permutation>> {
        if self.order() > limit {
            return Err(Error::Resource(format!("group of order {} exceeds enumeration limit {limit}", self.order())));
        }
        let mut out = vec![Permutation::identity(self.degree)];
        // g = x_m then .. then x_0; build from the deepest level up.
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &p in &level.orbit {
                    next.push(g.then(level.transversal[p].as_ref().unwrap()));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

fn strip(levels: &[Level], g: &Permutation, from: usize) -> (Permutation, usize) {
    let mut g = g.clone();
    for (i, level) in levels.iter().enumerate().skip(from) {
        let beta = g.apply(level.base);
        match &level.inverse[beta] {
            None => return (g, i),
            Some(inv) => g = g.then(inv),
        }
    }
    (g, levels.len())
}

pub(crate) fn orbit(point: usize, gens: &[Permutation], degree: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut out = vec![point];
    let mut i = 0;
    while i < out.len() {
        let p = out[i];
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
            }
        }
        i += 1;
    }
    out
}

pub fn schreier_sims(generators: &[Permutation], degree: usize) -> Result<PermGroup> {
    schreier_sims_with_base(generators, degree, &[])
}

/// Deterministic Schreier-Sims. The base begins with `prefix` and is extended
/// by the least point moved by each generator that still needs one.
pub fn schreier_sims_with_base(
    generators: &[Permutation],
    degree: usize,
    prefix: &[usize],
) -> Result<PermGroup> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::domain(format!("generator of degree {} in a group of degree {degree}", g.degree())));
    }
    let mut base: Vec<usize> = Vec::new();
    for &p in prefix {
        if p >= degree || base.contains(&p) {
            return Err(Error::domain(format!("invalid base point {p}")));
        }
        base.push(p);
    }
    let mut gens: Vec<Permutation> = Vec::new();
    for g in generators {
        if !g.is_identity() && !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    for g in &gens {
        if base.iter().all(|&b| g.apply(b) == b) {
            base.push(g.first_moved().unwrap());
        }
    }
    let mut levels: Vec<Level> = base
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let s = gens.iter().filter(|g| base[..i].iter().all(|&p| g.apply(p) == p)).cloned().collect();
            Level::new(b, s, degree)
        })
        .collect();

    let mut i = levels.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        match nonsifting_schreier_generator(&levels, iu) {
            None => i -= 1,
            Some((y, j)) => {
                if j == levels.len() {
                    let b = y.first_moved().expect("residue is not the identity");
                    levels.push(Level::new(b, Vec::new(), degree));
                }
                for level in &mut levels[iu + 1..=j] {
                    level.gens.push(y.clone());
                    level.recompute();
                }
                i = j as isize;
            }
        }
    }
    // Drop trailing prefix levels that carry no generators.
    while levels.last().is_some_and(|l| l.gens.is_empty()) {
        levels.pop();
    }
    let group = PermGroup { degree, generators: gens, levels };
    if group.order() == u128::MAX {
        return Err(Error::Resource("group order does not fit in 128 bits".into()));
    }
    Ok(group)
}

fn nonsifting_schreier_generator(levels: &[Level], i: usize) -> Option<(Permutation, usize)> {
    let level = &levels[i];
    for &beta in &level.orbit {
        let u = level.transversal[beta].as_ref().unwrap();
        for x in &level.gens {
            let img = x.apply(beta);
            let h = u.then(x).then(level.inverse[img].as_ref().unwrap());
            if h.is_identity() {
                continue;
            }
            let (y, j) = strip(levels, &h, i + 1);
            if j < levels.len() || !y.is_identity() {
                return Some((y, j));
            }
        }
    }
    None
}

/// Limits for the brute-force Cayley check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest vertex count the oracle will attempt.
    pub cap: usize,
    /// Search-node budget for the regular-subgroup search.
    pub budget: u64,
}

pub const DEFAULT_ORACLE_CAP: usize = 48;
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_ORACLE_CAP, budget: DEFAULT_SEARCH_BUDGET }
    }
}

/// Sabidussi's criterion on the explicit graph: `PX(n, k)` is Cayley iff its
/// automorphism group has a regular subgroup.
pub fn is_cayley_bruteforce(n: usize, k: usize, config: &OracleConfig) -> Result<bool> {
    crate::cayley::check_range(n, k)?;
    let vertices = n.checked_shl(k as u32).filter(|&v| v >> k == n);
    match vertices {
        Some(v) if v <= config.cap => {}
        _ => {
            return Err(Error::Resource(format!(
                "PX({n},{k}) has more than the oracle cap of {} vertices",
                config.cap
            )))
        }
    }
    let px = build_px(n, k)?;
    let aut = automorphism_group(px.graph(), &AutomorphismOptions { max_vertices: config.cap })?;
    Ok(has_regular_subgroup(&aut, config.budget)?.is_some())
}
