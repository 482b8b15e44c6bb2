//! Factorization of `t^n + 1` over GF(2) and the arithmetic that predicts it.
//!
//! With `n = 2^a * b`, `b` odd, Frobenius gives `t^n + 1 = (t^b + 1)^(2^a)`.
//! The squarefree part `t^b + 1` is split with Berlekamp's algorithm. For this
//! target the Berlekamp matrix `t^(2i) mod (t^b + 1)` is the permutation
//! `i -> 2i mod b`, so its fixed space is spanned by the indicators of the
//! cyclotomic cosets and no elimination is needed. General squarefree inputs
//! fall back to Gaussian elimination.
//!
//! Every irreducible factor whose roots have order `d` has degree
//! `omega(d)`, the multiplicative order of 2 mod `d`, and there are
//! `phi(d) / omega(d)` of them; [`DegreeProfile`] tabulates those counts.

use rand::rngs::Xoshiro256PlusPlus;
use rand::{RngExt, SeedableRng};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

/// Fixed seed for the splitting step, so factor order never depends on the run.
const SPLIT_SEED: u64 = 0x5eed_f00d;

/// `n = 2^a * b` with `b` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoAdicSplit {
    pub a: u32,
    pub b: usize,
    pub n: usize,
}

impl TwoAdicSplit {
    /// `2^a`, the common multiplicity of every factor of `t^n + 1`.
    pub fn power_of_two(&self) -> usize {
        1 << self.a
    }
}

pub fn two_adic_split(n: usize) -> Result<TwoAdicSplit> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let a = n.trailing_zeros();
    Ok(TwoAdicSplit { a, b: n >> a, n })
}

/// Least `c >= 1` with `2^c = 1 (mod d)`. `omega(1) = 1`.
pub fn multiplicative_order(d: usize) -> Result<usize> {
    if d == 0 || d.is_multiple_of(2) {
        return Err(Error::domain(format!("multiplicative order of 2 mod {d} is undefined: modulus must be odd and positive")));
    }
    if d == 1 {
        return Ok(1);
    }
    let d = d as u64;
    let mut x = 2 % d;
    let mut c = 1;
    while x != 1 {
        x = (x * 2) % d;
        c += 1;
    }
    Ok(c)
}

/// Prime factors of `n` with multiplicity exponents, ascending.
pub fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient. Returns 0 for `d = 0`.
pub fn euler_phi(d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    prime_factors(d)
        .into_iter()
        .fold(d, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Orbits of `x -> 2x mod b` on `0..b`. Each orbit is sorted and the orbits
/// are ordered by their least element.
pub fn cyclotomic_cosets(b: usize) -> Result<Vec<Vec<usize>>> {
    if b == 0 || b.is_multiple_of(2) {
        return Err(Error::domain(format!("cyclotomic cosets need an odd positive modulus, got {b}")));
    }
    let mut seen = vec![false; b];
    let mut cosets = Vec::new();
    for start in 0..b {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            coset.push(x);
            x = 2 * x % b;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(cosets)
}

/// Data for one divisor `d` of the odd part `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub d: usize,
    pub omega: usize,
    pub phi: usize,
    /// Number of distinct irreducible factors of degree `omega` with root order `d`.
    pub count: usize,
    /// `2^a * count`: how many factors of degree `omega` a divisor may use.
    pub capacity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub split: TwoAdicSplit,
    pub entries: Vec<ProfileEntry>,
}

impl DegreeProfile {
    pub fn n(&self) -> usize {
        self.split.n
    }

    pub fn entry(&self, d: usize) -> Option<&ProfileEntry> {
        self.entries.iter().find(|e| e.d == d)
    }
}

pub fn degree_profile(n: usize) -> Result<DegreeProfile> {
    let split = two_adic_split(n)?;
    let entries = divisors(split.b)
        .into_iter()
        .map(|d| {
            let omega = multiplicative_order(d).expect("divisors of an odd number are odd");
            let phi = euler_phi(d);
            debug_assert_eq!(phi % omega, 0);
            let count = phi / omega;
            ProfileEntry { d, omega, phi, count, capacity: count << split.a }
        })
        .collect();
    Ok(DegreeProfile { split, entries })
}

/// `t^e mod m`.
pub fn pow_t_mod(e: usize, m: &Gf2Poly) -> Result<Gf2Poly> {
    let t = Gf2Poly::t().rem(m)?;
    let mut acc = Gf2Poly::one().rem(m)?;
    for bit in (0..usize::BITS - e.leading_zeros()).rev() {
        acc = acc.square().rem(m)?;
        if (e >> bit) & 1 == 1 {
            acc = acc.mulmod(&t, m)?;
        }
    }
    Ok(acc)
}

/// Rabin's test: `p` of degree `m >= 1` is irreducible iff
/// `t^(2^m) = t (mod p)` and `gcd(t^(2^(m/q)) - t, p) = 1` for every prime `q | m`.
pub fn is_irreducible(p: &Gf2Poly) -> Result<bool> {
    let m = p.deg().ok_or_else(|| Error::domain("irreducibility of the zero polynomial"))?;
    if m == 0 {
        return Ok(false);
    }
    let t = Gf2Poly::t().rem(p)?;
    let mut frob = Vec::with_capacity(m + 1);
    frob.push(t.clone());
    for i in 0..m {
        let next = frob[i].square().rem(p)?;
        frob.push(next);
    }
    if frob[m] != t {
        return Ok(false);
    }
    for (q, _) in prime_factors(m) {
        if !frob[m / q].add(&t).gcd(p)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rows `t^(2i) mod f` for `i < deg f`.
fn berlekamp_rows(f: &Gf2Poly, m: usize) -> Result<Vec<Gf2Poly>> {
    let t2 = Gf2Poly::monomial(2).rem(f)?;
    let mut rows = Vec::with_capacity(m);
    let mut cur = Gf2Poly::one().rem(f)?;
    for _ in 0..m {
        rows.push(cur.clone());
        cur = cur.mulmod(&t2, f)?;
    }
    Ok(rows)
}

/// `Some(perm)` when every row `t^(2i) mod f` is a single monomial `t^perm[i]`.
/// Checked row by row so that no row matrix is stored.
fn berlekamp_permutation(f: &Gf2Poly, m: usize) -> Result<Option<Vec<usize>>> {
    let t2 = Gf2Poly::monomial(2).rem(f)?;
    let mut perm = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    let mut cur = Gf2Poly::one().rem(f)?;
    for _ in 0..m {
        if cur.weight() != 1 {
            return Ok(None);
        }
        let j = cur.deg().unwrap();
        if std::mem::replace(&mut seen[j], true) {
            return Ok(None);
        }
        perm.push(j);
        cur = cur.mulmod(&t2, f)?;
    }
    Ok(Some(perm))
}

/// Basis of `{h : h^2 = h (mod f)}`, as polynomials of degree `< deg f`.
fn berlekamp_kernel(f: &Gf2Poly) -> Result<Vec<Gf2Poly>> {
    let m = f.deg().ok_or(Error::DivisionByZero)?;

    // Monomial rows forming a permutation: the fixed space is spanned by cycle indicators.
    if let Some(perm) = berlekamp_permutation(f, m)? {
        let mut visited = vec![false; m];
        let mut basis = Vec::new();
        for start in 0..m {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                cycle.push(i);
                i = perm[i];
            }
            basis.push(Gf2Poly::from_exponents(cycle));
        }
        return Ok(basis);
    }

    let rows = berlekamp_rows(f, m)?;
    // Left null space of (Q - I) by elimination on [Q - I | I].
    let words = m.div_ceil(64);
    let mut left: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut w = r.words().to_vec();
            w.resize(words, 0);
            w[i / 64] ^= 1 << (i % 64);
            w
        })
        .collect();
    let mut right: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut w = vec![0u64; words];
            w[i / 64] = 1 << (i % 64);
            w
        })
        .collect();
    let mut rank = 0;
    for col in 0..m {
        let bit = |row: &Vec<u64>| (row[col / 64] >> (col % 64)) & 1 == 1;
        let Some(pivot) = (rank..m).find(|&r| bit(&left[r])) else {
            continue;
        };
        left.swap(rank, pivot);
        right.swap(rank, pivot);
        for r in rank + 1..m {
            if bit(&left[r]) {
                let (lo, hi) = left.split_at_mut(r);
                hi[0].iter_mut().zip(&lo[rank]).for_each(|(x, y)| *x ^= y);
                let (lo, hi) = right.split_at_mut(r);
                hi[0].iter_mut().zip(&lo[rank]).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    Ok(right.drain(rank..).map(Gf2Poly::from_words).collect())
}

/// Irreducible factors of a squarefree polynomial of positive degree, sorted.
pub fn factor_squarefree(f: &Gf2Poly) -> Result<Vec<Gf2Poly>> {
    match f.deg() {
        None => return Err(Error::domain("cannot factor the zero polynomial")),
        Some(0) => return Ok(Vec::new()),
        Some(_) => {}
    }
    if !f.gcd(&formal_derivative(f))?.is_one() {
        return Err(Error::domain(format!("{f} is not squarefree")));
    }
    let basis = berlekamp_kernel(f)?;
    let target = basis.len();
    // Each kernel element is 0 or 1 modulo every irreducible factor, and a
    // random combination sends each factor to 0 or 1 independently, so every
    // round roughly halves the pieces.
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(SPLIT_SEED);
    let mut done = Vec::new();
    let mut open = Vec::new();
    settle(f.clone(), &mut done, &mut open)?;
    while done.len() + open.len() < target {
        let mut h = Gf2Poly::zero();
        for b in &basis {
            if rng.random::<bool>() {
                h += b;
            }
        }
        for g in std::mem::take(&mut open) {
            let a = g.gcd(&h.rem(&g)?)?;
            let da = a.deg().unwrap_or(0);
            if da > 0 && Some(da) < g.deg() {
                let (q, r) = g.divrem(&a)?;
                debug_assert!(r.is_zero());
                settle(a, &mut done, &mut open)?;
                settle(q, &mut done, &mut open)?;
            } else {
                open.push(g);
            }
        }
    }
    let mut factors = done;
    factors.extend(open);
    factors.sort();
    Ok(factors)
}

/// Pieces up to this degree are tested for irreducibility directly so that
/// later splitting rounds skip them.
const SETTLE_DEGREE: usize = 256;

fn settle(g: Gf2Poly, done: &mut Vec<Gf2Poly>, open: &mut Vec<Gf2Poly>) -> Result<()> {
    let d = g.deg().unwrap_or(0);
    if d == 1 || (d <= SETTLE_DEGREE && is_irreducible(&g)?) {
        done.push(g);
    } else {
        open.push(g);
    }
    Ok(())
}

pub fn formal_derivative(f: &Gf2Poly) -> Gf2Poly {
    Gf2Poly::from_exponents(f.exponents().filter(|e| e % 2 == 1).map(|e| e - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub poly: Gf2Poly,
    pub multiplicity: usize,
}

/// Irreducible factors with multiplicities, sorted by [`Gf2Poly`]'s order
/// (degree, then value).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorMultiset {
    pub factors: Vec<Factor>,
}

impl FactorMultiset {
    pub fn product(&self) -> Gf2Poly {
        self.factors.iter().fold(Gf2Poly::one(), |acc, f| {
            (0..f.multiplicity).fold(acc, |acc, _| acc.mul(&f.poly))
        })
    }

    /// Factor degrees repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.poly.deg().unwrap_or(0), f.multiplicity))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Renders as a product, e.g. `(t+1)(t^2+t+1)^2`.
impl std::fmt::Display for FactorMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for fac in &self.factors {
            write!(f, "({})", fac.poly)?;
            if fac.multiplicity > 1 {
                write!(f, "^{}", fac.multiplicity)?;
            }
        }
        Ok(())
    }
}

impl Serialize for FactorMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.factors.len()))?;
        for f in &self.factors {
            seq.serialize_element(&(f.poly.to_string(), f.multiplicity))?;
        }
        seq.end()
    }
}

/// Complete factorization of `t^n + 1`; every multiplicity is `2^a`.
pub fn factor_xn_plus_1(n: usize) -> Result<FactorMultiset> {
    let split = two_adic_split(n)?;
    let factors = factor_squarefree(&Gf2Poly::t_pow_plus_one(split.b))?
        .into_iter()
        .map(|poly| Factor { poly, multiplicity: split.power_of_two() })
        .collect();
    Ok(FactorMultiset { factors })
}

/// Order of the roots of an irreducible factor `g` of `t^b + 1`: the least
/// divisor `d` of `b` with `g | t^d + 1`.
pub fn root_order(g: &Gf2Poly, b: usize) -> Result<usize> {
    for d in divisors(b) {
        if pow_t_mod(d, g)?.is_one() {
            return Ok(d);
        }
    }
    Err(Error::domain(format!("{g} does not divide t^{b}+1")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    // Independent oracle: count residues coprime to d.
    fn phi_by_count(d: usize) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        (1..=d).filter(|&x| gcd(x, d) == 1).count()
    }

    #[test]
    fn two_adic_split_examples() {
        assert_eq!(two_adic_split(12).unwrap(), TwoAdicSplit { a: 2, b: 3, n: 12 });
        assert_eq!(two_adic_split(7).unwrap(), TwoAdicSplit { a: 0, b: 7, n: 7 });
        assert_eq!(two_adic_split(8).unwrap(), TwoAdicSplit { a: 3, b: 1, n: 8 });
        assert!(two_adic_split(0).is_err());
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(3).unwrap(), 2);
        assert_eq!(multiplicative_order(7).unwrap(), 3);
        assert_eq!(multiplicative_order(1).unwrap(), 1);
        assert!(multiplicative_order(6).is_err());
        assert!(multiplicative_order(0).is_err());
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(7), 6);
        for d in 1..500 {
            assert_eq!(euler_phi(d), phi_by_count(d), "d={d}");
        }
    }

    #[test]
    fn cosets_examples() {
        assert_eq!(cyclotomic_cosets(7).unwrap(), vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(cyclotomic_cosets(1).unwrap(), vec![vec![0]]);
        assert_eq!(cyclotomic_cosets(5).unwrap(), vec![vec![0], vec![1, 2, 3, 4]]);
        assert!(cyclotomic_cosets(4).is_err());
    }

    #[test]
    fn profile_examples() {
        let prof = degree_profile(7).unwrap();
        let got: Vec<_> = prof.entries.iter().map(|e| (e.d, e.omega, e.capacity)).collect();
        assert_eq!(got, vec![(1, 1, 1), (7, 3, 2)]);
        let prof = degree_profile(4).unwrap();
        let got: Vec<_> = prof.entries.iter().map(|e| (e.d, e.omega, e.capacity)).collect();
        assert_eq!(got, vec![(1, 1, 4)]);
        let prof = degree_profile(3).unwrap();
        let got: Vec<_> = prof.entries.iter().map(|e| (e.d, e.omega, e.capacity)).collect();
        assert_eq!(got, vec![(1, 1, 1), (3, 2, 1)]);
    }

    #[test]
    fn profile_capacity_sums_to_n() {
        for n in 1..=1000 {
            let prof = degree_profile(n).unwrap();
            let total: usize = prof.entries.iter().map(|e| e.capacity * e.omega).sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible(&p("t^2+t+1")).unwrap());
        assert!(!is_irreducible(&p("t^2+1")).unwrap());
        assert!(is_irreducible(&p("t^3+t+1")).unwrap());
        assert!(is_irreducible(&p("t")).unwrap());
        assert!(is_irreducible(&p("t+1")).unwrap());
        assert!(!is_irreducible(&Gf2Poly::one()).unwrap());
        assert!(is_irreducible(&Gf2Poly::zero()).is_err());
        // x^8+x^4+x^3+x+1 (AES) is irreducible; x^8+x^4+x^3+x^2+1 is primitive.
        assert!(is_irreducible(&p("t^8+t^4+t^3+t+1")).unwrap());
        assert!(is_irreducible(&p("t^8+t^4+t^3+t^2+1")).unwrap());
        assert!(!is_irreducible(&(p("t^4+t+1") * p("t^4+t^3+1"))).unwrap());
    }

    #[test]
    fn factor_examples() {
        let f3 = factor_xn_plus_1(3).unwrap();
        assert_eq!(f3.to_string(), "(t+1)(t^2+t+1)");
        let f4 = factor_xn_plus_1(4).unwrap();
        assert_eq!(f4.to_string(), "(t+1)^4");
        let f7 = factor_xn_plus_1(7).unwrap();
        assert_eq!(f7.to_string(), "(t+1)(t^3+t+1)(t^3+t^2+1)");
        let f12 = factor_xn_plus_1(12).unwrap();
        assert_eq!(f12.to_string(), "(t+1)^4(t^2+t+1)^4");
        assert_eq!(serde_json::to_string(&f12).unwrap(), r#"[["t+1",4],["t^2+t+1",4]]"#);
    }

    #[test]
    fn general_berlekamp_path() {
        // Not of the form t^b+1, so the elimination branch runs.
        let parts = [p("t+1"), p("t^2+t+1"), p("t^3+t+1"), p("t^4+t+1"), p("t^5+t^2+1")];
        let f: Gf2Poly = parts.iter().product();
        let got = factor_squarefree(&f).unwrap();
        assert_eq!(got, parts.to_vec());
        let f = p("t") * p("t^7+t+1");
        assert_eq!(factor_squarefree(&f).unwrap(), vec![p("t"), p("t^7+t+1")]);
        assert!(factor_squarefree(&p("t^2+1")).is_err());
    }

    #[test]
    fn root_orders() {
        let f = factor_xn_plus_1(15).unwrap();
        let orders: Vec<usize> = f.factors.iter().map(|x| root_order(&x.poly, 15).unwrap()).collect();
        // t+1 -> 1, t^2+t+1 -> 3, three quartics: t^4+t+1 and t^4+t^3+1 -> 15, t^4+t^3+t^2+t+1 -> 5
        let mut pairs: Vec<(String, usize)> =
            f.factors.iter().map(|x| x.poly.to_string()).zip(orders).collect();
        pairs.sort();
        assert_eq!(
            pairs,
            vec![
                ("t+1".into(), 1),
                ("t^2+t+1".into(), 3),
                ("t^4+t+1".into(), 15),
                ("t^4+t^3+1".into(), 15),
                ("t^4+t^3+t^2+t+1".into(), 5),
            ]
        );
    }
}
