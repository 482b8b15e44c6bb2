//! The `(ii) => (i)` construction: from palindromic `u, v` of degree `n - k`
//! and `f1, g1, f2, g2` with
//!
//! ```text
//! t^n + 1 = f1^2 u + t g1^2 v = f2^2 v + t g2^2 u
//! ```
//!
//! build `s = u_e v_e + t u_o v_o` (where `u = u_e^2 + t u_o^2`), a divisor of
//! `t^n + 1` of degree `n - k`.

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

/// A tuple satisfying the two-sided identity above. Construction checks the
/// identity, so an instance in hand is always consistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofInstance {
    n: usize,
    k: usize,
    u: Gf2Poly,
    v: Gf2Poly,
    f1: Gf2Poly,
    g1: Gf2Poly,
    f2: Gf2Poly,
    g2: Gf2Poly,
}

impl ProofInstance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        k: usize,
        u: Gf2Poly,
        v: Gf2Poly,
        f1: Gf2Poly,
        g1: Gf2Poly,
        f2: Gf2Poly,
        g2: Gf2Poly,
    ) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::InvalidInstance(format!("need n >= 1 and 0 <= k <= n, got n={n}, k={k}")));
        }
        let want = Some(n - k);
        for (name, p) in [("u", &u), ("v", &v)] {
            if p.deg() != want || !p.is_palindromic() {
                return Err(Error::InvalidInstance(format!(
                    "{name} = {p} must be palindromic of degree {}",
                    n - k
                )));
            }
        }
        let target = Gf2Poly::t_pow_plus_one(n);
        let t = Gf2Poly::t();
        let lhs1 = f1.square().mul(&u).add(&t.mul(&g1.square()).mul(&v));
        if lhs1 != target {
            return Err(Error::InvalidInstance(format!("f1^2 u + t g1^2 v = {lhs1}, expected {target}")));
        }
        let lhs2 = f2.square().mul(&v).add(&t.mul(&g2.square()).mul(&u));
        if lhs2 != target {
            return Err(Error::InvalidInstance(format!("f2^2 v + t g2^2 u = {lhs2}, expected {target}")));
        }
        Ok(ProofInstance { n, k, u, v, f1, g1, f2, g2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn u(&self) -> &Gf2Poly {
        &self.u
    }

    pub fn v(&self) -> &Gf2Poly {
        &self.v
    }

    pub fn f1(&self) -> &Gf2Poly {
        &self.f1
    }

    pub fn g1(&self) -> &Gf2Poly {
        &self.g1
    }

    pub fn f2(&self) -> &Gf2Poly {
        &self.f2
    }

    pub fn g2(&self) -> &Gf2Poly {
        &self.g2
    }

    /// `g1 = 0` or `g2 = 0`.
    pub fn is_degenerate(&self) -> bool {
        self.g1.is_zero() || self.g2.is_zero()
    }
}

fn candidate(inst: &ProofInstance) -> (Gf2Poly, [Gf2Poly; 4]) {
    let (ue, uo) = inst.u.even_odd_split();
    let (ve, vo) = inst.v.even_odd_split();
    let s = ue.mul(&ve).add(&uo.mul(&vo).shl(1));
    (s, [ue, uo, ve, vo])
}

/// `s = u_e v_e + t u_o v_o`, checked to have degree `n - k` and to divide `t^n + 1`.
pub fn construct_s(inst: &ProofInstance) -> Result<Gf2Poly> {
    if !inst.n.is_multiple_of(2) {
        return Err(Error::domain(format!("the construction needs even n, got n={}", inst.n)));
    }
    let (s, _) = candidate(inst);
    if s.deg() != Some(inst.n - inst.k) {
        return Err(Error::InvalidInstance(format!(
            "s = {s} has degree {}, expected {}",
            s.degree(),
            inst.n - inst.k
        )));
    }
    if !Gf2Poly::t_pow_plus_one(inst.n).is_divisible_by(&s) {
        return Err(Error::InvalidInstance(format!("s = {s} does not divide t^{}+1", inst.n)));
    }
    Ok(s)
}

/// Checks, with `m = n/2`:
///
/// ```text
/// f1 u_e + t g1 v_o = t^m + 1      f2 v_e + t g2 u_o = t^m + 1
/// f1 u_o = g1 v_e                  f2 v_o = g2 u_e
/// f1 s = (t^m + 1) v_e             g1 s = (t^m + 1) u_o
/// f2 s = (t^m + 1) u_e             g2 s = (t^m + 1) v_o
/// ```
pub fn verify_proof_identities(inst: &ProofInstance, s: &Gf2Poly) -> bool {
    if !inst.n.is_multiple_of(2) {
        return false;
    }
    let (_, [ue, uo, ve, vo]) = candidate(inst);
    let tm1 = Gf2Poly::t_pow_plus_one(inst.n / 2);
    let ProofInstance { f1, g1, f2, g2, .. } = inst;
    f1.mul(&ue).add(&g1.mul(&vo).shl(1)) == tm1
        && f2.mul(&ve).add(&g2.mul(&uo).shl(1)) == tm1
        && f1.mul(&uo) == g1.mul(&ve)
        && f2.mul(&vo) == g2.mul(&ue)
        && f1.mul(s) == tm1.mul(&ve)
        && g1.mul(s) == tm1.mul(&uo)
        && f2.mul(s) == tm1.mul(&ue)
        && g2.mul(s) == tm1.mul(&vo)
}

/// All palindromic polynomials of exact degree `deg`.
pub fn palindromes(deg: usize) -> Vec<Gf2Poly> {
    if deg == 0 {
        return vec![Gf2Poly::one()];
    }
    let free = deg / 2;
    (0u64..1 << free)
        .map(|mask| {
            let mut exps = vec![0, deg];
            for i in 1..=free {
                if (mask >> (i - 1)) & 1 == 1 {
                    exps.push(i);
                    if deg - i != i {
                        exps.push(deg - i);
                    }
                }
            }
            Gf2Poly::from_exponents(exps)
        })
        .collect()
}

/// Every polynomial of degree `<= max_deg`, zero included; `None` yields only zero.
pub fn polys_up_to_degree(max_deg: Option<usize>) -> Vec<Gf2Poly> {
    match max_deg {
        None => vec![Gf2Poly::zero()],
        Some(d) => (0u64..1 << (d + 1)).map(Gf2Poly::from_u64).collect(),
    }
}

/// Exhaustive list of instances at `(n, k)` with `deg f_i <= f_max` and
/// `deg g_i <= g_max` (`None` forcing zero).
pub fn enumerate_instances(
    n: usize,
    k: usize,
    f_max: Option<usize>,
    g_max: Option<usize>,
) -> Vec<ProofInstance> {
    if k > n {
        return Vec::new();
    }
    let target = Gf2Poly::t_pow_plus_one(n);
    let fs: Vec<(Gf2Poly, Gf2Poly)> =
        polys_up_to_degree(f_max).into_iter().map(|f| (f.square(), f)).collect();
    let gs: Vec<(Gf2Poly, Gf2Poly)> = polys_up_to_degree(g_max)
        .into_iter()
        .map(|g| (g.square().shl(1), g))
        .collect();
    // Pairs (f, g) with f^2 a + t g^2 b = t^n + 1.
    let solve = |a: &Gf2Poly, b: &Gf2Poly| -> Vec<(Gf2Poly, Gf2Poly)> {
        let mut out = Vec::new();
        for (f_sq, f) in &fs {
            let fa = f_sq.mul(a);
            for (tg_sq, g) in &gs {
                if fa.add(&tg_sq.mul(b)) == target {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
        out
    };
    let pals = palindromes(n - k);
    let mut out = Vec::new();
    for u in &pals {
        for v in &pals {
            let left = solve(u, v);
            if left.is_empty() {
                continue;
            }
            let right = solve(v, u);
            for (f1, g1) in &left {
                for (f2, g2) in &right {
                    let inst = ProofInstance::new(
                        n,
                        k,
                        u.clone(),
                        v.clone(),
                        f1.clone(),
                        g1.clone(),
                        f2.clone(),
                        g2.clone(),
                    )
                    .expect("enumerated tuple satisfies the identity");
                    out.push(inst);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    fn trivial(n: usize) -> ProofInstance {
        let u = Gf2Poly::t_pow_plus_one(n);
        ProofInstance::new(n, 0, u.clone(), u, Gf2Poly::one(), Gf2Poly::zero(), Gf2Poly::one(), Gf2Poly::zero())
            .unwrap()
    }

    #[test]
    fn trivial_instance() {
        for n in [2, 4, 6, 10, 64] {
            let inst = trivial(n);
            let s = construct_s(&inst).unwrap();
            assert_eq!(s, Gf2Poly::t_pow_plus_one(n));
            assert!(verify_proof_identities(&inst, &s));
        }
    }

    #[test]
    fn degenerate_n4_instance() {
        let inst = ProofInstance::new(4, 2, p("t^2+1"), p("t^2+1"), p("t+1"), Gf2Poly::zero(), p("t+1"), Gf2Poly::zero())
            .unwrap();
        assert!(inst.is_degenerate());
        let s = construct_s(&inst).unwrap();
        assert_eq!(s, p("t^2+1"));
        assert!(verify_proof_identities(&inst, &s));
        assert!(!verify_proof_identities(&inst, &s.add(&Gf2Poly::one())));
    }

    #[test]
    fn perturbed_s_fails() {
        let inst = trivial(8);
        let s = construct_s(&inst).unwrap();
        assert!(!verify_proof_identities(&inst, &s.add(&Gf2Poly::one())));
    }

    #[test]
    fn n6_k2_nondegenerate() {
        let all = enumerate_instances(6, 2, Some(1), Some(1));
        let inst = all
            .iter()
            .find(|i| !i.g1().is_zero() && !i.g2().is_zero())
            .expect("a nondegenerate instance exists at n=6, k=2");
        let s = construct_s(inst).unwrap();
        assert_eq!(s.deg(), Some(4));
        assert!(Gf2Poly::t_pow_plus_one(6).is_divisible_by(&s));
        assert!(verify_proof_identities(inst, &s));
    }

    #[test]
    fn rejects_broken_instances() {
        let u = Gf2Poly::t_pow_plus_one(4);
        // Identity fails.
        let bad = ProofInstance::new(4, 0, u.clone(), u.clone(), p("t"), Gf2Poly::zero(), Gf2Poly::one(), Gf2Poly::zero());
        assert!(matches!(bad, Err(Error::InvalidInstance(_))));
        // Not palindromic.
        let bad = ProofInstance::new(4, 2, p("t^2+t"), p("t^2+1"), p("t+1"), Gf2Poly::zero(), p("t+1"), Gf2Poly::zero());
        assert!(matches!(bad, Err(Error::InvalidInstance(_))));
        // Wrong degree.
        let bad = ProofInstance::new(4, 1, p("t^2+1"), p("t^2+1"), p("t+1"), Gf2Poly::zero(), p("t+1"), Gf2Poly::zero());
        assert!(matches!(bad, Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn odd_n_is_a_domain_error() {
        let u = Gf2Poly::t_pow_plus_one(3);
        let inst = ProofInstance::new(3, 0, u.clone(), u, Gf2Poly::one(), Gf2Poly::zero(), Gf2Poly::one(), Gf2Poly::zero())
            .unwrap();
        assert!(matches!(construct_s(&inst), Err(Error::Domain(_))));
    }

    #[test]
    fn palindrome_counts() {
        assert_eq!(palindromes(0), vec![Gf2Poly::one()]);
        assert_eq!(palindromes(1), vec![p("t+1")]);
        assert_eq!(palindromes(2), vec![p("t^2+1"), p("t^2+t+1")]);
        for d in 0..12 {
            let all = palindromes(d);
            assert_eq!(all.len(), 1 << (d / 2));
            assert!(all.iter().all(|q| q.is_palindromic() && q.deg() == Some(d)));
        }
    }
}
