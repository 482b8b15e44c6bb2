//! Deciding whether `PX(n, k)` is a Cayley graph.
//!
//! `PX(n, k)` is Cayley exactly when `t^n + 1` has a divisor of degree `n - k`
//! over GF(2). Divisor degrees are the bounded sums of irreducible-factor
//! degrees, so the question reduces to a bounded subset-sum over the
//! [`DegreeProfile`]: each divisor `d` of the odd part of `n` offers up to
//! `capacity(d)` items of weight `omega(d)`.
//!
//! The degree set is closed under `D -> n - D` (take the cofactor), which is
//! why the polynomial route (target `n - k`) and the arithmetic route (target
//! `k`) always agree.

mod proof;

use std::collections::BTreeSet;

use serde::Serialize;

pub use proof::{
    construct_s, enumerate_instances, palindromes, polys_up_to_degree, verify_proof_identities,
    ProofInstance,
};

use crate::cyclofactor::{degree_profile, factor_xn_plus_1, root_order, DegreeProfile, FactorMultiset};
use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;
use crate::permgroup::{is_cayley_bruteforce, OracleConfig};

/// Bounded-count subset-sum table over a degree profile.
///
/// `levels[i][s]` is true when `s` is a sum using only the first `i + 1`
/// profile entries. Keeping every level lets [`DegreeTable::decompose`]
/// walk back from the last entry.
#[derive(Debug, Clone)]
pub struct DegreeTable {
    profile: DegreeProfile,
    levels: Vec<Vec<bool>>,
}

impl DegreeTable {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self::from_profile(degree_profile(n)?))
    }

    pub fn from_profile(profile: DegreeProfile) -> Self {
        let n = profile.n();
        let mut levels: Vec<Vec<bool>> = Vec::with_capacity(profile.entries.len());
        let mut prev = vec![false; n + 1];
        prev[0] = true;
        for e in &profile.entries {
            // used[s]: fewest copies of this entry needed to reach s, if reachable.
            let mut used: Vec<Option<usize>> = vec![None; n + 1];
            for s in 0..=n {
                if prev[s] {
                    used[s] = Some(0);
                } else if s >= e.omega {
                    if let Some(j) = used[s - e.omega] {
                        if j < e.capacity {
                            used[s] = Some(j + 1);
                        }
                    }
                }
            }
            let level: Vec<bool> = used.iter().map(Option::is_some).collect();
            prev = level.clone();
            levels.push(level);
        }
        DegreeTable { profile, levels }
    }

    pub fn profile(&self) -> &DegreeProfile {
        &self.profile
    }

    pub fn contains(&self, degree: usize) -> bool {
        self.levels.last().is_some_and(|l| l.get(degree).copied().unwrap_or(false))
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        (0..=self.profile.n()).filter(|&s| self.contains(s)).collect()
    }

    /// Multiplicities `alpha` (one per profile entry) with
    /// `sum alpha[i] * omega[i] = target`, choosing the largest `alpha` for the
    /// largest divisor first.
    pub fn decompose(&self, target: usize) -> Option<Vec<usize>> {
        if !self.contains(target) {
            return None;
        }
        let entries = &self.profile.entries;
        let mut alpha = vec![0; entries.len()];
        let mut rest = target;
        for i in (0..entries.len()).rev() {
            let e = &entries[i];
            let max_j = e.capacity.min(rest / e.omega);
            let j = (0..=max_j).rev().find(|&j| {
                let r = rest - j * e.omega;
                if i == 0 { r == 0 } else { self.levels[i - 1][r] }
            })?;
            alpha[i] = j;
            rest -= j * e.omega;
        }
        debug_assert_eq!(rest, 0);
        Some(alpha)
    }
}

/// Degrees of the monic divisors of `t^n + 1`.
pub fn divisor_degree_set(n: usize) -> Result<BTreeSet<usize>> {
    Ok(DegreeTable::new(n)?.degrees())
}

pub(crate) fn check_range(n: usize, k: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("n must be at least 3, got n={n}")));
    }
    if k < 1 || k > n - 1 {
        return Err(Error::domain(format!("k must satisfy 1 <= k <= n-1 = {}, got k={k}", n - 1)));
    }
    Ok(())
}

/// `alpha_d` for each divisor `d` of the odd part of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaDecomposition {
    pub profile: DegreeProfile,
    pub alpha: Vec<usize>,
}

impl AlphaDecomposition {
    /// `(d, alpha_d)` pairs, ascending in `d`.
    pub fn coefficients(&self) -> Vec<(usize, usize)> {
        self.profile.entries.iter().zip(&self.alpha).map(|(e, &a)| (e.d, a)).collect()
    }

    pub fn alpha_for(&self, d: usize) -> Option<usize> {
        self.profile.entries.iter().position(|e| e.d == d).map(|i| self.alpha[i])
    }

    /// `sum alpha_d * omega(d)`.
    pub fn total(&self) -> usize {
        self.profile.entries.iter().zip(&self.alpha).map(|(e, a)| e.omega * a).sum()
    }

    pub fn is_valid(&self) -> bool {
        self.alpha.len() == self.profile.entries.len()
            && self.profile.entries.iter().zip(&self.alpha).all(|(e, &a)| a <= e.capacity)
    }
}

/// Everything needed to answer questions about one `n`.
#[derive(Debug, Clone)]
pub struct CayleyAnalysis {
    table: DegreeTable,
    factors: FactorMultiset,
    /// Root order of each entry of `factors`.
    orders: Vec<usize>,
}

impl CayleyAnalysis {
    pub fn new(n: usize) -> Result<Self> {
        let table = DegreeTable::new(n)?;
        let factors = factor_xn_plus_1(n)?;
        let b = table.profile().split.b;
        let orders = factors
            .factors
            .iter()
            .map(|f| root_order(&f.poly, b))
            .collect::<Result<_>>()?;
        Ok(CayleyAnalysis { table, factors, orders })
    }

    pub fn n(&self) -> usize {
        self.table.profile().n()
    }

    pub fn table(&self) -> &DegreeTable {
        &self.table
    }

    pub fn factors(&self) -> &FactorMultiset {
        &self.factors
    }

    pub fn is_cayley(&self, k: usize) -> Result<bool> {
        check_range(self.n(), k)?;
        Ok(self.table.contains(self.n() - k))
    }

    pub fn alpha_decomposition(&self, k: usize) -> Result<Option<AlphaDecomposition>> {
        check_range(self.n(), k)?;
        Ok(self.table.decompose(k).map(|alpha| AlphaDecomposition {
            profile: self.table.profile().clone(),
            alpha,
        }))
    }

    /// A divisor of `t^n + 1` of the given degree, built from the factor
    /// multiset; `None` when no such divisor exists.
    pub fn divisor_of_degree(&self, degree: usize) -> Result<Option<Gf2Poly>> {
        let Some(alpha) = self.table.decompose(degree) else {
            return Ok(None);
        };
        let mut s = Gf2Poly::one();
        for (entry, &want) in self.table.profile().entries.iter().zip(&alpha) {
            let mut left = want;
            for (f, _) in self.factors.factors.iter().zip(&self.orders).filter(|(_, &o)| o == entry.d) {
                let take = left.min(f.multiplicity);
                for _ in 0..take {
                    s = s.mul(&f.poly);
                }
                left -= take;
            }
            if left != 0 {
                return Err(Error::domain(format!(
                    "factor multiset of t^{}+1 has too few factors of root order {}",
                    self.n(),
                    entry.d
                )));
            }
        }
        let n = self.n();
        if s.deg() != Some(degree) || !Gf2Poly::t_pow_plus_one(n).is_divisible_by(&s) {
            return Err(Error::domain(format!("witness {s} failed verification for t^{n}+1")));
        }
        Ok(Some(s))
    }

    pub fn witness_divisor(&self, k: usize) -> Result<Gf2Poly> {
        check_range(self.n(), k)?;
        self.divisor_of_degree(self.n() - k)?
            .ok_or(Error::NotCayley { n: self.n(), k })
    }
}

pub fn is_cayley(n: usize, k: usize) -> Result<bool> {
    check_range(n, k)?;
    Ok(DegreeTable::new(n)?.contains(n - k))
}

pub fn alpha_decomposition(n: usize, k: usize) -> Result<Option<AlphaDecomposition>> {
    check_range(n, k)?;
    let table = DegreeTable::new(n)?;
    Ok(table.decompose(k).map(|alpha| AlphaDecomposition { profile: table.profile().clone(), alpha }))
}

pub fn witness_divisor(n: usize, k: usize) -> Result<Gf2Poly> {
    check_range(n, k)?;
    CayleyAnalysis::new(n)?.witness_divisor(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Polynomial,
    Arithmetic,
    Bruteforce,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Polynomial, Method::Arithmetic, Method::Bruteforce];

    pub fn name(self) -> &'static str {
        match self {
            Method::Polynomial => "polynomial",
            Method::Arithmetic => "arithmetic",
            Method::Bruteforce => "bruteforce",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CayleyVerdict {
    pub n: usize,
    pub k: usize,
    pub cayley: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Gf2Poly>,
    pub method: Method,
}

impl CayleyVerdict {
    /// Witness present iff Cayley, and then of degree `n - k` dividing `t^n + 1`.
    pub fn is_consistent(&self) -> bool {
        match (&self.witness, self.cayley) {
            (None, false) => true,
            (Some(w), true) => {
                w.deg() == Some(self.n - self.k)
                    && Gf2Poly::t_pow_plus_one(self.n).is_divisible_by(w)
            }
            _ => false,
        }
    }
}

/// Runs one decision method. The brute-force method is subject to
/// `oracle.cap` vertices and `oracle.budget` search nodes.
pub fn decide(n: usize, k: usize, method: Method, oracle: &OracleConfig) -> Result<CayleyVerdict> {
    check_range(n, k)?;
    let analysis = CayleyAnalysis::new(n)?;
    decide_with(&analysis, k, method, oracle)
}

pub fn decide_with(
    analysis: &CayleyAnalysis,
    k: usize,
    method: Method,
    oracle: &OracleConfig,
) -> Result<CayleyVerdict> {
    let n = analysis.n();
    check_range(n, k)?;
    let cayley = match method {
        Method::Polynomial => {
            let witness = analysis.divisor_of_degree(n - k)?;
            return Ok(CayleyVerdict { n, k, cayley: witness.is_some(), witness, method });
        }
        Method::Arithmetic => analysis.alpha_decomposition(k)?.is_some(),
        Method::Bruteforce => is_cayley_bruteforce(n, k, oracle)?,
    };
    let witness = if cayley {
        Some(analysis.divisor_of_degree(n - k)?.ok_or_else(|| Error::Disagreement {
            n,
            k,
            detail: format!("{method} method says Cayley but t^{n}+1 has no divisor of degree {}", n - k),
        })?)
    } else {
        None
    };
    Ok(CayleyVerdict { n, k, cayley, witness, method })
}
