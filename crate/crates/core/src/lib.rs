//! Cayley recognition for Praeger-Xu graphs `PX(n, k)`.
//!
//! `PX(n, k)` is a Cayley graph exactly when `t^n + 1` has a divisor of degree
//! `n - k` over GF(2). The crate decides this from the cyclotomic degree
//! profile of `t^n + 1`, builds explicit witness divisors, runs the
//! constructive half of the argument on concrete polynomials, and checks all
//! of it against a brute-force search for regular subgroups of the
//! automorphism group.

pub mod cayley;
pub mod census;
pub mod cyclofactor;
pub mod error;
pub mod gf2poly;
pub mod par;
pub mod permgroup;
pub mod pxgraph;

pub use cayley::{decide, is_cayley, witness_divisor, CayleyAnalysis, CayleyVerdict, Method};
pub use census::{census_rows, CensusRow};
pub use error::{Error, Result};
pub use gf2poly::Gf2Poly;
pub use permgroup::{is_cayley_bruteforce, OracleConfig, PermGroup, Permutation};
pub use pxgraph::{build_px, Graph, PxGraph};
