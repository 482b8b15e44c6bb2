use std::time::Instant;

use pxc_core::permgroup::{automorphism_group, has_regular_subgroup, AutomorphismOptions};
use pxc_core::{build_px, is_cayley, is_cayley_bruteforce, OracleConfig};

fn desk_pairs(cap: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=cap {
        for k in 1..n {
            if n << k <= cap {
                out.push((n, k));
            }
        }
    }
    out
}

#[test]
fn oracle_matches_divisor_criterion_at_desk_scale() {
    let cfg = OracleConfig::default();
    for (n, k) in desk_pairs(cfg.cap) {
        let start = Instant::now();
        let brute = is_cayley_bruteforce(n, k, &cfg).unwrap();
        eprintln!("PX({n},{k}) brute={brute} {:?}", start.elapsed());
        assert_eq!(brute, is_cayley(n, k).unwrap(), "PX({n},{k})");
    }
}

#[test]
fn named_fixtures() {
    let cfg = OracleConfig::default();
    assert!(!is_cayley_bruteforce(5, 2, &cfg).unwrap());
    assert!(!is_cayley_bruteforce(5, 3, &cfg).unwrap());
    assert!(is_cayley_bruteforce(3, 1, &cfg).unwrap());
    assert!(is_cayley_bruteforce(6, 1, &cfg).unwrap());
    for k in 1..=3 {
        assert!(is_cayley_bruteforce(4, k, &cfg).unwrap());
    }
}

#[test]
fn px_graphs_are_vertex_transitive() {
    let opts = AutomorphismOptions { max_vertices: 128 };
    for n in 3..=8 {
        for k in 1..n.min(5) {
            let px = build_px(n, k).unwrap();
            let aut = automorphism_group(px.graph(), &opts).unwrap();
            assert!(aut.is_transitive(), "PX({n},{k})");
            for g in aut.generators() {
                assert!(px.graph().is_automorphism(g));
            }
        }
    }
}

#[test]
fn witnesses_are_regular_and_inside_the_group() {
    for (n, k) in [(3, 1), (4, 2), (6, 2), (8, 1)] {
        let px = build_px(n, k).unwrap();
        let aut = automorphism_group(px.graph(), &AutomorphismOptions::default()).unwrap();
        let gens = has_regular_subgroup(&aut, 1_000_000).unwrap().unwrap();
        assert!(pxc_core::permgroup::verify_regular(&gens, px.vertex_count()).unwrap());
        assert!(gens.iter().all(|g| px.graph().is_automorphism(g)));
    }
}
