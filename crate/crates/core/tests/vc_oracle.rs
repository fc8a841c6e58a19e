use tms_core::graph::{compute_parameter, Distances, ParameterKind};
use tms_core::instance::{gen_random, gen_vc_like, RandomSpec};
use tms_core::oracle::{brute_force_solve, verify_certificate};
use tms_core::vc::{build_hs_for_matrix, is_consistent, solve_vc, CompatibilityMatrix};
use tms_core::{SolverConfig, VertexSet};

fn spec(seed: u64) -> RandomSpec {
    let n = 3 + (seed % 8) as usize;
    let pairs = (1 + (seed % 6) as usize).min(n * (n - 1) / 2);
    let mut s = RandomSpec::new(n, 0.4, pairs, (seed % 4) as usize, seed);
    s.weights = (1, 5);
    s.degenerate = seed.is_multiple_of(5);
    s
}

#[test]
fn weighted_verdicts_match_brute_force() {
    let cfg = SolverConfig::default();
    let mut checked = 0;
    for seed in 0..450u64 {
        let s = spec(seed);
        let inst = if seed % 4 == 0 {
            gen_random(&s).unwrap()
        } else {
            gen_vc_like(&s, (1 + (seed % 4) as usize).min(s.n)).unwrap()
        };
        if compute_parameter(&inst.graph, ParameterKind::VertexCover, 4).is_err() {
            continue;
        }
        let fast = solve_vc(&inst, None, &cfg).unwrap();
        let slow = brute_force_solve(&inst, &cfg).unwrap();
        assert_eq!(fast.verdict, slow.verdict, "seed {seed}");
        if let Some(c) = &fast.certificate {
            assert!(verify_certificate(&inst, c), "seed {seed}");
        }
        checked += 1;
    }
    assert!(checked >= 300, "only {checked} instances within the cap");
}

/// A solution always satisfies the guess built from its own hit pattern.
#[test]
fn every_solution_passes_its_own_guess() {
    let cfg = SolverConfig::default();
    for seed in 0..150u64 {
        let inst = gen_vc_like(&spec(seed), 2).unwrap();
        let Some(cert) = brute_force_solve(&inst, &cfg).unwrap().certificate else {
            continue;
        };
        let dist = Distances::new(&inst.graph);
        let cover: Vec<usize> = match compute_parameter(&inst.graph, ParameterKind::VertexCover, 4)
            .unwrap()
            .witness
        {
            tms_core::graph::Witness::Vertices(c) => c.into_iter().collect(),
            _ => unreachable!(),
        };
        let pairs = CompatibilityMatrix::from_index(&cover, &dist, 0).pairs;
        let index = pairs.iter().enumerate().fold(0u64, |acc, (i, &(a, b))| {
            let hit = !dist.sp(a, b).unwrap().is_disjoint(&cert);
            acc | (hit as u64) << i
        });
        let m = CompatibilityMatrix::from_index(&cover, &dist, index);
        assert!(is_consistent(&dist, &m, &cert));
        let built = build_hs_for_matrix(&inst, &dist, &m).unwrap().expect("guess accepted");
        let hs = built.to_hitting_set(inst.n(), inst.k);
        let as_set: VertexSet = cert.clone();
        assert!(hs.family.iter().all(|f| !f.is_disjoint(&as_set)), "seed {seed}");
    }
}
