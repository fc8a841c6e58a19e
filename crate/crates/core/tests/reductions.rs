use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tms_core::graph::Distances;
use tms_core::oracle::{all_minimum_solutions, brute_force_solve, slack_le, verify_certificate};
use tms_core::reductions::{
    gen_from_mcis, gen_from_rbds, mcis_brute_force, rbds_brute_force, McisGadget, McisInstance,
    RbdsGadget, RbdsInstance,
};
use tms_core::{Alpha, SolverConfig, Vertex, VertexSet};

#[test]
fn rbds_equivalence_is_exhaustive() {
    let cfg = SolverConfig::default();
    let mut checked = 0;
    for blue in 0..=3 {
        for red in 0..=3 {
            let slots: Vec<(usize, usize)> =
                (0..blue).flat_map(|b| (0..red).map(move |r| (b, r))).collect();
            for mask in 0u32..1 << slots.len() {
                let edges: Vec<_> =
                    (0..slots.len()).filter(|i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
                for k in 0..=2 {
                    let src = RbdsInstance { blue, red, edges: edges.clone(), k };
                    let source_yes = rbds_brute_force(&src).is_some();
                    let target_yes = match gen_from_rbds(&src).unwrap() {
                        RbdsGadget::TriviallyNo { .. } => false,
                        RbdsGadget::Instance(inst) => {
                            let r = brute_force_solve(&inst, &cfg).unwrap();
                            if let Some(c) = &r.certificate {
                                assert!(verify_certificate(&inst, c));
                            }
                            r.is_yes()
                        }
                    };
                    assert_eq!(source_yes, target_yes, "{src:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 2000);
}

fn random_mcis(rng: &mut ChaCha8Rng) -> McisInstance {
    // A NO source needs all nine cross edges, so half the samples are dense.
    let density = if rng.random_bool(0.5) { rng.random_range(0.1..0.9) } else { rng.random_range(0.9..1.0) };
    let edges: Vec<_> = (0..3)
        .flat_map(|a| (0..3).map(move |b| ((0, a), (1, b))))
        .filter(|_| rng.random_bool(density))
        .collect();
    McisInstance::from_classes(3, 2, &edges).unwrap()
}

fn in_u(g: &McisGadget, v: Vertex) -> bool {
    g.classes.iter().any(|c| c.u.contains(&v) || c.u_prime.contains(&v))
}

fn check_distances(g: &McisGadget, alpha: &Alpha) {
    let dist = Distances::new(&g.instance.graph);
    let two_l = 2 * g.l as u128;
    let (n, k) = (g.classes[0].u.len(), g.classes.len());
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let (ci, cj) = (&g.classes[i], &g.classes[j]);
            for &x in ci.u.iter().chain(&ci.u_prime) {
                for &y in cj.u.iter().chain(&cj.u_prime) {
                    assert_eq!(dist.d(x, y), two_l);
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let far = dist.d(ci.u_prime[a], cj.u_prime[b]);
                    let same = dist.d(ci.u_prime[a], ci.u[a]) + dist.d(ci.u[a], cj.u_prime[b]);
                    assert!(!slack_le(alpha, same, far), "same index {a} still monitors");
                    for c in (0..n).filter(|&c| c != a) {
                        let other = dist.d(ci.u_prime[a], ci.u[c]) + dist.d(ci.u[c], cj.u_prime[b]);
                        assert!(slack_le(alpha, other, far), "index {c} misses {a}");
                    }
                }
            }
        }
    }
    let reach = (n as u128 - 1) / 2;
    for w in 0..g.instance.n() {
        let classes = g
            .classes
            .iter()
            .filter(|c| c.pendant.contains(&w) || dist.d(c.middle(), w) <= reach)
            .count();
        assert!(classes <= 1, "vertex {w} represents {classes} classes");
    }
}

fn check_feedback_vertices(g: &McisGadget) {
    let mut removed = VertexSet::from([g.bridge]);
    removed.extend(g.classes.iter().map(|c| c.u[0]));
    let (rest, _) = g.instance.graph.without_vertices(&removed);
    assert_eq!(rest.m() + rest.components().len(), rest.n(), "not a forest");
}

#[test]
fn mcis_gadget_matches_source() {
    let cfg = SolverConfig { brute_force_cap: 100, ..SolverConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (alpha, l, l_p) in [(Alpha::new(1, 2), 3, 4), (Alpha::new(1, 4), 6, 8)] {
        let (mut yes, mut no) = (0, 0);
        for round in 0..60 {
            let src = random_mcis(&mut rng);
            let g = gen_from_mcis(&src, alpha).unwrap();
            assert_eq!((g.l, g.l_p), (l, l_p));
            assert_eq!(g.instance.n(), 2 * (2 * 3 + 2 + l_p + 2 * 3 * (l - 1)) + 1);
            check_distances(&g, &alpha);
            check_feedback_vertices(&g);

            let source = mcis_brute_force(&src).unwrap();
            let target = brute_force_solve(&g.instance, &cfg).unwrap();
            assert_eq!(source.is_some(), target.is_yes(), "alpha {alpha}, round {round}");
            if target.is_yes() {
                yes += 1;
                let all = all_minimum_solutions(&g.instance, &cfg).unwrap().unwrap();
                let nice = all.iter().any(|s| {
                    s.iter().all(|&v| in_u(&g, v))
                        && g.classes.iter().all(|c| c.u.iter().filter(|v| s.contains(v)).count() == 1)
                });
                assert!(nice, "alpha {alpha}, round {round}: no nice minimum solution");
            } else {
                no += 1;
            }
        }
        assert!(yes >= 5 && no >= 5, "alpha {alpha}: {yes} yes, {no} no");
    }
}
