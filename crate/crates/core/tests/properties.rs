use krcycle::balance::{f_cycle_first_moment, is_strictly_one_balanced};
use krcycle::cert::{lift, verify_kr_cycle, verify_loose_hc};
use krcycle::cliques::{clique_hypergraph, enumerate_cliques, enumerate_f_copies, uncovered_vertices};
use krcycle::random::{graph_at, hypergraph_at};
use krcycle::solver::{brute_force_loose_hc, find_f_cycle, find_loose_hc, find_spanning_kr_cycle};
use krcycle::{Graph, KrCycleCert, PatternGraph, Rational, SearchBudget, SearchStatus, WeightAssignment};
use proptest::prelude::*;

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    graph_at(&WeightAssignment::pairs(n, seed), p).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn naive_cliques(g: &Graph, r: usize) -> Vec<Vec<usize>> {
    subsets(g.n(), r)
        .into_iter()
        .filter(|s| s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| g.has_edge(a, b))))
        .collect()
}

/// K_r-cycle on `perm`, using consecutive windows of length r.
fn cycle_from_perm(perm: &[usize], r: usize) -> KrCycleCert {
    let m = perm.len() / (r - 1);
    let cliques = (0..m).map(|i| (0..r).map(|k| perm[(i * (r - 1) + k) % perm.len()]).collect()).collect();
    KrCycleCert::new(r, cliques)
}

fn union_graph(n: usize, cert: &KrCycleCert) -> Graph {
    let mut edges = Vec::new();
    for c in &cert.cliques {
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn cert_strategy() -> impl Strategy<Value = (usize, KrCycleCert)> {
    (3usize..5, 3usize..6).prop_flat_map(|(r, m)| {
        let n = (r - 1) * m;
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |perm| (n, cycle_from_perm(&perm, r)))
    })
}

#[test]
fn k_r_is_strictly_balanced() {
    for r in 3..=6 {
        let f = PatternGraph::complete(r).unwrap();
        assert_eq!(is_strictly_one_balanced(&f), (true, None));
    }
}

#[test]
fn dense_core_with_pendant_is_not_balanced() {
    let mut edges: Vec<(usize, usize)> = PatternGraph::complete(4).unwrap().edges().to_vec();
    edges.push((3, 4));
    let f = PatternGraph::new(5, edges).unwrap();
    let (balanced, witness) = is_strictly_one_balanced(&f);
    assert!(!balanced);
    assert_eq!(witness.unwrap().vertices, vec![0, 1, 2, 3]);
}

#[test]
fn clique_first_moment_is_the_threshold_exponent() {
    for r in 3..=8 {
        let fm = f_cycle_first_moment(&PatternGraph::complete(r).unwrap(), 1, 0).unwrap();
        assert_eq!(fm.p_exponent, Rational::new(-2, r as i64));
    }
}

#[test]
fn triangle_f_cycle_matches_kr_search() {
    let k3 = PatternGraph::complete(3).unwrap();
    let mut found = 0;
    for seed in 0..20 {
        let g = random_graph(6, 0.75, seed);
        let a = find_f_cycle(&g, &k3, SearchBudget::unlimited(), None).unwrap();
        let b = find_spanning_kr_cycle(&g, 3, SearchBudget::unlimited()).unwrap();
        assert_eq!(a.status, b.status, "seed {seed}");
        found += a.is_found() as usize;
    }
    // both outcomes occur in the sample
    assert!(found > 0 && found < 20, "{found}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cliques_match_naive_filter(n in 1usize..=12, p in 0.0f64..1.0, seed: u64, r in 3usize..6) {
        let g = random_graph(n, p, seed);
        prop_assert_eq!(enumerate_cliques(&g, r).unwrap(), naive_cliques(&g, r));
    }

    #[test]
    fn uncovered_are_missing_from_clique_hypergraph(n in 3usize..=12, p in 0.0f64..1.0, seed: u64) {
        let g = random_graph(n, p, seed);
        let h = clique_hypergraph(&g, 3).unwrap();
        let expected: Vec<usize> = (0..n).filter(|&v| h.edges().iter().all(|e| !e.contains(&v))).collect();
        prop_assert_eq!(uncovered_vertices(&g, 3).unwrap(), expected);
        for e in h.edges() {
            prop_assert!(g.is_clique(e));
        }
    }

    #[test]
    fn copy_counts_survive_relabeling(
        (n, perm) in (4usize..=9).prop_flat_map(|n| (Just(n), Just((0..n).collect::<Vec<_>>()).prop_shuffle())),
        p in 0.2f64..0.9,
        seed: u64,
        which in 0usize..4,
    ) {
        let f = match which {
            0 => PatternGraph::complete(3),
            1 => PatternGraph::cycle(4),
            2 => PatternGraph::complete_minus_edge(4),
            _ => PatternGraph::path(4),
        }.unwrap();
        let g = random_graph(n, p, seed);
        let a = enumerate_f_copies(&g, &f).unwrap().len();
        let b = enumerate_f_copies(&g.relabel(&perm).unwrap(), &f).unwrap().len();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lift_round_trip(n in prop::sample::select(vec![6usize, 8, 10]), p in 0.5f64..1.0, seed: u64) {
        let g = random_graph(n, p, seed);
        let h = clique_hypergraph(&g, 3).unwrap();
        let out = find_loose_hc(&h, SearchBudget::unlimited()).unwrap();
        if let Some(c) = out.certificate {
            prop_assert_eq!(verify_loose_hc(&h, &c), Ok(()));
            let k = lift(&c).unwrap();
            prop_assert_eq!(verify_kr_cycle(&g, &k), Ok(()));
            prop_assert!(k.pairwise_edge_disjoint());
        }
    }

    #[test]
    fn generated_cycles_verify_and_are_edge_disjoint((n, cert) in cert_strategy()) {
        let g = union_graph(n, &cert);
        prop_assert_eq!(verify_kr_cycle(&g, &cert), Ok(()));
        prop_assert_eq!(verify_kr_cycle(&Graph::complete(n).unwrap(), &cert), Ok(()));
        prop_assert!(cert.pairwise_edge_disjoint());
    }

    #[test]
    fn mutations_are_rejected((n, cert) in cert_strategy(), i in 0usize..8, j in 0usize..8) {
        let g = union_graph(n, &cert);
        let m = cert.m();
        let r = cert.r;
        let (i, j) = (i % m, j % m);
        // drop a clique
        let mut dropped = cert.cliques.clone();
        dropped.remove(i);
        prop_assert!(verify_kr_cycle(&g, &KrCycleCert::new(r, dropped)).is_err());
        // swap an interior vertex of H_i with one of H_j
        if i != j {
            let conn = cert.connectors().unwrap();
            let interior = |c: &Vec<usize>| *c.iter().find(|v| !conn.contains(v)).unwrap();
            let (a, b) = (interior(&cert.cliques[i]), interior(&cert.cliques[j]));
            let mut swapped = cert.cliques.clone();
            swapped[i].iter_mut().filter(|v| **v == a).for_each(|v| *v = b);
            swapped[j].iter_mut().filter(|v| **v == b).for_each(|v| *v = a);
            prop_assert!(verify_kr_cycle(&g, &KrCycleCert::new(r, swapped)).is_err());
        }
        // move the shared vertex of (H_i, H_{i+1})
        let next = (i + 1) % m;
        let shared = *cert.cliques[i].iter().find(|v| cert.cliques[next].contains(v)).unwrap();
        let other = *cert.cliques[next].iter().find(|&&v| v != shared && !cert.cliques[(next + 1) % m].contains(&v)).unwrap();
        let mut broken = cert.cliques.clone();
        broken[i].iter_mut().filter(|v| **v == shared).for_each(|v| *v = other);
        prop_assert!(verify_kr_cycle(&g, &KrCycleCert::new(r, broken)).is_err());
    }

    #[test]
    fn search_agrees_with_brute_force(n in prop::sample::select(vec![6usize, 8]), pi in 0.05f64..0.95, seed: u64) {
        let h = hypergraph_at(&WeightAssignment::r_sets(n, 3, seed), pi, 3).unwrap();
        let a = find_loose_hc(&h, SearchBudget::unlimited()).unwrap();
        let b = brute_force_loose_hc(&h).unwrap();
        prop_assert_eq!(a.status, b.status);
        for c in a.certificate.iter().chain(b.certificate.iter()) {
            prop_assert_eq!(verify_loose_hc(&h, c), Ok(()));
        }
    }

    #[test]
    fn spanning_cycles_are_monotone_in_p(n in prop::sample::select(vec![6usize, 9, 12]), seed: u64) {
        let w = WeightAssignment::pairs(n, seed);
        let r = if n == 9 { 4 } else { 3 };
        let mut seen_found = false;
        for k in 1..=10 {
            let g = graph_at(&w, k as f64 / 10.0).unwrap();
            let out = find_spanning_kr_cycle(&g, r, SearchBudget::unlimited()).unwrap();
            prop_assert_ne!(out.status, SearchStatus::BudgetExhausted);
            prop_assert!(!(seen_found && out.status == SearchStatus::None), "lost cycle at p={}", k as f64 / 10.0);
            seen_found |= out.is_found();
        }
        prop_assert!(seen_found);
    }

    #[test]
    fn search_is_deterministic(p in 0.4f64..1.0, seed: u64) {
        let g = random_graph(12, p, seed);
        let a = find_spanning_kr_cycle(&g, 3, SearchBudget::unlimited()).unwrap();
        let b = find_spanning_kr_cycle(&g, 3, SearchBudget::unlimited()).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.certificate, b.certificate);
        prop_assert_eq!(a.stats.nodes, b.stats.nodes);
    }
}
