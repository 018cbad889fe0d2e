//! Exception-family membership against a brute-force oracle that tries
//! every part-respecting relabeling. Part names carry no meaning, so both
//! orientations are tried.

use proptest::prelude::*;
use topoham_core::conditions::is_sub_family;
use topoham_core::{generate_family, BipartiteGraph, FamilyKind, FamilyParams, Graph};

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// `g`'s edges all land on edges of `f` under `map` (g vertex -> f vertex).
fn embeds(g: &Graph, f: &Graph, map: &[usize]) -> bool {
    g.edges().all(|(u, v)| f.has_edge(map[u], map[v]))
}

fn brute_general(g: &Graph, f: &Graph) -> bool {
    let n = g.order();
    n == f.order()
        && permutations(&(0..n).collect::<Vec<_>>())
            .iter()
            .any(|p| embeds(g, f, p))
}

fn brute_bipartite(g: &BipartiteGraph, f: &BipartiteGraph) -> bool {
    let n = g.graph().order();
    if n != f.graph().order() {
        return false;
    }
    [(g.x(), g.y()), (g.y(), g.x())]
        .into_iter()
        .any(|(gx, gy)| {
            if gx.len() != f.x().len() || gy.len() != f.y().len() {
                return false;
            }
            let px = permutations(f.x());
            let py = permutations(f.y());
            px.iter().any(|ix| {
                py.iter().any(|iy| {
                    let mut map = vec![0; n];
                    for (&s, &t) in gx.iter().zip(ix) {
                        map[s] = t;
                    }
                    for (&s, &t) in gy.iter().zip(iy) {
                        map[s] = t;
                    }
                    embeds(g.graph(), f.graph(), &map)
                })
            })
        })
}

fn params(kind: FamilyKind, n: usize) -> impl Strategy<Value = FamilyParams> {
    (1..=kind.max_k(n)).prop_map(move |k| FamilyParams::new(kind, n, k).unwrap())
}

/// A relabeled family member with some edges removed, or an unrelated graph,
/// so that both outcomes are common.
fn general_case() -> impl Strategy<Value = (FamilyParams, Graph)> {
    let kinds = prop_oneof![
        Just(FamilyKind::L),
        Just(FamilyKind::N),
        Just(FamilyKind::LUnder),
        Just(FamilyKind::NUnder)
    ];
    (kinds, 4usize..=7)
        .prop_flat_map(|(kind, n)| params(kind, n))
        .prop_flat_map(|p| {
            let n = p.n;
            (
                Just(p),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec(0u8..10, n * n),
                any::<bool>(),
            )
        })
        .prop_map(|(p, perm, drops, dense)| {
            let f = generate_family(p)
                .unwrap()
                .into_graph()
                .relabel(&perm)
                .unwrap();
            let n = p.n;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let keep = drops[u * n + v];
                    let present = if dense {
                        keep < 9
                    } else {
                        f.has_edge(u, v) && keep < 8
                    };
                    if present {
                        edges.push((u, v));
                    }
                }
            }
            (p, Graph::from_edges(n, edges).unwrap())
        })
}

fn bipartite_case() -> impl Strategy<Value = (FamilyParams, BipartiteGraph)> {
    let kinds = prop_oneof![
        Just(FamilyKind::B),
        Just(FamilyKind::C),
        Just(FamilyKind::R),
        Just(FamilyKind::Q)
    ];
    (kinds, 2usize..=4)
        .prop_flat_map(|(kind, n)| params(kind, n))
        .prop_flat_map(|p| {
            let f = generate_family(p).unwrap();
            let (a, b) = f.as_bipartite().unwrap().part_sizes();
            (
                Just(p),
                proptest::collection::vec(0u8..10, a * b),
                any::<bool>(),
            )
        })
        .prop_map(|(p, drops, dense)| {
            let f = generate_family(p).unwrap();
            let fb = f.as_bipartite().unwrap();
            let (a, b) = fb.part_sizes();
            let edges = (0..a * b).filter(|&i| {
                let (s, t) = (i / b, i % b);
                let keep = drops[i];
                if dense {
                    keep < 9
                } else {
                    fb.graph().has_edge(fb.x()[s], fb.y()[t]) && keep < 8
                }
            });
            let pairs: Vec<_> = edges.map(|i| (i / b, i % b)).collect();
            (p, BipartiteGraph::from_biadjacency(a, b, pairs).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn general_membership_matches_brute_force((p, g) in general_case()) {
        let f = generate_family(p).unwrap().into_graph();
        prop_assert_eq!(is_sub_family(&g, p).unwrap(), brute_general(&g, &f), "{} {}", p, topoham_core::graph6::encode(&g));
    }

    #[test]
    fn bipartite_membership_matches_brute_force((p, g) in bipartite_case()) {
        let f = generate_family(p).unwrap();
        let fb = f.as_bipartite().unwrap();
        prop_assert_eq!(is_sub_family(&g, p).unwrap(), brute_bipartite(&g, fb), "{} {:?}", p, g);
        let swapped = g.swap_parts();
        prop_assert_eq!(is_sub_family(&swapped, p).unwrap(), brute_bipartite(&swapped, fb));
    }

    #[test]
    fn deleting_edges_keeps_membership((p, g) in general_case(), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let smaller = g.without_edge(u, v).unwrap();
        if is_sub_family(&g, p).unwrap() {
            prop_assert!(is_sub_family(&smaller, p).unwrap());
        }
    }

    #[test]
    fn bipartite_deletion_keeps_membership((p, g) in bipartite_case(), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.graph().edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let smaller = BipartiteGraph::from_parts(
            g.graph().without_edge(u, v).unwrap(),
            g.x().to_vec(),
            g.y().to_vec(),
        )
        .unwrap();
        if is_sub_family(&g, p).unwrap() {
            prop_assert!(is_sub_family(&smaller, p).unwrap());
        }
    }
}

#[test]
fn order_mismatch_is_not_membership() {
    let p = FamilyParams::new(FamilyKind::L, 7, 1).unwrap();
    assert!(!is_sub_family(&Graph::empty(6), p).unwrap());
    let b = FamilyParams::new(FamilyKind::B, 4, 1).unwrap();
    assert!(!is_sub_family(&BipartiteGraph::empty(4, 3), b).unwrap());
    assert!(is_sub_family(&BipartiteGraph::empty(4, 4), b).unwrap());
}
