use topoham_core::graph6;
use topoham_core::harness::{
    enumerate_bipartite_graphs, enumerate_labeled_graphs, ingest_graph6, sample_random_graphs,
    verify_corpus, CorpusGraph, EnumFilter, Malformed, SampleModel, Status, VerifyOptions,
};
use topoham_core::{generate_family, BipartiteGraph, FamilyKind, FamilyParams, Graph};

fn only(ids: &[&str]) -> VerifyOptions {
    VerifyOptions::default().with_entries(ids).unwrap()
}

#[test]
fn enumeration_examples() {
    assert_eq!(
        enumerate_labeled_graphs(3, EnumFilter::default())
            .unwrap()
            .count(),
        8
    );
    let cc = EnumFilter {
        connected_complement: true,
        ..EnumFilter::default()
    };
    assert_eq!(enumerate_labeled_graphs(4, cc).unwrap().count(), 38);
    let d1 = EnumFilter {
        min_degree: 1,
        ..EnumFilter::default()
    };
    assert_eq!(enumerate_bipartite_graphs(2, 2, d1).unwrap().count(), 7);
    assert!(enumerate_labeled_graphs(8, EnumFilter::default()).is_err());
    assert!(enumerate_bipartite_graphs(6, 5, EnumFilter::default()).is_err());
}

#[test]
fn ingest_examples() {
    let got = ingest_graph6("D?{\n\nDQc\n", Malformed::Skip).unwrap();
    assert_eq!(got.graphs.len(), 2);
    assert_eq!(graph6::encode(&got.graphs[0].1), "D?{");
    assert_eq!(got.warnings.len(), 1);
    assert!(ingest_graph6("~~~\n", Malformed::Abort).is_err());
    let skipped = ingest_graph6("~~~\nD?{\n", Malformed::Skip).unwrap();
    assert_eq!(skipped.graphs[0].0, 2);
}

#[test]
fn sampling_examples() {
    let model = SampleModel::UniformEdge { p: 0.5 };
    assert_eq!(
        sample_random_graphs(10, 20, model, 1).unwrap(),
        sample_random_graphs(10, 20, model, 1).unwrap()
    );
    let dense = SampleModel::FixedMinDegree {
        p: 0.6,
        min_degree: 3,
    };
    assert!(sample_random_graphs(8, 50, dense, 2)
        .unwrap()
        .iter()
        .all(|g| g.min_degree() >= Some(3)));
    let full = sample_random_graphs(12, 3, SampleModel::UniformEdge { p: 1.0 }, 3).unwrap();
    assert!(full.iter().all(|g| *g == Graph::complete(12)));
}

#[test]
fn complete_bipartite_satisfies_l41() {
    let corpus = [CorpusGraph::Bipartite(BipartiteGraph::complete(5, 5))];
    let mut opts = only(&["L4.1"]);
    opts.k_max = Some(1);
    let r = verify_corpus(corpus, &opts);
    assert!(r.findings.is_empty());
    let rec = &r.records[0];
    assert_eq!(rec.status, Status::Consistent);
    assert!(rec.verdicts[0].verdict.fires());
    assert_eq!(rec.oracle.hamiltonian, Some(true));
}

#[test]
fn c72_is_explained_by_its_exception() {
    let c = generate_family(FamilyParams::new(FamilyKind::C, 7, 2).unwrap()).unwrap();
    let mut opts = only(&["L5.1"]);
    opts.k_min = Some(2);
    opts.k_max = Some(2);
    let r = verify_corpus([CorpusGraph::from(c)], &opts);
    assert!(r.findings.is_empty());
    assert_eq!(r.records[0].status, Status::Explained);
    assert_eq!(r.records[0].oracle.traceable, Some(false));
    assert_eq!(r.coverage_for("L5.1").unwrap().explained, 1);
}

#[test]
fn empty_corpus() {
    let r = verify_corpus(Vec::new(), &VerifyOptions::default());
    assert_eq!(r.graphs, 0);
    assert!(r.findings.is_empty());
    assert!(r.records.is_empty());
}

#[test]
fn connectivity_theorems_hold_on_small_graphs() {
    let k2 = EnumFilter {
        min_connectivity: 2,
        ..EnumFilter::default()
    };
    let ids = [
        "L8.1", "L9.1", "T8.2", "T8.3", "T8.4", "T9.2", "T9.3", "T9.4",
    ];
    let corpus = (3..=6).flat_map(|n| {
        enumerate_labeled_graphs(n, k2)
            .unwrap()
            .map(CorpusGraph::General)
    });
    let r = verify_corpus(corpus, &only(&ids));
    assert!(r.findings.is_empty(), "{:?}", r.findings.first());
    assert!(r.coverage_for("L8.1").unwrap().graphs_fired > 0);
    assert!(r.coverage_for("L9.1").unwrap().graphs_fired > 0);
}

#[test]
fn balanced_theorems_hold_on_a_bipartite_sample() {
    let cc = EnumFilter {
        min_degree: 1,
        connected_complement: true,
        ..EnumFilter::default()
    };
    let ids = ["L4.1", "T4.2", "T4.3", "T4.4"];
    let corpus = enumerate_bipartite_graphs(5, 5, cc)
        .unwrap()
        .step_by(97)
        .map(CorpusGraph::Bipartite);
    let mut opts = only(&ids);
    opts.k_max = Some(1);
    let r = verify_corpus(corpus, &opts);
    assert!(r.graphs > 100_000);
    assert!(r.findings.is_empty(), "{:?}", r.findings.first());
}
