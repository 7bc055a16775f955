use modwidth::gen::{gen_bounded_mw, gen_gnp, rng};
use modwidth::ham::{
    build_ham_ilp, ham_number, ham_number_with, ham_of_product, hamiltonian_cycle,
    hamiltonian_cycle_witness, has_ham_cycle_product, path_partition_witness, CutMode, HamOptions,
    LSearch, NodeRecord,
};
use modwidth::ilp::IlpConfig;
use modwidth::oracles::{
    brute_path_partition, check_hamiltonian_cycle, check_path_partition, held_karp_hamiltonian,
};
use modwidth::{substitute, Graph};
use rand::Rng;

#[test]
fn product_records_match_brute_force() {
    let mut r = rng(11);
    for _ in 0..120 {
        let k = r.gen_range(1..=4);
        let q = gen_gnp(k, r.gen_range(0.2..0.9), r.gen()).unwrap();
        let parts: Vec<Graph> = (0..k)
            .map(|_| gen_gnp(r.gen_range(1..=3), r.gen_range(0.0..1.0), r.gen()).unwrap())
            .collect();
        let records: Vec<NodeRecord> = parts
            .iter()
            .map(|p| NodeRecord::new(brute_path_partition(p).unwrap(), p.n()))
            .collect();
        let h = substitute(&q, &parts).unwrap();
        let got = ham_of_product(&q, &records, &HamOptions::default()).unwrap();
        assert_eq!(
            got,
            NodeRecord::new(brute_path_partition(&h).unwrap(), h.n()),
            "{q:?} {records:?}"
        );
        let cycle = has_ham_cycle_product(&q, &records, &HamOptions::default()).unwrap();
        assert_eq!(
            cycle.is_some(),
            held_karp_hamiltonian(&h, true).unwrap() && h.n() >= 2 && k >= 2
        );
    }
}

#[test]
fn flows_are_balanced_and_within_capacity() {
    let q = Graph::cycle(5);
    let records: Vec<NodeRecord> = [(1, 3), (2, 4), (1, 1), (1, 5), (3, 3)]
        .iter()
        .map(|&(h, s)| NodeRecord::new(h, s))
        .collect();
    let flow = has_ham_cycle_product(&q, &records, &HamOptions::default())
        .unwrap()
        .unwrap();
    flow.check().unwrap();
    for (v, rec) in records.iter().enumerate() {
        let out = flow.out_degree(v);
        assert_eq!(out, flow.in_degree(v));
        assert!(rec.ham <= out && out <= rec.size);
    }
    let (inst, arcs) = build_ham_ilp(&q, &records, CutMode::Eager).unwrap();
    assert_eq!(arcs.len(), 10);
    assert_eq!(inst.var_count(), 10);
}

#[test]
fn universal_vertices_needed_equal_ham() {
    for seed in 0..60u64 {
        let g = gen_gnp(2 + seed as usize % 6, 0.3, seed).unwrap();
        let ham = ham_number(&g).unwrap();
        let h = (1..=g.n())
            .find(|&i| held_karp_hamiltonian(&modwidth::add_universal(&g, i), true).unwrap())
            .unwrap();
        assert_eq!(ham, h, "{g:?}");
    }
}

#[test]
fn witnesses_on_bounded_width_graphs() {
    for seed in 0..6u64 {
        let g = gen_bounded_mw(300, 3 + seed as usize, seed).unwrap();
        let paths = path_partition_witness(&g).unwrap();
        check_path_partition(&g, &paths).unwrap();
        assert_eq!(paths.len(), ham_number(&g).unwrap());
        match hamiltonian_cycle_witness(&g).unwrap() {
            Some(c) => check_hamiltonian_cycle(&g, &c).unwrap(),
            None => assert!(!hamiltonian_cycle(&g).unwrap()),
        }
    }
}

#[test]
fn search_variants_agree_on_bounded_width_graphs() {
    let variants = [
        HamOptions {
            cuts: CutMode::Eager,
            ..Default::default()
        },
        HamOptions {
            search: LSearch::Linear,
            ..Default::default()
        },
    ];
    for seed in 0..8u64 {
        let g = gen_bounded_mw(120, 5, 100 + seed).unwrap();
        let want = ham_number(&g).unwrap();
        for v in &variants {
            assert_eq!(ham_number_with(&g, v).unwrap(), want);
        }
    }
}

/// Feasible node whose relaxation stays fractional for a long time under
/// plain first-fractional branching.
#[test]
fn hard_feasible_node_is_quick() {
    let q = Graph::from_edges(
        7,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 3),
            (2, 4),
            (3, 5),
            (0, 6),
            (1, 6),
            (2, 6),
            (3, 6),
            (4, 6),
            (5, 6),
        ],
    )
    .unwrap();
    let records: Vec<NodeRecord> = [(1, 14), (4, 11), (1, 19), (1, 17), (2, 5), (2, 2), (1, 1)]
        .iter()
        .map(|&(h, s)| NodeRecord::new(h, s))
        .collect();
    let opts = HamOptions {
        ilp: IlpConfig {
            node_budget: 2_000,
            ..Default::default()
        },
        ..Default::default()
    };
    let flow = has_ham_cycle_product(&q, &records, &opts).unwrap().unwrap();
    assert_eq!(flow.out_degree(6), 1);
    assert_eq!(flow.out_degree(5), 2);
}
