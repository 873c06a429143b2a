use proptest::prelude::*;
use widthlab::corpus;
use widthlab::decomposition::{
    extract_path_decompositions, laminar_separation_check, parse_decompositions, write_decompositions,
    y_z_separation_check, Decomposition, Kind,
};
use widthlab::generators;
use widthlab::graph::is_separation;
use widthlab::solver::{self, Parameter, SolveOptions};
use widthlab::{Graph, VertexSet};

fn shipped_c5() -> (Graph, Decomposition) {
    let g = Graph::parse(include_str!("../data/c5.graph")).unwrap();
    let d = parse_decompositions(include_str!("../data/c5_grid.dec")).unwrap().remove(0);
    (g, d)
}

#[test]
fn shipped_c5_decomposition() {
    let (g, d) = shipped_c5();
    assert_eq!(d.kind(), Kind::Median);
    d.validate(&g).unwrap();
    assert_eq!(d.width().max_bag, 2);
    y_z_separation_check(&d, &g).unwrap();
    laminar_separation_check(&d, &g).unwrap();
    let ex = extract_path_decompositions(&d, &g).unwrap();
    assert!(ex.round_trip_matches(&d, &g).unwrap());
    assert_eq!(ex.paths.len(), 2);
    assert_eq!(write_decompositions(&[d.clone()]), d.to_text());
    assert_eq!(parse_decompositions(&d.to_text()).unwrap(), vec![d]);
}

#[test]
fn corruption_names_the_axiom() {
    let (g, d) = shipped_c5();
    let mut bags = d.bags().to_vec();
    // vertex 0 sits in nodes 0, 1, 2; dropping it from the middle node splits its occurrences
    bags[1] = VertexSet::new();
    let broken = Decomposition::median(d.host().clone(), bags).unwrap();
    let v = broken.validate(&g).unwrap_err();
    assert!(v.to_string().starts_with(v.axiom()));
    assert!(["M1", "M2"].contains(&v.axiom()));
    let dropped = Decomposition::path(vec![VertexSet::from_mask(0b00011)]);
    assert_eq!(dropped.validate(&g).unwrap_err().axiom(), "T1");
    assert_eq!(Decomposition::trivial(Kind::Median, &Graph::empty(0)).validate(&Graph::empty(0)), Ok(()));
}

/// Every solver certificate, multiplied out and split again, gives back the
/// same product, and each host edge separates the graph.
fn product_round_trip(g: &Graph) {
    let opts = SolveOptions::default();
    for param in [Parameter::Lw, Parameter::Mw] {
        for i in 1..=2 {
            let r = solver::width(g, param, i, &opts).unwrap();
            let d = r.product(g).unwrap();
            d.validate(g).unwrap();
            assert_eq!(d.width().max_bag, r.value);
            y_z_separation_check(&d, g).unwrap();
            laminar_separation_check(&d, g).unwrap();
            if param == Parameter::Lw {
                let ex = extract_path_decompositions(&d, g).unwrap();
                assert!(ex.round_trip_matches(&d, g).unwrap(), "{}", g.to_text());
            }
            let text = d.to_text();
            assert_eq!(parse_decompositions(&text).unwrap(), vec![d]);
        }
    }
}

#[test]
fn corpus_products_round_trip() {
    for g in corpus::all_graphs_up_to(5) {
        product_round_trip(&g);
    }
    for (_, g) in corpus::named_families() {
        product_round_trip(&g);
    }
}

#[test]
fn host_edge_separators() {
    let g = generators::complete_multipartite(&[2, 2, 2]);
    let r = solver::lattice_width(&g, 3, &SolveOptions::default()).unwrap();
    assert_eq!(r.value, 3);
    let d = r.product(&g).unwrap();
    for (a, b) in d.host().edges() {
        let sep = widthlab::decomposition::edge_separation(&d, a, b);
        assert!(is_separation(&g, &sep.y_ab.union(&sep.separator), &sep.y_ba.union(&sep.separator)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_products_round_trip(n in 1usize..8, p in 0.1f64..0.9, seed in any::<u64>()) {
        product_round_trip(&generators::random_gnp(n, p, seed));
    }

    #[test]
    fn restriction_keeps_validity(n in 2usize..8, p in 0.2f64..0.8, seed in any::<u64>(), keep in any::<u64>()) {
        let g = generators::random_gnp(n, p, seed);
        let r = solver::lattice_width(&g, 2, &SolveOptions::default()).unwrap();
        let d = r.product(&g).unwrap();
        let keep = VertexSet::from_mask(keep & ((1 << n) - 1));
        let (sub, map) = g.induced_subgraph(&keep);
        let restricted = d.restrict(&keep);
        prop_assert_eq!(restricted.validate_on(&g, &keep), Ok(()));
        prop_assert!(restricted.width().max_bag <= d.width().max_bag);
        prop_assert_eq!(sub.order(), map.len());
    }
}
