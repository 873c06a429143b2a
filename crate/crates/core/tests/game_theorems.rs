use proptest::prelude::*;
use widthlab::corpus;
use widthlab::decomposition::{chromatic_path_decompositions, Decomposition, Kind};
use widthlab::game::{
    decompositions_from_strategy, replay, strategy_from_path_decompositions, strategy_from_tree_decompositions,
    verify_cop_strategy, CopStrategy, GameError, Outcome, TeamStrategy, Transcript, Variant, Verdict,
};
use widthlab::generators;
use widthlab::solver::{self, Parameter, SolveOptions};
use widthlab::{Graph, VertexSet};

const CAP: usize = 2_000_000;

fn synthesize(g: &Graph, variant: Variant, i: usize) -> (usize, Vec<Decomposition>, CopStrategy) {
    let param = match variant {
        Variant::Visible => Parameter::Mw,
        Variant::Invisible => Parameter::Lw,
    };
    let r = solver::width(g, param, i, &SolveOptions::default()).unwrap();
    let s = match variant {
        Variant::Visible => strategy_from_tree_decompositions(&r.certificate),
        Variant::Invisible => strategy_from_path_decompositions(&r.certificate),
    }
    .unwrap();
    (r.value, r.certificate, s)
}

/// Bags and host edges, with nodes named by their bags.
fn shape(d: &Decomposition) -> (Vec<VertexSet>, Vec<(VertexSet, VertexSet)>) {
    let mut bags = d.bags().to_vec();
    bags.sort();
    let mut edges: Vec<_> = d
        .host()
        .edges()
        .map(|(a, b)| {
            let (x, y) = (d.bag(a).clone(), d.bag(b).clone());
            if x < y { (x, y) } else { (y, x) }
        })
        .collect();
    edges.sort();
    (bags, edges)
}

/// The transcript's own positions replay, and its monotone flag agrees
/// with the robber territories it lists.
fn check_witness(g: &Graph, t: &Transcript) {
    let again = replay(g, &t.to_text()).unwrap();
    assert_eq!(&again, t);
    let mut previous = t.initial.clone();
    let mut monotone = true;
    for (mv, pos) in &t.moves {
        monotone &= pos.pairs[mv.team].1.is_subset(&previous.pairs[mv.team].1);
        previous = pos.clone();
    }
    assert_eq!(monotone, t.monotone);
}

#[test]
fn forward_directions_on_small_graphs() {
    for g in corpus::all_graphs_up_to(5) {
        for variant in [Variant::Visible, Variant::Invisible] {
            for i in 1..=2 {
                let (value, certificate, s) = synthesize(&g, variant, i);
                assert_eq!(
                    verify_cop_strategy(&g, &s, value, variant, CAP).unwrap(),
                    Verdict::WinsMonotone { cooperation: value }
                );
                match verify_cop_strategy(&g, &s, value - 1, variant, CAP).unwrap() {
                    Verdict::Loses(t) => {
                        assert_eq!(t.outcome, Outcome::RobberWinsCooperation);
                        check_witness(&g, &t);
                    }
                    other => panic!("budget {} should lose, got {other:?}", value - 1),
                }
                let back = decompositions_from_strategy(&s, &g, variant, value, CAP).unwrap();
                assert_eq!(back.len(), certificate.len());
                for (a, b) in back.iter().zip(&certificate) {
                    assert_eq!(shape(a), shape(b));
                }
            }
        }
    }
}

#[test]
fn classical_game_values() {
    // with one team the least winning budget is the largest bag of tw / pw
    let opts = SolveOptions::default();
    for g in corpus::connected_graphs_up_to(6) {
        let tw = solver::treewidth(&g, &opts).unwrap();
        let pw = solver::pathwidth(&g, &opts).unwrap();
        let visible = strategy_from_tree_decompositions(&tw.certificate).unwrap();
        let invisible = strategy_from_path_decompositions(&pw.certificate).unwrap();
        let least = |s: &CopStrategy, v: Variant| {
            (0..=g.order()).find(|&k| matches!(verify_cop_strategy(&g, s, k, v, CAP).unwrap(), Verdict::WinsMonotone { .. }))
        };
        assert_eq!(least(&visible, Variant::Visible), Some(tw.value));
        assert_eq!(least(&invisible, Variant::Invisible), Some(pw.value));
    }
}

#[test]
fn named_examples() {
    let c5 = generators::cycle(5);
    let pw = solver::pathwidth(&c5, &SolveOptions::default()).unwrap();
    let s = strategy_from_path_decompositions(&pw.certificate).unwrap();
    assert_eq!(verify_cop_strategy(&c5, &s, 3, Variant::Invisible, CAP).unwrap().name(), "wins_monotone");
    assert_eq!(verify_cop_strategy(&c5, &s, 2, Variant::Invisible, CAP).unwrap().name(), "loses");

    let tw = solver::treewidth(&c5, &SolveOptions::default()).unwrap();
    let s = strategy_from_tree_decompositions(&tw.certificate).unwrap();
    assert_eq!(verify_cop_strategy(&c5, &s, 3, Variant::Visible, CAP).unwrap(), Verdict::WinsMonotone { cooperation: 3 });

    let tree = generators::random_tree(7, 3);
    let tw = solver::treewidth(&tree, &SolveOptions::default()).unwrap();
    let s = strategy_from_tree_decompositions(&tw.certificate).unwrap();
    assert_eq!(verify_cop_strategy(&tree, &s, 2, Variant::Visible, CAP).unwrap(), Verdict::WinsMonotone { cooperation: 2 });

    // K22 with its two colour-class path decompositions
    let k22 = generators::complete_multipartite(&[2, 2]);
    let colouring: Vec<usize> = (0..4).map(|v| if v < 2 { 1 } else { 2 }).collect();
    let paths = chromatic_path_decompositions(&k22, &colouring).unwrap();
    let trees: Vec<Decomposition> = paths.iter().map(|p| p.with_kind(Kind::Tree).unwrap()).collect();
    let invisible = strategy_from_path_decompositions(&paths).unwrap();
    let visible = strategy_from_tree_decompositions(&trees).unwrap();
    assert_eq!(verify_cop_strategy(&k22, &invisible, 2, Variant::Invisible, CAP).unwrap(), Verdict::WinsMonotone { cooperation: 2 });
    assert_eq!(verify_cop_strategy(&k22, &visible, 2, Variant::Visible, CAP).unwrap(), Verdict::WinsMonotone { cooperation: 2 });

    let p4 = generators::path(4);
    let sweep = Decomposition::path((0..3).map(|a| VertexSet::from_iter([a, a + 1])).collect());
    let s = strategy_from_path_decompositions(&[sweep]).unwrap();
    assert_eq!(verify_cop_strategy(&p4, &s, 2, Variant::Invisible, CAP).unwrap(), Verdict::WinsMonotone { cooperation: 2 });

    let k4 = generators::complete(4);
    let s = strategy_from_path_decompositions(&[Decomposition::trivial(Kind::Path, &k4)]).unwrap();
    assert_eq!(verify_cop_strategy(&k4, &s, 4, Variant::Invisible, CAP).unwrap(), Verdict::WinsMonotone { cooperation: 4 });
}

#[test]
fn trapped_robber_win_without_a_decomposition() {
    // on K2 the robber held on {1} cannot slip past a cop jumping from 0 to 1,
    // so one cop wins, though no path of single vertices covers the edge
    let k2 = generators::complete(2);
    let s = CopStrategy::new(vec![TeamStrategy::Sequence(vec![VertexSet::from_mask(1), VertexSet::from_mask(2)])]);
    for variant in [Variant::Visible, Variant::Invisible] {
        assert_eq!(verify_cop_strategy(&k2, &s, 1, variant, CAP).unwrap(), Verdict::WinsMonotone { cooperation: 1 });
        assert!(matches!(decompositions_from_strategy(&s, &k2, variant, 1, CAP), Err(GameError::Extraction(_))));
    }
}

fn sequence_strategy() -> impl Strategy<Value = (usize, u64, Vec<Vec<u64>>)> {
    (2usize..6, any::<u64>()).prop_flat_map(|(n, seed)| {
        let full = (1u64 << n) - 1;
        let team = prop::collection::vec((1u64..=full).prop_map(move |m| m & full), 1..6);
        (Just(n), Just(seed), prop::collection::vec(team, 1..3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Arbitrary bag sequences: whatever the verdict, witnesses replay and
    /// winning strategies that are monotone extract to valid decompositions.
    #[test]
    fn arbitrary_sequences((n, seed, teams) in sequence_strategy(), k in 1usize..5, visible in any::<bool>()) {
        let g = generators::random_gnp(n, 0.5, seed);
        let variant = if visible { Variant::Visible } else { Variant::Invisible };
        let s = CopStrategy::new(
            teams.iter().map(|t| TeamStrategy::Sequence(t.iter().map(|&m| VertexSet::from_mask(m)).collect())).collect(),
        );
        match verify_cop_strategy(&g, &s, k, variant, CAP).unwrap() {
            Verdict::Loses(t) => check_witness(&g, &t),
            Verdict::WinsMonotone { cooperation } => {
                prop_assert!(cooperation <= k);
                let decs = decompositions_from_strategy(&s, &g, variant, k, CAP);
                // the trapped rule lets some wins skip an edge, which extraction must refuse
                match decs {
                    Ok(decs) => {
                        for d in &decs {
                            prop_assert_eq!(d.validate(&g), Ok(()));
                        }
                    }
                    Err(e) => prop_assert!(matches!(e, GameError::Extraction(_)), "{e}"),
                }
            }
            Verdict::WinsNonMonotone { cooperation } => prop_assert!(cooperation <= k),
        }
    }
}
