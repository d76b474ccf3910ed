mod common;

use homstat::{boundary, is_cycle, Chain1, CycleBasis, EdgeId, NodeId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_chain(rng: &mut ChaCha8Rng, bars: &[EdgeId]) -> Chain1 {
    let mut terms = Vec::new();
    for &b in bars {
        if rng.gen_bool(0.5) {
            terms.push((b, rng.gen_range(-5..=5)));
        }
    }
    Chain1::from_terms(terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cycle_count_is_first_betti_number(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_frame(&mut rng, 12);
        let basis = CycleBasis::new(&g);
        prop_assert_eq!(basis.len() + g.node_count(), g.edge_count() + 1);
        prop_assert_eq!(basis.tree.len() + 1, g.node_count());
    }

    #[test]
    fn basis_cycles_have_zero_boundary(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_frame(&mut rng, 12);
        let basis = CycleBasis::new(&g);
        for c in &basis.cycles {
            prop_assert!(boundary(&c.chain, &g).unwrap().is_zero());
            prop_assert_eq!(c.chain.coeff(c.generator), 1);
            for (bar, _) in c.chain.terms() {
                prop_assert!(bar == c.generator || basis.tree.contains(bar));
            }
        }
    }

    #[test]
    fn boundary_is_a_homomorphism(seed in any::<u64>(), k in -4i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_frame(&mut rng, 12);
        let bars: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
        let a = random_chain(&mut rng, &bars);
        let b = random_chain(&mut rng, &bars);
        let da = boundary(&a, &g).unwrap();
        let db = boundary(&b, &g).unwrap();
        prop_assert_eq!(boundary(&(&a + &b), &g).unwrap(), &da + &db);
        prop_assert_eq!(boundary(&a.checked_scale(k).unwrap(), &g).unwrap(), da.checked_scale(k).unwrap());
        prop_assert!(boundary(&Chain1::zero(), &g).unwrap().is_zero());
    }

    #[test]
    fn any_tree_root_gives_a_valid_basis(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_frame(&mut rng, 10);
        let root = g.nodes()[rng.gen_range(0..g.node_count())].id;
        let basis = CycleBasis::with_root(&g, root).unwrap();
        prop_assert_eq!(basis.tree.root, root);
        prop_assert_eq!(basis.len() + g.node_count(), g.edge_count() + 1);
        prop_assert!(basis.cycles.iter().all(|c| is_cycle(&c.chain, &g).unwrap()));
    }

    #[test]
    fn integer_sums_of_basis_cycles_stay_cycles(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_frame(&mut rng, 12);
        let basis = CycleBasis::new(&g);
        let sum = basis.cycles.iter().fold(Chain1::zero(), |acc, c| &acc + &c.chain.checked_scale(rng.gen_range(-3..=3)).unwrap());
        prop_assert!(is_cycle(&sum, &g).unwrap());
        // a single bar has a boundary of exactly two nodes
        let e = g.edges()[0];
        let d = boundary(&Chain1::single(e.id, 1), &g).unwrap();
        prop_assert_eq!(d.coeff(e.head), 1);
        prop_assert_eq!(d.coeff(e.tail), -1);
        prop_assert_eq!(d.coeff(NodeId(u32::MAX)), 0);
    }
}
