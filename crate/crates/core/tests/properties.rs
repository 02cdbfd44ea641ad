//! Algebraic invariants over randomly generated small instances.

mod support;

use fincat::dot::{category_dot, graph_dot};
use fincat::{Category, CategorySpec, DotMode, Functor, FunctorSpec, NaturalTransformation, Rule, SaturationConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::*;

const CONFIG: SaturationConfig = SaturationConfig {
    max_word_length: 8,
    max_classes: 400,
};

/// A finite random category, or `None` when the draw is infinite.
fn category(seed: u64) -> Option<Category> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_quiver(&mut rng, 4, 5, false);
    let rels = random_relations(&mut rng, &q, 2, 3);
    build_category(&q, &rels, CONFIG).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_and_unital(seed in any::<u64>()) {
        let Some(c) = category(seed) else { return Ok(()) };
        let ids: Vec<_> = c.class_ids().collect();
        for &f in &ids {
            let (x, y) = (c.dom(f).unwrap(), c.cod(f).unwrap());
            prop_assert_eq!(c.compose(f, c.identity(x).unwrap()).unwrap(), f);
            prop_assert_eq!(c.compose(c.identity(y).unwrap(), f).unwrap(), f);
            for &g in ids.iter().filter(|&&g| c.dom(g).unwrap() == y) {
                let gf = c.compose(g, f).unwrap();
                for &h in ids.iter().filter(|&&h| c.dom(h).unwrap() == c.cod(g).unwrap()) {
                    prop_assert_eq!(c.compose(h, gf).unwrap(), c.compose(c.compose(h, g).unwrap(), f).unwrap());
                }
            }
        }
    }

    #[test]
    fn spec_round_trips_through_json(seed in any::<u64>()) {
        let Some(c) = category(seed) else { return Ok(()) };
        let json = serde_json::to_string(&c.to_spec()).unwrap();
        let spec: CategorySpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&spec, &c.to_spec());
        let again = Category::from_spec(&spec, CONFIG).unwrap();
        prop_assert_eq!(again.morphisms(), c.morphisms());
    }

    #[test]
    fn dot_output_is_deterministic(seed in any::<u64>()) {
        let Some(c) = category(seed) else { return Ok(()) };
        let rebuilt = Category::from_spec(&c.to_spec(), CONFIG).unwrap();
        for mode in [DotMode::Full, DotMode::Reduced, DotMode::Simple] {
            prop_assert_eq!(category_dot(&c, mode), category_dot(&rebuilt, mode));
        }
        let edges = category_dot(&c, DotMode::Reduced).lines().filter(|l| l.contains("->")).count();
        prop_assert_eq!(edges, c.morphism_count());
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let Some(c) = category(seed) else { return Ok(()) };
        let d = c.dual().unwrap();
        prop_assert_eq!(d.morphism_count(), c.morphism_count());
        let dd = d.dual().unwrap();
        prop_assert_eq!(dd.morphisms(), c.morphisms());
        for f in c.class_ids() {
            let g = c.reverse_class(&d, f).unwrap();
            prop_assert_eq!(c.is_section(f).unwrap(), d.is_retraction(g).unwrap());
            prop_assert_eq!(c.is_isomorphism(f).unwrap(), d.is_isomorphism(g).unwrap());
        }
    }

    #[test]
    fn isomorphisms_are_sections_and_retractions(seed in any::<u64>()) {
        let Some(c) = category(seed) else { return Ok(()) };
        for f in c.class_ids() {
            let iso = c.is_isomorphism(f).unwrap();
            prop_assert_eq!(iso, c.is_section(f).unwrap() && c.is_retraction(f).unwrap());
            if iso {
                prop_assert!(c.is_bimorphism(f).unwrap());
            }
            if c.is_zero_morphism(f).unwrap() {
                prop_assert!(c.is_constant(f).unwrap() && c.is_coconstant(f).unwrap());
            }
        }
    }

    #[test]
    fn identity_functor_and_transformation(seed in any::<u64>()) {
        let Some(c) = category(seed) else { return Ok(()) };
        let f = Functor::build(c.clone(), FunctorSpec::identity(&c)).unwrap();
        prop_assert!(f.validate_functoriality().unwrap());
        prop_assert!(f.is_identity() && f.fully_faithful() && f.bijective_on_objects());
        prop_assert!(f.is_discrete_fibration().unwrap());
        let eta = NaturalTransformation::identity(&f).unwrap();
        prop_assert!(eta.is_natural_isomorphism().unwrap());
        prop_assert!(eta.all_squares_commute().unwrap());
    }

    #[test]
    fn forcing_commutativity_succeeds_on_acyclic_quivers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, 4, 4, true);
        let c = build_category(&q, &[], CONFIG).unwrap();
        let fs = c.force_commute().unwrap();
        prop_assert!(fs.apply(&c).unwrap().is_commutative());
        prop_assert_eq!(fs.is_empty(), c.is_commutative());
    }

    #[test]
    fn matches_are_injective_embeddings(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_graph(&mut rng, 3, 3, &["a", "b"]);
        let g = random_graph(&mut rng, 5, 6, &["a", "b"]);
        let rule = Rule::from_spec(&fincat::RuleSpec {
            lhs: l.clone(),
            interface: fincat::GraphInstance::new(),
            rhs: fincat::GraphInstance::new(),
            l: None,
            r: None,
        })
        .unwrap();
        let matches = rule.find_matches(&g);
        let mut sorted = matches.clone();
        sorted.sort_by(|a, b| a.node_map.iter().cmp(b.node_map.iter()).then(a.edge_map.iter().cmp(b.edge_map.iter())));
        prop_assert_eq!(&sorted, &matches);
        for m in &matches {
            prop_assert!(m.validate(&l, &g, true).is_ok());
        }
        prop_assert_eq!(graph_dot(&g), graph_dot(&g.clone()));
    }

    #[test]
    fn rule_inverse_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_graph(&mut rng, 3, 2, &["a"]);
        let k = fincat::GraphInstance { nodes: l.nodes.clone(), edges: Default::default() };
        let rule = Rule::from_spec(&fincat::RuleSpec { lhs: l, interface: k.clone(), rhs: k, l: None, r: None }).unwrap();
        prop_assert_eq!(rule.inverse().inverse(), rule.clone());
        let json = serde_json::to_string(&rule.to_spec()).unwrap();
        let back = Rule::from_spec(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, rule);
    }
}
