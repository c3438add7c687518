mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{class_weights, conserves};
use flowforge::harness::{generate_instance, sweep, Base, GeneratorConfig, Instance, SweepOptions, WeightPolicy};
use flowforge::search::DEFAULT_BUDGET;
use flowforge::{
    cycle_basis, enumerate_class_oracle, from_integer_4flow, lift, minimize_zero_weight, nowhere_zero_flow,
    parse_document, permute_values, pigeonhole_shift, pullback, to_integer_4flow, write_quadruple, Quadruple,
    SearchOptions, ValuePermutation, Z2Z2Flow, Z2Z2,
};

fn small_config(seed: u64) -> GeneratorConfig {
    GeneratorConfig {
        seed,
        circuit_len: 3..=9,
        extra_vertices: 0..=2,
        chords: 0..=4,
        max_dimension: 6,
        weights: WeightPolicy::Bounded(4),
        ..GeneratorConfig::default()
    }
}

fn instance(seed: u64, id: u64) -> Option<Quadruple> {
    match generate_instance(&small_config(seed), id) {
        Instance::Generated { quadruple, .. } => Some(quadruple),
        Instance::Exhausted { .. } => None,
    }
}

fn random_flow(q: &Quadruple, salt: u64) -> Z2Z2Flow {
    let mut rng = ChaCha8Rng::seed_from_u64(salt);
    let g = q.graph();
    let mut f = Z2Z2Flow::zero(g.edge_count());
    for row in &cycle_basis(g).rows {
        f.add_on(row, Z2Z2::from_code(rng.gen_range(0..4)));
    }
    f
}

fn members(q: &Quadruple) -> Vec<Z2Z2Flow> {
    enumerate_class_oracle(q, DEFAULT_BUDGET).unwrap().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generated_instances_are_valid(seed in any::<u64>(), id in 0u64..1000) {
        if let Some(q) = instance(seed, id) {
            prop_assert!(conserves(q.graph(), q.flow()));
            prop_assert!(q.off_circuit().iter().all(|p| !q.flow().get(p).is_zero()));
            prop_assert!(q.cycle_space_dimension() <= 6);
            prop_assert_eq!(generate_instance(&small_config(seed), id), Instance::Generated { id, quadruple: q });
        }
    }

    #[test]
    fn branch_and_bound_matches_oracle(seed in any::<u64>(), id in 0u64..1000) {
        if let Some(q) = instance(seed, id) {
            let fast = minimize_zero_weight(&q, &SearchOptions::default()).unwrap();
            let slow = minimize_zero_weight(&q, &SearchOptions::oracle()).unwrap();
            prop_assert_eq!(fast.minimum_zero_weight, slow.minimum_zero_weight);
            prop_assert_eq!(&fast.witness, &slow.witness);
            prop_assert!(q.is_member(&fast.witness));
            let brute = members(&q).iter().map(|g| q.zero_weight(g)).min().unwrap();
            prop_assert_eq!(fast.minimum_zero_weight, brute);
        }
    }

    #[test]
    fn class_is_independent_of_the_representative(seed in any::<u64>(), id in 0u64..1000, pick in any::<prop::sample::Index>()) {
        if let Some(q) = instance(seed, id) {
            let all = members(&q);
            let other = q.with_flow(pick.get(&all).clone()).unwrap();
            let mut a = all.iter().map(|f| f.values()).collect::<Vec<_>>();
            let mut b = members(&other).iter().map(|f| f.values()).collect::<Vec<_>>();
            a.sort_by_key(|v| v.iter().map(|x| x.code()).collect::<Vec<_>>());
            b.sort_by_key(|v| v.iter().map(|x| x.code()).collect::<Vec<_>>());
            prop_assert_eq!(a, b);
            let opts = SearchOptions::default();
            prop_assert_eq!(
                minimize_zero_weight(&q, &opts).unwrap().witness,
                minimize_zero_weight(&other, &opts).unwrap().witness
            );
        }
    }

    #[test]
    fn permutations_keep_validity_and_support(seed in any::<u64>(), id in 0u64..1000, salt in any::<u64>()) {
        if let Some(q) = instance(seed, id) {
            let f = random_flow(&q, salt);
            for s in ValuePermutation::all() {
                let h = permute_values(&f, s);
                prop_assert!(conserves(q.graph(), &h));
                prop_assert_eq!(h.support(), f.support());
                prop_assert_eq!(permute_values(&h, s.inverse()), f.clone());
            }
        }
    }

    #[test]
    fn pigeonhole_reaches_the_lightest_class(seed in any::<u64>(), id in 0u64..1000, salt in any::<u64>()) {
        if let Some(q) = instance(seed, id) {
            let f = random_flow(&q, salt);
            let w = q.weights().as_slice();
            let least = *class_weights(q.circuit(), w, &f).iter().min().unwrap();
            prop_assert!(4 * least <= q.circuit_weight());
            let h = pigeonhole_shift(&f, q.circuit(), q.weights());
            prop_assert!(conserves(q.graph(), &h));
            prop_assert_eq!(class_weights(q.circuit(), w, &h)[0], least);
            let off = q.off_circuit();
            prop_assert_eq!(off.and(&h.support()), off.and(&f.support()));
        }
    }

    #[test]
    fn lifting_preserves_weight_and_pulls_back(seed in any::<u64>(), id in 0u64..1000, pick in any::<prop::sample::Index>(), back in any::<prop::sample::Index>()) {
        let Some(q) = instance(seed, id) else { return Ok(()) };
        let c = q.circuit();
        let n = c.len() as isize;
        let g = pick.get(&members(&q)).clone();
        let Some(i) = (0..n).find(|&i| g.get(c.edge_at(i)) == g.get(c.edge_at(i + 1))) else { return Ok(()) };
        let graph = q.graph();
        let (star, record) = lift(&q, &g, graph.id(c.edge_at(i)), graph.id(c.edge_at(i + 1))).unwrap();
        prop_assert_eq!(star.circuit_weight(), q.circuit_weight());
        prop_assert_eq!(star.graph().edge_count() + 1, graph.edge_count());
        prop_assert!(conserves(star.graph(), star.flow()));
        let h = back.get(&members(&star)).clone();
        let up = pullback(graph, star.graph(), &record, &h).unwrap();
        prop_assert!(q.is_member(&up));
        prop_assert_eq!(q.zero_weight(&up), star.zero_weight(&h));
    }

    #[test]
    fn integer_conversion_round_trips(seed in any::<u64>(), id in 0u64..1000) {
        if let Some(q) = instance(seed, id) {
            if let Some(f) = nowhere_zero_flow(q.graph(), 1) {
                let h = to_integer_4flow(q.graph(), &f).unwrap();
                prop_assert!(h.is_k_flow(q.graph().vertex_count(), 4));
                prop_assert!(h.value.iter().all(|v| *v != 0));
                prop_assert_eq!(from_integer_4flow(q.graph(), &h).unwrap(), f);
            }
        }
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>(), id in 0u64..1000) {
        if let Some(q) = instance(seed, id) {
            let text = write_quadruple("p", &q);
            let back = parse_document(&text).unwrap().into_quadruple().unwrap();
            prop_assert_eq!(&back, &q);
            prop_assert_eq!(write_quadruple("p", &back), text);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sweep_accounts_for_every_instance(seed in any::<u64>(), count in 1u64..60, petersen in any::<bool>()) {
        let cfg = GeneratorConfig {
            seed,
            count,
            base: if petersen { Base::Petersen } else { Base::Circuit },
            ..GeneratorConfig::default()
        };
        let mut out = Vec::new();
        let s = sweep(&cfg, &SweepOptions::default(), &mut out).unwrap();
        prop_assert_eq!(s.processed(), count);
        prop_assert_eq!(s.counterexamples, 0);
        let text = String::from_utf8(out).unwrap();
        prop_assert_eq!(text.lines().count() as u64, count + 1);
        for line in text.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            if cols[11] == "holds" {
                let min: u64 = cols[7].parse().unwrap();
                let w: u64 = cols[5].parse().unwrap();
                prop_assert!(4 * min < w);
            }
        }
    }
}
