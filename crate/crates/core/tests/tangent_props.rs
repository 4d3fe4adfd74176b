mod common;

use common::strategies::diffop;
use logdiff::arrangement::{builtin, saito_check, Fixture};
use logdiff::parse::VarStyle;
use logdiff::sample::{random_diffop_of_order, random_nonzero_poly, random_word_combination, PolyShape};
use logdiff::tangent::{
    is_tangent, is_tangent_q, q_partials, tangency_report, transport, DecomposeOptions, Decomposer, DeltaRepr,
    DeltaWordRecord,
};
use logdiff::weyl::iterated_commutator;
use logdiff::{Degree, Derivation, DiffOp};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn free_fixture() -> impl Strategy<Value = Fixture> {
    prop::sample::select(vec!["boolean1", "boolean2", "boolean3", "triple2", "quad2"]).prop_map(|n| builtin(n).unwrap())
}

fn basis_ops(fx: &Fixture) -> Vec<DiffOp> {
    fx.basis.as_ref().unwrap().iter().map(Derivation::to_diffop).collect()
}

fn decomposer(fx: &Fixture) -> Decomposer {
    let b = saito_check(&fx.arrangement, fx.basis.as_ref().unwrap()).unwrap();
    Decomposer::new(&fx.arrangement, &b, &fx.arrangement.coordinates()).unwrap()
}

const SHAPE: PolyShape = PolyShape { max_degree: 2, max_terms: 2, coeff_bound: 3 };

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decompose_then_reassemble(fx in free_fixture(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = basis_ops(&fx);
        let max_len = if fx.arrangement.dim() == 3 { 2 } else { 3 };
        let (_, u) = random_word_combination(&mut rng, &gens, max_len, 3, SHAPE);
        let r = decomposer(&fx).decompose(&u, DecomposeOptions::default()).unwrap();
        prop_assert_eq!(r.reassemble(), u.clone());
        // only basis words, no longer than the order
        prop_assert_eq!(r.generators(), &gens[..]);
        let order = u.order().finite().unwrap_or(0) as usize;
        for w in r.words() {
            prop_assert!(w.word.len() <= order);
            prop_assert!(w.word.iter().all(|&i| (1..=gens.len()).contains(&i)));
            prop_assert!(w.word.windows(2).all(|p| p[0] <= p[1]));
        }
    }

    #[test]
    fn decomposition_is_unique_on_words(fx in free_fixture(), seed in any::<u64>()) {
        // the sorted words in a basis are left S-independent, so decomposing a
        // combination recovers it
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = basis_ops(&fx);
        let (repr, u) = random_word_combination(&mut rng, &gens, 2, 3, SHAPE);
        let r = decomposer(&fx).decompose(&u, DecomposeOptions::default()).unwrap();
        prop_assert_eq!(r.words(), repr.words());
    }

    #[test]
    fn commutators_with_forms_gain_divisibility(fx in free_fixture(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = fx.arrangement.dim();
        let gens = basis_ops(&fx);
        let (_, u) = random_word_combination(&mut rng, &gens, 2, 2, SHAPE);
        let i = rng.gen_range(0..fx.arrangement.len());
        let alpha = fx.arrangement.form_polys()[i].clone();
        let q = rng.gen_range(1..=2u32);
        let mut fs = vec![alpha.clone(); q as usize];
        for _ in 0..rng.gen_range(0..=1) {
            fs.push(random_nonzero_poly(&mut rng, l, SHAPE));
        }
        let v = iterated_commutator(&u, &fs).value_at_one();
        prop_assert!(logdiff::poly::divides_power(&alpha, q, &v).unwrap());
    }

    #[test]
    fn two_tangency_tests_agree(
        (fx, u) in free_fixture().prop_flat_map(|fx| {
            let l = fx.arrangement.dim();
            (Just(fx), diffop(l, 2, 2, 3))
        }),
        t in 1u32..=3,
    ) {
        prop_assert_eq!(is_tangent(&u, &fx.arrangement, t).unwrap(), is_tangent_q(&u, &fx.arrangement, t).unwrap());
    }

    #[test]
    fn words_in_tangent_derivations_are_tangent(fx in free_fixture(), seed in any::<u64>(), t in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, u) = random_word_combination(&mut rng, &basis_ops(&fx), 2, 2, SHAPE);
        prop_assert!(tangency_report(&u, &fx.arrangement, t).unwrap().passed());
        let (_, w) = random_word_combination(&mut rng, &q_partials(&fx.arrangement), 2, 2, SHAPE);
        prop_assert!(is_tangent(&w, &fx.arrangement, t).unwrap());
    }

    #[test]
    fn transport_reassembles(fx in free_fixture(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = fx.arrangement.dim();
        let p = rng.gen_range(0..=if l == 3 { 2 } else { 3 });
        let u = random_diffop_of_order(&mut rng, l, p, PolyShape::default());
        let r = transport(&u, &fx.arrangement).unwrap();
        let scale = fx.arrangement.defining_poly().pow(common::binom(p as usize + 1, 2));
        prop_assert_eq!(r.reassemble(), u.left_mul_poly(&scale));
    }

    #[test]
    fn records_round_trip_through_json(fx in free_fixture(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = basis_ops(&fx);
        let (repr, _) = random_word_combination(&mut rng, &gens, 3, 3, SHAPE);
        for style in [VarStyle::Indexed, VarStyle::Alias] {
            let json = serde_json::to_string(&repr.records(style)).unwrap();
            let back: Vec<DeltaWordRecord> = serde_json::from_str(&json).unwrap();
            let again = DeltaRepr::from_records(&back, gens.clone(), fx.arrangement.dim()).unwrap();
            prop_assert_eq!(&again, &repr);
        }
    }
}

#[test]
fn residual_orders_drop_level_by_level() {
    // decomposing the top layer alone leaves something of strictly lower order
    let fx = builtin("triple2").unwrap();
    let mut d = decomposer(&fx);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (_, u) = random_word_combination(&mut rng, &basis_ops(&fx), 3, 3, SHAPE);
        let r = d.decompose(&u, DecomposeOptions::default()).unwrap();
        let Degree::Finite(p) = u.order() else { continue };
        let top = DeltaRepr::new(
            r.words().iter().filter(|w| w.word.len() == p as usize).cloned().collect(),
            r.generators().to_vec(),
        );
        assert!((&u - &top.reassemble()).order() < Degree::Finite(p.max(1)) || p == 0);
    }
}
