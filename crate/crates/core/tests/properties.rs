//! Algebraic invariants on seeded random inputs.

use ncinvert::commutative::abelianize;
use ncinvert::freealg::{FormalMap, NCSeries};
use ncinvert::inversion::{
    charp_lift_n_sequence, invert_charp_direct, invert_fixed_point, invert_recurrent,
    n_seq_recurrent, LiftOptions,
};
use ncinvert::random::Sampler;
use ncinvert::rings::{IntPolyRing, LiftKey, PrimeField, Rationals, Ring, TQuotient};
use ncinvert::trees::invert_tree;
use proptest::prelude::*;

fn combination<R: Ring>(ring: &R, basis: &[R::Elem], s: &mut Sampler) -> R::Elem {
    let mut acc = ring.zero();
    for b in basis {
        if s.range(0, 2) > 0 {
            acc = ring.add(&acc, &ring.mul(b, &ring.from_i64(s.int(-6, 6))));
        }
    }
    acc
}

fn axioms<R: Ring>(ring: &R, basis: &[R::Elem], seed: u64) -> bool {
    let mut s = Sampler::new(seed);
    let [a, b, c] = [0, 1, 2].map(|_| combination(ring, basis, &mut s));
    let assoc = ring.add(&ring.add(&a, &b), &c) == ring.add(&a, &ring.add(&b, &c));
    let mul_assoc = ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c));
    let distrib = ring.mul(&a, &ring.add(&b, &c)) == ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c));
    let comm = ring.add(&a, &b) == ring.add(&b, &a) && ring.mul(&a, &b) == ring.mul(&b, &a);
    let neg = ring.is_zero(&ring.add(&a, &ring.neg(&a)));
    let one = ring.mul(&a, &ring.one()) == a;
    assoc && mul_assoc && distrib && comm && neg && one
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let q = Rationals;
        let halves: Vec<_> = (1..4).map(|d| q.div_by_int(&q.one(), d).unwrap()).collect();
        prop_assert!(axioms(&q, &halves, seed));
        for p in [2, 3, 5, 101] {
            let gf = PrimeField::new(p).unwrap();
            prop_assert!(axioms(&gf, &[gf.one(), gf.from_i64(2)], seed));
        }
        let tq = TQuotient::new(Rationals, 3);
        let powers: Vec<_> = (0..4).map(|j| tq.t_power(j)).collect();
        prop_assert!(axioms(&tq, &powers, seed));
        let mut ip = IntPolyRing::new();
        let ids: Vec<_> = (0..3u8)
            .map(|i| ip.intern(LiftKey { component: 0, word: vec![i] }))
            .collect();
        let mut monos: Vec<_> = ids.iter().map(|&v| ip.var(v)).collect();
        monos.push(ip.mul(&monos[0], &monos[1]));
        monos.push(ip.one());
        prop_assert!(axioms(&ip, &monos, seed));
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), n in 1usize..=3) {
        let d = 6;
        let mut s = Sampler::new(seed);
        let delta = s.derivation(&Rationals, n, d);
        let f = s.series(&Rationals, n, d, 0, 3, 4);
        let g = s.series(&Rationals, n, d, 0, 3, 4);
        let lhs = delta.apply(&(&f * &g)).unwrap();
        let rhs = &(&delta.apply(&f).unwrap() * &g) + &(&f * &delta.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>(), n in 1usize..=3) {
        let d = 5;
        let mut s = Sampler::new(seed);
        let f = FormalMap::from_h(s.h(&Rationals, n, d, 3)).unwrap();
        let g = FormalMap::from_h(s.h(&Rationals, n, d, 3)).unwrap();
        let u = s.series(&Rationals, n, d, 0, 4, 5);
        let left = g.substitute(&f.substitute(&u).unwrap()).unwrap();
        let right = f.compose(&g).unwrap().substitute(&u).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn abelianization_is_a_homomorphism(seed in any::<u64>(), n in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let a = s.series(&Rationals, n, 6, 0, 3, 5);
        let b = s.series(&Rationals, n, 6, 0, 3, 5);
        prop_assert_eq!(abelianize(&(&a * &b)), &abelianize(&a) * &abelianize(&b));
        prop_assert_eq!(abelianize(&(&a + &b)), &abelianize(&a) + &abelianize(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn char0_engines_agree(seed in any::<u64>(), n in 1usize..=3, d in 2usize..=6) {
        let h = Sampler::new(seed).h(&Rationals, n, d, 3);
        let g = invert_fixed_point(&h).unwrap();
        prop_assert_eq!(&invert_recurrent(&h).unwrap(), &g);
        prop_assert_eq!(&invert_tree(&h).unwrap(), &g);
        prop_assert!(n_seq_recurrent(&h).unwrap().satisfies_order_bound());
    }

    #[test]
    fn charp_engines_agree(seed in any::<u64>(), n in 1usize..=2, p in prop::sample::select(vec![2u64, 3, 5])) {
        let gf = PrimeField::new(p).unwrap();
        let h = Sampler::new(seed).h(&gf, n, 6, 3);
        let direct = invert_charp_direct(&h).unwrap();
        prop_assert_eq!(&charp_lift_n_sequence(&h, LiftOptions::default()).unwrap(), &direct);
        let ints = LiftOptions { integer_representatives: true };
        prop_assert_eq!(&charp_lift_n_sequence(&h, ints).unwrap(), &direct);
        prop_assert_eq!(direct.assemble(&1), invert_fixed_point(&h).unwrap());
    }
}

#[test]
fn series_json_round_trips() {
    let mut s = Sampler::new(4);
    let a: NCSeries<Rationals> = s.series(&Rationals, 3, 5, 0, 5, 8);
    let text = serde_json::to_string(&a.to_json()).unwrap();
    let back = NCSeries::from_json(Rationals, &serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(a, back);
}
