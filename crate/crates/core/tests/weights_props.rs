use proptest::prelude::*;
use superfiltr::weights::{
    dominance_leq, is_steinberg_weight, marko_irreducible, root_cone_leq, steinberg_weight, theta_r,
};
use superfiltr::{BlockShape, Weight};

fn shapes() -> impl Strategy<Value = BlockShape> {
    (1usize..=2, 1usize..=2, prop_oneof![Just(3u64), Just(5u64)])
        .prop_map(|(m, n, p)| BlockShape::new(m, n, p).unwrap())
}

fn pair(shape: BlockShape) -> impl Strategy<Value = (Weight, Weight)> {
    let r = shape.rank();
    (prop::collection::vec(-4i64..=4, r), prop::collection::vec(-4i64..=4, r)).prop_map(move |(a, mut b)| {
        // equal totals half of the time, so both outcomes of the order occur
        if a[0] % 2 == 0 {
            let diff: i64 = a.iter().sum::<i64>() - b.iter().sum::<i64>();
            b[0] += diff;
        }
        (Weight::new(shape, a).unwrap(), Weight::new(shape, b).unwrap())
    })
}

proptest! {
    #[test]
    fn order_characterizations_agree((mu, lambda) in shapes().prop_flat_map(pair)) {
        let by_prefix = dominance_leq(&mu, &lambda).unwrap();
        let cert = root_cone_leq(&mu, &lambda).unwrap();
        prop_assert_eq!(by_prefix, cert.is_some());
        if let Some(c) = cert {
            prop_assert!(c.verify(&mu, &lambda));
        }
    }

    #[test]
    fn order_is_reflexive_and_antisymmetric((mu, lambda) in shapes().prop_flat_map(pair)) {
        prop_assert!(dominance_leq(&mu, &mu).unwrap());
        if dominance_leq(&mu, &lambda).unwrap() && dominance_leq(&lambda, &mu).unwrap() {
            prop_assert_eq!(mu, lambda);
        }
    }

    #[test]
    fn steinberg_criterion_matches_pairings(shape in shapes(), r in 1u32..=2, s in -3i64..=3, t in -3i64..=3) {
        let pi = steinberg_weight(shape, r, s, t).unwrap();
        prop_assert_eq!(is_steinberg_weight(shape, r, s, t).unwrap(), marko_irreducible(&pi).unwrap());
        // θ_r(0) is the Steinberg weight itself
        prop_assert_eq!(theta_r(&Weight::zero(shape), r, s, t).unwrap(), pi);
    }
}
