use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superfiltr::supermatrix::random_invertible;
use superfiltr::SuperMatrix;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn berezinian_is_multiplicative(seed in any::<u64>(), m in 1usize..=2, n in 1usize..=2, s in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_invertible(&mut rng, m, n, s);
        let b = random_invertible(&mut rng, m, n, s);
        let lhs = a.multiply(&b).unwrap().berezinian().unwrap();
        prop_assert_eq!(lhs, a.berezinian().unwrap().mul(&b.berezinian().unwrap()));
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), m in 1usize..=2, n in 1usize..=2, s in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_invertible(&mut rng, m, n, s);
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.multiply(&inv).unwrap(), SuperMatrix::identity(m, n, s));
        prop_assert_eq!(inv.multiply(&a).unwrap(), SuperMatrix::identity(m, n, s));
        prop_assert_eq!(inv.berezinian().unwrap().mul(&a.berezinian().unwrap()).body().clone(), num_rational::BigRational::from_integer(1.into()));
    }

    #[test]
    fn body_commutes_with_berezinian(seed in any::<u64>(), m in 1usize..=2, n in 1usize..=2, s in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_invertible(&mut rng, m, n, s);
        prop_assert_eq!(a.body_only().berezinian().unwrap(), a.berezinian().unwrap().body_only());
    }
}
