use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superfiltr::grassmann::{
    cohomology_dims, homology_dims, random_module, resolve, tor_dims_direct, validate_module, ESuperModule,
    RandomModuleParams,
};

fn module(seed: u64, p: u64) -> ESuperModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_module(
        &mut rng,
        RandomModuleParams {
            p,
            ..Default::default()
        },
    )
}

fn primes() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5u64), Just(7u64)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_modules_validate(seed in any::<u64>(), p in primes()) {
        let m = module(seed, p);
        prop_assert!(validate_module(m.p(), m.parity(), m.actions(), None).is_ok());
        prop_assert!(m.dim() <= 16 && m.generators() <= 4);
    }

    #[test]
    fn free_iff_injective(seed in any::<u64>(), p in primes()) {
        let m = module(seed, p);
        prop_assert_eq!(m.is_free(), m.is_injective());
        prop_assert_eq!(m.is_free(), m.transpose_dual().is_injective());
    }

    #[test]
    fn first_cohomology_detects_injectivity(seed in any::<u64>(), p in primes()) {
        let m = module(seed, p);
        let h = cohomology_dims(&m, 1);
        prop_assert_eq!(m.is_injective(), h[1] == 0);
        prop_assert_eq!(h[0], m.socle_dim());
        let hh = homology_dims(&m, 1);
        prop_assert_eq!(m.is_free(), hh[1] == 0);
    }

    #[test]
    fn homology_by_duality_matches_tor(seed in any::<u64>(), p in primes()) {
        let m = module(seed, p);
        prop_assert_eq!(homology_dims(&m, 2), tor_dims_direct(&m, 2));
    }

    #[test]
    fn resolutions_are_complexes(seed in any::<u64>()) {
        let m = module(seed, 3);
        let res = resolve(&m, 2);
        for k in 1..res.steps().len() {
            let prod = res.steps()[k - 1].differential.mul(&res.steps()[k].differential);
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn dual_preserves_dimension_data(seed in any::<u64>(), p in primes()) {
        let m = module(seed, p);
        let d = m.transpose_dual();
        prop_assert_eq!(d.dim(), m.dim());
        prop_assert_eq!(d.parity_counts(), m.parity_counts());
        prop_assert_eq!(d.transpose_dual().socle_dim(), m.socle_dim());
    }

    #[test]
    fn parity_shift_is_harmless(seed in any::<u64>()) {
        let m = module(seed, 5);
        let s = m.parity_shift();
        prop_assert_eq!(s.parity_shift(), m.clone());
        prop_assert_eq!(s.is_free(), m.is_free());
        prop_assert_eq!(s.socle_dim(), m.socle_dim());
        prop_assert_eq!(cohomology_dims(&s, 1), cohomology_dims(&m, 1));
    }
}

/// Brute-force ranks of the minimal resolution of the trivial module: the
/// number of degree-k monomials in N commuting variables.
#[test]
fn trivial_resolution_ranks_against_brute_force() {
    for n in 1..=3usize {
        let k = ESuperModule::trivial(n, 3, vec![0]).unwrap();
        let ranks = resolve(&k, 3).ranks();
        for (deg, &r) in ranks.iter().enumerate() {
            let mut count = 0;
            let mut exps = vec![0usize; n];
            // enumerate exponent vectors with entries ≤ deg
            loop {
                if exps.iter().sum::<usize>() == deg {
                    count += 1;
                }
                let mut a = 0;
                while a < n {
                    exps[a] += 1;
                    if exps[a] <= deg {
                        break;
                    }
                    exps[a] = 0;
                    a += 1;
                }
                if a == n {
                    break;
                }
            }
            assert_eq!(r, count, "N = {n}, degree {deg}");
        }
    }
}
