use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use superfiltr::characters::{
    ch_ev, ch_induced, decompose_good, dim_of, odd_factor, twist, verify_translation_identity, Character,
    FiltrationBasis,
};
use superfiltr::{BlockShape, Weight};

/// Complete homogeneous symmetric polynomial h_k in the variables `vars`
/// (indices into the full exponent vector).
fn complete_homogeneous(shape: BlockShape, vars: &[usize], k: i64) -> Character {
    if k < 0 {
        return Character::zero(shape);
    }
    let mut out = Character::zero(shape);
    fn go(vars: &[usize], k: i64, exp: &mut Vec<i64>, shape: BlockShape, out: &mut Character) {
        if vars.len() == 1 {
            exp[vars[0]] = k;
            let w = Weight::new(shape, exp.clone()).unwrap();
            *out = out.add(&Character::monomial(&w, BigInt::one())).unwrap();
            exp[vars[0]] = 0;
            return;
        }
        for a in 0..=k {
            exp[vars[0]] = a;
            go(&vars[1..], k - a, exp, shape, out);
        }
        exp[vars[0]] = 0;
    }
    go(vars, k, &mut vec![0; shape.rank()], shape, &mut out);
    out
}

/// Jacobi–Trudi: s_λ = det(h_{λ_i - i + j}) for a partition λ.
fn jacobi_trudi(shape: BlockShape, vars: &[usize], lambda: &[i64]) -> Character {
    let l = lambda.len();
    let entries: Vec<Vec<Character>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| complete_homogeneous(shape, vars, lambda[i] - i as i64 + j as i64))
                .collect()
        })
        .collect();
    fn det(shape: BlockShape, m: &[Vec<Character>], cols: &[usize]) -> Character {
        let row = m.len() - cols.len();
        if cols.is_empty() {
            return Character::one(shape);
        }
        let mut acc = Character::zero(shape);
        for (t, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = m[row][c].mul(&det(shape, m, &rest)).unwrap();
            acc = if t % 2 == 0 {
                acc.add(&term).unwrap()
            } else {
                acc.sub(&term).unwrap()
            };
        }
        acc
    }
    let cols: Vec<usize> = (0..l).collect();
    det(shape, &entries, &cols)
}

fn oracle_ch_ev(lambda: &Weight) -> Character {
    let shape = lambda.shape();
    let (m, n) = (shape.m(), shape.n());
    let even = lambda.even_block();
    let odd = lambda.odd_block();
    let (e_min, o_min) = (even[m - 1], odd[n - 1]);
    let even_part: Vec<i64> = even.iter().map(|x| x - e_min).collect();
    let odd_part: Vec<i64> = odd.iter().map(|x| x - o_min).collect();
    let mut shift = vec![e_min; m];
    shift.extend(std::iter::repeat_n(o_min, n));
    let even_vars: Vec<usize> = (0..m).collect();
    let odd_vars: Vec<usize> = (m..m + n).collect();
    let prod = jacobi_trudi(shape, &even_vars, &even_part)
        .mul(&jacobi_trudi(shape, &odd_vars, &odd_part))
        .unwrap();
    prod.mul(&Character::monomial(&Weight::new(shape, shift).unwrap(), BigInt::one()))
        .unwrap()
}

fn shapes() -> impl Strategy<Value = BlockShape> {
    (1usize..=3, 1usize..=2, prop_oneof![Just(3u64), Just(5u64)])
        .prop_map(|(m, n, p)| BlockShape::new(m, n, p).unwrap())
}

fn dominant(shape: BlockShape, lo: i64, hi: i64) -> impl Strategy<Value = Weight> {
    (
        prop::collection::vec(lo..=hi, shape.m()),
        prop::collection::vec(lo..=hi, shape.n()),
    )
        .prop_map(move |(mut e, mut o)| {
            e.sort_unstable_by(|a, b| b.cmp(a));
            o.sort_unstable_by(|a, b| b.cmp(a));
            Weight::from_blocks(shape, &e, &o).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn even_character_matches_jacobi_trudi(lambda in shapes().prop_flat_map(|s| dominant(s, -2, 3))) {
        prop_assert_eq!(ch_ev(&lambda).unwrap(), oracle_ch_ev(&lambda));
    }

    #[test]
    fn dimension_identity(lambda in shapes().prop_flat_map(|s| dominant(s, -3, 4))) {
        let shape = lambda.shape();
        let factor = BigInt::from(1u64 << shape.odd_root_count());
        prop_assert_eq!(dim_of(&ch_induced(&lambda).unwrap()), factor * dim_of(&ch_ev(&lambda).unwrap()));
    }

    #[test]
    fn even_character_is_symmetric_within_blocks(lambda in shapes().prop_flat_map(|s| dominant(s, -2, 3))) {
        let shape = lambda.shape();
        let ch = ch_ev(&lambda).unwrap();
        let mut perm: Vec<usize> = (0..shape.rank()).collect();
        if shape.m() >= 2 {
            perm.swap(0, 1);
        }
        if shape.n() >= 2 {
            perm.swap(shape.m(), shape.m() + 1);
        }
        prop_assert_eq!(ch.permute_variables(&perm), ch);
    }

    #[test]
    fn twists_compose(lambda in shapes().prop_flat_map(|s| dominant(s, -2, 2))) {
        let ch = ch_induced(&lambda).unwrap();
        prop_assert_eq!(twist(&twist(&ch, 1).unwrap(), 1).unwrap(), twist(&ch, 2).unwrap());
        prop_assert_eq!(dim_of(&twist(&ch, 1).unwrap()), dim_of(&ch));
    }

    #[test]
    fn decomposition_recovers_combinations(
        (a, b) in shapes().prop_flat_map(|s| (dominant(s, -2, 3), dominant(s, -2, 3))),
        ca in 1i64..=3,
        cb in 0i64..=2,
    ) {
        let ch = ch_induced(&a).unwrap().scale(&BigInt::from(ca))
            .add(&ch_induced(&b).unwrap().scale(&BigInt::from(cb))).unwrap();
        let d = decompose_good(&ch, FiltrationBasis::Induced).unwrap();
        let mut expected = std::collections::BTreeMap::new();
        *expected.entry(a).or_insert_with(BigInt::zero) += ca;
        *expected.entry(b).or_insert_with(BigInt::zero) += cb;
        expected.retain(|_, c: &mut BigInt| !c.is_zero());
        prop_assert_eq!(d.multiplicities, expected);
    }

    #[test]
    fn translation_identity_holds(
        lambda in shapes().prop_flat_map(|s| dominant(s, 0, 2)),
        s in -3i64..=3,
        t in -3i64..=3,
    ) {
        prop_assert!(verify_translation_identity(lambda.shape(), 1, s, t, &lambda).unwrap());
    }
}

#[test]
fn odd_factor_dimension() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)] {
        let shape = BlockShape::new(m, n, 3).unwrap();
        assert_eq!(dim_of(&odd_factor(shape)), BigInt::from(1u64 << (m * n)));
    }
}
