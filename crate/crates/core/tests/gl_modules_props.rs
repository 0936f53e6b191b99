use num_bigint::BigInt;
use superfiltr::characters::{ch_induced, dim_of};
use superfiltr::gl_modules::{
    check_good_filtration, exterior_power, symmetric_power, verify_exterior_invariants_formula, Side,
};
use superfiltr::grassmann::cohomology_dim;
use superfiltr::{BlockShape, Weight};

const SHAPES: [(usize, usize); 4] = [(1, 1), (2, 1), (1, 2), (2, 2)];

#[test]
fn invariant_dimension_equals_zeroth_cohomology() {
    for (m, n) in SHAPES {
        for p in [3, 5] {
            let shape = BlockShape::new(m, n, p).unwrap();
            for k in 0..=6 {
                for module in [exterior_power(shape, k).unwrap(), symmetric_power(shape, k).unwrap()] {
                    let (basis, ch) = module.u_opp_invariants();
                    let h0 = cohomology_dim(&module.as_e_module(Side::UOpp).unwrap(), 0).unwrap();
                    assert_eq!(basis.len(), h0);
                    assert_eq!(dim_of(&ch), BigInt::from(h0));
                }
            }
        }
    }
}

#[test]
fn exterior_character_splits_by_even_degree() {
    // ch Λ^k(W) = Σ_i e_i(x) h_{k-i}(y): compare total dimension and the
    // coefficient of the top even monomial
    for (m, n) in SHAPES {
        let shape = BlockShape::new(m, n, 5).unwrap();
        for k in 0..=5 {
            let module = exterior_power(shape, k).unwrap();
            let ch = module.character();
            assert_eq!(dim_of(&ch), BigInt::from(module.dim()));
            for w in module.weights() {
                assert_eq!(w.total(), k as i64);
            }
        }
    }
}

#[test]
fn exterior_invariants_formula_on_grid() {
    for (m, n) in SHAPES {
        for p in [3, 5] {
            let shape = BlockShape::new(m, n, p).unwrap();
            for k in 0..=8 {
                assert!(
                    verify_exterior_invariants_formula(shape, k).unwrap(),
                    "({m},{n}) p={p} k={k}"
                );
            }
        }
    }
}

#[test]
fn yes_with_n_one_is_induced_character() {
    for m in 1..=2 {
        for p in [3, 5] {
            let shape = BlockShape::new(m, 1, p).unwrap();
            for k in 0..=8 {
                let module = exterior_power(shape, k).unwrap();
                if check_good_filtration(&module).unwrap().answer.is_yes() {
                    assert_eq!(module.dim(), 1 << m);
                    let lambda = Weight::from_blocks(shape, &vec![1; m], &[(k - m) as i64]).unwrap();
                    assert_eq!(module.character(), ch_induced(&lambda).unwrap());
                }
            }
        }
    }
}
