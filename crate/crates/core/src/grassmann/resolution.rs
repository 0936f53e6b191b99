//! Minimal free resolutions over `E_N` and the (co)homology dimensions
//! computed from them.

use crate::linalg::{mul_mod, FpMatrix, Subspace};

use super::{ESuperModule, GrassmannError};

/// Largest degree accepted by [`cohomology_dim`] and [`homology_dim`].
pub const DEFAULT_DEGREE_BOUND: usize = 3;

/// One term `P_k = E_N^{rank}` of a resolution with its differential
/// `P_k → P_{k-1}` (or the augmentation `P_0 → M` when `k = 0`).
///
/// Basis of `P_k`: index `i · 2^N + S` stands for `e_S · x_i` where `x_i` is
/// the `i`-th generator.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub rank: usize,
    pub parities: Vec<u8>,
    pub differential: FpMatrix,
}

#[derive(Clone, Debug)]
pub struct MinimalResolution {
    generators: usize,
    steps: Vec<ResolutionStep>,
}

impl MinimalResolution {
    pub fn steps(&self) -> &[ResolutionStep] {
        &self.steps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.rank).collect()
    }

    /// Coefficient of `e_S x_i` in the image of generator `j` of `P_k` under
    /// the differential into `P_{k-1}`.
    fn coefficient(&self, k: usize, i: usize, s: usize, j: usize) -> u64 {
        let block = 1 << self.generators;
        self.steps[k].differential.get(i * block + s, j * block)
    }
}

/// Homogeneous vectors that generate the graded submodule spanned by `basis`
/// modulo its radical.
fn minimal_generators(x: &ESuperModule, basis: &[Vec<u64>]) -> (Vec<Vec<u64>>, Vec<u8>) {
    let mut span = Subspace::new(x.dim(), x.p());
    for v in basis {
        for g in x.actions() {
            span.insert(&g.mul_vec(v));
        }
    }
    let mut gens = Vec::new();
    let mut parities = Vec::new();
    for v in basis {
        if span.insert(v) {
            parities.push(x.vector_parity(v).expect("kernel vectors are homogeneous"));
            gens.push(v.clone());
        }
    }
    (gens, parities)
}

/// Matrix of the map `E^r → X` sending the `j`-th generator to `gens[j]`.
fn cover_map(x: &ESuperModule, gens: &[Vec<u64>]) -> FpMatrix {
    let block = 1usize << x.generators();
    let mut m = FpMatrix::zeros(x.dim(), gens.len() * block, x.p());
    for (j, v) in gens.iter().enumerate() {
        for (s, img) in x.orbit(v).into_iter().enumerate() {
            for (i, val) in img.into_iter().enumerate() {
                if val != 0 {
                    m.set(i, j * block + s, val);
                }
            }
        }
    }
    m
}

/// Kernel of a parity-preserving map, as a homogeneous basis.
fn graded_kernel(map: &FpMatrix, col_parity: &[u8]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for par in 0..2u8 {
        let cols: Vec<usize> = (0..map.cols()).filter(|&c| col_parity[c] == par).collect();
        if cols.is_empty() {
            continue;
        }
        let rows: Vec<usize> = (0..map.rows()).collect();
        for v in map.select(&rows, &cols).nullspace() {
            let mut full = vec![0; map.cols()];
            for (&c, x) in cols.iter().zip(v) {
                full[c] = x;
            }
            out.push(full);
        }
    }
    out
}

/// Minimal free resolution of `m` through homological degree `degree`.
pub fn resolve(m: &ESuperModule, degree: usize) -> MinimalResolution {
    let n = m.generators();
    let p = m.p();
    let mut steps = Vec::with_capacity(degree + 1);
    let mut target = m.clone();
    let mut kernel: Vec<Vec<u64>> = (0..m.dim())
        .map(|i| {
            let mut e = vec![0; m.dim()];
            e[i] = 1;
            e
        })
        .collect();
    for k in 0..=degree {
        let (gens, parities) = minimal_generators(&target, &kernel);
        let differential = cover_map(&target, &gens);
        let source = ESuperModule::free(n, p, &parities).expect("validated algebra");
        if k < degree {
            kernel = graded_kernel(&differential, source.parity());
        }
        steps.push(ResolutionStep {
            rank: gens.len(),
            parities,
            differential,
        });
        target = source;
    }
    MinimalResolution { generators: n, steps }
}

fn trivial_resolution(n: usize, p: u64, degree: usize) -> MinimalResolution {
    let k = ESuperModule::trivial(n, p, vec![0]).expect("validated algebra");
    resolve(&k, degree)
}

/// Coboundary `Hom(P_k, M) → Hom(P_{k+1}, M)` with `Hom(P_k, M) ≅ M^{r_k}`.
fn coboundary(res: &MinimalResolution, k: usize, monomials: &[FpMatrix], dim: usize, p: u64) -> FpMatrix {
    let rk = res.steps[k].rank;
    let rk1 = res.steps[k + 1].rank;
    let mut delta = FpMatrix::zeros(rk1 * dim, rk * dim, p);
    for j in 0..rk1 {
        for i in 0..rk {
            for (s, gs) in monomials.iter().enumerate() {
                let c = res.coefficient(k + 1, i, s, j);
                if c == 0 {
                    continue;
                }
                for a in 0..dim {
                    for b in 0..dim {
                        let v = gs.get(a, b);
                        if v != 0 {
                            delta.add_at(j * dim + a, i * dim + b, mul_mod(c, v, p));
                        }
                    }
                }
            }
        }
    }
    delta
}

/// `dim H^k(E_N, M) = dim Ext^k(K, M)` for `k = 0..=bound`.
pub fn cohomology_dims(m: &ESuperModule, bound: usize) -> Vec<usize> {
    let res = trivial_resolution(m.generators(), m.p(), bound + 1);
    let monomials = m.monomial_actions();
    let d = m.dim();
    let ranks: Vec<usize> = (0..=bound)
        .map(|k| coboundary(&res, k, &monomials, d, m.p()).rank())
        .collect();
    (0..=bound)
        .map(|k| {
            let previous = if k == 0 { 0 } else { ranks[k - 1] };
            res.steps[k].rank * d - ranks[k] - previous
        })
        .collect()
}

pub fn cohomology_dim(m: &ESuperModule, k: usize) -> Result<usize, GrassmannError> {
    if k > DEFAULT_DEGREE_BOUND {
        return Err(GrassmannError::DegreeBound {
            requested: k,
            bound: DEFAULT_DEGREE_BOUND,
        });
    }
    Ok(cohomology_dims(m, k)[k])
}

/// `dim H_k(E_N, M)`, via cohomology of the dual module.
pub fn homology_dims(m: &ESuperModule, bound: usize) -> Vec<usize> {
    cohomology_dims(&m.transpose_dual(), bound)
}

pub fn homology_dim(m: &ESuperModule, k: usize) -> Result<usize, GrassmannError> {
    cohomology_dim(&m.transpose_dual(), k)
}

/// `dim Tor_k(K, M)` read off as the Betti numbers of a minimal resolution of `M`.
pub fn tor_dims_direct(m: &ESuperModule, bound: usize) -> Vec<usize> {
    resolve(m, bound).ranks()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn trivial_module_ranks_are_binomial() {
        for n in 1..=3 {
            let res = trivial_resolution(n, 3, 3);
            let expected: Vec<usize> = (0..=3).map(|k| binomial(n + k - 1, k)).collect();
            assert_eq!(res.ranks(), expected, "N = {n}");
        }
    }

    #[test]
    fn differentials_compose_to_zero() {
        let res = trivial_resolution(3, 5, 3);
        for k in 1..res.steps().len() {
            let prod = res.steps()[k - 1].differential.mul(&res.steps()[k].differential);
            assert!(prod.is_zero(), "d_{} d_{} != 0", k - 1, k);
        }
    }

    #[test]
    fn free_module_has_trivial_resolution() {
        let e = ESuperModule::free(2, 3, &[0, 1]).unwrap();
        assert_eq!(tor_dims_direct(&e, 2), vec![2, 0, 0]);
    }

    #[test]
    fn cohomology_examples() {
        let k1 = ESuperModule::trivial(1, 3, vec![0]).unwrap();
        assert_eq!(cohomology_dim(&k1, 1).unwrap(), 1);
        assert_eq!(cohomology_dim(&k1, 0).unwrap(), 1);
        assert_eq!(homology_dim(&k1, 1).unwrap(), 1);
        for n in 1..=3 {
            let e = ESuperModule::regular(n, 5).unwrap();
            assert_eq!(cohomology_dims(&e, 2), vec![1, 0, 0]);
            assert_eq!(homology_dims(&e, 2), vec![1, 0, 0]);
        }
        // Ext^k(K, K) over E_N is the polynomial ring in N variables
        let k3 = ESuperModule::trivial(3, 3, vec![0]).unwrap();
        assert_eq!(cohomology_dims(&k3, 3), vec![1, 3, 6, 10]);
        assert!(matches!(
            cohomology_dim(&k3, 4),
            Err(GrassmannError::DegreeBound { .. })
        ));
    }

    #[test]
    fn homology_matches_tor_on_small_modules() {
        let e2 = ESuperModule::regular(2, 3).unwrap();
        let soc = Subspace::spanned_by(4, 3, &e2.socle());
        let q = e2.quotient(&soc).unwrap();
        assert_eq!(homology_dims(&q, 2), tor_dims_direct(&q, 2));
        let k = ESuperModule::trivial(2, 3, vec![1]).unwrap();
        assert_eq!(homology_dims(&k, 2), tor_dims_direct(&k, 2));
    }

    #[test]
    fn euler_characteristic_of_free_module() {
        // free modules have H^0 = socle and nothing above
        let e = ESuperModule::free(3, 3, &[0, 1, 1]).unwrap();
        let dims = cohomology_dims(&e, 3);
        let euler: i64 = dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(euler, e.socle_dim() as i64);
    }
}
