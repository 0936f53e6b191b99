//! Random valid `E_N`-modules assembled from free modules, their graded
//! submodules and quotients, trivial modules and direct sums.

use rand::Rng;

use crate::linalg::FpMatrix;

use super::ESuperModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomModuleParams {
    pub max_generators: usize,
    pub max_dim: usize,
    pub p: u64,
}

impl Default for RandomModuleParams {
    fn default() -> Self {
        Self {
            max_generators: 4,
            max_dim: 16,
            p: 3,
        }
    }
}

/// A sparse random vector supported on basis vectors of one parity.
pub fn random_homogeneous_vector<R: Rng + ?Sized>(rng: &mut R, m: &ESuperModule) -> Vec<u64> {
    let par = rng.gen_range(0..2u8);
    let density = rng.gen_range(0.15..0.6);
    m.parity()
        .iter()
        .map(|&q| {
            if q == par && rng.gen_bool(density) {
                rng.gen_range(1..m.p())
            } else {
                0
            }
        })
        .collect()
}

fn random_parities<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

fn random_piece<R: Rng + ?Sized>(rng: &mut R, n: usize, p: u64, max_dim: usize) -> ESuperModule {
    let block = 1usize << n;
    loop {
        let kind = rng.gen_range(0..4);
        let candidate = match kind {
            0 if block <= max_dim => {
                let r = rng.gen_range(1..=max_dim / block);
                ESuperModule::free(n, p, &random_parities(rng, r)).expect("valid prime")
            }
            1 => {
                let r = rng.gen_range(1..=(2 * max_dim / block).max(1));
                let free = ESuperModule::free(n, p, &random_parities(rng, r)).expect("valid prime");
                let count = rng.gen_range(1..=3);
                let vs: Vec<Vec<u64>> = (0..count).map(|_| random_homogeneous_vector(rng, &free)).collect();
                let sub = free.generated_submodule(&vs).expect("matching length");
                free.quotient(&sub).expect("generated submodules are graded")
            }
            2 => {
                let r = rng.gen_range(1..=(2 * max_dim / block).max(1));
                let free = ESuperModule::free(n, p, &random_parities(rng, r)).expect("valid prime");
                let count = rng.gen_range(1..=2);
                let vs: Vec<Vec<u64>> = (0..count).map(|_| random_homogeneous_vector(rng, &free)).collect();
                let sub = free.generated_submodule(&vs).expect("matching length");
                free.submodule(&sub).expect("generated submodules are graded")
            }
            _ => {
                let d = rng.gen_range(1..=max_dim.min(3));
                ESuperModule::trivial(n, p, random_parities(rng, d)).expect("valid prime")
            }
        };
        if (1..=max_dim).contains(&candidate.dim()) {
            return candidate;
        }
    }
}

/// Parity-preserving random invertible change of basis.
fn random_even_automorphism<R: Rng + ?Sized>(rng: &mut R, m: &ESuperModule) -> Option<ESuperModule> {
    let d = m.dim();
    let p = m.p();
    let parity = m.parity();
    let b = FpMatrix::from_fn(d, d, p, |i, j| {
        if parity[i] != parity[j] {
            0
        } else if i == j {
            rng.gen_range(1..p)
        } else if rng.gen_bool(0.3) {
            rng.gen_range(0..p)
        } else {
            0
        }
    });
    m.change_basis(&b)
}

/// Draw a module with `1 ≤ N ≤ max_generators` and `1 ≤ dim ≤ max_dim`.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, params: RandomModuleParams) -> ESuperModule {
    let n = rng.gen_range(1..=params.max_generators);
    let p = params.p;
    let mut m = random_piece(rng, n, p, params.max_dim);
    if m.dim() < params.max_dim && rng.gen_bool(0.35) {
        let other = random_piece(rng, n, p, params.max_dim - m.dim());
        m = m.direct_sum(&other).expect("same algebra");
    }
    if rng.gen_bool(0.5) {
        m = m.parity_shift();
    }
    if rng.gen_bool(0.3) {
        m = m.transpose_dual();
    }
    if let Some(conj) = random_even_automorphism(rng, &m) {
        m = conj;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::validate_module;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let params = RandomModuleParams::default();
        let mut free = 0;
        for _ in 0..100 {
            let m = random_module(&mut rng, params);
            assert!(m.dim() >= 1 && m.dim() <= 16);
            assert!(m.generators() >= 1 && m.generators() <= 4);
            assert!(validate_module(m.p(), m.parity(), m.actions(), None).is_ok());
            free += m.is_free() as usize;
        }
        // the generator must produce both outcomes
        assert!(free > 0 && free < 100);
    }
}
