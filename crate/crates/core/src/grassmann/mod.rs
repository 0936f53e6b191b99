//! Finite-dimensional supermodules over the Grassmann superalgebra `E_N`
//! (exterior algebra on `N` odd generators) over `F_p`.
//!
//! A module is a parity vector together with `N` square matrices `G_a`
//! (column convention: `G_a e_k = Σ_i G_a[i][k] e_i`). Basis monomials of
//! `E_N` are subsets of the generators encoded as bitmasks; `e_S` denotes the
//! product of the generators in `S` taken in increasing order.

mod random;
mod resolution;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{is_prime, reduce_i64, sub_mod, FpMatrix, Subspace, MAX_PRIME};
use crate::weights::Weight;

pub use random::{random_homogeneous_vector, random_module, RandomModuleParams};
pub use resolution::{
    cohomology_dim, cohomology_dims, homology_dim, homology_dims, resolve, tor_dims_direct, MinimalResolution,
    ResolutionStep, DEFAULT_DEGREE_BOUND,
};

/// Largest generator count supported (bitmask width of `E_N` monomials).
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("invalid module: {0}")]
    Invalid(#[from] Violation),
    #[error("generator index {index} out of range for N = {n}")]
    GeneratorIndex { index: usize, n: usize },
    #[error("requested degree {requested} exceeds the bound {bound}")]
    DegreeBound { requested: usize, bound: usize },
    #[error("vector length {got} does not match module dimension {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("subspace is not a graded submodule")]
    NotSubmodule,
    #[error("modules over different algebras cannot be combined")]
    AlgebraMismatch,
}

/// First violated structural relation of a candidate module.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("characteristic {0} is not an odd prime")]
    Prime(u64),
    #[error("too many generators: {0}")]
    TooManyGenerators(usize),
    #[error("expected {expected} action matrices, found {got}")]
    ActionCount { expected: usize, got: usize },
    #[error("action {a} has {got} entries, expected {expected}")]
    ActionShape { a: usize, expected: usize, got: usize },
    #[error("parity entry {index} is {value}, expected 0 or 1")]
    ParityValue { index: usize, value: u8 },
    #[error("square: G_{a}^2 != 0")]
    Square { a: usize },
    #[error("anticommutator: G_{a} G_{b} + G_{b} G_{a} != 0")]
    Anticommutator { a: usize, b: usize },
    #[error("parity: G_{a} maps basis vector {col} to {row} of the same parity")]
    Parity { a: usize, row: usize, col: usize },
    #[error("weight: G_{a} maps basis vector {col} to {row} with the wrong weight shift")]
    Weight { a: usize, row: usize, col: usize },
    #[error("weight labels do not match dimension or generator count")]
    WeightLabels,
}

impl Violation {
    /// Short tag naming the violated relation.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Square { .. } => "square",
            Violation::Anticommutator { .. } => "anticommutator",
            Violation::Parity { .. } => "parity",
            Violation::Weight { .. } => "weight",
            _ => "shape",
        }
    }
}

/// Sign of `e_S · e_T`: `None` if `S ∩ T ≠ ∅`, else `Some(true)` when the
/// product is `-e_{S∪T}`.
pub fn monomial_product_sign(s: u32, t: u32) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    // each t-element must pass the s-elements larger than it
    let mut inversions = 0;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inversions += (s >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

/// The Grassmann superalgebra `E_N` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannAlgebra {
    n: usize,
    p: u64,
}

/// An element of `E_N`, as coefficients on the `2^N` subset monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannElement {
    algebra: GrassmannAlgebra,
    coeffs: Vec<u64>,
}

impl GrassmannAlgebra {
    pub fn new(n: usize, p: u64) -> Result<Self, Violation> {
        check_prime(p)?;
        if n > MAX_GENERATORS {
            return Err(Violation::TooManyGenerators(n));
        }
        Ok(Self { n, p })
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn zero(&self) -> GrassmannElement {
        GrassmannElement {
            algebra: *self,
            coeffs: vec![0; self.dim()],
        }
    }

    pub fn monomial(&self, s: u32, c: i64) -> GrassmannElement {
        let mut e = self.zero();
        e.coeffs[s as usize] = reduce_i64(c, self.p);
        e
    }

    pub fn one(&self) -> GrassmannElement {
        self.monomial(0, 1)
    }

    pub fn generator(&self, a: usize) -> GrassmannElement {
        assert!(a < self.n);
        self.monomial(1 << a, 1)
    }

    /// Matrix of left multiplication by `g_a` on the monomial basis.
    pub fn left_multiplication(&self, a: usize) -> FpMatrix {
        let d = self.dim();
        let mut m = FpMatrix::zeros(d, d, self.p);
        for s in 0..d as u32 {
            if let Some(neg) = monomial_product_sign(1 << a, s) {
                m.set((s | (1 << a)) as usize, s as usize, if neg { self.p - 1 } else { 1 });
            }
        }
        m
    }
}

impl GrassmannElement {
    pub fn algebra(&self) -> GrassmannAlgebra {
        self.algebra
    }

    pub fn coefficient(&self, s: u32) -> u64 {
        self.coeffs[s as usize]
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.algebra, other.algebra);
        let p = self.algebra.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Self {
            algebra: self.algebra,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.algebra.p;
        Self {
            algebra: self.algebra,
            coeffs: self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect(),
        }
    }

    /// Super-sign-correct product.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.algebra, other.algebra);
        let p = self.algebra.p;
        let mut out = self.algebra.zero();
        for (s, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (t, &b) in other.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                if let Some(neg) = monomial_product_sign(s as u32, t as u32) {
                    let prod = a * b % p;
                    let slot = &mut out.coeffs[s | t];
                    *slot = if neg {
                        sub_mod(*slot, prod, p)
                    } else {
                        (*slot + prod) % p
                    };
                }
            }
        }
        out
    }
}

fn check_prime(p: u64) -> Result<(), Violation> {
    if !(3..MAX_PRIME).contains(&p) || !is_prime(p) {
        Err(Violation::Prime(p))
    } else {
        Ok(())
    }
}

/// Optional weight data: a weight per basis vector and the weight shift of
/// each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLabels {
    pub basis: Vec<Weight>,
    pub generators: Vec<Weight>,
}

/// A validated supermodule over `E_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESuperModule {
    p: u64,
    parity: Vec<u8>,
    actions: Vec<FpMatrix>,
    weights: Option<WeightLabels>,
}

/// Check every structural relation; reports the first failure.
pub fn validate_module(
    p: u64,
    parity: &[u8],
    actions: &[FpMatrix],
    weights: Option<&WeightLabels>,
) -> Result<(), Violation> {
    check_prime(p)?;
    if actions.len() > MAX_GENERATORS {
        return Err(Violation::TooManyGenerators(actions.len()));
    }
    let d = parity.len();
    if let Some((index, &value)) = parity.iter().enumerate().find(|(_, &v)| v > 1) {
        return Err(Violation::ParityValue { index, value });
    }
    for (a, g) in actions.iter().enumerate() {
        if g.rows() != d || g.cols() != d || g.prime() != p {
            return Err(Violation::ActionShape {
                a,
                expected: d * d,
                got: g.rows() * g.cols(),
            });
        }
    }
    for (a, g) in actions.iter().enumerate() {
        for row in 0..d {
            for col in 0..d {
                if g.get(row, col) != 0 && parity[row] == parity[col] {
                    return Err(Violation::Parity { a, row, col });
                }
            }
        }
    }
    for (a, g) in actions.iter().enumerate() {
        if !g.mul(g).is_zero() {
            return Err(Violation::Square { a });
        }
        for (b, h) in actions.iter().enumerate().skip(a + 1) {
            if !g.mul(h).add(&h.mul(g)).is_zero() {
                return Err(Violation::Anticommutator { a, b });
            }
        }
    }
    if let Some(w) = weights {
        if w.basis.len() != d || w.generators.len() != actions.len() {
            return Err(Violation::WeightLabels);
        }
        for (a, g) in actions.iter().enumerate() {
            for row in 0..d {
                for col in 0..d {
                    if g.get(row, col) != 0 && w.basis[row] != &w.basis[col] + &w.generators[a] {
                        return Err(Violation::Weight { a, row, col });
                    }
                }
            }
        }
    }
    Ok(())
}

impl ESuperModule {
    pub fn new(p: u64, parity: Vec<u8>, actions: Vec<FpMatrix>) -> Result<Self, Violation> {
        validate_module(p, &parity, &actions, None)?;
        Ok(Self {
            p,
            parity,
            actions,
            weights: None,
        })
    }

    pub fn with_weights(
        p: u64,
        parity: Vec<u8>,
        actions: Vec<FpMatrix>,
        weights: WeightLabels,
    ) -> Result<Self, Violation> {
        validate_module(p, &parity, &actions, Some(&weights))?;
        Ok(Self {
            p,
            parity,
            actions,
            weights: Some(weights),
        })
    }

    /// The trivial module with the given parities and zero action.
    pub fn trivial(n: usize, p: u64, parity: Vec<u8>) -> Result<Self, Violation> {
        let d = parity.len();
        Self::new(p, parity, vec![FpMatrix::zeros(d, d, p); n])
    }

    /// `E_N^r` with the `i`-th copy's generator of parity `offsets[i]`.
    pub fn free(n: usize, p: u64, offsets: &[u8]) -> Result<Self, Violation> {
        let alg = GrassmannAlgebra::new(n, p)?;
        let block = alg.dim();
        let r = offsets.len();
        let mut parity = Vec::with_capacity(r * block);
        for &o in offsets {
            for s in 0..block as u32 {
                parity.push(((s.count_ones() as u8) + o) % 2);
            }
        }
        let actions = (0..n)
            .map(|a| {
                let l = alg.left_multiplication(a);
                let mut m = FpMatrix::zeros(r * block, r * block, p);
                for c in 0..r {
                    for i in 0..block {
                        for j in 0..block {
                            let v = l.get(i, j);
                            if v != 0 {
                                m.set(c * block + i, c * block + j, v);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Self::new(p, parity, actions)
    }

    pub fn regular(n: usize, p: u64) -> Result<Self, Violation> {
        Self::free(n, p, &[0])
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn generators(&self) -> usize {
        self.actions.len()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn algebra(&self) -> GrassmannAlgebra {
        GrassmannAlgebra {
            n: self.actions.len(),
            p: self.p,
        }
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    pub fn action(&self, a: usize) -> &FpMatrix {
        &self.actions[a]
    }

    pub fn weights(&self) -> Option<&WeightLabels> {
        self.weights.as_ref()
    }

    /// Number of even and odd basis vectors.
    pub fn parity_counts(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|&&x| x == 1).count();
        (self.dim() - odd, odd)
    }

    /// Span of the images of all generators.
    pub fn radical(&self) -> Subspace {
        let mut s = Subspace::new(self.dim(), self.p);
        for g in &self.actions {
            for c in 0..self.dim() {
                s.insert(&g.column(c));
            }
        }
        s
    }

    /// Joint kernel of all generators.
    pub fn socle(&self) -> Vec<Vec<u64>> {
        self.stacked_actions().nullspace()
    }

    fn stacked_actions(&self) -> FpMatrix {
        let refs: Vec<&FpMatrix> = self.actions.iter().collect();
        FpMatrix::vstack(&refs, self.dim(), self.p)
    }

    pub fn radical_dim(&self) -> usize {
        if self.actions.is_empty() {
            return 0;
        }
        let refs: Vec<&FpMatrix> = self.actions.iter().collect();
        FpMatrix::hstack(&refs, self.dim(), self.p).rank()
    }

    pub fn socle_dim(&self) -> usize {
        if self.actions.is_empty() {
            return self.dim();
        }
        self.dim() - self.stacked_actions().rank()
    }

    /// `dim M / rad M`, the minimal number of generators.
    pub fn top_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    pub fn is_free(&self) -> bool {
        self.dim() == (1usize << self.generators()) * self.top_dim()
    }

    pub fn is_injective(&self) -> bool {
        self.dim() == (1usize << self.generators()) * self.socle_dim()
    }

    /// Matrices `G_S` for every subset `S`, indexed by bitmask.
    pub fn monomial_actions(&self) -> Vec<FpMatrix> {
        let n = self.generators();
        let mut out: Vec<FpMatrix> = Vec::with_capacity(1 << n);
        out.push(FpMatrix::identity(self.dim(), self.p));
        for s in 1usize..(1 << n) {
            let low = s.trailing_zeros() as usize;
            let rest = &out[s & (s - 1)];
            out.push(self.actions[low].mul(rest));
        }
        out
    }

    /// `G_S v` for every subset `S`, indexed by bitmask.
    pub fn orbit(&self, v: &[u64]) -> Vec<Vec<u64>> {
        let n = self.generators();
        let mut out: Vec<Vec<u64>> = Vec::with_capacity(1 << n);
        out.push(v.to_vec());
        for s in 1usize..(1 << n) {
            let low = s.trailing_zeros() as usize;
            let img = self.actions[low].mul_vec(&out[s & (s - 1)]);
            out.push(img);
        }
        out
    }

    /// Parity of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn vector_parity(&self, v: &[u64]) -> Option<u8> {
        let mut found = None;
        for (x, &par) in v.iter().zip(&self.parity) {
            if *x != 0 {
                match found {
                    None => found = Some(par),
                    Some(q) if q != par => return None,
                    _ => {}
                }
            }
        }
        found
    }

    /// Split a vector into its even and odd components.
    pub fn homogeneous_parts(&self, v: &[u64]) -> [Vec<u64>; 2] {
        let mut parts = [vec![0; v.len()], vec![0; v.len()]];
        for (i, &x) in v.iter().enumerate() {
            parts[self.parity[i] as usize][i] = x;
        }
        parts
    }

    /// Forget the actions of generators outside `subset`.
    pub fn restrict_generators(&self, subset: &[usize]) -> Result<Self, GrassmannError> {
        let n = self.generators();
        if let Some(&index) = subset.iter().find(|&&a| a >= n) {
            return Err(GrassmannError::GeneratorIndex { index, n });
        }
        let weights = self.weights.as_ref().map(|w| WeightLabels {
            basis: w.basis.clone(),
            generators: subset.iter().map(|&a| w.generators[a].clone()).collect(),
        });
        Ok(Self {
            p: self.p,
            parity: self.parity.clone(),
            actions: subset.iter().map(|&a| self.actions[a].clone()).collect(),
            weights,
        })
    }

    pub fn parity_shift(&self) -> Self {
        Self {
            p: self.p,
            parity: self.parity.iter().map(|x| 1 - x).collect(),
            actions: self.actions.clone(),
            weights: self.weights.clone(),
        }
    }

    /// Module on the dual space: `G*_a[i][k] = -(-1)^{|k|} G_a[k][i]`.
    pub fn transpose_dual(&self) -> Self {
        let p = self.p;
        let actions = self
            .actions
            .iter()
            .map(|g| {
                FpMatrix::from_fn(self.dim(), self.dim(), p, |i, k| {
                    let v = g.get(k, i);
                    if self.parity[k] == 1 {
                        v
                    } else {
                        sub_mod(0, v, p)
                    }
                })
            })
            .collect();
        let weights = self.weights.as_ref().map(|w| WeightLabels {
            basis: w.basis.iter().map(|x| x.scale(-1)).collect(),
            generators: w.generators.clone(),
        });
        Self {
            p,
            parity: self.parity.clone(),
            actions,
            weights,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, GrassmannError> {
        if self.p != other.p || self.generators() != other.generators() {
            return Err(GrassmannError::AlgebraMismatch);
        }
        let (d1, d2) = (self.dim(), other.dim());
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(g, h)| {
                FpMatrix::from_fn(d1 + d2, d1 + d2, self.p, |i, j| match (i < d1, j < d1) {
                    (true, true) => g.get(i, j),
                    (false, false) => h.get(i - d1, j - d1),
                    _ => 0,
                })
            })
            .collect();
        let mut parity = self.parity.clone();
        parity.extend_from_slice(&other.parity);
        Ok(Self {
            p: self.p,
            parity,
            actions,
            weights: None,
        })
    }

    /// Conjugate by a parity-preserving change of basis `B`: `G'_a = B^{-1} G_a B`.
    pub fn change_basis(&self, b: &FpMatrix) -> Option<Self> {
        let inv = b.inverse()?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if b.get(i, j) != 0 && self.parity[i] != self.parity[j] {
                    return None;
                }
            }
        }
        let actions = self.actions.iter().map(|g| inv.mul(&g.mul(b))).collect();
        Some(Self {
            p: self.p,
            parity: self.parity.clone(),
            actions,
            weights: None,
        })
    }

    /// Graded submodule generated by the homogeneous parts of `vectors`.
    pub fn generated_submodule(&self, vectors: &[Vec<u64>]) -> Result<Subspace, GrassmannError> {
        let mut s = Subspace::new(self.dim(), self.p);
        for v in vectors {
            if v.len() != self.dim() {
                return Err(GrassmannError::VectorLength {
                    expected: self.dim(),
                    got: v.len(),
                });
            }
            for part in self.homogeneous_parts(v) {
                for img in self.orbit(&part) {
                    s.insert(&img);
                }
            }
        }
        Ok(s)
    }

    fn check_submodule(&self, sub: &Subspace) -> Result<(), GrassmannError> {
        for v in sub.basis() {
            if self.vector_parity(v).is_none() {
                return Err(GrassmannError::NotSubmodule);
            }
            for g in &self.actions {
                if !sub.contains(&g.mul_vec(v)) {
                    return Err(GrassmannError::NotSubmodule);
                }
            }
        }
        Ok(())
    }

    /// The submodule itself, in the reduced echelon basis of `sub`.
    pub fn submodule(&self, sub: &Subspace) -> Result<Self, GrassmannError> {
        self.check_submodule(sub)?;
        let basis = sub.basis();
        let pivots = sub.pivots();
        let parity = basis.iter().map(|v| self.vector_parity(v).unwrap()).collect();
        let actions = self
            .actions
            .iter()
            .map(|g| {
                let images: Vec<Vec<u64>> = basis.iter().map(|v| g.mul_vec(v)).collect();
                // coordinates in a reduced echelon basis are the pivot entries
                FpMatrix::from_fn(basis.len(), basis.len(), self.p, |i, k| images[k][pivots[i]])
            })
            .collect();
        Ok(Self::new(self.p, parity, actions)?)
    }

    /// `M / sub`, with basis the standard vectors at non-pivot positions.
    pub fn quotient(&self, sub: &Subspace) -> Result<Self, GrassmannError> {
        self.check_submodule(sub)?;
        let mut is_pivot = vec![false; self.dim()];
        for &c in sub.pivots() {
            is_pivot[c] = true;
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| !is_pivot[i]).collect();
        let parity = keep.iter().map(|&i| self.parity[i]).collect();
        let actions = self
            .actions
            .iter()
            .map(|g| {
                let images: Vec<Vec<u64>> = keep.iter().map(|&k| sub.reduce(&g.column(k))).collect();
                FpMatrix::from_fn(keep.len(), keep.len(), self.p, |i, k| images[k][keep[i]])
            })
            .collect();
        Ok(Self::new(self.p, parity, actions)?)
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile {
            dim: self.dim(),
            parity: self.parity.clone(),
            n: self.generators(),
            p: self.p,
            actions: self
                .actions
                .iter()
                .map(|g| g.row_major().iter().map(|&x| x as i64).collect())
                .collect(),
        }
    }
}

impl fmt::Display for ESuperModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (even, odd) = self.parity_counts();
        write!(
            f,
            "E_{}-module over F_{} of dim {} ({even}|{odd})",
            self.generators(),
            self.p,
            self.dim()
        )
    }
}

/// JSON module file: `N` dense matrices stored as row-major integer arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dim: usize,
    pub parity: Vec<u8>,
    #[serde(rename = "N")]
    pub n: usize,
    pub p: u64,
    pub actions: Vec<Vec<i64>>,
}

impl TryFrom<ModuleFile> for ESuperModule {
    type Error = Violation;

    fn try_from(file: ModuleFile) -> Result<Self, Violation> {
        check_prime(file.p)?;
        if file.parity.len() != file.dim {
            return Err(Violation::WeightLabels);
        }
        if file.actions.len() != file.n {
            return Err(Violation::ActionCount {
                expected: file.n,
                got: file.actions.len(),
            });
        }
        let d = file.dim;
        let mut actions = Vec::with_capacity(file.n);
        for (a, flat) in file.actions.iter().enumerate() {
            if flat.len() != d * d {
                return Err(Violation::ActionShape {
                    a,
                    expected: d * d,
                    got: flat.len(),
                });
            }
            actions.push(FpMatrix::from_row_major(d, d, file.p, flat));
        }
        Self::new(file.p, file.parity, actions)
    }
}
