//! The weight lattice of GL(m|n): integer vectors split into an even block of
//! length `m` and an odd block of length `n`.
//!
//! Two descriptions of the dominance order are provided and kept
//! independent: prefix sums ([`dominance_leq`]) and an explicit decomposition
//! of `λ - μ` into positive roots ([`root_cone_leq`]). Half-integral vectors
//! such as `ρ` are stored doubled ([`HalfWeight`]) so no rational arithmetic
//! is needed.
//!
//! The bilinear form has signature `(+1^m, -1^n)`: `(ε_a, ε_b) = sgn(a) δ_ab`
//! with `sgn(a) = -1` exactly on the odd block.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{is_prime, MAX_PRIME};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("invalid block shape: {0}")]
    InvalidShape(String),
    #[error("weights belong to different shapes: {0} vs {1}")]
    ShapeMismatch(BlockShape, BlockShape),
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("integer overflow computing p^{r} for p = {p}")]
    Overflow { p: u64, r: u32 },
    #[error("invalid root indices ({0}, {1})")]
    InvalidRoot(usize, usize),
}

/// Block sizes `(m | n)` together with the characteristic `p` of the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockShape {
    m: usize,
    n: usize,
    p: u64,
}

impl BlockShape {
    pub fn new(m: usize, n: usize, p: u64) -> Result<Self, WeightError> {
        if m == 0 || n == 0 {
            return Err(WeightError::InvalidShape(format!(
                "block sizes must be positive, got ({m}|{n})"
            )));
        }
        if p == 2 {
            return Err(WeightError::InvalidShape("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(WeightError::InvalidShape(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Self { m, n, p })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `m + n`, the length of a weight vector.
    #[inline]
    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    /// Number of positive odd roots, i.e. odd generators of `Dist(U)`.
    #[inline]
    pub fn odd_root_count(&self) -> usize {
        self.m * self.n
    }

    /// Parity of the basis index `a` (0-based): 0 on the even block, 1 on the odd block.
    #[inline]
    pub fn parity(&self, a: usize) -> u8 {
        u8::from(a >= self.m)
    }

    /// Signature of the bilinear form at index `a`.
    #[inline]
    pub fn sign(&self, a: usize) -> i64 {
        if a < self.m {
            1
        } else {
            -1
        }
    }

    pub fn with_prime(&self, p: u64) -> Result<Self, WeightError> {
        Self::new(self.m, self.n, p)
    }

    /// `p^r` as an exact integer.
    pub fn p_pow(&self, r: u32) -> Result<i64, WeightError> {
        i64::try_from(self.p)
            .ok()
            .and_then(|p| p.checked_pow(r))
            .ok_or(WeightError::Overflow { p: self.p, r })
    }

    fn check(&self, other: &BlockShape) -> Result<(), WeightError> {
        if self == other {
            Ok(())
        } else {
            Err(WeightError::ShapeMismatch(*self, *other))
        }
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}) p={}", self.m, self.n, self.p)
    }
}

fn fmt_blocks<T: fmt::Display>(f: &mut fmt::Formatter<'_>, m: usize, items: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (a, x) in items.iter().enumerate() {
        if a == m {
            write!(f, "|")?;
        } else if a > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// An integral weight `λ = (λ_1, …, λ_m | λ_{m+1}, …, λ_{m+n})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    shape: BlockShape,
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(shape: BlockShape, entries: Vec<i64>) -> Result<Self, WeightError> {
        if entries.len() != shape.rank() {
            return Err(WeightError::Length {
                expected: shape.rank(),
                got: entries.len(),
            });
        }
        Ok(Self { shape, entries })
    }

    /// Build from the two blocks separately.
    pub fn from_blocks(shape: BlockShape, even: &[i64], odd: &[i64]) -> Result<Self, WeightError> {
        if even.len() != shape.m() || odd.len() != shape.n() {
            return Err(WeightError::Length {
                expected: shape.rank(),
                got: even.len() + odd.len(),
            });
        }
        Self::new(shape, even.iter().chain(odd).copied().collect())
    }

    pub fn zero(shape: BlockShape) -> Self {
        Self {
            shape,
            entries: vec![0; shape.rank()],
        }
    }

    /// The basis character `ε_a` (0-based index).
    pub fn epsilon(shape: BlockShape, a: usize) -> Self {
        let mut w = Self::zero(shape);
        w.entries[a] = 1;
        w
    }

    /// `ρ_{s,t} = (s,…,s | t,…,t)`.
    pub fn rho_st(shape: BlockShape, s: i64, t: i64) -> Self {
        let entries = (0..shape.rank()).map(|a| if a < shape.m() { s } else { t }).collect();
        Self { shape, entries }
    }

    #[inline]
    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    #[inline]
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.entries
    }

    pub fn even_block(&self) -> &[i64] {
        &self.entries[..self.shape.m()]
    }

    pub fn odd_block(&self) -> &[i64] {
        &self.entries[self.shape.m()..]
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Both blocks weakly decreasing.
    pub fn is_dominant(&self) -> bool {
        let decreasing = |xs: &[i64]| xs.windows(2).all(|w| w[0] >= w[1]);
        decreasing(self.even_block()) && decreasing(self.odd_block())
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            shape: self.shape,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn to_half(&self) -> HalfWeight {
        HalfWeight {
            shape: self.shape,
            doubled: self.entries.iter().map(|x| 2 * x).collect(),
        }
    }

    pub fn record(&self) -> WeightRecord {
        WeightRecord {
            m: self.shape.m(),
            n: self.shape.n(),
            lambda: (self.even_block().to_vec(), self.odd_block().to_vec()),
        }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.shape, rhs.shape, "adding weights of different shapes");
        Weight {
            shape: self.shape,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.shape, rhs.shape, "subtracting weights of different shapes");
        Weight {
            shape: self.shape,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blocks(f, self.shape.m(), &self.entries)
    }
}

/// JSON form of a weight: `{"m":2,"n":1,"lambda":[[3,1],[2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRecord {
    pub m: usize,
    pub n: usize,
    pub lambda: (Vec<i64>, Vec<i64>),
}

impl WeightRecord {
    pub fn into_weight(self, p: u64) -> Result<Weight, WeightError> {
        let shape = BlockShape::new(self.m, self.n, p)?;
        Weight::from_blocks(shape, &self.lambda.0, &self.lambda.1)
    }
}

/// A number in `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(x: i64) -> Self {
        Self(2 * x)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// A vector in `(½ℤ)^{m+n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfWeight {
    shape: BlockShape,
    doubled: Vec<i64>,
}

impl HalfWeight {
    pub fn from_doubled(shape: BlockShape, doubled: Vec<i64>) -> Result<Self, WeightError> {
        if doubled.len() != shape.rank() {
            return Err(WeightError::Length {
                expected: shape.rank(),
                got: doubled.len(),
            });
        }
        Ok(Self { shape, doubled })
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn doubled_entries(&self) -> &[i64] {
        &self.doubled
    }

    pub fn entry(&self, a: usize) -> HalfInt {
        HalfInt(self.doubled[a])
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            shape: self.shape,
            doubled: self.doubled.iter().map(|x| x * c).collect(),
        }
    }

    /// The integral weight, if every entry is an integer.
    pub fn to_weight(&self) -> Option<Weight> {
        let entries = self
            .doubled
            .iter()
            .map(|&d| (d % 2 == 0).then_some(d / 2))
            .collect::<Option<Vec<_>>>()?;
        Some(Weight {
            shape: self.shape,
            entries,
        })
    }
}

impl Add for &HalfWeight {
    type Output = HalfWeight;
    fn add(self, rhs: &HalfWeight) -> HalfWeight {
        assert_eq!(self.shape, rhs.shape);
        HalfWeight {
            shape: self.shape,
            doubled: self.doubled.iter().zip(&rhs.doubled).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &HalfWeight {
    type Output = HalfWeight;
    fn sub(self, rhs: &HalfWeight) -> HalfWeight {
        assert_eq!(self.shape, rhs.shape);
        HalfWeight {
            shape: self.shape,
            doubled: self.doubled.iter().zip(&rhs.doubled).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for HalfWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<HalfInt> = self.doubled.iter().map(|&d| HalfInt(d)).collect();
        fmt_blocks(f, self.shape.m(), &items)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootParity {
    Even,
    Odd,
}

/// A positive root `ε_i - ε_j` with `i < j` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    i: usize,
    j: usize,
    parity: RootParity,
}

impl Root {
    pub fn new(shape: BlockShape, i: usize, j: usize) -> Result<Self, WeightError> {
        if i >= j || j >= shape.rank() {
            return Err(WeightError::InvalidRoot(i, j));
        }
        let parity = if shape.parity(i) == shape.parity(j) {
            RootParity::Even
        } else {
            RootParity::Odd
        };
        Ok(Self { i, j, parity })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn parity(&self) -> RootParity {
        self.parity
    }

    pub fn as_weight(&self, shape: BlockShape) -> Weight {
        &Weight::epsilon(shape, self.i) - &Weight::epsilon(shape, self.j)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i + 1, self.j + 1)
    }
}

/// Positive even roots (within a block) and positive odd roots (even index
/// before odd index), each in lexicographic order of `(i, j)`.
pub fn positive_roots(shape: BlockShape) -> (Vec<Root>, Vec<Root>) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..shape.rank() {
        for j in i + 1..shape.rank() {
            let root = Root::new(shape, i, j).expect("indices in range");
            match root.parity {
                RootParity::Even => even.push(root),
                RootParity::Odd => odd.push(root),
            }
        }
    }
    (even, odd)
}

/// Prefix-sum test for `μ ≤ λ`.
pub fn dominance_leq(mu: &Weight, lambda: &Weight) -> Result<bool, WeightError> {
    mu.shape.check(&lambda.shape)?;
    let mut pm = 0i64;
    let mut pl = 0i64;
    let last = mu.entries.len() - 1;
    for (a, (x, y)) in mu.entries.iter().zip(&lambda.entries).enumerate() {
        pm += x;
        pl += y;
        if a < last && pm > pl {
            return Ok(false);
        }
    }
    Ok(pm == pl)
}

/// Nonnegative coefficients `c_ij` with `λ - μ = Σ c_ij (ε_i - ε_j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootCertificate {
    pub coefficients: BTreeMap<(usize, usize), u64>,
}

impl RootCertificate {
    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The vector `Σ c_ij (ε_i - ε_j)`.
    pub fn sum(&self, shape: BlockShape) -> Vec<i64> {
        let mut v = vec![0i64; shape.rank()];
        for (&(i, j), &c) in &self.coefficients {
            v[i] += c as i64;
            v[j] -= c as i64;
        }
        v
    }

    /// Checks that every root has `i < j` and the combination sums to `λ - μ`.
    pub fn verify(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.coefficients.keys().all(|&(i, j)| i < j && j < mu.shape.rank())
            && self.sum(mu.shape) == (lambda - mu).entries
    }
}

/// Decompose `λ - μ` into positive roots by greedy transport of surplus
/// from left to right. Returns `None` when no nonnegative decomposition
/// exists.
pub fn root_cone_leq(mu: &Weight, lambda: &Weight) -> Result<Option<RootCertificate>, WeightError> {
    mu.shape.check(&lambda.shape)?;
    let diff = lambda - mu;
    // surplus waiting to be shipped right: (source index, amount)
    let mut supply: Vec<(usize, i64)> = Vec::new();
    let mut cert = RootCertificate::default();
    for (j, &d) in diff.entries.iter().enumerate() {
        if d > 0 {
            supply.push((j, d));
            continue;
        }
        let mut demand = -d;
        while demand > 0 {
            let Some(front) = supply.first_mut() else {
                return Ok(None);
            };
            let take = front.1.min(demand);
            *cert.coefficients.entry((front.0, j)).or_insert(0) += take as u64;
            front.1 -= take;
            demand -= take;
            if front.1 == 0 {
                supply.remove(0);
            }
        }
    }
    if supply.is_empty() {
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

/// `ρ_0`, `ρ_1`, `ρ = ρ_0 - ρ_1` and `ρ_{s,t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoWeights {
    pub rho0: HalfWeight,
    pub rho1: HalfWeight,
    pub rho: HalfWeight,
    pub rho_st: HalfWeight,
}

/// Half-sums of positive roots, computed directly from the root lists.
pub fn rho_weights(shape: BlockShape, s: i64, t: i64) -> RhoWeights {
    let (even, odd) = positive_roots(shape);
    // each root contributes +1/2 at i and -1/2 at j, i.e. ±1 doubled
    let half_sum = |roots: &[Root]| {
        let mut d = vec![0i64; shape.rank()];
        for r in roots {
            d[r.i] += 1;
            d[r.j] -= 1;
        }
        HalfWeight { shape, doubled: d }
    };
    let rho0 = half_sum(&even);
    let rho1 = half_sum(&odd);
    let rho = &rho0 - &rho1;
    let rho_st = Weight::rho_st(shape, s, t).to_half();
    RhoWeights {
        rho0,
        rho1,
        rho,
        rho_st,
    }
}

/// `(χ, α)` for the form of signature `(+1^m, -1^n)`.
pub fn pairing(chi: &HalfWeight, alpha: &Root) -> HalfInt {
    let shape = chi.shape;
    HalfInt(shape.sign(alpha.i) * chi.doubled[alpha.i] - shape.sign(alpha.j) * chi.doubled[alpha.j])
}

/// `0 ≤ λ_a - λ_{a+1} < p^r` for every consecutive pair not straddling the blocks.
pub fn is_restricted(lambda: &Weight, r: u32) -> Result<bool, WeightError> {
    let bound = lambda.shape.p_pow(r)?;
    let m = lambda.shape.m();
    Ok(lambda
        .entries
        .windows(2)
        .enumerate()
        .filter(|&(a, _)| a + 1 != m)
        .all(|(_, w)| {
            let gap = w[0] - w[1];
            (0..bound).contains(&gap)
        }))
}

/// `(p^r - 1)ρ_0 + ρ_{s,t}`; integral because `p` is odd.
pub fn steinberg_weight(shape: BlockShape, r: u32, s: i64, t: i64) -> Result<Weight, WeightError> {
    let q = shape.p_pow(r)?;
    let rw = rho_weights(shape, s, t);
    let sum = &rw.rho0.scale(q - 1) + &rw.rho_st;
    Ok(sum.to_weight().expect("p^r - 1 is even"))
}

/// Divisibility criterion for `H^0((p^r-1)ρ_0 + ρ_{s,t})` to be irreducible:
/// `p ∤ ((p^r+1)/2)m + ((p^r-1)/2)n + s + t`.
pub fn is_steinberg_weight(shape: BlockShape, r: u32, s: i64, t: i64) -> Result<bool, WeightError> {
    let q = shape.p_pow(r)? as i128;
    let (m, n) = (shape.m() as i128, shape.n() as i128);
    let value = (q + 1) / 2 * m + (q - 1) / 2 * n + s as i128 + t as i128;
    Ok(value.rem_euclid(shape.p() as i128) != 0)
}

/// Irreducibility of `H^0(λ)` via `p ∤ (λ + ρ, α)` for all positive odd roots.
pub fn marko_irreducible(lambda: &Weight) -> Result<bool, WeightError> {
    if !lambda.is_dominant() {
        return Err(WeightError::NotDominant(lambda.to_string()));
    }
    let shape = lambda.shape;
    let shifted = &lambda.to_half() + &rho_weights(shape, 0, 0).rho;
    let p = shape.p() as i64;
    let (_, odd) = positive_roots(shape);
    Ok(odd.iter().all(|alpha| {
        let value = pairing(&shifted, alpha)
            .to_integer()
            .expect("odd pairing of an integral weight shifted by rho is integral");
        value.rem_euclid(p) != 0
    }))
}

/// `θ_r(λ) = (p^r - 1)ρ_0 + ρ_{s,t} + p^r λ`.
pub fn theta_r(lambda: &Weight, r: u32, s: i64, t: i64) -> Result<Weight, WeightError> {
    let shape = lambda.shape;
    let q = shape.p_pow(r)?;
    Ok(&steinberg_weight(shape, r, s, t)? + &lambda.scale(q))
}
