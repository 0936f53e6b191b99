//! Formal characters as Laurent polynomials in `m + n` variables with
//! arbitrary-precision integer coefficients.
//!
//! The even-block character `ch H^0_ev(λ)` is the product of two Schur
//! functions, generated from Gelfand–Tsetlin patterns (the branching rule
//! `GL_k ↓ GL_{k-1}`). Induced and Weyl supermodules share the character
//! `∏_{odd α > 0} (1 + e^{-α}) · ch H^0_ev(λ)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weights::{positive_roots, steinberg_weight, BlockShape, Weight, WeightError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharacterError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("characters belong to different shapes: {0} vs {1}")]
    ShapeMismatch(BlockShape, BlockShape),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("maximal monomial {0} is not dominant; not a filtration character")]
    NotFiltrationCharacter(String),
    #[error("elimination did not terminate within {cap} steps")]
    IterationCapExceeded { cap: usize, partial: Decomposition },
}

/// Which family of characters a decomposition is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiltrationBasis {
    /// `ch H^0(λ) = ch V(λ)` of GL(m|n).
    Induced,
    /// `ch H^0_ev(λ)` of `GL_m × GL_n`.
    Even,
}

/// A finitely supported Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    shape: BlockShape,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl Character {
    pub fn zero(shape: BlockShape) -> Self {
        Self {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: BlockShape) -> Self {
        Self::monomial(&Weight::zero(shape), BigInt::one())
    }

    pub fn monomial(weight: &Weight, coef: BigInt) -> Self {
        let mut c = Self::zero(weight.shape());
        if !coef.is_zero() {
            c.terms.insert(weight.entries().to_vec(), coef);
        }
        c
    }

    pub fn from_terms(
        shape: BlockShape,
        terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>,
    ) -> Result<Self, CharacterError> {
        let mut acc = Accumulator::default();
        for (exp, coef) in terms {
            if exp.len() != shape.rank() {
                return Err(CharacterError::ExponentLength {
                    expected: shape.rank(),
                    got: exp.len(),
                });
            }
            acc.add(exp, coef);
        }
        Ok(acc.finish(shape))
    }

    /// Sum of `x^{wt}` over a list of weights, e.g. the weights of a basis.
    pub fn from_weights<'a>(shape: BlockShape, weights: impl IntoIterator<Item = &'a Weight>) -> Self {
        let mut acc = Accumulator::default();
        for w in weights {
            debug_assert_eq!(w.shape(), shape);
            acc.add(w.entries().to_vec(), BigInt::one());
        }
        acc.finish(shape)
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Lexicographically largest exponent. It is maximal in the dominance
    /// order: a strictly larger weight of the same total has a larger
    /// first differing entry.
    pub fn leading_term(&self) -> Option<(Weight, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| {
            (
                Weight::new(self.shape, e.clone()).expect("stored exponents have full length"),
                c,
            )
        })
    }

    fn check(&self, other: &Self) -> Result<(), CharacterError> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(CharacterError::ShapeMismatch(self.shape, other.shape))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharacterError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        Self {
            shape: self.shape,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CharacterError> {
        self.check(other)?;
        let mut acc = Accumulator::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                acc.add(e, ca * cb);
            }
        }
        Ok(acc.finish(self.shape))
    }

    fn add_term(&mut self, exp: &[i64], coef: &BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(exp) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.terms.remove(exp);
                }
            }
            None => {
                self.terms.insert(exp.to_vec(), coef.clone());
            }
        }
    }

    /// Apply a permutation of the variables (`perm[a]` is the new position of variable `a`).
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; e.len()];
                for (a, &x) in e.iter().enumerate() {
                    f[perm[a]] = x;
                }
                (f, c.clone())
            })
            .collect();
        Self {
            shape: self.shape,
            terms,
        }
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            shape: (self.shape.m(), self.shape.n()),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRecord {
                    exp: e.clone(),
                    coef: Coefficient(c.clone()),
                })
                .collect(),
        }
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character[{}] {}", self.shape, self)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x^{:?}", e)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Accumulator {
    map: HashMap<Vec<i64>, BigInt>,
}

impl Accumulator {
    fn with_capacity(n: usize) -> Self {
        Self {
            map: HashMap::with_capacity(n),
        }
    }

    fn add(&mut self, exp: Vec<i64>, coef: BigInt) {
        *self.map.entry(exp).or_default() += coef;
    }

    fn finish(self, shape: BlockShape) -> Character {
        Character {
            shape,
            terms: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Schur polynomial of a weakly decreasing integer vector in `entries.len()`
/// variables, as a list of monomials (one per Gelfand–Tsetlin pattern).
fn block_monomials(entries: &[i64]) -> Vec<Vec<i64>> {
    // Build bottom-up: row k has length k; the weight of variable k is
    // |row k| - |row k-1|.
    fn recurse(row: &[i64], suffix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let k = row.len();
        let row_sum: i64 = row.iter().sum();
        if k == 1 {
            let mut exp = vec![row_sum];
            exp.extend(suffix.iter().rev());
            out.push(exp);
            return;
        }
        // interlacing: row[i] >= next[i] >= row[i+1]
        let mut next = vec![0i64; k - 1];
        fn choose(
            row: &[i64],
            next: &mut Vec<i64>,
            i: usize,
            row_sum: i64,
            suffix: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
        ) {
            if i == next.len() {
                let next_sum: i64 = next.iter().sum();
                suffix.push(row_sum - next_sum);
                recurse(&next.clone(), suffix, out);
                suffix.pop();
                return;
            }
            for v in row[i + 1]..=row[i] {
                next[i] = v;
                choose(row, next, i + 1, row_sum, suffix, out);
            }
        }
        choose(row, &mut next, 0, row_sum, suffix, out);
    }
    let mut out = Vec::new();
    recurse(entries, &mut Vec::new(), &mut out);
    out
}

/// `ch H^0_ev(λ)`: product of the Schur functions of the two blocks.
pub fn ch_ev(lambda: &Weight) -> Result<Character, CharacterError> {
    if !lambda.is_dominant() {
        return Err(CharacterError::NotDominant(lambda.to_string()));
    }
    let even = block_monomials(lambda.even_block());
    let odd = block_monomials(lambda.odd_block());
    let mut acc = Accumulator::with_capacity(even.len() * odd.len());
    for a in &even {
        for b in &odd {
            let mut e = Vec::with_capacity(a.len() + b.len());
            e.extend_from_slice(a);
            e.extend_from_slice(b);
            acc.add(e, BigInt::one());
        }
    }
    Ok(acc.finish(lambda.shape()))
}

/// `∏_{i ≤ m < j} (1 + x_i^{-1} x_j)`.
pub fn odd_factor(shape: BlockShape) -> Character {
    let (_, odd) = positive_roots(shape);
    let mut acc = Character::one(shape);
    for alpha in odd {
        let neg_root = alpha.as_weight(shape).scale(-1);
        let factor = Character::one(shape)
            .add(&Character::monomial(&neg_root, BigInt::one()))
            .expect("same shape");
        acc = acc.mul(&factor).expect("same shape");
    }
    acc
}

/// `ch H^0(λ) = ch V(λ)`.
pub fn ch_induced(lambda: &Weight) -> Result<Character, CharacterError> {
    odd_factor(lambda.shape()).mul(&ch_ev(lambda)?)
}

/// Frobenius twist at character level: exponents scale by `p^r`.
pub fn twist(ch: &Character, r: u32) -> Result<Character, CharacterError> {
    let q = ch.shape.p_pow(r)?;
    Ok(Character {
        shape: ch.shape,
        terms: ch
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|x| x * q).collect(), c.clone()))
            .collect(),
    })
}

/// `ch H^0(π) · ch H^0_ev(λ)^{[r]} = ch H^0(π + p^r λ)` with
/// `π = (p^r - 1)ρ_0 + ρ_{s,t}`, checked as an exact polynomial identity.
pub fn verify_translation_identity(
    shape: BlockShape,
    r: u32,
    s: i64,
    t: i64,
    lambda: &Weight,
) -> Result<bool, CharacterError> {
    if lambda.shape() != shape {
        return Err(WeightError::ShapeMismatch(shape, lambda.shape()).into());
    }
    if !lambda.is_dominant() {
        return Err(CharacterError::NotDominant(lambda.to_string()));
    }
    let pi = steinberg_weight(shape, r, s, t)?;
    let q = shape.p_pow(r)?;
    let lhs = ch_induced(&pi)?.mul(&twist(&ch_ev(lambda)?, r)?)?;
    let rhs = ch_induced(&(&pi + &lambda.scale(q)))?;
    Ok(lhs == rhs)
}

/// Multiplicities found by triangular elimination.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub multiplicities: BTreeMap<Weight, BigInt>,
}

impl Decomposition {
    pub fn has_negative(&self) -> bool {
        self.multiplicities.values().any(|c| c.is_negative())
    }

    pub fn negative_entries(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.multiplicities.iter().filter(|(_, c)| c.is_negative())
    }

    /// Tab-separated `weight\tmultiplicity` lines, highest weight first.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("weight\tmultiplicity\n");
        for (w, c) in self.multiplicities.iter().rev() {
            out.push_str(&format!("{w}\t{c}\n"));
        }
        out
    }
}

/// Write `ch` as an integer combination of `ch H^0(μ)` (or `ch H^0_ev(μ)`)
/// by repeatedly peeling off the leading monomial.
pub fn decompose_good(ch: &Character, basis: FiltrationBasis) -> Result<Decomposition, CharacterError> {
    let shape = ch.shape;
    let cap = 4 * ch.support_size().max(1) * (1usize << shape.odd_root_count());
    let mut remainder = ch.clone();
    let mut found = Decomposition::default();
    let mut steps = 0;
    while let Some((mu, coef)) = remainder.leading_term() {
        if steps == cap {
            return Err(CharacterError::IterationCapExceeded { cap, partial: found });
        }
        steps += 1;
        if !mu.is_dominant() {
            return Err(CharacterError::NotFiltrationCharacter(mu.to_string()));
        }
        let coef = coef.clone();
        let piece = match basis {
            FiltrationBasis::Induced => ch_induced(&mu)?,
            FiltrationBasis::Even => ch_ev(&mu)?,
        };
        remainder = remainder.sub(&piece.scale(&coef))?;
        *found.multiplicities.entry(mu).or_default() += coef;
    }
    found.multiplicities.retain(|_, c| !c.is_zero());
    Ok(found)
}

/// Value at `x = (1, …, 1)`.
pub fn dim_of(ch: &Character) -> BigInt {
    ch.terms.values().sum()
}

/// Integer coefficient in JSON: a number when it fits in `i64`, else a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient(pub BigInt);

impl Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Coefficient(BigInt::from(v))),
            Raw::Text(s) => s.parse::<BigInt>().map(Coefficient).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: Vec<i64>,
    pub coef: Coefficient,
}

/// JSON form: `{"shape":[m,n],"terms":[{"exp":[...],"coef":c},...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub shape: (usize, usize),
    pub terms: Vec<TermRecord>,
}

impl CharacterRecord {
    pub fn into_character(self, p: u64) -> Result<Character, CharacterError> {
        let shape = BlockShape::new(self.shape.0, self.shape.1, p)?;
        Character::from_terms(shape, self.terms.into_iter().map(|t| (t.exp, t.coef.0)))
    }
}
