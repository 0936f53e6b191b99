//! The GL(m|n)-supermodules `W`, `Λ^k(W)` and `S^k(W)` with explicit actions
//! of all matrix units over `F_p`, their `U`/`U^opp` (co)invariants, and the
//! good/Weyl filtration checks.
//!
//! Basis vectors are monomials in `w_1, …, w_{m+n}` written in increasing
//! letter order, stored as exponent vectors. Letters `w_1..w_m` are even and
//! `w_{m+1}..w_{m+n}` odd. The matrix unit `e_{ij}` sends `w_j` to `w_i` and
//! acts on products by the super Leibniz rule.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::characters::{decompose_good, Character, CharacterError, Decomposition, FiltrationBasis};
use crate::grassmann::{cohomology_dim, homology_dim, ESuperModule, GrassmannError, Violation, WeightLabels};
use crate::linalg::{reduce_i64, sub_mod, FpMatrix, Subspace};
use crate::weights::{BlockShape, Weight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GlError {
    #[error("Leibniz and closed-form actions of e_{{{i}{j}}} differ on basis vector {basis}")]
    ClosedFormMismatch { i: usize, j: usize, basis: String },
    #[error("bracket relation fails for [e_{{{i}{j}}}, e_{{{k}{l}}}]")]
    Bracket { i: usize, j: usize, k: usize, l: usize },
    #[error("odd generators do not form a valid E-module: {0}")]
    EModule(#[from] Violation),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("weight {0} has the wrong shape")]
    WeightShape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Natural,
    Exterior,
    Symmetric,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::Natural => "natural",
            ModuleKind::Exterior => "exterior",
            ModuleKind::Symmetric => "symmetric",
        })
    }
}

/// Which unipotent subgroup's distribution algebra acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// Generated by `e_{ji}`, `i ≤ m < j`.
    U,
    /// Generated by `e_{ij}`, `i ≤ m < j`.
    UOpp,
}

/// A monomial `w_1^{a_1} ⋯ w_{m+n}^{a_{m+n}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (a, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "w{}", a + 1)?,
                _ => write!(f, "w{}^{}", a + 1, e)?,
            }
            any |= e > 0;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A GL(m|n)-supermodule with a monomial basis and all matrix-unit actions.
#[derive(Clone, Debug)]
pub struct GLModule {
    shape: BlockShape,
    kind: ModuleKind,
    degree: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    weights: Vec<Weight>,
    parity: Vec<u8>,
    // e_{ij} at i * (m+n) + j; diagonal units act by the weight
    actions: Vec<FpMatrix>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors of length `parts` summing to `total`, in colex order.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            go(total - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    // colex: compare from the last coordinate
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

fn exterior_basis(shape: BlockShape, k: usize) -> Vec<Monomial> {
    let (m, n) = (shape.m(), shape.n());
    let mut out = Vec::new();
    for i in 0..=m.min(k) {
        for set in combinations(m, i) {
            for beta in compositions((k - i) as u32, n) {
                let mut e = vec![0u32; m + n];
                for &a in &set {
                    e[a] = 1;
                }
                e[m..].copy_from_slice(&beta);
                out.push(Monomial(e));
            }
        }
    }
    out
}

fn symmetric_basis(shape: BlockShape, k: usize) -> Vec<Monomial> {
    let (m, n) = (shape.m(), shape.n());
    let mut out = Vec::new();
    for s in 0..=n.min(k) {
        for set in combinations(n, s) {
            for gamma in compositions((k - s) as u32, m) {
                let mut e = vec![0u32; m + n];
                e[..m].copy_from_slice(&gamma);
                for &j in &set {
                    e[m + j] = 1;
                }
                out.push(Monomial(e));
            }
        }
    }
    out
}

/// Put a word into increasing letter order; returns the sign, or `None` if the
/// word vanishes.
fn normalize(shape: BlockShape, kind: ModuleKind, word: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for end in (1..word.len()).rev() {
        for t in 0..end {
            if word[t] > word[t + 1] {
                let both_odd = shape.parity(word[t]) == 1 && shape.parity(word[t + 1]) == 1;
                // Λ: xy = -(-1)^{|x||y|} yx ; S: xy = (-1)^{|x||y|} yx
                let flip = match kind {
                    ModuleKind::Symmetric => both_odd,
                    _ => !both_odd,
                };
                negative ^= flip;
                word.swap(t, t + 1);
            }
        }
    }
    for t in 1..word.len() {
        if word[t] == word[t - 1] {
            let odd = shape.parity(word[t]) == 1;
            let vanishes = match kind {
                ModuleKind::Symmetric => odd,
                _ => !odd,
            };
            if vanishes {
                return None;
            }
        }
    }
    Some(negative)
}

fn word_of(mono: &Monomial) -> Vec<usize> {
    mono.0
        .iter()
        .enumerate()
        .flat_map(|(a, &e)| std::iter::repeat_n(a, e as usize))
        .collect()
}

fn monomial_of(word: &[usize], len: usize) -> Monomial {
    let mut e = vec![0u32; len];
    for &a in word {
        e[a] += 1;
    }
    Monomial(e)
}

/// `e_{ij}` applied to a basis monomial by the super Leibniz rule.
fn leibniz_image(shape: BlockShape, kind: ModuleKind, mono: &Monomial, i: usize, j: usize) -> BTreeMap<Monomial, i64> {
    let op_odd = shape.parity(i) != shape.parity(j);
    let word = word_of(mono);
    let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
    let mut odd_before = 0usize;
    for t in 0..word.len() {
        if word[t] == j {
            let mut w = word.clone();
            w[t] = i;
            let mut negative = op_odd && odd_before % 2 == 1;
            if let Some(neg) = normalize(shape, kind, &mut w) {
                negative ^= neg;
                *out.entry(monomial_of(&w, shape.rank())).or_default() += if negative { -1 } else { 1 };
            }
        }
        odd_before += shape.parity(word[t]) as usize;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The displayed closed forms for the odd units `e_{ij}`, `e_{ji}` (`i ≤ m < j`).
fn closed_form_image(
    shape: BlockShape,
    kind: ModuleKind,
    mono: &Monomial,
    i: usize,
    j: usize,
) -> BTreeMap<Monomial, i64> {
    let m = shape.m();
    let e = &mono.0;
    let mut out = BTreeMap::new();
    let (even_idx, odd_idx, raising) = if i < m { (i, j, true) } else { (j, i, false) };
    debug_assert!(even_idx < m && odd_idx >= m);
    let mut target = e.clone();
    match (kind, raising) {
        // e_{ij} w_+^I w_-^β = β_j (-1)^{#{a ∈ I : a > i}} w_+^{I ∪ i} w_-^{β - e_j}
        (ModuleKind::Exterior, true) => {
            if e[even_idx] == 0 && e[odd_idx] > 0 {
                let above = (even_idx + 1..m).filter(|&a| e[a] == 1).count();
                target[even_idx] = 1;
                target[odd_idx] -= 1;
                let c = e[odd_idx] as i64;
                out.insert(Monomial(target), if above % 2 == 1 { -c } else { c });
            }
        }
        // e_{ji} w_+^I w_-^β = (-1)^{#{a ∈ I : a > i}} w_+^{I \ i} w_-^{β + e_j}
        (ModuleKind::Exterior, false) => {
            if e[even_idx] == 1 {
                let above = (even_idx + 1..m).filter(|&a| e[a] == 1).count();
                target[even_idx] = 0;
                target[odd_idx] += 1;
                out.insert(Monomial(target), if above % 2 == 1 { -1 } else { 1 });
            }
        }
        // e_{ij} w_+^γ w_-^J = (-1)^{t-1} w_+^{γ + e_i} w_-^{J \ j_t} with j = j_t
        (ModuleKind::Symmetric, true) => {
            if e[odd_idx] == 1 {
                let t = (m..=odd_idx).filter(|&a| e[a] == 1).count();
                target[even_idx] += 1;
                target[odd_idx] = 0;
                out.insert(Monomial(target), if (t - 1) % 2 == 1 { -1 } else { 1 });
            }
        }
        // e_{ji} w_+^γ w_-^J = γ_i (-1)^{#{a ∈ J : a < j}} w_+^{γ - e_i} w_-^{J ∪ j}
        (ModuleKind::Symmetric, false) => {
            if e[odd_idx] == 0 && e[even_idx] > 0 {
                let below = (m..odd_idx).filter(|&a| e[a] == 1).count();
                target[even_idx] -= 1;
                target[odd_idx] = 1;
                let c = e[even_idx] as i64;
                out.insert(Monomial(target), if below % 2 == 1 { -c } else { c });
            }
        }
        (ModuleKind::Natural, _) => {
            if e[j] == 1 {
                target[j] = 0;
                target[i] = 1;
                out.insert(Monomial(target), 1);
            }
        }
    }
    out
}

fn reduce_images(images: BTreeMap<Monomial, i64>, p: u64) -> Vec<(Monomial, u64)> {
    images
        .into_iter()
        .map(|(mono, c)| (mono, reduce_i64(c, p)))
        .filter(|(_, c)| *c != 0)
        .collect()
}

impl GLModule {
    fn build(shape: BlockShape, kind: ModuleKind, degree: usize, basis: Vec<Monomial>) -> Result<Self, GlError> {
        let r = shape.rank();
        let p = shape.p();
        let d = basis.len();
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(a, b)| (b, a)).collect();
        let weights: Vec<Weight> = basis
            .iter()
            .map(|b| Weight::new(shape, b.0.iter().map(|&x| x as i64).collect()).expect("full length"))
            .collect();
        let parity: Vec<u8> = basis
            .iter()
            .map(|b| (b.0[shape.m()..].iter().sum::<u32>() % 2) as u8)
            .collect();
        let mut actions = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let mut mat = FpMatrix::zeros(d, d, p);
                if i == j {
                    for (col, w) in weights.iter().enumerate() {
                        mat.set(col, col, reduce_i64(w.entries()[i], p));
                    }
                } else {
                    for (col, b) in basis.iter().enumerate() {
                        let leib = reduce_images(leibniz_image(shape, kind, b, i, j), p);
                        if shape.parity(i) != shape.parity(j) {
                            let closed = reduce_images(closed_form_image(shape, kind, b, i, j), p);
                            if leib != closed {
                                return Err(GlError::ClosedFormMismatch {
                                    i: i + 1,
                                    j: j + 1,
                                    basis: b.to_string(),
                                });
                            }
                        }
                        for (mono, c) in leib {
                            mat.set(index[&mono], col, c);
                        }
                    }
                }
                actions.push(mat);
            }
        }
        Ok(Self {
            shape,
            kind,
            degree,
            basis,
            index,
            weights,
            parity,
            actions,
        })
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, mono: &Monomial) -> Option<usize> {
        self.index.get(mono).copied()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    /// Matrix of `e_{ij}` (0-based indices).
    pub fn action(&self, i: usize, j: usize) -> &FpMatrix {
        &self.actions[i * self.shape.rank() + j]
    }

    /// Copy of the module with `e_{ij}` replaced by `f(e_{ij})`.
    pub fn with_modified_action(&self, i: usize, j: usize, f: impl FnOnce(&FpMatrix) -> FpMatrix) -> Self {
        let mut out = self.clone();
        let slot = i * self.shape.rank() + j;
        out.actions[slot] = f(&self.actions[slot]);
        out
    }

    pub fn character(&self) -> Character {
        Character::from_weights(self.shape, &self.weights)
    }

    /// Check `[e_{ij}, e_{kl}] = δ_{jk} e_{il} - (-1)^{(|i|+|j|)(|k|+|l|)} δ_{li} e_{kj}`
    /// for all quadruples, including diagonal units.
    pub fn check_brackets(&self) -> Result<(), GlError> {
        let r = self.shape.rank();
        let p = self.shape.p();
        let d = self.dim();
        let par = |a: usize, b: usize| (self.shape.parity(a) + self.shape.parity(b)) % 2;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let sign_odd = par(i, j) * par(k, l) == 1;
                        let x = self.action(i, j);
                        let y = self.action(k, l);
                        let yx = y.mul(x);
                        let lhs = if sign_odd { x.mul(y).add(&yx) } else { x.mul(y).sub(&yx) };
                        let mut rhs = FpMatrix::zeros(d, d, p);
                        if j == k {
                            rhs = rhs.add(self.action(i, l));
                        }
                        if l == i {
                            let t = self.action(k, j);
                            rhs = if sign_odd { rhs.add(t) } else { rhs.sub(t) };
                        }
                        if lhs != rhs {
                            return Err(GlError::Bracket {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                l: l + 1,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Compare the stored odd actions with the closed forms, entry for entry.
    pub fn check_closed_forms(&self) -> Result<(), GlError> {
        let (m, r, p) = (self.shape.m(), self.shape.rank(), self.shape.p());
        for i in 0..m {
            for j in m..r {
                for (a, b) in [(i, j), (j, i)] {
                    let mat = self.action(a, b);
                    for (col, mono) in self.basis.iter().enumerate() {
                        let mut expected = vec![0u64; self.dim()];
                        for (img, c) in reduce_images(closed_form_image(self.shape, self.kind, mono, a, b), p) {
                            expected[self.index[&img]] = c;
                        }
                        if mat.column(col) != expected {
                            return Err(GlError::ClosedFormMismatch {
                                i: a + 1,
                                j: b + 1,
                                basis: mono.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Odd generators of the chosen side, ordered by `(i, j)` with `i ≤ m < j`.
    pub fn side_generators(&self, side: Side) -> Vec<(usize, usize)> {
        let (m, r) = (self.shape.m(), self.shape.rank());
        let mut out = Vec::with_capacity(self.shape.odd_root_count());
        for i in 0..m {
            for j in m..r {
                out.push(match side {
                    Side::UOpp => (i, j),
                    Side::U => (j, i),
                });
            }
        }
        out
    }

    pub fn as_e_module(&self, side: Side) -> Result<ESuperModule, GlError> {
        let gens = self.side_generators(side);
        let actions = gens.iter().map(|&(a, b)| self.action(a, b).clone()).collect();
        let labels = WeightLabels {
            basis: self.weights.clone(),
            generators: gens
                .iter()
                .map(|&(a, b)| &Weight::epsilon(self.shape, a) - &Weight::epsilon(self.shape, b))
                .collect(),
        };
        Ok(ESuperModule::with_weights(
            self.shape.p(),
            self.parity.clone(),
            actions,
            labels,
        )?)
    }

    fn weight_classes(&self) -> BTreeMap<&Weight, Vec<usize>> {
        let mut classes: BTreeMap<&Weight, Vec<usize>> = BTreeMap::new();
        for (a, w) in self.weights.iter().enumerate() {
            classes.entry(w).or_default().push(a);
        }
        classes
    }

    /// Joint kernel of `ops` computed one weight space at a time; each basis
    /// vector is weight-homogeneous and in reduced echelon form.
    fn joint_kernel_by_weight(&self, ops: &[(usize, usize)], only: Option<&Weight>) -> Vec<(Weight, Vec<u64>)> {
        let p = self.shape.p();
        let mut out = Vec::new();
        for (w, cols) in self.weight_classes() {
            if only.is_some_and(|x| x != w) {
                continue;
            }
            let blocks: Vec<FpMatrix> = ops
                .iter()
                .map(|&(a, b)| {
                    let rows: Vec<usize> = (0..self.dim()).collect();
                    self.action(a, b).select(&rows, &cols)
                })
                .collect();
            let kernel = if blocks.is_empty() {
                (0..cols.len())
                    .map(|t| {
                        let mut v = vec![0; cols.len()];
                        v[t] = 1;
                        v
                    })
                    .collect()
            } else {
                let refs: Vec<&FpMatrix> = blocks.iter().collect();
                FpMatrix::vstack(&refs, cols.len(), p).nullspace()
            };
            let reduced = Subspace::spanned_by(cols.len(), p, &kernel);
            for v in reduced.basis() {
                let mut full = vec![0; self.dim()];
                for (&c, &x) in cols.iter().zip(v) {
                    full[c] = x;
                }
                out.push((w.clone(), full));
            }
        }
        out
    }

    /// `M^{U^opp}`: joint kernel of `e_{ij}`, `i ≤ m < j`.
    pub fn u_opp_invariants(&self) -> (Vec<Vec<u64>>, Character) {
        let ops = self.side_generators(Side::UOpp);
        let kernel = self.joint_kernel_by_weight(&ops, None);
        let ch = Character::from_weights(self.shape, kernel.iter().map(|(w, _)| w));
        (kernel.into_iter().map(|(_, v)| v).collect(), ch)
    }

    /// `M / M_U` where `M_U` is spanned by the images of `e_{ji}`, `i ≤ m < j`.
    /// Returns the basis monomials spanning a complement and the quotient character.
    pub fn u_coinvariants(&self) -> (Vec<Monomial>, Character) {
        let p = self.shape.p();
        let mut span = Subspace::new(self.dim(), p);
        for (a, b) in self.side_generators(Side::U) {
            let mat = self.action(a, b);
            for c in 0..self.dim() {
                span.insert(&mat.column(c));
            }
        }
        let mut is_pivot = vec![false; self.dim()];
        for &c in span.pivots() {
            is_pivot[c] = true;
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|&c| !is_pivot[c]).collect();
        let ch = Character::from_weights(self.shape, keep.iter().map(|&c| &self.weights[c]));
        (keep.into_iter().map(|c| self.basis[c].clone()).collect(), ch)
    }

    /// Weight-`λ` vectors killed by every `e_{ij}` with `i < j`.
    pub fn b_opp_primitive_vectors(&self, lambda: &Weight) -> Result<Vec<Vec<u64>>, GlError> {
        if lambda.shape() != self.shape {
            return Err(GlError::WeightShape(lambda.to_string()));
        }
        let r = self.shape.rank();
        let ops: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
        Ok(self
            .joint_kernel_by_weight(&ops, Some(lambda))
            .into_iter()
            .map(|(_, v)| v)
            .collect())
    }

    /// Parity of a weight-homogeneous vector (all monomials of one weight share a parity).
    pub fn vector_parity(&self, v: &[u64]) -> Option<u8> {
        v.iter().position(|&x| x != 0).map(|a| self.parity[a])
    }

    /// Express a vector as a sum of basis monomials.
    pub fn describe_vector(&self, v: &[u64]) -> String {
        let p = self.shape.p();
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(a, &x)| {
                let c = if x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    x.to_string()
                };
                if c == "1" {
                    self.basis[a].to_string()
                } else {
                    format!("{c}*{}", self.basis[a])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub fn natural_module(shape: BlockShape) -> Result<GLModule, GlError> {
    let basis = (0..shape.rank())
        .map(|a| {
            let mut e = vec![0u32; shape.rank()];
            e[a] = 1;
            Monomial(e)
        })
        .collect();
    GLModule::build(shape, ModuleKind::Natural, 1, basis)
}

pub fn exterior_power(shape: BlockShape, k: usize) -> Result<GLModule, GlError> {
    GLModule::build(shape, ModuleKind::Exterior, k, exterior_basis(shape, k))
}

pub fn symmetric_power(shape: BlockShape, k: usize) -> Result<GLModule, GlError> {
    GLModule::build(shape, ModuleKind::Symmetric, k, symmetric_basis(shape, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiltrationKind {
    Good,
    Weyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Answer {
    #[serde(rename = "No_NotInjectiveOverU")]
    NotInjectiveOverU,
    #[serde(rename = "No_NegativeMultiplicity")]
    NegativeMultiplicity,
    #[serde(rename = "Yes_CharacterLevel")]
    YesCharacterLevel,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::YesCharacterLevel
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::NotInjectiveOverU => "No_NotInjectiveOverU",
            Answer::NegativeMultiplicity => "No_NegativeMultiplicity",
            Answer::YesCharacterLevel => "Yes_CharacterLevel",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityEntry {
    pub weight: String,
    pub multiplicity: String,
    /// Parities of the `B^opp`-primitive vectors of this weight in `M`.
    pub primitive_parities: Vec<u8>,
}

/// Outcome of a filtration check with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationVerdict {
    pub filtration: FiltrationKind,
    pub answer: Answer,
    /// `dim H^1(U^opp, M)` for good filtrations, `dim H_1(U, M)` for Weyl.
    pub degree_one_dim: usize,
    pub multiplicities: Vec<MultiplicityEntry>,
    #[serde(skip)]
    pub decomposition: Option<Decomposition>,
}

fn verdict_from_character(
    module: &GLModule,
    filtration: FiltrationKind,
    degree_one_dim: usize,
    ch: &Character,
) -> Result<FiltrationVerdict, GlError> {
    if degree_one_dim != 0 {
        return Ok(FiltrationVerdict {
            filtration,
            answer: Answer::NotInjectiveOverU,
            degree_one_dim,
            multiplicities: Vec::new(),
            decomposition: None,
        });
    }
    let decomposition = decompose_good(ch, FiltrationBasis::Even)?;
    let answer = if decomposition.has_negative() {
        Answer::NegativeMultiplicity
    } else {
        Answer::YesCharacterLevel
    };
    let multiplicities = decomposition
        .multiplicities
        .iter()
        .rev()
        .map(|(w, c): (&Weight, &BigInt)| {
            let primitive_parities = module
                .b_opp_primitive_vectors(w)
                .map(|vs| vs.iter().filter_map(|v| module.vector_parity(v)).collect())
                .unwrap_or_default();
            MultiplicityEntry {
                weight: w.to_string(),
                multiplicity: c.to_string(),
                primitive_parities,
            }
        })
        .collect();
    Ok(FiltrationVerdict {
        filtration,
        answer,
        degree_one_dim,
        multiplicities,
        decomposition: Some(decomposition),
    })
}

/// `H^1(U^opp, M) = 0` and the invariants decompose with nonnegative
/// multiplicities in the `ch H^0_ev` basis.
pub fn check_good_filtration(module: &GLModule) -> Result<FiltrationVerdict, GlError> {
    let h1 = cohomology_dim(&module.as_e_module(Side::UOpp)?, 1)?;
    let (_, ch) = module.u_opp_invariants();
    verdict_from_character(module, FiltrationKind::Good, h1, &ch)
}

/// `H_1(U, M) = 0` and the coinvariants decompose with nonnegative
/// multiplicities.
pub fn check_weyl_filtration(module: &GLModule) -> Result<FiltrationVerdict, GlError> {
    let h1 = homology_dim(&module.as_e_module(Side::U)?, 1)?;
    let (_, ch) = module.u_coinvariants();
    verdict_from_character(module, FiltrationKind::Weyl, h1, &ch)
}

/// Monomials predicted to span `Λ^k(W)^{U^opp}`:
/// `⊕_{i ≤ min(k, m-1), p | k-i} Λ^i(W_0) ⊗ S^{(k-i)/p}(W_1^p)`, plus
/// `Λ^m(W_0) ⊗ S^{k-m}(W_1)` when `k ≥ m`.
pub fn predicted_exterior_invariants(shape: BlockShape, k: usize) -> Vec<Monomial> {
    let (m, n, p) = (shape.m(), shape.n(), shape.p() as usize);
    let mut out = Vec::new();
    for i in 0..=k.min(m - 1) {
        if !(k - i).is_multiple_of(p) {
            continue;
        }
        for set in combinations(m, i) {
            for beta in compositions(((k - i) / p) as u32, n) {
                let mut e = vec![0u32; m + n];
                for &a in &set {
                    e[a] = 1;
                }
                for (t, b) in beta.iter().enumerate() {
                    e[m + t] = b * p as u32;
                }
                out.push(Monomial(e));
            }
        }
    }
    if k >= m {
        for beta in compositions((k - m) as u32, n) {
            let mut e = vec![1u32; m];
            e.extend(beta);
            out.push(Monomial(e));
        }
    }
    out.sort();
    out
}

/// True iff the computed invariant subspace of `Λ^k(W)` has exactly the
/// predicted monomial basis.
pub fn verify_exterior_invariants_formula(shape: BlockShape, k: usize) -> Result<bool, GlError> {
    let module = exterior_power(shape, k)?;
    let (kernel, _) = module.u_opp_invariants();
    let mut computed = Vec::with_capacity(kernel.len());
    for v in &kernel {
        let support: Vec<usize> = (0..v.len()).filter(|&a| v[a] != 0).collect();
        if support.len() != 1 {
            return Ok(false);
        }
        computed.push(module.basis[support[0]].clone());
    }
    computed.sort();
    Ok(computed == predicted_exterior_invariants(shape, k))
}

/// Negate the matrix of one operator, for mutation testing.
pub fn negated(mat: &FpMatrix) -> FpMatrix {
    let p = mat.prime();
    FpMatrix::from_fn(mat.rows(), mat.cols(), p, |i, j| sub_mod(0, mat.get(i, j), p))
}
