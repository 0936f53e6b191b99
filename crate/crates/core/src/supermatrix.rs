//! Supermatrices with entries in a Grassmann algebra over the rationals, and
//! the Berezinian `Ber(C) = det(C00 - C01 C11^{-1} C10) · det(C11)^{-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassmann::monomial_product_sign;

/// Largest number of odd symbols accepted.
pub const MAX_SYMBOLS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuperMatrixError {
    #[error("too many odd symbols: {0}")]
    TooManySymbols(usize),
    #[error("block {block} has shape {got:?}, expected {expected:?}")]
    BlockShape {
        block: &'static str,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("entry ({row}, {col}) of block {block} has the wrong parity")]
    Parity {
        block: &'static str,
        row: usize,
        col: usize,
    },
    #[error("{0} has a non-invertible body")]
    NotInvertible(&'static str),
    #[error("symbol index {0} out of range")]
    SymbolIndex(usize),
    #[error("cannot parse rational {0:?}")]
    Rational(String),
    #[error("operands use different shapes or symbol counts")]
    Mismatch,
}

/// An element of the Grassmann algebra on `symbols` odd generators over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannQ {
    symbols: usize,
    coeffs: Vec<BigRational>,
}

impl GrassmannQ {
    pub fn zero(symbols: usize) -> Self {
        Self {
            symbols,
            coeffs: vec![BigRational::zero(); 1 << symbols],
        }
    }

    pub fn scalar(symbols: usize, c: BigRational) -> Self {
        let mut x = Self::zero(symbols);
        x.coeffs[0] = c;
        x
    }

    pub fn one(symbols: usize) -> Self {
        Self::scalar(symbols, BigRational::one())
    }

    pub fn from_int(symbols: usize, c: i64) -> Self {
        Self::scalar(symbols, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(symbols: usize, subset: u32, c: BigRational) -> Self {
        let mut x = Self::zero(symbols);
        x.coeffs[subset as usize] = c;
        x
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn coefficient(&self, subset: u32) -> &BigRational {
        &self.coeffs[subset as usize]
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s as u32, c))
    }

    pub fn body(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_even(&self) -> bool {
        self.terms().all(|(s, _)| s.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms().all(|(s, _)| s.count_ones() % 2 == 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            symbols: self.symbols,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            symbols: self.symbols,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            symbols: self.symbols,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            symbols: self.symbols,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.symbols, other.symbols);
        let mut out = Self::zero(self.symbols);
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                if let Some(neg) = monomial_product_sign(s, t) {
                    let prod = a * b;
                    let slot = &mut out.coeffs[(s | t) as usize];
                    if neg {
                        *slot -= prod;
                    } else {
                        *slot += prod;
                    }
                }
            }
        }
        out
    }

    /// Inverse via the geometric series in the nilpotent part.
    pub fn inverse(&self) -> Option<Self> {
        if self.body().is_zero() {
            return None;
        }
        let b_inv = self.body().recip();
        // x = b (1 + n), n nilpotent of order ≤ symbols + 1
        let mut n = self.scale(&b_inv);
        n.coeffs[0] = BigRational::zero();
        let mut sum = Self::one(self.symbols);
        let mut power = Self::one(self.symbols);
        let minus_n = n.neg();
        for _ in 0..self.symbols {
            power = power.mul(&minus_n);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Some(sum.scale(&b_inv))
    }

    /// Drop every term containing an odd symbol.
    pub fn body_only(&self) -> Self {
        Self::scalar(self.symbols, self.body().clone())
    }

    pub fn record(&self) -> Vec<EntryTerm> {
        self.terms()
            .map(|(s, c)| EntryTerm(subset_to_indices(s), c.to_string()))
            .collect()
    }
}

impl fmt::Debug for GrassmannQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GrassmannQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if s == 0 {
                write!(f, "{c}")?;
            } else {
                let names: Vec<String> = subset_to_indices(s).iter().map(|a| format!("t{a}")).collect();
                write!(f, "{c}*{}", names.join(""))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn subset_to_indices(s: u32) -> Vec<usize> {
    (0..32).filter(|&a| s >> a & 1 == 1).map(|a| a + 1).collect()
}

type Block = Vec<Vec<GrassmannQ>>;

fn block_mul(a: &Block, b: &Block, symbols: usize) -> Block {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|k| (0..inner).fold(GrassmannQ::zero(symbols), |acc, j| acc.add(&a[i][j].mul(&b[j][k]))))
                .collect()
        })
        .collect()
}

fn block_add(a: &Block, b: &Block) -> Block {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u.add(v)).collect())
        .collect()
}

fn block_neg(a: &Block) -> Block {
    a.iter().map(|r| r.iter().map(GrassmannQ::neg).collect()).collect()
}

/// Determinant of a matrix with even (hence pairwise commuting) entries.
fn even_det(a: &Block, symbols: usize) -> GrassmannQ {
    let n = a.len();
    match n {
        0 => GrassmannQ::one(symbols),
        1 => a[0][0].clone(),
        _ => {
            let mut acc = GrassmannQ::zero(symbols);
            for c in 0..n {
                let minor: Block = (1..n)
                    .map(|i| (0..n).filter(|&j| j != c).map(|j| a[i][j].clone()).collect())
                    .collect();
                let term = a[0][c].mul(&even_det(&minor, symbols));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Inverse of an even matrix by adjugate over determinant.
fn even_inverse(a: &Block, symbols: usize, what: &'static str) -> Result<Block, SuperMatrixError> {
    let n = a.len();
    let det_inv = even_det(a, symbols)
        .inverse()
        .ok_or(SuperMatrixError::NotInvertible(what))?;
    let mut out = vec![vec![GrassmannQ::zero(symbols); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // adj[i][j] = (-1)^{i+j} det(minor removing row j, column i)
            let minor: Block = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c].clone()).collect())
                .collect();
            let cof = even_det(&minor, symbols);
            let cof = if (i + j) % 2 == 1 { cof.neg() } else { cof };
            *slot = cof.mul(&det_inv);
        }
    }
    Ok(out)
}

/// `C = (C00 C01; C10 C11)` with even diagonal and odd off-diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    m: usize,
    n: usize,
    symbols: usize,
    c00: Block,
    c01: Block,
    c10: Block,
    c11: Block,
}

impl SuperMatrix {
    pub fn new(
        m: usize,
        n: usize,
        symbols: usize,
        c00: Block,
        c01: Block,
        c10: Block,
        c11: Block,
    ) -> Result<Self, SuperMatrixError> {
        if symbols > MAX_SYMBOLS {
            return Err(SuperMatrixError::TooManySymbols(symbols));
        }
        for (block, b, rows, cols, even) in [
            ("c00", &c00, m, m, true),
            ("c01", &c01, m, n, false),
            ("c10", &c10, n, m, false),
            ("c11", &c11, n, n, true),
        ] {
            if b.len() != rows || b.iter().any(|r| r.len() != cols) {
                return Err(SuperMatrixError::BlockShape {
                    block,
                    expected: (rows, cols),
                    got: (b.len(), b.first().map_or(0, Vec::len)),
                });
            }
            for (row, r) in b.iter().enumerate() {
                for (col, x) in r.iter().enumerate() {
                    if x.symbols != symbols || (even && !x.is_even()) || (!even && !x.is_odd()) {
                        return Err(SuperMatrixError::Parity { block, row, col });
                    }
                }
            }
        }
        Ok(Self {
            m,
            n,
            symbols,
            c00,
            c01,
            c10,
            c11,
        })
    }

    pub fn identity(m: usize, n: usize, symbols: usize) -> Self {
        let diag = |k: usize| -> Block {
            (0..k)
                .map(|i| (0..k).map(|j| GrassmannQ::from_int(symbols, (i == j) as i64)).collect())
                .collect()
        };
        let zeros = |r: usize, c: usize| -> Block { vec![vec![GrassmannQ::zero(symbols); c]; r] };
        Self {
            m,
            n,
            symbols,
            c00: diag(m),
            c01: zeros(m, n),
            c10: zeros(n, m),
            c11: diag(n),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn blocks(&self) -> [&Block; 4] {
        [&self.c00, &self.c01, &self.c10, &self.c11]
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, SuperMatrixError> {
        if self.shape() != other.shape() || self.symbols != other.symbols {
            return Err(SuperMatrixError::Mismatch);
        }
        let s = self.symbols;
        let (a, b) = (self, other);
        Ok(Self {
            m: self.m,
            n: self.n,
            symbols: s,
            c00: block_add(&block_mul(&a.c00, &b.c00, s), &block_mul(&a.c01, &b.c10, s)),
            c01: block_add(&block_mul(&a.c00, &b.c01, s), &block_mul(&a.c01, &b.c11, s)),
            c10: block_add(&block_mul(&a.c10, &b.c00, s), &block_mul(&a.c11, &b.c10, s)),
            c11: block_add(&block_mul(&a.c10, &b.c01, s), &block_mul(&a.c11, &b.c11, s)),
        })
    }

    /// Block inverse through the Schur complement `S = C00 - C01 C11^{-1} C10`.
    pub fn invert(&self) -> Result<Self, SuperMatrixError> {
        let s = self.symbols;
        let d_inv = even_inverse(&self.c11, s, "C11")?;
        let schur = block_add(
            &self.c00,
            &block_neg(&block_mul(&block_mul(&self.c01, &d_inv, s), &self.c10, s)),
        );
        let s_inv = even_inverse(&schur, s, "C00")?;
        let b_dinv = block_mul(&self.c01, &d_inv, s);
        let dinv_c = block_mul(&d_inv, &self.c10, s);
        let c01 = block_neg(&block_mul(&s_inv, &b_dinv, s));
        let c10 = block_neg(&block_mul(&dinv_c, &s_inv, s));
        let c11 = block_add(&d_inv, &block_mul(&block_mul(&dinv_c, &s_inv, s), &b_dinv, s));
        Ok(Self {
            m: self.m,
            n: self.n,
            symbols: s,
            c00: s_inv,
            c01,
            c10,
            c11,
        })
    }

    pub fn berezinian(&self) -> Result<GrassmannQ, SuperMatrixError> {
        let s = self.symbols;
        let d_inv = even_inverse(&self.c11, s, "C11")?;
        let schur = block_add(
            &self.c00,
            &block_neg(&block_mul(&block_mul(&self.c01, &d_inv, s), &self.c10, s)),
        );
        let det_d_inv = even_det(&self.c11, s)
            .inverse()
            .ok_or(SuperMatrixError::NotInvertible("C11"))?;
        Ok(even_det(&schur, s).mul(&det_d_inv))
    }

    /// Set every odd symbol to zero.
    pub fn body_only(&self) -> Self {
        let f = |b: &Block| -> Block {
            b.iter()
                .map(|r| r.iter().map(GrassmannQ::body_only).collect())
                .collect()
        };
        Self {
            m: self.m,
            n: self.n,
            symbols: self.symbols,
            c00: f(&self.c00),
            c01: f(&self.c01),
            c10: f(&self.c10),
            c11: f(&self.c11),
        }
    }

    pub fn record(&self) -> SuperMatrixRecord {
        let f = |b: &Block| -> Vec<Vec<Vec<EntryTerm>>> {
            b.iter().map(|r| r.iter().map(GrassmannQ::record).collect()).collect()
        };
        SuperMatrixRecord {
            m: self.m,
            n: self.n,
            symbols: self.symbols,
            c00: f(&self.c00),
            c01: f(&self.c01),
            c10: f(&self.c10),
            c11: f(&self.c11),
        }
    }
}

/// One term of an entry: 1-based symbol indices and a rational like `"3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryTerm(pub Vec<usize>, pub String);

/// JSON form of a supermatrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperMatrixRecord {
    pub m: usize,
    pub n: usize,
    pub symbols: usize,
    pub c00: Vec<Vec<Vec<EntryTerm>>>,
    pub c01: Vec<Vec<Vec<EntryTerm>>>,
    pub c10: Vec<Vec<Vec<EntryTerm>>>,
    pub c11: Vec<Vec<Vec<EntryTerm>>>,
}

pub fn parse_rational(text: &str) -> Result<BigRational, SuperMatrixError> {
    let err = || SuperMatrixError::Rational(text.to_string());
    let t = text.trim();
    match t.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| err())?;
            let den: BigInt = b.trim().parse().map_err(|_| err())?;
            if den.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| err())?)),
    }
}

pub fn entry_from_terms(symbols: usize, terms: &[EntryTerm]) -> Result<GrassmannQ, SuperMatrixError> {
    let mut x = GrassmannQ::zero(symbols);
    for EntryTerm(indices, c) in terms {
        let mut mask = 0u32;
        let mut sign_neg = false;
        for &a in indices {
            if a == 0 || a > symbols {
                return Err(SuperMatrixError::SymbolIndex(a));
            }
            // listed order need not be increasing: t_a t_b = -t_b t_a
            match monomial_product_sign(mask, 1 << (a - 1)) {
                Some(neg) => {
                    sign_neg ^= neg;
                    mask |= 1 << (a - 1);
                }
                None => {
                    mask = u32::MAX;
                    break;
                }
            }
        }
        if mask == u32::MAX {
            continue;
        }
        let c = parse_rational(c)?;
        let c = if sign_neg { -c } else { c };
        x = x.add(&GrassmannQ::monomial(symbols, mask, c));
    }
    Ok(x)
}

impl TryFrom<SuperMatrixRecord> for SuperMatrix {
    type Error = SuperMatrixError;

    fn try_from(r: SuperMatrixRecord) -> Result<Self, SuperMatrixError> {
        if r.symbols > MAX_SYMBOLS {
            return Err(SuperMatrixError::TooManySymbols(r.symbols));
        }
        let s = r.symbols;
        let f = |b: &Vec<Vec<Vec<EntryTerm>>>| -> Result<Block, SuperMatrixError> {
            b.iter()
                .map(|row| row.iter().map(|e| entry_from_terms(s, e)).collect())
                .collect()
        };
        SuperMatrix::new(r.m, r.n, s, f(&r.c00)?, f(&r.c01)?, f(&r.c10)?, f(&r.c11)?)
    }
}

fn random_entry<R: Rng + ?Sized>(rng: &mut R, symbols: usize, even: bool, with_body: bool) -> GrassmannQ {
    let mut x = GrassmannQ::zero(symbols);
    for s in 0..(1u32 << symbols) {
        let deg = s.count_ones() as usize;
        if deg.is_multiple_of(2) != even {
            continue;
        }
        if s == 0 && !with_body {
            continue;
        }
        if s == 0 || rng.gen_bool(0.6) {
            let num = rng.gen_range(-5i64..=5);
            let den = rng.gen_range(1i64..=3);
            x.coeffs[s as usize] = BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
    x
}

/// A random supermatrix whose diagonal blocks have invertible bodies.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, symbols: usize) -> SuperMatrix {
    loop {
        let even_block = |rng: &mut R, k: usize| -> Block {
            (0..k)
                .map(|_| (0..k).map(|_| random_entry(rng, symbols, true, true)).collect())
                .collect()
        };
        let odd_block = |rng: &mut R, r: usize, c: usize| -> Block {
            (0..r)
                .map(|_| (0..c).map(|_| random_entry(rng, symbols, false, false)).collect())
                .collect()
        };
        let c00 = even_block(rng, m);
        let c11 = even_block(rng, n);
        let body_ok = |b: &Block| !even_det(b, symbols).body().is_zero();
        if !body_ok(&c00) || !body_ok(&c11) {
            continue;
        }
        let c01 = odd_block(rng, m, n);
        let c10 = odd_block(rng, n, m);
        return SuperMatrix::new(m, n, symbols, c00, c01, c10, c11).expect("parities by construction");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn diag(symbols: usize, a: i64, d: i64) -> SuperMatrix {
        SuperMatrix::new(
            1,
            1,
            symbols,
            vec![vec![GrassmannQ::from_int(symbols, a)]],
            vec![vec![GrassmannQ::zero(symbols)]],
            vec![vec![GrassmannQ::zero(symbols)]],
            vec![vec![GrassmannQ::from_int(symbols, d)]],
        )
        .unwrap()
    }

    #[test]
    fn grassmann_inverse() {
        let x = GrassmannQ::from_int(3, 2)
            .add(&GrassmannQ::monomial(3, 0b011, q(1, 1)))
            .add(&GrassmannQ::monomial(3, 0b001, q(3, 2)));
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv), GrassmannQ::one(3));
        assert_eq!(inv.mul(&x), GrassmannQ::one(3));
        assert!(GrassmannQ::monomial(2, 1, q(1, 1)).inverse().is_none());
    }

    #[test]
    fn examples() {
        let a = diag(2, 2, 3);
        assert_eq!(SuperMatrix::identity(1, 1, 2).multiply(&a).unwrap(), a);
        let inv = a.invert().unwrap();
        assert_eq!(inv.c00[0][0], GrassmannQ::scalar(2, q(1, 2)));
        assert_eq!(inv.c11[0][0], GrassmannQ::scalar(2, q(1, 3)));
        assert_eq!(SuperMatrix::identity(2, 2, 3).berezinian().unwrap(), GrassmannQ::one(3));
        assert_eq!(a.berezinian().unwrap(), GrassmannQ::scalar(2, q(2, 3)));
    }

    #[test]
    fn one_by_one_closed_form() {
        // Ber (a θ1; θ2 d) = (a - θ1 θ2 / d) / d
        let s = 2;
        let t1 = GrassmannQ::monomial(s, 0b01, q(1, 1));
        let t2 = GrassmannQ::monomial(s, 0b10, q(1, 1));
        let m = SuperMatrix::new(
            1,
            1,
            s,
            vec![vec![GrassmannQ::from_int(s, 5)]],
            vec![vec![t1]],
            vec![vec![t2]],
            vec![vec![GrassmannQ::from_int(s, 2)]],
        )
        .unwrap();
        let expected = GrassmannQ::scalar(s, q(5, 2)).sub(&GrassmannQ::monomial(s, 0b11, q(1, 4)));
        assert_eq!(m.berezinian().unwrap(), expected);
    }

    #[test]
    fn random_inverse_and_multiplicativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (m, n, s) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(0..=3));
            let a = random_invertible(&mut rng, m, n, s);
            let b = random_invertible(&mut rng, m, n, s);
            assert_eq!(
                a.multiply(&a.invert().unwrap()).unwrap(),
                SuperMatrix::identity(m, n, s)
            );
            let ab = a.multiply(&b).unwrap();
            assert_eq!(
                ab.berezinian().unwrap(),
                a.berezinian().unwrap().mul(&b.berezinian().unwrap())
            );
            assert_eq!(a.body_only().berezinian().unwrap(), a.berezinian().unwrap().body_only());
        }
    }

    #[test]
    fn parity_violations_rejected() {
        let s = 1;
        let err = SuperMatrix::new(
            1,
            1,
            s,
            vec![vec![GrassmannQ::monomial(s, 1, q(1, 1))]],
            vec![vec![GrassmannQ::zero(s)]],
            vec![vec![GrassmannQ::zero(s)]],
            vec![vec![GrassmannQ::one(s)]],
        )
        .unwrap_err();
        assert!(matches!(err, SuperMatrixError::Parity { block: "c00", .. }));
    }

    #[test]
    fn record_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_invertible(&mut rng, 2, 1, 3);
        let json = serde_json::to_string(&a.record()).unwrap();
        let back: SuperMatrixRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(SuperMatrix::try_from(back).unwrap(), a);
        // unordered subsets pick up the reordering sign
        let x = entry_from_terms(2, &[EntryTerm(vec![2, 1], "3".into())]).unwrap();
        assert_eq!(x, GrassmannQ::monomial(2, 0b11, q(-3, 1)));
        assert!(parse_rational("1/0").is_err());
    }
}
