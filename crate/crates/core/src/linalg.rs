//! Exact matrix rank over the rationals and over prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient field for homology and rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldChoice {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldChoice {
    /// Validating constructor for prime fields.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldChoice::Prime(p))
        } else {
            Err(Error::input(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldChoice::Rationals => 0,
            FieldChoice::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "QQ"),
            FieldChoice::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl Serialize for FieldChoice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `q` (rationals) or `fp:P`.
impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") {
            return Ok(FieldChoice::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::input(format!("bad prime in field option {s:?}")))?;
            return FieldChoice::prime(p);
        }
        Err(Error::input(format!("unknown field {s:?}; expected q or fp:P")))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    fn row_vecs<T: From<i64>>(&self) -> Vec<Vec<T>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|r| r.iter().map(|&v| T::from(v)).collect())
            .collect()
    }
}

trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    /// `(a*d - b*c) / e`, `None` on overflow.
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Option<Self>;
}

impl Scalar for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn cross(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Option<Self> {
        let x = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(x % e, 0);
        Some(x / e)
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        self.sign() == num_bigint::Sign::NoSign
    }

    fn cross(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Option<Self> {
        Some((a * d - b * c) / e)
    }
}

/// Fraction-free (Bareiss) elimination; every intermediate entry is a minor
/// of the input, so the division is exact.
fn bareiss_rank<T: Scalar + From<i64>>(mut m: Vec<Vec<T>>, cols: usize) -> Option<usize> {
    let rows = m.len();
    let mut prev = T::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                for j in c + 1..cols {
                    if !row[j].is_zero() {
                        row[j] = T::cross(&pivot_row[c], &row[j], &T::from(0), &T::from(0), &prev)?;
                    }
                }
            } else {
                for j in c + 1..cols {
                    row[j] = T::cross(&pivot_row[c], &row[j], &row[c], &pivot_row[j], &prev)?;
                }
                row[c] = T::from(0);
            }
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    Some(rank)
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rank_rational(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss_rank::<i128>(m.row_vecs(), m.cols)
        .unwrap_or_else(|| bareiss_rank::<BigInt>(m.row_vecs(), m.cols).expect("bigint never overflows"))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rank over `GF(p)`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    debug_assert!(is_prime(p));
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let pi = p as i128;
    let mut a: Vec<Vec<u64>> = m
        .data
        .chunks(m.cols)
        .map(|r| r.iter().map(|&v| (v as i128).rem_euclid(pi) as u64).collect())
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = (row[c] as u128 * inv as u128 % p as u128) as u64;
            for j in c..cols {
                let sub = (f as u128 * pivot_row[j] as u128 % p as u128) as u64;
                row[j] = (row[j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the given field.
pub fn rank_over(m: &IntMatrix, field: FieldChoice) -> usize {
    match field {
        FieldChoice::Rationals => rank_rational(m),
        FieldChoice::Prime(p) => rank_mod_p(m, p),
    }
}

const RECONSTRUCTION_PRIMES: [u64; 4] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    1_000_000_007,
    998_244_353,
];

/// Rational rank reconstructed from ranks modulo several large primes.
///
/// Reduction mod `p` never raises the rank, and lowers it only when `p`
/// divides every maximal nonzero minor, so the maximum over distinct large
/// primes is the rational rank for any matrix of moderate size.
pub fn rank_rational_multimodular(m: &IntMatrix) -> usize {
    RECONSTRUCTION_PRIMES
        .iter()
        .map(|&p| rank_mod_p(m, p))
        .max()
        .unwrap_or(0)
}
