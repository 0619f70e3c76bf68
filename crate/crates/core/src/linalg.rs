//! Dense linear algebra over prime fields GF(p).
//!
//! Every decision procedure in this crate bottoms out here: ranks of induced
//! window maps, kernels of finite homogeneous systems and affine solves for
//! preimages, inverse rules and shadow points. Entries are `u32` residues and
//! every product is reduced immediately, so `p < 2^16` keeps all intermediate
//! values inside `u64`.
//!
//! Elimination uses first-nonzero pivoting and produces the reduced row
//! echelon form. Over GF(2) rows are bit-packed; since the reduced echelon form
//! is unique, the packed path returns exactly what the generic path returns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 16;

pub type Vector = Vec<u32>;

/// A prime field GF(p) with `p < 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0 && a < self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        debug_assert_eq!(a.len(), b.len());
        let acc = a
            .iter()
            .zip(b)
            .fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % self.p as u64);
        acc as u32
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn scale_vec(self, c: u32, a: &[u32]) -> Vector {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }
}

/// A scalar tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    pub value: u32,
    pub modulus: u32,
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Row-major dense matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix(p={}, {}x{}) [", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Solution set of `A x = b`: a particular solution (if consistent) plus a
/// basis of `ker A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Option<Vector>,
    pub kernel_basis: Vec<Vector>,
}

impl AffineSolution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: FieldMatrix,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of arbitrary integers, reducing mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.from_i64(v)))
            .collect();
        Ok(Self {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v >= field.p) {
            return Err(Error::Malformed(format!("entry {bad} not reduced mod {}", field.p)));
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// A single column.
    pub fn column(field: PrimeField, v: &[u32]) -> Self {
        Self {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.p);
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        Ok(Self {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: f.add_vec(&self.data, &other.data),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let p = f.p as u64;
        let mut out = Self::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, c) as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect())
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn echelon(&self) -> Echelon {
        if self.field.p == 2 {
            echelon_gf2(self)
        } else {
            echelon_generic(self)
        }
    }

    /// The generic elimination path regardless of modulus; exposed so the
    /// packed GF(2) path can be checked against it.
    pub fn echelon_generic(&self) -> Echelon {
        echelon_generic(self)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space, one vector per free column in
    /// increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let ech = self.echelon();
        kernel_from_echelon(&ech, self.cols)
    }

    /// Solves `self * x = b`; free variables of the particular solution are 0.
    pub fn solve_affine(&self, b: &[u32]) -> Result<AffineSolution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let n = self.cols;
        let mut aug = Self::zeros(self.field, self.rows, n + 1);
        for (r, &br) in b.iter().enumerate() {
            aug.data[r * (n + 1)..r * (n + 1) + n].copy_from_slice(self.row(r));
            aug.data[r * (n + 1) + n] = br % self.field.p;
        }
        let ech = aug.echelon();
        let consistent = ech.pivots.last().is_none_or(|&c| c < n);
        let particular = consistent.then(|| {
            let mut x = vec![0u32; n];
            for (i, &c) in ech.pivots.iter().enumerate() {
                x[c] = ech.reduced.get(i, n);
            }
            x
        });
        let pivots: Vec<usize> = ech.pivots.iter().copied().filter(|&c| c < n).collect();
        let kernel_basis = kernel_from_pivots(&ech.reduced, &pivots, n);
        Ok(AffineSolution {
            particular,
            kernel_basis,
        })
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            aug.data[r * 2 * n..r * 2 * n + n].copy_from_slice(self.row(r));
            aug.data[r * 2 * n + n + r] = 1;
        }
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = ech.reduced.get(r, n + c);
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

fn kernel_from_echelon(ech: &Echelon, cols: usize) -> Vec<Vector> {
    kernel_from_pivots(&ech.reduced, &ech.pivots, cols)
}

fn kernel_from_pivots(reduced: &FieldMatrix, pivots: &[usize], cols: usize) -> Vec<Vector> {
    let f = reduced.field;
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(reduced.get(i, free));
            }
            v
        })
        .collect()
}

fn echelon_generic(m: &FieldMatrix) -> Echelon {
    let f = m.field;
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        for j in c..cols {
            let v = a.get(r, j);
            a.data[r * cols + j] = f.mul(v, inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f.mul(factor, a.get(r, j));
                a.data[i * cols + j] = f.sub(a.data[i * cols + j], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: a, pivots }
}

fn echelon_gf2(m: &FieldMatrix) -> Echelon {
    let (rows, cols) = (m.rows, m.cols);
    let words = cols.div_ceil(64);
    let mut bits = vec![0u64; rows * words];
    for r in 0..rows {
        for c in 0..cols {
            if m.get(r, c) & 1 == 1 {
                bits[r * words + c / 64] |= 1 << (c % 64);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows).find(|&i| bits[i * words + w] & b != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..words {
                bits.swap(pr * words + j, r * words + j);
            }
        }
        for i in 0..rows {
            if i != r && bits[i * words + w] & b != 0 {
                for j in w..words {
                    let v = bits[r * words + j];
                    bits[i * words + j] ^= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut reduced = FieldMatrix::zeros(m.field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            reduced.data[r * cols + c] = ((bits[r * words + c / 64] >> (c % 64)) & 1) as u32;
        }
    }
    Echelon { reduced, pivots }
}
