//! Cells of ℤ or ℤ², the ambient universe and memory sets.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::PrimeField;

/// A point of ℤᵈ with `d ∈ {1, 2}`. Ordered lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    coords: [i64; 2],
    dim: u8,
}

impl Cell {
    pub fn d1(n: i64) -> Self {
        Self {
            coords: [n, 0],
            dim: 1,
        }
    }

    pub fn d2(x: i64, y: i64) -> Self {
        Self {
            coords: [x, y],
            dim: 2,
        }
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: [0, 0],
            dim: dim as u8,
        }
    }

    pub fn from_coords(coords: &[i64]) -> Result<Self> {
        match *coords {
            [n] => Ok(Self::d1(n)),
            [x, y] => Ok(Self::d2(x, y)),
            _ => Err(Error::Malformed(format!(
                "cell {coords:?} must have 1 or 2 coordinates"
            ))),
        }
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.dim as usize
    }

    /// First coordinate; the position on the line when `d = 1`.
    #[inline]
    pub fn x(self) -> i64 {
        self.coords[0]
    }

    #[inline]
    pub fn y(self) -> i64 {
        self.coords[1]
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim as usize]
    }

    /// Chebyshev norm, so that `E_n = { c : |c|∞ ≤ n }`.
    pub fn sup_norm(self) -> i64 {
        self.coords().iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl Add for Cell {
    type Output = Cell;
    fn add(self, o: Cell) -> Cell {
        debug_assert_eq!(self.dim, o.dim);
        Cell {
            coords: [self.coords[0] + o.coords[0], self.coords[1] + o.coords[1]],
            dim: self.dim,
        }
    }
}

impl Sub for Cell {
    type Output = Cell;
    fn sub(self, o: Cell) -> Cell {
        self + (-o)
    }
}

impl Neg for Cell {
    type Output = Cell;
    fn neg(self) -> Cell {
        Cell {
            coords: [-self.coords[0], -self.coords[1]],
            dim: self.dim,
        }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            1 => write!(f, "[{}]", self.coords[0]),
            _ => write!(f, "[{},{}]", self.coords[0], self.coords[1]),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        Cell::from_coords(&v).map_err(serde::de::Error::custom)
    }
}

/// The cube `E_n = [-n, n]ᵈ`, listed lexicographically.
pub fn cube(dim: usize, n: i64) -> Vec<Cell> {
    match dim {
        1 => (-n..=n).map(Cell::d1).collect(),
        _ => (-n..=n)
            .flat_map(|x| (-n..=n).map(move |y| Cell::d2(x, y)))
            .collect(),
    }
}

/// The interval `[lo, hi]` of ℤ.
pub fn interval(lo: i64, hi: i64) -> Vec<Cell> {
    (lo..=hi).map(Cell::d1).collect()
}

/// Group `G = ℤᵈ` together with the alphabet `V = GF(p)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Universe {
    dim: usize,
    k: usize,
    field: PrimeField,
}

impl Universe {
    pub fn new(dim: usize, k: usize, p: u32) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::Unsupported(format!("dimension d = {dim}; only 1 and 2 are supported")));
        }
        if k == 0 {
            return Err(Error::Malformed("alphabet dimension k must be at least 1".into()));
        }
        Ok(Self {
            dim,
            k,
            field: PrimeField::new(p)?,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn zero_vector(&self) -> Vec<u32> {
        vec![0; self.k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = self.zero_vector();
        v[i] = 1;
        v
    }

    /// All nonzero vectors of V in lexicographic order.
    pub fn nonzero_vectors(&self) -> Vec<Vec<u32>> {
        let p = self.p() as u64;
        let total = p.checked_pow(self.k as u32).unwrap_or(u64::MAX);
        (1..total)
            .map(|mut code| {
                let mut v = vec![0u32; self.k];
                for slot in v.iter_mut().rev() {
                    *slot = (code % p) as u32;
                    code /= p;
                }
                v
            })
            .collect()
    }

    /// `p^k`, saturating.
    pub fn alphabet_size(&self) -> u64 {
        (self.p() as u64).saturating_pow(self.k as u32)
    }

    pub fn origin(&self) -> Cell {
        Cell::origin(self.dim)
    }

    pub fn require_line(&self, what: &str) -> Result<()> {
        if self.dim != 1 {
            return Err(Error::Unsupported(format!("{what} requires d = 1, got d = {}", self.dim)));
        }
        Ok(())
    }

    pub fn check_cell(&self, c: Cell) -> Result<()> {
        if c.dim() != self.dim {
            return Err(Error::Malformed(format!("cell {c} does not live in Z^{}", self.dim)));
        }
        Ok(())
    }
}

/// A finite nonempty set of offsets, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MemorySet {
    offsets: Vec<Cell>,
}

impl MemorySet {
    pub fn new(mut offsets: Vec<Cell>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::Malformed("memory set must be nonempty".into()));
        }
        let dim = offsets[0].dim();
        if offsets.iter().any(|c| c.dim() != dim) {
            return Err(Error::Malformed("memory offsets of mixed dimension".into()));
        }
        let before = offsets.len();
        offsets.sort();
        offsets.dedup();
        if offsets.len() != before {
            return Err(Error::Malformed("memory offsets must be distinct".into()));
        }
        Ok(Self { offsets })
    }

    /// Builds from possibly repeated offsets, merging duplicates.
    pub fn merged(mut offsets: Vec<Cell>) -> Result<Self> {
        offsets.sort();
        offsets.dedup();
        Self::new(offsets)
    }

    pub fn line(offsets: &[i64]) -> Result<Self> {
        Self::new(offsets.iter().copied().map(Cell::d1).collect())
    }

    pub fn offsets(&self) -> &[Cell] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn contains(&self, m: Cell) -> bool {
        self.offsets.binary_search(&m).is_ok()
    }

    pub fn index_of(&self, m: Cell) -> Option<usize> {
        self.offsets.binary_search(&m).ok()
    }

    /// `{-m : m ∈ M}`.
    pub fn reflected(&self) -> Self {
        let mut offsets: Vec<Cell> = self.offsets.iter().map(|&m| -m).collect();
        offsets.sort();
        Self { offsets }
    }

    /// The product set `{a + b}`.
    pub fn sumset(&self, other: &Self) -> Self {
        let mut offsets: Vec<Cell> = self
            .offsets
            .iter()
            .flat_map(|&a| other.offsets.iter().map(move |&b| a + b))
            .collect();
        offsets.sort();
        offsets.dedup();
        Self { offsets }
    }

    /// `max |m|∞`.
    pub fn radius(&self) -> i64 {
        self.offsets.iter().map(|m| m.sup_norm()).max().unwrap_or(0)
    }

    /// Smallest and largest first coordinate.
    pub fn x_range(&self) -> (i64, i64) {
        let lo = self.offsets.iter().map(|m| m.x()).min().unwrap_or(0);
        let hi = self.offsets.iter().map(|m| m.x()).max().unwrap_or(0);
        (lo, hi)
    }
}

/// `E·M = {g + m}`, sorted with duplicates merged.
pub fn inflate(cells: &[Cell], memory: &MemorySet) -> Vec<Cell> {
    let mut out: Vec<Cell> = cells
        .iter()
        .flat_map(|&g| memory.offsets().iter().map(move |&m| g + m))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `E·M⁻¹ = {g - m}`: the cells whose neighbourhood meets `E`.
pub fn readers(cells: &[Cell], memory: &MemorySet) -> Vec<Cell> {
    inflate(cells, &memory.reflected())
}
