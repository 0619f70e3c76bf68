//! Configurations `x ∈ V^G` with finite descriptions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::linalg::{PrimeField, Vector};

/// Read access to a configuration; `None` stands for the zero vector.
pub trait CellValues {
    fn value(&self, c: Cell) -> Option<&[u32]>;
}

/// A configuration with finite support. Stored values are nonzero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FinSuppConfig {
    values: BTreeMap<Cell, Vector>,
}

#[derive(Serialize, Deserialize)]
struct SparseEntry {
    cell: Cell,
    value: Vector,
}

impl Serialize for FinSuppConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.values.iter().map(|(&cell, v)| SparseEntry {
            cell,
            value: v.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for FinSuppConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<SparseEntry>::deserialize(d)?;
        Ok(Self::from_entries(entries.into_iter().map(|e| (e.cell, e.value))))
    }
}

impl FinSuppConfig {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Collects entries, dropping zero vectors. Later entries win.
    pub fn from_entries(entries: impl IntoIterator<Item = (Cell, Vector)>) -> Self {
        let values = entries
            .into_iter()
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .collect();
        Self { values }
    }

    /// `v` planted at `g`.
    pub fn delta(g: Cell, v: Vector) -> Self {
        Self::from_entries([(g, v)])
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Cell> + '_ {
        self.values.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, &Vector)> {
        self.values.iter().map(|(&c, v)| (c, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, c: Cell) -> Option<&Vector> {
        self.values.get(&c)
    }

    pub fn add(&self, other: &Self, field: PrimeField) -> Self {
        let mut values = self.values.clone();
        for (c, v) in &other.values {
            let sum = match values.get(c) {
                Some(a) => field.add_vec(a, v),
                None => v.clone(),
            };
            values.insert(*c, sum);
        }
        Self::from_entries(values)
    }

    pub fn scale(&self, c: u32, field: PrimeField) -> Self {
        Self::from_entries(self.values.iter().map(|(&g, v)| (g, field.scale_vec(c, v))))
    }

    pub fn translate(&self, g: Cell) -> Self {
        Self {
            values: self.values.iter().map(|(&c, v)| (c + g, v.clone())).collect(),
        }
    }

    /// Smallest and largest first coordinate of the support.
    pub fn x_span(&self) -> Option<(i64, i64)> {
        let lo = self.values.keys().map(|c| c.x()).min()?;
        let hi = self.values.keys().map(|c| c.x()).max()?;
        Some((lo, hi))
    }
}

impl CellValues for FinSuppConfig {
    fn value(&self, c: Cell) -> Option<&[u32]> {
        self.values.get(&c).map(Vec::as_slice)
    }
}

/// An eventually periodic configuration on the line.
///
/// `core` occupies `[start, start + core.len())`. To the left,
/// `x(n) = left_period[(n - start) mod P]`; to the right,
/// `x(n) = right_period[(n - end) mod Q]` with `end = start + core.len()`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvPerConfig {
    pub start: i64,
    pub core: Vec<Vector>,
    pub left_period: Vec<Vector>,
    pub right_period: Vec<Vector>,
}

impl PartialEq for EvPerConfig {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl Eq for EvPerConfig {}

impl EvPerConfig {
    pub fn new(start: i64, core: Vec<Vector>, left_period: Vec<Vector>, right_period: Vec<Vector>) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::Malformed("periods must be nonempty".into()));
        }
        let k = left_period[0].len();
        if k == 0 || core.iter().chain(&left_period).chain(&right_period).any(|v| v.len() != k) {
            return Err(Error::Malformed("eventually periodic configuration has ragged values".into()));
        }
        Ok(Self {
            start,
            core,
            left_period,
            right_period,
        })
    }

    pub fn constant(v: Vector) -> Self {
        Self {
            start: 0,
            core: Vec::new(),
            left_period: vec![v.clone()],
            right_period: vec![v],
        }
    }

    pub fn zero(k: usize) -> Self {
        Self::constant(vec![0; k])
    }

    /// Zero tails around a finitely supported configuration (line only).
    pub fn from_finsupp(x: &FinSuppConfig, k: usize) -> Self {
        let Some((lo, hi)) = x.x_span() else {
            return Self::zero(k);
        };
        let core = (lo..=hi)
            .map(|n| x.get(Cell::d1(n)).cloned().unwrap_or_else(|| vec![0; k]))
            .collect();
        Self {
            start: lo,
            core,
            left_period: vec![vec![0; k]],
            right_period: vec![vec![0; k]],
        }
    }

    /// A fully periodic configuration with `x(n) = block[n mod P]`.
    pub fn periodic(block: Vec<Vector>) -> Self {
        Self {
            start: 0,
            core: Vec::new(),
            left_period: block.clone(),
            right_period: block,
        }
    }

    pub fn k(&self) -> usize {
        self.left_period[0].len()
    }

    pub fn end(&self) -> i64 {
        self.start + self.core.len() as i64
    }

    pub fn at(&self, n: i64) -> &[u32] {
        if n < self.start {
            let p = self.left_period.len() as i64;
            &self.left_period[(n - self.start).rem_euclid(p) as usize]
        } else if n < self.end() {
            &self.core[(n - self.start) as usize]
        } else {
            let q = self.right_period.len() as i64;
            &self.right_period[(n - self.end()).rem_euclid(q) as usize]
        }
    }

    /// Radius past which both configurations are periodic with a common
    /// period that already occurs closer to the origin.
    fn comparison_radius(&self, other: &Self) -> i64 {
        let lcm_l = lcm(self.left_period.len(), other.left_period.len()) as i64;
        let lcm_r = lcm(self.right_period.len(), other.right_period.len()) as i64;
        let reach = [self.start, self.end(), other.start, other.end()]
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or(0);
        reach + lcm_l.max(lcm_r) + 1
    }

    /// The disagreeing cell nearest the origin (ties: the negative one).
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let r = self.comparison_radius(other);
        (0..=r).find_map(|d| {
            [-d, d]
                .into_iter()
                .find(|&n| self.at(n) != other.at(n))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.core
            .iter()
            .chain(&self.left_period)
            .chain(&self.right_period)
            .all(|v| v.iter().all(|&x| x == 0))
    }

    /// Returns a copy with `x(n) = v`, widening the core as needed.
    pub fn with_value(&self, n: i64, v: Vector) -> Self {
        let lo = self.start.min(n);
        let hi = (self.end() - 1).max(n);
        let mut out = self.expand(lo, hi);
        out.core[(n - out.start) as usize] = v;
        out
    }

    /// Same configuration with core exactly covering `[lo, hi]` (which must
    /// contain the current core).
    pub fn expand(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.min(self.start);
        let hi = hi.max(self.end() - 1);
        let core: Vec<Vector> = (lo..=hi).map(|n| self.at(n).to_vec()).collect();
        let p = self.left_period.len();
        let q = self.right_period.len();
        let left_period = (0..p as i64).map(|j| self.at(lo - p as i64 + j).to_vec()).collect();
        let right_period = (0..q as i64).map(|j| self.at(hi + 1 + j).to_vec()).collect();
        Self {
            start: lo,
            core,
            left_period,
            right_period,
        }
    }

    /// Pointwise sum with a finitely supported configuration.
    pub fn add_finsupp(&self, x: &FinSuppConfig, field: PrimeField) -> Self {
        let Some((lo, hi)) = x.x_span() else {
            return self.clone();
        };
        let mut out = self.expand(lo, hi);
        for (c, v) in x.entries() {
            let i = (c.x() - out.start) as usize;
            out.core[i] = field.add_vec(&out.core[i], v);
        }
        out
    }

    /// Equivalent description with minimal periods and the shortest core.
    pub fn canonical(&self) -> Self {
        let mut out = Self {
            start: self.start,
            core: self.core.clone(),
            left_period: minimal_period(&self.left_period),
            right_period: minimal_period(&self.right_period),
        };
        while let Some(first) = out.core.first() {
            if *first != out.left_period[0] {
                break;
            }
            out.core.remove(0);
            out.start += 1;
            out.left_period.rotate_left(1);
        }
        while let Some(last) = out.core.last() {
            if last != out.right_period.last().unwrap() {
                break;
            }
            out.core.pop();
            out.right_period.rotate_right(1);
        }
        out
    }
}

impl CellValues for EvPerConfig {
    fn value(&self, c: Cell) -> Option<&[u32]> {
        Some(self.at(c.x()))
    }
}

fn minimal_period(block: &[Vector]) -> Vec<Vector> {
    let n = block.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| block[i] == block[i % d]))
        .map(|d| block[..d].to_vec())
        .unwrap_or_else(|| block.to_vec())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
