//! Seeded random rule configurations and configurations for tests and demos.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cell::{cube, Cell, MemorySet, Universe};
use crate::config::FinSuppConfig;
use crate::linalg::FieldMatrix;
use crate::rule::{LeftTail, LocalRule, RuleConfig};

/// Fixed seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of randomly drawn rule configurations.
#[derive(Debug, Clone)]
pub struct RuleShape {
    pub universe: Universe,
    /// Memory offsets are drawn from `[-memory_radius, memory_radius]ᵈ`.
    pub memory_radius: i64,
    pub max_overrides: usize,
    /// Override cells are drawn from `[-override_radius, override_radius]ᵈ`.
    pub override_radius: i64,
    /// Probability of a distinct left tail (line only).
    pub left_tail_probability: f64,
}

impl RuleShape {
    pub fn new(universe: Universe) -> Self {
        Self {
            universe,
            memory_radius: 2,
            max_overrides: 3,
            override_radius: 3,
            left_tail_probability: 0.0,
        }
    }

    pub fn with_tails(mut self, probability: f64) -> Self {
        self.left_tail_probability = probability;
        self
    }
}

pub fn random_matrix(rng: &mut impl Rng, u: &Universe) -> FieldMatrix {
    let k = u.k();
    let data = (0..k * k).map(|_| rng.gen_range(0..u.p())).collect();
    FieldMatrix::from_vec(u.field(), k, k, data).expect("k*k entries")
}

pub fn random_memory(rng: &mut impl Rng, u: &Universe, radius: i64) -> MemorySet {
    let mut pool = cube(u.dim(), radius);
    pool.shuffle(rng);
    let n = rng.gen_range(1..=pool.len().min(4));
    MemorySet::new(pool[..n].to_vec()).expect("distinct nonempty offsets")
}

pub fn random_local_rule(rng: &mut impl Rng, u: &Universe, memory: &MemorySet) -> LocalRule {
    LocalRule::new(u, memory, memory.offsets().iter().map(|&m| (m, random_matrix(rng, u))))
        .expect("shapes match")
}

pub fn random_rule(rng: &mut impl Rng, shape: &RuleShape) -> RuleConfig {
    let u = shape.universe;
    let memory = random_memory(rng, &u, shape.memory_radius);
    let default_rule = random_local_rule(rng, &u, &memory);
    let left_tail = (u.dim() == 1 && rng.gen_bool(shape.left_tail_probability)).then(|| LeftTail {
        boundary: rng.gen_range(-shape.override_radius..=shape.override_radius),
        rule: random_local_rule(rng, &u, &memory),
    });
    let mut cells = cube(u.dim(), shape.override_radius);
    cells.shuffle(rng);
    let n = rng.gen_range(0..=shape.max_overrides.min(cells.len()));
    let overrides: BTreeMap<Cell, LocalRule> = cells[..n]
        .iter()
        .map(|&g| (g, random_local_rule(rng, &u, &memory)))
        .collect();
    RuleConfig::new(u, memory, default_rule, left_tail, overrides).expect("valid random rule")
}

/// A finitely supported configuration with random values on `cells`.
pub fn random_finsupp(rng: &mut impl Rng, u: &Universe, cells: &[Cell]) -> FinSuppConfig {
    FinSuppConfig::from_entries(
        cells
            .iter()
            .map(|&g| (g, (0..u.k()).map(|_| rng.gen_range(0..u.p())).collect())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let shape = RuleShape::new(Universe::new(1, 2, 3).unwrap()).with_tails(0.5);
        let a: Vec<RuleConfig> = {
            let mut r = rng(7);
            (0..20).map(|_| random_rule(&mut r, &shape)).collect()
        };
        let b: Vec<RuleConfig> = {
            let mut r = rng(7);
            (0..20).map(|_| random_rule(&mut r, &shape)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.memory().radius() <= 2 && s.overrides().len() <= 3));
    }
}
