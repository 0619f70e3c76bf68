//! Rule configurations `s ∈ S^G` that are asymptotic to constant rules.
//!
//! A configuration is stored as a right/default rule, an optional left tail
//! (on the line only: cells `n ≤ boundary` use the left rule) and finitely
//! many per-cell overrides. Every constructor canonicalizes: overrides equal
//! to the rule they would replace are dropped and the left boundary is placed
//! so that the override set is as small as possible. Two canonical configs
//! with the same memory are therefore equal iff they define the same `s`.

use std::collections::{BTreeMap, BTreeSet};

use crate::cell::{Cell, MemorySet, Universe};
use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, PrimeField};

/// A local defining map `V^M → V`, one `k×k` block per memory offset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    coeffs: BTreeMap<Cell, FieldMatrix>,
}

impl LocalRule {
    pub fn zero(universe: &Universe, memory: &MemorySet) -> Self {
        let z = FieldMatrix::zeros(universe.field(), universe.k(), universe.k());
        Self {
            coeffs: memory.offsets().iter().map(|&m| (m, z.clone())).collect(),
        }
    }

    /// Builds a rule from `(offset, matrix)` pairs; offsets of `memory`
    /// missing from `entries` get the zero matrix.
    pub fn new(
        universe: &Universe,
        memory: &MemorySet,
        entries: impl IntoIterator<Item = (Cell, FieldMatrix)>,
    ) -> Result<Self> {
        let mut rule = Self::zero(universe, memory);
        for (m, mat) in entries {
            if !memory.contains(m) {
                return Err(Error::Malformed(format!("offset {m} is not in the memory set")));
            }
            if mat.rows() != universe.k() || mat.cols() != universe.k() {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient at {m} is {}x{}, expected {k}x{k}",
                    mat.rows(),
                    mat.cols(),
                    k = universe.k()
                )));
            }
            if mat.field() != universe.field() {
                return Err(Error::Malformed(format!("coefficient at {m} has the wrong modulus")));
            }
            rule.coeffs.insert(m, mat);
        }
        Ok(rule)
    }

    /// Scalar rule on the line (`k = 1`): `(offset, coefficient)` pairs.
    pub fn scalar(universe: &Universe, memory: &MemorySet, entries: &[(i64, i64)]) -> Result<Self> {
        let f = universe.field();
        Self::new(
            universe,
            memory,
            entries
                .iter()
                .map(|&(m, c)| (Cell::d1(m), FieldMatrix::from_rows(f, &[vec![c]]).unwrap())),
        )
    }

    pub fn coeff(&self, m: Cell) -> Option<&FieldMatrix> {
        self.coeffs.get(&m)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (Cell, &FieldMatrix)> {
        self.coeffs.iter().map(|(&m, mat)| (m, mat))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(FieldMatrix::is_zero)
    }

    /// Offsets carrying a nonzero block.
    pub fn support(&self) -> Vec<Cell> {
        self.coeffs
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&c, _)| c)
            .collect()
    }

    /// The same rule on a larger memory (new offsets get zero blocks).
    pub fn embed(&self, universe: &Universe, memory: &MemorySet) -> Result<Self> {
        Self::new(universe, memory, self.coeffs.iter().map(|(&m, c)| (m, c.clone())))
    }

    /// Restriction to `memory`; fails if a dropped offset is nonzero.
    pub fn restrict(&self, memory: &MemorySet) -> Result<Self> {
        for (m, c) in &self.coeffs {
            if !memory.contains(*m) && !c.is_zero() {
                return Err(Error::Contract(format!("offset {m} carries a nonzero block")));
            }
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| memory.contains(**m))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        })
    }

    /// `Σ_m s(m) v(m)` for a neighbourhood lookup `v`.
    pub fn apply<'a>(&self, field: PrimeField, k: usize, v: impl Fn(Cell) -> Option<&'a [u32]>) -> Vec<u32> {
        let mut out = vec![0u32; k];
        for (&m, mat) in &self.coeffs {
            if let Some(x) = v(m) {
                for (r, slot) in out.iter_mut().enumerate() {
                    *slot = field.add(*slot, field.dot(mat.row(r), x));
                }
            }
        }
        out
    }

    /// The transposed rule on the reflected memory: `m ↦ s(-m)ᵀ`.
    /// Only meaningful for constant configurations.
    pub fn dual_constant(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&m, c)| (-m, c.transpose())).collect(),
        }
    }
}

/// Left tail of a configuration on the line: cells `n ≤ boundary` that are not
/// overridden use `rule`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeftTail {
    pub boundary: i64,
    pub rule: LocalRule,
}

/// A configuration of local defining maps, asymptotic to constant rules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleConfig {
    universe: Universe,
    memory: MemorySet,
    default_rule: LocalRule,
    left_tail: Option<LeftTail>,
    overrides: BTreeMap<Cell, LocalRule>,
}

/// One of the orbit-closure classes of `Σ(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitClass {
    /// All translates `g·s`.
    Translates(RuleConfig),
    /// A constant configuration reached by translating towards infinity.
    Constant { side: TailSide, rule: RuleConfig },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailSide {
    Left,
    Right,
}

impl RuleConfig {
    pub fn new(
        universe: Universe,
        memory: MemorySet,
        default_rule: LocalRule,
        left_tail: Option<LeftTail>,
        overrides: BTreeMap<Cell, LocalRule>,
    ) -> Result<Self> {
        if let Some(m) = memory.offsets().first() {
            universe.check_cell(*m)?;
        }
        let check_rule = |r: &LocalRule| -> Result<()> {
            let keys: Vec<Cell> = r.coeffs.keys().copied().collect();
            if keys != memory.offsets() {
                return Err(Error::Malformed("local rule does not match the memory set".into()));
            }
            for c in r.coeffs.values() {
                if c.rows() != universe.k() || c.cols() != universe.k() || c.field() != universe.field() {
                    return Err(Error::Malformed("local rule block has wrong shape or modulus".into()));
                }
            }
            Ok(())
        };
        check_rule(&default_rule)?;
        if let Some(t) = &left_tail {
            universe.require_line("a left tail")?;
            check_rule(&t.rule)?;
        }
        for (g, r) in &overrides {
            universe.check_cell(*g)?;
            check_rule(r)?;
        }
        let raw = Self {
            universe,
            memory,
            default_rule,
            left_tail,
            overrides,
        };
        Ok(raw.canonicalize())
    }

    /// The same rule at every cell.
    pub fn constant(universe: Universe, memory: MemorySet, rule: LocalRule) -> Result<Self> {
        Self::new(universe, memory, rule, None, BTreeMap::new())
    }

    /// `s(g,0) = I` everywhere.
    pub fn identity(universe: Universe) -> Self {
        let memory = MemorySet::new(vec![universe.origin()]).unwrap();
        let id = FieldMatrix::identity(universe.field(), universe.k());
        let rule = LocalRule::new(&universe, &memory, [(universe.origin(), id)]).unwrap();
        Self::constant(universe, memory, rule).unwrap()
    }

    /// `s(g, offset) = I` everywhere, i.e. `σ(x)(g) = x(g + offset)`.
    pub fn shift(universe: Universe, offset: Cell) -> Result<Self> {
        universe.check_cell(offset)?;
        let memory = MemorySet::new(vec![offset])?;
        let id = FieldMatrix::identity(universe.field(), universe.k());
        let rule = LocalRule::new(&universe, &memory, [(offset, id)])?;
        Self::constant(universe, memory, rule)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn memory(&self) -> &MemorySet {
        &self.memory
    }

    pub fn default_rule(&self) -> &LocalRule {
        &self.default_rule
    }

    pub fn left_tail(&self) -> Option<&LeftTail> {
        self.left_tail.as_ref()
    }

    pub fn overrides(&self) -> &BTreeMap<Cell, LocalRule> {
        &self.overrides
    }

    /// Rule used far to the left (equals the default when there is no tail).
    pub fn left_rule(&self) -> &LocalRule {
        self.left_tail.as_ref().map_or(&self.default_rule, |t| &t.rule)
    }

    pub fn right_rule(&self) -> &LocalRule {
        &self.default_rule
    }

    pub fn is_constant(&self) -> bool {
        self.left_tail.is_none() && self.overrides.is_empty()
    }

    pub fn rule_at(&self, g: Cell) -> &LocalRule {
        if let Some(r) = self.overrides.get(&g) {
            return r;
        }
        match &self.left_tail {
            Some(t) if g.x() <= t.boundary => &t.rule,
            _ => &self.default_rule,
        }
    }

    /// `s(g, m)`, or `None` when `m ∉ M` (the zero map).
    pub fn coeff(&self, g: Cell, m: Cell) -> Option<&FieldMatrix> {
        self.rule_at(g).coeff(m)
    }

    /// Hull `[lo, hi]` of the cells (on the line) whose rule is not determined by
    /// the far tails. `None` for constant configurations.
    pub fn irregular_span(&self) -> Option<(i64, i64)> {
        let mut lo = self.overrides.keys().map(|c| c.x()).min();
        let mut hi = self.overrides.keys().map(|c| c.x()).max();
        if let Some(t) = &self.left_tail {
            lo = Some(lo.map_or(t.boundary, |l| l.min(t.boundary)));
            hi = Some(hi.map_or(t.boundary + 1, |h| h.max(t.boundary + 1)));
        }
        lo.zip(hi)
    }

    /// Smallest `R` such that every cell outside `[-R, R]ᵈ` uses a tail rule.
    pub fn override_radius(&self) -> i64 {
        let mut r = self.overrides.keys().map(|c| c.sup_norm()).max().unwrap_or(0);
        if let Some(t) = &self.left_tail {
            r = r.max(t.boundary.abs()).max((t.boundary + 1).abs());
        }
        r
    }

    fn canonicalize(self) -> Self {
        if self.universe.dim() == 1 {
            let (lo, hi) = self.irregular_span().unwrap_or((0, 0));
            let left = self.left_rule().clone();
            let right = self.default_rule.clone();
            Self::from_line_function(self.universe, self.memory.clone(), left, right, lo, hi, |n| {
                self.rule_at(Cell::d1(n)).clone()
            })
        } else {
            let cells: Vec<Cell> = self.overrides.keys().copied().collect();
            Self::from_cell_function(
                self.universe,
                self.memory.clone(),
                self.default_rule.clone(),
                &cells,
                |g| self.rule_at(g).clone(),
            )
        }
    }

    /// Canonical configuration on the line equal to `left` below `lo`,
    /// `right` above `hi` and `rule(n)` on `[lo, hi]`.
    pub(crate) fn from_line_function(
        universe: Universe,
        memory: MemorySet,
        left: LocalRule,
        right: LocalRule,
        lo: i64,
        hi: i64,
        rule: impl Fn(i64) -> LocalRule,
    ) -> Self {
        let hi = hi.max(lo);
        let vals: Vec<LocalRule> = (lo..=hi).map(&rule).collect();
        let at = |n: i64| &vals[(n - lo) as usize];
        if left == right {
            let overrides = (lo..=hi)
                .filter(|&n| *at(n) != right)
                .map(|n| (Cell::d1(n), at(n).clone()))
                .collect();
            return Self {
                universe,
                memory,
                default_rule: right,
                left_tail: None,
                overrides,
            };
        }
        let first_not_left = (lo..=hi).find(|&n| *at(n) != left).unwrap_or(hi + 1);
        let last_not_right = (lo..=hi).rev().find(|&n| *at(n) != right).unwrap_or(lo - 1);
        let cost = |b: i64| {
            (lo..=hi)
                .filter(|&n| if n <= b { *at(n) != left } else { *at(n) != right })
                .count()
        };
        let b_lo = first_not_left - 1;
        let b_hi = last_not_right.max(b_lo);
        let boundary = (b_lo..=b_hi).min_by_key(|&b| (cost(b), b)).unwrap_or(b_lo);
        let overrides = (lo..=hi)
            .filter(|&n| {
                let base = if n <= boundary { &left } else { &right };
                at(n) != base
            })
            .map(|n| (Cell::d1(n), at(n).clone()))
            .collect();
        Self {
            universe,
            memory,
            default_rule: right,
            left_tail: Some(LeftTail {
                boundary,
                rule: left,
            }),
            overrides,
        }
    }

    /// Canonical configuration equal to `default` off `cells`.
    pub(crate) fn from_cell_function(
        universe: Universe,
        memory: MemorySet,
        default: LocalRule,
        cells: &[Cell],
        rule: impl Fn(Cell) -> LocalRule,
    ) -> Self {
        let overrides = cells
            .iter()
            .filter_map(|&g| {
                let r = rule(g);
                (r != default).then_some((g, r))
            })
            .collect();
        Self {
            universe,
            memory,
            default_rule: default,
            left_tail: None,
            overrides,
        }
    }

    /// Builds a config with the same shape from a per-cell function, evaluating
    /// it on `[lo, hi]` (line) or `cells` (plane).
    fn rebuild(
        universe: Universe,
        memory: MemorySet,
        left: LocalRule,
        right: LocalRule,
        span: (i64, i64),
        cells: &[Cell],
        rule: impl Fn(Cell) -> LocalRule,
    ) -> Self {
        if universe.dim() == 1 {
            Self::from_line_function(universe, memory, left, right, span.0, span.1, |n| rule(Cell::d1(n)))
        } else {
            Self::from_cell_function(universe, memory, right, cells, rule)
        }
    }

    /// `g·s`, i.e. `(g·s)(h) = s(h - g)`.
    pub fn translate(&self, g: Cell) -> Result<Self> {
        self.universe.check_cell(g)?;
        let overrides = self.overrides.iter().map(|(&c, r)| (c + g, r.clone())).collect();
        let left_tail = self.left_tail.as_ref().map(|t| LeftTail {
            boundary: t.boundary + g.x(),
            rule: t.rule.clone(),
        });
        Ok(Self {
            universe: self.universe,
            memory: self.memory.clone(),
            default_rule: self.default_rule.clone(),
            left_tail,
            overrides,
        })
    }

    /// Same map on a larger memory set.
    pub fn with_memory(&self, memory: &MemorySet) -> Result<Self> {
        let u = &self.universe;
        Ok(Self {
            universe: self.universe,
            memory: memory.clone(),
            default_rule: self.default_rule.embed(u, memory)?,
            left_tail: match &self.left_tail {
                Some(t) => Some(LeftTail {
                    boundary: t.boundary,
                    rule: t.rule.embed(u, memory)?,
                }),
                None => None,
            },
            overrides: self
                .overrides
                .iter()
                .map(|(&g, r)| Ok((g, r.embed(u, memory)?)))
                .collect::<Result<_>>()?,
        }
        .canonicalize())
    }

    /// Drops offsets whose block is zero in every rule. The memory stays
    /// nonempty: an all-zero configuration keeps a single offset.
    pub fn normalize_memory(&self) -> Self {
        let mut used: BTreeSet<Cell> = BTreeSet::new();
        let mut rules: Vec<&LocalRule> = vec![&self.default_rule];
        rules.extend(self.left_tail.iter().map(|t| &t.rule));
        rules.extend(self.overrides.values());
        for r in &rules {
            used.extend(r.support());
        }
        if used.is_empty() {
            let keep = if self.memory.contains(self.universe.origin()) {
                self.universe.origin()
            } else {
                self.memory.offsets()[0]
            };
            used.insert(keep);
        }
        let memory = MemorySet::new(used.into_iter().collect()).expect("nonempty");
        let restrict = |r: &LocalRule| r.restrict(&memory).expect("dropped offsets are zero");
        Self {
            universe: self.universe,
            memory: memory.clone(),
            default_rule: restrict(&self.default_rule),
            left_tail: self.left_tail.as_ref().map(|t| LeftTail {
                boundary: t.boundary,
                rule: restrict(&t.rule),
            }),
            overrides: self.overrides.iter().map(|(&g, r)| (g, restrict(r))).collect(),
        }
        .canonicalize()
    }

    /// True iff both configurations define the same NUCA (memory-insensitive).
    pub fn same_map(&self, other: &Self) -> bool {
        self.universe == other.universe && self.normalize_memory() == other.normalize_memory()
    }

    /// Compares `s(g, m)` cell by cell on the cube `[-radius, radius]ᵈ`,
    /// treating offsets outside a memory set as zero blocks.
    pub fn agrees_on_window(&self, other: &Self, radius: i64) -> bool {
        if self.universe != other.universe {
            return false;
        }
        let offsets: BTreeSet<Cell> = self
            .memory
            .offsets()
            .iter()
            .chain(other.memory.offsets())
            .copied()
            .collect();
        let zero = FieldMatrix::zeros(self.universe.field(), self.universe.k(), self.universe.k());
        crate::cell::cube(self.universe.dim(), radius).into_iter().all(|g| {
            offsets.iter().all(|&m| {
                self.coeff(g, m).unwrap_or(&zero) == other.coeff(g, m).unwrap_or(&zero)
            })
        })
    }

    /// Rule configuration of `σ_self ∘ σ_other` on the memory `M_s + M_t`:
    /// `p(g, a + b) = Σ s(g, a) t(g + a, b)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::Contract("composition of configurations over different universes".into()));
        }
        let u = self.universe;
        let memory = self.memory.sumset(&other.memory);
        let local = |g: Cell, s_rule: &LocalRule, t_at: &dyn Fn(Cell) -> LocalRule| -> LocalRule {
            let mut out = LocalRule::zero(&u, &memory);
            for (a, sa) in s_rule.coeffs() {
                if sa.is_zero() {
                    continue;
                }
                let t_rule = t_at(g + a);
                for (b, tb) in t_rule.coeffs() {
                    if tb.is_zero() {
                        continue;
                    }
                    let prod = sa.mul(tb).expect("square blocks");
                    let slot = out.coeffs.get_mut(&(a + b)).expect("sumset");
                    *slot = slot.add(&prod).expect("square blocks");
                }
            }
            out
        };
        let tail = |s_rule: &LocalRule, t_rule: &LocalRule| {
            local(u.origin(), s_rule, &|_| t_rule.clone())
        };
        let left = tail(self.left_rule(), other.left_rule());
        let right = tail(self.right_rule(), other.right_rule());
        let (mlo, mhi) = self.memory.x_range();
        let span = match (self.irregular_span(), other.irregular_span()) {
            (None, None) => (0, 0),
            (a, b) => {
                let (alo, ahi) = a.unwrap_or((i64::MAX, i64::MIN));
                let (blo, bhi) = b.map_or((i64::MAX, i64::MIN), |(l, h)| (l - mhi, h - mlo));
                (alo.min(blo) - 1, ahi.max(bhi) + 1)
            }
        };
        let mut cells: BTreeSet<Cell> = self.overrides.keys().copied().collect();
        for &g in other.overrides.keys() {
            for &m in self.memory.offsets() {
                cells.insert(g - m);
            }
        }
        let cells: Vec<Cell> = cells.into_iter().collect();
        Ok(Self::rebuild(u, memory.clone(), left, right, span, &cells, |g| {
            local(g, self.rule_at(g), &|h| other.rule_at(h).clone())
        }))
    }

    /// Dual configuration `s*(g, m) = s(g + m, -m)ᵀ` on the reflected memory.
    pub fn dual(&self) -> Self {
        let u = self.universe;
        let memory = self.memory.reflected();
        let left = self.left_rule().dual_constant();
        let right = self.right_rule().dual_constant();
        let (mlo, mhi) = memory.x_range();
        let span = self
            .irregular_span()
            .map_or((0, 0), |(lo, hi)| (lo - mhi - 1, hi - mlo + 1));
        let mut cells: BTreeSet<Cell> = BTreeSet::new();
        for &g in self.overrides.keys() {
            for &m in memory.offsets() {
                cells.insert(g - m);
            }
        }
        let cells: Vec<Cell> = cells.into_iter().collect();
        Self::rebuild(u, memory.clone(), left, right, span, &cells, |g| LocalRule {
            coeffs: memory
                .offsets()
                .iter()
                .map(|&m| {
                    let src = self.coeff(g + m, -m).expect("reflected offset lies in M");
                    (m, src.transpose())
                })
                .collect(),
        })
    }

    /// The orbit-closure classes of `Σ(s)`: the translates of `s` and the
    /// constant configurations of its tails.
    pub fn limit_representatives(&self) -> Vec<LimitClass> {
        if self.is_constant() {
            return vec![LimitClass::Translates(self.clone())];
        }
        let constant = |r: &LocalRule| {
            Self::constant(self.universe, self.memory.clone(), r.clone()).expect("valid rule")
        };
        let mut out = vec![LimitClass::Translates(self.clone())];
        if let Some(t) = &self.left_tail {
            out.push(LimitClass::Constant {
                side: TailSide::Left,
                rule: constant(&t.rule),
            });
        }
        out.push(LimitClass::Constant {
            side: TailSide::Right,
            rule: constant(&self.default_rule),
        });
        out
    }

    /// The constant configuration of one tail.
    pub fn tail_config(&self, side: TailSide) -> Self {
        let r = match side {
            TailSide::Left => self.left_rule(),
            TailSide::Right => self.right_rule(),
        };
        Self::constant(self.universe, self.memory.clone(), r.clone()).expect("valid rule")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line2() -> Universe {
        Universe::new(1, 1, 2).unwrap()
    }

    /// f(u,v) = v at n ≤ 0, g(u,v) = u + v at n ≥ 1.
    fn ex_s0() -> RuleConfig {
        let u = line2();
        let m = MemorySet::line(&[-1, 0]).unwrap();
        let f = LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap();
        let g = LocalRule::scalar(&u, &m, &[(-1, 1), (0, 1)]).unwrap();
        RuleConfig::new(u, m, g, Some(LeftTail { boundary: 0, rule: f }), BTreeMap::new()).unwrap()
    }

    #[test]
    fn canonical_boundary_absorbs_overrides() {
        let u = line2();
        let m = MemorySet::line(&[-1, 0]).unwrap();
        let f = LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap();
        let g = LocalRule::scalar(&u, &m, &[(-1, 1), (0, 1)]).unwrap();
        // boundary at -3 plus explicit f overrides on -2..0 is the same config
        let overrides = (-2..=0).map(|n| (Cell::d1(n), f.clone())).collect();
        let s = RuleConfig::new(u, m, g, Some(LeftTail { boundary: -3, rule: f }), overrides).unwrap();
        assert_eq!(s, ex_s0());
        assert!(s.overrides().is_empty());
        assert_eq!(s.left_tail().unwrap().boundary, 0);
    }

    #[test]
    fn equal_tails_collapse() {
        let u = line2();
        let m = MemorySet::line(&[0]).unwrap();
        let id = LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap();
        let s = RuleConfig::new(u, m, id.clone(), Some(LeftTail { boundary: 4, rule: id }), BTreeMap::new())
            .unwrap();
        assert!(s.is_constant());
        assert_eq!(s, RuleConfig::identity(u));
    }

    #[test]
    fn translate_moves_boundary() {
        let s = ex_s0();
        assert_eq!(s.translate(Cell::d1(0)).unwrap(), s);
        let t = s.translate(Cell::d1(1)).unwrap();
        assert_eq!(t.left_tail().unwrap().boundary, 1);
        assert_eq!(t.translate(Cell::d1(-1)).unwrap(), s);
    }

    #[test]
    fn compose_shifts() {
        let u = line2();
        let sh = RuleConfig::shift(u, Cell::d1(-1)).unwrap();
        let two = sh.compose(&sh).unwrap();
        assert_eq!(two, RuleConfig::shift(u, Cell::d1(-2)).unwrap());
        let id = RuleConfig::identity(u);
        assert!(id.compose(&ex_s0()).unwrap().same_map(&ex_s0()));
        assert!(ex_s0().compose(&id).unwrap().same_map(&ex_s0()));
    }

    #[test]
    fn dual_of_shift_is_opposite_shift() {
        let u = Universe::new(1, 2, 3).unwrap();
        let sh = RuleConfig::shift(u, Cell::d1(-1)).unwrap();
        assert_eq!(sh.dual(), RuleConfig::shift(u, Cell::d1(1)).unwrap());
        assert_eq!(RuleConfig::identity(u).dual(), RuleConfig::identity(u));
    }

    #[test]
    fn dual_of_counterexample() {
        let d = ex_s0().dual();
        let u = line2();
        let n = MemorySet::line(&[0, 1]).unwrap();
        let f_star = LocalRule::scalar(&u, &n, &[(0, 1)]).unwrap();
        let g_star = LocalRule::scalar(&u, &n, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(d.memory(), &n);
        assert_eq!(d.left_tail(), Some(&LeftTail { boundary: -1, rule: f_star }));
        assert_eq!(d.default_rule(), &g_star);
        assert!(d.overrides().is_empty());
        assert_eq!(d.dual(), ex_s0());
    }

    #[test]
    fn limit_classes() {
        assert_eq!(RuleConfig::identity(line2()).limit_representatives().len(), 1);
        let classes = ex_s0().limit_representatives();
        assert_eq!(classes.len(), 3);
        let u = line2();
        let m = MemorySet::line(&[0]).unwrap();
        let z = LocalRule::zero(&u, &m);
        let single = RuleConfig::new(
            u,
            m.clone(),
            LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap(),
            None,
            [(Cell::d1(0), z)].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(single.limit_representatives().len(), 2);
    }

    #[test]
    fn normalize_drops_zero_offsets() {
        let u = line2();
        let m = MemorySet::line(&[-1, 0, 1]).unwrap();
        let r = LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap();
        let s = RuleConfig::constant(u, m, r).unwrap();
        assert_eq!(s.normalize_memory(), RuleConfig::identity(u));
        assert!(s.same_map(&RuleConfig::identity(u)));
    }

    #[test]
    fn agrees_on_window_ignores_memory_padding() {
        let s = ex_s0();
        let wide = s.with_memory(&MemorySet::line(&[-2, -1, 0, 1]).unwrap()).unwrap();
        assert!(s.agrees_on_window(&wide, 6));
        assert!(!s.agrees_on_window(&s.translate(Cell::d1(1)).unwrap(), 6));
    }

    #[test]
    fn plane_configs_compose_and_dualize() {
        let u = Universe::new(2, 1, 3).unwrap();
        let sh = RuleConfig::shift(u, Cell::d2(1, 0)).unwrap();
        let m = sh.memory().clone();
        let two = LocalRule::new(&u, &m, [(Cell::d2(1, 0), FieldMatrix::from_rows(u.field(), &[vec![2]]).unwrap())])
            .unwrap();
        let s = RuleConfig::new(u, m, sh.default_rule().clone(), None, [(Cell::d2(0, 1), two)].into_iter().collect())
            .unwrap();
        assert_eq!(s.dual().dual(), s);
        assert!(s.left_tail().is_none());
        let st = s.compose(&sh).unwrap();
        assert_eq!(st.memory().offsets(), &[Cell::d2(2, 0)]);
        assert_eq!(st.overrides().len(), 1);
    }
}
