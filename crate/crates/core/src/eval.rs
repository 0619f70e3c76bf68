//! Exact evaluation of `σ_s` on windows, finitely supported and eventually
//! periodic configurations.

use std::collections::{BTreeMap, BTreeSet};

use crate::cell::{inflate, readers, Cell};
use crate::config::{CellValues, EvPerConfig, FinSuppConfig};
use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, Vector};
use crate::rule::RuleConfig;

/// The induced linear map `V^{EM} → V^E` of a configuration on a window `E`.
///
/// Row block `i` belongs to `codomain_cells[i]`, column block `j` to
/// `domain_cells[j]`; inside a block the standard basis of `V` is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowMap {
    pub domain_cells: Vec<Cell>,
    pub codomain_cells: Vec<Cell>,
    pub matrix: FieldMatrix,
}

impl WindowMap {
    pub fn k(&self) -> usize {
        if self.codomain_cells.is_empty() {
            0
        } else {
            self.matrix.rows() / self.codomain_cells.len()
        }
    }

    pub fn domain_index(&self, c: Cell) -> Option<usize> {
        self.domain_cells.binary_search(&c).ok()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether `f⁺_E` is onto `V^E`.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.matrix.rows()
    }

    /// Flattens a configuration into a domain vector.
    pub fn gather(&self, x: &impl CellValues) -> Vector {
        let k = self.k();
        let mut out = Vec::with_capacity(self.matrix.cols());
        for &c in &self.domain_cells {
            match x.value(c) {
                Some(v) => out.extend_from_slice(v),
                None => out.extend(std::iter::repeat_n(0, k)),
            }
        }
        out
    }

    /// Inverse of [`gather`](Self::gather) for domain vectors.
    pub fn scatter_domain(&self, v: &[u32]) -> FinSuppConfig {
        scatter(&self.domain_cells, v, self.k())
    }

    /// Matrix of the map restricted to inputs supported on `cells`, which must
    /// be a subset of the domain. Columns follow the order of `cells`.
    pub fn restrict_domain(&self, cells: &[Cell]) -> Result<FieldMatrix> {
        let k = self.k();
        let m = &self.matrix;
        let mut out = FieldMatrix::zeros(m.field(), m.rows(), k * cells.len());
        for (j, &c) in cells.iter().enumerate() {
            let src = self
                .domain_index(c)
                .ok_or_else(|| Error::Contract(format!("cell {c} is outside the window domain")))?;
            for r in 0..m.rows() {
                for b in 0..k {
                    out.set(r, j * k + b, m.get(r, src * k + b));
                }
            }
        }
        Ok(out)
    }
}

/// Splits a flat vector into per-cell values.
pub fn scatter(cells: &[Cell], v: &[u32], k: usize) -> FinSuppConfig {
    FinSuppConfig::from_entries(
        cells
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, v[i * k..(i + 1) * k].to_vec())),
    )
}

impl RuleConfig {
    fn eval_with<'a>(&self, g: Cell, x: impl Fn(Cell) -> Option<&'a [u32]>) -> Vector {
        let u = self.universe();
        self.rule_at(g).apply(u.field(), u.k(), |m| x(g + m))
    }

    /// `σ_s(x)(g) = Σ_m s(g, m) x(g + m)` from a pattern covering `gM`.
    pub fn evaluate_cell(&self, pattern: &BTreeMap<Cell, Vector>, g: Cell) -> Result<Vector> {
        self.universe().check_cell(g)?;
        for &m in self.memory().offsets() {
            match pattern.get(&(g + m)) {
                None => {
                    return Err(Error::Contract(format!(
                        "pattern does not cover cell {} of the neighbourhood of {g}",
                        g + m
                    )))
                }
                Some(v) if v.len() != self.universe().k() => {
                    return Err(Error::DimensionMismatch(format!("value at {} has the wrong length", g + m)))
                }
                Some(_) => {}
            }
        }
        Ok(self.eval_with(g, |c| pattern.get(&c).map(Vec::as_slice)))
    }

    /// `σ_s(x)(g)` for any configuration with cell access.
    pub fn value_at(&self, x: &impl CellValues, g: Cell) -> Vector {
        self.eval_with(g, |c| x.value(c))
    }

    /// `f⁺_{E}`: the matrix of `x|_{EM} ↦ σ_s(x)|_E`.
    pub fn induced_map(&self, window: &[Cell]) -> Result<WindowMap> {
        if window.is_empty() {
            return Err(Error::Contract("window must be nonempty".into()));
        }
        for &g in window {
            self.universe().check_cell(g)?;
        }
        let mut codomain: Vec<Cell> = window.to_vec();
        codomain.sort();
        codomain.dedup();
        let domain = inflate(&codomain, self.memory());
        let k = self.universe().k();
        let mut matrix = FieldMatrix::zeros(self.universe().field(), k * codomain.len(), k * domain.len());
        for (i, &g) in codomain.iter().enumerate() {
            for (m, block) in self.rule_at(g).coeffs() {
                let j = domain.binary_search(&(g + m)).expect("EM contains g + m");
                for r in 0..k {
                    for c in 0..k {
                        matrix.set(i * k + r, j * k + c, block.get(r, c));
                    }
                }
            }
        }
        Ok(WindowMap {
            domain_cells: domain,
            codomain_cells: codomain,
            matrix,
        })
    }

    /// Matrix of `x ↦ σ_s(x)` for `x` supported on `support`: rows are all
    /// cells that read `support`, columns follow `support`.
    pub fn support_map(&self, support: &[Cell]) -> Result<WindowMap> {
        let mut sup = support.to_vec();
        sup.sort();
        sup.dedup();
        let rows = readers(&sup, self.memory());
        let full = self.induced_map(&rows)?;
        let matrix = full.restrict_domain(&sup)?;
        Ok(WindowMap {
            domain_cells: sup,
            codomain_cells: full.codomain_cells,
            matrix,
        })
    }

    /// Exact image of a finitely supported configuration.
    pub fn apply_finsupp(&self, x: &FinSuppConfig) -> FinSuppConfig {
        let support: Vec<Cell> = x.support().collect();
        let targets: BTreeSet<Cell> = readers(&support, self.memory()).into_iter().collect();
        FinSuppConfig::from_entries(targets.into_iter().map(|g| (g, self.value_at(x, g))))
    }

    /// Exact image of an eventually periodic configuration (line only).
    pub fn apply_evper(&self, x: &EvPerConfig) -> Result<EvPerConfig> {
        let u = self.universe();
        u.require_line("evaluation on eventually periodic configurations")?;
        if x.k() != u.k() {
            return Err(Error::DimensionMismatch("configuration alphabet differs from the rule's".into()));
        }
        let (mlo, mhi) = self.memory().x_range();
        // Cells below `lo` read only the left period through the left rule,
        // cells above `hi` only the right period through the right rule.
        let mut lo = x.start - mhi;
        let mut hi = x.end() - 1 - mlo;
        if let Some((slo, shi)) = self.irregular_span() {
            lo = lo.min(slo);
            hi = hi.max(shi);
        }
        let hi = hi.max(lo - 1);
        let p = x.left_period.len() as i64;
        let q = x.right_period.len() as i64;
        let at = |n: i64| self.value_at(x, Cell::d1(n));
        let core = (lo..=hi).map(at).collect();
        let left_period = (0..p).map(|j| at(lo - p + j)).collect();
        let right_period = (0..q).map(|j| at(hi + 1 + j)).collect();
        Ok(EvPerConfig::new(lo, core, left_period, right_period)?.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{interval, MemorySet, Universe};
    use crate::rule::{LeftTail, LocalRule};

    fn u2() -> Universe {
        Universe::new(1, 1, 2).unwrap()
    }

    fn ex_s0() -> RuleConfig {
        let u = u2();
        let m = MemorySet::line(&[-1, 0]).unwrap();
        let f = LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap();
        let g = LocalRule::scalar(&u, &m, &[(-1, 1), (0, 1)]).unwrap();
        RuleConfig::new(u, m, g, Some(LeftTail { boundary: 0, rule: f }), BTreeMap::new()).unwrap()
    }

    fn ex_s0_dual() -> RuleConfig {
        let u = u2();
        let m = MemorySet::line(&[0, 1]).unwrap();
        let f = LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap();
        let g = LocalRule::scalar(&u, &m, &[(0, 1), (1, 1)]).unwrap();
        RuleConfig::new(u, m, g, Some(LeftTail { boundary: -1, rule: f }), BTreeMap::new()).unwrap()
    }

    fn xor() -> RuleConfig {
        let u = u2();
        let m = MemorySet::line(&[-1, 0]).unwrap();
        RuleConfig::constant(u, m.clone(), LocalRule::scalar(&u, &m, &[(-1, 1), (0, 1)]).unwrap()).unwrap()
    }

    fn pattern(vals: &[(i64, u32)]) -> BTreeMap<Cell, Vector> {
        vals.iter().map(|&(n, v)| (Cell::d1(n), vec![v])).collect()
    }

    #[test]
    fn evaluate_cell_on_counterexample() {
        let s = ex_s0();
        assert_eq!(s.evaluate_cell(&pattern(&[(-1, 1), (0, 1)]), Cell::d1(0)).unwrap(), vec![1]);
        assert_eq!(s.evaluate_cell(&pattern(&[(0, 1), (1, 1)]), Cell::d1(1)).unwrap(), vec![0]);
        assert!(s.evaluate_cell(&pattern(&[(0, 1)]), Cell::d1(0)).is_err());
    }

    #[test]
    fn zero_rule_evaluates_to_zero() {
        let u = Universe::new(1, 2, 5).unwrap();
        let m = MemorySet::line(&[-1, 1]).unwrap();
        let z = RuleConfig::constant(u, m.clone(), LocalRule::zero(&u, &m)).unwrap();
        let pat: BTreeMap<Cell, Vector> = [(Cell::d1(2), vec![3, 4]), (Cell::d1(4), vec![1, 1])].into();
        assert_eq!(z.evaluate_cell(&pat, Cell::d1(3)).unwrap(), vec![0, 0]);
    }

    #[test]
    fn induced_map_of_counterexample() {
        let w = ex_s0().induced_map(&interval(0, 1)).unwrap();
        assert_eq!(w.domain_cells, interval(-1, 1));
        assert_eq!(w.matrix.to_rows(), vec![vec![0, 1, 0], vec![0, 1, 1]]);
        assert_eq!(w.rank(), 2);
        // exhaustive check against cell evaluation
        for bits in 0u32..8 {
            let x: Vec<u32> = (0..3).map(|i| (bits >> i) & 1).collect();
            let pat: BTreeMap<Cell, Vector> = (0..3).map(|i| (Cell::d1(i as i64 - 1), vec![x[i]])).collect();
            let direct: Vec<u32> = [0, 1]
                .iter()
                .flat_map(|&g| ex_s0().evaluate_cell(&pat, Cell::d1(g)).unwrap())
                .collect();
            assert_eq!(w.matrix.mul_vec(&x).unwrap(), direct);
        }
    }

    #[test]
    fn induced_map_identity_and_shift() {
        let u = Universe::new(1, 2, 3).unwrap();
        let w = RuleConfig::identity(u).induced_map(&interval(-1, 1)).unwrap();
        assert!(w.matrix.is_identity());
        let sh = RuleConfig::shift(u2(), Cell::d1(-1)).unwrap();
        let w = sh.induced_map(&[Cell::d1(0)]).unwrap();
        assert_eq!(w.domain_cells, vec![Cell::d1(-1)]);
        assert_eq!(w.matrix.to_rows(), vec![vec![1]]);
    }

    #[test]
    fn apply_finsupp_examples() {
        let delta = FinSuppConfig::delta(Cell::d1(0), vec![1]);
        let img = ex_s0().apply_finsupp(&delta);
        assert_eq!(img, FinSuppConfig::from_entries([(Cell::d1(0), vec![1]), (Cell::d1(1), vec![1])]));
        assert!(ex_s0().apply_finsupp(&FinSuppConfig::zero()).is_zero());
        let sh = RuleConfig::shift(u2(), Cell::d1(-1)).unwrap();
        assert_eq!(sh.apply_finsupp(&delta), FinSuppConfig::delta(Cell::d1(1), vec![1]));
    }

    #[test]
    fn apply_evper_examples() {
        let c = EvPerConfig::new(0, vec![], vec![vec![0]], vec![vec![1]]).unwrap();
        assert!(ex_s0_dual().apply_evper(&c).unwrap().is_zero());
        let id = RuleConfig::identity(u2());
        assert_eq!(id.apply_evper(&c).unwrap(), c);
        assert!(xor().apply_evper(&EvPerConfig::constant(vec![1])).unwrap().is_zero());
        let d2 = Universe::new(2, 1, 2).unwrap();
        assert!(RuleConfig::identity(d2).apply_evper(&c).is_err());
    }

    #[test]
    fn apply_evper_matches_pointwise_evaluation() {
        let x = EvPerConfig::new(-2, vec![vec![1], vec![0], vec![1]], vec![vec![1], vec![0]], vec![vec![1], vec![1], vec![0]])
            .unwrap();
        for s in [ex_s0(), ex_s0_dual(), xor()] {
            let y = s.apply_evper(&x).unwrap();
            for n in -30..30 {
                assert_eq!(y.at(n), s.value_at(&x, Cell::d1(n)).as_slice(), "cell {n}");
            }
        }
    }

    #[test]
    fn support_map_rows_cover_readers() {
        let s = ex_s0();
        let w = s.support_map(&interval(0, 2)).unwrap();
        assert_eq!(w.codomain_cells, interval(0, 3));
        assert_eq!(w.matrix.cols(), 3);
    }
}
