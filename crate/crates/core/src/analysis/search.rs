//! Finite searches behind the verdicts: window ranks, kernel elements,
//! anchored systems and preimages.

use crate::cell::{cube, interval, Cell};
use crate::config::{EvPerConfig, FinSuppConfig};
use crate::error::Result;
use crate::linalg::FieldMatrix;
use crate::rule::{LocalRule, RuleConfig};

use super::verdict::{AnchorEvidence, AnchorOutcome, Anchors};

/// Rank shortfall of `f⁺` on `E_n`, as `(rank, k·|E_n|)`.
pub fn window_rank(s: &RuleConfig, n: i64) -> Result<(usize, usize)> {
    let map = s.induced_map(&cube(s.universe().dim(), n))?;
    Ok((map.rank(), map.matrix.rows()))
}

/// Smallest `n ≤ n_max` whose window map is not onto.
pub fn window_rank_failure(s: &RuleConfig, n_max: i64) -> Result<Option<(i64, usize, usize)>> {
    for n in 0..=n_max {
        let (rank, required) = window_rank(s, n)?;
        if rank < required {
            return Ok(Some((n, rank, required)));
        }
    }
    Ok(None)
}

/// Finitely supported kernel of `σ_s` among configurations supported on
/// `cells`: the map to every cell that reads them is exact.
pub fn kernel_on(s: &RuleConfig, cells: &[Cell]) -> Result<Vec<FinSuppConfig>> {
    if cells.is_empty() {
        return Ok(Vec::new());
    }
    let map = s.support_map(cells)?;
    Ok(map
        .matrix
        .kernel_basis()
        .iter()
        .map(|v| map.scatter_domain(v))
        .collect())
}

/// A nonzero kernel element supported in some `E_n`, `n ≤ n_max`.
pub fn finsupp_kernel_search(s: &RuleConfig, n_max: i64) -> Result<Option<FinSuppConfig>> {
    for n in 0..=n_max {
        if let Some(x) = kernel_on(s, &cube(s.universe().dim(), n))?.into_iter().next() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Smallest and largest offsets with a nonzero block, if both blocks are
/// invertible.
fn invertible_extremes(rule: &LocalRule) -> Option<(i64, i64)> {
    let nonzero: Vec<(Cell, &FieldMatrix)> = rule.coeffs().filter(|(_, c)| !c.is_zero()).collect();
    let (lo, blo) = nonzero.first()?;
    let (hi, bhi) = nonzero.last()?;
    (blo.is_invertible() && bhi.is_invertible()).then_some((lo.x(), hi.x()))
}

/// Where finitely supported kernel elements can live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportBound {
    /// Some tail has a zero rule or a singular extreme block.
    NotApplicable,
    /// Every finitely supported kernel element is supported in `[lo, hi]`;
    /// `lo > hi` means there is none besides 0.
    Window(i64, i64),
}

/// Bounds the support of finitely supported kernel elements on the line.
///
/// If the last nonzero cell of `x` is `b` and cell `c = b - m_lo` uses a tail
/// rule whose lowest nonzero block `s(c, m_lo)` is invertible, then
/// `σ(x)(c) = s(c, m_lo) x(b) ≠ 0`. So `b` is confined to cells where neither
/// tail can play this role; symmetrically for the first nonzero cell.
pub fn support_bound(s: &RuleConfig) -> SupportBound {
    if s.universe().dim() != 1 {
        return SupportBound::NotApplicable;
    }
    let Some((r_lo, r_hi)) = invertible_extremes(s.right_rule()) else {
        return SupportBound::NotApplicable;
    };
    let Some((l_lo, l_hi)) = invertible_extremes(s.left_rule()) else {
        return SupportBound::NotApplicable;
    };
    let Some((span_lo, span_hi)) = s.irregular_span() else {
        return SupportBound::Window(1, 0);
    };
    let overridden = |n: i64| s.overrides().contains_key(&Cell::d1(n));
    let boundary = s.left_tail().map(|t| t.boundary);
    let right_tail = |n: i64| !overridden(n) && boundary.is_none_or(|b| n > b);
    let left_tail = |n: i64| !overridden(n) && boundary.is_some_and(|b| n <= b);
    let candidates = |e_l: i64, e_r: i64| -> Vec<i64> {
        (span_lo + e_l.min(e_r) - 1..=span_hi + e_l.max(e_r) + 1)
            .filter(|&n| !right_tail(n - e_r) && !left_tail(n - e_l))
            .collect()
    };
    let last = candidates(l_lo, r_lo);
    let first = candidates(l_hi, r_hi);
    match (first.first(), last.last()) {
        (Some(&lo), Some(&hi)) => SupportBound::Window(lo, hi),
        _ => SupportBound::Window(1, 0),
    }
}

/// Exact finitely supported kernel on the line when [`support_bound`]
/// applies: `Some(None)` proves pre-injectivity, `Some(Some(x))` refutes it.
pub fn bounded_kernel(s: &RuleConfig) -> Result<Option<(i64, i64, Option<FinSuppConfig>)>> {
    match support_bound(s) {
        SupportBound::NotApplicable => Ok(None),
        SupportBound::Window(lo, hi) => {
            let x = kernel_on(s, &interval(lo, hi))?.into_iter().next();
            Ok(Some((lo, hi, x)))
        }
    }
}

/// Core interval used by the eventually periodic kernel search.
pub fn evper_core(s: &RuleConfig, n_max: i64) -> (i64, i64) {
    let (mut lo, mut hi) = (-n_max, n_max);
    if let Some((a, b)) = s.irregular_span() {
        lo = lo.min(a);
        hi = hi.max(b);
    }
    (lo, hi)
}

/// Nonzero `x` in the kernel with core `core` and tail periods `p_l`, `p_r`
/// (line only; `core` must cover the irregular span).
pub fn evper_kernel_with_periods(
    s: &RuleConfig,
    core: (i64, i64),
    p_l: usize,
    p_r: usize,
) -> Result<Option<EvPerConfig>> {
    let u = s.universe();
    let k = u.k();
    let (c_lo, c_hi) = core;
    let c_len = (c_hi - c_lo + 1) as usize;
    let var = |n: i64| -> usize {
        if n < c_lo {
            c_len + (n - c_lo).rem_euclid(p_l as i64) as usize
        } else if n <= c_hi {
            (n - c_lo) as usize
        } else {
            c_len + p_l + (n - c_hi - 1).rem_euclid(p_r as i64) as usize
        }
    };
    let (mlo, mhi) = s.memory().x_range();
    let g_lo = c_lo - mhi - p_l as i64;
    let g_hi = c_hi - mlo + p_r as i64;
    let cells = (g_hi - g_lo + 1) as usize;
    let unknowns = c_len + p_l + p_r;
    let mut a = FieldMatrix::zeros(u.field(), cells * k, unknowns * k);
    for (i, g) in (g_lo..=g_hi).enumerate() {
        for (m, block) in s.rule_at(Cell::d1(g)).coeffs() {
            let j = var(g + m.x());
            for r in 0..k {
                for c in 0..k {
                    a.add_at(i * k + r, j * k + c, block.get(r, c));
                }
            }
        }
    }
    let Some(v) = a.kernel_basis().into_iter().next() else {
        return Ok(None);
    };
    let block = |j: usize| v[j * k..(j + 1) * k].to_vec();
    let x = EvPerConfig::new(
        c_lo,
        (0..c_len).map(block).collect(),
        (c_len..c_len + p_l).map(block).collect(),
        (c_len + p_l..unknowns).map(block).collect(),
    )?;
    Ok(Some(x.canonical()))
}

/// Tries tail periods `1..=period_bound` on both sides, smallest first.
pub fn evper_kernel_search(s: &RuleConfig, n_max: i64, period_bound: usize) -> Result<Option<EvPerConfig>> {
    s.universe().require_line("the eventually periodic kernel search")?;
    let core = evper_core(s, n_max);
    let mut pairs: Vec<(usize, usize)> = (1..=period_bound)
        .flat_map(|a| (1..=period_bound).map(move |b| (a, b)))
        .collect();
    pairs.sort_by_key(|&(a, b)| (a.max(b), a, b));
    for (p_l, p_r) in pairs {
        if let Some(x) = evper_kernel_with_periods(s, core, p_l, p_r)? {
            debug_assert!(s.apply_evper(&x)?.is_zero());
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn selector(field: crate::linalg::PrimeField, cols: usize, k: usize, idx: usize) -> FieldMatrix {
    let mut sel = FieldMatrix::zeros(field, k, cols);
    for i in 0..k {
        sel.set(i, idx * k + i, 1);
    }
    sel
}

/// Whether `K_n(g, v) = {x : f⁺_{E_n}(x) = 0, x(g) = v}` is empty.
pub fn anchored_kernel_empty(s: &RuleConfig, g: Cell, v: &[u32], n: i64) -> Result<bool> {
    let map = s.induced_map(&cube(s.universe().dim(), n))?;
    anchored_on(&map, g, v)
}

fn anchored_on(map: &crate::eval::WindowMap, g: Cell, v: &[u32]) -> Result<bool> {
    let Some(idx) = map.domain_index(g) else {
        return Ok(false);
    };
    let k = v.len();
    let field = map.matrix.field();
    let a = map.matrix.vstack(&selector(field, map.matrix.cols(), k, idx))?;
    let mut b = vec![0; map.matrix.rows()];
    b.extend_from_slice(v);
    Ok(a.solve_affine(&b)?.particular.is_none())
}

/// For each anchor, the smallest `n ≤ n_max` with `K_n(g, v) = ∅`.
pub fn anchored_kernel(s: &RuleConfig, anchors: &Anchors, n_max: i64) -> Result<Vec<AnchorEvidence>> {
    let mut out: Vec<Option<i64>> = vec![None; anchors.pairs().len()];
    for n in 0..=n_max {
        if out.iter().all(Option::is_some) {
            break;
        }
        let map = s.induced_map(&cube(s.universe().dim(), n))?;
        for (slot, (g, v)) in out.iter_mut().zip(anchors.pairs()) {
            if slot.is_none() && anchored_on(&map, *g, v)? {
                *slot = Some(n);
            }
        }
    }
    Ok(anchors
        .pairs()
        .iter()
        .zip(out)
        .map(|((g, v), n)| AnchorEvidence {
            cell: *g,
            vector: v.clone(),
            outcome: match n {
                Some(radius) => AnchorOutcome::NoKernelThrough { radius },
                None => AnchorOutcome::Unresolved { radius: n_max },
            },
        })
        .collect())
}

/// A preimage of `δ_{g,v}` supported on `cells`, if one exists.
pub fn preimage_on(s: &RuleConfig, cells: &[Cell], target: &FinSuppConfig) -> Result<Option<FinSuppConfig>> {
    let map = s.support_map(cells)?;
    if target.support().any(|c| map.codomain_cells.binary_search(&c).is_err()) {
        return Ok(None);
    }
    let k = s.universe().k();
    let mut b = Vec::with_capacity(map.matrix.rows());
    for &c in &map.codomain_cells {
        match target.get(c) {
            Some(v) => b.extend_from_slice(v),
            None => b.extend(std::iter::repeat_n(0, k)),
        }
    }
    Ok(map
        .matrix
        .solve_affine(&b)?
        .particular
        .map(|z| map.scatter_domain(&z)))
}

/// For each anchor, a preimage of `δ_{g,v}` supported in the smallest
/// possible `E_n`, `n ≤ n_max`.
pub fn anchored_preimages(s: &RuleConfig, anchors: &Anchors, n_max: i64) -> Result<Vec<AnchorEvidence>> {
    let mut out: Vec<Option<FinSuppConfig>> = vec![None; anchors.pairs().len()];
    for n in 0..=n_max {
        if out.iter().all(Option::is_some) {
            break;
        }
        let cells = cube(s.universe().dim(), n);
        for (slot, (g, v)) in out.iter_mut().zip(anchors.pairs()) {
            if slot.is_none() {
                *slot = preimage_on(s, &cells, &FinSuppConfig::delta(*g, v.clone()))?;
            }
        }
    }
    Ok(anchors
        .pairs()
        .iter()
        .zip(out)
        .map(|((g, v), z)| AnchorEvidence {
            cell: *g,
            vector: v.clone(),
            outcome: match z {
                Some(preimage) => AnchorOutcome::Preimage { preimage },
                None => AnchorOutcome::Unresolved { radius: n_max },
            },
        })
        .collect())
}
