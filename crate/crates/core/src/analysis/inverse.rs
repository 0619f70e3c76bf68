//! Bounded searches for one-sided inverses and the explicit inverse
//! `t(g)(v) = y_{g,v}(g)` built from preimages of planted patterns.

use serde::Serialize;

use crate::cell::{interval, Cell, MemorySet};
use crate::config::FinSuppConfig;
use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;
use crate::rule::{LeftTail, LocalRule, RuleConfig};

use super::search::preimage_on;

/// Whether `σ_p` is the identity map.
pub fn is_identity_map(p: &RuleConfig) -> bool {
    p.same_map(&RuleConfig::identity(*p.universe()))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Unknown rule `t` on the line: memory `[-mb, mb]`, a left tail for
/// `n < -sb`, free rules on `[-sb, sb]` and a right tail for `n > sb`.
struct Unknown {
    k: usize,
    mb: i64,
    sb: i64,
}

impl Unknown {
    fn offsets(&self) -> usize {
        (2 * self.mb + 1) as usize
    }

    fn slots(&self) -> usize {
        (2 * self.sb + 3) as usize
    }

    fn len(&self) -> usize {
        self.slots() * self.offsets() * self.k * self.k
    }

    fn slot(&self, n: i64) -> usize {
        if n < -self.sb {
            0
        } else if n > self.sb {
            self.slots() - 1
        } else {
            (n + self.sb + 1) as usize
        }
    }

    /// Index of entry `(r, c)` of `t(n, a)`.
    fn var(&self, n: i64, a: i64, r: usize, c: usize) -> usize {
        let o = (a + self.mb) as usize;
        ((self.slot(n) * self.offsets() + o) * self.k + r) * self.k + c
    }

    fn build(&self, s: &RuleConfig, values: &[u32]) -> Result<RuleConfig> {
        let u = *s.universe();
        let memory = MemorySet::line(&(-self.mb..=self.mb).collect::<Vec<_>>())?;
        let rule_of = |slot: usize| -> Result<LocalRule> {
            let entries = (-self.mb..=self.mb)
                .map(|a| {
                    let o = (a + self.mb) as usize;
                    let base = (slot * self.offsets() + o) * self.k * self.k;
                    let m = FieldMatrix::from_vec(u.field(), self.k, self.k, values[base..base + self.k * self.k].to_vec())?;
                    Ok((Cell::d1(a), m))
                })
                .collect::<Result<Vec<_>>>()?;
            LocalRule::new(&u, &memory, entries)
        };
        let overrides = (-self.sb..=self.sb)
            .map(|n| Ok((Cell::d1(n), rule_of(self.slot(n))?)))
            .collect::<Result<_>>()?;
        let default_rule = rule_of(self.slots() - 1)?;
        let left = LeftTail {
            boundary: -self.sb - 1,
            rule: rule_of(0)?,
        };
        let t = RuleConfig::new(u, memory, default_rule, Some(left), overrides)?;
        Ok(t.normalize_memory())
    }
}

fn find_inverse(s: &RuleConfig, mem_bound: i64, support_bound: i64, side: Side) -> Result<Option<RuleConfig>> {
    let u = *s.universe();
    u.require_line("inverse search")?;
    if mem_bound < 0 || support_bound < 0 {
        return Err(Error::Contract("search bounds must be non-negative".into()));
    }
    let k = u.k();
    let f = u.field();
    let unk = Unknown {
        k,
        mb: mem_bound,
        sb: support_bound,
    };
    let (s_lo, s_hi) = s.irregular_span().unwrap_or((0, 0));
    let margin = mem_bound + s.memory().radius() + 2;
    let lo = (-support_bound).min(s_lo) - margin;
    let hi = support_bound.max(s_hi) + margin;
    let s_offsets: Vec<i64> = s.memory().offsets().iter().map(|m| m.x()).collect();
    let (s_mlo, s_mhi) = s.memory().x_range();
    let (o_lo, o_hi) = (s_mlo - mem_bound, s_mhi + mem_bound);
    let n_off = (o_hi - o_lo + 1) as usize;

    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    for g in lo..=hi {
        // one equation per (output offset, r, c)
        let base = rows.len();
        rows.resize(base + n_off * k * k, Vec::new());
        for o in o_lo..=o_hi {
            for r in 0..k {
                for c in 0..k {
                    rhs.push(u32::from(o == 0 && r == c));
                }
            }
        }
        let row = |o: i64, r: usize, c: usize| base + (((o - o_lo) as usize) * k + r) * k + c;
        for a in -mem_bound..=mem_bound {
            for &b in &s_offsets {
                match side {
                    // (t∘s)(g, a+b) += t(g, a) s(g + a, b)
                    Side::Left => {
                        let sm = s.coeff(Cell::d1(g + a), Cell::d1(b)).expect("offset of s");
                        for r in 0..k {
                            for c in 0..k {
                                for j in 0..k {
                                    let coef = sm.get(j, c);
                                    if coef != 0 {
                                        rows[row(a + b, r, c)].push((unk.var(g, a, r, j), coef));
                                    }
                                }
                            }
                        }
                    }
                    // (s∘t)(g, b+a) += s(g, b) t(g + b, a)
                    Side::Right => {
                        let sm = s.coeff(Cell::d1(g), Cell::d1(b)).expect("offset of s");
                        for r in 0..k {
                            for c in 0..k {
                                for j in 0..k {
                                    let coef = sm.get(r, j);
                                    if coef != 0 {
                                        rows[row(a + b, r, c)].push((unk.var(g + b, a, j, c), coef));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut a = FieldMatrix::zeros(f, rows.len(), unk.len());
    for (i, row) in rows.iter().enumerate() {
        for &(j, v) in row {
            a.add_at(i, j, v);
        }
    }
    let Some(values) = a.solve_affine(&rhs)?.particular else {
        return Ok(None);
    };
    let t = unk.build(s, &values)?;
    let composed = match side {
        Side::Left => t.compose(s)?,
        Side::Right => s.compose(&t)?,
    };
    Ok(is_identity_map(&composed).then_some(t))
}

/// A rule `t` with memory in `[-mem_bound, mem_bound]` and overrides in
/// `[-support_bound, support_bound]` such that `σ_t ∘ σ_s = Id`.
pub fn find_left_inverse(s: &RuleConfig, mem_bound: i64, support_bound: i64) -> Result<Option<RuleConfig>> {
    find_inverse(s, mem_bound, support_bound, Side::Left)
}

/// As [`find_left_inverse`] with `σ_s ∘ σ_t = Id`.
pub fn find_right_inverse(s: &RuleConfig, mem_bound: i64, support_bound: i64) -> Result<Option<RuleConfig>> {
    find_inverse(s, mem_bound, support_bound, Side::Right)
}

/// Result of [`construct_inverse`].
#[derive(Debug, Clone, Serialize)]
pub struct ConstructOutcome {
    pub inverse: Option<RuleConfig>,
    pub diagnostics: Vec<String>,
}

/// Builds `t(g)(v) = y_{g,v}(g)` where `y_{g,v}` is the finitely supported
/// preimage of the pattern `v ∈ V^E` planted at `g + E`, `E = [-e, e]`.
///
/// Cells of the irregular region are handled one by one; each tail is handled
/// through one representative far from the region. Preimages are searched
/// with support within `2e + r` of `g`. The result is returned only if both
/// `σ_t ∘ σ_s` and `σ_s ∘ σ_t` are the identity.
pub fn construct_inverse(s: &RuleConfig, e: i64) -> Result<ConstructOutcome> {
    let u = *s.universe();
    u.require_line("inverse construction")?;
    if e < 0 {
        return Err(Error::Contract("pattern radius must be non-negative".into()));
    }
    let k = u.k();
    let r = s.memory().radius();
    let rho = 2 * e + r;
    let reach = rho + r + 1;
    let memory = MemorySet::line(&(-e..=e).collect::<Vec<_>>())?;
    let mut diagnostics = Vec::new();

    let rule_at = |g: i64, diagnostics: &mut Vec<String>| -> Result<Option<LocalRule>> {
        let support = interval(g - rho, g + rho);
        let mut entries = Vec::new();
        for h in -e..=e {
            let mut m = FieldMatrix::zeros(u.field(), k, k);
            for i in 0..k {
                let target = FinSuppConfig::delta(Cell::d1(g + h), u.basis_vector(i));
                let Some(y) = preimage_on(s, &support, &target)? else {
                    diagnostics.push(format!(
                        "no preimage of e{i} at cell {} supported within {rho} of {g}",
                        g + h
                    ));
                    return Ok(None);
                };
                if let Some(col) = y.get(Cell::d1(g)) {
                    for (row, &v) in col.iter().enumerate() {
                        m.set(row, i, v);
                    }
                }
            }
            entries.push((Cell::d1(h), m));
        }
        Ok(Some(LocalRule::new(&u, &memory, entries)?))
    };

    let t = match s.irregular_span() {
        None => match rule_at(0, &mut diagnostics)? {
            Some(rule) => RuleConfig::constant(u, memory.clone(), rule)?,
            None => {
                return Ok(ConstructOutcome {
                    inverse: None,
                    diagnostics,
                })
            }
        },
        Some((lo, hi)) => {
            let (lo, hi) = (lo - reach, hi + reach);
            let mut rules = Vec::new();
            for g in lo - 1..=hi + 1 {
                match rule_at(g, &mut diagnostics)? {
                    Some(rule) => rules.push(rule),
                    None => {
                        return Ok(ConstructOutcome {
                            inverse: None,
                            diagnostics,
                        })
                    }
                }
            }
            let left = rules[0].clone();
            let right = rules[rules.len() - 1].clone();
            RuleConfig::from_line_function(u, memory.clone(), left, right, lo, hi, |n| {
                rules[(n - lo + 1) as usize].clone()
            })
        }
    };
    let t = t.normalize_memory();
    let left_ok = is_identity_map(&t.compose(s)?);
    let right_ok = is_identity_map(&s.compose(&t)?);
    if !left_ok {
        diagnostics.push("candidate is not a left inverse".into());
    }
    if !right_ok {
        diagnostics.push("candidate is not a right inverse".into());
    }
    Ok(ConstructOutcome {
        inverse: (left_ok && right_ok).then_some(t),
        diagnostics,
    })
}
