//! Dual configurations, the natural pairing and the identities relating
//! `σ_s` to `σ_{s*}`.
//!
//! Covectors are stored as plain vectors in the standard dual basis, so the
//! pairing `⟨ω(g) | c(g)⟩` is a dot product.

use rand::Rng;
use serde::Serialize;

use crate::cell::cube;
use crate::config::{CellValues, FinSuppConfig};
use crate::error::{Error, Result};
use crate::rule::RuleConfig;
use crate::sample::random_finsupp;

/// `s*(g, m) = s(g + m, -m)ᵀ` on the memory `-M`.
pub fn dual_config(s: &RuleConfig) -> RuleConfig {
    s.dual()
}

/// `s** = s` (compared after memory normalization).
pub fn check_involution(s: &RuleConfig) -> bool {
    s.dual().dual().same_map(s)
}

/// `⟨ω | c⟩ = Σ_g ⟨ω(g) | c(g)⟩`, summed over the support of `ω`.
pub fn pairing(omega: &FinSuppConfig, c: &impl CellValues, s: &RuleConfig) -> u32 {
    let f = s.universe().field();
    omega.entries().fold(0, |acc, (g, w)| match c.value(g) {
        Some(v) => f.add(acc, f.dot(w, v)),
        None => acc,
    })
}

/// `⟨σ_{s*}(ω) | c⟩ = ⟨ω | σ_s(c)⟩`.
pub fn check_adjointness(s: &RuleConfig, omega: &FinSuppConfig, c: &FinSuppConfig) -> bool {
    let lhs = pairing(&s.dual().apply_finsupp(omega), c, s);
    let rhs = pairing(omega, &s.apply_finsupp(c), s);
    lhs == rhs
}

/// `(σ_s ∘ σ_t)* = σ_{t*} ∘ σ_{s*}`, compared entrywise.
pub fn check_functoriality(s: &RuleConfig, t: &RuleConfig) -> Result<bool> {
    let lhs = s.compose(t)?.dual();
    let rhs = t.dual().compose(&s.dual())?;
    if lhs.memory() != rhs.memory() {
        return Ok(false);
    }
    Ok(lhs == rhs)
}

/// A pair violating an orthogonality relation.
#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityViolation {
    pub relation: &'static str,
    pub covector: FinSuppConfig,
    pub vector: FinSuppConfig,
    pub value: u32,
}

/// Outcome of [`check_orthogonality`].
#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    /// Dimension of the finitely supported kernel of `σ_s` found in the window.
    pub kernel_dim: usize,
    /// Same for `σ_{s*}`.
    pub dual_kernel_dim: usize,
    pub pairs_checked: usize,
    pub violations: Vec<OrthogonalityViolation>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn finsupp_kernel(s: &RuleConfig, radius: i64) -> Result<Vec<FinSuppConfig>> {
    let map = s.support_map(&cube(s.universe().dim(), radius))?;
    Ok(map
        .matrix
        .kernel_basis()
        .iter()
        .map(|v| map.scatter_domain(v))
        .collect())
}

/// Tests the finitely checkable orthogonality relations:
///
/// * `⟨σ_{s*}(w) | z⟩ = 0` for finitely supported `z ∈ Ker σ_s`,
/// * `⟨ω | σ_s(x)⟩ = 0` for finitely supported `ω ∈ Ker σ_{s*}`,
///
/// with kernels computed exactly for supports in `[-radius, radius]ᵈ` and
/// `samples` random partners per kernel basis vector.
pub fn check_orthogonality(
    s: &RuleConfig,
    radius: i64,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<OrthogonalityReport> {
    if radius < 0 {
        return Err(Error::Contract("radius must be non-negative".into()));
    }
    let u = *s.universe();
    let dual = s.dual();
    let kernel = finsupp_kernel(s, radius)?;
    let dual_kernel = finsupp_kernel(&dual, radius)?;
    let partners = cube(u.dim(), radius + s.memory().radius());
    let mut report = OrthogonalityReport {
        kernel_dim: kernel.len(),
        dual_kernel_dim: dual_kernel.len(),
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for z in &kernel {
        for _ in 0..samples {
            let w = random_finsupp(rng, &u, &partners);
            let omega = dual.apply_finsupp(&w);
            let value = pairing(&omega, z, s);
            report.pairs_checked += 1;
            if value != 0 {
                report.violations.push(OrthogonalityViolation {
                    relation: "ker(s) is orthogonal to im(s*)",
                    covector: omega,
                    vector: z.clone(),
                    value,
                });
            }
        }
    }
    for omega in &dual_kernel {
        for _ in 0..samples {
            let x = s.apply_finsupp(&random_finsupp(rng, &u, &partners));
            let value = pairing(omega, &x, s);
            report.pairs_checked += 1;
            if value != 0 {
                report.violations.push(OrthogonalityViolation {
                    relation: "ker(s*) is orthogonal to im(s)",
                    covector: omega.clone(),
                    vector: x,
                    value,
                });
            }
        }
    }
    Ok(report)
}
