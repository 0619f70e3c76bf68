//! Constant scalar rules on the line as Laurent polynomials.
//!
//! A constant rule with `k = 1` acts on `GF(p)^ℤ` as multiplication by
//! `p(X) = Σ_m s(m) X^m`. Since `GF(p)[X, X⁻¹]` is a domain, `p ≠ 0` is
//! equivalent to pre-injectivity and to surjectivity. A nonzero `p` with at
//! least two terms is a linear recurrence with invertible end coefficients,
//! whose solutions are all periodic, so `σ` is injective iff `p` is a monomial.

use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::config::EvPerConfig;
use crate::error::{Error, Result};
use crate::linalg::PrimeField;
use crate::rule::RuleConfig;

/// Recurrences whose period exceeds this are not unrolled.
const MAX_UNROLL: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarCAFacts {
    pub modulus: u32,
    /// Nonzero coefficients `(m, s(m))` by increasing exponent.
    pub terms: Vec<(i64, u32)>,
}

impl ScalarCAFacts {
    /// Facts for a constant configuration with `d = 1`, `k = 1`.
    pub fn of_config(s: &RuleConfig) -> Result<Self> {
        let u = s.universe();
        if u.dim() != 1 || u.k() != 1 || !s.is_constant() {
            return Err(Error::Contract(
                "scalar facts need a constant rule on the line with k = 1".into(),
            ));
        }
        let terms = s
            .default_rule()
            .coeffs()
            .filter(|(_, c)| c.get(0, 0) != 0)
            .map(|(m, c)| (m.x(), c.get(0, 0)))
            .collect();
        Ok(Self {
            modulus: u.p(),
            terms,
        })
    }

    /// `Some` iff `s` is a constant scalar configuration on the line.
    pub fn try_of(s: &RuleConfig) -> Option<Self> {
        Self::of_config(s).ok()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn surjective(&self) -> bool {
        !self.is_zero()
    }

    pub fn pre_injective(&self) -> bool {
        !self.is_zero()
    }

    pub fn injective(&self) -> bool {
        self.is_monomial()
    }

    /// A nonzero periodic configuration killed by `p(X)`; `None` for
    /// monomials (injective) and for recurrences too long to unroll.
    pub fn kernel_witness(&self) -> Option<EvPerConfig> {
        if self.is_zero() {
            return Some(EvPerConfig::constant(vec![1]));
        }
        if self.is_monomial() {
            return None;
        }
        let f = PrimeField::new(self.modulus).ok()?;
        let (m_lo, _) = self.terms[0];
        let (m_hi, c_hi) = *self.terms.last()?;
        let w = (m_hi - m_lo) as usize;
        // x(n + w) = -c_hi⁻¹ Σ_{m < m_hi} c_m x(n + m - m_lo)
        let lead = f.neg(f.inv(c_hi));
        let lower: Vec<(usize, u32)> = self.terms[..self.terms.len() - 1]
            .iter()
            .map(|&(m, c)| ((m - m_lo) as usize, f.mul(lead, c)))
            .collect();
        let mut seq: Vec<u32> = vec![0; w];
        seq[0] = 1;
        let initial = seq.clone();
        loop {
            let n = seq.len() - w;
            let next = lower.iter().fold(0, |acc, &(i, c)| f.add(acc, f.mul(c, seq[n + i])));
            seq.push(next);
            if seq[seq.len() - w..] == initial[..] {
                let period = seq.len() - w;
                let block = seq[..period].iter().map(|&v| vec![v]).collect();
                return Some(EvPerConfig::periodic(block));
            }
            if seq.len() > MAX_UNROLL {
                return None;
            }
        }
    }

    /// Exponent of a monomial.
    pub fn monomial_offset(&self) -> Option<Cell> {
        self.is_monomial().then(|| Cell::d1(self.terms[0].0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{MemorySet, Universe};
    use crate::examples;
    use crate::rule::LocalRule;

    fn scalar(p: u32, terms: &[(i64, i64)]) -> RuleConfig {
        let u = Universe::new(1, 1, p).unwrap();
        let offs: Vec<i64> = terms.iter().map(|t| t.0).collect();
        let m = MemorySet::line(&offs).unwrap();
        RuleConfig::constant(u, m.clone(), LocalRule::scalar(&u, &m, terms).unwrap()).unwrap()
    }

    #[test]
    fn identity_is_injective_and_surjective() {
        let f = ScalarCAFacts::of_config(&examples::identity_rule()).unwrap();
        assert!(f.injective() && f.surjective() && f.pre_injective());
        assert!(f.kernel_witness().is_none());
    }

    #[test]
    fn one_plus_x() {
        let s = examples::xor_rule();
        let f = ScalarCAFacts::of_config(&s).unwrap();
        assert!(f.surjective() && f.pre_injective() && !f.injective());
        let w = f.kernel_witness().unwrap();
        assert_eq!(w, EvPerConfig::constant(vec![1]));
        assert!(s.apply_evper(&w).unwrap().is_zero());
    }

    #[test]
    fn zero_polynomial() {
        let s = scalar(3, &[(0, 0)]);
        let f = ScalarCAFacts::of_config(&s).unwrap();
        assert!(f.is_zero() && !f.surjective() && !f.pre_injective() && !f.injective());
        assert!(s.apply_evper(&f.kernel_witness().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn longer_recurrences_have_periodic_witnesses() {
        for (p, terms) in [
            (2, vec![(-1, 1), (0, 1), (1, 1)]),
            (3, vec![(-2, 1), (1, 2)]),
            (5, vec![(0, 2), (1, 3), (2, 4)]),
            (2, vec![(-2, 1), (2, 1)]),
        ] {
            let s = scalar(p, &terms);
            let f = ScalarCAFacts::of_config(&s).unwrap();
            let w = f.kernel_witness().unwrap();
            assert!(!w.is_zero());
            assert!(s.apply_evper(&w).unwrap().is_zero(), "{terms:?} over GF({p})");
        }
    }

    #[test]
    fn rejects_non_constant() {
        assert!(ScalarCAFacts::of_config(&examples::ex_s0()).is_err());
    }
}
