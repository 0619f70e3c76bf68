//! Named configurations used throughout tests, the CLI and the reproduction
//! suite.

use std::collections::BTreeMap;

use crate::cell::{Cell, MemorySet, Universe};
use crate::config::EvPerConfig;
use crate::rule::{LeftTail, LocalRule, RuleConfig};

fn gf2_line() -> Universe {
    Universe::new(1, 1, 2).expect("valid universe")
}

/// Over GF(2) with `M = {-1, 0}`: `f(u, v) = v` at cells `n ≤ 0` and
/// `g(u, v) = u + v` at cells `n ≥ 1`. Bijective but not post-surjective.
pub fn ex_s0() -> RuleConfig {
    let u = gf2_line();
    let m = MemorySet::line(&[-1, 0]).expect("valid memory");
    let f = LocalRule::scalar(&u, &m, &[(0, 1)]).expect("valid rule");
    let g = LocalRule::scalar(&u, &m, &[(-1, 1), (0, 1)]).expect("valid rule");
    RuleConfig::new(u, m, g, Some(LeftTail { boundary: 0, rule: f }), BTreeMap::new()).expect("valid config")
}

/// Dual of [`ex_s0`]: `N = {0, 1}`, `x(n)` at `n ≤ -1` and `x(n) + x(n+1)` at
/// `n ≥ 0`.
pub fn ex_s0_dual() -> RuleConfig {
    let u = gf2_line();
    let m = MemorySet::line(&[0, 1]).expect("valid memory");
    let f = LocalRule::scalar(&u, &m, &[(0, 1)]).expect("valid rule");
    let g = LocalRule::scalar(&u, &m, &[(0, 1), (1, 1)]).expect("valid rule");
    RuleConfig::new(u, m, g, Some(LeftTail { boundary: -1, rule: f }), BTreeMap::new()).expect("valid config")
}

/// `c(n) = 0` for `n ≤ -1`, `c(n) = 1` for `n ≥ 0`; killed by the dual of
/// [`ex_s0`].
pub fn kernel_witness_c() -> EvPerConfig {
    EvPerConfig::new(0, vec![], vec![vec![0]], vec![vec![1]]).expect("valid configuration")
}

/// The constant rule `x(n-1) + x(n)` over GF(2), i.e. `p(X) = 1 + X`.
pub fn xor_rule() -> RuleConfig {
    let u = gf2_line();
    let m = MemorySet::line(&[-1, 0]).expect("valid memory");
    let g = LocalRule::scalar(&u, &m, &[(-1, 1), (0, 1)]).expect("valid rule");
    RuleConfig::constant(u, m, g).expect("valid config")
}

/// `σ(x)(n) = x(n - 1)` over GF(2).
pub fn shift_rule() -> RuleConfig {
    RuleConfig::shift(gf2_line(), Cell::d1(-1)).expect("valid config")
}

pub fn identity_rule() -> RuleConfig {
    RuleConfig::identity(gf2_line())
}

/// Over GF(3) with `M = {0}`: multiplication by 1 everywhere except by 2 at
/// the origin. Its own inverse.
pub fn gf3_diagonal() -> RuleConfig {
    let u = Universe::new(1, 1, 3).expect("valid universe");
    let m = MemorySet::line(&[0]).expect("valid memory");
    let one = LocalRule::scalar(&u, &m, &[(0, 1)]).expect("valid rule");
    let two = LocalRule::scalar(&u, &m, &[(0, 2)]).expect("valid rule");
    RuleConfig::new(u, m, one, None, BTreeMap::from([(Cell::d1(0), two)])).expect("valid config")
}
