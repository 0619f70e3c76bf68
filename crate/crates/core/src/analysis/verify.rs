//! Independent re-verification of certificates by direct evaluation.

use crate::cell::interval;
#[cfg(test)]
use crate::cell::Cell;
use crate::config::{EvPerConfig, FinSuppConfig};
use crate::error::{Error, Result};
use crate::rule::{LimitClass, RuleConfig, TailSide};

use super::inverse::is_identity_map;
use super::rules::find_rule;
use super::scalar::ScalarCAFacts;
use super::search::{anchored_kernel_empty, kernel_on, support_bound, window_rank, SupportBound};
use super::verdict::{AnchorEvidence, AnchorOutcome, Certificate, InverseSide, Premise, Property, Status, Verdict};

fn reject(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(reject(msg))
    }
}

fn check_vector(s: &RuleConfig, v: &[u32]) -> Result<()> {
    let u = s.universe();
    ensure(
        v.len() == u.k() && v.iter().all(|&x| x < u.p()),
        format!("value {v:?} is not in GF({})^{}", u.p(), u.k()),
    )
}

fn check_finsupp(s: &RuleConfig, x: &FinSuppConfig) -> Result<()> {
    for (c, v) in x.entries() {
        s.universe().check_cell(c)?;
        check_vector(s, v)?;
    }
    Ok(())
}

fn check_evper(s: &RuleConfig, x: &EvPerConfig) -> Result<()> {
    EvPerConfig::new(x.start, x.core.clone(), x.left_period.clone(), x.right_period.clone())?;
    for v in x.core.iter().chain(&x.left_period).chain(&x.right_period) {
        check_vector(s, v)?;
    }
    Ok(())
}

fn check_inverse(s: &RuleConfig, t: &RuleConfig, side: InverseSide) -> Result<(bool, bool)> {
    ensure(t.universe() == s.universe(), "inverse lives over a different universe")?;
    let left = is_identity_map(&t.compose(s)?);
    let right = is_identity_map(&s.compose(t)?);
    let _ = side;
    Ok((left, right))
}

/// Checks that `cert` justifies `status` for `property` of `s`.
pub fn verify_claim(s: &RuleConfig, property: Property, status: Status, cert: &Certificate) -> Result<()> {
    use Property::*;
    match (status, cert) {
        (Status::Inconclusive, Certificate::BoundExhausted { .. }) => Ok(()),
        (Status::Fails, Certificate::WindowRankFailure { radius, rank, required }) => {
            ensure(
                matches!(property, Surjective | PostSurjective | StablePostSurjective | Invertible),
                format!("a window rank failure does not refute {property}"),
            )?;
            ensure(*radius >= 0, "negative window radius")?;
            let (r, q) = window_rank(s, *radius)?;
            ensure((r, q) == (*rank, *required), format!("window {radius} has rank {r} of {q}"))?;
            ensure(r < q, format!("window {radius} is onto"))
        }
        (Status::Fails, Certificate::FinSuppKernelWitness { witness }) => {
            ensure(
                matches!(property, PreInjective | Injective | StableInjective | Invertible),
                format!("a kernel witness does not refute {property}"),
            )?;
            check_finsupp(s, witness)?;
            ensure(!witness.is_zero(), "kernel witness is zero")?;
            ensure(s.apply_finsupp(witness).is_zero(), "witness is not in the kernel")
        }
        (Status::Fails, Certificate::EvPerKernelWitness { witness }) => {
            ensure(
                matches!(property, Injective | StableInjective | Invertible),
                format!("an eventually periodic kernel witness does not refute {property}"),
            )?;
            check_evper(s, witness)?;
            ensure(!witness.is_zero(), "kernel witness is zero")?;
            ensure(s.apply_evper(witness)?.is_zero(), "witness is not in the kernel")
        }
        (Status::Holds, Certificate::SupportBoundedKernel { lo, hi }) => {
            ensure(property == PreInjective, format!("a support bound does not prove {property}"))?;
            ensure(
                support_bound(s) == SupportBound::Window(*lo, *hi),
                "support bound does not match the configuration",
            )?;
            ensure(kernel_on(s, &interval(*lo, *hi))?.is_empty(), "bounded window carries a kernel element")
        }
        (Status::Holds, Certificate::ScalarOracle { facts }) => {
            let own = ScalarCAFacts::of_config(s).map_err(|e| reject(e.to_string()))?;
            ensure(own == *facts, "scalar facts do not match the configuration")?;
            let ok = match property {
                Surjective => facts.surjective(),
                PreInjective => facts.pre_injective(),
                Injective => facts.injective(),
                _ => false,
            };
            ensure(ok, format!("the Laurent polynomial does not prove {property}"))
        }
        (Status::Holds, Certificate::InverseRule { side, inverse }) => {
            let (left, right) = check_inverse(s, inverse, *side)?;
            let (needs_left, needs_right) = match side {
                InverseSide::Left => (true, false),
                InverseSide::Right => (false, true),
                InverseSide::TwoSided => (true, true),
            };
            ensure(!needs_left || left, "claimed left inverse is not one")?;
            ensure(!needs_right || right, "claimed right inverse is not one")?;
            let proves = match side {
                InverseSide::Left => matches!(property, PreInjective | Injective | StableInjective),
                InverseSide::Right => matches!(property, Surjective | PostSurjective | StablePostSurjective),
                InverseSide::TwoSided => true,
            };
            ensure(proves, format!("a {side:?} inverse does not prove {property}"))
        }
        (Status::Fails, Certificate::OneSidedInverse { side, inverse }) => {
            ensure(property == Invertible, format!("a one-sided inverse does not refute {property}"))?;
            let (left, right) = check_inverse(s, inverse, *side)?;
            let ok = match side {
                InverseSide::Left => left && !right,
                InverseSide::Right => right && !left,
                InverseSide::TwoSided => false,
            };
            ensure(ok, "inverse is not strictly one-sided")
        }
        (_, Certificate::DualTransfer { clause, premise }) => {
            let (q, c) = property.dual();
            ensure(
                premise.property == q && *clause == c && premise.status == status,
                format!("{property} {status} does not follow from dual {} {}", premise.property, premise.status),
            )?;
            verify_premise(&s.dual(), premise)
        }
        (_, Certificate::Implication { rule, premises }) => {
            let pattern: Vec<(Property, Status)> = premises.iter().map(|p| (p.property, p.status)).collect();
            let r = find_rule(&pattern, (property, status))
                .ok_or_else(|| reject(format!("no implication yields {property} {status}")))?;
            ensure(r.name() == *rule, format!("rule name {rule:?} does not match its premises"))?;
            premises.iter().try_for_each(|p| verify_premise(s, p))
        }
        (Status::Fails, Certificate::LimitPoint { side, premise }) => {
            let base = match property {
                StableInjective => Injective,
                StablePostSurjective => PostSurjective,
                _ => return Err(reject(format!("a limit point does not refute {property}"))),
            };
            ensure(
                premise.property == base && premise.status == Status::Fails,
                "limit point premise must refute the base property",
            )?;
            ensure(
                *side == TailSide::Right || s.left_tail().is_some() || s.is_constant(),
                "left tail class claimed for a configuration without one",
            )?;
            verify_premise(&s.tail_config(*side), premise)
        }
        (Status::Holds, Certificate::AllLimitClasses { translates, tails }) => {
            let base = match property {
                StableInjective => Injective,
                StablePostSurjective => PostSurjective,
                _ => return Err(reject(format!("limit classes do not prove {property}"))),
            };
            let need: Vec<TailSide> = s
                .limit_representatives()
                .iter()
                .filter_map(|c| match c {
                    LimitClass::Constant { side, .. } => Some(*side),
                    LimitClass::Translates(_) => None,
                })
                .collect();
            let have: Vec<TailSide> = tails.iter().map(|(side, _)| *side).collect();
            ensure(need == have, "limit classes do not cover the orbit closure")?;
            for p in std::iter::once(translates.as_ref()).chain(tails.iter().map(|(_, p)| p)) {
                ensure(p.property == base && p.status == Status::Holds, "limit class premise must prove the base property")?;
            }
            verify_premise(s, translates)?;
            tails
                .iter()
                .try_for_each(|(side, p)| verify_premise(&s.tail_config(*side), p))
        }
        _ => Err(reject(format!(
            "a {} certificate cannot justify {property} {status}",
            cert.kind()
        ))),
    }
}

pub fn verify_premise(s: &RuleConfig, p: &Premise) -> Result<()> {
    verify_claim(s, p.property, p.status, &p.certificate)
}

/// Re-checks one anchor record for `property` of `s`.
pub fn verify_anchor(s: &RuleConfig, property: Property, a: &AnchorEvidence) -> Result<()> {
    check_vector(s, &a.vector)?;
    s.universe().check_cell(a.cell)?;
    match &a.outcome {
        AnchorOutcome::Unresolved { .. } => Ok(()),
        AnchorOutcome::NoKernelThrough { radius } => {
            ensure(
                matches!(property, Property::Injective | Property::StableInjective),
                "kernel anchors belong to injectivity",
            )?;
            ensure(
                anchored_kernel_empty(s, a.cell, &a.vector, *radius)?,
                format!("window {radius} has a kernel element through {}", a.cell),
            )
        }
        AnchorOutcome::Preimage { preimage } => {
            ensure(
                matches!(property, Property::PostSurjective | Property::StablePostSurjective),
                "preimage anchors belong to post-surjectivity",
            )?;
            check_finsupp(s, preimage)?;
            ensure(
                s.apply_finsupp(preimage) == FinSuppConfig::delta(a.cell, a.vector.clone()),
                format!("preimage does not map onto the anchor at {}", a.cell),
            )
        }
    }
}

/// Re-verifies a verdict and all its anchor records against `s`.
pub fn verify_verdict(s: &RuleConfig, v: &Verdict) -> Result<()> {
    verify_claim(s, v.property, v.status, &v.certificate)?;
    v.anchors.iter().try_for_each(|a| verify_anchor(s, v.property, a))
}
