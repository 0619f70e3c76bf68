//! Per-property verdicts. Each uses only evidence about the configuration it
//! is given (plus the dual, where the duality theorem turns a dual kernel
//! witness into a refutation); [`cross_validate`](super::cross_validate)
//! propagates the rest.

use crate::config::FinSuppConfig;
use crate::error::Result;
use crate::rule::{LimitClass, RuleConfig};

use super::inverse::{construct_inverse, find_left_inverse, find_right_inverse, is_identity_map};
use super::rules::find_rule;
use super::scalar::ScalarCAFacts;
use super::search::{
    anchored_kernel, anchored_preimages, bounded_kernel, evper_kernel_search, finsupp_kernel_search,
    window_rank_failure,
};
use super::verdict::{Anchors, Certificate, Clause, InverseSide, Premise, Property, SearchBounds, Status, Verdict};

fn implication(property: Property, status: Status, premises: Vec<Premise>) -> Verdict {
    let pattern: Vec<(Property, Status)> = premises.iter().map(|p| (p.property, p.status)).collect();
    let rule = find_rule(&pattern, (property, status)).expect("implication is in the rule table");
    Verdict::new(
        property,
        status,
        Certificate::Implication {
            rule: rule.name(),
            premises,
        },
    )
}

fn finsupp_fail(property: Property, witness: FinSuppConfig) -> Verdict {
    Verdict::fails(property, Certificate::FinSuppKernelWitness { witness })
}

pub fn surjectivity_verdict(s: &RuleConfig, bounds: &SearchBounds) -> Result<Verdict> {
    let p = Property::Surjective;
    if let Some((radius, rank, required)) = window_rank_failure(s, bounds.n_max)? {
        return Ok(Verdict::fails(p, Certificate::WindowRankFailure { radius, rank, required }));
    }
    if let Some(facts) = ScalarCAFacts::try_of(s) {
        if facts.surjective() {
            return Ok(Verdict::holds(p, Certificate::ScalarOracle { facts }));
        }
    }
    if s.universe().dim() == 1 {
        if let Some(inverse) = find_right_inverse(s, bounds.mem_bound, bounds.support_bound)? {
            return Ok(Verdict::holds(p, Certificate::InverseRule { side: InverseSide::Right, inverse }));
        }
    }
    Ok(Verdict::inconclusive(p, bounds.n_max))
}

pub fn preinjectivity_verdict(s: &RuleConfig, bounds: &SearchBounds) -> Result<Verdict> {
    let p = Property::PreInjective;
    if let Some(x) = finsupp_kernel_search(s, bounds.n_max)? {
        return Ok(finsupp_fail(p, x));
    }
    if let Some(facts) = ScalarCAFacts::try_of(s) {
        if facts.pre_injective() {
            return Ok(Verdict::holds(p, Certificate::ScalarOracle { facts }));
        }
    }
    if let Some((lo, hi, x)) = bounded_kernel(s)? {
        return Ok(match x {
            Some(x) => finsupp_fail(p, x),
            None => Verdict::holds(p, Certificate::SupportBoundedKernel { lo, hi }),
        });
    }
    if s.universe().dim() == 1 {
        if let Some(inverse) = find_left_inverse(s, bounds.mem_bound, bounds.support_bound)? {
            return Ok(Verdict::holds(p, Certificate::InverseRule { side: InverseSide::Left, inverse }));
        }
    }
    Ok(Verdict::inconclusive(p, bounds.n_max))
}

/// A kernel witness refuting injectivity, from the cheapest source that has one.
fn injectivity_refutation(s: &RuleConfig, bounds: &SearchBounds) -> Result<Option<Certificate>> {
    if let Some(witness) = finsupp_kernel_search(s, bounds.n_max)? {
        return Ok(Some(Certificate::FinSuppKernelWitness { witness }));
    }
    if let Some(facts) = ScalarCAFacts::try_of(s) {
        if let Some(witness) = facts.kernel_witness() {
            return Ok(Some(Certificate::EvPerKernelWitness { witness }));
        }
    }
    if let Some((_, _, Some(witness))) = bounded_kernel(s)? {
        return Ok(Some(Certificate::FinSuppKernelWitness { witness }));
    }
    if let Some(witness) = evper_kernel_search(s, bounds.n_max, bounds.period_bound)? {
        return Ok(Some(Certificate::EvPerKernelWitness { witness }));
    }
    Ok(None)
}

pub fn injectivity_verdict(s: &RuleConfig, anchors: &Anchors, bounds: &SearchBounds) -> Result<Verdict> {
    let p = Property::Injective;
    s.universe().require_line("injectivity")?;
    if let Some(cert) = injectivity_refutation(s, bounds)? {
        return Ok(Verdict::fails(p, cert));
    }
    if let Some(facts) = ScalarCAFacts::try_of(s) {
        if facts.injective() {
            return Ok(Verdict::holds(p, Certificate::ScalarOracle { facts }));
        }
    }
    if let Some(inverse) = find_left_inverse(s, bounds.mem_bound, bounds.support_bound)? {
        return Ok(Verdict::holds(p, Certificate::InverseRule { side: InverseSide::Left, inverse }));
    }
    let evidence = anchored_kernel(s, anchors, bounds.n_max)?;
    Ok(Verdict::inconclusive(p, bounds.n_max).with_anchors(evidence))
}

pub fn postsurjectivity_verdict(s: &RuleConfig, anchors: &Anchors, bounds: &SearchBounds) -> Result<Verdict> {
    let p = Property::PostSurjective;
    s.universe().require_line("post-surjectivity")?;
    if let Some((radius, rank, required)) = window_rank_failure(s, bounds.n_max)? {
        return Ok(Verdict::fails(p, Certificate::WindowRankFailure { radius, rank, required }));
    }
    if let Some(certificate) = injectivity_refutation(&s.dual(), bounds)? {
        let premise = Premise {
            property: Property::Injective,
            status: Status::Fails,
            certificate,
        };
        return Ok(Verdict::fails(
            p,
            Certificate::DualTransfer {
                clause: Clause::II,
                premise: Box::new(premise),
            },
        ));
    }
    if let Some(inverse) = find_right_inverse(s, bounds.mem_bound, bounds.support_bound)? {
        return Ok(Verdict::holds(p, Certificate::InverseRule { side: InverseSide::Right, inverse }));
    }
    let evidence = anchored_preimages(s, anchors, bounds.n_max)?;
    Ok(Verdict::inconclusive(p, bounds.n_max).with_anchors(evidence))
}

/// Stable injectivity or stable post-surjectivity: the base property must
/// hold on every class of the orbit closure, i.e. on `s` and on the constant
/// configurations of its tails.
fn stable(s: &RuleConfig, stable_p: Property, bounds: &SearchBounds) -> Result<Verdict> {
    s.universe().require_line("stable properties")?;
    let (base, side) = match stable_p {
        Property::StableInjective => (Property::Injective, InverseSide::Left),
        _ => (Property::PostSurjective, InverseSide::Right),
    };
    let inverse = match side {
        InverseSide::Left => find_left_inverse(s, bounds.mem_bound, bounds.support_bound)?,
        _ => find_right_inverse(s, bounds.mem_bound, bounds.support_bound)?,
    };
    if let Some(inverse) = inverse {
        return Ok(Verdict::holds(stable_p, Certificate::InverseRule { side, inverse }));
    }
    let base_verdict = |c: &RuleConfig| match base {
        Property::Injective => injectivity_verdict(c, &Anchors::default_for(c), bounds),
        _ => postsurjectivity_verdict(c, &Anchors::default_for(c), bounds),
    };
    let own = base_verdict(s)?;
    if own.status == Status::Fails {
        return Ok(implication(stable_p, Status::Fails, vec![own.premise()]));
    }
    let mut tails = Vec::new();
    for class in s.limit_representatives() {
        if let LimitClass::Constant { side, rule } = class {
            let v = base_verdict(&rule)?;
            if v.status == Status::Fails {
                return Ok(Verdict::fails(
                    stable_p,
                    Certificate::LimitPoint {
                        side,
                        premise: Box::new(v.premise()),
                    },
                ));
            }
            tails.push((side, v));
        }
    }
    if own.status == Status::Holds && tails.iter().all(|(_, v)| v.status == Status::Holds) {
        return Ok(Verdict::holds(
            stable_p,
            Certificate::AllLimitClasses {
                translates: Box::new(own.premise()),
                tails: tails.iter().map(|(side, v)| (*side, v.premise())).collect(),
            },
        ));
    }
    Ok(Verdict::inconclusive(stable_p, bounds.n_max).with_anchors(own.anchors))
}

/// Stable variant of a base property. Surjectivity and pre-injectivity are
/// automatically stable, so their verdicts are the plain ones.
pub fn stable_verdict(s: &RuleConfig, property: Property, bounds: &SearchBounds) -> Result<Verdict> {
    match property {
        Property::Surjective => surjectivity_verdict(s, bounds),
        Property::PreInjective => preinjectivity_verdict(s, bounds),
        Property::Injective | Property::StableInjective => stable(s, Property::StableInjective, bounds),
        Property::PostSurjective | Property::StablePostSurjective => {
            stable(s, Property::StablePostSurjective, bounds)
        }
        Property::Invertible => invertibility_verdict(s, bounds),
    }
}

pub fn invertibility_verdict(s: &RuleConfig, bounds: &SearchBounds) -> Result<Verdict> {
    let p = Property::Invertible;
    s.universe().require_line("invertibility")?;
    if let Some(t) = find_left_inverse(s, bounds.mem_bound, bounds.support_bound)? {
        return Ok(if is_identity_map(&s.compose(&t)?) {
            Verdict::holds(p, Certificate::InverseRule { side: InverseSide::TwoSided, inverse: t })
        } else {
            Verdict::fails(p, Certificate::OneSidedInverse { side: InverseSide::Left, inverse: t })
        });
    }
    if let Some(t) = find_right_inverse(s, bounds.mem_bound, bounds.support_bound)? {
        // t∘s = Id would have been found by the left search with the same bounds
        return Ok(if is_identity_map(&t.compose(s)?) {
            Verdict::holds(p, Certificate::InverseRule { side: InverseSide::TwoSided, inverse: t })
        } else {
            Verdict::fails(p, Certificate::OneSidedInverse { side: InverseSide::Right, inverse: t })
        });
    }
    if let Some(t) = construct_inverse(s, bounds.pattern_radius)?.inverse {
        return Ok(Verdict::holds(p, Certificate::InverseRule { side: InverseSide::TwoSided, inverse: t }));
    }
    let checks: [&dyn Fn() -> Result<Verdict>; 4] = [
        &|| preinjectivity_verdict(s, bounds),
        &|| surjectivity_verdict(s, bounds),
        &|| stable(s, Property::StableInjective, bounds),
        &|| stable(s, Property::StablePostSurjective, bounds),
    ];
    for check in checks {
        let v = check()?;
        if v.status == Status::Fails {
            return Ok(implication(p, Status::Fails, vec![v.premise()]));
        }
    }
    Ok(Verdict::inconclusive(p, bounds.n_max))
}

/// Verdict for any property; anchored properties use `anchors` or the
/// default anchors of `s`.
pub fn verdict(s: &RuleConfig, property: Property, anchors: Option<&Anchors>, bounds: &SearchBounds) -> Result<Verdict> {
    let default;
    let anchors = match anchors {
        Some(a) => a,
        None => {
            default = Anchors::default_for(s);
            &default
        }
    };
    match property {
        Property::PreInjective => preinjectivity_verdict(s, bounds),
        Property::Surjective => surjectivity_verdict(s, bounds),
        Property::Injective => injectivity_verdict(s, anchors, bounds),
        Property::PostSurjective => postsurjectivity_verdict(s, anchors, bounds),
        Property::StableInjective | Property::StablePostSurjective => stable(s, property, bounds),
        Property::Invertible => invertibility_verdict(s, bounds),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{Cell, MemorySet, Universe};
    use crate::config::EvPerConfig;
    use crate::examples;
    use crate::rule::{LocalRule, TailSide};
    use std::collections::BTreeMap;

    fn b() -> SearchBounds {
        SearchBounds::default()
    }

    #[test]
    fn surjectivity_examples() {
        let s = examples::ex_s0();
        assert_eq!(surjectivity_verdict(&s, &b()).unwrap().status, Status::Inconclusive);
        let u = Universe::new(1, 1, 2).unwrap();
        let m = MemorySet::line(&[0]).unwrap();
        let z = RuleConfig::constant(u, m.clone(), LocalRule::zero(&u, &m)).unwrap();
        let v = surjectivity_verdict(&z, &b()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(matches!(v.certificate, Certificate::WindowRankFailure { radius: 0, .. }));
        let v = surjectivity_verdict(&examples::xor_rule(), &b()).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert!(matches!(v.certificate, Certificate::ScalarOracle { .. }));
    }

    #[test]
    fn preinjectivity_examples() {
        assert_eq!(preinjectivity_verdict(&examples::ex_s0(), &b()).unwrap().status, Status::Holds);
        assert_eq!(preinjectivity_verdict(&examples::xor_rule(), &b()).unwrap().status, Status::Holds);
        let u = Universe::new(1, 1, 2).unwrap();
        let m = MemorySet::line(&[0]).unwrap();
        let id = LocalRule::scalar(&u, &m, &[(0, 1)]).unwrap();
        let s = RuleConfig::new(u, m.clone(), id, None, BTreeMap::from([(Cell::d1(0), LocalRule::zero(&u, &m))])).unwrap();
        let v = preinjectivity_verdict(&s, &b()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(
            v.certificate,
            Certificate::FinSuppKernelWitness { witness: FinSuppConfig::delta(Cell::d1(0), vec![1]) }
        );
    }

    #[test]
    fn injectivity_examples() {
        let d = examples::ex_s0_dual();
        let anchors = Anchors::new(vec![(Cell::d1(0), vec![1])]).unwrap();
        let v = injectivity_verdict(&d, &anchors, &b()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.certificate, Certificate::EvPerKernelWitness { witness: examples::kernel_witness_c() });

        let s = examples::ex_s0();
        let v = injectivity_verdict(&s, &Anchors::interval(&s, -4, 4), &b()).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert_eq!(v.anchors.len(), 9);
        assert!(v.anchors_resolved());

        let v = injectivity_verdict(&examples::xor_rule(), &anchors, &b()).unwrap();
        assert_eq!(v.certificate, Certificate::EvPerKernelWitness { witness: EvPerConfig::constant(vec![1]) });
    }

    #[test]
    fn postsurjectivity_examples() {
        let s = examples::ex_s0();
        let v = postsurjectivity_verdict(&s, &Anchors::default_for(&s), &b()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(matches!(v.certificate, Certificate::DualTransfer { clause: Clause::II, .. }));

        let d = examples::ex_s0_dual();
        let v = postsurjectivity_verdict(&d, &Anchors::interval(&d, -4, 4), &b()).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(v.anchors_resolved());

        let id = examples::identity_rule();
        let v = postsurjectivity_verdict(&id, &Anchors::interval(&id, -1, 1), &b()).unwrap();
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn stable_examples() {
        let s = examples::ex_s0();
        let v = stable_verdict(&s, Property::Injective, &b()).unwrap();
        assert_eq!(v.status, Status::Fails);
        match v.certificate {
            Certificate::LimitPoint { side, premise } => {
                assert_eq!(side, TailSide::Right);
                assert_eq!(premise.certificate, Certificate::EvPerKernelWitness { witness: EvPerConfig::constant(vec![1]) });
            }
            other => panic!("{other:?}"),
        }
        let v = stable_verdict(&examples::shift_rule(), Property::Injective, &b()).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert_eq!(
            stable_verdict(&s, Property::Surjective, &b()).unwrap(),
            surjectivity_verdict(&s, &b()).unwrap()
        );
    }

    #[test]
    fn invertibility_examples() {
        assert_eq!(invertibility_verdict(&examples::gf3_diagonal(), &b()).unwrap().status, Status::Holds);
        let v = invertibility_verdict(&examples::ex_s0(), &b()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(invertibility_verdict(&examples::xor_rule(), &b()).unwrap().status, Status::Fails);
    }
}
