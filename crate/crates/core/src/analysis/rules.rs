//! Implications between properties of a single linear NUCA.

use super::verdict::{Property, Status};

use Property::*;
use Status::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationRule {
    pub premises: Vec<(Property, Status)>,
    pub conclusion: (Property, Status),
}

impl ImplicationRule {
    fn new(premises: &[(Property, Status)], conclusion: (Property, Status)) -> Self {
        Self {
            premises: premises.to_vec(),
            conclusion,
        }
    }

    pub fn name(&self) -> String {
        let lhs: Vec<String> = self.premises.iter().map(|(p, s)| format!("{p} {s}")).collect();
        format!("{} => {} {}", lhs.join(" & "), self.conclusion.0, self.conclusion.1)
    }
}

/// Every rule the cross-validation applies.
///
/// Stable injectivity is left invertibility and stable post-surjectivity is
/// right invertibility; invertibility is equivalent both to pre-injectivity
/// plus stable post-surjectivity and to surjectivity plus stable injectivity.
pub fn implication_rules() -> Vec<ImplicationRule> {
    let chains = [
        (Injective, PreInjective),
        (StableInjective, Injective),
        (PostSurjective, Surjective),
        (StablePostSurjective, PostSurjective),
    ];
    let mut out = Vec::new();
    for (strong, weak) in chains {
        out.push(ImplicationRule::new(&[(strong, Holds)], (weak, Holds)));
        out.push(ImplicationRule::new(&[(weak, Fails)], (strong, Fails)));
    }
    for p in Property::ALL.into_iter().filter(|&p| p != Invertible) {
        out.push(ImplicationRule::new(&[(Invertible, Holds)], (p, Holds)));
        out.push(ImplicationRule::new(&[(p, Fails)], (Invertible, Fails)));
    }
    for (a, b) in [(PreInjective, StablePostSurjective), (Surjective, StableInjective)] {
        out.push(ImplicationRule::new(&[(a, Holds), (b, Holds)], (Invertible, Holds)));
        out.push(ImplicationRule::new(&[(Invertible, Fails), (a, Holds)], (b, Fails)));
        out.push(ImplicationRule::new(&[(Invertible, Fails), (b, Holds)], (a, Fails)));
    }
    out
}

/// The rule with these premises and conclusion, if it exists.
pub fn find_rule(premises: &[(Property, Status)], conclusion: (Property, Status)) -> Option<ImplicationRule> {
    implication_rules()
        .into_iter()
        .find(|r| r.premises == premises && r.conclusion == conclusion)
}
