//! The bijective but not post-surjective counterexample, checked end to end:
//! the property table of `σ_{s0}` and its dual, the explicit kernel witness,
//! and the structural identities of the duality.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    cross_validate, verdict, verify_verdict, Anchors, Certificate, CrossReport, Property,
    SearchBounds, Status, Subject, Verdict,
};
use crate::analysis::search::window_rank_failure;
use crate::cell::interval;
use crate::duality;
use crate::error::Result;
use crate::examples;
use crate::rule::RuleConfig;
use crate::sample;

/// How a claim was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimOutcome {
    /// A definitive verdict with the expected status.
    Confirmed,
    /// No definitive verdict, but every anchor in the window is backed by
    /// exact evidence.
    AnchorBacked,
    /// Neither a definitive verdict nor complete anchor evidence.
    Inconclusive,
    /// A definitive verdict with the opposite status, or a certificate that
    /// failed re-verification.
    Mismatch,
}

impl ClaimOutcome {
    pub fn accepted(self) -> bool {
        matches!(self, ClaimOutcome::Confirmed | ClaimOutcome::AnchorBacked)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Claim {
    pub subject: Subject,
    pub property: Property,
    pub expected: Status,
    pub outcome: ClaimOutcome,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReproStatus {
    AllConfirmed,
    SomeInconclusive,
    Mismatch,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproReport {
    pub bounds: SearchBounds,
    pub seed: u64,
    pub anchor_window: (i64, i64),
    pub claims: Vec<Claim>,
    pub checks: Vec<Check>,
    pub status: ReproStatus,
}

impl ReproReport {
    pub fn claim(&self, subject: Subject, property: Property) -> Option<&Claim> {
        self.claims
            .iter()
            .find(|c| c.subject == subject && c.property == property)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}

/// The nine claimed statuses: five about `σ_{s0}`, four about its dual.
pub const CLAIMS: [(Subject, Property, Status); 9] = [
    (Subject::Rule, Property::Surjective, Status::Holds),
    (Subject::Rule, Property::Injective, Status::Holds),
    (Subject::Rule, Property::PreInjective, Status::Holds),
    (Subject::Rule, Property::PostSurjective, Status::Fails),
    (Subject::Rule, Property::StableInjective, Status::Fails),
    (Subject::Dual, Property::Surjective, Status::Holds),
    (Subject::Dual, Property::PostSurjective, Status::Holds),
    (Subject::Dual, Property::PreInjective, Status::Holds),
    (Subject::Dual, Property::Injective, Status::Fails),
];

fn settle(
    config: &RuleConfig,
    cross: &Verdict,
    property: Property,
    expected: Status,
    anchors: &Anchors,
    bounds: &SearchBounds,
) -> Result<(ClaimOutcome, Verdict)> {
    if cross.status.is_definitive() {
        let ok = cross.status == expected && verify_verdict(config, cross).is_ok();
        let outcome = if ok { ClaimOutcome::Confirmed } else { ClaimOutcome::Mismatch };
        return Ok((outcome, cross.clone()));
    }
    let anchored = match property {
        Property::Injective | Property::PostSurjective if expected == Status::Holds => {
            verdict(config, property, Some(anchors), bounds)?
        }
        _ => return Ok((ClaimOutcome::Inconclusive, cross.clone())),
    };
    if anchored.status.is_definitive() {
        let ok = anchored.status == expected && verify_verdict(config, &anchored).is_ok();
        let outcome = if ok { ClaimOutcome::Confirmed } else { ClaimOutcome::Mismatch };
        return Ok((outcome, anchored));
    }
    let outcome = if verify_verdict(config, &anchored).is_err() {
        ClaimOutcome::Mismatch
    } else if !anchored.anchors.is_empty() && anchored.anchors_resolved() {
        ClaimOutcome::AnchorBacked
    } else {
        ClaimOutcome::Inconclusive
    };
    Ok((outcome, anchored))
}

fn structural_checks(s: &RuleConfig, bounds: &SearchBounds, seed: u64) -> Result<Vec<Check>> {
    let d = s.dual();
    let mut rng = sample::rng(seed);
    let mut checks = vec![
        Check {
            name: "dual matches the explicit dual rule".into(),
            passed: d.same_map(&examples::ex_s0_dual()),
        },
        Check {
            name: "involution".into(),
            passed: duality::check_involution(s),
        },
        Check {
            name: "functoriality with itself".into(),
            passed: duality::check_functoriality(s, s)?,
        },
        Check {
            name: "functoriality with the dual".into(),
            passed: duality::check_functoriality(s, &d)? && duality::check_functoriality(&d, s)?,
        },
    ];
    let mut adjoint = true;
    for _ in 0..50 {
        let omega = sample::random_finsupp(&mut rng, s.universe(), &interval(-4, 4));
        let c = sample::random_finsupp(&mut rng, s.universe(), &interval(-4, 4));
        adjoint &= duality::check_adjointness(s, &omega, &c);
    }
    checks.push(Check {
        name: "adjointness on 50 sampled pairs".into(),
        passed: adjoint,
    });
    let orth = duality::check_orthogonality(s, bounds.n_max.min(6), 50, &mut rng)?;
    checks.push(Check {
        name: "image and kernel orthogonality".into(),
        passed: orth.passed(),
    });
    let c = examples::kernel_witness_c();
    checks.push(Check {
        name: "dual kills the witness c".into(),
        passed: !c.is_zero() && d.apply_evper(&c)?.is_zero(),
    });
    checks.push(Check {
        name: "every window map is onto".into(),
        passed: window_rank_failure(s, bounds.n_max)?.is_none(),
    });
    Ok(checks)
}

/// Runs the suite for `s0` (normally [`examples::ex_s0`]) with anchors at
/// every cell of `[-4, 4]`. `seed` drives the sampled adjointness and
/// orthogonality checks.
pub fn run(s: &RuleConfig, bounds: &SearchBounds, seed: u64) -> Result<ReproReport> {
    let window = (-4, 4);
    let anchors = Anchors::interval(s, window.0, window.1);
    let cross: CrossReport = cross_validate(s, bounds)?;
    let d = s.dual();
    let mut claims = Vec::new();
    for (subject, property, expected) in CLAIMS {
        let config = match subject {
            Subject::Rule => s,
            Subject::Dual => &d,
        };
        let (mut outcome, v) = settle(config, cross.get(subject, property), property, expected, &anchors, bounds)?;
        // The refutation is meant to come from the dual's kernel witness.
        if subject == Subject::Rule
            && property == Property::PostSurjective
            && outcome == ClaimOutcome::Confirmed
            && !matches!(v.certificate, Certificate::DualTransfer { .. })
        {
            outcome = ClaimOutcome::Mismatch;
        }
        let note = match (&v.certificate, property, subject) {
            (Certificate::DualTransfer { .. }, Property::PostSurjective, Subject::Rule) => {
                Some("refuted through the dual's kernel witness".to_string())
            }
            _ if outcome == ClaimOutcome::AnchorBacked => Some(match property {
                Property::Injective => "no kernel element through any anchor".to_string(),
                _ => "every anchor has a finitely supported preimage".to_string(),
            }),
            _ => None,
        };
        claims.push(Claim {
            subject,
            property,
            expected,
            outcome,
            verdict: v,
            note,
        });
    }
    let checks = structural_checks(s, bounds, seed)?;
    let status = if claims.iter().any(|c| c.outcome == ClaimOutcome::Mismatch) || checks.iter().any(|c| !c.passed)
    {
        ReproStatus::Mismatch
    } else if claims.iter().all(|c| c.outcome.accepted()) {
        ReproStatus::AllConfirmed
    } else {
        ReproStatus::SomeInconclusive
    };
    Ok(ReproReport {
        bounds: *bounds,
        seed,
        anchor_window: window,
        claims,
        checks,
        status,
    })
}
