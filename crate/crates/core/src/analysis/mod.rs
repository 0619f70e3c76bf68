//! Verdicts for injectivity/surjectivity-type properties of linear NUCA on
//! the line, with certificates that can be re-verified independently.
//!
//! Window checks work for any `d`; everything else requires `d = 1`.

mod cross;
mod inverse;
mod ops;
mod rules;
mod scalar;
pub mod search;
mod verdict;
mod verify;

pub use cross::{cross_validate, cross_validated_verdict, status_table, CrossReport, Subject};
pub use inverse::{construct_inverse, find_left_inverse, find_right_inverse, is_identity_map, ConstructOutcome};
pub use ops::{
    injectivity_verdict, invertibility_verdict, postsurjectivity_verdict, preinjectivity_verdict, stable_verdict,
    surjectivity_verdict, verdict,
};
pub use rules::{implication_rules, ImplicationRule};
pub use scalar::ScalarCAFacts;
pub use verdict::{
    AnchorEvidence, AnchorOutcome, Anchors, Certificate, Clause, InverseSide, Premise, Property, SearchBounds, Status,
    Verdict,
};
pub use verify::{verify_anchor, verify_claim, verify_premise, verify_verdict};
