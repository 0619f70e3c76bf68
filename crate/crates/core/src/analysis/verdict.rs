//! Verdicts, certificates and search bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cell::Cell;
use crate::config::{EvPerConfig, FinSuppConfig};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::rule::{RuleConfig, TailSide};

use super::scalar::ScalarCAFacts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    PreInjective,
    Injective,
    Surjective,
    PostSurjective,
    StableInjective,
    StablePostSurjective,
    Invertible,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::PreInjective,
        Property::Injective,
        Property::Surjective,
        Property::PostSurjective,
        Property::StableInjective,
        Property::StablePostSurjective,
        Property::Invertible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::PreInjective => "pre-injective",
            Property::Injective => "injective",
            Property::Surjective => "surjective",
            Property::PostSurjective => "post-surjective",
            Property::StableInjective => "stable-injective",
            Property::StablePostSurjective => "stable-post-surjective",
            Property::Invertible => "invertible",
        }
    }

    /// The property of `σ_{s*}` equivalent to this property of `σ_s`, and the
    /// clause of the duality theorem relating them.
    pub fn dual(self) -> (Property, Clause) {
        match self {
            Property::PreInjective => (Property::Surjective, Clause::I),
            Property::Surjective => (Property::PreInjective, Clause::I),
            Property::Injective => (Property::PostSurjective, Clause::II),
            Property::PostSurjective => (Property::Injective, Clause::II),
            Property::StableInjective => (Property::StablePostSurjective, Clause::III),
            Property::StablePostSurjective => (Property::StableInjective, Clause::III),
            Property::Invertible => (Property::Invertible, Clause::IV),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown property {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    pub fn is_definitive(self) -> bool {
        self != Status::Inconclusive
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Clauses of the duality theorem: (i) pre-injective / surjective,
/// (ii) injective / post-surjective, (iii) stably injective / stably
/// post-surjective, (iv) invertible / invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clause {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseSide {
    /// `τ ∘ σ_s = Id`.
    Left,
    /// `σ_s ∘ τ = Id`.
    Right,
    TwoSided,
}

/// A claim about one configuration together with its justification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Premise {
    pub property: Property,
    pub status: Status,
    pub certificate: Certificate,
}

/// Machine-checkable evidence behind a status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `f⁺` on `[-radius, radius]ᵈ` has rank below `k·|E|`.
    WindowRankFailure { radius: i64, rank: usize, required: usize },
    /// Nonzero finitely supported `x` with `σ_s(x) = 0`.
    FinSuppKernelWitness { witness: FinSuppConfig },
    /// Nonzero eventually periodic `x` with `σ_s(x) = 0`.
    EvPerKernelWitness { witness: EvPerConfig },
    /// Every finitely supported kernel element is supported in `[lo, hi]`
    /// (invertible extreme coefficients on both tails), and that window
    /// carries no nonzero kernel element.
    SupportBoundedKernel { lo: i64, hi: i64 },
    /// Laurent polynomial of a constant scalar rule on the line.
    ScalarOracle { facts: ScalarCAFacts },
    InverseRule { side: InverseSide, inverse: RuleConfig },
    /// A one-sided inverse that fails on the other side; a bijection's
    /// one-sided inverses are two-sided, so `σ_s` is not invertible.
    OneSidedInverse { side: InverseSide, inverse: RuleConfig },
    /// The equivalent property of the dual configuration.
    DualTransfer { clause: Clause, premise: Box<Premise> },
    /// Follows from other verdicts on the same configuration.
    Implication { rule: String, premises: Vec<Premise> },
    /// A constant tail configuration in the orbit closure fails.
    LimitPoint { side: TailSide, premise: Box<Premise> },
    /// Every class of the orbit closure satisfies the property.
    AllLimitClasses { translates: Box<Premise>, tails: Vec<(TailSide, Premise)> },
    BoundExhausted { n_max: i64 },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::WindowRankFailure { .. } => "window-rank-failure",
            Certificate::FinSuppKernelWitness { .. } => "fin-supp-kernel-witness",
            Certificate::EvPerKernelWitness { .. } => "ev-per-kernel-witness",
            Certificate::SupportBoundedKernel { .. } => "support-bounded-kernel",
            Certificate::ScalarOracle { .. } => "scalar-oracle",
            Certificate::InverseRule { .. } => "inverse-rule",
            Certificate::OneSidedInverse { .. } => "one-sided-inverse",
            Certificate::DualTransfer { .. } => "dual-transfer",
            Certificate::Implication { .. } => "implication",
            Certificate::LimitPoint { .. } => "limit-point",
            Certificate::AllLimitClasses { .. } => "all-limit-classes",
            Certificate::BoundExhausted { .. } => "bound-exhausted",
        }
    }
}

/// What is known about one anchor `(g, v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum AnchorOutcome {
    /// No `x` with `σ_s(x) = 0` on `E_radius` has `x(g) = v`.
    NoKernelThrough { radius: i64 },
    /// `σ_s(preimage) = δ_{g,v}`.
    Preimage { preimage: FinSuppConfig },
    Unresolved { radius: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorEvidence {
    pub cell: Cell,
    pub vector: Vector,
    #[serde(flatten)]
    pub outcome: AnchorOutcome,
}

impl AnchorEvidence {
    pub fn resolved(&self) -> bool {
        !matches!(self.outcome, AnchorOutcome::Unresolved { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub property: Property,
    pub status: Status,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchors: Vec<AnchorEvidence>,
}

impl Verdict {
    pub fn holds(property: Property, certificate: Certificate) -> Self {
        Self::new(property, Status::Holds, certificate)
    }

    pub fn fails(property: Property, certificate: Certificate) -> Self {
        Self::new(property, Status::Fails, certificate)
    }

    pub fn inconclusive(property: Property, n_max: i64) -> Self {
        Self::new(property, Status::Inconclusive, Certificate::BoundExhausted { n_max })
    }

    pub fn new(property: Property, status: Status, certificate: Certificate) -> Self {
        Self {
            property,
            status,
            certificate,
            anchors: Vec::new(),
        }
    }

    pub fn with_anchors(mut self, anchors: Vec<AnchorEvidence>) -> Self {
        self.anchors = anchors;
        self
    }

    pub fn premise(&self) -> Premise {
        Premise {
            property: self.property,
            status: self.status,
            certificate: self.certificate.clone(),
        }
    }

    /// True when every anchor is resolved (vacuously for no anchors).
    pub fn anchors_resolved(&self) -> bool {
        self.anchors.iter().all(AnchorEvidence::resolved)
    }
}

/// Finite proxies `(g, v)` for quantifiers over all configurations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchors(Vec<(Cell, Vector)>);

impl Anchors {
    pub fn new(pairs: Vec<(Cell, Vector)>) -> Result<Self> {
        if pairs.iter().any(|(_, v)| v.iter().all(|&x| x == 0)) {
            return Err(Error::Contract("anchor vectors must be nonzero".into()));
        }
        Ok(Self(pairs))
    }

    pub fn pairs(&self) -> &[(Cell, Vector)] {
        &self.0
    }

    fn vectors(s: &RuleConfig) -> Vec<Vector> {
        let u = s.universe();
        if u.alphabet_size() <= 16 {
            u.nonzero_vectors()
        } else {
            (0..u.k()).map(|i| u.basis_vector(i)).collect()
        }
    }

    /// All cells of `[lo, hi]` paired with every anchor vector.
    pub fn interval(s: &RuleConfig, lo: i64, hi: i64) -> Self {
        let vs = Self::vectors(s);
        Self(
            (lo..=hi)
                .flat_map(|n| vs.iter().map(move |v| (Cell::d1(n), v.clone())))
                .collect(),
        )
    }

    /// The irregular region inflated by the memory radius, plus one tail cell
    /// at distance `2·radius` beyond it on each side.
    pub fn default_for(s: &RuleConfig) -> Self {
        let r = s.memory().radius().max(1);
        let (lo, hi) = s.irregular_span().unwrap_or((0, 0));
        let (lo, hi) = (lo - r, hi + r);
        let mut out = Self::interval(s, lo, hi);
        let vs = Self::vectors(s);
        for n in [lo - 2 * r, hi + 2 * r] {
            out.0.extend(vs.iter().map(|v| (Cell::d1(n), v.clone())));
        }
        out
    }
}

/// Knobs of the semi-decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Largest window radius `n` of `E_n = [-n, n]ᵈ`.
    pub n_max: i64,
    /// Largest tail period tried by the eventually periodic kernel search.
    pub period_bound: usize,
    /// Memory of candidate inverses lies in `[-mem_bound, mem_bound]`.
    pub mem_bound: i64,
    /// Overrides of candidate inverses lie in `[-support_bound, support_bound]`.
    pub support_bound: i64,
    /// Radius of the pattern window in the explicit inverse construction.
    pub pattern_radius: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            n_max: 8,
            period_bound: 8,
            mem_bound: 3,
            support_bound: 4,
            pattern_radius: 2,
        }
    }
}

impl SearchBounds {
    pub fn with_n_max(n_max: i64) -> Self {
        Self {
            n_max,
            ..Self::default()
        }
    }
}
