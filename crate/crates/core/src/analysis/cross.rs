//! Runs every verdict on `s` and `s*`, then propagates definitive statuses
//! through the implication table and the duality theorem until nothing
//! changes. A propagated status that disagrees with an existing definitive
//! one is a contradiction and aborts with both certificates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rule::RuleConfig;

use super::ops::verdict;
use super::rules::implication_rules;
use super::verdict::{Certificate, Premise, Property, SearchBounds, Status, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    Rule,
    Dual,
}

impl Subject {
    fn other(self) -> Self {
        match self {
            Subject::Rule => Subject::Dual,
            Subject::Dual => Subject::Rule,
        }
    }

    fn index(self) -> usize {
        match self {
            Subject::Rule => 0,
            Subject::Dual => 1,
        }
    }
}

/// Verdict tables for `s` and `s*` after propagation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossReport {
    pub rule: Vec<Verdict>,
    pub dual: Vec<Verdict>,
    /// Number of statuses obtained by propagation rather than directly.
    pub derived: usize,
}

impl CrossReport {
    pub fn get(&self, subject: Subject, property: Property) -> &Verdict {
        let table = match subject {
            Subject::Rule => &self.rule,
            Subject::Dual => &self.dual,
        };
        table
            .iter()
            .find(|v| v.property == property)
            .expect("every property is tabulated")
    }
}

fn slot(p: Property) -> usize {
    Property::ALL.iter().position(|&q| q == p).expect("listed property")
}

fn contradiction(subject: Subject, existing: &Verdict, derived: &Verdict) -> Error {
    let show = |v: &Verdict| serde_json::to_string(&v.premise()).unwrap_or_default();
    Error::Contradiction(format!(
        "{} of the {} config: {} vs {}",
        existing.property,
        match subject {
            Subject::Rule => "given",
            Subject::Dual => "dual",
        },
        show(existing),
        show(derived)
    ))
}

/// Records `derived` unless an equal status is already known.
fn update(tables: &mut [Vec<Verdict>; 2], subject: Subject, derived: Verdict) -> Result<bool> {
    let cur = &mut tables[subject.index()][slot(derived.property)];
    if cur.status == derived.status {
        return Ok(false);
    }
    if cur.status.is_definitive() {
        return Err(contradiction(subject, cur, &derived));
    }
    let anchors = std::mem::take(&mut cur.anchors);
    *cur = derived.with_anchors(anchors);
    Ok(true)
}

/// Cross-validates `s` against its dual.
pub fn cross_validate(s: &RuleConfig, bounds: &SearchBounds) -> Result<CrossReport> {
    s.universe().require_line("cross-validation")?;
    let dual = s.dual();
    let mut tables: [Vec<Verdict>; 2] = [Vec::new(), Vec::new()];
    for (i, c) in [s, &dual].into_iter().enumerate() {
        for p in Property::ALL {
            tables[i].push(verdict(c, p, None, bounds)?);
        }
    }
    let rules = implication_rules();
    let mut derived = 0;
    loop {
        let mut changed = false;
        for subject in [Subject::Rule, Subject::Dual] {
            for rule in &rules {
                let table = &tables[subject.index()];
                let premises: Option<Vec<Premise>> = rule
                    .premises
                    .iter()
                    .map(|&(p, st)| {
                        let v = &table[slot(p)];
                        (v.status == st).then(|| v.premise())
                    })
                    .collect();
                let Some(premises) = premises else { continue };
                let (p, st) = rule.conclusion;
                let v = Verdict::new(
                    p,
                    st,
                    Certificate::Implication {
                        rule: rule.name(),
                        premises,
                    },
                );
                if update(&mut tables, subject, v)? {
                    derived += 1;
                    changed = true;
                }
            }
            for p in Property::ALL {
                let v = &tables[subject.index()][slot(p)];
                if !v.status.is_definitive() {
                    continue;
                }
                let (q, clause) = p.dual();
                let transferred = Verdict::new(
                    q,
                    v.status,
                    Certificate::DualTransfer {
                        clause,
                        premise: Box::new(v.premise()),
                    },
                );
                if update(&mut tables, subject.other(), transferred)? {
                    derived += 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let [rule, dual] = tables;
    Ok(CrossReport { rule, dual, derived })
}

/// Statuses of `s` only, after cross-validation.
pub fn cross_validated_verdict(s: &RuleConfig, property: Property, bounds: &SearchBounds) -> Result<Verdict> {
    Ok(cross_validate(s, bounds)?.get(Subject::Rule, property).clone())
}

/// Convenience: status pairs `(s, s*)` per property.
pub fn status_table(report: &CrossReport) -> Vec<(Property, Status, Status)> {
    Property::ALL
        .into_iter()
        .map(|p| {
            (
                p,
                report.get(Subject::Rule, p).status,
                report.get(Subject::Dual, p).status,
            )
        })
        .collect()
}
