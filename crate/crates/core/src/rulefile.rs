//! JSON rule files.
//!
//! ```json
//! {"p":2, "k":1, "d":1, "memory":[[-1],[0]],
//!  "default_rule":{"[-1]":[[1]],"[0]":[[1]]},
//!  "overrides":{"[0]":{"[-1]":[[0]],"[0]":[[1]]}}}
//! ```
//!
//! Matrices are row-major with entries in `[0, p)`. Offsets missing from a rule
//! get the zero block. On the line a file may also carry `"left_rule"` and
//! `"left_boundary"`: cells `n ≤ left_boundary` without an override then use
//! the left rule. A `"schema_version"` field is accepted and ignored.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cell::{Cell, MemorySet, Universe};
use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;
use crate::rule::{LeftTail, LocalRule, RuleConfig};

type RawMatrix = Vec<Vec<i64>>;
type RawRule = BTreeMap<String, RawMatrix>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRuleFile {
    #[serde(default)]
    #[allow(dead_code)]
    schema_version: Option<u32>,
    p: u32,
    k: usize,
    d: usize,
    memory: Vec<Vec<i64>>,
    default_rule: RawRule,
    #[serde(default)]
    overrides: BTreeMap<String, RawRule>,
    #[serde(default)]
    left_rule: Option<RawRule>,
    #[serde(default)]
    left_boundary: Option<i64>,
}

fn parse_cell(key: &str, dim: usize) -> Result<Cell> {
    let coords: Vec<i64> =
        serde_json::from_str(key).map_err(|_| Error::Malformed(format!("bad cell key {key:?}")))?;
    let c = Cell::from_coords(&coords)?;
    if c.dim() != dim {
        return Err(Error::Malformed(format!("cell key {key:?} does not live in Z^{dim}")));
    }
    Ok(c)
}

fn parse_matrix(u: &Universe, raw: &RawMatrix, at: &str) -> Result<FieldMatrix> {
    let k = u.k();
    if raw.len() != k || raw.iter().any(|r| r.len() != k) {
        return Err(Error::Malformed(format!("{at}: expected a {k}x{k} matrix")));
    }
    let p = u.p() as i64;
    if let Some(e) = raw.iter().flatten().find(|&&e| !(0..p).contains(&e)) {
        return Err(Error::Malformed(format!("{at}: entry {e} is not in [0, {p})")));
    }
    FieldMatrix::from_rows(u.field(), raw)
}

fn parse_rule(u: &Universe, memory: &MemorySet, raw: &RawRule, what: &str) -> Result<LocalRule> {
    let mut entries = Vec::with_capacity(raw.len());
    for (key, mat) in raw {
        let m = parse_cell(key, u.dim())?;
        if !memory.contains(m) {
            return Err(Error::Malformed(format!("{what}: offset {key} is not in the memory set")));
        }
        entries.push((m, parse_matrix(u, mat, &format!("{what} at offset {key}"))?));
    }
    LocalRule::new(u, memory, entries)
}

impl TryFrom<RawRuleFile> for RuleConfig {
    type Error = Error;

    fn try_from(raw: RawRuleFile) -> Result<Self> {
        let u = Universe::new(raw.d, raw.k, raw.p)?;
        let offsets = raw
            .memory
            .iter()
            .map(|c| {
                let c = Cell::from_coords(c)?;
                u.check_cell(c)?;
                Ok(c)
            })
            .collect::<Result<Vec<_>>>()?;
        let memory = MemorySet::new(offsets)?;
        let default_rule = parse_rule(&u, &memory, &raw.default_rule, "default_rule")?;
        let left_tail = match (raw.left_rule, raw.left_boundary) {
            (None, None) => None,
            (Some(r), Some(boundary)) => Some(LeftTail {
                boundary,
                rule: parse_rule(&u, &memory, &r, "left_rule")?,
            }),
            _ => {
                return Err(Error::Malformed(
                    "left_rule and left_boundary must be given together".into(),
                ))
            }
        };
        let mut overrides = BTreeMap::new();
        for (key, r) in &raw.overrides {
            let g = parse_cell(key, u.dim())?;
            let rule = parse_rule(&u, &memory, r, &format!("override at {key}"))?;
            if overrides.insert(g, rule).is_some() {
                return Err(Error::Malformed(format!("duplicate override cell {key}")));
            }
        }
        RuleConfig::new(u, memory, default_rule, left_tail, overrides)
    }
}

/// Serializes a map keyed by cells in cell order, keys rendered as `"[x]"`.
struct CellKeyed<'a, T>(Vec<(Cell, &'a T)>);

impl<T: Serialize> Serialize for CellKeyed<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (c, v) in &self.0 {
            map.serialize_entry(&c.to_string(), v)?;
        }
        map.end()
    }
}

struct RuleRepr<'a>(&'a LocalRule);

impl Serialize for RuleRepr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<(Cell, Vec<Vec<u32>>)> = self.0.coeffs().map(|(m, c)| (m, c.to_rows())).collect();
        CellKeyed(rows.iter().map(|(m, r)| (*m, r)).collect()).serialize(s)
    }
}

impl Serialize for RuleConfig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let u = self.universe();
        let n = 6 + if self.left_tail().is_some() { 2 } else { 0 };
        let mut st = s.serialize_struct("RuleConfig", n)?;
        st.serialize_field("p", &u.p())?;
        st.serialize_field("k", &u.k())?;
        st.serialize_field("d", &u.dim())?;
        st.serialize_field("memory", self.memory().offsets())?;
        st.serialize_field("default_rule", &RuleRepr(self.default_rule()))?;
        let overrides: Vec<(Cell, RuleRepr)> =
            self.overrides().iter().map(|(&g, r)| (g, RuleRepr(r))).collect();
        st.serialize_field("overrides", &CellKeyed(overrides.iter().map(|(g, r)| (*g, r)).collect()))?;
        if let Some(t) = self.left_tail() {
            st.serialize_field("left_rule", &RuleRepr(&t.rule))?;
            st.serialize_field("left_boundary", &t.boundary)?;
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for RuleConfig {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRuleFile::deserialize(d)?;
        RuleConfig::try_from(raw).map_err(D::Error::custom)
    }
}

/// Parses and validates a rule file.
pub fn parse_rule_json(text: &str) -> Result<RuleConfig> {
    let raw: RawRuleFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    RuleConfig::try_from(raw)
}

/// Pretty-printed rule file, ending with a newline.
pub fn rule_to_json(s: &RuleConfig) -> String {
    let mut out = serde_json::to_string_pretty(s).expect("rule configs serialize");
    out.push('\n');
    out
}

pub fn read_rule_file(path: impl AsRef<Path>) -> Result<RuleConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_rule_json(&text).map_err(|e| match e {
        Error::Malformed(m) => Error::Malformed(format!("{}: {m}", path.display())),
        other => other,
    })
}
