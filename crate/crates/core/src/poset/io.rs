//! JSON and DOT serialization of posets.

use serde::{Deserialize, Serialize};

use super::{Poset, PosetError, Result};

/// `{ "elements": [...], "covers": [[lo, hi], ...], "bottom": i, "top": i }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
    pub bottom: usize,
    pub top: usize,
}

/// One cover of a labeled poset: `{ "lo": i, "hi": j, "label": [k, i, j] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledCover<L> {
    pub lo: usize,
    pub hi: usize,
    pub label: L,
}

impl Poset {
    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.keys.clone(),
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        let covers: Vec<(usize, usize)> = json.covers.iter().map(|c| (c[0], c[1])).collect();
        let p = Poset::new(json.elements.clone(), &covers)?;
        if p.bottom != json.bottom || p.top != json.top {
            return Err(PosetError::Json(format!(
                "declared bottom/top ({}, {}) but computed ({}, {})",
                json.bottom, json.top, p.bottom, p.top
            )));
        }
        Ok(p)
    }

    /// Pairs each cover (in cover-id order) with its label.
    pub fn labeled_covers<L: Clone>(&self, labels: &[L]) -> Result<Vec<LabeledCover<L>>> {
        if labels.len() != self.covers.len() {
            return Err(PosetError::LabelCount {
                expected: self.covers.len(),
                got: labels.len(),
            });
        }
        Ok(self
            .covers
            .iter()
            .zip(labels)
            .map(|(&(lo, hi), label)| LabeledCover {
                lo,
                hi,
                label: label.clone(),
            })
            .collect())
    }

    /// Hasse diagram in DOT, one node per element and one edge per cover.
    /// `edge_label` supplies an optional label attribute for each cover id.
    pub fn to_dot(&self, edge_label: Option<&dyn Fn(usize) -> String>) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, key) in self.keys.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(key)));
        }
        for (id, &(a, b)) in self.covers.iter().enumerate() {
            match edge_label {
                Some(f) => {
                    out.push_str(&format!("  n{a} -> n{b} [label=\"{}\"];\n", escape(&f(id))))
                }
                None => out.push_str(&format!("  n{a} -> n{b};\n")),
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
