use serde::Serialize;
use serde_json::{json, Value};

use crate::bitset::BitSet;
use crate::caps::Caps;

/// A command report: echo of the invocation, effective configuration,
/// structured results, optional timing, and erratum notes where the
/// verified identities differ from their commonly quoted forms.
///
/// Serialization is deterministic: struct fields keep declaration order
/// and all maps are sorted, so byte-identical reruns only require
/// dropping the timing block.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub config: ReportConfig,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub errata: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ReportConfig {
    pub caps: Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub total_ms: u64,
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// DOT digraph of a specialization order: nodes are points labelled by
/// their member lists, edges are the covering relations.
pub fn specialization_dot(point_labels: &[String], containments: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph specialization {\n");
    for (i, label) in point_labels.iter().enumerate() {
        out.push_str(&format!("  p{i} [label=\"{label}\"];\n"));
    }
    for &(a, b) in containments {
        // Keep only covering edges: skip (a, b) when some c sits between.
        let covered = containments.iter().any(|&(x, y)| {
            x == a && y != b && containments.contains(&(y, b))
        });
        if !covered {
            out.push_str(&format!("  p{a} -> p{b};\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// Members of a point set as a JSON array of arrays, one per point.
pub fn point_sets_json(sets: &[BitSet]) -> Value {
    json!(sets.iter().map(|s| s.members()).collect::<Vec<_>>())
}
