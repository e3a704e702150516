//! Run reports: key:value text or JSON.
//!
//! Reports contain no wall-clock data unless timing was requested, so two
//! runs with the same inputs, seed and `--threads 1` print identical bytes.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use twhom_core::hom::HomStats;
use twhom_core::Graph;

use crate::formats::write_dimacs;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdict: String,
    /// `false` when a budget or interrupt stopped the run.
    pub definite: bool,
    pub provenance: Vec<String>,
    pub facts: Vec<Fact>,
    pub witnesses: Vec<Witness>,
    pub stats: Stats,
    pub budget: Budget,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<RunReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub spec: String,
    pub vertices: usize,
    pub edges: usize,
    /// SHA-256 of the graph in canonical DIMACS-like form.
    pub sha256: String,
}

impl InputDigest {
    pub fn new(role: &str, spec: &str, g: &Graph) -> Self {
        let digest = Sha256::digest(write_dimacs(g).as_bytes());
        InputDigest {
            role: role.to_string(),
            spec: spec.to_string(),
            vertices: g.n(),
            edges: g.edge_count(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    /// `map[v]` is the image of vertex `v`.
    pub map: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub search_nodes: u64,
    /// Decimal, since the value can exceed 64 bits.
    pub dp_state_cells: String,
    pub dp_stored_states: u64,
    pub table_base: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Default for Stats {
    fn default() -> Self {
        Stats::from_hom(&HomStats::default())
    }
}

impl Stats {
    pub fn from_hom(s: &HomStats) -> Self {
        Stats {
            search_nodes: s.search_nodes,
            dp_state_cells: s.dp_state_cells.to_string(),
            dp_stored_states: s.dp_stored_states,
            table_base: s.table_base,
            wall_ms: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub node_budget: Option<u64>,
    pub time_limit_s: Option<u64>,
    pub exhausted: bool,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), definite: true, ..Default::default() }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.facts.push(Fact { key: key.into(), value: value.to_string() });
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|f| f.key == key).map(|f| f.value.as_str())
    }

    pub fn witness(&mut self, name: impl Into<String>, map: &[u32]) -> &mut Self {
        self.witnesses.push(Witness { name: name.into(), map: map.to_vec() });
        self
    }

    pub fn inconclusive(&mut self, why: impl ToString) -> &mut Self {
        self.verdict = "inconclusive".into();
        self.definite = false;
        self.budget.exhausted = true;
        self.fact("inconclusive", why.to_string())
    }

    /// Definite only if this and every item are.
    pub fn all_definite(&self) -> bool {
        self.definite && self.items.iter().all(RunReport::all_definite)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, "");
        out
    }

    fn write_text(&self, out: &mut String, prefix: &str) {
        let mut line = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{prefix}{k}: {v}");
        };
        line("command", &self.command);
        for i in &self.inputs {
            line(
                &format!("input.{}", i.role),
                &format!("{} vertices={} edges={} sha256={}", i.spec, i.vertices, i.edges, i.sha256),
            );
        }
        line("verdict", &self.verdict);
        line("definite", &self.definite);
        for p in &self.provenance {
            line("provenance", p);
        }
        for f in &self.facts {
            line(&f.key, &f.value);
        }
        for w in &self.witnesses {
            let map: Vec<String> = w.map.iter().map(u32::to_string).collect();
            line(&format!("witness.{}", w.name), &map.join(" "));
        }
        line("stats.search_nodes", &self.stats.search_nodes);
        line("stats.dp_state_cells", &self.stats.dp_state_cells);
        line("stats.dp_stored_states", &self.stats.dp_stored_states);
        line("stats.table_base", &self.stats.table_base);
        if let Some(ms) = self.stats.wall_ms {
            line("stats.wall_ms", &ms);
        }
        let opt = |x: Option<u64>| x.map_or_else(|| "none".to_string(), |v| v.to_string());
        line("budget.node_budget", &opt(self.budget.node_budget));
        line("budget.time_limit_s", &opt(self.budget.time_limit_s));
        line("budget.exhausted", &self.budget.exhausted);
        for (i, item) in self.items.iter().enumerate() {
            item.write_text(out, &format!("{prefix}item.{i}."));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twhom_core::graph::NamedGraph;

    #[test]
    fn text_and_json_are_stable() {
        let g = NamedGraph::Cycle(5).build().unwrap();
        let mut r = RunReport::new("solve cycle:5 clique:3");
        r.inputs.push(InputDigest::new("source", "cycle:5", &g));
        r.verdict = "yes".into();
        r.fact("count", 30).witness("hom", &[0, 1, 0, 1, 2]);
        let mut item = RunReport::new("sub");
        item.inconclusive("node budget 5 exhausted");
        r.items.push(item);
        assert_eq!(r.to_text(), r.clone().to_text());
        assert!(r.to_text().contains("witness.hom: 0 1 0 1 2\n"));
        assert!(r.to_text().contains("item.0.verdict: inconclusive\n"));
        assert!(!r.all_definite());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
        assert!(json["stats"].get("wall_ms").is_none());
    }
}
