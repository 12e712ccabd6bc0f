//! Flat, serializable summaries of a single solver run.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::completion::Completion;
use crate::graph::{connected_components, Dist, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Answer {
    Decision(bool),
    Value(Dist),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub n: usize,
    pub m: usize,
    pub components: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    pub answer: Answer,
    /// Edges added by the witness completion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added: Option<Vec<(Vertex, Vertex)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_order: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_diameter: Option<Dist>,
    /// Ordered chords of a parallel matching.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(Vertex, Vertex)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    /// Wall time; left out unless asked for so reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, g: &Graph, answer: Answer) -> RunReport {
        RunReport {
            command: command.to_string(),
            n: g.n(),
            m: g.m(),
            components: connected_components(g).len(),
            bound: None,
            answer,
            added: None,
            outer_order: None,
            witness_diameter: None,
            matching: None,
            oracle_agrees: None,
            elapsed_ms: None,
        }
    }

    /// Attaches a witness. Panics if it does not verify, since a report
    /// must never carry an unchecked completion.
    pub fn with_witness(mut self, c: &Completion) -> RunReport {
        assert!(c.verify(self.bound), "refusing to report an invalid completion");
        self.added = Some(c.added.clone());
        self.outer_order = Some(c.outer_order.clone());
        self.witness_diameter = Some(c.diameter);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<RunReport> {
        serde_json::from_str(s)
    }

    /// Human-readable rendering, one `key: value` line each.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let edges = |es: &[(Vertex, Vertex)]| es.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "graph: n={} m={} components={}", self.n, self.m, self.components);
        if let Some(d) = self.bound {
            let _ = writeln!(s, "bound: {d}");
        }
        let answer = match self.answer {
            Answer::Decision(b) => (if b { "yes" } else { "no" }).to_string(),
            Answer::Value(v) => v.to_string(),
        };
        let _ = writeln!(s, "answer: {answer}");
        if let Some(a) = &self.added {
            let _ = writeln!(s, "added: {}", edges(a));
        }
        if let Some(o) = &self.outer_order {
            let o: Vec<String> = o.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "outer order: {}", o.join(" "));
        }
        if let Some(d) = self.witness_diameter {
            let _ = writeln!(s, "witness diameter: {d}");
        }
        if let Some(m) = &self.matching {
            let _ = writeln!(s, "matching: {}", edges(m));
        }
        if let Some(ok) = self.oracle_agrees {
            let _ = writeln!(s, "oracle agrees: {ok}");
        }
        if let Some(t) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed: {t} ms");
        }
        s
    }
}
