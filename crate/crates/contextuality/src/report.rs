//! Analysis reports: the machine-readable JSON shape and the text rendering.
//!
//! The JSON form is deterministic across runs and platforms (canonical key
//! order, exact rationals as strings); the elapsed-time field is printed in
//! text output only and deliberately kept out of the JSON so reports can be
//! compared byte for byte.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::lp::{FractionResult, GlobalMassVector};
use crate::ratio::format_rational;
use crate::system::{outcome_string, ContentId, System};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connectedness: Option<ConnectednessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deterministic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fraction: Option<FractionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    /// Elapsed wall-clock milliseconds; text output only.
    #[serde(skip)]
    pub timing_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectednessReport {
    pub simple: bool,
    pub strong: bool,
    pub simple_violations: Vec<SimpleViolationReport>,
    pub strong_violations: Vec<StrongViolationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleViolationReport {
    pub content: String,
    pub context_a: String,
    pub context_b: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongViolationReport {
    pub context_a: String,
    pub context_b: String,
    pub shared: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FractionReport {
    pub alpha_max: String,
    pub contextual_fraction: String,
    pub noncontextual: bool,
    pub strongly_contextual: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    /// Content order of the analyzed system; witness keys align with it.
    pub contents: Vec<String>,
    /// Nonzero columns of the optimal mass vector.
    pub columns: BTreeMap<String, String>,
}

impl Report {
    pub fn empty() -> Self {
        Report {
            connectedness: None,
            deterministic: None,
            mode: None,
            fraction: None,
            witness: None,
            timing_ms: 0,
        }
    }

    pub fn with_connectedness(mut self, system: &System) -> Self {
        let simple = system.simply_consistently_connected();
        let strong = system.strongly_consistently_connected();
        self.connectedness = Some(ConnectednessReport {
            simple: simple.holds,
            strong: strong.holds,
            simple_violations: simple
                .violations
                .into_iter()
                .map(|v| SimpleViolationReport {
                    content: v.content.to_string(),
                    context_a: v.context_a.to_string(),
                    context_b: v.context_b.to_string(),
                })
                .collect(),
            strong_violations: strong
                .violations
                .into_iter()
                .map(|v| StrongViolationReport {
                    context_a: v.context_a.to_string(),
                    context_b: v.context_b.to_string(),
                    shared: v.shared.iter().map(|q| q.to_string()).collect(),
                })
                .collect(),
        });
        self.deterministic = Some(system.is_deterministic());
        self
    }

    pub fn with_fraction(
        mut self,
        mode: &str,
        result: &FractionResult,
        witness_contents: &[ContentId],
    ) -> Self {
        self.mode = Some(mode.to_string());
        self.fraction = Some(FractionReport {
            alpha_max: format_rational(&result.alpha_max),
            contextual_fraction: format_rational(&result.contextual_fraction),
            noncontextual: result.noncontextual,
            strongly_contextual: result.strongly_contextual,
        });
        self.witness = Some(witness_report(&result.witness, witness_contents));
        self
    }

    /// Deterministic JSON rendering with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.connectedness {
            out.push_str(&format!(
                "simply consistently connected:   {}\n",
                yes_no(c.simple)
            ));
            for v in &c.simple_violations {
                out.push_str(&format!(
                    "  marginals of `{}` differ between `{}` and `{}`\n",
                    v.content, v.context_a, v.context_b
                ));
            }
            out.push_str(&format!(
                "strongly consistently connected: {}\n",
                yes_no(c.strong)
            ));
            for v in &c.strong_violations {
                out.push_str(&format!(
                    "  joint on {{{}}} differs between `{}` and `{}`\n",
                    v.shared.join(", "),
                    v.context_a,
                    v.context_b
                ));
            }
        }
        if let Some(d) = self.deterministic {
            out.push_str(&format!("deterministic:                   {}\n", yes_no(d)));
        }
        if let Some(mode) = &self.mode {
            out.push_str(&format!("analysis mode:                   {mode}\n"));
        }
        if let Some(f) = &self.fraction {
            out.push_str(&format!("noncontextual fraction:          {}\n", f.alpha_max));
            out.push_str(&format!(
                "contextual fraction:             {}\n",
                f.contextual_fraction
            ));
            out.push_str(&format!(
                "noncontextual:                   {}\n",
                yes_no(f.noncontextual)
            ));
            out.push_str(&format!(
                "strongly contextual:             {}\n",
                yes_no(f.strongly_contextual)
            ));
        }
        if let Some(w) = &self.witness {
            if !w.columns.is_empty() {
                out.push_str(&format!("witness over ({}):\n", w.contents.join(", ")));
                for (column, mass) in &w.columns {
                    out.push_str(&format!("  {column}  {mass}\n"));
                }
            }
        }
        if self.timing_ms > 0 {
            out.push_str(&format!("elapsed:                         {} ms\n", self.timing_ms));
        }
        out
    }
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn witness_report(witness: &GlobalMassVector, contents: &[ContentId]) -> WitnessReport {
    let arity = contents.len();
    WitnessReport {
        contents: contents.iter().map(|q| q.to_string()).collect(),
        columns: witness
            .masses()
            .iter()
            .map(|(&col, mass)| {
                (
                    outcome_string(&crate::system::signs_of(col, arity)),
                    format_rational(mass),
                )
            })
            .collect(),
    }
}
