use std::fmt::Write as _;

use crate::orbit::{betti_data, euler_characteristic, WeightedOrbitSpace};
use crate::reduce::{ReductionTrace, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantsBlock {
    pub chi: i64,
    pub b1: i64,
    pub b2: i64,
    pub b_plus: Option<i64>,
    pub b_minus: Option<i64>,
}

impl InvariantsBlock {
    /// `b_minus` is filled in only when `b_plus` is given and consistent.
    pub fn of(y: &WeightedOrbitSpace, b_plus: Option<u32>) -> Self {
        let chi = euler_characteristic(y);
        let b1 = i64::from(y.b1_y);
        let betti = b_plus.and_then(|bp| betti_data(y, bp).ok());
        Self {
            chi,
            b1,
            b2: chi - 2 + 2 * b1,
            b_plus: b_plus.map(i64::from),
            b_minus: betti.map(|b| b.b_minus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateBlock {
    pub kind: String,
    pub self_intersection: i64,
    pub lies_over: Vec<String>,
    pub justification: String,
}

/// Output of a CLI command, renderable for people or for machines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub invariants: Option<InvariantsBlock>,
    pub verdict: Option<String>,
    pub trace: Vec<String>,
    pub certificate: Option<CertificateBlock>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn with_reduction(mut self, verdict: &Verdict, trace: &ReductionTrace) -> Self {
        self.verdict = Some(verdict.to_string());
        self.trace = trace.steps.iter().map(|s| s.rule.to_string()).collect();
        self.certificate = match verdict {
            Verdict::SphereFound(c) => Some(CertificateBlock {
                kind: c.kind.to_string(),
                self_intersection: c.self_intersection,
                lies_over: c.components.iter().map(ToString::to_string).collect(),
                justification: c.justification.clone(),
            }),
            Verdict::SummandSphere(w) => Some(CertificateBlock {
                kind: match w.factor {
                    Some(f) => format!("Summand{f}"),
                    None => "SummandPositiveFactor".into(),
                },
                self_intersection: w.self_intersection,
                lies_over: w.summands.iter().map(|i| format!("summand {i}")).collect(),
                justification: w.justification.clone(),
            }),
            Verdict::OutOfScope(_) => None,
        };
        for (i, s) in trace.summands.iter().enumerate() {
            if let Some(c) = &s.classification {
                self.notes.push(format!("summand {i} ({}) = {c}", s.kind));
            }
        }
        self
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "presentation: {}", self.name);
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "invariants:");
            let _ = writeln!(out, "  χ(X) = {}", inv.chi);
            let _ = writeln!(out, "  b₁(X) = {}", inv.b1);
            let _ = writeln!(out, "  b₂(X) = {}", inv.b2);
            if let Some(bp) = inv.b_plus {
                let _ = writeln!(out, "  b₊(X) = {bp}");
            }
            match (inv.b_plus, inv.b_minus) {
                (_, Some(bm)) => {
                    let _ = writeln!(out, "  b₋(X) = {bm}");
                }
                (Some(_), None) => {
                    let _ = writeln!(out, "  b₋(X) = inconsistent (b₂ < b₊)");
                }
                _ => {}
            }
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        if !self.trace.is_empty() {
            let _ = writeln!(out, "trace:");
            for (i, step) in self.trace.iter().enumerate() {
                let _ = writeln!(out, "  {}. {step}", i + 1);
            }
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(out, "certificate:");
            let _ = writeln!(out, "  kind: {}", c.kind);
            let _ = writeln!(out, "  self-intersection: {}", c.self_intersection);
            if !c.lies_over.is_empty() {
                let _ = writeln!(out, "  lies over: {}", c.lies_over.join(", "));
            }
            let _ = writeln!(out, "  why: {}", c.justification);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }

    /// `key=value` lines; list entries are numbered from 0.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name={}", self.name);
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "chi={}", inv.chi);
            let _ = writeln!(out, "b1={}", inv.b1);
            let _ = writeln!(out, "b2={}", inv.b2);
            if let Some(bp) = inv.b_plus {
                let _ = writeln!(out, "b_plus={bp}");
            }
            if let Some(bm) = inv.b_minus {
                let _ = writeln!(out, "b_minus={bm}");
            }
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict={v}");
        }
        let _ = writeln!(out, "steps={}", self.trace.len());
        for (i, step) in self.trace.iter().enumerate() {
            let _ = writeln!(out, "step.{i}={step}");
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(out, "certificate.kind={}", c.kind);
            let _ = writeln!(out, "certificate.self_intersection={}", c.self_intersection);
            let _ = writeln!(out, "certificate.lies_over={}", c.lies_over.join(","));
            let _ = writeln!(out, "certificate.justification={}", c.justification);
        }
        for (i, n) in self.notes.iter().enumerate() {
            let _ = writeln!(out, "note.{i}={n}");
        }
        out
    }
}
