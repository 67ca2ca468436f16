//! Graphviz rendering of a reduction: one node per presentation snapshot, one
//! edge per rewrite step. Emitted summands are drawn as separate nodes in
//! their own cluster, labelled with the step that produced them.

use std::fmt::Write as _;

use crate::orbit::{euler_characteristic, WeightedOrbitSpace};
use crate::reduce::ReductionTrace;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn label(y: &WeightedOrbitSpace) -> String {
    format!(
        "{}\\nχ={} b1(Y)={}\\narcs {} circles {} points {} boundaries {}",
        escape(&y.name),
        euler_characteristic(y),
        y.b1_y,
        y.arcs.len(),
        y.circles.len(),
        y.isolated.len(),
        y.boundaries.len()
    )
}

/// Renders `trace`; `input` is drawn alone when the trace has no steps.
pub fn trace_to_dot(trace: &ReductionTrace, input: &WeightedOrbitSpace) -> String {
    let mut out = String::from("digraph reduction {\n  rankdir=LR;\n  node [shape=box];\n");
    let first = trace.steps.first().map_or(input, |s| &s.before);
    let _ = writeln!(out, "  s0 [label=\"{}\"];", label(first));
    for (i, step) in trace.steps.iter().enumerate() {
        let _ = writeln!(out, "  s{} [label=\"{}\"];", i + 1, label(&step.after));
    }
    for (i, step) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "  s{} -> s{} [label=\"{}\"];",
            i,
            i + 1,
            escape(&step.rule.to_string())
        );
    }
    if !trace.summands.is_empty() {
        out.push_str("  subgraph cluster_summands {\n    label=\"summands\";\n    style=dashed;\n");
        for (i, s) in trace.summands.iter().enumerate() {
            let origin = match s.emitted_by {
                Some(step) => format!("from step {}", step + 1),
                None => "final".to_string(),
            };
            let _ = writeln!(
                out,
                "    m{i} [shape=ellipse, label=\"{}\\n{} ({origin})\"];",
                label(&s.presentation),
                s.kind
            );
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::reduce;

    #[test]
    fn edge_count_matches_steps() {
        let mut y = WeightedOrbitSpace::s4();
        y.b1_y = 1;
        let (_, trace) = reduce(&y, 1).unwrap();
        let dot = trace_to_dot(&trace, &y);
        assert_eq!(dot.matches(" -> ").count(), trace.steps.len());
        assert!(dot.starts_with("digraph"));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn empty_trace_single_node() {
        let y = WeightedOrbitSpace::s4();
        let dot = trace_to_dot(&ReductionTrace::default(), &y);
        assert!(dot.contains("s0 ["));
        assert_eq!(dot.matches(" -> ").count(), 0);
    }
}
