//! Graphviz DOT renderings of avoidance automata, window maps and orbits.
//!
//! Node order is fixed by the inputs (state numbers, sorted windows, orbit
//! index), so equal inputs give byte-identical text.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::multiplier::ThetaMap;
use crate::orbit::Period;
use crate::pattern::{AvoidanceDfa, ForbiddenFamily};
use crate::window::{Symbol, Window};

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per state; parallel edges are merged into one labeled edge.
pub fn dfa_to_dot(dfa: &AvoidanceDfa, family: &ForbiddenFamily) -> String {
    let mut out = String::new();
    writeln!(out, "digraph avoidance {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  label={};", quoted(&format!("avoid {{{family}}}"))).unwrap();
    writeln!(out, "  __start [shape=point];").unwrap();
    for state in 0..dfa.state_count() {
        if dfa.is_dead(state) {
            writeln!(out, "  s{state} [label=\"dead\", shape=doublecircle];").unwrap();
        } else {
            writeln!(out, "  s{state} [label=\"{state}\", shape=circle];").unwrap();
        }
    }
    writeln!(out, "  __start -> s{};", dfa.start()).unwrap();
    for state in 0..dfa.state_count() {
        let mut targets: Vec<(usize, String)> = Vec::new();
        for symbol in Symbol::ALL {
            let target = dfa.next(state, symbol);
            match targets.iter_mut().find(|(t, _)| *t == target) {
                Some((_, label)) => {
                    label.push(',');
                    label.push(symbol.as_char());
                }
                None => targets.push((target, symbol.as_char().to_string())),
            }
        }
        for (target, label) in targets {
            writeln!(out, "  s{state} -> s{target} [label={}];", quoted(&label)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Window graph of a synthesized map. Accepting windows (those avoiding
/// `family`) are filled; conflicting inputs get one edge per observed
/// output, drawn dashed, and the witnesses are listed in a leading comment.
pub fn theta_to_dot(theta: &ThetaMap, dfa: &AvoidanceDfa) -> String {
    let mut out = String::new();
    let conflicts = theta.conflicts();
    if !conflicts.is_empty() {
        writeln!(out, "// conflicts: {}", conflicts.len()).unwrap();
        for c in &conflicts {
            writeln!(
                out,
                "// {} -> {} (N={}) vs {} (N={})",
                c.input, c.out1, c.n1, c.out2, c.n2
            )
            .unwrap();
        }
    }
    writeln!(out, "digraph theta {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(
        out,
        "  label={};",
        quoted(&format!(
            "q={} M={} n_cap={}",
            theta.q(),
            theta.window_len(),
            theta.n_cap()
        ))
    )
    .unwrap();

    let edges = theta.all_transitions();
    let nodes: BTreeSet<&Window> = edges.iter().flat_map(|(i, o)| [*i, *o]).collect();
    for w in &nodes {
        writeln!(
            out,
            "  {} [{}];",
            quoted(&w.to_string()),
            node_style(dfa.accepts_window(w))
        )
        .unwrap();
    }
    let conflicted: BTreeSet<&Window> = conflicts.iter().map(|c| &c.input).collect();
    for (input, output) in &edges {
        let style = if conflicted.contains(input) {
            " [style=dashed, color=red]"
        } else {
            ""
        };
        writeln!(
            out,
            "  {} -> {}{style};",
            quoted(&input.to_string()),
            quoted(&output.to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Orbit `w_0 .. w_{n0+p-1}` with the preperiod as a chain and the cycle in
/// its own cluster, closed by a back edge. Without a period the windows are
/// drawn as a plain chain.
pub fn orbit_to_dot(windows: &[Window], period: Option<Period>, dfa: &AvoidanceDfa) -> String {
    let shown = match period {
        Some(p) => (p.preperiod + p.period).min(windows.len()),
        None => windows.len(),
    };
    let cycle_start = period.map_or(shown, |p| p.preperiod.min(shown));
    let mut out = String::new();
    writeln!(out, "digraph orbit {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    let node = |n: usize| {
        format!(
            "  n{n} [label={}, {}];",
            quoted(&format!("{n}: {}", windows[n])),
            node_style(dfa.accepts_window(&windows[n]))
        )
    };
    for n in 0..cycle_start {
        writeln!(out, "{}", node(n)).unwrap();
    }
    if cycle_start < shown {
        writeln!(out, "  subgraph cluster_cycle {{").unwrap();
        writeln!(out, "    label=\"cycle\";").unwrap();
        for n in cycle_start..shown {
            writeln!(out, "  {}", node(n)).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for n in 1..shown {
        writeln!(out, "  n{} -> n{n};", n - 1).unwrap();
    }
    if period.is_some() && cycle_start < shown {
        writeln!(
            out,
            "  n{} -> n{cycle_start} [constraint=false];",
            shown - 1
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn node_style(accepting: bool) -> &'static str {
    if accepting {
        "shape=box, style=filled, fillcolor=lightblue"
    } else {
        "shape=box, style=dashed"
    }
}
