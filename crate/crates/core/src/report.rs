//! Deterministic JSON and DOT emission of shadow graphs.
//!
//! The JSON schema is flat: every node carries the word of the double coset
//! labelling its G-orbit, so one report can hold any number of G-orbits.
//! The DOT output contains one digraph per G-orbit; edge styles are
//! solid = U, bold = T, dashed = N.

use serde::Serialize;

use crate::shadow::{EdgeType, ShadowGraph};
use crate::weyl::WeylElement;

pub const SCHEMA: &str = "flagorbit.graph/1";

/// A reduced word rendered as `"s0 s2 s1"`, or `"e"` for the identity.
pub fn word_string(w: &WeylElement) -> String {
    if w.is_identity() {
        "e".to_string()
    } else {
        w.word()
            .iter()
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportNode {
    pub id: usize,
    pub gorbit_word: String,
    pub u_word: String,
    pub v_word: String,
    pub rank: usize,
    /// Dimension fitted by the orbit engine, when one was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEdge {
    pub src: usize,
    pub dst: usize,
    /// The raising root, in simple-root coordinates.
    pub gamma: Vec<i64>,
    #[serde(rename = "type")]
    pub etype: EdgeType,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub schema: &'static str,
    pub ctype: String,
    pub p1: usize,
    pub p2: usize,
    pub nodes: Vec<ReportNode>,
    pub edges: Vec<ReportEdge>,
    /// Number of nodes contributed by each G-orbit, in input order; node
    /// ids are assigned contiguously per orbit.
    #[serde(skip)]
    sizes: Vec<usize>,
}

impl GraphReport {
    pub fn new(ctype: &str, p1: usize, p2: usize, graphs: &[ShadowGraph]) -> Self {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        let mut sizes = Vec::with_capacity(graphs.len());
        for g in graphs {
            let base = nodes.len();
            let gw = word_string(&g.w);
            for (i, n) in g.nodes.iter().enumerate() {
                nodes.push(ReportNode {
                    id: base + i,
                    gorbit_word: gw.clone(),
                    u_word: word_string(&n.u),
                    v_word: word_string(&n.v),
                    rank: n.rank,
                    dim: None,
                });
            }
            for e in &g.edges {
                edges.push(ReportEdge {
                    src: base + e.src,
                    dst: base + e.dst,
                    gamma: e.gamma.clone(),
                    etype: e.etype,
                });
            }
            sizes.push(g.nodes.len());
        }
        GraphReport {
            schema: SCHEMA,
            ctype: ctype.to_string(),
            p1,
            p2,
            nodes,
            edges,
            sizes,
        }
    }

    pub fn set_dim(&mut self, id: usize, dim: usize) {
        self.nodes[id].dim = Some(dim);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let mut base = 0usize;
        for (gi, &size) in self.sizes.iter().enumerate() {
            out.push_str(&format!("digraph gorbit{gi} {{\n"));
            out.push_str("  rankdir=BT;\n");
            out.push_str(&format!(
                "  label=\"w = {}\";\n",
                self.nodes[base].gorbit_word
            ));
            for n in &self.nodes[base..base + size] {
                let dim = match n.dim {
                    Some(d) => format!(", dim {d}"),
                    None => String::new(),
                };
                out.push_str(&format!(
                    "  n{} [label=\"u = {}\\nv = {}\\nrank {}{}\"];\n",
                    n.id, n.u_word, n.v_word, n.rank, dim
                ));
            }
            for e in &self.edges {
                if e.src < base || e.src >= base + size {
                    continue;
                }
                let gamma = e
                    .gamma
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let style = match e.etype {
                    EdgeType::U => "solid",
                    EdgeType::T => "bold",
                    EdgeType::N => "dashed",
                };
                out.push_str(&format!(
                    "  n{} -> n{} [label=\"{}\", style={}];\n",
                    e.src, e.dst, gamma, style
                ));
            }
            out.push_str("}\n");
            base += size;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolics::ParabolicDatum;
    use crate::roots::RootSystem;
    use crate::shadow::ShadowContext;

    fn report(name: &str, n1: usize, n2: usize) -> GraphReport {
        let sys = RootSystem::new(name.parse().unwrap());
        let ctx = ShadowContext::new(
            &sys,
            ParabolicDatum::new(&sys, n1).unwrap(),
            ParabolicDatum::new(&sys, n2).unwrap(),
        )
        .unwrap();
        let graphs = ctx.all_graphs().unwrap();
        GraphReport::new(name, n1, n2, &graphs)
    }

    #[test]
    fn projective_line_squared_report() {
        let r = report("A1", 0, 0);
        assert_eq!(r.nodes.len(), 5);
        assert_eq!(r.edges.len(), 3);
        // ids are the positions
        for (i, n) in r.nodes.iter().enumerate() {
            assert_eq!(n.id, i);
        }
        // the dense G-orbit contributes 3 nodes and 2 T edges
        let dense: Vec<&ReportNode> =
            r.nodes.iter().filter(|n| n.gorbit_word == "s0").collect();
        assert_eq!(dense.len(), 3);
        assert_eq!(
            r.edges.iter().filter(|e| e.etype == EdgeType::T).count(),
            2
        );
    }

    #[test]
    fn json_round_trips_and_has_the_schema() {
        let r = report("A2", 0, 0);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["ctype"], "A2");
        assert_eq!(v["nodes"].as_array().unwrap().len(), r.nodes.len());
        assert_eq!(v["edges"][0]["type"].as_str().unwrap().len(), 1);
        // dim is omitted unless set
        assert!(v["nodes"][0].get("dim").is_none());
        let mut r2 = report("A2", 0, 0);
        r2.set_dim(0, 4);
        let v2: serde_json::Value = serde_json::from_str(&r2.to_json()).unwrap();
        assert_eq!(v2["nodes"][0]["dim"], 4);
    }

    #[test]
    fn dot_is_one_digraph_per_gorbit() {
        let r = report("A3", 1, 1);
        let dot = r.to_dot();
        let graphs = dot.matches("digraph ").count();
        let words: std::collections::HashSet<&String> =
            r.nodes.iter().map(|n| &n.gorbit_word).collect();
        assert_eq!(graphs, words.len());
        assert_eq!(dot.matches("{\n").count(), dot.matches("}\n").count());
        // every node and edge is drawn exactly once
        for n in &r.nodes {
            assert_eq!(dot.matches(&format!("  n{} [", n.id)).count(), 1);
        }
        let drawn = dot.matches(" -> ").count();
        assert_eq!(drawn, r.edges.len());
        assert!(dot.contains("style=solid"));
        assert!(dot.contains("style=bold"));
        assert!(!dot.contains("style=dashed")); // no N edges in a shadow
    }

    #[test]
    fn emission_is_deterministic() {
        let a = report("A3", 0, 2);
        let b = report("A3", 0, 2);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_dot(), b.to_dot());
    }
}
