//! The lattice of classes below `I`, reconstructed from membership sets.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::matrix::MembershipMatrix;

/// Node set: the base classes, every union appearing as a proposition
/// right-hand side (`GRB_l∪GRB_r` is `I` itself), and `I`.
pub const DIAGRAM_NODES: &[&str] = &[
    "{0}",
    "Z",
    "L",
    "R",
    "IL",
    "IR",
    "RB",
    "IRB",
    "GL",
    "GR",
    "GRB_l",
    "GRB_r",
    "L∪R",
    "Z∪R",
    "L∪Z",
    "L∪Z∪R",
    "IL∪R",
    "L∪IR",
    "IL∪IR",
    "GL∪R",
    "L∪GR",
    "GL∪IR",
    "IL∪GR",
    "GL∪GR",
    "Z∪RB",
    "IL∪RB",
    "RB∪IR",
    "IL∪RB∪IR",
    "GL∪RB",
    "RB∪GR",
    "GL∪RB∪IR",
    "IL∪RB∪GR",
    "GL∪RB∪GR",
    "GL∪IRB",
    "IRB∪GR",
    "GL∪IRB∪GR",
    "GRB_l∪GR",
    "GL∪GRB_r",
    "I",
];

/// Containments that hold by definition, as `(lower, upper)`.
pub const SYMBOLIC_CONTAINMENTS: &[(&str, &str)] = &[
    ("L", "IL"),
    ("IL", "GL"),
    ("GL", "GRB_l"),
    ("GRB_l", "I"),
    ("R", "IR"),
    ("IR", "GR"),
    ("GR", "GRB_r"),
    ("GRB_r", "I"),
    ("RB", "IRB"),
    ("IRB", "GRB_l"),
    ("IRB", "GRB_r"),
    ("Z", "IL"),
    ("Z", "IR"),
];

const DUAL_PAIRS: &[(&str, &str)] = &[("L", "R"), ("IL", "IR"), ("GL", "GR"), ("GRB_l", "GRB_r")];

fn dual_part(name: &str) -> &str {
    for &(a, b) in DUAL_PAIRS {
        if name == a {
            return b;
        }
        if name == b {
            return a;
        }
    }
    name
}

fn parts(name: &str) -> BTreeSet<&str> {
    name.split('∪').collect()
}

/// A group of classes with identical membership over the universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseNode {
    pub names: Vec<String>,
    pub members: usize,
}

impl HasseNode {
    pub fn label(&self) -> String {
        self.names.join(" = ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergedGroup {
    pub names: Vec<String>,
    /// Smallest order at which the classes differ, when within the bound.
    pub separating_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseDiagram {
    pub order_bound: usize,
    pub universe_size: usize,
    pub nodes: Vec<HasseNode>,
    /// Covering pairs `(lower, upper)` as node indices.
    pub edges: Vec<(usize, usize)>,
    pub merged: Vec<MergedGroup>,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
    pub is_lattice: bool,
    pub duality_automorphism: bool,
    /// Symbolic containments that the empirical order contradicts.
    pub containment_violations: Vec<(String, String)>,
}

impl HasseDiagram {
    pub fn node_of(&self, name: &str) -> Option<usize> {
        let name = crate::classes::normalize_name(name);
        self.nodes.iter().position(|n| n.names.contains(&name))
    }

    pub fn covers(&self, lower: &str, upper: &str) -> bool {
        match (self.node_of(lower), self.node_of(upper)) {
            (Some(a), Some(b)) => self.edges.contains(&(a, b)),
            _ => false,
        }
    }

    pub fn upper_covers(&self, name: &str) -> Vec<&HasseNode> {
        let Some(a) = self.node_of(name) else {
            return Vec::new();
        };
        self.edges
            .iter()
            .filter(|e| e.0 == a)
            .map(|e| &self.nodes[e.1])
            .collect()
    }

    pub fn bottom_is_zero(&self) -> bool {
        self.bottom
            .is_some_and(|b| self.nodes[b].names.iter().any(|n| n == "{0}"))
    }

    pub fn top_is_i(&self) -> bool {
        self.top
            .is_some_and(|t| self.nodes[t].names.iter().any(|n| n == "I"))
    }

    pub fn warnings(&self) -> Vec<String> {
        self.merged
            .iter()
            .map(|g| {
                let sep = match g.separating_order {
                    Some(n) => n.to_string(),
                    None => format!("none ≤ {}", self.order_bound),
                };
                format!("merged {{{}}}: separates: {sep}", g.names.join(", "))
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "lattice (reconstructed) over {} semigroups of order <= {}\n",
            self.universe_size, self.order_bound
        );
        for (i, n) in self.nodes.iter().enumerate() {
            let ups: Vec<String> = self
                .edges
                .iter()
                .filter(|e| e.0 == i)
                .map(|e| self.nodes[e.1].label())
                .collect();
            writeln!(out, "{} [{}] < {}", n.label(), n.members, ups.join(" | "))
                .expect("String write");
        }
        for w in self.warnings() {
            writeln!(out, "warning: {w}").expect("String write");
        }
        let flag = |b: bool| if b { "yes" } else { "no" };
        writeln!(out, "bottom {{0}}: {}", flag(self.bottom_is_zero())).expect("String write");
        writeln!(out, "top I: {}", flag(self.top_is_i())).expect("String write");
        writeln!(out, "lattice: {}", flag(self.is_lattice)).expect("String write");
        writeln!(
            out,
            "duality automorphism: {}",
            flag(self.duality_automorphism)
        )
        .expect("String write");
        for (a, b) in &self.containment_violations {
            writeln!(out, "containment violated: {a} ⊆ {b}").expect("String write");
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n");
        writeln!(
            out,
            "  label=\"classes below I (reconstructed, order <= {})\";",
            self.order_bound
        )
        .expect("String write");
        out.push_str("  rankdir=BT;\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = n.names.join("\\n").replace('"', "\\\"");
            writeln!(out, "  n{i} [label=\"{label}\"];").expect("String write");
        }
        for (a, b) in &self.edges {
            writeln!(out, "  n{a} -> n{b};").expect("String write");
        }
        out.push_str("}\n");
        out
    }
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// Derives the covering relation of the membership order on the columns
/// of `matrix`. Columns with equal membership sets become one node.
pub fn derive_lattice(matrix: &MembershipMatrix) -> HasseDiagram {
    let columns: Vec<Vec<bool>> = (0..matrix.classes.len())
        .map(|c| matrix.column(c))
        .collect();

    let mut groups: Vec<(Vec<usize>, &Vec<bool>)> = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        match groups.iter_mut().find(|g| g.1 == col) {
            Some(g) => g.0.push(c),
            None => groups.push((vec![c], col)),
        }
    }
    let nodes: Vec<HasseNode> = groups
        .iter()
        .map(|(cs, col)| HasseNode {
            names: cs.iter().map(|&c| matrix.classes[c].clone()).collect(),
            members: col.iter().filter(|&&b| b).count(),
        })
        .collect();
    let k = nodes.len();
    let leq: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| subset(groups[a].1, groups[b].1)).collect())
        .collect();
    let lt = |a: usize, b: usize| a != b && leq[a][b];

    let edges: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .filter(|&(a, b)| lt(a, b) && !(0..k).any(|c| lt(a, c) && lt(c, b)))
        .collect();

    let bottom = (0..k).find(|&b| (0..k).all(|x| leq[b][x]));
    let top = (0..k).find(|&t| (0..k).all(|x| leq[x][t]));

    let least = |cands: Vec<usize>, below: bool| -> bool {
        cands
            .iter()
            .filter(|&&c| {
                cands
                    .iter()
                    .all(|&d| if below { leq[c][d] } else { leq[d][c] })
            })
            .count()
            == 1
    };
    let is_lattice = (0..k).all(|a| {
        (0..k).all(|b| {
            let upper: Vec<usize> = (0..k).filter(|&c| leq[a][c] && leq[b][c]).collect();
            let lower: Vec<usize> = (0..k).filter(|&c| leq[c][a] && leq[c][b]).collect();
            least(upper, true) && least(lower, false)
        })
    });

    let node_index = |name: &str| nodes.iter().position(|n| n.names.iter().any(|m| m == name));
    let dual_node = |name: &str| -> Option<usize> {
        let want: BTreeSet<&str> = parts(name).into_iter().map(dual_part).collect();
        nodes
            .iter()
            .position(|n| n.names.iter().any(|m| parts(m) == want))
    };
    let sigma: Option<Vec<usize>> = nodes
        .iter()
        .map(|n| {
            let images: BTreeSet<Option<usize>> = n.names.iter().map(|m| dual_node(m)).collect();
            match images.into_iter().collect::<Vec<_>>().as_slice() {
                [Some(i)] => Some(*i),
                _ => None,
            }
        })
        .collect();
    let duality_automorphism = sigma.is_some_and(|s| {
        let bijective = s.iter().collect::<BTreeSet<_>>().len() == k;
        bijective && (0..k).all(|a| (0..k).all(|b| leq[a][b] == leq[s[a]][s[b]]))
    });

    let mut containment_violations = Vec::new();
    let mut check = |lo: &str, hi: &str| {
        if let (Some(a), Some(b)) = (node_index(lo), node_index(hi)) {
            if !leq[a][b] {
                containment_violations.push((lo.to_string(), hi.to_string()));
            }
        }
    };
    for &(lo, hi) in SYMBOLIC_CONTAINMENTS {
        check(lo, hi);
    }
    for n in &matrix.classes {
        check("{0}", n);
    }

    let merged = nodes
        .iter()
        .filter(|n| n.names.len() > 1)
        .map(|n| MergedGroup {
            names: n.names.clone(),
            separating_order: None,
        })
        .collect();

    HasseDiagram {
        order_bound: matrix.order_bound,
        universe_size: matrix.universe.len(),
        nodes,
        edges,
        merged,
        bottom,
        top,
        is_lattice,
        duality_automorphism,
        containment_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::semigroup::CanonicalMode;

    fn diagram(order: usize) -> HasseDiagram {
        let cat = Catalog::build(order, CanonicalMode::Iso).unwrap();
        derive_lattice(&MembershipMatrix::build(&cat, DIAGRAM_NODES).unwrap())
    }

    #[test]
    fn nodes_are_registered_and_self_dual() {
        for n in DIAGRAM_NODES {
            assert!(crate::classes::registry().get(n).is_ok(), "{n}");
            let want: BTreeSet<&str> = parts(n).into_iter().map(dual_part).collect();
            assert!(
                DIAGRAM_NODES.iter().any(|m| parts(m) == want),
                "dual of {n}"
            );
        }
    }

    #[test]
    fn order_three_shape() {
        let d = diagram(3);
        assert!(d.bottom_is_zero());
        assert!(d.top_is_i());
        assert!(d.covers("{0}", "Z"));
        assert!(d.containment_violations.is_empty());
        assert!(d.duality_automorphism);
    }

    #[test]
    fn covers_of_left_or_right_zero() {
        let d = diagram(4);
        let mut ups: Vec<String> = d.upper_covers("L∪R").iter().map(|n| n.label()).collect();
        ups.sort();
        assert_eq!(ups, ["L∪Z∪R", "RB"]);
        assert!(d.is_lattice);
        assert_eq!(d.merged.len(), 4);
    }

    #[test]
    fn dot_is_well_formed() {
        let dot = diagram(2).to_dot();
        assert!(dot.starts_with("digraph lattice {\n"));
        assert!(dot.contains("reconstructed"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
