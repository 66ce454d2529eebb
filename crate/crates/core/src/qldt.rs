//! Binary logic trees learned from the truth table of a minterm bit vector.
//!
//! The tree is grown like a classical decision tree on the `2^n` rows
//! `(bits of k, active(k))`. Evaluated on fuzzy degrees it sums, over every
//! path to an active leaf, the product of `m_j` along high edges and
//! `1 - m_j` along low (negated) edges.

use crate::encoding::{minterm_bits, FuzzifiedObject};
use crate::error::{Error, Result};
use crate::logiccode::LogicExpressionBits;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QldtNode {
    Leaf(bool),
    Split {
        attribute: usize,
        /// Negated branch (attribute low).
        low: Box<QldtNode>,
        /// Non-negated branch (attribute high).
        high: Box<QldtNode>,
    },
}

impl QldtNode {
    pub fn depth(&self) -> usize {
        match self {
            QldtNode::Leaf(_) => 0,
            QldtNode::Split { low, high, .. } => 1 + low.depth().max(high.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            QldtNode::Leaf(_) => 1,
            QldtNode::Split { low, high, .. } => 1 + low.node_count() + high.node_count(),
        }
    }

    /// Crisp evaluation on one minterm's bits.
    pub fn decide(&self, bits: &[bool]) -> bool {
        match self {
            QldtNode::Leaf(v) => *v,
            QldtNode::Split {
                attribute,
                low,
                high,
            } => {
                if bits[*attribute] {
                    high.decide(bits)
                } else {
                    low.decide(bits)
                }
            }
        }
    }
}

/// Grows the tree by information gain. Equal gains go to the attribute with
/// the highest index; pure row sets become leaves and splits whose children
/// are identical collapse into the child.
pub fn build_qldt(e: &LogicExpressionBits) -> QldtNode {
    let n = e.attribute_count();
    let rows: Vec<(Vec<bool>, bool)> = (0..e.len())
        .map(|k| (minterm_bits(k, n).expect("index below 2^n"), e.active()[k]))
        .collect();
    let refs: Vec<&(Vec<bool>, bool)> = rows.iter().collect();
    grow(&refs, &mut vec![true; n])
}

fn entropy(pos: usize, total: usize) -> f64 {
    if pos == 0 || pos == total {
        return 0.0;
    }
    let p = pos as f64 / total as f64;
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

fn grow(rows: &[&(Vec<bool>, bool)], available: &mut Vec<bool>) -> QldtNode {
    let pos = rows.iter().filter(|r| r.1).count();
    if pos == 0 || pos == rows.len() {
        return QldtNode::Leaf(pos > 0);
    }
    let total = rows.len();
    let mut best: Option<(usize, f64)> = None;
    for j in (0..available.len()).filter(|&j| available[j]) {
        let (hi_n, hi_pos) = rows
            .iter()
            .filter(|r| r.0[j])
            .fold((0, 0), |(c, p), r| (c + 1, p + usize::from(r.1)));
        let (lo_n, lo_pos) = (total - hi_n, pos - hi_pos);
        let conditional = (hi_n as f64 * entropy(hi_pos, hi_n)
            + lo_n as f64 * entropy(lo_pos, lo_n))
            / total as f64;
        let gain = entropy(pos, total) - conditional;
        // later attributes win ties
        if best.is_none_or(|(_, g)| gain >= g - 1e-12) {
            best = Some((j, gain));
        }
    }
    let (attribute, _) = best.expect("a mixed row set still has an unused attribute");
    let (high_rows, low_rows): (Vec<_>, Vec<_>) =
        rows.iter().copied().partition(|r| r.0[attribute]);
    available[attribute] = false;
    let low = grow(&low_rows, available);
    let high = grow(&high_rows, available);
    available[attribute] = true;
    if low == high {
        return low;
    }
    QldtNode::Split {
        attribute,
        low: Box::new(low),
        high: Box::new(high),
    }
}

/// Sum over active-leaf paths of the product of edge degrees.
pub fn eval_qldt(t: &QldtNode, f: &FuzzifiedObject) -> Result<f64> {
    match t {
        QldtNode::Leaf(active) => Ok(if *active { 1.0 } else { 0.0 }),
        QldtNode::Split {
            attribute,
            low,
            high,
        } => {
            let m = *f
                .degrees()
                .get(*attribute)
                .ok_or(Error::AttributeOutOfRange {
                    index: *attribute,
                    n: f.arity(),
                })?;
            Ok((1.0 - m) * eval_qldt(low, f)? + m * eval_qldt(high, f)?)
        }
    }
}

/// Output format for [`render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Ascii,
}

pub fn render(t: &QldtNode, names: &[String], format: RenderFormat) -> String {
    match format {
        RenderFormat::Dot => render_dot(t, names),
        RenderFormat::Ascii => {
            let mut out = String::new();
            render_ascii(t, names, 0, &mut out);
            out
        }
    }
}

fn attr_name(names: &[String], j: usize) -> String {
    names
        .get(j)
        .cloned()
        .unwrap_or_else(|| format!("a{}", j + 1))
}

fn leaf_label(active: bool) -> &'static str {
    if active {
        "active"
    } else {
        "inactive"
    }
}

fn render_dot(t: &QldtNode, names: &[String]) -> String {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    fn walk(
        t: &QldtNode,
        names: &[String],
        nodes: &mut Vec<String>,
        edges: &mut Vec<String>,
    ) -> usize {
        let id = nodes.len();
        match t {
            QldtNode::Leaf(active) => {
                let shape = if *active { "doublecircle" } else { "circle" };
                nodes.push(format!(
                    "  n{id} [label=\"{}\", shape={shape}];",
                    leaf_label(*active)
                ));
            }
            QldtNode::Split {
                attribute,
                low,
                high,
            } => {
                nodes.push(format!(
                    "  n{id} [label=\"{}\", shape=box];",
                    attr_name(names, *attribute)
                ));
                let lo = walk(low, names, nodes, edges);
                edges.push(format!("  n{id} -> n{lo} [style=dashed];"));
                let hi = walk(high, names, nodes, edges);
                edges.push(format!("  n{id} -> n{hi} [style=solid];"));
            }
        }
        id
    }
    walk(t, names, &mut nodes, &mut edges);
    let mut out = String::from("digraph qldt {\n");
    for line in nodes.iter().chain(&edges) {
        out.push_str(line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

fn render_ascii(t: &QldtNode, names: &[String], indent: usize, out: &mut String) {
    match t {
        QldtNode::Leaf(active) => {
            out.push_str(leaf_label(*active));
            out.push('\n');
        }
        QldtNode::Split {
            attribute,
            low,
            high,
        } => {
            let name = attr_name(names, *attribute);
            out.push_str(&name);
            out.push('\n');
            let pad = "  ".repeat(indent + 1);
            out.push_str(&format!("{pad}~{name}: "));
            render_ascii(low, names, indent + 1, out);
            out.push_str(&format!("{pad}{name}: "));
            render_ascii(high, names, indent + 1, out);
        }
    }
}

/// Path formula of the tree, e.g. `a2 | ~a2 & a1`.
pub fn path_expression(t: &QldtNode, names: &[String]) -> String {
    fn paths(t: &QldtNode, names: &[String], prefix: &mut Vec<String>, out: &mut Vec<String>) {
        match t {
            QldtNode::Leaf(true) => out.push(if prefix.is_empty() {
                "true".into()
            } else {
                prefix.join(" & ")
            }),
            QldtNode::Leaf(false) => {}
            QldtNode::Split {
                attribute,
                low,
                high,
            } => {
                let name = attr_name(names, *attribute);
                prefix.push(name.clone());
                paths(high, names, prefix, out);
                prefix.pop();
                prefix.push(format!("~{name}"));
                paths(low, names, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    paths(t, names, &mut Vec::new(), &mut out);
    if out.is_empty() {
        "false".into()
    } else {
        out.join(" | ")
    }
}
