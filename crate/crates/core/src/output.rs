//! Text, JSON and Graphviz renderings of the computed objects. Every
//! emitter is deterministic: identical inputs give byte-identical output.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::ar::{ARNode, ARQuiver};
use crate::cluster::Enumeration;
use crate::grid::{CompatReport, GridQuiver, SeedMatrices};
use crate::hl::HLTable;
use crate::root::QCartanTable;

/// Right-aligned integer matrix, one row per line.
pub fn matrix_text(m: &[Vec<i64>]) -> String {
    let w = m.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut s = String::new();
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>w$}")).collect();
        s += &cells.join(" ");
        s.push('\n');
    }
    s
}

fn vertex_name(g: &GridQuiver, k: usize) -> String {
    let v = g.vertices()[k];
    format!("({},{})", v.i + 1, v.p)
}

/// Grid quiver with frozen vertices drawn as boxes, laid out by column and
/// spectral parameter.
pub fn grid_dot(g: &GridQuiver) -> String {
    let mut s = String::from("digraph grid {\n  node [shape=circle];\n");
    for k in 0..g.vertices().len() {
        let v = g.vertices()[k];
        let shape = if g.is_frozen(k) { "box" } else { "circle" };
        let _ = writeln!(s, "  v{k} [label=\"{}\", shape={shape}, pos=\"{},{}!\"];", vertex_name(g, k), v.i, v.p);
    }
    for &(a, b) in g.arrows() {
        let _ = writeln!(s, "  v{a} -> v{b};");
    }
    s + "}\n"
}

/// Composition factors grouped by height, highest first: `[1,1,0,0]` on
/// `1 -> 2` becomes `1` over `2`.
pub fn stacked_label(ar: &ARQuiver, dims: &[i64]) -> String {
    let xi = ar.height();
    let mut heights: Vec<i64> = (0..dims.len()).filter(|&i| dims[i] > 0).map(|i| xi.at(i)).collect();
    heights.sort_unstable_by(|a, b| b.cmp(a));
    heights.dedup();
    let lines: Vec<String> = heights
        .iter()
        .map(|&h| {
            (0..dims.len())
                .filter(|&i| dims[i] > 0 && xi.at(i) == h)
                .map(|i| (i + 1).to_string().repeat(dims[i] as usize))
                .collect()
        })
        .collect();
    lines.join("\\n")
}

fn node_id(n: ARNode) -> String {
    match n {
        ARNode::Module(k) => format!("m{k}"),
        ARNode::Shifted(i) => format!("p{i}"),
    }
}

/// Auslander-Reiten quiver of the cluster category: modules with stacked
/// labels, shifted projectives as boxes, translations dashed.
pub fn ar_dot(ar: &ARQuiver) -> String {
    let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
    for node in ar.nodes() {
        match node {
            ARNode::Module(k) => {
                let _ = writeln!(s, "  {} [label=\"{}\"];", node_id(node), stacked_label(ar, ar.root(k)));
            }
            ARNode::Shifted(i) => {
                let _ = writeln!(s, "  {} [label=\"P{}[1]\", shape=box];", node_id(node), i + 1);
            }
        }
    }
    for &(a, b) in ar.arrows() {
        let _ = writeln!(s, "  m{a} -> m{b};");
    }
    for node in ar.nodes() {
        let t = ar.tau(node);
        if t != node {
            let _ = writeln!(s, "  {} -> {} [style=dashed, constraint=false];", node_id(node), node_id(t));
        }
    }
    s + "}\n"
}

pub fn ar_json(ar: &ARQuiver) -> Value {
    let nodes: Vec<Value> = ar
        .nodes()
        .into_iter()
        .map(|n| {
            json!({
                "node": n,
                "dims": ar.dims(n),
                "tau": ar.tau(n),
                "socle": ar.socle(n),
                "g": ar.g_vector(n),
                "projective": matches!(n, ARNode::Module(k) if ar.is_projective(k)),
                "injective": matches!(n, ARNode::Module(k) if ar.is_injective(k)),
            })
        })
        .collect();
    let arrows: Vec<Value> = ar.arrows().iter().map(|&(a, b)| json!([ARNode::Module(a), ARNode::Module(b)])).collect();
    json!({
        "type": ar.diagram().name(),
        "xi": ar.height().values(),
        "word": ar.word().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "nodes": nodes,
        "arrows": arrows,
    })
}

pub fn hl_json(t: &HLTable) -> Value {
    json!({
        "type": t.ar.diagram().name(),
        "xi": t.height().values(),
        "records": t.records,
    })
}

pub fn seed_json(g: &GridQuiver, sm: &SeedMatrices, report: &CompatReport) -> Value {
    let rows: Vec<String> = (0..g.vertices().len()).map(|k| vertex_name(g, k)).collect();
    let frozen: Vec<String> = (0..g.vertices().len()).filter(|&k| g.is_frozen(k)).map(|k| vertex_name(g, k)).collect();
    json!({
        "type": g.height().diagram().name(),
        "xi": g.height().values(),
        "level": g.level(),
        "rows": rows,
        "frozen": frozen,
        "B": sm.b,
        "L": sm.l,
        "compat": report,
    })
}

/// `C~_ij(m)` for `1 <= m <= m_max`, and `N_ij(m)` on the same range.
pub fn cartan_json(t: &QCartanTable, m_max: i64) -> Value {
    let n = t.diagram().rank();
    let grid = |f: &dyn Fn(usize, usize, i64) -> i64| -> Vec<Vec<Vec<i64>>> {
        (0..n).map(|i| (0..n).map(|j| (1..=m_max).map(|m| f(i, j, m)).collect()).collect()).collect()
    };
    json!({
        "type": t.diagram().name(),
        "period": t.period(),
        "m_max": m_max,
        "ctilde": grid(&|i, j, m| t.entry(i, j, m)),
        "N": grid(&|i, j, m| t.n_func(i, j, m)),
    })
}

pub fn cluster_json(e: &Enumeration) -> Value {
    json!({
        "seeds": e.seeds,
        "variables": e.vars.len(),
        "non_initial": e.non_initial().count(),
        "vars": e.vars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::HeightFunction;
    use crate::root::{DynkinDiagram, Family};

    #[test]
    fn a2_ar_dot_and_json() {
        let d = DynkinDiagram::new(Family::A, 2).unwrap();
        let xi = HeightFunction::new(&d, vec![0, -1]).unwrap();
        let ar = ARQuiver::new(&xi).unwrap();
        let dot = ar_dot(&ar);
        assert!(dot.starts_with("digraph ar {") && dot.ends_with("}\n"));
        assert_eq!(dot.matches("shape=box").count(), 2);
        let v = ar_json(&ar);
        assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
        assert_eq!(stacked_label(&ar, &[1, 1]), "1\\n2");
    }

    #[test]
    fn grid_dot_marks_frozen() {
        let d = DynkinDiagram::new(Family::A, 2).unwrap();
        let xi = HeightFunction::new(&d, vec![-1, 0]).unwrap();
        let g = GridQuiver::new(&xi, 2).unwrap();
        assert_eq!(grid_dot(&g).matches("shape=box").count(), 2);
    }

    #[test]
    fn matrix_alignment() {
        assert_eq!(matrix_text(&[vec![0, -1], vec![10, 2]]), " 0 -1\n10  2\n");
    }
}
