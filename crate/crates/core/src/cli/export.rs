//! Graph serialization: JSON (round-trippable) and DOT.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NzcGraph;
use crate::vectorspace::{SpaceParams, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub coeffs: Vec<u32>,
    /// 1-based basis indices.
    pub skeleton: Vec<usize>,
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub q: u32,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
    pub twin_sets: Vec<Vec<usize>>,
}

impl GraphJson {
    pub fn from_graph(g: &NzcGraph) -> Self {
        let vertices = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, v)| VertexJson {
                id,
                coeffs: v.coeffs().to_vec(),
                skeleton: v.skeleton().indices().collect(),
                class: v.skeleton_class(),
            })
            .collect();
        GraphJson {
            n: g.n(),
            q: g.q(),
            vertices,
            edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            twin_sets: g.twin_sets().to_vec(),
        }
    }

    pub fn into_graph(self) -> Result<NzcGraph> {
        let params = SpaceParams::new(self.n, self.q)?;
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (pos, v) in self.vertices.into_iter().enumerate() {
            if v.id != pos {
                return Err(Error::Malformed(format!("vertex at position {pos} has id {}", v.id)));
            }
            let vector = Vector::new(params, v.coeffs)?;
            if vector.skeleton().indices().collect::<Vec<_>>() != v.skeleton
                || vector.skeleton_class() != v.class
            {
                return Err(Error::Malformed(format!("vertex {pos}: skeleton or class disagrees with coeffs")));
            }
            vertices.push(vector);
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[a, b]| (a, b)).collect();
        NzcGraph::from_parts(params, vertices, &edges, self.twin_sets)
    }
}

pub fn to_json(g: &NzcGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph json is serializable")
}

pub fn from_json(text: &str) -> Result<NzcGraph> {
    let parsed: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("json: {e}")))?;
    parsed.into_graph()
}

/// Undirected DOT; nodes are vertex ids labeled like `b1+b3`.
pub fn to_dot(g: &NzcGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph nzc_n{}_q{} {{", g.n(), g.q());
    for (id, v) in g.vertices().iter().enumerate() {
        let _ = writeln!(out, "  {id} [label=\"{}\", class={}];", v.label(), v.skeleton_class());
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

pub fn to_table(g: &NzcGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "G(V) for n = {}, q = {}: {} vertices, {} edges, {} twin sets",
        g.n(),
        g.q(),
        g.vertex_count(),
        g.edge_count(),
        g.twin_sets().len()
    );
    let _ = writeln!(out, "{:>6}  {:<24} {:<24} {:>5} {:>7}", "id", "vector", "skeleton", "class", "degree");
    for (id, v) in g.vertices().iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>6}  {:<24} {:<24} {:>5} {:>7}",
            id,
            v.label(),
            v.skeleton().to_string(),
            v.skeleton_class(),
            g.row(id).count_ones(..)
        );
    }
    out
}
