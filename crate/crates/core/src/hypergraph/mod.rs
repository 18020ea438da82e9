//! Finite 3-hypergraphs: admissibility checks, girth, linked subhyperedge
//! classes, the uniform and leafless cores, named families and isomorphism.

mod families;
mod girth;
mod iso;
mod linked;
mod random;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use families::{family, FamilyKind};
pub use girth::Girth;
pub use iso::find_hypergraph_isomorphism;
pub use linked::{LinkedClass, LinkedClasses, VertexPair};
pub use random::{random_hyperforest, random_hypergraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge {edge} references unknown vertex `{vertex}`")]
    UnknownVertex { edge: usize, vertex: String },
    #[error("edge {edge} lists vertex `{vertex}` more than once")]
    RepeatedVertexInEdge { edge: usize, vertex: String },
    #[error("hypergraph is not admissible: {0}")]
    Invalid(String),
    #[error("no 3-uniform core: the hypergraph has no edge of size 3")]
    NoUniformCore,
    #[error("hypergraph is not 3-uniform")]
    NotUniform,
    #[error("hypergraph is a hyperforest; leaf removal would consume every edge")]
    Hyperforest,
    #[error("unsupported family `{kind}` with index {index}")]
    UnsupportedFamily { kind: String, index: usize },
    #[error("unknown family kind `{0}`")]
    UnknownFamily(String),
    #[error("malformed hypergraph document: {0}")]
    Format(String),
}

/// On-disk form: `{"vertices": [...], "edges": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HypergraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

/// A finite hypergraph over opaque string vertex ids.
///
/// Construction only enforces structural soundness (known, distinct vertex
/// ids; no vertex repeated inside an edge). Admissibility is a separate
/// question answered by [`Hypergraph::validate`], since girth and linearity
/// are also meaningful for inadmissible inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    NonEmpty,
    EdgeSize,
    NoIsolatedVertex,
    Linear,
    PairEdgeIsolated,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::NonEmpty => "non_empty",
            Rule::EdgeSize => "edge_size",
            Rule::NoIsolatedVertex => "no_isolated_vertex",
            Rule::Linear => "linear",
            Rule::PairEdgeIsolated => "pair_edge_isolated",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub vertices: Vec<String>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn violates(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn summary(&self) -> String {
        if self.valid {
            return "valid".to_string();
        }
        self.violations
            .iter()
            .map(|v| {
                let mut s = v.rule.name().to_string();
                if !v.edges.is_empty() {
                    s.push_str(&format!(" edges={:?}", v.edges));
                }
                if !v.vertices.is_empty() {
                    s.push_str(&format!(" vertices={:?}", v.vertices));
                }
                s
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl Hypergraph {
    /// Builds a hypergraph from vertex ids and edges given by index.
    pub fn from_indices(vertices: Vec<String>, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(HypergraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut out = Vec::with_capacity(edges.len());
        for (ei, edge) in edges.into_iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in &edge {
                if v >= vertices.len() {
                    return Err(HypergraphError::UnknownVertex {
                        edge: ei,
                        vertex: format!("#{v}"),
                    });
                }
                if !seen.insert(v) {
                    return Err(HypergraphError::RepeatedVertexInEdge {
                        edge: ei,
                        vertex: vertices[v].clone(),
                    });
                }
            }
            out.push(seen.into_iter().collect());
        }
        Ok(Self {
            vertices,
            index,
            edges: out,
        })
    }

    pub fn from_names<S: AsRef<str>>(vertices: &[S], edges: &[Vec<S>]) -> Result<Self, HypergraphError> {
        let verts: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, v) in verts.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(HypergraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (ei, edge) in edges.iter().enumerate() {
            let mut e = Vec::with_capacity(edge.len());
            for name in edge {
                let name = name.as_ref();
                match index.get(name) {
                    Some(&i) => e.push(i),
                    None => {
                        return Err(HypergraphError::UnknownVertex {
                            edge: ei,
                            vertex: name.to_string(),
                        })
                    }
                }
            }
            idx_edges.push(e);
        }
        Self::from_indices(verts, idx_edges)
    }

    /// Vertices `u1..un` with edges given by 1-based vertex numbers.
    pub fn numbered(n: usize, edges: &[&[usize]]) -> Result<Self, HypergraphError> {
        let vertices = (1..=n).map(|i| format!("u{i}")).collect();
        let edges = edges
            .iter()
            .map(|e| e.iter().map(|&v| v.wrapping_sub(1)).collect())
            .collect();
        Self::from_indices(vertices, edges)
    }

    pub fn from_document(doc: &HypergraphDocument) -> Result<Self, HypergraphError> {
        Self::from_names(&doc.vertices, &doc.edges)
    }

    pub fn from_json(text: &str) -> Result<Self, HypergraphError> {
        let doc: HypergraphDocument =
            serde_json::from_str(text).map_err(|e| HypergraphError::Format(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> HypergraphDocument {
        HypergraphDocument {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| self.vertices[v].clone()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("hypergraph document serializes")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Edges as sorted vertex-index lists, in input order.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_names(&self, e: usize) -> Vec<&str> {
        self.edges[e].iter().map(|&v| self.vertices[v].as_str()).collect()
    }

    /// Number of edges through each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_uniform3(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.len() == 3)
    }

    pub fn is_linear(&self) -> bool {
        for (i, a) in self.edges.iter().enumerate() {
            for b in &self.edges[i + 1..] {
                if intersection_size(a, b) >= 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `set` (sorted vertex indices) is exactly an edge.
    pub fn has_edge(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.edges.contains(&s)
    }

    /// Whether `set` is contained in some edge.
    pub fn is_subhyperedge(&self, set: &[usize]) -> bool {
        self.edges.iter().any(|e| set.iter().all(|v| e.contains(v)))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.vertices.is_empty() || self.edges.is_empty() {
            violations.push(Violation {
                rule: Rule::NonEmpty,
                vertices: vec![],
                edges: vec![],
            });
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !(2..=3).contains(&e.len()) {
                violations.push(Violation {
                    rule: Rule::EdgeSize,
                    vertices: self.names(e),
                    edges: vec![i],
                });
            }
        }
        for (v, d) in self.degrees().into_iter().enumerate() {
            if d == 0 {
                violations.push(Violation {
                    rule: Rule::NoIsolatedVertex,
                    vertices: vec![self.vertices[v].clone()],
                    edges: vec![],
                });
            }
        }
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let (a, b) = (&self.edges[i], &self.edges[j]);
                let common: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
                if common.len() >= 2 {
                    violations.push(Violation {
                        rule: Rule::Linear,
                        vertices: self.names(&common),
                        edges: vec![i, j],
                    });
                }
                if !common.is_empty() && (a.len() == 2 || b.len() == 2) {
                    violations.push(Violation {
                        rule: Rule::PairEdgeIsolated,
                        vertices: self.names(&common),
                        edges: vec![i, j],
                    });
                }
            }
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// Errors with the validation summary unless the hypergraph is admissible.
    pub fn ensure_valid(&self) -> Result<(), HypergraphError> {
        let report = self.validate();
        if report.valid {
            Ok(())
        } else {
            Err(HypergraphError::Invalid(report.summary()))
        }
    }

    pub fn girth(&self) -> Girth {
        girth::girth(self.vertices.len(), &self.edges)
    }

    pub fn linked_classes(&self) -> LinkedClasses {
        LinkedClasses::compute(self)
    }

    /// Subhypergraph induced by `keep` (vertex indices): keeps those vertices,
    /// in original order, and every edge contained in them.
    pub fn induced(&self, keep: &[usize]) -> Hypergraph {
        let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
        let order: Vec<usize> = (0..self.vertices.len()).filter(|v| keep_set.contains(v)).collect();
        let remap: HashMap<usize, usize> = order.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let vertices = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| keep_set.contains(v)))
            .map(|e| e.iter().map(|v| remap[v]).collect())
            .collect();
        Hypergraph::from_indices(vertices, edges).expect("induced subhypergraph is structurally sound")
    }

    /// Partial subhypergraph on the chosen edges; vertices are those covered.
    pub fn partial(&self, edge_ids: &[usize]) -> Hypergraph {
        let covered: BTreeSet<usize> = edge_ids.iter().flat_map(|&e| self.edges[e].iter().copied()).collect();
        let order: Vec<usize> = covered.into_iter().collect();
        let remap: HashMap<usize, usize> = order.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let vertices = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = edge_ids
            .iter()
            .map(|&e| self.edges[e].iter().map(|v| remap[v]).collect())
            .collect();
        Hypergraph::from_indices(vertices, edges).expect("partial subhypergraph is structurally sound")
    }

    /// Induced subhypergraph on the vertices covered by size-3 edges.
    pub fn uniform_core(&self) -> Result<Hypergraph, HypergraphError> {
        let keep: BTreeSet<usize> = self
            .edges
            .iter()
            .filter(|e| e.len() == 3)
            .flat_map(|e| e.iter().copied())
            .collect();
        if keep.is_empty() {
            return Err(HypergraphError::NoUniformCore);
        }
        Ok(self.induced(&keep.into_iter().collect::<Vec<_>>()))
    }

    /// An edge is a leaf when everything it shares with the rest of the
    /// hypergraph is contained in a single vertex.
    pub fn is_leaf(&self, e: usize) -> bool {
        let shared: BTreeSet<usize> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != e)
            .flat_map(|(_, other)| other.iter().copied().filter(|v| self.edges[e].contains(v)))
            .collect();
        shared.len() <= 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.is_leaf(e)).collect()
    }

    /// Repeatedly strips leaves until none remain.
    pub fn leaf_core(&self) -> Result<Hypergraph, HypergraphError> {
        if !self.is_uniform3() {
            return Err(HypergraphError::NotUniform);
        }
        if self.girth().is_infinite() {
            return Err(HypergraphError::Hyperforest);
        }
        let mut current = self.clone();
        loop {
            let leaves = current.leaves();
            if leaves.is_empty() {
                return Ok(current);
            }
            let keep: Vec<usize> = (0..current.edges.len()).filter(|e| !leaves.contains(e)).collect();
            if keep.is_empty() {
                return Err(HypergraphError::Hyperforest);
            }
            current = current.partial(&keep);
        }
    }

    /// Same hypergraph with every vertex renamed through `rename`.
    pub fn relabeled<F: Fn(&str) -> String>(&self, rename: F) -> Result<Hypergraph, HypergraphError> {
        let vertices = self.vertices.iter().map(|v| rename(v)).collect();
        Hypergraph::from_indices(vertices, self.edges.clone())
    }

    /// Bipartite vertex/edge incidence graph in DOT syntax.
    pub fn to_dot(&self) -> String {
        self.to_dot_colored(None)
    }

    pub fn to_dot_colored(&self, colors: Option<&[u8]>) -> String {
        const PALETTE: [&str; 3] = ["tomato", "palegreen", "lightskyblue"];
        let mut out = String::from("graph hypergraph {\n  node [shape=circle];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            match colors.and_then(|c| c.get(i)) {
                Some(&c) => out.push_str(&format!(
                    "  v{i} [label=\"{v}\", style=filled, fillcolor={}];\n",
                    PALETTE[c as usize % 3]
                )),
                None => out.push_str(&format!("  v{i} [label=\"{v}\"];\n")),
            }
        }
        for (j, e) in self.edges.iter().enumerate() {
            out.push_str(&format!("  e{j} [label=\"e{}\", shape=box];\n", j + 1));
            for v in e {
                out.push_str(&format!("  e{j} -- v{v};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    fn names(&self, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| self.vertices[v].clone()).collect()
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V={{{}}} E={{", self.vertices.join(","))?;
        for i in 0..self.edges.len() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{{{}}}", self.edge_names(i).join(","))?;
        }
        f.write_str("}")
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}
