//! Quivers, the symmetric Borcherds-Cartan datum they determine, and the
//! JSON exchange format.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{CoreError, Result};

/// Deliberate corruptions a quiver document may request. Used to make sure
/// the verification pipeline is not vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Fault {
    /// Negate every `Q_{i,j}` handed to the presentation.
    #[serde(rename = "q-sign-flip")]
    QSignFlip,
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fault::QSignFlip => write!(f, "q-sign-flip"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    faults: Vec<Fault>,
}

/// A finite quiver `(I, Omega)`; loops and multiple edges are allowed.
/// Vertices and edges are indexed by declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    faults: BTreeSet<Fault>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self> {
        let doc = QuiverDoc {
            vertices,
            edges: edges
                .into_iter()
                .map(|(id, from, to)| EdgeDoc { id, from, to })
                .collect(),
            faults: Vec::new(),
        };
        Self::from_doc(doc)
    }

    fn from_doc(doc: QuiverDoc) -> Result<Self> {
        if doc.vertices.is_empty() {
            return Err(CoreError::Invalid {
                location: "vertices".into(),
                msg: "vertex list is empty".into(),
            });
        }
        let mut index = HashMap::new();
        for (n, v) in doc.vertices.iter().enumerate() {
            if index.insert(v.clone(), n).is_some() {
                return Err(CoreError::Invalid {
                    location: format!("vertices[{n}]"),
                    msg: format!("duplicate vertex `{v}`"),
                });
            }
        }
        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (n, e) in doc.edges.into_iter().enumerate() {
            if !seen.insert(e.id.clone()) {
                return Err(CoreError::Invalid {
                    location: format!("edges[{n}].id"),
                    msg: format!("duplicate edge id `{}`", e.id),
                });
            }
            let end = |name: &str, field: &str| {
                index.get(name).copied().ok_or_else(|| CoreError::Invalid {
                    location: format!("edges[{n}].{field}"),
                    msg: format!("endpoint `{name}` is not a declared vertex"),
                })
            };
            let from = end(&e.from, "from")?;
            let to = end(&e.to, "to")?;
            edges.push(Edge { id: e.id, from, to });
        }
        Ok(Quiver {
            vertices: doc.vertices,
            edges,
            faults: doc.faults.into_iter().collect(),
        })
    }

    /// Parse the JSON format
    /// `{"vertices": ["i","j"], "edges": [{"id":"a","from":"i","to":"j"}]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| CoreError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        Self::from_doc(doc)
    }

    pub fn to_json(&self) -> String {
        let doc = QuiverDoc {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    from: self.vertices[e.from].clone(),
                    to: self.vertices[e.to].clone(),
                })
                .collect(),
            faults: self.faults.iter().copied().collect(),
        };
        serde_json::to_string_pretty(&doc).expect("quiver serializes")
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.faults.insert(fault);
        self
    }

    pub fn has_fault(&self, fault: Fault) -> bool {
        self.faults.contains(&fault)
    }

    pub fn faults(&self) -> impl Iterator<Item = Fault> + '_ {
        self.faults.iter().copied()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| CoreError::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    /// `Omega_{i,j}`: edges from `i` to `j`, in declaration order.
    pub fn edges_between(&self, i: usize, j: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.from == i && e.to == j)
    }

    pub fn loop_count(&self, i: usize) -> usize {
        self.edges_between(i, i).count()
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.edges_between(i, j).count()
    }

    pub fn derive_datum(&self) -> BorcherdsCartanDatum {
        BorcherdsCartanDatum::new(self)
    }
}

/// The symmetric Borcherds-Cartan datum of a quiver: `a_ii = 2 - 2 l_i`,
/// `a_jk = -h_jk - h_kj`, where `l_i` counts loops at `i` and `h_jk`
/// counts edges `j -> k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorcherdsCartanDatum {
    pub vertices: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub loop_counts: Vec<usize>,
    pub arrow_counts: Vec<Vec<usize>>,
    pub real_vertices: Vec<String>,
    pub imaginary_vertices: Vec<String>,
    /// `edge_index[i][j]` lists the ids of the edges `i -> j`.
    pub edge_index: Vec<Vec<Vec<String>>>,
}

impl BorcherdsCartanDatum {
    fn new(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let mut arrow_counts = vec![vec![0usize; n]; n];
        let mut edge_index = vec![vec![Vec::new(); n]; n];
        for e in q.edges() {
            arrow_counts[e.from][e.to] += 1;
            edge_index[e.from][e.to].push(e.id.clone());
        }
        let loop_counts: Vec<usize> = (0..n).map(|i| arrow_counts[i][i]).collect();
        let matrix = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        if j == k {
                            2 - 2 * loop_counts[j] as i64
                        } else {
                            -((arrow_counts[j][k] + arrow_counts[k][j]) as i64)
                        }
                    })
                    .collect()
            })
            .collect();
        let (real, imag): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| loop_counts[i] == 0);
        BorcherdsCartanDatum {
            vertices: q.vertices().to_vec(),
            matrix,
            loop_counts,
            arrow_counts,
            real_vertices: real.iter().map(|&i| q.vertex_name(i).to_string()).collect(),
            imaginary_vertices: imag.iter().map(|&i| q.vertex_name(i).to_string()).collect(),
            edge_index,
        }
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.loop_counts[i] == 0
    }

    /// `(alpha_i | alpha_j)`; all `d_i = 1`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// `1 - a_ii / 2`, which equals the loop count.
    pub fn l(&self, i: usize) -> i64 {
        1 - self.matrix[i][i] / 2
    }
}
