use std::collections::HashMap;

use crate::error::GraphError;
use crate::linalg::IntMatrix;

/// Finite directed multigraph; loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edge_ids: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source, target)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.clone()));
            }
        }
        let mut edge_ids = Vec::new();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let mut edge_index = HashMap::new();
        for (id, s, t) in edges {
            if vertex_index.contains_key(&id) || edge_index.contains_key(&id) {
                return Err(GraphError::DuplicateId(id));
            }
            let lookup = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex {
                        edge: id.clone(),
                        vertex: v.clone(),
                    })
            };
            src.push(lookup(&s)?);
            dst.push(lookup(&t)?);
            edge_index.insert(id.clone(), edge_ids.len());
            edge_ids.push(id);
        }
        Ok(Self {
            vertices,
            edge_ids,
            src,
            dst,
            vertex_index,
            edge_index,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Self::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|&(e, s, t)| (e.to_string(), s.to_string(), t.to_string())),
        )
    }

    /// One vertex `v` with `n` loops `e1..en`.
    pub fn bouquet(n: usize) -> Self {
        let edges = (1..=n).map(|i| (format!("e{i}"), "v".to_string(), "v".to_string()));
        Self::new(["v"], edges).expect("bouquet is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    pub fn source(&self, edge: usize) -> usize {
        self.src[edge]
    }

    pub fn target(&self, edge: usize) -> usize {
        self.dst[edge]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// `A[v][w]` = number of edges `v → w`.
    pub fn adjacency(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut counts = vec![0i64; n * n];
        for e in 0..self.edge_count() {
            counts[self.src[e] * n + self.dst[e]] += 1;
        }
        IntMatrix::from_i64(n, n, &counts)
    }

    /// First vertex lacking an incoming or outgoing edge, with which one is missing.
    pub fn inessential_vertex(&self) -> Option<(usize, &'static str)> {
        let n = self.vertex_count();
        let mut has_out = vec![false; n];
        let mut has_in = vec![false; n];
        for e in 0..self.edge_count() {
            has_out[self.src[e]] = true;
            has_in[self.dst[e]] = true;
        }
        (0..n).find_map(|v| {
            if !has_in[v] {
                Some((v, "incoming"))
            } else if !has_out[v] {
                Some((v, "outgoing"))
            } else {
                None
            }
        })
    }

    pub fn is_essential(&self) -> bool {
        self.inessential_vertex().is_none()
    }

    /// Edges leaving `v`, in edge order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_count()).filter(move |&e| self.src[e] == v)
    }

    /// Same graph with ids rewritten by the given maps.
    pub fn relabel(&self, vertex: impl Fn(&str) -> String, edge: impl Fn(&str) -> String) -> Graph {
        let vertices: Vec<String> = self.vertices.iter().map(|v| vertex(v)).collect();
        let edges = (0..self.edge_count()).map(|e| {
            (
                edge(&self.edge_ids[e]),
                vertices[self.src[e]].clone(),
                vertices[self.dst[e]].clone(),
            )
        });
        Graph::new(vertices.clone(), edges).expect("relabelling preserves structure")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_adjacency() {
        let g = Graph::from_strs(
            &["a", "b"],
            &[("aa", "a", "a"), ("ab", "a", "b"), ("ba", "b", "a")],
        )
        .unwrap();
        assert_eq!(
            g.adjacency(),
            IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]])
        );
        assert!(g.is_essential());
    }

    #[test]
    fn rejects_bad_ids() {
        assert_eq!(
            Graph::from_strs(&["a", "a"], &[]).unwrap_err(),
            GraphError::DuplicateId("a".into())
        );
        assert!(matches!(
            Graph::from_strs(&["a"], &[("e", "a", "b")]).unwrap_err(),
            GraphError::UnknownVertex { .. }
        ));
    }

    #[test]
    fn sink_is_inessential() {
        let g = Graph::from_strs(&["a", "b"], &[("aa", "a", "a"), ("ab", "a", "b")]).unwrap();
        assert_eq!(g.inessential_vertex(), Some((1, "outgoing")));
    }
}
