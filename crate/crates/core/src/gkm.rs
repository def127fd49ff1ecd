//! The labeled moment graph attached to a Hessenberg function.
//!
//! Vertices are all of `S_n` in lexicographic order. For each vertex `w` and
//! each position pair `j < i <= h(j)` there is an edge from `w` to the
//! permutation obtained by exchanging the entries at positions `i` and `j`.
//! Each edge carries the linear label `t_{w(i)} - t_{w(j)}`, computed from
//! its lexicographically smaller endpoint; a vertex-indexed family of
//! polynomials is admissible when every edge divides the difference of its
//! endpoint values.

use crate::combinatorics::{self, HessenbergFunction, Permutation, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::symbolic::{parse_polynomial, Polynomial};
use serde::{Deserialize, Serialize};

/// One undirected edge, stored once with `w < v` in vertex-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Index of the lexicographically smaller endpoint.
    pub w: usize,
    /// Index of the larger endpoint.
    pub v: usize,
    /// The defining position pair `(j, i)` with `j < i <= h(j)`.
    pub positions: (usize, usize),
    /// `t_{w(i)} - t_{w(j)}`, from the smaller endpoint's perspective.
    pub label: Polynomial,
}

impl Edge {
    /// The label in its natural orientation, e.g. `"t3-t1"`. This is the
    /// difference-of-variables form used in exports; parsing it recovers
    /// exactly `self.label`.
    pub fn label_text(&self, vertices: &[Permutation]) -> String {
        let w = &vertices[self.w];
        let (j, i) = self.positions;
        format!("t{}-t{}", w.apply(i), w.apply(j))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    h: HessenbergFunction,
    vertices: Vec<Permutation>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

/// Builds the moment graph of `h`, refusing `n` beyond `cap`.
pub fn build_graph_capped(h: &HessenbergFunction, cap: usize) -> Result<LabeledGraph> {
    let n = h.n();
    let vertices = combinatorics::enumerate_group_capped(n, cap)?;
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|j| (j + 1..=h.value(j)).map(move |i| (j, i)))
        .collect();
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (wi, w) in vertices.iter().enumerate() {
        for &(j, i) in &pairs {
            let v = w.swap_right(i, j);
            let vi = v.lex_rank();
            if wi < vi {
                let label = Polynomial::var_difference(n, w.apply(i), w.apply(j))?;
                let idx = edges.len();
                edges.push(Edge {
                    w: wi,
                    v: vi,
                    positions: (j, i),
                    label,
                });
                adjacency[wi].push(idx);
                adjacency[vi].push(idx);
            }
        }
    }
    Ok(LabeledGraph {
        h: h.clone(),
        vertices,
        edges,
        adjacency,
    })
}

/// `build_graph_capped` with the default cap of 8.
pub fn build_graph(h: &HessenbergFunction) -> Result<LabeledGraph> {
    build_graph_capped(h, DEFAULT_CAP)
}

impl LabeledGraph {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn hessenberg(&self) -> &HessenbergFunction {
        &self.h
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge indices incident to the given vertex.
    pub fn incident_edges(&self, vertex: usize) -> &[usize] {
        &self.adjacency[vertex]
    }

    /// Index of a permutation in the vertex list.
    pub fn vertex_index(&self, w: &Permutation) -> Result<usize> {
        if w.n() != self.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: w.n(),
            });
        }
        Ok(w.lex_rank())
    }

    /// Connected components as sorted vertex-index lists, ordered by their
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for e in &self.edges {
            let a = find(&mut parent, e.w);
            let b = find(&mut parent, e.v);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for v in 0..self.vertices.len() {
            let root = find(&mut parent, v);
            buckets.entry(root).or_default().push(v);
        }
        buckets.into_values().collect()
    }

    /// Graphviz DOT form: every vertex declared, then every edge with its
    /// label, all in canonical order.
    pub fn export_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("graph moment_graph {\n");
        out.push_str(&format!("  // h = {}\n", self.h));
        for w in &self.vertices {
            out.push_str(&format!("  \"{w}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.vertices[e.w],
                self.vertices[e.v],
                e.label_text(&self.vertices)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// JSON document with vertices and labeled edges in canonical order.
    pub fn export_json(&self) -> String {
        let doc = GraphDoc {
            n: self.n(),
            h: self.h.values().to_vec(),
            vertices: self.vertices.iter().map(|w| w.to_string()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    w: self.vertices[e.w].to_string(),
                    v: self.vertices[e.v].to_string(),
                    transposition: [e.positions.0, e.positions.1],
                    label: e.label_text(&self.vertices),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph document serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    h: Vec<usize>,
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    w: String,
    v: String,
    transposition: [usize; 2],
    label: String,
}

/// Parses a document produced by `export_json` back into a graph.
pub fn parse_graph_json(text: &str) -> Result<LabeledGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        message: format!("graph document: {e}"),
    })?;
    let h = HessenbergFunction::from_values(doc.h)?;
    let n = h.n();
    let vertices: Vec<Permutation> = doc
        .vertices
        .iter()
        .map(|s| s.parse::<Permutation>())
        .collect::<Result<_>>()?;
    let mut adjacency = vec![Vec::new(); vertices.len()];
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (idx, e) in doc.edges.iter().enumerate() {
        let w: Permutation = e.w.parse()?;
        let v: Permutation = e.v.parse()?;
        let wi = w.lex_rank();
        let vi = v.lex_rank();
        if vertices.get(wi) != Some(&w) || vertices.get(vi) != Some(&v) {
            return Err(Error::Parse {
                message: format!("edge {idx} references vertices outside the list"),
            });
        }
        edges.push(Edge {
            w: wi,
            v: vi,
            positions: (e.transposition[0], e.transposition[1]),
            label: parse_polynomial(n, &e.label)?,
        });
        adjacency[wi].push(idx);
        adjacency[vi].push(idx);
    }
    Ok(LabeledGraph {
        h,
        vertices,
        edges,
        adjacency,
    })
}

/// Checks the edge congruences for a vertex-indexed family of values:
/// for every edge, `t_{w(i)} - t_{w(j)}` must divide `f(v) - f(w)`.
pub fn check_gkm<F>(graph: &LabeledGraph, f: F) -> Result<bool>
where
    F: Fn(usize) -> Polynomial,
{
    Ok(first_violation(graph, f)?.is_none())
}

/// Like `check_gkm` but reports the index of the first failing edge.
pub fn first_violation<F>(graph: &LabeledGraph, f: F) -> Result<Option<usize>>
where
    F: Fn(usize) -> Polynomial,
{
    for (idx, e) in graph.edges.iter().enumerate() {
        let w = &graph.vertices[e.w];
        let (j, i) = e.positions;
        let diff = f(e.v).sub(&f(e.w))?;
        if !diff.divisible_by_linear(w.apply(i), w.apply(j))? {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(values: &[usize]) -> HessenbergFunction {
        HessenbergFunction::from_values(values.to_vec()).unwrap()
    }

    #[test]
    fn edge_counts_match_the_pair_count() {
        // |E| = n! * sum_j (h(j) - j) / 2.
        for n in 1..=5 {
            for f in combinatorics::enumerate_hessenberg(n) {
                let g = build_graph(&f).unwrap();
                let pairs: usize = (1..=n).map(|j| f.value(j) - j).sum();
                assert_eq!(
                    g.edges().len(),
                    combinatorics::factorial(n) as usize * pairs / 2,
                    "h = {f}"
                );
                // Every vertex sees each admissible pair exactly once.
                for v in 0..g.vertices().len() {
                    assert_eq!(g.incident_edges(v).len(), pairs);
                }
            }
        }
    }

    #[test]
    fn hexagon_and_friends() {
        assert_eq!(build_graph(&h(&[2, 3, 3])).unwrap().edges().len(), 6);
        assert_eq!(build_graph(&h(&[3, 3, 3])).unwrap().edges().len(), 9);
        assert_eq!(build_graph(&h(&[1, 2, 3])).unwrap().edges().len(), 0);
    }

    #[test]
    fn labels_are_skew_under_endpoint_swap() {
        let g = build_graph(&h(&[3, 3, 4, 5, 5])).unwrap();
        for e in g.edges() {
            let w = &g.vertices()[e.w];
            let v = &g.vertices()[e.v];
            let (j, i) = e.positions;
            assert_eq!(v, &w.swap_right(i, j));
            let from_v = Polynomial::var_difference(5, v.apply(i), v.apply(j)).unwrap();
            assert_eq!(from_v, e.label.neg());
        }
    }

    #[test]
    fn component_structure() {
        assert_eq!(build_graph(&h(&[1, 2, 3])).unwrap().connected_components().len(), 6);
        assert_eq!(build_graph(&h(&[2, 3, 3])).unwrap().connected_components().len(), 1);
        // h(1) = 1 splits by the first entry: three components of size 2.
        let comps = build_graph(&h(&[1, 3, 3])).unwrap().connected_components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn connectivity_criterion() {
        for n in 1..=5 {
            for f in combinatorics::enumerate_hessenberg(n) {
                let g = build_graph(&f).unwrap();
                assert_eq!(
                    g.connected_components().len() == 1,
                    f.is_connected(),
                    "h = {f}"
                );
            }
        }
    }

    #[test]
    fn first_coordinate_square_is_admissible() {
        let g = build_graph(&h(&[2, 3, 3])).unwrap();
        let values: Vec<Polynomial> = g
            .vertices()
            .iter()
            .map(|w| {
                let x = Polynomial::var(3, w.apply(1)).unwrap();
                x.mul(&x).unwrap()
            })
            .collect();
        assert!(check_gkm(&g, |i| values[i].clone()).unwrap());

        // Perturbing a single vertex by t1^2 breaks a congruence.
        let mut broken = values.clone();
        let t1 = Polynomial::var(3, 1).unwrap();
        broken[0] = broken[0].add(&t1.mul(&t1).unwrap()).unwrap();
        assert!(!check_gkm(&g, |i| broken[i].clone()).unwrap());
        assert!(first_violation(&g, |i| broken[i].clone())
            .unwrap()
            .is_some());
    }

    #[test]
    fn json_round_trip() {
        for values in [&[2, 3, 3][..], &[3, 3, 3][..], &[1, 2, 3][..]] {
            let g = build_graph(&h(values)).unwrap();
            let text = g.export_json();
            assert_eq!(parse_graph_json(&text).unwrap(), g);
            // Deterministic: same input, same bytes.
            assert_eq!(g.export_json(), text);
        }
    }

    #[test]
    fn dot_export_shape() {
        let g = build_graph(&h(&[2, 3, 3])).unwrap();
        let dot = g.export_dot();
        assert!(dot.starts_with("graph moment_graph {"));
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("\"123\" -- \"213\" [label=\"t2-t1\"];"));
        // Edgeless graphs still list every vertex.
        let empty = build_graph(&h(&[1, 2, 3])).unwrap().export_dot();
        assert_eq!(empty.matches(";\n").count(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let full9 = HessenbergFunction::from_values(vec![9; 9]).unwrap();
        assert_eq!(
            build_graph(&full9).unwrap_err(),
            Error::CapExceeded { n: 9, cap: 8 }
        );
    }
}
