use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{GraphError, VertexSet};

/// Hard cap on the label universe: one bit per label in a `u64`.
pub const MAX_VERTICES: usize = 64;

const NO_LOCAL: u8 = u8::MAX;

/// An undirected simple graph whose vertices are labels into the root graph.
///
/// A root graph built by [`Graph::from_edges`] or [`unit_disk_graph`] has
/// labels `0..n`. Induced subgraphs produced by [`Graph::induced_remove`]
/// keep the surviving labels (and coordinates) unchanged, so a label means
/// the same vertex at every level of a subgraph chain and bitmask
/// fingerprints of different subgraphs never collide.
#[derive(Clone, PartialEq)]
pub struct Graph {
    /// Surviving labels, ascending.
    labels: Vec<usize>,
    /// `rows[i]` = neighbor mask (bits are labels) of `labels[i]`.
    rows: Vec<u64>,
    /// Union of `1 << label` over all vertices.
    vertex_mask: u64,
    /// Planar embedding, aligned with `labels`; present iff the root graph
    /// was built from points.
    coords: Option<Vec<[f64; 2]>>,
    /// label → index into `labels`/`rows` (`NO_LOCAL` = absent).
    label_to_local: [u8; MAX_VERTICES],
}

impl Graph {
    /// Builds a root graph on labels `0..n` from an edge list.
    /// Self-loops and out-of-range endpoints are rejected; duplicate edges
    /// collapse to one.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::build(n, edges, None)
    }

    /// As [`Graph::from_edges`], attaching one coordinate pair per vertex.
    pub fn from_edges_with_coords(
        n: usize,
        edges: &[(usize, usize)],
        coords: Vec<[f64; 2]>,
    ) -> Result<Self, GraphError> {
        if coords.len() != n {
            return Err(GraphError::CoordsLengthMismatch {
                expected: n,
                got: coords.len(),
            });
        }
        Self::build(n, edges, Some(coords))
    }

    fn build(
        n: usize,
        edges: &[(usize, usize)],
        coords: Option<Vec<[f64; 2]>>,
    ) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut rows = vec![0u64; n];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a, b));
            }
            if a >= n || b >= n {
                return Err(GraphError::EdgeOutOfRange(a, b, n));
            }
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        let labels: Vec<usize> = (0..n).collect();
        Ok(Self::from_parts(labels, rows, coords))
    }

    /// Assembles a graph from already-consistent parts (labels ascending,
    /// rows ⊆ vertex mask, no self-bits). Internal: callers guarantee the
    /// invariants, debug builds re-check them.
    fn from_parts(labels: Vec<usize>, rows: Vec<u64>, coords: Option<Vec<[f64; 2]>>) -> Self {
        debug_assert_eq!(labels.len(), rows.len());
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mut vertex_mask = 0u64;
        let mut label_to_local = [NO_LOCAL; MAX_VERTICES];
        for (i, &l) in labels.iter().enumerate() {
            debug_assert!(l < MAX_VERTICES);
            vertex_mask |= 1 << l;
            label_to_local[l] = i as u8;
        }
        for (i, &row) in rows.iter().enumerate() {
            debug_assert_eq!(row & !vertex_mask, 0, "row {i} points outside the graph");
            debug_assert_eq!(row & (1 << labels[i]), 0, "self-loop at {}", labels[i]);
        }
        Graph {
            labels,
            rows,
            vertex_mask,
            coords,
            label_to_local,
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Surviving labels in ascending order.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// All vertices as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_bits(self.vertex_mask)
    }

    /// Subgraph fingerprint: `Σ 2^label` over the surviving vertices.
    ///
    /// Because labels are stable under [`Graph::induced_remove`], two
    /// subgraphs of the same root have equal fingerprints iff they have the
    /// same vertex set — the map is injective by construction.
    pub fn fingerprint(&self) -> u64 {
        self.vertex_mask
    }

    /// Coordinates aligned with [`Graph::labels`], if the graph carries an
    /// embedding.
    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    fn local(&self, label: usize) -> Result<usize, GraphError> {
        if label < MAX_VERTICES && self.label_to_local[label] != NO_LOCAL {
            Ok(self.label_to_local[label] as usize)
        } else {
            Err(GraphError::UnknownLabel(label))
        }
    }

    /// Neighbor set of `label`.
    pub fn neighbors(&self, label: usize) -> Result<VertexSet, GraphError> {
        Ok(VertexSet::from_bits(self.rows[self.local(label)?]))
    }

    /// Degree of `label`.
    pub fn degree(&self, label: usize) -> Result<usize, GraphError> {
        Ok(self.rows[self.local(label)?].count_ones() as usize)
    }

    /// Degrees aligned with [`Graph::labels`].
    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// Largest degree, or 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> Result<bool, GraphError> {
        let ia = self.local(a)?;
        self.local(b)?;
        Ok(self.rows[ia] & (1 << b) != 0)
    }

    /// Edge list as label pairs `(a, b)` with `a < b`, lexicographically
    /// sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (i, &a) in self.labels.iter().enumerate() {
            let above = self.rows[i] & !((1u64 << a) | ((1u64 << a) - 1));
            for b in VertexSet::from_bits(above).iter() {
                out.push((a, b));
            }
        }
        out
    }

    /// True iff no two members of `s` are adjacent. Labels outside the graph
    /// are rejected.
    pub fn is_independent(&self, s: VertexSet) -> Result<bool, GraphError> {
        self.check_members(s)?;
        for l in s.iter() {
            if self.rows[self.label_to_local[l] as usize] & s.bits() != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `s` is independent and no vertex outside `s` can be added
    /// without breaking independence.
    pub fn is_maximal_independent(&self, s: VertexSet) -> Result<bool, GraphError> {
        if !self.is_independent(s)? {
            return Ok(false);
        }
        let outside = self.vertex_mask & !s.bits();
        for l in VertexSet::from_bits(outside).iter() {
            if self.rows[self.label_to_local[l] as usize] & s.bits() == 0 {
                return Ok(false); // l sees nothing in s, so s ∪ {l} is independent
            }
        }
        Ok(true)
    }

    fn check_members(&self, s: VertexSet) -> Result<(), GraphError> {
        let stray = s.bits() & !self.vertex_mask;
        if stray != 0 {
            return Err(GraphError::UnknownLabel(stray.trailing_zeros() as usize));
        }
        Ok(())
    }

    /// Induced subgraph on `vertices \ s`, preserving labels and coordinates.
    pub fn induced_remove(&self, s: VertexSet) -> Result<Graph, GraphError> {
        self.check_members(s)?;
        let keep = !s.bits();
        let mut labels = Vec::with_capacity(self.n() - s.len());
        let mut rows = Vec::with_capacity(labels.capacity());
        let mut coords = self.coords.as_ref().map(|_| Vec::with_capacity(labels.capacity()));
        for (i, &l) in self.labels.iter().enumerate() {
            if keep & (1 << l) != 0 {
                labels.push(l);
                rows.push(self.rows[i] & keep);
                if let (Some(dst), Some(src)) = (coords.as_mut(), self.coords.as_ref()) {
                    dst.push(src[i]);
                }
            }
        }
        Ok(Graph::from_parts(labels, rows, coords))
    }

    /// True iff the graph is connected (vacuously true for n ≤ 1).
    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let start = self.labels[0];
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for l in VertexSet::from_bits(frontier).iter() {
                next |= self.rows[self.label_to_local[l] as usize];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask
    }

    /// Checks that the edge set is exactly `{ (u, v) : dist(u, v) < radius }`
    /// over the stored coordinates. Errors when the graph has no embedding.
    pub fn check_udg_consistency(&self, radius: f64) -> Result<bool, GraphError> {
        let coords = self
            .coords
            .as_ref()
            .ok_or_else(|| GraphError::MalformedJson("graph has no coords".into()))?;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                let close = dist(coords[i], coords[j]) < radius;
                let edge = self.rows[i] & (1 << self.labels[j]) != 0;
                if close != edge {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Dense 0/1 adjacency matrix in local vertex order (row-major, n×n).
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for (j, &l) in self.labels.iter().enumerate() {
                if self.rows[i] & (1 << l) != 0 {
                    a[i * n + j] = 1.0;
                }
            }
        }
        a
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::MalformedJson(e.to_string()))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, labels={:?})", self.n(), self.m(), self.labels)
    }
}

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

/// Builds the unit-disk graph of `points`: vertices `0..points.len()`, an
/// edge exactly when the Euclidean distance is *strictly* below `radius`
/// (ties at the radius are non-edges). Coincident points are rejected —
/// zero distance sits below any radius and would glue two vertices together.
pub fn unit_disk_graph(points: &[[f64; 2]], radius: f64) -> Result<Graph, GraphError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(GraphError::BadRadius(radius));
    }
    if points.len() > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(points.len()));
    }
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = dist(points[i], points[j]);
            if d == 0.0 {
                return Err(GraphError::DuplicatePoint(i, j));
            }
            if d < radius {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges_with_coords(points.len(), &edges, points.to_vec())
}

/// Wire format: `{"n", "edges", "coords"?, "labels"}` with edges as sorted
/// label pairs and coords/labels aligned.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    coords: Option<Vec<[f64; 2]>>,
    labels: Vec<usize>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let json = GraphJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            coords: self.coords.clone(),
            labels: self.labels.clone(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = GraphJson::deserialize(deserializer)?;
        Graph::try_from(json).map_err(D::Error::custom)
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(json: GraphJson) -> Result<Self, GraphError> {
        let GraphJson { n, edges, coords, labels } = json;
        if labels.len() != n {
            return Err(GraphError::MalformedJson(format!(
                "n = {n} but {} labels listed",
                labels.len()
            )));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GraphError::MalformedJson("labels must be strictly ascending".into()));
        }
        if let Some(&top) = labels.last() {
            if top >= MAX_VERTICES {
                return Err(GraphError::TooManyVertices(top + 1));
            }
        }
        if let Some(c) = &coords {
            if c.len() != n {
                return Err(GraphError::CoordsLengthMismatch { expected: n, got: c.len() });
            }
        }
        let mut label_to_local = [NO_LOCAL; MAX_VERTICES];
        for (i, &l) in labels.iter().enumerate() {
            label_to_local[l] = i as u8;
        }
        let mut rows = vec![0u64; n];
        for [a, b] in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a, b));
            }
            let (ia, ib) = (label_to_local.get(a).copied(), label_to_local.get(b).copied());
            match (ia, ib) {
                (Some(ia), Some(ib)) if ia != NO_LOCAL && ib != NO_LOCAL => {
                    rows[ia as usize] |= 1 << b;
                    rows[ib as usize] |= 1 << a;
                }
                _ => return Err(GraphError::MalformedJson(format!("edge [{a}, {b}] uses an unlisted label"))),
            }
        }
        Ok(Graph::from_parts(labels, rows, coords))
    }
}
