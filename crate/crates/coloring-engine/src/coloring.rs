use graph_core::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

use crate::EngineError;

/// A proper-coloring candidate: an ordered list of color classes.
///
/// Construction only checks shape (classes non-empty and pairwise disjoint);
/// whether the classes are independent in a particular graph is a separate
/// question answered by [`verify_coloring`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson", into = "ColoringJson")]
pub struct Coloring {
    classes: Vec<VertexSet>,
}

impl Coloring {
    /// Builds a coloring from color classes. Every class must be non-empty
    /// and no vertex may appear in two classes.
    pub fn new(classes: Vec<VertexSet>) -> Result<Self, EngineError> {
        let mut seen = VertexSet::EMPTY;
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(EngineError::EmptyClass { index: i });
            }
            if !seen.intersection(*class).is_empty() {
                return Err(EngineError::OverlappingClasses { index: i });
            }
            seen = seen.union(*class);
        }
        Ok(Self { classes })
    }

    /// The coloring of the empty graph: zero classes.
    pub fn empty() -> Self {
        Self { classes: Vec::new() }
    }

    /// Number of colors used.
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    /// Union of all classes.
    pub fn support(&self) -> VertexSet {
        self.classes
            .iter()
            .fold(VertexSet::EMPTY, |acc, c| acc.union(*c))
    }

    /// Color assigned to `label`, if any.
    pub fn color_of(&self, label: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(label))
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    k: usize,
    classes: Vec<VertexSet>,
}

impl From<Coloring> for ColoringJson {
    fn from(c: Coloring) -> Self {
        Self { k: c.classes.len(), classes: c.classes }
    }
}

impl TryFrom<ColoringJson> for Coloring {
    type Error = String;

    fn try_from(j: ColoringJson) -> Result<Self, String> {
        if j.k != j.classes.len() {
            return Err(format!(
                "color count {} does not match the {} listed classes",
                j.k,
                j.classes.len()
            ));
        }
        Coloring::new(j.classes).map_err(|e| e.to_string())
    }
}

/// Checks that `coloring` is a proper coloring of `g`: the classes partition
/// the vertex set exactly and every class is independent.
pub fn verify_coloring(g: &Graph, coloring: &Coloring) -> bool {
    let mut seen = VertexSet::EMPTY;
    for class in coloring.classes() {
        if class.is_empty() || !seen.intersection(*class).is_empty() {
            return false;
        }
        if !class.is_subset_of(g.vertex_set()) {
            return false;
        }
        match g.is_independent(*class) {
            Ok(true) => {}
            _ => return false,
        }
        seen = seen.union(*class);
    }
    seen == g.vertex_set()
}

/// Completes a partial coloring pessimistically: keeps the inherited classes
/// and gives every vertex of the remaining subgraph its own color. The result
/// is always proper for the original graph, so it serves as an initial
/// incumbent for branch-and-bound.
pub fn worst_case_completion(
    inherited: &[VertexSet],
    remainder: &Graph,
) -> Result<Coloring, EngineError> {
    let mut classes = Vec::with_capacity(inherited.len() + remainder.n());
    classes.extend_from_slice(inherited);
    for label in remainder.labels() {
        classes.push(VertexSet::EMPTY.with(*label));
    }
    Coloring::new(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::Graph;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_overlap_and_empty_classes() {
        let a = VertexSet::from_labels([0, 2]);
        let b = VertexSet::from_labels([1, 2]);
        assert!(matches!(
            Coloring::new(vec![a, b]),
            Err(EngineError::OverlappingClasses { index: 1 })
        ));
        assert!(matches!(
            Coloring::new(vec![a, VertexSet::EMPTY]),
            Err(EngineError::EmptyClass { index: 1 })
        ));
    }

    #[test]
    fn verify_demands_exact_partition_into_independent_sets() {
        let g = path3();
        let ok = Coloring::new(vec![
            VertexSet::from_labels([0, 2]),
            VertexSet::from_labels([1]),
        ])
        .unwrap();
        assert!(verify_coloring(&g, &ok));

        // Missing vertex 2.
        let partial = Coloring::new(vec![
            VertexSet::from_labels([0]),
            VertexSet::from_labels([1]),
        ])
        .unwrap();
        assert!(!verify_coloring(&g, &partial));

        // Class {0,1} spans an edge.
        let improper = Coloring::new(vec![
            VertexSet::from_labels([0, 1]),
            VertexSet::from_labels([2]),
        ])
        .unwrap();
        assert!(!verify_coloring(&g, &improper));

        // Vertex outside the graph.
        let foreign = Coloring::new(vec![
            VertexSet::from_labels([0, 2]),
            VertexSet::from_labels([1, 5]),
        ])
        .unwrap();
        assert!(!verify_coloring(&g, &foreign));
    }

    #[test]
    fn worst_case_completion_colors_each_leftover_vertex_alone() {
        let g = path3();
        let inherited = vec![VertexSet::from_labels([7])];
        let c = worst_case_completion(&inherited, &g).unwrap();
        assert_eq!(c.k(), 4);
        assert_eq!(c.color_of(7), Some(0));
        assert_eq!(c.color_of(0), Some(1));
        assert_eq!(c.color_of(2), Some(3));

        // Inherited classes colliding with the remainder are rejected.
        let clash = vec![VertexSet::from_labels([1])];
        assert!(worst_case_completion(&clash, &g).is_err());
    }

    #[test]
    fn json_shape_is_k_plus_classes() {
        let c = Coloring::new(vec![
            VertexSet::from_labels([0, 2]),
            VertexSet::from_labels([1]),
        ])
        .unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"k":2,"classes":[[0,2],[1]]}"#);
        let back: Coloring = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Coloring>(r#"{"k":1,"classes":[[0],[0]]}"#).is_err());
        assert!(serde_json::from_str::<Coloring>(r#"{"k":3,"classes":[[0]]}"#).is_err());
    }
}
