//! Exact chromatic number by iterative-deepening backtracking. Intended as a
//! ground-truth oracle for small instances, not as a competitive solver.

use graph_core::{Graph, VertexSet};

use crate::{Coloring, EngineError};

/// Largest instance the exact solver accepts.
pub const EXACT_MAX_VERTICES: usize = 25;

/// Vertex order for the backtracking search: degree descending, label
/// ascending on ties. High-degree vertices fail fast.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = g.labels().to_vec();
    order.sort_by_key(|&l| (std::cmp::Reverse(g.degree(l).unwrap()), l));
    order
}

/// First-fit coloring along `order`; returns the classes found.
fn greedy_first_fit(g: &Graph, order: &[usize]) -> Vec<VertexSet> {
    let mut classes: Vec<VertexSet> = Vec::new();
    for &label in order {
        let nbrs = g.neighbors(label).unwrap().bits();
        match classes
            .iter_mut()
            .find(|c| c.bits() & nbrs == 0)
        {
            Some(class) => *class = class.with(label),
            None => classes.push(VertexSet::EMPTY.with(label)),
        }
    }
    classes
}

/// Tries to color the vertices in `order` with at most `k` colors.
/// `assignment[i]` is the class index of `order[i]` on success.
///
/// Symmetry breaking: a vertex may only open one new color beyond those
/// already in use, so each partition is visited once per class ordering.
fn try_k_coloring(order: &[usize], nbr_masks: &[u64], k: usize) -> Option<Vec<usize>> {
    fn recurse(
        idx: usize,
        used: usize,
        k: usize,
        nbr_masks: &[u64],
        class_masks: &mut Vec<u64>,
        assignment: &mut Vec<usize>,
    ) -> bool {
        if idx == nbr_masks.len() {
            return true;
        }
        let limit = (used + 1).min(k);
        for color in 0..limit {
            if class_masks[color] & nbr_masks[idx] != 0 {
                continue;
            }
            class_masks[color] |= 1u64 << idx;
            assignment.push(color);
            let next_used = used.max(color + 1);
            if recurse(idx + 1, next_used, k, nbr_masks, class_masks, assignment) {
                return true;
            }
            assignment.pop();
            class_masks[color] &= !(1u64 << idx);
        }
        false
    }

    let mut class_masks = vec![0u64; k];
    let mut assignment = Vec::with_capacity(order.len());
    if recurse(0, 0, k, nbr_masks, &mut class_masks, &mut assignment) {
        Some(assignment)
    } else {
        None
    }
}

/// Neighbor masks re-indexed into positions along `order`, so conflict checks
/// are single `u64` ANDs regardless of the original label values.
fn masks_in_order(g: &Graph, order: &[usize]) -> Vec<u64> {
    let mut pos = [usize::MAX; graph_core::MAX_VERTICES];
    for (i, &l) in order.iter().enumerate() {
        pos[l] = i;
    }
    order
        .iter()
        .map(|&l| {
            let mut m = 0u64;
            let mut nbrs = g.neighbors(l).unwrap().bits();
            while nbrs != 0 {
                let b = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                m |= 1u64 << pos[b];
            }
            m
        })
        .collect()
}

fn assignment_to_coloring(order: &[usize], assignment: &[usize], k: usize) -> Coloring {
    let mut classes = vec![VertexSet::EMPTY; k];
    for (i, &color) in assignment.iter().enumerate() {
        classes[color] = classes[color].with(order[i]);
    }
    classes.retain(|c| !c.is_empty());
    Coloring::new(classes).expect("backtracking produces disjoint classes")
}

/// Computes the chromatic number and one optimal coloring.
///
/// `lb_hint` may raise the first color count tried; it must be a valid lower
/// bound or the result is wrong. `ub_hint` is advisory only — the search
/// always confirms feasibility by constructing a witness.
pub fn exact_chromatic(
    g: &Graph,
    lb_hint: usize,
    ub_hint: usize,
) -> Result<(usize, Coloring), EngineError> {
    let _ = ub_hint;
    if g.n() > EXACT_MAX_VERTICES {
        return Err(EngineError::TooLarge { n: g.n(), max: EXACT_MAX_VERTICES });
    }
    if g.n() == 0 {
        return Ok((0, Coloring::empty()));
    }

    let order = search_order(g);
    let greedy_classes = greedy_first_fit(g, &order);
    let greedy_ub = greedy_classes.len();
    let nbr_masks = masks_in_order(g, &order);

    let start = lb_hint.max(1);
    for k in start..greedy_ub {
        if let Some(assignment) = try_k_coloring(&order, &nbr_masks, k) {
            return Ok((k, assignment_to_coloring(&order, &assignment, k)));
        }
    }
    let witness = Coloring::new(greedy_classes)?;
    Ok((greedy_ub, witness))
}

/// Enumerates every optimal coloring of `g` (canonically, first-use color
/// order) and reports whether at least one of them contains a color class
/// that is a *maximal* independent set.
///
/// This is the structural fact that lets a branch-and-bound search restrict
/// its branching to maximal independent sets without losing optimality.
/// Exhaustive, so limited to 10 vertices.
pub fn optimal_coloring_has_maximal_class(g: &Graph) -> Result<bool, EngineError> {
    const MAX_N: usize = 10;
    if g.n() > MAX_N {
        return Err(EngineError::TooLarge { n: g.n(), max: MAX_N });
    }
    if g.n() == 0 {
        return Ok(true); // no classes to inspect, nothing to violate
    }

    let (chi, _) = exact_chromatic(g, 1, g.n())?;
    let order: Vec<usize> = g.labels().to_vec(); // label order keeps canon simple
    let nbr_masks = masks_in_order(g, &order);

    fn any_class_maximal(g: &Graph, order: &[usize], class_masks: &[u64]) -> bool {
        class_masks.iter().any(|&cm| {
            let mut set = VertexSet::EMPTY;
            let mut m = cm;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                set = set.with(order[i]);
            }
            g.is_maximal_independent(set).unwrap_or(false)
        })
    }

    fn recurse(
        idx: usize,
        used: usize,
        chi: usize,
        g: &Graph,
        order: &[usize],
        nbr_masks: &[u64],
        class_masks: &mut Vec<u64>,
    ) -> bool {
        if idx == nbr_masks.len() {
            return used == chi && any_class_maximal(g, order, class_masks);
        }
        let limit = (used + 1).min(chi);
        for color in 0..limit {
            if class_masks[color] & nbr_masks[idx] != 0 {
                continue;
            }
            class_masks[color] |= 1u64 << idx;
            if recurse(idx + 1, used.max(color + 1), chi, g, order, nbr_masks, class_masks) {
                return true;
            }
            class_masks[color] &= !(1u64 << idx);
        }
        false
    }

    let mut class_masks = vec![0u64; chi];
    Ok(recurse(0, 0, chi, g, &order, &nbr_masks, &mut class_masks))
}
