//! Transitive reduction of implication graphs.
//!
//! For an acyclic graph the reduction is unique: drop every edge that a
//! longer path re-derives, i.e. binarize `A - A * closure(A)`. A cyclic
//! graph has no unique reduction, so we fix one deterministically: shrink
//! each strongly connected component to a point, reduce the resulting DAG,
//! blow each multi-node component back up as a single cycle over its nodes
//! in ascending index order, and re-attach every surviving inter-component
//! edge at the smallest-index node of each endpoint. The result is finally
//! unioned with its own contrapositive mirror, which keeps the closure
//! intact while restoring the mirror symmetry the input graphs carry.

use std::collections::BTreeSet;

use super::scc::condensation;
use super::{matrix_pipeline, ImplicationGraph, Matrix};

/// A graph with the same transitive closure as `graph` and no edge that its
/// other edges already derive (for acyclic inputs, the unique minimum).
pub fn transitive_reduction(graph: &ImplicationGraph) -> ImplicationGraph {
    let parts = condensation(graph);
    if parts.is_acyclic() {
        let kept = matrix_pipeline(graph).reduction;
        return graph.with_edges(kept.positive_entries().into_iter().collect());
    }

    // Reduce the condensation DAG with the same matrix recipe.
    let k = parts.components.len();
    let dag = Matrix::from_edges(k, parts.edges.iter().copied());
    let closed = dag.floyd_warshall_closure();
    let kept = dag.sub(&dag.mul(&closed)).binarize();

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    // Each non-trivial component becomes one cycle through its nodes in
    // ascending order.
    for component in &parts.components {
        if component.len() < 2 {
            continue;
        }
        for pair in component.windows(2) {
            edges.insert((pair[0], pair[1]));
        }
        edges.insert((component[component.len() - 1], component[0]));
    }
    // Surviving DAG edges re-attach at the smallest node of each side.
    for (ci, cj) in kept.positive_entries() {
        edges.insert((parts.components[ci][0], parts.components[cj][0]));
    }
    // Union with the mirror image.
    let mirrored: Vec<(usize, usize)> = edges.iter().map(|&e| graph.mirror_edge(e)).collect();
    edges.extend(mirrored);

    graph.with_edges(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        as_implication_theory, build_graph, transitive_closure, ClosureMethod,
    };
    use crate::lang::{Formula, Language};

    fn graph_of(names: &[&str], arrows: &[(usize, bool, usize, bool)]) -> ImplicationGraph {
        let (_, atoms) = Language::propositional(names);
        let lit = |i: usize, positive: bool| {
            let atom = Formula::Atom(atoms[i].clone());
            if positive {
                atom
            } else {
                atom.not()
            }
        };
        let theory: Vec<Formula> = arrows
            .iter()
            .map(|&(i, si, j, sj)| lit(i, si).implies(lit(j, sj)))
            .collect();
        build_graph(&as_implication_theory(&theory).unwrap())
    }

    fn closure_edges(g: &ImplicationGraph) -> BTreeSet<(usize, usize)> {
        transitive_closure(g, ClosureMethod::FloydWarshall)
            .edges()
            .collect()
    }

    #[test]
    fn acyclic_reduction_removes_shortcut_edges() {
        // P -> Q, Q -> R, and the redundant shortcut P -> R.
        let g = graph_of(
            &["P", "Q", "R"],
            &[(0, true, 1, true), (1, true, 2, true), (0, true, 2, true)],
        );
        let reduced = transitive_reduction(&g);
        // Nodes: P=0 Q=1 R=2, !P=3 !Q=4 !R=5.
        let expected = [(0, 1), (1, 2), (4, 3), (5, 4)];
        let got: BTreeSet<_> = reduced.edges().collect();
        assert_eq!(got, expected.into_iter().collect());
        assert_eq!(closure_edges(&reduced), closure_edges(&g));
    }

    #[test]
    fn two_literal_cycle_survives_reduction_unchanged() {
        // P <-> Q as two implications: a two-node cycle and its mirror.
        let g = graph_of(&["P", "Q"], &[(0, true, 1, true), (1, true, 0, true)]);
        let reduced = transitive_reduction(&g);
        let got: BTreeSet<_> = reduced.edges().collect();
        let expected = [(0, 1), (1, 0), (2, 3), (3, 2)];
        assert_eq!(got, expected.into_iter().collect());
        assert_eq!(closure_edges(&reduced), closure_edges(&g));
    }

    #[test]
    fn cycle_with_chords_shrinks_to_one_loop_per_component() {
        // A 3-cycle P -> Q -> R -> P carrying every shortcut chord.
        let g = graph_of(
            &["P", "Q", "R"],
            &[
                (0, true, 1, true),
                (1, true, 2, true),
                (2, true, 0, true),
                (0, true, 2, true),
                (1, true, 0, true),
                (2, true, 1, true),
            ],
        );
        assert_eq!(g.edge_count(), 12);
        let reduced = transitive_reduction(&g);
        assert_eq!(closure_edges(&reduced), closure_edges(&g));
        assert!(reduced.is_mirror_symmetric());
        // One ascending cycle over {0,1,2}, one over {3,4,5}, plus the
        // mirror of each: the descending cycles. Chords are gone.
        let got: BTreeSet<_> = reduced.edges().collect();
        let expected = [
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (1, 0),
            (2, 1),
            (0, 2),
            (4, 3),
            (5, 4),
            (3, 5),
        ];
        assert_eq!(got, expected.into_iter().collect());
    }

    #[test]
    fn inter_component_edges_reattach_at_smallest_nodes() {
        // A cycle {P, Q} feeding R: the rebuilt graph must keep R reachable.
        let g = graph_of(
            &["P", "Q", "R"],
            &[
                (0, true, 1, true),
                (1, true, 0, true),
                (0, true, 2, true),
                (1, true, 2, true),
            ],
        );
        let reduced = transitive_reduction(&g);
        assert_eq!(closure_edges(&reduced), closure_edges(&g));
        assert!(reduced.is_mirror_symmetric());
        // The two arrows into R collapse to one from the component's
        // smallest node (P=0), plus its mirror !R=5 -> !P=3.
        assert!(reduced.has_edge(0, 2));
        assert!(!reduced.has_edge(1, 2));
        assert!(reduced.has_edge(5, 3));
    }

    #[test]
    fn reduction_of_a_single_edge_is_the_graph_itself() {
        let g = graph_of(&["P", "Q"], &[(0, true, 1, true)]);
        let reduced = transitive_reduction(&g);
        let got: BTreeSet<_> = reduced.edges().collect();
        assert_eq!(got, g.edges().collect());
    }

    #[test]
    fn reduction_keeps_origin_records_of_surviving_edges() {
        let g = graph_of(
            &["P", "Q", "R"],
            &[(0, true, 1, true), (1, true, 2, true), (0, true, 2, true)],
        );
        let reduced = transitive_reduction(&g);
        assert_eq!(
            reduced.origins((0, 1)).unwrap().iter().copied().collect::<Vec<_>>(),
            vec![0]
        );
        assert!(reduced.origins((0, 2)).is_none());
    }
}
