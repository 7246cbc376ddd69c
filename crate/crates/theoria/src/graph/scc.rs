//! Strongly connected components and the condensation graph.

use std::collections::BTreeSet;

use super::ImplicationGraph;

/// The condensation of a graph: its strongly connected components (each a
/// sorted list of nodes, components ordered by their smallest node) and the
/// edges between distinct components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    pub components: Vec<Vec<usize>>,
    pub edges: BTreeSet<(usize, usize)>,
    component_of: Vec<usize>,
}

impl Condensation {
    /// The index of the component containing `node`.
    pub fn component_of(&self, node: usize) -> usize {
        self.component_of[node]
    }

    pub fn is_acyclic(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }
}

/// Computes the condensation of an implication graph via Tarjan's
/// algorithm (iterative, so deep graphs cannot overflow the stack).
pub fn condensation(graph: &ImplicationGraph) -> Condensation {
    let n = graph.node_count();
    let succ: Vec<Vec<usize>> = {
        let mut s = vec![Vec::new(); n];
        for (u, v) in graph.edges() {
            s[u].push(v);
        }
        s
    };

    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut raw_components: Vec<Vec<usize>> = Vec::new();

    // Explicit DFS frames: (node, position in its successor list).
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        loop {
            let Some(&(node, pos)) = frames.last() else {
                break;
            };
            if pos < succ[node].len() {
                let next = succ[node][pos];
                frames.last_mut().expect("frame exists").1 += 1;
                if index[next] == UNSET {
                    index[next] = next_index;
                    low[next] = next_index;
                    next_index += 1;
                    stack.push(next);
                    on_stack[next] = true;
                    frames.push((next, 0));
                } else if on_stack[next] {
                    low[node] = low[node].min(index[next]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[node]);
                }
                if low[node] == index[node] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("root still on stack");
                        on_stack[w] = false;
                        component.push(w);
                        if w == node {
                            break;
                        }
                    }
                    component.sort_unstable();
                    raw_components.push(component);
                }
            }
        }
    }

    // Order components by smallest node for a stable, readable numbering.
    raw_components.sort_by_key(|c| c[0]);
    let mut component_of = vec![0usize; n];
    for (ci, component) in raw_components.iter().enumerate() {
        for &node in component {
            component_of[node] = ci;
        }
    }
    let mut edges = BTreeSet::new();
    for (u, v) in graph.edges() {
        let (cu, cv) = (component_of[u], component_of[v]);
        if cu != cv {
            edges.insert((cu, cv));
        }
    }
    Condensation {
        components: raw_components,
        edges,
        component_of,
    }
}
