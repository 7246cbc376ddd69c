//! Implication graphs over signed literals.
//!
//! A theory whose formulas are all implications between literals (an atom
//! or a negated atom on each side) can be drawn as a directed graph with
//! one node per literal: atoms `0..n` and their negations `n..2n`. Every
//! implication contributes its edge *and* the contrapositive edge, so the
//! graph is always symmetric under the mirror `(u, v) -> (!v, !u)`.
//!
//! On that graph, transitive closure computes everything the theory
//! implies, and transitive reduction computes a smallest theory with the
//! same closure — the canonical form of the theory.

mod matrix;
mod reduction;
mod scc;

pub use matrix::Matrix;
pub use reduction::transitive_reduction;
pub use scc::{condensation, Condensation};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::clausal::{AtomTable, SignedAtom};
use crate::lang::Formula;

/// An implication between two literals, as signed atoms.
pub type SignedPair = (SignedAtom, SignedAtom);

/// Errors from graph construction and extraction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("formula #{index} is not an implication between literals: {formula}")]
    NotImplicational { index: usize, formula: String },
    #[error("graph is not closed under contraposition: edge {from} -> {to} lacks its mirror")]
    Asymmetric { from: String, to: String },
}

/// A theory reduced to literal implications: the interned atoms plus one
/// signed pair per formula.
#[derive(Debug, Clone)]
pub struct ImplicationTheory {
    pub table: AtomTable,
    pub pairs: Vec<SignedPair>,
}

/// Views a theory as literal implications. Every formula must have the
/// shape `L -> L'` with each side an atom or a singly negated atom; atoms
/// are interned in first-occurrence order, left side first.
pub fn as_implication_theory(theory: &[Formula]) -> Result<ImplicationTheory, GraphError> {
    fn literal(formula: &Formula, table: &mut AtomTable) -> Option<SignedAtom> {
        match formula {
            Formula::Atom(a) => Some(SignedAtom::positive(table.intern(a))),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(a) => Some(SignedAtom::negative(table.intern(a))),
                _ => None,
            },
            _ => None,
        }
    }

    let mut table = AtomTable::new();
    let mut pairs = Vec::with_capacity(theory.len());
    for (index, formula) in theory.iter().enumerate() {
        let reject = || GraphError::NotImplicational {
            index,
            formula: formula.to_string(),
        };
        let Formula::Implies(lhs, rhs) = formula else {
            return Err(reject());
        };
        let from = literal(lhs, &mut table).ok_or_else(reject)?;
        let to = literal(rhs, &mut table).ok_or_else(reject)?;
        pairs.push((from, to));
    }
    Ok(ImplicationTheory { table, pairs })
}

/// The implication graph: nodes `0..n` are the positive literals in atom
/// order, nodes `n..2n` their negations. Edges remember which hypotheses
/// put them there.
#[derive(Debug, Clone)]
pub struct ImplicationGraph {
    table: AtomTable,
    edges: BTreeSet<(usize, usize)>,
    origins: BTreeMap<(usize, usize), BTreeSet<usize>>,
}

impl ImplicationGraph {
    pub fn atom_count(&self) -> usize {
        self.table.len()
    }

    pub fn node_count(&self) -> usize {
        2 * self.table.len()
    }

    pub fn table(&self) -> &AtomTable {
        &self.table
    }

    /// The node for a literal's negation.
    pub fn negation(&self, node: usize) -> usize {
        let n = self.atom_count();
        if node < n {
            node + n
        } else {
            node - n
        }
    }

    /// The literal a node stands for.
    pub fn literal(&self, node: usize) -> SignedAtom {
        let n = self.atom_count();
        let id = self
            .table
            .id_at(node % n.max(1))
            .expect("node index within the table");
        if node < n {
            SignedAtom::positive(id)
        } else {
            SignedAtom::negative(id)
        }
    }

    /// The node a literal lives at.
    pub fn node(&self, literal: SignedAtom) -> usize {
        if literal.positive {
            literal.atom.index()
        } else {
            literal.atom.index() + self.atom_count()
        }
    }

    /// The literal's text, e.g. `OS > 5` or `!(SI = True)`.
    pub fn node_text(&self, node: usize) -> String {
        self.literal(node).display(&self.table)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// The hypotheses (by index) that contributed an edge; `None` for
    /// edges that exist only by derivation.
    pub fn origins(&self, edge: (usize, usize)) -> Option<&BTreeSet<usize>> {
        self.origins.get(&edge)
    }

    /// All hypothesis indices with at least one edge in the graph.
    pub fn origin_set(&self) -> BTreeSet<usize> {
        self.origins.values().flatten().copied().collect()
    }

    /// The contrapositive mirror of an edge: `(u, v) -> (!v, !u)`.
    pub fn mirror_edge(&self, edge: (usize, usize)) -> (usize, usize) {
        (self.negation(edge.1), self.negation(edge.0))
    }

    /// An edge whose mirror is missing, if any.
    pub fn missing_mirror(&self) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&e| !self.edges.contains(&self.mirror_edge(e)))
    }

    pub fn is_mirror_symmetric(&self) -> bool {
        self.missing_mirror().is_none()
    }

    pub fn adjacency(&self) -> Matrix {
        Matrix::from_edges(self.node_count(), self.edges())
    }

    /// A graph over the same literals with a different edge set, keeping
    /// the origin records of the edges that survive.
    pub fn with_edges(&self, edges: BTreeSet<(usize, usize)>) -> ImplicationGraph {
        let origins = self
            .origins
            .iter()
            .filter(|(edge, _)| edges.contains(edge))
            .map(|(edge, set)| (*edge, set.clone()))
            .collect();
        ImplicationGraph {
            table: self.table.clone(),
            edges,
            origins,
        }
    }
}

/// Builds the implication graph of a theory: each pair contributes its edge
/// and the contrapositive mirror. Pairs of the form `L -> L` are vacuous
/// and add nothing; `L -> !L` is a real (self-mirrored) edge.
pub fn build_graph(theory: &ImplicationTheory) -> ImplicationGraph {
    let mut graph = ImplicationGraph {
        table: theory.table.clone(),
        edges: BTreeSet::new(),
        origins: BTreeMap::new(),
    };
    for (index, &(from, to)) in theory.pairs.iter().enumerate() {
        if from == to {
            continue;
        }
        let edge = (graph.node(from), graph.node(to));
        let mirror = graph.mirror_edge(edge);
        for e in [edge, mirror] {
            graph.edges.insert(e);
            graph.origins.entry(e).or_default().insert(index);
        }
    }
    graph
}

/// How to compute reachability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMethod {
    /// Binarize the sum of the first `2n` powers of the adjacency matrix.
    MatrixPower,
    /// Floyd–Warshall boolean reachability.
    FloydWarshall,
}

/// The transitive closure: an edge wherever a path of length at least one
/// exists. Both methods produce the same graph.
pub fn transitive_closure(graph: &ImplicationGraph, method: ClosureMethod) -> ImplicationGraph {
    let adjacency = graph.adjacency();
    let closed = match method {
        ClosureMethod::MatrixPower => adjacency.power_sum(graph.node_count()).binarize(),
        ClosureMethod::FloydWarshall => adjacency.floyd_warshall_closure(),
    };
    graph.with_edges(closed.positive_entries().into_iter().collect())
}

/// Every matrix on the way from adjacency to transitive reduction. The
/// `reduction` entry is meaningful for acyclic graphs, where dropping the
/// edges that a two-step detour re-derives is exactly the minimum
/// equivalent graph.
#[derive(Debug, Clone)]
pub struct MatrixPipeline {
    /// The adjacency matrix `A`.
    pub adjacency: Matrix,
    /// The walk counts `A + A^2 + ... + A^(2n)`.
    pub power_sum: Matrix,
    /// The closure: `power_sum`, binarized.
    pub closure: Matrix,
    /// `A * closure` — walks made of one edge then a nonempty path.
    pub product: Matrix,
    /// `A - product`, binarized: the surviving (non-redundant) edges.
    pub reduction: Matrix,
}

pub fn matrix_pipeline(graph: &ImplicationGraph) -> MatrixPipeline {
    let adjacency = graph.adjacency();
    let power_sum = adjacency.power_sum(graph.node_count());
    let closure = power_sum.binarize();
    let product = adjacency.mul(&closure);
    let reduction = adjacency.sub(&product).binarize();
    MatrixPipeline {
        adjacency,
        power_sum,
        closure,
        product,
        reduction,
    }
}

/// One representative per contrapositive edge pair: the member with the
/// smaller source node (a self-mirrored edge represents itself). Input
/// order is ascending, so representatives come out ascending too.
fn canonical_pairs(
    graph: &ImplicationGraph,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut spoken_for: BTreeSet<(usize, usize)> = BTreeSet::new();
    for edge in edges {
        if spoken_for.contains(&edge) {
            continue;
        }
        spoken_for.insert(edge);
        spoken_for.insert(graph.mirror_edge(edge));
        out.push(edge);
    }
    out
}

fn literal_formula(graph: &ImplicationGraph, node: usize) -> Formula {
    let lit = graph.literal(node);
    let atom = Formula::Atom(graph.table().resolve(lit.atom).clone());
    if lit.positive {
        atom
    } else {
        atom.not()
    }
}

/// Reads a theory back off a graph: one implication per contrapositive
/// edge pair, using the canonical representative of each pair. Requires
/// the graph to be mirror-symmetric.
pub fn graph_to_theory(graph: &ImplicationGraph) -> Result<Vec<Formula>, GraphError> {
    if let Some((from, to)) = graph.missing_mirror() {
        return Err(GraphError::Asymmetric {
            from: graph.node_text(from),
            to: graph.node_text(to),
        });
    }
    Ok(canonical_pairs(graph, graph.edges())
        .into_iter()
        .map(|(u, v)| literal_formula(graph, u).implies(literal_formula(graph, v)))
        .collect())
}

/// Literals that refute themselves: nodes whose closure contains the edge
/// to their own negation, forcing the literal false in every model of the
/// theory. Expects the closure graph.
pub fn self_refuting_nodes(closure: &ImplicationGraph) -> Vec<usize> {
    (0..closure.node_count())
        .filter(|&u| closure.has_edge(u, closure.negation(u)))
        .collect()
}

/// A theory together with its closure and canonical (reduced) form.
#[derive(Debug, Clone)]
pub struct CanonicalSet {
    pub graph: ImplicationGraph,
    pub closure: ImplicationGraph,
    pub reduction: ImplicationGraph,
    /// Everything the theory implies, one formula per edge pair.
    pub closure_theory: Vec<Formula>,
    /// The canonical form: a smallest theory with the same closure.
    pub reduced_theory: Vec<Formula>,
    hypothesis_count: usize,
}

/// Computes the closure and the canonical reduced form of an implication
/// theory in one sweep.
pub fn canonical_set(theory: &[Formula], method: ClosureMethod) -> Result<CanonicalSet, GraphError> {
    let implications = as_implication_theory(theory)?;
    let graph = build_graph(&implications);
    let closure = transitive_closure(&graph, method);
    let reduction = transitive_reduction(&graph);
    let closure_theory = graph_to_theory(&closure)?;
    let reduced_theory = graph_to_theory(&reduction)?;
    Ok(CanonicalSet {
        graph,
        closure,
        reduction,
        closure_theory,
        reduced_theory,
        hypothesis_count: theory.len(),
    })
}

impl CanonicalSet {
    /// The implications the closure adds to the original graph, in
    /// canonical form.
    pub fn derived_theory(&self) -> Vec<Formula> {
        let fresh: Vec<(usize, usize)> = self
            .closure
            .edges()
            .filter(|&e| !self.graph.has_edge(e.0, e.1))
            .collect();
        canonical_pairs(&self.closure, fresh)
            .into_iter()
            .map(|(u, v)| {
                literal_formula(&self.closure, u).implies(literal_formula(&self.closure, v))
            })
            .collect()
    }

    /// Hypotheses with at least one edge surviving in the reduction.
    pub fn kept_hypotheses(&self) -> Vec<usize> {
        let surviving = self.reduction.origin_set();
        (0..self.hypothesis_count)
            .filter(|i| surviving.contains(i))
            .collect()
    }

    /// Hypotheses none of whose edges survived: the reduced theory derives
    /// them instead of stating them.
    pub fn removed_hypotheses(&self) -> Vec<usize> {
        let surviving = self.reduction.origin_set();
        (0..self.hypothesis_count)
            .filter(|i| !surviving.contains(i))
            .collect()
    }
}
