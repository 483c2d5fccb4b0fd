//! Per-class 2-complexes built from a realized group.
//!
//! Each conjugacy class yields one connected complex:
//!
//! * **vertices** — the members of the class;
//! * **edges** — one per (vertex, generator) pair, oriented from `v` to
//!   `x v x^-1`; self-conjugation gives a loop, which is kept;
//! * **2-cells** — one per (relator, vertex) pair, glued along the closed
//!   walk the relator traces out of that base vertex.
//!
//! The walk obeys the groupoid's composition order (the rightmost letter
//! acts first), so its step objects are computed suffix-first: a letter's
//! step lives at the object obtained by conjugating the base by everything
//! to its right in the relator.  With that convention the final object is
//! the base conjugated by the whole relator — the identity — so every walk
//! closes by construction, and the two incidence maps compose to zero.
//!
//! The first cohomology of this complex (over the rationals, with finitely
//! supported cochains) is what the rest of the crate compares against the
//! brute-force operator computation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{Element, GroupBackend};
use crate::linalg::{rational, RationalSparseMatrix};
use crate::presentation::{Presentation, Sign, Word};

/// An oriented edge: from `source` to `source` conjugated by `generator`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    pub source: Element,
    pub generator: usize,
}

/// One crossing of an edge during a relator walk, with the direction of
/// the crossing relative to the edge's own orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub edge: EdgeId,
    pub sign: Sign,
}

impl WalkStep {
    pub fn signum(&self) -> i64 {
        match self.sign {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A 2-cell: relator index plus the base vertex its walk starts from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoCell {
    pub relator: usize,
    pub base: Element,
}

/// The 2-complex of a single conjugacy class.
///
/// All index orders are canonical: vertices ascend, edges ascend by
/// (source, generator), cells ascend by (relator, base).  Two builds of
/// the same class are therefore identical structures.
#[derive(Clone, Debug)]
pub struct ComponentComplex {
    representative: Element,
    vertices: Vec<Element>,
    vertex_index: BTreeMap<Element, usize>,
    edges: Vec<EdgeId>,
    edge_targets: Vec<Element>,
    edge_index: BTreeMap<EdgeId, usize>,
    cells: Vec<TwoCell>,
    boundary_walks: Vec<Vec<WalkStep>>,
}

impl ComponentComplex {
    pub fn representative(&self) -> &Element {
        &self.representative
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_target(&self, edge: usize) -> &Element {
        &self.edge_targets[edge]
    }

    pub fn cells(&self) -> &[TwoCell] {
        &self.cells
    }

    pub fn boundary_walk(&self, cell: usize) -> &[WalkStep] {
        &self.boundary_walks[cell]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn vertex_position(&self, vertex: &Element) -> Option<usize> {
        self.vertex_index.get(vertex).copied()
    }

    pub fn edge_position(&self, edge: &EdgeId) -> Option<usize> {
        self.edge_index.get(edge).copied()
    }

    /// Vertex-to-edge incidence: row per edge, `-1` at the source and `+1`
    /// at the target; a loop's row is zero.
    pub fn d0_matrix(&self) -> RationalSparseMatrix {
        let mut d0 = RationalSparseMatrix::new(self.num_edges(), self.num_vertices());
        for (row, edge) in self.edges.iter().enumerate() {
            let source = self.vertex_index[&edge.source];
            let target = self.vertex_index[&self.edge_targets[row]];
            if source != target {
                d0.set(row, source, rational(-1));
                d0.set(row, target, rational(1));
            }
        }
        d0
    }

    /// Edge-to-cell incidence: row per cell, accumulating the signed edge
    /// crossings of the cell's boundary walk.
    pub fn d1_matrix(&self) -> RationalSparseMatrix {
        let mut d1 = RationalSparseMatrix::new(self.num_cells(), self.num_edges());
        for (row, walk) in self.boundary_walks.iter().enumerate() {
            for step in walk {
                let col = self.edge_index[&step.edge];
                d1.add_to(row, col, &rational(step.signum()));
            }
        }
        d1
    }

    /// Confirm the two incidence maps compose to zero.  This holds by
    /// construction; the check exists so callers can assert it cheaply.
    pub fn compose_check(&self) -> Result<()> {
        let product = self.d1_matrix().multiply(&self.d0_matrix());
        if product.is_zero() {
            Ok(())
        } else {
            Err(Error::ComplexMismatch(format!(
                "boundary maps of the class of {} do not compose to zero",
                self.representative
            )))
        }
    }

    /// `dim ker d1 - rank d0`: the dimension of first cohomology with
    /// finitely supported rational coefficients.
    pub fn h1(&self) -> Result<usize> {
        crate::linalg::h1_dimension(&self.d0_matrix(), &self.d1_matrix())
    }

    /// Graphviz rendering of the 1-skeleton, stable across runs: vertices
    /// as `n0, n1, ...` in canonical order, every edge labeled with its
    /// generator's name.
    pub fn to_dot(&self, presentation: &Presentation) -> String {
        let mut out = String::from("digraph component {\n");
        for (i, vertex) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "    n{i} [label=\"{vertex}\"];");
        }
        for (row, edge) in self.edges.iter().enumerate() {
            let source = self.vertex_index[&edge.source];
            let target = self.vertex_index[&self.edge_targets[row]];
            let name = &presentation.generator_names()[edge.generator];
            let _ = writeln!(out, "    n{source} -> n{target} [label=\"{name}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Trace a word's walk out of `base`, with no closure requirement.
///
/// The step for the letter at position `j` is found at the object obtained
/// by conjugating `base` by the word's suffix to the right of `j` — i.e.
/// the letters act in composition order, rightmost first.  A positive
/// letter `x` at object `c` crosses the edge `(c, x)` forwards and moves
/// to `x c x^-1`; a negative letter `x^-1` at `c` crosses the edge
/// `(x^-1 c x, x)` backwards and moves to `x^-1 c x`.  The returned steps
/// are listed by letter position (leftmost letter first); the second
/// component is the final object, `base` conjugated by the whole word.
pub fn walk_word(
    backend: &GroupBackend,
    word: &Word,
    base: &Element,
) -> (Vec<WalkStep>, Element) {
    let letters = word.letters();
    let mut steps: Vec<Option<WalkStep>> = vec![None; letters.len()];
    let mut current = base.clone();
    for (position, letter) in letters.iter().enumerate().rev() {
        let image = backend.generator_image(letter.generator);
        match letter.sign {
            Sign::Pos => {
                steps[position] = Some(WalkStep {
                    edge: EdgeId { source: current.clone(), generator: letter.generator },
                    sign: Sign::Pos,
                });
                current = backend.conjugate(&image, &current);
            }
            Sign::Neg => {
                let previous = backend.conjugate(&backend.invert(&image), &current);
                steps[position] = Some(WalkStep {
                    edge: EdgeId { source: previous.clone(), generator: letter.generator },
                    sign: Sign::Neg,
                });
                current = previous;
            }
        }
    }
    let steps =
        steps.into_iter().map(|step| step.expect("every position visited")).collect();
    (steps, current)
}

/// Trace a relator's closed walk out of `base`.
///
/// Same as [`walk_word`], but the word must be an identity of the realized
/// group, so the walk ends where it began; anything else reports
/// [`Error::WalkNotClosed`].
pub fn walk_relator(
    backend: &GroupBackend,
    relator: &Word,
    base: &Element,
) -> Result<Vec<WalkStep>> {
    let (steps, end) = walk_word(backend, relator, base);
    if end != *base {
        return Err(Error::WalkNotClosed);
    }
    Ok(steps)
}

/// Build the 2-complex of one conjugacy class.
///
/// `members` must be exactly one class of the realized group: the
/// conjugation orbit of its first element must reproduce the whole list.
/// (On an abelian backend that forces a singleton.)  Anything else is
/// rejected as [`Error::UnsupportedClass`] — a proper subset or a union of
/// classes would break the connectivity the cohomology bookkeeping
/// depends on.
pub fn build_component(
    presentation: &Presentation,
    backend: &GroupBackend,
    members: &[Element],
) -> Result<ComponentComplex> {
    if members.is_empty() {
        return Err(Error::UnsupportedClass("a class needs at least one member".into()));
    }
    let mut vertices: Vec<Element> = members.to_vec();
    vertices.sort();
    vertices.dedup();

    let orbit = conjugation_orbit(presentation, backend, &vertices[0]);
    if orbit != vertices {
        return Err(Error::UnsupportedClass(format!(
            "the members given with {} do not form one conjugacy class",
            vertices[0]
        )));
    }

    let vertex_index: BTreeMap<Element, usize> =
        vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();

    let mut edges = Vec::with_capacity(vertices.len() * presentation.generator_count());
    let mut edge_targets = Vec::with_capacity(edges.capacity());
    let mut edge_index = BTreeMap::new();
    for vertex in &vertices {
        for generator in 0..presentation.generator_count() {
            let image = backend.generator_image(generator);
            let target = backend.conjugate(&image, vertex);
            debug_assert!(vertex_index.contains_key(&target), "classes are conjugation-closed");
            let edge = EdgeId { source: vertex.clone(), generator };
            edge_index.insert(edge.clone(), edges.len());
            edges.push(edge);
            edge_targets.push(target);
        }
    }

    let mut cells = Vec::with_capacity(presentation.relators().len() * vertices.len());
    let mut boundary_walks = Vec::with_capacity(cells.capacity());
    for (relator_index, relator) in presentation.relators().iter().enumerate() {
        for base in &vertices {
            let walk = walk_relator(backend, relator, base)?;
            debug_assert!(
                walk.iter().all(|step| edge_index.contains_key(&step.edge)),
                "walks stay inside the class"
            );
            cells.push(TwoCell { relator: relator_index, base: base.clone() });
            boundary_walks.push(walk);
        }
    }

    Ok(ComponentComplex {
        representative: vertices[0].clone(),
        vertices,
        vertex_index,
        edges,
        edge_targets,
        edge_index,
        cells,
        boundary_walks,
    })
}

/// The conjugation orbit of one element under the generator images and
/// their inverses, sorted ascending.
fn conjugation_orbit(
    presentation: &Presentation,
    backend: &GroupBackend,
    start: &Element,
) -> Vec<Element> {
    let mut orbit = std::collections::BTreeSet::new();
    let mut frontier = vec![start.clone()];
    orbit.insert(start.clone());
    while let Some(a) = frontier.pop() {
        for generator in 0..presentation.generator_count() {
            let image = backend.generator_image(generator);
            for g in [image.clone(), backend.invert(&image)] {
                let b = backend.conjugate(&g, &a);
                if orbit.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
    }
    orbit.into_iter().collect()
}
