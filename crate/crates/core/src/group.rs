//! Concrete group backends.
//!
//! A presentation is realized either as a [`FiniteGroupTable`] — a full
//! multiplication table produced by coset enumeration over the trivial
//! subgroup, so elements are the cosets themselves — or as the free-abelian
//! group of a given rank, whose elements are integer vectors.  Everything
//! above this module talks to [`GroupBackend`] and stays agnostic about
//! which realization is in play.

mod todd_coxeter;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Sign, Word};

/// An element of a realized group: an index into a finite multiplication
/// table, or an integer vector in a free-abelian lattice.  The `Ord` impl
/// (derived) gives every element set a canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Index(usize),
    Vector(Vec<i64>),
}

impl Element {
    /// The table index of a finite-backend element.  Panics when handed a
    /// lattice vector — mixing element kinds across backends is a
    /// programming error, not a runtime condition.
    pub fn index(&self) -> usize {
        match self {
            Element::Index(i) => *i,
            Element::Vector(_) => panic!("expected a finite-backend element, found a lattice vector"),
        }
    }

    pub fn vector(&self) -> &[i64] {
        match self {
            Element::Vector(v) => v,
            Element::Index(_) => panic!("expected a lattice vector, found a finite-backend element"),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "{i}"),
            Element::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// A finite group as a complete multiplication table.  Element `0` is the
/// identity; the elements are numbered in the order coset enumeration
/// discovered them, which fixes a canonical basis ordering for everything
/// downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    /// Row-major `order x order` product table: `mult[a * order + b] = a·b`.
    mult: Vec<usize>,
    inv: Vec<usize>,
    generator_images: Vec<usize>,
}

impl FiniteGroupTable {
    /// Realize a presentation by coset enumeration over the trivial
    /// subgroup.  `max_cosets` bounds the number of simultaneously live
    /// cosets; exceeding it aborts with [`Error::BudgetExceeded`], which is
    /// not a proof that the group is infinite.
    pub fn enumerate(presentation: &Presentation, max_cosets: usize) -> Result<FiniteGroupTable> {
        todd_coxeter::enumerate(presentation, max_cosets)
    }

    /// Build directly from parts.  Used by the enumerator and by tests;
    /// validates the group laws in debug builds only (callers at the public
    /// boundary are expected to come through [`Self::enumerate`]).
    pub(crate) fn from_parts(
        order: usize,
        mult: Vec<usize>,
        generator_images: Vec<usize>,
    ) -> FiniteGroupTable {
        assert_eq!(mult.len(), order * order, "product table has wrong size");
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mult[a * order + b] == 0 {
                    inv[a] = b;
                }
            }
            assert_ne!(inv[a], usize::MAX, "element {a} has no inverse in the table");
        }
        FiniteGroupTable { order, mult, inv, generator_images }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g a g^-1`.
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mult(self.mult(g, a), self.inv(g))
    }

    pub fn generator_count(&self) -> usize {
        self.generator_images.len()
    }

    pub fn generator_image(&self, generator: usize) -> usize {
        self.generator_images[generator]
    }

    pub fn evaluate_word(&self, word: &Word) -> usize {
        let mut acc = self.identity();
        for letter in word.letters() {
            let image = self.generator_image(letter.generator);
            let factor = match letter.sign {
                Sign::Pos => image,
                Sign::Neg => self.inv(image),
            };
            acc = self.mult(acc, factor);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// A shortest generator word for every element, found by breadth-first
    /// search from the identity.  Ties break deterministically: frontier
    /// elements are expanded in discovery order, generators in index order,
    /// positive letters before negative ones.
    pub fn shortest_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[self.identity()] = Some(Word::empty());
        let mut queue = std::collections::VecDeque::from([self.identity()]);
        while let Some(current) = queue.pop_front() {
            let word = words[current].clone().expect("queued elements have words");
            for generator in 0..self.generator_count() {
                let image = self.generator_images[generator];
                for letter in [Letter::positive(generator), Letter::negative(generator)] {
                    let factor = match letter.sign {
                        Sign::Pos => image,
                        Sign::Neg => self.inv(image),
                    };
                    let next = self.mult(current, factor);
                    if words[next].is_none() {
                        words[next] = Some(word.concat(&Word::new(vec![letter])));
                        queue.push_back(next);
                    }
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators reach every element")).collect()
    }

    /// Partition `0..order` into conjugacy classes by closing each
    /// unvisited element under conjugation by the generator images (orbit
    /// breadth-first search).  Classes are ordered by smallest member, and
    /// members within a class ascend, so the output is canonical.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut frontier = vec![start];
            seen[start] = true;
            members.insert(start);
            while let Some(a) = frontier.pop() {
                for &image in &self.generator_images {
                    for g in [image, self.inv(image)] {
                        let b = self.conj(g, a);
                        if !seen[b] {
                            seen[b] = true;
                            members.insert(b);
                            frontier.push(b);
                        }
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: Element::Index(start),
                members: members.into_iter().map(Element::Index).collect(),
            });
        }
        classes
    }
}

/// A conjugacy class: its smallest member as representative plus the full
/// sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Element,
    pub members: Vec<Element>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The two supported realizations of a presented group.
#[derive(Clone, Debug)]
pub enum GroupBackend {
    Finite(FiniteGroupTable),
    FreeAbelian { rank: usize },
}

impl GroupBackend {
    pub fn finite(table: FiniteGroupTable) -> GroupBackend {
        GroupBackend::Finite(table)
    }

    /// Free-abelian backend of the given rank.  The rank must match the
    /// presentation's generator count; the relators are *trusted*, not
    /// checked — the caller asserts that the presented group really is
    /// free-abelian of this rank.
    pub fn free_abelian(presentation: &Presentation, rank: usize) -> Result<GroupBackend> {
        if rank != presentation.generator_count() {
            return Err(Error::Syntax {
                position: 0,
                expected: format!(
                    "rank {rank} to equal the generator count {}",
                    presentation.generator_count()
                ),
            });
        }
        Ok(GroupBackend::FreeAbelian { rank })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupBackend::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FiniteGroupTable> {
        match self {
            GroupBackend::Finite(table) => Some(table),
            GroupBackend::FreeAbelian { .. } => None,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupBackend::Finite(_) => Element::Index(0),
            GroupBackend::FreeAbelian { rank } => Element::Vector(vec![0; *rank]),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        match self {
            GroupBackend::Finite(table) => Element::Index(table.mult(a.index(), b.index())),
            GroupBackend::FreeAbelian { rank } => {
                let (x, y) = (a.vector(), b.vector());
                assert!(x.len() == *rank && y.len() == *rank, "rank mismatch");
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
        }
    }

    pub fn invert(&self, a: &Element) -> Element {
        match self {
            GroupBackend::Finite(table) => Element::Index(table.inv(a.index())),
            GroupBackend::FreeAbelian { .. } => {
                Element::Vector(a.vector().iter().map(|x| -x).collect())
            }
        }
    }

    /// `g a g^-1`; the identity map on a free-abelian backend.
    pub fn conjugate(&self, g: &Element, a: &Element) -> Element {
        match self {
            GroupBackend::Finite(table) => Element::Index(table.conj(g.index(), a.index())),
            GroupBackend::FreeAbelian { .. } => a.clone(),
        }
    }

    pub fn generator_image(&self, generator: usize) -> Element {
        match self {
            GroupBackend::Finite(table) => Element::Index(table.generator_image(generator)),
            GroupBackend::FreeAbelian { rank } => {
                assert!(generator < *rank, "generator index out of range");
                let mut v = vec![0; *rank];
                v[generator] = 1;
                Element::Vector(v)
            }
        }
    }

    pub fn evaluate_word(&self, word: &Word) -> Element {
        match self {
            GroupBackend::Finite(table) => Element::Index(table.evaluate_word(word)),
            GroupBackend::FreeAbelian { rank } => {
                let mut v = vec![0i64; *rank];
                for letter in word.letters() {
                    match letter.sign {
                        Sign::Pos => v[letter.generator] += 1,
                        Sign::Neg => v[letter.generator] -= 1,
                    }
                }
                Element::Vector(v)
            }
        }
    }

    /// Conjugacy classes of a finite backend.  Free-abelian classes come
    /// from [`Self::singleton_classes`] instead, because the element set is
    /// infinite and every class is a singleton.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        match self {
            GroupBackend::Finite(table) => table.conjugacy_classes(),
            GroupBackend::FreeAbelian { .. } => {
                panic!("free-abelian backends enumerate classes from an explicit element list")
            }
        }
    }

    /// Singleton classes for an explicitly listed set of elements, in the
    /// canonical element order with duplicates removed.  This is how class
    /// lists are formed on abelian backends, where conjugation is trivial.
    pub fn singleton_classes(&self, elements: &[Element]) -> Vec<ConjugacyClass> {
        let unique: BTreeSet<Element> = elements.iter().cloned().collect();
        unique
            .into_iter()
            .map(|e| ConjugacyClass { representative: e.clone(), members: vec![e] })
            .collect()
    }
}
