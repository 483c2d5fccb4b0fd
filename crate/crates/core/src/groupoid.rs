//! The conjugation groupoid and its characters.
//!
//! Objects are group elements; a morphism from `a` to `b` is a group
//! element `g` with `g a g^-1 = b`, stored as the pair `(a, g)` — the
//! target is always derived, never stored.  Composition multiplies
//! conjugators: `(b -> c / g2) ∘ (a -> b / g1) = (a -> c / g2 g1)`.
//!
//! A *character* assigns a rational to every morphism.  Characters that are
//! additive under composition are exactly the derivations of the group
//! algebra in disguise: a linear operator `X` on the group algebra with
//! matrix entries `x[h][g]` (the coefficient of `h` in `X g`) corresponds
//! to the character `T(a -> b / g) = x[g·a][g]`, and `X` satisfies the
//! product rule iff `T` is additive.  Both translations and the additivity
//! check live here; the independent product-rule solver is in
//! [`crate::derivations`].

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroupTable, GroupBackend};
use crate::linalg::{Rational, RationalVector};

/// A conjugation morphism `source -> conjugator · source · conjugator^-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub source: Element,
    pub conjugator: Element,
}

impl Morphism {
    pub fn new(source: Element, conjugator: Element) -> Morphism {
        Morphism { source, conjugator }
    }

    /// The identity morphism at `a`.
    pub fn identity(backend: &GroupBackend, a: Element) -> Morphism {
        Morphism { source: a, conjugator: backend.identity() }
    }

    pub fn target(&self, backend: &GroupBackend) -> Element {
        backend.conjugate(&self.conjugator, &self.source)
    }
}

/// Compose two morphisms, `second ∘ first` (so `first` is applied first).
/// Fails with [`Error::NotComposable`] unless the first target equals the
/// second source.
pub fn compose(backend: &GroupBackend, second: &Morphism, first: &Morphism) -> Result<Morphism> {
    if first.target(backend) != second.source {
        return Err(Error::NotComposable);
    }
    Ok(Morphism {
        source: first.source.clone(),
        conjugator: backend.multiply(&second.conjugator, &first.conjugator),
    })
}

/// All conjugators carrying `a` to `b` in a finite group: the morphism set
/// between two objects.  Empty iff `a` and `b` lie in different classes;
/// for `a = b` this is the centralizer of `a`.  Ascending element order.
pub fn hom_set(table: &FiniteGroupTable, a: &Element, b: &Element) -> Vec<Element> {
    let (a, b) = (a.index(), b.index());
    (0..table.order()).filter(|&g| table.conj(g, a) == b).map(Element::Index).collect()
}

/// A finitely supported rational character on the morphisms of the
/// groupoid.  Zero values are never stored, so lookups default to zero and
/// structural equality is semantic equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    values: BTreeMap<Morphism, Rational>,
}

impl Character {
    pub fn zero() -> Character {
        Character::default()
    }

    pub fn value(&self, morphism: &Morphism) -> Rational {
        self.values.get(morphism).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, morphism: Morphism, value: Rational) {
        if value.is_zero() {
            self.values.remove(&morphism);
        } else {
            self.values.insert(morphism, value);
        }
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    /// Nonzero values in canonical morphism order.
    pub fn iter(&self) -> impl Iterator<Item = (&Morphism, &Rational)> {
        self.values.iter()
    }
}

/// A linear operator on the group algebra of a finite group, stored dense:
/// `entry(h, g)` is the coefficient of basis element `h` in the image of
/// basis element `g`.  Dense storage is the right trade at the orders the
/// brute-force route handles (a few dozen elements at most).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl DerivationMatrix {
    pub fn zero(order: usize) -> DerivationMatrix {
        DerivationMatrix { order, entries: vec![Rational::zero(); order * order] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, h: usize, g: usize) -> &Rational {
        &self.entries[h * self.order + g]
    }

    pub fn set_entry(&mut self, h: usize, g: usize, value: Rational) {
        self.entries[h * self.order + g] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }

    /// Operator composition `self ∘ other` as a matrix product.
    pub fn compose(&self, other: &DerivationMatrix) -> DerivationMatrix {
        assert_eq!(self.order, other.order, "operator size mismatch");
        let n = self.order;
        let mut out = DerivationMatrix::zero(n);
        for h in 0..n {
            for k in 0..n {
                let left = self.entry(h, k);
                if left.is_zero() {
                    continue;
                }
                for g in 0..n {
                    let right = other.entry(k, g);
                    if !right.is_zero() {
                        let updated = out.entry(h, g) + left * right;
                        out.set_entry(h, g, updated);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DerivationMatrix) -> DerivationMatrix {
        assert_eq!(self.order, other.order, "operator size mismatch");
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        DerivationMatrix { order: self.order, entries }
    }

    pub fn sub(&self, other: &DerivationMatrix) -> DerivationMatrix {
        assert_eq!(self.order, other.order, "operator size mismatch");
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        DerivationMatrix { order: self.order, entries }
    }

    pub fn scale(&self, factor: &Rational) -> DerivationMatrix {
        DerivationMatrix {
            order: self.order,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    /// `self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &DerivationMatrix) -> DerivationMatrix {
        self.compose(other).sub(&other.compose(self))
    }

    /// Flatten to a vector indexed by `h * order + g`, the layout shared
    /// with the product-rule linear system.
    pub fn to_flat_vector(&self) -> RationalVector {
        let mut v = RationalVector::zero(self.order * self.order);
        for (i, value) in self.entries.iter().enumerate() {
            if !value.is_zero() {
                v.set(i, value.clone());
            }
        }
        v
    }

    /// Inverse of [`Self::to_flat_vector`].
    pub fn from_flat_vector(order: usize, v: &RationalVector) -> DerivationMatrix {
        assert_eq!(v.len(), order * order, "flat vector length mismatch");
        let mut m = DerivationMatrix::zero(order);
        for (i, value) in v.iter() {
            m.entries[i] = value.clone();
        }
        m
    }

    /// The column of `g`: the image `X g` as coefficients indexed by `h`.
    pub fn column(&self, g: usize) -> Vec<Rational> {
        (0..self.order).map(|h| self.entry(h, g).clone()).collect()
    }
}

/// The character of an operator: `T(a -> b / g) = x[g·a][g]`, the
/// coefficient the operator attaches to the morphism's own "matrix slot".
/// Total on all morphisms of the groupoid (zeros simply are not stored).
pub fn character_from_matrix(table: &FiniteGroupTable, matrix: &DerivationMatrix) -> Character {
    assert_eq!(table.order(), matrix.order(), "operator does not match the group");
    let mut character = Character::zero();
    for a in 0..table.order() {
        for g in 0..table.order() {
            let h = table.mult(g, a);
            let value = matrix.entry(h, g).clone();
            if !value.is_zero() {
                character.set(
                    Morphism::new(Element::Index(a), Element::Index(g)),
                    value,
                );
            }
        }
    }
    character
}

/// Inverse translation: `entry(h, g)` is the character's value on the
/// unique morphism with conjugator `g` whose "slot" is `(h, g)`, namely
/// `(g^-1 h -> h g^-1 / g)`.
pub fn matrix_from_character(table: &FiniteGroupTable, character: &Character) -> DerivationMatrix {
    let n = table.order();
    let mut matrix = DerivationMatrix::zero(n);
    for h in 0..n {
        for g in 0..n {
            let a = table.mult(table.inv(g), h);
            let value = character.value(&Morphism::new(Element::Index(a), Element::Index(g)));
            matrix.set_entry(h, g, value);
        }
    }
    matrix
}

/// Is the character additive under composition?  Checks
/// `T(second ∘ first) = T(second) + T(first)` over every composable pair.
pub fn check_additivity(table: &FiniteGroupTable, character: &Character) -> bool {
    find_additivity_violation(table, character).is_none()
}

/// First composable pair on which additivity fails, in deterministic scan
/// order, or `None` when the character is additive.
pub fn find_additivity_violation(
    table: &FiniteGroupTable,
    character: &Character,
) -> Option<(Morphism, Morphism)> {
    let n = table.order();
    for a in 0..n {
        for g1 in 0..n {
            let b = table.conj(g1, a);
            for g2 in 0..n {
                let first = Morphism::new(Element::Index(a), Element::Index(g1));
                let second = Morphism::new(Element::Index(b), Element::Index(g2));
                let composite =
                    Morphism::new(Element::Index(a), Element::Index(table.mult(g2, g1)));
                if character.value(&composite)
                    != character.value(&second) + character.value(&first)
                {
                    return Some((second, first));
                }
            }
        }
    }
    None
}
