//! Brute-force computation of the derivation algebra of a finite group
//! algebra, straight from the product rule.
//!
//! A linear operator `X` on the group algebra, with `x[h][g]` the
//! coefficient of `h` in `X g`, is a derivation exactly when every basis
//! triple satisfies
//!
//! ```text
//! x[h][g2·g1] = x[h·g1^-1][g2] + x[g2^-1·h][g1]
//! ```
//!
//! (expand `X(g2·g1)` by the product rule and compare coefficients).
//! Solving that linear system over the rationals gives the space of all
//! derivations; the span of the inner ones `ad_g = [g, -]` sits inside it,
//! and the quotient dimension is the count of outer derivations.  None of
//! this knows anything about walks, complexes, or cohomology — which is
//! the point: it is the independent side of the crate's main comparison.
//!
//! The system is `n^3` rows by `n^2` columns, so the brute force route is
//! gated by an explicit order cap.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroupTable};
use crate::groupoid::{Character, DerivationMatrix, Morphism};
use crate::linalg::{rational, Rational, RationalSparseMatrix};

/// Largest group order the brute-force route accepts by default.  At order
/// 24 the product-rule system is 13824 x 576, around the practical limit
/// for exact rational elimination in test time.
pub const DEFAULT_ORACLE_CAP: usize = 24;

/// Dimensions found by the brute-force route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub group_order: usize,
    pub num_classes: usize,
    pub dim_der: usize,
    pub dim_int: usize,
    pub dim_out: usize,
}

/// The product-rule constraint system: one row per basis triple
/// `(g1, g2, h)` (flattened as `(g1·n + g2)·n + h`), one column per matrix
/// slot `(h, g)` (flattened as `h·n + g`).  Its nullspace is the space of
/// derivations.
pub fn leibniz_system(table: &FiniteGroupTable, cap: usize) -> Result<RationalSparseMatrix> {
    let n = table.order();
    if n > cap {
        return Err(Error::OrderTooLarge { order: n, cap });
    }
    let mut system = RationalSparseMatrix::new(n * n * n, n * n);
    let one = rational(1);
    let minus_one = rational(-1);
    for g1 in 0..n {
        for g2 in 0..n {
            let product = table.mult(g2, g1);
            for h in 0..n {
                let row = (g1 * n + g2) * n + h;
                system.add_to(row, h * n + product, &one);
                system.add_to(row, table.mult(h, table.inv(g1)) * n + g2, &minus_one);
                system.add_to(row, table.mult(table.inv(g2), h) * n + g1, &minus_one);
            }
        }
    }
    Ok(system)
}

/// Check the product rule directly on one operator, without the system.
pub fn leibniz_check(table: &FiniteGroupTable, matrix: &DerivationMatrix) -> bool {
    let n = table.order();
    assert_eq!(n, matrix.order(), "operator does not match the group");
    for g1 in 0..n {
        for g2 in 0..n {
            let product = table.mult(g2, g1);
            for h in 0..n {
                let lhs = matrix.entry(h, product);
                let rhs = matrix.entry(table.mult(h, table.inv(g1)), g2)
                    + matrix.entry(table.mult(table.inv(g2), h), g1);
                if *lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The inner derivation `ad_g = [g, -]`: as a matrix,
/// `entry(h', h) = [h' = g·h] - [h' = h·g]`.  Central `g` gives zero.
pub fn ad_matrix(table: &FiniteGroupTable, g: usize) -> DerivationMatrix {
    let n = table.order();
    let mut matrix = DerivationMatrix::zero(n);
    let one = rational(1);
    for h in 0..n {
        let left = table.mult(g, h);
        let right = table.mult(h, g);
        if left != right {
            matrix.set_entry(left, h, one.clone());
            matrix.set_entry(right, h, rational(-1));
        }
    }
    matrix
}

///`ad_c` for an arbitrary algebra element `c = sum coeffs[h] · h`.
pub fn ad_algebra_element(table: &FiniteGroupTable, coeffs: &[Rational]) -> DerivationMatrix {
    assert_eq!(coeffs.len(), table.order(), "coefficient vector length mismatch");
    let mut total = DerivationMatrix::zero(table.order());
    for (h, coeff) in coeffs.iter().enumerate() {
        if !coeff.is_zero() {
            total = total.add(&ad_matrix(table, h).scale(coeff));
        }
    }
    total
}

/// The groupoid character of `ad_g` written down directly:
/// `T(a -> b / h) = [b = g] - [a = g]`.  Agrees with translating
/// [`ad_matrix`] through the operator-to-character dictionary.
pub fn inner_character(table: &FiniteGroupTable, g: usize) -> Character {
    let n = table.order();
    let one = rational(1);
    let minus_one = rational(-1);
    let mut character = Character::zero();
    for a in 0..n {
        for h in 0..n {
            let b = table.conj(h, a);
            let value = match (b == g, a == g) {
                (true, false) => one.clone(),
                (false, true) => minus_one.clone(),
                _ => continue,
            };
            character.set(Morphism::new(Element::Index(a), Element::Index(h)), value);
        }
    }
    character
}

/// A basis of the full derivation space, as operators.
pub fn derivation_basis(table: &FiniteGroupTable, cap: usize) -> Result<Vec<DerivationMatrix>> {
    let system = leibniz_system(table, cap)?;
    Ok(system
        .nullspace_basis()
        .iter()
        .map(|v| DerivationMatrix::from_flat_vector(table.order(), v))
        .collect())
}

/// How much an operator fails the identity `[ad_g, X] + ad_{X g} = 0`,
/// which every derivation satisfies for every group element `g`.
pub fn commutation_defect(
    table: &FiniteGroupTable,
    g: usize,
    matrix: &DerivationMatrix,
) -> DerivationMatrix {
    let ad_g = ad_matrix(table, g);
    ad_g.commutator(matrix).add(&ad_algebra_element(table, &matrix.column(g)))
}

/// Solve for all three dimensions: derivations from the product-rule
/// system's nullity, inner derivations from the rank of the span of all
/// `ad_g`, outer as the difference.
pub fn derivation_dims(table: &FiniteGroupTable, cap: usize) -> Result<OracleReport> {
    let n = table.order();
    let system = leibniz_system(table, cap)?;
    let dim_der = system.nullity();

    let mut ad_span = RationalSparseMatrix::new(n, n * n);
    for g in 0..n {
        for (slot, value) in ad_matrix(table, g).to_flat_vector().iter() {
            ad_span.set(g, slot, value.clone());
        }
    }
    let dim_int = ad_span.rank();

    let num_classes = table.conjugacy_classes().len();
    assert_eq!(
        dim_int,
        n - num_classes,
        "inner derivations must have dimension order minus class count"
    );
    assert!(dim_der >= dim_int, "every inner derivation satisfies the product rule");

    Ok(OracleReport {
        group_order: n,
        num_classes,
        dim_der,
        dim_int,
        dim_out: dim_der - dim_int,
    })
}
