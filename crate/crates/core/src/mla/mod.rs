//! Multiplicative Lie algebra brackets on finite groups.
//!
//! A bracket `⋆` on `G` is a multiplicative Lie algebra structure when, for all
//! `x, y, z ∈ G` (with `ˣy = xyx⁻¹`):
//!
//! | id | identity |
//! |----|----------|
//! | A1 | `x ⋆ x = 1` |
//! | A2 | `x ⋆ (yz) = (x ⋆ y) · ʸ(x ⋆ z)` |
//! | A3 | `(xy) ⋆ z = ˣ(y ⋆ z) · (x ⋆ z)` |
//! | A4 | `((x ⋆ y) ⋆ ʸz) · ((y ⋆ z) ⋆ ᶻx) · ((z ⋆ x) ⋆ ˣy) = 1` |
//! | A5 | `ᶻ(x ⋆ y) = ᶻx ⋆ ᶻy` |
//!
//! The trivial bracket and the commutator bracket `[x, y] = xyx⁻¹y⁻¹` always satisfy them.

mod end;
mod equivalence;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::group::{subgroup_generated, Elem, FiniteGroup, GroupError, GroupRef, Subgroup};

pub use end::{end_mla, EndMla};
pub use equivalence::{
    bracket_equivalent, bracket_isotopic, Equivalence, EquivalenceContext, Isotopy,
};

/// Default number of violations reported by [`verify_mla`].
pub const DEFAULT_VIOLATION_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MlaError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("bracket violates the axioms: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotMla(Vec<MlaViolation>),
    #[error("malformed bracket table: {0}")]
    Malformed(String),
    #[error("brackets live on different groups")]
    DifferentGroups,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One failed axiom instance. `witness` is `[x]` for A1 and `[x, y, z]` otherwise;
/// `left` and `right` are the two sides of the identity (`right` is the identity
/// element for A1 and A4).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MlaViolation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
    pub left: Elem,
    pub right: Elem,
}

impl fmt::Display for MlaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {:?}: {} != {}",
            self.axiom, self.witness, self.left, self.right
        )
    }
}

fn check_shape(g: &FiniteGroup, rows: &[Vec<Elem>]) -> Result<Vec<Elem>, MlaError> {
    let n = g.order();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(MlaError::Malformed(format!("expected a {n}x{n} table")));
    }
    if let Some(v) = rows.iter().flatten().find(|&&v| v >= n) {
        return Err(MlaError::Malformed(format!("entry {v} out of range")));
    }
    Ok(rows.iter().flatten().copied().collect())
}

/// Exhaustively checks A1–A5, returning at most [`DEFAULT_VIOLATION_CAP`] violations.
pub fn verify_mla(g: &FiniteGroup, rows: &[Vec<Elem>]) -> Result<Vec<MlaViolation>, MlaError> {
    verify_mla_capped(g, rows, DEFAULT_VIOLATION_CAP)
}

pub fn verify_mla_capped(
    g: &FiniteGroup,
    rows: &[Vec<Elem>],
    cap: usize,
) -> Result<Vec<MlaViolation>, MlaError> {
    let flat = check_shape(g, rows)?;
    Ok(verify_flat(g, &flat, cap))
}

/// Violations in axiom order, each axiom scanned in lexicographic witness order.
pub(crate) fn verify_flat(g: &FiniteGroup, star: &[Elem], cap: usize) -> Vec<MlaViolation> {
    let n = g.order();
    let s = |x: Elem, y: Elem| star[x * n + y];
    let e = g.identity();
    let mut out = Vec::new();
    let mut push = |axiom, witness: Vec<Elem>, left, right| {
        if out.len() < cap {
            out.push(MlaViolation {
                axiom,
                witness,
                left,
                right,
            });
        }
        out.len() < cap
    };
    for x in 0..n {
        if s(x, x) != e && !push(Axiom::A1, vec![x], s(x, x), e) {
            return out;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = s(x, g.mul(y, z));
                let right = g.mul(s(x, y), g.conjugate(y, s(x, z)));
                if left != right && !push(Axiom::A2, vec![x, y, z], left, right) {
                    return out;
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = s(g.mul(x, y), z);
                let right = g.mul(g.conjugate(x, s(y, z)), s(x, z));
                if left != right && !push(Axiom::A3, vec![x, y, z], left, right) {
                    return out;
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let a = s(s(x, y), g.conjugate(y, z));
                let b = s(s(y, z), g.conjugate(z, x));
                let c = s(s(z, x), g.conjugate(x, y));
                let left = g.mul(g.mul(a, b), c);
                if left != e && !push(Axiom::A4, vec![x, y, z], left, e) {
                    return out;
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = g.conjugate(z, s(x, y));
                let right = s(g.conjugate(z, x), g.conjugate(z, y));
                if left != right && !push(Axiom::A5, vec![x, y, z], left, right) {
                    return out;
                }
            }
        }
    }
    out
}

/// A verified multiplicative Lie algebra bracket on a group.
#[derive(Clone, PartialEq, Eq)]
pub struct LieBracket {
    group: GroupRef,
    star: Vec<Elem>,
}

impl fmt::Debug for LieBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieBracket({}: {:?})", self.group.name(), self.rows())
    }
}

impl LieBracket {
    /// Verifies the table; fails with the (capped) violation list.
    pub fn new(group: GroupRef, rows: &[Vec<Elem>]) -> Result<Self, MlaError> {
        let star = check_shape(&group, rows)?;
        Self::from_flat(group, star)
    }

    pub(crate) fn from_flat(group: GroupRef, star: Vec<Elem>) -> Result<Self, MlaError> {
        let violations = verify_flat(&group, &star, DEFAULT_VIOLATION_CAP);
        if !violations.is_empty() {
            return Err(MlaError::NotMla(violations));
        }
        Ok(LieBracket { group, star })
    }

    pub(crate) fn from_flat_unchecked(group: GroupRef, star: Vec<Elem>) -> Self {
        LieBracket { group, star }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    #[inline]
    pub fn star(&self, x: Elem, y: Elem) -> Elem {
        self.star[x * self.group.order() + y]
    }

    pub fn table(&self) -> &[Elem] {
        &self.star
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.star
            .chunks(self.group.order().max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.star.iter().all(|&v| v == self.group.identity())
    }
}

/// `x ⋆ y = 1` for all `x, y`.
pub fn trivial_bracket(g: &GroupRef) -> LieBracket {
    LieBracket::from_flat_unchecked(g.clone(), vec![g.identity(); g.order() * g.order()])
}

/// `x ⋆ y = [x, y] = xyx⁻¹y⁻¹`.
pub fn commutator_bracket(g: &GroupRef) -> LieBracket {
    let star = g
        .elements()
        .flat_map(|x| g.elements().map(move |y| g.commutator(x, y)))
        .collect();
    LieBracket::from_flat_unchecked(g.clone(), star)
}

/// `G ⋆ G`: the subgroup generated by all bracket values.
pub fn derived_subalgebra(bracket: &LieBracket) -> Subgroup {
    let mut values = bracket.star.clone();
    values.sort_unstable();
    values.dedup();
    subgroup_generated(&bracket.group, &values)
}

/// True iff `s` is normal and `g ⋆ s`, `s ⋆ g` lie in `s` for all `g ∈ G`, `s ∈ S`.
pub fn is_ideal(bracket: &LieBracket, s: &Subgroup) -> bool {
    if !s.is_normal() {
        return false;
    }
    let inside = s.indicator();
    s.members().iter().all(|&m| {
        bracket
            .group
            .elements()
            .all(|g| inside[bracket.star(g, m)] && inside[bracket.star(m, g)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral};
    use std::sync::Arc;

    fn s3() -> GroupRef {
        Arc::new(make_dihedral(3))
    }

    #[test]
    fn trivial_and_commutator_brackets_verify() {
        for g in [s3(), Arc::new(make_cyclic(6)), Arc::new(make_dihedral(4))] {
            assert!(verify_mla(&g, &trivial_bracket(&g).rows())
                .unwrap()
                .is_empty());
            assert!(verify_mla(&g, &commutator_bracket(&g).rows())
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn group_product_is_not_a_bracket() {
        let g = s3();
        let rows: Vec<Vec<Elem>> = g
            .elements()
            .map(|x| g.elements().map(|y| g.mul(x, y)).collect())
            .collect();
        let violations = verify_mla(&g, &rows).unwrap();
        assert_eq!(violations[0].axiom, Axiom::A1);
        assert_eq!(violations[0].witness, vec![1]);
        assert!(violations.len() <= DEFAULT_VIOLATION_CAP);
        for v in violations.iter().filter(|v| v.axiom == Axiom::A1) {
            let x = v.witness[0];
            assert_ne!(rows[x][x], g.identity());
        }
    }

    #[test]
    fn cap_limits_report() {
        let g = s3();
        let rows: Vec<Vec<Elem>> = g
            .elements()
            .map(|x| g.elements().map(|y| g.mul(x, y)).collect())
            .collect();
        assert_eq!(verify_mla_capped(&g, &rows, 3).unwrap().len(), 3);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let g = s3();
        assert!(matches!(
            verify_mla(&g, &[vec![0; 6]]),
            Err(MlaError::Malformed(_))
        ));
        let mut rows = trivial_bracket(&g).rows();
        rows[2][3] = 9;
        assert!(matches!(verify_mla(&g, &rows), Err(MlaError::Malformed(_))));
    }

    #[test]
    fn commutator_on_abelian_group_is_trivial() {
        let g = Arc::new(make_cyclic(6));
        assert_eq!(commutator_bracket(&g), trivial_bracket(&g));
    }

    #[test]
    fn d4_commutator_a_b_is_b_squared() {
        let g = Arc::new(make_dihedral(4));
        assert_eq!(commutator_bracket(&g).star(4, 1), 2);
    }

    #[test]
    fn derived_subalgebras() {
        let g = s3();
        assert_eq!(derived_subalgebra(&trivial_bracket(&g)).order(), 1);
        assert_eq!(
            derived_subalgebra(&commutator_bracket(&g)).members(),
            &[0, 1, 2]
        );
    }

    #[test]
    fn ideals_of_s3() {
        let g = s3();
        let comm = commutator_bracket(&g);
        assert!(is_ideal(&comm, &Subgroup::trivial(&g)));
        assert!(is_ideal(&comm, &subgroup_generated(&g, &[1])));
        assert!(!is_ideal(&comm, &subgroup_generated(&g, &[3])));
    }
}
