//! Equivalence of brackets on the same group.
//!
//! Two relations are supported:
//!
//! * [`Equivalence::Automorphism`]: `⋆₂` is the transport of `⋆₁` along an
//!   automorphism `φ`, i.e. `φ(x ⋆₁ y) = φ(x) ⋆₂ φ(y)`.
//! * [`Equivalence::Isotopy`]: automorphisms may act independently on the arguments
//!   and on the values, `φ(x) ⋆₂ φ(y) = θ(x ⋆₁ y)`. This identifies, for example, the
//!   brackets `a ⋆ b = b` and `a ⋆ b = b⁻¹` on a dihedral group, which no single
//!   automorphism relates.
//!
//! Class representatives are the lexicographically smallest tables of the orbit.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{LieBracket, MlaError};
use crate::group::{automorphisms, Elem, GroupError, GroupMap, GroupRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equivalence {
    Automorphism,
    #[default]
    Isotopy,
}

/// Witness of `φ(x) ⋆₂ φ(y) = θ(x ⋆₁ y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotopy {
    pub arguments: GroupMap,
    pub values: GroupMap,
}

fn same_group(b1: &LieBracket, b2: &LieBracket) -> Result<(), MlaError> {
    if b1.group().same_table(b2.group()) {
        Ok(())
    } else {
        Err(MlaError::DifferentGroups)
    }
}

/// An automorphism `φ` with `φ(x ⋆₁ y) = φ(x) ⋆₂ φ(y)`, if one exists.
pub fn bracket_equivalent(
    b1: &LieBracket,
    b2: &LieBracket,
    bound: usize,
) -> Result<Option<GroupMap>, MlaError> {
    same_group(b1, b2)?;
    let g = b1.group();
    let auts = automorphisms(g, bound)?;
    Ok(auts.into_iter().find(|phi| {
        g.elements().all(|x| {
            g.elements()
                .all(|y| phi.apply(b1.star(x, y)) == b2.star(phi.apply(x), phi.apply(y)))
        })
    }))
}

/// Automorphisms `(φ, θ)` with `φ(x) ⋆₂ φ(y) = θ(x ⋆₁ y)`, if they exist.
pub fn bracket_isotopic(
    b1: &LieBracket,
    b2: &LieBracket,
    bound: usize,
) -> Result<Option<Isotopy>, MlaError> {
    same_group(b1, b2)?;
    let g = b1.group();
    let auts = automorphisms(g, bound)?;
    for phi in &auts {
        for theta in &auts {
            let ok = g.elements().all(|x| {
                g.elements()
                    .all(|y| theta.apply(b1.star(x, y)) == b2.star(phi.apply(x), phi.apply(y)))
            });
            if ok {
                return Ok(Some(Isotopy {
                    arguments: phi.clone(),
                    values: theta.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Precomputed automorphisms for computing canonical forms of many brackets on one group.
#[derive(Debug, Clone)]
pub struct EquivalenceContext {
    group: GroupRef,
    kind: Equivalence,
    auts: Vec<Vec<Elem>>,
    inverses: Vec<Vec<Elem>>,
}

impl EquivalenceContext {
    pub fn new(group: &GroupRef, kind: Equivalence, bound: usize) -> Result<Self, GroupError> {
        let maps = automorphisms(group, bound)?;
        let inverses = maps
            .iter()
            .map(|m| {
                m.inverse()
                    .expect("automorphism is bijective")
                    .images()
                    .to_vec()
            })
            .collect();
        let auts = maps.iter().map(|m| m.images().to_vec()).collect();
        Ok(EquivalenceContext {
            group: group.clone(),
            kind,
            auts,
            inverses,
        })
    }

    pub fn kind(&self) -> Equivalence {
        self.kind
    }

    pub fn automorphism_count(&self) -> usize {
        self.auts.len()
    }

    /// Smallest table in the orbit of `star` (row-major, flat).
    pub fn canonical(&self, star: &[Elem]) -> Vec<Elem> {
        let n = self.group.order();
        let mut best: Vec<Elem> = star.to_vec();
        let mut cand = vec![0; n * n];
        for (pi, phi_inv) in self.inverses.iter().enumerate() {
            let value_maps: Box<dyn Iterator<Item = &Vec<Elem>>> = match self.kind {
                Equivalence::Automorphism => Box::new(std::iter::once(&self.auts[pi])),
                Equivalence::Isotopy => Box::new(self.auts.iter()),
            };
            for theta in value_maps {
                // cand[u][v] = θ(star[φ⁻¹u][φ⁻¹v]), abandoned as soon as it exceeds best
                let mut state = Ordering::Equal;
                let mut abandoned = false;
                'fill: for u in 0..n {
                    let row = phi_inv[u] * n;
                    for v in 0..n {
                        let idx = u * n + v;
                        let val = theta[star[row + phi_inv[v]]];
                        cand[idx] = val;
                        if state == Ordering::Equal {
                            match val.cmp(&best[idx]) {
                                Ordering::Greater => {
                                    abandoned = true;
                                    break 'fill;
                                }
                                Ordering::Less => state = Ordering::Less,
                                Ordering::Equal => {}
                            }
                        }
                    }
                }
                if !abandoned && state == Ordering::Less {
                    std::mem::swap(&mut best, &mut cand);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_dihedral;
    use crate::mla::{commutator_bracket, trivial_bracket};
    use std::sync::Arc;

    #[test]
    fn identical_brackets_are_equivalent() {
        let g = Arc::new(make_dihedral(3));
        let c = commutator_bracket(&g);
        assert!(bracket_equivalent(&c, &c, 64).unwrap().is_some());
        assert!(bracket_isotopic(&c, &c, 64).unwrap().is_some());
    }

    #[test]
    fn trivial_and_commutator_are_not_equivalent() {
        let g = Arc::new(make_dihedral(3));
        let (t, c) = (trivial_bracket(&g), commutator_bracket(&g));
        assert!(bracket_equivalent(&t, &c, 64).unwrap().is_none());
        assert!(bracket_isotopic(&t, &c, 64).unwrap().is_none());
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let g = Arc::new(make_dihedral(4));
        let c = commutator_bracket(&g);
        for kind in [Equivalence::Automorphism, Equivalence::Isotopy] {
            let ctx = EquivalenceContext::new(&g, kind, 64).unwrap();
            assert_eq!(ctx.automorphism_count(), 8);
            let canon = ctx.canonical(c.table());
            assert_eq!(ctx.canonical(&canon), canon);
        }
    }
}
