//! Homomorphisms, found by assigning images to generators and extending.

use std::fmt;

use super::{Elem, FiniteGroup, GroupError, GroupRef};

const UNSET: Elem = usize::MAX;

/// A homomorphism between two finite groups, stored as an image table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMap {
    domain: GroupRef,
    codomain: GroupRef,
    images: Vec<Elem>,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupMap({} -> {}: {:?})",
            self.domain.name(),
            self.codomain.name(),
            self.images
        )
    }
}

impl GroupMap {
    /// Checks `images[xy] = images[x]·images[y]` for all pairs.
    pub fn new(
        domain: GroupRef,
        codomain: GroupRef,
        images: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        if images.len() != domain.order() {
            return Err(GroupError::NotHomomorphism(format!(
                "image table has {} entries, domain has order {}",
                images.len(),
                domain.order()
            )));
        }
        for &y in &images {
            codomain.check_elem(y)?;
        }
        for x in domain.elements() {
            for y in domain.elements() {
                if images[domain.mul(x, y)] != codomain.mul(images[x], images[y]) {
                    return Err(GroupError::NotHomomorphism(format!("fails at ({x},{y})")));
                }
            }
        }
        Ok(GroupMap {
            domain,
            codomain,
            images,
        })
    }

    pub(crate) fn new_unchecked(domain: GroupRef, codomain: GroupRef, images: Vec<Elem>) -> Self {
        GroupMap {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(group: &GroupRef) -> Self {
        GroupMap::new_unchecked(group.clone(), group.clone(), group.elements().collect())
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.order() != self.codomain.order() {
            return false;
        }
        let mut seen = vec![false; self.codomain.order()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        assert!(
            other.codomain.same_table(&self.domain),
            "maps are not composable"
        );
        let images = other.images.iter().map(|&y| self.images[y]).collect();
        GroupMap::new_unchecked(other.domain.clone(), self.codomain.clone(), images)
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Some(GroupMap::new_unchecked(
            self.codomain.clone(),
            self.domain.clone(),
            images,
        ))
    }
}

/// Extends generator images to the subgroup they generate. Returns `None` when the
/// assignment is inconsistent (no homomorphism restricts to it).
fn extend(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let mut map = vec![UNSET; domain.order()];
    map[domain.identity()] = codomain.identity();
    let mut queue = vec![domain.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let y = domain.mul(x, g);
            let fy = codomain.mul(map[x], img);
            if map[y] == UNSET {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Depth-first search over generator images. `candidates[i]` lists the allowed
/// images of generator `i`; every consistent total map is passed to `visit`.
fn search_maps(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    candidates: &[Vec<Elem>],
    bijective: bool,
    visit: &mut dyn FnMut(Vec<Elem>),
) {
    let gens = domain.generators();
    let mut chosen = Vec::with_capacity(gens.len());
    fn rec(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        gens: &[Elem],
        candidates: &[Vec<Elem>],
        bijective: bool,
        chosen: &mut Vec<Elem>,
        visit: &mut dyn FnMut(Vec<Elem>),
    ) {
        let depth = chosen.len();
        if depth == gens.len() {
            if let Some(map) = extend(domain, codomain, gens, chosen) {
                if !bijective || {
                    let mut seen = vec![false; codomain.order()];
                    map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
                } {
                    visit(map);
                }
            }
            return;
        }
        for &c in &candidates[depth] {
            chosen.push(c);
            if extend(domain, codomain, &gens[..=depth], chosen).is_some() {
                rec(domain, codomain, gens, candidates, bijective, chosen, visit);
            }
            chosen.pop();
        }
    }
    rec(
        domain,
        codomain,
        gens,
        candidates,
        bijective,
        &mut chosen,
        visit,
    );
}

fn check_bound(g: &FiniteGroup, bound: usize) -> Result<(), GroupError> {
    if g.order() > bound {
        Err(GroupError::OrderBoundExceeded {
            order: g.order(),
            bound,
        })
    } else {
        Ok(())
    }
}

/// All homomorphisms `domain → codomain`, in lexicographic order of generator images.
pub fn homomorphisms(domain: &GroupRef, codomain: &GroupRef) -> Vec<GroupMap> {
    let candidates: Vec<Vec<Elem>> = domain
        .generators()
        .iter()
        .map(|&g| {
            let n = domain.element_order(g);
            codomain
                .elements()
                .filter(|&y| n.is_multiple_of(codomain.element_order(y)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    search_maps(domain, codomain, &candidates, false, &mut |m| {
        out.push(GroupMap::new_unchecked(domain.clone(), codomain.clone(), m))
    });
    out
}

/// All endomorphisms of an abelian group, in lexicographic order of generator images.
pub fn endomorphisms(h: &GroupRef) -> Result<Vec<GroupMap>, GroupError> {
    if !h.is_abelian() {
        return Err(GroupError::NotAbelian(h.name().to_string()));
    }
    Ok(homomorphisms(h, h))
}

/// All automorphisms, generator images restricted to elements of equal order.
pub fn automorphisms(g: &GroupRef, bound: usize) -> Result<Vec<GroupMap>, GroupError> {
    check_bound(g, bound)?;
    let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let candidates: Vec<Vec<Elem>> = g
        .generators()
        .iter()
        .map(|&gen| g.elements().filter(|&y| orders[y] == orders[gen]).collect())
        .collect();
    let mut out = Vec::new();
    search_maps(g, g, &candidates, true, &mut |m| {
        out.push(GroupMap::new_unchecked(g.clone(), g.clone(), m))
    });
    Ok(out)
}

/// An explicit isomorphism `g1 → g2`, or `None`.
pub fn is_isomorphic(
    g1: &GroupRef,
    g2: &GroupRef,
    bound: usize,
) -> Result<Option<GroupMap>, GroupError> {
    check_bound(g1, bound)?;
    check_bound(g2, bound)?;
    if g1.order() != g2.order() || super::order_profile(g1) != super::order_profile(g2) {
        return Ok(None);
    }
    let orders2: Vec<usize> = g2.elements().map(|x| g2.element_order(x)).collect();
    let candidates: Vec<Vec<Elem>> = g1
        .generators()
        .iter()
        .map(|&gen| {
            let o = g1.element_order(gen);
            g2.elements().filter(|&y| orders2[y] == o).collect()
        })
        .collect();
    let mut found = None;
    search_maps(g1, g2, &candidates, true, &mut |m| {
        if found.is_none() {
            found = Some(m);
        }
    });
    Ok(found.map(|m| GroupMap::new_unchecked(g1.clone(), g2.clone(), m)))
}
