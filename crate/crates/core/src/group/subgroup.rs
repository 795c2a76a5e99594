use std::fmt;

use super::{closure, Elem, FiniteGroup, GroupError, GroupRef};

/// A subgroup, stored as the sorted list of its members in the parent group.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupRef,
    members: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({}: {:?})", self.parent.name(), self.members)
    }
}

impl Subgroup {
    /// Validates that `members` is closed under product and inverse and contains the identity.
    pub fn new(parent: GroupRef, mut members: Vec<Elem>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            parent.check_elem(m)?;
        }
        let mut inside = vec![false; parent.order()];
        for &m in &members {
            inside[m] = true;
        }
        let closed = inside[parent.identity()]
            && members.iter().all(|&a| {
                inside[parent.inv(a)] && members.iter().all(|&b| inside[parent.mul(a, b)])
            });
        if !closed {
            return Err(GroupError::NotHomomorphism(format!(
                "{members:?} is not a subgroup of {}",
                parent.name()
            )));
        }
        Ok(Subgroup { parent, members })
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: vec![parent.identity()],
        }
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: parent.elements().collect(),
        }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Membership table indexed by parent elements.
    pub fn indicator(&self) -> Vec<bool> {
        let mut inside = vec![false; self.parent.order()];
        for &m in &self.members {
            inside[m] = true;
        }
        inside
    }

    pub fn is_normal(&self) -> bool {
        let inside = self.indicator();
        self.parent.elements().all(|g| {
            self.members
                .iter()
                .all(|&s| inside[self.parent.conjugate(g, s)])
        })
    }

    /// The subgroup as a group in its own right; member `i` becomes element `i`.
    pub fn to_group(&self) -> FiniteGroup {
        let n = self.members.len();
        let mut index = vec![usize::MAX; self.parent.order()];
        for (i, &m) in self.members.iter().enumerate() {
            index[m] = i;
        }
        let table = self
            .members
            .iter()
            .flat_map(|&a| self.members.iter().map(move |&b| (a, b)))
            .map(|(a, b)| index[self.parent.mul(a, b)])
            .collect();
        FiniteGroup::from_flat_unchecked(
            format!("subgroup of {}", self.parent.name()),
            n,
            table,
            None,
        )
    }
}

/// Closure of `s ∪ {1}` under product and inverse.
pub fn subgroup_generated(g: &GroupRef, s: &[Elem]) -> Subgroup {
    let members = closure(g.order(), g.identity(), s, |a, b| g.mul(a, b));
    Subgroup {
        parent: g.clone(),
        members,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral};
    use std::sync::Arc;

    #[test]
    fn empty_set_generates_trivial_subgroup() {
        let g = Arc::new(make_dihedral(4));
        assert_eq!(subgroup_generated(&g, &[]).members(), &[0]);
    }

    #[test]
    fn rotation_subgroup_of_d4() {
        let g = Arc::new(make_dihedral(4));
        let s = subgroup_generated(&g, &[1]);
        assert_eq!(s.members(), &[0, 1, 2, 3]);
        assert!(s.is_normal());
    }

    #[test]
    fn commutator_subgroup_of_s3_has_order_3() {
        let g = Arc::new(make_dihedral(3));
        let comms: Vec<Elem> = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .map(|(x, y)| g.commutator(x, y))
            .collect();
        let s = subgroup_generated(&g, &comms);
        assert_eq!(s.order(), 3);
        assert_eq!(s.members(), &[0, 1, 2]);
    }

    #[test]
    fn reflection_subgroup_is_not_normal() {
        let g = Arc::new(make_dihedral(3));
        let s = subgroup_generated(&g, &[3]);
        assert_eq!(s.order(), 2);
        assert!(!s.is_normal());
    }

    #[test]
    fn non_closed_set_is_rejected() {
        let g = Arc::new(make_cyclic(4));
        assert!(Subgroup::new(g.clone(), vec![0, 1]).is_err());
        assert!(Subgroup::new(g, vec![2, 0]).is_ok());
    }
}
