//! The multiplicative Lie algebra `(End(H), ·, *)` of an abelian group `H`, with
//! `(F₁·F₂)(h) = F₁(h)F₂(h)` and `(F₁*F₂)(h) = F₁(F₂(h))·F₂(F₁(h⁻¹))`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{LieBracket, MlaError};
use crate::group::{endomorphisms, Elem, FiniteGroup, GroupMap, GroupRef};

#[derive(Debug, Clone)]
pub struct EndMla {
    /// `End(H)` under pointwise product; element `i` is `maps[i]`.
    pub group: GroupRef,
    pub bracket: LieBracket,
    pub maps: Vec<GroupMap>,
}

impl EndMla {
    /// Element index of an endomorphism given by its image table.
    pub fn index_of(&self, images: &[Elem]) -> Option<Elem> {
        self.maps.iter().position(|m| m.images() == images)
    }
}

/// Builds `End(H)` with its `*` bracket. The bracket is verified before returning.
pub fn end_mla(h: &GroupRef) -> Result<EndMla, MlaError> {
    let maps = endomorphisms(h)?;
    let index: HashMap<&[Elem], Elem> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.images(), i))
        .collect();
    let m = maps.len();
    let lookup = |images: Vec<Elem>| -> Elem { index[images.as_slice()] };
    let mut product = Vec::with_capacity(m * m);
    let mut star = Vec::with_capacity(m * m);
    for f1 in &maps {
        for f2 in &maps {
            product.push(lookup(
                h.elements()
                    .map(|x| h.mul(f1.apply(x), f2.apply(x)))
                    .collect(),
            ));
            star.push(lookup(
                h.elements()
                    .map(|x| h.mul(f1.apply(f2.apply(x)), f2.apply(f1.apply(h.inv(x)))))
                    .collect(),
            ));
        }
    }
    let group = Arc::new(FiniteGroup::from_flat_unchecked(
        format!("End({})", h.name()),
        m,
        product,
        None,
    ));
    let bracket = LieBracket::from_flat(group.clone(), star)?;
    Ok(EndMla {
        group,
        bracket,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, make_direct};

    #[test]
    fn end_z4_has_trivial_bracket() {
        let e = end_mla(&Arc::new(make_cyclic(4))).unwrap();
        assert_eq!(e.group.order(), 4);
        assert!(e.bracket.is_trivial());
    }

    #[test]
    fn end_klein_four_is_order_16() {
        let e = end_mla(&Arc::new(make_direct(&make_cyclic(2), &make_cyclic(2)))).unwrap();
        assert_eq!(e.group.order(), 16);
        assert!(!e.bracket.is_trivial());
    }

    #[test]
    fn identity_endomorphism_brackets_to_zero() {
        let e = end_mla(&Arc::new(make_cyclic(6))).unwrap();
        let id = e.index_of(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(e.bracket.star(id, id), e.group.identity());
        assert_eq!(e.maps[e.group.identity()].images(), &[0; 6]);
    }

    #[test]
    fn nonabelian_input_is_rejected() {
        assert!(end_mla(&Arc::new(make_dihedral(3))).is_err());
    }
}
