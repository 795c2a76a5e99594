//! Enumeration of `Γ` families and pairing maps.

use crate::construction::{
    check_gamma_identities, enumerate_bilinear_pairings, enumerate_twisted_pairings, Action,
    GammaMap, PairingConstraints, PairingMap,
};
use crate::group::{endomorphisms, homomorphisms, Elem, GroupRef};
use crate::mla::{end_mla, LieBracket};

use super::SearchError;

/// Extends `Γ` from the generators of `K` by `Γ_{xg} = Γ_x + σ_x ∘ Γ_g`; `None` when
/// two paths to the same element disagree.
fn extend_gamma(sigma: &Action, images: &[&[Elem]]) -> Option<Vec<Vec<Elem>>> {
    let (h, k) = (sigma.h(), sigma.k());
    let gens = k.generators();
    let mut gamma: Vec<Option<Vec<Elem>>> = vec![None; k.order()];
    gamma[k.identity()] = Some(vec![h.identity(); h.order()]);
    let mut queue = vec![k.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, img) in gens.iter().zip(images) {
            let gx = gamma[x].as_ref().expect("visited");
            let value: Vec<Elem> = h
                .elements()
                .map(|a| h.mul(gx[a], sigma.apply(x, img[a])))
                .collect();
            let y = k.mul(x, g);
            match &gamma[y] {
                None => {
                    gamma[y] = Some(value);
                    queue.push(y);
                }
                Some(existing) if *existing != value => return None,
                Some(_) => {}
            }
        }
    }
    Some(
        gamma
            .into_iter()
            .map(|g| g.expect("generators span K"))
            .collect(),
    )
}

/// All `Γ` passing the `Γ` identities, by choosing `Γ_g ∈ End(H)` on generators and
/// propagating. Without a bracket on `K` only the product rule is imposed.
pub fn enumerate_gamma(
    sigma: &Action,
    star_k: Option<&LieBracket>,
) -> Result<Vec<GammaMap>, SearchError> {
    let (h, k) = (sigma.h(), sigma.k());
    let ends = endomorphisms(h)?;
    let r = k.generators().len();
    let mut digits = vec![0usize; r];
    let mut out = Vec::new();
    loop {
        let images: Vec<&[Elem]> = digits.iter().map(|&d| ends[d].images()).collect();
        if let Some(tables) = extend_gamma(sigma, &images) {
            let gamma = GammaMap::new_unchecked(h.clone(), k.clone(), tables);
            let keep = match star_k {
                Some(star) => check_gamma_identities(sigma, &gamma, star).pass(),
                None => true,
            };
            if keep {
                out.push(gamma);
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < ends.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Pairing maps compatible with `σ` and `⋆` on `K`: bilinear, alternating and
/// conjugation-invariant when `σ` is trivial, the twisted analogues otherwise.
pub fn enumerate_pairings(sigma: &Action, star_k: &LieBracket) -> Vec<PairingMap> {
    if sigma.is_trivial() {
        let constraints = PairingConstraints {
            alternating: true,
            conj_invariant: true,
        };
        enumerate_bilinear_pairings(sigma.k(), sigma.h(), constraints)
    } else {
        enumerate_twisted_pairings(sigma, star_k)
    }
}

/// `Γ` that are homomorphisms `(K, ·, ⋆) → (End(H), ·, *)` for both operations,
/// found through the group structure of `End(H)`.
pub fn enumerate_mla_homs(
    k: &GroupRef,
    star_k: &LieBracket,
    h: &GroupRef,
) -> Result<Vec<GammaMap>, SearchError> {
    let end = end_mla(h)?;
    let homs = homomorphisms(k, &end.group);
    Ok(homs
        .into_iter()
        .filter(|f| {
            k.elements().all(|x| {
                k.elements()
                    .all(|y| f.apply(star_k.star(x, y)) == end.bracket.star(f.apply(x), f.apply(y)))
            })
        })
        .map(|f| {
            let tables = k
                .elements()
                .map(|x| end.maps[f.apply(x)].images().to_vec())
                .collect();
            GammaMap::new_unchecked(h.clone(), k.clone(), tables)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral};
    use crate::mla::trivial_bracket;
    use std::sync::Arc;

    #[test]
    fn z3_by_inversion_gamma_families() {
        let h: GroupRef = Arc::new(make_cyclic(3));
        let k: GroupRef = Arc::new(make_cyclic(2));
        let sigma = Action::inversion_by_parity(&h, &k, &[true]).unwrap();
        let all = enumerate_gamma(&sigma, Some(&trivial_bracket(&k))).unwrap();
        // Γ_g = multiplication by 0, 1 or 2; each satisfies both identities.
        let at_g: Vec<Vec<Elem>> = all.iter().map(|g| g.table(1).to_vec()).collect();
        assert_eq!(at_g, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn d4_into_z4_group_homomorphisms() {
        let h: GroupRef = Arc::new(make_cyclic(4));
        let k: GroupRef = Arc::new(make_dihedral(4));
        let gammas = enumerate_gamma(&Action::trivial(&h, &k), None).unwrap();
        assert_eq!(gammas.len(), 4);
        for g in &gammas {
            assert!(g.tables().iter().all(|t| t[1] % 2 == 0));
        }
    }

    #[test]
    fn coprime_gamma_is_zero() {
        let h: GroupRef = Arc::new(make_cyclic(5));
        let k: GroupRef = Arc::new(make_dihedral(3));
        let gammas = enumerate_gamma(&Action::trivial(&h, &k), Some(&trivial_bracket(&k))).unwrap();
        assert_eq!(gammas.len(), 1);
        assert!(gammas[0].is_zero());
    }

    #[test]
    fn mla_homs_match_gamma_identities_for_trivial_action() {
        let h: GroupRef = Arc::new(make_cyclic(4));
        let k: GroupRef = Arc::new(make_dihedral(4));
        let star = trivial_bracket(&k);
        let via_end = enumerate_mla_homs(&k, &star, &h).unwrap();
        let via_identities = enumerate_gamma(&Action::trivial(&h, &k), Some(&star)).unwrap();
        assert_eq!(via_end, via_identities);
        assert_eq!(via_end.len(), 4);
    }
}
