use std::collections::BTreeMap;
use std::sync::Arc;

use super::{
    is_isomorphic, make_cyclic, make_dihedral, make_direct, make_quaternion, FiniteGroup,
    GroupError, GroupRef, DEFAULT_ORDER_BOUND,
};

/// Sorted `(element order, number of elements)` pairs.
pub fn order_profile(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut counts = BTreeMap::new();
    for x in g.elements() {
        *counts.entry(g.element_order(x)).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors `d₁ | d₂ | …` (ascending, all > 1) of an abelian group.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
    if !g.is_abelian() {
        return Err(GroupError::NotAbelian(g.name().to_string()));
    }
    // parts[p] = exponents of the cyclic p-power factors, descending
    let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for (p, e) in prime_factors(g.order()) {
        // s_k = log_p |{x : x^(p^k) = 1}|
        let mut s = vec![0u32];
        for k in 1..=e {
            let pk = p.pow(k);
            let count = g
                .elements()
                .filter(|&x| g.pow(x, pk) == g.identity())
                .count();
            s.push((count as f64).log(p as f64).round() as u32);
        }
        // number of parts of size >= k is s_k - s_{k-1}
        let at_least: Vec<u32> = (1..=e as usize).map(|k| s[k] - s[k - 1]).collect();
        let n_parts = at_least.first().copied().unwrap_or(0) as usize;
        let parts: Vec<u32> = (0..n_parts)
            .map(|i| at_least.iter().filter(|&&c| c as usize > i).count() as u32)
            .collect();
        per_prime.push((p, parts));
    }
    let width = per_prime
        .iter()
        .map(|(_, parts)| parts.len())
        .max()
        .unwrap_or(0);
    let mut factors: Vec<usize> = (0..width)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, parts)| parts.get(i).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    factors.sort_unstable();
    Ok(factors)
}

fn abelian_label(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "Z1".to_string();
    }
    factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Names a group from the preset catalog.
///
/// Abelian groups are labelled by invariant factors (`Z2xZ4`); nonabelian groups are
/// matched against `Dn`, `Q4n` and their direct products with a cyclic factor
/// (`Z3xD3`). Labels use the same grammar as preset names.
pub fn identify_small_group(g: &GroupRef) -> Result<String, GroupError> {
    if g.is_abelian() {
        return Ok(abelian_label(&abelian_invariants(g)?));
    }
    let order = g.order();
    if order > DEFAULT_ORDER_BOUND {
        return Err(GroupError::OrderBoundExceeded {
            order,
            bound: DEFAULT_ORDER_BOUND,
        });
    }
    for m in divisors(order) {
        let rest = order / m;
        let mut candidates: Vec<FiniteGroup> = Vec::new();
        if rest.is_multiple_of(2) && rest >= 6 {
            candidates.push(make_dihedral(rest / 2));
        }
        if rest.is_multiple_of(4) && rest >= 8 {
            candidates.push(make_quaternion(rest / 4));
        }
        for c in candidates {
            let candidate = if m == 1 {
                c
            } else {
                make_direct(&make_cyclic(m), &c)
            };
            let name = candidate.name().to_string();
            if is_isomorphic(g, &Arc::new(candidate), DEFAULT_ORDER_BOUND)?.is_some() {
                return Ok(name);
            }
        }
    }
    Err(GroupError::Unidentified {
        order,
        profile: order_profile(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{subgroup_generated, Subgroup};

    fn arc(g: FiniteGroup) -> GroupRef {
        Arc::new(g)
    }

    #[test]
    fn invariant_factors() {
        let z2 = make_cyclic(2);
        let z4 = make_cyclic(4);
        assert_eq!(
            abelian_invariants(&make_direct(&z2, &z4)).unwrap(),
            vec![2, 4]
        );
        assert_eq!(
            abelian_invariants(&make_direct(&z4, &z2)).unwrap(),
            vec![2, 4]
        );
        assert_eq!(
            abelian_invariants(&make_direct(&z2, &make_cyclic(3))).unwrap(),
            vec![6]
        );
        assert_eq!(
            abelian_invariants(&make_cyclic(1)).unwrap(),
            Vec::<usize>::new()
        );
        let v = make_direct(&make_direct(&z2, &z2), &make_cyclic(6));
        assert_eq!(abelian_invariants(&v).unwrap(), vec![2, 2, 6]);
    }

    #[test]
    fn abelian_subgroup_with_invariants_2_4_is_labelled() {
        // {(h, x) : h ∈ {0,2}, x ∈ ⟨b⟩} inside Z4 × D4
        let g = arc(make_direct(&make_cyclic(4), &make_dihedral(4)));
        let s = subgroup_generated(&g, &[2, 4]);
        assert_eq!(s.order(), 8);
        let label = identify_small_group(&arc(s.to_group())).unwrap();
        assert_eq!(label, "Z2xZ4");
    }

    #[test]
    fn nonabelian_labels() {
        assert_eq!(identify_small_group(&arc(make_dihedral(3))).unwrap(), "D3");
        assert_eq!(
            identify_small_group(&arc(make_quaternion(2))).unwrap(),
            "Q8"
        );
        let g = arc(make_direct(&make_cyclic(3), &make_dihedral(3)));
        assert_eq!(identify_small_group(&g).unwrap(), "Z3xD3");
        let whole = Subgroup::whole(&g);
        assert_eq!(
            identify_small_group(&arc(whole.to_group())).unwrap(),
            "Z3xD3"
        );
    }

    #[test]
    fn profiles_distinguish_d4_from_q8() {
        assert_ne!(
            order_profile(&make_dihedral(4)),
            order_profile(&make_quaternion(2))
        );
        assert_eq!(
            order_profile(&make_quaternion(2)),
            vec![(1, 1), (2, 1), (4, 6)]
        );
    }
}
