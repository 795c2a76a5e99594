//! Consistency checks on extension data: independence of the section and
//! commutation of `σ` with `Γ`.

use serde::Serialize;

use super::{Action, ConstructionData, ConstructionError, GammaMap};
use crate::group::{Elem, Subgroup};
use crate::mla::{is_ideal, LieBracket};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub sections_checked: usize,
    pub independent: bool,
    /// Section values `g(x)` (indexed by `x ∈ K`) of the first section that disagrees.
    pub first_mismatch: Option<Vec<Elem>>,
}

/// Checks that `σ^t_x(h) = t(x)·h·t(x)⁻¹` and `Γ^t_x(h) = t(x) ⋆̃ h` agree with the
/// canonical section for every section `t(x) = (g(x), x)` with `g(1) = 1`.
///
/// All `|H|^(|K|-1)` sections are visited.
pub fn section_independence_check(
    sigma: &Action,
    bracket: &LieBracket,
) -> Result<SectionReport, ConstructionError> {
    let frame = ConstructionData::trivial(sigma.clone());
    let g = frame.group().clone();
    if !g.same_table(bracket.group()) {
        return Err(ConstructionError::GroupMismatch(
            "bracket is not on H x K".into(),
        ));
    }
    let (h, k) = (sigma.h(), sigma.k());
    let (nh, nk) = (h.order(), k.order());
    let h_members: Vec<Elem> = h
        .elements()
        .map(|a| frame.encode(a, k.identity()))
        .collect();
    if !is_ideal(bracket, &Subgroup::new(g.clone(), h_members)?) {
        return Err(ConstructionError::HNotIdeal);
    }

    // Values of (σ^t_x, Γ^t_x) as functions of (x, g(x)).
    let values = |x: Elem, gx: Elem| -> Option<(Vec<Elem>, Vec<Elem>)> {
        let t = frame.encode(gx, x);
        let mut s = Vec::with_capacity(nh);
        let mut gm = Vec::with_capacity(nh);
        for a in h.elements() {
            let ha = frame.encode(a, k.identity());
            let (c, kc) = frame.decode(g.conjugate(t, ha));
            let (b, kb) = frame.decode(bracket.star(t, ha));
            if kc != k.identity() || kb != k.identity() {
                return None;
            }
            s.push(c);
            gm.push(b);
        }
        Some((s, gm))
    };
    let canonical: Vec<_> = k.elements().map(|x| values(x, h.identity())).collect();

    let free: Vec<Elem> = k.elements().filter(|&x| x != k.identity()).collect();
    let mut digits = vec![0usize; free.len()];
    let mut checked = 0;
    loop {
        checked += 1;
        let mut section = vec![h.identity(); nk];
        for (&x, &d) in free.iter().zip(&digits) {
            section[x] = d;
        }
        let agrees = free.iter().all(|&x| {
            let v = values(x, section[x]);
            v.is_some() && v == canonical[x]
        });
        if !agrees {
            return Ok(SectionReport {
                sections_checked: checked,
                independent: false,
                first_mismatch: Some(section),
            });
        }
        // Odometer over H^free.
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < nh {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    Ok(SectionReport {
        sections_checked: checked,
        independent: true,
        first_mismatch: None,
    })
}

/// `σ_x ∘ Γ_z = Γ_z ∘ σ_x` for all `x, z ∈ K`; only meaningful for abelian `K`.
pub fn sigma_gamma_commute_check(
    sigma: &Action,
    gamma: &GammaMap,
) -> Result<bool, ConstructionError> {
    let (h, k) = (sigma.h(), sigma.k());
    if !k.is_abelian() {
        return Err(ConstructionError::KNotAbelian);
    }
    Ok(k.elements().all(|x| {
        k.elements().all(|z| {
            h.elements()
                .all(|a| sigma.apply(x, gamma.apply(z, a)) == gamma.apply(z, sigma.apply(x, a)))
        })
    }))
}
