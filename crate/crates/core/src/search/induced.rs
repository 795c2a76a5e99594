//! Induced brackets on `H ⋊_σ K` over all accepted `(⋆, Γ, β)`.

use serde::Serialize;

use super::{classify, enumerate_brackets, enumerate_gamma, enumerate_pairings};
use super::{EnumerationResult, SearchConfig, SearchError};
use crate::construction::{
    check_theorem_conditions_with, decompose_bracket, induce_bracket, Action, ConstructionData,
    Evaluation,
};
use crate::group::{subgroup_generated, Elem, GroupRef};
use crate::mla::{is_ideal, LieBracket};

#[derive(Debug, Clone)]
pub struct InducedBracket {
    pub data: ConstructionData,
    pub bracket: LieBracket,
}

impl PartialEq for InducedBracket {
    fn eq(&self, other: &Self) -> bool {
        self.bracket == other.bracket
    }
}

/// Every bracket induced by accepted data, in the order `⋆` (sorted table), then `Γ`,
/// then `β`. With `up_to_iso` only the first bracket of each class is kept.
pub fn enumerate_induced(
    sigma: &Action,
    config: &SearchConfig,
) -> Result<EnumerationResult<InducedBracket>, SearchError> {
    let k = sigma.k();
    let k_config = SearchConfig {
        require_ideal: None,
        up_to_iso: false,
        ..config.clone()
    };
    let stars = enumerate_brackets(k, &k_config)?;
    let mut found = Vec::new();
    for star_k in &stars.items {
        let pairings = enumerate_pairings(sigma, star_k);
        for gamma in enumerate_gamma(sigma, Some(star_k))? {
            for beta in &pairings {
                let data = ConstructionData::new(
                    sigma.clone(),
                    star_k.clone(),
                    gamma.clone(),
                    beta.clone(),
                )?;
                if !check_theorem_conditions_with(&data, Evaluation::ShortCircuit).all_pass() {
                    continue;
                }
                let bracket = induce_bracket(&data)?;
                found.push(InducedBracket { data, bracket });
            }
        }
    }
    let g = ConstructionData::trivial(sigma.clone()).group().clone();
    let tables: Vec<Vec<Elem>> = found.iter().map(|b| b.bracket.table().to_vec()).collect();
    let reps = classify(&g, &tables, config.equivalence, config.automorphism_bound)?;
    let raw_count = found.len();
    let items = if config.up_to_iso {
        let ctx =
            crate::mla::EquivalenceContext::new(&g, config.equivalence, config.automorphism_bound)?;
        let mut seen = std::collections::BTreeSet::new();
        found
            .into_iter()
            .filter(|b| seen.insert(ctx.canonical(b.bracket.table())))
            .collect()
    } else {
        found
    };
    Ok(EnumerationResult {
        raw_count,
        class_count: reps.len(),
        exhausted: stars.exhausted,
        items,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoprimeReport {
    /// Number of brackets on `H × K` examined in full mode, `None` when skipped.
    pub brackets_checked: Option<usize>,
    /// `H` is an ideal of every bracket on `H × K`.
    pub h_always_ideal: Option<bool>,
    /// Every bracket decomposes with trivial `β`.
    pub pairing_always_trivial: Option<bool>,
    /// Class count of all brackets on `H × K` (full mode).
    pub full_class_count: Option<usize>,
    pub induced_class_count: usize,
    /// Every induced bracket has trivial `β`.
    pub induced_pairing_trivial: bool,
    /// All checks that ran agree.
    pub consistent: bool,
    pub exhausted: bool,
}

/// For coprime `|H|` and `|K|` and trivial action, checks that every bracket on
/// `H × K` has `H` as an ideal and decomposes with trivial `β`, and that the class
/// counts of all brackets and of induced brackets agree. Groups above
/// `max_group_order` only get the induced count.
pub fn verify_coprime_determination(
    sigma: &Action,
    config: &SearchConfig,
) -> Result<CoprimeReport, SearchError> {
    let (h, k) = (sigma.h(), sigma.k());
    if gcd(h.order(), k.order()) != 1 {
        return Err(SearchError::NotCoprime {
            h: h.order(),
            k: k.order(),
        });
    }
    if !sigma.is_trivial() {
        return Err(SearchError::NotDirect);
    }
    let induced = enumerate_induced(sigma, config)?;
    let induced_pairing_trivial = induced.items.iter().all(|b| b.data.beta().is_trivial());
    let g: GroupRef = ConstructionData::trivial(sigma.clone()).group().clone();
    let mut report = CoprimeReport {
        brackets_checked: None,
        h_always_ideal: None,
        pairing_always_trivial: None,
        full_class_count: None,
        induced_class_count: induced.class_count,
        induced_pairing_trivial,
        consistent: induced_pairing_trivial,
        exhausted: induced.exhausted,
    };
    if g.order() > config.max_group_order {
        return Ok(report);
    }
    let all = enumerate_brackets(
        &g,
        &SearchConfig {
            require_ideal: None,
            ..config.clone()
        },
    )?;
    if !all.exhausted {
        report.exhausted = false;
        return Ok(report);
    }
    let nh = h.order();
    let h_sub = subgroup_generated(&g, &(0..nh).collect::<Vec<_>>());
    let ideal = all.items.iter().all(|b| is_ideal(b, &h_sub));
    let trivial_pairing = ideal
        && all
            .items
            .iter()
            .all(|b| decompose_bracket(sigma, b).is_ok_and(|d| d.beta().is_trivial()));
    report.brackets_checked = Some(all.items.len());
    report.h_always_ideal = Some(ideal);
    report.pairing_always_trivial = Some(trivial_pairing);
    report.full_class_count = Some(all.class_count);
    report.consistent &= ideal && trivial_pairing && all.class_count == induced.class_count;
    Ok(report)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
