//! Exhaustive enumeration: brackets on a group, `Γ` families, pairing maps and
//! induced brackets on split extensions, with classification up to equivalence.

mod brackets;
mod induced;
mod maps;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::construction::ConstructionError;
use crate::group::{Elem, GroupError, GroupRef, Subgroup, DEFAULT_ORDER_BOUND};
use crate::mla::{Equivalence, EquivalenceContext, LieBracket, MlaError};

pub use induced::{enumerate_induced, verify_coprime_determination, CoprimeReport, InducedBracket};
pub use maps::{enumerate_gamma, enumerate_mla_homs, enumerate_pairings};

/// Default cap on backtracking nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
/// Default largest group for full bracket enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Mla(#[from] MlaError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("group of order {order} exceeds the enumeration limit {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("required ideal is not a subgroup of {0}")]
    ForeignIdeal(String),
    #[error("|H| = {h} and |K| = {k} are not coprime")]
    NotCoprime { h: usize, k: usize },
    #[error("coprime determination needs a trivial action")]
    NotDirect,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_group_order: usize,
    /// Only brackets for which this subgroup is an ideal.
    pub require_ideal: Option<Subgroup>,
    /// Report class representatives instead of every bracket.
    pub up_to_iso: bool,
    pub equivalence: Equivalence,
    /// `0` uses the ambient thread pool, `1` runs sequentially.
    pub worker_count: usize,
    pub node_budget: u64,
    /// Largest group for which automorphisms are computed.
    pub automorphism_bound: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            require_ideal: None,
            up_to_iso: false,
            equivalence: Equivalence::default(),
            worker_count: 0,
            node_budget: DEFAULT_NODE_BUDGET,
            automorphism_bound: DEFAULT_ORDER_BOUND,
        }
    }
}

impl SearchConfig {
    /// Runs `f` on a pool with `worker_count` threads (or the ambient pool).
    pub(crate) fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.worker_count <= 1 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.worker_count)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationResult<T> {
    pub raw_count: usize,
    pub class_count: usize,
    /// `false` iff the node budget ran out before the search space was covered.
    pub exhausted: bool,
    pub items: Vec<T>,
}

impl<T> EnumerationResult<T> {
    pub fn map<U>(self, f: impl FnMut(T) -> U) -> EnumerationResult<U> {
        EnumerationResult {
            raw_count: self.raw_count,
            class_count: self.class_count,
            exhausted: self.exhausted,
            items: self.items.into_iter().map(f).collect(),
        }
    }
}

/// Representatives (canonical tables, sorted) of the classes among `tables`.
pub(crate) fn classify(
    g: &GroupRef,
    tables: &[Vec<Elem>],
    kind: Equivalence,
    bound: usize,
) -> Result<Vec<Vec<Elem>>, GroupError> {
    let ctx = EquivalenceContext::new(g, kind, bound)?;
    let set: BTreeSet<Vec<Elem>> = tables.iter().map(|t| ctx.canonical(t)).collect();
    Ok(set.into_iter().collect())
}

/// Number of classes among brackets on one group.
pub fn classify_brackets(
    brackets: &[LieBracket],
    config: &SearchConfig,
) -> Result<usize, SearchError> {
    let Some(first) = brackets.first() else {
        return Ok(0);
    };
    let g = first.group();
    if brackets.iter().any(|b| !b.group().same_table(g)) {
        return Err(MlaError::DifferentGroups.into());
    }
    let tables: Vec<Vec<Elem>> = brackets.iter().map(|b| b.table().to_vec()).collect();
    Ok(classify(g, &tables, config.equivalence, config.automorphism_bound)?.len())
}

/// All brackets on `g`, sorted lexicographically by table.
pub fn enumerate_brackets(
    g: &GroupRef,
    config: &SearchConfig,
) -> Result<EnumerationResult<LieBracket>, SearchError> {
    if g.order() > config.max_group_order {
        return Err(SearchError::OrderTooLarge {
            order: g.order(),
            max: config.max_group_order,
        });
    }
    let inside = match &config.require_ideal {
        Some(s) if !s.parent().same_table(g) => {
            return Err(SearchError::ForeignIdeal(g.name().to_string()))
        }
        Some(s) => Some(s.indicator()),
        None => None,
    };
    let normal = config.require_ideal.as_ref().is_none_or(|s| s.is_normal());
    let parallel = config.worker_count != 1;
    let outcome = config.run(|| brackets::search(g, inside, config.node_budget, parallel));
    let mut tables = if normal { outcome.tables } else { Vec::new() };
    tables.sort();
    let reps = classify(g, &tables, config.equivalence, config.automorphism_bound)?;
    let raw_count = tables.len();
    let class_count = reps.len();
    let items = if config.up_to_iso { reps } else { tables };
    Ok(EnumerationResult {
        raw_count,
        class_count,
        exhausted: outcome.completed,
        items: items
            .into_iter()
            .map(|t| LieBracket::from_flat_unchecked(g.clone(), t))
            .collect(),
    })
}

/// Number of positive divisors of `n`.
pub fn tau(n: u64) -> u64 {
    assert!(n >= 1, "tau needs n >= 1");
    let mut count = 1;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        count *= e + 1;
        p += 1;
    }
    if m > 1 {
        count *= 2;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, make_quaternion, subgroup_generated};
    use crate::mla::{commutator_bracket, verify_mla};
    use std::sync::Arc;

    fn up_to_iso() -> SearchConfig {
        SearchConfig {
            up_to_iso: true,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn tau_values() {
        assert_eq!([1, 2, 3, 4, 6, 12, 36].map(tau), [1, 2, 2, 3, 4, 6, 9]);
    }

    #[test]
    fn cyclic_groups_have_only_the_trivial_bracket() {
        for n in [1, 2, 6, 10] {
            let g: GroupRef = Arc::new(make_cyclic(n));
            let r = enumerate_brackets(&g, &SearchConfig::default()).unwrap();
            assert_eq!((r.raw_count, r.class_count), (1, 1), "Z{n}");
            assert!(r.exhausted);
        }
    }

    #[test]
    fn s3_has_two_classes() {
        let g: GroupRef = Arc::new(make_dihedral(3));
        let r = enumerate_brackets(&g, &up_to_iso()).unwrap();
        assert_eq!(r.class_count, 2);
        assert!(r.items.iter().any(|b| b.is_trivial()));
        for b in &r.items {
            assert!(verify_mla(&g, &b.rows()).unwrap().is_empty());
        }
    }

    #[test]
    fn d4_and_q8_class_counts() {
        let d4: GroupRef = Arc::new(make_dihedral(4));
        assert_eq!(
            enumerate_brackets(&d4, &up_to_iso()).unwrap().class_count,
            3
        );
        let q8: GroupRef = Arc::new(make_quaternion(2));
        assert_eq!(
            enumerate_brackets(&q8, &up_to_iso()).unwrap().class_count,
            2
        );
    }

    #[test]
    fn result_is_independent_of_worker_count() {
        let g: GroupRef = Arc::new(make_dihedral(4));
        let seq = enumerate_brackets(
            &g,
            &SearchConfig {
                worker_count: 1,
                ..Default::default()
            },
        );
        let par = enumerate_brackets(
            &g,
            &SearchConfig {
                worker_count: 4,
                ..Default::default()
            },
        );
        assert_eq!(seq.unwrap(), par.unwrap());
    }

    #[test]
    fn required_ideal_restricts_the_search() {
        let g: GroupRef = Arc::new(make_dihedral(4));
        let all = enumerate_brackets(&g, &SearchConfig::default()).unwrap();
        let rotations = subgroup_generated(&g, &[1]);
        let cfg = SearchConfig {
            require_ideal: Some(rotations),
            ..Default::default()
        };
        let restricted = enumerate_brackets(&g, &cfg).unwrap();
        assert!(restricted.raw_count <= all.raw_count);
        let commutator = commutator_bracket(&g);
        assert!(restricted.items.contains(&commutator));
    }

    #[test]
    fn non_normal_ideal_admits_nothing() {
        let g: GroupRef = Arc::new(make_dihedral(3));
        let reflection = subgroup_generated(&g, &[3]);
        let cfg = SearchConfig {
            require_ideal: Some(reflection),
            ..Default::default()
        };
        assert_eq!(enumerate_brackets(&g, &cfg).unwrap().raw_count, 0);
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let g: GroupRef = Arc::new(make_dihedral(4));
        let cfg = SearchConfig {
            node_budget: 3,
            worker_count: 1,
            ..Default::default()
        };
        let r = enumerate_brackets(&g, &cfg).unwrap();
        assert!(!r.exhausted);
    }

    #[test]
    fn order_limit_is_enforced() {
        let g: GroupRef = Arc::new(make_cyclic(13));
        assert_eq!(
            enumerate_brackets(&g, &SearchConfig::default()).unwrap_err(),
            SearchError::OrderTooLarge { order: 13, max: 12 }
        );
    }
}
