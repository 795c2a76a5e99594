//! Finite groups stored as validated Cayley tables.
//!
//! Elements are plain indices `0..order`. Presets put the identity at index 0;
//! groups read from files may place it anywhere, it is inferred from the table.

mod identify;
mod maps;
mod presets;
mod subgroup;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use identify::{abelian_invariants, identify_small_group, order_profile};
pub use maps::{automorphisms, endomorphisms, homomorphisms, is_isomorphic, GroupMap};
pub use presets::{make_cyclic, make_dihedral, make_direct, make_quaternion, make_semidirect};
pub use subgroup::{subgroup_generated, Subgroup};

/// Index of a group element.
pub type Elem = usize;

/// Shared handle to an immutable group.
pub type GroupRef = Arc<FiniteGroup>;

/// Default upper bound on group orders for automorphism and isomorphism search.
pub const DEFAULT_ORDER_BOUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group table: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<GroupViolation>),
    #[error("group {0} is not abelian")]
    NotAbelian(String),
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("unidentified order-{order} group (order profile {profile:?})")]
    Unidentified {
        order: usize,
        profile: Vec<(usize, usize)>,
    },
    #[error("element {elem} out of range for group of order {order}")]
    ElementOutOfRange { elem: usize, order: usize },
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
}

/// A single violated group axiom found by [`verify_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupViolation {
    Empty,
    NotSquare {
        row: usize,
        len: usize,
    },
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    RowNotPermutation {
        row: usize,
    },
    ColumnNotPermutation {
        col: usize,
    },
    NoIdentity,
    MissingInverse {
        elem: usize,
    },
    NotAssociative {
        x: usize,
        y: usize,
        z: usize,
    },
    GeneratorOutOfRange {
        generator: usize,
    },
    GeneratorsDoNotGenerate {
        generated: usize,
    },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::Empty => write!(f, "empty table"),
            GroupViolation::NotSquare { row, len } => write!(f, "row {row} has length {len}"),
            GroupViolation::OutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} out of range")
            }
            GroupViolation::RowNotPermutation { row } => write!(f, "row {row} not a permutation"),
            GroupViolation::ColumnNotPermutation { col } => {
                write!(f, "column {col} not a permutation")
            }
            GroupViolation::NoIdentity => write!(f, "no identity element"),
            GroupViolation::MissingInverse { elem } => write!(f, "element {elem} has no inverse"),
            GroupViolation::NotAssociative { x, y, z } => {
                write!(f, "associativity fails at ({x},{y},{z})")
            }
            GroupViolation::GeneratorOutOfRange { generator } => {
                write!(f, "generator {generator} out of range")
            }
            GroupViolation::GeneratorsDoNotGenerate { generated } => {
                write!(f, "generators only generate {generated} elements")
            }
        }
    }
}

const ASSOCIATIVITY_REPORT_CAP: usize = 16;

/// Checks a candidate Cayley table (row = left operand) against the group axioms.
///
/// Returns every violation found; an empty list means the table is a group.
/// Associativity failures are listed in lexicographic triple order, capped at 16.
pub fn verify_group(cayley: &[Vec<usize>], generators: Option<&[usize]>) -> Vec<GroupViolation> {
    let n = cayley.len();
    let mut report = Vec::new();
    if n == 0 {
        report.push(GroupViolation::Empty);
        return report;
    }
    for (row, r) in cayley.iter().enumerate() {
        if r.len() != n {
            report.push(GroupViolation::NotSquare { row, len: r.len() });
        }
    }
    if !report.is_empty() {
        return report;
    }
    for (row, r) in cayley.iter().enumerate() {
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                report.push(GroupViolation::OutOfRange { row, col, value });
            }
        }
    }
    if !report.is_empty() {
        return report;
    }
    let is_perm = |it: &mut dyn Iterator<Item = usize>| {
        let mut seen = vec![false; n];
        for v in it {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        true
    };
    for row in 0..n {
        if !is_perm(&mut cayley[row].iter().copied()) {
            report.push(GroupViolation::RowNotPermutation { row });
        }
    }
    for col in 0..n {
        if !is_perm(&mut (0..n).map(|r| cayley[r][col])) {
            report.push(GroupViolation::ColumnNotPermutation { col });
        }
    }
    let identity = (0..n).find(|&e| (0..n).all(|x| cayley[e][x] == x && cayley[x][e] == x));
    match identity {
        None => report.push(GroupViolation::NoIdentity),
        Some(e) => {
            for x in 0..n {
                if !(0..n).any(|y| cayley[x][y] == e && cayley[y][x] == e) {
                    report.push(GroupViolation::MissingInverse { elem: x });
                }
            }
        }
    }
    let mut assoc = 0;
    'outer: for x in 0..n {
        for y in 0..n {
            let xy = cayley[x][y];
            for z in 0..n {
                if cayley[xy][z] != cayley[x][cayley[y][z]] {
                    report.push(GroupViolation::NotAssociative { x, y, z });
                    assoc += 1;
                    if assoc == ASSOCIATIVITY_REPORT_CAP {
                        break 'outer;
                    }
                }
            }
        }
    }
    if let (Some(gens), Some(e)) = (generators, identity) {
        let mut ok = true;
        for &g in gens {
            if g >= n {
                report.push(GroupViolation::GeneratorOutOfRange { generator: g });
                ok = false;
            }
        }
        if ok && report.is_empty() {
            let generated = closure(n, e, gens, |a, b| cayley[a][b]).len();
            if generated != n {
                report.push(GroupViolation::GeneratorsDoNotGenerate { generated });
            }
        }
    }
    report
}

/// Elements reachable from `start` by right multiplication with `gens`.
/// In a finite group this is the generated subgroup.
pub(crate) fn closure(
    n: usize,
    identity: Elem,
    gens: &[Elem],
    mul: impl Fn(Elem, Elem) -> Elem,
) -> Vec<Elem> {
    let mut seen = vec![false; n];
    let mut queue = vec![identity];
    seen[identity] = true;
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for &g in gens {
            let y = mul(x, g);
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// A finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    generators: Option<Vec<Elem>>,
    gens: Vec<Elem>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("generators", &self.gens)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `cayley` and builds the group. The identity and inverses are inferred.
    pub fn from_table(
        name: impl Into<String>,
        cayley: &[Vec<usize>],
        generators: Option<Vec<Elem>>,
    ) -> Result<Self, GroupError> {
        let report = verify_group(cayley, generators.as_deref());
        if !report.is_empty() {
            return Err(GroupError::Invalid(report));
        }
        let n = cayley.len();
        let table: Vec<Elem> = cayley.iter().flatten().copied().collect();
        Ok(Self::from_flat_unchecked(name.into(), n, table, generators))
    }

    /// Builds a group from a flat row-major table already known to be valid.
    pub(crate) fn from_flat_unchecked(
        name: String,
        n: usize,
        table: Vec<Elem>,
        generators: Option<Vec<Elem>>,
    ) -> Self {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x))
            .expect("valid table has an identity");
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x * n + y] == identity)
                .expect("inverse");
        }
        let mut group = FiniteGroup {
            name,
            order: n,
            table,
            identity,
            inverse,
            generators: None,
            gens: Vec::new(),
        };
        group.gens = match &generators {
            Some(g) => g.clone(),
            None => group.greedy_generators(),
        };
        group.generators = generators;
        group
    }

    // Greedy generating set: repeatedly add the element of largest order (lowest
    // index on ties) not yet in the generated subgroup.
    fn greedy_generators(&self) -> Vec<Elem> {
        let orders: Vec<usize> = (0..self.order).map(|x| self.element_order(x)).collect();
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order {
            let mut in_span = vec![false; self.order];
            for &s in &span {
                in_span[s] = true;
            }
            let next = (0..self.order)
                .filter(|&x| !in_span[x])
                .max_by(|&a, &b| orders[a].cmp(&orders[b]).then(b.cmp(&a)))
                .expect("element outside span");
            gens.push(next);
            span = closure(self.order, self.identity, &gens, |a, b| self.mul(a, b));
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// Declared generators, if the group was built with any.
    pub fn declared_generators(&self) -> Option<&[Elem]> {
        self.generators.as_deref()
    }

    /// A generating set: the declared one, or a deterministic greedy choice.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn cayley_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `x g x⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(x, g), self.inverse[x])
    }

    /// `x y x⁻¹ y⁻¹`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(x, y), self.mul(self.inverse[x], self.inverse[y]))
    }

    pub fn center(&self) -> Vec<Elem> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// True when both groups have the same table and identity (names are ignored).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.identity == other.identity && self.table == other.table
    }

    pub(crate) fn check_elem(&self, x: usize) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange {
                elem: x,
                order: self.order,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_rows() -> Vec<Vec<usize>> {
        (0..4)
            .map(|a| (0..4).map(|b| (a + b) % 4).collect())
            .collect()
    }

    #[test]
    fn z4_table_is_valid() {
        assert!(verify_group(&z4_rows(), None).is_empty());
    }

    #[test]
    fn latin_square_violation_is_reported() {
        let mut rows = z4_rows();
        rows[1][1] = 1;
        let report = verify_group(&rows, None);
        assert!(report.contains(&GroupViolation::RowNotPermutation { row: 1 }));
        assert!(report
            .iter()
            .any(|v| v.to_string() == "row 1 not a permutation"));
    }

    #[test]
    fn broken_associativity_reports_a_genuine_triple() {
        // A Latin square with identity 0 that is not a group: order-5 loop.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let report = verify_group(&rows, None);
        let triples: Vec<_> = report
            .iter()
            .filter_map(|v| match v {
                GroupViolation::NotAssociative { x, y, z } => Some((*x, *y, *z)),
                _ => None,
            })
            .collect();
        assert!(!triples.is_empty());
        assert!(!report
            .iter()
            .any(|v| matches!(v, GroupViolation::RowNotPermutation { .. })));
        for (x, y, z) in triples {
            assert_ne!(rows[rows[x][y]][z], rows[x][rows[y][z]]);
        }
    }

    #[test]
    fn generators_must_generate() {
        let report = verify_group(&z4_rows(), Some(&[2]));
        assert_eq!(
            report,
            vec![GroupViolation::GeneratorsDoNotGenerate { generated: 2 }]
        );
    }

    #[test]
    fn identity_may_sit_anywhere_in_a_file_table() {
        // Z2 with the identity at index 1.
        let g = FiniteGroup::from_table("Z2", &[vec![1, 0], vec![0, 1]], None).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.inv(0), 0);
        assert_eq!(g.element_order(0), 2);
    }

    #[test]
    fn abelian_conjugation_and_commutators_are_trivial() {
        let g = make_cyclic(6);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(g.conjugate(x, y), y);
                assert_eq!(g.commutator(x, y), g.identity());
            }
        }
    }
}
