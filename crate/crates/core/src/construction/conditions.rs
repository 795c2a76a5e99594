//! The six conditions on `(⋆, Γ, β)` and the induce/decompose operations.
//!
//! C1 and C2 are checked in closed form. C3–C6 are the two-sided expansions of
//! the axioms on `G = H ⋊_σ K` for `g₁ = (h, x)`, `g₂ = (k, y)`, `g₃ = (l, z)`, each
//! side evaluated with the induced-bracket formula and compared:
//!
//! | id | closed form as usually typeset | evaluated identity |
//! |----|--------------------------------|--------------------|
//! | C1 | `β(x,1) = β(1,x) = β(x,x) = 1` | same |
//! | C2 | `Γ_{xy}(h) = Γ_x(h)·σ_x(Γ_y(h))`, `Γ_{x⋆y}(σ_y(h)) = Γ_x(Γ_y(h))·Γ_{xyx⁻¹}(Γ_x(h⁻¹))` | same |
//! | C3 | `lΓ_x(l)σ_{(xy)⋆z}(h⁻¹l⁻¹σ_x(k⁻¹)Γ_z(h⁻¹σ_x(k⁻¹))β(xy,z) = …` (unbalanced) | `(g₁g₂) ⋆̃ g₃ = ᵍ¹(g₂ ⋆̃ g₃) · (g₁ ⋆̃ g₃)` |
//! | C4 | `σ_y(l)Γ_x(σ_y(l))σ_{x⋆(yz)}(h⁻¹σ_y(l⁻¹)Γ_{yz}(h⁻¹)β(x,yz) = …` | `g₁ ⋆̃ (g₂g₃) = (g₁ ⋆̃ g₂) · ᵍ²(g₁ ⋆̃ g₃)` |
//! | C5 | cyclic product of three nested terms `= 1` (unbalanced) | `((g₁⋆̃g₂)⋆̃ᵍ²g₃)·((g₂⋆̃g₃)⋆̃ᵍ³g₁)·((g₃⋆̃g₁)⋆̃ᵍ¹g₂) = 1` |
//! | C6 | `σ_z(Γ_x(k)σ_{x⋆y}(h⁻¹k⁻¹Γ_y(h⁻¹))β(x,y)) = …β(ᶻx, ᶻy)` | `ᵍ³(g₁ ⋆̃ g₂) = ᵍ³g₁ ⋆̃ ᵍ³g₂` |
//!
//! With trivial `σ` the conditions simplify (see [`check_direct_conditions`]). The
//! commonly quoted direct form of C5,
//!
//! ```text
//! Γ_{x⋆y}(l) Γ_{y⋆z}(h) Γ_{z⋆x}(k) Γ_z(β(x,y))⁻¹ Γ_x(β(y,z))⁻¹ Γ_y(β(z,x))⁻¹
//!     β(x⋆y, ʸz) β(y⋆z, ᶻx) β(z⋆x, ˣy) = 1,
//! ```
//!
//! drops the terms `Γ_z(Γ_x(k)·Γ_y(h⁻¹))⁻¹` that come from `Γ_{ʸz}` applied to the
//! `H`-part of `g₁ ⋆̃ g₂`. They cancel around the cycle only when the `Γ_x` commute
//! under composition, so the evaluator keeps them:
//!
//! ```text
//! ∏_cyc Γ_{x⋆y}(l) · Γ_z(Γ_x(k)·Γ_y(h⁻¹)·β(x,y))⁻¹ · β(x⋆y, ʸz) = 1.
//! ```

use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{Action, ConstructionData, ConstructionError, GammaMap, PairingMap};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::mla::{is_ideal, LieBracket, MlaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl ConditionId {
    pub const ALL: [ConditionId; 6] = [
        ConditionId::C1,
        ConditionId::C2,
        ConditionId::C3,
        ConditionId::C4,
        ConditionId::C5,
        ConditionId::C6,
    ];

    /// Cheap conditions first.
    const EVALUATION_ORDER: [ConditionId; 6] = [
        ConditionId::C1,
        ConditionId::C2,
        ConditionId::C6,
        ConditionId::C3,
        ConditionId::C4,
        ConditionId::C5,
    ];

    fn index(self) -> usize {
        self as usize
    }

    /// Variable names of the witness tuple.
    pub fn witness_names(self) -> &'static str {
        match self {
            ConditionId::C1 => "(x, y)",
            ConditionId::C2 => "(x, y, h)",
            _ => "(x, y, z, h, k, l)",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionStatus {
    pub pass: bool,
    pub witness: Option<Vec<Elem>>,
}

impl ConditionStatus {
    fn from_witness(witness: Option<Vec<Elem>>) -> Self {
        ConditionStatus {
            pass: witness.is_none(),
            witness,
        }
    }
}

/// Per-condition outcome. A condition skipped by a short-circuiting check is `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionReport {
    statuses: [Option<ConditionStatus>; 6],
}

impl ConditionReport {
    pub fn get(&self, id: ConditionId) -> Option<&ConditionStatus> {
        self.statuses[id.index()].as_ref()
    }

    fn set(&mut self, id: ConditionId, status: ConditionStatus) {
        self.statuses[id.index()] = Some(status);
    }

    /// Every condition was evaluated and holds.
    pub fn all_pass(&self) -> bool {
        self.statuses
            .iter()
            .all(|s| s.as_ref().is_some_and(|s| s.pass))
    }

    pub fn first_failure(&self) -> Option<(ConditionId, &ConditionStatus)> {
        ConditionId::ALL
            .into_iter()
            .find_map(|id| self.get(id).filter(|s| !s.pass).map(|s| (id, s)))
    }
}

impl Serialize for ConditionReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        for id in ConditionId::ALL {
            map.serialize_entry(&id.to_string(), &self.get(id))?;
        }
        map.end()
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for id in ConditionId::ALL {
            match self.get(id) {
                None => writeln!(f, "{id}  skipped")?,
                Some(s) if s.pass => writeln!(f, "{id}  pass")?,
                Some(s) => writeln!(
                    f,
                    "{id}  FAIL  {} = {:?}",
                    id.witness_names(),
                    s.witness.as_deref().unwrap_or_default()
                )?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    /// Evaluate all six conditions.
    #[default]
    Full,
    /// Stop at the first failing condition (cheap conditions are tried first).
    ShortCircuit,
}

/// Outcome of the two `Γ` identities, each with its first witness `(x, y, h)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    /// `Γ_{xy}(h) = Γ_x(h)·σ_x(Γ_y(h))`
    pub product_rule: ConditionStatus,
    /// `Γ_{x⋆y}(σ_y(h)) = Γ_x(Γ_y(h))·Γ_{xyx⁻¹}(Γ_x(h⁻¹))`
    pub bracket_rule: ConditionStatus,
}

impl GammaReport {
    pub fn pass(&self) -> bool {
        self.product_rule.pass && self.bracket_rule.pass
    }

    /// Lexicographically first witness over both identities.
    fn witness(&self) -> Option<Vec<Elem>> {
        match (&self.product_rule.witness, &self.bracket_rule.witness) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        }
    }
}

fn first_witness<F>(k: &FiniteGroup, h: &FiniteGroup, fails: F) -> Option<Vec<Elem>>
where
    F: Fn(Elem, Elem, Elem) -> bool,
{
    for x in k.elements() {
        for y in k.elements() {
            for a in h.elements() {
                if fails(x, y, a) {
                    return Some(vec![x, y, a]);
                }
            }
        }
    }
    None
}

pub fn check_gamma_identities(
    sigma: &Action,
    gamma: &GammaMap,
    star_k: &LieBracket,
) -> GammaReport {
    let (h, k) = (&**sigma.h(), &**sigma.k());
    let product = first_witness(k, h, |x, y, a| {
        gamma.apply(k.mul(x, y), a) != h.mul(gamma.apply(x, a), sigma.apply(x, gamma.apply(y, a)))
    });
    let bracket = first_witness(k, h, |x, y, a| {
        let left = gamma.apply(star_k.star(x, y), sigma.apply(y, a));
        let conj = k.conjugate(x, y);
        let right = h.mul(
            gamma.apply(x, gamma.apply(y, a)),
            gamma.apply(conj, gamma.apply(x, h.inv(a))),
        );
        left != right
    });
    GammaReport {
        product_rule: ConditionStatus::from_witness(product),
        bracket_rule: ConditionStatus::from_witness(bracket),
    }
}

fn check_c1(beta: &PairingMap, k: &FiniteGroup, e: Elem) -> ConditionStatus {
    let one = k.identity();
    let witness = k
        .elements()
        .flat_map(|x| k.elements().map(move |y| (x, y)))
        .find(|&(x, y)| (x == one || y == one || x == y) && beta.value(x, y) != e);
    ConditionStatus::from_witness(witness.map(|(x, y)| vec![x, y]))
}

/// First `(x, y, z, h, k, l)` in lexicographic order at which `fails(g₁, g₂, g₃)` holds.
fn scan_triples<F>(data: &ConstructionData, fails: F) -> Option<Vec<Elem>>
where
    F: Fn(Elem, Elem, Elem) -> bool + Sync,
{
    let (nh, nk) = (data.h.order(), data.k.order());
    (0..nk).into_par_iter().find_map_first(|x| {
        for y in 0..nk {
            for z in 0..nk {
                for a in 0..nh {
                    for b in 0..nh {
                        for c in 0..nh {
                            if fails(data.encode(a, x), data.encode(b, y), data.encode(c, z)) {
                                return Some(vec![x, y, z, a, b, c]);
                            }
                        }
                    }
                }
            }
        }
        None
    })
}

fn induced_table(data: &ConstructionData) -> Vec<Elem> {
    let n = data.group.order();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| data.bracket(a, b)))
        .collect()
}

fn check_axiom_condition(
    data: &ConstructionData,
    table: &[Elem],
    id: ConditionId,
) -> ConditionStatus {
    let g = &*data.group;
    let n = g.order();
    let st = |a: Elem, b: Elem| table[a * n + b];
    let witness = match id {
        ConditionId::C3 => scan_triples(data, |g1, g2, g3| {
            st(g.mul(g1, g2), g3) != g.mul(g.conjugate(g1, st(g2, g3)), st(g1, g3))
        }),
        ConditionId::C4 => scan_triples(data, |g1, g2, g3| {
            st(g1, g.mul(g2, g3)) != g.mul(st(g1, g2), g.conjugate(g2, st(g1, g3)))
        }),
        ConditionId::C5 => scan_triples(data, |g1, g2, g3| {
            let t1 = st(st(g1, g2), g.conjugate(g2, g3));
            let t2 = st(st(g2, g3), g.conjugate(g3, g1));
            let t3 = st(st(g3, g1), g.conjugate(g1, g2));
            g.mul(g.mul(t1, t2), t3) != g.identity()
        }),
        ConditionId::C6 => scan_triples(data, |g1, g2, g3| {
            g.conjugate(g3, st(g1, g2)) != st(g.conjugate(g3, g1), g.conjugate(g3, g2))
        }),
        ConditionId::C1 | ConditionId::C2 => unreachable!("closed-form conditions"),
    };
    ConditionStatus::from_witness(witness)
}

/// Evaluates the six conditions exhaustively.
pub fn check_theorem_conditions(data: &ConstructionData) -> ConditionReport {
    check_theorem_conditions_with(data, Evaluation::Full)
}

pub fn check_theorem_conditions_with(data: &ConstructionData, mode: Evaluation) -> ConditionReport {
    let mut report = ConditionReport::default();
    let mut table = None;
    for id in ConditionId::EVALUATION_ORDER {
        let status = match id {
            ConditionId::C1 => check_c1(&data.beta, &data.k, data.h.identity()),
            ConditionId::C2 => {
                let g = check_gamma_identities(&data.sigma, &data.gamma, &data.star_k);
                ConditionStatus::from_witness(g.witness())
            }
            _ => {
                let table = table.get_or_insert_with(|| induced_table(data));
                check_axiom_condition(data, table, id)
            }
        };
        let failed = !status.pass;
        report.set(id, status);
        if failed && mode == Evaluation::ShortCircuit {
            break;
        }
    }
    report
}

/// The bracket on `H ⋊_σ K` induced by accepted data.
pub fn induce_bracket(data: &ConstructionData) -> Result<LieBracket, ConstructionError> {
    let report = check_theorem_conditions(data);
    if !report.all_pass() {
        return Err(ConstructionError::ConditionsViolated(Box::new(report)));
    }
    LieBracket::from_flat(data.group.clone(), induced_table(data)).map_err(not_mla)
}

fn not_mla(e: MlaError) -> ConstructionError {
    match e {
        MlaError::NotMla(v) => ConstructionError::NotMla(v),
        other => other.into(),
    }
}

/// `(h, x) ⋆̃ (k, y) = (Γ_x(k)·Γ_y(h⁻¹)·β(x, y), x ⋆ y)` for trivial `σ`.
fn direct_bracket(data: &ConstructionData, g1: Elem, g2: Elem) -> Elem {
    let h = &*data.h;
    let ((a, x), (b, y)) = (data.decode(g1), data.decode(g2));
    let v = h.mul(
        h.mul(data.gamma.apply(x, b), data.gamma.apply(y, h.inv(a))),
        data.beta.value(x, y),
    );
    data.encode(v, data.star_k.star(x, y))
}

/// The simplified conditions for trivial `σ`:
///
/// | id | identity | witness |
/// |----|----------|---------|
/// | C1 | `β(x,1) = β(1,x) = β(x,x) = 1` | `(x, y)` |
/// | C2 | `Γ_{xy} = Γ_x·Γ_y` and `Γ_{x⋆y}(h) = Γ_x(Γ_y(h))·Γ_y(Γ_x(h⁻¹))` | `(x, y, h)` |
/// | C3 | `β(xy, z) = β(x, z)·β(y, z)` | `(x, y, z)` |
/// | C4 | `β(x, yz) = β(x, y)·β(x, z)` | `(x, y, z)` |
/// | C5 | `∏_cyc Γ_{x⋆y}(l)·Γ_z(Γ_x(k)·Γ_y(h⁻¹)·β(x,y))⁻¹·β(x⋆y, ʸz) = 1` | `(x, y, z, h, k, l)` |
/// | C6 | `β(ᶻx, ᶻy) = β(x, y)` | `(x, y, z)` |
///
/// C5 and C6 use `Γ_{ᶻx} = Γ_x`, which follows from the first half of C2; the
/// conjunction of all six is equivalent to [`check_theorem_conditions`] passing.
pub fn check_direct_conditions(
    data: &ConstructionData,
) -> Result<ConditionReport, ConstructionError> {
    if !data.sigma.is_trivial() {
        return Err(ConstructionError::NotDirect);
    }
    let (h, k, gamma, beta) = (&*data.h, &*data.k, &data.gamma, &data.beta);
    let mut report = ConditionReport::default();
    report.set(ConditionId::C1, check_c1(beta, k, h.identity()));

    let c2 = first_witness(k, h, |x, y, a| {
        let product = gamma.apply(k.mul(x, y), a) != h.mul(gamma.apply(x, a), gamma.apply(y, a));
        let right = h.mul(
            gamma.apply(x, gamma.apply(y, a)),
            gamma.apply(y, gamma.apply(x, h.inv(a))),
        );
        product || gamma.apply(data.star_k.star(x, y), a) != right
    });
    report.set(ConditionId::C2, ConditionStatus::from_witness(c2));

    let pairs = |fails: &dyn Fn(Elem, Elem, Elem) -> bool| {
        let w = k.elements().find_map(|x| {
            k.elements().find_map(|y| {
                k.elements()
                    .find(|&z| fails(x, y, z))
                    .map(|z| vec![x, y, z])
            })
        });
        ConditionStatus::from_witness(w)
    };
    report.set(
        ConditionId::C3,
        pairs(&|x, y, z| beta.value(k.mul(x, y), z) != h.mul(beta.value(x, z), beta.value(y, z))),
    );
    report.set(
        ConditionId::C4,
        pairs(&|x, y, z| beta.value(x, k.mul(y, z)) != h.mul(beta.value(x, y), beta.value(x, z))),
    );
    report.set(
        ConditionId::C6,
        pairs(&|x, y, z| beta.value(k.conjugate(z, x), k.conjugate(z, y)) != beta.value(x, y)),
    );

    let star = |x, y| data.star_k.star(x, y);
    let term = |(a, x): (Elem, Elem), (b, y): (Elem, Elem), (c, z): (Elem, Elem)| {
        let inner = h.mul(
            h.mul(gamma.apply(x, b), gamma.apply(y, h.inv(a))),
            beta.value(x, y),
        );
        let v = h.mul(gamma.apply(star(x, y), c), h.inv(gamma.apply(z, inner)));
        h.mul(v, beta.value(star(x, y), k.conjugate(y, z)))
    };
    let c5 = scan_triples(data, |g1, g2, g3| {
        let (p1, p2, p3) = (data.decode(g1), data.decode(g2), data.decode(g3));
        let total = h.mul(h.mul(term(p1, p2, p3), term(p2, p3, p1)), term(p3, p1, p2));
        total != h.identity()
    });
    report.set(ConditionId::C5, ConditionStatus::from_witness(c5));
    Ok(report)
}

/// The induced bracket for trivial `σ`, by the simplified formula.
pub fn induce_bracket_direct(data: &ConstructionData) -> Result<LieBracket, ConstructionError> {
    let report = check_direct_conditions(data)?;
    if !report.all_pass() {
        return Err(ConstructionError::ConditionsViolated(Box::new(report)));
    }
    let n = data.group.order();
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| direct_bracket(data, a, b)))
        .collect();
    LieBracket::from_flat(data.group.clone(), table).map_err(not_mla)
}

/// Recovers `(⋆, Γ, β)` from a bracket on `H ⋊_σ K` in which `H` is an ideal, using
/// the canonical section `x ↦ (1, x)`. The result is re-induced and compared with
/// the input before it is returned.
pub fn decompose_bracket(
    sigma: &Action,
    bracket: &LieBracket,
) -> Result<ConstructionData, ConstructionError> {
    let (h, k) = (sigma.h().clone(), sigma.k().clone());
    let trivial = ConstructionData::trivial(sigma.clone());
    let g = bracket.group();
    if !g.same_table(trivial.group()) {
        return Err(ConstructionError::GroupMismatch(format!(
            "bracket group {} is not {}",
            g.name(),
            trivial.group().name()
        )));
    }
    let nh = h.order();
    let h_members: Vec<Elem> = h
        .elements()
        .map(|a| trivial.encode(a, k.identity()))
        .collect();
    let h_sub =
        Subgroup::new(trivial.group().clone(), h_members).map_err(ConstructionError::Group)?;
    if !is_ideal(bracket, &h_sub) {
        return Err(ConstructionError::HNotIdeal);
    }

    let one = h.identity();
    let section = |x: Elem| trivial.encode(one, x);
    let mut star_k = Vec::with_capacity(k.order() * k.order());
    let mut beta = Vec::with_capacity(k.order() * k.order());
    for x in k.elements() {
        for y in k.elements() {
            let (b, z) = trivial.decode(bracket.star(section(x), section(y)));
            beta.push(b);
            star_k.push(z);
        }
    }
    let gamma: Vec<Vec<Elem>> = k
        .elements()
        .map(|x| {
            h.elements()
                .map(|a| bracket.star(section(x), trivial.encode(a, k.identity())) % nh)
                .collect()
        })
        .collect();

    let mismatch = |what: &str, e: &dyn fmt::Display| {
        ConstructionError::ReconstructionMismatch(format!("{what}: {e}"))
    };
    let star_k =
        LieBracket::from_flat(k.clone(), star_k).map_err(|e| mismatch("bracket on K", &e))?;
    let gamma = GammaMap::new(h.clone(), k.clone(), gamma).map_err(|e| mismatch("gamma", &e))?;
    let beta = PairingMap::from_flat(h.clone(), k.clone(), beta);
    if !beta.is_normalized() {
        return Err(ConstructionError::ReconstructionMismatch(
            "pairing map is not normalized".into(),
        ));
    }
    let data = ConstructionData::new(sigma.clone(), star_k, gamma, beta)?;
    let report = check_theorem_conditions(&data);
    if !report.all_pass() {
        return Err(ConstructionError::ReconstructionMismatch(format!(
            "extracted data fails the conditions:\n{report}"
        )));
    }
    if induced_table(&data) != bracket.table() {
        return Err(ConstructionError::ReconstructionMismatch(
            "re-induced bracket differs from the input".into(),
        ));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, GroupRef};
    use crate::mla::{commutator_bracket, trivial_bracket};
    use std::sync::Arc;

    fn s3_parts() -> (GroupRef, GroupRef, Action) {
        let h: GroupRef = Arc::new(make_cyclic(3));
        let k: GroupRef = Arc::new(make_cyclic(2));
        let sigma = Action::inversion_by_parity(&h, &k, &[true]).unwrap();
        (h, k, sigma)
    }

    fn gamma_z2(h: &GroupRef, k: &GroupRef, c: usize) -> GammaMap {
        let n = h.order();
        GammaMap::new(
            h.clone(),
            k.clone(),
            vec![vec![0; n], (0..n).map(|a| a * c % n).collect()],
        )
        .unwrap()
    }

    #[test]
    fn trivial_data_passes() {
        let (h, k, _) = s3_parts();
        let data = ConstructionData::trivial(Action::trivial(&h, &k));
        let report = check_theorem_conditions(&data);
        assert!(report.all_pass(), "{report}");
        assert!(induce_bracket(&data).unwrap().is_trivial());
    }

    #[test]
    fn inversion_family_passes_gamma_identities() {
        let (h, k, sigma) = s3_parts();
        let gamma = gamma_z2(&h, &k, 2);
        assert!(check_gamma_identities(&sigma, &gamma, &trivial_bracket(&k)).pass());
    }

    #[test]
    fn inversion_family_fails_without_action() {
        let (h, k, _) = s3_parts();
        let gamma = gamma_z2(&h, &k, 2);
        let report = check_gamma_identities(&Action::trivial(&h, &k), &gamma, &trivial_bracket(&k));
        assert!(!report.product_rule.pass);
        assert_eq!(report.product_rule.witness, Some(vec![1, 1, 1]));
    }

    #[test]
    fn s3_induced_bracket_decomposes_back() {
        let (h, k, sigma) = s3_parts();
        let data = ConstructionData::new(
            sigma.clone(),
            trivial_bracket(&k),
            gamma_z2(&h, &k, 2),
            PairingMap::trivial(&h, &k),
        )
        .unwrap();
        let bracket = induce_bracket(&data).unwrap();
        assert!(!bracket.is_trivial());
        let back = decompose_bracket(&sigma, &bracket).unwrap();
        assert_eq!(back.gamma(), data.gamma());
        assert_eq!(back.beta(), data.beta());
        assert!(back.star_k().is_trivial());
    }

    #[test]
    fn commutator_bracket_on_s3_decomposes() {
        let (_, _, sigma) = s3_parts();
        let data = ConstructionData::trivial(sigma.clone());
        let bracket = commutator_bracket(data.group());
        let back = decompose_bracket(&sigma, &bracket).unwrap();
        assert!(!back.gamma().is_zero());
        assert!(back.beta().is_trivial());
    }

    #[test]
    fn non_normalized_pairing_fails_c1() {
        let (h, k, _) = s3_parts();
        let beta = PairingMap::new(h.clone(), k.clone(), &[vec![0, 0], vec![0, 1]]).unwrap();
        let data = ConstructionData::new(
            Action::trivial(&h, &k),
            trivial_bracket(&k),
            GammaMap::zero(&h, &k),
            beta,
        )
        .unwrap();
        let report = check_theorem_conditions_with(&data, Evaluation::ShortCircuit);
        assert_eq!(report.first_failure().unwrap().0, ConditionId::C1);
        assert_eq!(
            report.get(ConditionId::C1).unwrap().witness,
            Some(vec![1, 1])
        );
        assert!(report.get(ConditionId::C5).is_none());
        assert!(matches!(
            induce_bracket(&data),
            Err(ConstructionError::ConditionsViolated(_))
        ));
    }

    #[test]
    fn witnesses_re_evaluate_to_failures() {
        // Γ_a = Γ_b = 1̃ on Z4 x D4 is not a homomorphism D4 → End(Z4).
        let h: GroupRef = Arc::new(make_cyclic(4));
        let k: GroupRef = Arc::new(make_dihedral(4));
        let id: Vec<Elem> = h.elements().collect();
        let mut gamma = vec![id; k.order()];
        gamma[0] = vec![0; 4];
        let gamma = GammaMap::new_unchecked(h.clone(), k.clone(), gamma);
        let data = ConstructionData::new(
            Action::trivial(&h, &k),
            trivial_bracket(&k),
            gamma,
            PairingMap::trivial(&h, &k),
        )
        .unwrap();
        let report = check_theorem_conditions(&data);
        let (_, status) = report.first_failure().unwrap();
        let w = status.witness.clone().unwrap();
        let (x, y, a) = (w[0], w[1], w[2]);
        let g = data.gamma();
        assert_ne!(g.apply(k.mul(x, y), a), h.mul(g.apply(x, a), g.apply(y, a)));
        let c3 = report.get(ConditionId::C3).unwrap();
        let w = c3.witness.clone().unwrap();
        let gg = data.group();
        let (g1, g2, g3) = (
            data.encode(w[3], w[0]),
            data.encode(w[4], w[1]),
            data.encode(w[5], w[2]),
        );
        let left = data.bracket(gg.mul(g1, g2), g3);
        let right = gg.mul(gg.conjugate(g1, data.bracket(g2, g3)), data.bracket(g1, g3));
        assert_ne!(left, right);
    }

    #[test]
    fn direct_conditions_agree_with_general_ones() {
        let h: GroupRef = Arc::new(make_cyclic(4));
        let k: GroupRef = Arc::new(make_dihedral(4));
        let sigma = Action::trivial(&h, &k);
        for c in 0..4 {
            let mut gamma = vec![vec![0; 4]; k.order()];
            for x in 1..k.order() {
                gamma[x] = (0..4).map(|a| a * c % 4).collect();
            }
            let gamma = GammaMap::new(h.clone(), k.clone(), gamma).unwrap();
            let data = ConstructionData::new(
                sigma.clone(),
                trivial_bracket(&k),
                gamma,
                PairingMap::trivial(&h, &k),
            )
            .unwrap();
            let general = check_theorem_conditions(&data).all_pass();
            let direct = check_direct_conditions(&data).unwrap().all_pass();
            assert_eq!(general, direct, "c = {c}");
        }
    }

    #[test]
    fn direct_check_rejects_twisted_data() {
        let (_, _, sigma) = s3_parts();
        let data = ConstructionData::trivial(sigma);
        assert_eq!(
            check_direct_conditions(&data).unwrap_err(),
            ConstructionError::NotDirect
        );
    }

    #[test]
    fn report_serializes_in_condition_order() {
        let (h, k, _) = s3_parts();
        let data = ConstructionData::trivial(Action::trivial(&h, &k));
        let json = serde_json::to_string(&check_theorem_conditions(&data)).unwrap();
        assert!(
            json.starts_with(r#"{"C1":{"pass":true,"witness":null},"C2""#),
            "{json}"
        );
    }
}
