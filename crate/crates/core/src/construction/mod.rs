//! Brackets on split extensions `G = H ⋊_σ K` of an abelian group `H` (carrying
//! the trivial bracket) by a group `K` with bracket `⋆`.
//!
//! Elements of `G` are pairs `(h, x)`, stored at index `h + |H|·x`. A bracket on `G`
//! for which `H` is an ideal is described by three pieces of data on top of `σ`:
//!
//! * the bracket `⋆` on `K`,
//! * a family `Γ_x ∈ End(H)`, `Γ_x(k) = (1, x) ⋆̃ (k, 1)`,
//! * a pairing map `β : K × K → H`, `β(x, y)` = the `H`-part of `(1, x) ⋆̃ (1, y)`,
//!
//! and the bracket itself is
//!
//! ```text
//! (h, x) ⋆̃ (k, y) = (h·k·Γ_x(k)·σ_{x⋆y}(h⁻¹k⁻¹Γ_y(h⁻¹))·β(x, y),  x ⋆ y)
//! ```
//!
//! [`check_theorem_conditions`] decides whether the data defines a multiplicative
//! Lie algebra, [`induce_bracket`] builds it and [`decompose_bracket`] recovers the
//! data from a bracket.

mod checks;
mod conditions;
mod pairings;

use std::fmt;

use thiserror::Error;

use crate::group::{make_semidirect, Elem, FiniteGroup, GroupError, GroupMap, GroupRef};
use crate::mla::{LieBracket, MlaError, MlaViolation};

pub use checks::{section_independence_check, sigma_gamma_commute_check, SectionReport};
pub use conditions::{
    check_direct_conditions, check_gamma_identities, check_theorem_conditions,
    check_theorem_conditions_with, decompose_bracket, induce_bracket, induce_bracket_direct,
    ConditionId, ConditionReport, ConditionStatus, Evaluation, GammaReport,
};
pub use pairings::{enumerate_bilinear_pairings, enumerate_twisted_pairings, PairingConstraints};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Mla(#[from] MlaError),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid gamma family: {0}")]
    InvalidGamma(String),
    #[error("invalid pairing map: {0}")]
    InvalidPairing(String),
    #[error("components are defined over different groups: {0}")]
    GroupMismatch(String),
    #[error("construction conditions violated: {0}")]
    ConditionsViolated(Box<ConditionReport>),
    #[error("action is not trivial, the direct-product form does not apply")]
    NotDirect,
    #[error("K is not abelian, the check does not apply")]
    KNotAbelian,
    #[error("bracket is not a multiplicative Lie algebra: {0:?}")]
    NotMla(Vec<MlaViolation>),
    #[error("H is not an ideal of the bracket")]
    HNotIdeal,
    #[error("reconstruction mismatch: {0}")]
    ReconstructionMismatch(String),
}

fn is_endomorphism(h: &FiniteGroup, f: &[Elem]) -> bool {
    f.len() == h.order()
        && f.iter().all(|&v| v < h.order())
        && h.elements()
            .all(|a| h.elements().all(|b| f[h.mul(a, b)] == h.mul(f[a], f[b])))
}

fn is_permutation(f: &[Elem]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter()
        .all(|&v| v < f.len() && !std::mem::replace(&mut seen[v], true))
}

/// A homomorphism `σ : K → Aut(H)`, stored as one image table per element of `K`.
#[derive(Clone, PartialEq, Eq)]
pub struct Action {
    h: GroupRef,
    k: GroupRef,
    sigma: Vec<Vec<Elem>>,
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Action({} on {}: {:?})",
            self.k.name(),
            self.h.name(),
            self.sigma
        )
    }
}

impl Action {
    pub fn new(h: GroupRef, k: GroupRef, sigma: Vec<Vec<Elem>>) -> Result<Self, ConstructionError> {
        if !h.is_abelian() {
            return Err(GroupError::NotAbelian(h.name().to_string()).into());
        }
        if sigma.len() != k.order() {
            return Err(ConstructionError::InvalidAction(format!(
                "{} tables for a group of order {}",
                sigma.len(),
                k.order()
            )));
        }
        for (x, s) in sigma.iter().enumerate() {
            if !is_endomorphism(&h, s) || !is_permutation(s) {
                return Err(ConstructionError::InvalidAction(format!(
                    "sigma_{x} is not an automorphism"
                )));
            }
        }
        if sigma[k.identity()] != h.elements().collect::<Vec<_>>() {
            return Err(ConstructionError::InvalidAction(
                "sigma_1 is not the identity".into(),
            ));
        }
        for x in k.elements() {
            for y in k.elements() {
                let xy = k.mul(x, y);
                if h.elements().any(|a| sigma[xy][a] != sigma[x][sigma[y][a]]) {
                    return Err(ConstructionError::InvalidAction(format!(
                        "sigma_({x}*{y}) != sigma_{x} o sigma_{y}"
                    )));
                }
            }
        }
        Ok(Action { h, k, sigma })
    }

    pub fn trivial(h: &GroupRef, k: &GroupRef) -> Self {
        let id: Vec<Elem> = h.elements().collect();
        Action {
            h: h.clone(),
            k: k.clone(),
            sigma: vec![id; k.order()],
        }
    }

    /// Extends automorphisms assigned to the generators of `K` (in `k.generators()` order).
    pub fn from_generator_images(
        h: &GroupRef,
        k: &GroupRef,
        images: &[Vec<Elem>],
    ) -> Result<Self, ConstructionError> {
        let gens = k.generators();
        if images.len() != gens.len() {
            return Err(ConstructionError::InvalidAction(format!(
                "{} images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let id: Vec<Elem> = h.elements().collect();
        let mut sigma: Vec<Option<Vec<Elem>>> = vec![None; k.order()];
        sigma[k.identity()] = Some(id);
        let mut queue = vec![k.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (&g, img) in gens.iter().zip(images) {
                let y = k.mul(x, g);
                if sigma[y].is_none() {
                    let sx = sigma[x].as_ref().expect("visited");
                    sigma[y] = Some(h.elements().map(|a| sx[img[a]]).collect());
                    queue.push(y);
                }
            }
        }
        let sigma = sigma
            .into_iter()
            .map(|s| s.expect("generators span K"))
            .collect();
        Action::new(h.clone(), k.clone(), sigma)
    }

    /// `σ_x = inversion` when `χ(x)` is odd, identity otherwise, for a homomorphism `χ : K → Z₂`
    /// given by its value on each generator.
    pub fn inversion_by_parity(
        h: &GroupRef,
        k: &GroupRef,
        generator_parity: &[bool],
    ) -> Result<Self, ConstructionError> {
        let id: Vec<Elem> = h.elements().collect();
        let inv: Vec<Elem> = h.elements().map(|a| h.inv(a)).collect();
        let images: Vec<Vec<Elem>> = generator_parity
            .iter()
            .map(|&odd| if odd { inv.clone() } else { id.clone() })
            .collect();
        Action::from_generator_images(h, k, &images)
    }

    pub fn h(&self) -> &GroupRef {
        &self.h
    }

    pub fn k(&self) -> &GroupRef {
        &self.k
    }

    #[inline]
    pub fn sigma(&self, x: Elem) -> &[Elem] {
        &self.sigma[x]
    }

    #[inline]
    pub fn apply(&self, x: Elem, a: Elem) -> Elem {
        self.sigma[x][a]
    }

    pub fn tables(&self) -> &[Vec<Elem>] {
        &self.sigma
    }

    pub fn is_trivial(&self) -> bool {
        self.sigma
            .iter()
            .all(|s| s.iter().enumerate().all(|(a, &b)| a == b))
    }

    /// `σ_x` as an automorphism of `H`.
    pub fn as_map(&self, x: Elem) -> GroupMap {
        GroupMap::new(self.h.clone(), self.h.clone(), self.sigma[x].clone())
            .expect("validated automorphism")
    }
}

/// A family of endomorphisms `Γ_x` of `H`, one per `x ∈ K`, with `Γ_1 = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaMap {
    h: GroupRef,
    k: GroupRef,
    gamma: Vec<Vec<Elem>>,
}

impl fmt::Debug for GammaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaMap({:?})", self.gamma)
    }
}

impl GammaMap {
    pub fn new(h: GroupRef, k: GroupRef, gamma: Vec<Vec<Elem>>) -> Result<Self, ConstructionError> {
        if !h.is_abelian() {
            return Err(GroupError::NotAbelian(h.name().to_string()).into());
        }
        if gamma.len() != k.order() {
            return Err(ConstructionError::InvalidGamma(format!(
                "{} tables for a group of order {}",
                gamma.len(),
                k.order()
            )));
        }
        for (x, g) in gamma.iter().enumerate() {
            if !is_endomorphism(&h, g) {
                return Err(ConstructionError::InvalidGamma(format!(
                    "gamma_{x} is not an endomorphism"
                )));
            }
        }
        if gamma[k.identity()].iter().any(|&v| v != h.identity()) {
            return Err(ConstructionError::InvalidGamma(
                "gamma_1 is not the zero map".into(),
            ));
        }
        Ok(GammaMap { h, k, gamma })
    }

    pub(crate) fn new_unchecked(h: GroupRef, k: GroupRef, gamma: Vec<Vec<Elem>>) -> Self {
        GammaMap { h, k, gamma }
    }

    pub fn zero(h: &GroupRef, k: &GroupRef) -> Self {
        GammaMap {
            h: h.clone(),
            k: k.clone(),
            gamma: vec![vec![h.identity(); h.order()]; k.order()],
        }
    }

    pub fn h(&self) -> &GroupRef {
        &self.h
    }

    pub fn k(&self) -> &GroupRef {
        &self.k
    }

    #[inline]
    pub fn apply(&self, x: Elem, a: Elem) -> Elem {
        self.gamma[x][a]
    }

    pub fn table(&self, x: Elem) -> &[Elem] {
        &self.gamma[x]
    }

    pub fn tables(&self) -> &[Vec<Elem>] {
        &self.gamma
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().all(|&v| v == self.h.identity())
    }
}

/// A map `β : K × K → H` (the pairing part of an induced bracket).
///
/// The constructor checks shape only; the normalisation `β(x,1) = β(1,x) = β(x,x) = 1`
/// is condition C1 of [`check_theorem_conditions`].
#[derive(Clone, PartialEq, Eq)]
pub struct PairingMap {
    h: GroupRef,
    k: GroupRef,
    beta: Vec<Elem>,
}

impl fmt::Debug for PairingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairingMap({:?})", self.rows())
    }
}

impl PairingMap {
    pub fn new(h: GroupRef, k: GroupRef, rows: &[Vec<Elem>]) -> Result<Self, ConstructionError> {
        let n = k.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ConstructionError::InvalidPairing(format!(
                "expected a {n}x{n} table"
            )));
        }
        if rows.iter().flatten().any(|&v| v >= h.order()) {
            return Err(ConstructionError::InvalidPairing("value outside H".into()));
        }
        Ok(PairingMap {
            h,
            k,
            beta: rows.iter().flatten().copied().collect(),
        })
    }

    pub(crate) fn from_flat(h: GroupRef, k: GroupRef, beta: Vec<Elem>) -> Self {
        PairingMap { h, k, beta }
    }

    pub fn trivial(h: &GroupRef, k: &GroupRef) -> Self {
        PairingMap {
            h: h.clone(),
            k: k.clone(),
            beta: vec![h.identity(); k.order() * k.order()],
        }
    }

    #[inline]
    pub fn value(&self, x: Elem, y: Elem) -> Elem {
        self.beta[x * self.k.order() + y]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.beta
            .chunks(self.k.order().max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.beta.iter().all(|&v| v == self.h.identity())
    }

    /// `β(x,1) = β(1,x) = β(x,x) = 1` for all `x`.
    pub fn is_normalized(&self) -> bool {
        let (k, e) = (&self.k, self.h.identity());
        k.elements().all(|x| {
            self.value(x, k.identity()) == e
                && self.value(k.identity(), x) == e
                && self.value(x, x) == e
        })
    }
}

/// The full input of the construction: `H`, `K`, `σ`, `⋆` on `K`, `Γ` and `β`.
#[derive(Clone)]
pub struct ConstructionData {
    h: GroupRef,
    k: GroupRef,
    sigma: Action,
    star_k: LieBracket,
    gamma: GammaMap,
    beta: PairingMap,
    group: GroupRef,
}

impl fmt::Debug for ConstructionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstructionData")
            .field("H", &self.h.name())
            .field("K", &self.k.name())
            .field("sigma", &self.sigma)
            .field("starK", &self.star_k)
            .field("gamma", &self.gamma)
            .field("beta", &self.beta)
            .finish()
    }
}

impl ConstructionData {
    pub fn new(
        sigma: Action,
        star_k: LieBracket,
        gamma: GammaMap,
        beta: PairingMap,
    ) -> Result<Self, ConstructionError> {
        let h = sigma.h().clone();
        let k = sigma.k().clone();
        let same = |a: &FiniteGroup, b: &FiniteGroup| a.same_table(b);
        if !same(star_k.group(), &k) {
            return Err(ConstructionError::GroupMismatch(
                "bracket is not on K".into(),
            ));
        }
        if !same(&gamma.h, &h) || !same(&gamma.k, &k) {
            return Err(ConstructionError::GroupMismatch(
                "gamma is over other groups".into(),
            ));
        }
        if !same(&beta.h, &h) || !same(&beta.k, &k) {
            return Err(ConstructionError::GroupMismatch(
                "beta is over other groups".into(),
            ));
        }
        let group = std::sync::Arc::new(make_semidirect(&h, &k, &sigma)?);
        Ok(ConstructionData {
            h,
            k,
            sigma,
            star_k,
            gamma,
            beta,
            group,
        })
    }

    /// All-trivial data for the given action: trivial bracket on `K`, `Γ = 0`, `β = 1`.
    pub fn trivial(sigma: Action) -> Self {
        let (h, k) = (sigma.h().clone(), sigma.k().clone());
        let star_k = crate::mla::trivial_bracket(&k);
        let gamma = GammaMap::zero(&h, &k);
        let beta = PairingMap::trivial(&h, &k);
        ConstructionData::new(sigma, star_k, gamma, beta).expect("consistent trivial data")
    }

    pub fn h(&self) -> &GroupRef {
        &self.h
    }

    pub fn k(&self) -> &GroupRef {
        &self.k
    }

    pub fn sigma(&self) -> &Action {
        &self.sigma
    }

    pub fn star_k(&self) -> &LieBracket {
        &self.star_k
    }

    pub fn gamma(&self) -> &GammaMap {
        &self.gamma
    }

    pub fn beta(&self) -> &PairingMap {
        &self.beta
    }

    /// `H ⋊_σ K`.
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    #[inline]
    pub fn encode(&self, a: Elem, x: Elem) -> Elem {
        a + self.h.order() * x
    }

    #[inline]
    pub fn decode(&self, g: Elem) -> (Elem, Elem) {
        (g % self.h.order(), g / self.h.order())
    }

    /// `(h, x) ⋆̃ (k, y)` by the induced-bracket formula, as a pair.
    #[inline]
    pub fn bracket_pair(&self, (a, x): (Elem, Elem), (b, y): (Elem, Elem)) -> (Elem, Elem) {
        let h = &*self.h;
        let xy = self.star_k.star(x, y);
        // h⁻¹ k⁻¹ Γ_y(h⁻¹)
        let inner = h.mul(h.mul(h.inv(a), h.inv(b)), self.gamma.apply(y, h.inv(a)));
        let mut v = h.mul(h.mul(a, b), self.gamma.apply(x, b));
        v = h.mul(v, self.sigma.apply(xy, inner));
        v = h.mul(v, self.beta.value(x, y));
        (v, xy)
    }

    #[inline]
    pub fn bracket(&self, g1: Elem, g2: Elem) -> Elem {
        let (v, z) = self.bracket_pair(self.decode(g1), self.decode(g2));
        self.encode(v, z)
    }
}
