//! Pairing maps `β : K × K → H` built from their values on generator pairs.

use super::{Action, PairingMap};
use crate::group::{Elem, FiniteGroup, GroupRef};
use crate::mla::LieBracket;

const UNSET: Elem = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairingConstraints {
    /// `β(x, x) = 1` for all `x`.
    pub alternating: bool,
    /// `β(ᶻx, ᶻy) = β(x, y)` for all `x, y, z`.
    pub conj_invariant: bool,
}

/// How `β` must expand over products in each argument.
trait ProductRule {
    /// `β(x, yz)` from `β(x, y)` and `β(x, z)`.
    fn right(&self, x: Elem, y: Elem, bxy: Elem, bxz: Elem) -> Elem;
    /// `β(xy, z)` from `β(y, z)` and `β(x, z)`.
    fn left(&self, x: Elem, y: Elem, z: Elem, byz: Elem, bxz: Elem) -> Elem;
}

/// Plain bilinearity into abelian `H`.
struct Bilinear<'a> {
    h: &'a FiniteGroup,
}

impl ProductRule for Bilinear<'_> {
    fn right(&self, _: Elem, _: Elem, bxy: Elem, bxz: Elem) -> Elem {
        self.h.mul(bxy, bxz)
    }

    fn left(&self, _: Elem, _: Elem, _: Elem, byz: Elem, bxz: Elem) -> Elem {
        self.h.mul(byz, bxz)
    }
}

/// The twisted rules obtained from the axioms applied to `(1, x), (1, y), (1, z)`:
///
/// * `β(x, yz) = β(x, y)·σ_{(x⋆y)y}(β(x, z))`
/// * `β(xy, z) = σ_x(β(y, z))·σ_{ˣ(y⋆z)}(β(x, z))`
struct Twisted<'a> {
    sigma: &'a Action,
    star: &'a LieBracket,
}

impl ProductRule for Twisted<'_> {
    fn right(&self, x: Elem, y: Elem, bxy: Elem, bxz: Elem) -> Elem {
        let k = self.sigma.k();
        let s = k.mul(self.star.star(x, y), y);
        self.sigma.h().mul(bxy, self.sigma.apply(s, bxz))
    }

    fn left(&self, x: Elem, y: Elem, z: Elem, byz: Elem, bxz: Elem) -> Elem {
        let k = self.sigma.k();
        let s = k.conjugate(x, self.star.star(y, z));
        self.sigma
            .h()
            .mul(self.sigma.apply(x, byz), self.sigma.apply(s, bxz))
    }
}

/// Fills the whole table from values on generator pairs, then checks both product
/// rules on every triple. Returns `None` if the seed admits no consistent extension.
fn close(
    k: &FiniteGroup,
    h: &FiniteGroup,
    seeds: &[(Elem, Elem, Elem)],
    rule: &dyn ProductRule,
) -> Option<Vec<Elem>> {
    let n = k.order();
    let gens = k.generators();
    let mut beta = vec![UNSET; n * n];
    let one = k.identity();
    for x in k.elements() {
        beta[x * n + one] = h.identity();
        beta[one * n + x] = h.identity();
    }
    for &(x, y, v) in seeds {
        beta[x * n + y] = v;
    }
    // Rows of generators: extend along the second argument by right multiplication.
    for &x in gens {
        let mut queue = vec![one];
        let mut seen = vec![false; n];
        seen[one] = true;
        let mut i = 0;
        while i < queue.len() {
            let y = queue[i];
            i += 1;
            for &g in gens {
                let yg = k.mul(y, g);
                let v = rule.right(x, y, beta[x * n + y], beta[x * n + g]);
                if beta[x * n + yg] == UNSET {
                    beta[x * n + yg] = v;
                } else if beta[x * n + yg] != v {
                    return None;
                }
                if !std::mem::replace(&mut seen[yg], true) {
                    queue.push(yg);
                }
            }
        }
    }
    // Remaining rows: β(wg, z) from rows w and g.
    let mut queue = vec![one];
    let mut seen = vec![false; n];
    seen[one] = true;
    let mut i = 0;
    while i < queue.len() {
        let w = queue[i];
        i += 1;
        for &g in gens {
            let wg = k.mul(w, g);
            if std::mem::replace(&mut seen[wg], true) {
                continue;
            }
            queue.push(wg);
            for z in k.elements() {
                let v = rule.left(w, g, z, beta[g * n + z], beta[w * n + z]);
                let cell = &mut beta[wg * n + z];
                if *cell == UNSET {
                    *cell = v;
                } else if *cell != v {
                    return None;
                }
            }
        }
    }
    for x in k.elements() {
        for y in k.elements() {
            for z in k.elements() {
                let (bxy, bxz, byz) = (beta[x * n + y], beta[x * n + z], beta[y * n + z]);
                if beta[x * n + k.mul(y, z)] != rule.right(x, y, bxy, bxz)
                    || beta[k.mul(x, y) * n + z] != rule.left(x, y, z, byz, bxz)
                {
                    return None;
                }
            }
        }
    }
    Some(beta)
}

/// Enumerates seeds on generator pairs (diagonal pairs pinned to `1` when
/// `alternating`) in lexicographic order and keeps the consistent closures that pass
/// `keep`.
fn enumerate_with(
    h: &GroupRef,
    k: &GroupRef,
    alternating: bool,
    rule: &dyn ProductRule,
    keep: &dyn Fn(&[Elem]) -> bool,
) -> Vec<PairingMap> {
    let gens = k.generators();
    let cells: Vec<(Elem, Elem)> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| !(alternating && a == b))
        .collect();
    let nh = h.order();
    let mut digits = vec![0usize; cells.len()];
    let mut out = Vec::new();
    loop {
        let mut seeds: Vec<(Elem, Elem, Elem)> = cells
            .iter()
            .zip(&digits)
            .map(|(&(a, b), &d)| (a, b, d))
            .collect();
        if alternating {
            seeds.extend(gens.iter().map(|&g| (g, g, h.identity())));
        }
        if let Some(beta) = close(k, h, &seeds, rule) {
            if keep(&beta) {
                out.push(PairingMap::from_flat(h.clone(), k.clone(), beta));
            }
        }
        // Odometer, last cell fastest so output is lexicographic in the seed values.
        let mut i = digits.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < nh {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn is_alternating(k: &FiniteGroup, h: &FiniteGroup, beta: &[Elem]) -> bool {
    k.elements()
        .all(|x| beta[x * k.order() + x] == h.identity())
}

/// All bilinear maps `K × K → H` satisfying the requested constraints.
pub fn enumerate_bilinear_pairings(
    k: &GroupRef,
    h: &GroupRef,
    constraints: PairingConstraints,
) -> Vec<PairingMap> {
    let n = k.order();
    let keep = |beta: &[Elem]| {
        (!constraints.alternating || is_alternating(k, h, beta))
            && (!constraints.conj_invariant
                || k.elements().all(|x| {
                    k.elements().all(|y| {
                        k.elements().all(|z| {
                            beta[k.conjugate(z, x) * n + k.conjugate(z, y)] == beta[x * n + y]
                        })
                    })
                }))
    };
    enumerate_with(h, k, constraints.alternating, &Bilinear { h }, &keep)
}

/// All normalized `β` satisfying the twisted product rules and
/// `β(ᶻx, ᶻy) = σ_z(β(x, y))` for the given action and bracket on `K`.
///
/// These are exactly the conditions that involve `β` alone; the remaining ones
/// couple `β` with `Γ`.
pub fn enumerate_twisted_pairings(sigma: &Action, star_k: &LieBracket) -> Vec<PairingMap> {
    let (h, k) = (sigma.h(), sigma.k());
    let n = k.order();
    let keep = |beta: &[Elem]| {
        is_alternating(k, h, beta)
            && k.elements().all(|x| {
                k.elements().all(|y| {
                    k.elements().all(|z| {
                        beta[k.conjugate(z, x) * n + k.conjugate(z, y)]
                            == sigma.apply(z, beta[x * n + y])
                    })
                })
            })
    };
    enumerate_with(
        h,
        k,
        true,
        &Twisted {
            sigma,
            star: star_k,
        },
        &keep,
    )
}
