//! Preset groups. Identity is always index 0.

use super::{Elem, FiniteGroup, GroupError};
use crate::construction::Action;

/// `Z_n` with element `i` the residue `i`.
pub fn make_cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    let gens = if n == 1 { vec![] } else { vec![1] };
    FiniteGroup::from_flat_unchecked(format!("Z{n}"), n, table, Some(gens))
}

/// Dihedral group of order `2n`, `⟨a, b | a² = bⁿ = 1, ab = b⁻¹a⟩`.
///
/// `bⁱaʲ` is stored at index `j·n + i`, so `b = 1` and `a = n`.
pub fn make_dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 2, "dihedral group needs n >= 2");
    let order = 2 * n;
    let decode = |e: Elem| (e % n, e / n);
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = decode(x);
        for y in 0..order {
            let (k, l) = decode(y);
            // aʲ bᵏ = b^{±k} aʲ
            let k = if j == 0 { k } else { (n - k) % n };
            table.push(((j + l) % 2) * n + (i + k) % n);
        }
    }
    FiniteGroup::from_flat_unchecked(format!("D{n}"), order, table, Some(vec![1, n]))
}

/// Quaternion-type group of order `4n`, `⟨a, b | a²ⁿ = 1, b² = aⁿ, b⁻¹ab = a⁻¹⟩`.
///
/// `aⁱbʲ` is stored at index `j·2n + i`, so `a = 1` and `b = 2n`. The group is
/// named by its order, e.g. `make_quaternion(2)` is `Q8`.
pub fn make_quaternion(n: usize) -> FiniteGroup {
    assert!(n >= 1, "quaternion group needs n >= 1");
    let m = 2 * n;
    let order = 4 * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % m, x / m);
        for y in 0..order {
            let (k, l) = (y % m, y / m);
            // b aᵏ = a⁻ᵏ b
            let k = if j == 0 { k } else { (m - k) % m };
            let mut exp = (i + k) % m;
            let mut bpow = j + l;
            if bpow == 2 {
                exp = (exp + n) % m;
                bpow = 0;
            }
            table.push(bpow * m + exp);
        }
    }
    FiniteGroup::from_flat_unchecked(format!("Q{order}"), order, table, Some(vec![1, m]))
}

/// Direct product `H × K` on pairs `(h, x) ↦ h + |H|·x`.
pub fn make_direct(h: &FiniteGroup, k: &FiniteGroup) -> FiniteGroup {
    let (nh, nk) = (h.order(), k.order());
    let order = nh * nk;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let hh = h.mul(a % nh, b % nh);
            let kk = k.mul(a / nh, b / nh);
            table.push(hh + nh * kk);
        }
    }
    let gens = embedded_generators(h, k);
    FiniteGroup::from_flat_unchecked(
        format!("{}x{}", h.name(), k.name()),
        order,
        table,
        Some(gens),
    )
}

/// Semidirect product `H ⋊_σ K` on pairs `(h, x) ↦ h + |H|·x` with
/// `(h, x)(k, y) = (h·σ_x(k), xy)`.
pub fn make_semidirect(
    h: &FiniteGroup,
    k: &FiniteGroup,
    action: &Action,
) -> Result<FiniteGroup, GroupError> {
    if !h.is_abelian() {
        return Err(GroupError::NotAbelian(h.name().to_string()));
    }
    assert!(
        action.h().same_table(h) && action.k().same_table(k),
        "action is defined over different groups"
    );
    let (nh, nk) = (h.order(), k.order());
    let order = nh * nk;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (ha, xa) = (a % nh, a / nh);
        let sigma = action.sigma(xa);
        for b in 0..order {
            let (hb, xb) = (b % nh, b / nh);
            table.push(h.mul(ha, sigma[hb]) + nh * k.mul(xa, xb));
        }
    }
    let name = if action.is_trivial() {
        format!("{}x{}", h.name(), k.name())
    } else {
        format!("{}:{}", h.name(), k.name())
    };
    let gens = embedded_generators(h, k);
    Ok(FiniteGroup::from_flat_unchecked(
        name,
        order,
        table,
        Some(gens),
    ))
}

fn embedded_generators(h: &FiniteGroup, k: &FiniteGroup) -> Vec<Elem> {
    let nh = h.order();
    h.generators()
        .iter()
        .map(|&g| g + nh * k.identity())
        .chain(k.generators().iter().map(|&x| h.identity() + nh * x))
        .collect()
}
