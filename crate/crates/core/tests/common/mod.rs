//! Independent reference implementations used to cross-check the library.
//! Groups are built from first principles (modular arithmetic, permutations) and
//! brackets are found by plain row-major backtracking with no propagation.

#![allow(dead_code)]

/// A group as a bare multiplication table with identity `0`.
#[derive(Debug, Clone)]
pub struct Table {
    pub n: usize,
    pub mul: Vec<usize>,
    pub inv: Vec<usize>,
}

impl Table {
    pub fn from_mul(n: usize, mul: Vec<usize>) -> Self {
        assert!(
            (0..n).all(|x| mul[x] == x && mul[x * n] == x),
            "0 must be the identity"
        );
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| mul[x * n + y] == 0).unwrap())
            .collect();
        Table { n, mul, inv }
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    /// `g x g⁻¹`
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.m(self.m(g, x), self.inv[g])
    }
}

pub fn cyclic(n: usize) -> Table {
    Table::from_mul(n, (0..n * n).map(|i| (i / n + i % n) % n).collect())
}

pub fn klein() -> Table {
    Table::from_mul(4, (0..16).map(|i| (i / 4) ^ (i % 4)).collect())
}

/// Symmetric group on `k` points as composition of permutations.
pub fn symmetric(k: usize) -> Table {
    let mut perms = vec![(0..k).collect::<Vec<_>>()];
    let mut all = Vec::new();
    permute(&mut (0..k).collect(), 0, &mut all);
    all.retain(|p| *p != perms[0]);
    perms.extend(all);
    let n = perms.len();
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let composed: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            mul[a * n + b] = index(&composed);
        }
    }
    Table::from_mul(n, mul)
}

fn permute(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    if i == p.len() {
        out.push(p.clone());
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, out);
        p.swap(i, j);
    }
}

/// Dihedral group of order `2n` as symmetries of an `n`-gon acting on vertices.
pub fn dihedral(n: usize) -> Table {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for flip in [false, true] {
        for r in 0..n {
            perms.push(
                (0..n)
                    .map(|i| if flip { (n + r - i) % n } else { (i + r) % n })
                    .collect(),
            );
        }
    }
    let m = perms.len();
    let mut mul = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            mul[a * m + b] = perms.iter().position(|q| *q == composed).unwrap();
        }
    }
    Table::from_mul(m, mul)
}

/// Direct product with `(a, b) ↦ a + |A|·b`.
pub fn product(a: &Table, b: &Table) -> Table {
    let n = a.n * b.n;
    let mul = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            a.m(x % a.n, y % a.n) + a.n * b.m(x / a.n, y / a.n)
        })
        .collect();
    Table::from_mul(n, mul)
}

/// Number of automorphisms by trying every permutation fixing the identity.
pub fn automorphism_count(g: &Table) -> usize {
    let mut rest: Vec<usize> = (1..g.n).collect();
    let mut all = Vec::new();
    permute(&mut rest, 0, &mut all);
    all.into_iter()
        .filter(|p| {
            let f = |x: usize| if x == 0 { 0 } else { p[x - 1] };
            (0..g.n).all(|a| (0..g.n).all(|b| f(g.m(a, b)) == g.m(f(a), f(b))))
        })
        .count()
}

const UNSET: usize = usize::MAX;

/// Checks every axiom instance whose cells are all known; `UNSET` marks unknown cells.
/// Returns `false` on a definite violation.
pub fn consistent(g: &Table, star: &[usize]) -> bool {
    let n = g.n;
    let s = |a: usize, b: usize| {
        let v = star[a * n + b];
        (v != UNSET).then_some(v)
    };
    for x in 0..n {
        if let Some(v) = s(x, x) {
            if v != 0 {
                return false;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // x ⋆ (yz) = (x ⋆ y) · ʸ(x ⋆ z)
                if let (Some(l), Some(a), Some(b)) = (s(x, g.m(y, z)), s(x, y), s(x, z)) {
                    if l != g.m(a, g.conj(y, b)) {
                        return false;
                    }
                }
                // (xy) ⋆ z = ˣ(y ⋆ z) · (x ⋆ z)
                if let (Some(l), Some(a), Some(b)) = (s(g.m(x, y), z), s(y, z), s(x, z)) {
                    if l != g.m(g.conj(x, a), b) {
                        return false;
                    }
                }
                // ᶻ(x ⋆ y) = ᶻx ⋆ ᶻy
                if let (Some(a), Some(b)) = (s(x, y), s(g.conj(z, x), g.conj(z, y))) {
                    if g.conj(z, a) != b {
                        return false;
                    }
                }
                // ((x ⋆ y) ⋆ ʸz) · ((y ⋆ z) ⋆ ᶻx) · ((z ⋆ x) ⋆ ˣy) = 1
                let term =
                    |p: usize, q: usize, r: usize| s(p, q).and_then(|pq| s(pq, g.conj(q, r)));
                if let (Some(a), Some(b), Some(c)) = (term(x, y, z), term(y, z, x), term(z, x, y)) {
                    if g.m(g.m(a, b), c) != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `true` iff the complete table `star` satisfies all five axioms.
pub fn is_bracket(g: &Table, star: &[usize]) -> bool {
    star.len() == g.n * g.n && star.iter().all(|&v| v < g.n) && consistent(g, star)
}

/// Every bracket on `g`, by assigning cells in row-major order and rejecting any
/// partial table with a fully determined violated axiom instance.
pub fn all_brackets(g: &Table) -> Vec<Vec<usize>> {
    let mut star = vec![UNSET; g.n * g.n];
    let mut out = Vec::new();
    fill(g, &mut star, 0, &mut out);
    out
}

fn fill(g: &Table, star: &mut Vec<usize>, cell: usize, out: &mut Vec<Vec<usize>>) {
    if cell == star.len() {
        out.push(star.clone());
        return;
    }
    for v in 0..g.n {
        star[cell] = v;
        if consistent(g, star) {
            fill(g, star, cell + 1, out);
        }
    }
    star[cell] = UNSET;
}

/// The library's table of a group as an oracle `Table` (identity must be `0`).
pub fn from_library(g: &mla_forge::group::FiniteGroup) -> Table {
    assert_eq!(g.identity(), 0);
    Table::from_mul(g.order(), g.cayley_rows().concat())
}
