//! Backtracking search for all brackets on a group.
//!
//! Cells `x ⋆ x`, `1 ⋆ x` and `x ⋆ 1` are fixed to `1`. Branching starts with the
//! cells on ordered pairs of distinct generators, then takes the first open cell in
//! row-major order. Every assignment is closed under the rules
//!
//! * `y ⋆ x = (x ⋆ y)⁻¹`
//! * `ᵍx ⋆ ᵍy = ᵍ(x ⋆ y)` (A5)
//! * `x ⋆ (yz) = (x ⋆ y)·ʸ(x ⋆ z)` (A2)
//! * `(xy) ⋆ z = ˣ(y ⋆ z)·(x ⋆ z)` (A3)
//!
//! and A4 is checked on every triple whose cells are known. Complete tables are
//! verified against all axioms before they are reported.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::group::{Elem, FiniteGroup};
use crate::mla::verify_flat;

const UNSET: Elem = usize::MAX;

pub(super) struct Outcome {
    pub tables: Vec<Vec<Elem>>,
    pub completed: bool,
}

struct Engine<'a> {
    g: &'a FiniteGroup,
    n: usize,
    /// `conj[g·n + x] = g x g⁻¹`
    conj: Vec<Elem>,
    inside: Option<Vec<bool>>,
    seeds: Vec<usize>,
    budget: u64,
    nodes: AtomicU64,
    stopped: AtomicBool,
}

#[derive(Clone)]
struct State {
    star: Vec<Elem>,
    trail: Vec<usize>,
}

impl Engine<'_> {
    fn assign(&self, st: &mut State, queue: &mut Vec<usize>, cell: usize, v: Elem) -> bool {
        let cur = st.star[cell];
        if cur != UNSET {
            return cur == v;
        }
        if let Some(inside) = &self.inside {
            let (x, y) = (cell / self.n, cell % self.n);
            if (inside[x] || inside[y]) && !inside[v] {
                return false;
            }
        }
        st.star[cell] = v;
        st.trail.push(cell);
        queue.push(cell);
        true
    }

    fn propagate(&self, st: &mut State, queue: &mut Vec<usize>) -> bool {
        let (g, n) = (self.g, self.n);
        let conj = |a: Elem, b: Elem| self.conj[a * n + b];
        while let Some(cell) = queue.pop() {
            let (x, y) = (cell / n, cell % n);
            let v = st.star[cell];
            if !self.assign(st, queue, y * n + x, g.inv(v)) {
                return false;
            }
            for c in 0..n {
                if !self.assign(st, queue, conj(c, x) * n + conj(c, y), conj(c, v)) {
                    return false;
                }
            }
            for z in 0..n {
                // x ⋆ (yz) from this cell and x ⋆ z
                let xz = st.star[x * n + z];
                if xz != UNSET
                    && !self.assign(st, queue, x * n + g.mul(y, z), g.mul(v, conj(y, xz)))
                {
                    return false;
                }
                // x ⋆ (zy) from x ⋆ z and this cell
                if xz != UNSET
                    && !self.assign(st, queue, x * n + g.mul(z, y), g.mul(xz, conj(z, v)))
                {
                    return false;
                }
                // (zx) ⋆ y from z ⋆ y and this cell as x ⋆ y
                let zy = st.star[z * n + y];
                if zy != UNSET
                    && !self.assign(st, queue, g.mul(z, x) * n + y, g.mul(conj(z, v), zy))
                {
                    return false;
                }
                // (xz) ⋆ y from this cell and z ⋆ y
                if zy != UNSET
                    && !self.assign(st, queue, g.mul(x, z) * n + y, g.mul(conj(x, zy), v))
                {
                    return false;
                }
            }
        }
        true
    }

    /// A4 on every triple whose six cells are known.
    fn jacobi_holds(&self, star: &[Elem]) -> bool {
        let (g, n) = (self.g, self.n);
        let conj = |a: Elem, b: Elem| self.conj[a * n + b];
        let term = |x: Elem, y: Elem, z: Elem| {
            let xy = star[x * n + y];
            if xy == UNSET {
                UNSET
            } else {
                star[xy * n + conj(y, z)]
            }
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t1 = term(x, y, z);
                    let t2 = term(y, z, x);
                    let t3 = term(z, x, y);
                    if t1 != UNSET
                        && t2 != UNSET
                        && t3 != UNSET
                        && g.mul(g.mul(t1, t2), t3) != g.identity()
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn next_cell(&self, star: &[Elem]) -> Option<usize> {
        self.seeds
            .iter()
            .copied()
            .find(|&c| star[c] == UNSET)
            .or_else(|| star.iter().position(|&v| v == UNSET))
    }

    fn candidates(&self, cell: usize) -> Vec<Elem> {
        let (x, y) = (cell / self.n, cell % self.n);
        match &self.inside {
            Some(inside) if inside[x] || inside[y] => (0..self.n).filter(|&v| inside[v]).collect(),
            _ => (0..self.n).collect(),
        }
    }

    fn charge(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Assigns `v` to `cell` and closes; returns the new state on success.
    fn branch(&self, st: &State, cell: usize, v: Elem) -> Option<State> {
        let mut st = st.clone();
        st.trail.clear();
        let mut queue = Vec::new();
        (self.assign(&mut st, &mut queue, cell, v)
            && self.propagate(&mut st, &mut queue)
            && self.jacobi_holds(&st.star))
        .then_some(st)
    }

    fn dfs(&self, st: &mut State, out: &mut Vec<Vec<Elem>>) {
        let Some(cell) = self.next_cell(&st.star) else {
            if verify_flat(self.g, &st.star, 1).is_empty() {
                out.push(st.star.clone());
            }
            return;
        };
        for v in self.candidates(cell) {
            if !self.charge() {
                return;
            }
            let mark = st.trail.len();
            let mut queue = Vec::new();
            if self.assign(st, &mut queue, cell, v)
                && self.propagate(st, &mut queue)
                && self.jacobi_holds(&st.star)
            {
                self.dfs(st, out);
            }
            for c in st.trail.drain(mark..) {
                st.star[c] = UNSET;
            }
        }
    }
}

/// All complete brackets on `g`, in search order. `inside` restricts the values of
/// `x ⋆ s` and `s ⋆ x` for `s` in a subgroup.
pub(super) fn search(
    g: &FiniteGroup,
    inside: Option<Vec<bool>>,
    budget: u64,
    parallel: bool,
) -> Outcome {
    let n = g.order();
    let conj = (0..n)
        .flat_map(|a| (0..n).map(move |b| g.conjugate(a, b)))
        .collect();
    let gens = g.generators();
    let seeds = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| a * n + b)
        .collect();
    let engine = Engine {
        g,
        n,
        conj,
        inside,
        seeds,
        budget,
        nodes: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
    };

    let mut root = State {
        star: vec![UNSET; n * n],
        trail: Vec::new(),
    };
    let mut queue = Vec::new();
    let e = g.identity();
    let mut ok = true;
    for x in 0..n {
        ok &= engine.assign(&mut root, &mut queue, x * n + x, e);
        ok &= engine.assign(&mut root, &mut queue, e * n + x, e);
        ok &= engine.assign(&mut root, &mut queue, x * n + e, e);
    }
    ok = ok && engine.propagate(&mut root, &mut queue);
    let mut tables = Vec::new();
    if ok {
        match engine.next_cell(&root.star) {
            Some(cell) if parallel => {
                let values = engine.candidates(cell);
                let parts: Vec<Vec<Vec<Elem>>> = values
                    .par_iter()
                    .map(|&v| {
                        let mut out = Vec::new();
                        if engine.charge() {
                            if let Some(mut st) = engine.branch(&root, cell, v) {
                                engine.dfs(&mut st, &mut out);
                            }
                        }
                        out
                    })
                    .collect();
                tables = parts.into_iter().flatten().collect();
            }
            _ => engine.dfs(&mut root, &mut tables),
        }
    }
    Outcome {
        tables,
        completed: !engine.stopped.load(Ordering::Relaxed),
    }
}
