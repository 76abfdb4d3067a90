//! Isomorphisms of semigroups and of solutions, by backtracking over
//! bijections with fingerprint pruning.

use crate::pentagon::Solution;
use crate::semigroup::FiniteSemigroup;

/// Isomorphism-invariant data of one element with respect to a list of
/// binary operations. Elements can only be matched when these agree.
fn fingerprints(n: usize, ops: &[&[usize]]) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| {
            let mut fp = Vec::new();
            for op in ops {
                let f = |x: usize, y: usize| op[x * n + y];
                fp.push(usize::from(f(a, a) == a));
                fp.push((0..n).filter(|&x| f(x, a) == a).count());
                fp.push((0..n).filter(|&x| f(a, x) == a).count());
                fp.push((0..n).filter(|&x| f(x, x) == a).count());
                let mut row: Vec<usize> = (0..n).map(|x| f(a, x)).collect();
                row.sort_unstable();
                row.dedup();
                fp.push(row.len());
                let mut col: Vec<usize> = (0..n).map(|x| f(x, a)).collect();
                col.sort_unstable();
                col.dedup();
                fp.push(col.len());
                fp.push((0..n).filter(|&x| f(a, x) == x).count());
            }
            fp
        })
        .collect()
}

struct Matcher<'a> {
    n: usize,
    src: &'a [&'a [usize]],
    dst: &'a [&'a [usize]],
    candidates: Vec<Vec<usize>>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    first_only: bool,
    found: Vec<Vec<usize>>,
}

impl Matcher<'_> {
    fn consistent(&self) -> bool {
        let n = self.n;
        for (src, dst) in self.src.iter().zip(self.dst) {
            for x in 0..n {
                let Some(px) = self.map[x] else { continue };
                for y in 0..n {
                    let Some(py) = self.map[y] else { continue };
                    if let Some(pr) = self.map[src[x * n + y]] {
                        if dst[px * n + py] != pr {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, a: usize) {
        if self.first_only && !self.found.is_empty() {
            return;
        }
        if a == self.n {
            self.found
                .push(self.map.iter().map(|m| m.expect("complete")).collect());
            return;
        }
        for i in 0..self.candidates[a].len() {
            let v = self.candidates[a][i];
            if self.used[v] {
                continue;
            }
            self.map[a] = Some(v);
            self.used[v] = true;
            if self.consistent() {
                self.search(a + 1);
            }
            self.map[a] = None;
            self.used[v] = false;
        }
    }
}

/// Bijections `ψ` with `ψ(op(x, y)) = op'(ψx, ψy)` for every paired operation.
fn structure_isomorphisms(
    n: usize,
    src: &[&[usize]],
    dst: &[&[usize]],
    first_only: bool,
) -> Vec<Vec<usize>> {
    let fs = fingerprints(n, src);
    let ft = fingerprints(n, dst);
    let candidates: Vec<Vec<usize>> = fs
        .iter()
        .map(|f| (0..n).filter(|&v| ft[v] == *f).collect())
        .collect();
    let mut m = Matcher {
        n,
        src,
        dst,
        candidates,
        map: vec![None; n],
        used: vec![false; n],
        first_only,
        found: Vec::new(),
    };
    m.search(0);
    m.found
}

/// All isomorphisms `S → T`, as maps `ψ[a]`.
pub fn semigroup_isomorphisms(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Vec<Vec<usize>> {
    if s.order() != t.order() {
        return Vec::new();
    }
    structure_isomorphisms(s.order(), &[s.table()], &[t.table()], false)
}

/// The automorphism group of `s`, identity first.
pub fn automorphisms(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let mut all = semigroup_isomorphisms(s, s);
    all.sort();
    all
}

/// A semigroup isomorphism `ψ` with `ψ(θ_a(b)) = η_{ψ(a)}(ψ(b))`, if any.
pub fn find_isomorphism(s: &Solution, t: &Solution) -> Option<Vec<usize>> {
    if s.order() != t.order() {
        return None;
    }
    let src = [s.base().table(), s.table()];
    let dst = [t.base().table(), t.table()];
    structure_isomorphisms(s.order(), &src, &dst, true).pop()
}

/// The θ-table of the solution transported along an automorphism `ψ`:
/// `θ'_{ψ(a)}(ψ(b)) = ψ(θ_a(b))`.
pub fn transport(s: &Solution, psi: &[usize]) -> Vec<usize> {
    let n = s.order();
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[psi[a] * n + psi[b]] = psi[s.theta(a, b)];
        }
    }
    out
}

/// Least θ-table in the orbit of `s` under the given automorphisms.
pub fn canonical_table(s: &Solution, automorphisms: &[Vec<usize>]) -> Vec<usize> {
    automorphisms
        .iter()
        .map(|psi| transport(s, psi))
        .min()
        .unwrap_or_else(|| s.table().to_vec())
}

pub fn invert(psi: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; psi.len()];
    for (a, &b) in psi.iter().enumerate() {
        inv[b] = a;
    }
    inv
}
