//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's checking code.

#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn is_associative(n: usize, m: &[usize]) -> bool {
    (0..n)
        .all(|a| (0..n).all(|b| (0..n).all(|c| m[m[a * n + b] * n + c] == m[a * n + m[b * n + c]])))
}

/// `θ_a(b)θ_{ab}(c) = θ_a(bc)` and `θ_{θ_a(b)}(θ_{ab}(c)) = θ_b(c)`.
pub fn satisfies_p1_p2(n: usize, m: &[usize], t: &[usize]) -> bool {
    let mul = |a: usize, b: usize| m[a * n + b];
    let th = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            let tab = th(a, b);
            for c in 0..n {
                let tabc = th(ab, c);
                if mul(tab, tabc) != th(a, mul(b, c)) || th(tab, tabc) != th(b, c) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_solution(n: usize, m: &[usize], t: &[usize]) -> bool {
    is_associative(n, m) && satisfies_p1_p2(n, m, t)
}

/// Every θ-table on an associative table, by filtering all `n^(n²)`.
pub fn naive_solutions(n: usize, m: &[usize]) -> Vec<Vec<usize>> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let mut out = Vec::new();
    let mut t = vec![0; cells];
    for code in 0..total {
        let mut x = code;
        for cell in t.iter_mut().rev() {
            *cell = x % n;
            x /= n;
        }
        if satisfies_p1_p2(n, m, &t) {
            out.push(t.clone());
        }
    }
    out
}

/// Set partitions of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for c in 0..=max + 1 {
            if prefix.is_empty() && c > 0 {
                break;
            }
            prefix.push(c);
            go(prefix, max.max(c), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, n, &mut out);
    out
}

pub fn is_compatible(n: usize, m: &[usize], classes: &[usize]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            classes[a] != classes[b]
                || (0..n).all(|c| {
                    classes[m[a * n + c]] == classes[m[b * n + c]]
                        && classes[m[c * n + a]] == classes[m[c * n + b]]
                })
        })
    })
}

/// `θ_a = γ` for all `a`, `γ` an idempotent endomorphism, base commutative.
pub fn is_commutative_shape(n: usize, m: &[usize], t: &[usize]) -> bool {
    let g = &t[..n];
    (0..n).all(|a| (0..n).all(|b| m[a * n + b] == m[b * n + a]))
        && (0..n).all(|a| &t[a * n..(a + 1) * n] == g)
        && (0..n).all(|a| (0..n).all(|b| g[m[a * n + b]] == m[g[a] * n + g[b]]))
        && (0..n).all(|a| g[g[a]] == g[a])
}

/// Idempotent endomorphisms of a group table.
pub fn idempotent_endomorphisms(n: usize, m: &[usize]) -> Vec<Vec<usize>> {
    let total = n.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut x = code;
        let g: Vec<usize> = (0..n)
            .map(|_| {
                let d = x % n;
                x /= n;
                d
            })
            .collect();
        let hom = (0..n).all(|a| (0..n).all(|b| g[m[a * n + b]] == m[g[a] * n + g[b]]));
        if hom && (0..n).all(|a| g[g[a]] == g[a]) {
            out.push(g);
        }
    }
    out
}

/// Cartesian product of choice lists.
pub fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|p| {
                options.iter().map(move |o| {
                    let mut q = p.clone();
                    q.push(o.clone());
                    q
                })
            })
            .collect();
    }
    out
}
