//! Small semigroups used throughout the tests, the census and the CLI.

use std::collections::BTreeMap;

use crate::clifford::SemilatticeSpec;
use crate::semigroup::FiniteSemigroup;

fn named(name: &str, names: &[&str], rows: &[Vec<usize>]) -> FiniteSemigroup {
    FiniteSemigroup::new(name, names.iter().map(|s| s.to_string()).collect(), rows)
        .expect("built-in fixture is a semigroup")
}

pub fn trivial() -> FiniteSemigroup {
    named("trivial", &["1"], &[vec![0]])
}

/// The cyclic group of order `n`, written additively.
pub fn cyclic(n: usize) -> FiniteSemigroup {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    FiniteSemigroup::new(format!("z{n}"), names, &rows).expect("cyclic group")
}

pub fn z2() -> FiniteSemigroup {
    cyclic(2)
}

pub fn z4() -> FiniteSemigroup {
    cyclic(4)
}

/// The commutative Clifford monoid `{1, a, b}` with `a² = a`, `b² = a`, `ab = b`.
pub fn s3() -> FiniteSemigroup {
    named(
        "s3",
        &["1", "a", "b"],
        &[vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 1]],
    )
}

/// The chain semilattice `0 > 1 > … > k-1`; the product is the meet.
pub fn chain(k: usize) -> FiniteSemigroup {
    let rows: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| a.max(b)).collect()).collect();
    let names: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
    FiniteSemigroup::new(format!("chain{k}"), names, &rows).expect("chain semilattice")
}

pub fn chain2() -> FiniteSemigroup {
    chain(2)
}

/// `Z4` above `Z2` with reduction mod 2 as connecting homomorphism.
/// Elements `0..4` are `Z4`, elements `4, 5` are `Z2`.
pub fn z4_over_z2_spec() -> SemilatticeSpec {
    let mut homs = BTreeMap::new();
    homs.insert((0, 1), vec![0, 1, 0, 1]);
    SemilatticeSpec::new(
        vec![vec![0, 1], vec![1, 1]],
        vec![cyclic(4), cyclic(2)],
        homs,
    )
    .expect("Z4 over Z2 spec")
}

pub fn z4_over_z2() -> FiniteSemigroup {
    z4_over_z2_spec()
        .build()
        .expect("Z4 over Z2 builds")
        .with_name("z4_over_z2")
}

/// Klein four-group.
pub fn klein4() -> FiniteSemigroup {
    let rows: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    named("klein4", &["1", "x", "y", "xy"], &rows)
}

/// `Z_n` with an adjoined zero (the last element).
pub fn cyclic_with_zero(n: usize) -> FiniteSemigroup {
    let rows: Vec<Vec<usize>> = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| if a == n || b == n { n } else { (a + b) % n })
                .collect()
        })
        .collect();
    let mut names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    names.push("0".into());
    FiniteSemigroup::new(format!("z{n}_with_zero"), names, &rows).expect("group with zero")
}

/// Diamond semilattice `{1, e, f, 0}` with `ef = 0`.
pub fn diamond() -> FiniteSemigroup {
    named(
        "diamond",
        &["1", "e", "f", "0"],
        &[
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ],
    )
}

/// `Z2` above `Z2` with the identity as connecting homomorphism.
pub fn z2_over_z2() -> FiniteSemigroup {
    let mut homs = BTreeMap::new();
    homs.insert((0, 1), vec![0, 1]);
    SemilatticeSpec::new(
        vec![vec![0, 1], vec![1, 1]],
        vec![cyclic(2), cyclic(2)],
        homs,
    )
    .and_then(|s| s.build())
    .expect("Z2 over Z2")
    .with_name("z2_over_z2")
}

/// The five-element Brandt semigroup: 2×2 matrix units with zero.
/// Inverse but not Clifford.
pub fn brandt5() -> FiniteSemigroup {
    // 0 = zero, 1 = e11, 2 = e12, 3 = e21, 4 = e22
    let unit = |x: usize| -> Option<(usize, usize)> {
        match x {
            1 => Some((1, 1)),
            2 => Some((1, 2)),
            3 => Some((2, 1)),
            4 => Some((2, 2)),
            _ => None,
        }
    };
    let index = |(i, j): (usize, usize)| (i - 1) * 2 + j;
    let rows: Vec<Vec<usize>> = (0..5)
        .map(|a| {
            (0..5)
                .map(|b| match (unit(a), unit(b)) {
                    (Some((i, j)), Some((k, l))) if j == k => index((i, l)),
                    _ => 0,
                })
                .collect()
        })
        .collect();
    named("brandt5", &["0", "e11", "e12", "e21", "e22"], &rows)
}

pub fn left_zero2() -> FiniteSemigroup {
    named("left_zero2", &["p", "q"], &[vec![0, 0], vec![1, 1]])
}

/// Every built-in fixture, by name.
pub fn all() -> Vec<FiniteSemigroup> {
    vec![
        trivial(),
        z2(),
        cyclic(3),
        z4(),
        klein4(),
        s3(),
        chain2(),
        chain(3),
        diamond(),
        cyclic_with_zero(2),
        cyclic_with_zero(3),
        z2_over_z2(),
        z4_over_z2(),
        brandt5(),
        left_zero2(),
    ]
}

pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
    all().into_iter().find(|s| s.name() == name)
}

/// The Clifford fixtures on which every canonical solution is checked.
pub fn canonical_suite() -> Vec<FiniteSemigroup> {
    vec![s3(), z2(), z4(), chain2(), z4_over_z2()]
}
