//! Congruences, their traces and kernels, congruence pairs, quotients and
//! the kernel of a pentagon solution.
//!
//! On an inverse semigroup a congruence `ρ` is determined by its kernel
//! (the union of the classes containing idempotents) and its trace (the
//! restriction to `E(S)`). Conversely a congruence pair `(K, τ)` gives
//! `ρ_{(K,τ)} = {(a, b) : (a⁻¹a, b⁻¹b) ∈ τ, ab⁻¹ ∈ K}`.

use std::sync::Arc;

use serde::Serialize;

use crate::clifford::CliffordStructure;
use crate::error::{Error, Result};
use crate::pentagon::{classify, Solution};
use crate::semigroup::{FiniteSemigroup, Subset};

/// Relabels class ids by first occurrence.
pub fn canonicalize(classes: &[usize]) -> Vec<usize> {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    classes
        .iter()
        .map(|&c| match seen.iter().find(|(old, _)| *old == c) {
            Some(&(_, new)) => new,
            None => {
                let new = seen.len();
                seen.push((c, new));
                new
            }
        })
        .collect()
}

/// A congruence on a finite semigroup, as canonical class ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    base: Arc<FiniteSemigroup>,
    classes: Vec<usize>,
}

impl Congruence {
    /// Checks compatibility with the multiplication on both sides.
    pub fn new(base: Arc<FiniteSemigroup>, class_of: &[usize]) -> Result<Self> {
        let n = base.order();
        if class_of.len() != n {
            return Err(Error::BadShape {
                order: n,
                len: class_of.len(),
            });
        }
        let classes = canonicalize(class_of);
        for a in 0..n {
            for a2 in 0..n {
                if classes[a] != classes[a2] {
                    continue;
                }
                for b in 0..n {
                    if classes[base.mul(a, b)] != classes[base.mul(a2, b)] {
                        return Err(Error::NotCompatible { a, a2, b, b2: b });
                    }
                    if classes[base.mul(b, a)] != classes[base.mul(b, a2)] {
                        return Err(Error::NotCompatible {
                            a: b,
                            a2: b,
                            b: a,
                            b2: a2,
                        });
                    }
                }
            }
        }
        Ok(Self { base, classes })
    }

    pub fn identity(base: Arc<FiniteSemigroup>) -> Self {
        let classes = base.elements().collect();
        Self { base, classes }
    }

    pub fn universal(base: Arc<FiniteSemigroup>) -> Self {
        let classes = vec![0; base.order()];
        Self { base, classes }
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.classes[a] == self.classes[b]
    }

    pub fn class_members(&self, class: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&a| self.classes[a] == class)
            .collect()
    }

    /// The quotient semigroup on classes, and whether it is a group.
    pub fn quotient(&self) -> (FiniteSemigroup, bool) {
        let k = self.class_count();
        let reps: Vec<usize> = (0..k)
            .map(|c| self.classes.iter().position(|&x| x == c).expect("class"))
            .collect();
        let table = reps
            .iter()
            .flat_map(|&a| reps.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.classes[self.base.mul(a, b)])
            .collect();
        let names = reps
            .iter()
            .map(|&a| format!("[{}]", self.base.element_name(a)))
            .collect();
        let q = FiniteSemigroup::from_flat(format!("{}/rho", self.base.name()), names, k, table)
            .expect("quotient of a semigroup by a congruence is a semigroup");
        let is_group = q.is_group();
        (q, is_group)
    }
}

/// An equivalence on the idempotents, stored over the ascending idempotent list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IdempotentPartition {
    members: Vec<usize>,
    classes: Vec<usize>,
}

impl IdempotentPartition {
    /// `members` are the idempotents in ascending order, `class_of` is parallel to it.
    pub fn new(members: Vec<usize>, class_of: &[usize]) -> Result<Self> {
        if members.len() != class_of.len() {
            return Err(Error::BadShape {
                order: members.len(),
                len: class_of.len(),
            });
        }
        Ok(Self {
            members,
            classes: canonicalize(class_of),
        })
    }

    pub fn universal(members: Vec<usize>) -> Self {
        let classes = vec![0; members.len()];
        Self { members, classes }
    }

    pub fn identity(members: Vec<usize>) -> Self {
        let classes = (0..members.len()).collect();
        Self { members, classes }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    fn class_of(&self, e: usize) -> Option<usize> {
        self.members.binary_search(&e).ok().map(|i| self.classes[i])
    }

    /// Both arguments idempotent and in the same class.
    pub fn related(&self, e: usize, f: usize) -> bool {
        matches!((self.class_of(e), self.class_of(f)), (Some(x), Some(y)) if x == y)
    }

    pub fn is_universal(&self) -> bool {
        self.classes.iter().all(|&c| c == 0)
    }
}

/// Why a subset fails to be a normal subsemigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalityFailure {
    MissingIdempotent { idempotent: usize },
    NotClosed { a: usize, b: usize },
    NotConjugationClosed { a: usize, k: usize },
}

impl NormalityFailure {
    pub fn witness(&self) -> Vec<usize> {
        match *self {
            NormalityFailure::MissingIdempotent { idempotent } => vec![idempotent],
            NormalityFailure::NotClosed { a, b } => vec![a, b],
            NormalityFailure::NotConjugationClosed { a, k } => vec![a, k],
        }
    }
}

impl std::fmt::Display for NormalityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormalityFailure::MissingIdempotent { idempotent } => {
                write!(f, "idempotent {idempotent} is missing")
            }
            NormalityFailure::NotClosed { a, b } => write!(f, "{a}·{b} leaves the subset"),
            NormalityFailure::NotConjugationClosed { a, k } => {
                write!(f, "{a}⁻¹·{k}·{a} leaves the subset")
            }
        }
    }
}

/// `E(S) ⊆ K`, `KK ⊆ K` and `a⁻¹Ka ⊆ K` for every `a`.
pub fn is_normal_subsemigroup(
    c: &CliffordStructure,
    k: &Subset,
) -> std::result::Result<(), NormalityFailure> {
    let s = c.base();
    if let Some(&e) = c.idempotents().iter().find(|&&e| !k.contains(e)) {
        return Err(NormalityFailure::MissingIdempotent { idempotent: e });
    }
    for a in k.iter() {
        for b in k.iter() {
            if !k.contains(s.mul(a, b)) {
                return Err(NormalityFailure::NotClosed { a, b });
            }
        }
    }
    for a in s.elements() {
        for x in k.iter() {
            if !k.contains(s.mul(s.mul(c.inverse(a), x), a)) {
                return Err(NormalityFailure::NotConjugationClosed { a, k: x });
            }
        }
    }
    Ok(())
}

/// A congruence pair `(K, τ)`, validated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CongruencePair {
    kernel: Subset,
    trace: IdempotentPartition,
}

impl CongruencePair {
    pub fn new(c: &CliffordStructure, kernel: Subset, trace: IdempotentPartition) -> Result<Self> {
        let s = c.base();
        let fail = |msg: String| Err(Error::NotACongruencePair(msg));
        if kernel.order() != s.order() {
            return fail("kernel mask has the wrong length".into());
        }
        if trace.members() != c.idempotents() {
            return fail("trace is not over the idempotents".into());
        }
        if let Err(w) = is_normal_subsemigroup(c, &kernel) {
            return fail(format!("kernel is not a normal subsemigroup: {w}"));
        }
        let ids = c.idempotents();
        for &e in ids {
            for &f in ids {
                if !trace.related(e, f) {
                    continue;
                }
                for &g in ids {
                    if !trace.related(s.mul(e, g), s.mul(f, g)) {
                        return fail(format!(
                            "trace is not a congruence on E(S) at ({e}, {f}, {g})"
                        ));
                    }
                }
                for a in s.elements() {
                    let ai = c.inverse(a);
                    if !trace.related(s.mul(s.mul(ai, e), a), s.mul(s.mul(ai, f), a)) {
                        return fail(format!("trace is not normal at ({e}, {f}, {a})"));
                    }
                }
            }
        }
        for a in s.elements() {
            let aa = s.mul(c.inverse(a), a);
            for &e in ids {
                if kernel.contains(s.mul(a, e)) && trace.related(e, aa) && !kernel.contains(a) {
                    return fail(format!("{a}·{e} ∈ K and ({e}, {a}⁻¹{a}) ∈ τ but {a} ∉ K"));
                }
            }
        }
        Ok(Self { kernel, trace })
    }

    pub fn kernel(&self) -> &Subset {
        &self.kernel
    }

    pub fn trace(&self) -> &IdempotentPartition {
        &self.trace
    }

    /// `ρ_{(K,τ)}`, checked to be an equivalence and compatible.
    pub fn rho(&self, c: &CliffordStructure) -> Result<Congruence> {
        let s = c.base();
        let n = s.order();
        let related = |a: usize, b: usize| {
            let (ai, bi) = (c.inverse(a), c.inverse(b));
            self.trace.related(s.mul(ai, a), s.mul(bi, b)) && self.kernel.contains(s.mul(a, bi))
        };
        let mut classes = vec![usize::MAX; n];
        let mut next = 0;
        for a in 0..n {
            if classes[a] == usize::MAX {
                for b in a..n {
                    if related(a, b) {
                        classes[b] = next;
                    }
                }
                next += 1;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if related(a, b) != (classes[a] == classes[b]) {
                    return Err(Error::NotACongruencePair(format!(
                        "induced relation is not an equivalence at ({a}, {b})"
                    )));
                }
            }
        }
        Congruence::new(Arc::new(s.clone()), &classes)
    }
}

/// `(tr ρ, Ker ρ)`; the base must be Clifford.
pub fn trace_and_kernel(rho: &Congruence) -> Result<(IdempotentPartition, Subset)> {
    let c = CliffordStructure::decompose(rho.base())?;
    let ids = c.idempotents().to_vec();
    let trace_classes: Vec<usize> = ids.iter().map(|&e| rho.classes[e]).collect();
    let trace = IdempotentPartition::new(ids.clone(), &trace_classes)?;
    let idem_classes: Vec<usize> = ids.iter().map(|&e| rho.classes[e]).collect();
    let kernel = Subset::from_elements(
        rho.base().order(),
        rho.base()
            .elements()
            .filter(|&a| idem_classes.contains(&rho.classes[a])),
    );
    Ok((trace, kernel))
}

/// `ρ_{(K,τ)}` for a pair given as raw data, validating the pair first.
pub fn rho_from_pair(
    c: &CliffordStructure,
    kernel: Subset,
    trace: IdempotentPartition,
) -> Result<Congruence> {
    CongruencePair::new(c, kernel, trace)?.rho(c)
}

/// All set partitions of `0..n` as canonical class-id vectors.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max {
            cur.push(c);
            go(i + 1, n, cur, if c == max { max + 1 } else { max }, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Every congruence of `s`, by filtering all partitions.
pub fn all_congruences(s: &Arc<FiniteSemigroup>) -> Vec<Congruence> {
    set_partitions(s.order())
        .into_iter()
        .filter_map(|p| Congruence::new(s.clone(), &p).ok())
        .collect()
}

/// Every congruence pair of a Clifford semigroup, by filtering all
/// (subset, partition of `E(S)`) combinations.
pub fn all_congruence_pairs(c: &CliffordStructure) -> Vec<CongruencePair> {
    let n = c.base().order();
    let ids = c.idempotents().to_vec();
    let partitions = set_partitions(ids.len());
    let mut out = Vec::new();
    for bits in 0u64..(1 << n) {
        let kernel = Subset::from_mask((0..n).map(|i| bits >> i & 1 == 1).collect());
        if is_normal_subsemigroup(c, &kernel).is_err() {
            continue;
        }
        for p in &partitions {
            let trace = IdempotentPartition::new(ids.clone(), p).expect("shape");
            if let Ok(pair) = CongruencePair::new(c, kernel.clone(), trace) {
                out.push(pair);
            }
        }
    }
    out
}

/// `K = {a : θ_e(a) ∈ E(S) for every idempotent e ≤ a}`.
pub fn kernel_definitional(s: &Solution, c: &CliffordStructure) -> Subset {
    let base = s.base();
    Subset::from_elements(
        base.order(),
        base.elements().filter(|&a| {
            c.idempotents()
                .iter()
                .filter(|&&e| c.element_preorder(e, a))
                .all(|&e| base.is_idempotent(s.theta(e, a)))
        }),
    )
}

/// `K = {a : θ_e(a) ∈ E(S) for every idempotent e}`, which agrees with the
/// definitional kernel for idempotent-invariant solutions.
pub fn kernel_all_idempotents(s: &Solution, c: &CliffordStructure) -> Subset {
    let base = s.base();
    Subset::from_elements(
        base.order(),
        base.elements().filter(|&a| {
            c.idempotents()
                .iter()
                .all(|&e| base.is_idempotent(s.theta(e, a)))
        }),
    )
}

/// The kernel of a solution on a Clifford semigroup.
pub fn solution_kernel(s: &Solution) -> Result<Subset> {
    let c = CliffordStructure::decompose(s.base())?;
    if classify(s).e_invariant == Some(true) {
        Ok(kernel_all_idempotents(s, &c))
    } else {
        Ok(kernel_definitional(s, &c))
    }
}
