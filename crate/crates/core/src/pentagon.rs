//! Set-theoretical solutions of the pentagon equation on finite semigroups.
//!
//! A map `s: S×S → S×S` is written `s(a, b) = (ab, θ_a(b))`. It solves
//! `s₂₃ s₁₃ s₁₂ = s₁₂ s₂₃` exactly when the multiplication is associative
//! and the two axioms
//!
//! * P1: `θ_a(b)·θ_{ab}(c) = θ_a(bc)`
//! * P2: `θ_{θ_a(b)}(θ_{ab}(c)) = θ_b(c)`
//!
//! hold for all `a, b, c`. [`check_axioms`] tests the axioms;
//! [`RawPairMap::check_pentagon`] evaluates the pentagon relation itself on
//! triples and is kept independent of the axiom route so each can serve as
//! the other's oracle.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Axiom, Error, Result};
use crate::semigroup::{associativity_witness, FiniteSemigroup};

/// A map on pairs, evaluated pointwise.
pub trait PairMap {
    fn order(&self) -> usize;
    fn apply(&self, a: usize, b: usize) -> (usize, usize);
}

pub type Triple = (usize, usize, usize);

/// `s₁₂ = s × id`
pub fn s12<M: PairMap + ?Sized>(m: &M, (x, y, z): Triple) -> Triple {
    let (p, q) = m.apply(x, y);
    (p, q, z)
}

/// `s₂₃ = id × s`
pub fn s23<M: PairMap + ?Sized>(m: &M, (x, y, z): Triple) -> Triple {
    let (p, q) = m.apply(y, z);
    (x, p, q)
}

/// `s₁₃ = (id × τ) s₁₂ (id × τ)` with `τ` the flip.
pub fn s13<M: PairMap + ?Sized>(m: &M, t: Triple) -> Triple {
    let flip = |(x, y, z): Triple| (x, z, y);
    flip(s12(m, flip(t)))
}

fn triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

fn first_failure<F: Fn(Triple) -> bool>(n: usize, ok: F) -> Option<Triple> {
    triples(n).find(|&t| !ok(t))
}

/// A candidate pair map `(a, b) ↦ (mult[a][b], theta[a][b])` with no axioms assumed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawPairMap {
    order: usize,
    mult: Vec<usize>,
    theta: Vec<usize>,
}

/// Result of evaluating the pentagon relation on every triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PentagonCheck {
    pub holds: bool,
    pub witness: Option<Triple>,
}

impl RawPairMap {
    /// Flat row-major tables of length `order²`; entries must be `< order`.
    pub fn new(order: usize, mult: Vec<usize>, theta: Vec<usize>) -> Result<Self> {
        for (table, len) in [(&mult, mult.len()), (&theta, theta.len())] {
            if len != order * order {
                return Err(Error::BadShape { order, len });
            }
            if let Some(i) = table.iter().position(|&v| v >= order) {
                return Err(Error::OutOfRangeEntry {
                    row: i / order,
                    col: i % order,
                    value: table[i],
                    order,
                });
            }
        }
        Ok(Self { order, mult, theta })
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// `s₂₃ s₁₃ s₁₂ = s₁₂ s₂₃` on all of `S³`, first failing triple otherwise.
    pub fn check_pentagon(&self) -> PentagonCheck {
        let witness = first_failure(self.order, |t| {
            s23(self, s13(self, s12(self, t))) == s12(self, s23(self, t))
        });
        PentagonCheck {
            holds: witness.is_none(),
            witness,
        }
    }

    /// Associativity of `mult` together with P1 and P2.
    pub fn satisfies_axioms(&self) -> bool {
        associativity_witness(self.order, &self.mult).is_none()
            && axiom_violation(self.order, &self.mult, &self.theta).is_none()
    }
}

impl PairMap for RawPairMap {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let i = a * self.order + b;
        (self.mult[i], self.theta[i])
    }
}

/// First triple (in lexicographic order) violating P1 or P2; P1 is
/// reported first when both fail at the same triple.
pub(crate) fn axiom_violation(
    n: usize,
    mult: &[usize],
    theta: &[usize],
) -> Option<(Axiom, usize, usize, usize)> {
    let m = |a: usize, b: usize| mult[a * n + b];
    let t = |a: usize, b: usize| theta[a * n + b];
    for (a, b, c) in triples(n) {
        let ab = m(a, b);
        if m(t(a, b), t(ab, c)) != t(a, m(b, c)) {
            return Some((Axiom::P1, a, b, c));
        }
        if t(t(a, b), t(ab, c)) != t(b, c) {
            return Some((Axiom::P2, a, b, c));
        }
    }
    None
}

/// A validated solution: an explicit θ-table over a semigroup.
#[derive(Debug, Clone)]
pub struct Solution {
    base: Arc<FiniteSemigroup>,
    theta: Vec<usize>,
}

impl PartialEq for Solution {
    fn eq(&self, other: &Self) -> bool {
        self.theta == other.theta && *self.base == *other.base
    }
}

impl Eq for Solution {}

impl PartialOrd for Solution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Solution {
    /// Lexicographic on the flattened θ-table.
    fn cmp(&self, other: &Self) -> Ordering {
        self.theta
            .cmp(&other.theta)
            .then_with(|| self.base.table().cmp(other.base.table()))
    }
}

impl std::hash::Hash for Solution {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.theta.hash(state);
    }
}

/// Validates `theta` (rows `θ_a`) against P1 and P2 over `base`.
pub fn check_axioms(base: Arc<FiniteSemigroup>, theta: &[Vec<usize>]) -> Result<Solution> {
    let n = base.order();
    if theta.len() != n {
        return Err(Error::BadShape {
            order: n,
            len: theta.len(),
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for row in theta {
        if row.len() != n {
            return Err(Error::BadShape {
                order: n,
                len: row.len(),
            });
        }
        flat.extend_from_slice(row);
    }
    Solution::from_flat(base, flat)
}

impl Solution {
    /// Validates a flat row-major θ-table.
    pub fn from_flat(base: Arc<FiniteSemigroup>, theta: Vec<usize>) -> Result<Self> {
        let n = base.order();
        if theta.len() != n * n {
            return Err(Error::BadShape {
                order: n,
                len: theta.len(),
            });
        }
        if let Some(i) = theta.iter().position(|&v| v >= n) {
            return Err(Error::OutOfRangeEntry {
                row: i / n,
                col: i % n,
                value: theta[i],
                order: n,
            });
        }
        if let Some((axiom, a, b, c)) = axiom_violation(n, base.table(), &theta) {
            return Err(Error::AxiomViolated { axiom, a, b, c });
        }
        Ok(Self { base, theta })
    }

    pub(crate) fn new_unchecked(base: Arc<FiniteSemigroup>, theta: Vec<usize>) -> Self {
        debug_assert!(axiom_violation(base.order(), base.table(), &theta).is_none());
        Self { base, theta }
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FiniteSemigroup> {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    /// `θ_a(b)`
    #[inline]
    pub fn theta(&self, a: usize, b: usize) -> usize {
        self.theta[a * self.base.order() + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        let n = self.base.order();
        &self.theta[a * n..(a + 1) * n]
    }

    pub fn table(&self) -> &[usize] {
        &self.theta
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.theta
            .chunks(self.base.order())
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn to_raw(&self) -> RawPairMap {
        RawPairMap {
            order: self.order(),
            mult: self.base.table().to_vec(),
            theta: self.theta.clone(),
        }
    }
}

impl PairMap for Solution {
    fn order(&self) -> usize {
        self.base.order()
    }

    #[inline]
    fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        (self.base.mul(a, b), self.theta(a, b))
    }
}

fn constant_rows(base: &Arc<FiniteSemigroup>, row: impl Fn(usize) -> usize) -> Vec<usize> {
    let n = base.order();
    (0..n).flat_map(|_| (0..n).map(&row)).collect()
}

/// `I(a, b) = (ab, b)`
pub fn canonical_i(base: Arc<FiniteSemigroup>) -> Result<Solution> {
    let theta = constant_rows(&base, |b| b);
    Solution::from_flat(base, theta)
}

/// `F(a, b) = (ab, bb⁻¹)`; requires an inverse semigroup.
pub fn canonical_f(base: Arc<FiniteSemigroup>) -> Result<Solution> {
    let inv = base.inverse_map()?;
    let theta = constant_rows(&base, |b| base.mul(b, inv[b]));
    Solution::from_flat(base, theta)
}

/// `E(a, b) = (ab, e)` for a fixed idempotent `e`.
pub fn canonical_e(base: Arc<FiniteSemigroup>, e: usize) -> Result<Solution> {
    if e >= base.order() || !base.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let theta = constant_rows(&base, |_| e);
    Solution::from_flat(base, theta)
}

/// `s(a, b) = (ab, γ(b))` for an idempotent endomorphism `γ`.
pub fn from_idempotent_endomorphism(
    base: Arc<FiniteSemigroup>,
    gamma: &[usize],
) -> Result<Solution> {
    let n = base.order();
    if gamma.len() != n {
        return Err(Error::BadShape {
            order: n,
            len: gamma.len(),
        });
    }
    if let Some(i) = gamma.iter().position(|&v| v >= n) {
        return Err(Error::OutOfRangeEntry {
            row: 0,
            col: i,
            value: gamma[i],
            order: n,
        });
    }
    for a in 0..n {
        for b in 0..n {
            if gamma[base.mul(a, b)] != base.mul(gamma[a], gamma[b]) {
                return Err(Error::NotEndomorphism { a, b });
            }
        }
    }
    if let Some(a) = (0..n).find(|&a| gamma[gamma[a]] != gamma[a]) {
        return Err(Error::NotIdempotentMap(a));
    }
    let theta = constant_rows(&base, |b| gamma[b]);
    Solution::from_flat(base, theta)
}

/// `s(a, b) = (f(a), g(b))` for commuting idempotent maps on `0..order`.
pub fn from_commuting_idempotent_maps(
    order: usize,
    f: &[usize],
    g: &[usize],
) -> Result<RawPairMap> {
    for (name, h) in [("f", f), ("g", g)] {
        if h.len() != order || h.iter().any(|&x| x >= order) {
            return Err(Error::PreconditionFailed(format!(
                "{name} is not a map on {order} points"
            )));
        }
        if let Some(x) = (0..order).find(|&x| h[h[x]] != h[x]) {
            return Err(Error::PreconditionFailed(format!(
                "{name}∘{name} != {name} at {x}"
            )));
        }
    }
    if let Some(x) = (0..order).find(|&x| f[g[x]] != g[f[x]]) {
        return Err(Error::PreconditionFailed(format!("f∘g != g∘f at {x}")));
    }
    let mult = (0..order)
        .flat_map(|a| (0..order).map(move |_| f[a]))
        .collect();
    let theta = (0..order).flat_map(|_| g.iter().copied()).collect();
    let raw = RawPairMap::new(order, mult, theta)?;
    let check = raw.check_pentagon();
    if !check.holds {
        return Err(Error::PreconditionFailed(format!(
            "pentagon relation fails at {:?}",
            check.witness
        )));
    }
    Ok(raw)
}

/// Classification of a solution. The two idempotent flags are `None` on a
/// base that is not Clifford, where they are not defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClassificationFlags {
    pub commutative: bool,
    pub cocommutative: bool,
    pub involutive: bool,
    pub idempotent: bool,
    pub e_invariant: Option<bool>,
    pub e_fixed: Option<bool>,
}

impl ClassificationFlags {
    /// Neither idempotent-invariant nor idempotent-fixed.
    pub fn neither(&self) -> Option<bool> {
        Some(!self.e_invariant? && !self.e_fixed?)
    }

    pub fn has(&self, flag: Flag) -> bool {
        match flag {
            Flag::Commutative => self.commutative,
            Flag::Cocommutative => self.cocommutative,
            Flag::Involutive => self.involutive,
            Flag::Idempotent => self.idempotent,
            Flag::EInvariant => self.e_invariant == Some(true),
            Flag::EFixed => self.e_fixed == Some(true),
            Flag::Neither => self.neither() == Some(true),
        }
    }

    pub fn labels(&self) -> Vec<&'static str> {
        Flag::ALL
            .iter()
            .filter(|&&f| self.has(f))
            .map(|f| f.name())
            .collect()
    }
}

/// A classification bucket, usable as an enumeration filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Commutative,
    Cocommutative,
    Involutive,
    Idempotent,
    EInvariant,
    EFixed,
    Neither,
}

impl Flag {
    pub const ALL: [Flag; 7] = [
        Flag::Commutative,
        Flag::Cocommutative,
        Flag::Involutive,
        Flag::Idempotent,
        Flag::EInvariant,
        Flag::EFixed,
        Flag::Neither,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Commutative => "commutative",
            Flag::Cocommutative => "cocommutative",
            Flag::Involutive => "involutive",
            Flag::Idempotent => "idempotent",
            Flag::EInvariant => "e-invariant",
            Flag::EFixed => "e-fixed",
            Flag::Neither => "neither",
        }
    }
}

impl std::str::FromStr for Flag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Flag::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase().replace('_', "-"))
            .ok_or_else(|| {
                let names: Vec<_> = Flag::ALL.iter().map(|f| f.name()).collect();
                format!("unknown flag `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Per-flag counterexamples, for the flags that fail.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassificationWitnesses {
    pub commutative: Option<Triple>,
    pub cocommutative: Option<Triple>,
    pub involutive: Option<(usize, usize)>,
    pub idempotent: Option<(usize, usize)>,
    /// `(a, e, f)` with `θ_a(e) != θ_a(f)`
    pub e_invariant: Option<Triple>,
    /// `(a, e)` with `θ_a(e) != e`
    pub e_fixed: Option<(usize, usize)>,
}

pub fn classify(s: &Solution) -> ClassificationFlags {
    classify_detailed(s).0
}

/// Every flag is decided by an exhaustive scan of its defining identity:
/// `s₁₂s₁₃ = s₁₃s₁₂`, `s₁₃s₂₃ = s₂₃s₁₃`, `s² = id`, `s² = s`,
/// `θ_a(e) = θ_a(f)` and `θ_a(e) = e`.
pub fn classify_detailed(s: &Solution) -> (ClassificationFlags, ClassificationWitnesses) {
    let n = s.order();
    let mut w = ClassificationWitnesses {
        commutative: first_failure(n, |t| s12(s, s13(s, t)) == s13(s, s12(s, t))),
        cocommutative: first_failure(n, |t| s13(s, s23(s, t)) == s23(s, s13(s, t))),
        ..Default::default()
    };
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    w.involutive = pairs().find(|&(a, b)| {
        let (x, y) = s.apply(a, b);
        s.apply(x, y) != (a, b)
    });
    w.idempotent = pairs().find(|&(a, b)| {
        let p = s.apply(a, b);
        s.apply(p.0, p.1) != p
    });
    let clifford = s.base().is_clifford().holds();
    let (mut e_invariant, mut e_fixed) = (None, None);
    if clifford {
        let ids = s.base().idempotents().to_vec();
        let ids = &ids;
        w.e_invariant = (0..n)
            .flat_map(|a| {
                ids.iter()
                    .flat_map(move |&e| ids.iter().map(move |&f| (a, e, f)))
            })
            .find(|&(a, e, f)| s.theta(a, e) != s.theta(a, f));
        w.e_fixed = (0..n)
            .flat_map(|a| ids.iter().map(move |&e| (a, e)))
            .find(|&(a, e)| s.theta(a, e) != e);
        e_invariant = Some(w.e_invariant.is_none());
        e_fixed = Some(w.e_fixed.is_none());
    }
    let flags = ClassificationFlags {
        commutative: w.commutative.is_none(),
        cocommutative: w.cocommutative.is_none(),
        involutive: w.involutive.is_none(),
        idempotent: w.idempotent.is_none(),
        e_invariant,
        e_fixed,
    };
    (flags, w)
}

/// `θ_a = γ` for all `a`, with `γ` an idempotent endomorphism, on a
/// commutative base. Exactly the commutative solutions.
pub fn is_constant_idempotent_endomorphism(s: &Solution) -> bool {
    let n = s.order();
    let base = s.base();
    let gamma = s.row(0);
    base.is_commutative()
        && (0..n).all(|a| s.row(a) == gamma)
        && (0..n).all(|a| (0..n).all(|b| gamma[base.mul(a, b)] == base.mul(gamma[a], gamma[b])))
        && (0..n).all(|a| gamma[gamma[a]] == gamma[a])
}

/// `θ_a(b) = b` everywhere.
pub fn is_identity_solution(s: &Solution) -> bool {
    let n = s.order();
    (0..n).all(|a| (0..n).all(|b| s.theta(a, b) == b))
}
