use std::path::PathBuf;

use thiserror::Error;

/// Which of the two solution axioms a failing triple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Axiom {
    /// `θ_a(b)·θ_{ab}(c) = θ_a(bc)`
    P1,
    /// `θ_{θ_a(b)}(θ_{ab}(c)) = θ_b(c)`
    P2,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("table must be {order}x{order}, got a row of length {len}")]
    BadShape { order: usize, len: usize },
    #[error("semigroup must have at least one element")]
    Empty,
    #[error("table entry ({row}, {col}) = {value} is out of range for order {order}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not associative: ({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("not an inverse semigroup: element {element} has {candidates} inverse candidates")]
    NotInverseSemigroup { element: usize, candidates: usize },
    #[error("not a Clifford semigroup: {0}")]
    NotClifford(String),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("idempotents {upper} and {lower} are not comparable (need {lower} <= {upper})")]
    NotComparable { upper: usize, lower: usize },
    #[error("inconsistent semilattice data: {0}")]
    SpecInconsistent(String),
    #[error("{axiom:?} violated at (a, b, c) = ({a}, {b}, {c})")]
    AxiomViolated {
        axiom: Axiom,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("map is not an endomorphism: f({a}·{b}) != f({a})·f({b})")]
    NotEndomorphism { a: usize, b: usize },
    #[error("map is not idempotent at {0}")]
    NotIdempotentMap(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("relation is not compatible: {a} ~ {a2} and {b} ~ {b2} but {a}·{b} !~ {a2}·{b2}")]
    NotCompatible {
        a: usize,
        a2: usize,
        b: usize,
        b2: usize,
    },
    #[error("not a congruence pair: {0}")]
    NotACongruencePair(String),
    #[error("mu({0}) is not in the class of {0}")]
    MuNotInClass(usize),
    #[error("image of mu is not a system of representatives: class {0} is hit {1} times")]
    NotTransversal(usize, usize),
    #[error("mu(ab) != mu(a) mu(a)^-1 mu(ab) at (a, b) = ({0}, {1})")]
    CondSoluViolated(usize, usize),
    #[error("quotient by the congruence is not a group")]
    QuotientNotGroup,
    #[error("solution is not idempotent-invariant")]
    NotInvariant,
    #[error("connector condition on products fails at (e, f, h, a, b) = {0:?}")]
    Condition1Violated([usize; 5]),
    #[error("connector intertwining condition fails at (e, f, h, a, b) = {0:?}")]
    Condition2Violated([usize; 5]),
    #[error("connector {from} -> {to} must equal the connecting homomorphism")]
    ConnectorMismatch { from: usize, to: usize },
    #[error("missing connector {from} -> {to}")]
    MissingConnector { from: usize, to: usize },
    #[error("connecting homomorphism {from} -> {to} is not surjective")]
    NotEpimorphism { from: usize, to: usize },
    #[error(
        "per-group solution on component {component} is not constant on cosets of N: {a} vs {b}"
    )]
    Hypothesis1Violated {
        component: usize,
        a: usize,
        b: usize,
    },
    #[error("per-group solutions do not intertwine along {from} -> {to} at ({a}, {b})")]
    Hypothesis2Violated {
        from: usize,
        to: usize,
        a: usize,
        b: usize,
    },
    #[error("construction depends on the transversal choice at ({0}, {1})")]
    TransversalDependent(usize, usize),
    #[error("identity `{identity}` fails at {witness:?}")]
    IdentityFailed {
        identity: &'static str,
        witness: Vec<usize>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
