//! Finite semigroups given by Cayley tables.
//!
//! Elements are the dense indices `0..n`; display names are carried along
//! as metadata only. A [`FiniteSemigroup`] can only be obtained through
//! [`FiniteSemigroup::new`] (or its wrappers), which checks closure and
//! associativity, so every value of the type is a semigroup.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A set of elements of a finite semigroup, stored as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subset {
    mask: Vec<bool>,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        Self {
            mask: vec![false; order],
        }
    }

    pub fn full(order: usize) -> Self {
        Self {
            mask: vec![true; order],
        }
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    /// Builds a subset from element indices. Indices `>= order` are a bug in
    /// the caller and panic.
    pub fn from_elements(order: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(order);
        for x in elements {
            s.insert(x);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn insert(&mut self, x: usize) {
        self.mask[x] = true;
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&m| m)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(&a, &b)| a || b)
                .collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// A validated finite semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    name: String,
    names: Vec<String>,
    order: usize,
    table: Vec<usize>,
}

/// Outcome of the Clifford test, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CliffordCheck {
    Clifford,
    /// `element` has `candidates` elements `x` with `axa = a`, `xax = x`.
    NotInverse {
        element: usize,
        candidates: usize,
    },
    /// `idempotent · element != element · idempotent`.
    NonCentralIdempotent {
        idempotent: usize,
        element: usize,
    },
}

impl CliffordCheck {
    pub fn holds(&self) -> bool {
        matches!(self, CliffordCheck::Clifford)
    }
}

impl fmt::Display for CliffordCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordCheck::Clifford => write!(f, "Clifford"),
            CliffordCheck::NotInverse {
                element,
                candidates,
            } => write!(
                f,
                "not inverse: element {element} has {candidates} inverse candidates"
            ),
            CliffordCheck::NonCentralIdempotent {
                idempotent,
                element,
            } => write!(
                f,
                "idempotent {idempotent} does not commute with element {element}"
            ),
        }
    }
}

impl FiniteSemigroup {
    /// Validates a row-major Cayley table given as rows.
    pub fn new(name: impl Into<String>, names: Vec<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::BadShape {
                    order,
                    len: row.len(),
                });
            }
            table.extend_from_slice(row);
        }
        let names = if names.len() == order {
            names
        } else if names.is_empty() {
            (0..order).map(|i| i.to_string()).collect()
        } else {
            return Err(Error::BadShape {
                order,
                len: names.len(),
            });
        };
        Self::from_flat(name.into(), names, order, table)
    }

    /// Validates a table with default element names `0..n`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Self::new("", Vec::new(), rows)
    }

    pub(crate) fn from_flat(
        name: String,
        names: Vec<String>,
        order: usize,
        table: Vec<usize>,
    ) -> Result<Self> {
        debug_assert_eq!(table.len(), order * order);
        for (i, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(Error::OutOfRangeEntry {
                    row: i / order,
                    col: i % order,
                    value: v,
                    order,
                });
            }
        }
        if let Some((a, b, c)) = associativity_witness(order, &table) {
            return Err(Error::NotAssociative { a, b, c });
        }
        Ok(Self {
            name,
            names,
            order,
            table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// The mask of all `e` with `e·e = e`.
    pub fn idempotents(&self) -> Subset {
        Subset::from_elements(
            self.order,
            self.elements().filter(|&e| self.is_idempotent(e)),
        )
    }

    /// Maps every element to its unique inverse.
    pub fn inverse_map(&self) -> Result<Vec<usize>> {
        self.elements()
            .map(|a| {
                let candidates: Vec<usize> = self
                    .elements()
                    .filter(|&x| {
                        self.mul(self.mul(a, x), a) == a && self.mul(self.mul(x, a), x) == x
                    })
                    .collect();
                match candidates.as_slice() {
                    [x] => Ok(*x),
                    _ => Err(Error::NotInverseSemigroup {
                        element: a,
                        candidates: candidates.len(),
                    }),
                }
            })
            .collect()
    }

    pub fn is_clifford(&self) -> CliffordCheck {
        if let Err(Error::NotInverseSemigroup {
            element,
            candidates,
        }) = self.inverse_map()
        {
            return CliffordCheck::NotInverse {
                element,
                candidates,
            };
        }
        for e in self.idempotents().iter() {
            for x in self.elements() {
                if self.mul(e, x) != self.mul(x, e) {
                    return CliffordCheck::NonCentralIdempotent {
                        idempotent: e,
                        element: x,
                    };
                }
            }
        }
        CliffordCheck::Clifford
    }

    /// Whether this is a group: a unique idempotent that is a two-sided identity
    /// and every element invertible with respect to it.
    pub fn is_group(&self) -> bool {
        let ids: Vec<usize> = self.idempotents().iter().collect();
        let [e] = ids.as_slice() else {
            return false;
        };
        self.elements().all(|a| {
            self.mul(*e, a) == a
                && self.mul(a, *e) == a
                && self.elements().any(|x| self.mul(a, x) == *e)
        })
    }

    /// The two-sided identity, if any.
    pub fn identity(&self) -> Option<usize> {
        self.elements().find(|&e| {
            self.elements()
                .all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
        })
    }

    /// Relabels the elements: element `old` becomes `perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        let mut table = vec![0; n * n];
        let mut names = vec![String::new(); n];
        for a in 0..n {
            names[perm[a]] = self.names[a].clone();
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_flat(self.name.clone(), names, n, table)
    }
}

/// Lexicographically first triple with `(ab)c != a(bc)`, by exhaustive scan.
pub(crate) fn associativity_witness(
    order: usize,
    table: &[usize],
) -> Option<(usize, usize, usize)> {
    let m = |a: usize, b: usize| table[a * order + b];
    for a in 0..order {
        for b in 0..order {
            let ab = m(a, b);
            for c in 0..order {
                if m(ab, c) != m(a, m(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}
