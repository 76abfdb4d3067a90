//! Structural identities every solution on a Clifford semigroup satisfies,
//! plus the extra ones that hold for idempotent-invariant and
//! idempotent-fixed solutions. Each is checked by exhaustive scan and a
//! failure carries the first witness found.

use serde::Serialize;

use crate::clifford::CliffordStructure;
use crate::congruence::{is_normal_subsemigroup, solution_kernel};
use crate::error::Result;
use crate::pentagon::{classify, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// False when the identity only applies to a class the solution is not in.
    pub applicable: bool,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.applicable && !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Suite {
    checks: Vec<IdentityCheck>,
}

impl Suite {
    fn add(
        &mut self,
        name: &'static str,
        applicable: bool,
        witness: impl FnOnce() -> Option<Vec<usize>>,
    ) {
        let witness = if applicable { witness() } else { None };
        self.checks.push(IdentityCheck {
            name,
            applicable,
            passed: witness.is_none(),
            witness,
        });
    }
}

/// Runs every identity against `s`. The base must be Clifford.
pub fn verify_identity_suite(s: &Solution) -> Result<IdentityReport> {
    let c = CliffordStructure::decompose(s.base())?;
    let flags = classify(s);
    let invariant = flags.e_invariant == Some(true);
    let fixed = flags.e_fixed == Some(true);
    let kernel = solution_kernel(s)?;

    let n = s.order();
    let base = s.base();
    let m = |a: usize, b: usize| base.mul(a, b);
    let t = |a: usize, b: usize| s.theta(a, b);
    let inv = |a: usize| c.inverse(a);
    let is_e = |a: usize| base.is_idempotent(a);
    let ids = c.idempotents().to_vec();
    let elems = || 0..n;
    let pairs = || elems().flat_map(move |a| elems().map(move |b| (a, b)));
    let find1 = |p: &dyn Fn(usize) -> bool| elems().find(|&a| !p(a)).map(|a| vec![a]);
    let find2 = |p: &dyn Fn(usize, usize) -> bool| {
        pairs().find(|&(a, b)| !p(a, b)).map(|(a, b)| vec![a, b])
    };
    // `e ≤ a` for an idempotent e
    let idem_below = |e: usize, a: usize| c.element_preorder(e, a);

    let mut suite = Suite { checks: Vec::new() };

    suite.add(
        "theta_at_inverse_is_inverse_of_theta_at_element",
        true,
        || find1(&|a| t(a, inv(a)) == inv(t(m(a, inv(a)), a))),
    );
    suite.add("theta_at_idempotent_of_element_is_idempotent", true, || {
        find1(&|a| {
            let x = t(a, m(inv(a), a));
            let y = t(a, inv(a));
            x == m(y, inv(y)) && is_e(x)
        })
    });
    suite.add("theta_at_group_identity_factorises", true, || {
        find2(&|a, b| {
            let e = m(a, inv(a));
            t(e, b) == t(t(inv(a), e), t(inv(a), b))
        })
    });
    suite.add("theta_below_idempotent_is_idempotent", true, || {
        elems()
            .flat_map(|a| ids.iter().map(move |&e| (a, e)))
            .find(|&(a, e)| c.element_preorder(a, e) && !is_e(t(a, e)))
            .map(|(a, e)| vec![a, e])
    });
    suite.add("theta_on_kernel_is_idempotent", true, || {
        let mut w = None;
        'outer: for a in elems() {
            for k in kernel.iter() {
                for &e in &ids {
                    if idem_below(e, a) && idem_below(e, k) && !is_e(t(m(e, a), k)) {
                        w = Some(vec![a, k, e]);
                        break 'outer;
                    }
                }
            }
        }
        w
    });
    suite.add("theta_lands_in_group_of_image_identity", true, || {
        find2(&|a, b| !c.element_preorder(a, b) || c.identity_of(t(a, b)) == t(a, m(b, inv(b))))
    });
    suite.add("theta_at_group_identity_is_image_identity", true, || {
        find2(&|a, b| {
            let x = t(a, b);
            !c.element_preorder(a, b) || t(a, m(b, inv(b))) == m(x, inv(x))
        })
    });
    suite.add("inverse_of_theta_is_theta_at_inverse", true, || {
        find2(&|a, b| !c.element_preorder(a, b) || inv(t(a, b)) == t(m(a, b), inv(b)))
    });
    suite.add("kernel_is_normal_subsemigroup", true, || {
        is_normal_subsemigroup(&c, &kernel)
            .err()
            .map(|f| f.witness())
    });

    let e0 = ids[0];
    suite.add("invariant_theta_equal_on_idempotents", invariant, || {
        ids.iter()
            .flat_map(|&e| ids.iter().map(move |&f| (e, f)))
            .find(|&(e, f)| s.row(e) != s.row(f))
            .map(|(e, f)| vec![e, f])
    });
    suite.add("invariant_theta_absorbs_idempotent", invariant, || {
        elems()
            .flat_map(|a| ids.iter().map(move |&e| (a, e)))
            .find(|&(a, e)| s.row(m(a, e)) != s.row(a))
            .map(|(a, e)| vec![a, e])
    });
    suite.add(
        "invariant_theta_at_idempotent_is_idempotent",
        invariant,
        || {
            elems()
                .flat_map(|a| ids.iter().map(move |&e| (a, e)))
                .find(|&(a, e)| !is_e(t(a, e)))
                .map(|(a, e)| vec![a, e])
        },
    );
    suite.add("invariant_theta_idempotent_absorbs_left", invariant, || {
        let mut w = None;
        'outer: for &e in &ids {
            for (a, b) in pairs() {
                if t(e, t(a, b)) != t(e, b) {
                    w = Some(vec![e, a, b]);
                    break 'outer;
                }
            }
        }
        w
    });
    suite.add(
        "invariant_theta_ignores_idempotent_factor",
        invariant,
        || {
            let mut w = None;
            'outer: for &e in &ids {
                for (a, b) in pairs() {
                    if t(a, b) != t(a, m(e, b)) {
                        w = Some(vec![e, a, b]);
                        break 'outer;
                    }
                }
            }
            w
        },
    );
    suite.add("invariant_inverse_of_theta_idempotent", invariant, || {
        elems()
            .flat_map(|a| ids.iter().map(move |&e| (a, e)))
            .find(|&(a, e)| inv(t(e, a)) != t(m(e, a), inv(a)))
            .map(|(a, e)| vec![a, e])
    });
    suite.add("invariant_theta_from_idempotent_row", invariant, || {
        find2(&|a, b| t(a, b) == m(inv(t(e0, a)), t(e0, m(a, b))))
    });
    suite.add(
        "invariant_idempotent_row_is_representative_map",
        invariant,
        || {
            find2(&|a, b| {
                let mu = |x: usize| t(e0, x);
                mu(m(a, b)) == m(m(mu(a), inv(mu(a))), mu(m(a, b)))
            })
        },
    );

    suite.add("fixed_theta_idempotent_absorbs_right", fixed, || {
        let mut w = None;
        'outer: for &e in &ids {
            for (a, b) in pairs() {
                if t(e, b) != t(e, t(m(a, e), b)) {
                    w = Some(vec![e, a, b]);
                    break 'outer;
                }
            }
        }
        w
    });
    suite.add("fixed_theta_idempotent_is_idempotent_map", fixed, || {
        elems()
            .flat_map(|b| ids.iter().map(move |&e| (e, b)))
            .find(|&(e, b)| t(e, t(e, b)) != t(e, b))
            .map(|(e, b)| vec![e, b])
    });
    suite.add("fixed_theta_stays_in_group", fixed, || {
        find2(&|a, b| t(a, b) == m(m(b, inv(b)), t(a, b)))
    });
    suite.add("fixed_theta_preserves_group_identity", fixed, || {
        find2(&|a, b| {
            let x = t(a, b);
            m(x, inv(x)) == m(b, inv(b))
        })
    });
    suite.add("fixed_theta_subscript_restricts", fixed, || {
        find2(&|a, b| t(a, b) == t(m(a, m(b, inv(b))), b))
    });

    Ok(IdentityReport {
        checks: suite.checks,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;
    use crate::pentagon::{canonical_i, check_axioms};

    fn s3() -> Arc<crate::semigroup::FiniteSemigroup> {
        Arc::new(fixtures::s3())
    }

    #[test]
    fn neither_solution_passes_general_identities() {
        let s = check_axioms(s3(), &[vec![1, 1, 1], vec![0, 1, 1], vec![0, 1, 1]]).unwrap();
        let r = verify_identity_suite(&s).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().filter(|c| c.applicable).count() == 9);
    }

    #[test]
    fn gamma_solution_passes_invariant_identities() {
        let s = check_axioms(s3(), &vec![vec![1, 1, 2]; 3]).unwrap();
        let r = verify_identity_suite(&s).unwrap();
        assert!(r.all_passed());
        assert!(
            r.get("invariant_theta_from_idempotent_row")
                .unwrap()
                .applicable
        );
        assert!(!r.get("fixed_theta_stays_in_group").unwrap().applicable);
    }

    #[test]
    fn identity_solution_passes_fixed_identities() {
        let r = verify_identity_suite(&canonical_i(s3()).unwrap()).unwrap();
        assert!(r.all_passed());
        assert!(r.get("fixed_theta_subscript_restricts").unwrap().applicable);
    }

    #[test]
    fn requires_clifford_base() {
        let s = canonical_i(Arc::new(fixtures::left_zero2())).unwrap();
        assert!(verify_identity_suite(&s).is_err());
    }
}
