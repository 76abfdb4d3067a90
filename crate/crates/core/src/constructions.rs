//! Building solutions on Clifford semigroups from smaller data.
//!
//! Idempotent-invariant solutions come from a congruence `ρ` with `S/ρ` a
//! group and a representative map `μ`, via `θ_a(b) = μ(a)⁻¹μ(ab)`; every
//! such solution arises this way with `μ = θ_e`.
//!
//! Idempotent-fixed solutions come from a solution `θ^{[e]}` on every
//! group component and connector maps `ε_{e,f}: G_e → G_f`, via
//! `θ_a(b) = θ^{[f]}_{ε_{e,f}(a)}(b)` for `a ∈ G_e`, `b ∈ G_f`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::clifford::CliffordStructure;
use crate::congruence::{solution_kernel, Congruence, CongruencePair, IdempotentPartition};
use crate::error::{Error, Result};
use crate::iso::semigroup_isomorphisms;
use crate::pentagon::{classify, Solution};
use crate::semigroup::{FiniteSemigroup, Subset};

/// A map `μ: S → S` picking one representative per class of `ρ`.
#[derive(Debug, Clone)]
pub struct RepresentativeMap {
    rho: Congruence,
    mu: Vec<usize>,
}

impl RepresentativeMap {
    /// Checks `μ(a) ∈ [a]`, that the image is a transversal, that `S/ρ`
    /// is a group and `μ(ab) = μ(a)μ(a)⁻¹μ(ab)`.
    pub fn new(rho: Congruence, mu: Vec<usize>) -> Result<Self> {
        let s = rho.base();
        let n = s.order();
        if mu.len() != n {
            return Err(Error::BadShape {
                order: n,
                len: mu.len(),
            });
        }
        if let Some(a) = (0..n).find(|&a| mu[a] >= n || !rho.related(a, mu[a])) {
            return Err(Error::MuNotInClass(a));
        }
        let mut image: Vec<usize> = mu.clone();
        image.sort_unstable();
        image.dedup();
        for class in 0..rho.class_count() {
            let hits = image.iter().filter(|&&x| rho.classes()[x] == class).count();
            if hits != 1 {
                return Err(Error::NotTransversal(class, hits));
            }
        }
        if !rho.quotient().1 {
            return Err(Error::QuotientNotGroup);
        }
        let inv = s.inverse_map()?;
        for a in 0..n {
            for b in 0..n {
                let mab = mu[s.mul(a, b)];
                if s.mul(s.mul(mu[a], inv[mu[a]]), mab) != mab {
                    return Err(Error::CondSoluViolated(a, b));
                }
            }
        }
        Ok(Self { rho, mu })
    }

    pub fn rho(&self) -> &Congruence {
        &self.rho
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }
}

/// `θ_a(b) = μ(a)⁻¹μ(ab)`. The result is idempotent-invariant.
pub fn invariant_from_mu(m: &RepresentativeMap) -> Result<Solution> {
    let s = m.rho.base();
    let c = CliffordStructure::decompose(s)?;
    let n = s.order();
    let mu = &m.mu;
    let theta = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| s.mul(c.inverse(mu[a]), mu[s.mul(a, b)]))
        .collect();
    Solution::from_flat(Arc::new(s.clone()), theta)
}

/// What an idempotent-invariant solution decomposes into.
#[derive(Debug, Clone)]
pub struct InvariantData {
    pub pair: CongruencePair,
    pub rho: Congruence,
    /// `θ_e` for the least idempotent `e`; a valid representative map for `rho`.
    pub mu: Vec<usize>,
    pub representatives: Subset,
}

/// Recovers `(K, E×E)`, `ρ_{(K, E×E)}` and `μ = θ_e` from an
/// idempotent-invariant solution, checking `θ_a(b) = θ_e(a)⁻¹θ_e(ab)`
/// and `θ_e(a) ρ a` along the way.
pub fn extract_invariant_data(s: &Solution) -> Result<InvariantData> {
    if classify(s).e_invariant != Some(true) {
        return Err(Error::NotInvariant);
    }
    let base = s.base();
    let c = CliffordStructure::decompose(base)?;
    let e0 = c.idempotents()[0];
    if let Some(&e) = c.idempotents().iter().find(|&&e| s.row(e) != s.row(e0)) {
        return Err(Error::IdentityFailed {
            identity: "theta rows agree on idempotents",
            witness: vec![e0, e],
        });
    }
    let kernel = solution_kernel(s)?;
    let tau = IdempotentPartition::universal(c.idempotents().to_vec());
    let pair = CongruencePair::new(&c, kernel, tau)?;
    let rho = pair.rho(&c)?;
    let mu = s.row(e0).to_vec();
    let n = base.order();
    for a in 0..n {
        if !rho.related(mu[a], a) {
            return Err(Error::IdentityFailed {
                identity: "theta_e(a) is related to a",
                witness: vec![a],
            });
        }
        for b in 0..n {
            if s.theta(a, b) != base.mul(c.inverse(mu[a]), mu[base.mul(a, b)]) {
                return Err(Error::IdentityFailed {
                    identity: "theta_a(b) = theta_e(a)^-1 theta_e(ab)",
                    witness: vec![a, b],
                });
            }
        }
    }
    let representatives = Subset::from_elements(n, mu.iter().copied());
    Ok(InvariantData {
        pair,
        rho,
        mu,
        representatives,
    })
}

/// For idempotent-invariant `s` and `t`: a semigroup isomorphism `ψ` with
/// `ψ∘θ_e = η_e∘ψ`, if any. Such a `ψ` is exactly an isomorphism of the
/// two solutions.
pub fn invariant_isomorphism(s: &Solution, t: &Solution) -> Result<Option<Vec<usize>>> {
    let e = CliffordStructure::decompose(s.base())?.idempotents()[0];
    let f = CliffordStructure::decompose(t.base())?.idempotents()[0];
    for x in [s, t] {
        if classify(x).e_invariant != Some(true) {
            return Err(Error::NotInvariant);
        }
    }
    Ok(semigroup_isomorphisms(s.base(), t.base())
        .into_iter()
        .find(|psi| (0..s.order()).all(|a| psi[s.theta(e, a)] == t.theta(f, psi[a]))))
}

/// Per-component solutions and connectors `ε_{e,f}` on a Clifford semigroup.
///
/// Components are addressed by their position in the ascending idempotent
/// list, and per-group data uses local element indices.
#[derive(Debug, Clone)]
pub struct ComponentSolutionFamily {
    base: Arc<FiniteSemigroup>,
    structure: CliffordStructure,
    solutions: Vec<Solution>,
    /// `[k][l][local a]` = global element `ε(a)` of `G_l`.
    connectors: Vec<Vec<Vec<usize>>>,
}

impl ComponentSolutionFamily {
    /// `group_thetas[k]` are the rows of the solution on component `k`.
    /// Connectors `k → l` with `l` below `k` may be omitted (they default to
    /// `φ`) and must equal `φ` if given; all others are required.
    pub fn new(
        base: Arc<FiniteSemigroup>,
        group_thetas: &[Vec<Vec<usize>>],
        connectors: &BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self> {
        let structure = CliffordStructure::decompose(&base)?;
        let m = structure.idempotents().len();
        if group_thetas.len() != m {
            return Err(Error::BadShape {
                order: m,
                len: group_thetas.len(),
            });
        }
        let solutions = group_thetas
            .iter()
            .enumerate()
            .map(|(k, rows)| check_axioms_on(Arc::new(structure.component_group(k)), rows))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&(k, l)) = connectors.keys().find(|&&(k, l)| k >= m || l >= m) {
            return Err(Error::PreconditionFailed(format!(
                "connector {k} -> {l} names a missing component"
            )));
        }
        let mut eps = vec![vec![Vec::new(); m]; m];
        for k in 0..m {
            let (e, gk) = (structure.idempotents()[k], structure.component(k));
            for l in 0..m {
                let (f, gl) = (structure.idempotents()[l], structure.component(l));
                let phi: Option<Vec<usize>> = structure
                    .below(l, k)
                    .then(|| gk.iter().map(|&a| base.mul(f, a)).collect());
                let given = connectors.get(&(k, l)).map(|map| -> Result<Vec<usize>> {
                    if map.len() != gk.len() {
                        return Err(Error::BadShape {
                            order: gk.len(),
                            len: map.len(),
                        });
                    }
                    map.iter()
                        .enumerate()
                        .map(|(i, &x)| {
                            gl.get(x).copied().ok_or(Error::OutOfRangeEntry {
                                row: i,
                                col: 0,
                                value: x,
                                order: gl.len(),
                            })
                        })
                        .collect()
                });
                eps[k][l] = match (phi, given) {
                    (Some(phi), None) => phi,
                    (Some(phi), Some(given)) => {
                        if given? != phi {
                            return Err(Error::ConnectorMismatch { from: e, to: f });
                        }
                        phi
                    }
                    (None, Some(given)) => given?,
                    (None, None) => return Err(Error::MissingConnector { from: e, to: f }),
                };
            }
        }
        let fam = Self {
            base,
            structure,
            solutions,
            connectors: eps,
        };
        fam.check_conditions()?;
        Ok(fam)
    }

    /// Like [`Self::new`] for connectors already in global form, without
    /// checking the two connector conditions.
    fn assemble(
        base: Arc<FiniteSemigroup>,
        structure: CliffordStructure,
        solutions: Vec<Solution>,
        connectors: Vec<Vec<Vec<usize>>>,
    ) -> Self {
        Self {
            base,
            structure,
            solutions,
            connectors,
        }
    }

    /// Per-group solutions `θ^{[e]}_x = γ^{[e]}` with `ε_{e,f} ≡ f` on
    /// pairs where `f` is not below `e`.
    pub fn from_endomorphisms(base: Arc<FiniteSemigroup>, gammas: &[Vec<usize>]) -> Result<Self> {
        let c = CliffordStructure::decompose(&base)?;
        let m = c.idempotents().len();
        if gammas.len() != m {
            return Err(Error::BadShape {
                order: m,
                len: gammas.len(),
            });
        }
        let group_thetas: Vec<Vec<Vec<usize>>> = gammas
            .iter()
            .enumerate()
            .map(|(k, g)| vec![g.clone(); c.component(k).len()])
            .collect();
        let mut connectors = BTreeMap::new();
        for k in 0..m {
            for l in 0..m {
                if !c.below(l, k) {
                    let id = c.local_index(c.idempotents()[l]);
                    connectors.insert((k, l), vec![id; c.component(k).len()]);
                }
            }
        }
        Self::new(base, &group_thetas, &connectors)
    }

    pub fn base(&self) -> &Arc<FiniteSemigroup> {
        &self.base
    }

    pub fn structure(&self) -> &CliffordStructure {
        &self.structure
    }

    /// The solution on component `k`, in local indices.
    pub fn group_solution(&self, k: usize) -> &Solution {
        &self.solutions[k]
    }

    /// `ε_{e,f}(a)` for `a ∈ G_e` and `f` at position `l`.
    pub fn connector(&self, l: usize, a: usize) -> usize {
        let k = self.structure.component_index(a);
        self.connectors[k][l][self.structure.local_index(a)]
    }

    /// `θ^{[l]}_x(b)` on global elements `x, b ∈ G_l`.
    fn group_theta(&self, l: usize, x: usize, b: usize) -> usize {
        let c = &self.structure;
        c.component(l)[self.solutions[l].theta(c.local_index(x), c.local_index(b))]
    }

    /// Exhaustive check of the product condition
    /// `θ^{[h]}_{ε_{ef,h}(ab)} = θ^{[h]}_{ε_{e,h}(a)ε_{f,h}(b)}` and the
    /// intertwining condition `ε_{f,h}∘θ^{[f]}_{ε_{e,f}(a)} = θ^{[h]}_{ε_{e,h}(a)}∘ε_{f,h}`.
    pub fn check_conditions(&self) -> Result<()> {
        let c = &self.structure;
        let s = &*self.base;
        let m = c.idempotents().len();
        let ids = c.idempotents();
        for k in 0..m {
            for l in 0..m {
                for h in 0..m {
                    let gh = c.component(h);
                    for &a in c.component(k) {
                        for &b in c.component(l) {
                            let w = [ids[k], ids[l], ids[h], a, b];
                            let x1 = self.connector(h, s.mul(a, b));
                            let x2 = s.mul(self.connector(h, a), self.connector(h, b));
                            if gh
                                .iter()
                                .any(|&y| self.group_theta(h, x1, y) != self.group_theta(h, x2, y))
                            {
                                return Err(Error::Condition1Violated(w));
                            }
                            let lhs =
                                self.connector(h, self.group_theta(l, self.connector(l, a), b));
                            let rhs =
                                self.group_theta(h, self.connector(h, a), self.connector(h, b));
                            if lhs != rhs {
                                return Err(Error::Condition2Violated(w));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_axioms_on(group: Arc<FiniteSemigroup>, rows: &[Vec<usize>]) -> Result<Solution> {
    crate::pentagon::check_axioms(group, rows)
}

/// `θ_a(b) = θ^{[f]}_{ε_{e,f}(a)}(b)` for `a ∈ G_e`, `b ∈ G_f`, validated
/// against the solution axioms. The result is idempotent-fixed.
pub fn fixed_from_components(fam: &ComponentSolutionFamily) -> Result<Solution> {
    let n = fam.base.order();
    let c = &fam.structure;
    let theta = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            let l = c.component_index(b);
            fam.group_theta(l, fam.connector(l, a), b)
        })
        .collect();
    Solution::from_flat(fam.base.clone(), theta)
}

/// Outcome of comparing a solution's kernel with the union of the
/// per-group kernels `K_e = {a ∈ G_e : θ^{[e]}_e(a) = e}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelUnion {
    pub kernel: Subset,
    pub union: Subset,
    /// `ε_{f,e}(f) = e` whenever `f ≤ e`.
    pub upward_identities: bool,
    /// `ε_{e,f}(e) = f` whenever `f ≤ e`.
    pub downward_identities: bool,
}

impl KernelUnion {
    pub fn holds(&self) -> bool {
        self.kernel == self.union
    }
}

pub fn kernel_union_check(s: &Solution, fam: &ComponentSolutionFamily) -> Result<KernelUnion> {
    let c = &fam.structure;
    let ids = c.idempotents();
    let m = ids.len();
    let kernel = solution_kernel(s)?;
    let union = Subset::from_elements(
        s.order(),
        (0..m).flat_map(|k| {
            let e = ids[k];
            c.component(k)
                .iter()
                .copied()
                .filter(move |&a| fam.group_theta(k, e, a) == e)
        }),
    );
    let pairs = || {
        (0..m)
            .flat_map(|k| (0..m).map(move |l| (k, l)))
            .filter(|&(k, l)| c.below(l, k))
    };
    let upward_identities = pairs().all(|(k, l)| fam.connector(k, ids[l]) == ids[k]);
    let downward_identities = pairs().all(|(k, l)| fam.connector(l, ids[k]) == ids[l]);
    Ok(KernelUnion {
        kernel,
        union,
        upward_identities,
        downward_identities,
    })
}

/// Which representative of each coset `ε_{e,f}` picks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transversal {
    Least,
    Greatest,
}

/// Per-group solutions on a Clifford semigroup whose connecting
/// homomorphisms are all surjective, validated against the coset and
/// intertwining hypotheses.
#[derive(Debug, Clone)]
pub struct EpiFamilySpec {
    base: Arc<FiniteSemigroup>,
    structure: CliffordStructure,
    solutions: Vec<Solution>,
    /// `N_e` as global elements, per component.
    normal: Vec<Vec<usize>>,
}

impl EpiFamilySpec {
    pub fn new(base: Arc<FiniteSemigroup>, group_thetas: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let c = CliffordStructure::decompose(&base)?;
        let m = c.idempotents().len();
        if group_thetas.len() != m {
            return Err(Error::BadShape {
                order: m,
                len: group_thetas.len(),
            });
        }
        let solutions = group_thetas
            .iter()
            .enumerate()
            .map(|(k, rows)| check_axioms_on(Arc::new(c.component_group(k)), rows))
            .collect::<Result<Vec<_>>>()?;
        let ids = c.idempotents();
        let s = &*base;
        for k in 0..m {
            for l in (0..m).filter(|&l| c.below(l, k)) {
                let mut image: Vec<usize> =
                    c.component(k).iter().map(|&a| s.mul(ids[l], a)).collect();
                image.sort_unstable();
                image.dedup();
                if image.len() != c.component(l).len() {
                    return Err(Error::NotEpimorphism {
                        from: ids[k],
                        to: ids[l],
                    });
                }
            }
        }
        let normal: Vec<Vec<usize>> = (0..m)
            .map(|k| {
                let gk = c.component(k);
                let mut n: Vec<usize> = gk
                    .iter()
                    .copied()
                    .filter(|&a| (0..m).any(|l| c.below(l, k) && s.mul(ids[l], a) == ids[l]))
                    .collect();
                loop {
                    let mut grown = n.clone();
                    for &x in &n {
                        for &y in &n {
                            let p = s.mul(x, y);
                            if !grown.contains(&p) {
                                grown.push(p);
                            }
                        }
                    }
                    if grown.len() == n.len() {
                        break;
                    }
                    n = grown;
                }
                n.sort_unstable();
                n
            })
            .collect();
        let local = |a: usize| c.local_index(a);
        let global = |k: usize, x: usize| c.component(k)[x];
        for k in 0..m {
            let gk = c.component(k);
            for &a in gk {
                for &b in gk {
                    let same_coset = normal[k].contains(&s.mul(c.inverse(a), b));
                    if same_coset && solutions[k].row(local(a)) != solutions[k].row(local(b)) {
                        return Err(Error::Hypothesis1Violated {
                            component: ids[k],
                            a,
                            b,
                        });
                    }
                }
            }
            for l in (0..m).filter(|&l| c.below(l, k)) {
                let f = ids[l];
                for &a in gk {
                    for &b in gk {
                        let lhs = s.mul(f, global(k, solutions[k].theta(local(a), local(b))));
                        let rhs = global(
                            l,
                            solutions[l].theta(local(s.mul(f, a)), local(s.mul(f, b))),
                        );
                        if lhs != rhs {
                            return Err(Error::Hypothesis2Violated {
                                from: ids[k],
                                to: f,
                                a,
                                b,
                            });
                        }
                    }
                }
            }
        }
        Ok(Self {
            base,
            structure: c,
            solutions,
            normal,
        })
    }

    pub fn structure(&self) -> &CliffordStructure {
        &self.structure
    }

    /// `N_e` for the component at position `k`: the subgroup generated by
    /// the kernels of the connecting homomorphisms out of `G_e`.
    pub fn normal_subgroup(&self, k: usize) -> &[usize] {
        &self.normal[k]
    }

    /// `ε_{e,f}(a)`: the chosen `x ∈ G_f` with `(ef)x = (ef)a`, as local maps.
    pub fn connectors(&self, choice: Transversal) -> BTreeMap<(usize, usize), Vec<usize>> {
        let c = &self.structure;
        let s = &*self.base;
        let ids = c.idempotents();
        let m = ids.len();
        let mut out = BTreeMap::new();
        for k in 0..m {
            for l in 0..m {
                let g = s.mul(ids[k], ids[l]);
                let map = c
                    .component(k)
                    .iter()
                    .map(|&a| {
                        let target = s.mul(g, a);
                        let mut hits = c.component(l).iter().filter(|&&x| s.mul(g, x) == target);
                        let x = match choice {
                            Transversal::Least => hits.next(),
                            Transversal::Greatest => hits.next_back(),
                        };
                        c.local_index(*x.expect("connecting homomorphisms are surjective"))
                    })
                    .collect();
                out.insert((k, l), map);
            }
        }
        out
    }

    /// The component family with the chosen connectors. The connector
    /// conditions are not checked: they can fail for some transversals
    /// while the induced solution is still valid.
    pub fn family(&self, choice: Transversal) -> ComponentSolutionFamily {
        let c = &self.structure;
        let m = c.idempotents().len();
        let local = self.connectors(choice);
        let eps = (0..m)
            .map(|k| {
                (0..m)
                    .map(|l| local[&(k, l)].iter().map(|&x| c.component(l)[x]).collect())
                    .collect()
            })
            .collect();
        ComponentSolutionFamily::assemble(self.base.clone(), c.clone(), self.solutions.clone(), eps)
    }
}

/// The solution induced by an epimorphic family, built with both the least
/// and the greatest transversals and required to agree.
pub fn fixed_from_epi_family(spec: &EpiFamilySpec) -> Result<Solution> {
    let least = fixed_from_components(&spec.family(Transversal::Least))?;
    let greatest = fixed_from_components(&spec.family(Transversal::Greatest))?;
    let n = least.order();
    if let Some(i) = (0..n * n).find(|&i| least.table()[i] != greatest.table()[i]) {
        return Err(Error::TransversalDependent(i / n, i % n));
    }
    Ok(least)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pentagon::{canonical_e, canonical_f, canonical_i, check_axioms};

    fn s3() -> Arc<FiniteSemigroup> {
        Arc::new(fixtures::s3())
    }

    fn gamma_solution() -> Solution {
        check_axioms(s3(), &vec![vec![1, 1, 2]; 3]).unwrap()
    }

    #[test]
    fn mu_on_s3_gives_gamma_solution() {
        let rho = Congruence::new(s3(), &[0, 0, 1]).unwrap();
        let m = RepresentativeMap::new(rho, vec![1, 1, 2]).unwrap();
        let s = invariant_from_mu(&m).unwrap();
        assert_eq!(s, gamma_solution());
        assert_eq!(classify(&s).e_invariant, Some(true));
    }

    #[test]
    fn constant_mu_gives_canonical_e() {
        let rho = Congruence::universal(s3());
        let m = RepresentativeMap::new(rho, vec![1, 1, 1]).unwrap();
        assert_eq!(
            invariant_from_mu(&m).unwrap(),
            canonical_e(s3(), 1).unwrap()
        );
    }

    #[test]
    fn normal_subgroup_of_z4() {
        // ρ by {0, 2}; representatives 0 and 1
        let z4 = Arc::new(fixtures::z4());
        let rho = Congruence::new(z4.clone(), &[0, 1, 0, 1]).unwrap();
        let m = RepresentativeMap::new(rho, vec![0, 1, 0, 1]).unwrap();
        let s = invariant_from_mu(&m).unwrap();
        // θ_a(b) = μ(a)⁻¹μ(a + b)
        let expect: Vec<usize> = (0..4)
            .flat_map(|a| (0..4).map(move |b| ((4 - a % 2) + (a + b) % 2) % 4))
            .collect();
        assert_eq!(s.table(), expect);
    }

    #[test]
    fn representative_map_errors() {
        let rho = Congruence::new(s3(), &[0, 0, 1]).unwrap();
        assert!(matches!(
            RepresentativeMap::new(rho.clone(), vec![2, 1, 2]),
            Err(Error::MuNotInClass(0))
        ));
        assert!(matches!(
            RepresentativeMap::new(rho, vec![0, 1, 2]),
            Err(Error::NotTransversal(0, 2))
        ));
        let id = Congruence::identity(s3());
        assert!(matches!(
            RepresentativeMap::new(id, vec![0, 1, 2]),
            Err(Error::QuotientNotGroup)
        ));
        // parity classes of Z4 over Z2, with the even class represented in the
        // lower group: μ(0)μ(0)⁻¹ = 4 but μ(0·1) = 1 lies above it
        let base = Arc::new(fixtures::z4_over_z2());
        let rho = Congruence::new(base, &[0, 1, 0, 1, 0, 1]).unwrap();
        assert!(matches!(
            RepresentativeMap::new(rho.clone(), vec![4, 1, 4, 1, 4, 1]),
            Err(Error::CondSoluViolated(0, 1))
        ));
        assert!(RepresentativeMap::new(rho, vec![0, 1, 0, 1, 0, 1]).is_ok());
    }

    #[test]
    fn extract_from_gamma_solution() {
        let d = extract_invariant_data(&gamma_solution()).unwrap();
        assert_eq!(d.pair.kernel().to_vec(), vec![0, 1]);
        assert_eq!(d.representatives.to_vec(), vec![1, 2]);
        assert_eq!(d.rho.classes(), &[0, 0, 1]);
        assert_eq!(d.rho.quotient().0.order(), 2);
        let back = invariant_from_mu(&RepresentativeMap::new(d.rho, d.mu).unwrap()).unwrap();
        assert_eq!(back, gamma_solution());
    }

    #[test]
    fn extract_from_canonical_e() {
        let d = extract_invariant_data(&canonical_e(s3(), 1).unwrap()).unwrap();
        assert_eq!(d.pair.kernel().to_vec(), vec![0, 1, 2]);
        assert_eq!(d.representatives.to_vec(), vec![1]);
        let t = Arc::new(fixtures::trivial());
        let d = extract_invariant_data(&canonical_i(t).unwrap()).unwrap();
        assert_eq!(d.pair.kernel().to_vec(), vec![0]);
        assert!(matches!(
            extract_invariant_data(&canonical_i(s3()).unwrap()),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn invariant_isomorphism_criterion() {
        let g = gamma_solution();
        assert_eq!(invariant_isomorphism(&g, &g).unwrap(), Some(vec![0, 1, 2]));
        let e = canonical_e(s3(), 1).unwrap();
        assert_eq!(invariant_isomorphism(&g, &e).unwrap(), None);
    }

    #[test]
    fn endomorphism_family_on_s3() {
        // G_1 = {1}, G_a = {a, b}; identity endomorphisms
        let fam =
            ComponentSolutionFamily::from_endomorphisms(s3(), &[vec![0], vec![0, 1]]).unwrap();
        let s = fixed_from_components(&fam).unwrap();
        assert_eq!(s, canonical_i(s3()).unwrap());
        let k = kernel_union_check(&s, &fam).unwrap();
        assert!(k.holds() && k.upward_identities && k.downward_identities);
        assert_eq!(k.kernel.to_vec(), vec![0, 1]);
        // trivial endomorphism on G_a gives F
        let fam =
            ComponentSolutionFamily::from_endomorphisms(s3(), &[vec![0], vec![0, 0]]).unwrap();
        let s = fixed_from_components(&fam).unwrap();
        assert_eq!(s, canonical_f(s3()).unwrap());
        let k = kernel_union_check(&s, &fam).unwrap();
        assert!(k.holds());
        assert_eq!(k.kernel.to_vec(), vec![0, 1, 2]);
    }

    fn klein4_over_z2() -> Arc<FiniteSemigroup> {
        // V4 = {0, 1, 2, 3} under xor on top, Z2 = {4, 5} below, φ(x) = x & 1
        let spec = crate::clifford::SemilatticeSpec::new(
            vec![vec![0, 1], vec![1, 1]],
            vec![fixtures::klein4(), fixtures::z2()],
            BTreeMap::from([((0, 1), vec![0, 1, 0, 1])]),
        )
        .unwrap();
        Arc::new(spec.build().unwrap())
    }

    #[test]
    fn endomorphism_family_on_z4_over_z2() {
        // the only idempotent endomorphisms of Z4 are 0 and the identity, and
        // neither intertwines with the opposite choice on Z2
        let base = Arc::new(fixtures::z4_over_z2());
        for gammas in [[vec![0; 4], vec![0, 1]], [vec![0, 1, 2, 3], vec![0, 0]]] {
            let fam = ComponentSolutionFamily::from_endomorphisms(base.clone(), &gammas);
            assert!(matches!(fam, Err(Error::Condition2Violated(_))), "{fam:?}");
        }
        let fam =
            ComponentSolutionFamily::from_endomorphisms(base.clone(), &[vec![0; 4], vec![0, 0]])
                .unwrap();
        assert_eq!(
            fixed_from_components(&fam).unwrap(),
            canonical_f(base).unwrap()
        );
    }

    #[test]
    fn projection_family_on_klein4_over_z2() {
        let base = klein4_over_z2();
        let gamma_top = vec![0, 1, 0, 1];
        let fam = ComponentSolutionFamily::from_endomorphisms(
            base.clone(),
            &[gamma_top.clone(), vec![0, 1]],
        )
        .unwrap();
        let s = fixed_from_components(&fam).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let expect = if b < 4 { gamma_top[b] } else { b };
                assert_eq!(s.theta(a, b), expect, "({a}, {b})");
            }
        }
        assert_eq!(classify(&s).e_fixed, Some(true));
        assert!(kernel_union_check(&s, &fam).unwrap().holds());
    }

    #[test]
    fn connector_errors() {
        let mut conn = BTreeMap::new();
        let thetas = vec![vec![vec![0]], vec![vec![0, 1], vec![0, 1]]];
        assert!(matches!(
            ComponentSolutionFamily::new(s3(), &thetas, &conn),
            Err(Error::MissingConnector { from: 1, to: 0 })
        ));
        conn.insert((1, 0), vec![0, 0]);
        conn.insert((0, 1), vec![1]);
        assert!(matches!(
            ComponentSolutionFamily::new(s3(), &thetas, &conn),
            Err(Error::ConnectorMismatch { from: 0, to: 1 })
        ));
    }

    #[test]
    fn epi_family_on_z4_over_z2() {
        let base = Arc::new(fixtures::z4_over_z2());
        let theta_i = |n: usize| {
            (0..n)
                .map(|_| (0..n).collect())
                .collect::<Vec<Vec<usize>>>()
        };
        let spec = EpiFamilySpec::new(base.clone(), vec![theta_i(4), theta_i(2)]).unwrap();
        assert_eq!(spec.normal_subgroup(0), &[0, 2]);
        assert_eq!(spec.normal_subgroup(1), &[4]);
        let s = fixed_from_epi_family(&spec).unwrap();
        assert_eq!(s, canonical_i(base.clone()).unwrap());
        let least = spec.connectors(Transversal::Least);
        let greatest = spec.connectors(Transversal::Greatest);
        assert_eq!(least[&(1, 0)], vec![0, 1]);
        assert_eq!(greatest[&(1, 0)], vec![2, 3]);
        let fam = spec.family(Transversal::Greatest);
        assert!(kernel_union_check(&s, &fam).unwrap().holds());
    }

    #[test]
    fn epi_hypotheses() {
        // Z4 over the trivial group: N = Z4, so every row on top must agree.
        let z4 = Arc::new(fixtures::z4());
        let rho = Congruence::new(z4, &[0, 1, 0, 1]).unwrap();
        let top =
            invariant_from_mu(&RepresentativeMap::new(rho, vec![0, 1, 0, 1]).unwrap()).unwrap();
        let base = Arc::new(fixtures::cyclic_with_zero(4));
        let err = EpiFamilySpec::new(base.clone(), vec![top.rows(), vec![vec![0]]]).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Hypothesis1Violated {
                    component: 0,
                    a: 0,
                    b: 1
                }
            ),
            "{err}"
        );
        let spec = EpiFamilySpec::new(base, vec![vec![vec![0; 4]; 4], vec![vec![0]]]).unwrap();
        let s = fixed_from_epi_family(&spec).unwrap();
        assert_eq!(classify(&s).e_fixed, Some(true));
        // the greatest transversal lifts the zero to 3, which θ^{[top]} ≡ 0
        // does not fix, so the intertwining condition fails for that family
        // even though the induced solution is the same
        assert!(spec.family(Transversal::Least).check_conditions().is_ok());
        assert!(matches!(
            spec.family(Transversal::Greatest).check_conditions(),
            Err(Error::Condition2Violated([0, 4, 0, 0, 4]))
        ));

        // constant map on top, identity below: φ(θ(b)) = 4 but θ(φ(b)) = φ(b)
        let base = Arc::new(fixtures::z4_over_z2());
        let err =
            EpiFamilySpec::new(base, vec![vec![vec![0; 4]; 4], vec![vec![0, 1]; 2]]).unwrap_err();
        assert!(matches!(err, Error::Hypothesis2Violated { .. }), "{err}");
    }
}
