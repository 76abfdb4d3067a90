//! Clifford semigroups as strong semilattices of groups.
//!
//! [`CliffordStructure`] is the decomposition of a Clifford semigroup into
//! its maximal subgroups `G_e` (one per idempotent `e`) together with the
//! connecting homomorphisms `φ_{f,e}: G_f → G_e, b ↦ eb` for `e ≤ f`.
//! [`SemilatticeSpec`] goes the other way: a meet-semilattice, a group per
//! node and homomorphisms along the order, from which the semigroup is
//! rebuilt with `ab = φ_{e,ef}(a)·φ_{f,ef}(b)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// `e ≤ f` in the natural order of idempotents: `e = ef = fe`.
pub fn natural_order(s: &FiniteSemigroup, e: usize, f: usize) -> Result<bool> {
    for x in [e, f] {
        if !s.is_idempotent(x) {
            return Err(Error::NotIdempotent(x));
        }
    }
    Ok(s.mul(e, f) == e && s.mul(f, e) == e)
}

/// `a ≤ b` iff `a = ub` or `a = bu` for some `u`. Agrees with
/// [`CliffordStructure::element_preorder`] on Clifford semigroups.
pub fn divides(s: &FiniteSemigroup, a: usize, b: usize) -> bool {
    s.elements().any(|u| s.mul(u, b) == a || s.mul(b, u) == a)
}

/// Group decomposition of a Clifford semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordStructure {
    base: FiniteSemigroup,
    inverse: Vec<usize>,
    idempotents: Vec<usize>,
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
    local_index: Vec<usize>,
}

/// `φ_{f,e}` restricted to `G_f`, stored aligned with the component of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectingHom {
    pub from: usize,
    pub to: usize,
    pub domain: Vec<usize>,
    pub values: Vec<usize>,
}

impl ConnectingHom {
    pub fn apply(&self, b: usize) -> Option<usize> {
        self.domain
            .iter()
            .position(|&x| x == b)
            .map(|i| self.values[i])
    }
}

impl CliffordStructure {
    /// Decomposes `s`, failing with [`Error::NotClifford`] otherwise.
    pub fn decompose(s: &FiniteSemigroup) -> Result<Self> {
        let check = s.is_clifford();
        if !check.holds() {
            return Err(Error::NotClifford(check.to_string()));
        }
        let inverse = s.inverse_map()?;
        let idempotents = s.idempotents().to_vec();
        let mut component_of = vec![0; s.order()];
        let mut components = vec![Vec::new(); idempotents.len()];
        let mut local_index = vec![0; s.order()];
        for a in s.elements() {
            let e = s.mul(a, inverse[a]);
            let k = idempotents.binary_search(&e).expect("a·a⁻¹ is idempotent");
            component_of[a] = k;
            local_index[a] = components[k].len();
            components[k].push(a);
        }
        for (k, comp) in components.iter().enumerate() {
            let e = idempotents[k];
            for &a in comp {
                if s.mul(e, a) != a || s.mul(a, e) != a || s.mul(a, inverse[a]) != e {
                    return Err(Error::NotClifford(format!(
                        "component of {e} is not a group with identity {e} (element {a})"
                    )));
                }
                for &b in comp {
                    if component_of[s.mul(a, b)] != k {
                        return Err(Error::NotClifford(format!(
                            "component of {e} is not closed: {a}·{b}"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            base: s.clone(),
            inverse,
            idempotents,
            component_of,
            components,
            local_index,
        })
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// Idempotents in ascending element order.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Position in [`Self::idempotents`] of the component containing `a`.
    pub fn component_index(&self, a: usize) -> usize {
        self.component_of[a]
    }

    /// The identity `aa⁻¹` of the component containing `a`.
    pub fn identity_of(&self, a: usize) -> usize {
        self.idempotents[self.component_of[a]]
    }

    /// Elements of `G_e` for the idempotent at position `k`, ascending.
    pub fn component(&self, k: usize) -> &[usize] {
        &self.components[k]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Position of `a` inside its component.
    pub fn local_index(&self, a: usize) -> usize {
        self.local_index[a]
    }

    pub fn position_of_idempotent(&self, e: usize) -> Option<usize> {
        self.idempotents.binary_search(&e).ok()
    }

    pub fn natural_order(&self, e: usize, f: usize) -> Result<bool> {
        natural_order(&self.base, e, f)
    }

    /// `e ≤ f` for idempotent positions, without the idempotency check.
    pub fn below(&self, i: usize, j: usize) -> bool {
        let (e, f) = (self.idempotents[i], self.idempotents[j]);
        self.base.mul(e, f) == e
    }

    /// `a ≤ b` iff `aa⁻¹ ≤ bb⁻¹`.
    pub fn element_preorder(&self, a: usize, b: usize) -> bool {
        let (e, f) = (self.identity_of(a), self.identity_of(b));
        self.base.mul(e, f) == e
    }

    /// `φ_{f,e}(b) = eb` on `G_f`.
    pub fn connecting_hom(&self, f: usize, e: usize) -> Result<ConnectingHom> {
        if !self.natural_order(e, f)? {
            return Err(Error::NotComparable { upper: f, lower: e });
        }
        let kf = self.position_of_idempotent(f).expect("idempotent");
        let ke = self.position_of_idempotent(e).expect("idempotent");
        let domain = self.components[kf].clone();
        let values: Vec<usize> = domain.iter().map(|&b| self.base.mul(e, b)).collect();
        for (&b, &v) in domain.iter().zip(&values) {
            if self.component_of[v] != ke {
                return Err(Error::NotClifford(format!(
                    "φ_{{{f},{e}}}({b}) = {v} leaves G_{e}"
                )));
            }
            for (&b2, &v2) in domain.iter().zip(&values) {
                if self.base.mul(e, self.base.mul(b, b2)) != self.base.mul(v, v2) {
                    return Err(Error::NotClifford(format!(
                        "φ_{{{f},{e}}} is not multiplicative at ({b}, {b2})"
                    )));
                }
            }
        }
        Ok(ConnectingHom {
            from: f,
            to: e,
            domain,
            values,
        })
    }

    /// `G_e` for the idempotent at position `k` as a standalone group, in
    /// local indices.
    pub fn component_group(&self, k: usize) -> FiniteSemigroup {
        let comp = &self.components[k];
        let s = &self.base;
        let table = comp
            .iter()
            .flat_map(|&a| comp.iter().map(move |&b| self.local_index[s.mul(a, b)]))
            .collect();
        let names = comp
            .iter()
            .map(|&a| s.element_name(a).to_string())
            .collect();
        FiniteSemigroup::from_flat(
            format!("G{}", self.idempotents[k]),
            names,
            comp.len(),
            table,
        )
        .expect("a component of a Clifford semigroup is a group")
    }

    /// The semilattice data of this semigroup, with homomorphisms given
    /// only on covering pairs. Also returns `old_of_new`: the element of
    /// the base that becomes element `i` of [`SemilatticeSpec::build`].
    pub fn to_semilattice_spec(&self) -> Result<(SemilatticeSpec, Vec<usize>)> {
        let m = self.idempotents.len();
        let s = &self.base;
        let pos = |e: usize| self.position_of_idempotent(e).expect("idempotent");
        let meets: Vec<Vec<usize>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| pos(s.mul(self.idempotents[i], self.idempotents[j])))
                    .collect()
            })
            .collect();
        let groups: Vec<FiniteSemigroup> = (0..m).map(|k| self.component_group(k)).collect();
        let mut homs = BTreeMap::new();
        for i in 0..m {
            for j in 0..m {
                let covers = i != j
                    && self.below(j, i)
                    && !(0..m).any(|k| k != i && k != j && self.below(j, k) && self.below(k, i));
                if covers {
                    let e = self.idempotents[j];
                    let map = self.components[i]
                        .iter()
                        .map(|&b| self.local_index[s.mul(e, b)])
                        .collect();
                    homs.insert((i, j), map);
                }
            }
        }
        let old_of_new = self.components.iter().flatten().copied().collect();
        Ok((SemilatticeSpec::new(meets, groups, homs)?, old_of_new))
    }
}

/// A strong semilattice of groups.
///
/// Node `i` carries the group `groups[i]` (with its own local element
/// numbering). `homs[(i, j)]` is the homomorphism `G_i → G_j` for
/// `j ≤ i`, as a list of local images. Only covering pairs are required;
/// the rest are derived by composition and every supplied or derived map
/// is checked against the composition law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeSpec {
    meets: Vec<Vec<usize>>,
    groups: Vec<FiniteSemigroup>,
    identities: Vec<usize>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SemilatticeSpec {
    pub fn new(
        meets: Vec<Vec<usize>>,
        groups: Vec<FiniteSemigroup>,
        homs: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self> {
        let m = meets.len();
        let bad = |msg: String| Err(Error::SpecInconsistent(msg));
        if m == 0 {
            return bad("empty semilattice".into());
        }
        if groups.len() != m {
            return bad(format!("{} groups for {m} nodes", groups.len()));
        }
        for row in &meets {
            if row.len() != m || row.iter().any(|&x| x >= m) {
                return bad("meet table is not square or out of range".into());
            }
        }
        for i in 0..m {
            if meets[i][i] != i {
                return bad(format!("meet is not idempotent at {i}"));
            }
            for j in 0..m {
                if meets[i][j] != meets[j][i] {
                    return bad(format!("meet is not commutative at ({i}, {j})"));
                }
                for k in 0..m {
                    if meets[meets[i][j]][k] != meets[i][meets[j][k]] {
                        return bad(format!("meet is not associative at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        let mut identities = Vec::with_capacity(m);
        for (i, g) in groups.iter().enumerate() {
            if !g.is_group() {
                return bad(format!("node {i} does not carry a group"));
            }
            identities.push(g.identity().expect("group has identity"));
        }
        let below = |j: usize, i: usize| meets[i][j] == j;

        let mut all = BTreeMap::new();
        for ((i, j), map) in homs {
            if i >= m || j >= m || !below(j, i) {
                return bad(format!("homomorphism {i} -> {j} is not along the order"));
            }
            if map.len() != groups[i].order() || map.iter().any(|&x| x >= groups[j].order()) {
                return bad(format!("homomorphism {i} -> {j} has the wrong shape"));
            }
            all.insert((i, j), map);
        }
        for i in 0..m {
            let id: Vec<usize> = (0..groups[i].order()).collect();
            match all.get(&(i, i)) {
                Some(map) if *map != id => {
                    return bad(format!("homomorphism {i} -> {i} is not the identity"))
                }
                _ => {
                    all.insert((i, i), id);
                }
            }
        }
        // derive missing composites until nothing changes
        loop {
            let mut added = Vec::new();
            for (&(g, f), outer) in &all {
                for e in 0..m {
                    if all.contains_key(&(g, e)) || !below(e, f) {
                        continue;
                    }
                    if let Some(inner) = all.get(&(f, e)) {
                        added.push(((g, e), outer.iter().map(|&x| inner[x]).collect::<Vec<_>>()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            for (k, v) in added {
                all.entry(k).or_insert(v);
            }
        }
        for i in 0..m {
            for j in 0..m {
                if below(j, i) && !all.contains_key(&(i, j)) {
                    return bad(format!("no homomorphism from {i} to {j}"));
                }
            }
        }
        for (&(i, j), map) in &all {
            let (gi, gj) = (&groups[i], &groups[j]);
            for x in gi.elements() {
                for y in gi.elements() {
                    if map[gi.mul(x, y)] != gj.mul(map[x], map[y]) {
                        return bad(format!(
                            "map {i} -> {j} is not a homomorphism at ({x}, {y})"
                        ));
                    }
                }
            }
        }
        for g in 0..m {
            for f in 0..m {
                for e in 0..m {
                    if !(below(e, f) && below(f, g)) {
                        continue;
                    }
                    let (gf, fe, ge) = (&all[&(g, f)], &all[&(f, e)], &all[&(g, e)]);
                    if let Some(x) = (0..groups[g].order()).find(|&x| fe[gf[x]] != ge[x]) {
                        return bad(format!(
                            "composition law fails for {e} <= {f} <= {g} at {x}"
                        ));
                    }
                }
            }
        }
        Ok(Self {
            meets,
            groups,
            identities,
            homs: all,
        })
    }

    pub fn nodes(&self) -> usize {
        self.meets.len()
    }

    pub fn meets(&self) -> &[Vec<usize>] {
        &self.meets
    }

    pub fn groups(&self) -> &[FiniteSemigroup] {
        &self.groups
    }

    /// Every homomorphism along the order, including derived ones.
    pub fn homs(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.homs
    }

    /// Element number of local element `x` of node `i` in the built semigroup.
    pub fn global(&self, i: usize, x: usize) -> usize {
        self.groups[..i].iter().map(|g| g.order()).sum::<usize>() + x
    }

    /// The Clifford semigroup with groups concatenated in node order.
    pub fn build(&self) -> Result<FiniteSemigroup> {
        let offsets: Vec<usize> = self
            .groups
            .iter()
            .scan(0, |acc, g| {
                let o = *acc;
                *acc += g.order();
                Some(o)
            })
            .collect();
        let mut owner = Vec::new();
        let mut names = Vec::new();
        for (i, g) in self.groups.iter().enumerate() {
            for x in g.elements() {
                owner.push((i, x));
                names.push(if self.nodes() == 1 {
                    g.element_name(x).to_string()
                } else {
                    format!("{i}.{}", g.element_name(x))
                });
            }
        }
        let n = owner.len();
        let mut table = vec![0; n * n];
        for (a, &(i, x)) in owner.iter().enumerate() {
            for (b, &(j, y)) in owner.iter().enumerate() {
                let k = self.meets[i][j];
                let px = self.homs[&(i, k)][x];
                let py = self.homs[&(j, k)][y];
                table[a * n + b] = offsets[k] + self.groups[k].mul(px, py);
            }
        }
        let s = FiniteSemigroup::from_flat(String::new(), names, n, table)?;
        debug_assert!(s.is_clifford().holds());
        debug_assert!(self
            .identities
            .iter()
            .enumerate()
            .all(|(i, &id)| s.is_idempotent(offsets[i] + id)));
        Ok(s)
    }
}
