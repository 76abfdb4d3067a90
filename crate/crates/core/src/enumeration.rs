//! Exhaustive search for every solution on a finite semigroup.
//!
//! The search fills the θ-table cell by cell. Idempotent rows come first,
//! then the rest, each row left to right. Every assignment is propagated:
//!
//! * once `θ_a(b)` and `θ_{ab}(c)` are known, P1 forces `θ_a(bc)`;
//! * once the same two cells are known, P2 ties the cells
//!   `(θ_a(b), θ_{ab}(c))` and `(b, c)` together: if one is known the other
//!   is forced, otherwise the pair is watched until one of them is set.
//!
//! A contradiction backtracks. The top of the search tree is split into
//! disjoint prefixes that run in parallel; the results are sorted, so the
//! output does not depend on the thread count.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::CliffordStructure;
use crate::iso::{automorphisms, canonical_table};
use crate::pentagon::{axiom_violation, classify, Flag, Solution};
use crate::semigroup::FiniteSemigroup;

const UNSET: u8 = u8::MAX;

/// Knobs for [`enumerate_with`].
#[derive(Debug, Clone, Default)]
pub struct EnumerationOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Keep only solutions having every listed flag.
    pub filter: Vec<Flag>,
}

struct Problem {
    n: usize,
    mul: Vec<usize>,
    /// `preimages[x]` = all `(a, b)` with `ab = x`.
    preimages: Vec<Vec<(usize, usize)>>,
    /// Cells in branching order.
    order: Vec<usize>,
}

impl Problem {
    fn new(s: &FiniteSemigroup) -> Self {
        let n = s.order();
        assert!(n < UNSET as usize, "order {n} is too large to enumerate");
        let mut preimages = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                preimages[s.mul(a, b)].push((a, b));
            }
        }
        let idem = s.idempotents();
        let rows = (0..n)
            .filter(|&a| idem.contains(a))
            .chain((0..n).filter(|&a| !idem.contains(a)));
        let order = rows.flat_map(|a| (0..n).map(move |b| a * n + b)).collect();
        Self {
            n,
            mul: s.table().to_vec(),
            preimages,
            order,
        }
    }
}

#[derive(Clone)]
struct State {
    theta: Vec<u8>,
    /// P2 equality links between cells not yet set.
    watch: Vec<Vec<u32>>,
    /// Set cells and watch pushes, for undo.
    trail: Vec<Undo>,
    queue: Vec<usize>,
    /// Position in `Problem::order` of the next cell to inspect.
    cursor: usize,
}

#[derive(Clone, Copy)]
enum Undo {
    Set(usize),
    Watch(usize),
}

impl State {
    fn new(n: usize) -> Self {
        Self {
            theta: vec![UNSET; n * n],
            watch: vec![Vec::new(); n * n],
            trail: Vec::new(),
            queue: Vec::new(),
            cursor: 0,
        }
    }

    fn get(&self, p: &Problem, a: usize, b: usize) -> Option<usize> {
        let v = self.theta[a * p.n + b];
        (v != UNSET).then_some(v as usize)
    }

    /// Sets a cell, or checks it if already set.
    fn set(&mut self, cell: usize, v: usize) -> bool {
        match self.theta[cell] {
            UNSET => {
                self.theta[cell] = v as u8;
                self.trail.push(Undo::Set(cell));
                self.queue.push(cell);
                true
            }
            w => w as usize == v,
        }
    }

    /// `cell1 = cell2`, forcing or watching as needed.
    fn link(&mut self, c1: usize, c2: usize) -> bool {
        match (self.theta[c1], self.theta[c2]) {
            (UNSET, UNSET) => {
                if c1 != c2 {
                    self.watch[c1].push(c2 as u32);
                    self.watch[c2].push(c1 as u32);
                    self.trail.push(Undo::Watch(c1));
                    self.trail.push(Undo::Watch(c2));
                }
                true
            }
            (UNSET, v) => self.set(c1, v as usize),
            (v, UNSET) => self.set(c2, v as usize),
            (v, w) => v == w,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("non-empty") {
                Undo::Set(c) => self.theta[c] = UNSET,
                Undo::Watch(c) => {
                    self.watch[c].pop();
                }
            }
        }
        self.queue.clear();
    }

    /// Both axioms at `(a, b, c)` once `θ_a(b)` and `θ_{ab}(c)` are known.
    fn instance(&mut self, p: &Problem, a: usize, b: usize, c: usize, u: usize, w: usize) -> bool {
        let n = p.n;
        let ab = p.mul[a * n + b];
        debug_assert_eq!(self.get(p, ab, c), Some(w));
        self.set(a * n + p.mul[b * n + c], p.mul[u * n + w]) && self.link(u * n + w, b * n + c)
    }

    fn propagate(&mut self, p: &Problem) -> bool {
        let n = p.n;
        while let Some(cell) = self.queue.pop() {
            let (x, y) = (cell / n, cell % n);
            let v = self.theta[cell] as usize;
            // as θ_a(b) with (a, b) = (x, y)
            let ab = p.mul[cell];
            for c in 0..n {
                if let Some(w) = self.get(p, ab, c) {
                    if !self.instance(p, x, y, c, v, w) {
                        return false;
                    }
                }
            }
            // as θ_{ab}(c) with ab = x, c = y
            for i in 0..p.preimages[x].len() {
                let (a, b) = p.preimages[x][i];
                if let Some(u) = self.get(p, a, b) {
                    if !self.instance(p, a, b, y, u, v) {
                        return false;
                    }
                }
            }
            for i in 0..self.watch[cell].len() {
                let other = self.watch[cell][i] as usize;
                if !self.set(other, v) {
                    return false;
                }
            }
        }
        true
    }

    fn next_cell(&mut self, p: &Problem) -> Option<usize> {
        while self.cursor < p.order.len() && self.theta[p.order[self.cursor]] != UNSET {
            self.cursor += 1;
        }
        p.order.get(self.cursor).copied()
    }

    fn search(&mut self, p: &Problem, out: &mut Vec<Vec<usize>>) {
        let Some(cell) = self.next_cell(p) else {
            let table: Vec<usize> = self.theta.iter().map(|&v| v as usize).collect();
            debug_assert!(axiom_violation(p.n, &p.mul, &table).is_none());
            out.push(table);
            return;
        };
        let cursor = self.cursor;
        for v in 0..p.n {
            let mark = self.trail.len();
            if self.set(cell, v) && self.propagate(p) {
                self.search(p, out);
            }
            self.undo_to(mark);
            self.cursor = cursor;
        }
    }

    /// Consistent states after `depth` branching decisions, in order.
    fn split(mut self, p: &Problem, depth: usize, out: &mut Vec<State>) {
        if depth == 0 {
            out.push(self);
            return;
        }
        let Some(cell) = self.next_cell(p) else {
            out.push(self);
            return;
        };
        for v in 0..p.n {
            let mut child = self.clone();
            if child.set(cell, v) && child.propagate(p) {
                child.split(p, depth - 1, out);
            }
        }
        self.queue.clear();
    }
}

fn raw_tables(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let p = Problem::new(s);
    let mut prefixes = Vec::new();
    // enough prefixes to keep every worker busy
    let depth = if p.n <= 2 { 0 } else { 2 };
    State::new(p.n).split(&p, depth, &mut prefixes);
    let mut tables: Vec<Vec<usize>> = prefixes
        .into_par_iter()
        .flat_map_iter(|mut st| {
            let mut out = Vec::new();
            st.search(&p, &mut out);
            out
        })
        .collect();
    tables.sort_unstable();
    tables
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Every solution on `s`, in lexicographic θ-table order.
pub fn enumerate_solutions(s: &Arc<FiniteSemigroup>) -> Vec<Solution> {
    enumerate_with(s, &EnumerationOptions::default())
}

pub fn enumerate_with(s: &Arc<FiniteSemigroup>, opts: &EnumerationOptions) -> Vec<Solution> {
    let tables = in_pool(opts.threads, || raw_tables(s));
    tables
        .into_iter()
        .map(|t| Solution::new_unchecked(s.clone(), t))
        .filter(|sol| {
            opts.filter.is_empty() || {
                let flags = classify(sol);
                opts.filter.iter().all(|&f| flags.has(f))
            }
        })
        .collect()
}

/// Least representative of each isomorphism class, sorted.
pub fn reduce_up_to_iso(s: &Arc<FiniteSemigroup>, solutions: &[Solution]) -> Vec<Solution> {
    let autos = automorphisms(s);
    let mut tables: Vec<Vec<usize>> = solutions
        .iter()
        .map(|sol| canonical_table(sol, &autos))
        .collect();
    tables.sort_unstable();
    tables.dedup();
    tables
        .into_iter()
        .map(|t| Solution::new_unchecked(s.clone(), t))
        .collect()
}

pub fn enumerate_up_to_iso(s: &Arc<FiniteSemigroup>, opts: &EnumerationOptions) -> Vec<Solution> {
    reduce_up_to_iso(s, &enumerate_with(s, opts))
}

/// Solution counts for one semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub order: usize,
    pub n_idempotents: usize,
    /// Group component sizes in idempotent order; empty off Clifford.
    pub component_sizes: Vec<usize>,
    pub total: usize,
    pub n_iso_classes: usize,
    pub n_commutative: usize,
    pub n_cocommutative: usize,
    pub n_involutive: usize,
    pub n_idempotent_map: usize,
    #[serde(rename = "n_E_invariant")]
    pub n_e_invariant: usize,
    #[serde(rename = "n_E_fixed")]
    pub n_e_fixed: usize,
    pub n_neither: usize,
    /// θ-tables of the isomorphism class representatives, row-major.
    pub representatives: Vec<Vec<Vec<usize>>>,
}

pub fn census_entry(s: &FiniteSemigroup, threads: Option<usize>) -> CensusEntry {
    let base = Arc::new(s.clone());
    let all = enumerate_with(
        &base,
        &EnumerationOptions {
            threads,
            filter: Vec::new(),
        },
    );
    let flags: Vec<_> = all.iter().map(classify).collect();
    let count = |f: Flag| flags.iter().filter(|x| x.has(f)).count();
    let reps = reduce_up_to_iso(&base, &all);
    CensusEntry {
        name: s.name().to_string(),
        order: s.order(),
        n_idempotents: s.idempotents().len(),
        component_sizes: CliffordStructure::decompose(s)
            .map(|c| c.components().iter().map(Vec::len).collect())
            .unwrap_or_default(),
        total: all.len(),
        n_iso_classes: reps.len(),
        n_commutative: count(Flag::Commutative),
        n_cocommutative: count(Flag::Cocommutative),
        n_involutive: count(Flag::Involutive),
        n_idempotent_map: count(Flag::Idempotent),
        n_e_invariant: count(Flag::EInvariant),
        n_e_fixed: count(Flag::EFixed),
        n_neither: count(Flag::Neither),
        representatives: reps.iter().map(Solution::rows).collect(),
    }
}

pub const CENSUS_COLUMNS: [&str; 12] = [
    "name",
    "order",
    "n_idempotents",
    "total",
    "n_iso_classes",
    "n_commutative",
    "n_cocommutative",
    "n_involutive",
    "n_idempotent_map",
    "n_E_invariant",
    "n_E_fixed",
    "n_neither",
];

pub fn census_csv(entries: &[CensusEntry]) -> String {
    let mut out = CENSUS_COLUMNS.join(",");
    out.push('\n');
    for e in entries {
        let name = if e.name.contains([',', '"', '\n']) {
            format!("\"{}\"", e.name.replace('"', "\"\""))
        } else {
            e.name.clone()
        };
        let cells = [
            e.order,
            e.n_idempotents,
            e.total,
            e.n_iso_classes,
            e.n_commutative,
            e.n_cocommutative,
            e.n_involutive,
            e.n_idempotent_map,
            e.n_e_invariant,
            e.n_e_fixed,
            e.n_neither,
        ];
        out.push_str(&name);
        for c in cells {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn census_json(entries: &[CensusEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("census entries serialize");
    s.push('\n');
    s
}
