//! JSON file formats.
//!
//! Anything that takes a semigroup also accepts `fixture:<name>` for the
//! built-in ones (see [`crate::fixtures::all`]).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::clifford::SemilatticeSpec;
use crate::congruence::Congruence;
use crate::constructions::{ComponentSolutionFamily, EpiFamilySpec, RepresentativeMap};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::pentagon::{check_axioms, Solution};
use crate::semigroup::FiniteSemigroup;

/// `{"name": str, "elements": [str], "table": [[int]]}`; name and
/// elements may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

impl SemigroupFile {
    pub fn into_semigroup(self, default_name: &str) -> Result<FiniteSemigroup> {
        let name = self.name.unwrap_or_else(|| default_name.to_string());
        let names = self.elements.unwrap_or_default();
        if !names.is_empty() && names.len() != self.table.len() {
            return Err(Error::BadShape {
                order: self.table.len(),
                len: names.len(),
            });
        }
        FiniteSemigroup::new(name, names, &self.table)
    }
}

impl From<&FiniteSemigroup> for SemigroupFile {
    fn from(s: &FiniteSemigroup) -> Self {
        Self {
            name: Some(s.name().to_string()),
            elements: Some(s.names().to_vec()),
            table: s.rows(),
        }
    }
}

/// Where a solution file gets its semigroup: a path (relative to the
/// solution file), `fixture:<name>`, or an inline table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupRef {
    Path(String),
    Inline(SemigroupFile),
}

/// `{"semigroup": <ref>, "theta": [[int]]}` with `theta[a][b] = θ_a(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub semigroup: SemigroupRef,
    pub theta: Vec<Vec<usize>>,
}

impl From<&Solution> for SolutionFile {
    fn from(s: &Solution) -> Self {
        Self {
            semigroup: SemigroupRef::Inline(s.base().into()),
            theta: s.rows(),
        }
    }
}

/// `{"classes": [int]}`, one class id per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFile {
    pub classes: Vec<usize>,
}

/// `{"mu": [int]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuFile {
    pub mu: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub from: usize,
    pub to: usize,
    pub map: Vec<usize>,
}

/// `{"meets": [[int]], "groups": [{"table": [[int]]}], "homs": [{"from", "to", "map"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilatticeSpecFile {
    pub meets: Vec<Vec<usize>>,
    pub groups: Vec<SemigroupFile>,
    #[serde(default)]
    pub homs: Vec<MapEntry>,
}

impl SemilatticeSpecFile {
    pub fn into_spec(self) -> Result<SemilatticeSpec> {
        let groups = self
            .groups
            .into_iter()
            .enumerate()
            .map(|(i, g)| g.into_semigroup(&format!("G{i}")))
            .collect::<Result<Vec<_>>>()?;
        SemilatticeSpec::new(self.meets, groups, maps(self.homs)?)
    }
}

fn maps(entries: Vec<MapEntry>) -> Result<BTreeMap<(usize, usize), Vec<usize>>> {
    let mut out = BTreeMap::new();
    for m in entries {
        if out.insert((m.from, m.to), m.map).is_some() {
            return Err(Error::PreconditionFailed(format!(
                "map {} -> {} given twice",
                m.from, m.to
            )));
        }
    }
    Ok(out)
}

/// A solution on the group at semilattice node `e`, in local indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSolutionEntry {
    pub e: usize,
    pub theta: Vec<Vec<usize>>,
}

/// `{"semilattice_spec": .., "group_solutions": [{"e", "theta"}], "connectors": [{"from", "to", "map"}]}`.
/// Nodes index components of the built semigroup; connector maps are in
/// local indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub semilattice_spec: SemilatticeSpecFile,
    pub group_solutions: Vec<GroupSolutionEntry>,
    #[serde(default)]
    pub connectors: Vec<MapEntry>,
}

fn group_thetas(nodes: usize, entries: Vec<GroupSolutionEntry>) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut out: Vec<Option<Vec<Vec<usize>>>> = vec![None; nodes];
    for g in entries {
        match out.get_mut(g.e) {
            Some(slot @ None) => *slot = Some(g.theta),
            Some(Some(_)) => {
                return Err(Error::PreconditionFailed(format!(
                    "node {} has two group solutions",
                    g.e
                )))
            }
            None => {
                return Err(Error::PreconditionFailed(format!(
                    "node {} does not exist",
                    g.e
                )))
            }
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| Error::PreconditionFailed(format!("node {i} has no group solution")))
        })
        .collect()
}

impl FamilyFile {
    pub fn into_family(self) -> Result<ComponentSolutionFamily> {
        let spec = self.semilattice_spec.into_spec()?;
        let base = Arc::new(spec.build()?);
        let thetas = group_thetas(spec.nodes(), self.group_solutions)?;
        ComponentSolutionFamily::new(base, &thetas, &maps(self.connectors)?)
    }
}

/// `{"semilattice_spec": .., "group_solutions": [{"e", "theta"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpiSpecFile {
    pub semilattice_spec: SemilatticeSpecFile,
    pub group_solutions: Vec<GroupSolutionEntry>,
}

impl EpiSpecFile {
    pub fn into_spec(self) -> Result<EpiFamilySpec> {
        let spec = self.semilattice_spec.into_spec()?;
        let base = Arc::new(spec.build()?);
        EpiFamilySpec::new(base, group_thetas(spec.nodes(), self.group_solutions)?)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// A semigroup file, or `fixture:<name>`.
pub fn load_semigroup(arg: &str) -> Result<FiniteSemigroup> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        return fixtures::by_name(name)
            .ok_or_else(|| Error::PreconditionFailed(format!("unknown fixture `{name}`")));
    }
    let path = Path::new(arg);
    read_json::<SemigroupFile>(path)?.into_semigroup(&stem(path))
}

fn resolve(r: SemigroupRef, relative_to: &Path) -> Result<FiniteSemigroup> {
    match r {
        SemigroupRef::Inline(f) => f.into_semigroup("inline"),
        SemigroupRef::Path(p) if p.starts_with("fixture:") => load_semigroup(&p),
        SemigroupRef::Path(p) => {
            let dir = relative_to.parent().unwrap_or(Path::new("."));
            let full: PathBuf = dir.join(&p);
            load_semigroup(&full.to_string_lossy())
        }
    }
}

/// A solution file, validated against both axioms.
pub fn load_solution(arg: &str) -> Result<Solution> {
    let path = Path::new(arg);
    let file: SolutionFile = read_json(path)?;
    let base = resolve(file.semigroup, path)?;
    check_axioms(Arc::new(base), &file.theta)
}

/// Representative map data for the invariant construction.
pub fn load_representative_map(
    semigroup: &str,
    congruence: &str,
    mu: &str,
) -> Result<RepresentativeMap> {
    let base = Arc::new(load_semigroup(semigroup)?);
    let classes: CongruenceFile = read_json(Path::new(congruence))?;
    let mu: MuFile = read_json(Path::new(mu))?;
    RepresentativeMap::new(Congruence::new(base, &classes.classes)?, mu.mu)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}
