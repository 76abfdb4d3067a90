//! The `pentagon` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::clifford::CliffordStructure;
use crate::congruence::{is_normal_subsemigroup, solution_kernel};
use crate::constructions::{
    fixed_from_components, fixed_from_epi_family, invariant_from_mu, kernel_union_check,
};
use crate::enumeration::{
    census_csv, census_entry, census_json, enumerate_up_to_iso, enumerate_with, EnumerationOptions,
};
use crate::error::Error;
use crate::identities::verify_identity_suite;
use crate::io::{
    load_representative_map, load_semigroup, read_json, to_json, write_file, EpiSpecFile,
    FamilyFile, SemigroupRef, SolutionFile,
};
use crate::pentagon::{check_axioms, classify_detailed, Flag, Solution};
use crate::semigroup::{CliffordCheck, FiniteSemigroup};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    /// Unreadable, malformed or otherwise invalid input, or a usage error.
    Invalid,
    /// The input is valid but a mathematical check came out false.
    CheckFailed,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Invalid => 1,
            ExitStatus::CheckFailed => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pentagon",
    version,
    about = "Pentagon-equation solutions on finite Clifford semigroups"
)]
struct Cli {
    /// Print nothing on success; only the exit status is meaningful.
    #[arg(long, global = true)]
    quiet: bool,
    /// Machine-readable reports.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration.
    #[arg(long, global = true, env = "PENTAGON_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a semigroup table.
    Validate {
        /// Semigroup JSON file or `fixture:<name>`.
        semigroup: String,
        /// Also require a Clifford semigroup (exit 2 otherwise).
        #[arg(long)]
        clifford: bool,
    },
    /// Idempotents, group components and connecting homomorphisms.
    Analyze { semigroup: String },
    /// Axioms, pentagon relation, classification and identity suite.
    Check { solution: PathBuf },
    /// Kernel of a solution and its normality.
    Kernel { solution: PathBuf },
    /// Build a solution from construction data.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Every solution on a semigroup.
    Enumerate {
        semigroup: String,
        /// Keep only solutions with this flag (repeatable).
        #[arg(long)]
        filter: Vec<Flag>,
        /// One representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        /// Write one solution file per solution into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solution counts for every semigroup file in a directory.
    Census {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = CensusFormat::Csv)]
        format: CensusFormat,
    },
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// Idempotent-invariant solution `θ_a(b) = μ(a)⁻¹μ(ab)`.
    Invariant {
        #[arg(long)]
        semigroup: String,
        #[arg(long)]
        congruence: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        /// Write the solution file here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Idempotent-fixed solution from per-group solutions and connectors.
    Fixed {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Idempotent-fixed solution from per-group solutions over epimorphisms.
    FixedEpi {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CensusFormat {
    Csv,
    Json,
}

/// Where a failure lands: bad input, or valid input failing a check.
fn status_of(e: &Error) -> ExitStatus {
    match e {
        Error::AxiomViolated { .. }
        | Error::NotCompatible { .. }
        | Error::NotACongruencePair(_)
        | Error::MuNotInClass(_)
        | Error::NotTransversal(..)
        | Error::CondSoluViolated(..)
        | Error::QuotientNotGroup
        | Error::NotInvariant
        | Error::Condition1Violated(_)
        | Error::Condition2Violated(_)
        | Error::ConnectorMismatch { .. }
        | Error::NotEpimorphism { .. }
        | Error::Hypothesis1Violated { .. }
        | Error::Hypothesis2Violated { .. }
        | Error::TransversalDependent(..)
        | Error::IdentityFailed { .. } => ExitStatus::CheckFailed,
        _ => ExitStatus::Invalid,
    }
}

struct Ctx<'a> {
    quiet: bool,
    json: bool,
    threads: Option<usize>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Prints the JSON report or the human one.
    fn report(&mut self, value: &Value, human: impl FnOnce() -> String) {
        if self.quiet {
            return;
        }
        let text = if self.json { to_json(value) } else { human() };
        let _ = self.out.write_all(text.as_bytes());
    }

    fn fail(&mut self, e: &Error) -> ExitStatus {
        let _ = writeln!(self.err, "error: {e}");
        status_of(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    ExitStatus::Success
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    ExitStatus::Invalid
                }
            };
        }
    };
    let mut ctx = Ctx {
        quiet: cli.quiet,
        json: cli.json,
        threads: cli.threads,
        out,
        err,
    };
    let result = match cli.command {
        Command::Validate {
            semigroup,
            clifford,
        } => validate(&mut ctx, &semigroup, clifford),
        Command::Analyze { semigroup } => analyze(&mut ctx, &semigroup),
        Command::Check { solution } => check(&mut ctx, &solution),
        Command::Kernel { solution } => kernel(&mut ctx, &solution),
        Command::Construct { what } => construct(&mut ctx, what),
        Command::Enumerate {
            semigroup,
            filter,
            up_to_iso,
            out,
        } => enumerate(&mut ctx, &semigroup, filter, up_to_iso, out.as_deref()),
        Command::Census { dir, format } => census(&mut ctx, &dir, format),
    };
    match result {
        Ok(status) => status,
        Err(e) => ctx.fail(&e),
    }
}

type CmdResult = Result<ExitStatus, Error>;

fn names(s: &FiniteSemigroup, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter()
        .map(|x| s.element_name(x).to_string())
        .collect()
}

fn validate(ctx: &mut Ctx, arg: &str, require_clifford: bool) -> CmdResult {
    let s = load_semigroup(arg)?;
    let check = s.is_clifford();
    let value = json!({
        "name": s.name(),
        "order": s.order(),
        "associative": true,
        "commutative": s.is_commutative(),
        "clifford": check.holds(),
        "clifford_witness": (!check.holds()).then(|| check.to_string()),
    });
    ctx.report(&value, || {
        let mut t = format!("{}: valid semigroup of order {}\n", s.name(), s.order());
        t += &format!("commutative: {}\n", yes_no(s.is_commutative()));
        match &check {
            CliffordCheck::Clifford => t += "clifford: yes\n",
            other => t += &format!("clifford: no ({other})\n"),
        }
        t
    });
    Ok(if require_clifford && !check.holds() {
        ExitStatus::CheckFailed
    } else {
        ExitStatus::Success
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(ctx: &mut Ctx, arg: &str) -> CmdResult {
    let s = load_semigroup(arg)?;
    let idem = s.idempotents().to_vec();
    let c = match CliffordStructure::decompose(&s) {
        Ok(c) => c,
        Err(e @ Error::NotClifford(_)) | Err(e @ Error::NotInverseSemigroup { .. }) => {
            let value = json!({
                "name": s.name(),
                "order": s.order(),
                "idempotents": idem,
                "clifford": false,
                "reason": e.to_string(),
            });
            ctx.report(&value, || {
                format!(
                    "{}: order {}\nidempotents: {}\nclifford: no ({e})\n",
                    s.name(),
                    s.order(),
                    names(&s, idem.iter().copied()).join(", ")
                )
            });
            return Ok(ExitStatus::Success);
        }
        Err(e) => return Err(e),
    };
    let mut homs = Vec::new();
    for &f in c.idempotents() {
        for &e in c.idempotents() {
            if e != f && c.natural_order(e, f)? {
                homs.push(c.connecting_hom(f, e)?);
            }
        }
    }
    let value = json!({
        "name": s.name(),
        "order": s.order(),
        "idempotents": idem,
        "clifford": true,
        "inverses": c.inverses(),
        "components": c.idempotents().iter().zip(c.components()).map(|(e, g)| json!({"identity": e, "elements": g})).collect::<Vec<_>>(),
        "homs": homs.iter().map(|h| json!({"from": h.from, "to": h.to, "domain": h.domain, "values": h.values})).collect::<Vec<_>>(),
    });
    ctx.report(&value, || {
        let n = |x: usize| s.element_name(x).to_string();
        let mut t = format!("{}: order {}\n", s.name(), s.order());
        t += &format!(
            "idempotents: {}\n",
            names(&s, idem.iter().copied()).join(", ")
        );
        t += "clifford: yes\n";
        for (&e, g) in c.idempotents().iter().zip(c.components()) {
            t += &format!(
                "G_{} = {{{}}}\n",
                n(e),
                names(&s, g.iter().copied()).join(", ")
            );
        }
        for h in &homs {
            let pairs: Vec<String> = h
                .domain
                .iter()
                .zip(&h.values)
                .map(|(&x, &y)| format!("{} -> {}", n(x), n(y)))
                .collect();
            t += &format!("phi_{},{}: {}\n", n(h.from), n(h.to), pairs.join(", "));
        }
        t
    });
    Ok(ExitStatus::Success)
}

/// Reads a solution file without requiring the axioms.
fn load_unchecked(path: &Path) -> Result<(Arc<FiniteSemigroup>, Vec<Vec<usize>>), Error> {
    let file: SolutionFile = read_json(path)?;
    let base = match file.semigroup {
        SemigroupRef::Inline(f) => f.into_semigroup("inline")?,
        SemigroupRef::Path(p) if p.starts_with("fixture:") => load_semigroup(&p)?,
        SemigroupRef::Path(p) => {
            let dir = path.parent().unwrap_or(Path::new("."));
            load_semigroup(&dir.join(p).to_string_lossy())?
        }
    };
    let n = base.order();
    if file.theta.len() != n {
        return Err(Error::BadShape {
            order: n,
            len: file.theta.len(),
        });
    }
    for (a, row) in file.theta.iter().enumerate() {
        if row.len() != n {
            return Err(Error::BadShape {
                order: n,
                len: row.len(),
            });
        }
        if let Some((b, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::OutOfRangeEntry {
                row: a,
                col: b,
                value: v,
                order: n,
            });
        }
    }
    Ok((Arc::new(base), file.theta))
}

fn check(ctx: &mut Ctx, path: &Path) -> CmdResult {
    let (base, theta) = load_unchecked(path)?;
    let raw = crate::pentagon::RawPairMap::new(
        base.order(),
        base.table().to_vec(),
        theta.iter().flatten().copied().collect(),
    )?;
    let pentagon = raw.check_pentagon();
    let sol = match check_axioms(base.clone(), &theta) {
        Ok(sol) => sol,
        Err(e @ Error::AxiomViolated { .. }) => {
            let value = json!({
                "axioms": false,
                "axiom_failure": e.to_string(),
                "pentagon": pentagon.holds,
                "pentagon_witness": pentagon.witness,
            });
            ctx.report(&value, || {
                format!(
                    "axioms: fail ({e})\npentagon relation: {}\n",
                    if pentagon.holds { "ok" } else { "fail" }
                )
            });
            return Ok(ExitStatus::CheckFailed);
        }
        Err(e) => return Err(e),
    };
    let (flags, _) = classify_detailed(&sol);
    let identities = if base.is_clifford().holds() {
        Some(verify_identity_suite(&sol)?)
    } else {
        None
    };
    let ok = pentagon.holds && identities.as_ref().is_none_or(|r| r.all_passed());
    let value = json!({
        "semigroup": base.name(),
        "order": base.order(),
        "axioms": true,
        "pentagon": pentagon.holds,
        "pentagon_witness": pentagon.witness,
        "flags": flags,
        "labels": flags.labels(),
        "identities": identities,
    });
    ctx.report(&value, || {
        let mut t = format!("solution on {} (order {})\n", base.name(), base.order());
        t += "axioms: ok\n";
        t += &format!(
            "pentagon relation: {}\n",
            if pentagon.holds {
                "ok".to_string()
            } else {
                format!("fail at {:?}", pentagon.witness)
            }
        );
        let labels = flags.labels();
        t += &format!(
            "flags: {}\n",
            if labels.is_empty() {
                "none".to_string()
            } else {
                labels.join(", ")
            }
        );
        match &identities {
            Some(r) => {
                let applicable = r.checks.iter().filter(|c| c.applicable).count();
                let passed = r.checks.iter().filter(|c| c.applicable && c.passed).count();
                t += &format!("identities: {passed}/{applicable} applicable passed\n");
                for f in r.failures() {
                    t += &format!(
                        "  FAIL {} at {:?}\n",
                        f.name,
                        f.witness.as_deref().unwrap_or(&[])
                    );
                }
            }
            None => t += "identities: skipped (base is not Clifford)\n",
        }
        t
    });
    Ok(if ok {
        ExitStatus::Success
    } else {
        ExitStatus::CheckFailed
    })
}

fn kernel(ctx: &mut Ctx, path: &Path) -> CmdResult {
    let sol = crate::io::load_solution(&path.to_string_lossy())?;
    let c = CliffordStructure::decompose(sol.base())?;
    let k = solution_kernel(&sol)?;
    let normal = is_normal_subsemigroup(&c, &k);
    let value = json!({
        "kernel": k.to_vec(),
        "kernel_names": names(sol.base(), k.iter()),
        "normal": normal.is_ok(),
        "normal_failure": normal.as_ref().err(),
    });
    ctx.report(&value, || {
        let mut t = format!("kernel: {{{}}}\n", names(sol.base(), k.iter()).join(", "));
        match &normal {
            Ok(()) => t += "normal subsemigroup: yes\n",
            Err(w) => t += &format!("normal subsemigroup: no ({w})\n"),
        }
        t
    });
    Ok(if normal.is_ok() {
        ExitStatus::Success
    } else {
        ExitStatus::CheckFailed
    })
}

fn emit_solution(ctx: &mut Ctx, sol: &Solution, out: Option<&Path>, extra: Value) -> CmdResult {
    let file = to_json(&SolutionFile::from(sol));
    if let Some(path) = out {
        write_file(path, &file)?;
    }
    let (flags, _) = classify_detailed(sol);
    let mut value = json!({
        "solution": SolutionFile::from(sol),
        "labels": flags.labels(),
    });
    if let (Value::Object(v), Value::Object(x)) = (&mut value, extra) {
        v.extend(x);
    }
    let written = out.map(|p| p.display().to_string());
    ctx.report(&value, || {
        let mut t = String::new();
        for row in sol.rows() {
            t += &format!("{}\n", names(sol.base(), row).join(" "));
        }
        t += &format!("flags: {}\n", flags.labels().join(", "));
        if let Some(p) = written {
            t += &format!("written to {p}\n");
        }
        t
    });
    Ok(ExitStatus::Success)
}

fn construct(ctx: &mut Ctx, what: Construct) -> CmdResult {
    match what {
        Construct::Invariant {
            semigroup,
            congruence,
            mu,
            out,
        } => {
            let m = load_representative_map(
                &semigroup,
                &congruence.to_string_lossy(),
                &mu.to_string_lossy(),
            )?;
            let sol = invariant_from_mu(&m)?;
            emit_solution(ctx, &sol, out.as_deref(), json!({}))
        }
        Construct::Fixed { family, out } => {
            let fam = read_json::<FamilyFile>(&family)?.into_family()?;
            let sol = fixed_from_components(&fam)?;
            let ku = kernel_union_check(&sol, &fam)?;
            emit_solution(ctx, &sol, out.as_deref(), json!({ "kernel_union": ku }))
        }
        Construct::FixedEpi { spec, out } => {
            let spec = read_json::<EpiSpecFile>(&spec)?.into_spec()?;
            let sol = fixed_from_epi_family(&spec)?;
            emit_solution(ctx, &sol, out.as_deref(), json!({}))
        }
    }
}

fn enumerate(
    ctx: &mut Ctx,
    arg: &str,
    filter: Vec<Flag>,
    up_to_iso: bool,
    out: Option<&Path>,
) -> CmdResult {
    let base = Arc::new(load_semigroup(arg)?);
    let opts = EnumerationOptions {
        threads: ctx.threads,
        filter,
    };
    let sols = if up_to_iso {
        enumerate_up_to_iso(&base, &opts)
    } else {
        enumerate_with(&base, &opts)
    };
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let width = sols.len().to_string().len();
        for (i, sol) in sols.iter().enumerate() {
            let path = dir.join(format!("{}_{:0width$}.json", base.name(), i));
            write_file(&path, &to_json(&SolutionFile::from(sol)))?;
        }
    }
    let entries: Vec<Value> = sols
        .iter()
        .map(|s| json!({"theta": s.rows(), "labels": classify_detailed(s).0.labels()}))
        .collect();
    let value = json!({
        "semigroup": base.name(),
        "count": sols.len(),
        "up_to_iso": up_to_iso,
        "solutions": entries,
    });
    ctx.report(&value, || {
        let mut t = format!("{} solutions on {}\n", sols.len(), base.name());
        for s in &sols {
            let rows: Vec<String> = s.rows().iter().map(|r| format!("{r:?}")).collect();
            t += &format!(
                "{}  {}\n",
                rows.join(" "),
                classify_detailed(s).0.labels().join(",")
            );
        }
        t
    });
    Ok(ExitStatus::Success)
}

fn census(ctx: &mut Ctx, dir: &Path, format: CensusFormat) -> CmdResult {
    let read = std::fs::read_dir(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut entries = Vec::new();
    let mut status = ExitStatus::Success;
    for f in &files {
        match load_semigroup(&f.to_string_lossy()) {
            Ok(s) => entries.push(census_entry(&s, ctx.threads)),
            Err(e) => {
                let _ = writeln!(ctx.err, "error: {}: {e}", f.display());
                status = ExitStatus::Invalid;
            }
        }
    }
    if !ctx.quiet {
        let text = match (format, ctx.json) {
            (CensusFormat::Json, _) | (_, true) => census_json(&entries),
            (CensusFormat::Csv, false) => census_csv(&entries),
        };
        let _ = ctx.out.write_all(text.as_bytes());
    }
    Ok(status)
}
