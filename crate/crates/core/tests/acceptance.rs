//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use clifford_pentagon::clifford::SemilatticeSpec;
use clifford_pentagon::congruence::{
    all_congruence_pairs, all_congruences, is_normal_subsemigroup, solution_kernel,
    trace_and_kernel, CongruencePair,
};
use clifford_pentagon::constructions::{
    extract_invariant_data, fixed_from_components, fixed_from_epi_family, invariant_from_mu,
    kernel_union_check, ComponentSolutionFamily, EpiFamilySpec, RepresentativeMap, Transversal,
};
use clifford_pentagon::enumeration::{
    enumerate_solutions, enumerate_up_to_iso, EnumerationOptions,
};
use clifford_pentagon::identities::verify_identity_suite;
use clifford_pentagon::pentagon::{
    canonical_e, canonical_f, canonical_i, is_identity_solution, RawPairMap,
};
use clifford_pentagon::{
    check_axioms, classify, fixtures, CliffordStructure, FiniteSemigroup, Solution,
};

use common::*;

type Outcome = Result<String, String>;

/// Name, check, time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Regression constants for S3, fixed after the first derivation.
const S3_TOTAL: usize = 9;
const S3_ISO_CLASSES: usize = 9;

fn clifford_fixtures() -> Vec<Arc<FiniteSemigroup>> {
    fixtures::all()
        .into_iter()
        .filter(|s| s.is_clifford().holds())
        .map(Arc::new)
        .collect()
}

fn paper_s3() -> Arc<FiniteSemigroup> {
    // 1, a, b with a² = a, b² = a, ab = b
    let rows = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 1]];
    Arc::new(FiniteSemigroup::new("s3", vec!["1".into(), "a".into(), "b".into()], &rows).unwrap())
}

fn criterion_1() -> Outcome {
    let s = paper_s3();
    ensure!(s.is_commutative(), "S3 not commutative");
    ensure!(
        s.is_clifford().holds(),
        "S3 not Clifford: {}",
        s.is_clifford()
    );
    ensure!(s.identity() == Some(0), "S3 has no identity 1");
    ensure!(*s == fixtures::s3(), "built-in s3 fixture differs");

    let gamma = check_axioms(s.clone(), &vec![vec![1, 1, 2]; 3]).map_err(|e| e.to_string())?;
    let f = classify(&gamma);
    ensure!(
        f.e_invariant == Some(true) && f.e_fixed == Some(false),
        "gamma flags {f:?}"
    );

    // θ_1 ≡ a, θ_a = θ_b: 1 ↦ 1, a, b ↦ a
    let out = check_axioms(s, &[vec![1, 1, 1], vec![0, 1, 1], vec![0, 1, 1]])
        .map_err(|e| e.to_string())?;
    let f = classify(&out);
    ensure!(f.neither() == Some(true), "example flags {f:?}");
    Ok("S3 commutative Clifford monoid; gamma e-invariant only; example is neither".into())
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for s in fixtures::canonical_suite().into_iter().map(Arc::new) {
        let name = s.name().to_string();
        let i = canonical_i(s.clone()).map_err(|e| format!("{name}: I: {e}"))?;
        let fi = classify(&i);
        ensure!(
            fi.cocommutative && fi.e_fixed == Some(true),
            "{name}: I flags {fi:?}"
        );
        let f = canonical_f(s.clone()).map_err(|e| format!("{name}: F: {e}"))?;
        ensure!(classify(&f).e_fixed == Some(true), "{name}: F not e-fixed");
        for e in s.idempotents().iter() {
            let sol = canonical_e(s.clone(), e).map_err(|err| format!("{name}: E({e}): {err}"))?;
            ensure!(
                classify(&sol).e_invariant == Some(true),
                "{name}: E({e}) not e-invariant"
            );
            checked += 1;
        }
        checked += 2;
    }
    Ok(format!("{checked} canonical solutions on 5 fixtures"))
}

fn agree(n: usize, m: &[usize], t: &[usize]) -> Result<bool, String> {
    let raw = RawPairMap::new(n, m.to_vec(), t.to_vec()).map_err(|e| e.to_string())?;
    let expected = is_solution(n, m, t);
    ensure!(
        raw.check_pentagon().holds == expected,
        "disagreement on n = {n}, mult {m:?}, theta {t:?}: oracle says {expected}"
    );
    Ok(expected)
}

fn criterion_3() -> Outcome {
    let mut positives = 0;
    let mut count = 0;
    for mc in 0..16usize {
        let m: Vec<usize> = (0..4).map(|i| (mc >> i) & 1).collect();
        for tc in 0..16usize {
            let t: Vec<usize> = (0..4).map(|i| (tc >> i) & 1).collect();
            positives += usize::from(agree(2, &m, &t)?);
            count += 1;
        }
    }
    ensure!(count == 256, "n = 2 covered {count} candidates");

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut random = 0;
    for _ in 0..10_000 {
        let m: Vec<usize> = (0..9).map(|_| rng.gen_range(0..3)).collect();
        let t: Vec<usize> = (0..9).map(|_| rng.gen_range(0..3)).collect();
        positives += usize::from(agree(3, &m, &t)?);
        random += 1;
    }
    // uniform candidates are almost never solutions, so also pair every
    // associative table with random θ and with its actual solutions
    let mut assoc = 0;
    for code in 0..3usize.pow(9) {
        let mut x = code;
        let m: Vec<usize> = (0..9)
            .map(|_| {
                let d = x % 3;
                x /= 3;
                d
            })
            .collect();
        if !is_associative(3, &m) {
            continue;
        }
        assoc += 1;
        for _ in 0..4 {
            let t: Vec<usize> = (0..9).map(|_| rng.gen_range(0..3)).collect();
            positives += usize::from(agree(3, &m, &t)?);
        }
        for t in naive_solutions(3, &m).into_iter().take(4) {
            ensure!(agree(3, &m, &t)?, "known solution rejected");
            positives += 1;
        }
    }
    Ok(format!(
        "256 candidates for n = 2, {random} random for n = 3, {assoc} associative tables; {positives} positives among them"
    ))
}

fn criterion_4() -> Outcome {
    let mut fixtures_checked = Vec::new();
    for s in fixtures::all()
        .into_iter()
        .filter(|s| s.order() <= 3)
        .map(Arc::new)
    {
        let n = s.order();
        let fast: BTreeSet<Vec<usize>> = enumerate_solutions(&s)
            .iter()
            .map(|x| x.table().to_vec())
            .collect();
        let naive: BTreeSet<Vec<usize>> = naive_solutions(n, s.table()).into_iter().collect();
        ensure!(
            fast == naive,
            "{}: search found {} solutions, oracle {}",
            s.name(),
            fast.len(),
            naive.len()
        );
        fixtures_checked.push(format!("{}={}", s.name(), fast.len()));
    }
    let s3 = Arc::new(fixtures::s3());
    let total = enumerate_solutions(&s3).len();
    let iso = enumerate_up_to_iso(&s3, &EnumerationOptions::default()).len();
    ensure!(total == S3_TOTAL, "S3 total {total}, expected {S3_TOTAL}");
    ensure!(
        iso == S3_ISO_CLASSES,
        "S3 iso classes {iso}, expected {S3_ISO_CLASSES}"
    );
    Ok(format!(
        "{}; S3 iso classes {iso}",
        fixtures_checked.join(" ")
    ))
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    let (mut invariant, mut fixed) = (0, 0);
    for s in clifford_fixtures() {
        let name = s.name().to_string();
        let c = CliffordStructure::decompose(&s).map_err(|e| e.to_string())?;
        for sol in enumerate_solutions(&s) {
            let rows = sol.rows();
            let k = solution_kernel(&sol).map_err(|e| e.to_string())?;
            ensure!(
                is_normal_subsemigroup(&c, &k).is_ok(),
                "{name} {rows:?}: kernel {:?} not normal",
                k.to_vec()
            );
            let report = verify_identity_suite(&sol).map_err(|e| e.to_string())?;
            if let Some(f) = report.failures().next() {
                return Err(format!(
                    "{name} {rows:?}: {} fails at {:?}",
                    f.name, f.witness
                ));
            }
            let flags = classify(&sol);
            ensure!(
                flags.cocommutative == is_identity_solution(&sol),
                "{name} {rows:?}: cocommutative bucket"
            );
            ensure!(
                flags.commutative == is_commutative_shape(s.order(), s.table(), sol.table()),
                "{name} {rows:?}: commutative bucket"
            );
            if flags.e_invariant == Some(true) {
                let d =
                    extract_invariant_data(&sol).map_err(|e| format!("{name} {rows:?}: {e}"))?;
                let m = RepresentativeMap::new(d.rho, d.mu)
                    .map_err(|e| format!("{name} {rows:?}: {e}"))?;
                let back = invariant_from_mu(&m).map_err(|e| format!("{name} {rows:?}: {e}"))?;
                ensure!(
                    back == sol,
                    "{name} {rows:?}: round trip gave {:?}",
                    back.rows()
                );
                invariant += 1;
            }
            if flags.e_fixed == Some(true) {
                ensure!(
                    [
                        "fixed_theta_idempotent_absorbs_right",
                        "fixed_theta_stays_in_group"
                    ]
                    .iter()
                    .all(|n| report.get(n).is_some_and(|c| c.applicable && c.passed)),
                    "{name} {rows:?}: fixed identities not applied"
                );
                fixed += 1;
            }
            total += 1;
        }
    }
    Ok(format!(
        "{total} solutions; {invariant} invariant round trips; {fixed} fixed solutions"
    ))
}

fn klein4_over_z2() -> Arc<FiniteSemigroup> {
    let spec = SemilatticeSpec::new(
        vec![vec![0, 1], vec![1, 1]],
        vec![fixtures::klein4(), fixtures::z2()],
        [((0, 1), vec![0, 1, 0, 1])].into_iter().collect(),
    )
    .unwrap();
    Arc::new(spec.build().unwrap().with_name("klein4_over_z2"))
}

fn construction_bases() -> Vec<Arc<FiniteSemigroup>> {
    let mut v = clifford_fixtures();
    v.push(klein4_over_z2());
    v
}

/// True when the upward identity hypothesis held, so the union was compared.
fn check_kernel_union(
    sol: &Solution,
    fam: &ComponentSolutionFamily,
    what: &str,
) -> Result<bool, String> {
    let ku = kernel_union_check(sol, fam).map_err(|e| format!("{what}: {e}"))?;
    ensure!(
        !ku.upward_identities || ku.holds(),
        "{what}: kernel {:?} vs union {:?}",
        ku.kernel.to_vec(),
        ku.union.to_vec()
    );
    Ok(ku.upward_identities)
}

fn criterion_6() -> Outcome {
    let (mut endo_families, mut epi_specs, mut unions) = (0, 0, 0);
    for s in construction_bases() {
        let name = s.name().to_string();
        let c = CliffordStructure::decompose(&s).map_err(|e| e.to_string())?;
        let groups: Vec<FiniteSemigroup> = (0..c.idempotents().len())
            .map(|k| c.component_group(k))
            .collect();

        let choices: Vec<Vec<Vec<usize>>> = groups
            .iter()
            .map(|g| idempotent_endomorphisms(g.order(), g.table()))
            .collect();
        let identities: Vec<Vec<usize>> = groups.iter().map(|g| (0..g.order()).collect()).collect();
        let mut identity_seen = false;
        for gammas in product(&choices) {
            let Ok(fam) = ComponentSolutionFamily::from_endomorphisms(s.clone(), &gammas) else {
                continue;
            };
            let what = format!("{name} gammas {gammas:?}");
            let sol = fixed_from_components(&fam).map_err(|e| format!("{what}: {e}"))?;
            for a in s.elements() {
                for b in s.elements() {
                    let k = c.component_index(b);
                    let expect = c.component(k)[gammas[k][c.local_index(b)]];
                    ensure!(
                        sol.theta(a, b) == expect,
                        "{what}: θ_{a}({b}) = {}",
                        sol.theta(a, b)
                    );
                }
            }
            if gammas == identities {
                ensure!(
                    is_identity_solution(&sol),
                    "{what}: identities did not give I"
                );
                identity_seen = true;
            }
            unions += usize::from(check_kernel_union(&sol, &fam, &what)?);
            endo_families += 1;
        }
        ensure!(identity_seen, "{name}: identity family rejected");

        let group_solutions: Vec<Vec<Vec<Vec<usize>>>> = groups
            .iter()
            .map(|g| {
                enumerate_solutions(&Arc::new(g.clone()))
                    .iter()
                    .map(Solution::rows)
                    .collect()
            })
            .collect();
        for thetas in product(&group_solutions) {
            let Ok(spec) = EpiFamilySpec::new(s.clone(), thetas.clone()) else {
                continue;
            };
            let what = format!("{name} epi {thetas:?}");
            let sol = fixed_from_epi_family(&spec).map_err(|e| format!("{what}: {e}"))?;
            ensure!(classify(&sol).e_fixed == Some(true), "{what}: not e-fixed");
            unions += usize::from(check_kernel_union(
                &sol,
                &spec.family(Transversal::Least),
                &what,
            )?);
            epi_specs += 1;
        }
    }
    Ok(format!(
        "{endo_families} endomorphism families; {epi_specs} epimorphism specs transversal-independent; kernel = union on {unions}"
    ))
}

fn criterion_7() -> Outcome {
    let (mut congruences, mut pairs) = (0, 0);
    for s in clifford_fixtures().into_iter().filter(|s| s.order() <= 4) {
        let name = s.name().to_string();
        let n = s.order();
        let c = CliffordStructure::decompose(&s).map_err(|e| e.to_string())?;
        let oracle: BTreeSet<Vec<usize>> = partitions(n)
            .into_iter()
            .filter(|p| is_compatible(n, s.table(), p))
            .collect();
        let found = all_congruences(&s);
        let found_set: BTreeSet<Vec<usize>> = found.iter().map(|r| r.classes().to_vec()).collect();
        ensure!(
            found_set == oracle,
            "{name}: {} congruences, oracle {}",
            found_set.len(),
            oracle.len()
        );

        for rho in &found {
            let (trace, kernel) = trace_and_kernel(rho).map_err(|e| format!("{name}: {e}"))?;
            let pair = CongruencePair::new(&c, kernel, trace)
                .map_err(|e| format!("{name} {:?}: {e}", rho.classes()))?;
            let back = pair.rho(&c).map_err(|e| e.to_string())?;
            ensure!(
                back.classes() == rho.classes(),
                "{name}: ρ(Ker, tr) != ρ for {:?}",
                rho.classes()
            );
            congruences += 1;
        }
        let all_pairs = all_congruence_pairs(&c);
        ensure!(
            all_pairs.len() == found.len(),
            "{name}: {} pairs vs {} congruences",
            all_pairs.len(),
            found.len()
        );
        for pair in &all_pairs {
            let rho = pair.rho(&c).map_err(|e| e.to_string())?;
            let (trace, kernel) = trace_and_kernel(&rho).map_err(|e| e.to_string())?;
            ensure!(
                &kernel == pair.kernel() && trace.classes() == pair.trace().classes(),
                "{name}: Ker/tr of ρ differ from the pair for {:?}",
                pair.kernel().to_vec()
            );
            pairs += 1;
        }
    }
    Ok(format!(
        "{congruences} congruences and {pairs} pairs round-tripped"
    ))
}

fn census(threads: &str, format: &str) -> Result<Vec<u8>, String> {
    let dir = fixture_dir().join("semigroups");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = clifford_pentagon::cli::run(
        [
            "pentagon",
            "--threads",
            threads,
            "census",
            dir.to_str().unwrap(),
            "--format",
            format,
        ],
        &mut out,
        &mut err,
    );
    ensure!(
        status.code() == 0,
        "census exited {}: {}",
        status.code(),
        String::from_utf8_lossy(&err)
    );
    Ok(out)
}

fn criterion_8() -> Outcome {
    for format in ["csv", "json"] {
        let a = census("1", format)?;
        let b = census("1", format)?;
        let c = census("4", format)?;
        ensure!(a == b, "{format}: two runs differ");
        ensure!(a == c, "{format}: 1 vs 4 threads differ");
    }
    Ok("csv and json census identical across runs and thread counts".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("published fixtures", criterion_1, 1),
        ("canonical solutions", criterion_2, 1),
        ("oracle equivalence", criterion_3, 10),
        ("enumeration completeness", criterion_4, 10),
        ("theorem suite over census", criterion_5, 60),
        ("constructions", criterion_6, 10),
        ("congruence machinery", criterion_7, 30),
        ("determinism", criterion_8, 30),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{msg}; over the {limit} s limit"))
            }
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS {} {name} ({:.2?}): {msg}", i + 1, elapsed),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({:.2?}): {msg}", i + 1, elapsed);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
