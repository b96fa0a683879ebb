//! End-to-end acceptance run: one line per criterion, non-zero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value as Json;

use eumr::harness::{run_suite, Report, Status, SuiteName, SuiteSpec};
use eumr::ortho::{lemma41_check, oe_matrix, pi, so_form_residual, t_matrix, t_matrix_by_columns, OrthoGen};
use eumr::{Elem, Ring};

type Verdict = Result<(), String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn suite(name: SuiteName, r: usize) -> Result<Report, String> {
    suite_spec(SuiteSpec::new(name, r))
}

fn suite_spec(spec: SuiteSpec) -> Result<Report, String> {
    let report = run_suite(&spec).map_err(|e| e.to_string())?;
    if report.status != Status::Pass {
        let first = report.counterexamples.first().map(|c| c.inputs.clone()).unwrap_or_default();
        return Err(format!(
            "{} r={} is {} ({}{})",
            report.suite,
            report.r,
            report.status.as_str(),
            report.reason.clone().unwrap_or_default(),
            first
        ));
    }
    Ok(report)
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Verdict {
    if cond { Ok(()) } else { Err(what()) }
}

fn symbolic_pair(r: usize) -> (Vec<Elem>, Vec<Elem>) {
    let n = r + 1;
    let names: Vec<String> = (0..n).map(|k| format!("a{k}")).chain((0..n).map(|k| format!("b{k}"))).collect();
    let ring = Ring::poly(&Ring::rationals(), &names).unwrap();
    let vars: Vec<Elem> = names.iter().map(|v| ring.var(v).unwrap()).collect();
    (vars[..n].to_vec(), vars[n..].to_vec())
}

/// Unimodular vectors of length `n` over Z/m: those whose entries have no
/// common prime factor with `m`.
fn unimodular_count(m: u64, n: u32) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let total = m.pow(n);
    (0..total)
        .filter(|&code| {
            let mut g = m;
            let mut c = code;
            for _ in 0..n {
                g = gcd(g, c % m);
                c /= m;
            }
            g == 1
        })
        .count() as u64
}

fn fundamental() -> Verdict {
    for r in [1, 2] {
        suite(SuiteName::Fundamental, r)?;
    }
    Ok(())
}

fn column_images() -> Verdict {
    for r in [2, 3] {
        let (v, w) = symbolic_pair(r);
        let direct = t_matrix(&v, &w).map_err(|e| e.to_string())?;
        let by_columns = t_matrix_by_columns(&v, &w).map_err(|e| e.to_string())?;
        expect(direct == by_columns, || format!("r={r}: matrices differ"))?;
    }
    Ok(())
}

fn truncation_relations() -> Verdict {
    for r in [2, 3] {
        let report = suite(SuiteName::Lemma32, r)?;
        let pairs = (r * (r - 1)) as u64;
        expect(report.checks_run == 4 * pairs, || format!("r={r}: {} checks, want {}", report.checks_run, 4 * pairs))?;
    }
    Ok(())
}

fn truncation_table() -> Verdict {
    for r in [2, 3] {
        let report = suite(SuiteName::Cor33, r)?;
        expect(report.checks_run == 4 * r as u64, || format!("r={r}: {} rows", report.checks_run))?;
    }
    let report = suite(SuiteName::Cor33Fixtures, 2)?;
    expect(report.checks_run == 2 * 28, || format!("{} proof displays, want 56", report.checks_run))
}

fn generator_table() -> Verdict {
    for r in [2, 3] {
        let report = suite(SuiteName::Cor34, r)?;
        let rows = 7 * (r * (r - 1)) as u64;
        expect(report.checks_run >= rows, || format!("r={r}: {} checks, want at least {rows}", report.checks_run))?;
    }
    Ok(())
}

fn transvection_coverage() -> Verdict {
    let r = 2;
    let size = 2 * (r + 1);
    let admissible = (1..=size)
        .flat_map(|k| (1..=size).map(move |l| (k, l)))
        .filter(|&(k, l)| l != k && Some(l) != pi(k, r).ok())
        .count();
    let report = suite(SuiteName::Prop35Coverage, r)?;
    let covered = report.observations.get("pairs_covered").and_then(Json::as_u64).unwrap_or(0);
    expect(covered == admissible as u64, || format!("{covered} of {admissible} pairs realised"))
}

fn perturbation_congruence() -> Verdict {
    for (n, r) in [(1, 2), (2, 2), (2, 3)] {
        expect(lemma41_check(n, r).map_err(|e| e.to_string())?, || format!("n={n} r={r} fails"))?;
    }
    Ok(())
}

fn triple_products() -> Verdict {
    let report = suite(SuiteName::Lemma42, 2)?;
    // 4 kind pairs x (4 patterns + the specialised product), for each i != j.
    expect(report.checks_run == 2 * 4 * 5, || format!("{} checks", report.checks_run))
}

fn involution_product() -> Verdict {
    let report = suite(SuiteName::Lemma44, 2)?;
    expect(
        report.fixture_hashes.iter().any(|h| h.starts_with("lemma44-zmod15-u4-r2:")),
        || "u = 4 product was not pinned".into(),
    )
}

fn determinant() -> Verdict {
    for r in [1, 2, 3] {
        suite(SuiteName::DetExponent, r)?;
        // Bareiss over Z on random integer pairs.
        suite_spec(SuiteSpec::new(SuiteName::DetExponent, r).with_ring("Z").with_trials(20))?;
    }
    Ok(())
}

fn orbit() -> Verdict {
    let report = suite(SuiteName::Orbit, 2)?;
    for m in [9u64, 15] {
        let counts = &report.observations[&format!("zmod{m}")];
        let (vectors, total, orbit) =
            (counts["vectors"].as_u64(), counts["unimodular_total"].as_u64(), counts["orbit_of_e1"].as_u64());
        let want = unimodular_count(m, 3);
        expect(vectors == Some(m.pow(3)), || format!("Z/{m}: {vectors:?} vectors"))?;
        expect(total == Some(want) && orbit == Some(want), || format!("Z/{m}: {total:?}/{orbit:?}, want {want}"))?;
    }
    expect(report.fixture_hashes.len() == 2, || "orbit counts were not pinned".into())
}

fn completion() -> Verdict {
    let report = suite(SuiteName::Lemma01Completion, 2)?;
    expect(report.checks_run == 220, || format!("{} inputs, want 200 + 20", report.checks_run))
}

fn commutator_factorization() -> Verdict {
    let report = suite(SuiteName::Lemma03Identity, 2)?;
    expect(report.checks_run == 501, || format!("{} instances, want 500 + 1", report.checks_run))
}

fn excision() -> Verdict {
    let report = suite(SuiteName::Excision, 2)?;
    expect(report.trials == 1000 && report.checks_run == 3001, || format!("{} checks", report.checks_run))
}

fn form_preservation() -> Verdict {
    for r in 1..=3 {
        let report = suite(SuiteName::Lemma31, r)?;
        expect(report.trials == 500, || format!("r={r}: {} trials", report.trials))?;
    }
    let ring = Ring::parse("Poly:Q[l]").unwrap();
    let l = ring.var("l").unwrap();
    for r in [2, 3] {
        let size = 2 * (r + 1);
        for k in 1..=size {
            for m in (1..=size).filter(|&m| m != k && Some(m) != pi(k, r).ok()) {
                let g = oe_matrix(&OrthoGen::oe(k, m, l.clone()), r, &ring).map_err(|e| e.to_string())?;
                let residual = so_form_residual(&g).map_err(|e| e.to_string())?;
                expect(residual.is_zero(), || format!("oe_{k}{m} at r={r}"))?;
            }
        }
    }
    Ok(())
}

/// The raw output with the `elapsed_ms` lines dropped.
fn without_timing(stdout: &[u8]) -> Result<String, String> {
    let text = std::str::from_utf8(stdout).map_err(|e| e.to_string())?;
    Ok(text.lines().filter(|l| !l.trim_start().starts_with("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n"))
}

fn full_run() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_eumr"))
            .args(["check", "all", "--r", "2", "--seed", "0", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (first, second) = (run()?, run()?);
    expect(first.status.code() == Some(0), || {
        format!("exit {:?}: {}", first.status.code(), String::from_utf8_lossy(&first.stderr))
    })?;
    let (a, b) = (without_timing(&first.stdout)?, without_timing(&second.stdout)?);
    let reports: Json = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    let suites = reports.as_array().map_or(0, Vec::len);
    expect(suites == SuiteName::ALL.len(), || format!("{suites} reports"))?;
    expect(a == b, || "output differs between runs".into())
}

const CRITERIA: [Criterion; 16] = [
    Criterion { id: 1, title: "fundamental property, r = 1, 2", limit: secs(30), run: fundamental },
    Criterion { id: 2, title: "T matrix equals its column images, r = 2, 3", limit: secs(10), run: column_images },
    Criterion { id: 3, title: "truncation rewrites, all (i, j), r = 2, 3", limit: secs(60), run: truncation_relations },
    Criterion { id: 4, title: "truncation table and proof displays", limit: None, run: truncation_table },
    Criterion { id: 5, title: "generator and commutator table, r = 2, 3", limit: None, run: generator_table },
    Criterion { id: 6, title: "every orthogonal transvection is an image, r = 2", limit: None, run: transvection_coverage },
    Criterion { id: 7, title: "perturbed pairs congruent to I mod s^n", limit: None, run: perturbation_congruence },
    Criterion { id: 8, title: "triple products congruent to I mod X", limit: None, run: triple_products },
    Criterion { id: 9, title: "involution product: u = 1, pinned u = 4, displays", limit: None, run: involution_product },
    Criterion { id: 10, title: "det S_r = <v,w>^(2^(r-1)), r = 1..3", limit: None, run: determinant },
    Criterion { id: 11, title: "orbit of e1 is every unimodular vector, Z/9 and Z/15", limit: secs(10), run: orbit },
    Criterion { id: 12, title: "completion of unimodular pairs", limit: None, run: completion },
    Criterion { id: 13, title: "commutator factorization", limit: None, run: commutator_factorization },
    Criterion { id: 14, title: "excision ring and retraction", limit: None, run: excision },
    Criterion { id: 15, title: "form preservation, random and symbolic", limit: None, run: form_preservation },
    Criterion { id: 16, title: "check all --r 2, byte-stable JSON", limit: secs(300), run: full_run },
];

fn main() -> ExitCode {
    let mut failures = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let mut verdict = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&verdict, c.limit) {
            if elapsed > limit {
                verdict = Err(format!("took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        let limit = c.limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
        match verdict {
            Ok(()) => println!("PASS {:>2}  {}  ({elapsed:.2?}{limit})", c.id, c.title),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2}  {}  ({elapsed:.2?}{limit}): {why}", c.id, c.title);
            }
        }
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
