//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Tolerances are exact throughout (field arithmetic).

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gt_core::batch::{map_seeds, seed_range};
use gt_core::chain_kgl::{
    chain_from_stratum, check_admissible, enumerate_strata, stratum_indices_from_chain,
    ChainBundleDescription, ChainData, KglPoint, Partition, ProjectiveChain, Stratum,
};
use gt_core::correspondence::{forward, inverse};
use gt_core::eq_matrix::{apply_gamma, diagonalize_action, GammaAction, Matrix};
use gt_core::field_series::{Fp, NodalRingElement};
use gt_core::invariance::{random_cocycle, run_trial, GermSampler, TrialConfig, TrialReport};

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let (p, n) = (61, 16);
    let mut cases = 0;
    let mut bad = Vec::new();
    for r in 1..=6 {
        for st in enumerate_strata(r).into_iter().filter(|s| s.j_set.is_empty()) {
            cases += 1;
            let point = KglPoint::standard(r, &st.i_set, &[], p).unwrap();
            let part = Partition::from_stratum_i(r, &st.i_set).unwrap();
            let ok = inverse(&point, p, n)
                .and_then(|g| forward(&g))
                .is_ok_and(|d| d.point == point && d.partition == part);
            if !ok {
                bad.push((r, st.i_set));
            }
        }
    }
    outcome(bad.is_empty(), format!("{cases} strata, r <= 6, p = 61, N = 16, failures {bad:?}"))
}

/// Brute force over bitmask pairs, sharing no code with the library.
fn brute_strata(r: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let set = |m: u32| (0..r).filter(|k| m >> k & 1 == 1).collect::<Vec<_>>();
    let mut out = BTreeSet::new();
    for im in 0..1u32 << r {
        for jm in 0..1u32 << r {
            let lo = |m: u32| if m == 0 { r } else { m.trailing_zeros() as usize };
            if lo(im) + lo(jm) >= r {
                out.insert((set(im), set(jm)));
            }
        }
    }
    out
}

/// Every composition-like chain datum: `n1 + n2` positive degrees.
fn brute_chains(r: usize) -> Vec<ChainData> {
    fn compositions(total_max: usize, len: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=total_max {
            for rest in compositions(total_max - first, len - 1) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
        out
    }
    let mut out = Vec::new();
    for n1 in 0..=r {
        for n2 in 0..=r {
            for degrees in compositions(r, n1 + n2) {
                out.push(ChainData { n1, n2, degrees });
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut problems = Vec::new();
    let mut pairs = 0;
    for r in 1..=5 {
        let brute = brute_strata(r);
        let lib: BTreeSet<_> = enumerate_strata(r).into_iter().map(|s| (s.i_set, s.j_set)).collect();
        if brute != lib {
            problems.push(format!("r = {r}: enumeration differs"));
        }
        for (i_set, j_set) in &brute {
            pairs += 1;
            let st = Stratum {
                i_set: i_set.clone(),
                j_set: j_set.clone(),
            };
            let back = chain_from_stratum(r, &st).and_then(|c| stratum_indices_from_chain(r, &c));
            if back.as_ref() != Ok(&st) {
                problems.push(format!("r = {r}: {st:?} -> {back:?}"));
            }
        }
        // chain side: the image of the valid chains is exactly the strata
        let mut image = BTreeSet::new();
        for chain in brute_chains(r) {
            if let Ok(st) = stratum_indices_from_chain(r, &chain) {
                if chain_from_stratum(r, &st).as_ref() != Ok(&chain) {
                    problems.push(format!("r = {r}: {chain:?} does not return"));
                }
                if !image.insert((st.i_set, st.j_set)) {
                    problems.push(format!("r = {r}: {chain:?} collides"));
                }
            }
        }
        if image != brute {
            problems.push(format!("r = {r}: chain image differs from strata"));
        }
    }
    outcome(problems.is_empty(), format!("{pairs} (I, J) pairs, r <= 5, problems {problems:?}"))
}

fn criterion_3() -> Outcome {
    let (p, n, count) = (13, 12, 500);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let orders = [2, 3, 4, 6];
    let mut failures = 0;
    for k in 0..count {
        let e = orders[k % orders.len()];
        let r = 1 + k / orders.len() % 4;
        let act = GammaAction::new(p, e).unwrap();
        let (a, _, _) = random_cocycle(&mut rng, r, &act, n).unwrap();
        let ok = diagonalize_action(&a, &act).is_ok_and(|d| {
            let z = Matrix::diagonal(d.z.iter().map(|&x| NodalRingElement::constant(x, n)).collect());
            let lhs = a.mul(&apply_gamma(&d.b, &act));
            let rhs = d.b.mul(&z);
            lhs == rhs && d.z.len() == r && d.z.iter().all(|x| x.pow(e) == Fp::one(p))
        });
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("{count} cocycles, r <= 4, e in {{2,3,4,6}}, p = 13, N = 12, failures {failures}"))
}

fn trials() -> Vec<TrialReport> {
    let cfg = TrialConfig {
        sampler: GermSampler {
            p: 13,
            max_rank: 4,
            orders: vec![2, 3, 4, 6],
            precision: 12,
        },
        series_precision: 4,
    };
    map_seeds(&seed_range(1000, 200), |s| run_trial(s, &cfg))
}

fn from_trials(reports: &[TrialReport], names: &[&str], what: &str) -> Outcome {
    let failing: Vec<u64> = reports
        .iter()
        .filter(|t| {
            names
                .iter()
                .any(|n| !t.checks.iter().any(|c| c.name == *n && c.passed))
        })
        .map(|t| t.seed)
        .collect();
    let ranks: BTreeSet<usize> = reports.iter().map(|t| t.rank).collect();
    outcome(
        failing.is_empty(),
        format!("{} trials ({what}), ranks {ranks:?}, failing seeds {failing:?}", reports.len()),
    )
}

/// Sections vanishing at both ends, counted by enumerating the free values
/// at each `y_k` over F_q and propagating through the glues. On the last
/// component the free values must be zero, so only that choice is tried.
fn brute_vanishing(q: u64, degrees: &[Vec<u8>], glues: &[Vec<usize>]) -> u64 {
    let r = degrees[0].len();
    let last = degrees.len() - 1;
    let free: Vec<(usize, usize)> = degrees[..last]
        .iter()
        .enumerate()
        .flat_map(|(k, d)| (0..r).filter(move |&i| d[i] == 1).map(move |i| (k, i)))
        .collect();
    let total = q.pow(free.len() as u32);
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let mut vals = vec![vec![0u64; r]; degrees.len()];
        for &(k, i) in &free {
            vals[k][i] = c % q;
            c /= q;
        }
        // x_1 = 0; y_k is free on degree one, equals x_k on degree zero
        let mut x = vec![0u64; r];
        let mut ok = true;
        for (k, d) in degrees.iter().enumerate() {
            let y: Vec<u64> = (0..r).map(|i| if d[i] == 1 { vals[k][i] } else { x[i] }).collect();
            if k + 1 == degrees.len() {
                ok = y.iter().all(|&v| v == 0);
            } else {
                // permutation glue: (g y)_i = y_{σ(i)}
                x = (0..r).map(|i| y[glues[k][i]]).collect();
            }
        }
        count += u64::from(ok);
    }
    count
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, r - 1);
            out.push(v);
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let q = 3;
    let mut chains = 0;
    let mut mismatches = Vec::new();
    for r in 1..=3usize {
        let perms = permutations(r);
        for n in 1..=3usize {
            for mask in 0..1u32 << (r * n) {
                let degrees: Vec<Vec<u8>> = (0..n)
                    .map(|k| (0..r).map(|i| (mask >> (k * r + i) & 1) as u8).collect())
                    .collect();
                let glue_count = perms.len().pow(n as u32 - 1);
                for gc in 0..glue_count {
                    let mut c = gc;
                    let glues: Vec<Vec<usize>> = (0..n - 1)
                        .map(|_| {
                            let g = perms[c % perms.len()].clone();
                            c /= perms.len();
                            g
                        })
                        .collect();
                    let sections = brute_vanishing(q, &degrees, &glues);
                    let brute = sections == 1 && degrees.iter().all(|d| d.contains(&1));
                    let chain = ProjectiveChain {
                        r,
                        modulus: q,
                        degrees: degrees.clone(),
                        glues: glues
                            .iter()
                            .map(|s| Matrix::from_fn(r, r, |i, j| Fp::from_u64(u64::from(s[i] == j), q)))
                            .collect(),
                    };
                    chains += 1;
                    let dim = chain.vanishing_sections();
                    let lib = check_admissible(&chain);
                    if lib != Ok(brute) || dim.map(|d| q.pow(d as u32)) != Ok(sections) {
                        mismatches.push((degrees.clone(), glues.clone()));
                    }
                }
            }
        }
    }
    let mut canonical = 0;
    let mut canonical_bad = Vec::new();
    for r in 1..=6 {
        for st in enumerate_strata(r).into_iter().filter(|s| s.j_set.is_empty()) {
            let part = Partition::from_stratum_i(r, &st.i_set).unwrap();
            let desc = ChainBundleDescription::canonical(&part, 61).unwrap();
            if let Some(chain) = desc.projective_chain(61) {
                canonical += 1;
                if check_admissible(&chain) != Ok(true) {
                    canonical_bad.push(part.block_sizes);
                }
            }
        }
    }
    outcome(
        mismatches.is_empty() && canonical_bad.is_empty(),
        format!(
            "{chains} chains over F_3 (r, n <= 3, permutation glues), mismatches {}; {canonical} canonical chains r <= 6, non-admissible {canonical_bad:?}",
            mismatches.len()
        ),
    )
}

fn run_gt(job: &str, args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gt"))
        .args(args)
        .env_remove(gt_core::PRIME_ENV)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn gt");
    child.stdin.take().unwrap().write_all(job.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code(), out.stdout)
}

fn criterion_8() -> Outcome {
    let jobs = [
        r#"{"command":"strata","params":{"r":3}}"#,
        r#"{"command":"roundtrip","params":{"r":3,"block_sizes":[1,2]},"p":7}"#,
        r#"{"command":"inverse","params":{"r":4,"I":[1,3]},"p":61,"precision":8}"#,
        r#"{"command":"invariance","params":{"max_rank":3},"seed":42,"trials":24,"p":13,"precision":12}"#,
        r#"{"command":"admissible","params":{"r":3,"block_sizes":[0,1,2]}}"#,
        r#"{"command":"forward"}"#,
    ];
    let mut differing = Vec::new();
    for (k, job) in jobs.iter().enumerate() {
        let first = run_gt(job, &[]);
        let again = run_gt(job, &[]);
        let compact = run_gt(job, &["--json-indent", "0"]);
        let compact_again = run_gt(job, &["--json-indent", "0"]);
        if first != again || compact != compact_again || first.1.is_empty() {
            differing.push(k);
        }
    }
    outcome(differing.is_empty(), format!("{} jobs run twice each in two layouts, differing {differing:?}", jobs.len()))
}

fn main() {
    let t = Instant::now();
    let reports = trials();
    let trial_time = t.elapsed();
    let criteria: Vec<(u32, &str, Check)> = vec![
        (1, "round-trip identity", Box::new(criterion_1)),
        (2, "strata / chain bijection", Box::new(criterion_2)),
        (3, "action diagonalization", Box::new(criterion_3)),
        (
            4,
            "reparametrization invariance",
            Box::new(|| from_trials(&reports, &["reparam.point", "reparam.square"], "point, square")),
        ),
        (
            5,
            "branch swap",
            Box::new(|| {
                from_trials(&reports, &["swap.relations", "swap.chart", "swap.double"], "relations, chart, double swap")
            }),
        ),
        (
            6,
            "trivialization invariance",
            Box::new(|| {
                from_trials(
                    &reports,
                    &["eta.cond_on_a", "eta.point", "eta.chart", "xi.point", "xi.chart"],
                    "condition on A, point, chart",
                )
            }),
        ),
        (7, "admissibility oracle", Box::new(criterion_7)),
        (8, "CLI determinism", Box::new(criterion_8)),
    ];
    let mut all = true;
    for (k, name, f) in criteria {
        let t = Instant::now();
        let o = f();
        let mut secs = t.elapsed().as_secs_f64();
        if (4..=6).contains(&k) {
            secs += trial_time.as_secs_f64() / 3.0;
        }
        all &= o.passed;
        println!(
            "criterion {k} [{}] {name}: {} ({secs:.2} s)",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
