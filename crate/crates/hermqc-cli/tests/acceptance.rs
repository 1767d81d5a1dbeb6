//! Acceptance suite: one test per release criterion, each printing a single
//! pass/fail line. Tests serialize on a global gate so the wall-clock limits
//! they assert are not distorted by each other.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant};

use hermqc::cosets::{coset_closure, cyclotomic_cosets};
use hermqc::cyclic::generator_from_defining_set;
use hermqc::distance::{dmin_bz, dmin_exhaustive, find_low_weight, structural_bound, thm_lower_bound, DistancePolicy};
use hermqc::field::{Field, SplittingField};
use hermqc::fixtures::{all_rows, FixtureRow, PROPAGATION_BASE, PROPAGATION_TARGETS};
use hermqc::poly::Poly;
use hermqc::qc::{check_thm_1gen, is_self_orthogonal, one_gen_matrix, qc_build, QuasiCyclicCode};
use hermqc::quantum::{gv_kmax, hermitian_construct, min_propagation_steps, DStatus, QuantumParams};

static GATE: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn finish(criterion: u32, ok: bool, detail: String) {
    println!("criterion {criterion}: {} — {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn row(label: &str) -> FixtureRow {
    all_rows()
        .into_iter()
        .find(|r| r.label == label)
        .unwrap_or_else(|| panic!("no stored row labeled {label:?}"))
}

/// Deterministic generator for randomized-property criteria.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

/// Splitting fields are reused across draws; building one is the only
/// expensive step of instance generation.
struct SfCache(BTreeMap<(usize, u64), SplittingField>);

impl SfCache {
    fn new() -> SfCache {
        SfCache(BTreeMap::new())
    }

    fn get(&mut self, field: &Arc<Field>, n: u64) -> &SplittingField {
        self.0
            .entry((field.order(), n))
            .or_insert_with(|| SplittingField::new(field, n).expect("splitting field"))
    }
}

/// Random monic proper divisor of x^n - 1: a uniform subset of cyclotomic
/// cosets, rejecting the full set.
fn random_divisor(sf: &SplittingField, rng: &mut Lcg) -> Poly {
    let n = sf.n();
    let q2 = sf.base().order() as u64;
    loop {
        let mut t = std::collections::BTreeSet::new();
        for c in cyclotomic_cosets(n, q2) {
            if rng.next() % 2 == 0 {
                t.extend(c.members);
            }
        }
        if t.len() == n as usize {
            continue;
        }
        return generator_from_defining_set(sf, &t).expect("divisor from defining set");
    }
}

fn random_poly(field: &Arc<Field>, n: usize, rng: &mut Lcg) -> Poly {
    let q = field.order() as u64;
    Poly::from_coeffs(field, (0..n).map(|_| (rng.next() % q) as u8).collect())
}

/// Draw (n, g1, g2, t) with the built code's dimension in 1..=kcap.
fn random_instance(
    field: &Arc<Field>,
    ns: &[u64],
    kcap: usize,
    cache: &mut SfCache,
    rng: &mut Lcg,
) -> (usize, Poly, Poly, Poly, QuasiCyclicCode) {
    loop {
        let n = ns[(rng.next() as usize) % ns.len()];
        let sf = cache.get(field, n);
        let g1 = random_divisor(sf, rng);
        let g2 = random_divisor(sf, rng);
        let t = random_poly(field, n as usize, rng);
        let code = qc_build(field, n as usize, &g1, &g2, &t).expect("divisors build");
        let k = code.dim();
        if k == 0 || k > kcap {
            continue;
        }
        return (n as usize, g1, g2, t, code);
    }
}

#[test]
fn c01_example1_structure() {
    let _g = serial();
    let r = row("example 1");
    let code = r.build();
    let dim_ok = code.dim() == 62;
    let direct_ok = code.check_dual_containing_direct();
    let qp = hermitian_construct(2, 82, 62, 9, DStatus::Exact, true).expect("construction");
    let quantum_ok = (qp.n, qp.k, qp.d, qp.pure) == (82, 42, 9, true);
    let start = Instant::now();
    let hit = find_low_weight(code.g_mat(), 9, 7, 3000);
    let elapsed = start.elapsed();
    let (weight_ok, found) = match &hit {
        Some((w, v)) => (
            *w == 9 && v.iter().filter(|&&c| c != 0).count() == 9,
            format!("weight-{w} codeword in {elapsed:.2?}"),
        ),
        None => (false, format!("no codeword of weight <= 9 in {elapsed:.2?}")),
    };
    finish(
        1,
        dim_ok && direct_ok && quantum_ok && weight_ok && elapsed < Duration::from_secs(60),
        format!(
            "dim {} (want 62), direct {direct_ok}, derived [[{},{},{}]]_2, {found}",
            code.dim(),
            qp.n,
            qp.k,
            qp.d
        ),
    );
}

#[test]
fn c02_generator_synthesis_convention() {
    let _g = serial();
    let field = Field::with_order(4).unwrap();
    let sf = SplittingField::new(&field, 41).expect("splitting field");
    let g1 = generator_from_defining_set(&sf, &coset_closure(41, 4, &[1])).unwrap();
    let g3 = generator_from_defining_set(&sf, &coset_closure(41, 4, &[3])).unwrap();
    let ok = g1.format() == "10320102301" && g3.format() == "12^{3}1312^{3}1";
    finish(
        2,
        ok,
        format!("C1 -> {:?}, C3 -> {:?}", g1.format(), g3.format()),
    );
}

#[test]
fn c03_small_exact_distances() {
    let _g = serial();
    let mut details = Vec::new();
    let mut ok = true;
    for (label, want, exhaustive) in [
        ("[10,7,4]_9", 4usize, true),
        ("[8,5,4]_25", 4, true),
        ("[14,8,6]_16", 6, false),
    ] {
        let code = row(label).build();
        let start = Instant::now();
        let res = if exhaustive {
            dmin_exhaustive(code.g_mat(), 30_000_000)
        } else {
            dmin_bz(code.g_mat(), 200_000_000)
        }
        .expect("distance engine");
        let elapsed = start.elapsed();
        let exact = res.lower == res.upper;
        let this_ok = exact && res.upper == want && elapsed < Duration::from_secs(120);
        ok &= this_ok;
        details.push(format!(
            "{label}: d in [{}, {}] want {want} in {elapsed:.2?}",
            res.lower, res.upper
        ));
    }
    finish(3, ok, details.join("; "));
}

#[test]
fn c04_all_fixture_rows_dual_containing() {
    let _g = serial();
    let mut ok = true;
    let mut worst = Duration::ZERO;
    let mut failures = Vec::new();
    let rows = all_rows();
    for r in &rows {
        let code = r.build();
        let start = Instant::now();
        let dc = code.check_dual_containing_direct();
        let elapsed = start.elapsed();
        worst = worst.max(elapsed);
        if !dc || elapsed >= Duration::from_secs(10) {
            ok = false;
            failures.push(format!("{} ({dc}, {elapsed:.2?})", r.label));
        }
    }
    finish(
        4,
        ok,
        format!(
            "{} rows all dual-containing, worst row {worst:.2?}{}",
            rows.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failures.join(", "))
            }
        ),
    );
}

#[test]
fn c05_structural_bound_on_examples_5_and_6() {
    let _g = serial();
    let mut ok = true;
    let mut details = Vec::new();
    for (label, want) in [("example 5", 6u64), ("example 6", 5u64)] {
        let r = row(label);
        let field = r.field();
        let (g1, g2, t) = r.polys(&field);
        let start = Instant::now();
        let rep = structural_bound(&field, r.n, &g1, &g2, &t, DistancePolicy::default())
            .expect("structural bound");
        let elapsed = start.elapsed();
        let contains = rep.lower_lo <= want && want <= rep.lower_hi;
        let this_ok = contains && elapsed < Duration::from_secs(4 * 3600);
        ok &= this_ok;
        details.push(if rep.lower_lo == rep.lower_hi {
            format!("{label}: bound {} want {want} in {elapsed:.2?}", rep.lower_lo)
        } else {
            format!(
                "{label}: bound interval [{}, {}] want {want} in {elapsed:.2?}",
                rep.lower_lo, rep.lower_hi
            )
        });
    }
    finish(5, ok, details.join("; "));
}

#[test]
fn c06_structural_bound_validity() {
    let _g = serial();
    let start = Instant::now();
    let gf4 = Field::with_order(4).unwrap();
    let gf9 = Field::with_order(9).unwrap();
    let mut cache = SfCache::new();
    let mut rng = Lcg(0x5eed_c6);
    let mut violations = Vec::new();
    for i in 0..200u32 {
        let (field, ns, kcap): (&Arc<Field>, &[u64], usize) = if i % 2 == 0 {
            (&gf4, &[3, 5, 7, 9, 11], 12)
        } else {
            (&gf9, &[4, 5, 7, 8, 10, 11], 8)
        };
        let (n, g1, g2, t, code) = random_instance(field, ns, kcap, &mut cache, &mut rng);
        let bound = thm_lower_bound(field, n, &g1, &g2, &t).expect("small constituents resolve");
        let d = dmin_exhaustive(code.g_mat(), 200_000_000).expect("within budget").upper;
        if bound > d as u64 {
            violations.push(format!(
                "n={n} q2={} bound {bound} > d {d} (g1={}, g2={}, t={})",
                field.order(),
                g1.format(),
                g2.format(),
                t.format()
            ));
        }
    }
    let elapsed = start.elapsed();
    finish(
        6,
        violations.is_empty() && elapsed < Duration::from_secs(600),
        format!(
            "200 instances, {} violations in {elapsed:.2?}{}",
            violations.len(),
            if violations.is_empty() {
                String::new()
            } else {
                format!("; first: {}", violations[0])
            }
        ),
    );
}

#[test]
fn c07_theorem_soundness() {
    let _g = serial();
    let start = Instant::now();
    let gf4 = Field::with_order(4).unwrap();
    let gf9 = Field::with_order(9).unwrap();
    let mut cache = SfCache::new();
    let mut rng = Lcg(0x5eed_c7);
    let mut violations = Vec::new();
    for i in 0..500u32 {
        let (field, ns): (&Arc<Field>, &[u64]) = if i % 2 == 0 {
            (&gf4, &[3, 5, 7, 9, 11, 13, 15])
        } else {
            (&gf9, &[4, 5, 7, 8, 10, 11, 13, 14])
        };
        let (n, _, _, _, code) = random_instance(field, ns, usize::MAX, &mut cache, &mut rng);
        let direct = code.check_dual_containing_direct();
        if code.check_thm_main() && !direct {
            violations.push(format!("main without direct at n={n} q2={}", field.order()));
        }
        if code.check_thm_extended() && !direct {
            violations.push(format!("extended without direct at n={n} q2={}", field.order()));
        }
    }
    for i in 0..500u32 {
        let (field, ns): (&Arc<Field>, &[u64]) = if i % 2 == 0 {
            (&gf4, &[3, 5, 7, 9, 11, 13, 15])
        } else {
            (&gf9, &[4, 5, 7, 8, 10, 11, 13, 14])
        };
        let n = ns[(rng.next() as usize) % ns.len()];
        let g = random_divisor(cache.get(field, n), &mut rng);
        let f = random_poly(field, n as usize, &mut rng);
        let claimed = check_thm_1gen(&f, &g, n as usize).expect("g divides");
        let oracle = is_self_orthogonal(&one_gen_matrix(field, n as usize, &f, &g));
        if claimed != oracle {
            violations.push(format!(
                "one-generator mismatch at n={n} q2={}: criterion {claimed}, oracle {oracle}",
                field.order()
            ));
        }
    }
    let elapsed = start.elapsed();
    finish(
        7,
        violations.is_empty() && elapsed < Duration::from_secs(900),
        format!(
            "500 two-generator + 500 one-generator instances, {} violations in {elapsed:.2?}{}",
            violations.len(),
            if violations.is_empty() {
                String::new()
            } else {
                format!("; first: {}", violations[0])
            }
        ),
    );
}

#[test]
fn c08_gv_verdicts() {
    let _g = serial();
    let mut checked = 0;
    let mut worst = Duration::ZERO;
    let mut failures = Vec::new();
    for r in all_rows() {
        if r.table == "examples" {
            continue;
        }
        let Some([qn, qk, qd]) = r.claimed_quantum else { continue };
        checked += 1;
        let q = r.field().q();
        let start = Instant::now();
        let kmax = gv_kmax(qn, qd, q);
        let elapsed = start.elapsed();
        worst = worst.max(elapsed);
        if qk < kmax || elapsed >= Duration::from_secs(1) {
            failures.push(format!("{}: k {qk} < k_GV {kmax} ({elapsed:.2?})", r.label));
        }
    }
    finish(
        8,
        failures.is_empty() && checked > 0,
        format!(
            "{checked} quantum rows beat the GV threshold, worst {worst:.2?}{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failures.join(", "))
            }
        ),
    );
}

#[test]
fn c09_propagation_closure() {
    let _g = serial();
    let base: Vec<QuantumParams> = PROPAGATION_BASE
        .iter()
        .map(|&[n, k, d]| QuantumParams { q: 2, n, k, d, d_status: DStatus::Exact, pure: true })
        .collect();
    let start = Instant::now();
    let mut unreachable = Vec::new();
    for &[n, k, d] in PROPAGATION_TARGETS.iter() {
        let target = QuantumParams { q: 2, n, k, d, d_status: DStatus::Exact, pure: true };
        if min_propagation_steps(&base, &target, 3).is_none() {
            unreachable.push(format!("[[{n},{k},{d}]]"));
        }
    }
    let elapsed = start.elapsed();
    finish(
        9,
        unreachable.is_empty() && elapsed < Duration::from_secs(1),
        format!(
            "{} targets reachable in {elapsed:.2?}{}",
            PROPAGATION_TARGETS.len(),
            if unreachable.is_empty() {
                String::new()
            } else {
                format!("; unreachable: {}", unreachable.join(", "))
            }
        ),
    );
}

#[test]
fn c10_determinism() {
    let _g = serial();
    let dir = tempfile::tempdir().expect("tempdir");
    let out = |name: &str| dir.path().join(name);
    let run = |path: &std::path::Path| {
        let status = Command::new(env!("CARGO_BIN_EXE_hermqc"))
            .args([
                "search", "--q2", "4", "--n", "5", "--t1", "1", "--g2", "1", "--criterion",
                "main", "--trials", "1000", "--seed", "42", "--budget-secs", "1", "--out",
            ])
            .arg(path)
            .status()
            .expect("binary runs");
        assert!(status.success(), "search exited with {status}");
    };
    run(&out("a.jsonl"));
    run(&out("b.jsonl"));
    let a = std::fs::read(out("a.jsonl")).unwrap();
    let b = std::fs::read(out("b.jsonl")).unwrap();
    let replay_ok = !a.is_empty() && a == b;

    let gf4 = Field::with_order(4).unwrap();
    let gf9 = Field::with_order(9).unwrap();
    let mut cache = SfCache::new();
    let mut rng = Lcg(0x5eed_10);
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("single-thread pool");
    let mut agree = true;
    for i in 0..50u32 {
        let (field, ns, kcap): (&Arc<Field>, &[u64], usize) = if i % 2 == 0 {
            (&gf4, &[3, 5, 7, 9], 10)
        } else {
            (&gf9, &[4, 5, 7, 8], 7)
        };
        let (_, _, _, _, code) = random_instance(field, ns, kcap, &mut cache, &mut rng);
        let parallel = dmin_exhaustive(code.g_mat(), 30_000_000).expect("fits budget");
        let serial_run = single
            .install(|| dmin_exhaustive(code.g_mat(), 30_000_000))
            .expect("fits budget");
        agree &= parallel == serial_run;
    }
    finish(
        10,
        replay_ok && agree,
        format!(
            "two seeded search runs byte-identical ({} bytes); 50 parallel/single enumeration agreements: {agree}",
            a.len()
        ),
    );
}
