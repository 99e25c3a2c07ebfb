//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line.
//!
//!   cargo test -p hellmann --test acceptance -- --nocapture --test-threads=1

use std::process::Command;
use std::time::{Duration, Instant};

use hellmann::curves::{curve_discrepancy, energy_curve, oracle_at_coupling};
use hellmann::envelope::{envelope_energy, optimal_tangent};
use hellmann::model::{hydrogenic_sandwich, reduce_scale};
use hellmann::oracle::{count_nodes, solve, verify_bound, DEFAULT_TOL};
use hellmann::par::{map_indexed, Execution};
use hellmann::{BoundDirection, HellmannParams, QuantumNumbers};

const GRID_B: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
const GRID_STATES: [(u32, u32); 4] = [(1, 0), (2, 0), (1, 1), (3, 0)];

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name} ({detail})");
    assert!(ok, "criterion {id} failed: {detail}");
}

fn grid_cases() -> Vec<(f64, QuantumNumbers)> {
    GRID_B
        .iter()
        .flat_map(|&b| {
            GRID_STATES
                .iter()
                .map(move |&(n, l)| (b, QuantumNumbers::new(n, l).unwrap()))
        })
        .collect()
}

fn fig1(b: f64) -> HellmannParams {
    HellmannParams::new(2.0, b, 1.0).unwrap()
}

#[test]
fn criterion_1_hydrogen_exactness() {
    let start = Instant::now();
    let mut cases = Vec::new();
    for &a in &[1.0, 2.0] {
        for big_n in 1..=4u32 {
            for l in 0..big_n {
                cases.push((a, QuantumNumbers::new(big_n - l, l).unwrap()));
            }
        }
    }
    let results = map_indexed(cases.len(), Execution::Parallel, |i| {
        let (a, q) = cases[i];
        let p = HellmannParams::new(a, 0.0, 1.0).unwrap();
        let big_n = f64::from(q.principal());
        let exact = -a * a / (4.0 * big_n * big_n);
        let env = envelope_energy(&p, &q).unwrap().energy;
        let orc = solve(&p, &q, DEFAULT_TOL).unwrap().energy;
        ((env - exact).abs() / exact.abs(), (orc - exact).abs())
    });
    let elapsed = start.elapsed();
    let worst_env = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let worst_orc = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let ok = worst_env <= 1e-10 && worst_orc <= 1e-7 && elapsed < Duration::from_secs(5);
    report(
        1,
        "hydrogen exactness",
        ok,
        &format!(
            "{} states, envelope rel err {worst_env:.2e} <= 1e-10, oracle err {worst_orc:.2e} <= 1e-7, {elapsed:.2?} < 5s",
            cases.len()
        ),
    );
}

#[test]
fn criterion_2_bound_direction() {
    let start = Instant::now();
    let cases = grid_cases();
    let checks = map_indexed(cases.len(), Execution::Parallel, |i| {
        let (b, q) = cases[i];
        verify_bound(&fig1(b), &q, 1e-6).unwrap()
    });
    let elapsed = start.elapsed();
    let failures: Vec<String> = cases
        .iter()
        .zip(&checks)
        .filter(|(_, c)| !c.passed)
        .map(|((b, q), c)| {
            format!(
                "B={b} n={} l={}: bound {} oracle {}",
                q.n(),
                q.ell(),
                c.bound.energy,
                c.oracle
            )
        })
        .collect();
    let directions_ok = cases.iter().zip(&checks).all(|((b, _), c)| {
        c.bound.direction
            == if *b > 0.0 {
                BoundDirection::Lower
            } else {
                BoundDirection::Upper
            }
    });
    let ok = failures.is_empty() && directions_ok && elapsed < Duration::from_secs(30);
    report(
        2,
        "bound direction (upper for B<0, lower for B>0)",
        ok,
        &format!(
            "{} cases, {} violations {:?}, {elapsed:.2?} < 30s",
            cases.len(),
            failures.len(),
            failures
        ),
    );
}

#[test]
fn criterion_3_scaling_law() {
    let start = Instant::now();
    let mut cases = Vec::new();
    for &omega in &[0.5, 1.0, 2.0] {
        for &c in &[0.5, 1.0, 2.0] {
            for &b in &[-1.0, 1.0] {
                cases.push(HellmannParams::with_omega(2.0, b, c, omega).unwrap());
            }
        }
    }
    let q = QuantumNumbers::ground();
    let rel = map_indexed(cases.len(), Execution::Parallel, |i| {
        let p = cases[i];
        let s = reduce_scale(&p);
        let full = solve(&p, &q, DEFAULT_TOL).unwrap().energy;
        let reduced = solve(&s.reduced().unwrap(), &q, DEFAULT_TOL)
            .unwrap()
            .energy;
        (full - s.multiplier * reduced).abs() / full.abs()
    });
    let elapsed = start.elapsed();
    let worst = rel.iter().copied().fold(0.0, f64::max);
    let ok = worst <= 1e-6 && elapsed < Duration::from_secs(20);
    report(
        3,
        "scaling law E(w,A,B,C) = C^2 w E(1, A/wC, B/wC, 1)",
        ok,
        &format!(
            "{} cases, worst rel diff {worst:.2e} <= 1e-6, {elapsed:.2?} < 20s",
            cases.len()
        ),
    );
}

#[test]
fn criterion_4_hydrogenic_sandwich() {
    let cases = grid_cases();
    let outside = map_indexed(cases.len(), Execution::Parallel, |i| {
        let (b, q) = cases[i];
        let p = fig1(b);
        let e = solve(&p, &q, DEFAULT_TOL).unwrap().energy;
        let s = hydrogenic_sandwich(&p, &q);
        (!s.strictly_contains(e)).then(|| {
            format!(
                "B={b} n={} l={}: {e} not in ({}, {})",
                q.n(),
                q.ell(),
                s.lower,
                s.upper
            )
        })
    });
    let bad: Vec<String> = outside.into_iter().flatten().collect();
    report(
        4,
        "oracle strictly inside hydrogenic sandwich",
        bad.is_empty(),
        &format!("{} cases, outside: {bad:?}", cases.len()),
    );
}

#[test]
fn criterion_5_tangent_envelope_equivalence() {
    let cases = grid_cases();
    let mut worst = 0.0f64;
    for &(b, q) in &cases {
        let p = fig1(b);
        let env = envelope_energy(&p, &q).unwrap().energy;
        let tan = optimal_tangent(&p, &q).unwrap();
        assert!(tan.coefficients.b > 0.0);
        worst = worst.max((tan.energy - env).abs() / env.abs());
    }
    report(
        5,
        "optimal tangent equals envelope formula",
        worst <= 1e-8,
        &format!("{} cases, worst rel diff {worst:.2e} <= 1e-8", cases.len()),
    );
}

#[test]
fn criterion_6_parametric_curve() {
    let start = Instant::now();
    let q = QuantumNumbers::ground();
    let mut worst_formula = 0.0f64;
    let mut wrong_side = Vec::new();
    for &b in &[1.0, -1.0] {
        let p = fig1(b);
        let pts = energy_curve(&p, &q, 0.2, 5.0, 50).unwrap();
        assert_eq!(pts.len(), 50);
        for pt in &pts {
            worst_formula = worst_formula.max(curve_discrepancy(&p, &q, pt).unwrap().abs());
        }
        let oracle = map_indexed(pts.len(), Execution::Parallel, |i| {
            oracle_at_coupling(&p, &q, pts[i].v, DEFAULT_TOL)
                .unwrap()
                .energy
        });
        for (pt, e) in pts.iter().zip(&oracle) {
            let dir = if b > 0.0 {
                BoundDirection::Lower
            } else {
                BoundDirection::Upper
            };
            if !dir.holds(pt.energy, *e, DEFAULT_TOL) {
                wrong_side.push(format!("B={b} v={}: curve {} oracle {e}", pt.v, pt.energy));
            }
        }
    }
    let coulomb = energy_curve(&fig1(0.0), &q, 0.2, 5.0, 50).unwrap();
    let worst_flat = coulomb
        .iter()
        .map(|pt| (pt.scaled + 1.0).abs())
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let ok = worst_formula <= 1e-8
        && wrong_side.is_empty()
        && worst_flat <= 1e-12
        && elapsed < Duration::from_secs(60);
    report(
        6,
        "parametric coupling curve",
        ok,
        &format!(
            "100 points, |E - min formula| {worst_formula:.2e} <= 1e-8, wrong side {wrong_side:?}, B=0 scaled dev {worst_flat:.2e} <= 1e-12, {elapsed:.2?} < 60s"
        ),
    );
}

#[test]
fn criterion_7_nodes_and_ordering() {
    let mut problems = Vec::new();
    for &b in &GRID_B {
        let p = fig1(b);
        let mut e = |n, l| {
            let q = QuantumNumbers::new(n, l).unwrap();
            let s = solve(&p, &q, DEFAULT_TOL).unwrap();
            if count_nodes(&s) != (n - 1) as usize {
                problems.push(format!("B={b} n={n} l={l}: {} nodes", count_nodes(&s)));
            }
            s.energy
        };
        let (e10, e20, e30, e11) = (e(1, 0), e(2, 0), e(3, 0), e(1, 1));
        if !(e10 < e20 && e20 < e30) {
            problems.push(format!("B={b}: not increasing in n: {e10} {e20} {e30}"));
        }
        if e10 >= e11 {
            problems.push(format!("B={b}: not increasing in l: {e10} {e11}"));
        }
    }
    report(
        7,
        "node theorem and eigenvalue ordering",
        problems.is_empty(),
        &format!("{} potentials, problems {problems:?}", GRID_B.len()),
    );
}

#[test]
fn criterion_8_sweep_b_reproduction() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hellmann"))
        .args([
            "sweep-b",
            "--b-min",
            "-2",
            "--b-max",
            "2",
            "--steps",
            "81",
            "--with-oracle",
        ])
        .output()
        .expect("run hellmann");
    let elapsed = start.elapsed();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(stdout.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        &headers,
        vec!["B", "bound", "direction", "oracle", "gap", "status"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let num = |s: &str| s.parse::<f64>().unwrap();
    let violations = rows.iter().filter(|r| &r[5] != "ok").count();
    let monotone = rows.windows(2).all(|w| num(&w[1][1]) >= num(&w[0][1]));
    let origin = rows
        .iter()
        .find(|r| num(&r[0]) == 0.0)
        .map(|r| (num(&r[1]), r[2].to_string()));
    let ok = out.status.code() == Some(0)
        && rows.len() == 81
        && violations == 0
        && monotone
        && origin == Some((-1.0, "exact".into()))
        && elapsed < Duration::from_secs(120);
    report(
        8,
        "sweep-b reproduces the B sweep",
        ok,
        &format!(
            "exit {:?}, {} rows, {violations} violations, monotone {monotone}, B=0 row {origin:?}, {elapsed:.2?} < 120s",
            out.status.code(),
            rows.len()
        ),
    );
}
