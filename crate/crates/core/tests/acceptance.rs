//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line before asserting.

use std::time::{Duration, Instant};

use niep3::bounds::{bound_constants, canonical_completion, classify_region_q, classify_region_r, omega1_range};
use niep3::oracle::{necessity_trial, omega_scan, random_realizable_spectrum, trial_rng, ScanConfig};
use niep3::{
    char_poly, check, check_pair, construct, construct_pair, implication_audit, range_pair, realizable,
    realizable_pair, solve_cubic, spectrum_distance, verify, DiagonalTriple, Matrix3, MatrixClass, PairDiagonal,
    PairSpectrum, RegionLabel, Spectrum, Tolerance,
};
use rand::Rng;

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn report(id: &str, what: &str, ok: bool, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {what}: {detail}");
}

fn real(a: f64, b: f64, c: f64) -> Spectrum<f64> {
    Spectrum::real(a, b, c).unwrap()
}

fn diag(a: f64, b: f64, c: f64) -> DiagonalTriple<f64> {
    DiagonalTriple::new(a, b, c).unwrap()
}

fn classes_for(complex: bool) -> Vec<MatrixClass> {
    MatrixClass::ALL.into_iter().filter(|c| !complex || c.admits_complex()).collect()
}

#[test]
fn ac1_remark_regression() {
    let start = Instant::now();
    let s = real(1.0, 0.5, 0.25);
    let d = diag(0.8, 0.75, 0.2);
    let g = check(MatrixClass::General, &s, &d, &tol()).unwrap();
    let y = check(MatrixClass::Symmetric, &s, &d, &tol()).unwrap();
    let elapsed = start.elapsed();

    let e2_gap = g.item("iv").unwrap().slack;
    let sum_gap = y.item("iii").unwrap().slack;
    let e2_ok = (e2_gap - 7.0 / 100.0).abs() <= 1e-12;
    let sum_ok = (sum_gap + 1.0 / 20.0).abs() <= 1e-12;
    let verdicts = g.overall && !y.overall && y.failed_labels() == vec!["iii"];
    let fast = elapsed < Duration::from_millis(1);
    let ok = e2_ok && sum_ok && verdicts && fast;
    report(
        "AC1",
        "remark regression",
        ok,
        format!(
            "e2 gap {e2_gap:.17} (target 0.07, exact value 7/200), sum gap {sum_gap:.17}, verdicts {verdicts}, {elapsed:?}"
        ),
    );
    assert!(sum_ok && verdicts && fast);
    assert!(e2_ok, "e2(Ω) - e2(Λ) = {e2_gap}, exactly 3/5 + 4/25 + 3/20 - 7/8 = 7/200, not 7/100");
}

struct RoundTrip {
    instances: usize,
    worst_residual: f64,
    worst_certificate: f64,
    failures: Vec<String>,
}

fn round_trip(class: MatrixClass, complex: bool, n: usize, seed: u64) -> RoundTrip {
    let t = tol();
    let mut out = RoundTrip { instances: 0, worst_residual: 0.0, worst_certificate: 0.0, failures: Vec::new() };
    for i in 0..n {
        let mut rng = trial_rng(seed, i as u64);
        let s: Spectrum<f64> = random_realizable_spectrum(class, complex, &mut rng);
        let range = omega1_range(class, &s, &t).unwrap();
        assert!(!range.empty, "{class} {s:?}");
        let w1 = if range.hi > range.lo { rng.random_range(range.lo..=range.hi) } else { range.lo };
        let d = match canonical_completion(class, &s, w1, &t) {
            Ok(d) => d,
            Err(e) => {
                out.failures.push(format!("completion {s:?} w1={w1}: {e}"));
                continue;
            }
        };
        let m = match construct(class, &s, &d, &t) {
            Ok(r) => r.matrix,
            Err(e) => {
                out.failures.push(format!("construct {s:?} {d:?}: {e}"));
                continue;
            }
        };
        out.instances += 1;
        let v = verify(&m, Some(&s), Some(&d), &t);
        let scale = s.scale();
        let l1 = s.lambda1();
        let rows = m.row_sums().map(|r| (r - l1).abs());
        let cols = m.col_sums().map(|c| (c - l1).abs());
        let certificate = match class {
            MatrixClass::General => 0.0,
            MatrixClass::Symmetric => m.max_abs_diff(&m.transpose()),
            MatrixClass::Stochastic => rows.into_iter().fold(0.0, f64::max),
            MatrixClass::SymmetricStochastic => {
                rows.into_iter().fold(m.max_abs_diff(&m.transpose()), f64::max)
            }
            MatrixClass::DoublyStochastic => rows.into_iter().chain(cols).fold(0.0, f64::max),
        } / scale;
        out.worst_residual = out.worst_residual.max(v.eigen_residual);
        out.worst_certificate = out.worst_certificate.max(certificate);
        let diagonal_exact = m.diagonal() == d.to_array();
        if v.eigen_residual > 1e-8 || certificate > 1e-12 || !diagonal_exact || m.min_entry() < 0.0 {
            out.failures.push(format!(
                "{s:?} {d:?}: residual {:e}, certificate {certificate:e}, diagonal exact {diagonal_exact}, min {:e}",
                v.eigen_residual,
                m.min_entry()
            ));
        }
    }
    out
}

#[test]
fn ac2_round_trip_construction() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut failures = 0;
    for complex in [false, true] {
        for class in classes_for(complex) {
            let r = round_trip(class, complex, 10_000, 2024);
            failures += r.failures.len();
            for f in r.failures.iter().take(3) {
                println!("  {class} {}: {f}", if complex { "complex" } else { "real" });
            }
            lines.push(format!(
                "{class}/{}: {} built, residual {:.1e}, certificate {:.1e}, {} failures",
                if complex { "complex" } else { "real" },
                r.instances,
                r.worst_residual,
                r.worst_certificate,
                r.failures.len()
            ));
        }
    }
    let elapsed = start.elapsed();
    let ok = failures == 0 && elapsed < Duration::from_secs(10);
    report("AC2", "round-trip construction", ok, format!("{failures} failures in {elapsed:?}"));
    for l in lines {
        println!("  {l}");
    }
    assert_eq!(failures, 0);
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
}

#[test]
fn ac3_necessity_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for class in MatrixClass::ALL {
        for seed in 0..10 {
            let cfg = ScanConfig { trials: 10_000, seed, ..Default::default() };
            let out = necessity_trial::<f64>(class, &cfg, &tol());
            assert_eq!(out.trials, 10_000);
            failures.extend(out.failures.into_iter().map(|f| (class, seed, f)));
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(30);
    report(
        "AC3",
        "necessity oracle",
        ok,
        format!("{} counterexamples over 5 classes x 10 seeds x 10^4 trials in {elapsed:?}", failures.len()),
    );
    for (class, seed, f) in failures.iter().take(5) {
        println!("  {class} seed {seed} trial {}: {:?} {:?} fails {:?}", f.trial, f.spectrum, f.diagonal, f.failed);
    }
    assert!(failures.is_empty());
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
}

#[test]
fn ac4_range_tightness() {
    let start = Instant::now();
    let t = tol();
    let cfg = ScanConfig { grid_n: 200, ..Default::default() };
    let mut violations = Vec::new();
    let mut spectra = 0;
    for complex in [false, true] {
        for class in classes_for(complex) {
            for i in 0..200u64 {
                let mut rng = trial_rng(99, i);
                let s: Spectrum<f64> = random_realizable_spectrum(class, complex, &mut rng);
                spectra += 1;
                let r = omega1_range(class, &s, &t).unwrap();
                let step = 0.01 * s.scale();
                for w1 in [r.hi + step, r.lo - step] {
                    let hit = omega_scan(class, &s, w1, &cfg, &t).unwrap();
                    if hit.feasible {
                        violations.push(format!("{class} {s:?}: feasible at {w1} outside [{}, {}]", r.lo, r.hi));
                    }
                }
                for w1 in [r.lo, r.midpoint(), r.hi] {
                    let pass = canonical_completion(class, &s, w1, &t)
                        .and_then(|d| check(class, &s, &d, &t))
                        .map(|rep| rep.overall);
                    if !matches!(pass, Ok(true)) {
                        violations.push(format!("{class} {s:?}: completion at {w1} gives {pass:?}"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = violations.is_empty() && elapsed < Duration::from_secs(60);
    report("AC4", "range tightness", ok, format!("{} violations over {spectra} spectra in {elapsed:?}", violations.len()));
    for v in violations.iter().take(5) {
        println!("  {v}");
    }
    assert!(violations.is_empty());
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
}

/// 200x200 grid over R with λ1 = 1.
fn region_grid() -> Vec<Spectrum<f64>> {
    let n = 200;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let l2 = -0.5 + 1.5 * i as f64 / (n - 1) as f64;
        let lo3 = -(2.0 + l2) / 3.0;
        for j in 0..n {
            let l3 = lo3 + (l2 - lo3) * j as f64 / (n - 1) as f64;
            out.push(Spectrum::RealTriple { l1: 1.0, l2, l3: l3.min(l2) });
        }
    }
    out
}

#[test]
fn ac5_region_labels() {
    let t = tol();
    let mut r_disagree = Vec::new();
    let mut q_disagree = Vec::new();
    let (mut r_banded, mut q_banded) = (0, 0);
    let grid = region_grid();
    for s in &grid {
        let k = bound_constants(s, &t);
        let consts = [(RegionLabel::R1, k.l1), (RegionLabel::R2, k.l2), (RegionLabel::R3, k.l3)];
        let defined: Vec<(RegionLabel, f64)> = consts.iter().filter_map(|&(r, c)| c.map(|c| (r, c))).collect();
        let best = defined.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let label = classify_region_r(s, &t).unwrap();
        let chosen = defined.iter().find(|p| p.0 == label).map(|p| p.1);
        let runner_up = defined.iter().map(|p| p.1).filter(|&c| c < best - 1e-9).fold(f64::NEG_INFINITY, f64::max);
        if best - runner_up < 1e-6 || defined.iter().filter(|p| p.1 >= best - 1e-6).count() > 1 {
            r_banded += 1;
            if chosen.is_none_or(|c| c < best - 1e-6) {
                r_disagree.push(format!("{s:?}: {label:?} chosen, constants {consts:?}"));
            }
        } else if chosen.is_none_or(|c| c < best - 1e-9) {
            r_disagree.push(format!("{s:?}: {label:?} chosen, constants {consts:?}"));
        }

        let [e1, _, _] = niep3::elementary_symmetrics(s);
        let u2 = k.u2.unwrap();
        let q = classify_region_q(s, &t).unwrap();
        let expect = if e1 <= u2 { RegionLabel::Q1 } else { RegionLabel::Q2 };
        if (e1 - u2).abs() < 1e-6 {
            q_banded += 1;
        } else if q != expect {
            q_disagree.push(format!("{s:?}: {q:?}, e1 {e1}, U2 {u2}"));
        }
    }
    let ok = r_disagree.is_empty() && q_disagree.is_empty();
    report(
        "AC5",
        "region label audits",
        ok,
        format!(
            "{} points, R disagreements {} ({r_banded} on ties), Q disagreements {} ({q_banded} in band)",
            grid.len(),
            r_disagree.len(),
            q_disagree.len()
        ),
    );
    for d in r_disagree.iter().chain(&q_disagree).take(5) {
        println!("  {d}");
    }
    assert!(ok);
}

#[test]
fn ac6_realizability_boundary() {
    let t = tol();
    let n = 200;
    // grid extends past R into unrealizable spectra
    let mut grid = Vec::with_capacity(n * n);
    for i in 0..n {
        let l2 = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let l3 = -1.0 + (l2 + 1.0) * j as f64 / (n - 1) as f64;
            grid.push(Spectrum::RealTriple { l1: 1.0, l2, l3: l3.min(l2) });
        }
    }
    let classes = [MatrixClass::SymmetricStochastic, MatrixClass::DoublyStochastic];
    let mut mismatches = Vec::new();
    let (mut yes, mut no) = (0, 0);
    for s in &grid {
        let Spectrum::RealTriple { l1, l2, l3 } = *s else { unreachable!() };
        let pm = 2.0 * l1 + l2 + 3.0 * l3;
        if pm.abs() <= 1e-12 {
            continue;
        }
        if pm > 0.0 {
            yes += 1;
        } else {
            no += 1;
        }
        for class in classes {
            let verdict = realizable(class, s, &t).unwrap().satisfied;
            let nonempty = !omega1_range(class, s, &t).unwrap().empty;
            if verdict != (pm > 0.0) || nonempty != verdict {
                mismatches.push(format!("{class} {s:?}: sign {pm}, realizable {verdict}, range nonempty {nonempty}"));
            }
        }
    }

    // full sweeps on 50 points spread over the grid, clear of the boundary
    let candidates: Vec<&Spectrum<f64>> = grid
        .iter()
        .filter(|s| {
            let Spectrum::RealTriple { l1, l2, l3 } = **s else { unreachable!() };
            (2.0 * l1 + l2 + 3.0 * l3).abs() > 0.05
        })
        .collect();
    let stride = candidates.len() / 50;
    let cfg = ScanConfig { grid_n: 200, ..Default::default() };
    let sweep_n = 2000;
    let mut swept = 0;
    for s in candidates.iter().step_by(stride).take(50) {
        swept += 1;
        let [e1, _, _] = niep3::elementary_symmetrics(*s);
        for class in classes {
            let verdict = realizable(class, s, &t).unwrap().satisfied;
            let found = e1 >= 0.0
                && (0..sweep_n).any(|k| {
                    let w1 = e1 * k as f64 / (sweep_n - 1) as f64;
                    omega_scan(class, s, w1, &cfg, &t).unwrap().feasible
                });
            if found != verdict {
                mismatches.push(format!("{class} {s:?}: sweep {found}, realizable {verdict}"));
            }
        }
    }
    let ok = mismatches.is_empty();
    report(
        "AC6",
        "realizability boundary",
        ok,
        format!("{yes} realizable / {no} unrealizable grid points, {swept} swept, {} mismatches", mismatches.len()),
    );
    for m in mismatches.iter().take(5) {
        println!("  {m}");
    }
    assert!(ok);
}

#[test]
fn ac7_cubic_solver() {
    let cyclic = Matrix3([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
    let c = char_poly(&cyclic);
    let got = solve_cubic(&c);
    let want = Spectrum::ComplexPair { a: 1.0, b: -0.5, c: 3f64.sqrt() / 2.0 };
    let kind_ok = matches!(got, Spectrum::ComplexPair { .. });
    let err = spectrum_distance(&got, &want);
    let residual = got.roots().iter().map(|z| c.eval_complex(*z).norm()).fold(0.0, f64::max);

    let s = real(1.0, 1.0, 1.0);
    let m = construct(MatrixClass::General, &s, &diag(1.0, 1.0, 1.0), &tol()).unwrap().matrix;
    let triple = spectrum_distance(&solve_cubic(&char_poly(&m)), &s);

    let ok = kind_ok && err <= 1e-10 && residual <= 1e-10 && triple <= 1e-6;
    report(
        "AC7",
        "cubic solver",
        ok,
        format!("x^3-1 -> {got:?} (error {err:.1e}, residual {residual:.1e}); triple root error {triple:.1e}"),
    );
    assert!(ok);
}

fn random_pair(rng: &mut impl Rng, complex: bool) -> (Spectrum<f64>, DiagonalTriple<f64>) {
    let s: Spectrum<f64> = if complex {
        Spectrum::complex(rng.random_range(0.0..2.0), rng.random_range(-1.0..1.0), rng.random_range(0.01..1.0))
            .unwrap()
    } else {
        Spectrum::real(rng.random_range(-1.0..2.0), rng.random_range(-1.0..2.0), rng.random_range(-1.0..2.0))
            .unwrap()
    };
    let [e1, _, _] = niep3::elementary_symmetrics(&s);
    let d = match rng.random_range(0..4) {
        0 => diag(rng.random_range(-0.2..2.0), rng.random_range(-0.2..2.0), rng.random_range(-0.2..2.0)),
        k => {
            let class = [MatrixClass::SymmetricStochastic, MatrixClass::DoublyStochastic, MatrixClass::General][k - 1];
            let class = if complex && class == MatrixClass::SymmetricStochastic { MatrixClass::DoublyStochastic } else { class };
            let r = omega1_range(class, &s, &tol()).unwrap();
            let w1 = if r.empty || r.hi <= r.lo { r.lo } else { rng.random_range(r.lo..=r.hi) };
            canonical_completion(class, &s, w1, &tol()).unwrap_or_else(|_| {
                let w2 = rng.random_range(0.0..=e1.abs());
                diag(w1, w2, e1 - w1 - w2)
            })
        }
    };
    (s, d)
}

#[test]
fn ac8_nesting_and_equality() {
    let t = tol();
    let mut violations = Vec::new();
    let mut passes = [0usize; 5];
    for i in 0..10_000u64 {
        let mut rng = trial_rng(7, i);
        let complex = i % 4 == 3;
        let (s, d) = random_pair(&mut rng, complex);
        let pass = |c: MatrixClass| check(c, &s, &d, &t).map(|r| r.overall).unwrap_or(false);
        let [g, y, st, sds, ds] = MatrixClass::ALL.map(pass);
        for (k, p) in [g, y, st, sds, ds].into_iter().enumerate() {
            passes[k] += p as usize;
        }
        let nested = (!sds || ds) && (!ds || st) && (!st || g) && (!y || g) && g == st;
        let audit = complex || implication_audit(&s, &d, &t).unwrap().implication_respected;
        if !nested || !audit {
            violations.push(format!("{s:?} {d:?}: G {g} Sym {y} St {st} SDS {sds} DS {ds}, audit {audit}"));
        }
    }
    let ok = violations.is_empty();
    report(
        "AC8",
        "nesting and equality of condition sets",
        ok,
        format!(
            "10000 pairs, passes G/Sym/St/SDS/DS = {passes:?}, {} violations",
            violations.len()
        ),
    );
    for v in violations.iter().take(5) {
        println!("  {v}");
    }
    assert!(ok);
    assert!(passes.iter().all(|&p| p > 100), "nesting sample too thin: {passes:?}");
}

#[test]
fn ac9_two_by_two() {
    let t = tol();
    let mut problems = Vec::new();
    for i in 0..100 {
        let x = -1.5 + 2.5 * i as f64 / 99.0;
        let s = PairSpectrum::new(1.0, x).unwrap();
        let (l1, l2) = (s.l1(), s.l2());
        let sum = l1 + l2;
        let realizable_expected = sum >= 0.0;
        for class in MatrixClass::ALL {
            let verdict = realizable_pair(class, &s, &t).satisfied;
            let r = range_pair(class, &s, &t);
            if verdict != realizable_expected || r.empty == verdict {
                problems.push(format!("{class} (1,{x}): realizable {verdict}, range empty {}", r.empty));
                continue;
            }
            if !verdict {
                continue;
            }
            let sds_like = matches!(class, MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic);
            if sds_like && (r.lo != sum / 2.0 || r.hi != sum / 2.0) {
                problems.push(format!("{class} (1,{x}): range {r:?} is not the point (λ1+λ2)/2"));
            }
            if !sds_like && ((r.lo - sum / 2.0).abs() > 1e-15 || (r.hi - sum.min(l1)).abs() > 1e-15) {
                problems.push(format!("{class} (1,{x}): range {r:?}"));
            }
            for w1 in [r.lo, r.midpoint(), r.hi] {
                let d = PairDiagonal::new(w1, sum - w1).unwrap();
                // the stated conditions, evaluated independently of the library
                let expected = if sds_like {
                    d.w2() >= 0.0 && d.w1() == d.w2()
                } else {
                    d.w2() >= -1e-12 && d.w1() * d.w2() - l1 * l2 >= -1e-12
                };
                let rep = check_pair(class, &s, &d, &t);
                if rep.overall != expected {
                    problems.push(format!("{class} (1,{x}) {d:?}: check {} expected {expected}", rep.overall));
                }
                match construct_pair(class, &s, &d, &t) {
                    Ok(m) => {
                        let (a, b) = m.real_eigenvalues().unwrap();
                        let diag_ok = m.0[0][0] == d.w1() && m.0[1][1] == d.w2();
                        let eig_err = (a - l1).abs().max((b - l2).abs());
                        let nonneg = m.0.iter().flatten().all(|&v| v >= 0.0);
                        if eig_err > 1e-7 || !nonneg || !diag_ok {
                            problems.push(format!("{class} (1,{x}): {m:?} eig err {eig_err:e}"));
                        }
                    }
                    Err(e) => problems.push(format!("{class} (1,{x}) {d:?}: {e}")),
                }
            }
            // an off-range diagonal must fail
            let above = PairDiagonal::new(r.hi + 0.05, sum - r.hi - 0.05).unwrap();
            if check_pair(class, &s, &above, &t).overall {
                problems.push(format!("{class} (1,{x}): {above:?} above the range passes"));
            }
        }
    }
    let ok = problems.is_empty();
    report("AC9", "2x2 proposition", ok, format!("100-point sweep, {} problems", problems.len()));
    for p in problems.iter().take(5) {
        println!("  {p}");
    }
    assert!(ok);
}
