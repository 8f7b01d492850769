//! Brute-force evidence for the closed-form results: random matrices of each class
//! for the necessity direction, and grid scans over diagonals for range tightness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use crate::bounds::{canonical_completion, omega1_range, sds_completion, Interval};
use crate::conditions::check;
use crate::eigen::{char_poly, solve_cubic_detailed};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectra::{DiagonalTriple, ElementarySymmetric, Matrix3, MatrixClass, Spectrum, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub grid_n: usize,
    pub seed: u64,
    pub trials: usize,
}

impl ScanConfig {
    pub fn new(grid_n: usize, seed: u64, trials: usize) -> Result<Self> {
        if grid_n < 2 {
            return Err(Error::InvalidArgument(format!("grid must have at least 2 points, got {grid_n}")));
        }
        Ok(ScanConfig { grid_n, seed, trials })
    }
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { grid_n: 200, seed: 0, trials: 10_000 }
    }
}

/// Independent stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn simplex_point<R: Rng + ?Sized, const N: usize>(rng: &mut R) -> [f64; N] {
    let mut w = [0.0; N];
    for x in &mut w {
        *x = Exp1.sample(rng);
    }
    let total: f64 = w.iter().sum();
    w.map(|x| x / total)
}

/// Samples a matrix of `class` whose entries (or row sums) are on the order of `scale`.
pub fn random_matrix_with<T: Scalar, R: Rng + ?Sized>(class: MatrixClass, scale: T, rng: &mut R) -> Matrix3<T> {
    let t = scale.to_f64().unwrap_or(1.0);
    let rows: [[f64; 3]; 3] = match class {
        MatrixClass::General => [[(); 3]; 3].map(|r| r.map(|_| rng.random::<f64>() * t)),
        MatrixClass::Symmetric => {
            let g: [[f64; 3]; 3] = [[(); 3]; 3].map(|r| r.map(|_| rng.random::<f64>() * t));
            [0, 1, 2].map(|i| [0, 1, 2].map(|j| 0.5 * (g[i][j] + g[j][i])))
        }
        MatrixClass::Stochastic => [(); 3].map(|_| simplex_point::<_, 3>(rng).map(|x| x * t)),
        MatrixClass::DoublyStochastic => birkhoff(rng, t),
        MatrixClass::SymmetricStochastic => {
            let d = birkhoff(rng, t);
            [0, 1, 2].map(|i| [0, 1, 2].map(|j| 0.5 * (d[i][j] + d[j][i])))
        }
    };
    Matrix3(rows.map(|r| r.map(T::lit)))
}

fn birkhoff<R: Rng + ?Sized>(rng: &mut R, t: f64) -> [[f64; 3]; 3] {
    let w = simplex_point::<_, 6>(rng);
    let mut m = [[0.0; 3]; 3];
    for (k, perm) in PERMUTATIONS.iter().enumerate() {
        for (i, &j) in perm.iter().enumerate() {
            m[i][j] += w[k] * t;
        }
    }
    m
}

pub fn random_matrix<T: Scalar>(class: MatrixClass, scale: T, seed: u64) -> Matrix3<T> {
    random_matrix_with(class, scale, &mut trial_rng(seed, 0))
}

/// A random spectrum realizable for `class`, with `λ1` drawn from `[0.5, 4)`.
///
/// Complex pairs keep `c ≥ 1e-3·λ1` so they stay distinguishable from double real roots.
pub fn random_realizable_spectrum<T: Scalar, R: Rng + ?Sized>(class: MatrixClass, complex: bool, rng: &mut R) -> Spectrum<T> {
    let l1 = rng.random_range(0.5..4.0);
    if complex {
        let b = rng.random_range(-0.5 * l1..l1);
        let cmax = (l1 - b) / 3f64.sqrt();
        let c = rng.random_range((1e-3 * l1).min(cmax)..=cmax);
        return Spectrum::complex(T::lit(l1), T::lit(b), T::lit(c)).expect("finite");
    }
    loop {
        let mut x = rng.random_range(-l1..=l1);
        let mut y = rng.random_range(-l1..=l1);
        if x < y {
            std::mem::swap(&mut x, &mut y);
        }
        let ok = match class {
            MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic => 2.0 * l1 + x + 3.0 * y >= 0.0,
            _ => l1 + y >= 0.0 && l1 + x + y >= 0.0,
        };
        if ok {
            return Spectrum::real(T::lit(l1), T::lit(x), T::lit(y)).expect("finite");
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample<T> {
    pub trial: usize,
    pub matrix: Matrix3<T>,
    pub spectrum: Spectrum<T>,
    pub diagonal: DiagonalTriple<T>,
    pub failed: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessityOutcome<T> {
    pub trials: usize,
    pub failures: Vec<Counterexample<T>>,
}

/// Samples matrices of `class` and checks that their (spectrum, diagonal) pass the conditions.
pub fn necessity_trial<T: Scalar>(class: MatrixClass, cfg: &ScanConfig, tol: &Tolerance<T>) -> NecessityOutcome<T> {
    let mut failures = Vec::new();
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial as u64);
        let matrix = random_matrix_with(class, T::one(), &mut rng);
        let spectrum = solve_cubic_detailed(&char_poly(&matrix), tol).spectrum;
        let [x, y, z] = matrix.diagonal();
        let diagonal = DiagonalTriple::new(x, y, z).expect("finite diagonal");
        let failed = match check(class, &spectrum, &diagonal, tol) {
            Ok(r) if r.overall => continue,
            Ok(r) => r.failed_labels(),
            Err(_) => vec!["spectrum kind"],
        };
        failures.push(Counterexample { trial, matrix, spectrum, diagonal, failed });
    }
    NecessityOutcome { trials: cfg.trials, failures }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanOutcome<T> {
    pub feasible: bool,
    pub witness: Option<DiagonalTriple<T>>,
}

/// Searches diagonals `(w1, ω2, e1 − w1 − ω2)` on a grid for one that passes `check`.
pub fn omega_scan<T: Scalar>(
    class: MatrixClass,
    s: &Spectrum<T>,
    w1: T,
    cfg: &ScanConfig,
    tol: &Tolerance<T>,
) -> Result<ScanOutcome<T>> {
    if !s.is_real() && !class.admits_complex() {
        return Err(Error::ClassSpectrumMismatch { class });
    }
    let [e1, _, _] = s.elementary_symmetrics();
    let scale = s.scale();
    let two = T::lit(2.0);
    let rest = e1 - w1;
    let lo = T::zero().max(rest / two);
    let hi = w1.min(rest);
    let sds = class == MatrixClass::SymmetricStochastic;
    let tol = if sds { tol.with_equality(T::lit(1e-6)) } else { *tol };

    let passes = |w2: T| -> Result<Option<DiagonalTriple<T>>> {
        let d = DiagonalTriple::new(w1, w2, rest - w2)?;
        Ok(check(class, s, &d, &tol)?.overall.then_some(d))
    };

    // near its lower end the feasible ω2 set is thinner than any practical grid
    if let (Spectrum::RealTriple { l1, l2, l3 }, true) = (*s, sds || class == MatrixClass::DoublyStochastic) {
        let mut extra = Vec::with_capacity(2);
        if let Ok((w2, _)) = sds_completion(l1, l2, l3, w1, rest / two, tol.abs(scale, 2)) {
            extra.push(w2);
        }
        if !sds {
            extra.push(rest / two);
        }
        for w2 in extra {
            if w2 <= w1 + tol.abs(scale, 1) {
                if let Some(d) = passes(w2)? {
                    return Ok(ScanOutcome { feasible: true, witness: Some(d) });
                }
            }
        }
    }
    if hi >= lo {
        let n = cfg.grid_n.max(2);
        let step = (hi - lo) / T::lit((n - 1) as f64);
        for i in 0..n {
            let w2 = if i + 1 == n { hi } else { lo + step * T::lit(i as f64) };
            if let Some(d) = passes(w2)? {
                return Ok(ScanOutcome { feasible: true, witness: Some(d) });
            }
        }
    }
    Ok(ScanOutcome { feasible: false, witness: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeAudit<T> {
    pub empirical: Interval<T>,
    pub formula: Interval<T>,
    pub max_endpoint_gap: T,
}

/// Locates the feasible ω1 interval by bisection on `omega_scan` and compares it with the formula.
pub fn range_audit<T: Scalar>(
    class: MatrixClass,
    s: &Spectrum<T>,
    cfg: &ScanConfig,
    tol: &Tolerance<T>,
) -> Result<RangeAudit<T>> {
    let formula = omega1_range(class, s, tol)?;
    if formula.empty {
        return Err(Error::EmptyRange { class });
    }
    let scale = s.scale();
    let [e1, _, _] = s.elementary_symmetrics();
    let feasible = |w: T| -> Result<bool> { Ok(omega_scan(class, s, w, cfg, tol)?.feasible) };

    let mut seed = None;
    let mut candidates = vec![formula.midpoint()];
    let n = cfg.grid_n.max(2);
    candidates.extend((0..n).map(|i| e1 * T::lit(i as f64 / (n - 1) as f64)));
    for w in candidates {
        if feasible(w)? {
            seed = Some(w);
            break;
        }
    }
    let Some(seed) = seed else {
        return Ok(RangeAudit {
            empirical: Interval::empty_at(formula.lo, formula.hi),
            formula,
            max_endpoint_gap: T::infinity(),
        });
    };

    let resolution = T::lit(1e-4) * scale;
    let bisect = |mut good: T, mut bad: T| -> Result<T> {
        while (good - bad).abs() > resolution {
            let mid = T::lit(0.5) * (good + bad);
            if feasible(mid)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Ok(good)
    };
    let floor = T::zero().min(e1);
    let lo = if feasible(floor)? { floor } else { bisect(seed, floor)? };
    let hi = if feasible(e1)? { e1 } else { bisect(seed, e1)? };
    let empirical = Interval { lo, hi, empty: false };
    let gap = (lo - formula.lo).abs().max((hi - formula.hi).abs());
    Ok(RangeAudit { empirical, formula, max_endpoint_gap: gap })
}

/// Canonical completions at the ends and middle of the formula range, for tightness tests.
pub fn completion_probes<T: Scalar>(
    class: MatrixClass,
    s: &Spectrum<T>,
    tol: &Tolerance<T>,
) -> Result<Vec<(T, Result<DiagonalTriple<T>>)>> {
    let r = omega1_range(class, s, tol)?;
    Ok([r.lo, r.midpoint(), r.hi]
        .into_iter()
        .map(|w| (w, canonical_completion(class, s, w, tol)))
        .collect())
}
