use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{max3, Scalar};
use crate::spectra::{
    canonicalize_spectrum, DiagonalTriple, ElementarySymmetric, Matrix3, MatrixClass, Spectrum, Tolerance,
};

/// Coefficients of the monic cubic `x³ − c2·x² + c1·x − c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicCoefficients<T> {
    pub c2: T,
    pub c1: T,
    pub c0: T,
}

impl<T: Scalar> CubicCoefficients<T> {
    pub fn from_spectrum(s: &Spectrum<T>) -> Self {
        let [c2, c1, c0] = s.elementary_symmetrics();
        CubicCoefficients { c2, c1, c0 }
    }

    pub fn eval(&self, x: T) -> T {
        ((x - self.c2) * x + self.c1) * x - self.c0
    }

    pub fn derivative(&self, x: T) -> T {
        (T::lit(3.0) * x - T::lit(2.0) * self.c2) * x + self.c1
    }

    pub fn eval_complex(&self, z: Complex<T>) -> Complex<T> {
        ((z - self.c2) * z + self.c1) * z - self.c0
    }

    /// Root-size scale `max(1, |c2|, √|c1|, ∛|c0|)`.
    pub fn scale(&self) -> T {
        T::one().max(max3(self.c2.abs(), self.c1.abs().sqrt(), self.c0.abs().cbrt()))
    }
}

/// Trace, sum of principal 2x2 minors and determinant.
pub fn char_poly<T: Scalar>(m: &Matrix3<T>) -> CubicCoefficients<T> {
    let a = &m.0;
    let c2 = a[0][0] + a[1][1] + a[2][2];
    let c1 = (a[0][0] * a[1][1] - a[0][1] * a[1][0])
        + (a[0][0] * a[2][2] - a[0][2] * a[2][0])
        + (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
    let c0 = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    CubicCoefficients { c2, c1, c0 }
}

/// Roots plus solver diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicSolution<T> {
    pub spectrum: Spectrum<T>,
    /// Discriminant of the depressed cubic; negative means a complex pair.
    pub discriminant: T,
    /// Largest distance a Newton polish step moved a real root.
    pub polish_shift: T,
}

pub fn solve_cubic<T: Scalar>(c: &CubicCoefficients<T>) -> Spectrum<T> {
    solve_cubic_detailed(c, &Tolerance::default()).spectrum
}

/// Closed-form roots: trigonometric method for three real roots, Cardano otherwise.
pub fn solve_cubic_detailed<T: Scalar>(c: &CubicCoefficients<T>, tol: &Tolerance<T>) -> CubicSolution<T> {
    let (two, three) = (T::lit(2.0), T::lit(3.0));
    let shift = c.c2 / three;
    // x = y + shift turns the cubic into y³ + p·y + q
    let p = c.c1 - c.c2 * c.c2 / three;
    let q = -two * c.c2.powi(3) / T::lit(27.0) + c.c2 * c.c1 / three - c.c0;
    let disc = -(T::lit(4.0) * p.powi(3) + T::lit(27.0) * q * q);
    let scale = c.scale();
    let threshold = tol.rel * scale.powi(6);

    let mut shift_max = T::zero();
    let mut polish = |x: T| {
        let fx = c.eval(x);
        let dfx = c.derivative(x);
        if dfx == T::zero() {
            return x;
        }
        let y = x - fx / dfx;
        if c.eval(y).abs() < fx.abs() {
            shift_max = shift_max.max((y - x).abs());
            y
        } else {
            x
        }
    };

    let spectrum = if disc >= T::zero() && p < T::zero() {
        let r = two * (-p / three).sqrt();
        let arg = (three * q / (two * p) * (-three / p).sqrt()).max(-T::one()).min(T::one());
        let theta = arg.acos() / three;
        let step = two * T::PI() / three;
        let roots = [0.0, 1.0, 2.0].map(|k| polish(r * (theta - T::lit(k) * step).cos() + shift));
        Spectrum::real(roots[0], roots[1], roots[2]).expect("finite roots")
    } else {
        let y0 = cardano_real_root(p, q);
        if disc < -threshold {
            let r = polish(y0 + shift);
            let b = (c.c2 - r) / two;
            let c_sq = c.c1 - r * (c.c2 - r) - b * b;
            let im = if c_sq > T::zero() {
                c_sq.sqrt()
            } else {
                (p + three * y0 * y0 / T::lit(4.0)).max(T::zero()).sqrt()
            };
            let raw = [Complex::from(r), Complex::new(b, im), Complex::new(b, -im)];
            canonicalize_spectrum(raw, tol).unwrap_or_else(|_| Spectrum::real(r, b, b).expect("finite roots"))
        } else {
            let r = polish(y0 + shift);
            let d = polish(-y0 / two + shift);
            Spectrum::real(r, d, d).expect("finite roots")
        }
    };
    CubicSolution { spectrum, discriminant: disc, polish_shift: shift_max }
}

/// The real root of `y³ + p·y + q` that Cardano's formula yields, in the cancellation-free form.
fn cardano_real_root<T: Scalar>(p: T, q: T) -> T {
    let half_q = q / T::lit(2.0);
    let d = half_q * half_q + p.powi(3) / T::lit(27.0);
    let a = -(half_q.abs() + d.max(T::zero()).sqrt()).cbrt() * q.signum();
    if a == T::zero() {
        T::zero()
    } else {
        a - p / (T::lit(3.0) * a)
    }
}

/// Eigenvalues, residuals and class membership of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub eigenvalues: Spectrum<T>,
    pub coefficients: CubicCoefficients<T>,
    /// Largest `|χ(r)| / scale³` over the claimed roots (computed roots when no claim is given).
    pub eigen_residual: T,
    /// Largest distance between computed and claimed roots divided by the scale.
    pub spectrum_error: Option<T>,
    pub diagonal_match: Option<bool>,
    pub classes_satisfied: Vec<MatrixClass>,
    pub row_sum_deviation: T,
    pub col_sum_deviation: T,
    pub symmetry_deviation: T,
    pub min_entry: T,
    pub nonnegative: bool,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn satisfies(&self, class: MatrixClass) -> bool {
        self.classes_satisfied.contains(&class)
    }
}

/// Largest distance between two root multisets, matched after sorting by (re, im).
pub fn spectrum_distance<T: Scalar>(a: &Spectrum<T>, b: &Spectrum<T>) -> T {
    let key = |s: &Spectrum<T>| {
        let mut r = s.roots();
        r.sort_by(|x, y| y.re.partial_cmp(&x.re).unwrap().then(y.im.partial_cmp(&x.im).unwrap()));
        r
    };
    let (x, y) = (key(a), key(b));
    (0..3).fold(T::zero(), |m, i| m.max((x[i] - y[i]).norm()))
}

pub fn verify<T: Scalar>(
    m: &Matrix3<T>,
    claimed: Option<&Spectrum<T>>,
    claimed_diag: Option<&DiagonalTriple<T>>,
    tol: &Tolerance<T>,
) -> VerificationReport<T> {
    let coefficients = char_poly(m);
    let eigenvalues = solve_cubic_detailed(&coefficients, tol).spectrum;
    let scale = eigenvalues.scale().max(claimed.map_or(T::one(), |s| s.scale()));
    let target = claimed.unwrap_or(&eigenvalues);
    let eigen_residual = target
        .roots()
        .iter()
        .fold(T::zero(), |r, z| r.max(coefficients.eval_complex(*z).norm()))
        / scale.powi(3);
    let spectrum_error = claimed.map(|s| spectrum_distance(&eigenvalues, s) / scale);
    let diagonal_match = claimed_diag.map(|d| {
        let got = DiagonalTriple::new(m[(0, 0)], m[(1, 1)], m[(2, 2)]).expect("finite entries");
        got.to_array().iter().zip(d.to_array()).all(|(x, y)| (*x - y).abs() <= tol.abs(scale, 1))
    });

    let rows = m.row_sums();
    let cols = m.col_sums();
    let mean = (rows[0] + rows[1] + rows[2]) / T::lit(3.0);
    let row_sum_deviation = rows.iter().fold(T::zero(), |d, &r| d.max((r - mean).abs())) / scale;
    let col_sum_deviation = cols.iter().fold(T::zero(), |d, &c| d.max((c - mean).abs())) / scale;
    let symmetry_deviation = m.max_abs_diff(&m.transpose()) / scale;
    let min_entry = m.min_entry();
    let threshold = tol.rel;
    let nonnegative = min_entry >= -tol.abs(scale, 1);

    let mut classes_satisfied = Vec::new();
    if nonnegative {
        let symmetric = symmetry_deviation <= threshold;
        let stochastic = row_sum_deviation <= threshold;
        let doubly = stochastic && col_sum_deviation <= threshold;
        classes_satisfied.push(MatrixClass::General);
        if symmetric {
            classes_satisfied.push(MatrixClass::Symmetric);
        }
        if stochastic {
            classes_satisfied.push(MatrixClass::Stochastic);
        }
        if symmetric && stochastic {
            classes_satisfied.push(MatrixClass::SymmetricStochastic);
        }
        if doubly {
            classes_satisfied.push(MatrixClass::DoublyStochastic);
        }
    }
    VerificationReport {
        eigenvalues,
        coefficients,
        eigen_residual,
        spectrum_error,
        diagonal_match,
        classes_satisfied,
        row_sum_deviation,
        col_sum_deviation,
        symmetry_deviation,
        min_entry,
        nonnegative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerSum<T> {
    pub k: u32,
    pub s_k: T,
    pub nonneg: bool,
}

/// `3^(k-1)·s_{km} ≥ s_m^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JllCheck<T> {
    pub k: u32,
    pub m: u32,
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSumReport<T> {
    pub sums: Vec<PowerSum<T>>,
    pub jll: Vec<JllCheck<T>>,
}

impl<T: Scalar> PowerSumReport<T> {
    pub fn s(&self, k: u32) -> Option<T> {
        self.sums.iter().find(|p| p.k == k).map(|p| p.s_k)
    }

    pub fn jll(&self, k: u32, m: u32) -> Option<&JllCheck<T>> {
        self.jll.iter().find(|j| j.k == k && j.m == m)
    }

    pub fn all_hold(&self) -> bool {
        self.sums.iter().all(|p| p.nonneg) && self.jll.iter().all(|j| j.holds)
    }
}

/// Power sums `s_1..s_kmax` (index 0 holds `s_0 = 3`).
pub fn power_sums<T: Scalar>(s: &Spectrum<T>, kmax: u32) -> Vec<T> {
    let mut out = Vec::with_capacity(kmax as usize + 1);
    out.push(T::lit(3.0));
    match *s {
        Spectrum::RealTriple { l1, l2, l3 } => {
            for k in 1..=kmax as i32 {
                out.push(l1.powi(k) + l2.powi(k) + l3.powi(k));
            }
        }
        Spectrum::ComplexPair { .. } => {
            let [e1, e2, e3] = s.elementary_symmetrics();
            for k in 1..=kmax as usize {
                let next = match k {
                    1 => e1,
                    2 => e1 * out[1] - T::lit(2.0) * e2,
                    _ => e1 * out[k - 1] - e2 * out[k - 2] + e3 * out[k - 3],
                };
                out.push(next);
            }
        }
    }
    out
}

pub fn power_sum_diagnostics<T: Scalar>(s: &Spectrum<T>, kmax: u32, tol: &Tolerance<T>) -> Result<PowerSumReport<T>> {
    if kmax == 0 || kmax > 12 {
        return Err(Error::InvalidArgument(format!("kmax must be in 1..=12, got {kmax}")));
    }
    let scale = s.scale();
    let ps = power_sums(s, kmax);
    let sums = (1..=kmax)
        .map(|k| {
            let s_k = ps[k as usize];
            PowerSum { k, s_k, nonneg: s_k >= -tol.abs(scale, k as i32) }
        })
        .collect();
    let mut jll = Vec::new();
    for k in 2..=kmax {
        for m in 1..=kmax / k {
            let lhs = T::lit(3.0).powi(k as i32 - 1) * ps[(k * m) as usize];
            let rhs = ps[m as usize].powi(k as i32);
            let floor = T::lit(3.0).powi(k as i32 - 1) * tol.abs(scale, (k * m) as i32);
            jll.push(JllCheck { k, m, lhs, rhs, holds: lhs - rhs >= -floor });
        }
    }
    Ok(PowerSumReport { sums, jll })
}
