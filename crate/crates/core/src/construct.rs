use serde::Serialize;

use crate::conditions::{check, check_pair, sds_terms};
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Scalar};
use crate::spectra::{
    DiagonalTriple, ElementarySymmetric, Matrix2, Matrix3, MatrixClass, PairDiagonal, PairSpectrum, Spectrum,
    Tolerance,
};

/// Intermediate constants used by a construction; unused ones stay `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Auxiliaries<T> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructionResult<T> {
    pub matrix: Matrix3<T>,
    pub class: MatrixClass,
    pub auxiliaries: Auxiliaries<T>,
}

fn clamp_entry<T: Scalar>(x: T, floor: T, row: usize, col: usize) -> Result<T> {
    if x >= T::zero() {
        Ok(x)
    } else if x >= -floor {
        Ok(T::zero())
    } else {
        Err(Error::NegativeEntry { row, col, value: to_f64(x) })
    }
}

fn clamped_sqrt<T: Scalar>(x: T, floor: T, context: &'static str) -> Result<T> {
    if x >= T::zero() {
        Ok(x.sqrt())
    } else if x >= -floor {
        Ok(T::zero())
    } else {
        Err(Error::NegativeRadicand { context, value: to_f64(x) })
    }
}

/// Builds a matrix of `class` with spectrum `s` and diagonal `d`.
pub fn construct<T: Scalar>(
    class: MatrixClass,
    s: &Spectrum<T>,
    d: &DiagonalTriple<T>,
    tol: &Tolerance<T>,
) -> Result<ConstructionResult<T>> {
    let report = check(class, s, d, tol)?;
    if !report.overall {
        return Err(Error::InfeasibleInput { class, failed: report.failure_summary() });
    }
    let scale = s.scale();
    let floor1 = tol.abs(scale, 1);
    let floor2 = tol.abs(scale, 2);
    let [w1, w2, w3] = d.to_array();
    let [_, e2, _] = s.elementary_symmetrics();
    let [_, f2, _] = d.elementary_symmetrics();
    let zero = T::zero();
    let l1 = s.lambda1();
    // (ω1 - λ2)(ω1 - λ3), real in both spectrum kinds
    let lop = match *s {
        Spectrum::RealTriple { l2, l3, .. } => (w1 - l2) * (w1 - l3),
        Spectrum::ComplexPair { b, c, .. } => (w1 - b) * (w1 - b) + c * c,
    };
    let mut aux = Auxiliaries::default();

    let off: [[T; 3]; 3] = match class {
        MatrixClass::General => {
            let one = T::one();
            [[zero, zero, (l1 - w1) * lop], [one, zero, f2 - e2], [zero, one, zero]]
        }
        MatrixClass::Stochastic => {
            let denom = l1 - w3;
            let (p, lower) = if denom > floor1 {
                // (f2 - e2)/denom equals λ1 - ω2 - lower, and the difference keeps the row sum exact
                let lower = lop / denom;
                ((l1 - w2 - lower).max(zero), lower)
            } else {
                (zero, l1 - w2)
            };
            aux.p = Some(p);
            [[zero, zero, l1 - w1], [lower, zero, p], [zero, l1 - w3, zero]]
        }
        MatrixClass::Symmetric => {
            let Spectrum::RealTriple { l2, .. } = *s else {
                return Err(Error::ClassSpectrumMismatch { class });
            };
            let alpha = l1 + l2 - w1 - w2;
            let beta = l1 + l2 - w1 - w3;
            let gamma = (l1 - w1) * (w1 - l2);
            aux.alpha = Some(alpha);
            aux.beta = Some(beta);
            aux.gamma = Some(gamma);
            if alpha + beta <= floor1 {
                [[zero; 3]; 3]
            } else {
                let a12 = clamped_sqrt(beta * gamma / (alpha + beta), floor2, "symmetric (1,2) entry")?;
                let a13 = clamped_sqrt(alpha * gamma / (alpha + beta), floor2, "symmetric (1,3) entry")?;
                let a23 = clamped_sqrt(alpha * beta, floor2, "symmetric (2,3) entry")?;
                [[zero, a12, a13], [a12, zero, a23], [a13, a23, zero]]
            }
        }
        MatrixClass::SymmetricStochastic => {
            let m = sds_terms(s, d).m;
            aux.m = Some(m);
            aux.s = Some(w3 - m);
            let (x, y, z) = (w3 - m, w2 - m, w1 - m);
            [[zero, x, y], [x, zero, z], [y, z, zero]]
        }
        MatrixClass::DoublyStochastic => {
            let terms = sds_terms(s, d);
            let m = terms.m;
            let w = terms.s * terms.s - terms.v;
            let r = clamped_sqrt(w, floor2, "sqrt(W)")?;
            aux.m = Some(m);
            aux.v = Some(terms.v);
            aux.w = Some(w);
            aux.s = Some(w3 - m + r);
            aux.t = Some(w3 - m - r);
            [
                [zero, w3 - m + r, w2 - m - r],
                [w3 - m - r, zero, w1 - m + r],
                [w2 - m + r, w1 - m - r, zero],
            ]
        }
    };

    let diag = [w1, w2, w3];
    let mut rows = [[zero; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            rows[i][j] = if i == j { diag[i] } else { clamp_entry(off[i][j], floor1, i, j)? };
        }
    }
    Ok(ConstructionResult { matrix: Matrix3(rows), class, auxiliaries: aux })
}

/// Divides a stochastic-class construction by λ1 so rows sum to 1.
pub fn normalize_unit<T: Scalar>(
    result: &ConstructionResult<T>,
    s: &Spectrum<T>,
    tol: &Tolerance<T>,
) -> Result<Matrix3<T>> {
    if !result.class.is_stochastic() {
        return Err(Error::InvalidArgument(format!("cannot normalize a {} matrix", result.class)));
    }
    let l1 = s.lambda1();
    if l1 <= tol.rel {
        return Err(Error::NonPositiveScale(to_f64(l1)));
    }
    Ok(result.matrix.scaled(T::one() / l1))
}

/// The 2x2 constructions.
pub fn construct_pair<T: Scalar>(
    class: MatrixClass,
    s: &PairSpectrum<T>,
    d: &PairDiagonal<T>,
    tol: &Tolerance<T>,
) -> Result<Matrix2<T>> {
    let report = check_pair(class, s, d, tol);
    if !report.overall {
        return Err(Error::InfeasibleInput { class, failed: report.failure_summary() });
    }
    let (l1, l2, w1, w2) = (s.l1(), s.l2(), d.w1(), d.w2());
    let floor = tol.abs(s.scale(), 2);
    let gap = w1 * w2 - l1 * l2;
    let nonneg = |x: T| if x < T::zero() && x >= -floor { T::zero() } else { x };
    let m = match class {
        MatrixClass::General => [[w1, nonneg(gap)], [T::one(), w2]],
        MatrixClass::Symmetric => {
            let r = clamped_sqrt(gap, floor, "2x2 symmetric off-diagonal")?;
            [[w1, r], [r, w2]]
        }
        MatrixClass::Stochastic => [[w1, nonneg(l1 - w1)], [nonneg(l1 - w2), w2]],
        MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic => {
            let half = T::lit(0.5);
            let (p, q) = (half * (l1 + l2), half * (l1 - l2));
            [[p, q], [q, p]]
        }
    };
    Ok(Matrix2(m))
}
