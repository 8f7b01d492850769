use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Eigenvalue triple, either three reals or a real value plus a conjugate pair `b ± ci`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Spectrum<T> {
    RealTriple { l1: T, l2: T, l3: T },
    ComplexPair { a: T, b: T, c: T },
}

impl<T: Scalar> Spectrum<T> {
    /// Real triple, sorted nonincreasing.
    pub fn real(x: T, y: T, z: T) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("spectrum"));
        }
        let [l1, l2, l3] = sort_desc([x, y, z]);
        Ok(Spectrum::RealTriple { l1, l2, l3 })
    }

    /// `{a, b + ci, b - ci}`; the sign of `c` is ignored and `c = 0` gives a real triple.
    pub fn complex(a: T, b: T, c: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite("spectrum"));
        }
        if c == T::zero() {
            return Self::real(a, b, b);
        }
        Ok(Spectrum::ComplexPair { a, b, c: c.abs() })
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Spectrum::RealTriple { .. })
    }

    /// The real eigenvalue that plays the Perron role (`l1` or `a`).
    pub fn lambda1(&self) -> T {
        match *self {
            Spectrum::RealTriple { l1, .. } => l1,
            Spectrum::ComplexPair { a, .. } => a,
        }
    }

    pub fn max_modulus(&self) -> T {
        match *self {
            Spectrum::RealTriple { l1, l2, l3 } => l1.abs().max(l2.abs()).max(l3.abs()),
            Spectrum::ComplexPair { a, b, c } => a.abs().max(b.hypot(c)),
        }
    }

    /// `max(1, largest modulus)`, the unit that absolute tolerances are measured in.
    pub fn scale(&self) -> T {
        T::one().max(self.max_modulus())
    }

    pub fn scaled(&self, t: T) -> Self {
        match *self {
            Spectrum::RealTriple { l1, l2, l3 } => {
                let [l1, l2, l3] = sort_desc([t * l1, t * l2, t * l3]);
                Spectrum::RealTriple { l1, l2, l3 }
            }
            Spectrum::ComplexPair { a, b, c } => Spectrum::ComplexPair {
                a: t * a,
                b: t * b,
                c: t.abs() * c,
            },
        }
    }

    /// Eigenvalues as complex numbers, conjugate pair ordered `+c` first.
    pub fn roots(&self) -> [Complex<T>; 3] {
        match *self {
            Spectrum::RealTriple { l1, l2, l3 } => {
                [Complex::from(l1), Complex::from(l2), Complex::from(l3)]
            }
            Spectrum::ComplexPair { a, b, c } => {
                [Complex::from(a), Complex::new(b, c), Complex::new(b, -c)]
            }
        }
    }
}

/// Sum, sum of pairwise products and product of a triple.
pub trait ElementarySymmetric<T> {
    fn elementary_symmetrics(&self) -> [T; 3];
}

impl<T: Scalar> ElementarySymmetric<T> for Spectrum<T> {
    fn elementary_symmetrics(&self) -> [T; 3] {
        match *self {
            Spectrum::RealTriple { l1, l2, l3 } => triple_symmetrics(l1, l2, l3),
            Spectrum::ComplexPair { a, b, c } => {
                let two = T::lit(2.0);
                let modulus2 = b * b + c * c;
                [a + two * b, two * a * b + modulus2, a * modulus2]
            }
        }
    }
}

impl<T: Scalar> ElementarySymmetric<T> for DiagonalTriple<T> {
    fn elementary_symmetrics(&self) -> [T; 3] {
        triple_symmetrics(self.w1, self.w2, self.w3)
    }
}

pub fn elementary_symmetrics<T: Scalar, X: ElementarySymmetric<T>>(x: &X) -> [T; 3] {
    x.elementary_symmetrics()
}

fn triple_symmetrics<T: Scalar>(x: T, y: T, z: T) -> [T; 3] {
    [x + y + z, x * y + x * z + y * z, x * y * z]
}

fn sort_desc<T: Scalar>(mut v: [T; 3]) -> [T; 3] {
    v.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
    v
}

/// Turns three raw eigenvalues into a `Spectrum`, snapping near-real values and
/// symmetrizing a near-conjugate pair.
pub fn canonicalize_spectrum<T: Scalar>(raw: [Complex<T>; 3], tol: &Tolerance<T>) -> Result<Spectrum<T>> {
    if raw.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite("spectrum"));
    }
    let magnitude = raw.iter().fold(T::one(), |m, z| m.max(z.norm()));
    let thr = tol.rel * magnitude;
    let real: Vec<usize> = (0..3).filter(|&i| raw[i].im.abs() <= thr).collect();
    match real.len() {
        3 => Spectrum::real(raw[0].re, raw[1].re, raw[2].re),
        1 => {
            let r = real[0];
            let (p, q) = match r {
                0 => (raw[1], raw[2]),
                1 => (raw[0], raw[2]),
                _ => (raw[0], raw[1]),
            };
            if (p.re - q.re).abs() > thr || (p.im + q.im).abs() > thr {
                return Err(Error::NotConjugateClosed);
            }
            let half = T::lit(0.5);
            Spectrum::complex(raw[r].re, half * (p.re + q.re), half * (p.im.abs() + q.im.abs()))
        }
        _ => Err(Error::NotConjugateClosed),
    }
}

/// Prescribed diagonal, sorted nonincreasing; negative entries are representable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalTriple<T> {
    w1: T,
    w2: T,
    w3: T,
}

impl<T: Scalar> DiagonalTriple<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        canonicalize_diagonal([x, y, z])
    }

    pub fn w1(&self) -> T {
        self.w1
    }

    pub fn w2(&self) -> T {
        self.w2
    }

    pub fn w3(&self) -> T {
        self.w3
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.w1, self.w2, self.w3]
    }

    pub fn scaled(&self, t: T) -> Self {
        let [w1, w2, w3] = sort_desc([t * self.w1, t * self.w2, t * self.w3]);
        DiagonalTriple { w1, w2, w3 }
    }
}

pub fn canonicalize_diagonal<T: Scalar>(raw: [T; 3]) -> Result<DiagonalTriple<T>> {
    if raw.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("diagonal"));
    }
    let [w1, w2, w3] = sort_desc(raw);
    Ok(DiagonalTriple { w1, w2, w3 })
}

/// Dense 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Matrix3<T>(pub [[T; 3]; 3]);

impl<T: Scalar> Matrix3<T> {
    pub fn new(rows: [[T; 3]; 3]) -> Result<Self> {
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Matrix3(rows))
    }

    pub fn identity() -> Self {
        Self::from_diagonal([T::one(); 3])
    }

    pub fn from_diagonal(d: [T; 3]) -> Self {
        let z = T::zero();
        Matrix3([[d[0], z, z], [z, d[1], z], [z, z, d[2]]])
    }

    pub fn rows(&self) -> &[[T; 3]; 3] {
        &self.0
    }

    pub fn diagonal(&self) -> [T; 3] {
        [self.0[0][0], self.0[1][1], self.0[2][2]]
    }

    pub fn trace(&self) -> T {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn row_sums(&self) -> [T; 3] {
        self.0.map(|r| r[0] + r[1] + r[2])
    }

    pub fn col_sums(&self) -> [T; 3] {
        let m = &self.0;
        [0, 1, 2].map(|j| m[0][j] + m[1][j] + m[2][j])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Matrix3([0, 1, 2].map(|i| [m[0][i], m[1][i], m[2][i]]))
    }

    pub fn scaled(&self, t: T) -> Self {
        Matrix3(self.0.map(|r| r.map(|x| t * x)))
    }

    pub fn min_entry(&self) -> T {
        self.0.iter().flatten().fold(T::infinity(), |m, &x| m.min(x))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        d
    }

    /// Simultaneous row and column permutation, `out[i][j] = m[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let m = &self.0;
        Matrix3([0, 1, 2].map(|i| [0, 1, 2].map(|j| m[perm[i]][perm[j]])))
    }
}

impl<T> Index<(usize, usize)> for Matrix3<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

/// Dense 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Matrix2<T>(pub [[T; 2]; 2]);

impl<T: Scalar> Matrix2<T> {
    pub fn trace(&self) -> T {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> T {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Real eigenvalues `(larger, smaller)`, or `None` for a complex pair.
    pub fn real_eigenvalues(&self) -> Option<(T, T)> {
        let half = T::lit(0.5);
        let tr = self.trace();
        let disc = half * half * tr * tr - self.det();
        if disc < T::zero() {
            return None;
        }
        let r = disc.sqrt();
        Some((half * tr + r, half * tr - r))
    }
}

/// The five matrix classes; "stochastic" means equal row sums, not necessarily 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixClass {
    General,
    Symmetric,
    Stochastic,
    SymmetricStochastic,
    DoublyStochastic,
}

impl MatrixClass {
    pub const ALL: [MatrixClass; 5] = [
        MatrixClass::General,
        MatrixClass::Symmetric,
        MatrixClass::Stochastic,
        MatrixClass::SymmetricStochastic,
        MatrixClass::DoublyStochastic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MatrixClass::General => "general",
            MatrixClass::Symmetric => "symmetric",
            MatrixClass::Stochastic => "stochastic",
            MatrixClass::SymmetricStochastic => "symmetric-stochastic",
            MatrixClass::DoublyStochastic => "doubly-stochastic",
        }
    }

    /// Whether any result in this crate covers complex spectra for the class.
    pub fn admits_complex(self) -> bool {
        !matches!(self, MatrixClass::Symmetric | MatrixClass::SymmetricStochastic)
    }

    pub fn is_stochastic(self) -> bool {
        matches!(
            self,
            MatrixClass::Stochastic | MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic
        )
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        MatrixClass::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown class '{s}' (expected one of: general, symmetric, stochastic, symmetric-stochastic, doubly-stochastic)"
                ))
            })
    }
}

/// Relative tolerance; absolute thresholds are `rel * scale^degree`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance<T> {
    pub rel: T,
    /// Used for equality conditions only; equals `rel` unless loosened.
    pub equality_rel: T,
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(rel: T) -> Result<Self> {
        if !(rel > T::zero() && rel.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {rel}")));
        }
        Ok(Tolerance { rel, equality_rel: rel })
    }

    pub fn with_equality(self, equality_rel: T) -> Self {
        Tolerance { equality_rel, ..self }
    }

    /// Absolute threshold for an expression homogeneous of the given degree.
    pub fn abs(&self, scale: T, degree: i32) -> T {
        self.rel * scale.powi(degree)
    }

    pub fn abs_equality(&self, scale: T, degree: i32) -> T {
        self.equality_rel * scale.powi(degree)
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        let rel = T::default_rel_tol();
        Tolerance { rel, equality_rel: rel }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSpectrum<T> {
    l1: T,
    l2: T,
}

impl<T: Scalar> PairSpectrum<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::NonFinite("spectrum"));
        }
        Ok(PairSpectrum { l1: x.max(y), l2: x.min(y) })
    }

    pub fn l1(&self) -> T {
        self.l1
    }

    pub fn l2(&self) -> T {
        self.l2
    }

    pub fn scale(&self) -> T {
        T::one().max(self.l1.abs()).max(self.l2.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairDiagonal<T> {
    w1: T,
    w2: T,
}

impl<T: Scalar> PairDiagonal<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::NonFinite("diagonal"));
        }
        Ok(PairDiagonal { w1: x.max(y), w2: x.min(y) })
    }

    pub fn w1(&self) -> T {
        self.w1
    }

    pub fn w2(&self) -> T {
        self.w2
    }
}
