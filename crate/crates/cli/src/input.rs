use std::io::Read;
use std::str::FromStr;

use niep3::{
    canonicalize_diagonal, canonicalize_spectrum, DiagonalTriple, Matrix3, MatrixClass, PairDiagonal, PairSpectrum,
    Spectrum, Tolerance,
};
use num_complex::Complex64;
use serde_json::Value;

/// Eigenvalues as typed on the command line: two reals select the 2x2 case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumArg {
    Triple(Spectrum<f64>),
    Pair(PairSpectrum<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalArg {
    Triple(DiagonalTriple<f64>),
    Pair(PairDiagonal<f64>),
}

pub fn parse_class(s: &str) -> Result<MatrixClass, String> {
    MatrixClass::from_str(s).map_err(|e| e.to_string())
}

fn split(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect()
}

fn parse_real(p: &str) -> Result<f64, String> {
    let x: f64 = p.parse().map_err(|_| format!("'{p}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{p}' is not finite"))
    }
}

/// `x,y,z`, `a,b+ci,b-ci` or `x,y`.
pub fn parse_lambda(s: &str, tol: &Tolerance<f64>) -> Result<SpectrumArg, String> {
    let parts = split(s);
    match parts.len() {
        2 => {
            let (x, y) = (parse_real(parts[0])?, parse_real(parts[1])?);
            PairSpectrum::new(x, y).map(SpectrumArg::Pair).map_err(|e| e.to_string())
        }
        3 => {
            let mut raw = [Complex64::new(0.0, 0.0); 3];
            for (z, p) in raw.iter_mut().zip(&parts) {
                *z = Complex64::from_str(p).map_err(|_| format!("'{p}' is not a real or complex number"))?;
            }
            canonicalize_spectrum(raw, tol).map(SpectrumArg::Triple).map_err(|e| e.to_string())
        }
        n => Err(format!("expected 2 or 3 eigenvalues, got {n}")),
    }
}

/// `a,b,c` for the pair `b ± ci` next to the real eigenvalue `a`.
pub fn parse_abc(s: &str) -> Result<Spectrum<f64>, String> {
    let parts = split(s);
    if parts.len() != 3 {
        return Err(format!("expected a,b,c, got {} values", parts.len()));
    }
    let v: Vec<f64> = parts.iter().map(|p| parse_real(p)).collect::<Result<_, _>>()?;
    Spectrum::complex(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

pub fn parse_omega(s: &str) -> Result<DiagonalArg, String> {
    let v: Vec<f64> = split(s).iter().map(|p| parse_real(p)).collect::<Result<_, _>>()?;
    match v[..] {
        [x, y] => PairDiagonal::new(x, y).map(DiagonalArg::Pair).map_err(|e| e.to_string()),
        [x, y, z] => canonicalize_diagonal([x, y, z]).map(DiagonalArg::Triple).map_err(|e| e.to_string()),
        _ => Err(format!("expected 2 or 3 diagonal entries, got {}", v.len())),
    }
}

/// A bare `[[..],[..],[..]]` array or any object with a `matrix` field (such as `construct` output).
pub fn read_matrix(mut src: impl Read) -> Result<Matrix3<f64>, String> {
    let mut text = String::new();
    src.read_to_string(&mut text).map_err(|e| format!("cannot read matrix: {e}"))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("matrix is not valid JSON: {e}"))?;
    let rows = match &value {
        Value::Object(map) => map.get("matrix").ok_or("JSON object has no \"matrix\" field")?,
        v => v,
    };
    let rows: Vec<Vec<f64>> =
        serde_json::from_value(rows.clone()).map_err(|e| format!("matrix must be 3 rows of 3 numbers: {e}"))?;
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err("matrix must be 3 rows of 3 numbers".into());
    }
    Matrix3::new(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j]))).map_err(|e| e.to_string())
}
