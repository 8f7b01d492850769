use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{to_f64, Scalar};
use crate::spectra::{DiagonalTriple, ElementarySymmetric, MatrixClass, PairSpectrum, Spectrum, Tolerance};

/// Closed interval for ω1; `empty` marks an unrealizable spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub empty: bool,
}

impl<T: Scalar> Interval<T> {
    /// Builds `[lo, hi]`, collapsing an inversion smaller than `snap` to a point.
    pub fn new(lo: T, hi: T, snap: T) -> Self {
        if lo <= hi {
            Interval { lo, hi, empty: false }
        } else if lo - hi <= snap {
            let mid = T::lit(0.5) * (lo + hi);
            Interval { lo: mid, hi: mid, empty: false }
        } else {
            Interval { lo, hi, empty: true }
        }
    }

    pub fn empty_at(lo: T, hi: T) -> Self {
        Interval { lo, hi, empty: true }
    }

    pub fn midpoint(&self) -> T {
        T::lit(0.5) * (self.lo + self.hi)
    }

    pub fn width(&self) -> T {
        if self.empty {
            T::zero()
        } else {
            self.hi - self.lo
        }
    }

    pub fn contains(&self, x: T, slack: T) -> bool {
        !self.empty && x >= self.lo - slack && x <= self.hi + slack
    }

    pub fn scaled(&self, t: T) -> Self {
        Interval { lo: t * self.lo, hi: t * self.hi, empty: self.empty }
    }
}

/// The bound constants; `None` where a radicand is negative or the constant is not used.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BoundConstants<T> {
    pub l1: Option<T>,
    pub l2: Option<T>,
    pub l3: Option<T>,
    pub u1: Option<T>,
    pub u2: Option<T>,
}

impl<T: Scalar> BoundConstants<T> {
    /// Largest of the defined lower constants.
    pub fn max_lower(&self) -> Option<T> {
        [self.l1, self.l2, self.l3].into_iter().flatten().reduce(T::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionLabel {
    R1,
    R2,
    R3,
    Q1,
    Q2,
}

fn clamp_radicand<T: Scalar>(r: T, floor: T) -> Option<T> {
    if r >= T::zero() {
        Some(r)
    } else if r >= -floor {
        Some(T::zero())
    } else {
        None
    }
}

fn sqrt3<T: Scalar>() -> T {
    T::lit(3.0).sqrt()
}

/// L1, L2, L3 (real spectra), U1 (complex spectra) and U2.
pub fn bound_constants<T: Scalar>(s: &Spectrum<T>, tol: &Tolerance<T>) -> BoundConstants<T> {
    let floor = tol.abs(s.scale(), 2);
    let (two, three, four) = (T::lit(2.0), T::lit(3.0), T::lit(4.0));
    let r3 = sqrt3::<T>();
    match *s {
        Spectrum::RealTriple { l1, l2, l3 } => {
            let e1 = l1 + l2 + l3;
            let lower1 = (two * l1 + three * l2 + l3) / T::lit(6.0);
            let lower2 = clamp_radicand(-(l1 + two * l2) * (l1 + two * l3), floor)
                .map(|r| e1 / two + r.sqrt() / (two * r3));
            let lower3 = clamp_radicand(-(two * l1 + l2 - three * l3) * (two * l1 - three * l2 + l3), floor)
                .map(|r| (two * l1 + l2 + l3) / four + r.sqrt() / (four * r3));
            let upper2 = clamp_radicand(four * (l1 - l2) * (l1 - l3) + three * (l2 - l3) * (l2 - l3), floor)
                .map(|r| (l2 + l3) / two + r.sqrt() / (two * r3));
            BoundConstants { l1: Some(lower1), l2: lower2, l3: lower3, u1: None, u2: upper2 }
        }
        Spectrum::ComplexPair { a, b, c } => {
            let e1 = a + two * b;
            let d2 = (a - b) * (a - b);
            let upper1 = clamp_radicand(d2 - three * c * c, floor).map(|r| e1 / three + two / three * r.sqrt());
            let upper2 = clamp_radicand(d2 - two * c * c, floor).map(|r| b + r.sqrt() / r3);
            BoundConstants { l1: None, l2: None, l3: None, u1: upper1, u2: upper2 }
        }
    }
}

fn perfect_mirsky<T: Scalar>(s: &Spectrum<T>) -> T {
    match *s {
        Spectrum::RealTriple { l1, l2, l3 } => T::lit(2.0) * l1 + l2 + T::lit(3.0) * l3,
        Spectrum::ComplexPair { .. } => T::zero(),
    }
}

fn require_class<T: Scalar>(class: MatrixClass, s: &Spectrum<T>) -> Result<()> {
    if !s.is_real() && !class.admits_complex() {
        return Err(Error::ClassSpectrumMismatch { class });
    }
    Ok(())
}

/// The exact range of the largest diagonal entry.
pub fn omega1_range<T: Scalar>(class: MatrixClass, s: &Spectrum<T>, tol: &Tolerance<T>) -> Result<Interval<T>> {
    require_class(class, s)?;
    let k = bound_constants(s, tol);
    let snap = tol.abs(s.scale(), 1);
    let [e1, _, _] = s.elementary_symmetrics();
    let three = T::lit(3.0);
    let interval = match *s {
        Spectrum::RealTriple { l1, l2, .. } => match class {
            MatrixClass::General | MatrixClass::Symmetric | MatrixClass::Stochastic => {
                Interval::new((e1 / three).max(l2), e1.min(l1), snap)
            }
            MatrixClass::SymmetricStochastic => {
                let lo = k.max_lower().expect("L1 is always defined for real spectra");
                Interval::new(lo, (l1 + T::lit(2.0) * l2) / three, snap)
            }
            MatrixClass::DoublyStochastic => {
                let lo = k.max_lower().expect("L1 is always defined for real spectra");
                match k.u2 {
                    Some(u2) => Interval::new(lo, e1.min(u2), snap),
                    None => Interval::empty_at(lo, e1),
                }
            }
        },
        Spectrum::ComplexPair { a, b, c } => {
            let upper = if class == MatrixClass::DoublyStochastic { k.u2 } else { k.u1 };
            let perron = a - b.hypot(c) >= -snap;
            match upper {
                Some(u) if perron => Interval::new(e1 / three, e1.min(u), snap),
                Some(u) => Interval::empty_at(e1 / three, e1.min(u)),
                None => Interval::empty_at(e1 / three, e1),
            }
        }
    };
    // outside R the constants alone can leave a nonempty interval
    let interval = match class {
        MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic if perfect_mirsky(s) < -snap => {
            Interval::empty_at(interval.lo, interval.hi)
        }
        _ => interval,
    };
    Ok(interval)
}

/// The designated (ω2, ω3) for a feasible ω1.
pub fn canonical_completion<T: Scalar>(
    class: MatrixClass,
    s: &Spectrum<T>,
    w1: T,
    tol: &Tolerance<T>,
) -> Result<DiagonalTriple<T>> {
    let range = omega1_range(class, s, tol)?;
    if range.empty {
        return Err(Error::EmptyRange { class });
    }
    let scale = s.scale();
    if !range.contains(w1, tol.abs(scale, 1)) {
        return Err(Error::OutOfRange { omega1: to_f64(w1), lo: to_f64(range.lo), hi: to_f64(range.hi) });
    }
    let [e1, _, _] = s.elementary_symmetrics();
    let half = (e1 - w1) / T::lit(2.0);
    let (w2, w3) = match (class, *s) {
        (MatrixClass::SymmetricStochastic, Spectrum::RealTriple { l1, l2, l3 }) => {
            sds_completion(l1, l2, l3, w1, half, tol.abs(scale, 2))?
        }
        (MatrixClass::DoublyStochastic, Spectrum::RealTriple { l1, l2, l3 })
            if w1 <= (l1 + T::lit(2.0) * l2) / T::lit(3.0) =>
        {
            sds_completion(l1, l2, l3, w1, half, tol.abs(scale, 2))?
        }
        _ => (half, half),
    };
    let floor = tol.abs(scale, 1);
    let snap = |w: T| if w < T::zero() && w >= -floor { T::zero() } else { w };
    DiagonalTriple::new(w1, snap(w2), snap(w3))
}

/// The unique (ω2 ≥ ω3) solving the trace equality and the symmetric stochastic equality.
pub(crate) fn sds_completion<T: Scalar>(l1: T, l2: T, l3: T, w1: T, half: T, floor: T) -> Result<(T, T)> {
    let (two, three) = (T::lit(2.0), T::lit(3.0));
    let raw = -(three * w1 - l1 - two * l2) * (three * w1 - l1 - two * l3);
    let r = clamp_radicand(raw, floor)
        .ok_or(Error::NegativeRadicand { context: "symmetric stochastic completion", value: to_f64(raw) })?;
    let delta = r.sqrt() / (two * sqrt3::<T>());
    Ok((half + delta, half - delta))
}

fn region_r_slacks<T: Scalar>(l1: T, l2: T, l3: T) -> [T; 4] {
    let two = T::lit(2.0);
    [l2 + l1 / two, l1 - l2, l3 + (two * l1 + l2) / T::lit(3.0), l2 - l3]
}

fn real_in_region<T: Scalar>(s: &Spectrum<T>, tol: &Tolerance<T>) -> Result<(T, T, T)> {
    match *s {
        Spectrum::RealTriple { l1, l2, l3 } => {
            let floor = tol.abs(s.scale(), 1);
            if region_r_slacks(l1, l2, l3).iter().all(|&x| x >= -floor) {
                Ok((l1, l2, l3))
            } else {
                Err(Error::OutsideRegion)
            }
        }
        Spectrum::ComplexPair { .. } => Err(Error::OutsideRegion),
    }
}

/// Which of L1, L2, L3 is the binding lower bound; ties go R1, then R3, then R2.
pub fn classify_region_r<T: Scalar>(s: &Spectrum<T>, tol: &Tolerance<T>) -> Result<RegionLabel> {
    let (l1, l2, l3) = real_in_region(s, tol)?;
    let floor = tol.abs(s.scale(), 1);
    let (two, three) = (T::lit(2.0), T::lit(3.0));
    let half1 = -l1 / two;
    let edge = -two * l1 + three * l2;
    if l3 >= half1.max(edge) - floor {
        Ok(RegionLabel::R1)
    } else if l2 >= l1 / two - floor && l3 >= -l2 - floor && l3 <= edge + floor {
        Ok(RegionLabel::R3)
    } else if l3 <= half1.min(-l2) + floor {
        Ok(RegionLabel::R2)
    } else {
        Err(Error::OutsideRegion)
    }
}

/// Whether the trace (Q1) or U2 (Q2) is the binding upper bound; the dividing curve goes to Q1.
pub fn classify_region_q<T: Scalar>(s: &Spectrum<T>, tol: &Tolerance<T>) -> Result<RegionLabel> {
    let (l1, l2, l3) = real_in_region(s, tol)?;
    let two = T::lit(2.0);
    let form = l1 * l1 + two * l1 * l2 + two * l1 * l3 + l2 * l3;
    if form <= tol.abs(s.scale(), 2) {
        Ok(RegionLabel::Q1)
    } else {
        Ok(RegionLabel::Q2)
    }
}

/// ω1 range for the 2x2 case.
pub fn range_pair<T: Scalar>(class: MatrixClass, s: &PairSpectrum<T>, tol: &Tolerance<T>) -> Interval<T> {
    let (l1, l2) = (s.l1(), s.l2());
    let sum = l1 + l2;
    let half = sum / T::lit(2.0);
    if sum < -tol.abs(s.scale(), 1) {
        return Interval::empty_at(half, sum.min(l1));
    }
    let snap = tol.abs(s.scale(), 1);
    match class {
        MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic => Interval::new(half, half, snap),
        _ => Interval::new(half, sum.min(l1), snap),
    }
}

/// True when a spectrum sits in R (used by sweeps that clip to the region).
pub fn in_region_r<T: Scalar>(s: &Spectrum<T>, tol: &Tolerance<T>) -> bool {
    real_in_region(s, tol).is_ok()
}
