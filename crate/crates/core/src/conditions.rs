use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectra::{
    DiagonalTriple, ElementarySymmetric, MatrixClass, PairDiagonal, PairSpectrum, Spectrum, Tolerance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    Inequality,
    Equality,
}

/// One evaluated condition. `slack >= 0` means satisfied; equalities report `-|residual|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionItem<T> {
    pub label: &'static str,
    pub description: &'static str,
    pub kind: ConditionKind,
    pub slack: T,
    pub tolerance: T,
    pub satisfied: bool,
    pub citation: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport<T> {
    pub class: MatrixClass,
    pub items: Vec<ConditionItem<T>>,
    pub overall: bool,
}

impl<T: Scalar> ConditionReport<T> {
    fn new(class: MatrixClass, items: Vec<ConditionItem<T>>) -> Self {
        let overall = items.iter().all(|i| i.satisfied);
        ConditionReport { class, items, overall }
    }

    pub fn item(&self, label: &str) -> Option<&ConditionItem<T>> {
        self.items.iter().find(|i| i.label == label)
    }

    pub fn failed(&self) -> impl Iterator<Item = &ConditionItem<T>> {
        self.items.iter().filter(|i| !i.satisfied)
    }

    pub fn failed_labels(&self) -> Vec<&'static str> {
        self.failed().map(|i| i.label).collect()
    }

    /// One line per failed item: label, description and slack.
    pub fn failure_summary(&self) -> Vec<String> {
        self.failed()
            .map(|i| format!("({}) {} [slack {}]", i.label, i.description, i.slack))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizabilityReport<T> {
    pub class: MatrixClass,
    pub satisfied: bool,
    pub items: Vec<ConditionItem<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImplicationAudit {
    pub premises_hold: bool,
    pub symmetric_iii_holds: bool,
    pub general_iv_holds: bool,
    pub implication_respected: bool,
}

struct Items<T> {
    scale: T,
    tol: Tolerance<T>,
    citation: &'static str,
    items: Vec<ConditionItem<T>>,
}

impl<T: Scalar> Items<T> {
    fn new(scale: T, tol: &Tolerance<T>, citation: &'static str) -> Self {
        Items { scale, tol: *tol, citation, items: Vec::with_capacity(5) }
    }

    fn ineq(mut self, label: &'static str, description: &'static str, slack: T, degree: i32) -> Self {
        let tolerance = self.tol.abs(self.scale, degree);
        self.items.push(ConditionItem {
            label,
            description,
            kind: ConditionKind::Inequality,
            slack,
            tolerance,
            satisfied: slack >= -tolerance,
            citation: self.citation,
        });
        self
    }

    fn eq(mut self, label: &'static str, description: &'static str, residual: T, degree: i32) -> Self {
        let tolerance = self.tol.abs_equality(self.scale, degree);
        self.items.push(ConditionItem {
            label,
            description,
            kind: ConditionKind::Equality,
            slack: -residual.abs(),
            tolerance,
            satisfied: residual.abs() <= tolerance,
            citation: self.citation,
        });
        self
    }
}

/// Quantities shared by the symmetric stochastic and doubly stochastic condition sets:
/// `m = (λ2+λ3)/2`, `s = ω3 - m` and `V = (λ1-ω1)(λ1-ω2) - (λ1-λ2)(λ1-λ3)/3`.
pub(crate) struct SdsTerms<T> {
    pub m: T,
    pub s: T,
    pub v: T,
}

pub(crate) fn sds_terms<T: Scalar>(s: &Spectrum<T>, d: &DiagonalTriple<T>) -> SdsTerms<T> {
    let third = T::lit(1.0 / 3.0);
    let (l1, m, spread) = match *s {
        Spectrum::RealTriple { l1, l2, l3 } => (l1, T::lit(0.5) * (l2 + l3), (l1 - l2) * (l1 - l3)),
        Spectrum::ComplexPair { a, b, c } => (a, b, (a - b) * (a - b) + c * c),
    };
    let v = (l1 - d.w1()) * (l1 - d.w2()) - third * spread;
    SdsTerms { m, s: d.w3() - m, v }
}

const CITE_GENERAL_REAL: &str = "nonnegative 3x3, real spectrum";
const CITE_GENERAL_COMPLEX: &str = "nonnegative 3x3, spectrum with a conjugate pair";
const CITE_SYMMETRIC: &str = "symmetric nonnegative 3x3, real spectrum";
const CITE_STOCHASTIC_REAL: &str = "stochastic 3x3, real spectrum";
const CITE_STOCHASTIC_COMPLEX: &str = "stochastic 3x3, spectrum with a conjugate pair";
const CITE_SDS: &str = "symmetric stochastic 3x3, real spectrum";
const CITE_DS_REAL: &str = "doubly stochastic 3x3, real spectrum";
const CITE_DS_COMPLEX: &str = "doubly stochastic 3x3, spectrum with a conjugate pair";
const CITE_PAIR: &str = "2x2 with prescribed diagonal";
const CITE_PAIR_SDS: &str = "2x2 symmetric stochastic with prescribed diagonal";

fn mismatch<T: Scalar>(class: MatrixClass, s: &Spectrum<T>) -> Result<()> {
    if !s.is_real() && !class.admits_complex() {
        return Err(Error::ClassSpectrumMismatch { class });
    }
    Ok(())
}

/// Evaluates the full necessary-and-sufficient condition set for `class`.
pub fn check<T: Scalar>(
    class: MatrixClass,
    s: &Spectrum<T>,
    d: &DiagonalTriple<T>,
    tol: &Tolerance<T>,
) -> Result<ConditionReport<T>> {
    mismatch(class, s)?;
    let scale = s.scale();
    let [w1, w2, w3] = d.to_array();
    let [e1, e2, _] = s.elementary_symmetrics();
    let [f1, f2, _] = d.elementary_symmetrics();
    let trace_gap = f1 - e1;

    let items = match (class, *s) {
        (MatrixClass::General | MatrixClass::Stochastic, Spectrum::RealTriple { l1, l2, .. }) => {
            let cite = if class == MatrixClass::General { CITE_GENERAL_REAL } else { CITE_STOCHASTIC_REAL };
            Items::new(scale, tol, cite)
                .ineq("i", "ω3 ≥ 0", w3, 1)
                .ineq("ii", "λ1 ≥ ω1 ≥ λ2", (l1 - w1).min(w1 - l2), 1)
                .eq("iii", "ω1+ω2+ω3 = λ1+λ2+λ3", trace_gap, 1)
                .ineq("iv", "e2(Ω) ≥ e2(Λ)", f2 - e2, 2)
        }
        (MatrixClass::General | MatrixClass::Stochastic, Spectrum::ComplexPair { a, .. }) => {
            let cite = if class == MatrixClass::General { CITE_GENERAL_COMPLEX } else { CITE_STOCHASTIC_COMPLEX };
            Items::new(scale, tol, cite)
                .ineq("i", "ω3 ≥ 0", w3, 1)
                .ineq("ii", "λ1 ≥ ω1", a - w1, 1)
                .eq("iii", "ω1+ω2+ω3 = λ1+λ2+λ3", trace_gap, 1)
                .ineq("iv", "e2(Ω) ≥ e2(Λ)", f2 - e2, 2)
        }
        (MatrixClass::Symmetric, Spectrum::RealTriple { l1, l2, .. }) => Items::new(scale, tol, CITE_SYMMETRIC)
            .ineq("i", "ω3 ≥ 0", w3, 1)
            .ineq("ii", "λ1 ≥ ω1 ≥ λ2", (l1 - w1).min(w1 - l2), 1)
            .ineq("iii", "λ1+λ2 ≥ ω1+ω2", l1 + l2 - w1 - w2, 1)
            .eq("iv", "ω1+ω2+ω3 = λ1+λ2+λ3", trace_gap, 1),
        (MatrixClass::SymmetricStochastic, _) => {
            let t = sds_terms(s, d);
            Items::new(scale, tol, CITE_SDS)
                .ineq("i", "ω3 ≥ 0", w3, 1)
                .eq("ii", "ω1+ω2+ω3 = λ1+λ2+λ3", trace_gap, 1)
                .ineq("iii", "s = ω3 − (λ2+λ3)/2 ≥ 0", t.s, 1)
                .eq("iv", "s² = (λ1−ω1)(λ1−ω2) − (λ1−λ2)(λ1−λ3)/3", t.s * t.s - t.v, 2)
        }
        (MatrixClass::DoublyStochastic, _) => {
            let t = sds_terms(s, d);
            let real = s.is_real();
            let items = Items::new(scale, tol, if real { CITE_DS_REAL } else { CITE_DS_COMPLEX })
                .ineq("i", "ω3 ≥ 0", w3, 1)
                .eq("ii", "ω1+ω2+ω3 = λ1+λ2+λ3", trace_gap, 1)
                .ineq("iii", "s = ω3 − (λ2+λ3)/2 ≥ 0", t.s, 1)
                .ineq("iv", "V = (λ1−ω1)(λ1−ω2) − (λ1−λ2)(λ1−λ3)/3 ≥ 0", t.v, 2);
            if real {
                items.ineq("v", "s² ≥ V", t.s * t.s - t.v, 2)
            } else {
                items
            }
        }
        (MatrixClass::Symmetric, Spectrum::ComplexPair { .. }) => unreachable!("rejected by mismatch"),
    };
    Ok(ConditionReport::new(class, items.items))
}

/// Conditions on the spectrum alone under which some diagonal is feasible.
pub fn realizable<T: Scalar>(
    class: MatrixClass,
    s: &Spectrum<T>,
    tol: &Tolerance<T>,
) -> Result<RealizabilityReport<T>> {
    mismatch(class, s)?;
    let scale = s.scale();
    let two = T::lit(2.0);
    let items = match *s {
        Spectrum::RealTriple { l1, l2, l3 } => match class {
            MatrixClass::General | MatrixClass::Symmetric | MatrixClass::Stochastic => {
                let cite = match class {
                    MatrixClass::General => CITE_GENERAL_REAL,
                    MatrixClass::Symmetric => CITE_SYMMETRIC,
                    _ => CITE_STOCHASTIC_REAL,
                };
                Items::new(scale, tol, cite)
                    .ineq("i", "λ1+λ3 ≥ 0", l1 + l3, 1)
                    .ineq("ii", "λ1+λ2+λ3 ≥ 0", l1 + l2 + l3, 1)
            }
            MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic => {
                let cite = if class == MatrixClass::DoublyStochastic { CITE_DS_REAL } else { CITE_SDS };
                Items::new(scale, tol, cite).ineq("i", "2λ1+λ2+3λ3 ≥ 0", two * l1 + l2 + T::lit(3.0) * l3, 1)
            }
        },
        Spectrum::ComplexPair { a, b, c } => {
            let cite = match class {
                MatrixClass::General => CITE_GENERAL_COMPLEX,
                MatrixClass::Stochastic => CITE_STOCHASTIC_COMPLEX,
                _ => CITE_DS_COMPLEX,
            };
            Items::new(scale, tol, cite)
                .ineq("i", "a ≥ 0", a, 1)
                .ineq("ii", "−a/2 ≤ b ≤ a", (b + a / two).min(a - b), 1)
                .ineq("iii", "(a−b)² ≥ 3c²", (a - b) * (a - b) - T::lit(3.0) * c * c, 2)
        }
    };
    let satisfied = items.items.iter().all(|i| i.satisfied);
    Ok(RealizabilityReport { class, satisfied, items: items.items })
}

/// The 2x2 conditions; `DoublyStochastic` is treated as `SymmetricStochastic`.
pub fn check_pair<T: Scalar>(
    class: MatrixClass,
    s: &PairSpectrum<T>,
    d: &PairDiagonal<T>,
    tol: &Tolerance<T>,
) -> ConditionReport<T> {
    let scale = s.scale();
    let (l1, l2, w1, w2) = (s.l1(), s.l2(), d.w1(), d.w2());
    let items = match class {
        MatrixClass::SymmetricStochastic | MatrixClass::DoublyStochastic => Items::new(scale, tol, CITE_PAIR_SDS)
            .ineq("i", "ω2 ≥ 0", w2, 1)
            .eq("ii", "ω1+ω2 = λ1+λ2", w1 + w2 - l1 - l2, 1)
            .eq("iii", "ω1 = ω2", w1 - w2, 1),
        _ => Items::new(scale, tol, CITE_PAIR)
            .ineq("i", "ω2 ≥ 0", w2, 1)
            .eq("ii", "ω1+ω2 = λ1+λ2", w1 + w2 - l1 - l2, 1)
            .ineq("iii", "ω1ω2 ≥ λ1λ2", w1 * w2 - l1 * l2, 2),
    };
    ConditionReport::new(class, items.items)
}

/// 2x2 realizability, identical for every class: `λ1 + λ2 ≥ 0`.
pub fn realizable_pair<T: Scalar>(class: MatrixClass, s: &PairSpectrum<T>, tol: &Tolerance<T>) -> RealizabilityReport<T> {
    let items = Items::new(s.scale(), tol, CITE_PAIR).ineq("i", "λ1+λ2 ≥ 0", s.l1() + s.l2(), 1);
    RealizabilityReport { class, satisfied: items.items[0].satisfied, items: items.items }
}

/// Audits that `λ1+λ2 ≥ ω1+ω2` implies `e2(Ω) ≥ e2(Λ)` under the shared premises.
pub fn implication_audit<T: Scalar>(
    s: &Spectrum<T>,
    d: &DiagonalTriple<T>,
    tol: &Tolerance<T>,
) -> Result<ImplicationAudit> {
    if !s.is_real() {
        return Err(Error::ClassSpectrumMismatch { class: MatrixClass::Symmetric });
    }
    let sym = check(MatrixClass::Symmetric, s, d, tol)?;
    let gen = check(MatrixClass::General, s, d, tol)?;
    let ok = |r: &ConditionReport<T>, l: &str| r.item(l).is_some_and(|i| i.satisfied);
    let premises_hold = ok(&gen, "ii") && ok(&gen, "iii");
    let symmetric_iii_holds = ok(&sym, "iii");
    let general_iv_holds = ok(&gen, "iv");
    Ok(ImplicationAudit {
        premises_hold,
        symmetric_iii_holds,
        general_iv_holds,
        implication_respected: !(premises_hold && symmetric_iii_holds && !general_iv_holds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn real(a: f64, b: f64, c: f64) -> Spectrum<f64> {
        Spectrum::real(a, b, c).unwrap()
    }

    fn diag(a: f64, b: f64, c: f64) -> DiagonalTriple<f64> {
        DiagonalTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn remark_values() {
        let s = real(1.0, 0.5, 0.25);
        let d = diag(0.8, 0.75, 0.2);
        let g = check(MatrixClass::General, &s, &d, &tol()).unwrap();
        assert!(g.overall);
        // 3/5 + 4/25 + 3/20 - 7/8
        assert_abs_diff_eq!(g.item("iv").unwrap().slack, 7.0 / 200.0, epsilon = 1e-12);
        let y = check(MatrixClass::Symmetric, &s, &d, &tol()).unwrap();
        assert!(!y.overall);
        assert_eq!(y.failed_labels(), vec!["iii"]);
        assert_abs_diff_eq!(y.item("iii").unwrap().slack, -0.05, epsilon = 1e-12);
    }

    #[test]
    fn symmetric_stochastic_equality_example() {
        let r = check(MatrixClass::SymmetricStochastic, &real(1.0, 0.4, 0.1), &diag(0.6, 0.45, 0.45), &tol()).unwrap();
        assert!(r.overall);
        assert_abs_diff_eq!(r.item("iii").unwrap().slack, 0.2, epsilon = 1e-15);
        assert!(r.item("iv").unwrap().slack.abs() < 1e-15);
        assert_eq!(r.item("iv").unwrap().kind, ConditionKind::Equality);
    }

    #[test]
    fn doubly_stochastic_example() {
        let s = real(1.0, 0.4, 0.1);
        let d = diag(0.7, 0.4, 0.4);
        let r = check(MatrixClass::DoublyStochastic, &s, &d, &tol()).unwrap();
        assert!(r.overall);
        assert_eq!(r.items.len(), 5);
        let t = sds_terms(&s, &d);
        assert_abs_diff_eq!(t.v, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.s * t.s, 0.0225, epsilon = 1e-15);
    }

    #[test]
    fn complex_general_equal_diagonal() {
        let s = Spectrum::complex(1.0, 0.2, 0.3).unwrap();
        let w = 1.4 / 3.0;
        let r = check(MatrixClass::General, &s, &diag(w, w, w), &tol()).unwrap();
        assert!(r.overall);
        assert_eq!(r.item("ii").unwrap().description, "λ1 ≥ ω1");
        let st = check(MatrixClass::Stochastic, &s, &diag(w, w, w), &tol()).unwrap();
        assert_eq!(st.overall, r.overall);
    }

    #[test]
    fn complex_doubly_stochastic_has_four_conditions() {
        let s = Spectrum::complex(1.0, 0.2, 0.3).unwrap();
        let w = 1.4 / 3.0;
        let r = check(MatrixClass::DoublyStochastic, &s, &diag(w, w, w), &tol()).unwrap();
        assert_eq!(r.items.len(), 4);
        assert!(r.overall);
    }

    #[test]
    fn symmetric_classes_reject_complex_spectra() {
        let s = Spectrum::complex(1.0, 0.2, 0.3).unwrap();
        let d = diag(0.5, 0.45, 0.45);
        for class in [MatrixClass::Symmetric, MatrixClass::SymmetricStochastic] {
            assert_eq!(check(class, &s, &d, &tol()), Err(Error::ClassSpectrumMismatch { class }));
            assert_eq!(realizable(class, &s, &tol()), Err(Error::ClassSpectrumMismatch { class }));
        }
    }

    #[test]
    fn full_report_without_short_circuit() {
        let r = check(MatrixClass::General, &real(1.0, 0.5, 0.25), &diag(2.0, 0.5, -1.0), &tol()).unwrap();
        assert_eq!(r.items.len(), 4);
        assert_eq!(r.failed_labels(), vec!["i", "ii", "iii", "iv"]);
        assert_eq!(r.failure_summary().len(), 4);
    }

    #[test]
    fn general_and_stochastic_items_agree() {
        let s = real(1.0, 0.3, -0.2);
        let d = diag(0.6, 0.3, 0.2);
        let g = check(MatrixClass::General, &s, &d, &tol()).unwrap();
        let st = check(MatrixClass::Stochastic, &s, &d, &tol()).unwrap();
        assert_eq!(g.overall, st.overall);
        for (a, b) in g.items.iter().zip(&st.items) {
            assert_eq!((a.label, a.slack, a.satisfied), (b.label, b.slack, b.satisfied));
        }
    }

    #[test]
    fn realizability_examples() {
        let s = real(1.0, 0.5, -0.9);
        assert!(realizable(MatrixClass::General, &s, &tol()).unwrap().satisfied);
        let ds = realizable(MatrixClass::DoublyStochastic, &s, &tol()).unwrap();
        assert!(!ds.satisfied);
        assert_abs_diff_eq!(ds.items[0].slack, -0.2, epsilon = 1e-12);
        assert_eq!(ds.items[0].description, "2λ1+λ2+3λ3 ≥ 0");
        let c = Spectrum::complex(1.0, 0.2, 0.3).unwrap();
        let r = realizable(MatrixClass::Stochastic, &c, &tol()).unwrap();
        assert!(r.satisfied);
        assert_abs_diff_eq!(r.items[2].slack, 0.64 - 0.27, epsilon = 1e-12);
        assert!(realizable(MatrixClass::General, &real(1.0, 1.0, 1.0), &tol()).unwrap().satisfied);
    }

    #[test]
    fn realizability_failures_name_conditions() {
        let r = realizable(MatrixClass::General, &real(1.0, -0.2, -1.1), &tol()).unwrap();
        assert!(!r.satisfied);
        assert!(!r.items[0].satisfied);
        let c = Spectrum::complex(1.0, 0.2, 0.5).unwrap();
        let r = realizable(MatrixClass::General, &c, &tol()).unwrap();
        assert!(!r.items[2].satisfied);
        let c = Spectrum::complex(1.0, -0.6, 0.1).unwrap();
        assert!(!realizable(MatrixClass::DoublyStochastic, &c, &tol()).unwrap().items[1].satisfied);
    }

    #[test]
    fn pair_examples() {
        let s = PairSpectrum::new(1.0, -1.0).unwrap();
        let d = PairDiagonal::new(0.0, 0.0).unwrap();
        assert!(check_pair(MatrixClass::General, &s, &d, &tol()).overall);

        let s = PairSpectrum::new(1.0, 0.5).unwrap();
        let d = PairDiagonal::new(0.75, 0.75).unwrap();
        assert!(check_pair(MatrixClass::SymmetricStochastic, &s, &d, &tol()).overall);
        assert!(check_pair(MatrixClass::DoublyStochastic, &s, &d, &tol()).overall);

        let d = PairDiagonal::new(1.2, 0.3).unwrap();
        let r = check_pair(MatrixClass::General, &s, &d, &tol());
        assert_eq!(r.failed_labels(), vec!["iii"]);
        assert_abs_diff_eq!(r.item("iii").unwrap().slack, 0.36 - 0.5, epsilon = 1e-12);
    }

    #[test]
    fn pair_realizability() {
        let ok = PairSpectrum::new(1.0, -1.0).unwrap();
        let bad = PairSpectrum::new(1.0, -2.0).unwrap();
        assert!(realizable_pair(MatrixClass::Stochastic, &ok, &tol()).satisfied);
        assert!(!realizable_pair(MatrixClass::Stochastic, &bad, &tol()).satisfied);
    }

    #[test]
    fn implication_examples() {
        let a = implication_audit(&real(1.0, 0.5, 0.25), &diag(0.75, 0.5, 0.5), &tol()).unwrap();
        assert!(a.premises_hold && a.symmetric_iii_holds && a.general_iv_holds && a.implication_respected);

        let a = implication_audit(&real(1.0, 0.5, 0.25), &diag(0.8, 0.75, 0.2), &tol()).unwrap();
        assert!(!a.symmetric_iii_holds);
        assert!(a.general_iv_holds);
        assert!(a.implication_respected);

        let a = implication_audit(&real(1.0, 1.0, 1.0), &diag(1.0, 1.0, 1.0), &tol()).unwrap();
        assert!(a.premises_hold && a.symmetric_iii_holds && a.general_iv_holds && a.implication_respected);

        assert!(implication_audit(&Spectrum::complex(1.0, 0.2, 0.3).unwrap(), &diag(0.5, 0.45, 0.45), &tol()).is_err());
    }

    #[test]
    fn tolerance_is_degree_aware() {
        // trace off by 5e-10 at scale 1 passes; scaled by 100 the same relative error still passes
        let s = real(1.0, 0.5, 0.25);
        let d = diag(0.75, 0.5, 0.5 + 5e-10);
        assert!(check(MatrixClass::General, &s, &d, &tol()).unwrap().overall);
        let r = check(MatrixClass::General, &s.scaled(100.0), &d.scaled(100.0), &tol()).unwrap();
        assert!(r.overall);
        assert_abs_diff_eq!(r.item("iii").unwrap().tolerance, 1e-7, epsilon = 1e-20);
        assert_abs_diff_eq!(r.item("iv").unwrap().tolerance, 1e-5, epsilon = 1e-18);
        let d = diag(0.75, 0.5, 0.5 + 5e-9);
        assert!(!check(MatrixClass::General, &s, &d, &tol()).unwrap().overall);
    }
}
