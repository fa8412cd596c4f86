//! The bounded-horizon tester: exact power and product bitmasks, a verdict
//! that never claims anything beyond the tested horizon, and the small
//! constructions around the atomic-measure propositions.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Poly};
use crate::linalg::{solve, QMatrix};
use crate::mathieu::predicate::{Ambient, Element, Predicate};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
            Side::TwoSided => write!(f, "two-sided"),
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s.trim() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "two-sided" | "twosided" => Ok(Side::TwoSided),
            other => Err(Error::InvalidInput(format!("unknown side `{other}`"))),
        }
    }
}

/// Verdict vocabulary: the tester never claims "is a Mathieu subspace".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The product stayed in M for all tested m >= since.
    Corroborated { since: u64 },
    /// The power condition held throughout but the product was outside M at
    /// the final tested index.
    RefutedAtHorizon { last_exit: u64 },
    /// Some power f^m left M, so the pair carries no information about the
    /// Mathieu property (the definition's hypothesis fails).
    PowerConditionFails { at: u64 },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Corroborated { since } => write!(f, "corroborated(N0={since})"),
            Verdict::RefutedAtHorizon { last_exit } => {
                write!(f, "refuted-at-horizon(last-exit={last_exit})")
            }
            Verdict::PowerConditionFails { at } => write!(f, "power-condition-fails(m={at})"),
        }
    }
}

impl Verdict {
    /// Pure function of the two bitmasks (index 0 is m = 1).
    pub fn from_masks(power: &[bool], product: &[bool]) -> Verdict {
        if let Some(i) = power.iter().position(|&ok| !ok) {
            return Verdict::PowerConditionFails { at: i as u64 + 1 };
        }
        match product.iter().rposition(|&ok| !ok) {
            None => Verdict::Corroborated { since: 1 },
            Some(e) if e + 1 == product.len() => {
                Verdict::RefutedAtHorizon { last_exit: e as u64 + 1 }
            }
            Some(e) => Verdict::Corroborated { since: e as u64 + 2 },
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedAtHorizon { .. })
    }
}

#[derive(Debug, Clone)]
pub struct MathieuReport {
    pub predicate: String,
    pub ambient: Ambient,
    pub f: Element,
    pub g: Element,
    pub horizon: u64,
    pub side: Side,
    pub power_mask: Vec<bool>,
    pub product_mask: Vec<bool>,
    pub verdict: Verdict,
}

fn mask_row(mask: &[bool]) -> String {
    mask.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for MathieuReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "predicate: {}", self.predicate)?;
        writeln!(f, "ambient: {}", self.ambient)?;
        writeln!(f, "side: {}", self.side)?;
        writeln!(f, "f: {}", self.f)?;
        writeln!(f, "g: {}", self.g)?;
        writeln!(f, "horizon: {}", self.horizon)?;
        writeln!(f, "powers:   {}", mask_row(&self.power_mask))?;
        writeln!(f, "products: {}", mask_row(&self.product_mask))?;
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Exact bitmask computation of f^m in M and f^m*g (resp. g*f^m) in M for
/// m = 1..=horizon. The left/right distinction matters only for matrices.
pub fn mathieu_test(
    pred: &Predicate,
    f: &Element,
    g: &Element,
    horizon: u64,
    side: Side,
) -> Result<MathieuReport> {
    let ambient = pred.ambient();
    for e in [f, g] {
        if !e.fits(ambient) {
            return Err(Error::AmbientMismatch(format!(
                "element {e} does not fit ambient {ambient}"
            )));
        }
    }
    let mut power_mask = Vec::with_capacity(horizon as usize);
    let mut product_mask = Vec::with_capacity(horizon as usize);
    let mut p = f.clone();
    for _m in 1..=horizon {
        power_mask.push(pred.test(&p)?);
        let in_m = match side {
            Side::Right => pred.test(&p.mul(g)?)?,
            Side::Left => pred.test(&g.mul(&p)?)?,
            Side::TwoSided => pred.test(&p.mul(g)?)? && pred.test(&g.mul(&p)?)?,
        };
        product_mask.push(in_m);
        p = p.mul(f)?;
    }
    let verdict = Verdict::from_masks(&power_mask, &product_mask);
    Ok(MathieuReport {
        predicate: pred.name().to_string(),
        ambient,
        f: f.clone(),
        g: g.clone(),
        horizon,
        side,
        power_mask,
        product_mask,
        verdict,
    })
}

/// Outcome of the identity-element shortcut.
#[derive(Debug, Clone, PartialEq)]
pub enum ShortcutVerdict {
    /// 1 lies in M and some probe does not: M is proper with 1 in it, hence
    /// not a Mathieu subspace; the witness pair is (1, probe).
    NotMathieu { probe: Element },
    /// 1 lies in M but every probe does too (no conclusion).
    Inconclusive,
    /// 1 is not in M; the shortcut does not apply.
    Inapplicable,
}

/// If 1 is in M and a probe element is not, M is proper and contains the
/// identity, which no proper one-sided Mathieu subspace can.
pub fn one_membership_shortcut(
    pred: &Predicate,
    probes: &[Element],
) -> Result<ShortcutVerdict> {
    let one = Element::one(pred.ambient());
    if !pred.test(&one)? {
        return Ok(ShortcutVerdict::Inapplicable);
    }
    for probe in probes {
        if !pred.test(probe)? {
            return Ok(ShortcutVerdict::NotMathieu { probe: probe.clone() });
        }
    }
    Ok(ShortcutVerdict::Inconclusive)
}

/// No non-empty subset of the weights sums to zero (exhaustive check,
/// k <= 20 enforced).
pub fn atomic_mathieu_condition(weights: &[Rational]) -> Result<bool> {
    if weights.is_empty() || weights.len() > 20 {
        return Err(Error::InvalidInput(format!(
            "subset-sum check needs 1..=20 weights, got {}",
            weights.len()
        )));
    }
    if weights.iter().any(Rational::is_zero) {
        return Err(Error::InvalidInput("weights must be nonzero".into()));
    }
    let k = weights.len();
    for mask in 1u32..(1 << k) {
        let mut sum = Rational::zero();
        for (i, w) in weights.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += w;
            }
        }
        if sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The literal points-sum variant: no non-empty subset of the support
/// points sums to the zero vector.
pub fn atomic_points_sum_condition(points: &[Vec<Rational>]) -> Result<bool> {
    if points.is_empty() || points.len() > 20 {
        return Err(Error::InvalidInput(format!(
            "subset-sum check needs 1..=20 points, got {}",
            points.len()
        )));
    }
    let n = points[0].len();
    let k = points.len();
    for mask in 1u32..(1 << k) {
        let mut sum = vec![Rational::zero(); n];
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (s, c) in sum.iter_mut().zip(p) {
                    *s += c;
                }
            }
        }
        if sum.iter().all(Rational::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The polynomial that is 1 on the selected points and 0 on the rest:
/// plain Lagrange interpolation in one variable, per-coordinate Lagrange
/// products on the coordinate grid for n >= 2.
pub fn interpolating_indicator(
    points: &[Vec<Rational>],
    selected: &[bool],
) -> Result<Poly> {
    if points.is_empty() || points.len() != selected.len() {
        return Err(Error::InvalidInput(
            "need matching non-empty point and selection lists".into(),
        ));
    }
    let n = points[0].len();
    if points.iter().any(|p| p.len() != n) || n == 0 {
        return Err(Error::InvalidInput("points of mixed or zero dimension".into()));
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(Error::InvalidInput(format!(
                    "coincident points at positions {i} and {j}"
                )));
            }
        }
    }
    // distinct values per coordinate
    let mut grid: Vec<Vec<Rational>> = vec![Vec::new(); n];
    for p in points {
        for (axis, c) in grid.iter_mut().zip(p) {
            if !axis.contains(c) {
                axis.push(c.clone());
            }
        }
    }
    let mut f = LaurentPoly::zero(n);
    for (p, &take) in points.iter().zip(selected) {
        if !take {
            continue;
        }
        let mut ind = LaurentPoly::one(n);
        for (i, val) in p.iter().enumerate() {
            ind = &ind * &lagrange_factor(n, i, val, &grid[i]);
        }
        f = &f + &ind;
    }
    let f = Poly::try_from_laurent(f)?;
    // evaluation check: exactly the selected indicator values
    for (p, &take) in points.iter().zip(selected) {
        let v = f.eval(p)?;
        let expect = if take { Rational::one() } else { Rational::zero() };
        if v != expect {
            return Err(Error::WitnessVerification(format!(
                "indicator evaluates to {v} instead of {expect}"
            )));
        }
    }
    Ok(f)
}

/// One-variable Lagrange factor through the grid values: 1 at `at`, 0 at
/// the other grid values, as a polynomial in z_i.
fn lagrange_factor(nvars: usize, i: usize, at: &Rational, values: &[Rational]) -> LaurentPoly {
    let mut num = LaurentPoly::one(nvars);
    let mut den = Rational::one();
    for v in values {
        if v == at {
            continue;
        }
        let factor = &LaurentPoly::var(nvars, i) - &LaurentPoly::constant(nvars, v.clone());
        num = &num * &factor;
        den *= &(at - v);
    }
    num.scale(&den.recip())
}

/// From the vanishing of sum_j c_j^m s_j for m = 1..s with distinct nonzero
/// c_j, recover the group sums s_j by one exact Vandermonde solve. Returns
/// None when the solve is inconsistent (it cannot be for distinct nonzero
/// c_j; the Option mirrors the exact solver).
pub fn vandermonde_group_sums(
    cs: &[Rational],
    power_sums: &[Rational],
) -> Option<Vec<Rational>> {
    let s = cs.len();
    assert_eq!(power_sums.len(), s, "one power sum per exponent row");
    let mut mat = QMatrix::zeros(s, s);
    for (m, _) in power_sums.iter().enumerate() {
        for (j, c) in cs.iter().enumerate() {
            // row m corresponds to the (m+1)-st power
            let mut v = Rational::one();
            for _ in 0..=m {
                v *= c;
            }
            mat.set(m, j, v);
        }
    }
    solve(&mat, power_sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Monomial;
    use crate::rational::{rat, rat_int};

    fn p1(terms: &[(i64, i64)]) -> LaurentPoly {
        let owned: Vec<([i64; 1], Rational)> =
            terms.iter().map(|&(e, c)| ([e], rat_int(c))).collect();
        let refs: Vec<(&[i64], Rational)> =
            owned.iter().map(|(e, c)| (&e[..], c.clone())).collect();
        LaurentPoly::from_terms(1, &refs)
    }

    #[test]
    fn dk_style_report() {
        // M = no constant term, f = z, g = z^-3, N = 10: products z^{m-3}
        // exit at m = 3, so N0 = 4
        let pred = Predicate::no_constant_term(1);
        let f = Element::Poly(LaurentPoly::var(1, 0));
        let g = Element::Poly(p1(&[(-3, 1)]));
        let report = mathieu_test(&pred, &f, &g, 10, Side::TwoSided).unwrap();
        assert!(report.power_mask.iter().all(|&b| b));
        assert_eq!(report.verdict, Verdict::Corroborated { since: 4 });
        assert_eq!(mask_row(&report.product_mask), "1101111111");
    }

    #[test]
    fn power_condition_failure_detected() {
        // (z^-1 + z^3)^4 has a constant term
        let pred = Predicate::no_constant_term(1);
        let f = Element::Poly(p1(&[(-1, 1), (3, 1)]));
        let g = Element::Poly(LaurentPoly::one(1));
        let report = mathieu_test(&pred, &f, &g, 10, Side::TwoSided).unwrap();
        assert_eq!(report.verdict, Verdict::PowerConditionFails { at: 4 });
    }

    #[test]
    fn matrix_nilpotent_corroborated() {
        let dim = 3;
        let pred = Predicate::trace_zero(dim);
        let f = Element::Matrix(QMatrix::jordan_nilpotent(dim));
        let mut g = QMatrix::identity(dim);
        g.set(0, 0, rat(7, 2)); // arbitrary non-commuting probe
        g.set(2, 0, rat_int(1));
        let report = mathieu_test(&pred, &f, &Element::Matrix(g), 8, Side::TwoSided).unwrap();
        assert!(report.power_mask.iter().all(|&b| b));
        match report.verdict {
            Verdict::Corroborated { since } => assert!(since <= dim as u64),
            v => panic!("unexpected verdict {v}"),
        }
    }

    #[test]
    fn refutation_via_atomic_counterexample() {
        // sigma = {(0,1),(1,-1)}: f = 1 (indicator of both points), g = z
        let points = vec![vec![rat_int(0)], vec![rat_int(1)]];
        let weights = vec![rat_int(1), rat_int(-1)];
        let pred = Predicate::atomic(points.clone(), weights).unwrap();
        let f = interpolating_indicator(&points, &[true, true]).unwrap();
        let g = Element::Poly(LaurentPoly::var(1, 0));
        let report =
            mathieu_test(&pred, &Element::Poly(f.into_laurent()), &g, 12, Side::TwoSided)
                .unwrap();
        assert!(report.power_mask.iter().all(|&b| b));
        assert!(report.product_mask.iter().all(|&b| !b));
        assert_eq!(report.verdict, Verdict::RefutedAtHorizon { last_exit: 12 });
    }

    #[test]
    fn subset_sum_conditions() {
        assert!(atomic_mathieu_condition(&[rat_int(1), rat_int(2), rat_int(5)]).unwrap());
        assert!(!atomic_mathieu_condition(&[rat_int(1), rat_int(-1)]).unwrap());
        assert!(atomic_mathieu_condition(&[rat_int(1), rat_int(2), rat_int(-4)]).unwrap());
        assert!(atomic_mathieu_condition(&[]).is_err());
        // literal points variant: subset {0} already sums to zero
        let pts = vec![vec![rat_int(0)], vec![rat_int(1)]];
        assert!(!atomic_points_sum_condition(&pts).unwrap());
        let pts = vec![vec![rat_int(2)], vec![rat_int(1)]];
        assert!(atomic_points_sum_condition(&pts).unwrap());
    }

    #[test]
    fn indicator_examples() {
        // S = {0,1}, S' = {1}: f = z
        let pts = vec![vec![rat_int(0)], vec![rat_int(1)]];
        let f = interpolating_indicator(&pts, &[false, true]).unwrap();
        assert_eq!(f.as_laurent(), &LaurentPoly::var(1, 0));
        // S = {0,1,2}, S' = {1}: f = 2z - z^2
        let pts = vec![vec![rat_int(0)], vec![rat_int(1)], vec![rat_int(2)]];
        let f = interpolating_indicator(&pts, &[false, true, false]).unwrap();
        assert_eq!(f.as_laurent(), &p1(&[(1, 2), (2, -1)]));
        // |S| = 1, S' = S: f = 1
        let pts = vec![vec![rat_int(5)]];
        let f = interpolating_indicator(&pts, &[true]).unwrap();
        assert_eq!(f.as_laurent(), &LaurentPoly::one(1));
        // coincident points error
        let pts = vec![vec![rat_int(1)], vec![rat_int(1)]];
        assert!(interpolating_indicator(&pts, &[true, false]).is_err());
    }

    #[test]
    fn indicator_two_vars() {
        let pts = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        let f = interpolating_indicator(&pts, &[false, true, true]).unwrap();
        for (p, expect) in pts.iter().zip([0, 1, 1]) {
            assert_eq!(f.eval(p).unwrap(), rat_int(expect));
        }
    }

    #[test]
    fn valuation_cases() {
        // nu = total degree, c = 1: no constant term
        let pred = Predicate::valuation(vec![rat_int(1)], rat_int(1));
        let f = Element::Poly(p1(&[(0, 1), (1, 1)]));
        assert!(!pred.test(&f).unwrap());
        let g = Element::Poly(p1(&[(2, 1), (3, 1)]));
        assert!(pred.test(&g).unwrap());
        let two = Predicate::valuation(vec![rat_int(1)], rat_int(2));
        assert!(two.test(&g).unwrap());
        assert!(two.test(&Element::Poly(LaurentPoly::zero(1))).unwrap());
    }

    #[test]
    fn shortcut_cases() {
        // lambda = -3: 1 in Im', z^2 not in Im' -> not Mathieu
        let pred = Predicate::image_phi_poly(vec![rat_int(-3)]);
        let probe = Element::Poly(p1(&[(2, 1)]));
        match one_membership_shortcut(&pred, &[probe]).unwrap() {
            ShortcutVerdict::NotMathieu { .. } => {}
            v => panic!("expected refutation, got {v:?}"),
        }
        // no-constant-term: 1 is not in M
        let pred = Predicate::no_constant_term(1);
        assert_eq!(
            one_membership_shortcut(&pred, &[]).unwrap(),
            ShortcutVerdict::Inapplicable
        );
    }

    #[test]
    fn vandermonde_recovery() {
        let cs = vec![rat_int(1), rat_int(2), rat(-1, 2)];
        let groups = vec![rat(3, 4), rat_int(-2), rat_int(5)];
        let power_sums: Vec<Rational> = (1..=3u32)
            .map(|m| {
                cs.iter()
                    .zip(&groups)
                    .map(|(c, s)| {
                        let mut v = s.clone();
                        for _ in 0..m {
                            v *= c;
                        }
                        v
                    })
                    .sum()
            })
            .collect();
        let got = vandermonde_group_sums(&cs, &power_sums).unwrap();
        assert_eq!(got, groups);
        // all power sums zero forces all group sums zero
        let zeros = vec![Rational::zero(); 3];
        assert_eq!(vandermonde_group_sums(&cs, &zeros).unwrap(), zeros);
    }

    #[test]
    fn intersection_and_span() {
        let m1 = Predicate::no_constant_term(1);
        let m2 = Predicate::coeff_zero(1, Monomial(vec![1]));
        let both = Predicate::intersect(vec![m1, m2]).unwrap();
        assert!(!both.test(&Element::Poly(p1(&[(1, 1)]))).unwrap());
        assert!(both.test(&Element::Poly(p1(&[(2, 1)]))).unwrap());

        let span = Predicate::span(1, vec![p1(&[(0, 1), (1, 1)])], true);
        assert!(span.test(&Element::Poly(p1(&[(0, 3), (1, 3)]))).unwrap());
        assert!(!span.test(&Element::Poly(p1(&[(0, 1)]))).unwrap());
        assert!(span.test(&Element::Poly(LaurentPoly::zero(1))).unwrap());
    }

    #[test]
    fn extension_lift() {
        // M = atomic over one variable, lifted along a second variable
        let inner = Predicate::atomic(
            vec![vec![rat_int(0)], vec![rat_int(1)]],
            vec![rat_int(1), rat_int(2)],
        )
        .unwrap();
        let lifted = Predicate::lift_extension(inner).unwrap();
        // h = (2 - 3x) * z2^k has coefficients in M: 1*2 + 2*(-1) = 0
        let base = LaurentPoly::from_terms(
            2,
            &[(&[0, 0], rat_int(2)), (&[1, 0], rat_int(-3))],
        );
        let z2 = LaurentPoly::var(2, 1);
        let h = &base + &(&base * &z2);
        assert!(lifted.test(&Element::Poly(h)).unwrap());
        let bad = &base + &z2; // z2 coefficient 1 is not in M
        assert!(!lifted.test(&Element::Poly(bad)).unwrap());
    }
}
