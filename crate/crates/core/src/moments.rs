//! Exact moment functionals: normalized moments of the classical weight
//! families via Gamma/Beta-ratio recurrences, exact polynomial integration
//! over boxes and atomic measures, the signed-density integrals, and the
//! oscillatory integrals over (0,1) represented symbolically in powers of
//! 1/(2*pi*m).

use crate::error::{Error, Result};
use crate::families::{AxisFamily, Family, FamilyKind};
use crate::laurent::Poly;
use crate::rational::{
    binomial, double_factorial_odd, pochhammer, rat, rat_int, GaussianRational, Rational,
};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A measure on an open set: a classical weight family (always used in
/// normalized form), a finite atomic measure, a plain Lebesgue box, or the
/// signed density q(z)dz on an interval.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    Weight { family: Family },
    Atomic { points: Vec<Vec<Rational>>, weights: Vec<Rational> },
    LebesgueBox { bounds: Vec<(Rational, Rational)> },
    SignedDensity { q: Poly, a: Rational, b: Rational },
}

impl MeasureSpec {
    pub fn nvars(&self) -> usize {
        match self {
            MeasureSpec::Weight { family } => family.nvars(),
            MeasureSpec::Atomic { points, .. } => points.first().map_or(0, Vec::len),
            MeasureSpec::LebesgueBox { bounds } => bounds.len(),
            MeasureSpec::SignedDensity { .. } => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Weight { .. } => Ok(()),
            MeasureSpec::Atomic { points, weights } => {
                if points.len() != weights.len() || points.is_empty() {
                    return Err(Error::InvalidInput(
                        "atomic measure needs matching, non-empty point and weight lists".into(),
                    ));
                }
                if weights.iter().any(Rational::is_zero) {
                    return Err(Error::InvalidInput("atomic weights must be nonzero".into()));
                }
                let n = points[0].len();
                if points.iter().any(|p| p.len() != n) {
                    return Err(Error::InvalidInput("atomic points of mixed dimension".into()));
                }
                Ok(())
            }
            MeasureSpec::LebesgueBox { bounds } => {
                if bounds.is_empty() || bounds.iter().any(|(a, b)| a >= b) {
                    return Err(Error::InvalidInput(
                        "box bounds must be non-empty and strictly ordered".into(),
                    ));
                }
                Ok(())
            }
            MeasureSpec::SignedDensity { a, b, .. } => {
                if a >= b {
                    return Err(Error::InvalidInput("interval must satisfy a < b".into()));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::Weight { family } => write!(f, "weight:{family}"),
            MeasureSpec::Atomic { points, weights } => {
                let pts: Vec<String> = points
                    .iter()
                    .map(|p| {
                        format!(
                            "({})",
                            p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                let ws: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                write!(f, "atomic:points={};weights={}", pts.join(","), ws.join(","))
            }
            MeasureSpec::LebesgueBox { bounds } => {
                let bs: Vec<String> = bounds.iter().map(|(a, b)| format!("({a},{b})")).collect();
                write!(f, "box:{}", bs.join(","))
            }
            MeasureSpec::SignedDensity { q, a, b } => {
                write!(f, "signed:q={q};a={a};b={b}")
            }
        }
    }
}

fn axis_moment(ax: &AxisFamily, k: u64) -> Rational {
    match ax {
        // 0 for odd k, (k-1)!!/2^{k/2} for even
        AxisFamily::Hermite => {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                let s = k / 2;
                let mut half_pow = Rational::one();
                for _ in 0..s {
                    half_pow *= rat(1, 2);
                }
                double_factorial_odd(s) * half_pow
            }
        }
        // rising factorial (a+1)_k
        AxisFamily::Laguerre(a) => pochhammer(&(a + &Rational::one()), k),
        // expand z^k in powers of (1+z); each (1+z)^j integrates to the
        // Beta ratio 2^j (b+1)_j / (a+b+2)_j against (1-z)^a (1+z)^b
        AxisFamily::Jacobi(a, b) => {
            let mut acc = Rational::zero();
            let ab2 = &(a + b) + &rat_int(2);
            for j in 0..=k {
                let sign = if (k - j) % 2 == 0 { Rational::one() } else { rat_int(-1) };
                let mut two_j = Rational::one();
                for _ in 0..j {
                    two_j *= rat_int(2);
                }
                let term = &(&(&binomial(k, j) * &sign) * &two_j)
                    * &(&pochhammer(&(b + &Rational::one()), j) / &pochhammer(&ab2, j));
                acc += term;
            }
            acc
        }
    }
}

/// Exact normalized moment: integral of z^gamma against the family weight,
/// divided by the total mass. Parameters must lie in the family's domain;
/// there is no formal-value fallback for divergent integrals.
pub fn normalized_moment(kind: &FamilyKind, gamma: &[u64]) -> Result<Rational> {
    kind.check_domain()?;
    assert_eq!(gamma.len(), kind.nvars(), "multi-index length mismatch");
    match kind {
        FamilyKind::Axes(axes) => Ok(axes
            .iter()
            .zip(gamma)
            .map(|(ax, &k)| axis_moment(ax, k))
            .product()),
        FamilyKind::Ball { n, mu } => {
            if gamma.iter().any(|&k| k % 2 == 1) {
                return Ok(Rational::zero());
            }
            // gamma = 2s: prod_i (1/2)_{s_i} / (mu + (n+1)/2)_{|s|}
            let s: Vec<u64> = gamma.iter().map(|&k| k / 2).collect();
            let total: u64 = s.iter().sum();
            let num: Rational = s.iter().map(|&si| pochhammer(&rat(1, 2), si)).product();
            let shift = &rat_int(*n as i64 + 1) / &rat_int(2);
            let den = pochhammer(&(mu + &shift), total);
            Ok(&num / &den)
        }
        FamilyKind::Simplex { kappa } => {
            let n = kind.nvars();
            let total: u64 = gamma.iter().sum();
            let num: Rational = kappa[..n]
                .iter()
                .zip(gamma)
                .map(|(k, &g)| pochhammer(&(k + &Rational::one()), g))
                .product();
            let kappa_sum: Rational = kappa.iter().sum();
            let den = pochhammer(&(&kappa_sum + &rat_int(n as i64 + 1)), total);
            Ok(&num / &den)
        }
    }
}

/// Exact value of the measure's linear functional on a polynomial.
/// Weight measures integrate in normalized form; the other variants are raw.
pub fn integrate_poly(spec: &MeasureSpec, f: &Poly) -> Result<Rational> {
    spec.validate()?;
    match spec {
        MeasureSpec::Weight { family } => {
            let kind = family.kind()?;
            assert_eq!(f.nvars(), kind.nvars(), "dimension mismatch");
            let mut acc = Rational::zero();
            for (m, c) in f.terms() {
                let gamma: Vec<u64> = m.0.iter().map(|&e| e as u64).collect();
                acc += c * &normalized_moment(&kind, &gamma)?;
            }
            Ok(acc)
        }
        MeasureSpec::Atomic { points, weights } => {
            let mut acc = Rational::zero();
            for (p, w) in points.iter().zip(weights) {
                acc += w * &f.eval(p)?;
            }
            Ok(acc)
        }
        MeasureSpec::LebesgueBox { bounds } => box_integral(bounds, f),
        MeasureSpec::SignedDensity { q, a, b } => {
            let prod = f * q;
            interval_integral(&prod, a, b)
        }
    }
}

/// Exact iterated integral of a polynomial over a box.
pub fn box_integral(bounds: &[(Rational, Rational)], f: &Poly) -> Result<Rational> {
    assert_eq!(bounds.len(), f.nvars(), "dimension mismatch");
    let mut cur = f.as_laurent().clone();
    for (i, (a, b)) in bounds.iter().enumerate() {
        let anti = cur.antiderivative(i)?;
        cur = &anti.eval_var(i, b)? - &anti.eval_var(i, a)?;
    }
    Ok(cur.constant_term())
}

fn interval_integral(f: &Poly, a: &Rational, b: &Rational) -> Result<Rational> {
    box_integral(&[(a.clone(), b.clone())], f)
}

/// Positivity of the total mass. Weight families are positive on their
/// domain by construction; atomic measures need all weights positive; a
/// signed density reports the sign of its exact integral (zero mass is the
/// boundary regime of the moment problem).
pub fn total_mass_is_positive(spec: &MeasureSpec) -> Result<bool> {
    spec.validate()?;
    match spec {
        MeasureSpec::Weight { family } => {
            family.kind()?.check_domain()?;
            Ok(true)
        }
        MeasureSpec::Atomic { weights, .. } => Ok(weights.iter().all(|w| w.is_positive())),
        MeasureSpec::LebesgueBox { .. } => Ok(true),
        MeasureSpec::SignedDensity { q, a, b } => {
            let mass = interval_integral(q, a, b)?;
            Ok(mass.is_positive())
        }
    }
}

/// The normalized Hermitian form (f, g) = integral of f*g against the
/// weight (conjugation is the identity over rational data).
pub fn weighted_inner(family: &Family, f: &Poly, g: &Poly) -> Result<Rational> {
    integrate_poly(&MeasureSpec::Weight { family: family.clone() }, &(f * g))
}

/// Exact value of the integral of p(z) e^{2 pi i m z} over (0, 1), written
/// as sum_{k>=1} c_k (2 pi m)^{-k} with Gaussian-rational coefficients
/// c_k = (-1)^{k-1} (p^{(k-1)}(1) - p^{(k-1)}(0)) / i^k. The value is zero
/// iff every coefficient vanishes (pi is treated as transcendental).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscillatorySeries {
    coeffs: Vec<GaussianRational>,
}

impl OscillatorySeries {
    /// Coefficient of (2 pi m)^{-k}; k is 1-based.
    pub fn coeff(&self, k: usize) -> GaussianRational {
        assert!(k >= 1, "coefficients start at k = 1");
        self.coeffs.get(k - 1).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }
}

impl fmt::Display for OscillatorySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*(2*pi*m)^-{}", c, idx + 1)?;
        }
        Ok(())
    }
}

/// Integration by parts against e^{2 pi i m z} on (0, 1): the boundary
/// exponentials are 1 at both endpoints, so only the derivative gaps
/// p^{(k-1)}(1) - p^{(k-1)}(0) survive. The coefficient list does not
/// depend on m (m scales through the powers of (2 pi m)^{-1}).
pub fn oscillatory_integral(p: &Poly, m: u64) -> Result<OscillatorySeries> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be a positive integer".into()));
    }
    assert_eq!(p.nvars(), 1, "oscillatory integral is one-variable");
    let mut coeffs = Vec::new();
    let mut deriv = p.as_laurent().clone();
    let zero_pt = [Rational::zero()];
    let one_pt = [Rational::one()];
    // 1/i = -i; (1/i)^k cycles with period 4
    let minus_i = -&GaussianRational::i();
    let mut inv_i_pow = GaussianRational::one();
    let mut k = 0u64;
    while !deriv.is_zero() {
        k += 1;
        inv_i_pow = &inv_i_pow * &minus_i;
        let gap = &deriv.eval(&one_pt)? - &deriv.eval(&zero_pt)?;
        let sign = if k % 2 == 1 { Rational::one() } else { rat_int(-1) };
        coeffs.push(inv_i_pow.scale(&(&sign * &gap)));
        deriv = deriv.partial(0);
    }
    while coeffs.last().is_some_and(GaussianRational::is_zero) {
        coeffs.pop();
    }
    Ok(OscillatorySeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn poly1(terms: &[(i64, Rational)]) -> Poly {
        let owned: Vec<([i64; 1], Rational)> =
            terms.iter().map(|(e, c)| ([*e], c.clone())).collect();
        let refs: Vec<(&[i64], Rational)> =
            owned.iter().map(|(e, c)| (&e[..], c.clone())).collect();
        Poly::try_from_laurent(LaurentPoly::from_terms(1, &refs)).unwrap()
    }

    #[test]
    fn hermite_moments() {
        let kind = Family::Hermite { n: 1 }.kind().unwrap();
        assert_eq!(normalized_moment(&kind, &[2]).unwrap(), rat(1, 2));
        assert_eq!(normalized_moment(&kind, &[3]).unwrap(), rat_int(0));
        assert_eq!(normalized_moment(&kind, &[4]).unwrap(), rat(3, 4));
    }

    #[test]
    fn laguerre_moments() {
        let kind = Family::Laguerre { alpha: vec![rat_int(0)] }.kind().unwrap();
        assert_eq!(normalized_moment(&kind, &[1]).unwrap(), rat_int(1));
        assert_eq!(normalized_moment(&kind, &[3]).unwrap(), rat_int(6));
        let kind = Family::Laguerre { alpha: vec![rat(1, 2)] }.kind().unwrap();
        assert_eq!(normalized_moment(&kind, &[1]).unwrap(), rat(3, 2));
    }

    #[test]
    fn jacobi_moments() {
        // gamma = 1 -> (b - a)/(a + b + 2)
        let kind = Family::Jacobi { alpha: vec![rat_int(1)], beta: vec![rat_int(2)] }
            .kind()
            .unwrap();
        assert_eq!(normalized_moment(&kind, &[1]).unwrap(), rat(1, 5));
        // Legendre even moment: 1/(k+1)
        let leg = Family::Legendre { n: 1 }.kind().unwrap();
        assert_eq!(normalized_moment(&leg, &[2]).unwrap(), rat(1, 3));
        assert_eq!(normalized_moment(&leg, &[1]).unwrap(), rat_int(0));
    }

    #[test]
    fn ball_moments() {
        // n = 1, mu = 1/2 is Lebesgue on (-1,1): z^2 integrates to 1/3
        let kind = FamilyKind::Ball { n: 1, mu: rat(1, 2) };
        assert!(kind.check_domain().is_err()); // mu = 1/2 is on the boundary
        let kind = FamilyKind::Ball { n: 2, mu: rat_int(1) };
        assert_eq!(normalized_moment(&kind, &[1, 0]).unwrap(), rat_int(0));
        // prod (1/2)_{s_i} / (mu + 3/2)_{|s|} with s = (1,0): (1/2) / (5/2)
        assert_eq!(normalized_moment(&kind, &[2, 0]).unwrap(), rat(1, 5));
    }

    #[test]
    fn simplex_moments() {
        // kappa = 0: uniform on the simplex; n = 1 gives 1/(k+1) on (0,1)
        let kind = FamilyKind::Simplex { kappa: vec![rat_int(0), rat_int(0)] };
        assert_eq!(normalized_moment(&kind, &[3]).unwrap(), rat(1, 4));
        let kind2 = FamilyKind::Simplex { kappa: vec![rat_int(1), rat_int(1), rat_int(1)] };
        // prod (k_i+1)_{g_i} / (|k|+n+1)_{|g|} = (2)_1 (2)_0 / (6)_1 = 2/6
        assert_eq!(normalized_moment(&kind2, &[1, 0]).unwrap(), rat(1, 3));
    }

    #[test]
    fn box_and_signed_integrals() {
        // odd powers vanish on (-1,1); even powers give 2/(k+1)
        let b = MeasureSpec::LebesgueBox { bounds: vec![(rat_int(-1), rat_int(1))] };
        for m in 1..=5u64 {
            let odd = poly1(&[((2 * m + 1) as i64, Rational::one())]);
            assert_eq!(integrate_poly(&b, &odd).unwrap(), rat_int(0));
            let even = poly1(&[((2 * m + 2) as i64, Rational::one())]);
            assert_eq!(
                integrate_poly(&b, &even).unwrap(),
                rat(2, 2 * (m as i64) + 3)
            );
        }
        // signed density q = z on (-1,1): integral of z^{2m+1} * z
        let q = poly1(&[(1, Rational::one())]);
        let spec = MeasureSpec::SignedDensity { q, a: rat_int(-1), b: rat_int(1) };
        let f = poly1(&[(2, Rational::one())]); // f = z^2
        // integral of z^2 * z over (-1,1) = 0
        assert_eq!(integrate_poly(&spec, &f).unwrap(), rat_int(0));
        assert!(!total_mass_is_positive(&spec).unwrap());
    }

    #[test]
    fn atomic_integrals() {
        let spec = MeasureSpec::Atomic {
            points: vec![vec![rat_int(1)]],
            weights: vec![rat_int(1)],
        };
        let f = poly1(&[(2, rat_int(3)), (0, rat_int(-1))]);
        assert_eq!(integrate_poly(&spec, &f).unwrap(), rat_int(2));
        let signed = MeasureSpec::Atomic {
            points: vec![vec![rat_int(0)], vec![rat_int(1)]],
            weights: vec![rat_int(1), rat_int(-1)],
        };
        assert!(!total_mass_is_positive(&signed).unwrap());
    }

    #[test]
    fn linearity_spot() {
        let spec = MeasureSpec::Weight { family: Family::Laguerre { alpha: vec![rat(1, 2)] } };
        let f = poly1(&[(2, rat_int(3))]);
        let g = poly1(&[(1, rat(1, 2)), (0, rat_int(1))]);
        let lhs = integrate_poly(&spec, &(&f + &g)).unwrap();
        let rhs = &integrate_poly(&spec, &f).unwrap() + &integrate_poly(&spec, &g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn oscillatory_cases() {
        // p = 1: all gaps vanish
        let one = Poly::one(1);
        assert!(oscillatory_integral(&one, 3).unwrap().is_zero());
        // p = z: single coefficient 1/i = -i at k = 1
        let z = Poly::var(1, 0);
        let s = oscillatory_integral(&z, 1).unwrap();
        assert!(!s.is_zero());
        assert_eq!(s.coeff(1), GaussianRational::new(rat_int(0), rat_int(-1)));
        assert!(s.coeff(2).is_zero());
        // p = z^2 - z: gap at k=1 is 0, k=2 gap of p' = 2z-1 is 2
        let p = poly1(&[(2, Rational::one()), (1, rat_int(-1))]);
        let s = oscillatory_integral(&p, 1).unwrap();
        assert!(s.coeff(1).is_zero());
        // c_2 = (-1)^1 * gap * (1/i)^2 = (-1) * 2 * (-1) = 2
        assert_eq!(s.coeff(2), GaussianRational::from_rational(rat_int(2)));
        assert!(oscillatory_integral(&one, 0).is_err());
    }

    #[test]
    fn mass_positivity() {
        let jac = MeasureSpec::Weight { family: Family::Jacobi { alpha: vec![rat_int(0)], beta: vec![rat_int(0)] } };
        assert!(total_mass_is_positive(&jac).unwrap());
        let q = poly1(&[(1, Rational::one())]);
        let spec = MeasureSpec::SignedDensity { q, a: rat_int(-1), b: rat_int(1) };
        assert!(!total_mass_is_positive(&spec).unwrap());
    }
}
