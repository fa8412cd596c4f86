//! One-variable moment machinery: streaks of vanishing power integrals,
//! the compositional-decomposition verifier for the moment problem, and a
//! bounded search for polynomial decompositions f = F(W).

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial, Poly};
use crate::moments::box_integral;
use crate::rational::{Rational, rat_int};
use num_traits::{One, Zero};
use std::fmt;

/// First m >= 1 with the integral of f^m over (a, b) nonzero, or None when
/// every tested power integrates to zero up to the horizon. For nonzero f a
/// finite index is expected; the streak length is the caller's statistic.
pub fn folk_streak(f: &Poly, a: &Rational, b: &Rational, horizon: u64) -> Result<Option<u64>> {
    assert_eq!(f.nvars(), 1, "one-variable streaks only");
    if a >= b {
        return Err(Error::InvalidInput("interval must satisfy a < b".into()));
    }
    let bounds = [(a.clone(), b.clone())];
    let mut p = Poly::one(1);
    for m in 1..=horizon {
        p = &p * f;
        if !box_integral(&bounds, &p)?.is_zero() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Univariate composition f(W).
pub fn compose(f: &Poly, w: &Poly) -> Poly {
    assert_eq!(f.nvars(), 1, "univariate composition");
    assert_eq!(w.nvars(), 1, "univariate composition");
    // Horner over descending exponents
    let mut coeffs: Vec<(i64, Rational)> =
        f.terms().map(|(m, c)| (m.0[0], c.clone())).collect();
    coeffs.sort_by_key(|(e, _)| *e);
    let mut acc = Poly::zero(1);
    let mut prev_exp: Option<i64> = None;
    for (e, c) in coeffs.into_iter().rev() {
        if let Some(pe) = prev_exp {
            for _ in 0..(pe - e) {
                acc = &acc * w;
            }
        }
        acc = &acc + &Poly::constant(1, c);
        prev_exp = Some(e);
    }
    if let Some(e) = prev_exp {
        for _ in 0..e {
            acc = &acc * w;
        }
    }
    acc
}

/// A candidate decomposition list (Q_j, f_j, W_j).
#[derive(Debug, Clone, PartialEq)]
pub struct PmDecomposition {
    pub parts: Vec<(Poly, Poly, Poly)>,
}

/// Outcome of the decomposition verifier: the three exact condition checks
/// plus the exact moment table.
#[derive(Debug, Clone)]
pub struct PmReport {
    /// W_j(a) = W_j(b), one flag per part.
    pub endpoints_match: Vec<bool>,
    /// q = sum_j Q_j'(W_j) W_j'.
    pub density_matches: bool,
    /// f = f_j(W_j), one flag per part.
    pub compositions_match: Vec<bool>,
    /// (m, integral of f^m q over (a,b)) for the requested range.
    pub moments: Vec<(u64, Rational)>,
    pub all_conditions_hold: bool,
    pub moments_all_zero: bool,
}

impl PmReport {
    /// A decomposition passing all three conditions must produce all-zero
    /// moments; anything else is an inconsistency worth flagging.
    pub fn consistent(&self) -> bool {
        !self.all_conditions_hold || self.moments_all_zero
    }
}

impl fmt::Display for PmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "endpoints-match: {:?}", self.endpoints_match)?;
        writeln!(f, "density-matches: {}", self.density_matches)?;
        writeln!(f, "compositions-match: {:?}", self.compositions_match)?;
        for (m, v) in &self.moments {
            writeln!(f, "moment m={m}: {v}")?;
        }
        write!(
            f,
            "conditions: {}; moments all zero: {}; consistent: {}",
            self.all_conditions_hold,
            self.moments_all_zero,
            self.consistent()
        )
    }
}

/// Check the three decomposition conditions as exact polynomial identities
/// and tabulate the exact moments of f^m q over (a, b) for m in
/// m_start..=horizon (the m = 0 inclusion is the problem's classical form;
/// m_start = 1 explores the weaker regime).
pub fn pm_verify(
    q: &Poly,
    f: &Poly,
    a: &Rational,
    b: &Rational,
    decomp: &PmDecomposition,
    m_start: u64,
    horizon: u64,
) -> Result<PmReport> {
    if a >= b {
        return Err(Error::InvalidInput("interval must satisfy a < b".into()));
    }
    let mut endpoints_match = Vec::new();
    let mut compositions_match = Vec::new();
    let mut density_sum = Poly::zero(1);
    for (qj, fj, wj) in &decomp.parts {
        let wa = wj.eval(&[a.clone()])?;
        let wb = wj.eval(&[b.clone()])?;
        endpoints_match.push(wa == wb);
        compositions_match.push(&compose(fj, wj) == f);
        let qj_prime = qj.partial(0);
        let wj_prime = wj.partial(0);
        density_sum = &density_sum + &(&compose(&qj_prime, wj) * &wj_prime);
    }
    let density_matches = &density_sum == q;
    let bounds = [(a.clone(), b.clone())];
    let mut moments = Vec::new();
    let mut all_zero = true;
    for m in m_start..=horizon {
        let v = box_integral(&bounds, &(&f.pow(m) * q))?;
        if !v.is_zero() {
            all_zero = false;
        }
        moments.push((m, v));
    }
    let all_conditions_hold = density_matches
        && !decomp.parts.is_empty()
        && endpoints_match.iter().all(|&x| x)
        && compositions_match.iter().all(|&x| x);
    Ok(PmReport {
        endpoints_match,
        density_matches,
        compositions_match,
        moments,
        all_conditions_hold,
        moments_all_zero: all_zero,
    })
}

fn leading_coeff_univ(f: &Poly) -> Option<(i64, Rational)> {
    f.leading().map(|(m, c)| (m.0[0], c.clone()))
}

/// Univariate division with remainder by a monic divisor.
fn div_rem_monic(f: &LaurentPoly, w: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let (wd, wc) = w.leading().map(|(m, c)| (m.0[0], c.clone())).expect("nonzero divisor");
    debug_assert!(wc.is_one(), "divisor must be monic");
    let mut q = LaurentPoly::zero(1);
    let mut r = f.clone();
    loop {
        let Some((rd, rc)) = r.leading().map(|(m, c)| (m.0[0], c.clone())) else {
            break;
        };
        if rd < wd {
            break;
        }
        let t = LaurentPoly::monomial(1, Monomial(vec![rd - wd]), rc);
        q = &q + &t;
        r = &r - &(&t * w);
    }
    (q, r)
}

/// Bounded search for an inner composition factor of degree d: returns
/// Some((W, F)) with f = F(W), W monic with zero constant term, or None
/// when no exact decomposition at that degree exists. The top coefficients
/// of f determine W by a triangular solve; the W-adic digit expansion of f
/// then either has all-constant digits (giving F) or rules the degree out.
pub fn decompose_search(f: &Poly, d: u64) -> Result<Option<(Poly, Poly)>> {
    assert_eq!(f.nvars(), 1, "univariate decomposition search");
    let Some((n, lc)) = leading_coeff_univ(f) else {
        return Err(Error::InvalidInput("cannot decompose the zero polynomial".into()));
    };
    let n = n as u64;
    if d <= 1 || d > n || n % d != 0 {
        return Err(Error::InvalidInput(format!(
            "inner degree {d} must satisfy 1 < d <= deg f and d | deg f (deg f = {n})"
        )));
    }
    let e = n / d;
    let f_monic = f.as_laurent().scale(&lc.recip());
    // W = z^d + w_{d-1} z^{d-1} + ... + w_1 z, solved top-down: for
    // k = 1..d-1 the coefficient of z^{n-k} in W^e involves e*w_{d-k} plus
    // already-known data, and F's lower terms cannot reach that high.
    let mut w = LaurentPoly::monomial(1, Monomial(vec![d as i64]), Rational::one());
    for k in 1..d {
        let partial_pow = w.pow(e);
        let have = partial_pow.coeff(&Monomial(vec![(n - k) as i64]));
        let want = f_monic.coeff(&Monomial(vec![(n - k) as i64]));
        let coeff = &(&want - &have) / &rat_int(e as i64);
        if !coeff.is_zero() {
            w = &w + &LaurentPoly::monomial(1, Monomial(vec![(d - k) as i64]), coeff);
        }
    }
    // W-adic digits of the original (unscaled) f
    let mut digits: Vec<Rational> = Vec::new();
    let mut cur = f.as_laurent().clone();
    while !cur.is_zero() {
        let (quot, rem) = div_rem_monic(&cur, &w);
        match rem.total_degree() {
            Some(deg) if deg > 0 => return Ok(None), // non-constant digit
            _ => digits.push(rem.constant_term()),
        }
        cur = quot;
    }
    let mut outer = LaurentPoly::zero(1);
    for (j, c) in digits.iter().enumerate() {
        outer = &outer + &LaurentPoly::monomial(1, Monomial(vec![j as i64]), c.clone());
    }
    let w_poly = Poly::try_from_laurent(w)?;
    let outer_poly = Poly::try_from_laurent(outer)?;
    if &compose(&outer_poly, &w_poly) == f {
        Ok(Some((w_poly, outer_poly)))
    } else {
        Ok(None)
    }
}
