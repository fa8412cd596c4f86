//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! A `LaurentPoly` is a finite map from integer exponent vectors to nonzero
//! rational coefficients; the map is the canonical form, so two values are
//! equal iff their term maps are equal. `Poly` wraps a `LaurentPoly` whose
//! exponents are all nonnegative.
//!
//! Operands of different variable counts never legitimately meet; arithmetic
//! panics on a mismatch instead of threading a `Result` through every ring
//! operation.

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

/// Exponent vector in Z^n. Ordered graded-lexicographically: total degree
/// first, then lexicographic comparison of the exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// All exponents nonnegative, i.e. the monomial lies in N^n.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    fn checked_add(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "monomial dimension mismatch");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_sub(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "monomial dimension mismatch");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self >= other`, i.e. `other` divides `self` in N^n.
    fn dominates(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial: nvars plus a term map holding only nonzero
/// coefficients, iterated in graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    /// The variable z_i (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial dimension mismatch");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Convenience constructor from exponent slices.
    pub fn from_terms(nvars: usize, terms: &[(&[i64], Rational)]) -> Self {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector dimension mismatch");
            p.add_term(Monomial(exps.to_vec()), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The stored coefficient of z^gamma, or 0.
    pub fn coeff(&self, gamma: &Monomial) -> Rational {
        assert_eq!(gamma.nvars(), self.nvars, "monomial dimension mismatch");
        self.terms.get(gamma).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::unit(self.nvars))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        assert_eq!(m.nvars(), self.nvars, "monomial dimension mismatch");
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(g, a)| (g.checked_add(m), a * c))
                .collect(),
        }
    }

    /// f^m by repeated squaring. f^0 = 1 for any f.
    pub fn pow(&self, m: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Termwise partial derivative with respect to z_i.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut shifted = m.clone();
            shifted.0[i] = e - 1;
            out.add_term(shifted, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Substitute z_i -> z_i + c by exact binomial expansion. Requires the
    /// exponent of z_i to be nonnegative in every term when c != 0, since
    /// (z+c)^{-1} leaves the ring.
    pub fn shift(&self, i: usize, c: &Rational) -> Result<Self> {
        assert!(i < self.nvars, "variable index out of range");
        if c.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            let e = m.0[i];
            if e < 0 {
                return Err(Error::ShiftNegativeExponent { var: i });
            }
            let e = e as u64;
            // (z+c)^e = sum_j C(e,j) c^{e-j} z^j
            let mut cpow = Rational::one();
            // iterate j from e down to 0 so c^{e-j} accumulates by one factor each step
            for j in (0..=e).rev() {
                let mut shifted = m.clone();
                shifted.0[i] = j as i64;
                out.add_term(shifted, a * &binomial(e, j) * &cpow);
                cpow *= c;
            }
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point. Errors on a zero coordinate
    /// anywhere a negative exponent occurs.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension mismatch");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                v *= pow_rational(&point[i], e, i)?;
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitute z_i = c, keeping the ambient variable count.
    pub fn eval_var(&self, i: usize, c: &Rational) -> Result<Self> {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            let e = m.0[i];
            let factor = pow_rational(c, e, i)?;
            let mut zeroed = m.clone();
            zeroed.0[i] = 0;
            out.add_term(zeroed, a * &factor);
        }
        Ok(out)
    }

    /// Max total degree over the support; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum exponent over the support (zero poly -> all 0).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![0i64; self.nvars];
        let mut first = true;
        for m in self.terms.keys() {
            for (slot, &e) in mins.iter_mut().zip(&m.0) {
                if first || e < *slot {
                    *slot = e;
                }
            }
            first = false;
        }
        mins
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.is_nonnegative())
    }

    /// The degree-d homogeneous part.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Split by the exponent of z_i: for each occurring k, the cofactor of
    /// z_i^k (with the z_i slot zeroed, same ambient variable count).
    pub fn split_by_var(&self, i: usize) -> BTreeMap<i64, LaurentPoly> {
        assert!(i < self.nvars, "variable index out of range");
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[i];
            let mut rest = m.clone();
            rest.0[i] = 0;
            out.entry(k)
                .or_insert_with(|| LaurentPoly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Termwise antiderivative in z_i for polynomial input: z^k -> z^{k+1}/(k+1).
    pub fn antiderivative(&self, i: usize) -> Result<Self> {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e < 0 {
                return Err(Error::NotPolynomial(format!(
                    "antiderivative in z{} of a term with exponent {}",
                    i + 1,
                    e
                )));
            }
            let mut up = m.clone();
            up.0[i] = e + 1;
            out.add_term(up, c / Rational::from_integer((e + 1).into()));
        }
        Ok(out)
    }
}

fn pow_rational(base: &Rational, e: i64, var: usize) -> Result<Rational> {
    if e == 0 {
        return Ok(Rational::one());
    }
    if base.is_zero() {
        if e < 0 {
            return Err(Error::PoleAtZero { var });
        }
        return Ok(Rational::zero());
    }
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        k >>= 1;
        if k > 0 {
            b = &b * &b;
        }
    }
    if e < 0 {
        acc = acc.recip();
    }
    Ok(acc)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.checked_add(mb), ca * cb);
            }
        }
        out
    }
}

/// Exact division f / d in the Laurent ring: Some(q) with f = q*d, or None
/// when the division is not exact. Both operands are first shifted into N^n
/// (every monomial is invertible here), then reduced by the graded-lex
/// leading term of the divisor.
pub fn exact_div(f: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    assert_eq!(f.nvars(), d.nvars(), "polynomial dimension mismatch");
    assert!(!d.is_zero(), "division by zero polynomial");
    if f.is_zero() {
        return Some(LaurentPoly::zero(f.nvars()));
    }
    let n = f.nvars();
    let sf = Monomial(f.min_exponents());
    let sd = Monomial(d.min_exponents());
    let fp = f.mul_monomial(&Monomial(sf.0.iter().map(|e| -e).collect()), &Rational::one());
    let dp = d.mul_monomial(&Monomial(sd.0.iter().map(|e| -e).collect()), &Rational::one());

    let (dlm, dlc) = dp.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut q = LaurentPoly::zero(n);
    let mut r = fp;
    while let Some((rlm, rlc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !rlm.dominates(&dlm) {
            return None;
        }
        let tm = rlm.checked_sub(&dlm);
        let tc = &rlc / &dlc;
        let t = LaurentPoly::monomial(n, tm, tc);
        r = &r - &(&t * &dp);
        q = &q + &t;
    }
    // restore the monomial shift: q_true = q * z^{sf - sd}
    Some(q.mul_monomial(&sf.checked_sub(&sd), &Rational::one()))
}

/// Laurent polynomial with all exponents in N^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(LaurentPoly);

impl Poly {
    pub fn try_from_laurent(f: LaurentPoly) -> Result<Self> {
        if f.is_polynomial() {
            Ok(Poly(f))
        } else {
            Err(Error::NotPolynomial(f.to_string()))
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Poly(LaurentPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly(LaurentPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly(LaurentPoly::var(nvars, i))
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentPoly {
        self.0
    }

    pub fn pow(&self, m: u64) -> Self {
        Poly(self.0.pow(m))
    }

    pub fn partial(&self, i: usize) -> Self {
        Poly(self.0.partial(i))
    }

    /// Total degree as u64; None for zero.
    pub fn degree(&self) -> Option<u64> {
        self.0.total_degree().map(|d| d as u64)
    }
}

impl Deref for Poly {
    type Target = LaurentPoly;
    fn deref(&self) -> &LaurentPoly {
        &self.0
    }
}

impl From<Poly> for LaurentPoly {
    fn from(p: Poly) -> LaurentPoly {
        p.0
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly(&self.0 + &rhs.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly(&self.0 - &rhs.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly(&self.0 * &rhs.0)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(-&self.0)
    }
}

/// Canonical text form. Terms are emitted leading-first in graded-lex order
/// as `c*z1^e1*...*zn^en`, with zero exponents omitted, exponent 1 written
/// bare, unit coefficients dropped next to a variable, and a single `z`
/// used when there is one variable.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if self.nvars == 1 { "z".to_string() } else { format!("z{}", i + 1) };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p1(terms: &[(i64, Rational)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(1);
        for (e, c) in terms {
            p.add_term(Monomial(vec![*e]), c.clone());
        }
        p
    }

    #[test]
    fn add_cancellation_and_identity() {
        let z = LaurentPoly::var(1, 0);
        let f = &(&z + &LaurentPoly::one(1)) + &-&z;
        assert_eq!(f, LaurentPoly::one(1));
        let g = p1(&[(2, rat_int(3)), (-1, rat(1, 2))]);
        assert_eq!(&g + &LaurentPoly::zero(1), g);
        // (1/2)z^-1 + (1/3)z^-1 = (5/6)z^-1
        let h = &p1(&[(-1, rat(1, 2))]) + &p1(&[(-1, rat(1, 3))]);
        assert_eq!(h, p1(&[(-1, rat(5, 6))]));
    }

    #[test]
    fn mul_examples() {
        let z = LaurentPoly::var(1, 0);
        let zinv = p1(&[(-1, rat_int(1))]);
        assert_eq!(&z * &zinv, LaurentPoly::one(1));
        // (1+z)(1-z) = 1 - z^2
        let a = p1(&[(0, rat_int(1)), (1, rat_int(1))]);
        let b = p1(&[(0, rat_int(1)), (1, rat_int(-1))]);
        assert_eq!(&a * &b, p1(&[(0, rat_int(1)), (2, rat_int(-1))]));
        // (z^-1 + z)^2 = z^-2 + 2 + z^2
        let c = p1(&[(-1, rat_int(1)), (1, rat_int(1))]);
        assert_eq!(
            c.pow(2),
            p1(&[(-2, rat_int(1)), (0, rat_int(2)), (2, rat_int(1))])
        );
    }

    #[test]
    fn pow_examples() {
        let f = p1(&[(0, rat_int(1)), (1, rat_int(1))]);
        assert_eq!(
            f.pow(2),
            p1(&[(0, rat_int(1)), (1, rat_int(2)), (2, rat_int(1))])
        );
        assert_eq!(f.pow(0), LaurentPoly::one(1));
        let m = p1(&[(2, rat_int(1))]);
        assert_eq!(m.pow(7), p1(&[(14, rat_int(1))]));
    }

    #[test]
    fn coeff_examples() {
        let f = p1(&[(-2, rat_int(1)), (0, rat_int(3))]);
        assert_eq!(f.coeff(&Monomial(vec![-2])), rat_int(1));
        assert_eq!(f.coeff(&Monomial(vec![0])), rat_int(3));
        assert_eq!(f.coeff(&Monomial(vec![5])), rat_int(0));
    }

    #[test]
    fn partial_examples() {
        let f = p1(&[(3, rat_int(1))]);
        assert_eq!(f.partial(0), p1(&[(2, rat_int(3))]));
        let g = p1(&[(-1, rat_int(1))]);
        assert_eq!(g.partial(0), p1(&[(-2, rat_int(-1))]));
        assert_eq!(LaurentPoly::constant(1, rat_int(7)).partial(0), LaurentPoly::zero(1));
    }

    #[test]
    fn shift_examples() {
        // z^2 under z -> z+1 becomes z^2 + 2z + 1
        let f = p1(&[(2, rat_int(1))]);
        assert_eq!(
            f.shift(0, &rat_int(1)).unwrap(),
            p1(&[(0, rat_int(1)), (1, rat_int(2)), (2, rat_int(1))])
        );
        // c = 0 is the identity even on Laurent input
        let g = p1(&[(-3, rat(2, 5))]);
        assert_eq!(g.shift(0, &Rational::zero()).unwrap(), g);
        // 1 - x^2 under x -> x - 1 becomes 2x - x^2
        let h = p1(&[(0, rat_int(1)), (2, rat_int(-1))]);
        assert_eq!(
            h.shift(0, &rat_int(-1)).unwrap(),
            p1(&[(1, rat_int(2)), (2, rat_int(-1))])
        );
        // negative exponent with nonzero shift leaves the ring
        assert!(matches!(
            g.shift(0, &rat_int(1)),
            Err(Error::ShiftNegativeExponent { var: 0 })
        ));
    }

    #[test]
    fn eval_examples() {
        let f = p1(&[(-1, rat_int(1)), (1, rat_int(1))]);
        assert_eq!(f.eval(&[rat_int(2)]).unwrap(), rat(5, 2));
        assert_eq!(LaurentPoly::one(1).eval(&[rat_int(-17)]).unwrap(), rat_int(1));
        let g = p1(&[(2, rat_int(1)), (0, rat_int(-1))]);
        assert_eq!(g.eval(&[rat_int(1)]).unwrap(), rat_int(0));
        assert!(matches!(
            f.eval(&[rat_int(0)]),
            Err(Error::PoleAtZero { var: 0 })
        ));
    }

    #[test]
    fn exact_division() {
        // (1 - z^2) / (1 - z) = 1 + z
        let num = p1(&[(0, rat_int(1)), (2, rat_int(-1))]);
        let den = p1(&[(0, rat_int(1)), (1, rat_int(-1))]);
        let q = exact_div(&num, &den).unwrap();
        assert_eq!(q, p1(&[(0, rat_int(1)), (1, rat_int(1))]));
        // non-exact division
        let bad = p1(&[(0, rat_int(1)), (2, rat_int(1))]);
        assert!(exact_div(&bad, &den).is_none());
        // Laurent divisor and dividend
        let f = p1(&[(-1, rat_int(1)), (1, rat_int(1))]); // z^-1 (1 + z^2)
        let d = p1(&[(-2, rat_int(1))]);
        assert_eq!(
            exact_div(&f, &d).unwrap(),
            p1(&[(1, rat_int(1)), (3, rat_int(1))])
        );
    }

    #[test]
    fn exact_division_multivariate() {
        // two variables: (1 - z1 - z2) * (z1 + z2^2) recovered
        let d = LaurentPoly::from_terms(
            2,
            &[(&[0, 0], rat_int(1)), (&[1, 0], rat_int(-1)), (&[0, 1], rat_int(-1))],
        );
        let q = LaurentPoly::from_terms(2, &[(&[1, 0], rat_int(1)), (&[0, 2], rat_int(1))]);
        let f = &d * &q;
        assert_eq!(exact_div(&f, &d).unwrap(), q);
    }

    #[test]
    fn display_canonical() {
        let f = p1(&[(2, rat_int(1)), (0, rat(-1, 3))]);
        assert_eq!(f.to_string(), "z^2 - 1/3");
        let g = LaurentPoly::from_terms(
            2,
            &[(&[2, 1], rat(1, 2)), (&[0, 1], rat_int(-1))],
        );
        assert_eq!(g.to_string(), "1/2*z1^2*z2 - z2");
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
        let h = p1(&[(-3, rat_int(1)), (0, rat_int(1))]);
        assert_eq!(h.to_string(), "1 + z^-3");
    }

    #[test]
    fn split_and_homogeneous() {
        let g = LaurentPoly::from_terms(
            2,
            &[(&[2, 1], rat_int(4)), (&[2, 0], rat_int(-1)), (&[0, 3], rat_int(2))],
        );
        let parts = g.split_by_var(0);
        assert_eq!(parts.len(), 2);
        assert_eq!(
            parts[&2],
            LaurentPoly::from_terms(2, &[(&[0, 1], rat_int(4)), (&[0, 0], rat_int(-1))])
        );
        assert_eq!(g.homogeneous_part(3).num_terms(), 2);
    }
}
