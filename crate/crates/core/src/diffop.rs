//! Order-one differential operators c*d_i + h(z) with a constant leading
//! coefficient and a zeroth-order part living in the localization of the
//! Laurent ring at a single polynomial denominator. That localization is
//! exactly what the ball and simplex families need; everything else keeps
//! denominator 1.

use crate::error::{Error, Result};
use crate::laurent::{exact_div, LaurentPoly, Poly};
use crate::rational::Rational;
use num_traits::Zero;
use std::fmt;

/// num/den with den a nonzero polynomial. Arithmetic is exact; after every
/// operation a full cancellation against the denominator is attempted, so
/// values that are secretly (Laurent) polynomial come back to den = 1.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn from_laurent(num: LaurentPoly) -> Self {
        let n = num.nvars();
        RatFunc { num, den: LaurentPoly::one(n) }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if !den.is_polynomial() {
            return Err(Error::NotPolynomial(format!("denominator {den}")));
        }
        assert_eq!(num.nvars(), den.nvars(), "dimension mismatch");
        Ok(RatFunc { num, den }.normalized())
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_laurent(LaurentPoly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    fn den_is_one(&self) -> bool {
        self.den == LaurentPoly::one(self.den.nvars())
    }

    /// The value as a plain Laurent polynomial, when the denominator cancels.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den_is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            let n = self.nvars();
            return RatFunc::zero(n);
        }
        if self.den_is_one() {
            return self;
        }
        match exact_div(&self.num, &self.den) {
            Some(q) => RatFunc::from_laurent(q),
            None => self,
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RatFunc { num, den }.normalized()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc { num: &self.num * &other.num, den: &self.den * &other.den }.normalized()
    }

    pub fn mul_laurent(&self, f: &LaurentPoly) -> RatFunc {
        RatFunc { num: &self.num * f, den: self.den.clone() }.normalized()
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }.normalized()
    }

    /// Quotient rule: d_i(num/den) = (d_i(num)*den - num*d_i(den)) / den^2.
    pub fn partial(&self, i: usize) -> RatFunc {
        let num = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        let den = &self.den * &self.den;
        RatFunc { num, den }.normalized()
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// A differential operator c*d_i + h(z) acting on the Laurent ring (and its
/// localization when h has a denominator).
#[derive(Debug, Clone)]
pub struct OrderOneOp {
    var: usize,
    leading: Rational,
    zeroth: RatFunc,
}

impl OrderOneOp {
    pub fn new(var: usize, leading: Rational, zeroth: RatFunc) -> Self {
        assert!(var < zeroth.nvars(), "variable index out of range");
        assert!(
            !leading.is_zero() || !zeroth.is_zero(),
            "the zero operator is not a valid order-one operator"
        );
        OrderOneOp { var, leading, zeroth }
    }

    /// Operator with a plain Laurent zeroth part.
    pub fn with_laurent(var: usize, leading: Rational, h: LaurentPoly) -> Self {
        Self::new(var, leading, RatFunc::from_laurent(h))
    }

    /// The plain derivative c*d_i.
    pub fn derivative(nvars: usize, var: usize, leading: Rational) -> Self {
        Self::new(var, leading, RatFunc::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.zeroth.nvars()
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn leading(&self) -> &Rational {
        &self.leading
    }

    pub fn zeroth(&self) -> &RatFunc {
        &self.zeroth
    }

    /// Apply to a Laurent polynomial; the result may pick up the zeroth
    /// part's denominator.
    pub fn apply(&self, f: &LaurentPoly) -> RatFunc {
        assert_eq!(f.nvars(), self.nvars(), "dimension mismatch");
        let deriv = RatFunc::from_laurent(f.partial(self.var).scale(&self.leading));
        deriv.add(&self.zeroth.mul_laurent(f))
    }

    /// Apply, requiring the result to stay in the Laurent ring.
    pub fn apply_laurent(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        let out = self.apply(f);
        out.as_laurent().cloned().ok_or_else(|| Error::NotPolynomial(format!("{out}")))
    }

    /// Apply to a localized element.
    pub fn apply_rat(&self, f: &RatFunc) -> RatFunc {
        let deriv = f.partial(self.var).scale(&self.leading);
        deriv.add(&self.zeroth.mul(f))
    }

    /// Exact commutation test. For a = c*d_i + h and b = d*d_j + k the
    /// commutator [a,b] is multiplication by c*d_i(k) - d*d_j(h); the
    /// operators commute iff that rational function vanishes.
    pub fn commutes_with(&self, other: &OrderOneOp) -> bool {
        assert_eq!(self.nvars(), other.nvars(), "dimension mismatch");
        let lhs = other.zeroth.partial(self.var).scale(&self.leading);
        let rhs = self.zeroth.partial(other.var).scale(&other.leading);
        lhs.add(&rhs.neg()).is_zero()
    }
}

impl fmt::Display for OrderOneOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.nvars() == 1 { "d".to_string() } else { format!("d{}", self.var + 1) };
        if self.leading.is_zero() {
            write!(f, "{}", self.zeroth)
        } else if self.zeroth.is_zero() {
            write!(f, "{}*{}", self.leading, name)
        } else {
            write!(f, "{}*{} + {}", self.leading, name, self.zeroth)
        }
    }
}

/// Preimage of p under d_i - 1: the finite series (-1 - sum_{k>=1} d_i^k)(p),
/// so that (d_i - 1) applied to the result gives back p exactly.
pub fn laguerre_inverse_series(p: &Poly, i: usize) -> Poly {
    let mut acc = -p.as_laurent();
    let mut deriv = p.as_laurent().partial(i);
    while !deriv.is_zero() {
        acc = &acc - &deriv;
        deriv = deriv.partial(i);
    }
    Poly::try_from_laurent(acc).expect("derivatives of a polynomial are polynomials")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rational};

    fn p1(terms: &[(i64, Rational)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            1,
            &terms.iter().map(|(e, c)| (std::slice::from_ref(e), c.clone())).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn apply_hermite_step() {
        // (d - 2z)(1) = -2z
        let op = OrderOneOp::with_laurent(0, rat_int(1), p1(&[(1, rat_int(-2))]));
        let out = op.apply_laurent(&LaurentPoly::one(1)).unwrap();
        assert_eq!(out, p1(&[(1, rat_int(-2))]));
    }

    #[test]
    fn apply_monomial_eigen_action() {
        // (d + lambda z^-1)(z^k) = (k + lambda) z^{k-1}
        let lambda = rat_int(5);
        let op = OrderOneOp::with_laurent(0, rat_int(1), p1(&[(-1, lambda.clone())]));
        for k in [-3i64, 0, 2, 7] {
            let zk = p1(&[(k, rat_int(1))]);
            let got = op.apply_laurent(&zk).unwrap();
            let expect = p1(&[(k - 1, &rat_int(k) + &lambda)]);
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn apply_laguerre_alpha_zero() {
        // (d - 1)(-1) = 1
        let op = OrderOneOp::with_laurent(0, rat_int(1), p1(&[(0, rat_int(-1))]));
        let out = op.apply_laurent(&LaurentPoly::constant(1, rat_int(-1))).unwrap();
        assert_eq!(out, LaurentPoly::one(1));
    }

    #[test]
    fn commutation_cases() {
        // different variables commute
        let a = OrderOneOp::with_laurent(
            0,
            rat_int(1),
            LaurentPoly::from_terms(2, &[(&[-1, 0], rat_int(3))]),
        );
        let b = OrderOneOp::with_laurent(
            1,
            rat_int(1),
            LaurentPoly::from_terms(2, &[(&[0, -1], rat_int(3))]),
        );
        assert!(a.commutes_with(&b));
        assert!(a.commutes_with(&a));
        // [d - 2z, z*d] does not commute; z*d is not order-one with constant
        // leading part, so check the genuine order-one pair (d - 2z, d + z)
        let c = OrderOneOp::with_laurent(0, rat_int(1), p1(&[(1, rat_int(-2))]));
        let d = OrderOneOp::with_laurent(0, rat_int(1), p1(&[(0, rat_int(1)), (1, rat_int(1))]));
        // multiplier: d(h_d) - d(h_c) = 1 - (-2) = 3 != 0
        assert!(!c.commutes_with(&d));
    }

    #[test]
    fn commutation_matches_basis_application() {
        // oracle: apply both orders to all monomials z^g with |g_i| <= 2
        let a = OrderOneOp::with_laurent(0, rat_int(1), p1(&[(1, rat_int(-2))]));
        let b = OrderOneOp::with_laurent(0, rat_int(2), p1(&[(1, rat_int(-4))]));
        assert!(a.commutes_with(&b));
        for e in -2i64..=2 {
            let f = p1(&[(e, rat_int(1))]);
            let ab = a.apply_rat(&b.apply(&f));
            let ba = b.apply_rat(&a.apply(&f));
            assert!(ab.add(&ba.neg()).is_zero());
        }
    }

    #[test]
    fn inverse_series() {
        let one = Poly::one(1);
        let q = laguerre_inverse_series(&one, 0);
        assert_eq!(q.as_laurent(), &LaurentPoly::constant(1, rat_int(-1)));
        let lag0 = OrderOneOp::with_laurent(0, rat_int(1), p1(&[(0, rat_int(-1))]));
        assert_eq!(lag0.apply_laurent(q.as_laurent()).unwrap(), LaurentPoly::one(1));

        // p = z -> q = -z - 1 and (d-1)q = z
        let z = Poly::var(1, 0);
        let q = laguerre_inverse_series(&z, 0);
        assert_eq!(q.as_laurent(), &p1(&[(1, rat_int(-1)), (0, rat_int(-1))]));
        assert_eq!(lag0.apply_laurent(q.as_laurent()).unwrap(), *z.as_laurent());

        let zero = Poly::zero(1);
        assert!(laguerre_inverse_series(&zero, 0).is_zero());
    }

    #[test]
    fn ratfunc_normalizes() {
        // (1 - z^2)/(1 - z) collapses to 1 + z
        let num = p1(&[(0, rat_int(1)), (2, rat_int(-1))]);
        let den = p1(&[(0, rat_int(1)), (1, rat_int(-1))]);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.as_laurent().unwrap(), &p1(&[(0, rat_int(1)), (1, rat_int(1))]));
    }
}
