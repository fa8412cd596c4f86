//! The classical weight families, their commuting operator systems
//! (Lambda, g), and the Rodrigues engine u_alpha = c_alpha * Lambda^alpha(g^alpha).
//!
//! Gegenbauer, both Chebyshev kinds and Legendre are Jacobi specializations
//! (alpha = beta = lambda - 1/2). Cartesian products of one-variable
//! families are normalized into a vector of per-axis factors; the ball and
//! simplex families stay genuinely coupled.

use crate::diffop::{OrderOneOp, RatFunc};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Poly};
use crate::rational::{factorial, pochhammer, rat, rat_int, Rational};
use num_traits::{One, Zero};
use std::fmt;

/// One-variable factor of a product family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisFamily {
    Hermite,
    Laguerre(Rational),
    Jacobi(Rational, Rational),
}

impl AxisFamily {
    fn check_domain(&self) -> Result<()> {
        let minus_one = rat_int(-1);
        match self {
            AxisFamily::Hermite => Ok(()),
            AxisFamily::Laguerre(a) => {
                if *a > minus_one {
                    Ok(())
                } else {
                    Err(Error::ParameterOutOfDomain(format!("laguerre alpha = {a} <= -1")))
                }
            }
            AxisFamily::Jacobi(a, b) => {
                if *a > minus_one && *b > minus_one {
                    Ok(())
                } else {
                    Err(Error::ParameterOutOfDomain(format!(
                        "jacobi (alpha, beta) = ({a}, {b}) outside (-1, inf)^2"
                    )))
                }
            }
        }
    }

    /// Rodrigues constant for the m-th polynomial of this axis.
    fn rodrigues_constant(&self, m: u64) -> Rational {
        let sign = if m % 2 == 0 { Rational::one() } else { rat_int(-1) };
        match self {
            AxisFamily::Hermite => sign,
            AxisFamily::Laguerre(_) => factorial(m).recip(),
            AxisFamily::Jacobi(_, _) => {
                let two_m = pow2(m);
                &sign / &(&two_m * &factorial(m))
            }
        }
    }
}

fn pow2(m: u64) -> Rational {
    let mut r = Rational::one();
    for _ in 0..m {
        r *= rat_int(2);
    }
    r
}

/// Normalized family data the moment and operator engines work from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    Axes(Vec<AxisFamily>),
    Ball { n: usize, mu: Rational },
    Simplex { kappa: Vec<Rational> },
}

impl FamilyKind {
    pub fn nvars(&self) -> usize {
        match self {
            FamilyKind::Axes(axes) => axes.len(),
            FamilyKind::Ball { n, .. } => *n,
            FamilyKind::Simplex { kappa } => kappa.len() - 1,
        }
    }

    pub fn check_domain(&self) -> Result<()> {
        match self {
            FamilyKind::Axes(axes) => axes.iter().try_for_each(AxisFamily::check_domain),
            FamilyKind::Ball { mu, .. } => {
                if *mu > rat(1, 2) {
                    Ok(())
                } else {
                    Err(Error::ParameterOutOfDomain(format!("ball mu = {mu} <= 1/2")))
                }
            }
            FamilyKind::Simplex { kappa } => {
                if kappa.iter().all(|k| *k > rat_int(-1)) {
                    Ok(())
                } else {
                    Err(Error::ParameterOutOfDomain("simplex kappa component <= -1".into()))
                }
            }
        }
    }

    /// c_alpha for the classical normalization of this family.
    pub fn rodrigues_constant(&self, alpha: &[u64]) -> Rational {
        match self {
            FamilyKind::Axes(axes) => {
                assert_eq!(axes.len(), alpha.len(), "multi-index length mismatch");
                axes.iter()
                    .zip(alpha)
                    .map(|(ax, &m)| ax.rodrigues_constant(m))
                    .product()
            }
            FamilyKind::Ball { mu, .. } => {
                let total: u64 = alpha.iter().sum();
                let sign = if total % 2 == 0 { Rational::one() } else { rat_int(-1) };
                let num = &sign * &pochhammer(&(mu * &rat_int(2)), total);
                let den = &(&pow2(total) * &factorial(total))
                    * &pochhammer(&(mu + &rat(1, 2)), total);
                &num / &den
            }
            FamilyKind::Simplex { .. } => Rational::one(),
        }
    }
}

/// User-facing family tags, one per supported weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Hermite { n: usize },
    Laguerre { alpha: Vec<Rational> },
    Jacobi { alpha: Vec<Rational>, beta: Vec<Rational> },
    Gegenbauer { lambda: Vec<Rational> },
    Chebyshev1 { n: usize },
    Chebyshev2 { n: usize },
    Legendre { n: usize },
    Ball { n: usize, mu: Rational },
    Simplex { kappa: Vec<Rational> },
    Product { factors: Vec<Family> },
}

impl Family {
    pub fn nvars(&self) -> usize {
        match self {
            Family::Hermite { n } | Family::Chebyshev1 { n } | Family::Chebyshev2 { n }
            | Family::Legendre { n } | Family::Ball { n, .. } => *n,
            Family::Laguerre { alpha } => alpha.len(),
            Family::Jacobi { alpha, .. } => alpha.len(),
            Family::Gegenbauer { lambda } => lambda.len(),
            Family::Simplex { kappa } => kappa.len() - 1,
            Family::Product { factors } => factors.iter().map(Family::nvars).sum(),
        }
    }

    /// Lower to the normalized kind. Gegenbauer-type tags become Jacobi
    /// axes; products are flattened (each factor must be one-variable and
    /// axis-shaped).
    pub fn kind(&self) -> Result<FamilyKind> {
        match self {
            Family::Hermite { n } => Ok(FamilyKind::Axes(vec![AxisFamily::Hermite; *n])),
            Family::Laguerre { alpha } => Ok(FamilyKind::Axes(
                alpha.iter().map(|a| AxisFamily::Laguerre(a.clone())).collect(),
            )),
            Family::Jacobi { alpha, beta } => {
                if alpha.len() != beta.len() {
                    return Err(Error::InvalidInput(
                        "jacobi alpha and beta must have the same length".into(),
                    ));
                }
                Ok(FamilyKind::Axes(
                    alpha
                        .iter()
                        .zip(beta)
                        .map(|(a, b)| AxisFamily::Jacobi(a.clone(), b.clone()))
                        .collect(),
                ))
            }
            Family::Gegenbauer { lambda } => Ok(FamilyKind::Axes(
                lambda
                    .iter()
                    .map(|l| {
                        let p = l - &rat(1, 2);
                        AxisFamily::Jacobi(p.clone(), p)
                    })
                    .collect(),
            )),
            Family::Chebyshev1 { n } => {
                Ok(FamilyKind::Axes(vec![AxisFamily::Jacobi(rat(-1, 2), rat(-1, 2)); *n]))
            }
            Family::Chebyshev2 { n } => {
                Ok(FamilyKind::Axes(vec![AxisFamily::Jacobi(rat(1, 2), rat(1, 2)); *n]))
            }
            Family::Legendre { n } => {
                Ok(FamilyKind::Axes(vec![AxisFamily::Jacobi(rat_int(0), rat_int(0)); *n]))
            }
            Family::Ball { n, mu } => {
                if *n == 0 {
                    return Err(Error::InvalidInput("ball family needs n >= 1".into()));
                }
                Ok(FamilyKind::Ball { n: *n, mu: mu.clone() })
            }
            Family::Simplex { kappa } => {
                if kappa.len() < 2 {
                    return Err(Error::InvalidInput(
                        "simplex family needs n + 1 >= 2 kappa parameters".into(),
                    ));
                }
                Ok(FamilyKind::Simplex { kappa: kappa.clone() })
            }
            Family::Product { factors } => {
                let mut axes = Vec::new();
                for f in factors {
                    if f.nvars() != 1 {
                        return Err(Error::Unsupported(
                            "product factors must be one-variable families".into(),
                        ));
                    }
                    match f.kind()? {
                        FamilyKind::Axes(mut a) => axes.append(&mut a),
                        _ => {
                            return Err(Error::Unsupported(
                                "product factors must be axis families".into(),
                            ))
                        }
                    }
                }
                if axes.is_empty() {
                    return Err(Error::InvalidInput("empty product".into()));
                }
                Ok(FamilyKind::Axes(axes))
            }
        }
    }
}

fn join_rats(v: &[Rational]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

/// Compact textual form used by the scenario config format and the CLI,
/// e.g. `hermite:2`, `laguerre:0,1/2`, `jacobi:0,0;1,2`, `ball:2;1`,
/// `simplex:1,1,1`, `product:(laguerre:0),(jacobi:1;2)`.
impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hermite { n } => write!(f, "hermite:{n}"),
            Family::Laguerre { alpha } => write!(f, "laguerre:{}", join_rats(alpha)),
            Family::Jacobi { alpha, beta } => {
                write!(f, "jacobi:{};{}", join_rats(alpha), join_rats(beta))
            }
            Family::Gegenbauer { lambda } => write!(f, "gegenbauer:{}", join_rats(lambda)),
            Family::Chebyshev1 { n } => write!(f, "chebyshev1:{n}"),
            Family::Chebyshev2 { n } => write!(f, "chebyshev2:{n}"),
            Family::Legendre { n } => write!(f, "legendre:{n}"),
            Family::Ball { n, mu } => write!(f, "ball:{n};{mu}"),
            Family::Simplex { kappa } => write!(f, "simplex:{}", join_rats(kappa)),
            Family::Product { factors } => {
                let inner: Vec<String> = factors.iter().map(|x| format!("({x})")).collect();
                write!(f, "product:{}", inner.join(","))
            }
        }
    }
}

fn parse_rats(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Rational>()
                .map_err(|e| Error::InvalidInput(format!("bad rational `{t}`: {e}")))
        })
        .collect()
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::InvalidInput(format!("bad variable count `{s}`")))
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        let (tag, params) = match s.split_once(':') {
            Some((t, p)) => (t.trim(), p.trim()),
            None => (s, ""),
        };
        let default_one = |p: &str| if p.is_empty() { "1".to_string() } else { p.to_string() };
        match tag {
            "hermite" => Ok(Family::Hermite { n: parse_usize(&default_one(params))? }),
            "laguerre" => Ok(Family::Laguerre { alpha: parse_rats(params)? }),
            "jacobi" => {
                let (a, b) = params.split_once(';').ok_or_else(|| {
                    Error::InvalidInput("jacobi parameters must be `alphas;betas`".into())
                })?;
                Ok(Family::Jacobi { alpha: parse_rats(a)?, beta: parse_rats(b)? })
            }
            "gegenbauer" => Ok(Family::Gegenbauer { lambda: parse_rats(params)? }),
            "chebyshev1" => Ok(Family::Chebyshev1 { n: parse_usize(&default_one(params))? }),
            "chebyshev2" => Ok(Family::Chebyshev2 { n: parse_usize(&default_one(params))? }),
            "legendre" => Ok(Family::Legendre { n: parse_usize(&default_one(params))? }),
            "ball" => {
                let (n, mu) = params.split_once(';').ok_or_else(|| {
                    Error::InvalidInput("ball parameters must be `n;mu`".into())
                })?;
                Ok(Family::Ball {
                    n: parse_usize(n)?,
                    mu: mu.trim().parse::<Rational>().map_err(|e| {
                        Error::InvalidInput(format!("bad rational `{mu}`: {e}"))
                    })?,
                })
            }
            "simplex" => Ok(Family::Simplex { kappa: parse_rats(params)? }),
            "product" => {
                // factors are parenthesized, comma-separated
                let mut factors = Vec::new();
                let mut depth = 0usize;
                let mut start = None;
                for (i, ch) in params.char_indices() {
                    match ch {
                        '(' => {
                            if depth == 0 {
                                start = Some(i + 1);
                            }
                            depth += 1;
                        }
                        ')' => {
                            depth = depth.checked_sub(1).ok_or_else(|| {
                                Error::InvalidInput("unbalanced parentheses in product".into())
                            })?;
                            if depth == 0 {
                                let inner = &params[start.take().unwrap()..i];
                                factors.push(inner.parse::<Family>()?);
                            }
                        }
                        _ => {}
                    }
                }
                if depth != 0 || factors.is_empty() {
                    return Err(Error::InvalidInput(
                        "product factors must be parenthesized, e.g. product:(hermite:1),(laguerre:0)".into(),
                    ));
                }
                Ok(Family::Product { factors })
            }
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// A commuting operator system (Lambda_1..Lambda_n) with its generator tuple
/// (g_1..g_n). Pairwise commutation is verified at construction.
#[derive(Debug, Clone)]
pub struct OpSystem {
    family: Family,
    kind: FamilyKind,
    ops: Vec<OrderOneOp>,
    gens: Vec<LaurentPoly>,
}

impl OpSystem {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[OrderOneOp] {
        &self.ops
    }

    pub fn gens(&self) -> &[LaurentPoly] {
        &self.gens
    }

    /// c * Lambda_1^{a_1} ... Lambda_n^{a_n} (g_1^{a_1} ... g_n^{a_n}),
    /// certified to be a polynomial of total degree |alpha|.
    pub fn rodrigues(&self, alpha: &[u64], c: &Rational) -> Result<Poly> {
        assert_eq!(alpha.len(), self.nvars(), "multi-index length mismatch");
        if c.is_zero() {
            return Err(Error::InvalidInput("rodrigues constant must be nonzero".into()));
        }
        let mut arg = LaurentPoly::one(self.nvars());
        for (g, &a) in self.gens.iter().zip(alpha) {
            arg = &arg * &g.pow(a);
        }
        let out = self.apply_word(alpha, &arg)?;
        let scaled = out.scale(c);
        let poly = Poly::try_from_laurent(scaled)?;
        let total: u64 = alpha.iter().sum();
        let deg = poly.total_degree().unwrap_or(-1);
        if deg != total as i64 {
            return Err(Error::DegreeMismatch { expected: total as i64, got: deg });
        }
        Ok(poly)
    }

    /// Rodrigues output with the family's classical constant.
    pub fn rodrigues_classical(&self, alpha: &[u64]) -> Result<Poly> {
        self.rodrigues(alpha, &self.kind.rodrigues_constant(alpha))
    }

    /// Rodrigues output with c = 1 (orthogonality is scale-invariant).
    pub fn rodrigues_raw(&self, alpha: &[u64]) -> Result<Poly> {
        self.rodrigues(alpha, &Rational::one())
    }

    /// Apply Lambda^counts to an argument, requiring every intermediate to
    /// land back in the Laurent ring after cancellation (which it does for
    /// all supported families; a leftover denominator is a hard error).
    pub fn apply_word(&self, counts: &[u64], arg: &LaurentPoly) -> Result<LaurentPoly> {
        assert_eq!(counts.len(), self.nvars(), "multi-index length mismatch");
        let mut cur = RatFunc::from_laurent(arg.clone());
        for (op, &k) in self.ops.iter().zip(counts) {
            for _ in 0..k {
                cur = op.apply_rat(&cur);
            }
        }
        cur.as_laurent()
            .cloned()
            .ok_or_else(|| Error::NotPolynomial(format!("operator word left a denominator: {cur}")))
    }
}

/// Build the operator system for a family. Domain constraints on the
/// parameters are enforced unless `unconstrained` is set (needed for the
/// image studies, where the parameters range outside the weights' domain).
pub fn build_family(family: &Family, unconstrained: bool) -> Result<OpSystem> {
    let kind = family.kind()?;
    if !unconstrained {
        kind.check_domain()?;
    }
    let n = kind.nvars();
    let (ops, gens) = match &kind {
        FamilyKind::Axes(axes) => {
            let mut ops = Vec::with_capacity(n);
            let mut gens = Vec::with_capacity(n);
            for (i, ax) in axes.iter().enumerate() {
                match ax {
                    AxisFamily::Hermite => {
                        // Lambda = d_i - 2 x_i, g = 1
                        let h = LaurentPoly::var(n, i).scale(&rat_int(-2));
                        ops.push(OrderOneOp::with_laurent(i, Rational::one(), h));
                        gens.push(LaurentPoly::one(n));
                    }
                    AxisFamily::Laguerre(a) => {
                        // Lambda = d_i + a x_i^{-1} - 1, g = x_i
                        let mut exps = vec![0i64; n];
                        exps[i] = -1;
                        let h = LaurentPoly::from_terms(
                            n,
                            &[(&exps[..], a.clone()), (&vec![0; n][..], rat_int(-1))],
                        );
                        ops.push(OrderOneOp::with_laurent(i, Rational::one(), h));
                        gens.push(LaurentPoly::var(n, i));
                    }
                    AxisFamily::Jacobi(a, b) => {
                        // Lambda = d_i - a(1-x_i)^{-1} + b(1+x_i)^{-1}
                        //        = d_i + (-a(1+x_i) + b(1-x_i)) / (1 - x_i^2)
                        let xi = LaurentPoly::var(n, i);
                        let one = LaurentPoly::one(n);
                        let num = &(&one + &xi).scale(&-a.clone()) + &(&one - &xi).scale(b);
                        let den = &one - &(&xi * &xi);
                        let h = RatFunc::new(num, den.clone())?;
                        ops.push(OrderOneOp::new(i, Rational::one(), h));
                        gens.push(den);
                    }
                }
            }
            (ops, gens)
        }
        FamilyKind::Ball { mu, .. } => {
            // Lambda_i = d_i - (2 mu - 1) x_i / (1 - ||x||^2), g_i = 1 - ||x||^2
            let mut den = LaurentPoly::one(n);
            for j in 0..n {
                let xj = LaurentPoly::var(n, j);
                den = &den - &(&xj * &xj);
            }
            let coeff = -(&(mu * &rat_int(2)) - &Rational::one());
            let mut ops = Vec::with_capacity(n);
            let mut gens = Vec::with_capacity(n);
            for i in 0..n {
                let num = LaurentPoly::var(n, i).scale(&coeff);
                let h = RatFunc::new(num, den.clone())?;
                ops.push(OrderOneOp::new(i, Rational::one(), h));
                gens.push(den.clone());
            }
            (ops, gens)
        }
        FamilyKind::Simplex { kappa } => {
            // Lambda_i = d_i + k_i / x_i - k_{n+1} / (1 - |x|_1),
            // g_i = x_i (1 - |x|_1)
            let mut lin = LaurentPoly::one(n);
            for j in 0..n {
                lin = &lin - &LaurentPoly::var(n, j);
            }
            let k_last = &kappa[n];
            let mut ops = Vec::with_capacity(n);
            let mut gens = Vec::with_capacity(n);
            for i in 0..n {
                let mut exps = vec![0i64; n];
                exps[i] = -1;
                let inv_xi = LaurentPoly::from_terms(n, &[(&exps[..], Rational::one())]);
                // k_i x_i^{-1} (1 - |x|) - k_{n+1}, all over (1 - |x|)
                let num = &(&inv_xi * &lin).scale(&kappa[i])
                    - &LaurentPoly::constant(n, k_last.clone());
                let h = RatFunc::new(num, lin.clone())?;
                ops.push(OrderOneOp::new(i, Rational::one(), h));
                gens.push(&LaurentPoly::var(n, i) * &lin);
            }
            (ops, gens)
        }
    };

    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            if !ops[i].commutes_with(&ops[j]) {
                return Err(Error::NonCommuting(format!(
                    "operators {} and {} of {family}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    Ok(OpSystem { family: family.clone(), kind, ops, gens })
}

/// Multi-indices alpha in N^n with |alpha| <= degree, in graded-lex order.
pub fn multi_indices(nvars: usize, degree: u64) -> Vec<Vec<u64>> {
    fn rec(nvars: usize, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == nvars {
            out.push(cur.clone());
            return;
        }
        for k in 0..=budget {
            cur.push(k);
            rec(nvars, budget - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for d in 0..=degree {
        let mut level = Vec::new();
        rec(nvars, d, &mut cur, &mut level);
        level.retain(|a| a.iter().sum::<u64>() == d);
        // graded-lex inside a degree level: lexicographically ascending
        level.sort();
        out.extend(level);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_system() {
        let sys = build_family(&Family::Hermite { n: 1 }, false).unwrap();
        assert_eq!(sys.ops()[0].to_string(), "1*d + -2*z");
        assert_eq!(sys.gens()[0], LaurentPoly::one(1));
    }

    #[test]
    fn legendre_is_jacobi_zero_zero() {
        let sys = build_family(&Family::Legendre { n: 1 }, false).unwrap();
        // Lambda = d, g = 1 - x^2
        assert!(sys.ops()[0].zeroth().is_zero());
        let g = LaurentPoly::from_terms(1, &[(&[0], rat_int(1)), (&[2], rat_int(-1))]);
        assert_eq!(sys.gens()[0], g);
    }

    #[test]
    fn simplex_system_shape() {
        let sys = build_family(
            &Family::Simplex { kappa: vec![rat_int(1), rat_int(1), rat_int(1)] },
            false,
        )
        .unwrap();
        assert_eq!(sys.nvars(), 2);
        // g_i = x_i (1 - x1 - x2)
        let x1 = LaurentPoly::var(2, 0);
        let x2 = LaurentPoly::var(2, 1);
        let lin = &(&LaurentPoly::one(2) - &x1) - &x2;
        assert_eq!(sys.gens()[0], &x1 * &lin);
        assert_eq!(sys.gens()[1], &x2 * &lin);
    }

    #[test]
    fn rodrigues_hermite_m2() {
        // Lambda^2(1) with the (-1)^m constant: 4z^2 - 2
        let sys = build_family(&Family::Hermite { n: 1 }, false).unwrap();
        let h2 = sys.rodrigues_classical(&[2]).unwrap();
        let expect = LaurentPoly::from_terms(1, &[(&[2], rat_int(4)), (&[0], rat_int(-2))]);
        assert_eq!(h2.as_laurent(), &expect);
    }

    #[test]
    fn rodrigues_laguerre_m1() {
        // (d + a z^-1 - 1)(z) = 1 + a - z, constant 1/1!
        let a = rat(1, 2);
        let sys = build_family(&Family::Laguerre { alpha: vec![a.clone()] }, false).unwrap();
        let l1 = sys.rodrigues_classical(&[1]).unwrap();
        let expect = LaurentPoly::from_terms(
            1,
            &[(&[0], &Rational::one() + &a), (&[1], rat_int(-1))],
        );
        assert_eq!(l1.as_laurent(), &expect);
    }

    #[test]
    fn rodrigues_jacobi_m1() {
        // ((a+b+2)z + (a-b)) / 2
        let (a, b) = (rat_int(1), rat_int(2));
        let sys = build_family(
            &Family::Jacobi { alpha: vec![a.clone()], beta: vec![b.clone()] },
            false,
        )
        .unwrap();
        let p1 = sys.rodrigues_classical(&[1]).unwrap();
        let expect = LaurentPoly::from_terms(
            1,
            &[
                (&[1], &(&(&a + &b) + &rat_int(2)) / &rat_int(2)),
                (&[0], &(&a - &b) / &rat_int(2)),
            ],
        );
        assert_eq!(p1.as_laurent(), &expect);
    }

    #[test]
    fn rodrigues_degree_certified() {
        for fam in [
            Family::Hermite { n: 2 },
            Family::Laguerre { alpha: vec![rat(1, 2), rat_int(1)] },
            Family::Jacobi { alpha: vec![rat_int(0), rat_int(1)], beta: vec![rat_int(0), rat_int(2)] },
            Family::Ball { n: 2, mu: rat_int(1) },
            Family::Simplex { kappa: vec![rat_int(0), rat_int(1), rat(1, 2)] },
        ] {
            let sys = build_family(&fam, false).unwrap();
            for alpha in multi_indices(2, 4) {
                let u = sys.rodrigues_raw(&alpha).unwrap();
                let total: u64 = alpha.iter().sum();
                assert_eq!(u.degree().unwrap_or(0), total, "family {fam}, alpha {alpha:?}");
            }
        }
    }

    #[test]
    fn family_string_round_trip() {
        for fam in [
            Family::Hermite { n: 3 },
            Family::Laguerre { alpha: vec![rat_int(0), rat(1, 2)] },
            Family::Jacobi { alpha: vec![rat(1, 2)], beta: vec![rat_int(2)] },
            Family::Gegenbauer { lambda: vec![rat(3, 2)] },
            Family::Ball { n: 2, mu: rat(3, 2) },
            Family::Simplex { kappa: vec![rat_int(1), rat_int(1), rat_int(1)] },
            Family::Product {
                factors: vec![
                    Family::Laguerre { alpha: vec![rat_int(0)] },
                    Family::Jacobi { alpha: vec![rat_int(1)], beta: vec![rat_int(2)] },
                ],
            },
        ] {
            let s = fam.to_string();
            let back: Family = s.parse().unwrap();
            assert_eq!(back, fam, "round-trip of `{s}`");
        }
    }

    #[test]
    fn domain_enforcement_and_override() {
        let bad = Family::Laguerre { alpha: vec![rat_int(-2)] };
        assert!(matches!(build_family(&bad, false), Err(Error::ParameterOutOfDomain(_))));
        assert!(build_family(&bad, true).is_ok());
        assert!(matches!(
            "frobenius:1".parse::<Family>(),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn multi_index_order() {
        let idx = multi_indices(2, 2);
        assert_eq!(
            idx,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0]
            ]
        );
    }
}
