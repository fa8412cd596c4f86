//! Membership in the images of the commuting operator families
//! Phi_{lambda_i} = d_i + lambda_i z_i^{-1} over the Laurent ring, and of
//! their polynomial restrictions, together with constructive witnesses.
//!
//! The same machinery covers the tridiagonal operators Psi_{a_i} = d_i + a_i z_i
//! (banded back-substitution, one variable at a time) and the shifted
//! operators d_i + a_i z_i^{-1} - 1; for those, exact membership is decided
//! by the annihilating moment functional and bounded-degree exact linear
//! solves provide witnesses and non-existence certificates.

use crate::diffop::{OrderOneOp, RatFunc};
use crate::error::{Error, Result};
use crate::families::{multi_indices, OpSystem};
use crate::laurent::{LaurentPoly, Monomial, Poly};
use crate::linalg::{solve, QMatrix};
use crate::rational::{double_factorial_odd, is_integer, pochhammer, rat_int, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The parameter vector of a Phi system; integer components drive every
/// case split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSystem {
    lambda: Vec<Rational>,
}

impl PhiSystem {
    pub fn new(lambda: Vec<Rational>) -> Self {
        assert!(!lambda.is_empty(), "empty parameter vector");
        PhiSystem { lambda }
    }

    pub fn nvars(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// When every component is an integer, the single excluded exponent
    /// vector -lambda - 1.
    pub fn forbidden_monomial(&self) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.lambda.len());
        for l in &self.lambda {
            if !is_integer(l) {
                return None;
            }
            let v = i64::try_from(l.numer().clone()).expect("parameter exponent overflows i64");
            exps.push(-v - 1);
        }
        Some(Monomial(exps))
    }

    /// True iff every component is a negative integer, i.e. -lambda-1 lies
    /// in N^n and the polynomial image is proper.
    pub fn all_negative_integers(&self) -> bool {
        self.forbidden_monomial().map_or(false, |m| m.is_nonnegative())
    }

    pub fn apply(&self, i: usize, f: &LaurentPoly) -> LaurentPoly {
        phi_apply(&self.lambda[i], i, f)
    }

    pub fn apply_witness(&self, w: &ImageWitness) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(self.nvars());
        for (i, f) in w.parts.iter().enumerate() {
            acc = &acc + &self.apply(i, f);
        }
        acc
    }
}

/// (d_i + lambda z_i^{-1}) f, termwise: z^k -> (k_i + lambda) z^{k - e_i}.
pub fn phi_apply(lambda: &Rational, i: usize, f: &LaurentPoly) -> LaurentPoly {
    let n = f.nvars();
    let mut exps = vec![0i64; n];
    exps[i] = -1;
    let zinv = LaurentPoly::from_terms(n, &[(&exps[..], lambda.clone())]);
    &f.partial(i) + &(&zinv * f)
}

/// (d_i + a z_i) f.
pub fn psi_apply(a: &Rational, i: usize, f: &LaurentPoly) -> LaurentPoly {
    let z = LaurentPoly::var(f.nvars(), i);
    &f.partial(i) + &(&z * f).scale(a)
}

/// Membership of g in Im Phi_lambda (Laurent ring): the whole ring when
/// some component is non-integral, otherwise the vanishing of the single
/// coefficient at z^{-lambda-1}.
pub fn in_image(g: &LaurentPoly, sys: &PhiSystem) -> bool {
    assert_eq!(g.nvars(), sys.nvars(), "dimension mismatch");
    match sys.forbidden_monomial() {
        None => true,
        Some(m) => g.coeff(&m).is_zero(),
    }
}

/// Membership of a polynomial g in Im' Phi_lambda: the whole polynomial
/// ring unless every component is a negative integer, in which case the
/// coefficient at z^{-lambda-1} (now in N^n) must vanish.
pub fn in_image_poly(g: &Poly, sys: &PhiSystem) -> bool {
    assert_eq!(g.nvars(), sys.nvars(), "dimension mismatch");
    match sys.forbidden_monomial() {
        Some(m) if m.is_nonnegative() => g.coeff(&m).is_zero(),
        _ => true,
    }
}

/// Solve Phi_{lambda} f = g in the single variable i, the other variables
/// riding along as coefficients: each term c z^k maps to
/// c/(k_i + lambda + 1) z^{k + e_i}. Errors when a term sits at the
/// excluded exponent k_i = -lambda - 1.
pub fn solve_single(g: &LaurentPoly, i: usize, lambda: &Rational) -> Result<LaurentPoly> {
    let n = g.nvars();
    let mut out = LaurentPoly::zero(n);
    for (m, c) in g.terms() {
        let k = rat_int(m.0[i]);
        let denom = &(&k + lambda) + &Rational::one();
        if denom.is_zero() {
            return Err(Error::NotInImage(format!(
                "term at the excluded exponent {} in z{}",
                m.0[i],
                i + 1
            )));
        }
        let mut up = m.clone();
        up.0[i] += 1;
        out = &out + &LaurentPoly::monomial(n, up, &c.clone() / &denom);
    }
    Ok(out)
}

/// Witness for membership: Sum_i Phi_{lambda_i} f_i = target, re-verified
/// exactly on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageWitness {
    parts: Vec<LaurentPoly>,
}

impl ImageWitness {
    pub fn parts(&self) -> &[LaurentPoly] {
        &self.parts
    }

    pub fn is_polynomial(&self) -> bool {
        self.parts.iter().all(LaurentPoly::is_polynomial)
    }

    /// Construct after verifying Sum_i Phi_{lambda_i}(parts_i) == target.
    pub fn verified_phi(parts: Vec<LaurentPoly>, sys: &PhiSystem, target: &LaurentPoly) -> Result<Self> {
        let w = ImageWitness { parts };
        let got = sys.apply_witness(&w);
        if &got == target {
            Ok(w)
        } else {
            Err(Error::WitnessVerification(format!("expected {target}, got {got}")))
        }
    }

    /// Construct after verifying Sum_i ops[i](parts_i) == target.
    pub fn verified_ops(parts: Vec<LaurentPoly>, ops: &[OrderOneOp], target: &LaurentPoly) -> Result<Self> {
        assert_eq!(parts.len(), ops.len(), "one part per operator");
        let mut acc = RatFunc::zero(target.nvars());
        for (op, f) in ops.iter().zip(&parts) {
            acc = acc.add(&op.apply(f));
        }
        let ok = match acc.as_laurent() {
            Some(v) => v == target,
            None => false,
        };
        if ok {
            Ok(ImageWitness { parts })
        } else {
            Err(Error::WitnessVerification(format!("expected {target}, got {acc}")))
        }
    }
}

impl fmt::Display for ImageWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            writeln!(f, "f{} = {}", i + 1, p)?;
        }
        Ok(())
    }
}

/// Decompose g into Sum Phi_{lambda_i} f_i over the Laurent ring. Each
/// monomial is routed to the lowest variable index whose excluded exponent
/// it avoids, then solved termwise in that variable.
pub fn decompose(g: &LaurentPoly, sys: &PhiSystem) -> Result<ImageWitness> {
    if !in_image(g, sys) {
        return Err(Error::NotInImage(format!("g = {g} has a z^(-lambda-1) term")));
    }
    let n = sys.nvars();
    let mut routed = vec![LaurentPoly::zero(n); n];
    'terms: for (m, c) in g.terms() {
        for i in 0..n {
            let excluded = is_integer(&sys.lambda[i])
                && rat_int(m.0[i]) == -(&sys.lambda[i].clone() + Rational::one());
            if !excluded {
                routed[i] = &routed[i] + &LaurentPoly::monomial(n, m.clone(), c.clone());
                continue 'terms;
            }
        }
        unreachable!("in_image guarantees an eligible variable for every term");
    }
    let mut parts = Vec::with_capacity(n);
    for (i, gi) in routed.iter().enumerate() {
        parts.push(solve_single(gi, i, &sys.lambda[i])?);
    }
    ImageWitness::verified_phi(parts, sys, g)
}

/// Decompose a polynomial g into Sum Phi_{lambda_i} f_i with all parts
/// polynomial, by the variable-peeling recursion: split off the
/// z_1^{-lambda_1-1} slab, recurse on the remaining variables, and solve
/// the rest in variable 1 by termwise antiderivative.
pub fn decompose_poly(g: &Poly, sys: &PhiSystem) -> Result<ImageWitness> {
    if !in_image_poly(g, sys) {
        return Err(Error::NotInImage(format!("g = {} has the excluded term", **g)));
    }
    let n = sys.nvars();
    let mut parts = vec![LaurentPoly::zero(n); n];
    rec_poly(g.as_laurent(), sys, 0, &mut parts)?;
    let w = ImageWitness::verified_phi(parts, sys, g.as_laurent())?;
    debug_assert!(w.is_polynomial());
    Ok(w)
}

fn rec_poly(g: &LaurentPoly, sys: &PhiSystem, v: usize, parts: &mut [LaurentPoly]) -> Result<()> {
    if g.is_zero() {
        return Ok(());
    }
    let n = sys.nvars();
    let lam = &sys.lambda[v];
    if v + 1 == n {
        parts[v] = &parts[v] + &solve_single(g, v, lam)?;
        return Ok(());
    }
    // excluded exponent in this variable, when it lies in N
    let excluded: Option<i64> = if is_integer(lam) {
        let neg = (-(lam + &Rational::one())).numer().clone();
        i64::try_from(neg).ok().filter(|e| *e >= 0)
    } else {
        None
    };
    match excluded {
        None => {
            parts[v] = &parts[v] + &solve_single(g, v, lam)?;
            Ok(())
        }
        Some(e) => {
            let by_var = g.split_by_var(v);
            let mut rest = LaurentPoly::zero(n);
            let mut slab = LaurentPoly::zero(n);
            for (k, cof) in by_var {
                let mut exps = vec![0i64; n];
                exps[v] = k;
                let piece = cof.mul_monomial(&Monomial(exps), &Rational::one());
                if k == e {
                    slab = piece;
                } else {
                    rest = &rest + &piece;
                }
            }
            parts[v] = &parts[v] + &solve_single(&rest, v, lam)?;
            rec_poly(&slab, sys, v + 1, parts)
        }
    }
}

/// The explicit non-Mathieu pair for integer lambda != -1:
/// v = z^{-lambda-1} and u = 1 + z^{-lambda} (lambda < -1) or
/// u = 1 + z^{-lambda-2} (lambda > -1).
pub fn counterexample_pair(lambda: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    if lambda == -1 {
        return Err(Error::InvalidInput(
            "lambda = -1 is the genuine Mathieu case; no counterexample exists".into(),
        ));
    }
    let e = if lambda < -1 { -lambda } else { -lambda - 2 };
    let u = LaurentPoly::from_terms(1, &[(&[0], Rational::one()), (&[e], Rational::one())]);
    let v = LaurentPoly::from_terms(1, &[(&[-lambda - 1], Rational::one())]);
    Ok((u, v))
}

// ---------------------------------------------------------------------------
// Psi_{a} = d_i + a_i z_i and the shifted Laguerre operators d_i + a_i z_i^{-1} - 1

/// The operators Psi_{a_i} = d_i + a_i z_i as order-one operators.
pub fn psi_ops(alphas: &[Rational]) -> Vec<OrderOneOp> {
    let n = alphas.len();
    alphas
        .iter()
        .enumerate()
        .map(|(i, a)| {
            OrderOneOp::with_laurent(i, Rational::one(), LaurentPoly::var(n, i).scale(a))
        })
        .collect()
}

/// The operators d_i + a_i z_i^{-1} - 1.
pub fn laguerre_ops(alphas: &[Rational]) -> Vec<OrderOneOp> {
    let n = alphas.len();
    alphas
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut exps = vec![0i64; n];
            exps[i] = -1;
            let h = LaurentPoly::from_terms(
                n,
                &[(&exps[..], a.clone()), (&vec![0i64; n][..], rat_int(-1))],
            );
            OrderOneOp::with_laurent(i, Rational::one(), h)
        })
        .collect()
}

/// Solve (d_i + a z_i) f = g for polynomial g in variable i by banded
/// back-substitution, highest degree first. Returns None when the single
/// consistency condition at degree zero fails (for a != 0 the image is a
/// proper subspace).
pub fn psi_solve_single(g: &LaurentPoly, i: usize, a: &Rational) -> Option<LaurentPoly> {
    let n = g.nvars();
    if g.is_zero() {
        return Some(LaurentPoly::zero(n));
    }
    if a.is_zero() {
        return g.antiderivative(i).ok();
    }
    let by_var = g.split_by_var(i);
    let (&dmax, _) = by_var.iter().next_back()?;
    if dmax < 0 || by_var.keys().any(|&k| k < 0) {
        return None;
    }
    let coeff = |k: i64| -> LaurentPoly {
        by_var.get(&k).cloned().unwrap_or_else(|| LaurentPoly::zero(n))
    };
    // unknowns f_0 .. f_{dmax-1}; f_{k-1} = (g_k - (k+1) f_{k+1}) / a
    let mut f: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    let fval = |f: &BTreeMap<i64, LaurentPoly>, j: i64| -> LaurentPoly {
        f.get(&j).cloned().unwrap_or_else(|| LaurentPoly::zero(n))
    };
    for k in (1..=dmax).rev() {
        let upper = fval(&f, k + 1).scale(&rat_int(k + 1));
        let num = &coeff(k) - &upper;
        f.insert(k - 1, num.scale(&a.clone().recip()));
    }
    // consistency at degree zero: 1 * f_1 must equal g_0
    if fval(&f, 1) != coeff(0) {
        return None;
    }
    let mut out = LaurentPoly::zero(n);
    for (j, c) in f {
        let mut exps = vec![0i64; n];
        exps[i] = j;
        out = &out + &c.mul_monomial(&Monomial(exps), &Rational::one());
    }
    Some(out)
}

/// Formal axis moments annihilating Psi_a: mu_0 = 1, odd moments vanish,
/// mu_{2s} = (-1/a)^s (2s-1)!!.
pub fn psi_axis_moment(a: &Rational, k: u64) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    let s = k / 2;
    let mut base = Rational::one();
    let neg_inv = -a.clone().recip();
    for _ in 0..s {
        base *= &neg_inv;
    }
    base * double_factorial_odd(s)
}

/// Formal axis moments annihilating d + a z^{-1} - 1 on polynomials:
/// mu_k = (a+1)_k.
pub fn laguerre_axis_moment(a: &Rational, k: u64) -> Rational {
    pochhammer(&(a + &Rational::one()), k)
}

/// The product functional E(g) = sum_gamma g_gamma prod_i mu_{gamma_i}.
pub fn product_functional(g: &Poly, axis_moment: impl Fn(usize, u64) -> Rational) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in g.terms() {
        let mut v = c.clone();
        for (i, &e) in m.0.iter().enumerate() {
            v *= axis_moment(i, e as u64);
        }
        acc += v;
    }
    acc
}

/// Exact membership of g in Im Psi_a = Sum_i Psi_{a_i} C[z]: the whole ring
/// when some a_i = 0, otherwise the kernel of the annihilating functional.
pub fn psi_in_image(g: &Poly, alphas: &[Rational]) -> bool {
    assert_eq!(g.nvars(), alphas.len(), "dimension mismatch");
    if alphas.iter().any(Rational::is_zero) {
        return true;
    }
    product_functional(g, |i, k| psi_axis_moment(&alphas[i], k)).is_zero()
}

/// Exact membership of g in Im' of the shifted operators d_i + a_i z_i^{-1} - 1.
pub fn laguerre_in_image_poly(g: &Poly, alphas: &[Rational]) -> bool {
    assert_eq!(g.nvars(), alphas.len(), "dimension mismatch");
    if alphas.iter().any(Rational::is_zero) {
        return true;
    }
    product_functional(g, |i, k| laguerre_axis_moment(&alphas[i], k)).is_zero()
}

/// Search for polynomial parts f_t of degree <= max_deg with
/// Sum_t ops[t](f_t) = target, by one exact linear solve over the monomial
/// coordinates. `None` is a certificate that no such bounded witness exists.
/// Operators must have Laurent zeroth parts (no denominators).
pub fn witness_up_to_degree(
    ops: &[OrderOneOp],
    target: &LaurentPoly,
    max_deg: u64,
) -> Result<Option<Vec<Poly>>> {
    let n = target.nvars();
    for op in ops {
        if op.zeroth().as_laurent().is_none() {
            return Err(Error::Unsupported(
                "bounded witness search needs Laurent zeroth parts".into(),
            ));
        }
    }
    let basis = multi_indices(n, max_deg);
    // images of each unknown basis monomial under each operator
    let mut columns: Vec<LaurentPoly> = Vec::with_capacity(basis.len() * ops.len());
    for op in ops {
        for alpha in &basis {
            let mono = LaurentPoly::monomial(
                n,
                Monomial(alpha.iter().map(|&e| e as i64).collect()),
                Rational::one(),
            );
            columns.push(op.apply_laurent(&mono)?);
        }
    }
    // row space: every monomial seen in any column or in the target
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in columns.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = QMatrix::zeros(rows.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            mat.set(rows[m], j, c.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (m, c) in target.terms() {
        rhs[rows[m]] = c.clone();
    }
    let Some(x) = solve(&mat, &rhs) else {
        return Ok(None);
    };
    let mut parts = Vec::with_capacity(ops.len());
    for (t, _) in ops.iter().enumerate() {
        let mut f = LaurentPoly::zero(n);
        for (bi, alpha) in basis.iter().enumerate() {
            let c = &x[t * basis.len() + bi];
            if !c.is_zero() {
                f = &f
                    + &LaurentPoly::monomial(
                        n,
                        Monomial(alpha.iter().map(|&e| e as i64).collect()),
                        c.clone(),
                    );
            }
        }
        parts.push(Poly::try_from_laurent(f)?);
    }
    // re-verify: the witness is the proof object
    let laurent_parts: Vec<LaurentPoly> = parts.iter().map(|p| p.as_laurent().clone()).collect();
    ImageWitness::verified_ops(laurent_parts, ops, target)?;
    Ok(Some(parts))
}

/// Constructive decomposition for the Psi system: an antiderivative part
/// when some a_i = 0, otherwise a bounded linear solve (degree of g is a
/// sufficient cap). None when membership fails.
pub fn psi_decompose(g: &Poly, alphas: &[Rational]) -> Result<Option<ImageWitness>> {
    let n = alphas.len();
    if let Some(i) = alphas.iter().position(Rational::is_zero) {
        let mut parts = vec![LaurentPoly::zero(n); n];
        parts[i] = g.antiderivative(i)?;
        return ImageWitness::verified_ops(parts, &psi_ops(alphas), g.as_laurent()).map(Some);
    }
    if !psi_in_image(g, alphas) {
        return Ok(None);
    }
    let cap = g.degree().unwrap_or(0);
    let parts = witness_up_to_degree(&psi_ops(alphas), g.as_laurent(), cap)?
        .ok_or_else(|| Error::WitnessVerification(
            "functional vanishes but no bounded witness found".into(),
        ))?;
    let laurent_parts = parts.into_iter().map(Poly::into_laurent).collect();
    ImageWitness::verified_ops(laurent_parts, &psi_ops(alphas), g.as_laurent()).map(Some)
}

/// Constructive decomposition for the shifted operators d_i + a_i z_i^{-1} - 1:
/// the inverse series when some a_i = 0, otherwise a bounded linear solve.
pub fn laguerre_decompose(g: &Poly, alphas: &[Rational]) -> Result<Option<ImageWitness>> {
    let n = alphas.len();
    if let Some(i) = alphas.iter().position(Rational::is_zero) {
        let mut parts = vec![LaurentPoly::zero(n); n];
        parts[i] = crate::diffop::laguerre_inverse_series(g, i).into_laurent();
        return ImageWitness::verified_ops(parts, &laguerre_ops(alphas), g.as_laurent()).map(Some);
    }
    if !laguerre_in_image_poly(g, alphas) {
        return Ok(None);
    }
    let cap = g.degree().unwrap_or(0) + 1;
    let parts = witness_up_to_degree(&laguerre_ops(alphas), g.as_laurent(), cap)?
        .ok_or_else(|| Error::WitnessVerification(
            "functional vanishes but no bounded witness found".into(),
        ))?;
    let laurent_parts = parts.into_iter().map(Poly::into_laurent).collect();
    ImageWitness::verified_ops(laurent_parts, &laguerre_ops(alphas), g.as_laurent()).map(Some)
}

/// Witness for 1 in Im' of a Jacobi operator system when some alpha_i = 0
/// or beta_i = 0: the affine polynomial the variable change sends the
/// one-variable Phi solution to. None when no component parameter vanishes.
pub fn jacobi_unit_witness(
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<Option<ImageWitness>> {
    assert_eq!(alpha.len(), beta.len(), "parameter length mismatch");
    let n = alpha.len();
    for i in 0..n {
        let (a, b) = (&alpha[i], &beta[i]);
        let (other, sign) = if b.is_zero() {
            (a, -1i64)
        } else if a.is_zero() {
            (b, 1i64)
        } else {
            continue;
        };
        let denom = other + &Rational::one();
        if denom.is_zero() {
            continue;
        }
        // beta_i = 0: f_i = (x_i - 1)/(1 + alpha_i);
        // alpha_i = 0: f_i = (x_i + 1)/(1 + beta_i)
        let f = (&LaurentPoly::var(n, i) + &LaurentPoly::constant(n, rat_int(sign)))
            .scale(&denom.recip());
        let mut parts = vec![LaurentPoly::zero(n); n];
        parts[i] = f;
        let sys = crate::families::build_family(
            &crate::families::Family::Jacobi { alpha: alpha.to_vec(), beta: beta.to_vec() },
            true,
        )?;
        let one = LaurentPoly::one(n);
        return ImageWitness::verified_ops(parts, sys.ops(), &one).map(Some);
    }
    Ok(None)
}

/// Single-entry witness realizing u_alpha in Im' Lambda for alpha != 0:
/// w = c_alpha * Lambda^{alpha - e_i}(g^alpha) at the first i with
/// alpha_i >= 1, so that Lambda_i(w) equals the classical u_alpha.
pub fn rodrigues_image_witness(sys: &OpSystem, alpha: &[u64]) -> Result<(usize, Poly)> {
    let i = alpha
        .iter()
        .position(|&a| a > 0)
        .ok_or_else(|| Error::InvalidInput("alpha must be nonzero".into()))?;
    let mut arg = LaurentPoly::one(sys.nvars());
    for (g, &a) in sys.gens().iter().zip(alpha) {
        arg = &arg * &g.pow(a);
    }
    let mut counts = alpha.to_vec();
    counts[i] -= 1;
    let w_raw = sys.apply_word(&counts, &arg)?;
    let c = sys.kind().rodrigues_constant(alpha);
    let w = Poly::try_from_laurent(w_raw.scale(&c))?;
    let u = sys.rodrigues_classical(alpha)?;
    let got = sys.ops()[i].apply_laurent(w.as_laurent())?;
    if &got != u.as_laurent() {
        return Err(Error::WitnessVerification(format!(
            "Lambda_{}(w) = {got} differs from u_alpha = {u}",
            i + 1
        )));
    }
    Ok((i, w))
}
