//! Exactly decidable membership predicates and the ambient algebras they
//! live in. Predicates are data, not closures, so reports and scenario
//! files can name them and reproduce them deterministically.

use crate::error::{Error, Result};
use crate::image::{in_image, in_image_poly, PhiSystem};
use crate::laurent::{LaurentPoly, Monomial, Poly};
use crate::linalg::{solve, QMatrix};
use crate::orthopoly::OrthoBasis;
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// Laurent polynomials in `nvars` variables.
    Laurent { nvars: usize },
    /// Polynomials in `nvars` variables.
    Poly { nvars: usize },
    /// Square rational matrices of size `dim`.
    Matrix { dim: usize },
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Laurent { nvars } => write!(f, "laurent {nvars}"),
            Ambient::Poly { nvars } => write!(f, "poly {nvars}"),
            Ambient::Matrix { dim } => write!(f, "matrix {dim}"),
        }
    }
}

/// An element of one of the ambient algebras.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Poly(LaurentPoly),
    Matrix(QMatrix),
}

impl Element {
    pub fn one(ambient: Ambient) -> Element {
        match ambient {
            Ambient::Laurent { nvars } | Ambient::Poly { nvars } => {
                Element::Poly(LaurentPoly::one(nvars))
            }
            Ambient::Matrix { dim } => Element::Matrix(QMatrix::identity(dim)),
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Poly(a), Element::Poly(b)) => Ok(Element::Poly(a * b)),
            (Element::Matrix(a), Element::Matrix(b)) => Ok(Element::Matrix(a * b)),
            _ => Err(Error::AmbientMismatch("mixed polynomial and matrix operands".into())),
        }
    }

    pub fn fits(&self, ambient: Ambient) -> bool {
        match (self, ambient) {
            (Element::Poly(p), Ambient::Laurent { nvars }) => p.nvars() == nvars,
            (Element::Poly(p), Ambient::Poly { nvars }) => {
                p.nvars() == nvars && p.is_polynomial()
            }
            (Element::Matrix(m), Ambient::Matrix { dim }) => {
                m.rows() == dim && m.cols() == dim
            }
            _ => false,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Poly(p) => write!(f, "{p}"),
            Element::Matrix(m) => write!(f, "{m}"),
        }
    }
}

/// The data of a membership test.
#[derive(Clone)]
pub enum PredicateKind {
    /// [z^gamma] f = 0.
    CoeffZero { gamma: Monomial },
    /// Every coefficient at gamma in N^n vanishes.
    NoHolomorphicPart,
    /// sum_i a_i f(u_i) = 0.
    Atomic { points: Vec<Vec<Rational>>, weights: Vec<Rational> },
    /// ord_nu(f) >= c with ord the minimum of nu over the support.
    Valuation { nu: Vec<Rational>, c: Rational },
    /// f lies in the linear span of the given polynomials.
    Span { basis: Vec<LaurentPoly> },
    /// f in Im Phi_lambda over the Laurent ring.
    ImagePhi { lambda: Vec<Rational> },
    /// f in Im' Phi_lambda over the polynomial ring.
    ImagePrimePhi { lambda: Vec<Rational> },
    /// trace f = 0 over square matrices.
    TraceZero,
    /// Intersection: every component predicate holds.
    All { parts: Vec<Predicate> },
    /// Coefficientwise lift along the last variable: each cofactor of
    /// z_n^k must satisfy the inner predicate (one variable fewer).
    CoefficientwiseInLast { inner: Box<Predicate> },
    /// The u_0 coefficient of the expansion over an orthogonal basis
    /// vanishes.
    BasisConstantTerm { basis: Arc<OrthoBasis> },
}

impl fmt::Debug for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateKind::CoeffZero { gamma } => write!(f, "CoeffZero({gamma:?})"),
            PredicateKind::NoHolomorphicPart => write!(f, "NoHolomorphicPart"),
            PredicateKind::Atomic { points, .. } => write!(f, "Atomic(k={})", points.len()),
            PredicateKind::Valuation { .. } => write!(f, "Valuation"),
            PredicateKind::Span { basis } => write!(f, "Span(dim={})", basis.len()),
            PredicateKind::ImagePhi { .. } => write!(f, "ImagePhi"),
            PredicateKind::ImagePrimePhi { .. } => write!(f, "ImagePrimePhi"),
            PredicateKind::TraceZero => write!(f, "TraceZero"),
            PredicateKind::All { parts } => write!(f, "All({})", parts.len()),
            PredicateKind::CoefficientwiseInLast { inner } => write!(f, "Lift({inner:?})"),
            PredicateKind::BasisConstantTerm { .. } => write!(f, "BasisConstantTerm"),
        }
    }
}

/// A named, exactly decidable membership predicate over a declared ambient.
#[derive(Debug, Clone)]
pub struct Predicate {
    name: String,
    ambient: Ambient,
    kind: PredicateKind,
}

fn drop_last_var(p: &LaurentPoly) -> LaurentPoly {
    let n = p.nvars();
    let mut out = LaurentPoly::zero(n - 1);
    for (m, c) in p.terms() {
        debug_assert_eq!(m.0[n - 1], 0);
        out = &out + &LaurentPoly::monomial(n - 1, Monomial(m.0[..n - 1].to_vec()), c.clone());
    }
    out
}

impl Predicate {
    pub fn new(name: impl Into<String>, ambient: Ambient, kind: PredicateKind) -> Self {
        Predicate { name: name.into(), ambient, kind }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn kind(&self) -> &PredicateKind {
        &self.kind
    }

    /// Laurent polynomials with no constant term.
    pub fn no_constant_term(nvars: usize) -> Self {
        Predicate::new(
            "no-constant-term",
            Ambient::Laurent { nvars },
            PredicateKind::CoeffZero { gamma: Monomial::unit(nvars) },
        )
    }

    /// Laurent polynomials with [z^gamma] f = 0.
    pub fn coeff_zero(nvars: usize, gamma: Monomial) -> Self {
        let name = format!("coeff-zero@{:?}", gamma.0);
        Predicate::new(name, Ambient::Laurent { nvars }, PredicateKind::CoeffZero { gamma })
    }

    /// Laurent polynomials with no holomorphic part.
    pub fn no_holomorphic_part(nvars: usize) -> Self {
        Predicate::new(
            "no-holomorphic-part",
            Ambient::Laurent { nvars },
            PredicateKind::NoHolomorphicPart,
        )
    }

    pub fn atomic(points: Vec<Vec<Rational>>, weights: Vec<Rational>) -> Result<Self> {
        if points.len() != weights.len() || points.is_empty() {
            return Err(Error::InvalidInput(
                "atomic predicate needs matching non-empty lists".into(),
            ));
        }
        if weights.iter().any(Rational::is_zero) {
            return Err(Error::InvalidInput("atomic weights must be nonzero".into()));
        }
        let nvars = points[0].len();
        if points.iter().any(|p| p.len() != nvars) {
            return Err(Error::InvalidInput("atomic points of mixed dimension".into()));
        }
        Ok(Predicate::new(
            format!("atomic(k={})", points.len()),
            Ambient::Poly { nvars },
            PredicateKind::Atomic { points, weights },
        ))
    }

    pub fn valuation(nu: Vec<Rational>, c: Rational) -> Self {
        let nvars = nu.len();
        let name = format!(
            "valuation(nu=[{}], c={c})",
            nu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
        Predicate::new(name, Ambient::Poly { nvars }, PredicateKind::Valuation { nu, c })
    }

    pub fn span(nvars: usize, basis: Vec<LaurentPoly>, ambient_poly: bool) -> Self {
        let name = format!(
            "span{{{}}}",
            basis.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        );
        let ambient = if ambient_poly {
            Ambient::Poly { nvars }
        } else {
            Ambient::Laurent { nvars }
        };
        Predicate::new(name, ambient, PredicateKind::Span { basis })
    }

    pub fn image_phi(lambda: Vec<Rational>) -> Self {
        let nvars = lambda.len();
        let name = format!(
            "im-phi(lambda=[{}])",
            lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
        Predicate::new(name, Ambient::Laurent { nvars }, PredicateKind::ImagePhi { lambda })
    }

    pub fn image_phi_poly(lambda: Vec<Rational>) -> Self {
        let nvars = lambda.len();
        let name = format!(
            "im-phi-poly(lambda=[{}])",
            lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
        Predicate::new(name, Ambient::Poly { nvars }, PredicateKind::ImagePrimePhi { lambda })
    }

    pub fn trace_zero(dim: usize) -> Self {
        Predicate::new("trace-zero", Ambient::Matrix { dim }, PredicateKind::TraceZero)
    }

    /// Pointwise conjunction of predicates over one shared ambient.
    pub fn intersect(parts: Vec<Predicate>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("empty intersection".into()))?;
        let ambient = first.ambient;
        if parts.iter().any(|p| p.ambient != ambient) {
            return Err(Error::AmbientMismatch(
                "intersection components live in different ambients".into(),
            ));
        }
        let name = format!(
            "intersect({})",
            parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join(", ")
        );
        Ok(Predicate::new(name, ambient, PredicateKind::All { parts }))
    }

    /// Lift M to M[z]: polynomials in one extra (last) variable whose
    /// coefficients all satisfy the inner predicate.
    pub fn lift_extension(inner: Predicate) -> Result<Self> {
        let nvars = match inner.ambient {
            Ambient::Poly { nvars } => nvars + 1,
            _ => {
                return Err(Error::AmbientMismatch(
                    "extension lift needs a polynomial ambient".into(),
                ))
            }
        };
        let name = format!("lift[{}]", inner.name);
        Ok(Predicate::new(
            name,
            Ambient::Poly { nvars },
            PredicateKind::CoefficientwiseInLast { inner: Box::new(inner) },
        ))
    }

    /// Polynomials whose u_0 coefficient vanishes in the given basis.
    pub fn basis_constant_term(basis: OrthoBasis) -> Self {
        let nvars = basis.nvars();
        let name = format!("constant-term-zero[{}]", basis.family());
        Predicate::new(
            name,
            Ambient::Poly { nvars },
            PredicateKind::BasisConstantTerm { basis: Arc::new(basis) },
        )
    }

    /// Exact membership decision.
    pub fn test(&self, e: &Element) -> Result<bool> {
        if !e.fits(self.ambient) {
            return Err(Error::AmbientMismatch(format!(
                "element does not fit ambient {}",
                self.ambient
            )));
        }
        self.kind_test(&self.kind, e)
    }

    fn kind_test(&self, kind: &PredicateKind, e: &Element) -> Result<bool> {
        match (kind, e) {
            (PredicateKind::CoeffZero { gamma }, Element::Poly(p)) => {
                Ok(p.coeff(gamma).is_zero())
            }
            (PredicateKind::NoHolomorphicPart, Element::Poly(p)) => {
                Ok(p.terms().all(|(m, _)| !m.is_nonnegative()))
            }
            (PredicateKind::Atomic { points, weights }, Element::Poly(p)) => {
                let mut acc = Rational::zero();
                for (pt, w) in points.iter().zip(weights) {
                    acc += w * &p.eval(pt)?;
                }
                Ok(acc.is_zero())
            }
            (PredicateKind::Valuation { nu, c }, Element::Poly(p)) => {
                if p.is_zero() {
                    return Ok(true); // ord(0) = +infinity
                }
                let ord = p
                    .terms()
                    .map(|(m, _)| {
                        m.0.iter()
                            .zip(nu)
                            .map(|(&e, w)| w * &Rational::from_integer(e.into()))
                            .sum::<Rational>()
                    })
                    .min()
                    .expect("nonzero polynomial has a support");
                Ok(&ord >= c)
            }
            (PredicateKind::Span { basis }, Element::Poly(p)) => span_contains(basis, p),
            (PredicateKind::ImagePhi { lambda }, Element::Poly(p)) => {
                Ok(in_image(p, &PhiSystem::new(lambda.clone())))
            }
            (PredicateKind::ImagePrimePhi { lambda }, Element::Poly(p)) => {
                let poly = Poly::try_from_laurent(p.clone())?;
                Ok(in_image_poly(&poly, &PhiSystem::new(lambda.clone())))
            }
            (PredicateKind::TraceZero, Element::Matrix(m)) => Ok(m.trace().is_zero()),
            (PredicateKind::All { parts }, _) => {
                for part in parts {
                    if !part.test(e)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (PredicateKind::CoefficientwiseInLast { inner }, Element::Poly(p)) => {
                let last = p.nvars() - 1;
                for (_, cof) in p.split_by_var(last) {
                    let projected = drop_last_var(&cof);
                    if !inner.test(&Element::Poly(projected))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (PredicateKind::BasisConstantTerm { basis }, Element::Poly(p)) => {
                let poly = Poly::try_from_laurent(p.clone())?;
                basis.constant_term_zero(&poly)
            }
            _ => Err(Error::AmbientMismatch("predicate kind vs element mismatch".into())),
        }
    }
}

/// Exact linear membership of p in the span of the basis polynomials.
fn span_contains(basis: &[LaurentPoly], p: &LaurentPoly) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for q in basis.iter().chain(std::iter::once(p)) {
        for (m, _) in q.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = QMatrix::zeros(rows.len(), basis.len());
    for (j, q) in basis.iter().enumerate() {
        for (m, c) in q.terms() {
            mat.set(rows[m], j, c.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (m, c) in p.terms() {
        rhs[rows[m]] = c.clone();
    }
    Ok(solve(&mat, &rhs).is_some())
}
