//! Orthogonal polynomial bases built two independent ways: through the
//! operator-power construction (diffop/families) and through exact
//! Gram-Schmidt against the normalized moments. The cross-check that the
//! two agree up to nonzero scalars is the central validation of the whole
//! operator layer.

use crate::error::{Error, Result};
use crate::families::{build_family, multi_indices, Family};
use crate::laurent::{LaurentPoly, Monomial, Poly};
use crate::linalg::{solve, QMatrix};
use crate::moments::weighted_inner;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisMethod {
    Rodrigues,
    GramSchmidt,
}

impl fmt::Display for BasisMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisMethod::Rodrigues => write!(f, "rodrigues"),
            BasisMethod::GramSchmidt => write!(f, "gram-schmidt"),
        }
    }
}

/// An ordered orthogonal basis up to a total-degree bound, keyed by
/// multi-index in graded-lex order.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    family: Family,
    method: BasisMethod,
    degree: u64,
    entries: Vec<(Vec<u64>, Poly)>,
}

impl OrthoBasis {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn method(&self) -> BasisMethod {
        self.method
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.family.nvars()
    }

    pub fn entries(&self) -> &[(Vec<u64>, Poly)] {
        &self.entries
    }

    pub fn get(&self, alpha: &[u64]) -> Option<&Poly> {
        self.entries.iter().find(|(a, _)| a == alpha).map(|(_, p)| p)
    }

    /// Exact expansion f = sum c_alpha u_alpha, by triangular
    /// back-substitution over total-degree blocks (an exact linear solve on
    /// the top homogeneous parts inside each block, working down from the
    /// top degree). Errors when deg f exceeds the basis bound.
    pub fn expand(&self, f: &Poly) -> Result<BTreeMap<Vec<u64>, Rational>> {
        assert_eq!(f.nvars(), self.nvars(), "dimension mismatch");
        let deg = f.total_degree().unwrap_or(0);
        if deg > self.degree as i64 {
            return Err(Error::DegreeMismatch { expected: self.degree as i64, got: deg });
        }
        let mut coeffs: BTreeMap<Vec<u64>, Rational> = BTreeMap::new();
        let mut rem = f.as_laurent().clone();
        for d in (0..=deg.max(0)).rev() {
            let top = rem.homogeneous_part(d);
            if top.is_zero() {
                continue;
            }
            let block: Vec<&(Vec<u64>, Poly)> = self
                .entries
                .iter()
                .filter(|(a, _)| a.iter().sum::<u64>() as i64 == d)
                .collect();
            // match the degree-d homogeneous parts exactly
            let mut monomials: BTreeMap<Monomial, usize> = BTreeMap::new();
            let tops: Vec<LaurentPoly> =
                block.iter().map(|(_, u)| u.homogeneous_part(d)).collect();
            for p in tops.iter().chain(std::iter::once(&top)) {
                for (m, _) in p.terms() {
                    let next = monomials.len();
                    monomials.entry(m.clone()).or_insert(next);
                }
            }
            let mut mat = QMatrix::zeros(monomials.len(), block.len());
            for (j, t) in tops.iter().enumerate() {
                for (m, c) in t.terms() {
                    mat.set(monomials[m], j, c.clone());
                }
            }
            let mut rhs = vec![Rational::zero(); monomials.len()];
            for (m, c) in top.terms() {
                rhs[monomials[m]] = c.clone();
            }
            let x = solve(&mat, &rhs).ok_or_else(|| {
                Error::InvalidInput(format!("degree-{d} block of the basis does not span"))
            })?;
            for (j, (alpha, u)) in block.iter().enumerate() {
                if x[j].is_zero() {
                    continue;
                }
                rem = &rem - &u.as_laurent().scale(&x[j]);
                coeffs.insert(alpha.clone(), x[j].clone());
            }
        }
        if !rem.is_zero() {
            return Err(Error::InvalidInput(format!(
                "expansion left a nonzero remainder {rem}"
            )));
        }
        Ok(coeffs)
    }

    /// The coefficient of u_0 in the expansion of f.
    pub fn constant_coefficient(&self, f: &Poly) -> Result<Rational> {
        let zero_idx = vec![0u64; self.nvars()];
        Ok(self
            .expand(f)?
            .remove(&zero_idx)
            .unwrap_or_else(Rational::zero))
    }

    /// The membership predicate "the u_0 coefficient of f vanishes".
    pub fn constant_term_zero(&self, f: &Poly) -> Result<bool> {
        Ok(self.constant_coefficient(f)?.is_zero())
    }

    /// Golden-file form: one `(alpha): polynomial` line per entry.
    pub fn to_golden(&self) -> String {
        let mut out = String::new();
        for (alpha, u) in &self.entries {
            let key: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
            out.push_str(&format!("({}): {}\n", key.join(","), u));
        }
        out
    }
}

/// Exact Gram-Schmidt over the monomials in graded-lex order, using the
/// normalized weight moments as the inner product. Output is monic in the
/// leading monomial (unit norms would need irrational square roots).
pub fn gram_schmidt_basis(family: &Family, degree: u64) -> Result<OrthoBasis> {
    let n = family.nvars();
    family.kind()?.check_domain()?;
    let mut entries: Vec<(Vec<u64>, Poly)> = Vec::new();
    let mut norms: Vec<Rational> = Vec::new();
    for alpha in multi_indices(n, degree) {
        let mono = Poly::try_from_laurent(LaurentPoly::monomial(
            n,
            Monomial(alpha.iter().map(|&e| e as i64).collect()),
            Rational::one(),
        ))
        .expect("monomials are polynomials");
        let mut u = mono.clone();
        for ((_, prev), norm) in entries.iter().zip(&norms) {
            let proj = weighted_inner(family, &mono, prev)?;
            if proj.is_zero() {
                continue;
            }
            let scaled = prev.as_laurent().scale(&(&proj / norm));
            u = Poly::try_from_laurent(&u.as_laurent().clone() - &scaled)?;
        }
        let norm = weighted_inner(family, &u, &u)?;
        if norm.is_zero() {
            return Err(Error::InvalidInput(
                "degenerate inner product: zero norm during orthogonalization".into(),
            ));
        }
        norms.push(norm);
        entries.push((alpha, u));
    }
    Ok(OrthoBasis { family: family.clone(), method: BasisMethod::GramSchmidt, degree, entries })
}

/// The operator-power basis: u_alpha = c_alpha Lambda^alpha(g^alpha) with
/// the family's classical constants, batched over |alpha| <= degree.
pub fn rodrigues_basis(family: &Family, degree: u64) -> Result<OrthoBasis> {
    let sys = build_family(family, false)?;
    let mut entries = Vec::new();
    for alpha in multi_indices(sys.nvars(), degree) {
        let u = sys.rodrigues_classical(&alpha)?;
        entries.push((alpha, u));
    }
    Ok(OrthoBasis { family: family.clone(), method: BasisMethod::Rodrigues, degree, entries })
}

/// The exact nonzero scalars relating two bases of the same family:
/// other = scalar * self entrywise. Errors when an entry pair is not
/// proportional.
pub fn proportionality_scalars(a: &OrthoBasis, b: &OrthoBasis) -> Result<Vec<(Vec<u64>, Rational)>> {
    let mut out = Vec::new();
    for (alpha, ua) in a.entries() {
        let ub = b
            .get(alpha)
            .ok_or_else(|| Error::InvalidInput(format!("missing index {alpha:?}")))?;
        let (m, ca) = ua
            .leading()
            .ok_or_else(|| Error::InvalidInput("zero basis element".into()))?;
        let cb = ub.coeff(m);
        if cb.is_zero() {
            return Err(Error::InvalidInput(format!(
                "bases not proportional at {alpha:?}: leading monomial missing"
            )));
        }
        let scalar = &cb / ca;
        if &ua.as_laurent().scale(&scalar) != ub.as_laurent() {
            return Err(Error::InvalidInput(format!("bases not proportional at {alpha:?}")));
        }
        out.push((alpha.clone(), scalar));
    }
    Ok(out)
}
