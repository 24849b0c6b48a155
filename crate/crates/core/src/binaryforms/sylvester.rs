//! Sylvester's algorithm: find a square-free apolar form of least degree and
//! read off the linear forms from its roots.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::univariate::{aberth, gaussian_roots, QPoly};
use super::{border_rank, cat_matrix, is_squarefree_binary, BinaryError, BinaryForm};
use crate::exactmath::{binomial, rat, solve_gaussian, GaussianRational, Rational};

/// Coefficients below this are treated as numerically zero when checking a
/// floating-point decomposition.
pub const NUMERIC_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    ExactQ,
    ExactQi,
    NumericApprox,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::ExactQ => "exact-q",
            Exactness::ExactQi => "exact-qi",
            Exactness::NumericApprox => "numeric",
        })
    }
}

/// `coefficient · (linear[0] u + linear[1] v)^t`, with the first nonzero
/// coordinate of `linear` equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaringTerm {
    pub coefficient: GaussianRational,
    pub linear: [GaussianRational; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxTerm {
    pub coefficient: Complex64,
    pub linear: [Complex64; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub enum WaringTerms {
    Exact(Vec<WaringTerm>),
    Numeric { terms: Vec<ApproxTerm>, residual: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct WaringDecomposition {
    pub degree: usize,
    /// Degree of the apolar form whose roots gave the terms.
    pub apolar_degree: usize,
    pub terms: WaringTerms,
}

impl WaringDecomposition {
    pub fn len(&self) -> usize {
        match &self.terms {
            WaringTerms::Exact(t) => t.len(),
            WaringTerms::Numeric { terms, .. } => terms.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn exactness(&self) -> Exactness {
        match &self.terms {
            WaringTerms::Exact(t)
                if t.iter().all(|w| w.coefficient.is_real() && w.linear.iter().all(GaussianRational::is_real)) =>
            {
                Exactness::ExactQ
            }
            WaringTerms::Exact(_) => Exactness::ExactQi,
            WaringTerms::Numeric { .. } => Exactness::NumericApprox,
        }
    }

    /// Plain coefficients of `u^{t-i} v^i` in `Σ λ_j ℓ_j^t`, for exact
    /// decompositions.
    pub fn expand_exact(&self) -> Option<Vec<GaussianRational>> {
        let WaringTerms::Exact(terms) = &self.terms else { return None };
        let t = self.degree;
        Some(
            (0..=t)
                .map(|i| {
                    let b = GaussianRational::real(Rational::from_integer(binomial(t as u64, i as u64)));
                    let s = terms.iter().fold(GaussianRational::zero(), |acc, w| {
                        &acc + &(&w.coefficient * &normalized_power(&w.linear, t, i))
                    });
                    &s * &b
                })
                .collect(),
        )
    }
}

impl fmt::Display for WaringDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.degree;
        let parts: Vec<String> = match &self.terms {
            WaringTerms::Exact(ts) => ts
                .iter()
                .map(|w| format!("({})*(({})*u + ({})*v)^{t}", w.coefficient, w.linear[0], w.linear[1]))
                .collect(),
            WaringTerms::Numeric { terms, .. } => terms
                .iter()
                .map(|w| format!("({:.6})*(({:.6})*u + ({:.6})*v)^{t}", w.coefficient, w.linear[0], w.linear[1]))
                .collect(),
        };
        write!(f, "{}", parts.join(" + "))
    }
}

fn normalized_power(l: &[GaussianRational; 2], t: usize, i: usize) -> GaussianRational {
    &l[0].pow((t - i) as u32) * &l[1].pow(i as u32)
}

/// Candidate apolar forms: the kernel basis, then small combinations of pairs.
fn candidates(basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = basis.to_vec();
    let combine = |a: &[Rational], b: &[Rational], x: i64, y: i64| -> Vec<Rational> {
        a.iter().zip(b).map(|(p, q)| p * rat(x) + q * rat(y)).collect()
    };
    for (x, y) in [(1, 1), (1, -1), (1, 2), (2, 1)] {
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                out.push(combine(&basis[i], &basis[j], x, y));
            }
        }
    }
    out
}

/// Points `[1, 1/z]`, `[0, 1]` for `z = 0`, and `[1, 0]` for a factor `V`.
fn linear_forms_exact(g: &[Rational]) -> Option<Vec<[GaussianRational; 2]>> {
    let k = g.len() - 1;
    let j0 = g.iter().position(|c| !c.is_zero())?;
    let mut out = Vec::new();
    if j0 == 1 {
        out.push([GaussianRational::one(), GaussianRational::zero()]);
    }
    let p = QPoly::new((0..=k - j0).map(|e| g[k - e].clone()).collect());
    for z in gaussian_roots(&p)? {
        out.push(match z.inv() {
            Some(zi) => [GaussianRational::one(), zi],
            None => [GaussianRational::zero(), GaussianRational::one()],
        });
    }
    Some(out)
}

fn linear_forms_numeric(g: &[Rational]) -> Option<Vec<[Complex64; 2]>> {
    let k = g.len() - 1;
    let j0 = g.iter().position(|c| !c.is_zero())?;
    let mut out = Vec::new();
    if j0 == 1 {
        out.push([Complex64::one(), Complex64::zero()]);
    }
    let p = QPoly::new((0..=k - j0).map(|e| g[k - e].clone()).collect());
    for z in aberth(&p.to_complex())? {
        out.push(if z.norm() < 1e-300 {
            [Complex64::zero(), Complex64::one()]
        } else {
            [Complex64::one(), z.inv()]
        });
    }
    Some(out)
}

fn exact_terms(h: &BinaryForm, ls: Vec<[GaussianRational; 2]>) -> Option<Vec<WaringTerm>> {
    let t = h.degree();
    let a: Vec<Vec<GaussianRational>> =
        (0..=t).map(|i| ls.iter().map(|l| normalized_power(l, t, i)).collect()).collect();
    let b: Vec<GaussianRational> = h.normalized().iter().cloned().map(GaussianRational::real).collect();
    let lambda = solve_gaussian(&a, &b)?;
    Some(
        lambda
            .into_iter()
            .zip(ls)
            .filter(|(c, _)| !c.is_zero())
            .map(|(coefficient, linear)| WaringTerm { coefficient, linear })
            .collect(),
    )
}

/// Complex least squares via SVD; the residual is measured on plain
/// coefficients.
fn numeric_terms(h: &BinaryForm, ls: Vec<[Complex64; 2]>) -> (Vec<ApproxTerm>, f64) {
    let t = h.degree();
    let n = ls.len();
    let a = DMatrix::from_fn(t + 1, n, |i, j| ls[j][0].powu((t - i) as u32) * ls[j][1].powu(i as u32));
    let b = DVector::from_iterator(t + 1, h.normalized().iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)));
    let lambda = a
        .clone()
        .svd(true, true)
        .solve(&b, f64::EPSILON)
        .unwrap_or_else(|_| DVector::from_element(n, Complex64::new(f64::NAN, 0.0)));
    let fitted = &a * &lambda;
    let residual = (0..=t)
        .map(|i| {
            let scale = binomial(t as u64, i as u64).to_f64().unwrap_or(f64::INFINITY);
            ((fitted[i] - b[i]) * scale).norm()
        })
        .fold(0.0, f64::max);
    let terms = lambda.iter().zip(ls).map(|(&coefficient, linear)| ApproxTerm { coefficient, linear }).collect();
    (terms, residual)
}

/// Waring decomposition of a binary form by Sylvester's algorithm.
///
/// Starting at the border rank, each degree's apolar kernel is searched for a
/// square-free element. One whose roots lie in `Q(i)` gives an exact result;
/// otherwise the square-free elements are factored numerically and the best
/// least-squares fit is kept if it meets the residual tolerance.
pub fn sylvester_decompose(h: &BinaryForm) -> Result<WaringDecomposition, BinaryError> {
    let r = border_rank(h)?;
    let t = h.degree();
    let tolerance = NUMERIC_TOLERANCE * (1.0 + h.plain().iter().map(|c| c.to_f64().unwrap_or(0.0).abs()).fold(0.0, f64::max));
    let mut best = f64::INFINITY;
    for k in r..=t {
        let basis = cat_matrix(h, k)?.kernel_basis();
        let squarefree: Vec<Vec<Rational>> =
            candidates(&basis).into_iter().filter(|g| is_squarefree_binary(g)).collect();
        for g in &squarefree {
            if let Some(terms) = linear_forms_exact(g).and_then(|ls| exact_terms(h, ls)) {
                return Ok(WaringDecomposition { degree: t, apolar_degree: k, terms: WaringTerms::Exact(terms) });
            }
        }
        // the numeric fit depends on the root spread, so every candidate is
        // scored and the best one kept
        let fitted = squarefree
            .iter()
            .filter_map(|g| linear_forms_numeric(g))
            .map(|ls| numeric_terms(h, ls))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((terms, residual)) = fitted {
            if residual <= tolerance {
                return Ok(WaringDecomposition { degree: t, apolar_degree: k, terms: WaringTerms::Numeric { terms, residual } });
            }
            best = best.min(residual);
        }
    }
    if best.is_finite() {
        return Err(BinaryError::DecompositionFailed(format!("numeric residual {best:e}")));
    }
    Err(BinaryError::DecompositionFailed("no square-free apolar form found".into()))
}
