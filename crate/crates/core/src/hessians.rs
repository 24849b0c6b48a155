//! Classical and higher Hessians, exact nonzero certificates and vanishing
//! verdicts for determinants of polynomial matrices.

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::artinian::{basis_of_ak, ArtinianError, GradedAlgebraView};
use crate::exactmath::{rat, Matrix, Rational};
use crate::polyring::{Form, Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HessianError {
    #[error("Hessian needs degree at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("Hessian order {k} exceeds floor({d}/2)")]
    DegreeOutOfRange { k: u32, d: u32 },
    #[error("matrix is not square")]
    NotSquare,
    #[error(transparent)]
    Artinian(#[from] ArtinianError),
}

/// `k`-th Hessian of `f` with respect to a basis `{α_i}` of `A_k`:
/// `entries[i][j] = (α_i α_j)·f`, forms of degree `d - 2k`.
#[derive(Clone, Debug)]
pub struct HessianSpec {
    pub f: Form,
    pub k: u32,
    pub basis: Vec<Monomial>,
    pub entries: Vec<Vec<Form>>,
}

impl HessianSpec {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VanishingStatus {
    NonzeroCertified,
    ZeroProbabilistic,
    ZeroSymbolic,
}

impl VanishingStatus {
    pub fn is_zero(self) -> bool {
        !matches!(self, VanishingStatus::NonzeroCertified)
    }
}

impl std::fmt::Display for VanishingStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VanishingStatus::NonzeroCertified => "nonzero-certified",
            VanishingStatus::ZeroProbabilistic => "zero-probabilistic",
            VanishingStatus::ZeroSymbolic => "zero-symbolic",
        })
    }
}

/// Verdict on whether `det(entries)` is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingVerdict {
    pub status: VanishingStatus,
    /// For a nonzero verdict: a point where the determinant is nonzero.
    pub witness: Option<Vec<Rational>>,
    /// Determinant value at the witness.
    pub value: Option<Rational>,
    /// Symbolic determinant, when it was expanded.
    pub determinant: Option<Poly>,
    /// Lines tried (probabilistic path) or points evaluated.
    pub trials: usize,
}

/// Knobs for [`vanishing_verdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VanishingConfig {
    /// Largest size expanded symbolically.
    pub symbolic_max: usize,
    /// Random lines for larger matrices.
    pub lines: usize,
    /// Random coordinates are drawn from `[-coord_bound, coord_bound]`.
    pub coord_bound: i64,
}

impl Default for VanishingConfig {
    fn default() -> Self {
        VanishingConfig { symbolic_max: 6, lines: 3, coord_bound: 9 }
    }
}

/// `(∂²f/∂x_i∂x_j)`.
pub fn hessian_matrix(f: &Form) -> Result<Vec<Vec<Form>>, HessianError> {
    if f.degree() < 2 {
        return Err(HessianError::DegreeTooSmall(f.degree()));
    }
    let first = f.partials();
    Ok(first.iter().map(|g| g.partials()).collect())
}

/// `k`-th Hessian on an explicit basis of `A_k`.
pub fn higher_hessian_with_basis(f: &Form, k: u32, basis: Vec<Monomial>) -> Result<HessianSpec, HessianError> {
    let d = f.degree();
    if 2 * k > d {
        return Err(HessianError::DegreeOutOfRange { k, d });
    }
    let vars = f.vars().clone();
    let entries = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let p = f.poly().act_monomial(&a.mul(b), false);
                    Form::with_degree(vars.clone(), d - 2 * k, p).expect("derivative of a form is a form")
                })
                .collect()
        })
        .collect();
    Ok(HessianSpec { f: f.clone(), k, basis, entries })
}

/// `k`-th Hessian on the greedy-lex basis of `A_k`.
pub fn higher_hessian(f: &Form, k: u32) -> Result<HessianSpec, HessianError> {
    if 2 * k > f.degree() {
        return Err(HessianError::DegreeOutOfRange { k, d: f.degree() });
    }
    higher_hessian_with_basis(f, k, basis_of_ak(f, k)?)
}

/// `k`-th Hessian using the bases of an existing view.
pub fn higher_hessian_from_view(view: &GradedAlgebraView, k: u32) -> Result<HessianSpec, HessianError> {
    higher_hessian_with_basis(view.form(), k, view.piece(k).basis.clone())
}

/// Evaluates every entry at `point`.
pub fn evaluate_matrix(entries: &[Vec<Form>], point: &[Rational]) -> Matrix {
    let n = entries.len();
    Matrix::from_fn(n, n, |i, j| entries[i][j].poly().evaluate(point))
}

/// Determinant by Laplace expansion along rows, memoized on column subsets.
/// Intended for small sizes (at most about 8).
pub fn symbolic_determinant(entries: &[Vec<Form>]) -> Result<Poly, HessianError> {
    let n = entries.len();
    if entries.iter().any(|r| r.len() != n) {
        return Err(HessianError::NotSquare);
    }
    let nvars = entries.first().and_then(|r| r.first()).map_or(0, Form::nvars);
    if n == 0 {
        return Ok(Poly::one(nvars));
    }
    // table[mask] = det of the last popcount(mask) rows on columns `mask`.
    let mut table: Vec<Option<Poly>> = vec![None; 1 << n];
    table[0] = Some(Poly::one(nvars));
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = Poly::zero(nvars);
        for (pos, j) in (0..n).filter(|j| mask & (1 << j) != 0).enumerate() {
            let a = entries[row][j].poly();
            if a.is_zero() {
                continue;
            }
            let minor = table[mask & !(1 << j)].as_ref().expect("smaller masks done first");
            if minor.is_zero() {
                continue;
            }
            let term = a.mul(minor);
            acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        table[mask] = Some(acc);
    }
    Ok(table[(1 << n) - 1].take().expect("full mask computed"))
}

fn random_point(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

/// Decides whether `det(entries)` vanishes identically.
///
/// A random point is tried first; a nonzero value is an exact certificate.
/// Up to `symbolic_max` the determinant is then expanded symbolically.
/// Larger matrices are restricted to `lines` random lines `p + t·q`; the
/// determinant along a line has degree at most `D = e·n` (entries of degree
/// `e`), so `D + 1` zero evaluations show the restriction is zero.
pub fn vanishing_verdict(
    entries: &[Vec<Form>],
    rng: &mut impl Rng,
    cfg: &VanishingConfig,
) -> Result<VanishingVerdict, HessianError> {
    let n = entries.len();
    if entries.iter().any(|r| r.len() != n) {
        return Err(HessianError::NotSquare);
    }
    let nvars = entries.first().and_then(|r| r.first()).map_or(0, Form::nvars);
    let nonzero = |point: Vec<Rational>, value: Rational, trials: usize, det: Option<Poly>| VanishingVerdict {
        status: VanishingStatus::NonzeroCertified,
        witness: Some(point),
        value: Some(value),
        determinant: det,
        trials,
    };
    let probe = random_point(rng, nvars, cfg.coord_bound);
    let value = evaluate_matrix(entries, &probe).determinant().expect("square");
    if !value.is_zero() {
        return Ok(nonzero(probe, value, 1, None));
    }
    if n <= cfg.symbolic_max {
        let det = symbolic_determinant(entries)?;
        if det.is_zero() {
            return Ok(VanishingVerdict {
                status: VanishingStatus::ZeroSymbolic,
                witness: None,
                value: None,
                determinant: Some(det),
                trials: 1,
            });
        }
        let mut bound = cfg.coord_bound;
        let mut tries = 1;
        loop {
            let p = random_point(rng, nvars, bound);
            tries += 1;
            let v = det.evaluate(&p);
            if !v.is_zero() {
                return Ok(nonzero(p, v, tries, Some(det)));
            }
            if tries % 32 == 0 {
                bound *= 2;
            }
        }
    }
    let degree = entries
        .iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .map(Form::degree)
        .max()
        .unwrap_or(0) as i64
        * n as i64;
    for line in 0..cfg.lines {
        let p = random_point(rng, nvars, cfg.coord_bound);
        let q = random_point(rng, nvars, cfg.coord_bound);
        for t in 0..=degree {
            let point: Vec<Rational> = p.iter().zip(&q).map(|(a, b)| a + b * rat(t)).collect();
            let v = evaluate_matrix(entries, &point).determinant().expect("square");
            if !v.is_zero() {
                return Ok(nonzero(point, v, line + 1, None));
            }
        }
    }
    Ok(VanishingVerdict {
        status: VanishingStatus::ZeroProbabilistic,
        witness: None,
        value: None,
        determinant: None,
        trials: cfg.lines,
    })
}

/// Largest rank of `Hess(f)` at 5 random integer points. A lower bound for
/// the generic rank, equal to it with overwhelming probability.
pub fn hessian_generic_rank(f: &Form, rng: &mut impl Rng) -> Result<usize, HessianError> {
    let h = hessian_matrix(f)?;
    Ok((0..5)
        .map(|_| evaluate_matrix(&h, &random_point(rng, f.nvars(), 9)).rank())
        .max()
        .unwrap_or(0))
}
