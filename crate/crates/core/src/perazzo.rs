//! Perazzo 3-folds `x0 p0 + x1 p1 + x2 p2 + g` with `p_i, g` binary forms in
//! `u, v`: catalecticant blocks, the Hilbert vector they determine, and the
//! extremal families.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::artinian::{contraction_matrix, HilbertVector};
use crate::binaryforms::{cat_matrix, BinaryError, BinaryForm};
use crate::exactmath::{rat, Matrix, Rational};
use crate::polyring::{vars, Form, FormError, Monomial, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerazzoError {
    #[error("not of the form x0*p0 + x1*p1 + x2*p2 + g: {0}")]
    NotPerazzoShape(String),
    #[error("p0, p1, p2 are linearly dependent")]
    LinearlyDependent,
    #[error("degree mismatch: p_i need degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("degree {0} is too small")]
    DegreeTooSmall(usize),
    #[error("block index {k} out of range for degree {d}")]
    DegreeOutOfRange { k: usize, d: usize },
    #[error("the form is a cone")]
    IsCone,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Binary(#[from] BinaryError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// The variables `x0, x1, x2, u, v`.
pub fn perazzo_vars() -> Vars {
    vars(&["x0", "x1", "x2", "u", "v"])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerazzoForm {
    d: usize,
    p: [BinaryForm; 3],
    g: BinaryForm,
    assembled: Form,
}

impl PerazzoForm {
    /// Validates degrees and linear independence of the `p_i` and assembles
    /// the form over `x0, x1, x2, u, v`.
    pub fn new(p0: BinaryForm, p1: BinaryForm, p2: BinaryForm, g: BinaryForm) -> Result<Self, PerazzoError> {
        Self::with_vars(p0, p1, p2, g, perazzo_vars())
    }

    pub fn with_vars(
        p0: BinaryForm,
        p1: BinaryForm,
        p2: BinaryForm,
        g: BinaryForm,
        vars: Vars,
    ) -> Result<Self, PerazzoError> {
        if vars.len() != 5 {
            return Err(PerazzoError::NotPerazzoShape(format!("{} variables", vars.len())));
        }
        let d = g.degree();
        if d < 3 {
            return Err(PerazzoError::DegreeTooSmall(d));
        }
        for p in [&p0, &p1, &p2] {
            if p.degree() + 1 != d {
                return Err(PerazzoError::DegreeMismatch { expected: d - 1, got: p.degree() });
            }
        }
        let coeffs = Matrix::from_rows(vec![p0.plain(), p1.plain(), p2.plain()]).expect("equal lengths");
        if coeffs.rank() < 3 {
            return Err(PerazzoError::LinearlyDependent);
        }
        let d32 = d as u32;
        let mut terms = Vec::new();
        for (i, p) in [&p0, &p1, &p2].into_iter().enumerate() {
            for (j, c) in p.plain().into_iter().enumerate() {
                let mut e = vec![0u32; 5];
                e[i] = 1;
                e[3] = d32 - 1 - j as u32;
                e[4] = j as u32;
                terms.push((Monomial::new(e), c));
            }
        }
        for (j, c) in g.plain().into_iter().enumerate() {
            terms.push((Monomial::new(vec![0, 0, 0, d32 - j as u32, j as u32]), c));
        }
        let (monos, cs): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
        let assembled = Form::from_coefficients(vars, d32, &monos, &cs);
        Ok(PerazzoForm { d, p: [p0, p1, p2], g, assembled })
    }

    /// Recognizes a form in 5 variables that is linear in the first three and
    /// splits it into `p0, p1, p2, g`.
    pub fn from_form(f: &Form) -> Result<Self, PerazzoError> {
        if f.nvars() != 5 {
            return Err(PerazzoError::NotPerazzoShape(format!("{} variables", f.nvars())));
        }
        let d = f.degree() as usize;
        if d < 3 {
            return Err(PerazzoError::DegreeTooSmall(d));
        }
        let mut plain: [Vec<Rational>; 3] = std::array::from_fn(|_| vec![Rational::zero(); d]);
        let mut g = vec![Rational::zero(); d + 1];
        for (m, c) in f.terms() {
            let e = m.exponents();
            match e[0] + e[1] + e[2] {
                0 => g[e[4] as usize] = c.clone(),
                1 => {
                    let i = (0..3).find(|&i| e[i] == 1).expect("one x variable");
                    plain[i][e[4] as usize] = c.clone();
                }
                _ => {
                    return Err(PerazzoError::NotPerazzoShape(format!(
                        "term {} has degree > 1 in the first three variables",
                        m.render(f.vars())
                    )))
                }
            }
        }
        let [a, b, c] = plain.map(|p| BinaryForm::from_plain(&p));
        Self::with_vars(a, b, c, BinaryForm::from_plain(&g), f.vars().clone())
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn p(&self, i: usize) -> &BinaryForm {
        &self.p[i]
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn form(&self) -> &Form {
        &self.assembled
    }
}

impl fmt::Display for PerazzoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.assembled)
    }
}

/// Catalecticant blocks of a Perazzo form at index `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrices {
    pub k: usize,
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub g: Matrix,
    /// `(A_{k-1} | B_{k-1} | C_{k-1})`
    pub m: Matrix,
    /// `A_k` over `B_k` over `C_k`
    pub n: Matrix,
    /// `N_k` over `G_k`
    pub n_prime: Matrix,
}

pub fn block_matrices(f: &PerazzoForm, k: usize) -> Result<BlockMatrices, PerazzoError> {
    let d = f.d;
    if k == 0 || k >= d {
        return Err(PerazzoError::DegreeOutOfRange { k, d });
    }
    let [a, b, c] = [0, 1, 2].map(|i| cat_matrix(&f.p[i], k));
    let (a, b, c) = (a?, b?, c?);
    let g = cat_matrix(&f.g, k)?;
    let [a1, b1, c1] = [0, 1, 2].map(|i| cat_matrix(&f.p[i], k - 1));
    let (a1, b1, c1) = (a1?, b1?, c1?);
    let m = a1.hstack(&b1).and_then(|x| x.hstack(&c1)).expect("same row count");
    let n = a.vstack(&b).and_then(|x| x.vstack(&c)).expect("same column count");
    let n_prime = n.vstack(&g).expect("same column count");
    Ok(BlockMatrices { k, a, b, c, g, m, n, n_prime })
}

/// Whether the partial derivatives of `f` are linearly dependent.
pub fn is_cone(f: &Form) -> bool {
    cone_relation(f).is_some()
}

/// Coefficients `c` with `Σ c_i ∂f/∂x_i = 0`, if any. A linear change of
/// coordinates along this relation eliminates one variable.
pub fn cone_relation(f: &Form) -> Option<Vec<Rational>> {
    if f.degree() == 0 {
        return Some(vec![rat(1); f.nvars()]);
    }
    contraction_matrix(f, 1).ok()?.kernel_basis().into_iter().next()
}

/// Ranks of the blocks at index `k`.
///
/// `combined` is the rank of `[[N_k, 0], [G_k, M_k]]`, the contraction map on
/// `(U,V)^k ⊕ (y)(U,V)^{k-1}`, and equals `h_k`. It agrees with
/// `m + n_prime` unless some `G_k` image of `ker N_k` lies in the column space
/// of `M_k`, which needs `g ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRanks {
    pub k: usize,
    pub m: usize,
    pub n_prime: usize,
    pub combined: usize,
}

impl BlockRanks {
    pub fn rank_sum(&self) -> usize {
        self.m + self.n_prime
    }
}

pub fn block_ranks_at(f: &PerazzoForm, k: usize) -> Result<BlockRanks, PerazzoError> {
    let b = block_matrices(f, k)?;
    let top = b.n.hstack(&Matrix::zeros(b.n.rows(), b.m.cols())).expect("same row count");
    let bottom = b.g.hstack(&b.m).expect("same row count");
    let combined = top.vstack(&bottom).expect("same column count").rank();
    Ok(BlockRanks { k, m: b.m.rank(), n_prime: b.n_prime.rank(), combined })
}

/// [`BlockRanks`] for `2 ≤ k ≤ d-2`.
pub fn block_ranks(f: &PerazzoForm) -> Result<Vec<BlockRanks>, PerazzoError> {
    (2..=f.d.saturating_sub(2)).map(|k| block_ranks_at(f, k)).collect()
}

/// Hilbert vector from the catalecticant blocks.
pub fn perazzo_hilbert(f: &PerazzoForm) -> Result<HilbertVector, PerazzoError> {
    if is_cone(&f.assembled) {
        return Err(PerazzoError::IsCone);
    }
    let d = f.d;
    let mut h = vec![0; d + 1];
    h[0] = 1;
    h[d] = 1;
    h[1] = 5;
    h[d - 1] = 5;
    for r in block_ranks(f)? {
        h[r.k] = r.combined;
    }
    Ok(HilbertVector::new(h))
}

/// `rank M_k + rank N'_k` in place of `h_k`. This overcounts when an
/// annihilator mixes the two parts, e.g. `U^3 + 2 y0 V^2` for
/// `x0 uv^4 + x1 v^5 + x2 u^2v^3 - u^4v^2`.
pub fn rank_sum_hilbert(f: &PerazzoForm) -> Result<HilbertVector, PerazzoError> {
    let mut h = perazzo_hilbert(f)?.values().to_vec();
    for r in block_ranks(f)? {
        h[r.k] = r.rank_sum();
    }
    Ok(HilbertVector::new(h))
}

/// Largest possible Hilbert vector in degree `d`: `min(4k+1, d+2)` up to the
/// middle, then symmetric.
pub fn maximal_hvector(d: usize) -> HilbertVector {
    HilbertVector::new(
        (0..=d)
            .map(|k| {
                let k = k.min(d - k);
                if k == 0 {
                    1
                } else {
                    (4 * k + 1).min(d + 2)
                }
            })
            .collect(),
    )
}

/// Smallest possible Hilbert vector in degree `d`: `(1,5,6,…,6,5,1)`.
pub fn minimal_hvector(d: usize) -> HilbertVector {
    HilbertVector::new(
        (0..=d)
            .map(|k| match k.min(d - k) {
                0 => 1,
                1 => 5,
                _ => 6,
            })
            .collect(),
    )
}

/// Example with maximal Hilbert vector: `d = 3r + ε`, the `p_i` have
/// normalized coefficients `1/(1+i)` on the index ranges `0..=r`,
/// `r..=2r-1+ε`, `2r-1+ε..=d-1`, and `g = 0`.
pub fn maximal_example(d: usize) -> Result<PerazzoForm, PerazzoError> {
    if d < 4 {
        return Err(PerazzoError::DegreeTooSmall(d));
    }
    let (r, eps) = (d / 3, d % 3);
    let ranges = [(0, r), (r, 2 * r - 1 + eps), (2 * r - 1 + eps, d - 1)];
    let [p0, p1, p2] = ranges.map(|(lo, hi)| {
        BinaryForm::from_normalized(
            (0..d).map(|i| if (lo..=hi).contains(&i) { Rational::new(1.into(), (1 + i).into()) } else { Rational::zero() }).collect(),
        )
    });
    PerazzoForm::new(p0, p1, p2, BinaryForm::zero(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinimalFamily {
    /// Osculating plane: `u^{d-1}, u^{d-2}v, u^{d-3}v^2`.
    I,
    /// Tangent line plus a point: `u^{d-1}, u^{d-2}v, v^{d-1}`.
    II,
    /// Three points: `u^{d-1}, (λu+μv)^{d-1}, v^{d-1}`.
    III,
}

impl std::str::FromStr for MinimalFamily {
    type Err = PerazzoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(MinimalFamily::I),
            "ii" | "2" => Ok(MinimalFamily::II),
            "iii" | "3" => Ok(MinimalFamily::III),
            other => Err(PerazzoError::InvalidParams(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalParams {
    pub lambda: Rational,
    pub mu: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Default for MinimalParams {
    fn default() -> Self {
        MinimalParams { lambda: rat(1), mu: rat(1), a: rat(0), b: rat(0), c: rat(0) }
    }
}

fn monomial_form(t: usize, j: usize, c: &Rational) -> BinaryForm {
    let mut plain = vec![Rational::zero(); t + 1];
    plain[j] = c.clone();
    BinaryForm::from_plain(&plain)
}

/// Members of the three families with minimal Hilbert vector.
pub fn minimal_family(family: MinimalFamily, d: usize, params: &MinimalParams) -> Result<PerazzoForm, PerazzoError> {
    if d < 4 {
        return Err(PerazzoError::DegreeTooSmall(d));
    }
    let one = rat(1);
    let MinimalParams { lambda, mu, a, b, c } = params;
    let (p, g) = match family {
        MinimalFamily::I => (
            [monomial_form(d - 1, 0, &one), monomial_form(d - 1, 1, &one), monomial_form(d - 1, 2, &one)],
            monomial_form(d, 0, a).add(&monomial_form(d, 1, b)).add(&monomial_form(d, 2, c)),
        ),
        MinimalFamily::II => (
            [monomial_form(d - 1, 0, &one), monomial_form(d - 1, 1, &one), monomial_form(d - 1, d - 1, &one)],
            monomial_form(d, 0, a).add(&monomial_form(d, 1, b)).add(&monomial_form(d, d, c)),
        ),
        MinimalFamily::III => {
            if lambda.is_zero() || mu.is_zero() {
                return Err(PerazzoError::InvalidParams("family III needs nonzero lambda and mu".into()));
            }
            (
                [
                    monomial_form(d - 1, 0, &one),
                    BinaryForm::power_of_linear(lambda, mu, d - 1),
                    monomial_form(d - 1, d - 1, &one),
                ],
                monomial_form(d, 0, a)
                    .add(&BinaryForm::power_of_linear(lambda, mu, d).scale(b))
                    .add(&monomial_form(d, d, c)),
            )
        }
    };
    let [p0, p1, p2] = p;
    PerazzoForm::new(p0, p1, p2, g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extremal {
    Minimal,
    Maximal,
    Intermediate(HilbertVector),
}

impl fmt::Display for Extremal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extremal::Minimal => f.write_str("minimal"),
            Extremal::Maximal => f.write_str("maximal"),
            Extremal::Intermediate(h) => write!(f, "intermediate {h}"),
        }
    }
}

/// Compares the Hilbert vector with the extremal ones. In degrees 3 and 4
/// the two coincide and the answer is `Maximal`.
pub fn classify_extremal(f: &PerazzoForm) -> Result<Extremal, PerazzoError> {
    let h = perazzo_hilbert(f)?;
    Ok(if h == maximal_hvector(f.d) {
        Extremal::Maximal
    } else if h == minimal_hvector(f.d) {
        Extremal::Minimal
    } else {
        Extremal::Intermediate(h)
    })
}
