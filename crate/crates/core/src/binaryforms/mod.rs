//! Binary forms in binomially normalized coordinates: catalecticants, border
//! rank, secant-variety position and Waring decompositions.

mod sylvester;
pub(crate) mod univariate;

pub use sylvester::{sylvester_decompose, ApproxTerm, Exactness, WaringDecomposition, WaringTerm, WaringTerms};

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactmath::{binomial, Matrix, Rational};
use crate::polyring::{vars, Form, FormError, Monomial, Vars};

use univariate::QPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BinaryError {
    #[error("the zero form has no such invariant")]
    ZeroForm,
    #[error("catalecticant index {k} out of range for degree {t}")]
    DegreeOutOfRange { k: usize, t: usize },
    #[error("degree {t} too small to separate border rank {rank} cases")]
    DegreeTooSmall { t: usize, rank: usize },
    #[error("expected a form in 2 variables, got {0}")]
    NotBinary(usize),
    #[error("expected a linear form, got degree {0}")]
    NotLinear(usize),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
}

/// `h(u,v) = Σ C(t,i) h_i u^{t-i} v^i`, stored as `h_0..h_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// From normalized coordinates `h_0..h_t`. Panics on an empty slice.
    pub fn from_normalized(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    /// From plain coefficients of `u^{t-i} v^i`.
    pub fn from_plain(plain: &[Rational]) -> Self {
        let t = plain.len() as u64 - 1;
        BinaryForm::from_normalized(
            plain
                .iter()
                .enumerate()
                .map(|(i, c)| c / Rational::from_integer(binomial(t, i as u64)))
                .collect(),
        )
    }

    pub fn zero(t: usize) -> Self {
        BinaryForm::from_normalized(vec![Rational::zero(); t + 1])
    }

    /// `(a u + b v)^t`.
    pub fn power_of_linear(a: &Rational, b: &Rational, t: usize) -> Self {
        BinaryForm::from_normalized(
            (0..=t)
                .map(|i| num_traits::pow(a.clone(), t - i) * num_traits::pow(b.clone(), i))
                .collect(),
        )
    }

    pub fn from_form(f: &Form) -> Result<Self, BinaryError> {
        if f.nvars() != 2 {
            return Err(BinaryError::NotBinary(f.nvars()));
        }
        let t = f.degree();
        let plain: Vec<Rational> =
            (0..=t).map(|i| f.coeff(&Monomial::new(vec![t - i, i]))).collect();
        Ok(BinaryForm::from_plain(&plain))
    }

    pub fn parse(text: &str, bvars: Vars) -> Result<Self, BinaryError> {
        BinaryForm::from_form(&Form::parse(text, bvars)?)
    }

    pub fn to_form(&self, bvars: Vars) -> Form {
        let t = self.degree() as u32;
        let monos: Vec<Monomial> = (0..=t).map(|i| Monomial::new(vec![t - i, i])).collect();
        Form::from_coefficients(bvars, t, &monos, &self.plain())
    }

    /// As a form in `u, v`.
    pub fn to_uv(&self) -> Form {
        self.to_form(vars(&["u", "v"]))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn normalized(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn plain(&self) -> Vec<Rational> {
        let t = self.degree() as u64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer(binomial(t, i as u64)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        BinaryForm::from_normalized(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> BinaryForm {
        BinaryForm::from_normalized(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_uv())
    }
}

/// Hankel matrix `(h_{i+j})` of size `(t-k+1) × (k+1)`.
pub fn cat_matrix(h: &BinaryForm, k: usize) -> Result<Matrix, BinaryError> {
    let t = h.degree();
    if k > t {
        return Err(BinaryError::DegreeOutOfRange { k, t });
    }
    Ok(Matrix::from_fn(t - k + 1, k + 1, |i, j| h.coeffs[i + j].clone()))
}

/// Rank of the middle catalecticant.
pub fn border_rank(h: &BinaryForm) -> Result<usize, BinaryError> {
    if h.is_zero() {
        return Err(BinaryError::ZeroForm);
    }
    Ok(cat_matrix(h, h.degree() / 2)?.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SecantPosition {
    PurePower,
    RankTwo,
    Tangent,
    RankThree,
    JoinTangent,
    Beyond,
}

impl fmt::Display for SecantPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SecantPosition::PurePower => "pure-power",
            SecantPosition::RankTwo => "rank-two",
            SecantPosition::Tangent => "tangent",
            SecantPosition::RankThree => "rank-three",
            SecantPosition::JoinTangent => "join-tangent",
            SecantPosition::Beyond => "beyond",
        };
        f.write_str(s)
    }
}

/// The kernel generator of `Cat_r(h)` when that kernel is a line, as
/// coefficients of `U^{r-j} V^j`.
pub fn apolar_generator(h: &BinaryForm, r: usize) -> Result<Option<Vec<Rational>>, BinaryError> {
    let ker = cat_matrix(h, r)?.kernel_basis();
    Ok((ker.len() == 1).then(|| ker.into_iter().next().expect("one vector")))
}

/// Whether `Σ g_j U^{k-j} V^j` has no repeated linear factor.
pub fn is_squarefree_binary(g: &[Rational]) -> bool {
    let k = g.len() - 1;
    // multiplicity of V is the index of the first nonzero coefficient
    let lead = g.iter().position(|c| !c.is_zero());
    match lead {
        None => false,
        Some(j0) if j0 > 1 => false,
        Some(j0) => {
            let p = QPoly::new((0..=k - j0).map(|e| g[k - e].clone()).collect());
            p.is_squarefree()
        }
    }
}

/// Position of `h` with respect to the secant varieties of the rational
/// normal curve, up to border rank three.
pub fn classify_secant_position(h: &BinaryForm) -> Result<SecantPosition, BinaryError> {
    let r = border_rank(h)?;
    let t = h.degree();
    if r == 1 {
        return Ok(SecantPosition::PurePower);
    }
    if r > 3 {
        return Ok(SecantPosition::Beyond);
    }
    if 2 * r > t + 1 {
        return Err(BinaryError::DegreeTooSmall { t, rank: r });
    }
    let g = apolar_generator(h, r)?
        .ok_or_else(|| BinaryError::DecompositionFailed(format!("kernel of Cat_{r} is not a line")))?;
    let sf = is_squarefree_binary(&g);
    Ok(match (r, sf) {
        (2, true) => SecantPosition::RankTwo,
        (2, false) => SecantPosition::Tangent,
        (_, true) => SecantPosition::RankThree,
        (_, false) => SecantPosition::JoinTangent,
    })
}

/// `a u + b v  ↦  b u − a v`. Applying it twice negates the input.
pub fn apolar_dual(l: &BinaryForm) -> Result<BinaryForm, BinaryError> {
    if l.degree() != 1 {
        return Err(BinaryError::NotLinear(l.degree()));
    }
    if l.is_zero() {
        return Err(BinaryError::ZeroForm);
    }
    let (a, b) = (&l.coeffs[0], &l.coeffs[1]);
    Ok(BinaryForm::from_normalized(vec![b.clone(), -a]))
}
