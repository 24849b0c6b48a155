//! The graded pieces of `A = S/Ann_S(f)` computed by linear algebra:
//! annihilator pieces, greedy-lex monomial bases of `A_k`, Hilbert vectors,
//! multiplication maps, and O-/SI-sequence utilities.

mod annihilator;
mod sequences;
mod view;

pub use annihilator::{verify_annihilator_set, AnnihilatorReport, DegreeComparison};
pub use sequences::{is_o_sequence, is_si_sequence, m_bracket, sth_expansion, stanley_doubling, HilbertVector};
pub use view::{DegreePiece, GradedAlgebraView};

use std::collections::HashMap;

use thiserror::Error;

use crate::exactmath::{Matrix, MatrixError};
use crate::polyring::{monomials_of_degree, operator_vars, Action, Form, FormError, Monomial, OperatorPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArtinianError {
    #[error("degree {k} out of range 0..={max}")]
    DegreeOutOfRange { k: u32, max: u32 },
    #[error("the zero form has no inverse system")]
    ZeroForm,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("chosen basis does not span the image (internal inconsistency)")]
    SingularBasis,
    #[error("expected a linear operator, got degree {0}")]
    NotLinear(u32),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub(crate) fn index_of(monomials: &[Monomial]) -> HashMap<&Monomial, usize> {
    monomials.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Matrix of `S_k → R_{d-k}`, `q ↦ q·f`, under `action`. Rows are the
/// monomials of degree `d-k`, columns those of degree `k`, both in
/// decreasing lexicographic order.
pub fn contraction_matrix_with(f: &Form, k: u32, action: Action) -> Result<Matrix, ArtinianError> {
    let d = f.degree();
    if k > d {
        return Err(ArtinianError::DegreeOutOfRange { k, max: d });
    }
    let n = f.nvars();
    let rows = monomials_of_degree(n, d - k);
    let cols = monomials_of_degree(n, k);
    let row_index = index_of(&rows);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, b) in cols.iter().enumerate() {
        let image = f.poly().act_monomial(b, action == Action::Contraction);
        for (mono, c) in image.terms() {
            m.set(row_index[mono], j, c.clone());
        }
    }
    Ok(m)
}

/// [`contraction_matrix_with`] for plain differentiation.
pub fn contraction_matrix(f: &Form, k: u32) -> Result<Matrix, ArtinianError> {
    contraction_matrix_with(f, k, Action::Differentiation)
}

/// Basis of `Ann_S(f)_k` as operator polynomials (kernel basis of the
/// contraction matrix). For `k > deg f` this is every monomial of degree `k`.
pub fn ann_graded_basis(f: &Form, k: u32) -> Vec<OperatorPoly> {
    let ops = operator_vars(f.vars());
    let monos = monomials_of_degree(f.nvars(), k);
    if k > f.degree() {
        return monos.into_iter().map(|m| OperatorPoly::monomial(ops.clone(), m)).collect();
    }
    let m = contraction_matrix(f, k).expect("k within range");
    m.kernel_basis()
        .into_iter()
        .map(|v| OperatorPoly::new(Form::from_coefficients(ops.clone(), k, &monos, &v)))
        .collect()
}

/// `h_k = dim S_k - dim Ann_S(f)_k` for `k = 0..=deg f`.
pub fn hilbert_vector(f: &Form) -> Result<HilbertVector, ArtinianError> {
    if f.is_zero() {
        return Err(ArtinianError::ZeroForm);
    }
    let values = (0..=f.degree())
        .map(|k| contraction_matrix(f, k).map(|m| m.rank()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HilbertVector::new(values))
}

/// Greedy-lex basis of `A_k`: scanning the monomials of degree `k` in
/// decreasing lexicographic order, keep those whose contraction columns are
/// independent of the ones kept so far.
pub fn basis_of_ak(f: &Form, k: u32) -> Result<Vec<Monomial>, ArtinianError> {
    let m = contraction_matrix(f, k)?;
    let monos = monomials_of_degree(f.nvars(), k);
    Ok(m.pivot_columns().into_iter().map(|j| monos[j].clone()).collect())
}

/// Matrix of `×L^c : A_i → A_{i+c}` on the greedy-lex bases.
pub fn multiplication_matrix(f: &Form, l: &OperatorPoly, i: u32, c: u32) -> Result<Matrix, ArtinianError> {
    GradedAlgebraView::new(f)?.multiplication_matrix(l, i, c)
}

/// Matrix of the Poincaré pairing `A_k × A_{d-k} → K`, `(α, β) ↦ (αβ)·f`.
pub fn pairing_matrix(view: &GradedAlgebraView, k: u32) -> Result<Matrix, ArtinianError> {
    let d = view.socle_degree();
    if k > d {
        return Err(ArtinianError::DegreeOutOfRange { k, max: d });
    }
    let left = &view.piece(k).basis;
    let right = &view.piece(d - k).basis;
    let f = view.form();
    Ok(Matrix::from_fn(left.len(), right.len(), |i, j| {
        let prod = left[i].mul(&right[j]);
        f.poly().act_monomial(&prod, false).coeff(&Monomial::one(f.nvars()))
    }))
}
