use std::collections::HashMap;

use num_traits::Zero;

use super::{contraction_matrix, index_of, ArtinianError, HilbertVector};
use crate::exactmath::{Matrix, Rational};
use crate::polyring::{monomials_of_degree, operator_vars, Form, Monomial, OperatorPoly, Poly, Vars};

/// Data for one graded piece `A_k`.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    pub k: u32,
    pub h: usize,
    /// Greedy-lex monomial basis of `A_k`.
    pub basis: Vec<Monomial>,
    /// Monomials of degree `d-k` indexing the rows of `columns`.
    pub row_monomials: Vec<Monomial>,
    /// Contractions `α·f` of the basis monomials, one per column.
    pub columns: Matrix,
    /// Rows of `columns` forming an invertible `h × h` block.
    pub pivot_rows: Vec<usize>,
    /// Inverse of that block; maps contraction values to coordinates.
    pub inverse: Matrix,
}

/// All graded pieces of `A = S/Ann_S(f)`, built once and then read-only.
#[derive(Clone, Debug)]
pub struct GradedAlgebraView {
    f: Form,
    ops: Vars,
    pieces: Vec<DegreePiece>,
}

fn build_piece(f: &Form, k: u32) -> Result<DegreePiece, ArtinianError> {
    let n = f.nvars();
    let m = contraction_matrix(f, k)?;
    let monos = monomials_of_degree(n, k);
    let pivots = m.pivot_columns();
    let basis: Vec<Monomial> = pivots.iter().map(|&j| monos[j].clone()).collect();
    let columns = m.select_columns(&pivots);
    let pivot_rows = columns.transpose().pivot_columns();
    let block = columns.submatrix(&pivot_rows, &(0..pivots.len()).collect::<Vec<_>>());
    let inverse = block.inverse()?.ok_or(ArtinianError::SingularBasis)?;
    Ok(DegreePiece {
        k,
        h: basis.len(),
        basis,
        row_monomials: monomials_of_degree(n, f.degree() - k),
        columns,
        pivot_rows,
        inverse,
    })
}

impl GradedAlgebraView {
    pub fn new(f: &Form) -> Result<Self, ArtinianError> {
        if f.is_zero() {
            return Err(ArtinianError::ZeroForm);
        }
        let pieces = std::thread::scope(|s| {
            let handles: Vec<_> = (0..=f.degree()).map(|k| s.spawn(move || build_piece(f, k))).collect();
            handles.into_iter().map(|h| h.join().expect("degree worker panicked")).collect::<Result<Vec<_>, _>>()
        })?;
        Ok(GradedAlgebraView { f: f.clone(), ops: operator_vars(f.vars()), pieces })
    }

    pub fn form(&self) -> &Form {
        &self.f
    }

    pub fn operator_vars(&self) -> &Vars {
        &self.ops
    }

    pub fn socle_degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn piece(&self, k: u32) -> &DegreePiece {
        &self.pieces[k as usize]
    }

    pub fn pieces(&self) -> &[DegreePiece] {
        &self.pieces
    }

    pub fn hilbert_vector(&self) -> HilbertVector {
        HilbertVector::new(self.pieces.iter().map(|p| p.h).collect())
    }

    pub fn h(&self, k: u32) -> usize {
        self.pieces.get(k as usize).map_or(0, |p| p.h)
    }

    /// Coordinates in the basis of `A_k` of the class whose contraction
    /// against `f` is `image` (a form of degree `d-k`).
    pub fn coordinates(&self, k: u32, image: &Poly) -> Result<Vec<Rational>, ArtinianError> {
        let piece = self.piece(k);
        let index: HashMap<&Monomial, usize> = index_of(&piece.row_monomials);
        let mut y = vec![Rational::zero(); piece.row_monomials.len()];
        for (m, c) in image.terms() {
            let Some(&r) = index.get(m) else { return Err(ArtinianError::SingularBasis) };
            y[r] = c.clone();
        }
        let restricted: Vec<Rational> = piece.pivot_rows.iter().map(|&r| y[r].clone()).collect();
        let x = piece.inverse.mul_vec(&restricted)?;
        if piece.columns.mul_vec(&x)? != y {
            return Err(ArtinianError::SingularBasis);
        }
        Ok(x)
    }

    /// Matrix of `×L^c : A_i → A_{i+c}`. Column `j` holds the coordinates of
    /// `L^c α_j`, found by matching contractions against `f`.
    pub fn multiplication_matrix(&self, l: &OperatorPoly, i: u32, c: u32) -> Result<Matrix, ArtinianError> {
        let d = self.socle_degree();
        if i + c > d {
            return Err(ArtinianError::DegreeOutOfRange { k: i + c, max: d });
        }
        if !l.is_zero() && l.degree() != 1 {
            return Err(ArtinianError::NotLinear(l.degree()));
        }
        if l.nvars() != self.f.nvars() {
            return Err(ArtinianError::LengthMismatch { expected: self.f.nvars(), got: l.nvars() });
        }
        let lc = l.as_form().poly().pow(c);
        let source = &self.piece(i).basis;
        let target_h = self.piece(i + c).h;
        let mut out = Matrix::zeros(target_h, source.len());
        for (j, alpha) in source.iter().enumerate() {
            let q = lc.mul_term(alpha, &Rational::from_integer(1.into()));
            let mut image = Poly::zero(self.f.nvars());
            for (b, coef) in q.terms() {
                image = image.add(&self.f.poly().act_monomial(b, false).scale(coef));
            }
            let x = self.coordinates(i + c, &image)?;
            for (r, v) in x.into_iter().enumerate() {
                out.set(r, j, v);
            }
        }
        Ok(out)
    }

    /// `Σ a_i X_i` over the operator variables.
    pub fn linear_operator(&self, coeffs: &[Rational]) -> OperatorPoly {
        OperatorPoly::linear(self.ops.clone(), coeffs)
    }
}
