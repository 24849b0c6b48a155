use super::{contraction_matrix_with, index_of, ArtinianError};
use crate::exactmath::{Matrix, Rational, MODULAR_PRIME};
use crate::polyring::{count_of_degree, monomials_of_degree, Action, Form, OperatorPoly, Poly};

/// Span comparison in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub k: u32,
    /// Dimension of the degree-`k` part of the ideal generated by the list.
    pub generated: usize,
    /// `dim Ann_S(f)_k`.
    pub annihilator: usize,
}

/// Outcome of [`verify_annihilator_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    pub action: Action,
    /// Indices of generators with `g·f ≠ 0`.
    pub not_annihilating: Vec<usize>,
    pub degrees: Vec<DegreeComparison>,
}

impl AnnihilatorReport {
    /// Degrees where the generated ideal differs from the annihilator.
    pub fn mismatched_degrees(&self) -> Vec<u32> {
        self.degrees.iter().filter(|c| c.generated != c.annihilator).map(|c| c.k).collect()
    }

    pub fn is_valid(&self) -> bool {
        self.not_annihilating.is_empty() && self.mismatched_degrees().is_empty()
    }
}

/// Rank of a set of row vectors inside a space of known dimension `bound`.
/// The modular rank is a lower bound and the rows are known to lie in a space
/// of dimension `bound`, so a modular rank equal to `bound` is exact.
fn rank_within(rows: Vec<Vec<Rational>>, bound: usize, cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(rows).expect("rows of equal length");
    debug_assert_eq!(m.cols(), cols);
    match m.rank_mod(MODULAR_PRIME) {
        Some(r) if r == bound => r,
        _ => m.rank(),
    }
}

/// Checks that every generator annihilates `f` under `action`, and that in
/// each degree `k ≤ deg f` the S-multiples of the generators span
/// `Ann_S(f)_k` (compared by dimension).
pub fn verify_annihilator_set(f: &Form, gens: &[OperatorPoly], action: Action) -> Result<AnnihilatorReport, ArtinianError> {
    let n = f.nvars();
    let mut not_annihilating = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        if !f.act(g, action)?.is_zero() {
            not_annihilating.push(idx);
        }
    }
    let mut degrees = Vec::new();
    for k in 0..=f.degree() {
        let ann = count_of_degree(n, k) - contraction_matrix_with(f, k, action)?.rank();
        let monos = monomials_of_degree(n, k);
        let index = index_of(&monos);
        let mut rows = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero() && g.degree() <= k) {
            for m in monomials_of_degree(n, k - g.degree()) {
                let prod: Poly = g.as_form().poly().mul_term(&m, &Rational::from_integer(1.into()));
                let mut row = vec![Rational::from_integer(0.into()); monos.len()];
                for (mono, c) in prod.terms() {
                    row[index[mono]] = c.clone();
                }
                rows.push(row);
            }
        }
        let generated = if not_annihilating.is_empty() {
            rank_within(rows, ann, monos.len())
        } else {
            Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
        };
        degrees.push(DegreeComparison { k, generated, annihilator: ann });
    }
    Ok(AnnihilatorReport { action, not_annihilating, degrees })
}
