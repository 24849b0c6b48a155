//! Weak and strong Lefschetz properties of `S/Ann(f)`: exact witnesses when
//! they hold, certificates when they fail.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::artinian::{is_si_sequence, ArtinianError, GradedAlgebraView, HilbertVector};
use crate::exactmath::{rat, Rational};
use crate::hessians::{
    evaluate_matrix, higher_hessian_from_view, vanishing_verdict, HessianError, HessianSpec, VanishingConfig,
    VanishingStatus,
};
use crate::perazzo::{is_cone, PerazzoForm};
use crate::polyring::{Form, OperatorPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error(transparent)]
    Artinian(#[from] ArtinianError),
    #[error(transparent)]
    Hessian(#[from] HessianError),
    #[error("zero-block check needs a Perazzo form that is not a cone")]
    NotPerazzoShape,
}

#[derive(Clone, Debug)]
pub struct LefschetzOptions {
    /// Random linear forms tried for the weak property.
    pub trials: usize,
    /// Coefficients of random linear forms lie in `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    /// Random points tried to find one strong Lefschetz element for all `k`.
    pub slp_attempts: usize,
    pub vanishing: VanishingConfig,
    pub seed: u64,
}

impl Default for LefschetzOptions {
    fn default() -> Self {
        LefschetzOptions { trials: 5, coeff_bound: 9, slp_attempts: 20, vanishing: VanishingConfig::default(), seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureCertificate {
    NotUnimodal(HilbertVector),
    NotSiSequence(HilbertVector),
    /// In the `k`-th Hessian, `size` basis elements pair to zero with each
    /// other and `2·size > h_k`.
    ZeroBlock { k: u32, size: usize, h_k: usize },
    /// The `k`-th Hessian vanishes; for the weak property `h` is flat on
    /// `[k, d-k]`.
    VanishingHessian { k: u32, status: VanishingStatus, trials: usize },
}

impl fmt::Display for FailureCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureCertificate::NotUnimodal(h) => write!(f, "h-vector {h} is not unimodal"),
            FailureCertificate::NotSiSequence(h) => write!(f, "h-vector {h} is not an SI-sequence"),
            FailureCertificate::ZeroBlock { k, size, h_k } => {
                write!(f, "hessian {k} vanishes: {size}x{size} zero block in a {h_k}x{h_k} matrix")
            }
            FailureCertificate::VanishingHessian { k, status, trials } => {
                write!(f, "hessian {k} vanishes ({status}, {trials} trials)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LefschetzVerdict {
    /// Coefficients of a linear form `Σ a_i X_i` verified exactly.
    Holds { witness: Vec<Rational> },
    Fails(FailureCertificate),
    Inconclusive(String),
}

impl LefschetzVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LefschetzVerdict::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, LefschetzVerdict::Fails(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            LefschetzVerdict::Holds { .. } => "holds",
            LefschetzVerdict::Fails(_) => "fails",
            LefschetzVerdict::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LefschetzReport {
    pub hvector: HilbertVector,
    pub wlp: LefschetzVerdict,
    pub slp: LefschetzVerdict,
    /// Ranks of `×L : A_i → A_{i+1}` for the last linear form tried.
    pub map_ranks: Vec<usize>,
    pub hessians: Vec<(u32, VanishingStatus)>,
}

fn random_coeffs(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Rational> {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c.iter().any(|&x| x != 0) {
            return c.into_iter().map(rat).collect();
        }
    }
}

/// Ranks of `×L : A_i → A_{i+1}` for `i = 0..d-1`.
pub fn map_ranks(view: &GradedAlgebraView, l: &OperatorPoly) -> Result<Vec<usize>, LefschetzError> {
    (0..view.socle_degree())
        .map(|i| Ok(view.multiplication_matrix(l, i, 1)?.rank()))
        .collect()
}

fn full_rank_at(view: &GradedAlgebraView, l: &OperatorPoly, i: u32, rank_needed: usize) -> Result<bool, LefschetzError> {
    Ok(view.multiplication_matrix(l, i, 1)?.rank() == rank_needed)
}

/// Whether every `×L : A_i → A_{i+1}` has full rank.
pub fn is_weak_lefschetz_element(view: &GradedAlgebraView, l: &OperatorPoly) -> Result<bool, LefschetzError> {
    if l.is_zero() {
        return Ok(view.socle_degree() == 0);
    }
    let h = view.hilbert_vector();
    for (i, r) in map_ranks(view, l)?.into_iter().enumerate() {
        if r != h.get(i).min(h.get(i + 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same answer as [`is_weak_lefschetz_element`], checking one map: at the
/// first `k` with `h_k ≥ h_{k+1}`, `×L` must be an isomorphism `A_k → A_{k+1}`
/// when `h_k = h_{k+1}`, or injective on `A_{k-1}` when `h_k > h_{k+1}`.
pub fn is_weak_lefschetz_element_shortcut(view: &GradedAlgebraView, l: &OperatorPoly) -> Result<bool, LefschetzError> {
    let h = view.hilbert_vector();
    let d = view.socle_degree();
    if d == 0 {
        return Ok(true);
    }
    if l.is_zero() || !h.is_unimodal() {
        return Ok(false);
    }
    let k = (0..d as usize).find(|&k| h.get(k) >= h.get(k + 1)).expect("h_d <= h_{d-1}");
    if h.get(k) == h.get(k + 1) {
        full_rank_at(view, l, k as u32, h.get(k))
    } else {
        full_rank_at(view, l, k as u32 - 1, h.get(k - 1))
    }
}

/// Size of the zero block in the `k`-th Hessian of a Perazzo form: basis
/// elements of `A_k` involving some `y_i` pair to zero since `f` is linear in
/// the `x_i`. Returns `None` unless the block is verified zero and
/// `2·size > h_k`, which forces the determinant to vanish.
pub fn zero_block(view: &GradedAlgebraView, k: u32) -> Option<usize> {
    let piece = view.piece(k);
    let block: Vec<_> = piece.basis.iter().filter(|m| m.exponents()[..3].iter().sum::<u32>() >= 1).collect();
    let f = view.form().poly();
    let zero = block
        .iter()
        .all(|a| block.iter().all(|b| f.act_monomial(&a.mul(b), false).is_zero()));
    (zero && 2 * block.len() > piece.h).then_some(block.len())
}

/// Whether the zero-block argument forces the `k`-th Hessian of `f` to vanish.
pub fn structural_zero_block(f: &PerazzoForm, k: u32) -> Result<bool, LefschetzError> {
    if is_cone(f.form()) {
        return Err(LefschetzError::NotPerazzoShape);
    }
    let view = GradedAlgebraView::new(f.form())?;
    if 2 * k > view.socle_degree() {
        return Err(HessianError::DegreeOutOfRange { k, d: view.socle_degree() }.into());
    }
    Ok(zero_block(&view, k).is_some())
}

fn is_perazzo(f: &Form) -> bool {
    PerazzoForm::from_form(f).is_ok() && !is_cone(f)
}

/// Degrees `k < d/2` with `h` flat on `[k, d-k]`, largest first.
fn flat_middle_degrees(h: &HilbertVector, d: u32) -> Vec<u32> {
    (1..=d.saturating_sub(1) / 2)
        .rev()
        .take_while(|&k| h.is_flat_between(k as usize, (d - k) as usize))
        .collect()
}

/// Weak Lefschetz verdict. Random linear forms are tried first; when all
/// fail, a failure certificate is looked for.
pub fn wlp_verdict(
    view: &GradedAlgebraView,
    opts: &LefschetzOptions,
    rng: &mut impl Rng,
) -> Result<(LefschetzVerdict, Vec<usize>), LefschetzError> {
    let h = view.hilbert_vector();
    let d = view.socle_degree();
    if !h.is_unimodal() {
        return Ok((LefschetzVerdict::Fails(FailureCertificate::NotUnimodal(h)), Vec::new()));
    }
    if !is_si_sequence(&h) {
        return Ok((LefschetzVerdict::Fails(FailureCertificate::NotSiSequence(h)), Vec::new()));
    }
    let n = view.form().nvars();
    let mut ranks = Vec::new();
    for _ in 0..opts.trials.max(1) {
        let c = random_coeffs(rng, n, opts.coeff_bound);
        let l = view.linear_operator(&c);
        if is_weak_lefschetz_element_shortcut(view, &l)? {
            ranks = map_ranks(view, &l)?;
            return Ok((LefschetzVerdict::Holds { witness: c }, ranks));
        }
        ranks = map_ranks(view, &l)?;
    }
    let flat = flat_middle_degrees(&h, d);
    if is_perazzo(view.form()) {
        for &k in &flat {
            if let Some(size) = zero_block(view, k) {
                let cert = FailureCertificate::ZeroBlock { k, size, h_k: h.get(k as usize) };
                return Ok((LefschetzVerdict::Fails(cert), ranks));
            }
        }
    }
    for &k in &flat {
        let spec = higher_hessian_from_view(view, k)?;
        let v = vanishing_verdict(&spec.entries, rng, &opts.vanishing)?;
        if v.status.is_zero() {
            let cert = FailureCertificate::VanishingHessian { k, status: v.status, trials: v.trials };
            return Ok((LefschetzVerdict::Fails(cert), ranks));
        }
        if let Some(c) = v.witness {
            let l = view.linear_operator(&c);
            if !l.is_zero() && is_weak_lefschetz_element_shortcut(view, &l)? {
                let ranks = map_ranks(view, &l)?;
                return Ok((LefschetzVerdict::Holds { witness: c }, ranks));
            }
        }
    }
    Ok((
        LefschetzVerdict::Inconclusive(format!("no weak Lefschetz element in {} trials and no certificate", opts.trials)),
        ranks,
    ))
}

fn nonzero_at(spec: &HessianSpec, point: &[Rational]) -> bool {
    !evaluate_matrix(&spec.entries, point).determinant().expect("square").is_zero()
}

/// Strong Lefschetz verdict by the higher Hessians `k = 1..⌊d/2⌋`.
pub fn slp_verdict(
    view: &GradedAlgebraView,
    opts: &LefschetzOptions,
    rng: &mut impl Rng,
) -> Result<(LefschetzVerdict, Vec<(u32, VanishingStatus)>), LefschetzError> {
    let d = view.socle_degree();
    let mut specs = Vec::new();
    let mut statuses = Vec::new();
    let mut witnesses = Vec::new();
    for k in 1..=d / 2 {
        let spec = higher_hessian_from_view(view, k)?;
        let v = vanishing_verdict(&spec.entries, rng, &opts.vanishing)?;
        statuses.push((k, v.status));
        if v.status.is_zero() {
            let cert = FailureCertificate::VanishingHessian { k, status: v.status, trials: v.trials };
            return Ok((LefschetzVerdict::Fails(cert), statuses));
        }
        witnesses.extend(v.witness);
        specs.push(spec);
    }
    let n = view.form().nvars();
    let candidates = witnesses.into_iter().chain((0..opts.slp_attempts).map(|_| random_coeffs(rng, n, opts.coeff_bound)));
    for c in candidates.take(opts.slp_attempts.max(1) + specs.len()) {
        if c.iter().any(|x| !x.is_zero()) && specs.iter().all(|s| nonzero_at(s, &c)) {
            return Ok((LefschetzVerdict::Holds { witness: c }, statuses));
        }
    }
    Ok((
        LefschetzVerdict::Inconclusive(format!("no common nonzero point in {} attempts", opts.slp_attempts)),
        statuses,
    ))
}

/// Both verdicts with a generator seeded from `opts.seed`.
pub fn analyze(f: &Form, opts: &LefschetzOptions) -> Result<LefschetzReport, LefschetzError> {
    let view = GradedAlgebraView::new(f)?;
    analyze_view(&view, opts)
}

pub fn analyze_view(view: &GradedAlgebraView, opts: &LefschetzOptions) -> Result<LefschetzReport, LefschetzError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (wlp, map_ranks) = wlp_verdict(view, opts, &mut rng)?;
    let (slp, hessians) = slp_verdict(view, opts, &mut rng)?;
    Ok(LefschetzReport { hvector: view.hilbert_vector(), wlp, slp, map_ranks, hessians })
}
