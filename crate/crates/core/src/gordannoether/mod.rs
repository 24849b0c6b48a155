//! Algebraic relations among partial derivatives, self-vanishing systems,
//! the identity `f(x + t·h(x)) = f(x)` and the resulting reduction of a
//! form with vanishing Hessian to a cone.

mod gcd;

pub use gcd::{gcd_all, poly_gcd};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{factorial, rat, Matrix, Rational};
use crate::polyring::{monomials_of_degree, Form, FormError, Monomial, Poly, RationalImage, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GnError {
    #[error("no algebraic relation among the partials up to degree {0}")]
    NotFound(u32),
    #[error("relation does not vanish on the partials: {0}")]
    RelationInvalid(String),
    #[error("the relation gives the zero system; use a relation of least degree")]
    TrivialSystem,
    #[error("pivot component {0} is zero")]
    PivotZero(usize),
    #[error("components have different degrees {first} and {second}")]
    DegreeMismatch { first: u32, second: u32 },
    #[error("expected {expected} components, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not a self-vanishing system")]
    NotSelfVanishing,
    #[error("reduction check failed: {0}")]
    ReductionFailed(String),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// `g(y)` with `g(∂f/∂x_0, …, ∂f/∂x_n) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicRelation {
    pub g: Form,
    pub degree: u32,
    /// Largest degree searched.
    pub bound: u32,
}

impl fmt::Display for AlgebraicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.g)
    }
}

/// Names `y0..y{n-1}` for relation variables, falling back to `w0..` if
/// those clash with the form's variables.
pub fn relation_vars(form_vars: &Vars) -> Vars {
    let n = form_vars.len();
    for prefix in ["y", "w", "r_"] {
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|s| !form_vars.contains(s)) {
            return names.into();
        }
    }
    unreachable!("r_i names cannot all clash with n variables")
}

/// Primed copies of the variable names.
pub fn primed_vars(form_vars: &Vars) -> Vars {
    form_vars.iter().map(|s| format!("{s}'")).collect::<Vec<_>>().into()
}

/// Relation of least degree `e ≤ max_degree`: the kernel of the linear map
/// sending a degree-`e` form `g(y)` to `g(∇f)`. Columns follow the
/// y-monomials in decreasing lex order and the first kernel vector of the
/// reduced echelon form is returned, with positive leading coefficient.
pub fn find_min_relation(f: &Form, max_degree: u32) -> Result<AlgebraicRelation, GnError> {
    let n = f.nvars();
    let partials: Vec<Poly> = f.partials().iter().map(|p| p.poly().clone()).collect();
    let yvars = relation_vars(f.vars());
    for e in 1..=max_degree {
        let ys = monomials_of_degree(n, e);
        let images: Vec<Poly> = ys
            .iter()
            .map(|m| {
                m.exponents()
                    .iter()
                    .zip(&partials)
                    .fold(Poly::one(n), |acc, (&k, p)| if k == 0 { acc } else { acc.mul(&p.pow(k)) })
            })
            .collect();
        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in &images {
            for (m, _) in p.terms() {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
        let mut mat = Matrix::zeros(rows.len(), ys.len());
        for (j, p) in images.iter().enumerate() {
            for (m, c) in p.terms() {
                mat.set(rows[m], j, c.clone());
            }
        }
        if let Some(mut v) = mat.kernel_basis().into_iter().next() {
            if v.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
                v.iter_mut().for_each(|c| *c = -&*c);
            }
            let g = Form::from_coefficients(yvars, e, &ys, &v);
            return Ok(AlgebraicRelation { g, degree: e, bound: max_degree });
        }
    }
    Err(GnError::NotFound(max_degree))
}

/// `Σ_j h_j ∂p/∂x_j`.
fn derivation(h: &[Form], p: &Poly) -> Poly {
    h.iter()
        .enumerate()
        .fold(Poly::zero(p.nvars()), |acc, (j, hj)| acc.add(&hj.poly().mul(&p.derivative(j))))
}

fn common_degree(h: &[Form]) -> Result<u32, GnError> {
    let mut deg: Option<u32> = None;
    for c in h.iter().filter(|c| !c.is_zero()) {
        match deg {
            None => deg = Some(c.degree()),
            Some(d) if d != c.degree() => return Err(GnError::DegreeMismatch { first: d, second: c.degree() }),
            _ => {}
        }
    }
    Ok(deg.unwrap_or(0))
}

/// Whether `Σ_j h_j ∂h_i/∂x_j = 0` for every `i`.
pub fn is_self_vanishing(h: &[Form]) -> Result<bool, GnError> {
    common_degree(h)?;
    if let Some(first) = h.first() {
        if h.len() != first.nvars() {
            return Err(GnError::ArityMismatch { expected: first.nvars(), got: h.len() });
        }
    }
    Ok(h.iter().all(|hi| derivation(h, hi.poly()).is_zero()))
}

/// Same check for `h_j = re_j + i·im_j` with Gaussian rational coefficients.
pub fn is_self_vanishing_gaussian(h: &[(Form, Form)]) -> Result<bool, GnError> {
    let re: Vec<Form> = h.iter().map(|(a, _)| a.clone()).collect();
    let im: Vec<Form> = h.iter().map(|(_, b)| b.clone()).collect();
    common_degree(&re.iter().chain(&im).cloned().collect::<Vec<_>>())?;
    if let Some((first, _)) = h.first() {
        if h.len() != first.nvars() {
            return Err(GnError::ArityMismatch { expected: first.nvars(), got: h.len() });
        }
    }
    Ok(h.iter().all(|(a, b)| {
        let real = derivation(&re, a.poly()).sub(&derivation(&im, b.poly()));
        let imag = derivation(&re, b.poly()).add(&derivation(&im, a.poly()));
        real.is_zero() && imag.is_zero()
    }))
}

/// The consequences a self-vanishing system built from `f` must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SvsProperties {
    pub self_vanishing: bool,
    /// `Σ h_j ∂f/∂x_j = 0`
    pub syzygy: bool,
    /// every `∂f/∂x_j` is killed by `Σ h_i ∂/∂x_i`
    pub partials_killed: bool,
    /// `Σ_i (∂h_i/∂x_j) ∂f/∂x_i = 0` for every `j`
    pub derivative_syzygies: bool,
}

impl SvsProperties {
    pub fn all(&self) -> bool {
        self.self_vanishing && self.syzygy && self.partials_killed && self.derivative_syzygies
    }
}

pub fn svs_properties(f: &Form, h: &[Form]) -> Result<SvsProperties, GnError> {
    if h.len() != f.nvars() {
        return Err(GnError::ArityMismatch { expected: f.nvars(), got: h.len() });
    }
    let partials: Vec<Poly> = f.partials().iter().map(|p| p.poly().clone()).collect();
    let derivative_syzygies = (0..f.nvars()).all(|j| {
        h.iter()
            .zip(&partials)
            .fold(Poly::zero(f.nvars()), |acc, (hi, fi)| acc.add(&hi.poly().derivative(j).mul(fi)))
            .is_zero()
    });
    Ok(SvsProperties {
        self_vanishing: is_self_vanishing(h)?,
        syzygy: derivation(h, f.poly()).is_zero(),
        partials_killed: partials.iter().all(|p| derivation(h, p).is_zero()),
        derivative_syzygies,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfVanishingSystem {
    pub h: Vec<Form>,
    pub relation: Option<AlgebraicRelation>,
    /// The nonzero components have no common factor.
    pub reduced: bool,
}

impl SelfVanishingSystem {
    /// Wraps a list of forms after checking the defining property.
    pub fn new(h: Vec<Form>) -> Result<Self, GnError> {
        if !is_self_vanishing(&h)? {
            return Err(GnError::NotSelfVanishing);
        }
        let reduced = gcd_all(h.iter().map(Form::poly)).is_none_or(|g| g.total_degree() == Some(0));
        Ok(SelfVanishingSystem { h, relation: None, reduced })
    }

    pub fn degree(&self) -> u32 {
        common_degree(&self.h).unwrap_or(0)
    }
}

impl fmt::Display for SelfVanishingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.h.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `h_j = (∂g/∂y_j)(∇f)` divided by the gcd of its nonzero components.
pub fn build_svs(f: &Form, rel: &AlgebraicRelation) -> Result<SelfVanishingSystem, GnError> {
    if rel.g.nvars() != f.nvars() {
        return Err(GnError::ArityMismatch { expected: f.nvars(), got: rel.g.nvars() });
    }
    let partials = f.partials();
    let value = rel.g.substitute(&partials)?;
    if !value.is_zero() {
        return Err(GnError::RelationInvalid(format!("g(grad f) = {value}")));
    }
    let raw: Vec<Form> = (0..f.nvars())
        .map(|j| rel.g.partial(j).substitute(&partials))
        .collect::<Result<_, _>>()?;
    let Some(g) = gcd_all(raw.iter().map(Form::poly)) else {
        return Err(GnError::TrivialSystem);
    };
    let gdeg = g.total_degree().unwrap_or(0);
    let deg = common_degree(&raw)? - gdeg;
    let h: Vec<Form> = raw
        .iter()
        .map(|c| {
            let q = c.poly().div_exact(&g).expect("gcd divides every component");
            Form::with_degree(f.vars().clone(), deg, q)
        })
        .collect::<Result<_, _>>()?;
    let props = svs_properties(f, &h)?;
    if !props.all() {
        return Err(GnError::RelationInvalid(format!("system fails its consequences: {props:?}")));
    }
    Ok(SelfVanishingSystem { h, relation: Some(rel.clone()), reduced: true })
}

/// Outcome of the two independent checks of `f(x + t·h) = f(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GnIdentityCheck {
    /// `f(x + t·h(x)) - f(x)` expanded with `t` adjoined is zero.
    pub flow_invariant: bool,
    /// `Σ_{|a|=j} ∂^a f · h^a / a! = 0` for `j = 1..d`.
    pub polar_terms_vanish: bool,
}

impl GnIdentityCheck {
    pub fn holds(&self) -> bool {
        self.flow_invariant && self.polar_terms_vanish
    }
}

pub fn verify_gn_identity(f: &Form, svs: &SelfVanishingSystem) -> Result<GnIdentityCheck, GnError> {
    let n = f.nvars();
    if svs.h.len() != n {
        return Err(GnError::ArityMismatch { expected: n, got: svs.h.len() });
    }
    let map: Vec<usize> = (0..n).collect();
    let lift = |p: &Poly| p.remap(n + 1, &map);
    let t = Poly::var(n + 1, n);
    let images: Vec<Poly> =
        (0..n).map(|i| Poly::var(n + 1, i).add(&t.mul(&lift(svs.h[i].poly())))).collect();
    let fx = lift(f.poly());
    let flow_invariant = f.poly().compose(&images).sub(&fx).is_zero();

    let h_pows: Vec<Vec<Poly>> = svs
        .h
        .iter()
        .map(|hi| (0..=f.degree()).map(|k| hi.poly().pow(k)).collect())
        .collect();
    let polar_terms_vanish = (1..=f.degree()).all(|j| {
        monomials_of_degree(n, j)
            .iter()
            .fold(Poly::zero(n), |acc, a| {
                let deriv = f.poly().act_monomial(a, false);
                if deriv.is_zero() {
                    return acc;
                }
                let afact = a.exponents().iter().fold(Rational::one(), |x, &k| x * Rational::from_integer(factorial(k.into())));
                let hp = a
                    .exponents()
                    .iter()
                    .enumerate()
                    .fold(Poly::one(n), |x, (i, &k)| x.mul(&h_pows[i][k as usize]));
                acc.add(&deriv.mul(&hp).scale(&(Rational::one() / afact)))
            })
            .is_zero()
    });
    Ok(GnIdentityCheck { flow_invariant, polar_terms_vanish })
}

/// `f` rewritten without `x_pivot` in the coordinates
/// `s_i = x_i - (h_i / h_pivot) x_pivot`, with both substitution maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CremonaReduction {
    pub pivot: usize,
    /// `f` with `x_pivot = 0`, over primed variables.
    pub reduced: Form,
    /// `s(x)`: substituting into `reduced` gives back `f`.
    pub forward: Vec<RationalImage>,
    /// `ψ(s)`: substituting into `f` gives `reduced`.
    pub backward: Vec<RationalImage>,
}

fn set_var_zero(p: &Form, var: usize) -> Result<Form, FormError> {
    let v = p.vars().clone();
    let images: Vec<Form> = (0..p.nvars())
        .map(|i| if i == var { Form::zero(v.clone(), 1) } else { Form::var(v.clone(), i) })
        .collect();
    p.substitute(&images)
}

pub fn cremona_reduce(f: &Form, svs: &SelfVanishingSystem, pivot: usize) -> Result<CremonaReduction, GnError> {
    let n = f.nvars();
    if svs.h.len() != n {
        return Err(GnError::ArityMismatch { expected: n, got: svs.h.len() });
    }
    if pivot >= n || svs.h[pivot].is_zero() {
        return Err(GnError::PivotZero(pivot));
    }
    let xv = f.vars().clone();
    let sv = primed_vars(&xv);
    let h = &svs.h;
    let hp = &h[pivot];
    let x = |i: usize| Form::var(xv.clone(), i);
    let forward: Vec<RationalImage> = (0..n)
        .map(|i| {
            let num = if i == pivot {
                Form::zero(xv.clone(), hp.degree() + 1)
            } else {
                x(i).checked_mul(hp)?.checked_add(&h[i].checked_mul(&x(pivot))?.neg())?
            };
            Ok(RationalImage { num, den: hp.clone() })
        })
        .collect::<Result<_, FormError>>()?;

    let reduced = set_var_zero(f, pivot)?.rename(sv.clone())?;
    let back_check = reduced.substitute_rational(&forward)?;
    if &back_check != f {
        return Err(GnError::ReductionFailed(format!("reduced form pulls back to {back_check}")));
    }

    let hbar: Vec<Form> = h
        .iter()
        .map(|c| set_var_zero(c, pivot).and_then(|z| z.rename(sv.clone())))
        .collect::<Result<_, _>>()?;
    let hbp = &hbar[pivot];
    if hbp.is_zero() {
        return Err(GnError::PivotZero(pivot));
    }
    let s = |i: usize| Form::var(sv.clone(), i);
    let backward: Vec<RationalImage> = (0..n)
        .map(|i| {
            let num = if i == pivot {
                s(i).checked_mul(hbp)?
            } else {
                s(i).checked_mul(hbp)?.checked_add(&hbar[i].checked_mul(&s(pivot))?)?
            };
            Ok(RationalImage { num, den: hbp.clone() })
        })
        .collect::<Result<_, FormError>>()?;
    let forward_check = f.substitute_rational(&backward)?;
    if forward_check != reduced {
        return Err(GnError::ReductionFailed(format!("f pulls back to {forward_check}")));
    }
    Ok(CremonaReduction { pivot, reduced, forward, backward })
}

/// Constant system `(c_0, …, c_n)` over the variables of `f`.
pub fn constant_system(vars_of: &Vars, c: &[i64]) -> Vec<Form> {
    c.iter().map(|&x| Form::constant(vars_of.clone(), rat(x))).collect()
}
