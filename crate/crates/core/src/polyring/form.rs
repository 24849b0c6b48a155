use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use super::monomial::{monomials_of_degree, Monomial};
use super::poly::Poly;
use super::FormError;
use crate::exactmath::{format_rational, Rational};

/// Ordered list of variable names shared between forms.
pub type Vars = Arc<[String]>;

/// Builds a variable list from names.
pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect()
}

/// Homogeneous polynomial over a declared, ordered list of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    vars: Vars,
    degree: u32,
    poly: Poly,
}

/// How an operator polynomial in `S = K[X_0..X_n]` acts on forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Action {
    /// `X_i = ∂/∂x_i`, plain iterated partial derivatives.
    #[default]
    Differentiation,
    /// Divided powers: `X^b · x^a = x^(a-b)` (zero unless `b ≤ a`).
    Contraction,
}

impl Form {
    /// Wraps a polynomial, checking homogeneity. A zero polynomial gets the
    /// nominal degree 0; use [`Form::zero`] to choose another.
    pub fn new(vars: Vars, poly: Poly) -> Result<Form, FormError> {
        if poly.nvars() != vars.len() {
            return Err(FormError::ArityMismatch { expected: vars.len(), got: poly.nvars() });
        }
        let degree = poly
            .homogeneous_degree()
            .map_err(|(first, second)| FormError::NotHomogeneous { first, second })?
            .unwrap_or(0);
        Ok(Form { vars, degree, poly })
    }

    /// Like [`Form::new`] but fixes the nominal degree of a zero result.
    pub fn with_degree(vars: Vars, degree: u32, poly: Poly) -> Result<Form, FormError> {
        let mut f = Form::new(vars, poly)?;
        if f.poly.is_zero() {
            f.degree = degree;
        } else if f.degree != degree {
            return Err(FormError::DegreeMismatch { expected: degree, got: f.degree });
        }
        Ok(f)
    }

    pub fn zero(vars: Vars, degree: u32) -> Form {
        let n = vars.len();
        Form { vars, degree, poly: Poly::zero(n) }
    }

    pub fn constant(vars: Vars, c: Rational) -> Form {
        let n = vars.len();
        Form { vars, degree: 0, poly: Poly::constant(n, c) }
    }

    pub fn var(vars: Vars, i: usize) -> Form {
        let n = vars.len();
        Form { vars, degree: 1, poly: Poly::var(n, i) }
    }

    pub fn monomial(vars: Vars, m: Monomial, c: Rational) -> Form {
        let degree = m.degree();
        Form { vars, degree, poly: Poly::term(m, c) }
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(vars: Vars, coeffs: &[Rational]) -> Form {
        let n = vars.len();
        let poly = Poly::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())));
        Form { vars, degree: 1, poly }
    }

    /// Form with the given coefficients on `monomials` (all of one degree).
    pub fn from_coefficients(vars: Vars, degree: u32, monomials: &[Monomial], coeffs: &[Rational]) -> Form {
        let n = vars.len();
        let poly = Poly::from_terms(n, monomials.iter().cloned().zip(coeffs.iter().cloned()));
        Form::with_degree(vars, degree, poly).expect("monomials of one degree")
    }

    pub fn parse(text: &str, vars: Vars) -> Result<Form, FormError> {
        super::parse::parse_form(text, vars)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.poly.len()
    }

    /// Terms in decreasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.poly.terms().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.poly.coeff(m)
    }

    /// Coefficients against the monomials of degree `deg f`, in decreasing
    /// lexicographic order.
    pub fn coefficient_vector(&self) -> Vec<Rational> {
        monomials_of_degree(self.nvars(), self.degree).iter().map(|m| self.coeff(m)).collect()
    }

    fn same_ring(&self, other: &Form) -> Result<(), FormError> {
        if self.vars != other.vars {
            return Err(FormError::VariableMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            });
        }
        Ok(())
    }

    fn wrap(&self, degree: u32, poly: Poly) -> Form {
        Form { vars: self.vars.clone(), degree, poly }
    }

    pub fn checked_add(&self, other: &Form) -> Result<Form, FormError> {
        self.same_ring(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !other.is_zero() && other.degree != self.degree {
            return Err(FormError::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        Ok(self.wrap(self.degree, self.poly.add(&other.poly)))
    }

    pub fn checked_mul(&self, other: &Form) -> Result<Form, FormError> {
        self.same_ring(other)?;
        Ok(self.wrap(self.degree + other.degree, self.poly.mul(&other.poly)))
    }

    pub fn scale(&self, c: &Rational) -> Form {
        self.wrap(self.degree, self.poly.scale(c))
    }

    pub fn neg(&self) -> Form {
        self.wrap(self.degree, self.poly.neg())
    }

    pub fn pow(&self, e: u32) -> Form {
        self.wrap(self.degree * e, self.poly.pow(e))
    }

    pub fn partial(&self, i: usize) -> Form {
        self.wrap(self.degree.saturating_sub(1), self.poly.derivative(i))
    }

    /// `(∂f/∂x_0, …, ∂f/∂x_n)`.
    pub fn partials(&self) -> Vec<Form> {
        (0..self.nvars()).map(|i| self.partial(i)).collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, FormError> {
        if point.len() != self.nvars() {
            return Err(FormError::ArityMismatch { expected: self.nvars(), got: point.len() });
        }
        Ok(self.poly.evaluate(point))
    }

    /// Replaces `x_i` by `images[i]`. The images share one variable list
    /// (possibly different from ours) and one degree `e`; the result has
    /// degree `deg f · e`.
    pub fn substitute(&self, images: &[Form]) -> Result<Form, FormError> {
        if images.len() != self.nvars() {
            return Err(FormError::ArityMismatch { expected: self.nvars(), got: images.len() });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let e = common_degree(images.iter().map(|f| (f.is_zero(), f.degree)))?.unwrap_or(first.degree);
        for img in images {
            img.same_ring(first)?;
        }
        let polys: Vec<Poly> = images.iter().map(|f| f.poly.clone()).collect();
        Ok(Form { vars: first.vars.clone(), degree: self.degree * e, poly: self.poly.compose(&polys) })
    }

    /// Replaces `x_i` by the quotient `images[i].num / images[i].den` and
    /// clears denominators. Fails with `NonPolynomialResult` unless the
    /// result is a polynomial.
    pub fn substitute_rational(&self, images: &[RationalImage]) -> Result<Form, FormError> {
        if images.len() != self.nvars() {
            return Err(FormError::ArityMismatch { expected: self.nvars(), got: images.len() });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.num.vars.clone();
        for img in images {
            img.num.same_ring(&first.num)?;
            img.den.same_ring(&first.num)?;
            if img.den.is_zero() {
                return Err(FormError::NonPolynomialResult("zero denominator".into()));
            }
        }
        let mut e: Option<i64> = None;
        for im in images.iter().filter(|im| !im.num.is_zero()) {
            let d = im.num.degree as i64 - im.den.degree as i64;
            match e {
                None => e = Some(d),
                Some(s) if s != d => {
                    return Err(FormError::NonPolynomialResult(format!("image degrees {s} and {d} differ")))
                }
                _ => {}
            }
        }
        let mut dens: Vec<&Poly> = Vec::new();
        for img in images {
            if !dens.contains(&&img.den.poly) {
                dens.push(&img.den.poly);
            }
        }
        let n = target.len();
        let common = dens.iter().fold(Poly::one(n), |acc, d| acc.mul(d));
        let numerators: Vec<Poly> = images
            .iter()
            .map(|im| {
                let other = common.div_exact(&im.den.poly).expect("denominator divides the product");
                im.num.poly.mul(&other)
            })
            .collect();
        let top = self.poly.compose(&numerators);
        let bottom = common.pow(self.degree);
        let quotient = top
            .div_exact(&bottom)
            .ok_or_else(|| FormError::NonPolynomialResult("denominators do not cancel".into()))?;
        let degree = self.degree as i64 * e.unwrap_or(0);
        if degree < 0 && !quotient.is_zero() {
            return Err(FormError::NonPolynomialResult("negative image degree".into()));
        }
        let degree = degree.max(0) as u32;
        Form::with_degree(target, degree, quotient)
    }

    /// Same polynomial over a renamed variable list of equal length.
    pub fn rename(&self, new_vars: Vars) -> Result<Form, FormError> {
        if new_vars.len() != self.nvars() {
            return Err(FormError::ArityMismatch { expected: self.nvars(), got: new_vars.len() });
        }
        Ok(Form { vars: new_vars, degree: self.degree, poly: self.poly.clone() })
    }

    /// Moves the form into a larger (or reordered) variable list:
    /// variable `i` goes to position `map[i]` of `new_vars`.
    pub fn remap(&self, new_vars: Vars, map: &[usize]) -> Form {
        let poly = self.poly.remap(new_vars.len(), map);
        Form { vars: new_vars, degree: self.degree, poly }
    }

    /// True if variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.poly.degree_in(i) > 0
    }

    /// Applies `q` to `self` with the given action.
    pub fn act(&self, q: &OperatorPoly, action: Action) -> Result<Form, FormError> {
        if q.nvars() != self.nvars() {
            return Err(FormError::VariableMismatch {
                left: q.vars().join(","),
                right: self.vars.join(","),
            });
        }
        let divided = action == Action::Contraction;
        let mut out = Poly::zero(self.nvars());
        for (b, c) in q.as_form().poly.terms() {
            out = out.add(&self.poly.act_monomial(b, divided).scale(c));
        }
        let degree = self.degree.saturating_sub(q.degree());
        Ok(self.wrap(degree, out))
    }

    /// Number of variables actually occurring.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.involves(i)).collect()
    }
}

fn common_degree(items: impl Iterator<Item = (bool, u32)>) -> Result<Option<u32>, FormError> {
    let mut seen: Option<u32> = None;
    for (is_zero, d) in items {
        if is_zero {
            continue;
        }
        match seen {
            None => seen = Some(d),
            Some(s) if s != d => return Err(FormError::DegreeMismatch { expected: s, got: d }),
            _ => {}
        }
    }
    Ok(seen)
}

/// `q(∂/∂x_0, …, ∂/∂x_n) · f` with plain partial derivatives.
pub fn apply_operator(q: &OperatorPoly, f: &Form) -> Result<Form, FormError> {
    f.act(q, Action::Differentiation)
}

/// Quotient `num / den` of forms, used as a substitution image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalImage {
    pub num: Form,
    pub den: Form,
}

impl RationalImage {
    pub fn polynomial(num: Form) -> Self {
        let den = Form::constant(num.vars.clone(), Rational::one());
        RationalImage { num, den }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = m.render(&self.vars);
            if m.degree() == 0 {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}; deg {}]({})", self.vars.join(","), self.degree, self)
    }
}

macro_rules! form_op {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr for &Form {
            type Output = Form;
            /// Panics if the operands live over different variable lists or
            /// (for sums) have different degrees.
            fn $m(self, o: &Form) -> Form {
                let g: fn(&Form, &Form) -> Result<Form, FormError> = $body;
                g(self, o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr for Form {
            type Output = Form;
            fn $m(self, o: Form) -> Form {
                (&self).$m(&o)
            }
        }
    };
}
form_op!(Add, add, |a, b| a.checked_add(b));
form_op!(Sub, sub, |a, b| a.checked_add(&b.neg()));
form_op!(Mul, mul, |a, b| a.checked_mul(b));

/// Element of the operator ring `S = K[X_0, …, X_n]`, paired positionally
/// with the variables of the forms it acts on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperatorPoly(Form);

impl OperatorPoly {
    pub fn new(form: Form) -> Self {
        OperatorPoly(form)
    }

    pub fn parse(text: &str, op_vars: Vars) -> Result<Self, FormError> {
        Form::parse(text, op_vars).map(OperatorPoly)
    }

    pub fn monomial(op_vars: Vars, m: Monomial) -> Self {
        OperatorPoly(Form::monomial(op_vars, m, Rational::one()))
    }

    pub fn linear(op_vars: Vars, coeffs: &[Rational]) -> Self {
        OperatorPoly(Form::linear(op_vars, coeffs))
    }

    pub fn as_form(&self) -> &Form {
        &self.0
    }

    pub fn into_form(self) -> Form {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn vars(&self) -> &Vars {
        self.0.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul(&self, other: &OperatorPoly) -> OperatorPoly {
        OperatorPoly(&self.0 * &other.0)
    }

    pub fn pow(&self, e: u32) -> OperatorPoly {
        OperatorPoly(self.0.pow(e))
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Op({})", self.0)
    }
}

/// Operator variable names for a list of form variables: the Perazzo list
/// `(x0,x1,x2,u,v)` maps to `(y0,y1,y2,U,V)`; otherwise names are
/// upper-cased.
pub fn operator_vars(form_vars: &Vars) -> Vars {
    if form_vars.iter().map(String::as_str).eq(["x0", "x1", "x2", "u", "v"]) {
        return vars(&["y0", "y1", "y2", "U", "V"]);
    }
    form_vars.iter().map(|s| s.to_uppercase()).collect()
}
