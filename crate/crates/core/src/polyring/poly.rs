use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use crate::exactmath::{falling, Rational};

/// Sparse multivariate polynomial with rational coefficients, not
/// necessarily homogeneous. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of monomials.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree (maximum over terms); `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, `Err((a, b))` with two differing
    /// degrees otherwise. `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, (u32, u32)> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let Some(first) = it.next() else { return Ok(None) };
        match it.find(|&d| d != first) {
            Some(other) => Err((first, other)),
            None => Ok(Some(first)),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e > 0 {
                let mut ex = m.exponents().to_vec();
                ex[i] -= 1;
                out.add_term(Monomial::new(ex), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Applies the operator monomial `X^b` to this polynomial: plain
    /// differentiation when `divided` is false, the divided-power contraction
    /// `X^b · x^a = x^(a-b)` when true.
    pub fn act_monomial(&self, b: &Monomial, divided: bool) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, c) in &self.terms {
            if let Some(q) = b.quotient_of(a) {
                if divided {
                    out.add_term(q, c.clone());
                } else {
                    let factor = a
                        .exponents()
                        .iter()
                        .zip(b.exponents())
                        .fold(BigInt::one(), |acc, (&ai, &bi)| acc * falling(ai as u64, bi as u64));
                    out.add_term(q, c * Rational::from_integer(factor));
                }
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must live in the
    /// same ring; the result lives there too.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "composition arity");
        let target = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    /// Division by leading terms in the lexicographic order; if `d` divides
    /// `self` the leading term of every intermediate remainder is divisible.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading_term()?;
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = r.leading_term() {
            let m = dm.quotient_of(rm)?;
            let c = rc / dc;
            r = r.sub(&d.mul_term(&m, &c));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Moves to a ring with `new_nvars` variables; variable `i` goes to
    /// position `map[i]`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Poly {
        Poly::from_terms(new_nvars, self.terms.iter().map(|(m, c)| (m.remap(new_nvars, map), c.clone())))
    }

    /// Makes the polynomial monic with respect to its leading term.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&(Rational::one() / c)),
            None => self.clone(),
        }
    }

    /// Integer content normalization: integral coefficients, gcd 1, positive
    /// leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = crate::exactmath::denominator_lcm(self.terms.values());
        let ints: Vec<BigInt> = self.terms.values().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = crate::exactmath::content(&ints);
        let mut factor = Rational::new(l, g);
        if self.leading_term().expect("nonzero").1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }
}
