//! Multivariate polynomial gcd over the rationals by primitive
//! pseudo-remainder sequences, recursing on the variables.

use crate::exactmath::Rational;
use crate::polyring::{Monomial, Poly};

fn highest_var(polys: &[&Poly]) -> Option<usize> {
    let n = polys.first()?.nvars();
    (0..n).rev().find(|&v| polys.iter().any(|p| p.degree_in(v) > 0))
}

/// Coefficients of `p` as a polynomial in `x_v`, lowest power first; each
/// coefficient no longer involves `x_v`.
fn coefficients_in(p: &Poly, v: usize) -> Vec<Poly> {
    let n = p.nvars();
    let mut out = vec![Poly::zero(n); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let k = m.exponents()[v] as usize;
        let mut e = m.exponents().to_vec();
        e[v] = 0;
        out[k].add_term(Monomial::new(e), c.clone());
    }
    out
}

fn var_power(n: usize, v: usize, k: u32) -> Monomial {
    let mut e = vec![0; n];
    e[v] = k;
    Monomial::new(e)
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// Gcd of the coefficients of `p` in `x_v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    coefficients_in(p, v).iter().fold(Poly::zero(p.nvars()), |g, c| poly_gcd(&g, c))
}

/// Pseudo-remainder of `a` by `b` in `x_v`.
fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = coefficients_in(b, v).pop().expect("nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = coefficients_in(&r, v).pop().expect("nonzero");
        let shifted = b.mul(&lr).mul_term(&var_power(a.nvars(), v, dr - db), &one());
        r = r.mul(&lb).sub(&shifted);
    }
    r
}

/// Greatest common divisor, normalized by [`Poly::primitive`]; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let Some(v) = highest_var(&[a, b]) else {
        return Poly::one(a.nvars());
    };
    if a.degree_in(v) == 0 {
        return poly_gcd(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return poly_gcd(&content_in(a, v), b);
    }
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let c = poly_gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_remainder(&p, &q, v);
        if r.is_zero() {
            return c.mul(&q).primitive();
        }
        if r.degree_in(v) == 0 {
            return c.primitive();
        }
        p = q;
        q = r.div_exact(&content_in(&r, v)).expect("content divides");
    }
}

/// Gcd of a list, ignoring zero entries.
pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Option<Poly> {
    polys.into_iter().filter(|p| !p.is_zero()).fold(None, |acc: Option<Poly>, p| {
        Some(match acc {
            None => p.primitive(),
            Some(g) => poly_gcd(&g, p),
        })
    })
}
