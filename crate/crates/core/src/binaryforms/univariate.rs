//! Dense univariate polynomials over the rationals and root extraction in
//! `Q(i)`, with a floating-point Aberth fallback.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactmath::{content, denominator_lcm, rational_sqrt, GaussianRational, Rational};

/// Coefficients in increasing powers, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; 0 for constants and for zero.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
    }

    pub fn monic(&self) -> QPoly {
        match self.0.last() {
            Some(l) => QPoly(self.0.iter().map(|c| c / l).collect()),
            None => self.clone(),
        }
    }

    /// `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dl = d.0.last().expect("nonzero");
        let dd = d.degree();
        if r.len() < d.0.len() {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    pub fn eval_gaussian(&self, z: &GaussianRational) -> GaussianRational {
        self.0
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * z) + &GaussianRational::real(c.clone()))
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect()
    }

    /// Integer coefficients with content 1.
    fn integral(&self) -> Vec<BigInt> {
        let l = denominator_lcm(&self.0);
        let ints: Vec<BigInt> = self.0.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = content(&ints);
        ints.into_iter().map(|x| x / &g).collect()
    }
}

fn divisors(n: &BigInt, cap: u64) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > cap {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    Some(out)
}

/// Distinct rational roots by the rational root theorem. Returns `None` when
/// the constant or leading coefficient is too large to enumerate divisors.
pub(crate) fn rational_roots(p: &QPoly) -> Option<Vec<Rational>> {
    let mut roots = Vec::new();
    let mut c = p.integral();
    if c.is_empty() {
        return Some(roots);
    }
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    if zeros > 0 {
        roots.push(Rational::zero());
        c.drain(..zeros);
    }
    if c.len() <= 1 {
        return Some(roots);
    }
    const CAP: u64 = 1_000_000_000_000;
    let ps = divisors(&c[0], CAP)?;
    let qs = divisors(c.last().expect("nonempty"), CAP)?;
    if ps.len() * qs.len() > 400_000 {
        return None;
    }
    let q = QPoly::new(c.iter().cloned().map(Rational::from_integer).collect());
    let mut seen = Vec::new();
    for &a in &ps {
        for &b in &qs {
            if a.gcd(&b) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(a) * sign, BigInt::from(b));
                if !seen.contains(&r) && q.eval(&r).is_zero() {
                    seen.push(r.clone());
                    roots.push(r);
                }
            }
        }
    }
    Some(roots)
}

/// Roots of `z² + b z + c` in `Q(i)`, if any.
fn quadratic_roots(p: &QPoly) -> Option<Vec<GaussianRational>> {
    let m = p.monic();
    let (c, b) = (&m.0[0], &m.0[1]);
    let disc = b * b - Rational::from_integer(4.into()) * c;
    let half = Rational::new(1.into(), 2.into());
    let re = -b * &half;
    if let Some(s) = rational_sqrt(&disc) {
        let s = s * &half;
        return Some(vec![GaussianRational::real(&re + &s), GaussianRational::real(&re - &s)]);
    }
    let s = rational_sqrt(&-disc)? * &half;
    Some(vec![GaussianRational::new(re.clone(), s.clone()), GaussianRational::new(re, -s)])
}

/// Continued-fraction approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if ((h1 as f64) / (k1 as f64) - x).abs() <= 1e-12 * x.abs().max(1.0) || frac.abs() < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then(|| Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// All roots of `p` in `Q(i)` when `p` splits there (assumed square-free);
/// `None` otherwise.
pub(crate) fn gaussian_roots(p: &QPoly) -> Option<Vec<GaussianRational>> {
    let mut rest = p.clone();
    let mut roots: Vec<GaussianRational> = Vec::new();
    if let Some(rs) = rational_roots(p) {
        for r in rs {
            let lin = QPoly::new(vec![-&r, Rational::one()]);
            rest = rest.div_rem(&lin).0;
            roots.push(GaussianRational::real(r));
        }
    }
    match rest.degree() {
        0 => return Some(roots),
        1 => {
            roots.push(GaussianRational::real(-&rest.0[0] / &rest.0[1]));
            return Some(roots);
        }
        2 => {
            roots.extend(quadratic_roots(&rest)?);
            return Some(roots);
        }
        _ => {}
    }
    for z in aberth(&rest.to_complex())? {
        let g = GaussianRational::new(rationalize(z.re, 1 << 30)?, rationalize(z.im, 1 << 30)?);
        if !rest.eval_gaussian(&g).is_zero() || roots.contains(&g) {
            return None;
        }
        roots.push(g);
    }
    Some(roots)
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Simultaneous root approximation (Aberth–Ehrlich). Coefficients in
/// increasing powers; returns `None` if the iteration does not settle.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().checked_sub(1)?;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = c[n];
    let radius = 1.0 + c[..n].iter().map(|a| (a / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::one() - ratio * sum);
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            *zi -= p / dp;
        }
    }
    z.iter().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(z)
}
