use std::fmt;

/// Exponent vector. The derived order is pure lexicographic on the exponent
/// sequence, so with variables `(x0, x1, ...)` we have `x0^2 > x0*x1 > x1^2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The variable `x_i` among `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Componentwise minimum (the gcd of two monomials).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Drops or inserts variables: `map[i]` is the new position of variable `i`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Monomial {
        let mut e = vec![0; new_nvars];
        for (i, &x) in self.0.iter().enumerate() {
            e[map[i]] += x;
        }
        Monomial(e)
    }

    /// Renders with the given variable names, e.g. `u^2*x`; `1` for the unit.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials of degree `k` in `nvars` variables, in decreasing
/// lexicographic order (`x0^k` first, `x_{n}^k` last).
pub fn monomials_of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, k: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(k);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(prefix, left - 1, k - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, k, &mut out);
    out
}

/// `dim K[x_0..x_{nvars-1}]_k = C(nvars-1+k, k)`.
pub fn count_of_degree(nvars: usize, k: u32) -> usize {
    if nvars == 0 {
        return usize::from(k == 0);
    }
    let n = (nvars - 1) as u64;
    use num_traits::ToPrimitive;
    crate::exactmath::binomial(n + k as u64, k as u64).to_usize().expect("dimension fits in usize")
}
