use std::fmt;

use num_traits::ToPrimitive;

use super::ArtinianError;
use crate::exactmath::binomial;

/// Hilbert vector `(h_0, …, h_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertVector(Vec<usize>);

impl HilbertVector {
    pub fn new(values: Vec<usize>) -> Self {
        HilbertVector(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Non-decreasing up to some index, non-increasing after it.
    pub fn is_unimodal(&self) -> bool {
        let mut descending = false;
        for w in self.0.windows(2) {
            if w[1] < w[0] {
                descending = true;
            } else if w[1] > w[0] && descending {
                return false;
            }
        }
        true
    }

    /// True if `h_k = h_{k+1} = … = h_{d-k}`.
    pub fn is_flat_between(&self, k: usize, l: usize) -> bool {
        l < self.0.len() && self.0[k..=l].windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for HilbertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<usize>> for HilbertVector {
    fn from(v: Vec<usize>) -> Self {
        HilbertVector(v)
    }
}

fn binom(n: u64, k: u64) -> u64 {
    binomial(n, k).to_u64().expect("binomial fits in u64")
}

/// The `s`-th binomial expansion `m = C(m_s, s) + C(m_{s-1}, s-1) + … +
/// C(m_i, i)` with `m_s > m_{s-1} > … > m_i ≥ i ≥ 1`, as `(m_j, j)` pairs.
pub fn sth_expansion(m: u64, s: u64) -> Result<Vec<(u64, u64)>, ArtinianError> {
    if m == 0 || s == 0 {
        return Err(ArtinianError::InvalidInput("expansion needs m ≥ 1 and s ≥ 1".into()));
    }
    let mut rest = m;
    let mut out = Vec::new();
    let mut j = s;
    while rest > 0 && j > 0 {
        let mut top = j;
        while binom(top + 1, j) <= rest {
            top += 1;
        }
        out.push((top, j));
        rest -= binom(top, j);
        j -= 1;
    }
    Ok(out)
}

/// `m^<s> = C(m_s + 1, s + 1) + … + C(m_i + 1, i + 1)`; `0^<s> = 0`.
pub fn m_bracket(m: u64, s: u64) -> Result<u64, ArtinianError> {
    if m == 0 {
        return Ok(0);
    }
    Ok(sth_expansion(m, s)?.iter().map(|&(mj, j)| binom(mj + 1, j + 1)).sum())
}

/// Macaulay's condition: `h_0 = 1` and `h_{i+1} ≤ h_i^<i>` for `i ≥ 1`.
pub fn is_o_sequence(h: &HilbertVector) -> bool {
    let v = h.values();
    if v.first() != Some(&1) {
        return false;
    }
    (1..v.len().saturating_sub(1)).all(|i| {
        m_bracket(v[i] as u64, i as u64).is_ok_and(|b| v[i + 1] as u64 <= b)
    })
}

/// Symmetric, unimodal, and the first difference up to the first index `t`
/// with `h_t ≥ h_{t+1}` is an O-sequence.
pub fn is_si_sequence(h: &HilbertVector) -> bool {
    if !h.is_symmetric() || !h.is_unimodal() {
        return false;
    }
    let v = h.values();
    if v.is_empty() {
        return true;
    }
    let t = (0..v.len() - 1).find(|&i| v[i] >= v[i + 1]).unwrap_or(v.len() - 1);
    let diff: Vec<usize> = (0..=t).map(|i| if i == 0 { v[0] } else { v[i] - v[i - 1] }).collect();
    is_o_sequence(&HilbertVector(diff))
}

/// `H_A(i) = H_T(i) + H_T(t+1-i)` for `0 ≤ i ≤ t+1` (out-of-range terms 0).
pub fn stanley_doubling(ht: &HilbertVector, t: usize) -> Result<HilbertVector, ArtinianError> {
    if ht.len() != t + 1 {
        return Err(ArtinianError::LengthMismatch { expected: t + 1, got: ht.len() });
    }
    Ok(HilbertVector((0..=t + 1).map(|i| ht.get(i) + ht.get(t + 1 - i)).collect()))
}
