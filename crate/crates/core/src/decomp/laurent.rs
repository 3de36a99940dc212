//! Laurent polynomials with exact coefficients.

use num_traits::Num;

/// `sum_i coeffs[i] t^(low + i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<T> {
    low: i64,
    coeffs: Vec<T>,
}

impl<T: Num + Clone> Laurent<T> {
    pub fn new(low: i64, coeffs: Vec<T>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, T::one())
    }

    pub fn monomial(exp: i64, c: T) -> Self {
        Self::new(exp, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> T {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            return T::zero();
        }
        self.coeffs[i as usize].clone()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        Self::new(
            low,
            (low..=high)
                .map(|e| self.coeff(e) + other.coeff(e))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.low,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(self.low + other.low, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return None;
        }
        let lead = d.coeffs[dl - 1].clone();
        let qlen = rem.len() - dl + 1;
        let mut q = vec![T::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dl - 1].clone();
            if top.is_zero() {
                continue;
            }
            let f = top.clone() / lead.clone();
            if f.clone() * lead.clone() != top {
                return None;
            }
            for (t, dc) in d.coeffs.iter().enumerate() {
                rem[i + t] = rem[i + t].clone() - f.clone() * dc.clone();
            }
            q[i] = f;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.low - d.low, q))
    }
}
