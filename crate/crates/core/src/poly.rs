//! Dense complex polynomials with a fixed nominal degree.

use crate::linalg::{c64, C64, ZERO};

/// Coefficients in ascending powers. The nominal degree is `coeffs.len() - 1`
/// even when the leading coefficients vanish; the deficit counts roots at
/// infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<C64>,
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<C64>) -> Self {
        if coeffs.is_empty() {
            return Self { coeffs: vec![ZERO] };
        }
        Self { coeffs }
    }

    pub fn zero(nominal_degree: usize) -> Self {
        Self {
            coeffs: vec![ZERO; nominal_degree + 1],
        }
    }

    /// `prod (z - r_i)` for finite roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = Self::new(vec![c64(1.0, 0.0)]);
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, c64(1.0, 0.0)]));
        }
        p
    }

    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.coeffs.get(i).copied().unwrap_or(ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|z| *z == ZERO)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * z).collect(),
        }
    }

    /// Pads with zeros or drops the top coefficients.
    pub fn with_nominal_degree(&self, degree: usize) -> Self {
        Self {
            coeffs: (0..=degree).map(|i| self.coeff(i)).collect(),
        }
    }

    /// Rescaled so that the largest-modulus coefficient is exactly 1.
    pub fn normalized(&self) -> Self {
        match self.pivot() {
            Some(p) => {
                let c = self.coeffs[p];
                let mut out = self.scale(c.inv());
                out.coeffs[p] = c64(1.0, 0.0);
                out
            }
            None => self.clone(),
        }
    }

    fn pivot(&self) -> Option<usize> {
        let top = self.max_abs();
        if top == 0.0 {
            return None;
        }
        self.coeffs.iter().position(|z| z.norm() == top)
    }

    /// Projective distance: both polynomials are divided by their coefficient
    /// at the pivot of `self` and compared entrywise.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let (Some(p), Some(_)) = (self.pivot(), other.pivot()) else {
            return if self.is_zero() && other.is_zero() {
                0.0
            } else {
                f64::INFINITY
            };
        };
        let a = self.scale(self.coeffs[p].inv());
        let q = other.coeff(p);
        if q == ZERO {
            return f64::INFINITY;
        }
        let b = other.scale(q.inv());
        let n = a.coeffs.len().max(b.coeffs.len());
        (0..n)
            .map(|i| (a.coeff(i) - b.coeff(i)).norm())
            .fold(0.0, f64::max)
    }
}
