//! Spin labels, spin states, rotations and the spin-`s` representation.

use std::fmt;

use nalgebra::{Matrix3, Quaternion, UnitQuaternion, Vector3};

use crate::error::{Result, StellarError};
use crate::linalg::{binomial_f64, c64, CMat, CVec, C64, I, ZERO};

/// A spin `s`, stored as the integer `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLabel {
    two_s: u32,
}

impl SpinLabel {
    pub const fn from_twice(two_s: u32) -> Self {
        Self { two_s }
    }

    pub fn from_dim(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(StellarError::Shape("spin space of dimension zero".into()));
        }
        Ok(Self::from_twice((dim - 1) as u32))
    }

    pub const fn two_s(self) -> u32 {
        self.two_s
    }

    pub const fn dim(self) -> usize {
        self.two_s as usize + 1
    }

    pub fn value(self) -> f64 {
        self.two_s as f64 / 2.0
    }

    /// Magnetic quantum number at basis position `i` (position 0 is `m = s`).
    pub fn m_at(self, i: usize) -> f64 {
        self.value() - i as f64
    }

    pub fn is_half_integer(self) -> bool {
        self.two_s % 2 == 1
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_s.is_multiple_of(2) {
            write!(f, "{}", self.two_s / 2)
        } else {
            write!(f, "{}/2", self.two_s)
        }
    }
}

/// A (not necessarily normalised) vector of the spin-`s` representation in
/// the basis `|s,s>, |s,s-1>, ..., |s,-s>`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    spin: SpinLabel,
    coeffs: CVec,
}

impl SpinState {
    pub fn new(coeffs: CVec) -> Result<Self> {
        let spin = SpinLabel::from_dim(coeffs.len())?;
        if coeffs
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(StellarError::InvalidInput("non-finite amplitude".into()));
        }
        Ok(Self { spin, coeffs })
    }

    pub fn from_slice(coeffs: &[C64]) -> Result<Self> {
        Self::new(CVec::from_column_slice(coeffs))
    }

    /// The basis vector at position `i`.
    pub fn basis(spin: SpinLabel, i: usize) -> Self {
        let mut coeffs = CVec::zeros(spin.dim());
        coeffs[i] = c64(1.0, 0.0);
        Self { spin, coeffs }
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn coeffs(&self) -> &CVec {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> CVec {
        self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(StellarError::ZeroState);
        }
        Ok(Self {
            spin: self.spin,
            coeffs: self.coeffs.unscale(n),
        })
    }

    pub fn scaled(&self, z: C64) -> Self {
        Self {
            spin: self.spin,
            coeffs: &self.coeffs * z,
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SpinState) -> C64 {
        self.coeffs.dotc(&other.coeffs)
    }

    pub fn apply(&self, op: &CMat) -> Self {
        Self {
            spin: self.spin,
            coeffs: op * &self.coeffs,
        }
    }

    pub fn rotated(&self, r: &RotationSpec) -> Self {
        self.apply(&wigner_d(self.spin, r))
    }

    /// Unnormalised spin expectation value `<psi|S|psi>`.
    pub fn spin_expectation(&self) -> Vector3<f64> {
        let g = build_generators(self.spin);
        let e = |op: &CMat| self.coeffs.dotc(&(op * &self.coeffs)).re;
        Vector3::new(e(&g.sx), e(&g.sy), e(&g.sz))
    }
}

/// A point of the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtComplex {
    Finite(C64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(self) -> Option<C64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }
}

/// Spin matrices in the `|s,m>` basis with descending `m`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub sx: CMat,
    pub sy: CMat,
    pub sz: CMat,
    pub splus: CMat,
    pub sminus: CMat,
}

impl Generators {
    /// `n . S` for a real direction `n`.
    pub fn along(&self, n: &Vector3<f64>) -> CMat {
        &self.sx * c64(n.x, 0.0) + &self.sy * c64(n.y, 0.0) + &self.sz * c64(n.z, 0.0)
    }
}

pub fn build_generators(s: SpinLabel) -> Generators {
    let d = s.dim();
    let sv = s.value();
    let mut sz = CMat::zeros(d, d);
    let mut splus = CMat::zeros(d, d);
    for i in 0..d {
        let m = s.m_at(i);
        sz[(i, i)] = c64(m, 0.0);
        if i > 0 {
            // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>; |m+1> sits at position i-1.
            splus[(i - 1, i)] = c64((sv * (sv + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let sminus = splus.adjoint();
    let sx = (&splus + &sminus) * c64(0.5, 0.0);
    let sy = (&splus - &sminus) * c64(0.0, -0.5);
    Generators {
        sx,
        sy,
        sz,
        splus,
        sminus,
    }
}

/// An element of SU(2) written as a rotation by `angle` about the unit
/// `axis`. Angles live in `[0, 2pi]`; a rotation by `2pi` is `-1` in SU(2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationSpec {
    axis: Vector3<f64>,
    angle: f64,
}

impl RotationSpec {
    pub fn new(axis: Vector3<f64>, angle: f64) -> Result<Self> {
        let n = axis.norm();
        if n.is_nan() || n <= 0.0 || !n.is_finite() || !angle.is_finite() {
            return Err(StellarError::InvalidInput(
                "rotation axis must be a nonzero finite vector".into(),
            ));
        }
        Ok(Self::from_quaternion(quaternion_of(axis / n, angle)))
    }

    pub fn identity() -> Self {
        Self {
            axis: Vector3::z(),
            angle: 0.0,
        }
    }

    /// `R = Rz(alpha) Ry(beta) Rz(gamma)`.
    pub fn from_euler_zyz(alpha: f64, beta: f64, gamma: f64) -> Self {
        let q = quaternion_of(Vector3::z(), alpha)
            * quaternion_of(Vector3::y(), beta)
            * quaternion_of(Vector3::z(), gamma);
        Self::from_quaternion(q)
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn quaternion(&self) -> Quaternion<f64> {
        quaternion_of(self.axis, self.angle)
    }

    pub fn from_quaternion(q: Quaternion<f64>) -> Self {
        let q = q / q.norm();
        let v = q.imag();
        let vn = v.norm();
        let angle = 2.0 * vn.atan2(q.w);
        let axis = if vn > 1e-300 { v / vn } else { Vector3::z() };
        Self { axis, angle }
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &RotationSpec) -> Self {
        Self::from_quaternion(self.quaternion() * other.quaternion())
    }

    pub fn inverse(&self) -> Self {
        Self::from_quaternion(self.quaternion().conjugate())
    }

    /// The SO(3) image.
    pub fn matrix(&self) -> Matrix3<f64> {
        UnitQuaternion::from_quaternion(self.quaternion())
            .to_rotation_matrix()
            .into_inner()
    }

    pub fn apply(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.matrix() * v
    }
}

fn quaternion_of(axis: Vector3<f64>, angle: f64) -> Quaternion<f64> {
    let (s, c) = (0.5 * angle).sin_cos();
    Quaternion::new(c, s * axis.x, s * axis.y, s * axis.z)
}

/// `D(r) = exp(-i angle n.S)`.
pub fn wigner_d(s: SpinLabel, r: &RotationSpec) -> CMat {
    let g = build_generators(s);
    (g.along(&r.axis) * (-I * r.angle)).exp()
}

/// Normalised spin coherent state pointing along the stereographic image of `zeta`.
pub fn coherent_state(s: SpinLabel, zeta: ExtComplex) -> SpinState {
    let d = s.dim();
    let two_s = s.two_s() as u64;
    let mut coeffs = CVec::from_element(d, ZERO);
    match zeta {
        ExtComplex::Infinity => coeffs[d - 1] = c64(1.0, 0.0),
        ExtComplex::Finite(z) => {
            let r = (1.0 + z.norm_sqr()).sqrt();
            let a = z / r;
            let b = 1.0 / r;
            for i in 0..d {
                let mag = binomial_f64(two_s, i as u64).sqrt() * b.powi((two_s - i as u64) as i32);
                coeffs[i] = a.powu(i as u32) * mag;
            }
        }
    }
    SpinState { spin: s, coeffs }
}

/// Rotation about `(-sin phi, cos phi, 0)` by the polar angle of `n`, which
/// carries `+z` to `n`. For `n = -z` the axis is `+y`.
pub fn geodesic_rotation(n: &Vector3<f64>) -> Result<RotationSpec> {
    let len = n.norm();
    if len.is_nan() || len <= 0.0 || !len.is_finite() {
        return Err(StellarError::InvalidInput(
            "direction must be a nonzero finite vector".into(),
        ));
    }
    let n = n / len;
    let rho = n.x.hypot(n.y);
    let theta = rho.atan2(n.z);
    let phi = if rho > 0.0 { n.y.atan2(n.x) } else { 0.0 };
    Ok(RotationSpec {
        axis: Vector3::new(-phi.sin(), phi.cos(), 0.0),
        angle: theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, max_abs, unitarity_defect};
    use std::f64::consts::PI;

    #[test]
    fn commutation_relations() {
        for two_s in 1..7 {
            let g = build_generators(SpinLabel::from_twice(two_s));
            assert!(max_abs(&(commutator(&g.sx, &g.sy) - &g.sz * I)) < 1e-12);
            assert!(max_abs(&(commutator(&g.splus, &g.sminus) - &g.sz * c64(2.0, 0.0))) < 1e-12);
        }
    }

    #[test]
    fn full_turn_is_minus_one_for_half_integer_spin() {
        let r = RotationSpec::new(Vector3::new(0.3, -0.2, 0.9), 2.0 * PI).unwrap();
        let d = wigner_d(SpinLabel::from_twice(1), &r);
        assert!(max_abs(&(d + CMat::identity(2, 2))) < 1e-12);
        let d = wigner_d(SpinLabel::from_twice(2), &r);
        assert!(max_abs(&(d - CMat::identity(3, 3))) < 1e-12);
    }

    #[test]
    fn composition_is_a_homomorphism() {
        let a = RotationSpec::from_euler_zyz(0.3, 1.1, -2.0);
        let b = RotationSpec::new(Vector3::new(1.0, 2.0, -0.5), 5.5).unwrap();
        for two_s in [1, 3, 4] {
            let s = SpinLabel::from_twice(two_s);
            let lhs = wigner_d(s, &a) * wigner_d(s, &b);
            let rhs = wigner_d(s, &a.compose(&b));
            assert!(max_abs(&(lhs - rhs)) < 1e-11);
            assert!(unitarity_defect(&wigner_d(s, &b)) < 1e-12);
        }
        assert!(
            (a.matrix() * b.matrix() - a.compose(&b).matrix())
                .abs()
                .max()
                < 1e-12
        );
    }

    #[test]
    fn spin_half_matrix_matches_closed_form() {
        let axis = Vector3::new(0.0, 0.0, 1.0);
        let r = RotationSpec::new(axis, 0.7).unwrap();
        let d = wigner_d(SpinLabel::from_twice(1), &r);
        assert!((d[(0, 0)] - (-I * 0.35).exp()).norm() < 1e-14);
        assert!((d[(1, 1)] - (I * 0.35).exp()).norm() < 1e-14);
    }

    #[test]
    fn coherent_state_termwise() {
        let s = SpinLabel::from_twice(3);
        let z = c64(0.4, -1.3);
        let psi = coherent_state(s, ExtComplex::Finite(z));
        let pref = (1.0 + z.norm_sqr()).powf(-1.5);
        let binom: [f64; 4] = [1.0, 3.0, 3.0, 1.0];
        for i in 0..4 {
            let expect = z.powu(i as u32) * binom[i].sqrt() * pref;
            assert!((psi.coeffs()[i] - expect).norm() < 1e-14);
        }
        assert!((psi.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn geodesic_rotation_maps_north_pole() {
        let s = SpinLabel::from_twice(4);
        let n = Vector3::new(0.2, -0.7, -0.3).normalize();
        let r = geodesic_rotation(&n).unwrap();
        assert!((r.apply(&Vector3::z()) - n).norm() < 1e-14);
        let sev = SpinState::basis(s, 0).rotated(&r).spin_expectation();
        assert!((sev - n * 2.0).norm() < 1e-12);
        let south = geodesic_rotation(&-Vector3::z()).unwrap();
        assert!((south.axis() - Vector3::y()).norm() < 1e-15);
        assert!((south.angle() - PI).abs() < 1e-15);
        assert_eq!(geodesic_rotation(&Vector3::z()).unwrap().angle(), 0.0);
    }

    #[test]
    fn display() {
        assert_eq!(SpinLabel::from_twice(7).to_string(), "7/2");
        assert_eq!(SpinLabel::from_twice(4).to_string(), "2");
    }
}
