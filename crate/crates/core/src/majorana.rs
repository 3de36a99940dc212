//! Majorana polynomials, stereographic projection and constellations.

use nalgebra::Vector3;

use crate::error::{Result, StellarError};
use crate::linalg::{binomial_f64, c64, C64};
use crate::poly::ComplexPolynomial;
use crate::roots::poly_roots;
use crate::spin::{ExtComplex, RotationSpec, SpinState};

/// Two roots closer than this chordal distance become one star.
pub const STAR_MERGE_TOL: f64 = 1e-6;

/// `P(z) = sum_m (-1)^(s-m) sqrt(C(2s, s-m)) c_m z^(s+m)`, nominal degree `2s`.
pub fn majorana_polynomial(psi: &SpinState) -> Result<ComplexPolynomial> {
    if psi.norm() == 0.0 {
        return Err(StellarError::ZeroState);
    }
    let two_s = psi.spin().two_s() as usize;
    let mut coeffs = vec![c64(0.0, 0.0); two_s + 1];
    for (i, &c) in psi.coeffs().iter().enumerate() {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[two_s - i] = c * (sign * binomial_f64(two_s as u64, i as u64).sqrt());
    }
    Ok(ComplexPolynomial::new(coeffs))
}

/// Inverse of [`majorana_polynomial`]: the (unnormalised) state whose
/// Majorana polynomial is `p`.
pub fn state_from_majorana(p: &ComplexPolynomial) -> Result<SpinState> {
    let two_s = p.nominal_degree();
    let coeffs: Vec<C64> = (0..=two_s)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            p.coeff(two_s - i) / (sign * binomial_f64(two_s as u64, i as u64).sqrt())
        })
        .collect();
    SpinState::from_slice(&coeffs)
}

/// `z = tan(theta/2) e^(i phi)` mapped to the unit sphere; infinity is the south pole.
pub fn stereo_to_sphere(z: ExtComplex) -> Vector3<f64> {
    match z {
        ExtComplex::Infinity => Vector3::new(0.0, 0.0, -1.0),
        ExtComplex::Finite(z) => {
            let r2 = z.norm_sqr();
            if !r2.is_finite() {
                return Vector3::new(0.0, 0.0, -1.0);
            }
            let d = 1.0 + r2;
            Vector3::new(2.0 * z.re / d, 2.0 * z.im / d, (1.0 - r2) / d)
        }
    }
}

pub fn stereo_from_sphere(n: &Vector3<f64>) -> ExtComplex {
    let n = n.normalize();
    if n.z <= -1.0 + 1e-300 && n.x == 0.0 && n.y == 0.0 {
        return ExtComplex::Infinity;
    }
    let d = 1.0 + n.z;
    if d == 0.0 {
        return ExtComplex::Infinity;
    }
    ExtComplex::Finite(c64(n.x / d, n.y / d))
}

/// A point on the sphere carrying a multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Star {
    pub direction: Vector3<f64>,
    pub multiplicity: u32,
}

impl Star {
    /// Polar angle in `[0, pi]` and azimuth in `[0, 2 pi)`.
    pub fn spherical(&self) -> (f64, f64) {
        let n = self.direction;
        let theta = n.x.hypot(n.y).atan2(n.z);
        let mut phi = n.y.atan2(n.x);
        if phi < 0.0 {
            phi += std::f64::consts::TAU;
        }
        if phi >= std::f64::consts::TAU {
            phi = 0.0;
        }
        (theta, phi)
    }
}

/// A multiset of points on the unit sphere.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Constellation {
    stars: Vec<Star>,
}

impl Constellation {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Clusters points closer than [`STAR_MERGE_TOL`] into stars.
    pub fn from_points(points: &[Vector3<f64>]) -> Self {
        let mut groups: Vec<(Vector3<f64>, Vector3<f64>, u32)> = Vec::new();
        for p in points {
            let p = p.normalize();
            match groups
                .iter_mut()
                .find(|g| (g.0 - p).norm() <= STAR_MERGE_TOL)
            {
                Some(g) => {
                    g.1 += p;
                    g.2 += 1;
                }
                None => groups.push((p, p, 1)),
            }
        }
        let mut stars: Vec<Star> = groups
            .into_iter()
            .map(|(_, sum, m)| Star {
                direction: sum.normalize(),
                multiplicity: m,
            })
            .collect();
        stars.sort_by(|a, b| {
            let (ta, pa) = a.spherical();
            let (tb, pb) = b.spherical();
            ta.total_cmp(&tb).then(pa.total_cmp(&pb))
        });
        Self { stars }
    }

    pub fn from_roots(roots: &[ExtComplex]) -> Self {
        let pts: Vec<Vector3<f64>> = roots.iter().map(|&z| stereo_to_sphere(z)).collect();
        Self::from_points(&pts)
    }

    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn total(&self) -> u32 {
        self.stars.iter().map(|s| s.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    /// Every star repeated according to its multiplicity.
    pub fn points(&self) -> Vec<Vector3<f64>> {
        self.stars
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.direction, s.multiplicity as usize))
            .collect()
    }

    pub fn rotated(&self, r: &RotationSpec) -> Self {
        let m = r.matrix();
        Self::from_points(&self.points().iter().map(|p| m * p).collect::<Vec<_>>())
    }

    pub fn antipodal(&self) -> Self {
        Self::from_points(&self.points().iter().map(|p| -p).collect::<Vec<_>>())
    }

    /// Largest angle between matched points after a greedy closest-pair
    /// matching of the two multisets; `None` when the sizes differ.
    pub fn max_angle_mismatch(&self, other: &Constellation) -> Option<f64> {
        let a = self.points();
        let b = other.points();
        if a.len() != b.len() {
            return None;
        }
        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
        for (i, p) in a.iter().enumerate() {
            for (j, q) in b.iter().enumerate() {
                pairs.push((angle_between(p, q), i, j));
            }
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut used_a = vec![false; a.len()];
        let mut used_b = vec![false; b.len()];
        let mut worst: f64 = 0.0;
        for (ang, i, j) in pairs {
            if !used_a[i] && !used_b[j] {
                used_a[i] = true;
                used_b[j] = true;
                worst = worst.max(ang);
            }
        }
        Some(worst)
    }
}

pub fn angle_between(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

pub fn constellation_of_polynomial(p: &ComplexPolynomial) -> Result<Constellation> {
    Ok(Constellation::from_roots(&poly_roots(p)?))
}

pub fn constellation_of_state(psi: &SpinState) -> Result<Constellation> {
    constellation_of_polynomial(&majorana_polynomial(psi)?)
}
