//! Principal polynomial and principal constellation of a plane, by three
//! independent routes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::decomp::decompose_plane;
use crate::error::{Result, StellarError};
use crate::grassmann::{standard_form, KFrame, KPlane};
use crate::linalg::{c64, det, CMat, CVec, C64, EPS_RANK, ZERO};
use crate::majorana::{
    constellation_of_polynomial, majorana_polynomial, stereo_to_sphere, Constellation,
};
use crate::poly::ComplexPolynomial;
use crate::spin::{geodesic_rotation, wigner_d, ExtComplex, SpinLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrincipalRoute {
    Wronskian,
    Sampled,
    TopComponent,
}

impl PrincipalRoute {
    pub const ALL: [PrincipalRoute; 3] = [Self::Wronskian, Self::Sampled, Self::TopComponent];

    pub fn name(self) -> &'static str {
        match self {
            Self::Wronskian => "wronskian",
            Self::Sampled => "sampled",
            Self::TopComponent => "top",
        }
    }
}

impl fmt::Display for PrincipalRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrincipalRoute {
    type Err = StellarError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| StellarError::InvalidInput(format!("unknown route {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalResult {
    pub route: PrincipalRoute,
    /// Nominal degree `k (2s + 1 - k)`, normalised projectively.
    pub poly: ComplexPolynomial,
    pub constellation: Constellation,
    /// Set when the polynomial vanished identically; the constellation is
    /// then empty.
    pub degenerate: bool,
}

/// `k (2s + 1 - k)`.
pub fn principal_degree(s: SpinLabel, k: usize) -> usize {
    k * (s.dim() - k)
}

fn finish(route: PrincipalRoute, poly: ComplexPolynomial) -> Result<PrincipalResult> {
    if poly.max_abs() == 0.0 {
        return Ok(PrincipalResult {
            route,
            poly,
            constellation: Constellation::empty(),
            degenerate: true,
        });
    }
    let poly = poly.normalized();
    let constellation = constellation_of_polynomial(&poly)?;
    Ok(PrincipalResult {
        route,
        poly,
        constellation,
        degenerate: false,
    })
}

/// Determinant of a square matrix of polynomials, expanded over column
/// subsets so that only exact ring operations on coefficients occur.
fn polynomial_det(m: &[Vec<ComplexPolynomial>]) -> ComplexPolynomial {
    let k = m.len();
    let mut table: Vec<Option<ComplexPolynomial>> = vec![None; 1 << k];
    table[0] = Some(ComplexPolynomial::new(vec![c64(1.0, 0.0)]));
    for mask in 0usize..(1 << k) {
        let Some(acc) = table[mask].clone() else {
            continue;
        };
        let row = mask.count_ones() as usize;
        if row == k {
            continue;
        }
        for col in 0..k {
            if mask & (1 << col) != 0 {
                continue;
            }
            let inversions = (mask >> (col + 1)).count_ones();
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            let term = acc.mul(&m[row][col]).scale(c64(sign, 0.0));
            let slot = &mut table[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(prev) => prev.add(&term),
                None => term,
            });
        }
    }
    table[(1 << k) - 1].take().expect("full mask reached")
}

/// Wronskian of the Majorana polynomials of the frame rows.
pub fn principal_wronskian(frame: &KFrame) -> Result<PrincipalResult> {
    let k = frame.k();
    let deg = principal_degree(frame.spin(), k);
    let mut m: Vec<Vec<ComplexPolynomial>> = Vec::with_capacity(k);
    for mu in 0..k {
        let mut p = majorana_polynomial(&frame.row_state(mu))?;
        let mut row = Vec::with_capacity(k);
        for _ in 0..k {
            row.push(p.clone());
            p = p.derivative();
        }
        m.push(row);
    }
    finish(
        PrincipalRoute::Wronskian,
        polynomial_det(&m).with_nominal_degree(deg),
    )
}

/// Standard representative, in the leading chart, of the coherent plane
/// along the stereographic image of `zeta`.
fn coherent_chart(s: SpinLabel, k: usize, zeta: C64) -> Result<CMat> {
    let n = stereo_to_sphere(ExtComplex::Finite(zeta));
    let d = wigner_d(s, &geodesic_rotation(&n)?);
    let rows = d.columns(0, k).transpose();
    let lead = rows.columns(0, k).into_owned();
    let minor = det(&lead).norm();
    let scale = rows.row_iter().map(|r| r.norm()).product::<f64>();
    if minor < EPS_RANK * scale {
        return Err(StellarError::ChartSingularity);
    }
    let inv = lead.try_inverse().ok_or(StellarError::ChartSingularity)?;
    Ok(inv * rows)
}

/// Samples `z^deg <V_(-n(z))|W>` on a circle and interpolates.
pub fn principal_sampled(plane: &KPlane) -> Result<PrincipalResult> {
    let s = plane.spin();
    let k = plane.k();
    let deg = principal_degree(s, k);
    let w = plane.representative().rows();
    let nodes = deg + 1;
    let mut radius = 1.3;
    for _attempt in 0..6 {
        match sample_and_solve(s, k, w, deg, nodes, radius) {
            Ok(poly) => return finish(PrincipalRoute::Sampled, poly),
            Err(StellarError::ChartSingularity) => radius *= 1.07,
            Err(e) => return Err(e),
        }
    }
    Err(StellarError::ChartSingularity)
}

fn sample_and_solve(
    s: SpinLabel,
    k: usize,
    w: &CMat,
    deg: usize,
    nodes: usize,
    radius: f64,
) -> Result<ComplexPolynomial> {
    let mut vander = CMat::zeros(nodes, nodes);
    let mut rhs = CVec::zeros(nodes);
    for j in 0..nodes {
        let z = C64::from_polar(
            radius,
            std::f64::consts::TAU * j as f64 / nodes as f64 + 0.1,
        );
        let antipode = -z.conj().inv();
        let v = coherent_chart(s, k, antipode)?;
        let overlap = det(&(v.conjugate() * w.transpose()));
        rhs[j] = z.powu(deg as u32) * overlap;
        let mut zp = c64(1.0, 0.0);
        for c in 0..nodes {
            vander[(j, c)] = zp;
            zp *= z;
        }
    }
    let coeffs = vander
        .lu()
        .solve(&rhs)
        .ok_or_else(|| StellarError::Numerical("singular interpolation system".into()))?;
    Ok(ComplexPolynomial::new(coeffs.iter().copied().collect()))
}

/// Majorana polynomial of the spin-`s_max` component of the Plücker vector.
pub fn principal_top_component(plane: &KPlane) -> Result<PrincipalResult> {
    let deg = principal_degree(plane.spin(), plane.k());
    let comps = decompose_plane(plane)?;
    let top = comps
        .iter()
        .find(|c| c.two_j as usize == deg)
        .ok_or_else(|| StellarError::Numerical("no top multiplet".into()))?;
    if top.state.norm() == 0.0 {
        return finish(PrincipalRoute::TopComponent, ComplexPolynomial::zero(deg));
    }
    finish(
        PrincipalRoute::TopComponent,
        majorana_polynomial(&top.state)?,
    )
}

pub fn principal(plane: &KPlane, route: PrincipalRoute) -> Result<PrincipalResult> {
    match route {
        PrincipalRoute::Wronskian => principal_wronskian(plane.representative()),
        PrincipalRoute::Sampled => principal_sampled(plane),
        PrincipalRoute::TopComponent => principal_top_component(plane),
    }
}

/// All three routes, run concurrently.
pub fn principal_all(plane: &KPlane) -> Result<Vec<PrincipalResult>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = PrincipalRoute::ALL
            .iter()
            .map(|&r| scope.spawn(move || principal(plane, r)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("principal route panicked"))
            .collect()
    })
}

/// Largest pairwise projective distance between route polynomials.
pub fn route_disagreement(results: &[PrincipalResult]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            worst = worst.max(a.poly.projective_distance(&b.poly));
        }
    }
    worst
}

/// Number of planes sharing a generic principal constellation:
/// `1! 2! .. (k-1)! (k k~)! / (k~! (k~+1)! .. (2s)!)`.
pub fn schubert_count(s: SpinLabel, k: usize) -> Result<BigUint> {
    let n = s.dim();
    if k == 0 || k > n {
        return Err(StellarError::InvalidInput(format!(
            "k = {k} outside 1..={n}"
        )));
    }
    let kt = n - k;
    let fact = |m: usize| (1..=m).fold(BigUint::one(), |a, i| a * BigUint::from(i));
    let num = (1..k).fold(fact(k * kt), |a, i| a * fact(i));
    let den = (kt..n).fold(BigUint::one(), |a, i| a * fact(i));
    Ok(num / den)
}

/// The spin-3/2 two-planes whose principal polynomial is the given quartic.
///
/// With standard representative rows `(1, 0, a, b)` and `(0, 1, c, d)` the
/// principal polynomial is proportional to
/// `z^4 - 2c z^3 + sqrt(3)(d - a) z^2 + 2b z + (ad - bc)`.
/// Returns one or two planes with their multiplicities.
pub fn planes_from_quartic_32(p: &ComplexPolynomial) -> Result<Vec<(KPlane, u32)>> {
    if p.nominal_degree() != 4 {
        return Err(StellarError::Shape("expected a quartic".into()));
    }
    let lead = p.coeff(4);
    if lead.norm() <= 1e-12 * p.max_abs() {
        return Err(StellarError::InvalidInput(
            "quartic must have nonzero leading coefficient".into(),
        ));
    }
    let a: Vec<C64> = (0..4).map(|i| p.coeff(i) / lead).collect();
    let c = -a[3] / 2.0;
    let b = a[1] / 2.0;
    let diff = a[2] / 3f64.sqrt();
    let constant = a[0] + b * c;
    // a^2 + diff a - constant = 0, d = a + diff.
    let disc = diff * diff + constant * 4.0;
    let root = disc.sqrt();
    let spin = SpinLabel::from_twice(3);
    let make = |m11: C64| -> Result<KPlane> {
        let m22 = m11 + diff;
        let one = c64(1.0, 0.0);
        let rows = CMat::from_row_slice(2, 4, &[one, ZERO, m11, b, ZERO, one, c, m22]);
        standard_form(&KFrame::new(spin, rows)?)
    };
    let scale = diff.norm_sqr() + constant.norm() + 1.0;
    if disc.norm() <= 1e-12 * scale {
        return Ok(vec![(make(-diff / 2.0)?, 2)]);
    }
    Ok(vec![
        (make((-diff + root) / 2.0)?, 1),
        (make((-diff - root) / 2.0)?, 1),
    ])
}
