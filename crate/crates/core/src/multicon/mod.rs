//! Multiconstellation of a plane: one Majorana constellation per irreducible
//! component, plus a spectator state carrying their norms and relative phases.

pub mod polarization;

use std::f64::consts::{PI, TAU};
use std::fmt;

use nalgebra::{Quaternion, Vector3};

pub use polarization::{clebsch_gordan, polarization_components, PolarizationComponents};

use crate::decomp::decompose_plane;
use crate::error::{Result, StellarError};
use crate::grassmann::KPlane;
use crate::linalg::{C64, ZERO};
use crate::majorana::{constellation_of_state, Constellation};
use crate::spin::{geodesic_rotation, wigner_d, SpinLabel, SpinState};

/// Relative size, against the block norm, below which a SEV, polarization
/// component or amplitude counts as zero.
pub const GAUGE_TOL: f64 = 1e-9;

/// Components of a normalised plane with norm at most this are absent.
pub const ABSENT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotApplicable {
    VanishingSev,
    AxialSymmetry,
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::VanishingSev => "vanishing SEV",
            Self::AxialSymmetry => "axial symmetry",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaugeWarning {
    /// Spin-1 states always have a rotational symmetry.
    SpinOneSymmetry,
    /// For half-integer `j` the gauge rotation is an SU(2) element, so the
    /// sign of `z` is only fixed relative to the reference component.
    HalfIntegerSign,
}

impl fmt::Display for GaugeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SpinOneSymmetry => "spin-1 component has a rotational symmetry",
            Self::HalfIntegerSign => {
                "half-integer component: sign of z fixed relative to the reference"
            }
        })
    }
}

/// The intermediate quantities of a successful gauge fix.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFix {
    pub z: C64,
    /// Unnormalised `<psi|S|psi>`.
    pub sev: Vector3<f64>,
    pub theta: f64,
    pub phi: f64,
    /// The first `rho_(l,m)` with `m != 0` above threshold.
    pub pivot: (u32, i32),
    pub alpha: f64,
    /// Angle `gamma` of the final rotation `exp(-i gamma S_z)`.
    pub turn: f64,
    /// Every turn satisfying the gauge conditions; `turn` is one of them.
    pub admissible: Vec<f64>,
    /// The state after the first rotation, with its SEV along `+z`.
    pub aligned: SpinState,
    pub gauged: SpinState,
    first_rotation: Quaternion<f64>,
}

impl GaugeFix {
    /// The full gauge rotation `exp(-i turn S_z) R` as a unit quaternion.
    pub fn rotation(&self) -> Quaternion<f64> {
        z_quaternion(self.turn) * self.first_rotation
    }

    fn set_turn(&mut self, gamma: f64) -> Result<()> {
        let norm = self.aligned.norm();
        self.turn = gamma;
        self.gauged = z_rotate(&self.aligned, gamma);
        let lead = self
            .gauged
            .coeffs()
            .iter()
            .find(|c| c.norm() > GAUGE_TOL * norm)
            .copied()
            .ok_or_else(|| StellarError::Numerical("gauged state vanished".into()))?;
        self.z = C64::from_polar(norm, lead.arg());
        Ok(())
    }

    /// Among the admissible turns (and, for half-integer `j`, both SU(2)
    /// lifts of each) picks the one whose gauge rotation is closest to
    /// `reference`, so that components related by a common rotation get
    /// consistent signs.
    pub fn align_to(&mut self, reference: &Quaternion<f64>) -> Result<()> {
        let half = self.aligned.spin().is_half_integer();
        let lifts: &[f64] = if half { &[0.0, TAU] } else { &[0.0] };
        let mut best = (f64::NEG_INFINITY, self.turn);
        for &g in &self.admissible {
            for &lift in lifts {
                let q = z_quaternion(g + lift) * self.first_rotation * reference.conjugate();
                let score = if half { q.w } else { q.w.abs() };
                if score > best.0 + 1e-9 {
                    best = (score, g + lift);
                }
            }
        }
        self.set_turn(best.1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentGauge {
    pub constellation: Constellation,
    pub fix: std::result::Result<GaugeFix, NotApplicable>,
    pub warnings: Vec<GaugeWarning>,
}

fn z_rotate(psi: &SpinState, gamma: f64) -> SpinState {
    let spin = psi.spin();
    let coeffs = psi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| c * C64::from_polar(1.0, -gamma * spin.m_at(i)));
    SpinState::new(coeffs.collect::<Vec<_>>().into()).expect("phases keep amplitudes finite")
}

/// Narrows `gamma = (alpha + 2 pi q) / m` over the `m` branches: each later
/// component that separates the survivors keeps those with the smallest
/// `Re(v / |v|)`. More than one survivor means the rotated state has a
/// symmetry about `z`.
fn admissible_turns(
    pol: &PolarizationComponents,
    pivot: (u32, i32),
    alpha: f64,
    tol: f64,
) -> Vec<f64> {
    let m = pivot.1;
    let mut alive: Vec<f64> = (0..m)
        .map(|q| (alpha + TAU * q as f64) / m as f64)
        .collect();
    let start = PolarizationComponents::position(pivot.0, pivot.1) + 1;
    for ((_, mp), v) in pol.iter().skip(start) {
        if alive.len() == 1 {
            break;
        }
        if v.norm() <= tol || mp == 0 {
            continue;
        }
        let scores: Vec<f64> = alive
            .iter()
            .map(|&g| (v * C64::from_polar(1.0, -g * mp as f64)).re / v.norm())
            .collect();
        let best = scores.iter().cloned().fold(f64::INFINITY, f64::min);
        alive = alive
            .into_iter()
            .zip(scores)
            .filter(|&(_, s)| s <= best + 1e-9)
            .map(|(g, _)| g)
            .collect();
    }
    alive
}

fn z_quaternion(gamma: f64) -> Quaternion<f64> {
    let (s, c) = (0.5 * gamma).sin_cos();
    Quaternion::new(c, 0.0, 0.0, s)
}

pub fn gauge_fix_component(psi: &SpinState) -> Result<ComponentGauge> {
    let spin = psi.spin();
    if spin.two_s() == 0 {
        return Err(StellarError::InvalidInput(
            "gauge fixing needs j > 0".into(),
        ));
    }
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(StellarError::ZeroState);
    }
    let constellation = constellation_of_state(psi)?;
    let mut warnings = Vec::new();
    if spin.two_s() == 2 {
        warnings.push(GaugeWarning::SpinOneSymmetry);
    }
    if spin.is_half_integer() {
        warnings.push(GaugeWarning::HalfIntegerSign);
    }
    let norm2 = norm * norm;
    let sev = psi.spin_expectation();
    if sev.norm() <= GAUGE_TOL * norm2 {
        return Ok(ComponentGauge {
            constellation,
            fix: Err(NotApplicable::VanishingSev),
            warnings,
        });
    }
    let theta = sev.x.hypot(sev.y).atan2(sev.z);
    let phi = if sev.x.hypot(sev.y) > 0.0 {
        sev.y.atan2(sev.x).rem_euclid(TAU)
    } else {
        0.0
    };
    let back = geodesic_rotation(&sev)?.inverse();
    let psi1 = psi.apply(&wigner_d(spin, &back));
    let pol = polarization_components(&(psi1.coeffs() * psi1.coeffs().adjoint()), spin)?;
    let tol = GAUGE_TOL * norm2;
    let Some(((l, m), rho)) = pol.iter().find(|&((_, m), v)| m != 0 && v.norm() > tol) else {
        return Ok(ComponentGauge {
            constellation,
            fix: Err(NotApplicable::AxialSymmetry),
            warnings,
        });
    };
    let mut alpha = rho.arg();
    if alpha >= PI - 1e-12 {
        alpha = -PI;
    }
    let admissible = admissible_turns(&pol, (l, m), alpha, tol);
    let turn = admissible[0];
    let mut fix = GaugeFix {
        z: ZERO,
        sev,
        theta,
        phi,
        pivot: (l, m),
        alpha,
        turn,
        admissible,
        gauged: psi1.clone(),
        aligned: psi1,
        first_rotation: back.quaternion(),
    };
    fix.set_turn(turn)?;
    Ok(ComponentGauge {
        constellation,
        fix: Ok(fix),
        warnings,
    })
}

/// `Z = (z_(s_max), ..)`, viewed as a spin-`(len - 1)/2` state.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectatorState {
    z: Vec<C64>,
}

impl SpectatorState {
    pub fn new(z: Vec<C64>) -> Result<Self> {
        if z.is_empty() {
            return Err(StellarError::Shape(
                "spectator state needs at least one entry".into(),
            ));
        }
        Ok(Self { z })
    }

    pub fn values(&self) -> &[C64] {
        &self.z
    }

    pub fn spin(&self) -> SpinLabel {
        SpinLabel::from_twice(self.z.len() as u32 - 1)
    }

    pub fn norm(&self) -> f64 {
        self.z.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub fn spectator_constellation(z: &SpectatorState) -> Result<Constellation> {
    if z.values().len() < 2 {
        return Ok(Constellation::empty());
    }
    constellation_of_state(&SpinState::from_slice(z.values())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentStatus {
    Gauged,
    /// The spin-0 amplitude, taken as is.
    Scalar,
    Absent,
    NotApplicable(NotApplicable),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiComponent {
    pub two_j: u32,
    pub copy: usize,
    pub norm: f64,
    /// `None` for absent components and for spin 0.
    pub constellation: Option<Constellation>,
    /// `None` when gauge fixing was not applicable.
    pub z: Option<C64>,
    pub status: ComponentStatus,
    pub warnings: Vec<GaugeWarning>,
    pub gauge: Option<GaugeFix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multiconstellation {
    pub components: Vec<MultiComponent>,
    /// Present only when every `z` is known.
    pub spectator_state: Option<SpectatorState>,
    pub spectator: Option<Constellation>,
}

impl Multiconstellation {
    pub fn is_complete(&self) -> bool {
        self.spectator_state.is_some()
    }

    pub fn not_applicable(&self) -> impl Iterator<Item = (&MultiComponent, NotApplicable)> {
        self.components.iter().filter_map(|c| match c.status {
            ComponentStatus::NotApplicable(r) => Some((c, r)),
            _ => None,
        })
    }
}

fn component(two_j: u32, copy: usize, state: &SpinState) -> Result<MultiComponent> {
    let norm = state.norm();
    let base = MultiComponent {
        two_j,
        copy,
        norm,
        constellation: None,
        z: Some(ZERO),
        status: ComponentStatus::Absent,
        warnings: Vec::new(),
        gauge: None,
    };
    if two_j == 0 {
        let z = state.coeffs()[0];
        let status = if norm <= ABSENT_TOL {
            ComponentStatus::Absent
        } else {
            ComponentStatus::Scalar
        };
        return Ok(MultiComponent {
            z: Some(z),
            status,
            ..base
        });
    }
    if norm <= ABSENT_TOL {
        return Ok(base);
    }
    let g = gauge_fix_component(state)?;
    let (z, status, gauge) = match g.fix {
        Ok(fix) => (Some(fix.z), ComponentStatus::Gauged, Some(fix)),
        Err(reason) => (None, ComponentStatus::NotApplicable(reason), None),
    };
    Ok(MultiComponent {
        constellation: Some(g.constellation),
        z,
        status,
        warnings: g.warnings,
        gauge,
        ..base
    })
}

/// Decomposes the plane and gauge-fixes every component.
///
/// The reference is the first gauge-fixed component whose gauge rotation is
/// unique. Every other component picks, among its admissible gauge
/// rotations, the one closest to the reference's, and the overall phase of
/// `Z` makes the reference `z` real and positive.
pub fn multiconstellation(plane: &KPlane) -> Result<Multiconstellation> {
    let parts = decompose_plane(plane)?;
    let mut components: Vec<MultiComponent> = std::thread::scope(|scope| {
        let handles: Vec<_> = parts
            .iter()
            .map(|p| scope.spawn(move || component(p.two_j, p.copy, &p.state)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("gauge fixing panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let gauged = |c: &MultiComponent| c.gauge.is_some();
    let reference = components
        .iter()
        .position(|c| c.gauge.as_ref().is_some_and(|g| g.admissible.len() == 1))
        .or_else(|| components.iter().position(gauged));
    if let Some(r) = reference {
        let frame = components[r]
            .gauge
            .as_ref()
            .expect("reference is gauged")
            .rotation();
        for (i, c) in components.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            if let Some(g) = c.gauge.as_mut() {
                g.align_to(&frame)?;
                c.z = Some(g.z);
            }
        }
        let z = components[r].z.expect("reference has z");
        let unphase = (z / z.norm()).conj();
        for c in &mut components {
            c.z = c.z.map(|z| z * unphase);
        }
    }
    let zs: Option<Vec<C64>> = components.iter().map(|c| c.z).collect();
    let (spectator_state, spectator) = match zs {
        Some(z) => {
            let state = SpectatorState::new(z)?;
            let cons = spectator_constellation(&state)?;
            (Some(state), Some(cons))
        }
        None => (None, None),
    };
    Ok(Multiconstellation {
        components,
        spectator_state,
        spectator,
    })
}
