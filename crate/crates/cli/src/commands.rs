//! One function per subcommand, each mapping parsed input documents to an
//! output document.

use std::path::Path;
use std::str::FromStr;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;

use stellar::decomp::{decompose_plane, multiplicities, MultiplicityMethod};
use stellar::grassmann::{frame_inner, plucker, plucker_residual, KFrame};
use stellar::linalg::{c64, CMat};
use stellar::majorana::{constellation_of_state, Constellation};
use stellar::multicon::{multiconstellation, ComponentStatus, Multiconstellation};
use stellar::principal::{
    principal, route_disagreement, schubert_count, PrincipalResult, PrincipalRoute,
};
use stellar::spin::{RotationSpec, SpinLabel};

use crate::document::*;
use crate::error::CliError;

/// Principal routes agree when their projective distance is at most this.
pub const ROUTE_TOL: f64 = 1e-7;
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const CAUCHY_BINET_TOL: f64 = 1e-9;
/// Largest star displacement, in radians, accepted as rigid rotation.
pub const COVARIANCE_TOL: f64 = 1e-7;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteChoice {
    One(PrincipalRoute),
    All,
}

impl FromStr for RouteChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "all" {
            return Ok(Self::All);
        }
        PrincipalRoute::from_str(s)
            .map(Self::One)
            .map_err(|_| CliError::Input(format!("unknown route {s:?}")))
    }
}

pub fn parse_method(s: &str) -> Result<MultiplicityMethod, CliError> {
    match s {
        "genfun" => Ok(MultiplicityMethod::GeneratingFunction),
        "char" => Ok(MultiplicityMethod::Character),
        "basis" => Ok(MultiplicityMethod::Basis),
        _ => Err(CliError::Input(format!("unknown method {s:?}"))),
    }
}

fn method_name(m: MultiplicityMethod) -> &'static str {
    match m {
        MultiplicityMethod::GeneratingFunction => "genfun",
        MultiplicityMethod::Character => "char",
        MultiplicityMethod::Basis => "basis",
    }
}

pub fn cmd_constellation(doc: &StateDocument) -> Result<ConstellationDocument, CliError> {
    let psi = doc.to_state()?;
    let c = constellation_of_state(&psi)?;
    let meta = Metadata::new(input_hash(doc))
        .with_tolerance("star_merge", stellar::majorana::STAR_MERGE_TOL);
    let mut out = ConstellationDocument::new(ConstellationKind::Majorana, &c, meta);
    out.two_j = Some(doc.two_s);
    Ok(out)
}

fn principal_document(hash: &str, r: &PrincipalResult) -> ConstellationDocument {
    let meta = Metadata::new(hash.to_string())
        .with_route(r.route.name())
        .with_tolerance("star_merge", stellar::majorana::STAR_MERGE_TOL);
    let mut out = ConstellationDocument::new(ConstellationKind::Principal, &r.constellation, meta);
    out.degree = Some(r.poly.nominal_degree() as u32);
    out.coefficients = Some(r.poly.coeffs().iter().map(|&z| to_pair(z)).collect());
    out.degenerate = r.degenerate;
    out
}

pub fn cmd_principal(
    doc: &PlaneDocument,
    route: RouteChoice,
) -> Result<Vec<ConstellationDocument>, CliError> {
    let plane = doc.to_plane()?;
    let hash = input_hash(doc);
    let results = match route {
        RouteChoice::One(r) => vec![principal(&plane, r)?],
        RouteChoice::All => stellar::principal::principal_all(&plane)?,
    };
    Ok(results
        .iter()
        .map(|r| principal_document(&hash, r))
        .collect())
}

pub fn cmd_decompose(doc: &PlaneDocument) -> Result<DecompositionDocument, CliError> {
    let plane = doc.to_plane()?;
    let components = decompose_plane(&plane)?
        .into_iter()
        .map(|c| ComponentRecord {
            two_j: c.two_j,
            copy: c.copy,
            norm: c.state.norm(),
            amplitudes: c.state.coeffs().iter().map(|&z| to_pair(z)).collect(),
        })
        .collect();
    Ok(DecompositionDocument {
        schema: SCHEMA.into(),
        two_s: doc.two_s,
        k: doc.k,
        components,
        metadata: Metadata::new(input_hash(doc)),
    })
}

fn status_name(s: ComponentStatus) -> (&'static str, Option<String>) {
    match s {
        ComponentStatus::Gauged => ("gauged", None),
        ComponentStatus::Scalar => ("scalar", None),
        ComponentStatus::Absent => ("absent", None),
        ComponentStatus::NotApplicable(r) => ("not_applicable", Some(r.to_string())),
    }
}

pub fn multicon_document(doc: &PlaneDocument, mc: &Multiconstellation) -> MulticonDocument {
    let components = mc
        .components
        .iter()
        .map(|c| {
            let (status, reason) = status_name(c.status);
            MultiComponentRecord {
                two_j: c.two_j,
                copy: c.copy,
                norm: c.norm,
                status: status.into(),
                reason,
                z: c.z.map(to_pair),
                stars: c.constellation.as_ref().map(star_records),
                warnings: c.warnings.iter().map(|w| w.to_string()).collect(),
            }
        })
        .collect();
    MulticonDocument {
        schema: SCHEMA.into(),
        two_s: doc.two_s,
        k: doc.k,
        complete: mc.is_complete(),
        components,
        spectator_state: mc
            .spectator_state
            .as_ref()
            .map(|z| z.values().iter().map(|&v| to_pair(v)).collect()),
        spectator: mc.spectator.as_ref().map(star_records),
        metadata: Metadata::new(input_hash(doc))
            .with_tolerance("gauge", stellar::multicon::GAUGE_TOL)
            .with_tolerance("absent", stellar::multicon::ABSENT_TOL),
    }
}

pub fn cmd_multicon(
    doc: &PlaneDocument,
) -> Result<(MulticonDocument, Multiconstellation), CliError> {
    let plane = doc.to_plane()?;
    let mc = multiconstellation(&plane)?;
    Ok((multicon_document(doc, &mc), mc))
}

/// The not-applicable flag of a multiconstellation, if any, as an error.
pub fn multicon_flag(mc: &Multiconstellation) -> Option<CliError> {
    let flagged: Vec<String> = mc
        .not_applicable()
        .map(|(c, r)| format!("2j = {} copy {}: {r}", c.two_j, c.copy))
        .collect();
    (!flagged.is_empty()).then(|| CliError::NotApplicable(flagged.join("; ")))
}

pub fn cmd_multiplicities(
    two_s: u32,
    k: usize,
    method: MultiplicityMethod,
) -> Result<MultiplicityDocument, CliError> {
    let t = multiplicities(SpinLabel::from_twice(two_s), k, method)?;
    Ok(MultiplicityDocument {
        schema: SCHEMA.into(),
        two_s,
        k,
        method: method_name(method).into(),
        entries: t
            .entries()
            .iter()
            .map(|&(two_j, multiplicity)| MultiplicityEntry {
                two_j,
                multiplicity,
            })
            .collect(),
        dimension: t.dimension().to_string(),
    })
}

pub fn cmd_schubert(two_s: u32, k: usize) -> Result<SchubertDocument, CliError> {
    let count = schubert_count(SpinLabel::from_twice(two_s), k)?;
    Ok(SchubertDocument {
        schema: SCHEMA.into(),
        two_s,
        k,
        count: count.to_string(),
    })
}

fn check(name: &str, value: f64, tolerance: f64) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        passed: value <= tolerance,
        value,
        tolerance,
    }
}

fn random_rotation(rng: &mut ChaCha8Rng) -> RotationSpec {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() > 0.1 {
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            return RotationSpec::new(v, angle).expect("axis is nonzero");
        }
    }
}

fn mismatch(a: &Constellation, b: &Constellation) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    a.max_angle_mismatch(b).unwrap_or(f64::INFINITY)
}

/// Cross-checks on one plane. Every stochastic ingredient is drawn from `seed`.
pub fn cmd_verify(doc: &PlaneDocument, seed: u64) -> Result<VerifyReport, CliError> {
    let frame = doc.to_frame()?;
    let plane = doc.to_plane()?;
    let s = plane.spin();
    let k = plane.k();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let routes = stellar::principal::principal_all(&plane)?;
    checks.push(check(
        "principal_route_agreement",
        route_disagreement(&routes),
        ROUTE_TOL,
    ));

    let pv = plucker(&frame).normalized()?;
    checks.push(check(
        "plucker_residual",
        plucker_residual(&pv).value,
        RESIDUAL_TOL,
    ));

    let other = CMat::from_fn(k, s.dim(), |_, _| {
        c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let other = KFrame::new(s, other)?;
    let direct = frame_inner(&frame, &other)?;
    let via = plucker(&frame).inner(&plucker(&other));
    let scale = plucker(&frame).norm() * plucker(&other).norm();
    checks.push(check(
        "cauchy_binet",
        (direct - via).norm() / scale,
        CAUCHY_BINET_TOL,
    ));

    let r = random_rotation(&mut rng);
    let moved = principal(&plane.rotated(&r)?, PrincipalRoute::Wronskian)?;
    let expect = routes[0].constellation.rotated(&r);
    checks.push(check(
        "rotation_covariance",
        mismatch(&moved.constellation, &expect),
        COVARIANCE_TOL,
    ));

    let mc = multiconstellation(&plane)?;
    let mut meta = Metadata::new(input_hash(doc))
        .with_tolerance("principal_route_agreement", ROUTE_TOL)
        .with_tolerance("plucker_residual", RESIDUAL_TOL)
        .with_tolerance("cauchy_binet", CAUCHY_BINET_TOL)
        .with_tolerance("rotation_covariance", COVARIANCE_TOL);
    meta.seed = Some(seed);
    Ok(VerifyReport {
        schema: SCHEMA.into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        spectator_state: mc
            .spectator_state
            .as_ref()
            .map(|z| z.values().iter().map(|&v| to_pair(v)).collect()),
        metadata: meta,
    })
}
