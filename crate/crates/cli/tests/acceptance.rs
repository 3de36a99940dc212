//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion listed with a known conflict still prints FAIL; the run only
//! exits nonzero on unexpected failures, or when a known failure starts passing.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stellar::decomp::{bd_basis, decompose_plane, multiplicities, wedge_rep, MultiplicityMethod};
use stellar::grassmann::{
    frame_inner, orthogonal_complement, plucker, plucker_residual, KFrame, KPlane, MultiIndexSpace,
};
use stellar::linalg::{c64, CMat, CVec, C64};
use stellar::majorana::Constellation;
use stellar::multicon::{gauge_fix_component, multiconstellation, polarization_components};
use stellar::poly::ComplexPolynomial;
use stellar::principal::{
    planes_from_quartic_32, principal, principal_all, route_disagreement, schubert_count,
    PrincipalRoute,
};
use stellar::spin::{geodesic_rotation, wigner_d, RotationSpec, SpinLabel};
use stellar_cli::document::{PlaneDocument, StateDocument};

struct Verdict {
    passed: bool,
    detail: String,
    known_conflict: Option<&'static str>,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Self {
        Self {
            passed,
            detail,
            known_conflict: None,
        }
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

fn plane_fixture(name: &str) -> KPlane {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    serde_json::from_str::<PlaneDocument>(&text)
        .unwrap()
        .to_plane()
        .unwrap()
}

fn plane_fixtures(name: &str) -> Vec<KPlane> {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    serde_json::from_str::<Vec<PlaneDocument>>(&text)
        .unwrap()
        .iter()
        .map(|d| d.to_plane().unwrap())
        .collect()
}

fn spin(two_s: u32) -> SpinLabel {
    SpinLabel::from_twice(two_s)
}

fn random_frame(rng: &mut ChaCha8Rng, two_s: u32, k: usize) -> KFrame {
    let n = two_s as usize + 1;
    let m = CMat::from_fn(k, n, |_, _| {
        c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    KFrame::new(spin(two_s), m).unwrap()
}

fn random_plane(rng: &mut ChaCha8Rng, two_s: u32, k: usize) -> KPlane {
    KPlane::from_frame(&random_frame(rng, two_s, k)).unwrap()
}

fn random_rotation(rng: &mut ChaCha8Rng) -> RotationSpec {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() > 0.1 {
            return RotationSpec::new(v, rng.gen_range(0.0..std::f64::consts::TAU)).unwrap();
        }
    }
}

/// Largest coordinate error after pairing each expected point with its nearest unused star.
fn point_error(stars: &[Vector3<f64>], expected: &[Vector3<f64>]) -> f64 {
    if stars.len() != expected.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; stars.len()];
    let mut worst: f64 = 0.0;
    for e in expected {
        let (i, _) = stars
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, s)| (i, (s - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        used[i] = true;
        worst = worst.max((stars[i] - e).amax());
    }
    worst
}

fn mismatch(a: &Constellation, b: &Constellation) -> f64 {
    a.max_angle_mismatch(b).unwrap_or(f64::INFINITY)
}

fn tetrahedron() -> Vec<Vector3<f64>> {
    let r2 = 2f64.sqrt();
    vec![
        Vector3::new(0.0, 0.0, 1.0),
        Vector3::new(2.0 * r2 / 3.0, 0.0, -1.0 / 3.0),
        Vector3::new(-r2 / 3.0, (2.0f64 / 3.0).sqrt(), -1.0 / 3.0),
        Vector3::new(-r2 / 3.0, -(2.0f64 / 3.0).sqrt(), -1.0 / 3.0),
    ]
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let text = std::fs::read_to_string(fixture("tetra_s2")).unwrap();
    let state = serde_json::from_str::<StateDocument>(&text)
        .unwrap()
        .to_state()
        .unwrap();
    let majorana = stellar::majorana::constellation_of_state(&state).unwrap();
    let state_err = point_error(&majorana.points(), &tetrahedron());

    let plane = plane_fixture("wtetra_32");
    let routes = principal_all(&plane).unwrap();
    let literal_err = routes
        .iter()
        .map(|r| point_error(&r.constellation.points(), &tetrahedron()))
        .fold(0.0, f64::max);
    let half_turn = RotationSpec::new(Vector3::z(), std::f64::consts::PI).unwrap();
    let turned: Vec<_> = tetrahedron().iter().map(|p| half_turn.apply(p)).collect();
    let congruent_err = routes
        .iter()
        .map(|r| point_error(&r.constellation.points(), &turned))
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();

    let passed = state_err <= 1e-9 && literal_err <= 1e-9 && elapsed < Duration::from_millis(100);
    Verdict {
        passed,
        detail: format!(
            "state stars err {state_err:.1e}; principal vs same tetrahedron err {literal_err:.2}; \
             vs tetrahedron turned by pi about z err {congruent_err:.1e}; {elapsed:.2?}"
        ),
        known_conflict: Some(
            "the printed principal polynomial z^4 - 2 sqrt2 z of the tetrahedral plane contradicts the Majorana \
             sign convention fixed by the state clause; all three routes give z^4 + 2 sqrt2 z",
        ),
    }
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cases = [(2, 2), (3, 2), (4, 2), (4, 3), (5, 2)];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for &(two_s, k) in &cases {
        for _ in 0..40 {
            let plane = random_plane(&mut rng, two_s, k);
            worst = worst.max(route_disagreement(&principal_all(&plane).unwrap()));
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    Verdict::new(
        worst <= 1e-7 && elapsed < Duration::from_secs(30),
        format!("{count} planes, max projective disagreement {worst:.1e}; {elapsed:.2?}"),
    )
}

fn criterion_3() -> Verdict {
    let counts: Vec<String> = [(3, 2), (4, 3), (8, 4)]
        .iter()
        .map(|&(two_s, k)| schubert_count(spin(two_s), k).unwrap().to_string())
        .collect();
    let counts_ok = counts == ["2", "5", "1662804"];

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    let mut bad_counts = 0;
    for _ in 0..100 {
        let mut coeffs: Vec<C64> = (0..4)
            .map(|_| c64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        coeffs.push(c64(1.0, 0.0));
        let quartic = ComplexPolynomial::new(coeffs.clone());
        let planes = planes_from_quartic_32(&quartic).unwrap();
        if planes.iter().map(|(_, m)| m).sum::<u32>() != 2 {
            bad_counts += 1;
        }
        for (plane, _) in &planes {
            for route in PrincipalRoute::ALL {
                let p = principal(plane, route).unwrap().poly;
                let lead = p.coeff(4);
                let err = (0..=4)
                    .map(|i| (p.coeff(i) / lead - coeffs[i]).norm())
                    .fold(0.0, f64::max);
                worst = worst.max(err);
            }
        }
    }
    Verdict::new(
        counts_ok && bad_counts == 0 && worst <= 1e-9,
        format!("Q = {counts:?}; 100 quartics, {bad_counts} with wrong plane count, max coefficient err {worst:.1e}"),
    )
}

/// Multiplicities for 2j = 2j_max, 2j_max - 2, .., listed from j = 0 or 1/2 upwards.
const TABLE: [(u32, usize, &[u64]); 10] = [
    (2, 2, &[0, 1]),
    (3, 2, &[1, 0, 1]),
    (4, 2, &[0, 1, 0, 1]),
    (5, 2, &[1, 0, 1, 0, 1]),
    (5, 3, &[0, 1, 1, 0, 1]),
    (6, 2, &[0, 1, 0, 1, 0, 1]),
    (6, 3, &[1, 0, 1, 1, 1, 0, 1]),
    (7, 2, &[1, 0, 1, 0, 1, 0, 1]),
    (7, 3, &[0, 1, 1, 1, 1, 1, 0, 1]),
    (7, 4, &[1, 0, 2, 0, 2, 1, 1, 0, 1]),
];

const METHODS: [MultiplicityMethod; 3] = [
    MultiplicityMethod::GeneratingFunction,
    MultiplicityMethod::Character,
    MultiplicityMethod::Basis,
];

/// `C(n, k)`, or `None` once it exceeds `cap`.
fn binomial_capped(n: u64, k: u64, cap: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut table_mismatches = Vec::new();
    for &(two_s, k, row) in &TABLE {
        let parity = (two_s as usize * k) % 2;
        for method in METHODS {
            let t = multiplicities(spin(two_s), k, method).unwrap();
            let found: Vec<u64> = (0..row.len())
                .map(|i| t.get((2 * i + parity) as u32))
                .collect();
            let beyond = t
                .entries()
                .iter()
                .any(|&(two_j, m)| two_j as usize >= 2 * row.len() + parity && m > 0);
            if found != row || beyond {
                table_mismatches.push(format!("({two_s}/2,{k}) {method:?}"));
            }
        }
    }

    let mut checked = 0;
    let mut dim_failures = Vec::new();
    for two_s in 1u32.. {
        let n = two_s as u64 + 1;
        if n > 500 {
            break;
        }
        for k in 1..=n {
            let Some(c) = binomial_capped(n, k, 500) else {
                continue;
            };
            for method in METHODS {
                let t = multiplicities(spin(two_s), k as usize, method).unwrap();
                checked += 1;
                if t.dimension() != c.into() {
                    dim_failures.push(format!("({two_s}/2,{k}) {method:?}"));
                }
            }
        }
    }
    let table_time = start.elapsed();

    let big = Instant::now();
    let t = multiplicities(spin(80), 3, MultiplicityMethod::GeneratingFunction).unwrap();
    let big_time = big.elapsed();
    let big_ok = t.dimension() == 85320u64.into() && big_time < Duration::from_secs(5);
    let peak = t
        .entries()
        .iter()
        .max_by_key(|&&(two_j, m)| (m, two_j))
        .copied()
        .unwrap();

    Verdict::new(
        table_mismatches.is_empty() && dim_failures.is_empty() && big_ok,
        format!(
            "table rows x 3 methods mismatches {table_mismatches:?}; {checked} dimension sums, failures \
             {dim_failures:?} ({table_time:.2?}); (40,3) max m_j = {} at 2j = {} in {big_time:.2?}",
            peak.1, peak.0
        ),
    )
}

fn real_rows(rows: &[&[f64]]) -> CMat {
    CMat::from_fn(rows.len(), rows[0].len(), |r, c| c64(rows[r][c], 0.0))
}

fn expected_u(two_s: u32) -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (a, b) = ((3.0f64 / 5.0).sqrt(), (2.0f64 / 5.0).sqrt());
    let (c, d) = (1.0 / 5f64.sqrt(), 2.0 / 5f64.sqrt());
    match two_s {
        3 => real_rows(&[
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, h, h, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, h, -h, 0.0, 0.0],
        ]),
        4 => real_rows(&[
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, a, 0.0, b, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, c, 0.0, d, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, a, b, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, b, 0.0, -a, 0.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, d, 0.0, -c, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, b, -a, 0.0, 0.0],
        ]),
        _ => unreachable!(),
    }
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut u_err: f64 = 0.0;
    let mut off_block: f64 = 0.0;
    let mut phases = Vec::new();
    for two_s in [3u32, 4] {
        let basis = bd_basis(spin(two_s), 2).unwrap();
        let want = expected_u(two_s);
        let u = basis.u();
        for block in basis.blocks() {
            let rows = block.rows();
            let overlap: C64 = rows
                .clone()
                .map(|r| u.row(r).dot(&want.row(r).conjugate()))
                .sum();
            let phase = overlap / overlap.norm();
            phases.push(format!("{}:{:.3}", block.two_j, phase.arg()));
            for r in rows {
                u_err = u_err.max((u.row(r) * phase - want.row(r)).camax());
            }
        }
        for _ in 0..10 {
            let d = u * wedge_rep(spin(two_s), 2, &random_rotation(&mut rng)) * u.adjoint();
            for (i, j) in (0..d.nrows()).flat_map(|i| (0..d.ncols()).map(move |j| (i, j))) {
                let same = basis
                    .blocks()
                    .iter()
                    .any(|b| b.rows().contains(&i) && b.rows().contains(&j));
                if !same {
                    off_block = off_block.max(d[(i, j)].norm());
                }
            }
        }
    }
    Verdict::new(
        u_err <= 1e-9 && off_block <= 1e-8,
        format!("max U entry err {u_err:.1e} after block phases {phases:?}; max off-block {off_block:.1e}"),
    )
}

fn criterion_6() -> Verdict {
    let plane = plane_fixture("vw_22");
    let parts = decompose_plane(&plane).unwrap();
    let got: Vec<C64> = parts
        .iter()
        .flat_map(|p| p.state.coeffs().iter().copied())
        .collect();
    let (r2, r3, r5) = (2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt());
    let want = [r5, 0.0, -r2, 1.0, 0.0, r5, 0.0, r3, 2.0, 0.0].map(|x| c64(x / 20f64.sqrt(), 0.0));
    let decomp_err = if got.len() == want.len() {
        got.iter()
            .zip(&want)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };

    let psi3 = &parts[0].state;
    let fix = gauge_fix_component(psi3).unwrap().fix.unwrap();
    let sev_err = (fix.sev - Vector3::new(-(3.0f64 / 50.0).sqrt(), 0.0, 7.0 / 20.0)).amax();
    let turned = psi3.apply(&wigner_d(
        psi3.spin(),
        &geodesic_rotation(&fix.sev).unwrap().inverse(),
    ));
    let pol = polarization_components(&(turned.coeffs() * turned.coeffs().adjoint()), psi3.spin())
        .unwrap();
    let rho_err = (pol.get(0, 0) - c64(13.0 / (20.0 * 7f64.sqrt()), 0.0))
        .norm()
        .max((pol.get(1, 0) - c64((73.0f64 / 7.0).sqrt() / 40.0, 0.0)).norm());

    let mc = multiconstellation(&plane).unwrap();
    let z = mc
        .spectator_state
        .as_ref()
        .map(|s| s.values().to_vec())
        .unwrap_or_default();
    let z_err = if z.len() == 2 {
        (z[0] - c64((13.0f64 / 20.0).sqrt(), 0.0))
            .norm()
            .max((z[1] - c64(0.0, (7.0f64 / 20.0).sqrt())).norm())
    } else {
        f64::INFINITY
    };
    let worst = decomp_err.max(sev_err).max(rho_err).max(z_err);
    Verdict::new(
        worst <= 1e-9,
        format!(
            "decomposition {decomp_err:.1e}, SEV {sev_err:.1e}, rho00/rho10 {rho_err:.1e}, Z {z_err:.1e}; Z = {z:.6?}"
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = [(3u32, 2usize), (4, 2), (5, 2), (4, 3), (6, 2)];
    let mut cov: f64 = 0.0;
    let mut z_drift: f64 = 0.0;
    let mut incomplete = 0;
    for p in 0..20 {
        let (two_s, k) = cases[p % cases.len()];
        let plane = random_plane(&mut rng, two_s, k);
        let base_principal = principal(&plane, PrincipalRoute::Wronskian)
            .unwrap()
            .constellation;
        let base = multiconstellation(&plane).unwrap();
        for _ in 0..20 {
            let r = random_rotation(&mut rng);
            let moved = plane.rotated(&r).unwrap();
            let pc = principal(&moved, PrincipalRoute::Wronskian)
                .unwrap()
                .constellation;
            cov = cov.max(mismatch(&pc, &base_principal.rotated(&r)));
            let mc = multiconstellation(&moved).unwrap();
            for (a, b) in base.components.iter().zip(&mc.components) {
                if let (Some(ca), Some(cb)) = (&a.constellation, &b.constellation) {
                    cov = cov.max(mismatch(cb, &ca.rotated(&r)));
                }
            }
            match (&base.spectator_state, &mc.spectator_state) {
                (Some(za), Some(zb)) => {
                    for (x, y) in za.values().iter().zip(zb.values()) {
                        z_drift = z_drift.max((x - y).norm());
                    }
                }
                _ => incomplete += 1,
            }
        }
    }

    let mut antipodal: f64 = 0.0;
    let mut residual: f64 = 0.0;
    let mut cauchy_binet: f64 = 0.0;
    for p in 0..20 {
        let (two_s, k) = cases[p % cases.len()];
        let frame = random_frame(&mut rng, two_s, k);
        let plane = KPlane::from_frame(&frame).unwrap();
        let perp = orthogonal_complement(&plane).unwrap();
        let a = principal(&plane, PrincipalRoute::Wronskian)
            .unwrap()
            .constellation;
        let b = principal(&perp, PrincipalRoute::Wronskian)
            .unwrap()
            .constellation;
        antipodal = antipodal.max(mismatch(&b, &a.antipodal()));
        residual = residual.max(plucker_residual(&plucker(&frame).normalized().unwrap()).value);
        let other = random_frame(&mut rng, two_s, k);
        let direct = frame_inner(&frame, &other).unwrap();
        let (pa, pb) = (plucker(&frame), plucker(&other));
        cauchy_binet = cauchy_binet.max((direct - pa.inner(&pb)).norm() / (pa.norm() * pb.norm()));
    }

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut control_ok = true;
    let mut scalars = Vec::new();
    for plane in plane_fixtures("sigma12_32") {
        let mc = multiconstellation(&plane).unwrap();
        control_ok &= mc.not_applicable().count() > 0 && mc.spectator.is_none();
        let z = mc
            .components
            .last()
            .and_then(|c| c.z)
            .unwrap_or(c64(f64::NAN, 0.0));
        scalars.push(z);
    }
    control_ok &= scalars.len() == 2
        && (scalars[0] - c64(0.0, h))
            .norm()
            .min((scalars[0] + c64(0.0, h)).norm())
            < 1e-9
        && (scalars[0] + scalars[1]).norm() < 1e-9;

    let passed = cov <= 1e-7
        && z_drift <= 1e-7
        && incomplete == 0
        && antipodal <= 1e-7
        && residual <= 1e-10
        && cauchy_binet <= 1e-9
        && control_ok;
    Verdict::new(
        passed,
        format!(
            "covariance {cov:.1e} rad, Z drift {z_drift:.1e} ({incomplete} incomplete), antipodality {antipodal:.1e} rad, \
             residual {residual:.1e}, Cauchy-Binet {cauchy_binet:.1e}, negative control {}",
            if control_ok { "flagged with spin-0 amplitudes +-i/sqrt2" } else { "wrong" }
        ),
    )
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let s = spin(7);
    let basis = bd_basis(s, 4).unwrap();
    let space = MultiIndexSpace::new(8, 4);
    let wedge = |terms: &[(f64, [usize; 4])]| {
        let mut v = CVec::zeros(space.len());
        for (c, idx) in terms {
            v[space.position(idx).unwrap()] = c64(*c, 0.0);
        }
        v
    };
    let (r3, r105) = (3f64.sqrt(), 105f64.sqrt());
    let psi1 = wedge(&[
        (7.0 * r3, [0, 1, 4, 5]),
        (-14.0, [0, 2, 3, 5]),
        (2.0 * r105, [1, 2, 3, 4]),
    ]);
    let psi2 = wedge(&[
        (2.0 * r105, [0, 1, 2, 7]),
        (-14.0, [0, 1, 3, 6]),
        (7.0 * r3, [0, 1, 4, 5]),
    ]);

    let g = CMat::from_columns(&[psi1.clone(), psi2.clone()]);
    let gram_inv = (g.adjoint() * &g).try_inverse().unwrap();
    let mut ratios = Vec::new();
    let mut off_span: f64 = 0.0;
    for copy in 0..2 {
        let block = basis
            .blocks()
            .iter()
            .find(|b| b.two_j == 8 && b.copy == copy)
            .unwrap();
        let v: CVec = basis.u().row(block.offset).adjoint();
        let coeffs = &gram_inv * g.adjoint() * &v;
        off_span = off_span.max((&g * &coeffs - &v).norm());
        ratios.push(coeffs[1] / coeffs[0]);
    }
    let want = (-109.0 + 4.0 * 715f64.sqrt()) / 21.0;
    let err = (ratios[0] - c64(want, 0.0)).norm();

    // <Q2> over alpha psi1 + beta psi2 as a generalized 2x2 eigenproblem det(Q - l G) = 0.
    let q2: Vec<f64> = space
        .indices()
        .iter()
        .map(|idx| idx.iter().map(|&i| s.m_at(i).powi(2)).sum())
        .collect();
    let q =
        |a: &CVec, b: &CVec| -> f64 { (0..a.len()).map(|i| (a[i].conj() * b[i]).re * q2[i]).sum() };
    let gram = |a: &CVec, b: &CVec| -> f64 { a.dotc(b).re };
    let (q11, q12, q22) = (q(&psi1, &psi1), q(&psi1, &psi2), q(&psi2, &psi2));
    let (g11, g12, g22) = (gram(&psi1, &psi1), gram(&psi1, &psi2), gram(&psi2, &psi2));
    let (qa, qb, qc) = (
        g11 * g22 - g12 * g12,
        -(q11 * g22 + q22 * g11 - 2.0 * q12 * g12),
        q11 * q22 - q12 * q12,
    );
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let (lmax, lmin) = ((-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa));
    let ratio_at = |l: f64| -(q11 - l * g11) / (q12 - l * g12);
    let elapsed = start.elapsed();

    Verdict {
        passed: err <= 1e-8 && off_span <= 1e-9 && elapsed < Duration::from_secs(60),
        detail: format!(
            "maximiser beta/alpha = {:.12} (target {want:.12}); second canonical vector {:.12}; \
             direct: max <Q2> = {lmax:.6} at {:.12}, min <Q2> = {lmin:.6} at {:.12}; distance from span {off_span:.1e}; \
             {elapsed:.2?}",
            ratios[0].re,
            ratios[1].re,
            ratio_at(lmax),
            ratio_at(lmin)
        ),
        known_conflict: Some(
            "the target ratio is that of the <Q2> minimiser (equivalently alpha/beta of the maximiser); the \
             maximiser's beta/alpha is its reciprocal",
        ),
    }
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        ("tetrahedral fixtures", criterion_1),
        ("three-route principal agreement", criterion_2),
        ("Schubert counts and quartic inversion", criterion_3),
        ("multiplicity tables", criterion_4),
        ("block diagonalization", criterion_5),
        ("two-pair worked example", criterion_6),
        ("property suites", criterion_7),
        ("degenerate canonical basis", criterion_8),
    ];
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let v = run();
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {} [{status}] {title}: {}", i + 1, v.detail);
        match (v.passed, v.known_conflict) {
            (false, Some(why)) => println!("    known conflict: {why}"),
            (true, Some(_)) => {
                println!("    known conflict no longer reproduces");
                unexpected += 1;
            }
            (false, None) => unexpected += 1,
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected outcome(s)");
        std::process::exit(1);
    }
}
