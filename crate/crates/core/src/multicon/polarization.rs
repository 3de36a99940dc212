//! Clebsch-Gordan coefficients and the expansion of a density matrix in
//! polarization tensors.
//!
//! Convention: `rho_(l,m) = Tr(rho T_(l,m)^†)` with
//! `T_(l,m) = sum_(m', m'') (-1)^(j - m'') <j m'; j -m'' | l m> |j m'><j m''|`,
//! which makes `Tr(T T'^†) = δ δ` and `rho_(0,0) = Tr(rho) / sqrt(2j + 1)`.

use std::sync::OnceLock;

use crate::error::{Result, StellarError};
use crate::linalg::{CMat, C64, ZERO};
use crate::spin::SpinLabel;

fn ln_factorial(n: i64) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![0.0; 1024];
        for i in 1..t.len() {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    });
    match table.get(n as usize) {
        Some(&v) => v,
        None => {
            table[table.len() - 1]
                + (table.len() as i64..=n)
                    .map(|i| (i as f64).ln())
                    .sum::<f64>()
        }
    }
}

/// `<j1 m1; j2 m2 | J M>` with every argument doubled, by Racah's formula
/// with the Condon-Shortley phase. Zero outside the selection rules.
pub fn clebsch_gordan(
    two_j1: i64,
    two_m1: i64,
    two_j2: i64,
    two_m2: i64,
    two_jt: i64,
    two_mt: i64,
) -> f64 {
    let parity_ok = |j: i64, m: i64| m.abs() <= j && (j + m) % 2 == 0;
    if two_m1 + two_m2 != two_mt
        || !parity_ok(two_j1, two_m1)
        || !parity_ok(two_j2, two_m2)
        || !parity_ok(two_jt, two_mt)
        || two_jt < (two_j1 - two_j2).abs()
        || two_jt > two_j1 + two_j2
        || (two_j1 + two_j2 + two_jt) % 2 != 0
    {
        return 0.0;
    }
    let h = |x: i64| x / 2;
    let (a, b, c) = (
        h(two_j1 + two_j2 - two_jt),
        h(two_j1 - two_m1),
        h(two_j2 + two_m2),
    );
    let (d, e) = (h(two_jt - two_j2 + two_m1), h(two_jt - two_j1 - two_m2));
    let lnf = ln_factorial;
    let prefactor = 0.5
        * (((two_jt + 1) as f64).ln()
            + lnf(h(two_jt + two_j1 - two_j2))
            + lnf(h(two_jt - two_j1 + two_j2))
            + lnf(a)
            - lnf(h(two_j1 + two_j2 + two_jt) + 1)
            + lnf(h(two_jt + two_mt))
            + lnf(h(two_jt - two_mt))
            + lnf(b)
            + lnf(h(two_j1 + two_m1))
            + lnf(h(two_j2 - two_m2))
            + lnf(c));
    let lo = 0.max(-d).max(-e);
    let hi = a.min(b).min(c);
    let mut sum = 0.0;
    for t in lo..=hi {
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let ln =
            prefactor - lnf(t) - lnf(a - t) - lnf(b - t) - lnf(c - t) - lnf(d + t) - lnf(e + t);
        sum += sign * ln.exp();
    }
    sum
}

/// `rho_(l,m)` for `l = 0..2j`, `m = l..-l`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationComponents {
    spin: SpinLabel,
    rho: Vec<C64>,
}

impl PolarizationComponents {
    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    /// Flat position of `(l, m)` in the canonical order.
    pub fn position(l: u32, m: i32) -> usize {
        (l * l) as usize + (l as i32 - m) as usize
    }

    pub fn get(&self, l: u32, m: i32) -> C64 {
        if l > self.spin.two_s() || m.unsigned_abs() > l {
            return ZERO;
        }
        self.rho[Self::position(l, m)]
    }

    pub fn values(&self) -> &[C64] {
        &self.rho
    }

    /// `((l, m), rho_(l,m))` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, i32), C64)> + '_ {
        (0..=self.spin.two_s())
            .flat_map(|l| (-(l as i32)..=l as i32).rev().map(move |m| (l, m)))
            .zip(self.rho.iter().copied())
    }
}

pub fn polarization_components(rho: &CMat, spin: SpinLabel) -> Result<PolarizationComponents> {
    let n = spin.dim();
    if rho.shape() != (n, n) {
        return Err(StellarError::Shape(format!(
            "density matrix is {:?}, expected {n}x{n}",
            rho.shape()
        )));
    }
    let tj = spin.two_s() as i64;
    let mut out = Vec::with_capacity(n * n);
    for l in 0..=tj {
        for m in (-l..=l).rev() {
            let mut acc = ZERO;
            // rho_(mb + m, mb); positions count down from m = j.
            for b in 0..n as i64 {
                let two_mb = tj - 2 * b;
                let two_ma = two_mb + 2 * m;
                if two_ma.abs() > tj {
                    continue;
                }
                let a = (tj - two_ma) / 2;
                let sign = if ((tj - two_mb) / 2) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                let cg = clebsch_gordan(tj, two_ma, tj, -two_mb, 2 * l, 2 * m);
                acc += rho[(a as usize, b as usize)] * (sign * cg);
            }
            out.push(acc);
        }
    }
    Ok(PolarizationComponents { spin, rho: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, hermitian_eigen_desc, CVec};
    use crate::spin::build_generators;

    #[test]
    fn stretched_and_singlet() {
        assert!((clebsch_gordan(1, 1, 1, 1, 2, 2) - 1.0).abs() < 1e-15);
        // Total S^2 on two qubits; its null vector is the singlet, phased so
        // that the |up, down> amplitude is positive.
        let g = build_generators(SpinLabel::from_twice(1));
        let id = CMat::identity(2, 2);
        let total = |a: &CMat| a.kronecker(&id) + id.kronecker(a);
        let (sx, sy, sz) = (total(&g.sx), total(&g.sy), total(&g.sz));
        let s2 = &sx * &sx + &sy * &sy + &sz * &sz;
        let (vals, vecs) = hermitian_eigen_desc(&s2);
        assert!(vals[3].abs() < 1e-14);
        let mut v = vecs.column(3).into_owned();
        v *= v[1].conj() / v[1].norm();
        assert!((clebsch_gordan(1, 1, 1, -1, 0, 0) - v[1].re).abs() < 1e-14);
        assert!((clebsch_gordan(1, -1, 1, 1, 0, 0) - v[2].re).abs() < 1e-14);
        assert!((v[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 0, 2), 0.0);
        assert_eq!(clebsch_gordan(2, 3, 2, -1, 2, 2), 0.0);
    }

    #[test]
    fn orthogonality() {
        let (j1, j2) = (3, 4);
        for jt in [1, 3, 5, 7] {
            for jt2 in [1, 3, 5, 7] {
                for mt in (-jt.min(jt2)..=jt.min(jt2)).step_by(2) {
                    let mut s = 0.0;
                    for m1 in (-j1..=j1).step_by(2) {
                        let m2 = mt - m1;
                        s += clebsch_gordan(j1, m1, j2, m2, jt, mt)
                            * clebsch_gordan(j1, m1, j2, m2, jt2, mt);
                    }
                    let expect = if jt == jt2 { 1.0 } else { 0.0 };
                    assert!((s - expect).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn maximally_mixed_is_isotropic() {
        let spin = SpinLabel::from_twice(5);
        let n = spin.dim();
        let rho = CMat::identity(n, n) / c64(n as f64, 0.0);
        let p = polarization_components(&rho, spin).unwrap();
        for ((l, _), v) in p.iter() {
            let expect = if l == 0 { 1.0 / (n as f64).sqrt() } else { 0.0 };
            assert!((v - c64(expect, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn hermitian_symmetry() {
        let spin = SpinLabel::from_twice(4);
        let psi = CVec::from_fn(5, |i, _| c64(0.3 * i as f64 - 0.5, (i as f64).cos()));
        let p = polarization_components(&(&psi * psi.adjoint()), spin).unwrap();
        for l in 0..=4u32 {
            for m in 1..=l as i32 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((p.get(l, -m) - p.get(l, m).conj() * sign).norm() < 1e-13);
            }
        }
    }
}
