//! Simultaneous polynomial root finding (Aberth-Ehrlich) on the extended plane.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, StellarError};
use crate::linalg::{c64, C64, ZERO};
use crate::poly::ComplexPolynomial;
use crate::spin::ExtComplex;

/// Coefficients below this fraction of the largest one count as zero at
/// either end of the coefficient list.
pub const DEFLATION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            tol: 1e-12,
            seed: 0x005e_ed0f_57a2,
        }
    }
}

/// All `nominal_degree` roots of `p`, with roots at infinity for a degree
/// deficit. Near-multiple roots are consolidated into exact repeats.
pub fn poly_roots(p: &ComplexPolynomial) -> Result<Vec<ExtComplex>> {
    poly_roots_with(p, RootOptions::default())
}

pub fn poly_roots_with(p: &ComplexPolynomial, opts: RootOptions) -> Result<Vec<ExtComplex>> {
    let top = p.max_abs();
    if top == 0.0 || !top.is_finite() {
        return Err(StellarError::ZeroPolynomial);
    }
    let c = p.coeffs();
    let thr = DEFLATION_TOL * top;
    let hi = (0..c.len())
        .rev()
        .find(|&i| c[i].norm() > thr)
        .expect("nonzero coefficient");
    let lo = (0..c.len())
        .find(|&i| c[i].norm() > thr)
        .expect("nonzero coefficient");
    let mut out = Vec::with_capacity(p.nominal_degree());
    out.extend(std::iter::repeat_n(ExtComplex::Finite(ZERO), lo));
    let core: Vec<C64> = c[lo..=hi].to_vec();
    let mut roots = match core.len() - 1 {
        0 => Vec::new(),
        1 => vec![-core[0] / core[1]],
        _ => aberth(&core, opts),
    };
    if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(StellarError::Numerical("root iteration diverged".into()));
    }
    consolidate_multiple_roots(&core, &mut roots);
    out.extend(roots.into_iter().map(ExtComplex::Finite));
    out.extend(std::iter::repeat_n(
        ExtComplex::Infinity,
        p.nominal_degree() - hi,
    ));
    Ok(out)
}

/// `p(z) / p'(z)`, evaluated through the reversed polynomial outside the unit disk.
fn newton_ratio(c: &[C64], z: C64) -> C64 {
    let d = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (ZERO, ZERO);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        p / dp
    } else {
        let w = z.inv();
        let (mut q, mut dq) = (ZERO, ZERO);
        for &a in c.iter() {
            dq = dq * w + q;
            q = q * w + a;
        }
        z * z * q / (z * q * d as f64 - dq)
    }
}

fn aberth(c: &[C64], opts: RootOptions) -> Vec<C64> {
    let d = c.len() - 1;
    let lead = c[d];
    // Fujiwara bound on root moduli.
    let mut bound: f64 = 0.0;
    for i in 1..=d {
        let mut t = (c[d - i] / lead).norm();
        if i == d {
            t *= 0.5;
        }
        bound = bound.max(t.powf(1.0 / i as f64));
    }
    let radius = 2.0 * bound.max(f64::MIN_POSITIVE);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let step = std::f64::consts::TAU / d as f64;
    let mut z: Vec<C64> = (0..d)
        .map(|k| {
            let ang = 0.4 + step * (k as f64 + rng.gen_range(-0.1..0.1));
            let rad = radius * (1.0 + rng.gen_range(-0.05..0.05));
            C64::from_polar(rad, ang)
        })
        .collect();
    for _ in 0..opts.max_iter {
        let mut worst: f64 = 0.0;
        for k in 0..d {
            let ratio = newton_ratio(c, z[k]);
            if !ratio.re.is_finite() || !ratio.im.is_finite() {
                continue;
            }
            let sum: C64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (c64(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            worst = worst.max(w.norm() / z[k].norm().max(1.0));
        }
        if worst <= opts.tol {
            break;
        }
    }
    z
}

fn chordal(a: C64, b: C64) -> f64 {
    2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
}

/// Coefficients of `f^(order)` in ascending powers.
fn derivative_coeffs(c: &[C64], order: usize) -> Vec<C64> {
    (order..c.len())
        .map(|j| {
            let falling: f64 = (0..order).map(|t| (j - t) as f64).product();
            c[j] * falling
        })
        .collect()
}

fn eval_with_bound(c: &[C64], x: C64) -> (C64, f64) {
    let mut v = ZERO;
    let mut b = 0.0;
    let r = x.norm();
    for &a in c.iter().rev() {
        v = v * x + a;
        b = b * r + a.norm();
    }
    (v, b)
}

/// Whether `x` is (numerically) a root of multiplicity at least `mu` of `c`.
fn is_multiple_root(c: &[C64], x: C64, mu: usize) -> bool {
    const TAU: f64 = 1e-10;
    (0..mu).all(|i| {
        let (v, b) = eval_with_bound(&derivative_coeffs(c, i), x);
        v.norm() <= TAU * b
    })
}

fn polish(c: &[C64], x: C64, mu: usize) -> C64 {
    let f = derivative_coeffs(c, mu - 1);
    let mut x = x;
    for _ in 0..8 {
        let r = newton_ratio(&f, x);
        if !r.re.is_finite() || !r.im.is_finite() {
            break;
        }
        x -= r;
        if r.norm() <= 1e-16 * x.norm().max(1.0) {
            break;
        }
    }
    x
}

/// Replaces clusters of roots that approximate a multiple root by exact
/// repeats. A `mu`-fold root splits into a ring of radius `eps^(1/mu)` under
/// round-off; it is recovered as the simple root of the `(mu-1)`-th
/// derivative nearest the ring's centroid.
fn consolidate_multiple_roots(c: &[C64], roots: &mut [C64]) {
    let n = roots.len();
    if n < 2 {
        return;
    }
    let reversed: Vec<C64> = c.iter().rev().copied().collect();
    let mut assigned = vec![false; n];
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut near: Vec<usize> = (0..n)
            .filter(|&j| !assigned[j] && chordal(roots[i], roots[j]) <= 0.3)
            .collect();
        near.sort_by(|&a, &b| chordal(roots[i], roots[a]).total_cmp(&chordal(roots[i], roots[b])));
        for mu in (2..=near.len()).rev() {
            let members = &near[..mu];
            let centroid = members.iter().map(|&j| roots[j]).sum::<C64>() / mu as f64;
            let inside = centroid.norm() <= 1.0;
            let (chart, x) = if inside {
                (c, centroid)
            } else {
                (&reversed[..], centroid.inv())
            };
            let x = polish(chart, x, mu);
            if !is_multiple_root(chart, x, mu) {
                continue;
            }
            let root = if inside { x } else { x.inv() };
            for &j in members {
                roots[j] = root;
                assigned[j] = true;
            }
            break;
        }
        assigned[i] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite(r: &[ExtComplex]) -> Vec<C64> {
        r.iter().filter_map(|z| z.finite()).collect()
    }

    #[test]
    fn simple_roots_of_unity() {
        let p = ComplexPolynomial::new(vec![c64(-1.0, 0.0), ZERO, ZERO, ZERO, c64(1.0, 0.0)]);
        let r = finite(&poly_roots(&p).unwrap());
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.powu(4) - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn degree_deficit_gives_infinities() {
        let p = ComplexPolynomial::new(vec![c64(2.0, 0.0), c64(1.0, 0.0), ZERO, ZERO]);
        let r = poly_roots(&p).unwrap();
        assert_eq!(r.iter().filter(|z| **z == ExtComplex::Infinity).count(), 2);
        assert!((finite(&r)[0] + 2.0).norm() < 1e-14);
    }

    #[test]
    fn multiple_root_is_consolidated() {
        let z0 = c64(0.3, -0.8);
        let p = ComplexPolynomial::from_roots(&[z0; 6]);
        let r = finite(&poly_roots(&p).unwrap());
        assert_eq!(r.len(), 6);
        for z in &r {
            assert!((z - z0).norm() < 1e-10, "{z}");
        }
        let q = ComplexPolynomial::from_roots(&[z0, z0, z0, c64(1.5, 0.2), c64(-2.0, 3.0)]);
        let r = finite(&poly_roots(&q).unwrap());
        assert_eq!(r.iter().filter(|z| (*z - z0).norm() < 1e-10).count(), 3);
    }

    #[test]
    fn large_roots_use_reversed_chart() {
        let big = c64(1e5, -3e4);
        let p = ComplexPolynomial::from_roots(&[big, big, c64(0.1, 0.0)]);
        let r = finite(&poly_roots(&p).unwrap());
        assert_eq!(
            r.iter()
                .filter(|z| ((*z - big) / big).norm() < 1e-9)
                .count(),
            2
        );
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            poly_roots(&ComplexPolynomial::zero(3)),
            Err(StellarError::ZeroPolynomial)
        );
    }
}
