//! Dense complex linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Relative threshold used for every rank decision.
pub const EPS_RANK: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &CVec) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |M M^† - 1|`.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m.adjoint() - CMat::identity(n, n)))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Thin singular value decomposition `M = U diag(sigma) V^†` by one-sided
/// (Hestenes) Jacobi rotations. Columns are not sorted.
pub struct JacobiSvd {
    pub u: CMat,
    pub sigma: Vec<f64>,
    pub v: CMat,
}

pub fn jacobi_svd(m: &CMat) -> JacobiSvd {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut v = CMat::identity(cols, cols);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = a.column(p).norm_squared();
                let beta = a.column(q).norm_squared();
                let gamma = a.column(p).dotc(&a.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = c * t;
                for mat in [&mut a, &mut v] {
                    for r in 0..mat.nrows() {
                        let xp = mat[(r, p)];
                        let xq = mat[(r, q)] * phase.conj();
                        mat[(r, p)] = xp * c - xq * sn;
                        mat[(r, q)] = xp * sn + xq * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: Vec<f64> = (0..cols).map(|c| a.column(c).norm()).collect();
    let mut u = CMat::zeros(rows, cols);
    for c in 0..cols {
        if sigma[c] > 0.0 {
            u.set_column(c, &a.column(c).unscale(sigma[c]));
        }
    }
    JacobiSvd { u, sigma, v }
}

/// Numerical rank from singular values, relative to the largest one.
pub fn numerical_rank(m: &CMat) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = jacobi_svd(&m.adjoint()).sigma;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > EPS_RANK * top).count()
}

/// Orthonormal basis (as columns) of the column span of `m`.
pub fn column_span(m: &CMat) -> CMat {
    let d = m.nrows();
    if m.ncols() == 0 || d == 0 {
        return CMat::zeros(d, 0);
    }
    let svd = jacobi_svd(m);
    let top = svd.sigma.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.sigma.len())
        .filter(|&i| top > 0.0 && svd.sigma[i] > EPS_RANK * top)
        .collect();
    CMat::from_fn(d, keep.len(), |r, c| svd.u[(r, keep[c])])
}

/// Orthonormal basis (as columns) of the orthogonal complement of the column
/// span of `m` inside `C^d`, `d = m.nrows()`: the unit eigenspace of the
/// complementary projector.
pub fn orthogonal_complement(m: &CMat) -> CMat {
    let d = m.nrows();
    let q = column_span(m);
    if q.ncols() == 0 {
        return CMat::identity(d, d);
    }
    let proj = CMat::identity(d, d) - &q * q.adjoint();
    let (vals, vecs) = hermitian_eigen_desc(&proj);
    let keep = vals.iter().filter(|&&l| l > 0.5).count();
    vecs.columns(0, keep).into_owned()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
pub fn hermitian_eigen_desc(h: &CMat) -> (Vec<f64>, CMat) {
    let sym = (h + h.adjoint()) * c64(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(h.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (vals, vecs)
}

/// Modified Gram-Schmidt on the rows of `m`. Fails on (numerical) rank loss.
pub fn orthonormalize_rows(m: &CMat) -> Option<CMat> {
    let mut out = m.clone();
    let scale = m.row_iter().map(|r| r.norm()).fold(0.0, f64::max);
    for i in 0..out.nrows() {
        for p in 0..i {
            let overlap = out.row(p).conjugate().dot(&out.row(i));
            let rp = out.row(p).into_owned();
            let mut ri = out.row_mut(i);
            ri -= rp * overlap;
        }
        let nrm = out.row(i).norm();
        if nrm <= EPS_RANK * scale || nrm == 0.0 {
            return None;
        }
        out.row_mut(i).unscale_mut(nrm);
    }
    Some(out)
}

/// Submatrix with the given rows and columns.
pub fn submatrix(m: &CMat, rows: &[usize], cols: &[usize]) -> CMat {
    CMat::from_fn(rows.len(), cols.len(), |r, c| m[(rows[r], cols[c])])
}

pub fn det(m: &CMat) -> C64 {
    if m.nrows() == 0 {
        return ONE;
    }
    m.clone().lu().determinant()
}

/// Principal-branch phase of the first entry whose modulus exceeds
/// `rel * max|v|`, or `None` for the zero vector.
pub fn leading_phase(v: &CVec, rel: f64) -> Option<C64> {
    let top = max_abs_vec(v);
    if top == 0.0 {
        return None;
    }
    v.iter()
        .find(|z| z.norm() > rel * top)
        .map(|z| z / z.norm())
}

pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

pub fn real_matrix(m: &DMatrix<f64>) -> CMat {
    m.map(|x| c64(x, 0.0))
}
