//! The spin-`s` action lifted to the `k`-th exterior power.

use crate::grassmann::{sort_with_sign, MultiIndexSpace};
use crate::linalg::{det, submatrix, CMat, CVec, C64, ZERO};
use crate::spin::{build_generators, wigner_d, RotationSpec, SpinLabel};

#[derive(Clone, Debug)]
pub struct WedgeGenerators {
    pub sz: CMat,
    pub splus: CMat,
    pub sminus: CMat,
}

impl WedgeGenerators {
    pub fn sx(&self) -> CMat {
        (&self.splus + &self.sminus) * C64::new(0.5, 0.0)
    }

    pub fn sy(&self) -> CMat {
        (&self.splus - &self.sminus) * C64::new(0.0, -0.5)
    }
}

/// Derivation action `A e_I = sum_r e_i1 ^ .. ^ A e_ir ^ .. ^ e_ik`.
pub fn wedge_operator(space: &MultiIndexSpace, a: &CMat) -> CMat {
    let dim = space.len();
    let n = space.n();
    let mut out = CMat::zeros(dim, dim);
    let mut seq = Vec::with_capacity(space.k());
    for (col, idx) in space.indices().iter().enumerate() {
        for r in 0..idx.len() {
            let j = idx[r];
            for i in 0..n {
                let v = a[(i, j)];
                if v == ZERO {
                    continue;
                }
                seq.clear();
                seq.extend_from_slice(idx);
                seq[r] = i;
                if let Some((sorted, sign)) = sort_with_sign(&seq) {
                    let row = space.position(&sorted).expect("valid multi-index");
                    out[(row, col)] += v * sign;
                }
            }
        }
    }
    out
}

pub fn wedge_generators(s: SpinLabel, k: usize) -> WedgeGenerators {
    let space = MultiIndexSpace::new(s.dim(), k);
    let g = build_generators(s);
    WedgeGenerators {
        sz: wedge_operator(&space, &g.sz),
        splus: wedge_operator(&space, &g.splus),
        sminus: wedge_operator(&space, &g.sminus),
    }
}

/// `D^(s,k)(r)`: entries are the `k x k` minors of `D^(s)(r)`.
pub fn wedge_rep(s: SpinLabel, k: usize, r: &RotationSpec) -> CMat {
    let d = wigner_d(s, r);
    let space = MultiIndexSpace::new(s.dim(), k);
    let dim = space.len();
    CMat::from_fn(dim, dim, |i, j| {
        det(&submatrix(&d, space.index(i), space.index(j)))
    })
}

/// Twice the `S_z` eigenvalue of every basis element.
pub fn twice_sz(space: &MultiIndexSpace, s: SpinLabel) -> Vec<i64> {
    let two_s = s.two_s() as i64;
    space
        .indices()
        .iter()
        .map(|idx| idx.iter().map(|&i| two_s - 2 * i as i64).sum())
        .collect()
}

/// Column-sparse real operator.
#[derive(Clone, Debug)]
pub struct SparseOp {
    cols: Vec<Vec<(usize, f64)>>,
}

impl SparseOp {
    pub fn apply(&self, v: &CVec) -> CVec {
        let mut out = CVec::zeros(self.cols.len());
        for (c, entries) in self.cols.iter().enumerate() {
            let x = v[c];
            if x == ZERO {
                continue;
            }
            for &(r, a) in entries {
                out[r] += x * a;
            }
        }
        out
    }
}

/// `S_-` on the exterior power. Replacing `i` by `i + 1` keeps the
/// multi-index sorted, so no reordering sign appears.
pub fn lowering_sparse(space: &MultiIndexSpace, s: SpinLabel) -> SparseOp {
    let n = space.n();
    let two_s = s.two_s() as f64;
    let mut cols = Vec::with_capacity(space.len());
    let mut seq = Vec::with_capacity(space.k());
    for idx in space.indices() {
        let mut entries = Vec::new();
        for (r, &i) in idx.iter().enumerate() {
            if i + 1 >= n || idx.get(r + 1) == Some(&(i + 1)) {
                continue;
            }
            // (s + m)(s - m + 1) with m = s - i, in doubled units.
            let two_m = two_s - 2.0 * i as f64;
            let coef = (0.25 * (two_s + two_m) * (two_s - two_m + 2.0)).sqrt();
            seq.clear();
            seq.extend_from_slice(idx);
            seq[r] = i + 1;
            entries.push((space.position(&seq).expect("valid multi-index"), coef));
        }
        cols.push(entries);
    }
    SparseOp { cols }
}
