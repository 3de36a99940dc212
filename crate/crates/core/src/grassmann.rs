//! Frames, planes and Plücker coordinates in the spin-`s` Hilbert space.

use std::collections::HashMap;

use nalgebra::Vector3;

use crate::error::{Result, StellarError};
use crate::linalg::{
    self, c64, det, numerical_rank, orthonormalize_rows, submatrix, CMat, CVec, C64, EPS_RANK, ZERO,
};
use crate::spin::{
    build_generators, geodesic_rotation, wigner_d, RotationSpec, SpinLabel, SpinState,
};

/// Increasing `k`-subsets of `{0, .., n-1}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct MultiIndexSpace {
    n: usize,
    k: usize,
    indices: Vec<Vec<usize>>,
    lookup: HashMap<Vec<u64>, usize>,
}

impl MultiIndexSpace {
    pub fn new(n: usize, k: usize) -> Self {
        let mut indices = Vec::new();
        if k <= n {
            let mut cur: Vec<usize> = (0..k).collect();
            loop {
                indices.push(cur.clone());
                let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
                    break;
                };
                cur[i] += 1;
                for t in i + 1..k {
                    cur[t] = cur[t - 1] + 1;
                }
            }
        }
        let lookup = indices
            .iter()
            .enumerate()
            .map(|(p, idx)| (Self::key_of(n, idx), p))
            .collect();
        Self {
            n,
            k,
            indices,
            lookup,
        }
    }

    fn key_of(n: usize, idx: &[usize]) -> Vec<u64> {
        let mut key = vec![0u64; n.div_ceil(64).max(1)];
        for &i in idx {
            key[i / 64] |= 1 << (i % 64);
        }
        key
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    pub fn index(&self, pos: usize) -> &[usize] {
        &self.indices[pos]
    }

    /// Position of a set of distinct indices (order irrelevant).
    pub fn position(&self, idx: &[usize]) -> Option<usize> {
        if idx.len() != self.k {
            return None;
        }
        self.lookup.get(&Self::key_of(self.n, idx)).copied()
    }
}

/// Sorts `seq`, returning the permutation sign, or `None` on a repeated entry.
pub fn sort_with_sign(seq: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v = seq.to_vec();
    let mut sign = 1.0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// `k` row vectors (kets, written in the `|s,m>` basis) spanning a plane.
#[derive(Clone, Debug, PartialEq)]
pub struct KFrame {
    spin: SpinLabel,
    rows: CMat,
}

impl KFrame {
    pub fn new(spin: SpinLabel, rows: CMat) -> Result<Self> {
        let (k, n) = rows.shape();
        if n != spin.dim() {
            return Err(StellarError::Shape(format!(
                "rows have length {n}, expected {}",
                spin.dim()
            )));
        }
        if k == 0 || k > n {
            return Err(StellarError::Shape(format!("k = {k} outside 1..={n}")));
        }
        if rows.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(StellarError::InvalidInput("non-finite frame entry".into()));
        }
        let rank = numerical_rank(&rows);
        if rank < k {
            return Err(StellarError::RankDeficient { rank, k });
        }
        Ok(Self { spin, rows })
    }

    pub fn from_rows(spin: SpinLabel, rows: &[Vec<C64>]) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(StellarError::Shape("ragged frame rows".into()));
        }
        Self::new(spin, CMat::from_fn(k, n, |r, c| rows[r][c]))
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn k(&self) -> usize {
        self.rows.nrows()
    }

    /// `2s + 1 - k`.
    pub fn codim(&self) -> usize {
        self.spin.dim() - self.k()
    }

    pub fn rows(&self) -> &CMat {
        &self.rows
    }

    pub fn row_state(&self, i: usize) -> SpinState {
        SpinState::new(self.rows.row(i).transpose()).expect("frame rows are finite")
    }

    /// Applies `D(r)` to every row.
    pub fn rotated(&self, r: &RotationSpec) -> Self {
        let d = wigner_d(self.spin, r);
        Self {
            spin: self.spin,
            rows: &self.rows * d.transpose(),
        }
    }
}

/// Antisymmetric tensor in lexicographic multi-index coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerVector {
    spin: SpinLabel,
    k: usize,
    comps: CVec,
}

impl PluckerVector {
    pub fn new(spin: SpinLabel, k: usize, comps: CVec) -> Result<Self> {
        let expect = linalg::binomial_f64(spin.dim() as u64, k as u64) as usize;
        if comps.len() != expect {
            return Err(StellarError::Shape(format!(
                "{} Plücker components, expected {expect}",
                comps.len()
            )));
        }
        Ok(Self { spin, k, comps })
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn comps(&self) -> &CVec {
        &self.comps
    }

    pub fn norm(&self) -> f64 {
        self.comps.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(StellarError::ZeroState);
        }
        Ok(Self {
            spin: self.spin,
            k: self.k,
            comps: self.comps.unscale(n),
        })
    }

    pub fn inner(&self, other: &PluckerVector) -> C64 {
        self.comps.dotc(&other.comps)
    }
}

/// The plane spanned by a frame, held as its standard representative: the
/// pivot columns form the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct KPlane {
    frame: KFrame,
    pivots: Vec<usize>,
}

impl KPlane {
    pub fn from_frame(frame: &KFrame) -> Result<Self> {
        standard_form(frame)
    }

    pub fn representative(&self) -> &KFrame {
        &self.frame
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn spin(&self) -> SpinLabel {
        self.frame.spin
    }

    pub fn k(&self) -> usize {
        self.frame.k()
    }

    pub fn codim(&self) -> usize {
        self.frame.codim()
    }

    pub fn plucker(&self) -> PluckerVector {
        plucker(&self.frame)
    }

    /// Rows orthonormalised by modified Gram-Schmidt.
    pub fn orthonormal_frame(&self) -> KFrame {
        let rows =
            orthonormalize_rows(&self.frame.rows).expect("plane representative has full rank");
        KFrame {
            spin: self.frame.spin,
            rows,
        }
    }

    pub fn rotated(&self, r: &RotationSpec) -> Result<Self> {
        standard_form(&self.frame.rotated(r))
    }

    /// Frobenius norm of the difference of the orthogonal projectors.
    pub fn distance(&self, other: &KPlane) -> Result<f64> {
        if self.spin() != other.spin() {
            return Err(StellarError::Shape("planes in different spaces".into()));
        }
        Ok((self.projector() - other.projector()).norm())
    }

    /// Orthogonal projector onto the plane.
    pub fn projector(&self) -> CMat {
        let q = self.orthonormal_frame().rows;
        q.transpose() * q.conjugate()
    }
}

/// Lexicographic maximal minors of the frame.
pub fn plucker(frame: &KFrame) -> PluckerVector {
    let k = frame.k();
    let space = MultiIndexSpace::new(frame.spin.dim(), k);
    let rows: Vec<usize> = (0..k).collect();
    let comps = CVec::from_iterator(
        space.len(),
        space
            .indices()
            .iter()
            .map(|idx| det(&submatrix(&frame.rows, &rows, idx))),
    );
    PluckerVector {
        spin: frame.spin,
        k,
        comps,
    }
}

/// Worst violation of the quadratic Plücker relations relative to `|P|^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PluckerResidual {
    pub value: f64,
    /// Set for the zero vector, which satisfies every relation trivially.
    pub degenerate: bool,
}

pub fn plucker_residual(p: &PluckerVector) -> PluckerResidual {
    let norm2 = p.comps.norm_squared();
    if norm2 == 0.0 {
        return PluckerResidual {
            value: 0.0,
            degenerate: true,
        };
    }
    let n = p.spin.dim();
    let k = p.k;
    if k + 1 > n {
        return PluckerResidual {
            value: 0.0,
            degenerate: false,
        };
    }
    let space = MultiIndexSpace::new(n, k);
    let at = |seq: &[usize]| -> C64 {
        match sort_with_sign(seq) {
            Some((sorted, sign)) => {
                p.comps[space.position(&sorted).expect("valid multi-index")] * sign
            }
            None => ZERO,
        }
    };
    let lower = MultiIndexSpace::new(n, k - 1);
    let upper = MultiIndexSpace::new(n, k + 1);
    let mut worst: f64 = 0.0;
    let mut left = Vec::with_capacity(k);
    let mut right = Vec::with_capacity(k);
    for i in lower.indices() {
        for j in upper.indices() {
            let mut sum = ZERO;
            for m in 0..=k {
                left.clear();
                left.extend_from_slice(i);
                left.push(j[m]);
                let a = at(&left);
                if a == ZERO {
                    continue;
                }
                right.clear();
                right.extend(
                    j.iter()
                        .enumerate()
                        .filter(|&(t, _)| t != m)
                        .map(|(_, &x)| x),
                );
                let term = a * at(&right);
                sum += if m % 2 == 0 { term } else { -term };
            }
            worst = worst.max(sum.norm());
        }
    }
    PluckerResidual {
        value: worst / norm2,
        degenerate: false,
    }
}

/// Canonical representative: pivots are the first lexicographic column set
/// whose minor reaches `EPS_RANK` times the largest minor.
pub fn standard_form(frame: &KFrame) -> Result<KPlane> {
    let k = frame.k();
    let p = plucker(frame);
    let top = p.comps.iter().fold(0.0_f64, |a, z| a.max(z.norm()));
    if top == 0.0 {
        return Err(StellarError::RankDeficient { rank: 0, k });
    }
    let space = MultiIndexSpace::new(frame.spin.dim(), k);
    let pos = p
        .comps
        .iter()
        .position(|z| z.norm() >= EPS_RANK * top)
        .expect("top minor qualifies");
    let pivots = space.index(pos).to_vec();
    let rows: Vec<usize> = (0..k).collect();
    let m = submatrix(&frame.rows, &rows, &pivots);
    let inv = m
        .try_inverse()
        .ok_or(StellarError::RankDeficient { rank: k - 1, k })?;
    let mut rep = inv * &frame.rows;
    for (r, &pc) in pivots.iter().enumerate() {
        for q in 0..k {
            rep[(q, pc)] = if q == r { c64(1.0, 0.0) } else { ZERO };
        }
    }
    Ok(KPlane {
        frame: KFrame {
            spin: frame.spin,
            rows: rep,
        },
        pivots,
    })
}

/// `det <v_i|w_j>`.
pub fn frame_inner(v: &KFrame, w: &KFrame) -> Result<C64> {
    if v.spin != w.spin || v.k() != w.k() {
        return Err(StellarError::Shape("frames of different (s, k)".into()));
    }
    Ok(det(&(v.rows.conjugate() * w.rows.transpose())))
}

/// `|<V,W>| / sqrt(<V,V><W,W>)`, in `[0, 1]`.
pub fn plane_inner(a: &KPlane, b: &KPlane) -> Result<f64> {
    let ab = frame_inner(&a.frame, &b.frame)?.norm();
    let aa = frame_inner(&a.frame, &a.frame)?.re;
    let bb = frame_inner(&b.frame, &b.frame)?.re;
    if !(aa > 0.0 && bb > 0.0) {
        return Err(StellarError::ZeroState);
    }
    Ok((ab / (aa * bb).sqrt()).min(1.0))
}

/// Spin expectation value of the plane: `sum_mu <psi_mu|S|psi_mu>` over an
/// orthonormal basis.
pub fn sev(plane: &KPlane) -> Vector3<f64> {
    let g = build_generators(plane.spin());
    let onb = plane.orthonormal_frame();
    let mut out = Vector3::zeros();
    for mu in 0..onb.k() {
        let psi = onb.rows.row(mu).transpose();
        let e = |op: &CMat| psi.dotc(&(op * &psi)).re;
        out += Vector3::new(e(&g.sx), e(&g.sy), e(&g.sz));
    }
    out
}

/// The plane spanned by the `k` highest-weight states along `n`.
pub fn coherent_plane(s: SpinLabel, k: usize, n: &Vector3<f64>) -> Result<KPlane> {
    let d = wigner_d(s, &geodesic_rotation(n)?);
    let rows = d.columns(0, k).transpose();
    standard_form(&KFrame::new(s, rows)?)
}

/// The orthogonal complement, of dimension `2s + 1 - k`.
pub fn orthogonal_complement(plane: &KPlane) -> Result<KPlane> {
    if plane.codim() == 0 {
        return Err(StellarError::InvalidInput(
            "the full space has a zero-dimensional complement".into(),
        ));
    }
    let comp = linalg::orthogonal_complement(&plane.frame.rows.transpose());
    standard_form(&KFrame::new(plane.spin(), comp.transpose())?)
}
