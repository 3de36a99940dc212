//! Explicit basis adapted to the irreducible decomposition of `Λ^k`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::wedge::{lowering_sparse, twice_sz};
use crate::error::{Result, StellarError};
use crate::grassmann::MultiIndexSpace;
use crate::linalg::{hermitian_eigen_desc, leading_phase, orthogonal_complement, CMat, CVec};
use crate::spin::SpinLabel;

/// Rows `offset .. offset + 2j + 1` of `U`, with `m = j, j-1, .., -j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultipletBlock {
    pub two_j: u32,
    pub copy: usize,
    pub offset: usize,
}

impl MultipletBlock {
    pub fn len(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rows(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.len()
    }
}

/// Unitary `U` with `U D^(s,k)(r) U^† = ⊕ D^(j)(r)`. Row `a` of `U` is the
/// conjugate of the `a`-th adapted basis vector, so `psi_D = U psi`.
#[derive(Clone, Debug)]
pub struct BdBasis {
    spin: SpinLabel,
    k: usize,
    u: CMat,
    blocks: Vec<MultipletBlock>,
    residual_degeneracy: bool,
}

/// Relative size below which a Plücker coordinate counts as zero when
/// fixing phases.
const PHASE_TOL: f64 = 1e-9;

fn fix_phase(v: &mut CVec) {
    if let Some(p) = leading_phase(v, PHASE_TOL) {
        *v *= p.conj();
    }
}

impl BdBasis {
    pub fn build(spin: SpinLabel, k: usize) -> Result<Self> {
        let n = spin.dim();
        if k == 0 || k > n {
            return Err(StellarError::InvalidInput(format!(
                "k = {k} outside 1..={n}"
            )));
        }
        let space = MultiIndexSpace::new(n, k);
        let dim = space.len();
        let sz2 = twice_sz(&space, spin);
        let lower = lowering_sparse(&space, spin);
        let top = (k * (n - k)) as i64;
        let mut levels: HashMap<i64, Vec<usize>> = HashMap::new();
        for (pos, &m) in sz2.iter().enumerate() {
            levels.entry(m).or_default().push(pos);
        }

        let mut chains: Vec<(u32, Vec<CVec>)> = Vec::new();
        let mut residual_degeneracy = false;
        let mut two_m = top;
        while two_m >= 0 {
            let level = &levels[&two_m];
            let existing: Vec<&CVec> = chains
                .iter()
                .map(|(tj, ch)| &ch[((*tj as i64 - two_m) / 2) as usize])
                .collect();
            let restricted =
                CMat::from_fn(level.len(), existing.len(), |r, c| existing[c][level[r]]);
            let fresh = orthogonal_complement(&restricted);
            if fresh.ncols() > 0 {
                let mut embedded = CMat::zeros(dim, fresh.ncols());
                for (i, &p) in level.iter().enumerate() {
                    embedded.row_mut(p).copy_from(&fresh.row(i));
                }
                let highest = if fresh.ncols() == 1 {
                    let mut v = embedded.column(0).into_owned();
                    fix_phase(&mut v);
                    vec![v]
                } else {
                    let cb = canonical_degenerate_basis(spin, k, &embedded);
                    residual_degeneracy |= cb.residual_degeneracy;
                    cb.vectors
                };
                for hw in highest {
                    let two_j = two_m as u32;
                    let mut chain = Vec::with_capacity(two_j as usize + 1);
                    chain.push(hw);
                    for _ in 0..two_j {
                        let next = lower.apply(chain.last().expect("chain is nonempty"));
                        let nrm = next.norm();
                        if nrm == 0.0 {
                            return Err(StellarError::Numerical(
                                "lowering annihilated a multiplet early".into(),
                            ));
                        }
                        chain.push(next.unscale(nrm));
                    }
                    chains.push((two_j, chain));
                }
            }
            two_m -= 2;
        }

        let mut u = CMat::zeros(dim, dim);
        let mut blocks = Vec::with_capacity(chains.len());
        let mut offset = 0;
        let mut copies: HashMap<u32, usize> = HashMap::new();
        for (two_j, chain) in &chains {
            let copy = copies.entry(*two_j).or_insert(0);
            blocks.push(MultipletBlock {
                two_j: *two_j,
                copy: *copy,
                offset,
            });
            *copy += 1;
            for v in chain {
                if offset >= dim {
                    return Err(StellarError::Numerical(
                        "adapted basis overflows the space".into(),
                    ));
                }
                u.row_mut(offset).copy_from(&v.adjoint());
                offset += 1;
            }
        }
        if offset != dim {
            return Err(StellarError::Numerical(format!(
                "adapted basis has {offset} vectors, expected {dim}"
            )));
        }
        Ok(Self {
            spin,
            k,
            u,
            blocks,
            residual_degeneracy,
        })
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn u(&self) -> &CMat {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// Ordered by decreasing `j`, then increasing copy index.
    pub fn blocks(&self) -> &[MultipletBlock] {
        &self.blocks
    }

    pub fn multiplicity(&self, two_j: u32) -> usize {
        self.blocks.iter().filter(|b| b.two_j == two_j).count()
    }

    /// Set when some degenerate highest-weight space could not be split by
    /// the moment operators and fell back to the lexicographic rule.
    pub fn residual_degeneracy(&self) -> bool {
        self.residual_degeneracy
    }
}

type Cache = RwLock<HashMap<(u32, usize), Arc<BdBasis>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached [`BdBasis::build`].
pub fn bd_basis(spin: SpinLabel, k: usize) -> Result<Arc<BdBasis>> {
    let key = (spin.two_s(), k);
    if let Some(b) = cache().read().expect("basis cache poisoned").get(&key) {
        return Ok(Arc::clone(b));
    }
    let built = Arc::new(BdBasis::build(spin, k)?);
    let mut w = cache().write().expect("basis cache poisoned");
    Ok(Arc::clone(w.entry(key).or_insert(built)))
}

#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    pub vectors: Vec<CVec>,
    pub residual_degeneracy: bool,
}

/// Orders an orthonormal highest-weight subspace (columns of `subspace`, in
/// Plücker coordinates) by successive maximisation of
/// `Q^(p) = sum_r (S_z^[r])^p`, `p = 2, .., k`; ties at one order are broken
/// at the next, then lexicographically.
pub fn canonical_degenerate_basis(spin: SpinLabel, k: usize, subspace: &CMat) -> CanonicalBasis {
    let space = MultiIndexSpace::new(spin.dim(), k);
    let moments: Vec<Vec<f64>> = (2..=k.max(2))
        .map(|p| {
            space
                .indices()
                .iter()
                .map(|idx| idx.iter().map(|&i| spin.m_at(i).powi(p as i32)).sum())
                .collect()
        })
        .collect();
    let mut remaining = subspace.clone();
    let mut vectors = Vec::with_capacity(subspace.ncols());
    let mut residual_degeneracy = false;
    while remaining.ncols() > 0 {
        let mut v = if remaining.ncols() == 1 {
            remaining.column(0).into_owned()
        } else {
            let mut cand = remaining.clone();
            let mut chosen = None;
            for q in moments.iter().take(k.saturating_sub(1)) {
                let scale = q.iter().fold(1.0_f64, |a, x| a.max(x.abs()));
                let a = cand.adjoint()
                    * CMat::from_fn(cand.nrows(), cand.ncols(), |r, c| cand[(r, c)] * q[r]);
                let (vals, vecs) = hermitian_eigen_desc(&a);
                let ties = vals
                    .iter()
                    .take_while(|&&l| l >= vals[0] - 1e-9 * scale)
                    .count();
                if ties == 1 {
                    chosen = Some(&cand * vecs.column(0));
                    break;
                }
                cand = &cand * vecs.columns(0, ties);
            }
            chosen.unwrap_or_else(|| {
                residual_degeneracy = true;
                lexicographic_pick(&cand)
            })
        };
        fix_phase(&mut v);
        let coords = remaining.adjoint() * &v;
        let comp =
            orthogonal_complement(&CMat::from_column_slice(coords.len(), 1, coords.as_slice()));
        remaining = &remaining * comp;
        vectors.push(v);
    }
    CanonicalBasis {
        vectors,
        residual_degeneracy,
    }
}

/// Projection of the first basis element with a non-negligible component.
fn lexicographic_pick(cand: &CMat) -> CVec {
    for pos in 0..cand.nrows() {
        let proj = cand * cand.row(pos).adjoint();
        let nrm = proj.norm();
        if nrm > 1e-6 {
            return proj.unscale(nrm);
        }
    }
    cand.column(0).into_owned()
}
