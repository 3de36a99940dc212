//! Decomposition of `Λ^k` of the spin-`s` representation into irreducibles.

pub mod basis;
pub mod character;
pub mod laurent;
pub mod multiplicity;
pub mod wedge;

pub use basis::{bd_basis, canonical_degenerate_basis, BdBasis, CanonicalBasis, MultipletBlock};
pub use character::{char_sk, char_sk_newton, chi_irrep};
pub use multiplicity::{
    multiplicities, multiplicities_basis, multiplicities_char, multiplicities_genfun,
    MultiplicityMethod, MultiplicityTable,
};
pub use wedge::{wedge_generators, wedge_rep, WedgeGenerators};

use crate::error::{Result, StellarError};
use crate::grassmann::{KPlane, PluckerVector};
use crate::spin::{SpinLabel, SpinState};

/// The spin-`j` part of a Plücker vector, expressed in `|j,m>` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepComponent {
    pub two_j: u32,
    pub copy: usize,
    pub state: SpinState,
}

impl IrrepComponent {
    pub fn spin(&self) -> SpinLabel {
        SpinLabel::from_twice(self.two_j)
    }
}

/// Splits `p` (as given, without normalisation) into irreducible components.
pub fn decompose_plucker(p: &PluckerVector) -> Result<Vec<IrrepComponent>> {
    let basis = bd_basis(p.spin(), p.k())?;
    let psi = basis.u() * p.comps();
    basis
        .blocks()
        .iter()
        .map(|b| {
            let state = SpinState::new(psi.rows(b.offset, b.len()).into_owned())?;
            Ok(IrrepComponent {
                two_j: b.two_j,
                copy: b.copy,
                state,
            })
        })
        .collect()
}

/// Decomposes the normalised Plücker vector of the plane's standard representative.
pub fn decompose_plane(plane: &KPlane) -> Result<Vec<IrrepComponent>> {
    let p = plane
        .plucker()
        .normalized()
        .map_err(|_| StellarError::RankDeficient {
            rank: 0,
            k: plane.k(),
        })?;
    decompose_plucker(&p)
}
