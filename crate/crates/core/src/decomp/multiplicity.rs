//! Multiplicities of spin-`j` irreps inside the `k`-th exterior power.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::basis::BdBasis;
use super::character::partitions_by_multiplicity;
use super::laurent::Laurent;
use crate::error::{Result, StellarError};
use crate::spin::SpinLabel;

/// `m_j` for `j = s_max, s_max - 1, ..`, keyed by `2j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    spin: SpinLabel,
    k: usize,
    entries: Vec<(u32, u64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicityMethod {
    GeneratingFunction,
    Character,
    Basis,
}

impl MultiplicityTable {
    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `2 s_max = k (2s + 1 - k)`.
    pub fn two_smax(&self) -> u32 {
        two_smax(self.spin, self.k)
    }

    /// `(2j, m_j)` in descending `j`.
    pub fn entries(&self) -> &[(u32, u64)] {
        &self.entries
    }

    pub fn get(&self, two_j: u32) -> u64 {
        self.entries
            .iter()
            .find(|e| e.0 == two_j)
            .map_or(0, |e| e.1)
    }

    /// `sum_j (2j + 1) m_j`.
    pub fn dimension(&self) -> BigUint {
        self.entries
            .iter()
            .map(|&(tj, m)| BigUint::from(tj as u64 + 1) * BigUint::from(m))
            .sum()
    }

    fn from_fn(spin: SpinLabel, k: usize, mut f: impl FnMut(u32) -> Result<u64>) -> Result<Self> {
        let top = two_smax(spin, k);
        let entries = (0..=top / 2)
            .map(|t| top - 2 * t)
            .map(|tj| Ok((tj, f(tj)?)))
            .collect::<Result<_>>()?;
        Ok(Self { spin, k, entries })
    }
}

pub fn two_smax(spin: SpinLabel, k: usize) -> u32 {
    (k * (spin.dim() - k)) as u32
}

fn check(spin: SpinLabel, k: usize) -> Result<()> {
    if k == 0 || k > spin.dim() {
        return Err(StellarError::InvalidInput(format!(
            "k = {k} outside 1..={}",
            spin.dim()
        )));
    }
    Ok(())
}

pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn to_count(x: &BigInt) -> Result<u64> {
    if x.is_negative() {
        return Err(StellarError::Numerical(format!(
            "negative multiplicity {x}"
        )));
    }
    x.to_u64()
        .ok_or_else(|| StellarError::Numerical("multiplicity exceeds u64".into()))
}

pub fn multiplicities(
    spin: SpinLabel,
    k: usize,
    method: MultiplicityMethod,
) -> Result<MultiplicityTable> {
    match method {
        MultiplicityMethod::GeneratingFunction => multiplicities_genfun(spin, k),
        MultiplicityMethod::Character => multiplicities_char(spin, k),
        MultiplicityMethod::Basis => multiplicities_basis(spin, k),
    }
}

/// Gaussian binomial `[n choose k]` in `y = x^(1/2)`, built one exact
/// division at a time so that every intermediate is itself a Gaussian binomial.
fn gaussian_binomial_y(n: usize, k: usize) -> Laurent<BigInt> {
    let k = k.min(n - k);
    let xm1 = |e: usize| {
        Laurent::new(0, {
            let mut c = vec![BigInt::zero(); 2 * e + 1];
            c[0] = -BigInt::one();
            c[2 * e] = BigInt::one();
            c
        })
    };
    let mut g = Laurent::one();
    for r in 1..=k {
        g = g
            .mul(&xm1(n + 1 - r))
            .div_exact(&xm1(r))
            .expect("Gaussian binomial division is exact");
    }
    g
}

/// Coefficients of `(1 - 1/x) prod_r (x^(s+1) - x^(r-s-1)) / (x^r - 1)`.
pub fn multiplicities_genfun(spin: SpinLabel, k: usize) -> Result<MultiplicityTable> {
    check(spin, k)?;
    let top = two_smax(spin, k) as i64;
    let g = gaussian_binomial_y(spin.dim(), k);
    // The prefactor prod_r x^(r-s-1) equals x^(-s_max).
    let shifted = g.mul(&Laurent::monomial(-top, BigInt::one()));
    let zeta = shifted.mul(&Laurent::new(
        -2,
        vec![-BigInt::one(), BigInt::zero(), BigInt::one()],
    ));
    MultiplicityTable::from_fn(spin, k, |tj| to_count(&zeta.coeff(tj as i64)))
}

/// Orthogonality of characters, evaluated exactly on Fourier coefficients in
/// `u = e^(i alpha / 2)`.
pub fn multiplicities_char(spin: SpinLabel, k: usize) -> Result<MultiplicityTable> {
    check(spin, k)?;
    let chi = exterior_character(spin, k.min(spin.dim() - k));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let sin2 = Laurent::new(
        -2,
        vec![
            -quarter.clone(),
            BigRational::zero(),
            quarter.clone() * BigRational::from_integer(2.into()),
            BigRational::zero(),
            -quarter,
        ],
    );
    let weighted = chi.mul(&sin2);
    MultiplicityTable::from_fn(spin, k, |tj| {
        // Constant term of weighted * chi^(j); (1/pi) int_0^2pi e^(i n alpha) = 2 delta_n0.
        let c0: BigRational = (0..=tj)
            .map(|i| weighted.coeff(-(tj as i64 - 2 * i as i64)))
            .sum();
        let m = c0 * BigRational::from_integer(2.into());
        if !m.is_integer() {
            return Err(StellarError::Numerical(format!(
                "non-integral multiplicity {m}"
            )));
        }
        to_count(&m.to_integer())
    })
}

fn irrep_character_u(two_s: u32, r: i64) -> Laurent<BigRational> {
    let low = -(two_s as i64) * r;
    let mut c = vec![BigRational::zero(); (2 * two_s as i64 * r + 1) as usize];
    for i in 0..=two_s as i64 {
        c[(2 * i * r) as usize] = BigRational::one();
    }
    Laurent::new(low, c)
}

fn centralizer_big(m: &[u32]) -> BigInt {
    let mut z = BigInt::one();
    for (i, &mr) in m.iter().enumerate() {
        for t in 1..=mr {
            z *= BigInt::from(i + 1) * BigInt::from(t);
        }
    }
    z
}

/// `chi^(s,k)` as a Laurent polynomial in `u`, by the cycle-type expansion.
pub fn exterior_character(spin: SpinLabel, k: usize) -> Laurent<BigRational> {
    let two_s = spin.two_s();
    let powers: Vec<Laurent<BigRational>> = (1..=k.max(1))
        .map(|r| irrep_character_u(two_s, r as i64))
        .collect();
    let mut total = Laurent::zero();
    for m in partitions_by_multiplicity(k) {
        let parts: u32 = m.iter().sum();
        let mut term = Laurent::one();
        for (i, &mr) in m.iter().enumerate() {
            if mr > 0 {
                term = term.mul(&powers[i].pow(mr));
            }
        }
        let mut coef = BigRational::new(BigInt::one(), centralizer_big(&m));
        if (k as u32 - parts) % 2 == 1 {
            coef = -coef;
        }
        total = total.add(&term.scale(&coef));
    }
    total
}

/// Counts the multiplets of an explicitly constructed block-diagonalising basis.
pub fn multiplicities_basis(spin: SpinLabel, k: usize) -> Result<MultiplicityTable> {
    check(spin, k)?;
    let basis = BdBasis::build(spin, k)?;
    MultiplicityTable::from_fn(spin, k, |tj| {
        Ok(basis.blocks().iter().filter(|b| b.two_j == tj).count() as u64)
    })
}
