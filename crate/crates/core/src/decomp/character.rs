//! Characters of the spin-`s` representation and of its exterior powers.

use crate::spin::SpinLabel;

/// `chi^(j)(alpha) = sum_m e^(i m alpha)`, summed directly so that multiples
/// of `2 pi` need no special casing.
pub fn chi_irrep(two_j: u32, alpha: f64) -> f64 {
    (0..=two_j)
        .map(|i| (0.5 * (two_j as f64 - 2.0 * i as f64) * alpha).cos())
        .sum()
}

/// Partitions of `k` as multiplicity vectors: `m[r - 1]` parts of size `r`.
pub fn partitions_by_multiplicity(k: usize) -> Vec<Vec<u32>> {
    fn rec(rem: usize, max_part: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max_part.min(rem)).rev() {
            cur[part - 1] += 1;
            rec(rem - part, part, cur, out);
            cur[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut vec![0; k], &mut out);
    out
}

/// `z(M) = prod_r r^(m_r) m_r!`.
pub fn centralizer_order(m: &[u32]) -> f64 {
    m.iter()
        .enumerate()
        .map(|(i, &mr)| ((i + 1) as f64).powi(mr as i32) * (1..=mr).map(f64::from).product::<f64>())
        .product()
}

/// `chi^(s,k)` by the Newton-Girard recursion.
pub fn char_sk(s: SpinLabel, k: usize, alpha: f64) -> f64 {
    let two_s = s.two_s();
    let mut chi = vec![1.0];
    for q in 1..=k {
        let mut acc = 0.0;
        for m in 1..=q {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * chi_irrep(two_s, m as f64 * alpha) * chi[q - m];
        }
        chi.push(acc / q as f64);
    }
    chi[k]
}

/// `chi^(s,k)` by the explicit expansion over cycle types.
pub fn char_sk_newton(s: SpinLabel, k: usize, alpha: f64) -> f64 {
    let two_s = s.two_s();
    partitions_by_multiplicity(k)
        .iter()
        .map(|m| {
            let parts: u32 = m.iter().sum();
            let sign = if (k as u32 - parts).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            let prod: f64 = m
                .iter()
                .enumerate()
                .map(|(i, &mr)| chi_irrep(two_s, (i + 1) as f64 * alpha).powi(mr as i32))
                .product();
            sign * prod / centralizer_order(m)
        })
        .sum()
}
