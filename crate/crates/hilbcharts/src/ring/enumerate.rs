//! Graded-lex enumeration of monomials in `Y1..Ym`.
//!
//! The enumeration starts at the constant monomial and is degree-increasing,
//! lexicographic within each degree with `Y1 > Y2 > ... > Ym`. The k-th
//! monomial (1-based) has degree d exactly when
//! `binom(d+m-1, m) < k <= binom(d+m, m)`.

use super::monomial::Monomial;
use super::var::VarId;

/// binom(n, k) as u128; desk-scale inputs only.
pub fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc
}

/// All exponent vectors of total degree `d` in `m` variables, in
/// lexicographic descending order (largest `Y1`-exponent first).
fn exponent_vectors(m: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, d: u32, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
        if m == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(m - 1, d - e, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d, &mut out, &mut Vec::new());
    out
}

fn to_monomial(exps: &[u32]) -> Monomial {
    Monomial::from_exps(
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (VarId::Y(i as u32 + 1), e)),
    )
}

/// Monomials of degree exactly `d` in `m` variables, enumeration order.
pub fn monomials_of_degree(m: usize, d: u32) -> Vec<Monomial> {
    exponent_vectors(m, d).iter().map(|e| to_monomial(e)).collect()
}

/// The degree of the k-th monomial (1-based) in `m` variables.
pub fn degree_of_index(m: usize, k: u128) -> u32 {
    assert!(k >= 1, "indices are 1-based");
    let mut d = 0u32;
    while binom_u128(d as u64 + m as u64, m as u64) < k {
        d += 1;
    }
    d
}

/// The k-th monomial (1-based) in the graded-lex enumeration.
pub fn monomial_by_index(m: usize, k: u128) -> Monomial {
    assert!(m >= 1, "need at least one variable");
    let d = degree_of_index(m, k);
    let below = binom_u128(d as u64 + m as u64 - 1, m as u64);
    let offset = (k - below - 1) as usize;
    monomials_of_degree(m, d)[offset].clone()
}
