//! Matrices over polynomial rings: generic matrices, companion matrices,
//! evaluation of polynomials at matrix tuples, determinants, adjugates,
//! characteristic polynomials and Sylvester resultants.

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::{Field, Monomial, MonomialOrder, Polynomial, Scalar, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    DimensionMismatch { left: usize, right: usize },
    MissingMatrix(VarId),
    NotMonic(VarId),
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::DimensionMismatch { left, right } => {
                write!(f, "matrix dimension mismatch: {} vs {}", left, right)
            }
            MatError::MissingMatrix(v) => write!(f, "no matrix assigned to {}", v),
            MatError::NotMonic(v) => write!(f, "polynomial is not monic in {}", v),
        }
    }
}

impl std::error::Error for MatError {}

/// A square matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_entries(n: usize, entries: Vec<Polynomial>) -> PolyMatrix {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        PolyMatrix { n, entries }
    }

    pub fn zero(n: usize, field: Field, order: MonomialOrder) -> PolyMatrix {
        let entries = vec![Polynomial::zero(field, order); n * n];
        PolyMatrix { n, entries }
    }

    pub fn identity(n: usize, field: Field, order: MonomialOrder) -> PolyMatrix {
        let mut m = PolyMatrix::zero(n, field, order.clone());
        for i in 0..n {
            *m.entry_mut(i, i) = Polynomial::one(field, order.clone());
        }
        m
    }

    pub fn scalar(n: usize, c: &Scalar, order: MonomialOrder) -> PolyMatrix {
        let mut m = PolyMatrix::zero(n, c.field(), order.clone());
        for i in 0..n {
            *m.entry_mut(i, i) = Polynomial::constant(c.clone(), order.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.entries[0].field()
    }

    pub fn order(&self) -> &MonomialOrder {
        self.entries[0].order()
    }

    /// 0-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.n + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    fn check_dims(&self, other: &PolyMatrix) -> Result<(), MatError> {
        if self.n != other.n {
            return Err(MatError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.check_dims(other).unwrap();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        PolyMatrix { n: self.n, entries }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.check_dims(other).unwrap();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        PolyMatrix { n: self.n, entries }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.check_dims(other).unwrap();
        let mut out = PolyMatrix::zero(self.n, self.field(), self.order().clone());
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Polynomial::zero(self.field(), self.order().clone());
                for k in 0..self.n {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn scale(&self, p: &Polynomial) -> PolyMatrix {
        let entries = self.entries.iter().map(|e| e.mul(p)).collect();
        PolyMatrix { n: self.n, entries }
    }

    pub fn pow(&self, k: u32) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(self.n, self.field(), self.order().clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes into every entry.
    pub fn substitute(&self, assignment: &BTreeMap<VarId, Polynomial>) -> PolyMatrix {
        let entries = self.entries.iter().map(|e| e.substitute(assignment)).collect();
        PolyMatrix { n: self.n, entries }
    }
}

/// The generic matrix `(U[s][i][j])` for the s-th algebra generator.
pub fn generic_matrix(s: u32, n: usize, field: Field, order: MonomialOrder) -> PolyMatrix {
    let entries = (1..=n as u32)
        .flat_map(|i| {
            let order = order.clone();
            (1..=n as u32).map(move |j| Polynomial::var(VarId::u(s, i, j), field, order.clone()))
        })
        .collect();
    PolyMatrix { n, entries }
}

/// The companion matrix with subdiagonal ones and last column `a_1..a_n`;
/// it satisfies `C^n = a_1 I + a_2 C + ... + a_n C^(n-1)` identically.
pub fn companion_matrix(coeffs: &[Polynomial]) -> PolyMatrix {
    let n = coeffs.len();
    assert!(n >= 1, "companion matrix needs at least one coefficient");
    let field = coeffs[0].field();
    let order = coeffs[0].order().clone();
    let mut m = PolyMatrix::zero(n, field, order.clone());
    for i in 0..n.saturating_sub(1) {
        *m.entry_mut(i + 1, i) = Polynomial::one(field, order.clone());
    }
    for (i, a) in coeffs.iter().enumerate() {
        *m.entry_mut(i, n - 1) = a.clone();
    }
    m
}

/// Evaluates a polynomial at a tuple of matrices. Variables with an assigned
/// matrix are substituted; all other variables stay in the coefficients.
/// Monomials expand left-to-right in the display order of their variables,
/// which only matters when the matrices do not commute.
pub fn eval_at_matrices(
    f: &Polynomial,
    mats: &BTreeMap<VarId, PolyMatrix>,
) -> Result<PolyMatrix, MatError> {
    let n = match mats.values().next() {
        Some(m) => m.dim(),
        None => 1,
    };
    for m in mats.values() {
        if m.dim() != n {
            return Err(MatError::DimensionMismatch { left: n, right: m.dim() });
        }
    }
    let field = f.field();
    let order = f.order().clone();
    let mut acc = PolyMatrix::zero(n, field, order.clone());
    for (mono, c) in f.terms() {
        let mut coeff_mono = Monomial::one();
        let mut term = PolyMatrix::scalar(n, c, order.clone());
        for (v, e) in mono.vars() {
            match mats.get(v) {
                Some(m) => term = term.mul(&m.pow(e)),
                None => coeff_mono = coeff_mono.mul(&Monomial::var_pow(v.clone(), e)),
            }
        }
        if !coeff_mono.is_one() {
            let p = Polynomial::term(field.one(), coeff_mono, order.clone());
            term = term.scale(&p);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The first column, the image of the distinguished basis vector.
pub fn first_column(m: &PolyMatrix) -> Vec<Polynomial> {
    (0..m.dim()).map(|i| m.entry(i, 0).clone()).collect()
}

/// MN - NM.
pub fn commutator(m: &PolyMatrix, n: &PolyMatrix) -> Result<PolyMatrix, MatError> {
    m.check_dims(n)?;
    Ok(m.mul(n).sub(&n.mul(m)))
}

/// Exact determinant: cofactor expansion for n <= 3, fraction-free Bareiss
/// elimination above that.
pub fn determinant(m: &PolyMatrix) -> Polynomial {
    let n = m.dim();
    if n <= 3 {
        return det_cofactor(m);
    }
    det_bareiss(m)
}

fn det_cofactor(m: &PolyMatrix) -> Polynomial {
    let n = m.dim();
    match n {
        1 => m.entry(0, 0).clone(),
        2 => m
            .entry(0, 0)
            .mul(m.entry(1, 1))
            .sub(&m.entry(0, 1).mul(m.entry(1, 0))),
        _ => {
            let mut acc = Polynomial::zero(m.field(), m.order().clone());
            for j in 0..n {
                let term = m.entry(0, j).mul(&det_cofactor(&minor(m, 0, j)));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

fn minor(m: &PolyMatrix, row: usize, col: usize) -> PolyMatrix {
    let n = m.dim();
    let mut entries = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        if i == row {
            continue;
        }
        for j in 0..n {
            if j == col {
                continue;
            }
            entries.push(m.entry(i, j).clone());
        }
    }
    PolyMatrix::from_entries(n - 1, entries)
}

/// Bareiss fraction-free elimination; divisions are exact by construction.
fn det_bareiss(m: &PolyMatrix) -> Polynomial {
    let n = m.dim();
    let field = m.field();
    let order = m.order().clone();
    let mut a: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut sign_flip = false;
    let mut prev = Polynomial::one(field, order.clone());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Polynomial::zero(field, order),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
            }
        }
        for i in k + 1..n {
            a[i][k] = Polynomial::zero(field, order.clone());
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// The adjugate, satisfying `M * adj(M) = adj(M) * M = det(M) * I`.
pub fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.dim();
    if n == 1 {
        return PolyMatrix::identity(1, m.field(), m.order().clone());
    }
    let mut out = PolyMatrix::zero(n, m.field(), m.order().clone());
    for i in 0..n {
        for j in 0..n {
            let c = determinant(&minor(m, j, i));
            *out.entry_mut(i, j) = if (i + j) % 2 == 0 { c } else { c.neg() };
        }
    }
    out
}

/// The characteristic polynomial `det(t I - M)`, monic of degree n in the
/// fresh variable `t`, which must not occur in the entries.
pub fn char_poly(m: &PolyMatrix, t: VarId) -> Polynomial {
    let n = m.dim();
    let field = m.field();
    let order = m.order().clone();
    debug_assert!(m.entries.iter().all(|p| !p.vars().contains(&t)));
    let tv = Polynomial::var(t, field, order.clone());
    let mut ti = PolyMatrix::zero(n, field, order.clone());
    for i in 0..n {
        *ti.entry_mut(i, i) = tv.clone();
    }
    determinant(&ti.sub(m))
}

/// The Sylvester resultant of `p` and `q` as univariate polynomials in `t`,
/// with `p` monic in `t`. The first deg(q) rows carry the coefficients of
/// `p`, so the result equals the product of `q` over the roots of `p`.
pub fn sylvester_resultant(
    p: &Polynomial,
    q: &Polynomial,
    t: &VarId,
) -> Result<Polynomial, MatError> {
    let field = p.field();
    let order = p.order().clone();
    let pc = p.coefficients_in(t);
    let qc = q.coefficients_in(t);
    let dp = pc.len() - 1;
    let dq = if q.is_zero() { 0 } else { qc.len() - 1 };
    if !pc[dp].is_one() {
        return Err(MatError::NotMonic(t.clone()));
    }
    if dq == 0 {
        // constant q: product over the dp roots.
        return Ok(q.pow(dp as u32));
    }
    let size = dp + dq;
    let zero = Polynomial::zero(field, order.clone());
    let mut rows: Vec<Polynomial> = vec![zero; size * size];
    // descending coefficients of p in the first dq rows
    for r in 0..dq {
        for (k, c) in pc.iter().rev().enumerate() {
            rows[r * size + r + k] = c.clone();
        }
    }
    // descending coefficients of q in the next dp rows
    for r in 0..dp {
        for (k, c) in qc.iter().rev().enumerate() {
            rows[(dq + r) * size + r + k] = c.clone();
        }
    }
    Ok(determinant(&PolyMatrix::from_entries(size, rows)))
}
