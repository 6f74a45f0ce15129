//! Field-level linear algebra for matrix tuples: cyclic-vector detection
//! via the algebra orbit of the distinguished basis vector, commutant
//! computation, and the multiplication-operator characterization of the
//! commutant of a cyclic tuple.

use std::fmt;

use crate::ring::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommutantError {
    /// The orbit of the distinguished vector does not span, so the
    /// multiplication-form characterization does not apply.
    NotCyclic { orbit_dim: usize, n: usize },
    DimensionMismatch,
}

impl fmt::Display for CommutantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutantError::NotCyclic { orbit_dim, n } => {
                write!(f, "tuple is not cyclic: orbit dimension {} < {}", orbit_dim, n)
            }
            CommutantError::DimensionMismatch => write!(f, "matrices must all be n x n"),
        }
    }
}

impl std::error::Error for CommutantError {}

/// A square matrix of scalars, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn from_entries(n: usize, entries: Vec<Scalar>) -> ScalarMatrix {
        assert_eq!(entries.len(), n * n);
        ScalarMatrix { n, entries }
    }

    pub fn zero(n: usize, field: Field) -> ScalarMatrix {
        ScalarMatrix { n, entries: vec![field.zero(); n * n] }
    }

    pub fn identity(n: usize, field: Field) -> ScalarMatrix {
        let mut m = ScalarMatrix::zero(n, field);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.entries[0].field()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &ScalarMatrix) -> ScalarMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        ScalarMatrix { n: self.n, entries }
    }

    pub fn sub(&self, other: &ScalarMatrix) -> ScalarMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        ScalarMatrix { n: self.n, entries }
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.n, other.n);
        let field = self.field();
        let mut out = ScalarMatrix::zero(self.n, field);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = field.zero();
                for k in 0..self.n {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        (0..self.n)
            .map(|i| {
                let mut acc = field.zero();
                for k in 0..self.n {
                    acc = acc.add(&self.entry(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }
}

/// A tuple of n x n scalar matrices with the first basis vector
/// distinguished.
#[derive(Clone, Debug)]
pub struct ScalarMatrixTuple {
    pub n: usize,
    pub mats: Vec<ScalarMatrix>,
}

impl ScalarMatrixTuple {
    pub fn new(n: usize, mats: Vec<ScalarMatrix>) -> Result<Self, CommutantError> {
        if mats.iter().any(|m| m.dim() != n) {
            return Err(CommutantError::DimensionMismatch);
        }
        Ok(ScalarMatrixTuple { n, mats })
    }

    fn field(&self) -> Field {
        self.mats
            .first()
            .map(|m| m.field())
            .unwrap_or(Field::Rational)
    }
}

/// An incrementally built row space in reduced echelon form.
struct RowSpace {
    width: usize,
    field: Field,
    /// reduced rows with their pivot columns
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowSpace {
    fn new(width: usize, field: Field) -> RowSpace {
        RowSpace { width, field, rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span; a surviving remainder is normalized
    /// and inserted, returning true.
    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width);
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = v[*pivot].clone();
                for k in 0..self.width {
                    v[k] = v[k].sub(&c.mul(&row[k]));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pivot) => {
                let inv = v[pivot].inv();
                for x in v.iter_mut() {
                    *x = x.mul(&inv);
                }
                for (_, row) in self.rows.iter_mut() {
                    if !row[pivot].is_zero() {
                        let c = row[pivot].clone();
                        for k in 0..self.width {
                            row[k] = row[k].sub(&c.mul(&v[k]));
                        }
                    }
                }
                self.rows.push((pivot, v));
                self.rows.sort_by_key(|(p, _)| *p);
                true
            }
        }
    }

    fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = v[*pivot].clone();
                for k in 0..self.width {
                    v[k] = v[k].sub(&c.mul(&row[k]));
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Basis of the smallest subspace containing e_1 and stable under every
/// matrix of the tuple: breadth-first word enumeration with the
/// stabilization stopping rule, capped at word length n.
pub fn algebra_orbit(t: &ScalarMatrixTuple) -> Vec<Vec<Scalar>> {
    let field = t.field();
    let mut space = RowSpace::new(t.n, field);
    let mut e1 = vec![field.zero(); t.n];
    e1[0] = field.one();
    space.insert(e1.clone());
    let mut frontier = vec![e1];
    for _ in 0..t.n {
        let mut next = Vec::new();
        for v in &frontier {
            for m in &t.mats {
                let w = m.mul_vec(v);
                if space.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() || space.dim() == t.n {
            break;
        }
        frontier = next;
    }
    space.basis()
}

/// Basis of the space of matrices commuting with every matrix of the
/// tuple, by exact Gaussian elimination on the stacked linear system
/// `vM - Mv = 0`. The dimension is always at least one.
pub fn commutant_basis(t: &ScalarMatrixTuple) -> Vec<ScalarMatrix> {
    let n = t.n;
    let field = t.field();
    let cols = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for m in &t.mats {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![field.zero(); cols];
                // (vM)_{ij} = sum_k v_{ik} M_{kj}; (Mv)_{ij} = sum_k M_{ik} v_{kj}
                for k in 0..n {
                    let idx = i * n + k;
                    row[idx] = row[idx].add(m.entry(k, j));
                    let idx = k * n + j;
                    row[idx] = row[idx].sub(m.entry(i, k));
                }
                rows.push(row);
            }
        }
    }
    nullspace_basis(rows, cols, field)
        .into_iter()
        .map(|v| ScalarMatrix::from_entries(n, v))
        .collect()
}

/// Basis of the solution space of a homogeneous system.
fn nullspace_basis(rows: Vec<Vec<Scalar>>, cols: usize, field: Field) -> Vec<Vec<Scalar>> {
    let mut space = RowSpace::new(cols, field);
    for r in rows {
        space.insert(r);
    }
    let reduced = space.rows;
    let pivots: Vec<usize> = reduced.iter().map(|(p, _)| *p).collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (p, row) in &reduced {
            v[*p] = row[free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Span of all words in the matrices (including the empty word), as
/// vectors of length n^2; grows until stabilization.
fn word_span(t: &ScalarMatrixTuple) -> RowSpace {
    let field = t.field();
    let mut space = RowSpace::new(t.n * t.n, field);
    let id = ScalarMatrix::identity(t.n, field);
    space.insert(id.entries().to_vec());
    let mut frontier = vec![id];
    loop {
        let mut next = Vec::new();
        for w in &frontier {
            for m in &t.mats {
                let prod = w.mul(m);
                if space.insert(prod.entries().to_vec()) {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            return space;
        }
        frontier = next;
    }
}

/// For a cyclic tuple, checks that the commutant consists exactly of the
/// multiplication operators: the commutant dimension equals n and every
/// commutant element lies in the span of words in the matrices. Errors if
/// the tuple is not cyclic.
pub fn check_multiplication_form(t: &ScalarMatrixTuple) -> Result<bool, CommutantError> {
    let orbit = algebra_orbit(t);
    if orbit.len() != t.n {
        return Err(CommutantError::NotCyclic { orbit_dim: orbit.len(), n: t.n });
    }
    let comm = commutant_basis(t);
    if comm.len() != t.n {
        return Ok(false);
    }
    let words = word_span(t);
    Ok(comm.iter().all(|v| words.contains(v.entries())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(n: usize, vals: &[i64]) -> ScalarMatrix {
        let f = Field::Rational;
        ScalarMatrix::from_entries(n, vals.iter().map(|&v| f.from_int(v)).collect())
    }

    fn companion(coeffs: &[i64]) -> ScalarMatrix {
        let n = coeffs.len();
        let f = Field::Rational;
        let mut m = ScalarMatrix::zero(n, f);
        for i in 0..n - 1 {
            m.set(i + 1, i, f.one());
        }
        for (i, &a) in coeffs.iter().enumerate() {
            m.set(i, n - 1, f.from_int(a));
        }
        m
    }

    #[test]
    fn orbit_examples() {
        let t = ScalarMatrixTuple::new(3, vec![ScalarMatrix::identity(3, Field::Rational)])
            .unwrap();
        assert_eq!(algebra_orbit(&t).len(), 1);
        let t = ScalarMatrixTuple::new(2, vec![ScalarMatrix::zero(2, Field::Rational)]).unwrap();
        assert_eq!(algebra_orbit(&t).len(), 1);
        for n in 2..=4usize {
            let coeffs: Vec<i64> = (1..=n as i64).collect();
            let t = ScalarMatrixTuple::new(n, vec![companion(&coeffs)]).unwrap();
            assert_eq!(algebra_orbit(&t).len(), n, "companion orbit spans, n = {}", n);
        }
    }

    #[test]
    fn orbit_is_monotone_under_adding_matrices() {
        let a = qm(3, &[0, 0, 0, 1, 0, 0, 0, 0, 0]);
        let b = qm(3, &[0, 0, 0, 0, 0, 0, 0, 1, 0]);
        let d1 = algebra_orbit(&ScalarMatrixTuple::new(3, vec![a.clone()]).unwrap()).len();
        let d2 = algebra_orbit(&ScalarMatrixTuple::new(3, vec![a, b]).unwrap()).len();
        assert!(d1 <= d2);
        assert_eq!(d2, 3);
    }

    #[test]
    fn commutant_examples() {
        // identity: the full endomorphism algebra
        let t = ScalarMatrixTuple::new(2, vec![ScalarMatrix::identity(2, Field::Rational)])
            .unwrap();
        assert_eq!(commutant_basis(&t).len(), 4);
        // companion, n = 3: dimension 3
        let t = ScalarMatrixTuple::new(3, vec![companion(&[1, 2, 3])]).unwrap();
        assert_eq!(commutant_basis(&t).len(), 3);
        // diag(1, 2): diagonal matrices
        let t = ScalarMatrixTuple::new(2, vec![qm(2, &[1, 0, 0, 2])]).unwrap();
        assert_eq!(commutant_basis(&t).len(), 2);
    }

    #[test]
    fn commutant_dimension_is_conjugation_invariant() {
        let c = companion(&[1, 2, 3]);
        let g = qm(3, &[1, 1, 0, 0, 1, 2, 1, 0, 1]);
        let f = Field::Rational;
        let det = f.from_int(3);
        let adj = [1, -1, 2, 2, 1, -2, -1, 1, 1];
        let mut ginv = ScalarMatrix::zero(3, f);
        for i in 0..3 {
            for j in 0..3 {
                ginv.set(i, j, f.from_int(adj[i * 3 + j]).div(&det));
            }
        }
        assert_eq!(g.mul(&ginv), ScalarMatrix::identity(3, f));
        let conj = g.mul(&c).mul(&ginv);
        let t1 = ScalarMatrixTuple::new(3, vec![c]).unwrap();
        let t2 = ScalarMatrixTuple::new(3, vec![conj]).unwrap();
        assert_eq!(commutant_basis(&t1).len(), commutant_basis(&t2).len());
    }

    #[test]
    fn multiplication_form_for_companion_tuples() {
        for n in 2..=4usize {
            let coeffs: Vec<i64> = (0..n as i64).map(|k| k - 1).collect();
            let c = companion(&coeffs);
            let t = ScalarMatrixTuple::new(n, vec![c.clone()]).unwrap();
            assert_eq!(check_multiplication_form(&t), Ok(true), "n = {}", n);
            // companion plus a polynomial in it: same commutant
            let poly_in_c = c.mul(&c).add(&ScalarMatrix::identity(n, Field::Rational));
            let t = ScalarMatrixTuple::new(n, vec![c, poly_in_c]).unwrap();
            assert_eq!(check_multiplication_form(&t), Ok(true));
        }
    }

    #[test]
    fn multiplication_form_requires_cyclicity() {
        let t = ScalarMatrixTuple::new(2, vec![ScalarMatrix::identity(2, Field::Rational)])
            .unwrap();
        assert_eq!(
            check_multiplication_form(&t),
            Err(CommutantError::NotCyclic { orbit_dim: 1, n: 2 })
        );
    }

    #[test]
    fn commutant_over_a_prime_field() {
        let f = Field::Prime(5);
        let mut c = ScalarMatrix::zero(3, f);
        c.set(1, 0, f.one());
        c.set(2, 1, f.one());
        c.set(0, 2, f.from_int(2));
        c.set(1, 2, f.from_int(3));
        c.set(2, 2, f.from_int(1));
        let t = ScalarMatrixTuple::new(3, vec![c]).unwrap();
        assert_eq!(commutant_basis(&t).len(), 3);
        assert_eq!(check_multiplication_form(&t), Ok(true));
    }
}
