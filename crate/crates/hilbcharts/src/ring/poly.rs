//! Sparse multivariate polynomials with exact field coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::scalar::{Field, FieldError, Scalar};
use super::var::VarId;

/// A canonical sparse polynomial: nonzero coefficients only, terms kept in
/// strictly decreasing monomial order under the attached order tag. Values
/// are immutable after construction; all operations return new polynomials.
#[derive(Clone, Debug)]
pub struct Polynomial {
    field: Field,
    order: MonomialOrder,
    /// (monomial, coefficient), strictly decreasing in `order`.
    terms: Vec<(Monomial, Scalar)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            return self.terms == other.terms;
        }
        let a: BTreeMap<_, _> = self.terms.iter().cloned().collect();
        let b: BTreeMap<_, _> = other.terms.iter().cloned().collect();
        a == b
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(field: Field, order: MonomialOrder) -> Polynomial {
        Polynomial { field, order, terms: Vec::new() }
    }

    pub fn one(field: Field, order: MonomialOrder) -> Polynomial {
        Polynomial::constant(field.one(), order)
    }

    pub fn constant(c: Scalar, order: MonomialOrder) -> Polynomial {
        let field = c.field();
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::one(), c)] };
        Polynomial { field, order, terms }
    }

    pub fn from_int(n: i64, field: Field, order: MonomialOrder) -> Polynomial {
        Polynomial::constant(field.from_int(n), order)
    }

    pub fn var(v: VarId, field: Field, order: MonomialOrder) -> Polynomial {
        Polynomial::term(field.one(), Monomial::var(v), order)
    }

    pub fn term(c: Scalar, m: Monomial, order: MonomialOrder) -> Polynomial {
        let field = c.field();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { field, order, terms }
    }

    /// Builds a canonical polynomial from arbitrary (monomial, coefficient)
    /// pairs, merging duplicates and dropping zeros.
    pub fn from_terms(
        pairs: impl IntoIterator<Item = (Monomial, Scalar)>,
        field: Field,
        order: MonomialOrder,
    ) -> Polynomial {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in pairs {
            debug_assert_eq!(c.field(), field);
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = map.into_iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { field, order, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut set = BTreeSet::new();
        for (m, _) in &self.terms {
            for (v, _) in m.vars() {
                set.insert(v.clone());
            }
        }
        set
    }

    pub fn degree_in(&self, v: &VarId) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Checked arithmetic with an incompatible-field error; the operator
    /// impls panic instead and are meant for internal use where fields are
    /// already known to agree.
    pub fn arith(&self, other: &Polynomial, op: BinOp) -> Result<Polynomial, FieldError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch { left: self.field, right: other.field });
        }
        Ok(match op {
            BinOp::Add => self.add(other),
            BinOp::Sub => self.sub(other),
            BinOp::Mul => self.mul(other),
        })
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert_eq!(self.field, other.field, "polynomial field mismatch");
        assert_eq!(self.order, other.order, "polynomial order mismatch");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        // Merge two sorted term lists.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            match self.order.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field, self.order.clone());
        }
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let prod = m.mul(n);
                let cd = c.mul(d);
                match map.entry(prod) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(cd);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&cd);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = map.into_iter().collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.order.clone());
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect();
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut terms: Vec<(Monomial, Scalar)> =
            self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Polynomial { field: self.field, order: self.order.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.order.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient, making the polynomial monic.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Re-sorts the terms under a different monomial order.
    pub fn reorder(&self, order: MonomialOrder) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { field: self.field, order, terms }
    }

    /// Substitutes polynomials for variables; unassigned variables stay.
    /// The substitution is a ring homomorphism.
    pub fn substitute(&self, assignment: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        let mut acc = Polynomial::zero(self.field, self.order.clone());
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone(), self.order.clone());
            for (v, e) in m.vars() {
                match assignment.get(v) {
                    Some(p) => term = term.mul(&p.reorder(self.order.clone()).pow(e)),
                    None => term = term.mul_monomial(&Monomial::var_pow(v.clone(), e)),
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Renames a single variable.
    pub fn rename_var(&self, from: &VarId, to: VarId) -> Polynomial {
        let mut map = BTreeMap::new();
        map.insert(from.clone(), Polynomial::var(to, self.field, self.order.clone()));
        self.substitute(&map)
    }

    /// Evaluates at a full scalar assignment; every variable of the
    /// polynomial must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<VarId, Scalar>) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.vars() {
                let x = assignment
                    .get(v)
                    .unwrap_or_else(|| panic!("unassigned variable {}", v));
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Treats the polynomial as univariate in `v` and returns the
    /// coefficients [c_0, ..., c_d] (polynomials free of `v`), with
    /// c_d nonzero unless the polynomial is zero.
    pub fn coefficients_in(&self, v: &VarId) -> Vec<Polynomial> {
        let d = self.degree_in(v);
        let mut coeffs =
            vec![Polynomial::zero(self.field, self.order.clone()); d as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = Monomial::var_pow(v.clone(), e).div_into(m);
            coeffs[e as usize] =
                coeffs[e as usize].add(&Polynomial::term(c.clone(), rest, self.order.clone()));
        }
        coeffs
    }

    /// Exact division; `None` when `self` is not a polynomial multiple of
    /// `div`. Uses leading-term cancellation under the attached order.
    pub fn div_exact(&self, div: &Polynomial) -> Option<Polynomial> {
        self.assert_compatible(div);
        let (dm, dc) = div.leading_term()?;
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.field, self.order.clone());
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.div_into(rm);
            let qc = rc.div(&dc);
            let qt = Polynomial::term(qc, qm, self.order.clone());
            rem = rem.sub(&qt.mul(div));
            quot = quot.add(&qt);
        }
        Some(quot)
    }

    /// Reduces every coefficient mod p; the polynomial must be over the
    /// rationals (denominators prime to p) or already over F_p.
    pub fn reduce_mod(&self, p: u16) -> Result<Polynomial, FieldError> {
        let order = self.order.clone();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let r = c.reduce_mod(p)?;
            if !r.is_zero() {
                terms.push((m.clone(), r));
            }
        }
        Ok(Polynomial { field: Field::Prime(p), order, terms })
    }
}

/// Canonical text: terms in decreasing order joined by ` + ` / ` - `;
/// coefficient magnitudes omitted when 1 on a nonconstant monomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_polynomial;

    fn q(s: &str) -> Polynomial {
        parse_polynomial(s, Field::Rational, MonomialOrder::grevlex()).unwrap()
    }

    #[test]
    fn additive_inverse() {
        assert_eq!(q("Y1 + 1").add(&q("-1")), q("Y1"));
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(q("Y1 + Y2").mul(&q("Y1 - Y2")), q("Y1^2 - Y2^2"));
    }

    #[test]
    fn square_over_f2() {
        let f = Field::Prime(2);
        let p = parse_polynomial("Y1 + 1", f, MonomialOrder::grevlex()).unwrap();
        let expect = parse_polynomial("Y1^2 + 1", f, MonomialOrder::grevlex()).unwrap();
        assert_eq!(p.mul(&p), expect);
    }

    #[test]
    fn mixed_field_error() {
        let a = q("Y1");
        let b = Polynomial::one(Field::Prime(3), MonomialOrder::grevlex());
        assert!(matches!(a.arith(&b, BinOp::Add), Err(FieldError::Mismatch { .. })));
    }

    #[test]
    fn substitute_is_homomorphic() {
        let mut map = BTreeMap::new();
        map.insert(VarId::Y(1), q("Y2 + 1"));
        let p = q("Y1^2 - 1");
        let r = q("Y1 + 2");
        let lhs = p.mul(&r).substitute(&map);
        let rhs = p.substitute(&map).mul(&r.substitute(&map));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitute_examples() {
        // Y1^2 with Y1 -> 2 gives 4.
        let mut map = BTreeMap::new();
        map.insert(VarId::Y(1), q("2"));
        assert_eq!(q("Y1^2").substitute(&map), q("4"));
        // Y1*Y2 with Y1 -> Y2 gives Y2^2.
        let mut map = BTreeMap::new();
        map.insert(VarId::Y(1), q("Y2"));
        assert_eq!(q("Y1*Y2").substitute(&map), q("Y2^2"));
        // swap symmetry
        let mut map = BTreeMap::new();
        map.insert(VarId::Y(1), q("Y2"));
        map.insert(VarId::Y(2), q("Y1"));
        assert_eq!(q("Y1 + Y2").substitute(&map), q("Y1 + Y2"));
    }

    #[test]
    fn exact_division() {
        let p = q("Y1^2 - Y2^2");
        let d = q("Y1 - Y2");
        assert_eq!(p.div_exact(&d).unwrap(), q("Y1 + Y2"));
        assert!(q("Y1^2 + 1").div_exact(&d).is_none());
    }

    #[test]
    fn coefficients_in_variable() {
        let p = q("Y1^2*Y2 + 2*Y1 - 3");
        let cs = p.coefficients_in(&VarId::Y(1));
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], q("-3"));
        assert_eq!(cs[1], q("2"));
        assert_eq!(cs[2], q("Y2"));
    }

    #[test]
    fn display_matches_grammar_example() {
        let p = q("Y1^2 - 2/3*U[1][2][2]*Y1 + 1");
        assert_eq!(p.to_string(), "Y1^2 - 2/3*U[1][2][2]*Y1 + 1");
    }
}
