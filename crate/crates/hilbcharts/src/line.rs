//! The Hilbert scheme of n points on a localized line: the inverse-variable
//! presentation of the localization, companion determinants, the
//! spectral-mapping factorization, and the elementary-symmetric description
//! of the representing ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::charts::{build_chart, AlgebraPresentation, ChartError, ChartIdeal, SectionBeta};
use crate::matrixalg::{
    char_poly, companion_matrix, determinant, eval_at_matrices, sylvester_resultant,
};
use crate::ring::{Field, MonomialOrder, Polynomial, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineError {
    /// Multiplicative-set generators must be nonzero.
    ZeroGenerator,
    /// Generators must be univariate in the line coordinate `Y1`.
    NotUnivariate(VarId),
    Chart(ChartError),
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineError::ZeroGenerator => write!(f, "multiplicative set generators must be nonzero"),
            LineError::NotUnivariate(v) => {
                write!(f, "generator uses {}; only the line coordinate Y1 is allowed", v)
            }
            LineError::Chart(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for LineError {}

impl From<ChartError> for LineError {
    fn from(e: ChartError) -> LineError {
        LineError::Chart(e)
    }
}

/// A finite generator list for the multiplicative set; the constant 1 is
/// implicit and the list entries are univariate polynomials in the line
/// coordinate `Y1` (alias `X`).
#[derive(Clone, Debug)]
pub struct MultiplicativeSetSpec {
    pub generators: Vec<Polynomial>,
}

impl MultiplicativeSetSpec {
    pub fn new(generators: Vec<Polynomial>) -> Result<Self, LineError> {
        for g in &generators {
            if g.is_zero() {
                return Err(LineError::ZeroGenerator);
            }
            for v in g.vars() {
                if v != VarId::Y(1) {
                    return Err(LineError::NotUnivariate(v));
                }
            }
        }
        Ok(MultiplicativeSetSpec { generators })
    }
}

/// The presentation of the localization: the line coordinate `Y1` plus one
/// inverse variable per generator, with relations `s(Y1) * Y_s - 1`.
pub fn localized_presentation(
    spec: &MultiplicativeSetSpec,
    field: Field,
    order: MonomialOrder,
) -> Result<AlgebraPresentation, LineError> {
    let m = 1 + spec.generators.len() as u32;
    let mut relations = Vec::new();
    for (k, s) in spec.generators.iter().enumerate() {
        let inverse = Polynomial::var(VarId::Y(k as u32 + 2), field, order.clone());
        let one = Polynomial::one(field, order.clone());
        relations.push(s.mul(&inverse).sub(&one));
    }
    AlgebraPresentation::new(m, relations).map_err(LineError::Chart)
}

/// The single chart covering the Hilbert scheme of n points on the
/// localized line, with the power-basis section.
pub fn line_chart(
    spec: &MultiplicativeSetSpec,
    n: usize,
    field: Field,
    order: MonomialOrder,
) -> Result<ChartIdeal, LineError> {
    let presentation = localized_presentation(spec, field, order.clone())?;
    let beta = SectionBeta::power_basis(n, field, order.clone());
    build_chart(&presentation, n, &beta, field, order).map_err(LineError::Chart)
}

/// The generic companion matrix in the coefficients `U[1][k][n]`.
pub fn generic_companion(n: usize, field: Field, order: MonomialOrder) -> crate::matrixalg::PolyMatrix {
    let coeffs: Vec<Polynomial> = (1..=n as u32)
        .map(|k| Polynomial::var(VarId::u(1, k, n as u32), field, order.clone()))
        .collect();
    companion_matrix(&coeffs)
}

/// The companion determinant `d_s = det(s(C_U))` as a polynomial in the n
/// companion coefficients. Auxiliary variables may appear in the
/// coefficients of `s`.
pub fn norm_at_companion(
    s: &Polynomial,
    n: usize,
) -> Result<Polynomial, LineError> {
    for v in s.vars() {
        if matches!(v, VarId::U { .. } | VarId::Z(_) | VarId::C(_) | VarId::T(_))
            || matches!(v, VarId::Y(s) if s != 1)
        {
            return Err(LineError::NotUnivariate(v));
        }
    }
    let field = s.field();
    let order = s.order().clone();
    let c = generic_companion(n, field, order.clone());
    let mut mats = BTreeMap::new();
    mats.insert(VarId::Y(1), c);
    let e = eval_at_matrices(s, &mats).expect("dimensions agree");
    Ok(determinant(&e))
}

/// The elementary symmetric polynomial e_k(Z_1..Z_n).
pub fn elementary_symmetric(k: usize, n: usize, field: Field, order: MonomialOrder) -> Polynomial {
    fn rec(
        k: usize,
        start: u32,
        n: u32,
        field: Field,
        order: &MonomialOrder,
    ) -> Polynomial {
        if k == 0 {
            return Polynomial::one(field, order.clone());
        }
        let mut acc = Polynomial::zero(field, order.clone());
        for i in start..=(n - k as u32 + 1) {
            let zi = Polynomial::var(VarId::Z(i), field, order.clone());
            acc = acc.add(&zi.mul(&rec(k - 1, i + 1, n, field, order)));
        }
        acc
    }
    assert!(k >= 1 && k <= n);
    rec(k, 1, n as u32, field, &order)
}

/// The substitution sending the companion coefficient `U[1][n-i+1][n]` to
/// `(-1)^(i+1) c_i`, which turns the companion characteristic polynomial
/// into the generic monic polynomial with elementary symmetric
/// coefficients.
fn companion_to_elementary(n: usize, field: Field, order: &MonomialOrder) -> BTreeMap<VarId, Polynomial> {
    let mut map = BTreeMap::new();
    for i in 1..=n as u32 {
        let ci = Polynomial::var(VarId::C(i), field, order.clone());
        let signed = if i % 2 == 1 { ci } else { ci.neg() };
        map.insert(VarId::u(1, n as u32 - i + 1, n as u32), signed);
    }
    map
}

/// The generic monic polynomial `T^n - c1 T^(n-1) + c2 T^(n-2) - ...` in
/// the elimination variable `t`.
pub fn generic_monic_in_c(n: usize, t: &VarId, field: Field, order: MonomialOrder) -> Polynomial {
    let tv = Polynomial::var(t.clone(), field, order.clone());
    let mut p = tv.pow(n as u32);
    for i in 1..=n as u32 {
        let ci = Polynomial::var(VarId::C(i), field, order.clone());
        let term = ci.mul(&tv.pow(n as u32 - i));
        p = if i % 2 == 1 { p.sub(&term) } else { p.add(&term) };
    }
    p
}

/// Verifies the spectral factorization for `s`: the polynomial identity
/// `det(s(C_U)) = Res(p_{C_U}, s)` in the companion coefficients, and,
/// after rewriting the companion coefficients in elementary symmetric
/// coordinates, equality with the product of `s(Z_i)` over i = 1..n.
pub fn spectral_factorization_check(s: &Polynomial, n: usize) -> Result<bool, LineError> {
    for v in s.vars() {
        if matches!(v, VarId::U { .. } | VarId::Z(_) | VarId::C(_) | VarId::T(_)) {
            return Err(LineError::NotUnivariate(v));
        }
    }
    let field = s.field();
    let order = s.order().clone();
    let t = VarId::T(1);

    let c = generic_companion(n, field, order.clone());
    let mut mats = BTreeMap::new();
    mats.insert(VarId::Y(1), c.clone());
    let det_side = determinant(&eval_at_matrices(s, &mats).expect("dimensions agree"));

    let p = char_poly(&c, t.clone());
    let s_in_t = s.rename_var(&VarId::Y(1), t.clone());
    let res_side = sylvester_resultant(&p, &s_in_t, &t).map_err(|_| LineError::ZeroGenerator)?;
    if det_side != res_side {
        return Ok(false);
    }

    // elementary symmetric side
    let in_c = det_side.substitute(&companion_to_elementary(n, field, &order));
    let mut c_to_z = BTreeMap::new();
    for i in 1..=n {
        c_to_z.insert(VarId::C(i as u32), elementary_symmetric(i, n, field, order.clone()));
    }
    let lhs_z = in_c.substitute(&c_to_z);
    let mut product = Polynomial::one(field, order.clone());
    for i in 1..=n as u32 {
        product = product.mul(&s.rename_var(&VarId::Y(1), VarId::Z(i)));
    }
    Ok(lhs_z == product)
}

/// The representing-ring description: the free coordinates `c1..cn` and,
/// per multiplicative-set generator, the element to invert, written in the
/// `c` coordinates via a resultant against the generic monic polynomial.
#[derive(Clone, Debug)]
pub struct RepresentingRing {
    pub free_vars: Vec<VarId>,
    pub inverted: Vec<Polynomial>,
}

pub fn representing_ring_description(
    spec: &MultiplicativeSetSpec,
    n: usize,
    field: Field,
    order: MonomialOrder,
) -> Result<RepresentingRing, LineError> {
    let t = VarId::T(1);
    let p = generic_monic_in_c(n, &t, field, order.clone());
    let mut inverted = Vec::new();
    for s in &spec.generators {
        for v in s.vars() {
            if v != VarId::Y(1) {
                return Err(LineError::NotUnivariate(v));
            }
        }
        let s_in_t = s.rename_var(&VarId::Y(1), t.clone());
        let r = sylvester_resultant(&p, &s_in_t, &t).expect("generic monic is monic");
        inverted.push(r);
    }
    Ok(RepresentingRing {
        free_vars: (1..=n as u32).map(VarId::C).collect(),
        inverted,
    })
}
