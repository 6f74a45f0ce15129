//! Degenerate families of zero-dimensional ideals with fixed Hilbert
//! function: degree/slack arithmetic, the family generators, colength and
//! distinctness checks, and the dimension lower bound that signals
//! reducibility of the Hilbert scheme for three or more variables.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::groebner::{self, GbError};
use crate::ring::{
    monomial_by_index, monomials_of_degree, Field, Monomial, MonomialOrder, Polynomial, Scalar,
    VarId,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IarrobinoError {
    /// n and m must be at least 1.
    BadInput,
    /// The coefficient matrix must be s x (binom(d+m-1, m-1) - s).
    MatrixShape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    /// Parameter sets must share (n, m) to be comparable.
    IncomparableParams,
    Resource(GbError),
}

impl fmt::Display for IarrobinoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IarrobinoError::BadInput => write!(f, "n and m must be positive"),
            IarrobinoError::MatrixShape { rows, cols, expected_rows, expected_cols } => write!(
                f,
                "coefficient matrix is {}x{}, expected {}x{}",
                rows, cols, expected_rows, expected_cols
            ),
            IarrobinoError::IncomparableParams => {
                write!(f, "parameter sets must share the same n and m")
            }
            IarrobinoError::Resource(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for IarrobinoError {}

impl From<GbError> for IarrobinoError {
    fn from(e: GbError) -> IarrobinoError {
        IarrobinoError::Resource(e)
    }
}

fn big_binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial(BigInt::from(n), BigInt::from(k))
}

/// The unique degree d with `binom(d+m-1, m) < n <= binom(d+m, m)`, and the
/// slack `s = binom(d+m, m) - n`. Exponential then binary search on the
/// smallest d with `binom(d+m, m) >= n`.
pub fn degree_and_slack(n: u64, m: u64) -> (u32, BigInt) {
    assert!(n >= 1 && m >= 1, "n and m must be positive");
    let n_big = BigInt::from(n);
    let mut hi = 1u64;
    while big_binom(hi + m, m) < n_big {
        hi *= 2;
    }
    let mut lo = 0u64;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if big_binom(mid + m, m) < n_big {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let d = lo as u32;
    let s = big_binom(d as u64 + m, m) - n_big;
    (d, s)
}

/// Parameters of one member of the degenerate family: the points count n,
/// the variable count m, the forced degree d, the slack s, and an
/// `s x (binom(d+m-1, m-1) - s)` coefficient matrix.
#[derive(Clone, Debug)]
pub struct DegenerateFamilyParams {
    pub n: u64,
    pub m: u64,
    pub d: u32,
    pub s: usize,
    /// Row i binds the (n+1+i)-th monomial; column j carries the
    /// coefficient of the (binom(d+m-1, m) + 1 + j)-th monomial.
    pub a: Vec<Vec<Scalar>>,
}

impl DegenerateFamilyParams {
    pub fn new(n: u64, m: u64, a: Vec<Vec<Scalar>>) -> Result<Self, IarrobinoError> {
        if n < 1 || m < 1 {
            return Err(IarrobinoError::BadInput);
        }
        let (d, s_big) = degree_and_slack(n, m);
        let s = s_big.to_usize().expect("desk-scale slack");
        let cols_big = big_binom(d as u64 + m - 1, m - 1) - BigInt::from(s);
        let cols = cols_big.to_usize().expect("desk-scale width");
        let got_rows = a.len();
        let got_cols = a.first().map(|r| r.len()).unwrap_or(0);
        let rect = a.iter().all(|r| r.len() == got_cols);
        if got_rows != s || (s > 0 && (got_cols != cols || !rect)) {
            return Err(IarrobinoError::MatrixShape {
                rows: got_rows,
                cols: got_cols,
                expected_rows: s,
                expected_cols: cols,
            });
        }
        Ok(DegenerateFamilyParams { n, m, d, s, a })
    }

    /// The all-zero coefficient matrix.
    pub fn zero_matrix(n: u64, m: u64, field: Field) -> Result<Self, IarrobinoError> {
        let (d, s_big) = degree_and_slack(n, m);
        let s = s_big.to_usize().expect("desk-scale slack");
        let cols = (big_binom(d as u64 + m - 1, m - 1) - BigInt::from(s))
            .to_usize()
            .expect("desk-scale width");
        let a = vec![vec![field.zero(); cols]; s];
        DegenerateFamilyParams::new(n, m, a)
    }

    fn field(&self) -> Field {
        self.a
            .first()
            .and_then(|r| r.first())
            .map(|c| c.field())
            .unwrap_or(Field::Rational)
    }
}

/// The generators of one family member: every monomial of degree d+1, plus,
/// for each bound monomial m_i (i = n+1 .. binom(d+m, m)), the polynomial
/// `m_i - sum_j a[i][j] m_j` with j running over the degree-d monomials
/// kept in the quotient basis (indices binom(d+m-1, m)+1 .. n).
pub fn degenerate_ideal(params: &DegenerateFamilyParams, order: MonomialOrder) -> Vec<Polynomial> {
    let field = params.field();
    let m = params.m as usize;
    let d = params.d;
    let mut gens: Vec<Polynomial> = monomials_of_degree(m, d + 1)
        .into_iter()
        .map(|mono| Polynomial::term(field.one(), mono, order.clone()))
        .collect();
    let first_deg_d = big_binom(d as u64 + params.m - 1, params.m)
        .to_u128()
        .expect("desk scale");
    for (row, coeffs) in params.a.iter().enumerate() {
        let i = params.n as u128 + 1 + row as u128;
        let bound = monomial_by_index(m, i);
        let mut p = Polynomial::term(field.one(), bound, order.clone());
        for (col, c) in coeffs.iter().enumerate() {
            let j = first_deg_d + 1 + col as u128;
            let kept = monomial_by_index(m, j);
            p = p.sub(&Polynomial::term(c.clone(), kept, order.clone()));
        }
        gens.push(p);
    }
    gens
}

/// Counts the staircase (monomials outside the leading-term ideal) of a
/// Groebner basis of `gens`; true iff it is finite and equals n. The
/// ambient variables are `Y1..Ym`.
pub fn check_colength(
    gens: &[Polynomial],
    n: u64,
    m: u64,
    degree_cap: u64,
) -> Result<bool, IarrobinoError> {
    let order = MonomialOrder::grevlex();
    let gb = groebner::groebner_basis(gens, &order, degree_cap);
    if gb.is_partial() {
        return Err(IarrobinoError::Resource(GbError::Partial { degree_cap }));
    }
    let leads: Vec<Monomial> = gb
        .generators()
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    // zero-dimensionality: every variable needs a pure power among the
    // leading terms
    for v in 1..=m as u32 {
        let pure = leads.iter().any(|l| {
            l.vars().count() == 1 && l.exponent(&VarId::Y(v)) > 0
        });
        if !pure {
            return Ok(false);
        }
    }
    // breadth-first staircase count from 1
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one()];
    let cap = n + 1;
    while let Some(mono) = frontier.pop() {
        if seen.contains(&mono) || leads.iter().any(|l| l.divides(&mono)) {
            continue;
        }
        seen.insert(mono.clone());
        if seen.len() as u64 > cap {
            return Ok(false);
        }
        for v in 1..=m as u32 {
            frontier.push(mono.mul(&Monomial::var(VarId::Y(v))));
        }
    }
    Ok(seen.len() as u64 == n)
}

/// True iff the two parameter sets define different ideals, decided by
/// comparing reduced Groebner bases.
pub fn distinctness_check(
    p1: &DegenerateFamilyParams,
    p2: &DegenerateFamilyParams,
    degree_cap: u64,
) -> Result<bool, IarrobinoError> {
    if p1.n != p2.n || p1.m != p2.m {
        return Err(IarrobinoError::IncomparableParams);
    }
    let order = MonomialOrder::grevlex();
    let b1 = groebner::groebner_basis(&degenerate_ideal(p1, order.clone()), &order, degree_cap);
    let b2 = groebner::groebner_basis(&degenerate_ideal(p2, order.clone()), &order, degree_cap);
    if b1.is_partial() || b2.is_partial() {
        return Err(IarrobinoError::Resource(GbError::Partial { degree_cap }));
    }
    Ok(b1.generators() != b2.generators())
}

/// The dimension lower bound `s (B - s)` with `B = binom(d+m-1, m-1)`,
/// either at the given slack or at the optimal slack `floor(B / 2)` (with n
/// adjusted to `binom(d+m, m) - s`). The asymptotic comparison value is the
/// exact rational m-th power of `n^(2 - 2/m) (m!/2)^(-2/m) (m^2/16)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionBound {
    pub d: u32,
    pub s: BigInt,
    /// The points count the bound refers to (adjusted when optimizing).
    pub n: BigInt,
    /// B = binom(d+m-1, m-1).
    pub b: BigInt,
    pub bound: BigInt,
    /// m n, the generic chart dimension at the same points count.
    pub generic_dim: BigInt,
    /// The m-th power of the asymptotic expression, an exact rational.
    pub asymptotic_pow_m: BigRational,
}

pub fn dimension_lower_bound(n: u64, m: u64, s_choice: Option<u64>) -> DimensionBound {
    assert!(n >= 1 && m >= 1);
    let (d, natural_s) = degree_and_slack(n, m);
    let b = big_binom(d as u64 + m - 1, m - 1);
    let (s, adj_n) = match s_choice {
        Some(s) => (BigInt::from(s), big_binom(d as u64 + m, m) - BigInt::from(s)),
        None => {
            let s = &b / BigInt::from(2);
            let adj_n = big_binom(d as u64 + m, m) - &s;
            (s, adj_n)
        }
    };
    let _ = natural_s;
    let bound = &s * (&b - &s);
    let generic_dim = BigInt::from(m) * &adj_n;
    DimensionBound {
        d,
        s,
        n: adj_n.clone(),
        b,
        bound,
        generic_dim,
        asymptotic_pow_m: asymptotic_pow_m(&adj_n, m),
    }
}

/// `(n^(2 - 2/m) (m!/2)^(-2/m) m^2/16)^m = n^(2m-2) (m!/2)^(-2) (m^2/16)^m`.
fn asymptotic_pow_m(n: &BigInt, m: u64) -> BigRational {
    let mut fact = BigInt::one();
    for k in 2..=m {
        fact *= BigInt::from(k);
    }
    let half_fact = BigRational::new(fact, BigInt::from(2));
    let msq_16 = BigRational::new(BigInt::from(m * m), BigInt::from(16));
    let n_pow = BigRational::from_integer(n.pow(2 * m as u32 - 2));
    let mut msq_pow = BigRational::one();
    for _ in 0..m {
        msq_pow *= &msq_16;
    }
    n_pow / (&half_fact * &half_fact) * msq_pow
}

/// True iff the optimal-slack lower bound exceeds the generic chart
/// dimension m n at the adjusted points count.
pub fn reducibility_signal(n: u64, m: u64) -> bool {
    let r = dimension_lower_bound(n, m, None);
    r.bound > r.generic_dim
}

/// One row of the scan table emitted by the CLI.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub d: u32,
    pub s: BigInt,
    pub n: BigInt,
    pub b: BigInt,
    pub bound: BigInt,
    pub generic_dim: BigInt,
    pub signal: bool,
}

/// Scans the optimal-slack family over d = 1..=d_max.
pub fn scan_bounds(m: u64, d_max: u32) -> Vec<ScanRow> {
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let b = big_binom(d as u64 + m - 1, m - 1);
        let s = &b / BigInt::from(2);
        let n = big_binom(d as u64 + m, m) - &s;
        let bound = &s * (&b - &s);
        let generic_dim = BigInt::from(m) * &n;
        let signal = bound > generic_dim;
        rows.push(ScanRow { d, s, n, b, bound, generic_dim, signal });
    }
    rows
}

/// Compares `bound^m` against the asymptotic value's m-th power, exactly.
pub fn bound_meets_asymptotic(r: &DimensionBound, m: u64) -> bool {
    let bound_pow = BigRational::from_integer(r.bound.pow(m as u32));
    !r.bound.is_negative() && bound_pow >= r.asymptotic_pow_m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_DEGREE_CAP;

    #[test]
    fn degree_and_slack_examples() {
        for m in 1..=4u64 {
            assert_eq!(degree_and_slack(1, m), (0, BigInt::zero()));
        }
        assert_eq!(degree_and_slack(28, 3), (4, BigInt::from(7)));
        assert_eq!(degree_and_slack(5, 1), (4, BigInt::zero()));
        assert_eq!(degree_and_slack(5, 2), (2, BigInt::from(1)));
    }

    #[test]
    fn degree_is_unique_on_a_sample() {
        // the defining inequality pins d: check strict monotonicity of the
        // boundaries on a sample of n
        for m in 1..=6u64 {
            for n in (1..=200u64).chain([999, 5000, 10000]) {
                let (d, s) = degree_and_slack(n, m);
                let lo = big_binom(d as u64 + m - 1, m);
                let hi = big_binom(d as u64 + m, m);
                assert!(lo < BigInt::from(n) && BigInt::from(n) <= hi);
                assert_eq!(s, hi - BigInt::from(n));
                if d > 0 {
                    // d - 1 fails the upper inequality
                    assert!(big_binom(d as u64 - 1 + m, m) < BigInt::from(n));
                }
            }
        }
    }

    #[test]
    fn family_generators_m2_n5() {
        let f = Field::Prime(2);
        let order = MonomialOrder::grevlex();
        let zero = DegenerateFamilyParams::zero_matrix(5, 2, f).unwrap();
        assert_eq!((zero.d, zero.s), (2, 1));
        assert_eq!(zero.a[0].len(), 2);
        let gens = degenerate_ideal(&zero, order.clone());
        let strs: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["Y1^3", "Y1^2*Y2", "Y1*Y2^2", "Y2^3", "Y2^2"]);
        // a = [1, 0]: the bound monomial minus the first kept one
        let a = vec![vec![f.one(), f.zero()]];
        let p = DegenerateFamilyParams::new(5, 2, a).unwrap();
        let gens = degenerate_ideal(&p, order);
        assert_eq!(gens.last().unwrap().to_string(), "Y1^2 + Y2^2");
    }

    #[test]
    fn slack_zero_has_no_binding_relations() {
        let f = Field::Rational;
        let p = DegenerateFamilyParams::zero_matrix(6, 2, f).unwrap();
        assert_eq!(p.s, 0);
        let gens = degenerate_ideal(&p, MonomialOrder::grevlex());
        assert!(gens.iter().all(|g| g.num_terms() == 1));
        assert!(check_colength(&gens, 6, 2, DEFAULT_DEGREE_CAP).unwrap());
    }

    #[test]
    fn colength_examples() {
        let order = MonomialOrder::grevlex();
        let f = Field::Prime(2);
        let a = vec![vec![f.one(), f.zero()]];
        let p = DegenerateFamilyParams::new(5, 2, a).unwrap();
        assert!(check_colength(&degenerate_ideal(&p, order.clone()), 5, 2, DEFAULT_DEGREE_CAP)
            .unwrap());
        // the origin
        let gens = [
            Polynomial::var(VarId::Y(1), Field::Rational, order.clone()),
            Polynomial::var(VarId::Y(2), Field::Rational, order.clone()),
        ];
        assert!(check_colength(&gens, 1, 2, DEFAULT_DEGREE_CAP).unwrap());
        // a non-zero-dimensional ideal is rejected
        let gens = [Polynomial::var(VarId::Y(1), Field::Rational, order)];
        assert!(!check_colength(&gens, 1, 2, DEFAULT_DEGREE_CAP).unwrap());
    }

    #[test]
    fn colength_holds_across_the_family() {
        // all members over F2 and a rational member with mixed entries
        let order = MonomialOrder::grevlex();
        for n in 2..=6u64 {
            let f = Field::Prime(2);
            let zero = DegenerateFamilyParams::zero_matrix(n, 2, f).unwrap();
            let cols = zero.a.first().map(|r| r.len()).unwrap_or(0);
            let rows = zero.a.len();
            let total = 1u64 << (rows * cols);
            for mask in 0..total {
                let mut a = zero.a.clone();
                for bit in 0..(rows * cols) {
                    if mask & (1 << bit) != 0 {
                        a[bit / cols][bit % cols] = f.one();
                    }
                }
                let p = DegenerateFamilyParams::new(n, 2, a).unwrap();
                let gens = degenerate_ideal(&p, order.clone());
                assert!(
                    check_colength(&gens, n, 2, DEFAULT_DEGREE_CAP).unwrap(),
                    "colength breaks at n = {}, mask = {}",
                    n,
                    mask
                );
            }
        }
        // m = 3, n = 10, rational coefficients
        let f = Field::Rational;
        let (d, s) = degree_and_slack(10, 3);
        assert_eq!((d, s.clone()), (2, BigInt::zero()));
        let p = DegenerateFamilyParams::zero_matrix(10, 3, f).unwrap();
        let gens = degenerate_ideal(&p, order.clone());
        assert!(check_colength(&gens, 10, 3, DEFAULT_DEGREE_CAP).unwrap());
        // m = 3, n = 8: d = 2, s = 2, genuinely bound monomials
        let (d, s) = degree_and_slack(8, 3);
        assert_eq!((d, s), (2, BigInt::from(2)));
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let a = vec![
            vec![f.from_int(1), half.clone(), f.from_int(-2), f.zero()],
            vec![f.zero(), f.from_int(3), half, f.from_int(1)],
        ];
        let p = DegenerateFamilyParams::new(8, 3, a).unwrap();
        let gens = degenerate_ideal(&p, order);
        assert!(check_colength(&gens, 8, 3, DEFAULT_DEGREE_CAP).unwrap());
    }

    #[test]
    fn distinctness_examples() {
        let f = Field::Prime(2);
        let zero = DegenerateFamilyParams::zero_matrix(5, 2, f).unwrap();
        assert!(!distinctness_check(&zero, &zero, DEFAULT_DEGREE_CAP).unwrap());
        let a = vec![vec![f.one(), f.zero()]];
        let p = DegenerateFamilyParams::new(5, 2, a).unwrap();
        assert!(distinctness_check(&zero, &p, DEFAULT_DEGREE_CAP).unwrap());
        // s = 0: no dependence on a at all
        let z6 = DegenerateFamilyParams::zero_matrix(6, 2, f).unwrap();
        assert!(!distinctness_check(&z6, &z6, DEFAULT_DEGREE_CAP).unwrap());
    }

    #[test]
    fn all_f2_members_are_pairwise_distinct_at_m2_n5() {
        let f = Field::Prime(2);
        let mut members = Vec::new();
        for bits in 0..4u8 {
            let a = vec![vec![
                if bits & 1 != 0 { f.one() } else { f.zero() },
                if bits & 2 != 0 { f.one() } else { f.zero() },
            ]];
            members.push(DegenerateFamilyParams::new(5, 2, a).unwrap());
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                assert!(distinctness_check(&members[i], &members[j], DEFAULT_DEGREE_CAP)
                    .unwrap());
            }
        }
    }

    #[test]
    fn matrix_shape_is_enforced() {
        let f = Field::Prime(2);
        // wrong column count for (5, 2): expect 1 x 2
        let bad = DegenerateFamilyParams::new(5, 2, vec![vec![f.zero(); 3]]);
        assert!(matches!(bad, Err(IarrobinoError::MatrixShape { .. })));
        let bad = DegenerateFamilyParams::new(5, 2, vec![]);
        assert!(matches!(bad, Err(IarrobinoError::MatrixShape { .. })));
    }

    #[test]
    fn dimension_bound_examples() {
        // m = 1: bound 0 for all n
        for n in [1u64, 5, 100] {
            let r = dimension_lower_bound(n, 1, None);
            assert_eq!(r.bound, BigInt::zero());
        }
        // m = 3, d = 4 at the optimal slack
        let r = dimension_lower_bound(28, 3, None);
        assert_eq!(r.d, 4);
        assert_eq!(r.b, BigInt::from(15));
        assert_eq!(r.s, BigInt::from(7));
        assert_eq!(r.n, BigInt::from(28));
        assert_eq!(r.bound, BigInt::from(56));
        assert_eq!(r.generic_dim, BigInt::from(84));
        assert!(!reducibility_signal(28, 3));
        // explicit slack
        let r = dimension_lower_bound(28, 3, Some(7));
        assert_eq!(r.bound, BigInt::from(56));
    }

    #[test]
    fn plane_never_signals() {
        for row in scan_bounds(2, 12) {
            assert!(!row.signal, "d = {}", row.d);
        }
    }

    #[test]
    fn three_variable_scan_crosses_over() {
        let rows = scan_bounds(3, 20);
        let first = rows.iter().find(|r| r.signal).expect("a signal exists by d = 20");
        assert_eq!(first.d, 7);
        assert_eq!(first.bound, BigInt::from(324));
        assert_eq!(first.generic_dim, BigInt::from(306));
        // monotone in d for fixed m
        for w in rows.windows(2) {
            assert!(w[1].bound >= w[0].bound);
        }
    }

    #[test]
    fn asymptotic_consistency_at_d_eighteen() {
        // d = 2 m^2 = 18 for m = 3
        let rows = scan_bounds(3, 18);
        let row = rows.last().unwrap();
        assert_eq!(row.d, 18);
        let n = row.n.to_u64().unwrap();
        let r = dimension_lower_bound(n, 3, None);
        assert_eq!(r.d, 18);
        assert_eq!(r.bound, row.bound);
        assert!(bound_meets_asymptotic(&r, 3));
    }
}
