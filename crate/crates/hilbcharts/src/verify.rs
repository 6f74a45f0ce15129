//! Named verification suites: each runs a batch of exact checks and
//! reports one pass/fail line per check. The CLI `verify` subcommand and
//! the acceptance tests both drive these.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::charts::{
    adjoin_variable_chart, build_chart, generic_chart_normal_form, AlgebraPresentation,
    ChartIdeal, SectionBeta,
};
use crate::commutant::{
    algebra_orbit, check_multiplication_form, commutant_basis, CommutantError, ScalarMatrix,
    ScalarMatrixTuple,
};
use crate::groebner::{self, DEFAULT_DEGREE_CAP};
use crate::iarrobino::{
    self, degree_and_slack, dimension_lower_bound, distinctness_check, DegenerateFamilyParams,
};
use crate::line::{line_chart, spectral_factorization_check, MultiplicativeSetSpec};
use crate::matrixalg::{adjugate, char_poly, determinant, eval_at_matrices, PolyMatrix};
use crate::points::{
    self, compare, enumerate_symbolic, enumerate_symbolic_gens, DEFAULT_BUDGET,
};
use crate::ring::{binom_u128, parse_polynomial, Field, MonomialOrder, Polynomial, VarId};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const SUITES: &[&str] = &[
    "prop7-3",
    "oracle",
    "counts",
    "commutant",
    "spectral",
    "adjoin",
    "i1-in-i3",
    "iarrobino",
    "mutation",
    "matrix-identities",
];

/// Runs one suite by name; `seed` only affects randomized generation in
/// `matrix-identities`.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let checks = match name {
        "prop7-3" => prop_7_3_shape(),
        "oracle" => oracle_equivalence(),
        "counts" => point_counts(),
        "commutant" => commutant_suite(),
        "spectral" => spectral_suite(),
        "adjoin" => adjoin_suite(),
        "i1-in-i3" => commutators_in_section_ideal(),
        "iarrobino" => iarrobino_suite(),
        "mutation" => mutation_suite(),
        "matrix-identities" => matrix_identities(seed),
        _ => return None,
    };
    Some(SuiteReport { suite: name.to_string(), checks })
}

fn q(s: &str) -> Polynomial {
    parse_polynomial(s, Field::Rational, MonomialOrder::grevlex()).unwrap()
}

fn generic_chart(m: u32, n: usize) -> ChartIdeal {
    let p = AlgebraPresentation::free(m);
    let beta = SectionBeta::power_basis(n, Field::Rational, MonomialOrder::grevlex());
    build_chart(&p, n, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap()
}

/// The generic chart is a polynomial ring on exactly the mn named
/// variables, and the universal family generators match the closed form.
fn prop_7_3_shape() -> Vec<Check> {
    let mut checks = Vec::new();
    for (m, n) in [(1u32, 2usize), (1, 3), (2, 2), (3, 2)] {
        let chart = generic_chart(m, n);
        let free = chart.generic_free_vars();
        let shape_ok = free.len() == (m as usize) * n
            && groebner::is_free_on(&chart.all_generators(), &free, DEFAULT_DEGREE_CAP)
                .unwrap_or(false);
        let nf = generic_chart_normal_form(&chart, DEFAULT_DEGREE_CAP);
        let family_ok = match &nf {
            Ok(nf) => {
                let mut expect = Vec::new();
                let companion: Vec<String> = (1..=n as u32)
                    .map(|k| {
                        if k == 1 {
                            format!("U[1][{}][{}]", k, n)
                        } else if k == 2 {
                            format!("U[1][{}][{}]*Y1", k, n)
                        } else {
                            format!("U[1][{}][{}]*Y1^{}", k, n, k - 1)
                        }
                    })
                    .collect();
                expect.push(format!("Y1^{} - {}", n, companion.join(" - ")));
                for s in 2..=m {
                    let col: Vec<String> = (1..=n as u32)
                        .map(|k| {
                            if k == 1 {
                                format!("U[{}][{}][1]", s, k)
                            } else if k == 2 {
                                format!("U[{}][{}][1]*Y1", s, k)
                            } else {
                                format!("U[{}][{}][1]*Y1^{}", s, k, k - 1)
                            }
                        })
                        .collect();
                    expect.push(format!("Y{} - {}", s, col.join(" - ")));
                }
                let got: Vec<String> = nf.family.iter().map(|f| f.to_string()).collect();
                got == expect
            }
            Err(_) => false,
        };
        checks.push(Check::new(
            format!("prop7-3 shape m={} n={}", m, n),
            shape_ok && family_ok,
            format!(
                "free on {} variables: {}; family generators match: {}",
                (m as usize) * n,
                shape_ok,
                family_ok
            ),
        ));
    }
    checks
}

fn fixture_charts() -> Vec<(String, ChartIdeal, u16, Option<usize>)> {
    let mut fixtures = Vec::new();
    fixtures.push(("m=1 n=2 p=2".to_string(), generic_chart(1, 2), 2u16, Some(4)));
    fixtures.push(("m=1 n=2 p=3".to_string(), generic_chart(1, 2), 3, Some(9)));
    fixtures.push(("m=2 n=2 p=2".to_string(), generic_chart(2, 2), 2, Some(16)));
    let pres = AlgebraPresentation::new(1, vec![q("Y1^2 - Y1")]).unwrap();
    let beta = SectionBeta::new(vec![q("1")]).unwrap();
    let idempotents =
        build_chart(&pres, 1, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
    fixtures.push(("n=1 Y^2-Y p=2".to_string(), idempotents, 2, Some(2)));
    let spec = MultiplicativeSetSpec::new(vec![q("Y1")]).unwrap();
    let line = line_chart(&spec, 2, Field::Rational, MonomialOrder::grevlex()).unwrap();
    fixtures.push(("line {X} n=2 p=3".to_string(), line, 3, Some(6)));
    let pres = AlgebraPresentation::new(2, vec![q("Y2^2")]).unwrap();
    let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
    let nilpotent =
        build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
    fixtures.push(("m=2 n=2 Y2^2 p=2".to_string(), nilpotent, 2, Some(6)));
    fixtures
}

/// Symbolic and semantic enumerations agree on every fixture chart.
fn oracle_equivalence() -> Vec<Check> {
    fixture_charts()
        .into_iter()
        .map(|(name, chart, p, _)| match compare(&chart, p, DEFAULT_BUDGET) {
            Ok(c) => Check::new(
                format!("oracle equivalence {}", name),
                c.equal,
                format!("symbolic {} vs semantic {}", c.count_symbolic, c.count_semantic),
            ),
            Err(e) => Check::new(format!("oracle equivalence {}", name), false, e.to_string()),
        })
        .collect()
}

/// Exact point counts, with the punctured-line count cross-checked against
/// a direct enumeration of monic quadratics with nonzero constant term.
fn point_counts() -> Vec<Check> {
    let mut checks = Vec::new();
    for (name, chart, p, expect) in fixture_charts() {
        let Some(expect) = expect else { continue };
        match enumerate_symbolic(&chart, p, DEFAULT_BUDGET) {
            Ok(pts) => checks.push(Check::new(
                format!("point count {}", name),
                pts.len() == expect,
                format!("{} points, expected {}", pts.len(), expect),
            )),
            Err(e) => checks.push(Check::new(format!("point count {}", name), false, e.to_string())),
        }
    }
    // cross-check: monic degree-2 polynomials with nonzero constant term
    let p = 3u16;
    let mut monic_count = 0usize;
    for c0 in 0..p {
        for _c1 in 0..p {
            if c0 != 0 {
                monic_count += 1;
            }
        }
    }
    let spec = MultiplicativeSetSpec::new(vec![q("Y1")]).unwrap();
    let line = line_chart(&spec, 2, Field::Rational, MonomialOrder::grevlex()).unwrap();
    let chart_count = enumerate_symbolic(&line, p, DEFAULT_BUDGET).map(|s| s.len());
    checks.push(Check::new(
        "line count equals monic-polynomial count",
        chart_count.as_ref().copied() == Ok(monic_count) && monic_count == 6,
        format!("chart {:?} vs direct enumeration {}", chart_count, monic_count),
    ));
    checks
}

fn rational_companion(coeffs: &[i64]) -> ScalarMatrix {
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

/// Companion matrices have commutant dimension exactly n in multiplication
/// form; the identity tuple fails the cyclicity precondition.
fn commutant_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in [2usize, 3, 4] {
        let coeffs: Vec<i64> = (1..=n as i64).map(|k| 2 * k - 3).collect();
        let t = ScalarMatrixTuple::new(n, vec![rational_companion(&coeffs)]).unwrap();
        let dim = commutant_basis(&t).len();
        let mult = check_multiplication_form(&t);
        checks.push(Check::new(
            format!("companion commutant n={}", n),
            dim == n && mult == Ok(true),
            format!("dimension {} (want {}), multiplication form {:?}", dim, n, mult),
        ));
    }
    let t = ScalarMatrixTuple::new(2, vec![ScalarMatrix::identity(2, Field::Rational)]).unwrap();
    let r = check_multiplication_form(&t);
    checks.push(Check::new(
        "identity tuple fails cyclicity",
        matches!(r, Err(CommutantError::NotCyclic { orbit_dim: 1, n: 2 })),
        format!("{:?}", r),
    ));
    checks
}

/// The spectral factorization holds for every generic s of degree <= 3 and
/// n <= 3.
fn spectral_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    for deg in 0..=3usize {
        let terms: Vec<String> = (0..=deg)
            .map(|k| match k {
                0 => "b0".to_string(),
                1 => "b1*Y1".to_string(),
                k => format!("b{}*Y1^{}", k, k),
            })
            .collect();
        let s = q(&terms.join(" + "));
        for n in 1..=3usize {
            let r = spectral_factorization_check(&s, n);
            checks.push(Check::new(
                format!("spectral deg(s)={} n={}", deg, n),
                r == Ok(true),
                format!("{:?}", r),
            ));
        }
    }
    checks
}

/// Adjoining a free algebra generator extends the reduced chart by exactly
/// n new free coordinates.
fn adjoin_suite() -> Vec<Check> {
    let chart = generic_chart(1, 2);
    let bigger = adjoin_variable_chart(&chart).unwrap();
    let old_free = chart.generic_free_vars();
    let new_free = bigger.generic_free_vars();
    let added: Vec<&VarId> = new_free.difference(&old_free).collect();
    let ok = new_free.len() == 4
        && old_free.is_subset(&new_free)
        && added.len() == 2
        && groebner::is_free_on(&bigger.all_generators(), &new_free, DEFAULT_DEGREE_CAP)
            == Ok(true);
    vec![Check::new(
        "adjoined chart free on 4 variables",
        ok,
        format!("added coordinates {:?}", added),
    )]
}

/// Membership of every commutator generator in the section ideal for the
/// m=2, n=2 generic chart. The containment fails at ideal level: the
/// section conditions pin only the first matrix, so e.g. the tuple
/// M1 = [[0,2],[1,3]], M2 = [[1,1],[0,1]] over F_5 satisfies every section
/// generator while [M1, M2] is nonzero. The check is reported as stated;
/// its failure is the expected outcome.
fn commutators_in_section_ideal() -> Vec<Check> {
    let chart = generic_chart(2, 2);
    let section: Vec<Polynomial> =
        chart.gens_section.iter().filter(|g| !g.is_zero()).cloned().collect();
    let gb = groebner::groebner_basis(&section, &chart.order, DEFAULT_DEGREE_CAP);
    let mut checks = Vec::new();
    for (k, g) in chart.gens_commuting.iter().enumerate() {
        let nf = groebner::normal_form(g, &gb);
        checks.push(Check::new(
            format!("commutator generator {} in section ideal", k + 1),
            nf.is_zero(),
            format!("normal form {}", nf),
        ));
    }
    checks
}

/// Degree/slack arithmetic, the d=4 bound values, family colengths, and
/// pairwise distinctness of the F_2 family at (m, n) = (2, 5).
fn iarrobino_suite() -> Vec<Check> {
    let mut checks = Vec::new();

    // unique degree for all n <= 10^4, m <= 6: the intervals tile
    let mut tiling_ok = true;
    'outer: for m in 1..=6u64 {
        let mut previous_hi = 0u128;
        let mut d = 0u64;
        while previous_hi < 10_000 {
            let lo = binom_u128(d + m - 1, m);
            let hi = binom_u128(d + m, m);
            if lo != previous_hi || hi <= lo {
                tiling_ok = false;
                break 'outer;
            }
            previous_hi = hi;
            d += 1;
        }
    }
    let mut scan_ok = true;
    for m in 1..=6u64 {
        for n in 1..=10_000u64 {
            let (d, s) = degree_and_slack(n, m);
            let lo = binom_u128(d as u64 + m - 1, m);
            let hi = binom_u128(d as u64 + m, m);
            if !(lo < n as u128 && n as u128 <= hi)
                || s != BigInt::from(hi) - BigInt::from(n)
            {
                scan_ok = false;
            }
        }
    }
    checks.push(Check::new(
        "degree_and_slack unique for n <= 10^4, m <= 6",
        tiling_ok && scan_ok,
        format!("interval tiling {}, full scan {}", tiling_ok, scan_ok),
    ));

    let r = dimension_lower_bound(28, 3, None);
    checks.push(Check::new(
        "m=3 d=4 bound values",
        r.d == 4
            && r.b == BigInt::from(15)
            && r.s == BigInt::from(7)
            && r.n == BigInt::from(28)
            && r.bound == BigInt::from(56),
        format!("d={} B={} s={} n={} bound={}", r.d, r.b, r.s, r.n, r.bound),
    ));

    // colength fixtures: every F_2 member for m=2, n in 2..=6, and a
    // rational member at m=3, n=8
    let mut colength_ok = true;
    let mut colength_detail = String::new();
    let f2 = Field::Prime(2);
    for n in 2..=6u64 {
        let zero = DegenerateFamilyParams::zero_matrix(n, 2, f2).unwrap();
        let rows = zero.a.len();
        let cols = zero.a.first().map(|r| r.len()).unwrap_or(0);
        for mask in 0..(1u64 << (rows * cols)) {
            let mut a = zero.a.clone();
            for bit in 0..(rows * cols) {
                if mask & (1 << bit) != 0 {
                    a[bit / cols][bit % cols] = f2.one();
                }
            }
            let p = DegenerateFamilyParams::new(n, 2, a).unwrap();
            let gens = iarrobino::degenerate_ideal(&p, MonomialOrder::grevlex());
            match iarrobino::check_colength(&gens, n, 2, DEFAULT_DEGREE_CAP) {
                Ok(true) => {}
                other => {
                    colength_ok = false;
                    colength_detail = format!("n={} mask={} gave {:?}", n, mask, other);
                }
            }
        }
    }
    {
        let f = Field::Rational;
        let a = vec![
            vec![f.from_int(1), f.from_int(2), f.from_int(-1), f.from_int(0)],
            vec![f.from_int(0), f.from_int(1), f.from_int(3), f.from_int(5)],
        ];
        let p = DegenerateFamilyParams::new(8, 3, a).unwrap();
        let gens = iarrobino::degenerate_ideal(&p, MonomialOrder::grevlex());
        if iarrobino::check_colength(&gens, 8, 3, DEFAULT_DEGREE_CAP) != Ok(true) {
            colength_ok = false;
            colength_detail = "rational m=3 n=8 member failed".to_string();
        }
    }
    checks.push(Check::new(
        "family members have colength n",
        colength_ok,
        if colength_ok { "all fixtures".to_string() } else { colength_detail },
    ));

    // distinctness across every valid F_2 coefficient matrix at (2, 5)
    let zero = DegenerateFamilyParams::zero_matrix(5, 2, f2).unwrap();
    let rows = zero.a.len();
    let cols = zero.a[0].len();
    let mut members = Vec::new();
    for mask in 0..(1u64 << (rows * cols)) {
        let mut a = zero.a.clone();
        for bit in 0..(rows * cols) {
            if mask & (1 << bit) != 0 {
                a[bit / cols][bit % cols] = f2.one();
            }
        }
        members.push(DegenerateFamilyParams::new(5, 2, a).unwrap());
    }
    let mut distinct_ok = true;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if distinctness_check(&members[i], &members[j], DEFAULT_DEGREE_CAP) != Ok(true) {
                distinct_ok = false;
            }
        }
    }
    checks.push(Check::new(
        "all F_2 members pairwise distinct at m=2 n=5",
        distinct_ok && members.len() == 4,
        format!("{} members (one per coefficient matrix)", members.len()),
    ));
    checks
}

/// Dropping any single generator class from the binding fixture changes
/// the F_p point count.
fn mutation_suite() -> Vec<Check> {
    let pres = AlgebraPresentation::new(2, vec![q("Y2^2")]).unwrap();
    let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
    let chart =
        build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
    let full = match enumerate_symbolic(&chart, 2, DEFAULT_BUDGET) {
        Ok(s) => s,
        Err(e) => {
            return vec![Check::new("mutation fixture", false, e.to_string())];
        }
    };
    let mut checks = vec![Check::new(
        "mutation fixture count",
        full.len() == 6,
        format!("{} points, expected 6", full.len()),
    )];
    let classes: [(&str, &Vec<Polynomial>, usize); 3] = [
        ("commuting", &chart.gens_commuting, 16),
        ("relations", &chart.gens_relations, 16),
        ("section", &chart.gens_section, 28),
    ];
    for (name, dropped, expect) in classes {
        let gens: Vec<Polynomial> = [&chart.gens_commuting, &chart.gens_relations, &chart.gens_section]
            .into_iter()
            .filter(|class| !std::ptr::eq(*class, dropped))
            .flat_map(|class| class.iter().cloned())
            .collect();
        match enumerate_symbolic_gens(&chart, &gens, 2, DEFAULT_BUDGET) {
            Ok(mutated) => checks.push(Check::new(
                format!("dropping {} changes the count", name),
                mutated.len() != full.len() && mutated.len() == expect,
                format!("{} points vs {} full", mutated.len(), full.len()),
            )),
            Err(e) => checks.push(Check::new(
                format!("dropping {} changes the count", name),
                false,
                e.to_string(),
            )),
        }
    }
    checks
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn random_poly(rng: &mut XorShift, field: Field, order: &MonomialOrder) -> Polynomial {
    let mut p = Polynomial::zero(field, order.clone());
    for _ in 0..3 {
        let c = field.from_int(rng.int(-3, 3));
        let e1 = rng.int(0, 2) as u32;
        let e2 = rng.int(0, 1) as u32;
        let m = crate::ring::Monomial::from_exps([(VarId::Y(1), e1), (VarId::Y(2), e2)]);
        p = p.add(&Polynomial::term(c, m, order.clone()));
    }
    p
}

/// Adjugate and Cayley-Hamilton identities on seeded random polynomial
/// matrices.
fn matrix_identities(seed: u64) -> Vec<Check> {
    let mut rng = XorShift(seed.max(1));
    let field = Field::Rational;
    let order = MonomialOrder::grevlex();
    let mut checks = Vec::new();
    for n in [2usize, 3] {
        for round in 0..3 {
            let entries: Vec<Polynomial> =
                (0..n * n).map(|_| random_poly(&mut rng, field, &order)).collect();
            let m = PolyMatrix::from_entries(n, entries);
            let d = determinant(&m);
            let adj_ok = m.mul(&adjugate(&m))
                == PolyMatrix::identity(n, field, order.clone()).scale(&d)
                && adjugate(&m).mul(&m)
                    == PolyMatrix::identity(n, field, order.clone()).scale(&d);
            let p = char_poly(&m, VarId::T(1));
            let mut mats = BTreeMap::new();
            mats.insert(VarId::T(1), m.clone());
            let ch_ok = eval_at_matrices(&p, &mats).map(|e| e.is_zero()) == Ok(true);
            checks.push(Check::new(
                format!("adjugate and Cayley-Hamilton n={} round={}", n, round),
                adj_ok && ch_ok,
                format!("adjugate {}, characteristic {}", adj_ok, ch_ok),
            ));
        }
    }
    checks
}

/// Cross-check used by both the counts suite and the points module tests:
/// charts certified free on v variables have exactly p^v points.
pub fn free_rank_matches_point_count(
    chart: &ChartIdeal,
    p: u16,
) -> Result<bool, points::PointsError> {
    let free = chart.generic_free_vars();
    let certified =
        groebner::is_free_on(&chart.all_generators(), &free, DEFAULT_DEGREE_CAP).unwrap_or(false);
    let pts = enumerate_symbolic(chart, p, DEFAULT_BUDGET)?;
    let expect = (p as u128).pow(free.len() as u32);
    Ok(certified && pts.len() as u128 == expect)
}
