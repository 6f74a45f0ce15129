//! Finite-field brute force over chart points, two independent ways: by
//! evaluating the precomputed chart generators, and by checking the matrix
//! conditions directly (commutation, relation vanishing, section columns).
//! Comparing the two enumerations is the executable form of the
//! representability statement at F_p points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::charts::ChartIdeal;
use crate::commutant::ScalarMatrix;
use crate::ring::{Field, FieldError, Polynomial, Scalar, VarId};

pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointsError {
    /// The assignment space exceeds the budget.
    BudgetExceeded { needed: u128, budget: u64 },
    /// Chart coefficients cannot be reduced into F_p.
    Field(FieldError),
    NotPrime(u16),
}

impl fmt::Display for PointsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointsError::BudgetExceeded { needed, budget } => {
                write!(f, "{} assignments exceed the budget of {}", needed, budget)
            }
            PointsError::Field(e) => write!(f, "{}", e),
            PointsError::NotPrime(p) => write!(f, "{} is not prime", p),
        }
    }
}

impl std::error::Error for PointsError {}

impl From<FieldError> for PointsError {
    fn from(e: FieldError) -> PointsError {
        PointsError::Field(e)
    }
}

/// One chart point: an F_p value for every matrix variable of the chart.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ChartPoint {
    pub assignment: BTreeMap<VarId, Scalar>,
}

/// A generator compiled to index-based form for fast mod-p evaluation.
struct CompiledPoly {
    terms: Vec<(u16, Vec<(usize, u32)>)>,
}

fn compile(p: &Polynomial, var_index: &BTreeMap<VarId, usize>, prime: u16) -> Result<CompiledPoly, PointsError> {
    let reduced = p.reduce_mod(prime)?;
    let mut terms = Vec::new();
    for (mono, c) in reduced.terms() {
        let coeff = match c {
            Scalar::Fp { val, .. } => *val,
            Scalar::Rat(_) => unreachable!("reduced polynomial"),
        };
        let factors = mono
            .vars()
            .map(|(v, e)| (*var_index.get(v).expect("chart variable"), e))
            .collect();
        terms.push((coeff, factors));
    }
    Ok(CompiledPoly { terms })
}

impl CompiledPoly {
    fn eval(&self, vals: &[u16], p: u16) -> u16 {
        let m = p as u64;
        let mut acc = 0u64;
        for (c, factors) in &self.terms {
            let mut t = *c as u64;
            for (idx, e) in factors {
                let mut pw = 1u64;
                let base = vals[*idx] as u64;
                for _ in 0..*e {
                    pw = pw * base % m;
                }
                t = t * pw % m;
            }
            acc = (acc + t) % m;
        }
        acc as u16
    }
}

fn check_budget(chart: &ChartIdeal, p: u16, budget: u64) -> Result<Vec<VarId>, PointsError> {
    Field::prime(p).map_err(|_| PointsError::NotPrime(p))?;
    let vars = chart.u_vars();
    let needed = (p as u128).pow(vars.len() as u32);
    if needed > budget as u128 {
        return Err(PointsError::BudgetExceeded { needed, budget });
    }
    Ok(vars)
}

/// Iterates assignments in lexicographic order: the last variable varies
/// fastest, scalar values ascending.
struct Odometer {
    p: u16,
    vals: Vec<u16>,
    done: bool,
}

impl Odometer {
    fn new(p: u16, width: usize) -> Odometer {
        Odometer { p, vals: vec![0; width], done: false }
    }

    fn step(&mut self) {
        for slot in self.vals.iter_mut().rev() {
            *slot += 1;
            if *slot < self.p {
                return;
            }
            *slot = 0;
        }
        self.done = true;
    }
}

fn to_point(vars: &[VarId], vals: &[u16], p: u16) -> ChartPoint {
    let assignment = vars
        .iter()
        .cloned()
        .zip(vals.iter().map(|&v| Scalar::Fp { p, val: v }))
        .collect();
    ChartPoint { assignment }
}

/// All F_p assignments on which every chart generator vanishes.
pub fn enumerate_symbolic(
    chart: &ChartIdeal,
    p: u16,
    budget: u64,
) -> Result<BTreeSet<ChartPoint>, PointsError> {
    enumerate_symbolic_gens(chart, &chart.all_generators(), p, budget)
}

/// The symbolic enumeration against an explicit generator list; used by the
/// mutation harness to drop a generator class.
pub fn enumerate_symbolic_gens(
    chart: &ChartIdeal,
    gens: &[Polynomial],
    p: u16,
    budget: u64,
) -> Result<BTreeSet<ChartPoint>, PointsError> {
    let vars = check_budget(chart, p, budget)?;
    let var_index: BTreeMap<VarId, usize> =
        vars.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let compiled: Vec<CompiledPoly> = gens
        .iter()
        .map(|g| compile(g, &var_index, p))
        .collect::<Result<_, _>>()?;
    let mut points = BTreeSet::new();
    let mut odo = Odometer::new(p, vars.len());
    while !odo.done {
        if compiled.iter().all(|g| g.eval(&odo.vals, p) == 0) {
            points.insert(to_point(&vars, &odo.vals, p));
        }
        odo.step();
    }
    Ok(points)
}

fn instantiate_matrices(
    chart: &ChartIdeal,
    vals: &[u16],
    var_index: &BTreeMap<VarId, usize>,
    p: u16,
) -> Vec<ScalarMatrix> {
    let n = chart.n;
    let field = Field::Prime(p);
    let mut mats = Vec::new();
    for s in 1..=chart.presentation.num_generators {
        let mut m = ScalarMatrix::zero(n, field);
        for i in 1..=n as u32 {
            for j in 1..=n as u32 {
                let idx = var_index[&VarId::u(s, i, j)];
                m.set(i as usize - 1, j as usize - 1, Scalar::Fp { p, val: vals[idx] });
            }
        }
        mats.push(m);
    }
    mats
}

/// Evaluates a presentation polynomial at scalar matrices by direct matrix
/// arithmetic; variables without a matrix are a caller error here since
/// presentation polynomials only use the algebra generators.
fn eval_poly_at_scalar_matrices(
    f: &Polynomial,
    mats: &[ScalarMatrix],
    n: usize,
    p: u16,
) -> Result<ScalarMatrix, PointsError> {
    let field = Field::Prime(p);
    let reduced = f.reduce_mod(p)?;
    let mut acc = ScalarMatrix::zero(n, field);
    for (mono, c) in reduced.terms() {
        let mut term = ScalarMatrix::identity(n, field);
        for (v, e) in mono.vars() {
            let s = match v {
                VarId::Y(s) => *s as usize,
                other => panic!("presentation polynomial uses {}", other),
            };
            for _ in 0..e {
                term = term.mul(&mats[s - 1]);
            }
        }
        // scale by the coefficient
        let mut scaled = ScalarMatrix::zero(n, field);
        for i in 0..n {
            for j in 0..n {
                scaled.set(i, j, term.entry(i, j).mul(c));
            }
        }
        acc = acc.add(&scaled);
    }
    Ok(acc)
}

/// Classes of matrix conditions checked by the semantic enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConditionClass {
    Commuting,
    Relations,
    Section,
}

/// All F_p assignments whose instantiated matrices pairwise commute,
/// annihilate every presentation relation, and satisfy the section-column
/// conditions, each checked by direct matrix arithmetic. `skip` omits one
/// condition class for mutation testing.
pub fn enumerate_semantic_with(
    chart: &ChartIdeal,
    p: u16,
    budget: u64,
    skip: Option<ConditionClass>,
) -> Result<BTreeSet<ChartPoint>, PointsError> {
    let vars = check_budget(chart, p, budget)?;
    let var_index: BTreeMap<VarId, usize> =
        vars.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let n = chart.n;
    let field = Field::Prime(p);
    let relations: Vec<Polynomial> = chart.presentation.relations.clone();
    let beta: Vec<Polynomial> = chart.beta.entries.clone();
    let mut points = BTreeSet::new();
    let mut odo = Odometer::new(p, vars.len());
    while !odo.done {
        let mats = instantiate_matrices(chart, &odo.vals, &var_index, p);
        let mut ok = true;
        if skip != Some(ConditionClass::Commuting) {
            'comm: for a in 0..mats.len() {
                for b in a + 1..mats.len() {
                    if mats[a].mul(&mats[b]) != mats[b].mul(&mats[a]) {
                        ok = false;
                        break 'comm;
                    }
                }
            }
        }
        if ok && skip != Some(ConditionClass::Relations) {
            for f in &relations {
                if !eval_poly_at_scalar_matrices(f, &mats, n, p)?.is_zero() {
                    ok = false;
                    break;
                }
            }
        }
        if ok && skip != Some(ConditionClass::Section) {
            'section: for (k, f) in beta.iter().enumerate() {
                let e = eval_poly_at_scalar_matrices(f, &mats, n, p)?;
                for i in 0..n {
                    let want = if i == k { field.one() } else { field.zero() };
                    if *e.entry(i, 0) != want {
                        ok = false;
                        break 'section;
                    }
                }
            }
        }
        if ok {
            points.insert(to_point(&vars, &odo.vals, p));
        }
        odo.step();
    }
    Ok(points)
}

pub fn enumerate_semantic(
    chart: &ChartIdeal,
    p: u16,
    budget: u64,
) -> Result<BTreeSet<ChartPoint>, PointsError> {
    enumerate_semantic_with(chart, p, budget, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub count_symbolic: usize,
    pub count_semantic: usize,
}

/// Set equality of the two enumerations.
pub fn compare(chart: &ChartIdeal, p: u16, budget: u64) -> Result<Comparison, PointsError> {
    let sym = enumerate_symbolic(chart, p, budget)?;
    let sem = enumerate_semantic(chart, p, budget)?;
    Ok(Comparison {
        equal: sym == sem,
        count_symbolic: sym.len(),
        count_semantic: sem.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::{build_chart, AlgebraPresentation, SectionBeta};
    use crate::commutant::{algebra_orbit, ScalarMatrixTuple};
    use crate::line::{line_chart, MultiplicativeSetSpec};
    use crate::ring::{parse_polynomial, MonomialOrder};

    fn q(s: &str) -> Polynomial {
        parse_polynomial(s, Field::Rational, MonomialOrder::grevlex()).unwrap()
    }

    fn generic_chart(m: u32, n: usize) -> ChartIdeal {
        let p = AlgebraPresentation::free(m);
        let beta = SectionBeta::power_basis(n, Field::Rational, MonomialOrder::grevlex());
        build_chart(&p, n, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap()
    }

    #[test]
    fn generic_counts_are_p_to_the_mn() {
        let chart = generic_chart(1, 2);
        assert_eq!(enumerate_symbolic(&chart, 3, DEFAULT_BUDGET).unwrap().len(), 9);
        assert_eq!(enumerate_symbolic(&chart, 2, DEFAULT_BUDGET).unwrap().len(), 4);
        let chart = generic_chart(2, 2);
        assert_eq!(enumerate_symbolic(&chart, 2, DEFAULT_BUDGET).unwrap().len(), 16);
    }

    #[test]
    fn one_point_quotient_counts_its_idempotents() {
        let pres = AlgebraPresentation::new(1, vec![q("Y1^2 - Y1")]).unwrap();
        let beta = SectionBeta::new(vec![q("1")]).unwrap();
        let chart =
            build_chart(&pres, 1, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        let pts = enumerate_symbolic(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(pts.len(), 2);
        let c = compare(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert!(c.equal);
    }

    #[test]
    fn oracle_equivalence_on_the_matrix() {
        for (chart, p, expect) in [
            (generic_chart(1, 2), 2u16, 4usize),
            (generic_chart(1, 2), 3, 9),
            (generic_chart(2, 2), 2, 16),
        ] {
            let c = compare(&chart, p, DEFAULT_BUDGET).unwrap();
            assert!(c.equal);
            assert_eq!(c.count_symbolic, expect);
        }
        let spec = MultiplicativeSetSpec::new(vec![q("Y1")]).unwrap();
        let chart = line_chart(&spec, 2, Field::Rational, MonomialOrder::grevlex()).unwrap();
        let c = compare(&chart, 3, DEFAULT_BUDGET).unwrap();
        assert!(c.equal);
        assert_eq!(c.count_symbolic, 6);
    }

    #[test]
    fn empty_chart_from_contradictory_conditions() {
        // relation Y1 forces the zero matrix, which cannot satisfy the
        // section condition at k = 2
        let pres = AlgebraPresentation::new(1, vec![q("Y1")]).unwrap();
        let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
        let chart =
            build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        let sym = enumerate_symbolic(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert!(sym.is_empty());
        let sem = enumerate_semantic(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert!(sem.is_empty());
    }

    #[test]
    fn semantic_points_have_cyclic_tuples() {
        let spec = MultiplicativeSetSpec::new(vec![q("Y1")]).unwrap();
        let chart = line_chart(&spec, 2, Field::Rational, MonomialOrder::grevlex()).unwrap();
        let sem = enumerate_semantic(&chart, 3, DEFAULT_BUDGET).unwrap();
        let vars = chart.u_vars();
        let var_index: BTreeMap<VarId, usize> =
            vars.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        for pt in &sem {
            let vals: Vec<u16> = vars
                .iter()
                .map(|v| match &pt.assignment[v] {
                    Scalar::Fp { val, .. } => *val,
                    _ => unreachable!(),
                })
                .collect();
            let mats = instantiate_matrices(&chart, &vals, &var_index, 3);
            let t = ScalarMatrixTuple::new(2, mats).unwrap();
            assert_eq!(algebra_orbit(&t).len(), 2);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let chart = generic_chart(2, 2);
        let r = enumerate_symbolic(&chart, 3, 100);
        assert!(matches!(r, Err(PointsError::BudgetExceeded { .. })));
    }

    #[test]
    fn dropping_a_generator_class_changes_the_count() {
        // m = 2, n = 2, relation Y2^2: all three classes bind
        let pres = AlgebraPresentation::new(2, vec![q("Y2^2")]).unwrap();
        let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
        let chart =
            build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        let full = enumerate_symbolic(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(full.len(), 6);
        let cmp = compare(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert!(cmp.equal);

        let drop = |skip: &[&Vec<Polynomial>]| -> Vec<Polynomial> {
            let mut gens = Vec::new();
            for class in [&chart.gens_commuting, &chart.gens_relations, &chart.gens_section] {
                if !skip.iter().any(|s| std::ptr::eq(*s, class)) {
                    gens.extend(class.iter().cloned());
                }
            }
            gens
        };
        let without_comm =
            enumerate_symbolic_gens(&chart, &drop(&[&chart.gens_commuting]), 2, DEFAULT_BUDGET)
                .unwrap();
        let without_rel =
            enumerate_symbolic_gens(&chart, &drop(&[&chart.gens_relations]), 2, DEFAULT_BUDGET)
                .unwrap();
        let without_sec =
            enumerate_symbolic_gens(&chart, &drop(&[&chart.gens_section]), 2, DEFAULT_BUDGET)
                .unwrap();
        assert_eq!(without_comm.len(), 16);
        assert_eq!(without_rel.len(), 16);
        assert_eq!(without_sec.len(), 28);
        for mutated in [without_comm, without_rel, without_sec] {
            assert_ne!(mutated.len(), full.len());
            assert_ne!(mutated, full);
        }
    }

    #[test]
    fn semantic_mutation_flags_inequality() {
        // the corrupted symbolic side disagrees with the intact semantic side
        let pres = AlgebraPresentation::new(2, vec![q("Y2^2")]).unwrap();
        let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
        let chart =
            build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        let gens: Vec<Polynomial> = chart
            .gens_commuting
            .iter()
            .chain(&chart.gens_section)
            .cloned()
            .collect();
        let corrupted = enumerate_symbolic_gens(&chart, &gens, 2, DEFAULT_BUDGET).unwrap();
        let sem = enumerate_semantic(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert_ne!(corrupted, sem);
        // and a skipped semantic class disagrees with the intact symbolic side
        let sem_mut =
            enumerate_semantic_with(&chart, 2, DEFAULT_BUDGET, Some(ConditionClass::Section))
                .unwrap();
        let sym = enumerate_symbolic(&chart, 2, DEFAULT_BUDGET).unwrap();
        assert_ne!(sem_mut, sym);
    }

    #[test]
    fn line_counts_match_monic_polynomial_enumeration() {
        let spec = MultiplicativeSetSpec::new(vec![q("Y1")]).unwrap();
        for p in [3u16, 5] {
            let chart = line_chart(&spec, 2, Field::Rational, MonomialOrder::grevlex()).unwrap();
            let pts = enumerate_symbolic(&chart, p, DEFAULT_BUDGET).unwrap();
            // monic quadratics with nonzero constant term, by enumeration
            let mut count = 0u64;
            for c0 in 1..p {
                for _c1 in 0..p {
                    let _ = c0;
                    count += 1;
                }
            }
            assert_eq!(pts.len() as u64, count);
            assert_eq!(count, p as u64 * (p as u64 - 1));
        }
    }
}
