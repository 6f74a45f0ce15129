//! Chart ideals: the three staged generator families (commuting, relation,
//! section) cutting the chart of the Hilbert scheme of n points out of the
//! space of matrix tuples, plus the generic-chart normal form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::groebner::{self, GbError, GroebnerBasis};
use crate::matrixalg::{commutator, eval_at_matrices, first_column, generic_matrix, PolyMatrix};
use crate::ring::{Field, MonomialOrder, Polynomial, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartError {
    /// The section must have exactly n entries.
    SectionLength { expected: usize, got: usize },
    /// The first section entry must be the constant 1.
    SectionUnit,
    /// A relation or section entry uses a variable outside the presentation.
    ForeignVariable(VarId),
    /// Precondition of the generic normal form: no relations and the
    /// power-basis section.
    NotGeneric(String),
    /// A Groebner computation hit its degree cap.
    Resource(GbError),
}

impl fmt::Display for ChartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartError::SectionLength { expected, got } => {
                write!(f, "section must have {} entries, got {}", expected, got)
            }
            ChartError::SectionUnit => write!(f, "the first section entry must be 1"),
            ChartError::ForeignVariable(v) => {
                write!(f, "variable {} is not declared by the presentation", v)
            }
            ChartError::NotGeneric(msg) => write!(f, "not a generic chart: {}", msg),
            ChartError::Resource(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ChartError {}

impl From<GbError> for ChartError {
    fn from(e: GbError) -> ChartError {
        ChartError::Resource(e)
    }
}

/// A presented algebra: the quotient of the polynomial ring on `Y1..Ym`
/// by the listed relations. The first generator `Y1` is distinguished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub num_generators: u32,
    pub relations: Vec<Polynomial>,
}

impl AlgebraPresentation {
    pub fn new(num_generators: u32, relations: Vec<Polynomial>) -> Result<Self, ChartError> {
        let p = AlgebraPresentation { num_generators, relations };
        for r in &p.relations {
            p.check_vars(r)?;
        }
        Ok(p)
    }

    /// The polynomial ring on m variables.
    pub fn free(num_generators: u32) -> Self {
        AlgebraPresentation { num_generators, relations: Vec::new() }
    }

    fn check_vars(&self, p: &Polynomial) -> Result<(), ChartError> {
        for v in p.vars() {
            match v {
                VarId::Y(s) if s >= 1 && s <= self.num_generators => {}
                other => return Err(ChartError::ForeignVariable(other)),
            }
        }
        Ok(())
    }
}

/// A module section given by n polynomials in the algebra generators, with
/// first entry 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionBeta {
    pub entries: Vec<Polynomial>,
}

impl SectionBeta {
    pub fn new(entries: Vec<Polynomial>) -> Result<Self, ChartError> {
        match entries.first() {
            Some(p) if p.is_one() => Ok(SectionBeta { entries }),
            _ => Err(ChartError::SectionUnit),
        }
    }

    /// The power basis 1, Y1, Y1^2, ..., Y1^(n-1).
    pub fn power_basis(n: usize, field: Field, order: MonomialOrder) -> Self {
        let y = Polynomial::var(VarId::Y(1), field, order);
        let entries = (0..n as u32).map(|k| y.pow(k)).collect();
        SectionBeta { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn is_power_basis(&self) -> bool {
        let field = self.entries[0].field();
        let order = self.entries[0].order().clone();
        *self == SectionBeta::power_basis(self.entries.len(), field, order)
    }
}

/// The chart ideal: universal matrices plus the three staged generator
/// lists. Quotienting the ambient polynomial ring on the `U` variables by
/// the commuting stage, then the relation stage, then the section stage
/// realizes the three nested representing rings.
#[derive(Clone, Debug)]
pub struct ChartIdeal {
    pub n: usize,
    pub field: Field,
    pub order: MonomialOrder,
    pub presentation: AlgebraPresentation,
    pub beta: SectionBeta,
    /// Generic matrix for each algebra generator, indexed by s - 1.
    pub universal_matrices: Vec<PolyMatrix>,
    pub gens_commuting: Vec<Polynomial>,
    pub gens_relations: Vec<Polynomial>,
    pub gens_section: Vec<Polynomial>,
}

/// All entries of the pairwise commutators, pairs in order s < t, entries
/// row-major. Empty when there is a single matrix.
pub fn build_commuting_ideal(mats: &[PolyMatrix]) -> Vec<Polynomial> {
    let mut gens = Vec::new();
    for s in 0..mats.len() {
        for t in s + 1..mats.len() {
            let c = commutator(&mats[s], &mats[t]).expect("same dimension");
            gens.extend(c.entries().iter().cloned());
        }
    }
    gens
}

fn matrix_assignment(mats: &[PolyMatrix]) -> BTreeMap<VarId, PolyMatrix> {
    mats.iter()
        .enumerate()
        .map(|(k, m)| (VarId::Y(k as u32 + 1), m.clone()))
        .collect()
}

/// n^2 generators per relation: the entries of the relation evaluated at
/// the matrix tuple, relations in order, entries row-major.
pub fn build_relation_ideal(relations: &[Polynomial], mats: &[PolyMatrix]) -> Vec<Polynomial> {
    let assignment = matrix_assignment(mats);
    let mut gens = Vec::new();
    for f in relations {
        let e = eval_at_matrices(f, &assignment).expect("presentation variables all have matrices");
        gens.extend(e.entries().iter().cloned());
    }
    gens
}

/// For each k, the first column of the k-th section entry evaluated at the
/// matrices, minus the k-th standard basis vector; k-major order. The k = 1
/// block is identically zero.
pub fn build_section_ideal(
    beta: &SectionBeta,
    mats: &[PolyMatrix],
) -> Result<Vec<Polynomial>, ChartError> {
    let n = match mats.first() {
        Some(m) => m.dim(),
        None => beta.len(),
    };
    if beta.len() != n {
        return Err(ChartError::SectionLength { expected: n, got: beta.len() });
    }
    let assignment = matrix_assignment(mats);
    let mut gens = Vec::new();
    for (k, f) in beta.entries.iter().enumerate() {
        let e = eval_at_matrices(f, &assignment).expect("section variables all have matrices");
        let col = first_column(&e);
        for (i, c) in col.into_iter().enumerate() {
            let target = if i == k {
                Polynomial::one(c.field(), c.order().clone())
            } else {
                Polynomial::zero(c.field(), c.order().clone())
            };
            gens.push(c.sub(&target));
        }
    }
    Ok(gens)
}

/// Assembles the universal matrices and the three staged generator lists.
pub fn build_chart(
    presentation: &AlgebraPresentation,
    n: usize,
    beta: &SectionBeta,
    field: Field,
    order: MonomialOrder,
) -> Result<ChartIdeal, ChartError> {
    assert!(n >= 1, "need at least one point");
    if beta.len() != n {
        return Err(ChartError::SectionLength { expected: n, got: beta.len() });
    }
    for f in &beta.entries {
        presentation.check_vars(f)?;
    }
    let mats: Vec<PolyMatrix> = (1..=presentation.num_generators)
        .map(|s| generic_matrix(s, n, field, order.clone()))
        .collect();
    let gens_commuting = build_commuting_ideal(&mats);
    let gens_relations = build_relation_ideal(&presentation.relations, &mats);
    let gens_section = build_section_ideal(beta, &mats)?;
    Ok(ChartIdeal {
        n,
        field,
        order,
        presentation: presentation.clone(),
        beta: beta.clone(),
        universal_matrices: mats,
        gens_commuting,
        gens_relations,
        gens_section,
    })
}

impl ChartIdeal {
    /// All ambient matrix variables, in display order.
    pub fn u_vars(&self) -> Vec<VarId> {
        let mut vars = Vec::new();
        for s in 1..=self.presentation.num_generators {
            for i in 1..=self.n as u32 {
                for j in 1..=self.n as u32 {
                    vars.push(VarId::u(s, i, j));
                }
            }
        }
        vars
    }

    /// The three stages concatenated, zero generators dropped.
    pub fn all_generators(&self) -> Vec<Polynomial> {
        self.gens_commuting
            .iter()
            .chain(&self.gens_relations)
            .chain(&self.gens_section)
            .filter(|g| !g.is_zero())
            .cloned()
            .collect()
    }

    /// A Groebner basis of the full chart ideal.
    pub fn groebner(&self, degree_cap: u64) -> GroebnerBasis {
        groebner::groebner_basis(&self.all_generators(), &self.order, degree_cap)
    }

    /// The free variables of the generic chart: the last column of the
    /// distinguished matrix and the first column of every other matrix.
    pub fn generic_free_vars(&self) -> BTreeSet<VarId> {
        let n = self.n as u32;
        let mut vars: BTreeSet<VarId> = (1..=n).map(|k| VarId::u(1, k, n)).collect();
        for s in 2..=self.presentation.num_generators {
            for k in 1..=n {
                vars.insert(VarId::u(s, k, 1));
            }
        }
        vars
    }
}

/// The chart for the same data over the algebra with one more free
/// generator: the reduced chart gains exactly n new coordinates, the first
/// column of the new matrix.
pub fn adjoin_variable_chart(chart: &ChartIdeal) -> Result<ChartIdeal, ChartError> {
    let presentation = AlgebraPresentation {
        num_generators: chart.presentation.num_generators + 1,
        relations: chart.presentation.relations.clone(),
    };
    build_chart(&presentation, chart.n, &chart.beta, chart.field, chart.order.clone())
}

/// The normal form of a generic chart (no relations, power-basis section):
/// the mn free variables and the universal family generators.
#[derive(Clone, Debug)]
pub struct GenericNormalForm {
    /// Companion coefficients: `U[1][k][n]` for k = 1..n.
    pub companion_vars: Vec<VarId>,
    /// Per-s first-column coefficients: `U[s][k][1]` for k = 1..n, s >= 2.
    pub column_vars: Vec<Vec<VarId>>,
    /// Universal family generators in the mixed Y/U ring:
    /// `Y1^n - sum_k U[1][k][n] Y1^(k-1)` and, per other generator s,
    /// `Ys - sum_k U[s][k][1] Y1^(k-1)`.
    pub family: Vec<Polynomial>,
}

/// Computes the generic-chart normal form and certifies by Groebner
/// reduction that the chart is a polynomial ring on exactly the mn free
/// variables.
pub fn generic_chart_normal_form(
    chart: &ChartIdeal,
    degree_cap: u64,
) -> Result<GenericNormalForm, ChartError> {
    if !chart.presentation.relations.is_empty() {
        return Err(ChartError::NotGeneric("presentation has relations".into()));
    }
    if !chart.beta.is_power_basis() {
        return Err(ChartError::NotGeneric("section is not the power basis".into()));
    }
    let n = chart.n as u32;
    let m = chart.presentation.num_generators;
    let field = chart.field;
    let order = chart.order.clone();

    let free = chart.generic_free_vars();
    let certified = groebner::is_free_on(&chart.all_generators(), &free, degree_cap)?;
    if !certified {
        return Err(ChartError::NotGeneric(
            "chart is not free on the companion and first-column variables".into(),
        ));
    }

    let y1 = Polynomial::var(VarId::Y(1), field, order.clone());
    let mut family = Vec::new();
    let mut companion_sum = Polynomial::zero(field, order.clone());
    for k in 1..=n {
        let coeff = Polynomial::var(VarId::u(1, k, n), field, order.clone());
        companion_sum = companion_sum.add(&coeff.mul(&y1.pow(k - 1)));
    }
    family.push(y1.pow(n).sub(&companion_sum));
    let mut column_vars = Vec::new();
    for s in 2..=m {
        let mut sum = Polynomial::zero(field, order.clone());
        for k in 1..=n {
            let coeff = Polynomial::var(VarId::u(s, k, 1), field, order.clone());
            sum = sum.add(&coeff.mul(&y1.pow(k - 1)));
        }
        family.push(Polynomial::var(VarId::Y(s), field, order.clone()).sub(&sum));
        column_vars.push((1..=n).map(|k| VarId::u(s, k, 1)).collect());
    }

    Ok(GenericNormalForm {
        companion_vars: (1..=n).map(|k| VarId::u(1, k, n)).collect(),
        column_vars,
        family,
    })
}

/// Result of a kernel membership test: the defect vector is the component
/// wise normal form of the first column of `f` at the universal matrices.
#[derive(Clone, Debug)]
pub struct KernelMembership {
    pub in_kernel: bool,
    pub defect: Vec<Polynomial>,
}

/// Tests whether `f` maps to zero in the universal quotient by reducing the
/// first column of `f` at the universal matrices modulo the chart ideal.
/// With a partial basis a zero answer is still conclusive; a nonzero one is
/// reported as a resource error.
pub fn kernel_membership(
    chart: &ChartIdeal,
    f: &Polynomial,
    degree_cap: u64,
) -> Result<KernelMembership, ChartError> {
    let assignment = matrix_assignment(&chart.universal_matrices);
    let e = eval_at_matrices(f, &assignment).expect("consistent dimensions");
    let gb = chart.groebner(degree_cap);
    let defect: Vec<Polynomial> = first_column(&e)
        .into_iter()
        .map(|c| groebner::normal_form(&c, &gb))
        .collect();
    let in_kernel = defect.iter().all(|d| d.is_zero());
    if !in_kernel && gb.is_partial() {
        return Err(ChartError::Resource(GbError::Partial {
            degree_cap,
        }));
    }
    Ok(KernelMembership { in_kernel, defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_DEGREE_CAP;
    use crate::ring::parse_polynomial;

    fn q(s: &str) -> Polynomial {
        parse_polynomial(s, Field::Rational, MonomialOrder::grevlex()).unwrap()
    }

    fn generic_chart(m: u32, n: usize) -> ChartIdeal {
        let p = AlgebraPresentation::free(m);
        let beta = SectionBeta::power_basis(n, Field::Rational, MonomialOrder::grevlex());
        build_chart(&p, n, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap()
    }

    #[test]
    fn commuting_ideal_shapes() {
        let one = build_commuting_ideal(&[generic_matrix(
            1,
            3,
            Field::Rational,
            MonomialOrder::grevlex(),
        )]);
        assert!(one.is_empty());
        let two_scalars = build_commuting_ideal(&[
            generic_matrix(1, 1, Field::Rational, MonomialOrder::grevlex()),
            generic_matrix(2, 1, Field::Rational, MonomialOrder::grevlex()),
        ]);
        assert_eq!(two_scalars.len(), 1);
        assert!(two_scalars[0].is_zero());
        let two = build_commuting_ideal(&[
            generic_matrix(1, 2, Field::Rational, MonomialOrder::grevlex()),
            generic_matrix(2, 2, Field::Rational, MonomialOrder::grevlex()),
        ]);
        assert_eq!(two.len(), 4);
        assert_eq!(two[0], q("U[1][1][2]*U[2][2][1] - U[2][1][2]*U[1][2][1]"));
    }

    #[test]
    fn relation_ideal_shapes() {
        let mats = vec![generic_matrix(1, 2, Field::Rational, MonomialOrder::grevlex())];
        assert!(build_relation_ideal(&[], &mats).is_empty());
        let gens = build_relation_ideal(&[q("Y1")], &mats);
        assert_eq!(
            gens,
            vec![q("U[1][1][1]"), q("U[1][1][2]"), q("U[1][2][1]"), q("U[1][2][2]")]
        );
        let scalar = vec![generic_matrix(1, 1, Field::Rational, MonomialOrder::grevlex())];
        let gens = build_relation_ideal(&[q("Y1^2")], &scalar);
        assert_eq!(gens, vec![q("U[1][1][1]^2")]);
    }

    #[test]
    fn section_ideal_shapes() {
        let mats = vec![generic_matrix(1, 2, Field::Rational, MonomialOrder::grevlex())];
        let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
        let gens = build_section_ideal(&beta, &mats).unwrap();
        assert_eq!(gens.len(), 4);
        assert!(gens[0].is_zero() && gens[1].is_zero());
        assert_eq!(gens[2], q("U[1][1][1]"));
        assert_eq!(gens[3], q("U[1][2][1] - 1"));
        // substituting the two linear generators into the generic matrix
        // yields the companion form
        let mut sub = BTreeMap::new();
        sub.insert(VarId::u(1, 1, 1), q("0"));
        sub.insert(VarId::u(1, 2, 1), q("1"));
        let reduced = mats[0].substitute(&sub);
        let companion = crate::matrixalg::companion_matrix(&[q("U[1][1][2]"), q("U[1][2][2]")]);
        assert_eq!(reduced, companion);
    }

    #[test]
    fn one_point_chart_collapses_to_the_presentation() {
        let pres = AlgebraPresentation::new(1, vec![q("Y1^2 - Y1")]).unwrap();
        let beta = SectionBeta::new(vec![q("1")]).unwrap();
        let chart =
            build_chart(&pres, 1, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        assert!(chart.gens_commuting.is_empty());
        assert!(chart.gens_section.iter().all(|g| g.is_zero()));
        // renaming U[s][1][1] back to Y_s recovers the relations
        let renamed: Vec<Polynomial> = chart
            .gens_relations
            .iter()
            .map(|g| g.rename_var(&VarId::u(1, 1, 1), VarId::Y(1)))
            .collect();
        assert_eq!(renamed, pres.relations);
    }

    #[test]
    fn generic_chart_m1_n2() {
        let chart = generic_chart(1, 2);
        let nonzero = chart.all_generators();
        assert_eq!(nonzero.len(), 2);
        let nf = generic_chart_normal_form(&chart, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(nf.companion_vars, vec![VarId::u(1, 1, 2), VarId::u(1, 2, 2)]);
        assert!(nf.column_vars.is_empty());
        assert_eq!(nf.family.len(), 1);
        assert_eq!(nf.family[0], q("Y1^2 - U[1][1][2] - U[1][2][2]*Y1"));
    }

    #[test]
    fn generic_chart_m1_n1() {
        let chart = generic_chart(1, 1);
        let nf = generic_chart_normal_form(&chart, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(nf.family[0], q("Y1 - U[1][1][1]"));
    }

    #[test]
    fn generic_chart_m2_n2() {
        let chart = generic_chart(2, 2);
        let nf = generic_chart_normal_form(&chart, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(nf.family.len(), 2);
        assert_eq!(nf.family[1], q("Y2 - U[2][1][1] - U[2][2][1]*Y1"));
        // the reduced chart is free on exactly these four variables
        let free = chart.generic_free_vars();
        assert_eq!(free.len(), 4);
        assert!(free.contains(&VarId::u(1, 1, 2)));
        assert!(free.contains(&VarId::u(1, 2, 2)));
        assert!(free.contains(&VarId::u(2, 1, 1)));
        assert!(free.contains(&VarId::u(2, 2, 1)));
    }

    #[test]
    fn generic_normal_form_rejects_other_charts() {
        let pres = AlgebraPresentation::new(1, vec![q("Y1^2")]).unwrap();
        let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
        let chart =
            build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        assert!(matches!(
            generic_chart_normal_form(&chart, DEFAULT_DEGREE_CAP),
            Err(ChartError::NotGeneric(_))
        ));
        let pres = AlgebraPresentation::free(1);
        let beta = SectionBeta::new(vec![q("1"), q("Y1 + 1")]).unwrap();
        let chart =
            build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        assert!(matches!(
            generic_chart_normal_form(&chart, DEFAULT_DEGREE_CAP),
            Err(ChartError::NotGeneric(_))
        ));
    }

    #[test]
    fn adjoining_a_variable_adds_n_free_vars() {
        let chart = generic_chart(1, 2);
        let bigger = adjoin_variable_chart(&chart).unwrap();
        assert_eq!(bigger.presentation.num_generators, 2);
        let free = bigger.generic_free_vars();
        assert_eq!(free.len(), 4);
        assert!(groebner::is_free_on(&bigger.all_generators(), &free, DEFAULT_DEGREE_CAP).unwrap());
        // twice: 2n more
        let twice = adjoin_variable_chart(&bigger).unwrap();
        assert_eq!(twice.generic_free_vars().len(), 6);
        // n = 1 adds exactly one
        let point = generic_chart(1, 1);
        let bigger = adjoin_variable_chart(&point).unwrap();
        assert_eq!(bigger.generic_free_vars().len(), 2);
    }

    #[test]
    fn kernel_membership_examples() {
        // relations die in the quotient
        let pres = AlgebraPresentation::new(1, vec![q("Y1^2 - Y1")]).unwrap();
        let beta = SectionBeta::power_basis(2, Field::Rational, MonomialOrder::grevlex());
        let chart =
            build_chart(&pres, 2, &beta, Field::Rational, MonomialOrder::grevlex()).unwrap();
        let r = kernel_membership(&chart, &q("Y1^2 - Y1"), DEFAULT_DEGREE_CAP).unwrap();
        assert!(r.in_kernel);
        // the unit is never in a proper kernel; defect e1
        let r = kernel_membership(&chart, &q("1"), DEFAULT_DEGREE_CAP).unwrap();
        assert!(!r.in_kernel);
        assert_eq!(r.defect, vec![q("1"), q("0")]);
        // a polynomial not in the kernel
        let r = kernel_membership(&chart, &q("Y1"), DEFAULT_DEGREE_CAP).unwrap();
        assert!(!r.in_kernel);
    }

    #[test]
    fn kernel_membership_at_the_origin_of_the_generic_chart() {
        // specialize the m=1, n=2 chart at the origin: the family
        // generator there is Y1^2
        let chart = generic_chart(1, 2);
        let mut gens = chart.all_generators();
        gens.push(q("U[1][1][2]"));
        gens.push(q("U[1][2][2]"));
        let gb = groebner::groebner_basis(&gens, &chart.order, DEFAULT_DEGREE_CAP);
        let assignment = matrix_assignment(&chart.universal_matrices);
        let e = eval_at_matrices(&q("Y1^2"), &assignment).unwrap();
        for c in first_column(&e) {
            assert!(groebner::normal_form(&c, &gb).is_zero());
        }
    }

    #[test]
    fn commutant_closure_in_the_reduced_chart() {
        // modulo the commuting ideal, all polynomial expressions in the
        // universal matrices commute
        let chart = generic_chart(2, 2);
        let gb = groebner::groebner_basis(
            &chart.gens_commuting,
            &chart.order,
            DEFAULT_DEGREE_CAP,
        );
        let assignment = matrix_assignment(&chart.universal_matrices);
        let fs = [q("Y1^2 + Y2"), q("Y1*Y2 - 1"), q("Y2^3 - Y1")];
        for f in &fs {
            for g in &fs {
                let a = eval_at_matrices(f, &assignment).unwrap();
                let b = eval_at_matrices(g, &assignment).unwrap();
                let c = commutator(&a, &b).unwrap();
                for e in c.entries() {
                    assert!(groebner::normal_form(e, &gb).is_zero());
                }
            }
        }
    }

    #[test]
    fn build_chart_is_deterministic() {
        let a = generic_chart(2, 2);
        let b = generic_chart(2, 2);
        let text =
            |c: &ChartIdeal| c.all_generators().iter().map(|g| g.to_string()).collect::<Vec<_>>();
        assert_eq!(text(&a), text(&b));
    }
}
