//! JSON documents for the CLI: chart specs, chart output, and matrix-tuple
//! input. Polynomials and scalars travel as canonical grammar strings;
//! matrices as flat row-major lists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charts::{build_chart, AlgebraPresentation, ChartError, ChartIdeal, SectionBeta};
use crate::commutant::{ScalarMatrix, ScalarMatrixTuple};
use crate::groebner::DEFAULT_DEGREE_CAP;
use crate::matrixalg::generic_matrix;
use crate::points::DEFAULT_BUDGET;
use crate::ring::{
    parse_polynomial, Field, MonomialOrder, OrderKind, ParseError, Polynomial, Scalar, VarId,
};

#[derive(Debug)]
pub enum DocError {
    Json(serde_json::Error),
    Poly { context: String, err: ParseError },
    Invalid(String),
    Chart(ChartError),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Json(e) => write!(f, "invalid JSON: {}", e),
            DocError::Poly { context, err } => write!(f, "in {}: {}", context, err),
            DocError::Invalid(msg) => write!(f, "{}", msg),
            DocError::Chart(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for DocError {}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> DocError {
        DocError::Json(e)
    }
}

impl From<ChartError> for DocError {
    fn from(e: ChartError) -> DocError {
        DocError::Chart(e)
    }
}

fn parse_field(tag: &str) -> Result<Field, DocError> {
    if tag == "Q" {
        return Ok(Field::Rational);
    }
    if let Some(p) = tag.strip_prefix("Fp:") {
        let p: u16 = p
            .parse()
            .map_err(|_| DocError::Invalid(format!("bad field tag {}", tag)))?;
        return Field::prime(p).map_err(|e| DocError::Invalid(e.to_string()));
    }
    Err(DocError::Invalid(format!(
        "field must be \"Q\" or \"Fp:<p>\", got {}",
        tag
    )))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SpecOptions {
    #[serde(default = "default_order_tag")]
    pub order: String,
    #[serde(default = "default_degree_cap")]
    pub degree_cap: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_order_tag() -> String {
    "grevlex".to_string()
}

fn default_degree_cap() -> u64 {
    DEFAULT_DEGREE_CAP
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

impl Default for SpecOptions {
    fn default() -> Self {
        SpecOptions {
            order: default_order_tag(),
            degree_cap: default_degree_cap(),
            budget: default_budget(),
        }
    }
}

/// The chart specification document.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ChartSpecDocument {
    pub field: String,
    pub n: usize,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
    pub beta: Vec<String>,
    #[serde(default)]
    pub options: SpecOptions,
}

/// A chart spec resolved into domain values.
pub struct ResolvedSpec {
    pub field: Field,
    pub order: MonomialOrder,
    pub n: usize,
    pub presentation: AlgebraPresentation,
    pub beta: SectionBeta,
    pub degree_cap: u64,
    pub budget: u64,
}

impl ChartSpecDocument {
    pub fn from_json(text: &str) -> Result<ChartSpecDocument, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn resolve(&self) -> Result<ResolvedSpec, DocError> {
        let field = parse_field(&self.field)?;
        let kind = OrderKind::parse(&self.options.order).ok_or_else(|| {
            DocError::Invalid(format!("unknown order {}", self.options.order))
        })?;
        let order = MonomialOrder::new(kind);
        if self.n < 1 {
            return Err(DocError::Invalid("n must be at least 1".into()));
        }
        // variables must be exactly Y1..Ym in order
        for (k, name) in self.variables.iter().enumerate() {
            let expect = format!("Y{}", k + 1);
            if *name != expect && !(k == 0 && name == "X") {
                return Err(DocError::Invalid(format!(
                    "variables must be Y1..Ym in order; entry {} is {}",
                    k + 1,
                    name
                )));
            }
        }
        let m = self.variables.len() as u32;
        if m < 1 {
            return Err(DocError::Invalid("at least one variable required".into()));
        }
        let parse_list = |items: &[String], what: &str| -> Result<Vec<Polynomial>, DocError> {
            items
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    parse_polynomial(s, field, order.clone()).map_err(|err| DocError::Poly {
                        context: format!("{}[{}]", what, k),
                        err,
                    })
                })
                .collect()
        };
        let relations = parse_list(&self.relations, "relations")?;
        let beta_entries = parse_list(&self.beta, "beta")?;
        let presentation =
            AlgebraPresentation::new(m, relations).map_err(DocError::Chart)?;
        let beta = SectionBeta::new(beta_entries).map_err(DocError::Chart)?;
        Ok(ResolvedSpec {
            field,
            order,
            n: self.n,
            presentation,
            beta,
            degree_cap: self.options.degree_cap,
            budget: self.options.budget,
        })
    }

    pub fn build_chart(&self) -> Result<(ChartIdeal, ResolvedSpec), DocError> {
        let resolved = self.resolve()?;
        let chart = build_chart(
            &resolved.presentation,
            resolved.n,
            &resolved.beta,
            resolved.field,
            resolved.order.clone(),
        )?;
        Ok((chart, resolved))
    }
}

/// The chart output document: the spec it was built from, the universal
/// matrices as flat row-major polynomial strings, and the three staged
/// generator lists.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ChartDocument {
    pub spec: ChartSpecDocument,
    pub universal_matrices: Vec<Vec<String>>,
    pub gens_commuting: Vec<String>,
    pub gens_relations: Vec<String>,
    pub gens_section: Vec<String>,
}

impl ChartDocument {
    pub fn from_chart(chart: &ChartIdeal, spec: &ChartSpecDocument) -> ChartDocument {
        let matrix_strings = |m: &crate::matrixalg::PolyMatrix| -> Vec<String> {
            m.entries().iter().map(|p| p.to_string()).collect()
        };
        ChartDocument {
            spec: spec.clone(),
            universal_matrices: chart.universal_matrices.iter().map(matrix_strings).collect(),
            gens_commuting: chart.gens_commuting.iter().map(|g| g.to_string()).collect(),
            gens_relations: chart.gens_relations.iter().map(|g| g.to_string()).collect(),
            gens_section: chart.gens_section.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<ChartDocument, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Reconstitutes the chart with the generator lists taken from the
    /// document (not recomputed), so edited documents are honored.
    pub fn to_chart(&self) -> Result<(ChartIdeal, ResolvedSpec), DocError> {
        let resolved = self.spec.resolve()?;
        let parse_list = |items: &[String], what: &str| -> Result<Vec<Polynomial>, DocError> {
            items
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    parse_polynomial(s, resolved.field, resolved.order.clone()).map_err(|err| {
                        DocError::Poly { context: format!("{}[{}]", what, k), err }
                    })
                })
                .collect()
        };
        let mats = (1..=resolved.presentation.num_generators)
            .map(|s| generic_matrix(s, resolved.n, resolved.field, resolved.order.clone()))
            .collect();
        let chart = ChartIdeal {
            n: resolved.n,
            field: resolved.field,
            order: resolved.order.clone(),
            presentation: resolved.presentation.clone(),
            beta: resolved.beta.clone(),
            universal_matrices: mats,
            gens_commuting: parse_list(&self.gens_commuting, "gens_commuting")?,
            gens_relations: parse_list(&self.gens_relations, "gens_relations")?,
            gens_section: parse_list(&self.gens_section, "gens_section")?,
        };
        Ok((chart, resolved))
    }
}

/// Matrix-tuple input for the commutant subcommand: flat row-major scalar
/// strings per matrix.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MatrixTupleDocument {
    pub field: String,
    pub n: usize,
    pub mats: Vec<Vec<String>>,
}

impl MatrixTupleDocument {
    pub fn from_json(text: &str) -> Result<MatrixTupleDocument, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn resolve(&self) -> Result<ScalarMatrixTuple, DocError> {
        let field = parse_field(&self.field)?;
        let order = MonomialOrder::grevlex();
        let mut mats = Vec::new();
        for (k, flat) in self.mats.iter().enumerate() {
            if flat.len() != self.n * self.n {
                return Err(DocError::Invalid(format!(
                    "matrix {} has {} entries, expected {}",
                    k,
                    flat.len(),
                    self.n * self.n
                )));
            }
            let mut entries: Vec<Scalar> = Vec::with_capacity(flat.len());
            for (i, s) in flat.iter().enumerate() {
                let p = parse_polynomial(s, field, order.clone()).map_err(|err| {
                    DocError::Poly { context: format!("mats[{}][{}]", k, i), err }
                })?;
                if !p.is_constant() {
                    return Err(DocError::Invalid(format!(
                        "mats[{}][{}] must be a scalar, got {}",
                        k, i, p
                    )));
                }
                entries.push(p.constant_term());
            }
            mats.push(ScalarMatrix::from_entries(self.n, entries));
        }
        ScalarMatrixTuple::new(self.n, mats)
            .map_err(|e| DocError::Invalid(e.to_string()))
    }
}

/// A variable list flag value: comma-separated variable names.
pub fn parse_var_list(text: &str) -> Result<Vec<VarId>, DocError> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let p = parse_polynomial(s, Field::Rational, MonomialOrder::grevlex())
                .map_err(|err| DocError::Poly { context: format!("variable {}", s), err })?;
            let vars = p.vars();
            match (vars.len(), p.num_terms()) {
                (1, 1) if p.leading_monomial().map(|m| m.total_degree()) == Some(1) => {
                    Ok(vars.into_iter().next().unwrap())
                }
                _ => Err(DocError::Invalid(format!("{} is not a variable", s))),
            }
        })
        .collect()
}
