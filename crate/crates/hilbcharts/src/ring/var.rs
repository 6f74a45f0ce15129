//! Variable identifiers for the polynomial rings in play.

use std::fmt;

/// A variable. The namespaces keep the algebra generators `Y_s`, the matrix
/// coordinates `U[s][i][j]`, the symbolic roots `Z_i`, the elementary
/// symmetric coordinates `c_i`, and auxiliary univariate variables `T_k`
/// globally distinct. All indices are 1-based.
///
/// The derived `Ord` fixes the display order inside a monomial; precedence
/// for monomial comparison is a separate notion (see [`super::order`]).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    /// Matrix coordinate `U[s][i][j]`.
    U { s: u32, i: u32, j: u32 },
    /// Algebra generator `Y_s`.
    Y(u32),
    /// Symbolic root `Z_i`.
    Z(u32),
    /// Elementary symmetric coordinate `c_i`.
    C(u32),
    /// Auxiliary variable `T_k`, used for characteristic polynomials
    /// and resultants.
    T(u32),
    /// Named auxiliary variable.
    Aux(String),
}

impl VarId {
    pub fn y(s: u32) -> VarId {
        VarId::Y(s)
    }

    pub fn u(s: u32, i: u32, j: u32) -> VarId {
        VarId::U { s, i, j }
    }

    pub fn aux(name: &str) -> VarId {
        VarId::Aux(name.to_string())
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::U { s, i, j } => write!(f, "U[{}][{}][{}]", s, i, j),
            VarId::Y(s) => write!(f, "Y{}", s),
            VarId::Z(i) => write!(f, "Z{}", i),
            VarId::C(i) => write!(f, "c{}", i),
            VarId::T(k) => write!(f, "T{}", k),
            VarId::Aux(name) => write!(f, "{}", name),
        }
    }
}
