//! Monomial orders: lex, graded lex, graded reverse lex, with optional
//! precedence overrides for elimination.

use std::cmp::Ordering;

use super::monomial::Monomial;
use super::var::VarId;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderKind {
    Lex,
    GradedLex,
    GradedRevLex,
}

impl OrderKind {
    pub fn name(&self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::GradedLex => "grlex",
            OrderKind::GradedRevLex => "grevlex",
        }
    }

    pub fn parse(s: &str) -> Option<OrderKind> {
        match s {
            "lex" => Some(OrderKind::Lex),
            "grlex" => Some(OrderKind::GradedLex),
            "grevlex" => Some(OrderKind::GradedRevLex),
            _ => None,
        }
    }
}

/// A monomial order. Variable precedence is the default ranking
/// `Y1 > Y2 > ... > U[1][1][1] > U[1][1][2] > ... > Z > c > T > Aux`,
/// optionally overridden by `first`: the listed variables outrank every
/// unlisted variable, in list order. Elimination orders put the discarded
/// variables in `first`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub first: Vec<VarId>,
}

/// Rank of a variable under the default precedence; lower rank compares as
/// greater precedence.
fn default_rank(v: &VarId) -> (u8, u32, u32, u32, &str) {
    match v {
        VarId::Y(s) => (0, *s, 0, 0, ""),
        VarId::U { s, i, j } => (1, *s, *i, *j, ""),
        VarId::Z(i) => (2, *i, 0, 0, ""),
        VarId::C(i) => (3, *i, 0, 0, ""),
        VarId::T(k) => (4, *k, 0, 0, ""),
        VarId::Aux(name) => (5, 0, 0, 0, name.as_str()),
    }
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> MonomialOrder {
        MonomialOrder { kind, first: Vec::new() }
    }

    pub fn lex() -> MonomialOrder {
        MonomialOrder::new(OrderKind::Lex)
    }

    pub fn grlex() -> MonomialOrder {
        MonomialOrder::new(OrderKind::GradedLex)
    }

    pub fn grevlex() -> MonomialOrder {
        MonomialOrder::new(OrderKind::GradedRevLex)
    }

    /// Lex order in which `eliminated` variables outrank everything else,
    /// so the basis of an ideal in this order projects onto the subring of
    /// the remaining variables.
    pub fn elimination(eliminated: Vec<VarId>) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Lex, first: eliminated }
    }

    fn rank(&self, v: &VarId) -> (usize, (u8, u32, u32, u32, String)) {
        match self.first.iter().position(|w| w == v) {
            Some(k) => (k, (0, 0, 0, 0, String::new())),
            None => {
                let (a, b, c, d, s) = default_rank(v);
                (usize::MAX, (a, b, c, d, s.to_string()))
            }
        }
    }

    /// Compares monomials; `Greater` means `a` comes earlier in a
    /// canonical polynomial.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b),
            OrderKind::GradedLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.cmp_lex(a, b)),
            OrderKind::GradedRevLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.cmp_revlex_tiebreak(a, b)),
        }
    }

    /// Variables of both monomials sorted by decreasing precedence.
    fn merged_vars(&self, a: &Monomial, b: &Monomial) -> Vec<VarId> {
        let mut vars: Vec<VarId> = a
            .vars()
            .map(|(v, _)| v.clone())
            .chain(b.vars().map(|(v, _)| v.clone()))
            .collect();
        vars.sort_by_key(|v| self.rank(v));
        vars.dedup();
        vars
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for v in self.merged_vars(a, b) {
            match a.exponent(&v).cmp(&b.exponent(&v)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Tie-break for equal degrees: the monomial whose last (lowest
    /// precedence) differing exponent is smaller is the greater one.
    fn cmp_revlex_tiebreak(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for v in self.merged_vars(a, b).into_iter().rev() {
            match a.exponent(&v).cmp(&b.exponent(&v)) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(VarId, u32)]) -> Monomial {
        Monomial::from_exps(pairs.iter().cloned())
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::lex();
        let y1 = m(&[(VarId::Y(1), 1)]);
        let y2sq = m(&[(VarId::Y(2), 2)]);
        // Y1 > Y2^2 in pure lex.
        assert_eq!(o.cmp(&y1, &y2sq), Ordering::Greater);
    }

    #[test]
    fn graded_orders_respect_degree() {
        let y1 = m(&[(VarId::Y(1), 1)]);
        let y2sq = m(&[(VarId::Y(2), 2)]);
        for o in [MonomialOrder::grlex(), MonomialOrder::grevlex()] {
            assert_eq!(o.cmp(&y1, &y2sq), Ordering::Less);
            assert_eq!(o.cmp(&Monomial::one(), &y1), Ordering::Less);
        }
    }

    #[test]
    fn grevlex_tiebreak() {
        // deg 2 in three variables: x^2 > xy > y^2 > xz > yz > z^2
        let o = MonomialOrder::grevlex();
        let x = VarId::Y(1);
        let y = VarId::Y(2);
        let z = VarId::Y(3);
        let seq = [
            m(&[(x.clone(), 2)]),
            m(&[(x.clone(), 1), (y.clone(), 1)]),
            m(&[(y.clone(), 2)]),
            m(&[(x.clone(), 1), (z.clone(), 1)]),
            m(&[(y.clone(), 1), (z.clone(), 1)]),
            m(&[(z.clone(), 2)]),
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater, "{} vs {}", w[0], w[1]);
        }
    }

    #[test]
    fn elimination_puts_listed_vars_first() {
        let o = MonomialOrder::elimination(vec![VarId::Y(2)]);
        let y1cube = m(&[(VarId::Y(1), 3)]);
        let y2 = m(&[(VarId::Y(2), 1)]);
        assert_eq!(o.cmp(&y2, &y1cube), Ordering::Greater);
    }
}
