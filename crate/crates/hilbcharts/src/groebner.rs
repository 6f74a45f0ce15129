//! Buchberger-style Groebner bases over field coefficients: normal forms,
//! elimination, and free-variable shape checks.
//!
//! Pair selection is the normal strategy (smallest lcm degree first), with
//! the coprime-leading-term and chain criteria. S-polynomials whose lcm
//! degree exceeds the degree cap are skipped and the basis flagged partial;
//! a zero normal form against a partial basis still certifies membership,
//! a nonzero one is inconclusive.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::ring::{MonomialOrder, Polynomial, VarId};

pub const DEFAULT_DEGREE_CAP: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GbError {
    /// The basis hit the degree cap, so the requested answer is inconclusive.
    Partial { degree_cap: u64 },
}

impl fmt::Display for GbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GbError::Partial { degree_cap } => {
                write!(f, "Groebner basis is partial (degree cap {})", degree_cap)
            }
        }
    }
}

impl std::error::Error for GbError {}

/// A reduced, auto-normalized Groebner basis. `partial` is set when any
/// S-polynomial of degree above the cap was skipped.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    degree_cap: u64,
    partial: bool,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn degree_cap(&self) -> u64 {
        self.degree_cap
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }
}

/// One full reduction step: the remainder of `p` on division by `gens`.
/// No term of the result is divisible by any leading term of `gens`.
fn reduce_full(p: &Polynomial, gens: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let mut rem = Polynomial::zero(p.field(), order.clone());
    let mut work = p.reorder(order.clone());
    'outer: while let Some((m, c)) = work.leading_term() {
        let m = m.clone();
        let c = c.clone();
        for g in gens {
            if let Some((gm, gc)) = g.leading_term() {
                if gm.divides(&m) {
                    let qm = gm.div_into(&m);
                    let qc = c.div(&gc);
                    let qt = Polynomial::term(qc, qm, order.clone());
                    work = work.sub(&qt.mul(g));
                    continue 'outer;
                }
            }
        }
        // leading term irreducible: move it to the remainder
        let t = Polynomial::term(c, m, order.clone());
        rem = rem.add(&t);
        work = work.sub(&t);
    }
    rem
}

/// Normal form of `p` modulo the basis; idempotent.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    reduce_full(p, &gb.generators, &gb.order)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let lcm = fm.lcm(gm);
    let ft = Polynomial::term(fc.inv(), fm.div_into(&lcm), order.clone());
    let gt = Polynomial::term(gc.inv(), gm.div_into(&lcm), order.clone());
    ft.mul(f).sub(&gt.mul(g))
}

/// Buchberger's algorithm with a degree cap.
pub fn groebner_basis(
    gens: &[Polynomial],
    order: &MonomialOrder,
    degree_cap: u64,
) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let r = reduce_full(g, &basis, order);
            if !r.is_zero() {
                basis.push(r.monic());
            }
        }
    }

    let mut partial = false;
    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut handled: HashSet<(usize, usize)> = HashSet::new();
    let lcm_deg = |basis: &[Polynomial], i: usize, j: usize| -> u64 {
        basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap())
            .total_degree()
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.insert((lcm_deg(&basis, i, j), i, j));
        }
    }

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        handled.insert((i, j));
        if deg > degree_cap {
            partial = true;
            continue;
        }
        let fi = &basis[i];
        let fj = &basis[j];
        let (mi, mj) = (
            fi.leading_monomial().unwrap(),
            fj.leading_monomial().unwrap(),
        );
        // coprime criterion
        if mi.coprime(mj) {
            continue;
        }
        // chain criterion: some k with lt(k) | lcm(i,j) and both pairs done
        let lcm = mi.lcm(mj);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm)
                && handled.contains(&(i.min(k), i.max(k)))
                && handled.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(fi, fj, order);
        let r = reduce_full(&s, &basis, order);
        if !r.is_zero() {
            let r = r.monic();
            let new = basis.len();
            for k in 0..new {
                pairs.insert((lcm_deg_with(&basis, k, &r), k, new));
            }
            basis.push(r);
        }
    }

    // inter-reduce to the unique reduced basis
    loop {
        let mut changed = false;
        let mut next: Vec<Polynomial> = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others: Vec<Polynomial> = basis
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_full(&basis[i], &others, order);
            if r != basis[i] {
                changed = true;
            }
            if !r.is_zero() {
                next.push(r.monic());
            }
        }
        next.sort_by(|a, b| {
            order.cmp(
                a.leading_monomial().unwrap(),
                b.leading_monomial().unwrap(),
            )
        });
        next.dedup();
        let done = !changed && next == basis;
        basis = next;
        if done {
            break;
        }
    }

    GroebnerBasis {
        generators: basis,
        order: order.clone(),
        degree_cap,
        partial,
    }
}

fn lcm_deg_with(basis: &[Polynomial], k: usize, r: &Polynomial) -> u64 {
    basis[k]
        .leading_monomial()
        .unwrap()
        .lcm(r.leading_monomial().unwrap())
        .total_degree()
}

/// Generators of the intersection of the ideal with the subring on
/// `keep_vars`, via a lex elimination order with the discarded variables
/// greatest. Errors when the basis is partial.
pub fn eliminate(
    gens: &[Polynomial],
    keep_vars: &BTreeSet<VarId>,
    degree_cap: u64,
) -> Result<Vec<Polynomial>, GbError> {
    let mut discard: Vec<VarId> = Vec::new();
    for g in gens {
        for v in g.vars() {
            if !keep_vars.contains(&v) && !discard.contains(&v) {
                discard.push(v);
            }
        }
    }
    discard.sort();
    let order = MonomialOrder::elimination(discard.clone());
    let gb = groebner_basis(gens, &order, degree_cap);
    if gb.is_partial() {
        return Err(GbError::Partial { degree_cap });
    }
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.vars().iter().all(|v| keep_vars.contains(v)))
        .cloned()
        .collect())
}

/// Certifies that the quotient by `gens` is a polynomial ring on exactly
/// `free_vars`: in an elimination order with the non-free variables
/// greatest, the reduced basis must consist of one generator `v - r_v` per
/// non-free variable `v`, with `r_v` in the free variables, and nothing
/// else. The ambient variable set is the union of the generators' variables
/// and `free_vars`.
pub fn is_free_on(
    gens: &[Polynomial],
    free_vars: &BTreeSet<VarId>,
    degree_cap: u64,
) -> Result<bool, GbError> {
    let mut ambient: BTreeSet<VarId> = free_vars.clone();
    for g in gens {
        ambient.extend(g.vars());
    }
    let non_free: Vec<VarId> = ambient.difference(free_vars).cloned().collect();
    let order = MonomialOrder::elimination(non_free.clone());
    let gb = groebner_basis(gens, &order, degree_cap);
    if gb.is_partial() {
        return Err(GbError::Partial { degree_cap });
    }
    let mut solved: BTreeSet<VarId> = BTreeSet::new();
    for g in gb.generators() {
        let lm = g.leading_monomial().unwrap();
        let mut vars = lm.vars();
        let head = match (vars.next(), vars.next()) {
            (Some((v, 1)), None) => v.clone(),
            _ => return Ok(false), // nonlinear head: not solved form
        };
        if free_vars.contains(&head) {
            return Ok(false); // a relation among the free variables
        }
        // reduced basis tails cannot contain solved variables, but the
        // tail must avoid *all* non-free variables
        let tail_ok = g
            .vars()
            .into_iter()
            .filter(|v| *v != head)
            .all(|v| free_vars.contains(&v));
        if !tail_ok {
            return Ok(false);
        }
        solved.insert(head);
    }
    Ok(solved.len() == non_free.len())
}
