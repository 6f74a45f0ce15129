//! Monomials as sparse exponent maps.

use std::collections::BTreeMap;
use std::fmt;

use super::var::VarId;

/// A monomial: a finite map from variables to positive exponents. The empty
/// map is the monomial 1. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    exps: BTreeMap<VarId, u32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u32) -> Monomial {
        let mut exps = BTreeMap::new();
        if e > 0 {
            exps.insert(v, e);
        }
        Monomial { exps }
    }

    pub fn from_exps(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Monomial {
        let mut exps = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: &VarId) -> u32 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.values().map(|&e| e as u64).sum()
    }

    /// Variables with nonzero exponent, in display order.
    pub fn vars(&self) -> impl Iterator<Item = (&VarId, u32)> {
        self.exps.iter().map(|(v, &e)| (v, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            *exps.entry(v.clone()).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        let exps = self.exps.iter().map(|(v, e)| (v.clone(), e * k)).collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// other / self; requires `self.divides(other)`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exps = BTreeMap::new();
        for (v, e) in &other.exps {
            let d = e - self.exponent(v);
            if d > 0 {
                exps.insert(v.clone(), d);
            }
        }
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            let slot = exps.entry(v.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        Monomial { exps }
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.keys().all(|v| other.exponent(v) == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}
