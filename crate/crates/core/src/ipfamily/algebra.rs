//! Group algebras with exact rational coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::groups::FiniteGroup;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Σ c_g g with finite support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgElem {
    pub group: u64,
    pub coeffs: BTreeMap<usize, Rational>,
}

impl GroupAlgElem {
    pub fn zero(g: &dyn FiniteGroup) -> Self {
        GroupAlgElem { group: g.id(), coeffs: BTreeMap::new() }
    }

    pub fn delta(g: &dyn FiniteGroup, a: usize) -> Self {
        GroupAlgElem { group: g.id(), coeffs: BTreeMap::from([(a, Rational::one())]) }
    }

    pub fn unit(g: &dyn FiniteGroup) -> Self {
        Self::delta(g, g.identity())
    }

    /// Uniform average over `support`.
    pub fn average(g: &dyn FiniteGroup, support: &[usize]) -> Self {
        let c = Rational::new(1.into(), (support.len() as i64).into());
        GroupAlgElem { group: g.id(), coeffs: support.iter().map(|&a| (a, c.clone())).collect() }
    }

    pub fn coeff(&self, a: usize) -> Rational {
        self.coeffs.get(&a).cloned().unwrap_or_else(Rational::zero)
    }

    fn check(&self, g: &dyn FiniteGroup) -> Result<()> {
        if self.group != g.id() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn add_term(&mut self, a: usize, c: Rational) {
        let e = self.coeffs.entry(a).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&a);
        }
    }

    pub fn add(&self, other: &GroupAlgElem) -> Result<GroupAlgElem> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.clone();
        for (&a, c) in &other.coeffs {
            out.add_term(a, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GroupAlgElem {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(&a, x)| (a, x * c)).collect()
        };
        GroupAlgElem { group: self.group, coeffs }
    }
}

/// (a * b)(g) = Σ_{xy = g} a(x) b(y).
pub fn convolve(a: &GroupAlgElem, b: &GroupAlgElem, g: &dyn FiniteGroup) -> Result<GroupAlgElem> {
    a.check(g)?;
    b.check(g)?;
    let mut out = GroupAlgElem::zero(g);
    for (&x, cx) in &a.coeffs {
        for (&y, cy) in &b.coeffs {
            out.add_term(g.mul(x, y), cx * cy);
        }
    }
    Ok(out)
}

/// f^#(g) = conj f(g^{-1}); coefficients are real here.
pub fn involution(a: &GroupAlgElem, g: &dyn FiniteGroup) -> Result<GroupAlgElem> {
    a.check(g)?;
    Ok(GroupAlgElem { group: a.group, coeffs: a.coeffs.iter().map(|(&x, c)| (g.inv(x), c.clone())).collect() })
}
