//! Multivariate polynomials in a local weighted monomial order, their
//! derivatives, and fractions with unit denominators (elements of the local
//! ring at the origin).
//!
//! The monomial order is fixed: smaller weighted degree compares greater, so
//! `1` is the largest monomial. It is the exact inverse of the weighted
//! degree reverse-lexicographic order, so among monomials of equal weighted
//! degree the last variable with differing exponent decides and a larger
//! exponent there is greater.

mod fraction;
mod parse;
mod polynomial;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::coeffield::Domain;
use crate::error::{Error, Result};

pub use fraction::LocalFraction;
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;

/// Ordered variable names plus the distinguished variable used by the polar
/// method and hyperplane restriction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VariableSet {
    names: Vec<String>,
    distinguished: usize,
}

impl VariableSet {
    pub fn new(names: Vec<String>, distinguished: usize) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::parse_at(1, "at least one variable is required"));
        }
        if distinguished >= names.len() {
            return Err(Error::parse_at(1, "distinguished variable out of range"));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::parse_at(1, format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::parse_at(1, format!("duplicate variable {n:?}")));
            }
        }
        Ok(Self { names, distinguished })
    }

    /// Convenience constructor from string slices, first variable distinguished.
    pub fn from_names(names: &[&str]) -> Result<Self> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), 0)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Positive integer weights, one per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::parse_at(1, "weights must be positive"));
        }
        Ok(Self(weights))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drops the exponent at `index`.
    pub fn without(&self, index: usize) -> Monomial {
        let mut e = self.0.clone();
        e.remove(index);
        Monomial(e)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Σ wᵢ·eᵢ.
pub fn weighted_degree(m: &Monomial, w: &WeightVector) -> u32 {
    m.0.iter().zip(&w.0).map(|(e, w)| e * w).sum()
}

/// Inverse of the weighted degree reverse-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    weights: WeightVector,
}

impl MonomialOrder {
    pub fn local_weighted(weights: WeightVector) -> Self {
        Self { weights }
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        weighted_degree(m, &self.weights)
    }

    /// `Greater` means `m1` precedes `m2`, i.e. is closer to the constant 1.
    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        let (d1, d2) = (self.degree(m1), self.degree(m2));
        if d1 != d2 {
            return d2.cmp(&d1);
        }
        for (a, b) in m1.0.iter().zip(&m2.0).rev() {
            if a != b {
                return a.cmp(b);
            }
        }
        Ordering::Equal
    }
}

/// Polynomial ring context shared by all polynomials of one computation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    vars: VariableSet,
    order: MonomialOrder,
    param: Option<String>,
}

impl Ring {
    /// Weights default to all ones. A parameter name switches coefficients to ℚ(t).
    pub fn new(vars: VariableSet, weights: Option<WeightVector>, param: Option<String>) -> Result<Arc<Ring>> {
        let weights = weights.unwrap_or_else(|| WeightVector::uniform(vars.len()));
        if weights.len() != vars.len() {
            return Err(Error::parse_at(
                1,
                format!("{} weights for {} variables", weights.len(), vars.len()),
            ));
        }
        if let Some(p) = &param {
            if vars.index_of(p).is_some() {
                return Err(Error::parse_at(1, format!("parameter {p:?} is also a variable")));
            }
        }
        Ok(Arc::new(Ring {
            vars,
            order: MonomialOrder::local_weighted(weights),
            param,
        }))
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        self.vars.names()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> &WeightVector {
        &self.order.weights
    }

    pub fn param(&self) -> Option<&str> {
        self.param.as_deref()
    }

    pub fn param_symbol(&self) -> &str {
        self.param.as_deref().unwrap_or("t")
    }

    pub fn domain(&self) -> Domain {
        if self.param.is_some() {
            Domain::Function
        } else {
            Domain::Rational
        }
    }

    pub fn distinguished(&self) -> usize {
        self.vars.distinguished
    }

    /// Ring of the hyperplane `x_d = 0`, dropping the distinguished variable.
    /// The first remaining variable becomes distinguished.
    pub fn restricted(&self) -> Result<Arc<Ring>> {
        let d = self.vars.distinguished;
        let mut names = self.vars.names.clone();
        names.remove(d);
        let mut weights = self.order.weights.0.clone();
        weights.remove(d);
        Ring::new(
            VariableSet::new(names, 0)?,
            Some(WeightVector::new(weights)?),
            self.param.clone(),
        )
    }

    /// Same variables and weights with coefficients in ℚ (parameter dropped).
    pub fn specialized(&self) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            order: self.order.clone(),
            param: None,
        })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        if let Some(p) = &self.param {
            write!(f, "({p})")?;
        }
        write!(
            f,
            "[{}] weights {:?}",
            self.vars.names.join(","),
            self.order.weights.0
        )
    }
}
