use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffield::{FieldElement, Rational};
use crate::error::{Error, Result};

use super::{Monomial, Ring};

/// Sparse polynomial; terms are sorted greatest first in the ring's local
/// order, so the leading term is `terms[0]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.domain().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, ring.domain().from_int(n))
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: FieldElement) -> Self {
        debug_assert_eq!(m.len(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        Self {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        Self::term(ring, m, ring.domain().one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i))
    }

    /// Builds from arbitrary terms: combines duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = ring.order();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn lead(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.domain().zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        // the constant monomial is the greatest, so it can only be first
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.domain().zero(),
        }
    }

    /// A unit of the local ring: nonzero constant term.
    pub fn is_unit(&self) -> bool {
        self.terms.first().is_some_and(|(m, _)| m.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn max_wdeg(&self) -> u32 {
        let ord = self.ring.order();
        self.terms.iter().map(|(m, _)| ord.degree(m)).max().unwrap_or(0)
    }

    pub fn min_wdeg(&self) -> u32 {
        self.lm().map(|m| self.ring.order().degree(m)).unwrap_or(0)
    }

    /// Weighted écart: largest weighted degree minus that of the leading monomial.
    pub fn ecart(&self) -> u32 {
        self.max_wdeg() - self.min_wdeg()
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        debug_assert!(self.ring == other.ring, "ring mismatch");
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => ord.compare(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match take {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if subtract { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if subtract { a - b } else { a + b };
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.ring == other.ring, "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = self.ring.order();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Self {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Multiplication by `c·m`; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exps()[i] > 0).map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[i];
            e[i] -= 1;
            (Monomial::new(e), c.scale_int(k as i64))
        });
        Self::from_terms(&self.ring, terms)
    }

    /// Substitutes 0 for the distinguished variable; the result lives in
    /// [`Ring::restricted`].
    pub fn restrict_hyperplane(&self) -> Result<Self> {
        let ring = self.ring.restricted()?;
        Ok(self.restrict_into(&ring))
    }

    pub(crate) fn restrict_into(&self, ring: &Arc<Ring>) -> Self {
        let d = self.ring.distinguished();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[d] == 0)
            .map(|(m, c)| (m.without(d), c.clone()));
        Self::from_terms(ring, terms)
    }

    /// Keeps the terms of weighted degree at most `bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        let ord = self.ring.order();
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| ord.degree(m) <= bound)
                .cloned()
                .collect(),
        }
    }

    /// Drops the leading term.
    pub fn tail(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    /// Evaluates the parameter at `value`, landing in `target` (a ring over ℚ
    /// with the same variables).
    pub fn specialize(&self, value: &Rational, target: &Arc<Ring>) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), FieldElement::Rational(c.substitute_parameter(value)?)));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Moves the polynomial into another ring with identical variables (e.g.
    /// after re-creating the ring); coefficients are promoted as needed.
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Result<Self> {
        if ring.names() != self.ring.names() {
            return Err(Error::Precondition("variable sets differ".into()));
        }
        let dom = ring.domain();
        Ok(Self::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (m.clone(), &dom.one() * c)),
        ))
    }

    /// Renders in the input grammar, greatest term first.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = self.ring.names();
        let sym = self.ring.param_symbol();
        let mut out = String::new();
        for (m, c) in &self.terms {
            let negative = c.looks_negative() && !matches!(c.render(sym).chars().next(), Some('('));
            let abs = if negative { -c } else { c.clone() };
            let body = if m.is_one() {
                abs.render(sym)
            } else if abs.is_one() {
                m.render(names)
            } else {
                format!("{}*{}", abs.render(sym), m.render(names))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
