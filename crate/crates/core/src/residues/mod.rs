//! Differential forms with local-ring coefficients, torsion forms
//! `i_v(ω_X)`, and residue representatives `ξ/g` with `g = ∂₁f`.
//!
//! `ω_X = dx₁∧…∧dxₙ` in the declared variable order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::coeffield::{FieldElement, Rational};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::localcoh::monomials_up_to;
use crate::localstd::Germ;
use crate::logvf::{logvf_basis, LogVfBasis, Method, VectorField};
use crate::poly::{LocalFraction, Monomial, Polynomial, Ring};

/// A differential form `Σ c_K dx_K` over increasing index sets `K`.
#[derive(Clone, Debug)]
pub struct Form {
    ring: Arc<Ring>,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, LocalFraction>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl Form {
    pub fn zero(ring: &Arc<Ring>, degree: usize) -> Self {
        Self {
            ring: ring.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c · dx_{i₁}∧…∧dx_{iₖ}` for any index order.
    pub fn term(ring: &Arc<Ring>, indices: &[usize], c: LocalFraction) -> Self {
        let mut f = Self::zero(ring, indices.len());
        let mut idx = indices.to_vec();
        if let Some(s) = sort_sign(&mut idx) {
            let c = if s < 0 { c.neg() } else { c };
            f.insert(idx, c);
        }
        f
    }

    /// `ω_X = dx₁∧…∧dxₙ`.
    pub fn volume(ring: &Arc<Ring>) -> Self {
        let all: Vec<usize> = (0..ring.nvars()).collect();
        Self::term(ring, &all, LocalFraction::one(ring))
    }

    /// The 0-form `c`.
    pub fn function(c: LocalFraction) -> Self {
        let ring = c.ring().clone();
        Self::term(&ring, &[], c)
    }

    /// `dp = Σ ∂ᵢp dxᵢ`.
    pub fn differential(p: &Polynomial) -> Self {
        (0..p.ring().nvars()).fold(Self::zero(p.ring(), 1), |acc, i| {
            acc.add(&Self::term(
                p.ring(),
                &[i],
                LocalFraction::from_poly(p.derivative(i)),
            ))
        })
    }

    fn insert(&mut self, k: Vec<usize>, c: LocalFraction) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&k) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(k, v);
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, LocalFraction> {
        &self.coeffs
    }

    pub fn coefficient(&self, k: &[usize]) -> LocalFraction {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| LocalFraction::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn map(&self, f: impl Fn(&LocalFraction) -> LocalFraction) -> Self {
        let mut out = Self::zero(&self.ring, self.degree);
        for (k, c) in &self.coeffs {
            out.insert(k.clone(), f(c));
        }
        out
    }

    pub fn mul(&self, c: &LocalFraction) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        self.map(|a| a.mul_poly(p))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ring, self.degree + other.degree);
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &other.coeffs {
                let mut idx: Vec<usize> = k1.iter().chain(k2).copied().collect();
                if let Some(s) = sort_sign(&mut idx) {
                    let c = c1.mul(c2);
                    out.insert(idx, if s < 0 { c.neg() } else { c });
                }
            }
        }
        out
    }

    /// Contraction `i_v`: `i_v(dx_{k₀}∧…) = Σⱼ (−1)ʲ a_{kⱼ} dx_{K∖kⱼ}`.
    pub fn interior(&self, v: &VectorField) -> Self {
        assert!(self.degree > 0, "contraction of a function");
        let mut out = Self::zero(&self.ring, self.degree - 1);
        for (k, c) in &self.coeffs {
            for (j, &i) in k.iter().enumerate() {
                let a = v.coefficient(i);
                if a.is_zero() {
                    continue;
                }
                let mut rest = k.clone();
                rest.remove(j);
                let term = c.mul(a);
                out.insert(rest, if j % 2 == 1 { term.neg() } else { term });
            }
        }
        out
    }

    /// Coefficientwise value equality.
    pub fn value_eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.sub(other).is_zero_value()
    }

    fn is_zero_value(&self) -> bool {
        self.coeffs.values().all(|c| c.numerator().is_zero())
    }

    /// Coefficients expanded as power series up to weighted degree `bound`.
    pub fn series(&self, bound: u32) -> BTreeMap<Vec<usize>, Polynomial> {
        self.coeffs
            .iter()
            .map(|(k, c)| (k.clone(), c.series(bound)))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    pub fn specialize(&self, value: &Rational, target: &Arc<Ring>) -> Result<Self> {
        let mut out = Self::zero(target, self.degree);
        for (k, c) in &self.coeffs {
            out.insert(k.clone(), c.specialize(value, target)?);
        }
        Ok(out)
    }

    fn wedge_name(&self, k: &[usize]) -> String {
        let names = self.ring.names();
        k.iter()
            .map(|&i| format!("d{}", names[i]))
            .collect::<Vec<_>>()
            .join("∧")
    }

    /// Terms `(num)*dx∧dy`; a denominator shared by every coefficient is
    /// pulled out as `(…)/(den)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let dens: Vec<&Polynomial> = self.coeffs.values().map(LocalFraction::denominator).collect();
        let common = dens.iter().all(|d| *d == dens[0]) && !dens[0].is_one();
        let body: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let coeff = if common {
                    c.numerator().render()
                } else {
                    c.render()
                };
                if k.is_empty() {
                    coeff
                } else {
                    format!("({coeff})*{}", self.wedge_name(k))
                }
            })
            .collect();
        let body = body.join(" + ");
        if common {
            format!("({body})/({})", dens[0].render())
        } else {
            body
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `β = i_v(ω_X)`.
pub fn interior_product(v: &VectorField) -> Form {
    Form::volume(v.ring()).interior(v)
}

/// A torsion form `i_v(ω_X)` of `Ω^{n−1}_S` with the field it comes from.
#[derive(Clone, Debug)]
pub struct TorsionClass {
    pub representative: Form,
    pub witness: VectorField,
}

pub fn torsion_basis(basis: &LogVfBasis) -> Vec<TorsionClass> {
    basis
        .fields
        .iter()
        .map(|v| TorsionClass {
            representative: interior_product(v),
            witness: v.clone(),
        })
        .collect()
}

/// `g·β = df∧ξ + f·η` with `g = ∂₁f`; the residue of `β/f` is `ξ/g` on `S`.
#[derive(Clone, Debug)]
pub struct ResidueRepresentative {
    pub xi: Form,
    pub denominator: Polynomial,
    pub eta: Form,
    pub source: VectorField,
}

impl ResidueRepresentative {
    /// `ξ/g` followed by the restriction marker.
    pub fn render(&self) -> String {
        format!("({})/({})|_S", self.xi.render(), self.denominator.render())
    }

    pub fn verify(&self, f: &Polynomial) -> bool {
        let beta = interior_product(&self.source);
        let lhs = beta.mul_poly(&self.denominator);
        let rhs = Form::differential(f).wedge(&self.xi).add(&self.eta.mul_poly(f));
        lhs.value_eq(&rhs)
    }
}

/// `ξ` and `η` for a logarithmic `v`. With `σ = dx₂∧…∧dxₙ` (the wedge of
/// every variable except the distinguished one) and `ε = ±1` the sign with
/// `ω_X = ε·dx₁∧σ`: `ξ = −ε·i_v(σ)` and `η = ε·b·σ`.
pub fn xi_eta(v: &VectorField, germ: &Germ) -> Result<ResidueRepresentative> {
    let ring = germ.ring();
    let d = germ.distinguished();
    let rest: Vec<usize> = (0..ring.nvars()).filter(|&i| i != d).collect();
    let sigma = Form::term(ring, &rest, LocalFraction::one(ring));
    let eps = if d.is_multiple_of(2) { 1 } else { -1 };
    let mut xi = sigma.interior(v).neg();
    let mut eta = sigma.mul(v.cofactor());
    if eps < 0 {
        xi = xi.neg();
        eta = eta.neg();
    }
    let rep = ResidueRepresentative {
        xi,
        denominator: germ.polar_partial().clone(),
        eta,
        source: v.clone(),
    };
    if !rep.verify(germ.f()) {
        return Err(Error::InternalInvariant(format!(
            "g·β = df∧ξ + f·η fails for {}",
            v.render()
        )));
    }
    Ok(rep)
}

/// Representatives `ξₖ/∂₁f` of the regular meromorphic forms, one per
/// basis field of the chosen method. The condition on `∂₁f` beyond
/// zero-dimensionality of the polar ideal is assumed, not checked.
pub fn regular_meromorphic_basis(germ: &Germ, method: Method) -> Result<Vec<ResidueRepresentative>> {
    germ.polar_algebra()?;
    logvf_basis(germ, method)?
        .fields
        .iter()
        .map(|v| xi_eta(v, germ))
        .collect()
}

/// Truncation degree for the independence test: twice the larger of the
/// initial weighted degree of `f` and the socle degree of the Milnor algebra.
pub fn independence_bound(germ: &Germ) -> Result<u32> {
    let socle = germ.milnor_algebra()?.basis().socle_degree(germ.ring());
    Ok(2 * germ.f().min_wdeg().max(socle))
}

/// Rank of `forms` (of degree n−1) modulo `f·Ω^{n−1} + df∧Ω^{n−2}` and all
/// terms of weighted degree above `bound`.
pub fn rank_modulo_trivial(germ: &Germ, forms: &[Form], bound: u32) -> usize {
    let ring = germ.ring();
    let n = ring.nvars();
    let ord = ring.order();
    let mut index: HashMap<(Vec<usize>, Monomial), usize> = HashMap::new();
    let mut row_of = |form: &BTreeMap<Vec<usize>, Polynomial>| -> BTreeMap<usize, FieldElement> {
        let mut row = BTreeMap::new();
        for (k, p) in form {
            for (m, c) in p.terms() {
                if ord.degree(m) > bound {
                    continue;
                }
                let next = index.len();
                let col = *index.entry((k.clone(), m.clone())).or_insert(next);
                row.insert(col, c.clone());
            }
        }
        row
    };
    let mut ech = SparseEchelon::new();
    let mons = monomials_up_to(ring, bound);
    let one = ring.domain().one();
    let df = Form::differential(germ.f());
    let f = germ.f();
    let top: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect();
    let low: Vec<Vec<usize>> = if n >= 2 {
        let mut v = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                v.push((0..n).filter(|&k| k != i && k != j).collect());
            }
        }
        v
    } else {
        Vec::new()
    };
    let fdeg = f.min_wdeg();
    let wmax = ring.weights().as_slice().iter().copied().max().unwrap_or(1);
    for m in &mons {
        let dm = ord.degree(m);
        let mp = Polynomial::monomial(ring, m.clone());
        if dm + fdeg > bound + wmax {
            continue;
        }
        for k in &top {
            let g = Form::term(ring, k, LocalFraction::from_poly(f.mul_term(m, &one)));
            ech.insert(row_of(&g.series(bound)));
        }
        for k in &low {
            let g = df.wedge(&Form::term(ring, k, LocalFraction::from_poly(mp.clone())));
            ech.insert(row_of(&g.series(bound)));
        }
    }
    let base = ech.rank();
    for form in forms {
        ech.insert(row_of(&form.series(bound)));
    }
    ech.rank() - base
}
