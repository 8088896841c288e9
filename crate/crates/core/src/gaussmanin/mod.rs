//! Brieskorn-formula computations on `H″`: the action `D(f·b·ω_X)` from a
//! logarithmic field with `v(f) = b·f`, the bookkeeping `Df = fD + 1`, the
//! degree-2 integral dependence of `f` over `J`, and the `D²(f²ω_X)` step.
//!
//! Values of `D` are reported as coordinates over the monomial basis `M`
//! of the Milnor algebra `𝒪/J`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Row;
use crate::localstd::{ideal_membership, lifting_basis, Germ, QuotientBasis};
use crate::logvf::{coefficient_candidates_jacobi, lift_jacobi, VectorField};
use crate::poly::{LocalFraction, Polynomial};

/// `Σ ∂ᵢaᵢ`.
pub fn divergence(v: &VectorField) -> LocalFraction {
    v.coefficients()
        .iter()
        .enumerate()
        .fold(LocalFraction::zero(v.ring()), |acc, (i, a)| {
            acc.add(&a.derivative(i))
        })
}

/// `D(f·b·ω_X) = (div v)·ω_X` for the field `v` with `v(f) = b·f`.
#[derive(Clone, Debug)]
pub struct BrieskornEntry {
    pub witness_b: Polynomial,
    pub field: VectorField,
    pub divergence: LocalFraction,
    pub reduced: Row,
}

pub fn brieskorn_entry(b: &Polynomial, germ: &Germ) -> Result<BrieskornEntry> {
    entry_from_field(b, lift_jacobi(b, germ)?, germ)
}

/// Entry for a field already known to satisfy `v(f) = b·f`.
pub fn entry_from_field(b: &Polynomial, field: VectorField, germ: &Germ) -> Result<BrieskornEntry> {
    let cof = field.cofactor().sub(&LocalFraction::from_poly(b.clone()));
    if !cof.numerator().is_zero() || !field.is_logarithmic_for(germ.f()) {
        return Err(Error::Precondition(format!(
            "{} does not satisfy v(f) = ({b})·f",
            field.render()
        )));
    }
    let divergence = divergence(&field);
    let reduced = germ.milnor_algebra()?.fraction_coords(&divergence)?;
    Ok(BrieskornEntry {
        witness_b: b.clone(),
        field,
        divergence,
        reduced,
    })
}

/// Coordinates of `fD(b·ω_X) = D(f·b·ω_X) − b·ω_X`.
pub fn fd_action(b: &Polynomial, germ: &Germ) -> Result<Row> {
    let entry = brieskorn_entry(b, germ)?;
    let own = germ.milnor_algebra()?.coords(b);
    Ok(entry.reduced.iter().zip(&own).map(|(a, c)| a - c).collect())
}

/// `unit·f² = Σ aᵢ·f·∂ᵢf + Σ_{i≤j} a_{ij}·∂ᵢf·∂ⱼf`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralRelation {
    pub unit_factor: Polynomial,
    pub linear_coeffs: Vec<Polynomial>,
    pub quadratic_coeffs: BTreeMap<(usize, usize), Polynomial>,
}

impl IntegralRelation {
    /// The left side minus the right side, fully expanded.
    pub fn defect(&self, f: &Polynomial) -> Polynomial {
        let n = f.ring().nvars();
        let fx: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
        let mut acc = self.unit_factor.mul(&f.mul(f));
        for (a, fi) in self.linear_coeffs.iter().zip(&fx) {
            acc = acc.sub(&a.mul(f).mul(fi));
        }
        for (&(i, j), a) in &self.quadratic_coeffs {
            acc = acc.sub(&a.mul(&fx[i]).mul(&fx[j]));
        }
        acc
    }

    pub fn verify(&self, f: &Polynomial) -> bool {
        self.unit_factor.is_unit()
            && self.linear_coeffs.len() == f.ring().nvars()
            && self
                .quadratic_coeffs
                .keys()
                .all(|&(i, j)| i <= j && j < f.ring().nvars())
            && self.defect(f).is_zero()
    }

    pub fn render(&self) -> String {
        let ring = self.unit_factor.ring();
        let names = ring.names();
        let mut rhs: Vec<String> = self
            .linear_coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("({a})*f*f_{}", names[i]))
            .collect();
        rhs.extend(
            self.quadratic_coeffs
                .iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(&(i, j), a)| format!("({a})*f_{}*f_{}", names[i], names[j])),
        );
        if rhs.is_empty() {
            rhs.push("0".into());
        }
        format!("({})*f^2 = {}", self.unit_factor, rhs.join(" + "))
    }
}

/// A degree-2 relation for `f` over `J`. When `f ∈ J` the relation
/// `u·f² = Σ qᵢ·f·∂ᵢf` from the membership certificate is returned.
pub fn integral_dependence_f2(germ: &Germ) -> Result<IntegralRelation> {
    let f = germ.f();
    let ring = germ.ring();
    let n = ring.nvars();
    let fx = germ.partials();
    let m = ideal_membership(f, fx)?;
    if m.member {
        let rel = IntegralRelation {
            unit_factor: m.certificate.unit,
            linear_coeffs: m.certificate.quotients,
            quadratic_coeffs: BTreeMap::new(),
        };
        return checked(rel, f);
    }
    let mut gens: Vec<Polynomial> = fx.iter().map(|g| f.mul(g)).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            gens.push(fx[i].mul(&fx[j]));
            pairs.push((i, j));
        }
    }
    let d = lifting_basis(&gens)?.divide(&f.mul(f));
    if !d.remainder.is_zero() {
        return Err(Error::NotIntegralDegreeTwo(format!("remainder {}", d.remainder)));
    }
    let rel = IntegralRelation {
        unit_factor: d.unit,
        linear_coeffs: d.quotients[..n].to_vec(),
        quadratic_coeffs: pairs.into_iter().zip(d.quotients[n..].iter().cloned()).collect(),
    };
    checked(rel, f)
}

fn checked(rel: IntegralRelation, f: &Polynomial) -> Result<IntegralRelation> {
    if rel.verify(f) {
        Ok(rel)
    } else {
        Err(Error::InternalInvariant(format!(
            "relation fails: {}",
            rel.render()
        )))
    }
}

type Normalised = (Vec<LocalFraction>, BTreeMap<(usize, usize), LocalFraction>);

/// `αᵢ = −aᵢ/unit` and `α_{ij} = −a_{ij}/unit`.
fn normalise(rel: &IntegralRelation, f: &Polynomial) -> Result<Normalised> {
    if !rel.verify(f) {
        return Err(Error::Precondition(format!(
            "not a relation for f: {}",
            rel.render()
        )));
    }
    let u = &rel.unit_factor;
    let norm = |a: &Polynomial| LocalFraction::new(a.neg(), u.clone());
    let linear = rel.linear_coeffs.iter().map(norm).collect::<Result<Vec<_>>>()?;
    let quadratic = rel
        .quadratic_coeffs
        .iter()
        .map(|(k, a)| Ok((*k, norm(a)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok((linear, quadratic))
}

/// `D(f²ω_X) = −Σᵢ ∂ᵢ(αᵢ·f + Σ_{j≥i} α_{ij}·∂ⱼf)·ω_X`.
pub fn d_of_f_squared(rel: &IntegralRelation, germ: &Germ) -> Result<LocalFraction> {
    let f = germ.f();
    let (linear, quadratic) = normalise(rel, f)?;
    let mut acc = LocalFraction::zero(germ.ring());
    for (i, a) in linear.iter().enumerate() {
        let inner = quadratic
            .range((i, 0)..(i + 1, 0))
            .fold(a.mul_poly(f), |s, (&(_, j), q)| {
                s.add(&q.mul_poly(&germ.partials()[j]))
            });
        acc = acc.sub(&inner.derivative(i));
    }
    Ok(acc)
}

/// Data of the `D²(f²ω_X)` step for a relation normalised to
/// `f² + Σ αᵢ·f·∂ᵢf + Σ α_{ij}·∂ᵢf·∂ⱼf = 0`.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub linear: Vec<LocalFraction>,
    pub quadratic: BTreeMap<(usize, usize), LocalFraction>,
    /// `R = Σ cᵢ·∂ᵢf`.
    pub residual_certificate: Vec<LocalFraction>,
    pub value: LocalFraction,
    pub reduced: Row,
}

/// `D²(f²ω_X) = −{Σ(∂ᵢαᵢ + ∂ᵢcᵢ) + Σ_{i≤j} ∂ⱼ∂ᵢα_{ij}}·ω_X` where
/// `R = (Σ∂ᵢαᵢ)·f + Σ_{i≤j} α_{ij}·∂ᵢ∂ⱼf = Σ cᵢ·∂ᵢf`. `None` when `R ∉ J`.
///
/// The relation is normalised by exact division by its unit.
pub fn saturation_step(rel: &IntegralRelation, germ: &Germ) -> Result<Option<Saturation>> {
    let f = germ.f();
    let ring = germ.ring();
    let (linear, quadratic) = normalise(rel, f)?;

    let div_lin = linear
        .iter()
        .enumerate()
        .fold(LocalFraction::zero(ring), |acc, (i, a)| acc.add(&a.derivative(i)));
    let residual = quadratic.iter().fold(div_lin.mul_poly(f), |acc, (&(i, j), a)| {
        acc.add(&a.mul_poly(&f.derivative(i).derivative(j)))
    });

    // e·N = Σ qᵢ·∂ᵢf with R = N/den, so cᵢ = qᵢ/(e·den)
    let cert = germ.jacobi_lifting()?.divide(residual.numerator());
    if !cert.remainder.is_zero() {
        return Ok(None);
    }
    let den = cert.unit.mul(residual.denominator());
    let residual_certificate = cert
        .quotients
        .iter()
        .map(|q| LocalFraction::new(q.clone(), den.clone()))
        .collect::<Result<Vec<_>>>()?;

    let mut sum = div_lin;
    for (i, c) in residual_certificate.iter().enumerate() {
        sum = sum.add(&c.derivative(i));
    }
    for (&(i, j), a) in &quadratic {
        sum = sum.add(&a.derivative(i).derivative(j));
    }
    let value = sum.neg();
    let reduced = germ.milnor_algebra()?.fraction_coords(&value)?;
    Ok(Some(Saturation {
        linear,
        quadratic,
        residual_certificate,
        value,
        reduced,
    }))
}

/// The integral relation, `D(f²ω_X)` reduced mod `J`, and the `D²` value
/// when the residual term lies in `J`.
#[derive(Clone, Debug)]
pub struct SaturationHint {
    pub relation: IntegralRelation,
    pub d_f_squared: Row,
    pub step: Option<Saturation>,
}

#[derive(Clone, Debug)]
pub struct ConnectionReport {
    pub basis_m: QuotientBasis,
    pub entries: Vec<BrieskornEntry>,
    pub mu: usize,
    pub tau: usize,
    pub saturation: Option<SaturationHint>,
}

/// One entry per element of the basis `B` of `(J : f)/J`, plus the
/// saturation data when `μ > τ`.
pub fn connection_report(germ: &Germ) -> Result<ConnectionReport> {
    let mu = germ.mu()?;
    let tau = germ.tau()?;
    let entries = coefficient_candidates_jacobi(germ)?
        .iter()
        .map(|b| brieskorn_entry(b, germ))
        .collect::<Result<Vec<_>>>()?;
    let saturation = if mu > tau {
        let relation = integral_dependence_f2(germ)?;
        let d = d_of_f_squared(&relation, germ)?;
        let d_f_squared = germ.milnor_algebra()?.fraction_coords(&d)?;
        let step = saturation_step(&relation, germ)?;
        Some(SaturationHint {
            relation,
            d_f_squared,
            step,
        })
    } else {
        None
    };
    Ok(ConnectionReport {
        basis_m: germ.milnor_algebra()?.basis().clone(),
        entries,
        mu,
        tau,
        saturation,
    })
}

/// Renders coordinates over `M` as a polynomial.
pub fn render_coords(coords: &[crate::coeffield::FieldElement], germ: &Germ) -> Result<String> {
    Ok(germ.milnor_algebra()?.element(coords).render())
}

#[cfg(test)]
mod tests;
