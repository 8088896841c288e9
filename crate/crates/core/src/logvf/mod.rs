//! Non-trivial logarithmic vector fields: the polar method through local
//! cohomology, the Jacobi-quotient method, lifting and triviality.

use std::sync::Arc;

use crate::coeffield::Rational;
use crate::error::{Error, Result};
use crate::linalg;
use crate::localcoh::{
    annihilated_space, annihilator_standard_basis, image_space, kernel_space, CohomologySpace, Role,
};
use crate::localstd::{ideal_quotient, Germ, QuotientAlgebra, StandardBasis};
use crate::poly::{LocalFraction, Polynomial, Ring};

/// `v = Σ aᵢ ∂/∂xᵢ` together with its cofactor `b`, `v(f) = b·f`.
#[derive(Clone, Debug)]
pub struct VectorField {
    coefficients: Vec<LocalFraction>,
    cofactor: LocalFraction,
}

impl VectorField {
    pub fn new(coefficients: Vec<LocalFraction>, cofactor: LocalFraction) -> Self {
        Self {
            coefficients,
            cofactor,
        }
    }

    /// Polynomial coefficients over a common unit denominator `den`.
    pub fn over(numerators: Vec<Polynomial>, cofactor: Polynomial, den: &Polynomial) -> Result<Self> {
        let coefficients = numerators
            .into_iter()
            .map(|p| LocalFraction::new(p, den.clone()))
            .collect::<Result<_>>()?;
        Ok(Self::new(
            coefficients,
            LocalFraction::new(cofactor, den.clone())?,
        ))
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::new(
            vec![LocalFraction::zero(ring); ring.nvars()],
            LocalFraction::zero(ring),
        )
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.cofactor.ring()
    }

    pub fn coefficients(&self) -> &[LocalFraction] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> &LocalFraction {
        &self.coefficients[i]
    }

    pub fn cofactor(&self) -> &LocalFraction {
        &self.cofactor
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(LocalFraction::is_zero)
    }

    /// `v(p) = Σ aᵢ·∂ᵢp`.
    pub fn apply(&self, p: &Polynomial) -> LocalFraction {
        self.coefficients
            .iter()
            .enumerate()
            .fold(LocalFraction::zero(p.ring()), |acc, (i, a)| {
                acc.add(&a.mul_poly(&p.derivative(i)))
            })
    }

    /// `v(f) = b·f`, checked by cross-multiplication.
    pub fn is_logarithmic_for(&self, f: &Polynomial) -> bool {
        self.apply(f).value_eq(&self.cofactor.mul_poly(f))
    }

    pub fn verify(&self, f: &Polynomial) -> Result<()> {
        if self.is_logarithmic_for(f) {
            Ok(())
        } else {
            Err(Error::InternalInvariant("v(f) = b·f does not hold".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a.add(b))
                .collect(),
            self.cofactor.add(&other.cofactor),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.coefficients.iter().map(LocalFraction::neg).collect(),
            self.cofactor.neg(),
        )
    }

    /// `p·v`, whose cofactor is `p·b`.
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::new(
            self.coefficients.iter().map(|a| a.mul_poly(p)).collect(),
            self.cofactor.mul_poly(p),
        )
    }

    pub fn specialize(&self, value: &Rational, target: &Arc<Ring>) -> Result<Self> {
        Ok(Self::new(
            self.coefficients
                .iter()
                .map(|a| a.specialize(value, target))
                .collect::<Result<_>>()?,
            self.cofactor.specialize(value, target)?,
        ))
    }

    /// `(a₁)*d/dx₁ + … ` with zero coefficients omitted.
    pub fn render(&self) -> String {
        let names = self.ring().names();
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .zip(names)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, x)| format!("({})*d/d{x}", a.render()))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Polar,
    Jacobi,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Polar => "polar",
            Method::Jacobi => "jacobi",
        }
    }
}

/// τ fields whose classes are a basis of the non-trivial fields modulo
/// trivial ones, with the coefficient (`a`) or cofactor (`b`) each came from.
#[derive(Clone, Debug)]
pub struct LogVfBasis {
    pub method: Method,
    pub fields: Vec<VectorField>,
    pub witnesses: Vec<Polynomial>,
}

/// Intermediate data of the polar method.
#[derive(Clone, Debug)]
pub struct PolarData {
    pub gamma: CohomologySpace,
    pub delta: CohomologySpace,
    pub kernel: CohomologySpace,
    /// Standard basis of `Ann(H_Δ) = (f, ∂₂f, …, ∂ₙf) : (∂₁f)`.
    pub coefficient_ideal: StandardBasis,
    pub candidates: Vec<Polynomial>,
}

/// Reduced echelon basis of the span of `polys` in `alg`, pivots on the
/// greatest basis monomial, each pivot coefficient 1.
fn echelon_in(alg: &QuotientAlgebra, polys: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut rows: Vec<_> = polys.into_iter().map(|p| alg.coords(&p)).collect();
    linalg::rref(&mut rows);
    rows.iter().map(|r| alg.element(r)).collect()
}

fn check_count(what: &str, got: usize, tau: usize) -> Result<()> {
    if got == tau {
        Ok(())
    } else {
        Err(Error::InconsistentInvariants(format!(
            "{what} has {got} elements but the Tjurina number is {tau}"
        )))
    }
}

/// Steps 1–6 of the polar method.
pub fn polar_data(germ: &Germ) -> Result<PolarData> {
    let polar = germ.polar_algebra()?;
    let mu = germ.mu()?;
    let tau = germ.tau()?;
    let mu_h = germ.mu_hyperplane()?;
    let gamma = annihilated_space(&germ.polar_generators(), mu + mu_h, Role::Gamma)?;
    let g = germ.polar_partial();
    let delta = image_space(g, &gamma);
    let kernel = kernel_space(g, &gamma, Some(tau))?;
    if delta.dimension() + tau != gamma.dimension() {
        return Err(Error::InconsistentInvariants(format!(
            "dim H_Δ = {} but μ − τ + μ(f|H) = {}",
            delta.dimension(),
            gamma.dimension() - tau
        )));
    }
    let coefficient_ideal = annihilator_standard_basis(&delta)?;
    let products = polar.basis().monomials().iter().flat_map(|m| {
        let one = germ.ring().domain().one();
        coefficient_ideal
            .generators()
            .iter()
            .map(move |s| s.mul_term(m, &one))
    });
    let candidates = echelon_in(polar, products.collect::<Vec<_>>());
    check_count("the polar coefficient space", candidates.len(), tau)?;
    Ok(PolarData {
        gamma,
        delta,
        kernel,
        coefficient_ideal,
        candidates,
    })
}

/// Basis `A` of `((f, ∂₂f, …, ∂ₙf) : (∂₁f)) / (f, ∂₂f, …, ∂ₙf)`.
pub fn coefficient_candidates_polar(germ: &Germ) -> Result<Vec<Polynomial>> {
    Ok(polar_data(germ)?.candidates)
}

/// Standard basis of `J : (f)`.
pub fn jacobi_quotient(germ: &Germ) -> Result<StandardBasis> {
    germ.milnor_algebra()?;
    ideal_quotient(germ.partials(), germ.f())
}

/// Basis `B` of `(J : (f)) / J`.
pub fn coefficient_candidates_jacobi(germ: &Germ) -> Result<Vec<Polynomial>> {
    let alg = germ.milnor_algebra()?;
    let sb = jacobi_quotient(germ)?;
    let one = germ.ring().domain().one();
    let products: Vec<Polynomial> = alg
        .basis()
        .monomials()
        .iter()
        .flat_map(|m| {
            sb.generators()
                .iter()
                .map(|s| s.mul_term(m, &one))
                .collect::<Vec<_>>()
        })
        .collect();
    let b = echelon_in(alg, products);
    check_count("(J : f)/J", b.len(), germ.tau()?)?;
    Ok(b)
}

/// Field with `a₁ = a` for `a ∈ (f, ∂₂f, …, ∂ₙf) : (∂₁f)`.
pub fn lift_polar(a: &Polynomial, germ: &Germ) -> Result<VectorField> {
    let ring = germ.ring();
    if a.is_zero() {
        return Ok(VectorField::zero(ring));
    }
    let d = germ.distinguished();
    let div = germ.polar_lifting()?.divide(&a.mul(germ.polar_partial()));
    if !div.remainder.is_zero() {
        return Err(Error::Precondition(format!(
            "{a} is not in the polar coefficient ideal"
        )));
    }
    // unit·a·∂₁f = c₀·f + Σ cᵢ·∂ᵢf
    let u = &div.unit;
    let mut others = div.quotients[1..].iter();
    let nums = (0..ring.nvars())
        .map(|i| {
            if i == d {
                a.mul(u)
            } else {
                others.next().expect("one quotient per partial").neg()
            }
        })
        .collect();
    let v = VectorField::over(nums, div.quotients[0].clone(), u)?;
    v.verify(germ.f())?;
    Ok(v)
}

/// Field with cofactor exactly `b`, for `b ∈ J : (f)`.
pub fn lift_jacobi(b: &Polynomial, germ: &Germ) -> Result<VectorField> {
    let ring = germ.ring();
    if b.is_zero() {
        return Ok(VectorField::zero(ring));
    }
    let div = germ.jacobi_lifting()?.divide(&b.mul(germ.f()));
    if !div.remainder.is_zero() {
        return Err(Error::Precondition(format!("{b} is not in J : (f)")));
    }
    let u = &div.unit;
    let v = VectorField::over(div.quotients.clone(), b.mul(u), u)?;
    v.verify(germ.f())?;
    Ok(v)
}

/// `a₁ ∈ (f, ∂₂f, …, ∂ₙf)`; for a logarithmic `v` this is triviality.
pub fn is_trivial(v: &VectorField, germ: &Germ) -> Result<bool> {
    let a1 = v.coefficient(germ.distinguished());
    Ok(germ.polar_algebra()?.contains(a1.numerator()))
}

/// `v ∼ w`: the difference is trivial.
pub fn equivalent(v: &VectorField, w: &VectorField, germ: &Germ) -> Result<bool> {
    is_trivial(&v.sub(w), germ)
}

type Lift = fn(&Polynomial, &Germ) -> Result<VectorField>;

pub fn logvf_basis(germ: &Germ, method: Method) -> Result<LogVfBasis> {
    let (witnesses, lift): (Vec<Polynomial>, Lift) = match method {
        Method::Polar => (coefficient_candidates_polar(germ)?, lift_polar),
        Method::Jacobi => (coefficient_candidates_jacobi(germ)?, lift_jacobi),
    };
    let fields = witnesses
        .iter()
        .map(|w| lift(w, germ))
        .collect::<Result<Vec<_>>>()?;
    for v in &fields {
        if is_trivial(v, germ)? {
            return Err(Error::InternalInvariant(format!(
                "lifted field {} is trivial",
                v.render()
            )));
        }
    }
    Ok(LogVfBasis {
        method,
        fields,
        witnesses,
    })
}

/// Rank of the `a₁` coefficients in `𝒪/(f, ∂₂f, …, ∂ₙf)`: the dimension of
/// the span of the fields' classes.
pub fn class_rank(fields: &[VectorField], germ: &Germ) -> Result<usize> {
    let alg = germ.polar_algebra()?;
    let d = germ.distinguished();
    let rows = fields
        .iter()
        .map(|v| alg.fraction_coords(v.coefficient(d)))
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(&rows))
}

#[cfg(test)]
mod tests;
