use std::cell::OnceCell;
use std::collections::HashMap;
use std::sync::Arc;

use crate::coeffield::{Domain, FieldElement};
use crate::error::{Error, Result};
use crate::linalg::{self, Row};
use crate::poly::{LocalFraction, Monomial, Polynomial, Ring};

use super::{
    jacobian, lifting_basis, normal_form, quotient_monomial_basis, standard_basis, LiftingBasis,
    StandardBasis,
};

/// Monomials outside the leading ideal, greatest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub(crate) fn new(monomials: Vec<Monomial>) -> Self {
        Self { monomials }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    /// Largest weighted degree of a basis monomial.
    pub fn socle_degree(&self, ring: &Ring) -> u32 {
        self.monomials
            .iter()
            .map(|m| ring.order().degree(m))
            .max()
            .unwrap_or(0)
    }
}

/// The finite-dimensional algebra `𝒪/I` for a zero-dimensional ideal `I`,
/// with coordinates over the staircase basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    sb: StandardBasis,
    basis: QuotientBasis,
    index: HashMap<Monomial, usize>,
}

impl QuotientAlgebra {
    pub fn new(sb: StandardBasis) -> Result<Self> {
        let basis = quotient_monomial_basis(&sb)?;
        let index = basis
            .monomials()
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(Self { sb, basis, index })
    }

    pub fn from_generators(gens: &[Polynomial]) -> Result<Self> {
        Self::new(standard_basis(gens)?)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.sb.ring()
    }

    pub fn domain(&self) -> Domain {
        self.ring().domain()
    }

    pub fn standard_basis(&self) -> &StandardBasis {
        &self.sb
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.sb)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Coordinates of `p mod I` over the monomial basis.
    pub fn coords(&self, p: &Polynomial) -> Row {
        let mut v = vec![self.domain().zero(); self.dimension()];
        for (m, c) in self.normal_form(p).terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn element(&self, coords: &[FieldElement]) -> Polynomial {
        Polynomial::from_terms(
            self.ring(),
            self.basis
                .monomials()
                .iter()
                .zip(coords)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Matrix of multiplication by `g`; column `j` holds the coordinates of `g·mⱼ`.
    pub fn multiplication_matrix(&self, g: &Polynomial) -> Vec<Row> {
        let n = self.dimension();
        let mut rows = vec![vec![self.domain().zero(); n]; n];
        let one = self.domain().one();
        for (j, m) in self.basis.monomials().iter().enumerate() {
            let col = self.coords(&g.mul_term(m, &one));
            for (i, c) in col.into_iter().enumerate() {
                rows[i][j] = c;
            }
        }
        rows
    }

    /// Representatives of `{p : p·g ∈ I}` modulo `I`.
    pub fn multiplication_kernel(&self, g: &Polynomial) -> Vec<Polynomial> {
        let m = self.multiplication_matrix(g);
        linalg::nullspace(&m, self.dimension(), self.domain())
            .iter()
            .map(|v| self.element(v))
            .collect()
    }

    /// `w` with `u·w ≡ 1 mod I`, by a linear solve.
    pub fn unit_inverse(&self, u: &Polynomial) -> Result<Polynomial> {
        if self.dimension() == 0 {
            return Ok(Polynomial::zero(self.ring()));
        }
        let m = self.multiplication_matrix(u);
        let e = self.coords(&Polynomial::one(self.ring()));
        let w = linalg::solve(&m, &e, self.domain())
            .ok_or_else(|| Error::InternalInvariant(format!("{u} is not invertible modulo the ideal")))?;
        Ok(self.element(&w))
    }

    /// Coordinates of a local-ring fraction: numerator times the inverse of
    /// its denominator.
    pub fn fraction_coords(&self, a: &LocalFraction) -> Result<Row> {
        if a.denominator().is_constant() {
            let c = a.denominator().constant_term().inv()?;
            return Ok(self.coords(&a.numerator().scale(&c)));
        }
        let w = self.unit_inverse(a.denominator())?;
        Ok(self.coords(&a.numerator().mul(&w)))
    }
}

/// A hypersurface germ with an isolated singularity at the origin and the
/// quotient algebras attached to it, computed on demand.
#[derive(Debug)]
pub struct Germ {
    f: Polynomial,
    partials: Vec<Polynomial>,
    milnor: OnceCell<QuotientAlgebra>,
    tjurina: OnceCell<QuotientAlgebra>,
    polar: OnceCell<QuotientAlgebra>,
    mu_hyperplane: OnceCell<usize>,
    polar_lift: OnceCell<LiftingBasis>,
    jacobi_lift: OnceCell<LiftingBasis>,
}

fn cached<T>(cell: &OnceCell<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}

impl Germ {
    /// Rejects germs that do not vanish at the origin or are smooth there.
    pub fn new(f: Polynomial) -> Result<Self> {
        if f.ring().nvars() < 2 {
            return Err(Error::Precondition("at least two variables are required".into()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::NonSingular("f does not vanish at the origin".into()));
        }
        let partials = jacobian(&f);
        if let Some(i) = partials.iter().position(|p| !p.constant_term().is_zero()) {
            return Err(Error::NonSingular(format!(
                "∂f/∂{} does not vanish at the origin",
                f.ring().names()[i]
            )));
        }
        Ok(Self {
            f,
            partials,
            milnor: OnceCell::new(),
            tjurina: OnceCell::new(),
            polar: OnceCell::new(),
            mu_hyperplane: OnceCell::new(),
            polar_lift: OnceCell::new(),
            jacobi_lift: OnceCell::new(),
        })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.f.ring()
    }

    pub fn partials(&self) -> &[Polynomial] {
        &self.partials
    }

    pub fn distinguished(&self) -> usize {
        self.ring().distinguished()
    }

    /// `∂f/∂x₁` for the distinguished variable.
    pub fn polar_partial(&self) -> &Polynomial {
        &self.partials[self.distinguished()]
    }

    /// `(f, ∂f/∂xᵢ for i ≠ distinguished)`.
    pub fn polar_generators(&self) -> Vec<Polynomial> {
        let d = self.distinguished();
        let mut gens = vec![self.f.clone()];
        gens.extend(
            self.partials
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != d)
                .map(|(_, p)| p.clone()),
        );
        gens
    }

    /// `(f, ∂f/∂x₁, …, ∂f/∂xₙ)`.
    pub fn tjurina_generators(&self) -> Vec<Polynomial> {
        let mut gens = vec![self.f.clone()];
        gens.extend(self.partials.iter().cloned());
        gens
    }

    /// `𝒪/J`; fails with a non-isolated error when infinite-dimensional.
    pub fn milnor_algebra(&self) -> Result<&QuotientAlgebra> {
        cached(&self.milnor, || QuotientAlgebra::from_generators(&self.partials))
    }

    pub fn tjurina_algebra(&self) -> Result<&QuotientAlgebra> {
        cached(&self.tjurina, || {
            QuotientAlgebra::from_generators(&self.tjurina_generators())
        })
    }

    /// `𝒪/(f, ∂₂f, …, ∂ₙf)`; a non-generic-coordinate error when this is
    /// not finite-dimensional.
    pub fn polar_algebra(&self) -> Result<&QuotientAlgebra> {
        self.milnor_algebra()?;
        cached(&self.polar, || {
            QuotientAlgebra::from_generators(&self.polar_generators()).map_err(|e| match e {
                Error::NonIsolated(_) => Error::NonGenericCoordinate(format!(
                    "(f, ∂f/∂xᵢ for i ≠ {}) is not zero-dimensional; try another first variable",
                    self.ring().names()[self.distinguished()]
                )),
                e => e,
            })
        })
    }

    /// Standard basis of the polar ideal with transforms back to
    /// [`Germ::polar_generators`].
    pub fn polar_lifting(&self) -> Result<&LiftingBasis> {
        self.polar_algebra()?;
        cached(&self.polar_lift, || lifting_basis(&self.polar_generators()))
    }

    /// Same for the Jacobi ideal and [`Germ::partials`].
    pub fn jacobi_lifting(&self) -> Result<&LiftingBasis> {
        cached(&self.jacobi_lift, || lifting_basis(&self.partials))
    }

    pub fn mu(&self) -> Result<usize> {
        Ok(self.milnor_algebra()?.dimension())
    }

    pub fn tau(&self) -> Result<usize> {
        Ok(self.tjurina_algebra()?.dimension())
    }

    pub fn mu_hyperplane(&self) -> Result<usize> {
        cached(&self.mu_hyperplane, || super::hyperplane_milnor(&self.f)).copied()
    }

    /// Saito's criterion: `f ∈ J`.
    pub fn is_quasi_homogeneous(&self) -> Result<bool> {
        Ok(self.milnor_algebra()?.contains(&self.f))
    }
}
