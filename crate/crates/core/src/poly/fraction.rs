use std::fmt;
use std::sync::Arc;

use crate::coeffield::{FieldElement, Rational};
use crate::error::{Error, Result};

use super::{Polynomial, Ring};

/// Element `num / den` of the local ring with `den(0) ≠ 0`.
///
/// No multivariate gcd is taken, so the representation is not unique;
/// compare with [`LocalFraction::value_eq`].
#[derive(Clone, Debug)]
pub struct LocalFraction {
    num: Polynomial,
    den: Polynomial,
}

impl LocalFraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if !den.is_unit() {
            return Err(Error::InternalInvariant(format!(
                "denominator {den} is not a unit of the local ring"
            )));
        }
        let mut f = Self { num, den };
        f.tidy();
        Ok(f)
    }

    /// Makes the denominator's constant term 1 and collapses zero to `0/1`.
    fn tidy(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.den.ring());
            return;
        }
        let c = self.den.constant_term();
        if !c.is_one() {
            let inv = c.inv().expect("unit");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.ring());
        Self { num: p, den }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::from_poly(Polynomial::zero(ring))
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::from_poly(Polynomial::one(ring))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.num.ring()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = if self.den == other.den {
            Self {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            }
        } else {
            Self {
                num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
                den: self.den.mul(&other.den),
            }
        };
        out.tidy();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            num: self.num.mul(&other.num),
            den: if other.den.is_one() {
                self.den.clone()
            } else if self.den.is_one() {
                other.den.clone()
            } else {
                self.den.mul(&other.den)
            },
        };
        out.tidy();
        out
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut out = Self {
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        out.tidy();
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        out.tidy();
        out
    }

    /// Division by a unit of the local ring.
    pub fn div_unit(&self, u: &Polynomial) -> Result<Self> {
        Self::new(self.num.clone(), self.den.mul(u))
    }

    /// Exact value equality by cross-multiplication.
    pub fn value_eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Quotient rule: ∂(p/u) = (u·∂p − p·∂u)/u².
    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_constant() {
            return Self {
                num: self.num.derivative(i),
                den: self.den.clone(),
            };
        }
        let num = self
            .den
            .mul(&self.num.derivative(i))
            .sub(&self.num.mul(&self.den.derivative(i)));
        let mut out = Self {
            num,
            den: self.den.mul(&self.den),
        };
        out.tidy();
        out
    }

    /// Power-series expansion truncated at weighted degree `bound`.
    pub fn series(&self, bound: u32) -> Polynomial {
        self.num
            .truncate(bound)
            .mul(&unit_inverse_series(&self.den, bound))
            .truncate(bound)
    }

    /// Errors when the denominator stops being a unit at `value`.
    pub fn specialize(&self, value: &Rational, target: &Arc<Ring>) -> Result<Self> {
        let den = self.den.specialize(value, target)?;
        if !den.is_unit() {
            return Err(Error::Specialization {
                value: crate::coeffield::render_rational(value),
                detail: format!("denominator {} is not a unit there", self.den),
            });
        }
        Self::new(self.num.specialize(value, target)?, den)
    }

    /// `num` alone when the denominator is 1, otherwise `(num)/(den)`.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            return self.num.render();
        }
        format!("({})/({})", self.num.render(), self.den.render())
    }
}

/// Truncated power-series inverse of a unit `u`: writing `u = c(1 − h)` with
/// `h(0) = 0`, returns `c⁻¹ Σ hᵏ` up to weighted degree `bound`.
pub(crate) fn unit_inverse_series(u: &Polynomial, bound: u32) -> Polynomial {
    let ring = u.ring();
    let c = u.constant_term();
    let cinv = c.inv().expect("unit");
    let h = Polynomial::one(ring).sub(&u.scale(&cinv)).truncate(bound);
    let mut acc = Polynomial::one(ring);
    let mut power = Polynomial::one(ring);
    if !h.is_zero() {
        // every term of h has weighted degree ≥ 1
        for _ in 0..bound {
            power = power.mul(&h).truncate(bound);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
    }
    acc.scale(&cinv)
}

impl PartialEq for LocalFraction {
    fn eq(&self, other: &Self) -> bool {
        self.value_eq(other)
    }
}

impl fmt::Display for LocalFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
