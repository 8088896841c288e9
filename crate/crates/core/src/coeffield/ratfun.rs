//! Rational functions in one deformation parameter.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::upoly::{render_rational, UPoly};
use super::{locus, Rational};
use crate::error::{Error, Result};

/// Reduced quotient `numerator / denominator` of parameter polynomials.
///
/// The denominator is monic and coprime to the numerator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: UPoly,
    den: UPoly,
}

impl RationalFunction {
    /// Builds and reduces `num / den`.
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::MalformedScalar("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading_coeff();
        let inv = Rational::one() / lc;
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(UPoly::one())
    }

    pub fn from_poly(p: UPoly) -> Self {
        Self {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    /// The parameter `t` itself.
    pub fn param() -> Self {
        Self::from_poly(UPoly::param())
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse; records the inverted numerator in the
    /// non-genericity locus when it depends on the parameter.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.num.is_constant() {
            locus::record(&self.num);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Evaluates at `t = value`.
    pub fn eval(&self, value: &Rational) -> Result<Rational> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(Error::Specialization {
                value: render_rational(value),
                detail: format!("denominator {} vanishes", self.den),
            });
        }
        Ok(self.num.eval(value) / d)
    }

    /// Renders in the input grammar; parenthesised unless it is a signed
    /// monomial `c*t^k` so that the result can be juxtaposed with `*`.
    pub fn render(&self, symbol: &str) -> String {
        if self.den.is_one() {
            if let Some(c) = self.num.constant_value() {
                return render_rational(&c);
            }
            if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                return self.num.render(symbol);
            }
            return format!("({})", self.num.render(symbol));
        }
        let num = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && self.num.leading_coeff().is_positive()
        {
            self.num.render(symbol)
        } else {
            format!("({})", self.num.render(symbol))
        };
        format!("{num}/({})", self.den.render(symbol))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}
