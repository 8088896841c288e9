//! Exact scalars: rationals, and rational functions in a single deformation
//! parameter `t`.
//!
//! Only one parameter is supported. Parametric computations treat `t` as
//! transcendental; every parameter polynomial that gets inverted along the way
//! is recorded in a per-thread [`locus`] so callers can report the values of
//! `t` at which a result may not specialise.

mod ratfun;
mod upoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use ratfun::RationalFunction;
pub(crate) use upoly::render_rational;
pub use upoly::{int, UPoly};

/// Arbitrary precision rational number, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n/d`, rejecting a zero denominator.
pub fn rational(n: i64, d: i64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::MalformedScalar(format!("{n}/0")));
    }
    Ok(Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// Parses `p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::MalformedScalar(format!("not a rational number: {text:?}"));
    let (n, d) = match text.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::MalformedScalar(format!("{text}: zero denominator")));
    }
    Ok(Rational::new(n, d))
}

/// Which coefficient field a computation lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Domain {
    Rational,
    Function,
}

impl Domain {
    pub fn zero(self) -> FieldElement {
        self.from_rational(Rational::zero())
    }

    pub fn one(self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_int(self, n: i64) -> FieldElement {
        self.from_rational(int(n))
    }

    pub fn from_rational(self, c: Rational) -> FieldElement {
        match self {
            Domain::Rational => FieldElement::Rational(c),
            Domain::Function => FieldElement::Function(RationalFunction::from_rational(c)),
        }
    }
}

/// Binary field operation selector for [`arith`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// A coefficient: either a rational number or a rational function of `t`.
///
/// Values are kept canonical, so structural equality is value equality.
/// The operator impls promote a rational operand when the kinds differ;
/// [`arith`] is the strict variant that rejects mixed kinds.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElement {
    Rational(Rational),
    Function(RationalFunction),
}

impl FieldElement {
    pub fn domain(&self) -> Domain {
        match self {
            FieldElement::Rational(_) => Domain::Rational,
            FieldElement::Function(_) => Domain::Function,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Function(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Function(r) => r.is_one(),
        }
    }

    /// The rational value, if the element does not depend on `t`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            FieldElement::Rational(r) => Some(r.clone()),
            FieldElement::Function(r) => r.as_constant(),
        }
    }

    fn to_function(&self) -> RationalFunction {
        match self {
            FieldElement::Rational(r) => RationalFunction::from_rational(r.clone()),
            FieldElement::Function(r) => r.clone(),
        }
    }

    pub fn scale_int(&self, k: i64) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(r * BigInt::from(k)),
            FieldElement::Function(r) => FieldElement::Function(r.scale(&int(k))),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        match self {
            FieldElement::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            FieldElement::Rational(r) => Ok(FieldElement::Rational(r.recip())),
            FieldElement::Function(r) => Ok(FieldElement::Function(r.inv()?)),
        }
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inv()?)
    }

    /// Re-establishes the canonical form. Values built through this module
    /// are already canonical, so this is idempotent.
    pub fn normalize(&self) -> Result<FieldElement> {
        match self {
            FieldElement::Rational(r) => Ok(FieldElement::Rational(r.clone())),
            FieldElement::Function(r) => Ok(FieldElement::Function(RationalFunction::new(
                r.numerator().clone(),
                r.denominator().clone(),
            )?)),
        }
    }

    /// Evaluates the parameter at `value`; rationals pass through unchanged.
    pub fn substitute_parameter(&self, value: &Rational) -> Result<Rational> {
        match self {
            FieldElement::Rational(r) => Ok(r.clone()),
            FieldElement::Function(r) => r.eval(value),
        }
    }

    /// True for a negative rational or a function whose leading numerator
    /// coefficient is negative; used for sign-aware rendering.
    pub fn looks_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Function(r) => r.numerator().leading_coeff().is_negative(),
        }
    }

    /// Renders in the polynomial input grammar.
    pub fn render(&self, symbol: &str) -> String {
        match self {
            FieldElement::Rational(r) => upoly::render_rational(r),
            FieldElement::Function(r) => r.render(symbol),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Strict field arithmetic: both operands must be of the same kind.
pub fn arith(a: &FieldElement, b: &FieldElement, op: Op) -> Result<FieldElement> {
    if a.domain() != b.domain() {
        return Err(Error::TypeMismatch(format!(
            "{:?} combined with {:?}",
            a.domain(),
            b.domain()
        )));
    }
    match op {
        Op::Add => Ok(a + b),
        Op::Sub => Ok(a - b),
        Op::Mul => Ok(a * b),
        Op::Div => a.checked_div(b),
    }
}

/// Evaluates a parametric element at `t = value`.
pub fn substitute_parameter(e: &FieldElement, value: &Rational) -> Result<Rational> {
    match e {
        FieldElement::Rational(_) => Err(Error::TypeMismatch(
            "substitution needs a parametric element".into(),
        )),
        FieldElement::Function(r) => r.eval(value),
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $fun:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match (self, rhs) {
                    (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                        FieldElement::Rational($rat(a, b))
                    }
                    _ => FieldElement::Function($fun(&self.to_function(), &rhs.to_function())),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &Rational, b: &Rational| a + b,
    RationalFunction::add
);
binop!(
    Sub,
    sub,
    |a: &Rational, b: &Rational| a - b,
    RationalFunction::sub
);
binop!(
    Mul,
    mul,
    |a: &Rational, b: &Rational| a * b,
    RationalFunction::mul
);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero, like the rational operator it wraps.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("field division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Function(r) => FieldElement::Function(r.neg()),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Parameter polynomials inverted during a computation on this thread.
pub mod locus {
    use std::cell::RefCell;
    use std::collections::BTreeSet;

    use super::UPoly;

    thread_local! {
        static SEEN: RefCell<BTreeSet<UPoly>> = const { RefCell::new(BTreeSet::new()) };
    }

    pub(crate) fn record(p: &UPoly) {
        SEEN.with(|s| {
            s.borrow_mut().insert(p.monic());
        });
    }

    /// Forgets everything recorded so far on this thread.
    pub fn clear() {
        SEEN.with(|s| s.borrow_mut().clear());
    }

    /// Returns and clears the recorded polynomials, sorted.
    pub fn take() -> Vec<UPoly> {
        SEEN.with(|s| std::mem::take(&mut *s.borrow_mut()).into_iter().collect())
    }
}
