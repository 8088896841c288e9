//! Shared helpers for unit tests.

use std::sync::Arc;

use crate::poly::{parse_polynomial, LocalFraction, Polynomial, Ring, VariableSet, WeightVector};

pub fn ring(names: &[&str], weights: Option<&[u32]>, param: bool) -> Arc<Ring> {
    Ring::new(
        VariableSet::from_names(names).unwrap(),
        weights.map(|w| WeightVector::new(w.to_vec()).unwrap()),
        param.then(|| "t".to_string()),
    )
    .unwrap()
}

pub fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

pub fn ps(r: &Arc<Ring>, xs: &[&str]) -> Vec<Polynomial> {
    xs.iter().map(|s| p(r, s)).collect()
}

pub fn cusp() -> Arc<Ring> {
    ring(&["x", "y"], None, false)
}

pub fn u12(param: bool) -> Arc<Ring> {
    ring(&["z", "x", "y"], Some(&[3, 4, 4]), param)
}

/// Vector field with the given numerators over `den`; the cofactor is found
/// by dividing `v(f)` by `f`, and `None` is returned when `v` is not
/// logarithmic.
pub fn field(r: &Arc<Ring>, f: &Polynomial, nums: &[&str], den: &str) -> Option<crate::logvf::VectorField> {
    use crate::logvf::VectorField;
    let den = p(r, den);
    let nums: Vec<Polynomial> = ps(r, nums);
    let vf = nums.iter().enumerate().fold(Polynomial::zero(r), |acc, (i, a)| {
        acc.add(&a.mul(&f.derivative(i)))
    });
    let d = crate::localstd::mora_divide(&vf, std::slice::from_ref(f));
    if !d.remainder.is_zero() {
        return None;
    }
    let coefficients = nums
        .into_iter()
        .map(|a| LocalFraction::new(a, den.clone()).unwrap())
        .collect();
    let cofactor = LocalFraction::new(d.quotients[0].clone(), den.mul(&d.unit)).unwrap();
    let v = VectorField::new(coefficients, cofactor);
    v.is_logarithmic_for(f).then_some(v)
}
