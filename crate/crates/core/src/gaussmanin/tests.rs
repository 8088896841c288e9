use std::sync::Arc;

use super::*;
use crate::coeffield::FieldElement;
use crate::poly::Ring;
use crate::testutil::{cusp, field, p, ring, u12};

const SCHERK: &str = "x^5+x^2*y^2+y^5";
const E12: &str = "x^3+y^7+t*x*y^6";

fn germ(r: &Arc<Ring>, f: &str) -> Germ {
    Germ::new(p(r, f)).unwrap()
}

fn coords(g: &Germ, s: &str) -> Row {
    g.milnor_algebra().unwrap().coords(&p(g.ring(), s))
}

fn constant(g: &Germ, q: &str) -> Row {
    coords(g, q)
}

/// `D(Σ hₖ·∂ₖf·ω) = Σ ∂ₖhₖ`, with `hₖ` read off a membership certificate
/// of the numerator.
fn d_of_jacobian_multiple(g: &LocalFraction, germ: &Germ) -> Option<LocalFraction> {
    let m = ideal_membership(g.numerator(), germ.partials()).unwrap();
    if !m.member {
        return None;
    }
    let den = m.certificate.unit.mul(g.denominator());
    let ring = germ.ring();
    Some(
        m.certificate
            .quotients
            .iter()
            .enumerate()
            .fold(LocalFraction::zero(ring), |acc, (k, q)| {
                acc.add(&LocalFraction::new(q.clone(), den.clone()).unwrap().derivative(k))
            }),
    )
}

/// `D²(f²ω)` by two applications of the Brieskorn formula: first through
/// the field with `w(f) = f·f`, then through a certificate of `div w ∈ J`.
fn d2_by_fields(germ: &Germ) -> Option<Row> {
    let w = lift_jacobi(germ.f(), germ).unwrap();
    let first = divergence(&w);
    let second = d_of_jacobian_multiple(&first, germ)?;
    Some(germ.milnor_algebra().unwrap().fraction_coords(&second).unwrap())
}

fn printed_relation(r: &Arc<Ring>) -> IntegralRelation {
    IntegralRelation {
        unit_factor: p(r, "25*(4-25*x*y)"),
        linear_coeffs: vec![p(r, "10*x"), p(r, "10*y")],
        quadratic_coeffs: [
            ((0, 0), p(r, "2*x^2-25*x^3*y-10*y^3")),
            ((0, 1), p(r, "11*x*y-50*x^2*y^2")),
            ((1, 1), p(r, "2*y^2-25*x*y^3-10*x^3")),
        ]
        .into_iter()
        .collect(),
    }
}

#[test]
fn divergence_examples() {
    let r = cusp();
    let euler = VectorField::over(vec![p(&r, "3*x"), p(&r, "2*y")], p(&r, "6"), &p(&r, "6")).unwrap();
    assert!(divergence(&euler).value_eq(&LocalFraction::from_poly(p(&r, "5/6"))));
    let ye = euler.mul_poly(&p(&r, "y"));
    assert!(divergence(&ye).value_eq(&LocalFraction::from_poly(p(&r, "7/6*y"))));
    let constant = VectorField::over(vec![p(&r, "2"), p(&r, "-3")], p(&r, "0"), &p(&r, "1")).unwrap();
    assert!(divergence(&constant).is_zero());
    // quotient rule
    let v = VectorField::over(vec![p(&r, "x"), p(&r, "0")], p(&r, "0"), &p(&r, "1+x")).unwrap();
    let expected = LocalFraction::new(p(&r, "1"), p(&r, "1+2*x+x^2")).unwrap();
    assert!(divergence(&v).value_eq(&expected));
}

#[test]
fn cusp_entries() {
    let r = cusp();
    let g = germ(&r, "x^2-y^3");
    assert_eq!(
        brieskorn_entry(&p(&r, "1"), &g).unwrap().reduced,
        coords(&g, "5/6")
    );
    assert_eq!(
        brieskorn_entry(&p(&r, "y"), &g).unwrap().reduced,
        coords(&g, "7/6*y")
    );
    assert_eq!(fd_action(&p(&r, "1"), &g).unwrap(), coords(&g, "-1/6"));
    assert_eq!(fd_action(&p(&r, "y"), &g).unwrap(), coords(&g, "1/6*y"));
    let rep = connection_report(&g).unwrap();
    assert_eq!((rep.mu, rep.tau, rep.entries.len()), (2, 2, 2));
    assert!(rep.saturation.is_none());
    assert_eq!(render_coords(&rep.entries[0].reduced, &g).unwrap(), "5/6");
}

#[test]
fn operator_identity() {
    let r = cusp();
    let g = germ(&r, SCHERK);
    let alg = g.milnor_algebra().unwrap();
    for b in coefficient_candidates_jacobi(&g).unwrap() {
        let e = brieskorn_entry(&b, &g).unwrap();
        let fd = fd_action(&b, &g).unwrap();
        let own = alg.coords(&b);
        let back: Row = fd.iter().zip(&own).map(|(a, c)| a + c).collect();
        assert_eq!(back, e.reduced);
    }
}

#[test]
fn fd_vanishes_when_d_acts_as_identity() {
    // a field with v(f) = b·f and divergence b gives fD(bω) = 0
    let r = cusp();
    let g = germ(&r, "x^2-y^3");
    let v = VectorField::over(vec![p(&r, "3*x"), p(&r, "2*y")], p(&r, "6"), &p(&r, "6")).unwrap();
    let w = VectorField::over(vec![p(&r, "0"), p(&r, "0")], p(&r, "0"), &p(&r, "1")).unwrap();
    let e = entry_from_field(&p(&r, "1"), v.clone(), &g).unwrap();
    assert_eq!(e.reduced, constant(&g, "5/6"));
    assert!(entry_from_field(&p(&r, "1"), w, &g).is_err());
}

#[test]
fn scherk_entries() {
    let r = cusp();
    let g = germ(&r, SCHERK);
    let ex = brieskorn_entry(&p(&r, "x"), &g).unwrap();
    assert_eq!(ex.reduced, coords(&g, "7/10*x-75/16*y^4"));
    let ey = brieskorn_entry(&p(&r, "y"), &g).unwrap();
    assert_eq!(ey.reduced, coords(&g, "7/10*y-75/16*x^4"));
    // the printed fields give the same values
    let vx = field(
        &r,
        g.f(),
        &["4*x^2-25*x^3*y-5*y^3", "6*x*y-25*x^2*y^2"],
        "5*(4-25*x*y)",
    )
    .unwrap();
    assert_eq!(entry_from_field(&p(&r, "x"), vx, &g).unwrap().reduced, ex.reduced);
    let vy = field(
        &r,
        g.f(),
        &["6*x*y-25*x^2*y^2", "4*y^2-25*x*y^3-5*x^3"],
        "5*(4-25*x*y)",
    )
    .unwrap();
    assert_eq!(entry_from_field(&p(&r, "y"), vy, &g).unwrap().reduced, ey.reduced);
}

#[test]
fn f0_weighted_degree_formula() {
    let r = u12(false);
    let g = germ(&r, "x^3+y^3+z^4");
    assert_eq!(
        brieskorn_entry(&p(&r, "1"), &g).unwrap().reduced,
        constant(&g, "11/12")
    );
    let r2 = ring(&["x", "y"], Some(&[3, 2]), false);
    let g2 = germ(&r2, "x^2-y^3");
    assert_eq!(
        brieskorn_entry(&p(&r2, "1"), &g2).unwrap().reduced,
        constant(&g2, "5/6")
    );
}

#[test]
fn monomial_multiples_of_euler_field() {
    for (r, f, nums) in [
        (cusp(), "x^2-y^3", ["3*x", "2*y"]),
        (u12(false), "x^3+y^3+z^4", ["3*z", "4*x"]),
    ] {
        let g = germ(&r, f);
        let n = r.nvars();
        let mut all = nums.to_vec();
        if n == 3 {
            all.push("4*y");
        }
        let euler = field(&r, g.f(), &all, "1").unwrap();
        let scale = euler.cofactor().numerator().constant_term();
        let alg = g.milnor_algebra().unwrap();
        for m in alg.basis().monomials() {
            let b = crate::poly::Polynomial::monomial(&r, m.clone()).scale(&scale);
            let direct = brieskorn_entry(&b, &g).unwrap();
            let via = entry_from_field(
                &b,
                euler.mul_poly(&crate::poly::Polynomial::monomial(&r, m.clone())),
                &g,
            )
            .unwrap();
            assert_eq!(direct.reduced, via.reduced, "{f} {}", b);
        }
    }
}

#[test]
fn e12_entries_from_the_euler_type_field() {
    let r = ring(&["x", "y"], Some(&[7, 3]), true);
    let g = germ(&r, E12);
    let v = field(
        &r,
        g.f(),
        &["49*x+8*t^2*y^5+12*t^3*x*y^4", "21*y-4*t*x+4*t^3*y^5"],
        "3*(49+12*t^3*y^4)",
    )
    .unwrap();
    let rep = connection_report(&g).unwrap();
    assert_eq!((rep.mu, rep.tau, rep.entries.len()), (12, 12, 12));
    assert!(rep.saturation.is_none());
    for e in &rep.entries {
        let b = &e.witness_b;
        let via = entry_from_field(b, v.mul_poly(b), &g).unwrap();
        assert_eq!(via.reduced, e.reduced, "{b}");
    }
}

#[test]
fn integral_relations() {
    let r = cusp();
    let g = germ(&r, "x^2-y^3");
    let rel = integral_dependence_f2(&g).unwrap();
    assert!(rel.verify(g.f()));
    assert!(rel.quadratic_coeffs.is_empty());

    let g = germ(&r, SCHERK);
    let rel = integral_dependence_f2(&g).unwrap();
    assert!(rel.verify(g.f()));
    assert!(!rel.quadratic_coeffs.is_empty());
    assert!(printed_relation(&r).verify(g.f()));

    let mut broken = printed_relation(&r);
    broken.linear_coeffs[0] = p(&r, "11*x");
    assert!(!broken.verify(g.f()));
    assert!(matches!(
        saturation_step(&broken, &g),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn classical_membership_of_scherk_square() {
    // 25(4−25xy)f² ∈ J with the two printed brackets
    let r = cusp();
    let f = p(&r, SCHERK);
    let lhs = p(&r, "25*(4-25*x*y)").mul(&f).mul(&f);
    let c1 = p(&r, "(20*x-125*x^2*y)")
        .mul(&f)
        .add(&p(&r, "4*x^3*y^2-5*x*y^5-25*x^4*y^3"));
    let c2 = p(&r, "(20*y-125*x*y^2)")
        .mul(&f)
        .add(&p(&r, "6*x^2*y^3-25*x^3*y^4"));
    let rhs = c1.mul(&f.derivative(0)).add(&c2.mul(&f.derivative(1)));
    assert_eq!(lhs, rhs);
}

/// Checks the step against `D(f²ω) = Σ hₖ∂ₖf·ω` expanded directly from the
/// normalised relation.
fn check_step(s: &Saturation, germ: &Germ) {
    let f = germ.f();
    let ring = germ.ring();
    let n = ring.nvars();
    let fx = germ.partials();
    let zero = LocalFraction::zero(ring);
    let q = |i: usize, j: usize| s.quadratic.get(&(i, j)).cloned().unwrap_or_else(|| zero.clone());
    // −Σᵢ ∂ᵢ(αᵢ f + Σ_{j≥i} α_{ij} ∂ⱼf)
    let mut direct = zero.clone();
    for i in 0..n {
        let mut inner = s.linear[i].mul_poly(f);
        for j in i..n {
            inner = inner.add(&q(i, j).mul_poly(&fx[j]));
        }
        direct = direct.sub(&inner.derivative(i));
    }
    let mut via_h = zero.clone();
    let mut d2 = zero.clone();
    for k in 0..n {
        let mut h = s.linear[k].add(&s.residual_certificate[k]);
        for i in 0..=k {
            h = h.add(&q(i, k).derivative(i));
        }
        let h = h.neg();
        via_h = via_h.add(&h.mul_poly(&fx[k]));
        d2 = d2.add(&h.derivative(k));
    }
    assert!(direct.value_eq(&via_h));
    assert!(d2.value_eq(&s.value));
}

#[test]
fn saturation_quasi_homogeneous() {
    for (r, f, expected) in [
        (cusp(), "x^2-y^3", "55/36"),
        (u12(false), "x^3+y^3+z^4", "253/144"),
    ] {
        let g = germ(&r, f);
        let rel = integral_dependence_f2(&g).unwrap();
        let s = saturation_step(&rel, &g).unwrap().expect("R ∈ J");
        check_step(&s, &g);
        assert_eq!(s.reduced, constant(&g, expected), "{f}");
        assert_eq!(d2_by_fields(&g).unwrap(), s.reduced, "{f}");
    }
}

/// `D(f²ω) = D(f·f·ω)` through the field with `w(f) = f·f`.
fn d_f2_by_field(germ: &Germ) -> Row {
    let w = lift_jacobi(germ.f(), germ).unwrap();
    germ.milnor_algebra()
        .unwrap()
        .fraction_coords(&divergence(&w))
        .unwrap()
}

#[test]
fn first_derivative_agrees_across_relations() {
    let r = cusp();
    let g = germ(&r, "x^2-y^3");
    let rel = integral_dependence_f2(&g).unwrap();
    let d = d_of_f_squared(&rel, &g).unwrap();
    assert_eq!(
        g.milnor_algebra().unwrap().fraction_coords(&d).unwrap(),
        d_f2_by_field(&g)
    );
}

#[test]
fn saturation_scherk() {
    let r = cusp();
    let g = germ(&r, SCHERK);
    let rep = connection_report(&g).unwrap();
    assert_eq!((rep.mu, rep.tau, rep.entries.len()), (11, 10, 10));
    let hint = rep.saturation.expect("μ > τ");
    assert!(hint.relation.verify(g.f()));
    // D(f²ω) mod J does not depend on the relation
    let alg = g.milnor_algebra().unwrap();
    let printed = d_of_f_squared(&printed_relation(&r), &g).unwrap();
    assert_eq!(alg.fraction_coords(&printed).unwrap(), hint.d_f_squared);
    assert_eq!(d_f2_by_field(&g), hint.d_f_squared);
    // it is not in J, so the residual term is not either and the step is absent
    assert!(hint.d_f_squared.iter().any(|c: &FieldElement| !c.is_zero()));
    assert!(hint.step.is_none());
    assert!(saturation_step(&printed_relation(&r), &g).unwrap().is_none());
    assert!(d2_by_fields(&g).is_none());
}
