#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use logres::cli::{parse_problem_file, ProblemSpec};
use logres::coeffield::FieldElement;
use logres::gaussmanin::{brieskorn_entry, connection_report, divergence, integral_dependence_f2};
use logres::localstd::{ideal_membership, ideal_quotient, mora_divide, spoly, standard_basis, Germ};
use logres::logvf::{
    class_rank, coefficient_candidates_jacobi, is_trivial, jacobi_quotient, lift_jacobi, logvf_basis,
    polar_data, Method, VectorField,
};
use logres::poly::{parse_polynomial, LocalFraction, Polynomial, Ring, VariableSet, WeightVector};
use logres::residues::{
    independence_bound, interior_product, rank_modulo_trivial, regular_meromorphic_basis, torsion_basis, Form,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const FIXTURES: [&str; 6] = [
    "cusp",
    "node",
    "scherk",
    "e12",
    "u12_homogeneous",
    "u12_parametric",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.txt"))
}

pub fn fixture(name: &str) -> ProblemSpec {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_problem_file(&text).unwrap()
}

pub fn fixture_germ(name: &str) -> Germ {
    Germ::new(fixture(name).f).unwrap()
}

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

pub fn sorted(v: &[Polynomial]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(Polynomial::render).collect();
    s.sort();
    s
}

/// Field with the given numerators over `den`; the cofactor comes from
/// dividing `v(f)` by `f`. `None` when the field is not logarithmic.
pub fn field(r: &Arc<Ring>, f: &Polynomial, nums: &[&str], den: &str) -> Option<VectorField> {
    let den = p(r, den);
    let nums = ps(r, nums);
    let vf = nums.iter().enumerate().fold(Polynomial::zero(r), |acc, (i, a)| {
        acc.add(&a.mul(&f.derivative(i)))
    });
    let d = mora_divide(&vf, std::slice::from_ref(f));
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

pub fn scaled(v: &VectorField, k: i64) -> VectorField {
    let k = v.ring().domain().from_int(k);
    VectorField::new(
        v.coefficients().iter().map(|a| a.scale(&k)).collect(),
        v.cofactor().scale(&k),
    )
}

/// Named boolean outcome of one check.
pub struct Check {
    pub name: String,
    pub ok: bool,
}

pub fn check(name: impl Into<String>, ok: bool) -> Check {
    Check {
        name: name.into(),
        ok,
    }
}

/// Runs `f`, turning a panic or error into a failed check.
pub fn guarded(name: &str, f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            vec![check(format!("{name} ran to completion ({msg})"), false)]
        }
    }
}

/// `x^a + y^b` plus up to three terms strictly above its Newton boundary,
/// so the germ is semi-quasi-homogeneous with an isolated singularity.
/// Terms stay in a thin band above the boundary: higher ones bring in
/// critical points away from the origin, which make exact local division
/// very expensive.
pub fn small_germ_text() -> impl Strategy<Value = String> {
    (2u32..6, 2u32..6).prop_flat_map(|(a, b)| {
        let band: Vec<(u32, u32)> = (0..=a + 1)
            .flat_map(|i| (0..=b + 1).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let w = i * b + j * a;
                w > a * b && w <= a * b + a.max(b)
            })
            .collect();
        let coefficient = prop_oneof![-3i32..=-1, 1i32..=3];
        let terms = prop::collection::vec((coefficient, prop::sample::select(band)), 0..3);
        terms.prop_map(move |terms| {
            let mut s = format!("x^{a}+y^{b}");
            for (c, (i, j)) in terms {
                s.push_str(&format!("+({c})*x^{i}*y^{j}"));
            }
            s
        })
    })
}

/// Germ in `x, y` with an isolated singularity, small Milnor number and a
/// generic hyperplane.
pub fn usable_germ(text: &str) -> Option<Germ> {
    let r = ring(&["x", "y"], None, false);
    let g = Germ::new(p(&r, text)).ok()?;
    let mu = g.mu().ok()?;
    (mu <= 12 && g.mu_hyperplane().is_ok()).then_some(g)
}

/// `count` isolated germs drawn with a fixed seed.
pub fn random_germs(count: usize) -> Vec<(String, Germ)> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7u8; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let strategy = small_germ_text();
    let mut out: Vec<(String, Germ)> = Vec::new();
    while out.len() < count {
        let text = strategy.new_tree(&mut runner).unwrap().current();
        if out.iter().any(|(t, _)| *t == text) {
            continue;
        }
        if let Some(g) = usable_germ(&text) {
            out.push((text, g));
        }
    }
    out
}

fn add_rows(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Every invariant the library promises for one germ.
pub fn invariant_checks(label: &str, g: &Germ) -> Vec<Check> {
    let mut out = Vec::new();
    let f = g.f();
    let r = g.ring();
    let c = |name: &str, ok: bool| check(format!("{label}: {name}"), ok);
    let mu = g.mu().unwrap();
    let tau = g.tau().unwrap();
    let mu_h = g.mu_hyperplane().unwrap();

    // division u·p = Σ qᵢ·gᵢ + r
    let probe = f.mul(f).add(&p(r, "x^3*y+2*y^4-x*y"));
    let d = mora_divide(&probe, g.partials());
    out.push(c("division identity", d.verify(&probe, g.partials())));

    // s-polynomials of a standard basis reduce to zero
    let sb = standard_basis(g.partials()).unwrap();
    let gens = sb.generators();
    let mut spolys_ok = true;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            spolys_ok &= mora_divide(&spoly(&gens[i], &gens[j]), gens).remainder.is_zero();
        }
    }
    out.push(c("s-polynomials reduce to zero", spolys_ok));

    // quotient generators come with membership certificates
    let polar = g.polar_generators();
    let cert = |s: &Polynomial, by: &Polynomial, gens: &[Polynomial]| {
        let prod = s.mul(by);
        let m = ideal_membership(&prod, gens).unwrap();
        m.member && m.certificate.verify(&prod, gens)
    };
    let pq = ideal_quotient(&polar, g.polar_partial()).unwrap();
    let jq = jacobi_quotient(g).unwrap();
    out.push(c(
        "quotient generator certificates",
        pq.generators().iter().all(|s| cert(s, g.polar_partial(), &polar))
            && jq.generators().iter().all(|s| cert(s, f, g.partials())),
    ));

    let data = polar_data(g).unwrap();
    out.push(c(
        "Le-Teissier dim H_Gamma = mu + mu|H",
        data.gamma.dimension() == mu + mu_h && g.polar_algebra().unwrap().dimension() == mu + mu_h,
    ));
    out.push(c("dim W_T = tau", data.kernel.dimension() == tau));
    out.push(c(
        "dim H_Delta = mu - tau + mu|H",
        data.delta.dimension() + tau == mu + mu_h,
    ));

    out.push(c("mu >= tau", mu >= tau));
    let is_member = ideal_membership(f, g.partials()).unwrap().member;
    out.push(c("mu = tau iff f in J", (mu == tau) == is_member));
    out.push(c(
        "quasi-homogeneity flag",
        g.is_quasi_homogeneous().unwrap() == is_member,
    ));

    let vol = Form::volume(r);
    let df = Form::differential(f);
    let bound = independence_bound(g).unwrap();
    let mut all_fields = Vec::new();
    for m in [Method::Polar, Method::Jacobi] {
        let basis = logvf_basis(g, m).unwrap();
        all_fields.extend(basis.fields.iter().cloned());
        out.push(c(
            &format!("no basis field is trivial ({})", m.name()),
            basis.fields.iter().all(|v| !is_trivial(v, g).unwrap()),
        ));
        if is_member {
            // an Euler-type field: v(f) = b f with b(0) != 0
            out.push(c(
                &format!("Euler-type field present ({})", m.name()),
                basis.fields.iter().any(|v| {
                    let b = v.cofactor();
                    !b.numerator().constant_term().is_zero()
                }),
            ));
        }
        let torsion: Vec<Form> = torsion_basis(&basis)
            .into_iter()
            .map(|t| t.representative)
            .collect();
        out.push(c(
            &format!("torsion classes independent ({})", m.name()),
            rank_modulo_trivial(g, &torsion, bound) == tau,
        ));
        out.push(c(
            &format!("|basis| = tau ({})", m.name()),
            basis.fields.len() == tau,
        ));
        out.push(c(
            &format!("basis classes independent ({})", m.name()),
            class_rank(&basis.fields, g).unwrap() == tau,
        ));
        out.push(c(
            &format!("v(f) = b f ({})", m.name()),
            basis.fields.iter().all(|v| v.is_logarithmic_for(f)),
        ));
        out.push(c(
            &format!("df^i_v(w) = v(f) w ({})", m.name()),
            basis
                .fields
                .iter()
                .all(|v| df.wedge(&interior_product(v)).value_eq(&vol.mul(&v.apply(f)))),
        ));
        let reps = regular_meromorphic_basis(g, m).unwrap();
        out.push(c(
            &format!("g beta = df^xi + f eta ({})", m.name()),
            reps.len() == tau && reps.iter().all(|rep| rep.verify(f)),
        ));
    }

    out.push(c(
        "both methods span the same classes",
        class_rank(&all_fields, g).unwrap() == tau,
    ));

    out.push(c(
        "integral relation for f^2",
        integral_dependence_f2(g).unwrap().verify(f),
    ));
    out.push(c(
        "tau Brieskorn entries",
        connection_report(g).unwrap().entries.len() == tau,
    ));

    // D∘f = f∘D + 1 on f·b·ω: D(f²bω) ≡ f·D(fbω) + f·b·ω mod J, with the
    // left side taken from an independent lift of f·b
    let alg = g.milnor_algebra().unwrap();
    let mut coherent = true;
    for b in coefficient_candidates_jacobi(g).unwrap() {
        let e = brieskorn_entry(&b, g).unwrap();
        let fb = f.mul(&b);
        let w = lift_jacobi(&fb, g).unwrap();
        let lhs = alg.fraction_coords(&divergence(&w)).unwrap();
        let rhs = alg
            .fraction_coords(&e.divergence.mul_poly(f).add(&LocalFraction::from_poly(fb)))
            .unwrap();
        coherent &= lhs == rhs;
        // and D(fbω) = fD(bω) + bω in coordinates
        let fd = logres::gaussmanin::fd_action(&b, g).unwrap();
        coherent &= add_rows(&fd, &alg.coords(&b)) == e.reduced;
    }
    out.push(c("Df = fD + 1", coherent));
    out
}
