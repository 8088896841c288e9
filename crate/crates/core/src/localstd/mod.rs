//! Standard bases in the local ring: Mora division, the tangent cone
//! algorithm, normal forms, membership certificates, ideal quotients and the
//! Milnor and Tjurina numbers.

mod mora;
mod quotient;

use std::sync::Arc;

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring};

pub use mora::{mora_divide, DivisionResult};
pub use quotient::{Germ, QuotientAlgebra, QuotientBasis};

/// A standard basis of an ideal of the local ring.
///
/// Bases returned by [`standard_basis`] are minimal with leading coefficient
/// 1; for zero-dimensional ideals they are also tail-reduced, which makes
/// them canonical.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardBasis {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    /// Every monomial of weighted degree at least this lies in the ideal.
    corner: Option<u32>,
}

impl StandardBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.lm().expect("nonzero").clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(Polynomial::is_unit)
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.corner.is_some()
    }

    /// Weighted-degree bound beyond which every monomial is in the ideal.
    pub fn corner_bound(&self) -> Option<u32> {
        self.corner
    }

    /// True when `m` is divisible by some leading monomial.
    pub fn in_leading_ideal(&self, m: &Monomial) -> bool {
        self.generators
            .iter()
            .any(|g| g.lm().expect("nonzero").divides(m))
    }
}

/// A standard basis together with the expression of each element as a
/// polynomial combination of the original generators.
#[derive(Clone, Debug)]
pub struct LiftingBasis {
    originals: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    transform: Vec<Vec<Polynomial>>,
}

impl LiftingBasis {
    pub fn originals(&self) -> &[Polynomial] {
        &self.originals
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// `transform()[k][j]` is the coefficient of original generator `j` in basis element `k`.
    pub fn transform(&self) -> &[Vec<Polynomial>] {
        &self.transform
    }

    /// Divides `p` by the basis and rewrites the quotients over the
    /// original generators: `unit·p = Σ qⱼ·gⱼ + r`.
    pub fn divide(&self, p: &Polynomial) -> DivisionResult {
        if let Some(d) = mora::divide_within(p, &self.basis) {
            return self.rewrite(d);
        }
        let sb = self.standard_basis();
        if let Some(d) = sb
            .as_ref()
            .and_then(|sb| mora::solve_division(p, &self.originals, sb))
        {
            return d;
        }
        self.rewrite(mora_divide(p, &self.basis))
    }

    fn standard_basis(&self) -> Option<StandardBasis> {
        let ring = self.basis.first()?.ring().clone();
        reduce_basis(&ring, self.basis.clone()).ok()
    }

    fn rewrite(&self, d: DivisionResult) -> DivisionResult {
        let ring = d.unit.ring().clone();
        let mut quotients = vec![Polynomial::zero(&ring); self.originals.len()];
        for (qk, row) in d.quotients.iter().zip(&self.transform) {
            if qk.is_zero() {
                continue;
            }
            for (qj, tkj) in quotients.iter_mut().zip(row) {
                if !tkj.is_zero() {
                    *qj = qj.add(&qk.mul(tkj));
                }
            }
        }
        DivisionResult {
            unit: d.unit,
            quotients,
            remainder: d.remainder,
        }
    }
}

fn check_ring(gens: &[Polynomial]) -> Result<()> {
    if let Some(first) = gens.first() {
        if gens.iter().any(|g| g.ring() != first.ring()) {
            return Err(Error::Precondition("generators live in different rings".into()));
        }
    }
    Ok(())
}

fn spoly_multipliers(f: &Polynomial, g: &Polynomial) -> (Monomial, FieldElement, Monomial, FieldElement) {
    let (mf, cf) = f.lead().expect("nonzero");
    let (mg, cg) = g.lead().expect("nonzero");
    let l = mf.lcm(mg);
    (
        l.div(mf).expect("lcm"),
        cf.inv().expect("nonzero"),
        l.div(mg).expect("lcm"),
        cg.inv().expect("nonzero"),
    )
}

/// s-polynomial `(L/lm f)·f/lc f − (L/lm g)·g/lc g` with `L = lcm`.
pub fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (a, ca, b, cb) = spoly_multipliers(f, g);
    f.mul_term(&a, &ca).sub(&g.mul_term(&b, &cb))
}

/// Mora's tangent cone algorithm. With `track` set the transformation to
/// the input generators is recorded.
fn tangent_cone(gens: &[Polynomial], track: bool) -> Result<LiftingBasis> {
    check_ring(gens)?;
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::Precondition("empty generator list".into())),
    };
    let ord = ring.order().clone();
    let n = gens.len();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut transform: Vec<Vec<Polynomial>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        basis.push(g.clone());
        if track {
            let mut row = vec![Polynomial::zero(&ring); n];
            row[i] = Polynomial::one(&ring);
            transform.push(row);
        }
    }
    if basis.is_empty() {
        return Err(Error::Precondition("all generators are zero".into()));
    }
    // a unit generates the whole ring
    if let Some(k) = basis.iter().position(Polynomial::is_unit) {
        return Ok(LiftingBasis {
            originals: gens.to_vec(),
            basis: vec![basis[k].clone()],
            transform: if track {
                vec![transform[k].clone()]
            } else {
                Vec::new()
            },
        });
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add_pairs = |pairs: &mut Vec<(usize, usize)>, basis: &[Polynomial], k: usize| {
        let lk = basis[k].lm().expect("nonzero");
        for (i, b) in basis.iter().enumerate().take(k) {
            // product criterion
            if !b.lm().expect("nonzero").coprime(lk) {
                pairs.push((i, k));
            }
        }
    };
    for k in 0..basis.len() {
        add_pairs(&mut pairs, &basis, k);
    }
    while !pairs.is_empty() {
        let sel = (0..pairs.len())
            .min_by(|&a, &b| {
                let deg =
                    |(i, j): (usize, usize)| ord.degree(&basis[i].lm().unwrap().lcm(basis[j].lm().unwrap()));
                deg(pairs[a]).cmp(&deg(pairs[b])).then(pairs[a].cmp(&pairs[b]))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(sel);
        let (a, ca, b, cb) = spoly_multipliers(&basis[i], &basis[j]);
        let s = basis[i].mul_term(&a, &ca).sub(&basis[j].mul_term(&b, &cb));
        let (r, repr) = mora::reduce(&s, &basis, track, None).expect("unbounded");
        if r.is_zero() {
            continue;
        }
        if track {
            let (alpha, beta) = repr.expect("tracked");
            let mut row: Vec<Polynomial> = transform[i]
                .iter()
                .zip(&transform[j])
                .map(|(ti, tj)| ti.mul_term(&a, &ca).sub(&tj.mul_term(&b, &cb)).mul(&alpha))
                .collect();
            for (bk, tk) in beta.iter().zip(&transform) {
                if bk.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(tk) {
                    if !y.is_zero() {
                        *x = x.add(&bk.mul(y));
                    }
                }
            }
            transform.push(row);
        }
        if r.is_unit() {
            let k = basis.len();
            basis.push(r);
            return Ok(LiftingBasis {
                originals: gens.to_vec(),
                basis: vec![basis[k].clone()],
                transform: if track {
                    vec![transform[k].clone()]
                } else {
                    Vec::new()
                },
            });
        }
        basis.push(r);
        add_pairs(&mut pairs, &basis, basis.len() - 1);
    }
    Ok(LiftingBasis {
        originals: gens.to_vec(),
        basis,
        transform,
    })
}

/// Standard basis with transformation matrix, used for lifts and certificates.
pub fn lifting_basis(gens: &[Polynomial]) -> Result<LiftingBasis> {
    tangent_cone(gens, true)
}

/// Standard basis (unreduced, as produced by the tangent cone algorithm).
pub fn raw_standard_basis(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    Ok(tangent_cone(gens, false)?.basis)
}

/// Sorts greatest leading monomial first and keeps one generator per minimal
/// leading monomial, scaled to leading coefficient 1.
fn minimalize(ring: &Arc<Ring>, raw: Vec<Polynomial>) -> Vec<Polynomial> {
    let ord = ring.order();
    let mut gens = raw;
    gens.sort_by(|a, b| ord.compare(b.lm().unwrap(), a.lm().unwrap()));
    let mut out: Vec<Polynomial> = Vec::new();
    for g in gens {
        let lm = g.lm().unwrap();
        if out.iter().any(|h| h.lm().unwrap().divides(lm)) {
            continue;
        }
        out.retain(|h| !lm.divides(h.lm().unwrap()));
        out.push(g.monic());
    }
    out.sort_by(|a, b| ord.compare(b.lm().unwrap(), a.lm().unwrap()));
    out
}

/// Monomials outside the leading ideal of `lms`, or `None` when there are
/// infinitely many. Sorted greatest first.
pub(crate) fn staircase(ring: &Arc<Ring>, lms: &[Monomial]) -> Option<Vec<Monomial>> {
    let n = ring.nvars();
    let mut bounds = vec![0u32; n];
    for (i, b) in bounds.iter_mut().enumerate() {
        *b = lms
            .iter()
            .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)) || m.is_one())
            .map(|m| m.exps()[i])
            .min()?;
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        let m = Monomial::new(e.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == n {
                let ord = ring.order();
                out.sort_by(|a, b| ord.compare(b, a));
                return Some(out);
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Full normal form modulo a zero-dimensional ideal: terms of weighted
/// degree `≥ corner` are dropped since they lie in the ideal.
fn truncated_normal_form(p: &Polynomial, reducers: &[Polynomial], corner: u32) -> Polynomial {
    let ring = p.ring();
    if corner == 0 {
        return Polynomial::zero(ring);
    }
    let bound = corner - 1;
    let mut h = p.truncate(bound);
    let mut done = Vec::new();
    while let Some((m, c)) = h.lead().map(|(m, c)| (m.clone(), c.clone())) {
        match reducers.iter().find(|g| g.lm().unwrap().divides(&m)) {
            Some(g) => {
                let q = m.div(g.lm().unwrap()).unwrap();
                let k = &c / g.lc().unwrap();
                h = h
                    .sub(&g.truncate(bound + g.min_wdeg()).mul_term(&q, &k))
                    .truncate(bound);
            }
            None => {
                done.push((m, c));
                h = h.tail();
            }
        }
    }
    Polynomial::from_terms(ring, done)
}

/// Reduced standard basis of the ideal generated by `gens`.
pub fn standard_basis(gens: &[Polynomial]) -> Result<StandardBasis> {
    let raw = raw_standard_basis(gens)?;
    let ring = gens[0].ring().clone();
    reduce_basis(&ring, raw)
}

pub(crate) fn reduce_basis(ring: &Arc<Ring>, raw: Vec<Polynomial>) -> Result<StandardBasis> {
    let min = minimalize(ring, raw);
    if min.iter().any(Polynomial::is_unit) {
        return Ok(StandardBasis {
            ring: ring.clone(),
            generators: vec![Polynomial::one(ring)],
            corner: Some(0),
        });
    }
    let lms: Vec<Monomial> = min.iter().map(|g| g.lm().unwrap().clone()).collect();
    let corner = staircase(ring, &lms).map(|st| {
        let ord = ring.order();
        st.iter().map(|m| ord.degree(m)).max().unwrap_or(0) + 1
    });
    let generators = match corner {
        Some(d) => min
            .iter()
            .map(|g| {
                let (lm, lc) = g.lead().unwrap();
                let head = Polynomial::term(ring, lm.clone(), lc.clone());
                if ring.order().degree(lm) >= d {
                    head
                } else {
                    head.add(&truncated_normal_form(&g.tail(), &min, d))
                }
            })
            .collect(),
        None => min,
    };
    Ok(StandardBasis {
        ring: ring.clone(),
        generators,
        corner,
    })
}

/// Normal form of `p`. Canonical (fully reduced) for zero-dimensional
/// ideals; otherwise Mora's weak normal form.
pub fn normal_form(p: &Polynomial, sb: &StandardBasis) -> Polynomial {
    match sb.corner {
        Some(d) => truncated_normal_form(p, &sb.generators, d),
        None => mora::reduce(p, &sb.generators, false, None).expect("unbounded").0,
    }
}

/// Membership test with a certificate over the given generators.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub certificate: DivisionResult,
}

pub fn ideal_membership(p: &Polynomial, gens: &[Polynomial]) -> Result<Membership> {
    if p.is_zero() {
        let ring = p.ring();
        return Ok(Membership {
            member: true,
            certificate: DivisionResult {
                unit: Polynomial::one(ring),
                quotients: vec![Polynomial::zero(ring); gens.len()],
                remainder: Polynomial::zero(ring),
            },
        });
    }
    let lb = lifting_basis(gens)?;
    let certificate = lb.divide(p);
    debug_assert!(certificate.verify(p, gens));
    Ok(Membership {
        member: certificate.remainder.is_zero(),
        certificate,
    })
}

/// Standard basis of `I : (g)`. The ideal `I` must be zero-dimensional; the
/// quotient is computed from the kernel of multiplication by `g` on `𝒪/I`.
pub fn ideal_quotient(gens_i: &[Polynomial], g: &Polynomial) -> Result<StandardBasis> {
    if g.is_zero() {
        return Err(Error::Precondition("ideal quotient by zero".into()));
    }
    let sb = standard_basis(gens_i)?;
    let alg = QuotientAlgebra::new(sb)?;
    let mut gens: Vec<Polynomial> = alg.standard_basis().generators().to_vec();
    gens.extend(alg.multiplication_kernel(g));
    standard_basis(&gens)
}

/// Monomial basis of the quotient by a standard basis, greatest first.
pub fn quotient_monomial_basis(sb: &StandardBasis) -> Result<QuotientBasis> {
    let monomials = staircase(sb.ring(), &sb.leading_monomials())
        .ok_or_else(|| Error::NonIsolated("quotient by the ideal is infinite-dimensional".into()))?;
    Ok(QuotientBasis::new(if sb.is_unit_ideal() {
        Vec::new()
    } else {
        monomials
    }))
}

/// Every variable has a pure power among the leading monomials.
pub fn check_zero_dimensional(gens: &[Polynomial]) -> Result<bool> {
    Ok(standard_basis(gens)?.is_zero_dimensional())
}

pub fn jacobian(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.ring().nvars()).map(|i| f.derivative(i)).collect()
}

/// `dim 𝒪/J`.
pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    let sb = standard_basis(&jacobian(f))?;
    Ok(quotient_monomial_basis(&sb)?.dimension())
}

/// `dim 𝒪/(f, J)`.
pub fn tjurina_number(f: &Polynomial) -> Result<usize> {
    let mut gens = vec![f.clone()];
    gens.extend(jacobian(f));
    let sb = standard_basis(&gens)?;
    Ok(quotient_monomial_basis(&sb)?.dimension())
}

/// Milnor number of the restriction to the hyperplane of the distinguished variable.
pub fn hyperplane_milnor(f: &Polynomial) -> Result<usize> {
    let g = f.restrict_hyperplane()?;
    let non_generic = || {
        Error::NonGenericCoordinate(format!(
            "restriction of f to {} = 0 has no isolated singularity; try another first variable",
            f.ring().names()[f.ring().distinguished()]
        ))
    };
    if g.is_zero() {
        return Err(non_generic());
    }
    let jac = jacobian(&g);
    if jac.iter().all(Polynomial::is_zero) {
        // a nonzero constant restriction is smooth; treat as degenerate
        return Err(non_generic());
    }
    let sb = standard_basis(&jac)?;
    match quotient_monomial_basis(&sb) {
        Ok(q) => Ok(q.dimension()),
        Err(Error::NonIsolated(_)) => Err(non_generic()),
        Err(e) => Err(e),
    }
}
