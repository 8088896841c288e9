//! Mora's normal form with écart-driven reducer selection.

use std::collections::{BTreeMap, HashMap};

use crate::coeffield::FieldElement;
use crate::linalg::SparseEchelon;
use crate::localcoh::monomials_up_to;
use crate::poly::{Monomial, Polynomial};

use super::{normal_form, standard_basis, StandardBasis};

/// Output of [`mora_divide`]: `unit·p = Σ quotientsᵢ·divisorᵢ + remainder`.
///
/// `remainder` is a weak normal form: it is zero or its leading monomial is
/// not divisible by any divisor's leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult {
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl DivisionResult {
    /// Checks the division identity by full expansion.
    pub fn verify(&self, p: &Polynomial, divisors: &[Polynomial]) -> bool {
        if !self.unit.is_unit() || self.quotients.len() != divisors.len() {
            return false;
        }
        let mut rhs = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(divisors) {
            rhs = rhs.add(&q.mul(g));
        }
        self.unit.mul(p) == rhs
    }
}

/// `alpha` and `beta` with `h = alpha·p + Σ betaᵢ·gᵢ`.
type Representation = (Polynomial, Vec<Polynomial>);

struct Reducer {
    poly: Polynomial,
    lm: Monomial,
    ecart: u32,
    /// `poly = alpha·p + Σ betaᵢ·gᵢ`; `None` for an original divisor.
    repr: Option<Representation>,
    origin: usize,
}

/// Reduction steps after which [`mora_divide`] gives up on Mora's algorithm
/// for zero-dimensional ideals and solves for the division instead.
const STEP_BUDGET: usize = 96;

/// Weak normal form of `p` with respect to `divisors`. With `track` set the
/// unit and quotients are returned as well. `None` once more than `budget`
/// reduction steps were needed.
pub(crate) fn reduce(
    p: &Polynomial,
    divisors: &[Polynomial],
    track: bool,
    budget: Option<usize>,
) -> Option<(Polynomial, Option<Representation>)> {
    let ring = p.ring().clone();
    let n = divisors.len();
    let mut t: Vec<Reducer> = divisors
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| Reducer {
            poly: g.clone(),
            lm: g.lm().expect("nonzero").clone(),
            ecart: g.ecart(),
            repr: None,
            origin: i,
        })
        .collect();
    let mut h = p.clone();
    let mut alpha = Polynomial::one(&ring);
    let mut beta = vec![Polynomial::zero(&ring); if track { n } else { 0 }];
    let mut steps = 0usize;
    while let Some((lm_h, lc_h)) = h.lead().map(|(m, c)| (m.clone(), c.clone())) {
        let Some(k) = t
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lm.divides(&lm_h))
            .min_by_key(|(i, r)| (r.ecart, *i))
            .map(|(i, _)| i)
        else {
            break;
        };
        steps += 1;
        if budget.is_some_and(|b| steps > b) {
            return None;
        }
        let eh = h.ecart();
        if t[k].ecart > eh {
            t.push(Reducer {
                poly: h.clone(),
                lm: lm_h.clone(),
                ecart: eh,
                repr: track.then(|| (alpha.clone(), beta.clone())),
                origin: usize::MAX,
            });
        }
        let g = &t[k];
        let m = lm_h.div(&g.lm).expect("divides");
        let c = &lc_h / g.poly.lc().expect("nonzero");
        h = h.sub(&g.poly.mul_term(&m, &c));
        if track {
            match &g.repr {
                None => beta[g.origin] = beta[g.origin].sub(&Polynomial::term(&ring, m, c)),
                Some((a, b)) => {
                    alpha = alpha.sub(&a.mul_term(&m, &c));
                    for (bi, bg) in beta.iter_mut().zip(b) {
                        if !bg.is_zero() {
                            *bi = bi.sub(&bg.mul_term(&m, &c));
                        }
                    }
                }
            }
        }
    }
    Some((h, track.then_some((alpha, beta))))
}

/// Mora division with quotient tracking.
///
/// Coefficients can grow very fast when the divisors are far from a
/// standard basis. For zero-dimensional ideals a long division is replaced
/// by an exact linear solve, see [`solve_division`].
pub fn mora_divide(p: &Polynomial, divisors: &[Polynomial]) -> DivisionResult {
    let out = divide_within(p, divisors)
        .or_else(|| {
            let sb = standard_basis(divisors).ok()?;
            solve_division(p, divisors, &sb)
        })
        .unwrap_or_else(|| tracked(reduce(p, divisors, true, None).expect("unbounded")));
    debug_assert!(out.verify(p, divisors), "division identity");
    out
}

/// Tracked Mora division, `None` when it needs more than the step budget.
pub(crate) fn divide_within(p: &Polynomial, divisors: &[Polynomial]) -> Option<DivisionResult> {
    reduce(p, divisors, true, Some(STEP_BUDGET)).map(tracked)
}

fn tracked((remainder, repr): (Polynomial, Option<Representation>)) -> DivisionResult {
    let (unit, beta) = repr.expect("tracked");
    DivisionResult {
        unit,
        quotients: beta.iter().map(Polynomial::neg).collect(),
        remainder,
    }
}

/// Division by linear algebra when the divisors generate a zero-dimensional
/// ideal `I` with standard basis `sb` and corner `C`, so that `(g) + m^C` is
/// the primary component at the origin.
///
/// Members get `u·p = Σ qᵢ·gᵢ` with `u(0) = 1`. Otherwise `p = Σ qᵢ·gᵢ + r`
/// where `r` lives on the standard monomials of `I` plus anything of degree
/// `≥ C`; the low part is nonzero because `p ∉ I`, so `lm r` is a standard
/// monomial. Unknowns of weighted degree up to `N` are added until the
/// system is solvable.
pub(crate) fn solve_division(
    p: &Polynomial,
    divisors: &[Polynomial],
    sb: &StandardBasis,
) -> Option<DivisionResult> {
    let corner = sb.corner_bound()?;
    let member = normal_form(p, sb).is_zero();
    let ring = p.ring().clone();
    let dom = ring.domain();
    let order = ring.order();
    let free_remainder = |m: &Monomial| order.degree(m) >= corner || !sb.in_leading_ideal(m);

    const TAG: usize = 1 << 40;
    let mut coord: HashMap<Monomial, usize> = HashMap::new();
    let mut row = |poly: &Polynomial, tag: usize| {
        let mut out: BTreeMap<usize, FieldElement> = BTreeMap::new();
        for (m, c) in poly.terms() {
            let next = coord.len();
            out.insert(*coord.entry(m.clone()).or_insert(next), c.clone());
        }
        out.insert(TAG + tag, dom.one());
        out
    };
    // unknown j is the coefficient of `unknowns[j].0` in slot `unknowns[j].1`:
    // 0 for the unit, i + 1 for quotient i, divisors.len() + 1 for the remainder
    let mut unknowns: Vec<(Monomial, usize)> = Vec::new();
    let mut echelon = SparseEchelon::new();
    let mut target = row(p, 0);
    target.remove(&TAG);
    if member {
        target = target.into_iter().map(|(k, v)| (k, -v)).collect();
    }
    let rslot = divisors.len() + 1;
    let mut bound = 0;
    loop {
        let fresh = monomials_up_to(&ring, bound)
            .into_iter()
            .filter(|m| order.degree(m) == bound);
        for m in fresh {
            let mut cols: Vec<(usize, Polynomial)> = Vec::new();
            if member && !m.is_one() {
                cols.push((0, p.mul_term(&m, &dom.one())));
            }
            for (i, g) in divisors.iter().enumerate() {
                if !g.is_zero() {
                    cols.push((i + 1, g.mul_term(&m, &-dom.one())));
                }
            }
            if !member && free_remainder(&m) {
                cols.push((rslot, Polynomial::monomial(&ring, m.clone())));
            }
            for (slot, col) in cols {
                let v = row(&col, unknowns.len());
                unknowns.push((m.clone(), slot));
                echelon.insert(v);
            }
        }
        let rem = echelon.reduce(target.clone());
        if rem.keys().all(|&k| k >= TAG) {
            let mut unit = Polynomial::one(&ring);
            let mut quotients = vec![Polynomial::zero(&ring); divisors.len()];
            let mut remainder = Polynomial::zero(&ring);
            for (k, v) in rem {
                let (m, slot) = &unknowns[k - TAG];
                let t = Polynomial::term(&ring, m.clone(), -v);
                let acc = match *slot {
                    0 => &mut unit,
                    s if s == rslot => &mut remainder,
                    s => &mut quotients[s - 1],
                };
                *acc = acc.add(&t);
            }
            // divisor columns enter with a minus sign
            if !member {
                quotients = quotients.iter().map(Polynomial::neg).collect();
            }
            return Some(DivisionResult {
                unit,
                quotients,
                remainder,
            });
        }
        bound += 1;
    }
}
