//! Algebraic local cohomology supported at the origin, in terms of
//! Grothendieck symbols `[1/x^λ]` (all `λᵢ ≥ 1`).
//!
//! Monomials act by `x^a ∗ [1/x^λ] = [1/x^(λ−a)]` when every component of
//! `λ − a` is at least 1, and by zero otherwise. Symbols are ordered by the
//! weighted degree of `λ − 1`: a higher degree is greater, and ties are
//! broken by the reverse of the local monomial order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::coeffield::FieldElement;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseEchelon};
use crate::localstd::{reduce_basis, StandardBasis};
use crate::poly::{Monomial, Polynomial, Ring};

/// `x^(λ−1)` for a symbol `λ`.
fn shifted(lambda: &Monomial) -> Monomial {
    Monomial::new(lambda.exps().iter().map(|e| e - 1).collect())
}

fn unshifted(m: &Monomial) -> Monomial {
    Monomial::new(m.exps().iter().map(|e| e + 1).collect())
}

/// Symbol order: `Greater` when `a ≻ b`.
pub fn symbol_order(ring: &Ring, a: &Monomial, b: &Monomial) -> Ordering {
    ring.order().compare(&shifted(b), &shifted(a))
}

/// Finite sum `Σ c_λ [1/x^λ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyClass {
    ring: Arc<Ring>,
    symbols: BTreeMap<Monomial, FieldElement>,
}

impl CohomologyClass {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self {
            ring: ring.clone(),
            symbols: BTreeMap::new(),
        }
    }

    /// The single symbol `[1/x^λ]`; panics if some `λᵢ < 1`.
    pub fn symbol(ring: &Arc<Ring>, lambda: Vec<u32>) -> Self {
        assert!(
            lambda.iter().all(|&e| e >= 1),
            "symbol exponents must be positive"
        );
        let mut c = Self::zero(ring);
        c.symbols.insert(Monomial::new(lambda), ring.domain().one());
        c
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut c = Self::zero(ring);
        for (l, v) in terms {
            c.add_term(l, v);
        }
        c
    }

    fn add_term(&mut self, lambda: Monomial, v: FieldElement) {
        if v.is_zero() {
            return;
        }
        match self.symbols.get_mut(&lambda) {
            Some(e) => {
                *e = &*e + &v;
                if e.is_zero() {
                    self.symbols.remove(&lambda);
                }
            }
            None => {
                self.symbols.insert(lambda, v);
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &BTreeMap<Monomial, FieldElement> {
        &self.symbols
    }

    pub fn coeff(&self, lambda: &Monomial) -> FieldElement {
        self.symbols
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| self.ring.domain().zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.clone();
        for (l, v) in &other.symbols {
            c.add_term(l.clone(), v.clone());
        }
        c
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        Self::from_terms(&self.ring, self.symbols.iter().map(|(l, v)| (l.clone(), v * k)))
    }

    /// Symbols sorted greatest first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &FieldElement)> {
        let mut v: Vec<_> = self.symbols.iter().collect();
        v.sort_by(|a, b| symbol_order(&self.ring, b.0, a.0));
        v
    }

    /// Largest weighted degree of `λ − 1` over the symbols present.
    pub fn max_degree(&self) -> u32 {
        let ord = self.ring.order();
        self.symbols
            .keys()
            .map(|l| ord.degree(&shifted(l)))
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = self.ring.names();
        let sym = self.ring.param_symbol();
        let mut out = String::new();
        for (l, c) in self.sorted_terms() {
            let s = format!("[1/({})]", l.render(names));
            let negative = c.looks_negative() && !c.render(sym).starts_with('(');
            let abs = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&abs.render(sym));
                out.push('*');
            }
            out.push_str(&s);
        }
        out
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Linear extension of the contraction action.
pub fn act(p: &Polynomial, c: &CohomologyClass) -> CohomologyClass {
    let mut out = CohomologyClass::zero(c.ring());
    for (a, pa) in p.terms() {
        for (l, cl) in &c.symbols {
            if let Some(mu) = l.div(a) {
                if mu.exps().iter().all(|&e| e >= 1) {
                    out.add_term(mu, pa * cl);
                }
            }
        }
    }
    out
}

/// Point residue: coefficient of `[1/(x₁⋯xₙ)]` in `p ∗ c`.
pub fn residue_pairing(p: &Polynomial, c: &CohomologyClass) -> FieldElement {
    let socle = Monomial::new(vec![1; c.ring().nvars()]);
    act(p, c).coeff(&socle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Gamma,
    Delta,
    T,
    J,
}

/// Finite-dimensional space of classes with a basis in echelon form.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    ring: Arc<Ring>,
    basis: Vec<CohomologyClass>,
    role: Role,
}

impl CohomologySpace {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[CohomologyClass] {
        &self.basis
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Largest weighted degree of `λ − 1` over all basis symbols.
    pub fn max_degree(&self) -> u32 {
        self.basis
            .iter()
            .map(CohomologyClass::max_degree)
            .max()
            .unwrap_or(0)
    }

    /// Rank of the span of the given classes together with this basis.
    pub fn span_rank_with(&self, others: &[CohomologyClass]) -> usize {
        span_rank(self.basis.iter().chain(others))
    }

    pub fn contains(&self, c: &CohomologyClass) -> bool {
        self.span_rank_with(std::slice::from_ref(c)) == self.dimension()
    }
}

/// Rank of a family of classes.
pub fn span_rank<'a>(classes: impl IntoIterator<Item = &'a CohomologyClass>) -> usize {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut e = SparseEchelon::new();
    for c in classes {
        let row = c
            .symbols
            .iter()
            .map(|(l, v)| {
                let n = index.len();
                (*index.entry(l.clone()).or_insert(n), v.clone())
            })
            .collect();
        e.insert(row);
    }
    e.rank()
}

/// Echelon presentation: columns ordered greatest symbol first, so each
/// class has its greatest symbol with coefficient 1 and no other class
/// involves that symbol.
fn echelon(ring: &Arc<Ring>, classes: &[CohomologyClass]) -> Vec<CohomologyClass> {
    let mut cols: Vec<Monomial> = classes.iter().flat_map(|c| c.symbols.keys().cloned()).collect();
    cols.sort_by(|a, b| symbol_order(ring, b, a));
    cols.dedup();
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dom = ring.domain();
    let mut rows: Vec<Vec<FieldElement>> = classes
        .iter()
        .map(|c| {
            let mut r = vec![dom.zero(); cols.len()];
            for (l, v) in &c.symbols {
                r[index[l]] = v.clone();
            }
            r
        })
        .collect();
    linalg::rref(&mut rows);
    rows.iter()
        .map(|r| CohomologyClass::from_terms(ring, r.iter().zip(&cols).map(|(v, l)| (l.clone(), v.clone()))))
        .collect()
}

/// All monomials of weighted degree at most `bound`.
pub(crate) fn monomials_up_to(ring: &Ring, bound: u32) -> Vec<Monomial> {
    let w = ring.weights().as_slice();
    let mut out = Vec::new();
    let mut e = vec![0u32; w.len()];
    fn rec(i: usize, left: u32, w: &[u32], e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            out.push(Monomial::new(e.clone()));
            return;
        }
        let mut k = 0;
        while k * w[i] <= left {
            e[i] = k;
            rec(i + 1, left - k * w[i], w, e, out);
            k += 1;
        }
        e[i] = 0;
    }
    rec(0, bound, w, &mut e, &mut out);
    out
}

/// Classes supported on candidate symbols with `wdeg(λ−1) ≤ d` killed by
/// every annihilator.
fn annihilated_at_degree(ring: &Arc<Ring>, annihilators: &[Polynomial], d: u32) -> Vec<CohomologyClass> {
    let cands: Vec<Monomial> = monomials_up_to(ring, d).iter().map(unshifted).collect();
    let dom = ring.domain();
    let mut eq_index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, FieldElement)> = Vec::new();
    for (j, l) in cands.iter().enumerate() {
        for (k, p) in annihilators.iter().enumerate() {
            for (a, pa) in p.terms() {
                if let Some(mu) = l.div(a) {
                    if mu.exps().iter().all(|&e| e >= 1) {
                        let n = eq_index.len();
                        let row = *eq_index.entry((k, mu)).or_insert(n);
                        entries.push((row, j, pa.clone()));
                    }
                }
            }
        }
    }
    let mut rows = vec![vec![dom.zero(); cands.len()]; eq_index.len()];
    for (r, c, v) in entries {
        rows[r][c] = &rows[r][c] + &v;
    }
    linalg::nullspace(&rows, cands.len(), dom)
        .into_iter()
        .map(|v| CohomologyClass::from_terms(ring, cands.iter().cloned().zip(v)))
        .collect()
}

/// Basis of `{φ : p∗φ = 0 for all annihilators}` found degree by degree.
///
/// Stops once the dimension equals `stop_dimension` and one more degree adds
/// nothing. A larger dimension means the supplied invariants are wrong.
pub fn annihilated_space(
    annihilators: &[Polynomial],
    stop_dimension: usize,
    role: Role,
) -> Result<CohomologySpace> {
    let ring = annihilators
        .first()
        .ok_or_else(|| Error::Precondition("no annihilators given".into()))?
        .ring()
        .clone();
    let bound = 4 * (stop_dimension + ring.nvars()) as u32;
    let mut previous: Option<usize> = None;
    for d in 0..=bound {
        let classes = annihilated_at_degree(&ring, annihilators, d);
        let dim = classes.len();
        if dim > stop_dimension {
            return Err(Error::InconsistentInvariants(format!(
                "annihilated space has dimension at least {dim}, expected {stop_dimension}"
            )));
        }
        if dim == stop_dimension && previous == Some(dim) {
            let basis = echelon(&ring, &classes);
            debug_assert!(basis
                .iter()
                .all(|c| annihilators.iter().all(|p| act(p, c).is_zero())));
            return Ok(CohomologySpace { ring, basis, role });
        }
        previous = Some(dim);
    }
    Err(Error::BoundExceeded(format!(
        "annihilated space did not reach dimension {stop_dimension} by weighted degree {bound}"
    )))
}

/// Span of `{g∗φ}`.
pub fn image_space(g: &Polynomial, gamma: &CohomologySpace) -> CohomologySpace {
    let images: Vec<CohomologyClass> = gamma.basis.iter().map(|c| act(g, c)).collect();
    CohomologySpace {
        ring: gamma.ring.clone(),
        basis: echelon(&gamma.ring, &images),
        role: Role::Delta,
    }
}

/// `{φ ∈ gamma : g∗φ = 0}`; checked against `tau` when supplied.
pub fn kernel_space(g: &Polynomial, gamma: &CohomologySpace, tau: Option<usize>) -> Result<CohomologySpace> {
    let ring = &gamma.ring;
    let dom = ring.domain();
    let images: Vec<CohomologyClass> = gamma.basis.iter().map(|c| act(g, c)).collect();
    let mut syms: Vec<Monomial> = images.iter().flat_map(|c| c.symbols.keys().cloned()).collect();
    syms.sort();
    syms.dedup();
    let rows: Vec<Vec<FieldElement>> = syms
        .iter()
        .map(|l| images.iter().map(|c| c.coeff(l)).collect())
        .collect();
    let kernel: Vec<CohomologyClass> = if rows.is_empty() {
        gamma.basis.clone()
    } else {
        linalg::nullspace(&rows, gamma.dimension(), dom)
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&gamma.basis)
                    .fold(CohomologyClass::zero(ring), |acc, (k, c)| acc.add(&c.scale(k)))
            })
            .collect()
    };
    if let Some(tau) = tau {
        if kernel.len() != tau {
            return Err(Error::InconsistentInvariants(format!(
                "kernel has dimension {}, expected {tau}",
                kernel.len()
            )));
        }
    }
    Ok(CohomologySpace {
        ring: ring.clone(),
        basis: echelon(ring, &kernel),
        role: Role::T,
    })
}

/// Reduced standard basis of `Ann(space)`, by a dual Buchberger–Möller pass
/// over monomials taken from the smallest in the local order upwards.
pub fn annihilator_standard_basis(space: &CohomologySpace) -> Result<StandardBasis> {
    let ring = &space.ring;
    let ord = ring.order();
    let max_w = ring.weights().as_slice().iter().copied().max().unwrap_or(1);
    let mut mons = monomials_up_to(ring, space.max_degree() + max_w);
    mons.sort_by(|a, b| ord.compare(a, b));
    // coordinates: (basis index, symbol) pairs, then one tag column per
    // standard monomial to record dependencies
    const TAG: usize = 1 << 40;
    let mut coord: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut echelon = SparseEchelon::new();
    let mut standard: Vec<Monomial> = Vec::new();
    let mut dependent_set: HashMap<Monomial, Polynomial> = HashMap::new();
    for m in mons {
        let mono = Polynomial::monomial(ring, m.clone());
        let mut row = BTreeMap::new();
        for (i, c) in space.basis.iter().enumerate() {
            for (l, v) in act(&mono, c).symbols {
                let n = coord.len();
                row.insert(*coord.entry((i, l)).or_insert(n), v);
            }
        }
        let tag = TAG + standard.len();
        row.insert(tag, ring.domain().one());
        let rem = echelon.reduce(row);
        let dependent = rem.keys().all(|&k| k >= TAG);
        if !dependent {
            echelon.insert(rem);
            standard.push(m);
            continue;
        }
        let g = Polynomial::from_terms(
            ring,
            rem.into_iter().map(|(k, v)| {
                let mono = if k == tag {
                    m.clone()
                } else {
                    standard[k - TAG].clone()
                };
                (mono, v)
            }),
        );
        dependent_set.insert(m, g.monic());
    }
    // multiples are visited first, so keep only the minimal leading monomials
    let generators: Vec<Polynomial> = dependent_set
        .iter()
        .filter(|(m, _)| {
            (0..m.len()).all(|i| {
                let mut e = m.exps().to_vec();
                if e[i] == 0 {
                    return true;
                }
                e[i] -= 1;
                !dependent_set.contains_key(&Monomial::new(e))
            })
        })
        .map(|(_, g)| g.clone())
        .collect();
    reduce_basis(ring, generators)
}
