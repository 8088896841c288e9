//! Exact Gaussian elimination over the coefficient field.
//!
//! Pivots are taken in column order and, within a column, by row position,
//! so every result is deterministic.

use std::collections::BTreeMap;

use crate::coeffield::{Domain, FieldElement};

pub type Row = Vec<FieldElement>;

/// Reduced row echelon form in place; returns the pivot columns. Zero rows
/// are dropped, so afterwards `rows.len()` is the rank.
pub fn rref(rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&k * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A·x = 0}` for `A` with `ncols` columns; one vector per
/// free column, with a 1 in that column.
pub fn nullspace(rows: &[Row], ncols: usize, domain: Domain) -> Vec<Row> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![domain.zero(); ncols];
        v[free] = domain.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[pc] = -&row[free];
            }
        }
        out.push(v);
    }
    out
}

/// Some solution of `A·x = b`, or `None` when the system is inconsistent.
pub fn solve(rows: &[Row], rhs: &[FieldElement], domain: Domain) -> Option<Row> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Row> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![domain.zero(); ncols];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

pub fn mat_vec(rows: &[Row], v: &[FieldElement], domain: Domain) -> Row {
    rows.iter()
        .map(|r| {
            r.iter().zip(v).fold(domain.zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
        .collect()
}

/// Incremental sparse elimination: rows are inserted one at a time and
/// reduced against the stored pivots.
#[derive(Default, Debug)]
pub struct SparseEchelon {
    // pivot column -> row normalised to 1 at the pivot (pivot is its first key)
    rows: BTreeMap<usize, BTreeMap<usize, FieldElement>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots; returns the remainder.
    pub fn reduce(&self, mut row: BTreeMap<usize, FieldElement>) -> BTreeMap<usize, FieldElement> {
        let mut done = BTreeMap::new();
        while let Some((c, v)) = row.pop_first() {
            match self.rows.get(&c) {
                Some(p) => {
                    for (j, a) in p.iter().skip(1) {
                        let e = row.remove(j).unwrap_or_else(|| v.domain().zero());
                        let n = &e - &(&v * a);
                        if !n.is_zero() {
                            row.insert(*j, n);
                        }
                    }
                }
                None => {
                    done.insert(c, v);
                }
            }
        }
        done
    }

    /// Inserts a row; returns `true` when it was independent of the others.
    pub fn insert(&mut self, row: BTreeMap<usize, FieldElement>) -> bool {
        let rem = self.reduce(row);
        let Some((&c, lead)) = rem.first_key_value() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero");
        let rem: BTreeMap<_, _> = rem.into_iter().map(|(j, a)| (j, &a * &inv)).collect();
        self.rows.insert(c, rem);
        true
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: BTreeMap<usize, FieldElement>) -> bool {
        self.reduce(row).is_empty()
    }
}
