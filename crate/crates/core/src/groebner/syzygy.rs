//! Presentations of submodules of graded free modules, syzygies via the
//! augmented-module elimination, and strand-wise minimal generators.

use std::collections::HashMap;
use std::sync::Arc;

use super::buchberger::groebner_basis;
use super::module::{ModVec, ModuleOrder};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, PolynomialRing};

/// Columns of polynomials mapping `R(-column_degrees)` into `R(-row_degrees)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: Arc<PolynomialRing>,
    pub row_degrees: Vec<i32>,
    pub column_degrees: Vec<i32>,
    pub columns: Vec<Vec<Polynomial>>,
}

impl ModulePresentation {
    pub fn new(
        ring: &Arc<PolynomialRing>,
        row_degrees: Vec<i32>,
        column_degrees: Vec<i32>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if columns.len() != column_degrees.len() {
            return Err(Error::precondition("one degree per column required"));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != row_degrees.len() {
                return Err(Error::precondition(format!("column {j} has wrong length")));
            }
            for (i, e) in col.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let ok = e.is_homogeneous() && e.total_degree().unwrap() as i32 + row_degrees[i] == column_degrees[j];
                if !ok {
                    return Err(Error::precondition(format!("entry ({i},{j}) is not homogeneous of the right degree")));
                }
            }
        }
        Ok(ModulePresentation { ring: ring.clone(), row_degrees, column_degrees, columns })
    }

    /// A single row `[f_1 .. f_m]` mapping into `R`.
    pub fn row(ring: &Arc<PolynomialRing>, entries: &[Polynomial]) -> Result<Self> {
        let degs = entries
            .iter()
            .map(|f| f.total_degree().map(|d| d as i32).ok_or_else(|| Error::precondition("zero entry in row")))
            .collect::<Result<Vec<_>>>()?;
        ModulePresentation::new(ring, vec![0], degs, entries.iter().map(|f| vec![f.clone()]).collect())
    }

    pub fn ambient_rank(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }
}

/// Generators of the kernel of the column map, reduced to a minimal
/// generating set. The result presents a submodule of `R^{ncols}` whose row
/// degrees are the input's column degrees.
pub fn syzygies(m: &ModulePresentation) -> ModulePresentation {
    let ring = &m.ring;
    let k = ring.field();
    let r = m.ambient_rank() as u32;
    let c = m.ncols() as u32;
    let mut shifts = m.row_degrees.clone();
    shifts.extend_from_slice(&m.column_degrees);
    let ord = ModuleOrder { mono: ring.order(), shifts, top_block: r };
    let gens: Vec<ModVec> = m
        .columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut v = ModVec::from_polys(k, &ord, col, 0);
            let unit = ModVec::from_polys(k, &ord, &[Polynomial::one(ring)], r + j as u32);
            v = v.add_scaled(k, &ord, &unit, 1, &Monomial::ONE);
            v
        })
        .collect();
    let gb = groebner_basis(k, &ord, &gens);
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for g in gb {
        let lead = g.terms[0].0;
        if lead.comp < r {
            continue;
        }
        degs.push(ord.degree(&lead));
        cols.push(g.to_polys(ring, r, r + c));
    }
    let raw = ModulePresentation { ring: ring.clone(), row_degrees: m.column_degrees.clone(), column_degrees: degs, columns: cols };
    let keep = minimal_generator_indices(&raw);
    ModulePresentation {
        ring: ring.clone(),
        row_degrees: raw.row_degrees.clone(),
        column_degrees: keep.iter().map(|&j| raw.column_degrees[j]).collect(),
        columns: keep.iter().map(|&j| raw.columns[j].clone()).collect(),
    }
}

/// Coordinates of a homogeneous degree-`d` module element over `(row, monomial)`.
pub(crate) struct StrandCoords {
    index: HashMap<(u32, Monomial), u32>,
}

impl StrandCoords {
    pub(crate) fn new() -> Self {
        StrandCoords { index: HashMap::new() }
    }

    pub(crate) fn vector(&mut self, entries: &[Polynomial], mult: &Monomial, scalar: u32) -> SparseVec {
        let k = entries.first().map(|p| *p.ring().field());
        let mut v = Vec::new();
        for (i, e) in entries.iter().enumerate() {
            for &(m, c) in e.terms() {
                let next = self.index.len() as u32;
                let idx = *self.index.entry((i as u32, m.mul(mult))).or_insert(next);
                v.push((idx, k.unwrap().mul(c, scalar)));
            }
        }
        match k {
            Some(k) => crate::linalg::normalize(&k, v),
            None => v,
        }
    }
}

/// Indices of a minimal generating subset, chosen by increasing degree and
/// then input position (graded Nakayama).
pub fn minimal_generator_indices(m: &ModulePresentation) -> Vec<usize> {
    let ring = &m.ring;
    let k = *ring.field();
    let mut order: Vec<usize> = (0..m.ncols()).filter(|&j| m.columns[j].iter().any(|e| !e.is_zero())).collect();
    order.sort_by_key(|&j| m.column_degrees[j]); // stable
    let mut kept: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let d = m.column_degrees[order[i]];
        let mut coords = StrandCoords::new();
        let mut span = Echelon::new(k);
        for &g in &kept {
            let shift = d - m.column_degrees[g];
            for mono in ring.monomials_of_degree(shift as u32) {
                let v = coords.vector(&m.columns[g], &mono, 1);
                span.insert(&v);
            }
        }
        while i < order.len() && m.column_degrees[order[i]] == d {
            let j = order[i];
            let v = coords.vector(&m.columns[j], &Monomial::ONE, 1);
            if span.insert(&v) {
                kept.push(j);
            }
            i += 1;
        }
    }
    kept.sort_unstable();
    kept
}

/// Whether the homogeneous vector `v` of degree `d` lies in the column span.
pub fn in_column_span(m: &ModulePresentation, v: &[Polynomial], d: i32) -> bool {
    if v.iter().all(|e| e.is_zero()) {
        return true;
    }
    let k = *m.ring.field();
    let mut coords = StrandCoords::new();
    let mut span = Echelon::new(k);
    for (j, col) in m.columns.iter().enumerate() {
        let shift = d - m.column_degrees[j];
        if shift < 0 {
            continue;
        }
        for mono in m.ring.monomials_of_degree(shift as u32) {
            span.insert(&coords.vector(col, &mono, 1));
        }
    }
    span.contains(&coords.vector(v, &Monomial::ONE, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolynomialRing> {
        PolynomialRing::standard(3)
    }

    fn v(r: &Arc<PolynomialRing>, i: usize) -> Polynomial {
        Polynomial::variable(r, i)
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring();
        let m = ModulePresentation::row(&r, &[v(&r, 0), v(&r, 1)]).unwrap();
        let s = syzygies(&m);
        assert_eq!(s.ncols(), 1);
        assert_eq!(s.column_degrees, vec![2]);
        let col = &s.columns[0];
        // proportional to (y, -x)
        let c = col[0].leading_term().unwrap().1;
        let expect = vec![v(&r, 1).scale(c), v(&r, 0).neg().scale(c)];
        assert_eq!(col, &expect);
    }

    #[test]
    fn regular_element_has_no_syzygies() {
        let r = ring();
        let m = ModulePresentation::row(&r, &[v(&r, 0)]).unwrap();
        assert_eq!(syzygies(&m).ncols(), 0);
    }

    #[test]
    fn syzygy_of_x2_xy() {
        let r = ring();
        let x = v(&r, 0);
        let y = v(&r, 1);
        let m = ModulePresentation::row(&r, &[&x * &x, &x * &y]).unwrap();
        let s = syzygies(&m);
        assert_eq!(s.ncols(), 1);
        let col = &s.columns[0];
        let c = col[0].leading_term().unwrap().1;
        assert_eq!(col, &vec![y.scale(c), x.neg().scale(c)]);
    }

    #[test]
    fn minimal_generators_drop_multiples() {
        let r = ring();
        let x = v(&r, 0);
        let y = v(&r, 1);
        let m = ModulePresentation::new(
            &r,
            vec![0],
            vec![1, 2, 2],
            vec![vec![x.clone()], vec![&x * &y], vec![&y * &y]],
        )
        .unwrap();
        assert_eq!(minimal_generator_indices(&m), vec![0, 2]);
    }
}
