//! Elements of graded free modules `R^r` as sorted term lists, and the
//! position-aware term orders used by the module Buchberger.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, PolynomialRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub mono: Monomial,
    pub comp: u32,
}

/// Term order on a free module with component shifts. Components below
/// `top_block` dominate every other component (elimination order); within a
/// block terms compare by shifted degree, then monomial, then position.
#[derive(Debug, Clone)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub shifts: Vec<i32>,
    pub top_block: u32,
}

impl ModuleOrder {
    pub fn ideal(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, shifts: vec![0], top_block: 1 }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn degree(&self, t: &ModTerm) -> i32 {
        t.mono.degree() as i32 + self.shifts[t.comp as usize]
    }

    #[inline]
    pub fn compare(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        let ba = a.comp < self.top_block;
        let bb = b.comp < self.top_block;
        ba.cmp(&bb)
            .then_with(|| self.degree(a).cmp(&self.degree(b)))
            .then_with(|| self.mono.compare(&a.mono, &b.mono))
            .then_with(|| b.comp.cmp(&a.comp))
    }
}

/// Module element: descending terms with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModVec {
    pub terms: Vec<(ModTerm, u32)>,
}

impl ModVec {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(ModTerm, u32)> {
        self.terms.first()
    }

    /// Builds from arbitrary terms (sorting and merging).
    pub fn from_terms(k: &PrimeField, ord: &ModuleOrder, mut terms: Vec<(ModTerm, u32)>) -> ModVec {
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        let mut out: Vec<(ModTerm, u32)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == t => last.1 = k.add(last.1, c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        ModVec { terms: out }
    }

    /// Vector from polynomial entries, entry `i` placed in component `offset + i`.
    pub fn from_polys(k: &PrimeField, ord: &ModuleOrder, entries: &[Polynomial], offset: u32) -> ModVec {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            for &(m, c) in p.terms() {
                terms.push((ModTerm { mono: m, comp: offset + i as u32 }, c));
            }
        }
        ModVec::from_terms(k, ord, terms)
    }

    /// Polynomial entries for components `lo..hi`, re-indexed from zero.
    pub fn to_polys(&self, ring: &Arc<PolynomialRing>, lo: u32, hi: u32) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); (hi - lo) as usize];
        for &(t, c) in &self.terms {
            if t.comp >= lo && t.comp < hi {
                buckets[(t.comp - lo) as usize].push((t.mono, c));
            }
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect()
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, k: &PrimeField, ord: &ModuleOrder, other: &ModVec, c: u32, m: &Monomial) -> ModVec {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bt = ModTerm { mono: b[j].0.mono.mul(m), comp: b[j].0.comp };
            match ord.compare(&a[i].0, &bt) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bt, k.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = k.mul_add(a[i].1, b[j].1, c);
                    if s != 0 {
                        out.push((bt, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((ModTerm { mono: t.0.mono.mul(m), comp: t.0.comp }, k.mul(t.1, c)));
        }
        ModVec { terms: out }
    }

    pub fn scale(&self, k: &PrimeField, c: u32) -> ModVec {
        if c == 0 {
            return ModVec::default();
        }
        ModVec { terms: self.terms.iter().map(|&(t, a)| (t, k.mul(a, c))).collect() }
    }

    pub fn make_monic(&self, k: &PrimeField) -> ModVec {
        match self.lead() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(k, k.inv(c)),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ModVec {
        ModVec {
            terms: self.terms.iter().map(|&(t, c)| (ModTerm { mono: t.mono.mul(m), comp: t.comp }, c)).collect(),
        }
    }
}
