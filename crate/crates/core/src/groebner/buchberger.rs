//! Buchberger's algorithm for homogeneous submodules of graded free modules,
//! processing critical pairs degree by degree with the Gebauer–Möller
//! pair-elimination criteria.

use std::collections::HashMap;

use super::module::{ModTerm, ModVec, ModuleOrder};
use crate::field::PrimeField;
use crate::monomial::Monomial;

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ModTerm,
    degree: i32,
}

/// Leading-term index of a basis, grouped by component.
#[derive(Debug, Default, Clone)]
pub struct DivisorIndex {
    by_comp: HashMap<u32, Vec<usize>>,
}

impl DivisorIndex {
    pub fn push(&mut self, idx: usize, lead: &ModTerm) {
        self.by_comp.entry(lead.comp).or_default().push(idx);
    }

    pub fn find(&self, basis: &[ModVec], t: &ModTerm) -> Option<usize> {
        self.by_comp.get(&t.comp)?.iter().copied().find(|&g| basis[g].terms[0].0.mono.divides(&t.mono))
    }
}

/// Fully reduces `f` by monic `basis`. When `quotients` is given, the
/// multiplier used for each basis element is accumulated into it.
pub fn reduce_full(
    k: &PrimeField,
    ord: &ModuleOrder,
    f: &ModVec,
    basis: &[ModVec],
    index: &DivisorIndex,
    mut quotients: Option<&mut Vec<Vec<(Monomial, u32)>>>,
) -> ModVec {
    let mut done: Vec<(ModTerm, u32)> = Vec::new();
    let mut rest = f.clone();
    loop {
        let hit = rest.terms.iter().enumerate().find_map(|(pos, (t, _))| index.find(basis, t).map(|g| (pos, g)));
        let Some((pos, g)) = hit else { break };
        let (t, c) = rest.terms[pos];
        done.extend_from_slice(&rest.terms[..pos]);
        let tail = ModVec { terms: rest.terms[pos..].to_vec() };
        let lt = basis[g].terms[0].0;
        let m = lt.mono.quotient_of(&t.mono).expect("divisor");
        if let Some(q) = quotients.as_deref_mut() {
            q[g].push((m, c));
        }
        rest = tail.add_scaled(k, ord, &basis[g], k.neg(c), &m);
    }
    done.extend(rest.terms);
    ModVec { terms: done }
}

fn lcm_term(a: &ModTerm, b: &ModTerm) -> ModTerm {
    ModTerm { mono: a.mono.lcm(&b.mono), comp: a.comp }
}

fn s_vector(k: &PrimeField, ord: &ModuleOrder, f: &ModVec, g: &ModVec, lcm: &ModTerm) -> ModVec {
    let mf = f.terms[0].0.mono.quotient_of(&lcm.mono).expect("lcm");
    let mg = g.terms[0].0.mono.quotient_of(&lcm.mono).expect("lcm");
    f.mul_monomial(&mf).add_scaled(k, ord, g, k.neg(1), &mg)
}

/// Gebauer–Möller update for a newly added basis element `h`.
fn update_pairs(basis: &[ModVec], pairs: &mut Vec<Pair>, h: usize, ord: &ModuleOrder, product_criterion: bool) {
    let th = basis[h].terms[0].0;
    // chain criterion on existing pairs
    pairs.retain(|p| {
        if p.lcm.comp != th.comp || !th.mono.divides(&p.lcm.mono) {
            return true;
        }
        let li = lcm_term(&basis[p.i].terms[0].0, &th);
        let lj = lcm_term(&basis[p.j].terms[0].0, &th);
        li == p.lcm || lj == p.lcm
    });
    let mut cand: Vec<(usize, ModTerm, bool)> = Vec::new();
    for (g, gv) in basis[..h].iter().enumerate() {
        let tg = gv.terms[0].0;
        if tg.comp != th.comp {
            continue;
        }
        cand.push((g, lcm_term(&tg, &th), product_criterion && tg.mono.is_coprime(&th.mono)));
    }
    // drop pairs whose lcm is properly divisible by another candidate lcm
    let lcms: Vec<Monomial> = cand.iter().map(|c| c.1.mono).collect();
    let mut kept: Vec<(usize, ModTerm, bool)> = Vec::new();
    for c in &cand {
        let dominated = lcms.iter().any(|l| l != &c.1.mono && l.divides(&c.1.mono));
        if !dominated {
            kept.push(*c);
        }
    }
    // one pair per equal lcm; a coprime pair discards its whole class
    let mut by_lcm: Vec<(Monomial, Vec<(usize, ModTerm, bool)>)> = Vec::new();
    for c in kept {
        match by_lcm.iter_mut().find(|e| e.0 == c.1.mono) {
            Some(e) => e.1.push(c),
            None => by_lcm.push((c.1.mono, vec![c])),
        }
    }
    for (_, class) in by_lcm {
        if class.iter().any(|c| c.2) {
            continue;
        }
        let (g, lcm, _) = class[0];
        pairs.push(Pair { i: g, j: h, lcm, degree: ord.degree(&lcm) });
    }
}

/// Reduced Gröbner basis of the submodule generated by homogeneous `gens`.
/// Elements are monic and sorted by ascending leading term.
pub fn groebner_basis(k: &PrimeField, ord: &ModuleOrder, gens: &[ModVec]) -> Vec<ModVec> {
    let product_criterion = ord.rank() == 1;
    let mut pending: Vec<ModVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    pending.sort_by_key(|g| ord.degree(&g.terms[0].0));
    let mut pending = std::collections::VecDeque::from(pending);
    let mut basis: Vec<ModVec> = Vec::new();
    let mut index = DivisorIndex::default();
    let mut pairs: Vec<Pair> = Vec::new();
    loop {
        let dp = pairs.iter().map(|p| p.degree).min();
        let dg = pending.front().map(|g| ord.degree(&g.terms[0].0));
        let d = match (dp, dg) {
            (None, None) => break,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut todo: Vec<ModVec> = Vec::new();
        let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.degree == d);
        pairs = later;
        for p in now {
            todo.push(s_vector(k, ord, &basis[p.i], &basis[p.j], &p.lcm));
        }
        while pending.front().is_some_and(|g| ord.degree(&g.terms[0].0) == d) {
            todo.push(pending.pop_front().unwrap());
        }
        for f in todo {
            let h = reduce_full(k, ord, &f, &basis, &index, None);
            if h.is_zero() {
                continue;
            }
            let h = h.make_monic(k);
            index.push(basis.len(), &h.terms[0].0);
            basis.push(h);
            update_pairs(&basis, &mut pairs, basis.len() - 1, ord, product_criterion);
        }
    }
    interreduce(k, ord, basis)
}

fn interreduce(k: &PrimeField, ord: &ModuleOrder, mut basis: Vec<ModVec>) -> Vec<ModVec> {
    basis.sort_by(|a, b| ord.compare(&a.terms[0].0, &b.terms[0].0));
    let mut minimal: Vec<ModVec> = Vec::new();
    for g in basis {
        let lt = g.terms[0].0;
        if minimal.iter().any(|m| m.terms[0].0.comp == lt.comp && m.terms[0].0.mono.divides(&lt.mono)) {
            continue;
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<ModVec> = minimal.iter().enumerate().filter(|e| e.0 != i).map(|e| e.1.clone()).collect();
        let mut idx = DivisorIndex::default();
        for (j, o) in others.iter().enumerate() {
            idx.push(j, &o.terms[0].0);
        }
        let lead = ModVec { terms: vec![minimal[i].terms[0]] };
        let tail = ModVec { terms: minimal[i].terms[1..].to_vec() };
        let tail = reduce_full(k, ord, &tail, &others, &idx, None);
        let mut terms = lead.terms;
        terms.extend(tail.terms);
        out.push(ModVec { terms }.make_monic(k));
    }
    out
}
