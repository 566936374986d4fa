//! Iterated trimming complexes, the resolution of `R/𝔞I` for a complete
//! intersection `𝔞 ⊆ I`, the split-injection Golod test, and the two closed
//! form products on these resolutions.

use std::fmt;

use crate::complex::{mapping_cone, minimalize, vec_add_scaled, ChainComplex, ComplexMorphism, GradedFreeModule, Matrix, Vector};
use crate::dg::{collect_sorted, comparison_maps, koszul_product, ComparisonMaps, DgProduct, Lifter};
use crate::error::{Error, Result};
use crate::groebner::{is_regular_sequence, Ideal};
use crate::homology::{default_strand_bound, is_exact_through};
use crate::koszul::subset_of;
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::Polynomial;
use crate::resolutions::minimal_free_resolution;

/// Inputs and intermediate maps of a trimming construction.
#[derive(Debug, Clone)]
pub struct TrimmingData {
    pub ideal: Ideal,
    /// Minimal resolution of `R/I`; `F_1` has the minimal generators as basis.
    pub resolution: ChainComplex,
    /// Trimmed positions among the minimal generators (0-based).
    pub sigma: Vec<usize>,
    pub a_ideals: Vec<Ideal>,
    /// Resolutions of `R/𝔞_s`, unshifted.
    pub g_resolutions: Vec<ChainComplex>,
    /// `q_maps[s][k-1] = q_k^s : F_{k+1} -> G^s_k`.
    pub q_maps: Vec<Vec<Matrix>>,
    pub trimmed_ideal: Ideal,
    pub morphism: ComplexMorphism,
    /// Mapping cone before minimalization.
    pub cone: ChainComplex,
}

impl TrimmingData {
    /// `Q_k = (q_k^s)_s : F_{k+1} -> ⊕_s G^s_k`.
    pub fn stacked_q(&self, k: usize) -> Matrix {
        self.morphism.maps[k].clone()
    }
}

/// Checks that a complex resolves `R/J`: cyclic degree-zero `C_0`, image of
/// `d_1` equal to `J`, and vanishing positive homology through `bound`.
pub fn resolves_quotient(c: &ChainComplex, j: &Ideal, bound: i64) -> Result<bool> {
    if c.rank(0) != 1 || c.module(0).degrees[0] != 0 {
        return Ok(false);
    }
    let gens: Vec<Polynomial> = c.d(1).cols.iter().flat_map(|col| col.iter().map(|e| e.1.clone())).collect();
    let image = Ideal::new(c.ring(), gens)?;
    Ok(image.equals(j)? && is_exact_through(c, bound))
}

fn shifted(degrees: &[i32], by: i32) -> Vec<i32> {
    degrees.iter().map(|d| d + by).collect()
}

fn entry_ideal(ring: &std::sync::Arc<crate::poly::PolynomialRing>, row: &[Polynomial]) -> Result<Ideal> {
    let raw = Ideal::new(ring, row.iter().filter(|p| !p.is_zero()).cloned().collect())?;
    let min = raw.minimal_generators().to_vec();
    Ideal::new(ring, min)
}

/// Trimming data and the cone; `a_ideals` defaults to the ideal of entries
/// of each trimmed row of `d_2`.
pub fn trimming_data(ideal: &Ideal, sigma: &[usize], a_ideals: Option<&[Ideal]>) -> Result<TrimmingData> {
    let ring = ideal.ring();
    let f = minimal_free_resolution(ideal)?;
    let mu = f.rank(1);
    if sigma.is_empty() {
        return Err(Error::precondition("σ must be nonempty"));
    }
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sigma.len() || sorted.iter().any(|&s| s >= mu) {
        return Err(Error::precondition(format!("σ must list distinct generator positions below {mu}")));
    }
    let sigma = sorted;
    let gens = ideal.minimal_generators().to_vec();
    let d1 = f.d(1);
    let d2 = f.d(2);
    let rows: Vec<Vec<Polynomial>> = sigma
        .iter()
        .map(|&s| (0..f.rank(2)).map(|c| d2.get(s, c).cloned().unwrap_or_else(|| Polynomial::zero(ring))).collect())
        .collect();
    let a_ideals: Vec<Ideal> = match a_ideals {
        Some(list) => {
            if list.len() != sigma.len() {
                return Err(Error::precondition("one ideal per trimmed generator required"));
            }
            list.to_vec()
        }
        None => rows.iter().map(|row| entry_ideal(ring, row)).collect::<Result<_>>()?,
    };
    for ((s, row), a) in sigma.iter().zip(&rows).zip(&a_ideals) {
        if !a.is_proper() {
            return Err(Error::precondition(format!("trimming ideal {a} is not proper")));
        }
        for (c, p) in row.iter().enumerate() {
            if !a.contains(p) {
                return Err(Error::precondition(format!("entry ({}, {}) = {p} of d_2 does not lie in {a}", s + 1, c + 1)));
            }
        }
    }
    let g_res: Vec<ChainComplex> = a_ideals.iter().map(minimal_free_resolution).collect::<Result<_>>()?;
    let gdeg: Vec<i32> = sigma.iter().map(|&s| f.module(1).degrees[s]).collect();

    // q maps
    let lenf = f.len();
    let mut q_maps: Vec<Vec<Matrix>> = Vec::with_capacity(sigma.len());
    for (si, g) in g_res.iter().enumerate() {
        let mut lifter = Lifter::new(g);
        let mut qs: Vec<Matrix> = Vec::new();
        for k in 1..lenf {
            let mut cols = Vec::with_capacity(f.rank(k + 1));
            for c in 0..f.rank(k + 1) {
                let target: Vector = if k == 1 {
                    let p = &rows[si][c];
                    if p.is_zero() {
                        Vec::new()
                    } else {
                        vec![(0, p.clone())]
                    }
                } else {
                    qs[k - 2].apply(&f.d(k + 1).cols[c])
                };
                let x = if target.is_empty() {
                    Vec::new()
                } else {
                    lifter.lift(&target, k).map_err(|e| Error::internal(format!("q_{k} lift failed: {e}")))?
                };
                cols.push(x);
            }
            qs.push(Matrix::from_columns(g.rank(k), cols));
        }
        q_maps.push(qs);
    }

    // source: F_1' <- F_2 <- F_3 ...
    let keep: Vec<usize> = (0..mu).filter(|j| !sigma.contains(j)).collect();
    let mut s_modules = vec![GradedFreeModule::new(keep.iter().map(|&j| f.module(1).degrees[j]).collect())];
    let mut s_diffs = Vec::new();
    for k in 2..=lenf {
        s_modules.push(f.module(k).clone());
        let d = f.d(k);
        if k == 2 {
            let pos: std::collections::HashMap<usize, usize> = keep.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let cols = d.cols.iter().map(|col| col.iter().filter_map(|(r, p)| pos.get(r).map(|&a| (a, p.clone()))).collect()).collect();
            s_diffs.push(Matrix::from_columns(keep.len(), cols));
        } else {
            s_diffs.push(d);
        }
    }
    let source = ChainComplex::new(ring, s_modules, s_diffs)?;

    // target: R <- ⊕ G^s_1 <- ⊕ G^s_2 ...
    let lent = g_res.iter().map(|g| g.len()).max().unwrap_or(0).max(1);
    let offsets: Vec<Vec<usize>> = (0..=lent)
        .map(|k| {
            let mut acc = 0;
            g_res.iter().map(|g| {
                let o = acc;
                acc += g.rank(k);
                o
            })
            .collect()
        })
        .collect();
    let total = |k: usize| g_res.iter().map(|g| g.rank(k)).sum::<usize>();
    let mut t_modules = vec![GradedFreeModule::new(vec![0])];
    let mut t_diffs = Vec::new();
    for k in 1..=lent {
        let mut degs = Vec::new();
        for (si, g) in g_res.iter().enumerate() {
            degs.extend(shifted(&g.module(k).degrees, gdeg[si]));
        }
        t_modules.push(GradedFreeModule::new(degs));
        let mut cols = Vec::new();
        for (si, g) in g_res.iter().enumerate() {
            let gen = &gens[sigma[si]];
            for col in g.d(k).cols {
                if k == 1 {
                    let v: Vector = col.iter().map(|(_, p)| (0, (gen * p).neg())).collect();
                    cols.push(v);
                } else {
                    cols.push(col.into_iter().map(|(r, p)| (offsets[k - 1][si] + r, p)).collect());
                }
            }
        }
        t_diffs.push(Matrix::from_columns(if k == 1 { 1 } else { total(k - 1) }, cols));
    }
    let target = ChainComplex::new(ring, t_modules, t_diffs)?;

    // morphism
    let mut maps = vec![Matrix::from_columns(1, keep.iter().map(|&j| d1.cols[j].clone()).collect())];
    for k in 1..lenf {
        let mut cols = vec![Vec::new(); f.rank(k + 1)];
        for (si, qs) in q_maps.iter().enumerate() {
            for (c, col) in qs[k - 1].cols.iter().enumerate() {
                cols[c].extend(col.iter().map(|(r, p)| (offsets[k][si] + r, p.clone())));
            }
        }
        for col in &mut cols {
            col.sort_by_key(|e| e.0);
        }
        maps.push(Matrix::from_columns(target.rank(k), cols));
    }
    let morphism = ComplexMorphism::new(source, target, maps)?;
    let cone = mapping_cone(&morphism)?;

    let mut jgens: Vec<Polynomial> = keep.iter().map(|&j| gens[j].clone()).collect();
    for (si, a) in a_ideals.iter().enumerate() {
        for p in a.minimal_generators() {
            jgens.push(p * &gens[sigma[si]]);
        }
    }
    let trimmed_ideal = Ideal::new(ring, jgens)?;
    Ok(TrimmingData {
        ideal: ideal.clone(),
        resolution: f,
        sigma,
        a_ideals,
        g_resolutions: g_res,
        q_maps,
        trimmed_ideal,
        morphism,
        cone,
    })
}

/// Trimming complex with its minimalized cone. `H_0 = R/J` is verified.
pub fn build_trimming_complex(ideal: &Ideal, sigma: &[usize], a_ideals: Option<&[Ideal]>) -> Result<(TrimmingData, ChainComplex)> {
    let data = trimming_data(ideal, sigma, a_ideals)?;
    let minimal = minimalize(&data.cone);
    let gens: Vec<Polynomial> = data.cone.d(1).cols.iter().flat_map(|c| c.iter().map(|e| e.1.clone())).collect();
    if !Ideal::new(ideal.ring(), gens)?.equals(&data.trimmed_ideal)? {
        return Err(Error::internal("trimming cone does not present R/J"));
    }
    Ok((data, minimal))
}

/// `tm_σ(I)`: trimming with every `𝔞_s = m`.
pub fn tm_sigma(ideal: &Ideal, sigma: &[usize]) -> Result<(TrimmingData, ChainComplex)> {
    let m = Ideal::maximal(ideal.ring());
    let a = vec![m; sigma.len()];
    build_trimming_complex(ideal, sigma, Some(&a))
}

/// The resolution of `R/𝔞I` as a mapping cone of `Φ : K_{•+1} -> F_• ⊗ K_1`.
#[derive(Debug, Clone)]
pub struct ProductResolution {
    pub maps: ComparisonMaps,
    pub product_ideal: Ideal,
    pub cone: ChainComplex,
    /// `cone` itself when it is already minimal.
    pub minimal: ChainComplex,
    pub was_minimal: bool,
    pub a_in_m_i: bool,
}

impl ProductResolution {
    pub fn m(&self) -> usize {
        self.maps.m()
    }

    /// Offset of `F_j ⊗ K_1` inside `T_j` (the Koszul block comes first).
    pub fn tensor_offset(&self, j: usize) -> usize {
        if j >= 1 {
            self.maps.algebra.basis(j + 1).len()
        } else {
            0
        }
    }
}

/// Builds and verifies the cone for a complete intersection `𝔞 ⊆ I`.
pub fn product_ci_resolution(a: &Ideal, i: &Ideal) -> Result<ProductResolution> {
    product_ci_resolution_bounded(a, i, None)
}

pub fn product_ci_resolution_bounded(a: &Ideal, i: &Ideal, strand_bound: Option<i64>) -> Result<ProductResolution> {
    let ring = a.ring();
    let f = minimal_free_resolution(i)?;
    let product = DgProduct::build(&f)?;
    let cm = comparison_maps(a, i, product)?;
    let m = cm.m();
    let fgens = &cm.a_generators;

    if m == 0 {
        return Err(Error::precondition("𝔞 must be nonzero"));
    }
    let mut s_modules = vec![GradedFreeModule::default()];
    let mut s_diffs = vec![Matrix::zero(0, cm.koszul.rank(2))];
    for j in 1..m {
        s_modules.push(cm.koszul.module(j + 1).clone());
        if j >= 2 {
            s_diffs.push(cm.koszul.d(j + 1));
        }
    }
    if m == 1 {
        s_diffs.clear();
    }
    let source = ChainComplex::new(ring, s_modules, s_diffs)?;

    let fdeg: Vec<i32> = fgens.iter().map(|g| g.total_degree().unwrap() as i32).collect();
    let mut t_modules = vec![GradedFreeModule::new(vec![0])];
    let mut t_diffs = Vec::new();
    for j in 1..=f.len() {
        let mut degs = Vec::new();
        for &d in &f.module(j).degrees {
            degs.extend(fdeg.iter().map(|e| d + e));
        }
        t_modules.push(GradedFreeModule::new(degs));
        if j == 1 {
            let d1 = f.d(1);
            let mut cols = Vec::new();
            for col in &d1.cols {
                for g in fgens {
                    let v: Vector = col.iter().map(|(_, p)| (0, (p * g).neg())).collect();
                    cols.push(v);
                }
            }
            t_diffs.push(Matrix::from_columns(1, cols));
        } else {
            t_diffs.push(cm.tensor_k1_differential(j));
        }
    }
    let target = ChainComplex::new(ring, t_modules, t_diffs)?;
    let mut maps = vec![Matrix::zero(1, 0)];
    for j in 1..m {
        let phi = &cm.phi[j + 1];
        maps.push(Matrix::from_columns(target.rank(j), phi.cols.clone()));
    }
    let morphism = ComplexMorphism::new(source, target, maps)?;
    let cone = mapping_cone(&morphism).map_err(|e| Error::internal(format!("Φ is not a chain map: {e}")))?;

    let product_ideal = a.product(i)?;
    let bound = strand_bound.unwrap_or_else(|| default_strand_bound(&product_ideal, cone.len()));
    if !resolves_quotient(&cone, &product_ideal, bound)? {
        return Err(Error::internal("product cone does not resolve R/𝔞I"));
    }
    let a_in_m_i = a.is_contained_in_m_times(i)?;
    let was_minimal = cone.is_minimal();
    if a_in_m_i && !was_minimal {
        return Err(Error::internal("cone has unit entries although 𝔞 ⊆ mI"));
    }
    let minimal = if was_minimal { cone.clone() } else { minimalize(&cone) };
    Ok(ProductResolution { maps: cm, product_ideal, cone, minimal, was_minimal, a_in_m_i })
}

/// Outcome of the split-injection test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitInjectionReport {
    pub certified: bool,
    /// `(k, rank of Q_k ⊗ k, rank of F_{k+1})`.
    pub ranks: Vec<(usize, usize, usize)>,
}

/// Trims every generator of `I` by `J` and tests whether each `Q_k ⊗ k` is
/// injective. Requires `Fitt(I) ⊆ J`.
pub fn split_injection_check(i: &Ideal, j: &Ideal) -> Result<SplitInjectionReport> {
    let fitt = i.fitting_ideal()?;
    if !fitt.is_contained_in(j)? {
        return Err(Error::precondition(format!(
            "Fitting ideal {fitt} of {i} is not contained in {j}; trimming one generator at a time is not supported"
        )));
    }
    let mu = i.mu();
    let sigma: Vec<usize> = (0..mu).collect();
    let a = vec![j.clone(); mu];
    let data = trimming_data(i, &sigma, Some(&a))?;
    let k = *i.ring().field();
    let mut ranks = Vec::new();
    for kk in 1..data.resolution.len() {
        let q = data.stacked_q(kk);
        let consts: Vec<SparseVec> =
            q.constant_part().into_iter().map(|c| linalg::normalize(&k, c.into_iter().map(|(r, v)| (r as u32, v)).collect())).collect();
        ranks.push((kk, linalg::rank(&k, &consts), q.ncols()));
    }
    let certified = ranks.iter().all(|(_, r, n)| r == n);
    Ok(SplitInjectionReport { certified, ranks })
}

/// The degree-4 element `-g_{ij} ∧ g_{kl}` of the Koszul block of `T_4`.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub indices: [usize; 4],
    /// Coordinates in `K_4`, equal to the Koszul-block coordinates in `T_4`.
    pub element: Vector,
    pub nontrivial: bool,
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.indices;
        write!(f, "g_{{{i}{j}}}·g_{{{k}{l}}}")
    }
}

/// Evaluates the witness product for 1-based generator indices of `𝔞`.
pub fn nongolod_witness_product(a: &Ideal, i: &Ideal, idx: [usize; 4]) -> Result<WitnessReport> {
    let ring = a.ring();
    let gens = a.minimal_generators().to_vec();
    let m = gens.len();
    if m < 4 {
        return Err(Error::precondition(format!("the witness needs at least four generators of 𝔞, found {m}")));
    }
    if !a.is_contained_in_m_times(i)? {
        return Err(Error::precondition(format!("{a} is not contained in m·{i}")));
    }
    if !is_regular_sequence(ring, &gens)? {
        return Err(Error::precondition(format!("{a} is not a complete intersection")));
    }
    if idx.iter().any(|&x| x == 0 || x > m) || idx[0] == idx[1] || idx[2] == idx[3] {
        return Err(Error::precondition("indices must name distinct pairs of generators"));
    }
    let alg = crate::koszul::KoszulAlgebra::new(m);
    let one = Polynomial::one(ring);
    let pair = |p: usize, q: usize| -> Vector {
        let e = |x: usize| vec![(x - 1, one.clone())];
        koszul_product(&alg, 1, &e(p), 1, &e(q))
    };
    let gij = pair(idx[0], idx[1]);
    let gkl = pair(idx[2], idx[3]);
    let w: Vector = koszul_product(&alg, 2, &gij, 2, &gkl).into_iter().map(|(s, p)| (s, p.neg())).collect();
    let nontrivial = w.iter().any(|e| e.1.constant_coefficient() != 0);
    Ok(WitnessReport { indices: idx, element: w, nontrivial })
}

/// Which branch of the case analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree3Case {
    /// `I` is a complete intersection and `L_1(K_1) ⊆ mF_1`.
    CompleteIntersectionL1InMaximal,
    /// `I` is a complete intersection and no `L_2(g_{ij})` lies in `mF_2`.
    CompleteIntersectionSplit,
    /// `I` is a complete intersection with some `L_2(g_{ij})` in `mF_2` and some not.
    CompleteIntersectionMixed,
    NotCompleteIntersection,
}

impl fmt::Display for Degree3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Degree3Case::CompleteIntersectionL1InMaximal => "Case 1 (I complete intersection, L_1(K_1) ⊆ mF_1)",
            Degree3Case::CompleteIntersectionSplit => "Case 1 (I complete intersection, all L_2(g_ij) ∉ mF_2)",
            Degree3Case::CompleteIntersectionMixed => "Case 1 (I complete intersection, mixed L_2 membership)",
            Degree3Case::NotCompleteIntersection => "Case 2 (I not a complete intersection)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct Degree3Report {
    pub case: Degree3Case,
    pub trivial: bool,
    /// `(basis index in F_1 ⊗ K_1, index of the K_2 cycle)` for products that survive.
    pub nontrivial: Vec<(usize, usize)>,
    pub k2_cycles: usize,
    pub pairs_checked: usize,
}

/// Evaluates `(f ⊗ g_r)·g_{st} = d(f) g_r ∧ g_{st} + (f · L_2(g_{st})) ⊗ g_r`
/// on `T_1 ⊗ k` times the cycles of `T_2 ⊗ k` in the Koszul block, and tests
/// the results against `m T_3 + im(d_4)`.
pub fn degree3_product_check(a: &Ideal, i: &Ideal) -> Result<Degree3Report> {
    if a.ring().nvars() != 3 {
        return Err(Error::precondition("the degree-3 product check works in three variables"));
    }
    let pr = product_ci_resolution(a, i)?;
    let i_ci = is_regular_sequence(i.ring(), i.minimal_generators())?;
    degree3_report(&pr, &pr.maps, i_ci)
}

/// As [`degree3_product_check`] with explicitly supplied comparison maps.
pub fn degree3_report(pr: &ProductResolution, cm: &ComparisonMaps, i_is_ci: bool) -> Result<Degree3Report> {
    let f = cm.resolution();
    let ring = f.ring();
    let k = *ring.field();
    let m = cm.m();
    let alg = &cm.algebra;
    let consts = |v: &Vector| -> SparseVec {
        linalg::normalize(&k, v.iter().filter(|e| e.1.constant_coefficient() != 0).map(|(j, p)| (*j as u32, p.constant_coefficient())).collect())
    };
    let l1_in_m = cm.l.get(1).is_some_and(|l| !l.has_unit_entry());
    let l2_units: Vec<bool> =
        cm.l.get(2).map(|l| l.cols.iter().map(|c| c.iter().any(|e| e.1.constant_coefficient() != 0)).collect()).unwrap_or_default();
    let case = if !i_is_ci {
        Degree3Case::NotCompleteIntersection
    } else if l1_in_m {
        Degree3Case::CompleteIntersectionL1InMaximal
    } else if !l2_units.is_empty() && l2_units.iter().all(|&u| u) {
        Degree3Case::CompleteIntersectionSplit
    } else {
        Degree3Case::CompleteIntersectionMixed
    };

    // cycles of T_2 ⊗ k inside the Koszul block: kernel of Φ_2 ⊗ k
    let phi2: Vec<SparseVec> = cm.phi.get(2).map(|p| p.cols.iter().map(consts).collect()).unwrap_or_default();
    let cycles = linalg::kernel_basis(&k, &phi2);

    // boundaries of T_3 ⊗ k
    let t = &pr.cone;
    let mut bounds = Echelon::new(k);
    for col in t.d(4).cols.iter() {
        bounds.insert(&consts(col));
    }
    let k3 = alg.basis(3).len();
    let mut nontrivial = Vec::new();
    let mut pairs = 0;
    if let Some(l2) = cm.l.get(2) {
        for fa in 0..f.rank(1) {
            for r in 0..m {
                let df = f.d(1).cols[fa].first().map(|e| e.1.clone()).unwrap_or_else(|| Polynomial::zero(ring));
                for (zi, z) in cycles.iter().enumerate() {
                    pairs += 1;
                    let mut acc: Vector = Vec::new();
                    for &(st, c) in z {
                        let c = Polynomial::constant(ring, c);
                        let s = alg.basis(2)[st as usize];
                        let gr = subset_of(&[r]);
                        let mut kpart: Vector = Vec::new();
                        if let Some((neg, u)) = crate::koszul::wedge(gr, s) {
                            let coef = if neg { df.neg() } else { df.clone() };
                            kpart.push((alg.index_of(u), coef));
                        }
                        let fpart = cm.product.multiply(1, &vec![(fa, Polynomial::one(ring))], 2, &l2.cols[st as usize]);
                        let mut v = kpart;
                        v.extend(fpart.into_iter().map(|(b, p)| (k3 + b * m + r, p)));
                        acc = vec_add_scaled(&acc, &c, &collect_sorted(v));
                    }
                    let reduced = bounds.reduce(&consts(&acc));
                    if !reduced.is_empty() {
                        nontrivial.push((fa * m + r, zi));
                    }
                }
            }
        }
    }
    Ok(Degree3Report { case, trivial: nontrivial.is_empty(), nontrivial, k2_cycles: cycles.len(), pairs_checked: pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolynomialRing;
    use crate::resolutions::betti_table;
    use std::sync::Arc;

    fn vars(r: &Arc<PolynomialRing>) -> Vec<Polynomial> {
        (0..r.nvars()).map(|i| Polynomial::variable(r, i)).collect()
    }

    #[test]
    fn trimming_maximal_ideal_gives_square() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        let (data, minimal) = tm_sigma(&m, &[0, 1, 2]).unwrap();
        assert!(data.trimmed_ideal.equals(&m.product(&m).unwrap()).unwrap());
        assert!(data.cone.compose_check());
        assert_eq!(betti_table(&minimal).unwrap().totals(), vec![1, 6, 8, 3]);
        assert!(resolves_quotient(&data.cone, &data.trimmed_ideal, 8).unwrap());
    }

    #[test]
    fn trimming_principal_ideal() {
        let r = PolynomialRing::standard(3);
        let x = Ideal::monomial(&r, &[&[1, 0, 0]]);
        let (data, minimal) = tm_sigma(&x, &[0]).unwrap();
        assert!(data.trimmed_ideal.equals(&x.product(&Ideal::maximal(&r)).unwrap()).unwrap());
        assert!(resolves_quotient(&minimal, &data.trimmed_ideal, 8).unwrap());
    }

    #[test]
    fn trimming_preconditions() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        assert!(build_trimming_complex(&m, &[], None).is_err());
        let v = vars(&r);
        let small = Ideal::new(&r, vec![v[2].clone()]).unwrap();
        let err = build_trimming_complex(&m, &[0], Some(&[small])).unwrap_err();
        assert!(err.to_string().contains("does not lie in"));
    }

    #[test]
    fn default_entry_ideal_trimming() {
        let r = PolynomialRing::standard(3);
        let i = Ideal::monomial(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 0, 3]]);
        let (data, minimal) = build_trimming_complex(&i, &[0], None).unwrap();
        assert!(resolves_quotient(&minimal, &data.trimmed_ideal, 10).unwrap());
        assert!(resolves_quotient(&data.cone, &data.trimmed_ideal, 10).unwrap());
    }

    #[test]
    fn product_resolution_squares_times_maximal() {
        let r = PolynomialRing::standard(3);
        let v = vars(&r);
        let m = Ideal::maximal(&r);
        let a = Ideal::new(&r, v.iter().map(|x| x * x).collect()).unwrap();
        let pr = product_ci_resolution(&a, &m).unwrap();
        assert!(pr.was_minimal);
        assert_eq!(pr.cone.ranks(), vec![1, 9, 12, 4]);
        let direct = minimal_free_resolution(&pr.product_ideal).unwrap();
        assert_eq!(betti_table(&pr.cone).unwrap(), betti_table(&direct).unwrap());
    }

    #[test]
    fn product_resolution_identity_case_minimalizes() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        let pr = product_ci_resolution(&m, &m).unwrap();
        assert!(!pr.was_minimal);
        assert_eq!(betti_table(&pr.minimal).unwrap().totals(), vec![1, 6, 8, 3]);
    }

    #[test]
    fn split_injection_examples() {
        let r = PolynomialRing::standard(3);
        let v = vars(&r);
        let m = Ideal::maximal(&r);
        let xy = Ideal::new(&r, vec![v[0].clone(), v[1].clone()]).unwrap();
        assert!(split_injection_check(&xy, &m).unwrap().certified);
        let sq = Ideal::new(&r, vec![&v[0] * &v[0], &v[1] * &v[1]]).unwrap();
        assert!(!split_injection_check(&sq, &m).unwrap().certified);
        let sq3 = Ideal::new(&r, vec![&v[0] * &v[0], &v[0] * &v[1]]).unwrap();
        let small = Ideal::new(&r, vec![v[2].clone()]).unwrap();
        assert!(split_injection_check(&sq3, &small).is_err());
    }

    #[test]
    fn witness_examples() {
        let r = PolynomialRing::standard(4);
        let v = vars(&r);
        let m = Ideal::maximal(&r);
        let a = Ideal::new(&r, v.iter().map(|x| x * x).collect()).unwrap();
        let w = nongolod_witness_product(&a, &m, [1, 2, 3, 4]).unwrap();
        assert!(w.nontrivial);
        assert_eq!(w.element, vec![(0, Polynomial::one(&r).neg())]);
        assert_eq!(w.to_string(), "g_{12}·g_{34}");
        let w = nongolod_witness_product(&a, &m, [1, 2, 1, 3]).unwrap();
        assert!(!w.nontrivial);
        let r3 = PolynomialRing::standard(3);
        let v3 = vars(&r3);
        let a3 = Ideal::new(&r3, v3.iter().map(|x| x * x).collect()).unwrap();
        assert!(nongolod_witness_product(&a3, &Ideal::maximal(&r3), [1, 2, 3, 1]).is_err());
    }

    #[test]
    fn degree3_examples() {
        let r = PolynomialRing::standard(3);
        let v = vars(&r);
        let m = Ideal::maximal(&r);
        let a = Ideal::new(&r, v.iter().map(|x| x * x).collect()).unwrap();
        let rep = degree3_product_check(&a, &m).unwrap();
        assert!(rep.trivial);
        let rep = degree3_product_check(&m, &m).unwrap();
        assert!(rep.trivial);
        assert_eq!(rep.k2_cycles, 0);
        let r4 = PolynomialRing::standard(4);
        assert!(degree3_product_check(&Ideal::maximal(&r4), &Ideal::maximal(&r4)).is_err());
    }

    #[test]
    fn degree3_branch_bookkeeping() {
        let r = PolynomialRing::standard(3);
        let v = vars(&r);
        // I = (x, y, z^2), 𝔞 = (x^2, y, z^2): L_1 mixes units and non-units
        let i = Ideal::new(&r, vec![v[0].clone(), v[1].clone(), &v[2] * &v[2]]).unwrap();
        let a = Ideal::new(&r, vec![&v[0] * &v[0], v[1].clone(), &v[2] * &v[2]]).unwrap();
        let pr = product_ci_resolution(&a, &i).unwrap();
        let rep = degree3_report(&pr, &pr.maps, true).unwrap();
        assert_eq!(rep.case, Degree3Case::CompleteIntersectionMixed);
        assert!(rep.trivial);
        let mut cm = pr.maps.clone();
        for col in &mut cm.l[2].cols {
            col.push((0, Polynomial::one(&r)));
            col.sort_by_key(|e| e.0);
            let merged = collect_sorted(std::mem::take(col));
            *col = merged;
        }
        let rep = degree3_report(&pr, &cm, true).unwrap();
        assert_eq!(rep.case, Degree3Case::CompleteIntersectionSplit);
        let sq = Ideal::new(&r, v.iter().map(|x| x * x).collect()).unwrap();
        let pr = product_ci_resolution(&sq, &Ideal::maximal(&r)).unwrap();
        let rep = degree3_report(&pr, &pr.maps, true).unwrap();
        assert_eq!(rep.case, Degree3Case::CompleteIntersectionL1InMaximal);
    }
}
