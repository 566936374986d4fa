//! Minimal free resolutions over `R`, Betti tables, truncated resolutions of
//! the residue field over `A = R/J`, and the Serre bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::complex::{vec_from_dense, ChainComplex, GradedFreeModule, Matrix, Vector};
use crate::error::{Error, Result};
use crate::groebner::{syzygies, Ideal, ModulePresentation};
use crate::homology::{Reducer, StrandSpace};
use crate::linalg::{self, Echelon, SparseVec};
use crate::monomial::Monomial;

/// Minimal free resolution of `R/I` by iterated minimal syzygies.
pub fn minimal_free_resolution(ideal: &Ideal) -> Result<ChainComplex> {
    if !ideal.is_proper() {
        return Err(Error::precondition("cannot resolve R/I for the unit ideal"));
    }
    let ring = ideal.ring();
    let gens = ideal.minimal_generators().to_vec();
    let mut modules = vec![GradedFreeModule::new(vec![0])];
    let mut diffs = Vec::new();
    if gens.is_empty() {
        return ChainComplex::new(ring, modules, diffs);
    }
    let mut pres = ModulePresentation::row(ring, &gens)?;
    loop {
        modules.push(GradedFreeModule::new(pres.column_degrees.clone()));
        let cols = pres.columns.iter().map(|c| vec_from_dense(c.clone())).collect();
        diffs.push(Matrix::from_columns(pres.ambient_rank(), cols));
        let next = syzygies(&pres);
        if next.ncols() == 0 {
            break;
        }
        pres = next;
    }
    ChainComplex::new(ring, modules, diffs)
}

/// Graded Betti numbers `β_{i,d}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, d: i32) -> usize {
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Total Betti numbers `β_0, …, β_len`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.length() + 1];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }

    /// Coefficients of `Σ (-1)^i β_{i,d} t^d`, the numerator of the Hilbert series.
    pub fn hilbert_numerator(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, d), &b) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(d).or_insert(0) += sign * b as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Hilbert function of the resolved module in degree `d`, over `nvars` variables.
    pub fn hilbert_function(&self, nvars: usize, d: i32) -> i64 {
        self.hilbert_numerator()
            .into_iter()
            .filter(|(j, _)| *j <= d)
            .map(|(j, c)| c * binomial((d - j) as i64 + nvars as i64 - 1, nvars as i64 - 1))
            .sum()
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `d - i`, columns by `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.length();
        let rows: BTreeSet<i32> = self.entries.keys().map(|&(i, d)| d - i as i32).collect();
        write!(f, "{:>6}", "")?;
        for i in 0..=len {
            write!(f, " {i:>5}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for b in self.totals() {
            write!(f, " {b:>5}")?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>6}", format!("{r}:"))?;
            for i in 0..=len {
                match self.get(i, r + i as i32) {
                    0 => write!(f, " {:>5}", ".")?,
                    b => write!(f, " {b:>5}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Graded ranks of a minimal complex.
pub fn betti_table(c: &ChainComplex) -> Result<BettiTable> {
    if !c.is_minimal() {
        return Err(Error::precondition("Betti table requires a minimal complex"));
    }
    let mut entries = BTreeMap::new();
    for (i, m) in c.modules().iter().enumerate() {
        for &d in &m.degrees {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable { entries })
}

/// Maximum degree of an element of the reduced Gröbner basis.
pub fn max_gb_degree(j: &Ideal) -> u32 {
    j.groebner_basis().iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
}

/// Degree bookkeeping for the resolution of `k` over `R/J`: monomial ideals
/// use multidegrees, others total degree.
trait Grading {
    type Key: Copy + Ord + Hash;
    fn of_monomial(&self, m: &Monomial) -> Self::Key;
    fn total(&self, k: &Self::Key) -> i32;
    fn multipliers(&self, std: &mut StdCache, target: &Self::Key, base: &Self::Key) -> Vec<Monomial>;
    fn keys(&self, std: &mut StdCache, bases: &[Self::Key], d: i32) -> Vec<Self::Key>;
}

struct StdCache<'a> {
    ideal: &'a Ideal,
    by_degree: HashMap<u32, Vec<Monomial>>,
}

impl StdCache<'_> {
    fn get(&mut self, d: i32) -> &[Monomial] {
        if d < 0 {
            return &[];
        }
        let ideal = self.ideal;
        self.by_degree.entry(d as u32).or_insert_with(|| ideal.standard_monomials(d as u32))
    }
}

struct Total;
struct Multi;

impl Grading for Total {
    type Key = i32;
    fn of_monomial(&self, m: &Monomial) -> i32 {
        m.degree() as i32
    }
    fn total(&self, k: &i32) -> i32 {
        *k
    }
    fn multipliers(&self, std: &mut StdCache, target: &i32, base: &i32) -> Vec<Monomial> {
        std.get(target - base).to_vec()
    }
    fn keys(&self, _: &mut StdCache, _: &[i32], d: i32) -> Vec<i32> {
        vec![d]
    }
}

impl Grading for Multi {
    type Key = Monomial;
    fn of_monomial(&self, m: &Monomial) -> Monomial {
        *m
    }
    fn total(&self, k: &Monomial) -> i32 {
        k.degree() as i32
    }
    fn multipliers(&self, std: &mut StdCache, target: &Monomial, base: &Monomial) -> Vec<Monomial> {
        match base.quotient_of(target) {
            Some(m) if std.ideal.is_standard(&m) => vec![m],
            _ => Vec::new(),
        }
    }
    fn keys(&self, std: &mut StdCache, bases: &[Monomial], d: i32) -> Vec<Monomial> {
        let mut out = BTreeSet::new();
        let uniq: BTreeSet<Monomial> = bases.iter().copied().collect();
        for b in uniq {
            for m in std.get(d - b.degree() as i32) {
                out.insert(b.mul(m));
            }
        }
        out.into_iter().collect()
    }
}

/// A free `A`-module generator: its grade and its image in the previous module.
struct Gen<K> {
    key: K,
    image: Vector,
}

/// Ranks `b_0..b_N` of the minimal free resolution of `k` over `R/J`.
/// Generator degrees in homological degree `i` are searched up to
/// `1 + (i-1)(D-1)`, `D` the top Gröbner-basis degree of `J`, which bounds
/// them. `strand_bound` caps that search.
pub fn resolution_of_k_over_quotient(j: &Ideal, n: usize, strand_bound: Option<i64>) -> Result<Vec<usize>> {
    if j.is_zero() {
        return Err(Error::precondition("the quotient ideal must be nonzero"));
    }
    if !j.is_proper() {
        return Err(Error::precondition("the quotient ideal must be proper"));
    }
    let dgb = max_gb_degree(j).max(2) as i64;
    let need = 1 + (n as i64 - 1).max(0) * (dgb - 1);
    let bound = strand_bound.unwrap_or(j.max_generator_degree() as i64 * n as i64 + j.ring().nvars() as i64);
    if need > bound {
        return Err(Error::StrandBound { needed: need, bound });
    }
    if j.is_monomial() {
        resolve_k(j, n, dgb, &Multi)
    } else {
        resolve_k(j, n, dgb, &Total)
    }
}

fn resolve_k<G: Grading>(j: &Ideal, n: usize, dgb: i64, grading: &G) -> Result<Vec<usize>> {
    let ring = j.ring();
    let k = *ring.field();
    let mut std = StdCache { ideal: j, by_degree: HashMap::new() };
    let mut betti = vec![1usize];
    if n == 0 {
        return Ok(betti);
    }
    // F_0 = A with one generator of grade 0; F_1 from a basis of A_1.
    let one = grading.of_monomial(&Monomial::ONE);
    let f0 = vec![Gen { key: one, image: Vec::new() }];
    let f1: Vec<Gen<G::Key>> = std
        .get(1)
        .to_vec()
        .into_iter()
        .map(|v| Gen { key: grading.of_monomial(&v), image: vec![(0, crate::poly::Polynomial::term(ring, v, 1))] })
        .collect();
    betti.push(f1.len());
    let mut levels: Vec<Vec<Gen<G::Key>>> = vec![f0, f1];
    let mut red = Reducer::new(j);
    for i in 2..=n {
        let prev = &levels[i - 1];
        let prev2 = &levels[i - 2];
        let prev_keys: Vec<G::Key> = prev.iter().map(|g| g.key).collect();
        let top = 1 + (i as i64 - 1) * (dgb - 1);
        let lo = prev.iter().map(|g| grading.total(&g.key)).min().unwrap_or(0) + 1;
        let mut new: Vec<Gen<G::Key>> = Vec::new();
        for d in lo..=top as i32 {
            for alpha in grading.keys(&mut std, &prev_keys, d) {
                let space = key_space(grading, &mut std, prev, &alpha);
                if space.basis.is_empty() {
                    continue;
                }
                let below = key_space(grading, &mut std, prev2, &alpha);
                let cols: Vec<SparseVec> =
                    space.basis.iter().map(|(g, m)| red.vectorize_scaled(&below, &prev[*g].image, m, 1)).collect();
                let kernel = linalg::kernel_basis(&k, &cols);
                if kernel.is_empty() {
                    continue;
                }
                let mut span = Echelon::new(k);
                for g in new.iter().filter(|g| grading.total(&g.key) < d) {
                    for m in grading.multipliers(&mut std, &alpha, &g.key) {
                        span.insert(&red.vectorize_scaled(&space, &g.image, &m, 1));
                    }
                }
                for z in kernel {
                    if span.insert(&z) {
                        new.push(Gen { key: alpha, image: space.to_element(j, &z) });
                    }
                }
            }
        }
        betti.push(new.len());
        levels.push(new);
        levels[i - 2].iter_mut().for_each(|g| g.image = Vec::new());
    }
    Ok(betti)
}

/// Strand of a free `A`-module at grade `alpha`: pairs `(generator, multiplier)`.
fn key_space<G: Grading>(grading: &G, std: &mut StdCache, gens: &[Gen<G::Key>], alpha: &G::Key) -> StrandSpace {
    let mut basis = Vec::new();
    for (g, gen) in gens.iter().enumerate() {
        if grading.total(&gen.key) > grading.total(alpha) {
            continue;
        }
        for m in grading.multipliers(std, alpha, &gen.key) {
            basis.push((g, m));
        }
    }
    StrandSpace::from_basis(grading.total(alpha), basis)
}

/// Coefficients through `t^N` of `(1+t)^e / (1 - Σ_j h_j t^{j+1})`, where
/// `h[0]` is `rank H_1`.
pub fn serre_series(e: usize, h: &[usize], n: usize) -> Vec<i128> {
    let num: Vec<i128> = (0..=n).map(|i| binomial(e as i64, i as i64) as i128).collect();
    let mut out = vec![0i128; n + 1];
    for i in 0..=n {
        let mut c = num[i];
        for (j, &hj) in h.iter().enumerate() {
            let shift = j + 2;
            if shift <= i {
                c += hj as i128 * out[i - shift];
            }
        }
        out[i] = c;
    }
    out
}

/// Embedding dimension and Koszul homology ranks `rank H_j(K^A)`, `j >= 1`,
/// for `A = R/J`, adjusting for linear forms in `J`.
pub fn koszul_ranks(j: &Ideal) -> Result<(usize, Vec<usize>)> {
    let ring = j.ring();
    let linear = j.groebner_basis().iter().filter(|g| g.total_degree() == Some(1)).count();
    let e = ring.nvars() - linear;
    let table = betti_table(&minimal_free_resolution(j)?)?;
    let mut poly: Vec<i64> = table.totals().into_iter().map(|b| b as i64).collect();
    // divide by (1+t)^linear
    for _ in 0..linear {
        let mut q = vec![0i64; poly.len().saturating_sub(1)];
        let mut rem = poly.clone();
        for i in (0..q.len()).rev() {
            q[i] = rem[i + 1];
            rem[i + 1] -= q[i];
            rem[i] -= q[i];
        }
        if rem.iter().any(|&r| r != 0) {
            return Err(Error::internal("Betti polynomial not divisible by the linear part"));
        }
        poly = if q.is_empty() { vec![1] } else { q };
    }
    Ok((e, poly.into_iter().skip(1).map(|b| b as usize).collect()))
}

/// Serre bound coefficients `s_0..s_N` for `R/J`.
pub fn serre_bound(j: &Ideal, n: usize) -> Result<Vec<i128>> {
    let (e, h) = koszul_ranks(j)?;
    Ok(serre_series(e, &h, n))
}

/// Truncated Poincaré data of `k` over `R/J`.
#[derive(Debug, Clone)]
pub struct PoincareData {
    pub quotient_ideal: Ideal,
    pub truncation_order: usize,
    pub betti_of_k: Vec<usize>,
    pub serre_bound_coeffs: Vec<i128>,
    pub embedding_dimension: usize,
    pub codepth: usize,
}

impl PoincareData {
    /// First index with `b_i < s_i`.
    pub fn first_deficit(&self) -> Option<usize> {
        (0..=self.truncation_order).find(|&i| (self.betti_of_k[i] as i128) < self.serre_bound_coeffs[i])
    }

    pub fn serre_equality(&self) -> bool {
        self.first_deficit().is_none()
    }
}

pub fn poincare(j: &Ideal, n: usize, strand_bound: Option<i64>) -> Result<PoincareData> {
    let betti = resolution_of_k_over_quotient(j, n, strand_bound)?;
    let (e, h) = koszul_ranks(j)?;
    let s = serre_series(e, &h, n);
    if let Some(i) = (0..=n).find(|&i| betti[i] as i128 > s[i]) {
        return Err(Error::internal(format!("Serre inequality violated at t^{i}: {} > {}", betti[i], s[i])));
    }
    Ok(PoincareData {
        quotient_ideal: j.clone(),
        truncation_order: n,
        betti_of_k: betti,
        serre_bound_coeffs: s,
        embedding_dimension: e,
        codepth: h.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, PolynomialRing};

    #[test]
    fn betti_of_standard_examples() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        assert_eq!(betti_table(&minimal_free_resolution(&m).unwrap()).unwrap().totals(), vec![1, 3, 3, 1]);
        let m2 = m.product(&m).unwrap();
        let f = minimal_free_resolution(&m2).unwrap();
        assert!(f.compose_check());
        let t = betti_table(&f).unwrap();
        assert_eq!(t.totals(), vec![1, 6, 8, 3]);
        assert_eq!((t.get(1, 2), t.get(2, 3), t.get(3, 4)), (6, 8, 3));
        let sq = Ideal::monomial(&r, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(betti_table(&minimal_free_resolution(&sq).unwrap()).unwrap().totals(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn hilbert_function_from_betti() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        let m2 = m.product(&m).unwrap();
        let t = betti_table(&minimal_free_resolution(&m2).unwrap()).unwrap();
        assert_eq!(t.hilbert_numerator().into_iter().collect::<Vec<_>>(), vec![(0, 1), (2, -6), (3, 8), (4, -3)]);
        let hf: Vec<i64> = (0..5).map(|d| t.hilbert_function(3, d)).collect();
        assert_eq!(hf, vec![1, 3, 0, 0, 0]);
    }

    #[test]
    fn zero_complex_table() {
        let r = PolynomialRing::standard(2);
        let t = betti_table(&minimal_free_resolution(&Ideal::zero(&r)).unwrap()).unwrap();
        assert_eq!(t.entries.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }

    #[test]
    fn non_minimal_rejected() {
        let r = PolynomialRing::standard(1);
        let c = ChainComplex::new(
            &r,
            vec![GradedFreeModule::new(vec![0]), GradedFreeModule::new(vec![0])],
            vec![Matrix::from_columns(1, vec![vec![(0, Polynomial::one(&r))]])],
        )
        .unwrap();
        assert!(betti_table(&c).is_err());
    }

    #[test]
    fn residue_field_resolutions() {
        let r1 = PolynomialRing::standard(1);
        let x2 = Ideal::monomial(&r1, &[&[2]]);
        assert_eq!(resolution_of_k_over_quotient(&x2, 5, None).unwrap(), vec![1; 6]);
        let x = Ideal::monomial(&r1, &[&[1]]);
        assert_eq!(resolution_of_k_over_quotient(&x, 3, None).unwrap(), vec![1, 0, 0, 0]);
        assert!(resolution_of_k_over_quotient(&Ideal::zero(&r1), 3, None).is_err());
        let r2 = PolynomialRing::standard(2);
        let m2 = Ideal::monomial(&r2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(resolution_of_k_over_quotient(&m2, 4, None).unwrap(), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn residue_field_over_non_monomial_quotient() {
        // xy - z^2 hypersurface: P(t) = (1+t)^3 / (1 - t^2)
        let r = PolynomialRing::standard(3);
        let [x, y, z] = [0, 1, 2].map(|i| Polynomial::variable(&r, i));
        let f = &(&x * &y) - &(&z * &z);
        let j = Ideal::new(&r, vec![f]).unwrap();
        let b = resolution_of_k_over_quotient(&j, 5, None).unwrap();
        let s = serre_bound(&j, 5).unwrap();
        assert_eq!(b.iter().map(|&v| v as i128).collect::<Vec<_>>(), s);
        assert_eq!(b, vec![1, 3, 4, 4, 4, 4]);
    }

    #[test]
    fn serre_examples() {
        assert_eq!(serre_series(2, &[3, 2], 4), vec![1, 2, 4, 8, 16]);
        assert_eq!(serre_series(1, &[1], 3), vec![1, 1, 1, 1]);
        assert_eq!(serre_series(3, &[], 4), vec![1, 3, 3, 1, 0]);
        let r = PolynomialRing::standard(2);
        let m2 = Ideal::monomial(&r, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(serre_bound(&m2, 4).unwrap(), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn linear_forms_reduce_embedding_dimension() {
        let r = PolynomialRing::standard(2);
        let j = Ideal::monomial(&r, &[&[1, 0], &[0, 2]]);
        let (e, h) = koszul_ranks(&j).unwrap();
        assert_eq!((e, h), (1, vec![1]));
        let p = poincare(&j, 4, None).unwrap();
        assert_eq!(p.betti_of_k, vec![1, 1, 1, 1, 1]);
        assert!(p.serre_equality());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
