//! Koszul homology algebras, product triviality, trivial Massey operations
//! built from `ν`, Tor-algebra ranks in codepth three, and the Golod verdict.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{vec_add_scaled, ChainComplex, Vector};
use crate::dg::koszul_product;
use crate::error::{Error, Result};
use crate::groebner::{is_regular_sequence, Ideal};
use crate::homology::{default_strand_bound, homology_strand, HomologyStrand, Reducer, StrandSpace};
use crate::koszul::{koszul_complex, KoszulAlgebra};
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::Polynomial;
use crate::resolutions::{betti_table, minimal_free_resolution, poincare, BettiTable, PoincareData};
use crate::trimming::{split_injection_check, SplitInjectionReport};

/// A basis class of `H_i(K ⊗ R/J)_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    pub homological_degree: usize,
    pub internal_degree: i32,
    pub index: usize,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h[{},{}]#{}", self.homological_degree, self.internal_degree, self.index + 1)
    }
}

/// `H(K ⊗ R/J)` with chosen cycle representatives per strand.
#[derive(Debug, Clone)]
pub struct KoszulHomologyAlgebra {
    pub quotient_ideal: Ideal,
    pub koszul: ChainComplex,
    pub algebra: KoszulAlgebra,
    /// Nonzero strands keyed by `(homological, internal)` degree.
    pub strands: BTreeMap<(usize, i32), HomologyStrand>,
    pub betti: BettiTable,
}

fn variables(ring: &Arc<crate::poly::PolynomialRing>) -> Vec<Polynomial> {
    (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect()
}

pub fn koszul_homology_algebra(j: &Ideal) -> Result<KoszulHomologyAlgebra> {
    koszul_homology_algebra_bounded(j, None)
}

/// Every strand `H_i(K ⊗ R/J)_d` with `1 <= i <= n` and `i <= d <= D`, `D`
/// the top degree of the Betti table. Dimensions are checked against the
/// minimal resolution of `R/J`.
pub fn koszul_homology_algebra_bounded(j: &Ideal, strand_bound: Option<i64>) -> Result<KoszulHomologyAlgebra> {
    if !j.is_proper() {
        return Err(Error::precondition("the unit ideal has no Koszul homology algebra"));
    }
    let ring = j.ring();
    let n = ring.nvars();
    let koszul = koszul_complex(ring, &variables(ring));
    let betti = betti_table(&minimal_free_resolution(j)?)?;
    let top = betti.entries.keys().map(|k| k.1).max().unwrap_or(0);
    let bound = strand_bound.unwrap_or_else(|| default_strand_bound(j, n));
    if top as i64 > bound {
        return Err(Error::StrandBound { needed: top as i64, bound });
    }
    let keys: Vec<(usize, i32)> = (1..=n).flat_map(|i| (i as i32..=top).map(move |d| (i, d))).collect();
    let computed: Vec<Result<HomologyStrand>> =
        keys.par_iter().map(|&(i, d)| homology_strand(&koszul, j, i, d, Some(bound))).collect();
    let mut strands = BTreeMap::new();
    for s in computed {
        let s = s?;
        let key = (s.homological_degree, s.internal_degree);
        if s.dimension != betti.get(key.0, key.1) {
            return Err(Error::internal(format!(
                "dim H_{}(K ⊗ R/J)_{} = {} but β_{{{},{}}} = {}",
                key.0,
                key.1,
                s.dimension,
                key.0,
                key.1,
                betti.get(key.0, key.1)
            )));
        }
        if s.dimension > 0 {
            strands.insert(key, s);
        }
    }
    Ok(KoszulHomologyAlgebra { quotient_ideal: j.clone(), koszul, algebra: KoszulAlgebra::new(n), strands, betti })
}

impl KoszulHomologyAlgebra {
    pub fn nvars(&self) -> usize {
        self.algebra.generators()
    }

    /// `dim H_i` for `i = 0..=n`.
    pub fn dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.nvars() + 1];
        out[0] = 1;
        for (&(i, _), s) in &self.strands {
            out[i] += s.dimension;
        }
        out
    }

    /// Positive-degree basis classes, ordered by degrees.
    pub fn classes(&self) -> Vec<ClassId> {
        self.strands
            .iter()
            .flat_map(|(&(i, d), s)| {
                (0..s.dimension).map(move |index| ClassId { homological_degree: i, internal_degree: d, index })
            })
            .collect()
    }

    pub fn classes_in(&self, i: usize) -> Vec<ClassId> {
        self.classes().into_iter().filter(|c| c.homological_degree == i).collect()
    }

    pub fn representative(&self, c: ClassId) -> &Vector {
        &self.strands[&(c.homological_degree, c.internal_degree)].cycle_basis[c.index]
    }

    /// Position of a class among all classes of its homological degree.
    pub fn global_index(&self, c: ClassId) -> usize {
        let before: usize = self
            .strands
            .range((c.homological_degree, i32::MIN)..(c.homological_degree, c.internal_degree))
            .map(|(_, s)| s.dimension)
            .sum();
        before + c.index
    }

    /// Class coordinates of a cycle in `K_h ⊗ R/J` of internal degree `d`;
    /// empty when the strand has no homology.
    pub fn class_of_element(&self, h: usize, d: i32, v: &Vector) -> Result<SparseVec> {
        let Some(s) = self.strands.get(&(h, d)) else {
            return Ok(Vec::new());
        };
        let mut red = Reducer::new(&self.quotient_ideal);
        let coords = red.vectorize(&s.space, v);
        s.class_of(&coords)
    }

    pub fn multiply_elements(&self, i: usize, x: &Vector, j: usize, y: &Vector) -> Vector {
        koszul_product(&self.algebra, i, x, j, y)
    }

    /// `[z_a][z_b]` in the basis of the target strand.
    pub fn product(&self, a: ClassId, b: ClassId) -> Result<SparseVec> {
        let h = a.homological_degree + b.homological_degree;
        if h > self.nvars() {
            return Ok(Vec::new());
        }
        let w = self.multiply_elements(a.homological_degree, self.representative(a), b.homological_degree, self.representative(b));
        self.class_of_element(h, a.internal_degree + b.internal_degree, &w)
    }

    /// A representative of the same class as `c`, shifted by a pseudo-random
    /// boundary.
    fn resampled(&self, c: ClassId, rng: &mut ChaCha8Rng) -> Vector {
        let z = self.representative(c).clone();
        let i = c.homological_degree;
        let d = c.internal_degree;
        let k = *self.quotient_ideal.ring().field();
        let above = StrandSpace::new(&self.quotient_ideal, &self.koszul.module(i + 1).degrees, d);
        if above.dim() == 0 {
            return z;
        }
        let coeffs: SparseVec =
            linalg::normalize(&k, (0..above.dim() as u32).map(|t| (t, rng.gen_range(0..k.characteristic()))).collect());
        let y = above.to_element(&self.quotient_ideal, &coeffs);
        let b = self.koszul.apply_d(i + 1, &y);
        vec_add_scaled(&z, &Polynomial::one(self.quotient_ideal.ring()), &b)
    }
}

/// A product of basis classes that is not a boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroProduct {
    pub left: ClassId,
    pub right: ClassId,
    /// `(homological, internal)` degree of the product.
    pub target: (usize, i32),
    pub coordinates: SparseVec,
}

impl fmt::Display for NonzeroProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}·H_{} product {}·{}", self.left.homological_degree, self.right.homological_degree, self.left, self.right)
    }
}

#[derive(Debug, Clone)]
pub struct ProductReport {
    pub pairs_checked: usize,
    pub nonzero: Vec<NonzeroProduct>,
    /// Products recomputed from resampled representatives agree.
    pub representative_independent: bool,
}

impl ProductReport {
    pub fn trivial(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Multiplies every pair of positive-degree basis classes; `seed` drives
/// the resampling used for the well-definedness check.
pub fn product_triviality(alg: &KoszulHomologyAlgebra) -> Result<ProductReport> {
    product_triviality_seeded(alg, 0)
}

pub fn product_triviality_seeded(alg: &KoszulHomologyAlgebra, seed: u64) -> Result<ProductReport> {
    let classes = alg.classes();
    let n = alg.nvars();
    let mut pairs = Vec::new();
    for (x, &a) in classes.iter().enumerate() {
        for &b in &classes[x..] {
            if a.homological_degree + b.homological_degree <= n {
                pairs.push((a, b));
            }
        }
    }
    let results: Vec<Result<(Option<NonzeroProduct>, bool)>> = pairs
        .par_iter()
        .enumerate()
        .map(|(t, &(a, b))| {
            let coords = alg.product(a, b)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let za = alg.resampled(a, &mut rng);
            let zb = alg.resampled(b, &mut rng);
            let h = a.homological_degree + b.homological_degree;
            let d = a.internal_degree + b.internal_degree;
            let again = alg.class_of_element(h, d, &alg.multiply_elements(a.homological_degree, &za, b.homological_degree, &zb))?;
            let same = again == coords;
            let nz = (!coords.is_empty()).then(|| NonzeroProduct { left: a, right: b, target: (h, d), coordinates: coords });
            Ok((nz, same))
        })
        .collect();
    let mut nonzero = Vec::new();
    let mut independent = true;
    for r in results {
        let (nz, same) = r?;
        independent &= same;
        nonzero.extend(nz);
    }
    Ok(ProductReport { pairs_checked: pairs.len(), nonzero, representative_independent: independent })
}

/// One basis class `[d(z^I_a) ∧ z^J_b]` of `H(R/IJ)`.
#[derive(Debug, Clone)]
pub struct MasseyBasisElement {
    pub homological_degree: usize,
    pub internal_degree: i32,
    /// Class of `z^I` in `H(R/I)`.
    pub from_i: ClassId,
    /// Class of `z^J` in `H(R/J)`; `None` stands for `1 ∈ H_0`.
    pub from_j: Option<ClassId>,
    pub z: Vector,
    pub nu: Vector,
}

#[derive(Debug, Clone)]
pub struct MasseyCertificate {
    pub basis_used: Vec<MasseyBasisElement>,
    pub verified_condition_star: bool,
    pub recursion_holds: bool,
    pub depth_checked: usize,
    pub tuples_checked: usize,
}

impl MasseyCertificate {
    pub fn is_valid(&self) -> bool {
        self.verified_condition_star && self.recursion_holds
    }
}

#[derive(Debug, Clone)]
pub enum MasseyOutcome {
    Certificate(MasseyCertificate),
    Inapplicable(String),
}

impl MasseyOutcome {
    pub fn certifies(&self) -> bool {
        matches!(self, MasseyOutcome::Certificate(c) if c.is_valid())
    }
}

fn reduce_vector(q: &Ideal, v: &Vector) -> Vector {
    v.iter().map(|(i, p)| (*i, q.normal_form(p))).filter(|e| !e.1.is_zero()).collect()
}

fn sign_vec(v: &Vector, negative: bool) -> Vector {
    if negative {
        v.iter().map(|(i, p)| (*i, p.neg())).collect()
    } else {
        v.clone()
    }
}

/// Tries to build a trivial Massey operation on `K ⊗ R/IJ` from classes
/// `[d(z^I) ∧ z^J]` with `ν(d(z^I) ∧ z^J) = z^I ∧ z^J`, and verifies the
/// defining recursion for all tuples of length `<= depth`.
pub fn massey_from_nu(i: &Ideal, j: &Ideal, depth: usize) -> Result<MasseyOutcome> {
    if !i.is_proper() || !j.is_proper() {
        return Err(Error::precondition("both factors must be proper ideals"));
    }
    let ij = i.product(j)?;
    let hi = koszul_homology_algebra(i)?;
    let hj = koszul_homology_algebra(j)?;
    let target = koszul_homology_algebra(&ij)?;
    let ring = ij.ring();
    let n = ring.nvars();
    let k = *ring.field();
    let kz = &target.koszul;
    let alg = &target.algebra;
    let one: Vector = vec![(0, Polynomial::one(ring))];

    let mut j_classes: Vec<(Option<ClassId>, usize, i32, &Vector)> = vec![(None, 0, 0, &one)];
    for c in hj.classes() {
        j_classes.push((Some(c), c.homological_degree, c.internal_degree, hj.representative(c)));
    }
    // per target strand: echelon of chosen class coordinates
    let mut chosen: BTreeMap<(usize, i32), (Echelon, Vec<MasseyBasisElement>)> = BTreeMap::new();
    for a in hi.classes() {
        let za = hi.representative(a);
        let dza = kz.apply_d(a.homological_degree, za);
        for &(b, jb, db, zb) in &j_classes {
            let h = a.homological_degree - 1 + jb;
            if h == 0 || h > n {
                continue;
            }
            let d = a.internal_degree + db;
            let Some(strand) = target.strands.get(&(h, d)) else {
                continue;
            };
            let entry = chosen.entry((h, d)).or_insert_with(|| (Echelon::new(k), Vec::new()));
            if entry.0.rank() == strand.dimension {
                continue;
            }
            let w = koszul_product(alg, a.homological_degree - 1, &dza, jb, zb);
            let coords = target.class_of_element(h, d, &w)?;
            if coords.is_empty() || !entry.0.insert(&coords) {
                continue;
            }
            let nu = koszul_product(alg, a.homological_degree, za, jb, zb);
            entry.1.push(MasseyBasisElement {
                homological_degree: h,
                internal_degree: d,
                from_i: a,
                from_j: b,
                z: reduce_vector(&ij, &w),
                nu: reduce_vector(&ij, &nu),
            });
        }
    }
    for (&(h, d), s) in &target.strands {
        let got = chosen.get(&(h, d)).map(|e| e.0.rank()).unwrap_or(0);
        if got < s.dimension {
            return Ok(MasseyOutcome::Inapplicable(format!(
                "classes d(z^I)∧z^J span {got} of {} dimensions of H_{h}(R/IJ)_{d}",
                s.dimension
            )));
        }
    }
    let basis: Vec<MasseyBasisElement> = chosen.into_values().flat_map(|e| e.1).collect();

    let zero_mod = |v: &Vector| v.iter().all(|(_, p)| ij.normal_form(p).is_zero());
    let dnu: Vec<Vector> = basis.iter().map(|e| kz.apply_d(e.homological_degree + 1, &e.nu)).collect();
    // (∗): z_a ∧ (z_b - dν(z_b)) = 0 in R/IJ ⊗ K
    let star = (0..basis.len()).into_par_iter().all(|x| {
        (0..basis.len()).all(|y| {
            let (a, b) = (&basis[x], &basis[y]);
            if a.homological_degree + b.homological_degree > n {
                return true;
            }
            let diff = vec_add_scaled(&b.z, &Polynomial::constant(ring, k.neg(1)), &dnu[y]);
            zero_mod(&koszul_product(alg, a.homological_degree, &a.z, b.homological_degree, &diff))
        })
    });

    // μ(h_1..h_p) = (-1)^{p-1} z_1 ∧ ν_2 ∧ ... ∧ ν_p
    let mu = |t: &[usize]| -> (usize, Vector) {
        let mut deg = basis[t[0]].homological_degree;
        let mut acc = basis[t[0]].z.clone();
        for &x in &t[1..] {
            let e = &basis[x];
            acc = koszul_product(alg, deg, &acc, e.homological_degree + 1, &e.nu);
            deg += e.homological_degree + 1;
        }
        (deg, sign_vec(&acc, t.len() % 2 == 0))
    };
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..basis.len()).map(|x| vec![x]).collect();
    for _ in 2..=depth {
        let mut next = Vec::new();
        for t in &frontier {
            let used: usize = t.iter().map(|&x| basis[x].homological_degree).sum::<usize>() + t.len() - 1;
            for x in 0..basis.len() {
                // the identity lives in homological degree used + |z_x|
                if used + basis[x].homological_degree <= n {
                    let mut u = t.clone();
                    u.push(x);
                    next.push(u);
                }
            }
        }
        tuples.extend(next.iter().cloned());
        frontier = next;
    }
    let recursion = tuples.par_iter().all(|t| {
        let (deg, m) = mu(t);
        let mut rhs: Vector = kz.apply_d(deg, &m);
        for cut in 1..t.len() {
            let (da, a) = mu(&t[..cut]);
            let (db, b) = mu(&t[cut..]);
            let prod = koszul_product(alg, da, &sign_vec(&a, da % 2 == 0), db, &b);
            rhs = vec_add_scaled(&rhs, &Polynomial::constant(ring, k.neg(1)), &prod);
        }
        zero_mod(&rhs)
    });
    Ok(MasseyOutcome::Certificate(MasseyCertificate {
        basis_used: basis,
        verified_condition_star: star,
        recursion_holds: recursion,
        depth_checked: depth,
        tuples_checked: tuples.len(),
    }))
}

/// Multiplicative ranks of `H(K ⊗ R/J)` in codepth three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorAlgebraInvariants {
    /// `rank H_1·H_1`.
    pub p: usize,
    /// `rank H_1·H_2`.
    pub q: usize,
    /// Rank of `H_2 -> Hom(H_1, H_3)`.
    pub r: usize,
}

impl TorAlgebraInvariants {
    pub fn class_name(&self) -> String {
        match (self.p, self.q, self.r) {
            (3, 1, 3) => "C(3)".into(),
            (3, 0, 0) => "T".into(),
            (1, 1, 2) => "B".into(),
            (0, 1, r) if r >= 2 => format!("G({r})"),
            (p, q, r) if q == r => format!("H({p},{q})"),
            (p, q, r) => format!("unclassified (p={p}, q={q}, r={r})"),
        }
    }
}

fn product_rank(alg: &KoszulHomologyAlgebra, vectors: &[(usize, SparseVec)]) -> usize {
    let k = *alg.quotient_ideal.ring().field();
    let mut e = Echelon::new(k);
    for (_, v) in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Coordinates of `a·b` in the global basis of `H_{|a|+|b|}`.
fn global_product(alg: &KoszulHomologyAlgebra, a: ClassId, b: ClassId) -> Result<SparseVec> {
    let local = alg.product(a, b)?;
    let h = a.homological_degree + b.homological_degree;
    let d = a.internal_degree + b.internal_degree;
    let offset = alg.global_index(ClassId { homological_degree: h, internal_degree: d, index: 0 });
    Ok(local.into_iter().map(|(i, c)| (i + offset as u32, c)).collect())
}

pub fn tor_invariants(j: &Ideal) -> Result<TorAlgebraInvariants> {
    let alg = koszul_homology_algebra(j)?;
    if alg.betti.length() != 3 {
        return Err(Error::precondition(format!("projective dimension of R/J is {}, not 3", alg.betti.length())));
    }
    tor_invariants_of(&alg)
}

pub fn tor_invariants_of(alg: &KoszulHomologyAlgebra) -> Result<TorAlgebraInvariants> {
    let h1 = alg.classes_in(1);
    let h2 = alg.classes_in(2);
    let h3 = alg.classes_in(3);
    let mut pp = Vec::new();
    for (x, &a) in h1.iter().enumerate() {
        for &b in &h1[x + 1..] {
            pp.push((0, global_product(alg, a, b)?));
        }
    }
    let mut qq = Vec::new();
    let mut delta: Vec<(usize, SparseVec)> = Vec::new();
    let w = h3.len() as u32;
    for &b in &h2 {
        let mut row = Vec::new();
        for (x, &a) in h1.iter().enumerate() {
            let v = global_product(alg, a, b)?;
            row.extend(v.iter().map(|&(i, c)| (x as u32 * w + i, c)));
            qq.push((0, v));
        }
        delta.push((0, row));
    }
    Ok(TorAlgebraInvariants { p: product_rank(alg, &pp), q: product_rank(alg, &qq), r: product_rank(alg, &delta) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateReason {
    SplitInjection,
    MasseyOperation,
    CodepthAtMostOne,
    CodepthTwoNotCompleteIntersection,
}

impl fmt::Display for CertificateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateReason::SplitInjection => "split injection of Q_k ⊗ k",
            CertificateReason::MasseyOperation => "trivial Massey operation from ν",
            CertificateReason::CodepthAtMostOne => "codepth at most 1",
            CertificateReason::CodepthTwoNotCompleteIntersection => "codepth 2, not a complete intersection",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    /// A Serre deficit `(i, b_i, s_i)` and/or a nonzero product.
    NonGolod { deficit: Option<(usize, usize, i128)>, product: Option<NonzeroProduct> },
    GolodCertified(CertificateReason),
    GolodEvidenceUpTo(usize),
}

impl Verdict {
    pub fn is_non_golod(&self) -> bool {
        matches!(self, Verdict::NonGolod { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NonGolod { product: Some(p), .. } => write!(f, "NON-GOLOD (witness: {p})"),
            Verdict::NonGolod { deficit: Some((i, b, s)), .. } => {
                write!(f, "NON-GOLOD (witness: Serre deficit at t^{i}, {b} < {s})")
            }
            Verdict::NonGolod { .. } => write!(f, "NON-GOLOD"),
            Verdict::GolodCertified(r) => write!(f, "GOLOD (certified: {r})"),
            Verdict::GolodEvidenceUpTo(n) => write!(f, "GOLOD-CONSISTENT (Serre equality to N={n})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GolodReport {
    pub ideal: Ideal,
    pub poincare: PoincareData,
    pub product_triviality: ProductReport,
    pub verdict: Verdict,
    pub codepth: usize,
    pub betti: BettiTable,
    pub complete_intersection: bool,
    pub split_injection: Option<SplitInjectionReport>,
    pub massey: Option<MasseyOutcome>,
}

/// Knobs shared by the verdict computations.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerdictOptions {
    pub strand_bound: Option<i64>,
    /// Seed for resampled representatives.
    pub seed: u64,
}

pub fn golod_verdict(j: &Ideal, n: usize) -> Result<GolodReport> {
    golod_verdict_with(j, n, None, &VerdictOptions::default())
}

/// Full report; `factors = (I, J')` with `IJ' = J` enables the split
/// injection and Massey certificates.
pub fn golod_verdict_with(j: &Ideal, n: usize, factors: Option<(&Ideal, &Ideal)>, opts: &VerdictOptions) -> Result<GolodReport> {
    let poincare = poincare(j, n, opts.strand_bound)?;
    let alg = koszul_homology_algebra_bounded(j, opts.strand_bound)?;
    let products = product_triviality_seeded(&alg, opts.seed)?;
    if !products.representative_independent {
        return Err(Error::internal("product classes depend on the chosen representatives"));
    }
    let codepth = poincare.codepth;
    let ci = is_regular_sequence(j.ring(), j.minimal_generators())?;
    let mut split = None;
    let mut massey = None;
    let deficit = poincare.first_deficit().map(|i| (i, poincare.betti_of_k[i], poincare.serre_bound_coeffs[i]));
    // with linear forms in J the complex on the variables is not K^{R/J}
    let no_linear = j.groebner_basis().iter().all(|g| g.total_degree() != Some(1));
    let witness = if no_linear { products.nonzero.first().cloned() } else { None };
    let verdict = if deficit.is_some() || witness.is_some() {
        Verdict::NonGolod { deficit, product: witness }
    } else {
        let mut reason = None;
        if let Some((a, b)) = factors {
            if !a.product(b)?.equals(j)? {
                return Err(Error::precondition("the factors do not multiply to the ideal"));
            }
            for (x, y) in [(a, b), (b, a)] {
                match split_injection_check(x, y) {
                    Ok(rep) => {
                        let ok = rep.certified;
                        split = Some(rep);
                        if ok {
                            reason = Some(CertificateReason::SplitInjection);
                            break;
                        }
                    }
                    Err(Error::Precondition(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            if reason.is_none() {
                let m = massey_from_nu(a, b, 3)?;
                if m.certifies() {
                    reason = Some(CertificateReason::MasseyOperation);
                }
                massey = Some(m);
            }
        }
        if reason.is_none() {
            if codepth <= 1 {
                reason = Some(CertificateReason::CodepthAtMostOne);
            } else if codepth == 2 && !ci {
                reason = Some(CertificateReason::CodepthTwoNotCompleteIntersection);
            }
        }
        match reason {
            Some(r) => Verdict::GolodCertified(r),
            None => Verdict::GolodEvidenceUpTo(n),
        }
    };
    if matches!(verdict, Verdict::GolodCertified(_)) && !poincare.serre_equality() {
        return Err(Error::internal("Golod certificate contradicts a Serre deficit"));
    }
    Ok(GolodReport {
        ideal: j.clone(),
        betti: alg.betti.clone(),
        poincare,
        product_triviality: products,
        verdict,
        codepth,
        complete_intersection: ci,
        split_injection: split,
        massey,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolynomialRing;

    fn vars(r: &Arc<PolynomialRing>) -> Vec<Polynomial> {
        variables(r)
    }

    #[test]
    fn homology_algebra_dimensions() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        assert_eq!(koszul_homology_algebra(&m).unwrap().dims(), vec![1, 3, 3, 1]);
        let m2 = m.product(&m).unwrap();
        assert_eq!(koszul_homology_algebra(&m2).unwrap().dims(), vec![1, 6, 8, 3]);
        let r1 = PolynomialRing::standard(1);
        assert_eq!(koszul_homology_algebra(&Ideal::monomial(&r1, &[&[2]])).unwrap().dims(), vec![1, 1]);
    }

    #[test]
    fn products_on_residue_field_are_exterior() {
        let r = PolynomialRing::standard(3);
        let alg = koszul_homology_algebra(&Ideal::maximal(&r)).unwrap();
        let rep = product_triviality(&alg).unwrap();
        assert!(!rep.trivial());
        assert!(rep.representative_independent);
        let e1 = ClassId { homological_degree: 1, internal_degree: 1, index: 0 };
        let e2 = ClassId { homological_degree: 1, internal_degree: 1, index: 1 };
        assert!(rep.nonzero.iter().any(|p| p.left == e1 && p.right == e2));
    }

    #[test]
    fn products_trivial_on_m_squared() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        let alg = koszul_homology_algebra(&m.product(&m).unwrap()).unwrap();
        let rep = product_triviality(&alg).unwrap();
        assert!(rep.trivial());
        assert!(rep.representative_independent);
    }

    #[test]
    fn non_monomial_products() {
        let r = PolynomialRing::standard(3);
        let v = vars(&r);
        let ci = Ideal::new(&r, vec![&(&v[0] * &v[1]) - &(&v[2] * &v[2]), &(&v[0] * &v[0]) + &(&v[1] * &v[1])]).unwrap();
        let alg = koszul_homology_algebra(&ci).unwrap();
        assert_eq!(alg.dims(), vec![1, 2, 1, 0]);
        let rep = product_triviality(&alg).unwrap();
        assert_eq!(rep.nonzero.len(), 1);
        assert!(rep.representative_independent);
    }

    #[test]
    fn massey_examples() {
        let r = PolynomialRing::standard(2);
        let x = Ideal::monomial(&r, &[&[1, 0]]);
        let y = Ideal::monomial(&r, &[&[0, 1]]);
        let out = massey_from_nu(&x, &y, 3).unwrap();
        assert!(out.certifies(), "{out:?}");
        let r3 = PolynomialRing::standard(3);
        let v = vars(&r3);
        let xy = Ideal::new(&r3, vec![v[0].clone(), v[1].clone()]).unwrap();
        let out = massey_from_nu(&xy, &Ideal::maximal(&r3), 3).unwrap();
        assert!(out.certifies(), "{out:?}");
        let r4 = PolynomialRing::standard(4);
        let v4 = vars(&r4);
        let a = Ideal::new(&r4, vec![v4[0].clone(), v4[1].clone()]).unwrap();
        let b = Ideal::new(&r4, vec![v4[2].clone(), v4[3].clone()]).unwrap();
        match massey_from_nu(&a, &b, 3).unwrap() {
            MasseyOutcome::Certificate(c) => {
                assert!(c.is_valid());
                assert!(c.tuples_checked > c.basis_used.len() * c.basis_used.len());
            }
            other => panic!("{other:?}"),
        }
        let sq = Ideal::new(&r4, v4.iter().map(|x| x * x).collect()).unwrap();
        assert!(!massey_from_nu(&Ideal::maximal(&r4), &sq, 3).unwrap().certifies());
    }

    #[test]
    fn tor_invariant_examples() {
        let r = PolynomialRing::standard(3);
        let v = vars(&r);
        let m = Ideal::maximal(&r);
        let t = tor_invariants(&m.product(&m).unwrap()).unwrap();
        assert_eq!((t.p, t.q, t.r), (0, 0, 0));
        let t = tor_invariants(&m).unwrap();
        assert_eq!(t.p, 3);
        assert_eq!(t.class_name(), "C(3)");
        let sq = Ideal::new(&r, v.iter().map(|x| x * x).collect()).unwrap();
        let t = tor_invariants(&m.product(&sq).unwrap()).unwrap();
        assert_eq!(t.p, 0);
        let name = t.class_name();
        assert!(name.starts_with("H(0,") || name.starts_with("G("), "{name}");
        let r2 = PolynomialRing::standard(2);
        assert!(tor_invariants(&Ideal::maximal(&r2)).is_err());
    }

    #[test]
    fn verdicts() {
        let r = PolynomialRing::standard(3);
        let m = Ideal::maximal(&r);
        let m2 = m.product(&m).unwrap();
        let rep = golod_verdict(&m2, 4).unwrap();
        assert_eq!(rep.poincare.betti_of_k, vec![1, 3, 9, 27, 81]);
        assert!(matches!(rep.verdict, Verdict::GolodEvidenceUpTo(4)));
        assert_eq!(rep.verdict.to_string(), "GOLOD-CONSISTENT (Serre equality to N=4)");
        let rep = golod_verdict_with(&m2, 4, Some((&m, &m)), &VerdictOptions::default()).unwrap();
        assert!(matches!(rep.verdict, Verdict::GolodCertified(_)));
        let rep = golod_verdict(&m, 3).unwrap();
        assert!(!rep.product_triviality.trivial());
        assert!(matches!(rep.verdict, Verdict::GolodCertified(CertificateReason::CodepthAtMostOne)));
        let r1 = PolynomialRing::standard(1);
        let rep = golod_verdict(&Ideal::monomial(&r1, &[&[2]]), 4).unwrap();
        assert!(matches!(rep.verdict, Verdict::GolodCertified(CertificateReason::CodepthAtMostOne)));
    }
}
