//! Exterior products on Koszul complexes, lifted DG products on free
//! resolutions, and comparison maps from a Koszul complex into a resolution.

use std::collections::HashMap;

use crate::complex::{vec_add_scaled, ChainComplex, GradedFreeModule, Matrix, Vector};
use crate::error::{Error, Result};
use crate::groebner::{is_regular_sequence, Ideal};
use crate::homology::{Reducer, StrandSpace};
use crate::koszul::{koszul_complex, wedge, KoszulAlgebra};
use crate::linalg::{self, Echelon};
use crate::poly::Polynomial;

/// Internal degree of a homogeneous element, `None` for zero or
/// inhomogeneous input.
pub fn element_degree(module: &GradedFreeModule, v: &Vector) -> Option<i32> {
    let mut deg = None;
    for (g, p) in v {
        if !p.is_homogeneous() {
            return None;
        }
        let d = module.degrees[*g] + p.total_degree()? as i32;
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    deg
}

/// `Σ c·v` over pairs, for assembling elements.
pub fn combine(terms: &[(Polynomial, &Vector)]) -> Vector {
    let mut acc = Vec::new();
    for (c, v) in terms {
        acc = vec_add_scaled(&acc, c, v);
    }
    acc
}

struct LiftStrand {
    source: StrandSpace,
    target: StrandSpace,
    span: Echelon,
}

/// Solves `d_i(x) = b` strandwise over `R`, caching the echelon form of each
/// `(i, degree)` strand. The solution is the one read off the echelon form
/// with all free coordinates zero.
pub struct Lifter<'a> {
    complex: &'a ChainComplex,
    zero: Ideal,
    cache: HashMap<(usize, i32), LiftStrand>,
}

impl<'a> Lifter<'a> {
    pub fn new(complex: &'a ChainComplex) -> Self {
        Lifter { complex, zero: Ideal::zero(complex.ring()), cache: HashMap::new() }
    }

    pub fn lift(&mut self, target: &Vector, i: usize) -> Result<Vector> {
        if target.is_empty() {
            return Ok(Vec::new());
        }
        if i == 0 || i > self.complex.len() {
            return Err(Error::precondition(format!("no differential d_{i} to lift through")));
        }
        let c = self.complex;
        let d = element_degree(c.module(i - 1), target).ok_or_else(|| Error::precondition("lift target is not homogeneous"))?;
        if i >= 2 && !c.apply_d(i - 1, target).is_empty() {
            return Err(Error::precondition("lift target is not a cycle"));
        }
        if !self.cache.contains_key(&(i, d)) {
            let source = StrandSpace::new(&self.zero, &c.module(i).degrees, d);
            let tgt = StrandSpace::new(&self.zero, &c.module(i - 1).degrees, d);
            let mut red = Reducer::new(&self.zero);
            let cols = red.strand_map(c, i, &source, &tgt);
            let mut span = Echelon::new(*c.ring().field());
            for (j, col) in cols.into_iter().enumerate() {
                span.insert_tracked(col, linalg::unit(j as u32));
            }
            self.cache.insert((i, d), LiftStrand { source, target: tgt, span });
        }
        let strand = &self.cache[&(i, d)];
        let mut red = Reducer::new(&self.zero);
        let v = red.vectorize(&strand.target, target);
        let x = strand.span.solve(&v).ok_or_else(|| Error::precondition(format!("target is not a boundary in degree {i}")))?;
        Ok(strand.source.to_element(&self.zero, &x))
    }
}

/// One-shot [`Lifter::lift`].
pub fn lift_through(c: &ChainComplex, target: &Vector, i: usize) -> Result<Vector> {
    Lifter::new(c).lift(target, i)
}

/// Product of Koszul elements `x ∈ K_i`, `y ∈ K_j`.
pub fn koszul_product(alg: &KoszulAlgebra, i: usize, x: &Vector, j: usize, y: &Vector) -> Vector {
    let mut acc: Vec<(usize, Polynomial)> = Vec::new();
    for (a, p) in x {
        for (b, q) in y {
            let sa = alg.basis(i)[*a];
            let sb = alg.basis(j)[*b];
            if let Some((neg, u)) = wedge(sa, sb) {
                let c = p * q;
                acc.push((alg.index_of(u), if neg { c.neg() } else { c }));
            }
        }
    }
    collect_sorted(acc)
}

pub(crate) fn collect_sorted(mut acc: Vec<(usize, Polynomial)>) -> Vector {
    acc.sort_by_key(|e| e.0);
    let mut out: Vector = Vec::with_capacity(acc.len());
    for (i, p) in acc {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = &last.1 + &p,
            _ => out.push((i, p)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Graded-commutative product on a free resolution `F` of a cyclic module,
/// given on basis pairs and extended bilinearly. Products of basis elements
/// are stored for `(i, a) <= (j, b)` and recovered by graded commutativity.
#[derive(Debug, Clone)]
pub struct DgProduct {
    resolution: ChainComplex,
    table: HashMap<(usize, usize, usize, usize), Vector>,
}

impl DgProduct {
    /// Builds products degree by degree, lifting the Leibniz obstruction
    /// `d(a)·b + (-1)^i a·d(b)` through the differential.
    pub fn build(f: &ChainComplex) -> Result<Self> {
        if f.rank(0) != 1 || f.module(0).degrees[0] != 0 {
            return Err(Error::precondition("DG products need a resolution of a cyclic module R/I"));
        }
        let mut prod = DgProduct { resolution: f.clone(), table: HashMap::new() };
        let mut lifter = Lifter::new(f);
        let one = Polynomial::one(f.ring());
        let len = f.len();
        for n in 2..=len {
            for i in 1..=n / 2 {
                let j = n - i;
                for a in 0..f.rank(i) {
                    let b0 = if i == j { a } else { 0 };
                    for b in b0..f.rank(j) {
                        let da = f.apply_d(i, &vec![(a, one.clone())]);
                        let db = f.apply_d(j, &vec![(b, one.clone())]);
                        let left = prod.multiply(i - 1, &da, j, &vec![(b, one.clone())]);
                        let right = prod.multiply(i, &vec![(a, one.clone())], j - 1, &db);
                        let s = if i % 2 == 0 { one.clone() } else { one.neg() };
                        let ob = vec_add_scaled(&left, &s, &right);
                        let x = lifter.lift(&ob, n).map_err(|e| Error::internal(format!("product lift failed: {e}")))?;
                        prod.table.insert((i, a, j, b), x);
                    }
                }
            }
        }
        Ok(prod)
    }

    pub fn resolution(&self) -> &ChainComplex {
        &self.resolution
    }

    /// Product `e_a · e_b` of basis elements `e_a ∈ F_i`, `e_b ∈ F_j`.
    pub fn basis_product(&self, i: usize, a: usize, j: usize, b: usize) -> Vector {
        let ring = self.resolution.ring();
        if i == 0 {
            return vec![(b, Polynomial::one(ring))];
        }
        if j == 0 {
            return vec![(a, Polynomial::one(ring))];
        }
        if i + j > self.resolution.len() {
            return Vec::new();
        }
        if (i, a) <= (j, b) {
            self.table[&(i, a, j, b)].clone()
        } else {
            let v = &self.table[&(j, b, i, a)];
            if (i * j) % 2 == 1 {
                v.iter().map(|(k, p)| (*k, p.neg())).collect()
            } else {
                v.clone()
            }
        }
    }

    /// Product of `x ∈ F_i` and `y ∈ F_j`.
    pub fn multiply(&self, i: usize, x: &Vector, j: usize, y: &Vector) -> Vector {
        let mut acc = Vec::new();
        for (a, p) in x {
            for (b, q) in y {
                acc = vec_add_scaled(&acc, &(p * q), &self.basis_product(i, *a, j, *b));
            }
        }
        acc
    }

    /// Checks the Leibniz rule, graded commutativity, vanishing odd squares
    /// and the unit on every pair of basis elements.
    pub fn check_axioms(&self) -> DgAxioms {
        let f = &self.resolution;
        let one = Polynomial::one(f.ring());
        let mut report = DgAxioms { leibniz: true, commutative: true, odd_squares: true, unit: true, checked_pairs: 0 };
        for i in 0..=f.len() {
            for j in 0..=f.len() - i {
                for a in 0..f.rank(i) {
                    for b in 0..f.rank(j) {
                        report.checked_pairs += 1;
                        let xy = self.basis_product(i, a, j, b);
                        let yx = self.basis_product(j, b, i, a);
                        let sign = if (i * j) % 2 == 1 { one.neg() } else { one.clone() };
                        if vec_add_scaled(&xy, &sign.neg(), &yx).iter().any(|e| !e.1.is_zero()) {
                            report.commutative = false;
                        }
                        if i % 2 == 1 && i == j && a == b && !xy.is_empty() {
                            report.odd_squares = false;
                        }
                        if i == 0 && xy != vec![(b, one.clone())] {
                            report.unit = false;
                        }
                        let x = vec![(a, one.clone())];
                        let y = vec![(b, one.clone())];
                        let lhs = f.apply_d(i + j, &xy);
                        let t1 = self.multiply(i.saturating_sub(1), &f.apply_d(i, &x), j, &y);
                        let t2 = self.multiply(i, &x, j.saturating_sub(1), &f.apply_d(j, &y));
                        let s = if i % 2 == 0 { one.clone() } else { one.neg() };
                        let rhs = vec_add_scaled(&t1, &s, &t2);
                        if lhs != rhs {
                            report.leibniz = false;
                        }
                    }
                }
            }
        }
        report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DgAxioms {
    pub leibniz: bool,
    pub commutative: bool,
    pub odd_squares: bool,
    pub unit: bool,
    pub checked_pairs: usize,
}

impl DgAxioms {
    pub fn all(&self) -> bool {
        self.leibniz && self.commutative && self.odd_squares && self.unit
    }
}

/// DG product on a resolution of length at most three.
pub fn dg_product_length3(f: &ChainComplex) -> Result<DgProduct> {
    if f.len() > 3 {
        return Err(Error::precondition("resolution longer than 3"));
    }
    DgProduct::build(f)
}

/// Comparison maps `L_i : K_i -> F_i` from the Koszul complex on a regular
/// sequence `f_1..f_m` generating `𝔞 ⊆ I` into a resolution `F` of `R/I`,
/// and `Φ_i : K_i -> F_{i-1} ⊗ K_1` for `i >= 2`.
#[derive(Debug, Clone)]
pub struct ComparisonMaps {
    pub a_generators: Vec<Polynomial>,
    pub koszul: ChainComplex,
    pub algebra: KoszulAlgebra,
    pub product: DgProduct,
    /// `l[i] : K_i -> F_i` for `i = 0..=m`.
    pub l: Vec<Matrix>,
    /// `phi[i] : K_i -> F_{i-1} ⊗ K_1`, zero for `i < 2`. Basis of
    /// `F_{i-1} ⊗ K_1` is `(a, r) ↦ a·m + r`.
    pub phi: Vec<Matrix>,
}

impl ComparisonMaps {
    pub fn resolution(&self) -> &ChainComplex {
        self.product.resolution()
    }

    pub fn m(&self) -> usize {
        self.a_generators.len()
    }

    /// Builds `L_i` by left-nested products of `L_1` and `Φ_i` from the
    /// sign formula, for a given `L_1`.
    pub fn from_l1(a_generators: Vec<Polynomial>, product: DgProduct, l1: Matrix) -> Self {
        let f = product.resolution().clone();
        let ring = f.ring().clone();
        let m = a_generators.len();
        let koszul = koszul_complex(&ring, &a_generators);
        let algebra = KoszulAlgebra::new(m);
        let mut l = vec![Matrix::identity(&ring, 1), l1];
        for i in 2..=m {
            let cols = algebra
                .basis(i)
                .iter()
                .map(|&s| {
                    let elems = crate::koszul::elements(s);
                    let mut acc = l[1].cols[elems[0]].clone();
                    for (deg, &e) in elems.iter().enumerate().skip(1) {
                        acc = product.multiply(deg, &acc, 1, &l[1].cols[e]);
                    }
                    acc
                })
                .collect();
            l.push(Matrix::from_columns(f.rank(i), cols));
        }
        let mut phi = vec![Matrix::zero(0, 1), Matrix::zero(f.rank(0) * m, m)];
        for i in 2..=m {
            let cols = algebra
                .basis(i)
                .iter()
                .map(|&s| {
                    let elems = crate::koszul::elements(s);
                    let mut acc: Vec<(usize, Polynomial)> = Vec::new();
                    for (pos, &r) in elems.iter().enumerate() {
                        let greater = elems.len() - 1 - pos;
                        let rest = s & !(1 << r);
                        let col = &l[i - 1].cols[algebra.index_of(rest)];
                        for (a, p) in col {
                            acc.push((a * m + r, if greater % 2 == 1 { p.neg() } else { p.clone() }));
                        }
                    }
                    collect_sorted(acc)
                })
                .collect();
            phi.push(Matrix::from_columns(f.rank(i - 1) * m, cols));
        }
        ComparisonMaps { a_generators, koszul, algebra, product, l, phi }
    }

    /// `d^F_i ⊗ 1 : F_i ⊗ K_1 -> F_{i-1} ⊗ K_1`.
    pub fn tensor_k1_differential(&self, i: usize) -> Matrix {
        let f = self.resolution();
        let m = self.m();
        let d = f.d(i);
        let mut cols = Vec::with_capacity(f.rank(i) * m);
        for a in 0..f.rank(i) {
            for r in 0..m {
                cols.push(d.cols[a].iter().map(|(b, p)| (b * m + r, p.clone())).collect());
            }
        }
        Matrix::from_columns(f.rank(i.saturating_sub(1)) * m, cols)
    }

    /// `d^F_1 ∘ L_1 = d^K_1`.
    pub fn l1_lifts_generators(&self) -> bool {
        self.resolution().d(1).compose(&self.l[1]) == self.koszul.d(1)
    }
}

/// Comparison maps for a complete intersection `𝔞 ⊆ I` into a resolution `F`
/// of `R/I` carrying `product`. `L_1(f_r)` is the canonical lift of `f_r`.
pub fn comparison_maps(a: &Ideal, i: &Ideal, product: DgProduct) -> Result<ComparisonMaps> {
    let ring = a.ring();
    if !a.is_contained_in(i)? {
        return Err(Error::precondition(format!("{a} is not contained in {i}")));
    }
    let gens = a.minimal_generators().to_vec();
    if !is_regular_sequence(ring, &gens)? {
        return Err(Error::precondition(format!("{a} is not a complete intersection")));
    }
    let f = product.resolution().clone();
    if f.len() == 0 && !gens.is_empty() {
        return Err(Error::precondition("resolution of R/I is trivial"));
    }
    let mut lifter = Lifter::new(&f);
    let cols = gens
        .iter()
        .map(|g| lifter.lift(&vec![(0, g.clone())], 1))
        .collect::<Result<Vec<_>>>()?;
    let l1 = Matrix::from_columns(f.rank(1), cols);
    Ok(ComparisonMaps::from_l1(gens, product, l1))
}

/// `Φ_{i-1} ∘ d^K_i = (d^F_{i-1} ⊗ 1) ∘ Φ_i` for every `i >= 3`, together with
/// `d^F ∘ L_1 = d^K`.
pub fn verify_phi_chain_map(cm: &ComparisonMaps) -> bool {
    if !cm.l1_lifts_generators() {
        return false;
    }
    (3..=cm.m()).all(|i| cm.phi[i - 1].compose(&cm.koszul.d(i)) == cm.tensor_k1_differential(i - 1).compose(&cm.phi[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolynomialRing;
    use crate::resolutions::minimal_free_resolution;
    use std::sync::Arc;

    fn ring3() -> Arc<PolynomialRing> {
        PolynomialRing::standard(3)
    }

    fn vars(r: &Arc<PolynomialRing>) -> Vec<Polynomial> {
        (0..r.nvars()).map(|i| Polynomial::variable(r, i)).collect()
    }

    #[test]
    fn koszul_products() {
        let r = ring3();
        let alg = KoszulAlgebra::new(3);
        let one = Polynomial::one(&r);
        // e_{12} ∧ e_3 = e_{123}
        let e12 = vec![(alg.index_of(0b011), one.clone())];
        let e3 = vec![(alg.index_of(0b100), one.clone())];
        assert_eq!(koszul_product(&alg, 2, &e12, 1, &e3), vec![(0, one.clone())]);
        let e1 = vec![(0, one.clone())];
        let e2 = vec![(1, one.clone())];
        assert!(koszul_product(&alg, 1, &e1, 1, &e1).is_empty());
        assert_eq!(koszul_product(&alg, 1, &e2, 1, &e1), vec![(0, one.neg())]);
    }

    #[test]
    fn lift_examples() {
        let r = PolynomialRing::standard(2);
        let v = vars(&r);
        let k = koszul_complex(&r, &v);
        let target = vec![(0, v[1].clone()), (1, v[0].neg())];
        assert_eq!(lift_through(&k, &target, 2).unwrap(), vec![(0, Polynomial::one(&r).neg())]);
        assert!(lift_through(&k, &Vec::new(), 2).unwrap().is_empty());
        let not_cycle = vec![(0, v[0].clone())];
        assert!(lift_through(&k, &not_cycle, 2).is_err());
        let r3 = ring3();
        let m = Ideal::maximal(&r3);
        let m2 = m.product(&m).unwrap();
        let f = minimal_free_resolution(&m2).unwrap();
        // any syzygy column is a boundary in F_1
        let target = f.d(2).cols[0].clone();
        let x = lift_through(&f, &target, 2).unwrap();
        assert_eq!(f.apply_d(2, &x), target);
        let unit_target = vec![(0, Polynomial::one(&r3))];
        assert!(lift_through(&f, &unit_target, 1).is_err());
    }

    #[test]
    fn products_satisfy_axioms() {
        let r = ring3();
        let m = Ideal::maximal(&r);
        for ideal in [m.clone(), m.product(&m).unwrap(), Ideal::monomial(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 0, 3]])] {
            let f = minimal_free_resolution(&ideal).unwrap();
            let p = dg_product_length3(&f).unwrap();
            let ax = p.check_axioms();
            assert!(ax.all(), "{ideal}: {ax:?}");
        }
    }

    #[test]
    fn koszul_resolution_product_is_exterior() {
        let r = ring3();
        let f = minimal_free_resolution(&Ideal::maximal(&r)).unwrap();
        let p = dg_product_length3(&f).unwrap();
        // F_1 × F_2 -> F_3 is a perfect pairing after reduction mod m
        let k = *r.field();
        let rows: Vec<crate::linalg::SparseVec> = (0..3)
            .map(|a| {
                (0..3)
                    .filter_map(|b| p.basis_product(1, a, 2, b).first().map(|e| (b as u32, e.1.constant_coefficient())))
                    .filter(|e| e.1 != 0)
                    .collect()
            })
            .collect();
        assert_eq!(crate::linalg::rank(&k, &rows), 3);
        assert!(p.basis_product(1, 0, 1, 0).is_empty());
    }

    #[test]
    fn comparison_maps_for_squares_in_maximal_ideal() {
        let r = ring3();
        let v = vars(&r);
        let m = Ideal::maximal(&r);
        let a = Ideal::new(&r, v.iter().map(|x| x * x).collect()).unwrap();
        let f = minimal_free_resolution(&m).unwrap();
        let cm = comparison_maps(&a, &m, DgProduct::build(&f).unwrap()).unwrap();
        for i in 0..3 {
            assert_eq!(cm.l[1].cols[i], vec![(i, v[i].clone())]);
        }
        assert!(verify_phi_chain_map(&cm));
        // Φ_2(f_12) = L_1(f_1) ⊗ f_2 - L_1(f_2) ⊗ f_1
        let expected = collect_sorted(vec![(0 * 3 + 1, v[0].clone()), (1 * 3 + 0, v[1].neg())]);
        assert_eq!(cm.phi[2].cols[0], expected);
        let mut bad = cm.l[1].clone();
        bad.cols[0] = vec![(0, v[0].scale(2))];
        let corrupted = ComparisonMaps::from_l1(cm.a_generators.clone(), cm.product.clone(), bad);
        assert!(!verify_phi_chain_map(&corrupted));
    }

    #[test]
    fn identity_comparison() {
        let r = ring3();
        let m = Ideal::maximal(&r);
        let f = minimal_free_resolution(&m).unwrap();
        let cm = comparison_maps(&m, &m, DgProduct::build(&f).unwrap()).unwrap();
        assert!(verify_phi_chain_map(&cm));
        assert!(cm.l[1].constant_part().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn comparison_preconditions() {
        let r = ring3();
        let v = vars(&r);
        let xy = Ideal::new(&r, vec![v[0].clone(), v[1].clone()]).unwrap();
        let f = minimal_free_resolution(&xy).unwrap();
        let m = Ideal::maximal(&r);
        assert!(comparison_maps(&m, &xy, DgProduct::build(&f).unwrap()).is_err());
        let f = minimal_free_resolution(&m).unwrap();
        let not_ci = Ideal::new(&r, vec![&v[0] * &v[0], &v[0] * &v[1]]).unwrap();
        assert!(comparison_maps(&not_ci, &m, DgProduct::build(&f).unwrap()).is_err());
    }
}
