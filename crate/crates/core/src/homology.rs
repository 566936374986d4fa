//! Strandwise homology over `k` of complexes reduced modulo a homogeneous
//! ideal. Degree-`d` strands use the basis `(generator, standard monomial)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::complex::{ChainComplex, Vector};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{self, Echelon, SparseVec};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Default strand bound: max generator degree of the quotient ideal times the
/// complex length, plus the number of variables.
pub fn default_strand_bound(quotient: &Ideal, length: usize) -> i64 {
    quotient.max_generator_degree() as i64 * length as i64 + quotient.ring().nvars() as i64
}

/// Coordinates for the degree-`d` strand of a graded free module modulo `Q`.
#[derive(Debug, Clone)]
pub struct StrandSpace {
    pub internal_degree: i32,
    pub basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), u32>,
}

impl StrandSpace {
    pub fn new(quotient: &Ideal, degrees: &[i32], d: i32) -> Self {
        let mut basis = Vec::new();
        let mut by_shift: HashMap<i32, Vec<Monomial>> = HashMap::new();
        for (g, &dg) in degrees.iter().enumerate() {
            let s = d - dg;
            if s < 0 {
                continue;
            }
            let monos = by_shift.entry(s).or_insert_with(|| quotient.standard_monomials(s as u32));
            basis.extend(monos.iter().map(|m| (g, *m)));
        }
        StrandSpace::from_basis(d, basis)
    }

    pub fn from_basis(d: i32, basis: Vec<(usize, Monomial)>) -> Self {
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i as u32)).collect();
        StrandSpace { internal_degree: d, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lookup(&self, g: usize, m: &Monomial) -> Option<u32> {
        self.index.get(&(g, *m)).copied()
    }

    /// Element with polynomial coefficients from a coordinate vector.
    pub fn to_element(&self, quotient: &Ideal, v: &SparseVec) -> Vector {
        let ring = quotient.ring();
        let mut by_gen: BTreeMap<usize, Vec<(Monomial, u32)>> = BTreeMap::new();
        for &(i, c) in v {
            let (g, m) = self.basis[i as usize];
            by_gen.entry(g).or_default().push((m, c));
        }
        by_gen.into_iter().map(|(g, t)| (g, Polynomial::from_terms(ring, t))).filter(|e| !e.1.is_zero()).collect()
    }
}

/// Normal forms of monomials modulo a fixed ideal, memoized per caller.
pub struct Reducer<'a> {
    quotient: &'a Ideal,
    monomial: bool,
    cache: HashMap<Monomial, Vec<(Monomial, u32)>>,
}

impl<'a> Reducer<'a> {
    pub fn new(quotient: &'a Ideal) -> Self {
        Reducer { quotient, monomial: quotient.is_monomial(), cache: HashMap::new() }
    }

    pub fn quotient(&self) -> &Ideal {
        self.quotient
    }

    pub fn reduce_monomial(&mut self, m: &Monomial) -> Vec<(Monomial, u32)> {
        if self.quotient.is_zero() {
            return vec![(*m, 1)];
        }
        if self.monomial {
            return if self.quotient.is_standard(m) { vec![(*m, 1)] } else { Vec::new() };
        }
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let ring = self.quotient.ring();
        let nf = self.quotient.normal_form(&Polynomial::term(ring, *m, 1)).into_terms();
        self.cache.insert(*m, nf.clone());
        nf
    }

    /// Coordinates of a homogeneous degree-`d` element in `space`.
    pub fn vectorize(&mut self, space: &StrandSpace, v: &Vector) -> SparseVec {
        self.vectorize_scaled(space, v, &Monomial::ONE, 1)
    }

    pub fn vectorize_scaled(&mut self, space: &StrandSpace, v: &Vector, mult: &Monomial, scalar: u32) -> SparseVec {
        let k = *self.quotient.ring().field();
        let mut out = Vec::new();
        for (g, p) in v {
            for &(m, c) in p.terms() {
                let c = k.mul(c, scalar);
                for (n, e) in self.reduce_monomial(&m.mul(mult)) {
                    let idx = space.lookup(*g, &n).expect("element lies in the strand");
                    out.push((idx, k.mul(c, e)));
                }
            }
        }
        linalg::normalize(&k, out)
    }

    /// Columns of `d_i` restricted to strand `d`, as images of the basis of
    /// `source`.
    pub fn strand_map(&mut self, c: &ChainComplex, i: usize, source: &StrandSpace, target: &StrandSpace) -> Vec<SparseVec> {
        let Some(d) = c.d_ref(i) else {
            return vec![Vec::new(); source.dim()];
        };
        source.basis.iter().map(|(g, m)| self.vectorize_scaled(target, &d.cols[*g], m, 1)).collect()
    }
}

/// Homology of `C ⊗ R/Q` in homological degree `i`, internal degree `d`.
#[derive(Debug, Clone)]
pub struct HomologyStrand {
    pub homological_degree: usize,
    pub internal_degree: i32,
    pub dimension: usize,
    /// Cycle representatives of a basis, as module elements with standard
    /// monomial coefficients.
    pub cycle_basis: Vec<Vector>,
    pub space: StrandSpace,
    /// Cycle representatives as strand coordinates.
    pub cycle_coords: Vec<SparseVec>,
    /// Boundaries (untagged) then class representatives (tagged by class index).
    classes: Echelon,
    /// Kernel of the outgoing map, for cycle tests.
    outgoing: Vec<SparseVec>,
}

impl HomologyStrand {
    /// Class coordinates of a cycle given in strand coordinates.
    pub fn class_of(&self, v: &SparseVec) -> Result<SparseVec> {
        let k = *self.classes.field();
        let image = linalg::apply(&k, &self.outgoing, v);
        if !image.is_empty() {
            return Err(Error::precondition("vector is not a cycle"));
        }
        let (rem, tag) = self.classes.reduce_tracked(v.clone(), Vec::new());
        if !rem.is_empty() {
            return Err(Error::internal("cycle outside the span of boundaries and class representatives"));
        }
        Ok(linalg::scale(&k, &tag, k.neg(1)))
    }

    pub fn is_boundary(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.class_of(v)?.is_empty())
    }
}

/// Computes one homology strand. `bound` defaults to [`default_strand_bound`].
pub fn homology_strand(c: &ChainComplex, quotient: &Ideal, i: usize, d: i32, bound: Option<i64>) -> Result<HomologyStrand> {
    let bound = bound.unwrap_or_else(|| default_strand_bound(quotient, c.len()));
    if d as i64 > bound {
        return Err(Error::StrandBound { needed: d as i64, bound });
    }
    let k = *quotient.ring().field();
    let mut red = Reducer::new(quotient);
    let here = StrandSpace::new(quotient, &c.module(i).degrees, d);
    let below = StrandSpace::new(quotient, &c.module(i.wrapping_sub(1)).degrees, d);
    let above = StrandSpace::new(quotient, &c.module(i + 1).degrees, d);
    let outgoing = if i == 0 { vec![Vec::new(); here.dim()] } else { red.strand_map(c, i, &here, &below) };
    let incoming = red.strand_map(c, i + 1, &above, &here);
    let cycles = linalg::kernel_basis(&k, &outgoing);
    let mut classes = Echelon::new(k);
    for b in &incoming {
        classes.insert(b);
    }
    let mut cycle_coords = Vec::new();
    for z in cycles {
        let tag = linalg::unit(cycle_coords.len() as u32);
        if classes.insert_tracked(z.clone(), tag).is_none() {
            cycle_coords.push(z);
        }
    }
    let cycle_basis = cycle_coords.iter().map(|z| here.to_element(quotient, z)).collect();
    Ok(HomologyStrand {
        homological_degree: i,
        internal_degree: d,
        dimension: cycle_coords.len(),
        cycle_basis,
        space: here,
        cycle_coords,
        classes,
        outgoing,
    })
}

/// `dim H_i(C ⊗ R/Q)_d` for all `i` and `lo <= d <= hi`, strands computed
/// in parallel. Only nonzero entries are returned.
pub fn homology_dimensions(c: &ChainComplex, quotient: &Ideal, lo: i32, hi: i32) -> BTreeMap<(usize, i32), usize> {
    let k = *quotient.ring().field();
    let per_degree: Vec<Vec<((usize, i32), usize)>> = (lo..=hi)
        .into_par_iter()
        .map(|d| {
            let mut red = Reducer::new(quotient);
            let spaces: Vec<StrandSpace> =
                (0..=c.len()).map(|i| StrandSpace::new(quotient, &c.module(i).degrees, d)).collect();
            let ranks: Vec<usize> = (0..=c.len() + 1)
                .map(|i| {
                    if i == 0 || i > c.len() {
                        0
                    } else {
                        linalg::rank(&k, &red.strand_map(c, i, &spaces[i], &spaces[i - 1]))
                    }
                })
                .collect();
            (0..=c.len())
                .filter_map(|i| {
                    let h = spaces[i].dim() - ranks[i] - ranks[i + 1];
                    (h > 0).then_some(((i, d), h))
                })
                .collect()
        })
        .collect();
    per_degree.into_iter().flatten().collect()
}

/// Lowest internal degree with a nonzero strand in positive homological degree.
pub fn min_degree(c: &ChainComplex) -> i32 {
    c.modules().iter().flat_map(|m| m.degrees.iter().copied()).min().unwrap_or(0)
}

/// Multidegrees of all generators when every differential entry is a single
/// term and the grading is consistent; `C_0` must be generated in degree 0.
pub fn multigrading(c: &ChainComplex) -> Option<Vec<Vec<Monomial>>> {
    if c.module(0).degrees.iter().any(|&d| d != 0) {
        return None;
    }
    let mut out = vec![vec![Monomial::ONE; c.rank(0)]];
    for i in 1..=c.len() {
        let d = c.d_ref(i)?;
        let mut level = Vec::with_capacity(c.rank(i));
        for col in &d.cols {
            let mut deg: Option<Monomial> = None;
            for (r, p) in col {
                if p.terms().len() != 1 {
                    return None;
                }
                let m = out[i - 1][*r].mul(&p.terms()[0].0);
                match deg {
                    None => deg = Some(m),
                    Some(e) if e != m => return None,
                    _ => {}
                }
            }
            level.push(deg?);
        }
        out.push(level);
    }
    Some(out)
}

fn multi_space(gens: &[Monomial], alpha: &Monomial) -> StrandSpace {
    let basis = gens.iter().enumerate().filter_map(|(g, b)| b.quotient_of(alpha).map(|m| (g, m))).collect();
    StrandSpace::from_basis(alpha.degree() as i32, basis)
}

/// True iff `H_i(C)_d = 0` over `R` for every `i >= 1` and `d <= bound`.
/// Monomial complexes are checked one multidegree at a time.
pub fn is_exact_through(c: &ChainComplex, bound: i64) -> bool {
    let zero = Ideal::zero(c.ring());
    let Some(mdeg) = multigrading(c) else {
        let lo = min_degree(c);
        return homology_dimensions(c, &zero, lo, bound as i32).keys().all(|(i, _)| *i == 0);
    };
    let k = *c.ring().field();
    let n = c.ring().nvars();
    (1..=c.len()).all(|i| {
        let mut alphas = std::collections::BTreeSet::new();
        for b in &mdeg[i] {
            let room = bound - b.degree() as i64;
            for d in 0..=room.max(-1) {
                for m in crate::monomial::monomials_of_degree(n, d as u32) {
                    alphas.insert(b.mul(&m));
                }
            }
        }
        let alphas: Vec<Monomial> = alphas.into_iter().collect();
        alphas.par_iter().all(|alpha| {
            let mut red = Reducer::new(&zero);
            let here = multi_space(&mdeg[i], alpha);
            let below = multi_space(&mdeg[i - 1], alpha);
            let out_rank = linalg::rank(&k, &red.strand_map(c, i, &here, &below));
            let in_rank = if i < c.len() {
                let above = multi_space(&mdeg[i + 1], alpha);
                linalg::rank(&k, &red.strand_map(c, i + 1, &above, &here))
            } else {
                0
            };
            here.dim() == out_rank + in_rank
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::koszul_complex;
    use crate::poly::PolynomialRing;

    fn setup() -> (std::sync::Arc<PolynomialRing>, ChainComplex) {
        let r = PolynomialRing::standard(3);
        let v: Vec<_> = (0..3).map(|i| Polynomial::variable(&r, i)).collect();
        let k = koszul_complex(&r, &v);
        (r, k)
    }

    #[test]
    fn koszul_over_residue_field() {
        let (r, k) = setup();
        let m = Ideal::maximal(&r);
        let h = homology_strand(&k, &m, 1, 1, None).unwrap();
        assert_eq!(h.dimension, 3);
    }

    #[test]
    fn koszul_over_hypersurface_x() {
        let (r, k) = setup();
        let q = Ideal::new(&r, vec![Polynomial::variable(&r, 0)]).unwrap();
        let h = homology_strand(&k, &q, 1, 1, None).unwrap();
        assert_eq!(h.dimension, 1);
        assert_eq!(h.cycle_basis, vec![vec![(0, Polynomial::one(&r))]]);
    }

    #[test]
    fn koszul_over_polynomial_ring_is_exact() {
        let (r, k) = setup();
        let zero = Ideal::zero(&r);
        for d in 0..6 {
            assert_eq!(homology_strand(&k, &zero, 1, d, Some(10)).unwrap().dimension, 0);
        }
        assert!(is_exact_through(&k, 8));
        assert!(multigrading(&k).is_some());
        let lo = homology_dimensions(&k, &zero, 0, 8);
        assert!(lo.keys().all(|(i, _)| *i == 0));
        let dims = homology_dimensions(&k, &zero, 0, 8);
        assert_eq!(dims.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }

    #[test]
    fn missing_syzygy_detected() {
        let (r, k) = setup();
        let truncated = ChainComplex::new(&r, k.modules()[..2].to_vec(), vec![k.d(1)]).unwrap();
        assert!(!is_exact_through(&truncated, 4));
        let mixed = crate::complex::Matrix::from_columns(
            1,
            vec![vec![(0, &Polynomial::variable(&r, 0) + &Polynomial::variable(&r, 1))]],
        );
        let c = ChainComplex::new(
            &r,
            vec![crate::complex::GradedFreeModule::new(vec![0]), crate::complex::GradedFreeModule::new(vec![1])],
            vec![mixed],
        )
        .unwrap();
        assert!(multigrading(&c).is_none());
        assert!(is_exact_through(&c, 5));
    }

    #[test]
    fn bound_is_enforced() {
        let (r, k) = setup();
        let m = Ideal::maximal(&r);
        assert!(matches!(homology_strand(&k, &m, 1, 7, None), Err(Error::StrandBound { needed: 7, bound: 6 })));
    }

    #[test]
    fn class_coordinates() {
        let (r, k) = setup();
        let x2 = Ideal::new(&r, vec![&Polynomial::variable(&r, 0) * &Polynomial::variable(&r, 0)]).unwrap();
        let h = homology_strand(&k, &x2, 1, 2, None).unwrap();
        assert_eq!(h.dimension, 1);
        let z = h.cycle_coords[0].clone();
        assert_eq!(h.class_of(&z).unwrap(), vec![(0, 1)]);
        let twice = linalg::scale(r.field(), &z, 2);
        assert_eq!(h.class_of(&twice).unwrap(), vec![(0, 2)]);
    }
}
