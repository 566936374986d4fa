//! Ideals of the graded polynomial ring: Gröbner bases, normal forms with
//! cofactors, minimal generators and ideal arithmetic.

pub mod buchberger;
pub mod module;
pub mod syzygy;

use std::fmt;
use std::sync::{Arc, OnceLock};

use buchberger::{groebner_basis, reduce_full, DivisorIndex};
use module::{ModTerm, ModVec, ModuleOrder};
pub use syzygy::{in_column_span, minimal_generator_indices, syzygies, ModulePresentation};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, PolynomialRing};

#[derive(Debug)]
struct GbCache {
    polys: Vec<Polynomial>,
    vecs: Vec<ModVec>,
    index: DivisorIndex,
}

/// A homogeneous ideal given by generators, with lazily computed Gröbner
/// basis and minimal generators.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<PolynomialRing>,
    generators: Vec<Polynomial>,
    gb: OnceLock<Arc<GbCache>>,
    min_gens: OnceLock<Vec<Polynomial>>,
}

impl PartialEq for Ideal {
    /// Equality of ideals, not of generator lists.
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolynomialRing>, generators: Vec<Polynomial>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if **g.ring() != **ring {
                return Err(Error::precondition(format!("generator {i} lives in a different ring")));
            }
            if !g.is_homogeneous() {
                return Err(Error::precondition(format!("generator {g} is not homogeneous")));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators, gb: OnceLock::new(), min_gens: OnceLock::new() })
    }

    pub fn zero(ring: &Arc<PolynomialRing>) -> Self {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    /// The irrelevant ideal `m = (x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<PolynomialRing>) -> Self {
        Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect()).unwrap()
    }

    /// Ideal generated by monomials given as exponent vectors.
    pub fn monomial(ring: &Arc<PolynomialRing>, exps: &[&[u32]]) -> Self {
        let gens = exps.iter().map(|e| Polynomial::term(ring, Monomial::from_exponents(e), 1)).collect();
        Ideal::new(ring, gens).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn cache(&self) -> &Arc<GbCache> {
        self.gb.get_or_init(|| {
            let k = self.ring.field();
            let ord = ModuleOrder::ideal(self.ring.order());
            let gens: Vec<ModVec> = self.generators.iter().map(|g| ModVec::from_polys(k, &ord, &[g.clone()], 0)).collect();
            let vecs = groebner_basis(k, &ord, &gens);
            let mut index = DivisorIndex::default();
            for (i, v) in vecs.iter().enumerate() {
                index.push(i, &v.terms[0].0);
            }
            let polys = vecs.iter().map(|v| v.to_polys(&self.ring, 0, 1).pop().unwrap()).collect();
            Arc::new(GbCache { polys, vecs, index })
        })
    }

    /// Reduced Gröbner basis, monic, ascending by leading term.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.cache().polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.cache().vecs.iter().map(|v| v.terms[0].0.mono).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner_basis().iter().any(|g| g.is_unit())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.normal_form_with_cofactors(f, false).0
    }

    /// Division by the Gröbner basis: `f = sum cofactor_j * gb_j + remainder`.
    /// Cofactors are only collected when `track` is set.
    pub fn normal_form_with_cofactors(&self, f: &Polynomial, track: bool) -> (Polynomial, Option<Vec<Polynomial>>) {
        let c = self.cache();
        let k = self.ring.field();
        let ord = ModuleOrder::ideal(self.ring.order());
        let v = ModVec::from_polys(k, &ord, &[f.clone()], 0);
        let mut q = vec![Vec::new(); c.vecs.len()];
        let rem = reduce_full(k, &ord, &v, &c.vecs, &c.index, if track { Some(&mut q) } else { None });
        let rem = rem.to_polys(&self.ring, 0, 1).pop().unwrap();
        let cof = track.then(|| q.into_iter().map(|t| Polynomial::from_terms(&self.ring, t)).collect());
        (rem, cof)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether monomial `m` is standard (outside the initial ideal).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        let t = ModTerm { mono: *m, comp: 0 };
        let c = self.cache();
        c.index.find(&c.vecs, &t).is_none()
    }

    /// Standard monomials of degree `d`, descending in the ring order.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.ring.monomials_of_degree(d).into_iter().filter(|m| self.is_standard(m)).collect()
    }

    /// Minimal generators: each generator is dropped when it lies in the
    /// ideal of the remaining ones, scanning from the end so that the
    /// earliest-listed copy survives.
    pub fn minimal_generators(&self) -> &[Polynomial] {
        self.min_gens.get_or_init(|| {
            let mut kept: Vec<Polynomial> = self.generators.clone();
            let mut i = kept.len();
            while i > 0 {
                i -= 1;
                let others: Vec<Polynomial> = kept.iter().enumerate().filter(|e| e.0 != i).map(|e| e.1.clone()).collect();
                let d = kept[i].total_degree().unwrap();
                // graded: only generators of degree <= d matter
                let lower: Vec<Polynomial> = others.into_iter().filter(|g| g.total_degree().unwrap() <= d).collect();
                if Ideal::new(&self.ring, lower).unwrap().contains(&kept[i]) {
                    kept.remove(i);
                }
            }
            kept
        })
    }

    /// `μ(I)`, the minimal number of generators.
    pub fn mu(&self) -> usize {
        self.minimal_generators().len()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.terms().len() == 1)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::precondition("ideals live in different rings"))
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    /// Product ideal, generated by pairwise products of minimal generators
    /// and then minimalized.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut g = Vec::new();
        for a in self.minimal_generators() {
            for b in other.minimal_generators() {
                g.push(a * b);
            }
        }
        let raw = Ideal::new(&self.ring, g)?;
        let min = raw.minimal_generators().to_vec();
        Ideal::new(&self.ring, min)
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.generators.iter().all(|g| other.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.is_contained_in(other)? && other.is_contained_in(self)?)
    }

    /// `self ⊆ m·other`, i.e. every generator lies in the product with the
    /// irrelevant ideal.
    pub fn is_contained_in_m_times(&self, other: &Ideal) -> Result<bool> {
        let mo = Ideal::maximal(&self.ring).product(other)?;
        self.is_contained_in(&mo)
    }

    /// Column presentation of the minimal generators as a row `R^μ → R`.
    pub fn generator_row(&self) -> Result<ModulePresentation> {
        ModulePresentation::row(&self.ring, self.minimal_generators())
    }

    /// Ideal of entries of the first syzygy matrix of the minimal generators.
    pub fn fitting_ideal(&self) -> Result<Ideal> {
        if self.is_unit_ideal() {
            return Err(Error::precondition("Fitting ideal requested for the unit ideal"));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let syz = syzygies(&self.generator_row()?);
        let entries = syz.columns.iter().flatten().filter(|e| !e.is_zero()).cloned().collect();
        let raw = Ideal::new(&self.ring, entries)?;
        let min = raw.minimal_generators().to_vec();
        Ideal::new(&self.ring, min)
    }

    /// Dimension of the degree-`d` strand `I_d`, counted by k-linear algebra
    /// on monomial multiples of the generators. Independent of Gröbner bases.
    pub fn strand_dimension(&self, d: u32) -> usize {
        let k = *self.ring.field();
        let mut coords = std::collections::HashMap::new();
        let mut ech = Echelon::new(k);
        for g in &self.generators {
            let gd = g.total_degree().unwrap();
            if gd > d {
                continue;
            }
            for m in self.ring.monomials_of_degree(d - gd) {
                let mut v = Vec::new();
                for &(t, c) in g.terms() {
                    let n = coords.len() as u32;
                    v.push((*coords.entry(t.mul(&m)).or_insert(n), c));
                }
                ech.insert(&crate::linalg::normalize(&k, v));
            }
        }
        ech.rank()
    }
}

/// True iff the Koszul complex on `seq` has vanishing first homology over R,
/// i.e. every syzygy of the sequence is generated by Koszul relations.
pub fn is_regular_sequence(ring: &Arc<PolynomialRing>, seq: &[Polynomial]) -> Result<bool> {
    if seq.is_empty() {
        return Ok(true);
    }
    for f in seq {
        if f.is_zero() {
            return Ok(false);
        }
        if !f.is_homogeneous() || f.total_degree() == Some(0) {
            return Err(Error::precondition("regular sequence test needs homogeneous elements of positive degree"));
        }
    }
    let row = ModulePresentation::row(ring, seq)?;
    let syz = syzygies(&row);
    let n = seq.len();
    let mut kos_cols = Vec::new();
    let mut kos_degs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut col = vec![Polynomial::zero(ring); n];
            col[i] = seq[j].clone();
            col[j] = seq[i].neg();
            kos_cols.push(col);
            kos_degs.push(row.column_degrees[i] + row.column_degrees[j]);
        }
    }
    let kos = ModulePresentation::new(ring, row.column_degrees.clone(), kos_degs, kos_cols)?;
    Ok(syz.columns.iter().zip(&syz.column_degrees).all(|(c, &d)| in_column_span(&kos, c, d)))
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r3() -> Arc<PolynomialRing> {
        PolynomialRing::standard(3)
    }

    fn vars(r: &Arc<PolynomialRing>) -> Vec<Polynomial> {
        (0..r.nvars()).map(|i| Polynomial::variable(r, i)).collect()
    }

    #[test]
    fn small_bases() {
        let r = r3();
        let v = vars(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        assert_eq!(Ideal::new(&r, vec![x.clone()]).unwrap().groebner_basis(), &[x.clone()]);
        let i = Ideal::new(&r, vec![x * x, x * y]).unwrap();
        let mut gb = i.groebner_basis().to_vec();
        gb.sort_by(|a, b| r.order().compare(&b.terms()[0].0, &a.terms()[0].0));
        assert_eq!(gb, vec![x * x, x * y]);
        assert_eq!(Ideal::maximal(&r).groebner_basis().len(), 3);
        let _ = z;
    }

    #[test]
    fn normal_forms() {
        let r = r3();
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let i = Ideal::new(&r, vec![x * x, x * y]).unwrap();
        assert!(i.normal_form(&(&(x * x) * y)).is_zero());
        assert_eq!(i.normal_form(&(y * y)), y * y);
        let j = Ideal::new(&r, vec![x * x]).unwrap();
        let (rem, cof) = j.normal_form_with_cofactors(&(&(x * x) * x), true);
        assert!(rem.is_zero());
        assert_eq!(cof.unwrap(), vec![x.clone()]);
    }

    #[test]
    fn ideal_arithmetic() {
        let r = r3();
        let v = vars(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let a = Ideal::new(&r, vec![x.clone()]).unwrap();
        let b = Ideal::new(&r, vec![y.clone(), z.clone()]).unwrap();
        assert_eq!(a.product(&b).unwrap().generators(), &[x * y, x * z]);
        let xy = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        let m = Ideal::maximal(&r);
        let p = xy.product(&m).unwrap();
        assert_eq!(p.generators(), &[x * x, x * y, x * z, y * y, y * z]);
        assert!(xy.is_contained_in(&m).unwrap());
        assert!(!m.is_contained_in(&xy).unwrap());
        assert!(a.sum(&b).unwrap() == m);
        let other = PolynomialRing::standard(2);
        assert!(a.sum(&Ideal::maximal(&other)).is_err());
    }

    #[test]
    fn fitting_ideals() {
        let r = r3();
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let xy = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        assert!(xy.fitting_ideal().unwrap() == xy);
        let sq = Ideal::new(&r, vec![x * x, y * y]).unwrap();
        assert!(sq.fitting_ideal().unwrap() == sq);
        let mixed = Ideal::new(&r, vec![x * x, x * y]).unwrap();
        assert!(mixed.fitting_ideal().unwrap() == xy);
        let unit = Ideal::new(&r, vec![Polynomial::one(&r)]).unwrap();
        assert!(unit.fitting_ideal().is_err());
    }

    #[test]
    fn regular_sequences() {
        let r = r3();
        let v = vars(&r);
        assert!(is_regular_sequence(&r, &v).unwrap());
        assert!(!is_regular_sequence(&r, &[v[0].clone(), &v[0] * &v[1]]).unwrap());
        let r4 = PolynomialRing::standard(4);
        let sq: Vec<Polynomial> = (0..4).map(|i| { let x = Polynomial::variable(&r4, i); &x * &x }).collect();
        assert!(is_regular_sequence(&r4, &sq).unwrap());
        assert!(is_regular_sequence(&r, &[]).unwrap());
    }

    #[test]
    fn minimal_generators_keep_earliest() {
        let r = r3();
        let v = vars(&r);
        let (x, y) = (&v[0], &v[1]);
        let i = Ideal::new(&r, vec![x.clone(), x * y, x.scale(2), y * y]).unwrap();
        assert_eq!(i.minimal_generators(), &[x.clone(), y * y]);
        assert_eq!(i.mu(), 2);
    }

    fn arb_ideal() -> impl Strategy<Value = Vec<(Vec<u32>, Vec<u32>, u32)>> {
        // up to three binomial-like generators of degree 2 or 3
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 3), proptest::collection::vec(0u32..3, 3), 0u32..3),
            1..4,
        )
    }

    fn build(r: &Arc<PolynomialRing>, spec: &[(Vec<u32>, Vec<u32>, u32)]) -> Ideal {
        let mut gens = Vec::new();
        for (a, b, c) in spec {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            if da == 0 {
                continue;
            }
            let ma = Polynomial::term(r, Monomial::from_exponents(a), 1);
            let g = if da == db { &ma + &Polynomial::term(r, Monomial::from_exponents(b), *c) } else { ma };
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ideal::new(r, gens).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn membership_matches_strand_linear_algebra(spec in arb_ideal(), d in 1u32..5) {
            let r = r3();
            let i = build(&r, &spec);
            let total = r.monomials_of_degree(d).len();
            let std = i.standard_monomials(d).len();
            prop_assert_eq!(total - std, i.strand_dimension(d));
            // every generator multiple reduces to zero; GB is idempotent
            let gb2 = Ideal::new(&r, i.groebner_basis().to_vec()).unwrap();
            prop_assert_eq!(gb2.leading_monomials(), i.leading_monomials());
            for g in i.generators() {
                let f = g * &Polynomial::variable(&r, 2);
                let (rem, cof) = i.normal_form_with_cofactors(&f, true);
                prop_assert!(rem.is_zero());
                let mut back = rem.clone();
                for (c, b) in cof.unwrap().iter().zip(i.groebner_basis()) {
                    back = &back + &(c * b);
                }
                prop_assert_eq!(back, f);
            }
        }
    }
}
