//! The graded polynomial ring `k[x_1..x_n]` and its elements.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialRing {
    variables: Vec<String>,
    field: PrimeField,
    order: MonomialOrder,
}

impl PolynomialRing {
    pub fn new(variables: Vec<String>, field: PrimeField, order: MonomialOrder) -> Result<Arc<Self>> {
        if variables.is_empty() || variables.len() > MAX_VARS {
            return Err(Error::precondition(format!(
                "variable count must be in 1..={MAX_VARS}, got {}",
                variables.len()
            )));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::precondition(format!("duplicate variable name {v}")));
            }
        }
        Ok(Arc::new(PolynomialRing { variables, field, order }))
    }

    /// `k[x_1..x_n]` over `F_32003` with grevlex and names `x1..xn`
    /// (or `x, y, z, w` for up to four variables).
    pub fn standard(n: usize) -> Arc<Self> {
        let names: Vec<String> = if n <= 4 {
            ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        PolynomialRing::new(names, PrimeField::default(), MonomialOrder::Grevlex).expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Monomials of degree `d`, sorted descending in the ring's order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut v = monomials_of_degree(self.nvars(), d);
        v.sort_by(|a, b| self.order.compare(b, a));
        v
    }
}

/// A polynomial as a descending list of `(monomial, nonzero coefficient)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<PolynomialRing>,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolynomialRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolynomialRing>, c: u32) -> Self {
        Polynomial::term(ring, Monomial::ONE, c)
    }

    pub fn one(ring: &Arc<PolynomialRing>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn variable(ring: &Arc<PolynomialRing>, i: usize) -> Self {
        assert!(i < ring.nvars());
        Polynomial::term(ring, Monomial::variable(i), 1)
    }

    pub fn term(ring: &Arc<PolynomialRing>, m: Monomial, c: u32) -> Self {
        let c = c % ring.field.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Arc<PolynomialRing>, mut terms: Vec<(Monomial, u32)>) -> Self {
        let k = ring.field;
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % k.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = k.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusted constructor: terms already sorted descending, distinct, nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolynomialRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_coefficient(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    /// Maximum monomial degree; `None` stands for the degree of the zero
    /// polynomial (minus infinity).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|t| t.0.degree() == d)
            }
        }
    }

    /// Homogeneous components, by degree ascending.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Polynomial)> {
        let mut parts: std::collections::BTreeMap<u32, Vec<(Monomial, u32)>> = Default::default();
        for &(m, c) in &self.terms {
            parts.entry(m.degree()).or_default().push((m, c));
        }
        parts
            .into_iter()
            .map(|(d, t)| (d, Polynomial::from_sorted_terms(&self.ring, t)))
            .collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| &t.0 == m).map_or(0, |t| t.1)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::precondition("polynomials belong to different rings"))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1, &Monomial::ONE))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let k = self.ring.field;
        Ok(self.add_scaled(other, k.neg(1), &Monomial::ONE))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        let k = self.ring.field;
        let order = self.ring.order;
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, k.mul(b[j].1, c)));
                j += 1;
                continue;
            }
            match order.compare(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, k.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = k.mul_add(a[i].1, b[j].1, c);
                    if s != 0 {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let k = self.ring.field;
        let c = c % k.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, k.mul(a, c))).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let k = self.ring.field;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(t, a)| (t.mul(m), k.mul(a, c))).collect(),
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let k = self.ring.field;
        let mut acc: std::collections::HashMap<Monomial, u64> = Default::default();
        let p = k.characteristic() as u64;
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(&mb)).or_insert(0);
                *e = (*e + ca as u64 * cb as u64) % p;
            }
        }
        let terms = acc.into_iter().filter(|t| t.1 != 0).map(|(m, c)| (m, c as u32)).collect();
        Polynomial::from_terms(&self.ring, terms)
    }


    pub fn make_monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(c)),
        }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

pub(crate) fn format_monomial(ring: &PolynomialRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, v) in ring.variables.iter().enumerate() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(v.clone()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let k = self.ring.field;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let s = k.to_signed(*c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", format_monomial(&self.ring, m))?;
            } else {
                write!(f, "{mag}*{}", format_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r3() -> Arc<PolynomialRing> {
        PolynomialRing::standard(3)
    }

    #[test]
    fn difference_of_squares() {
        let r = r3();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(&p + &Polynomial::zero(&r), p);
        assert_eq!((&x * &x).to_string(), "x^2");
    }

    #[test]
    fn degrees() {
        let r = r3();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        assert_eq!((&(&x * &x) * &y).total_degree(), Some(3));
        assert_eq!(Polynomial::constant(&r, 5).total_degree(), Some(0));
        assert_eq!(Polynomial::zero(&r).total_degree(), None);
        assert!(!(&x + &(&y * &y)).is_homogeneous());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = PolynomialRing::standard(3);
        let b = PolynomialRing::standard(2);
        let x = Polynomial::variable(&a, 0);
        let y = Polynomial::variable(&b, 0);
        assert!(x.try_add(&y).is_err());
        assert!(x.try_mul(&y).is_err());
    }

    fn arb_homogeneous(ring: Arc<PolynomialRing>, d: u32) -> impl Strategy<Value = Polynomial> {
        let mons = ring.monomials_of_degree(d);
        let n = mons.len();
        proptest::collection::vec(0u32..5, n).prop_map(move |cs| {
            Polynomial::from_terms(&ring, mons.iter().copied().zip(cs).collect())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_homogeneous(r3(), 1), b in arb_homogeneous(r3(), 2), c in arb_homogeneous(r3(), 2)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&b + &c, &c + &b);
            let s = &b + &c;
            prop_assert!(s.is_homogeneous());
            prop_assert_eq!(&(&b - &b), &Polynomial::zero(&r3()));
        }
    }
}
