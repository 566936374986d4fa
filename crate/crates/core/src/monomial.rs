//! Dense exponent vectors and the two supported term orders.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 8;

/// A monomial `x^a` stored as a fixed-width exponent array. Unused trailing
/// slots are always zero, so monomials of the same ring compare without
/// knowing the variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent exceeds 255");
        }
        m
    }

    pub fn variable(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent-wise difference `self - other` as signed values.
    fn signed_diff(&self, other: &Monomial) -> [i16; MAX_VARS] {
        let mut d = [0i16; MAX_VARS];
        for i in 0..MAX_VARS {
            d[i] = self.exps[i] as i16 - other.exps[i] as i16;
        }
        d
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }

    /// `Greater` means `a` is the larger monomial.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                let diff = a.signed_diff(b);
                match diff.iter().rev().find(|&&d| d != 0) {
                    None => Ordering::Equal,
                    Some(&d) if d < 0 => Ordering::Greater,
                    Some(_) => Ordering::Less,
                }
            }
            MonomialOrder::Lex => {
                let diff = a.signed_diff(b);
                match diff.iter().find(|&&d| d != 0) {
                    None => Ordering::Equal,
                    Some(&d) if d > 0 => Ordering::Greater,
                    Some(_) => Ordering::Less,
                }
            }
        }
    }
}

/// All monomials of total degree `d` in `n` variables, in no particular order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[1, 0, 0])), Ordering::Equal);
        assert_eq!(o.compare(&m(&[0, 1, 0]), &m(&[1, 0, 0])), Ordering::Less);
        // xz < y^2 in grevlex
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn order_axioms_exhaustive_to_degree_four() {
        let mut all = Vec::new();
        for d in 0..=4 {
            all.extend(monomials_of_degree(3, d));
        }
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            for a in &all {
                // refines divisibility
                for b in &all {
                    let ab = o.compare(a, b);
                    assert_eq!(ab.reverse(), o.compare(b, a));
                    assert_eq!(ab == Ordering::Equal, a == b);
                    if a.divides(b) && a != b {
                        assert_eq!(ab, Ordering::Less);
                    }
                    for c in &all {
                        if ab == Ordering::Greater {
                            assert_eq!(o.compare(&a.mul(c), &b.mul(c)), Ordering::Greater);
                            if o.compare(b, c) == Ordering::Greater {
                                assert_eq!(o.compare(a, c), Ordering::Greater);
                            }
                        }
                    }
                }
            }
            // bounded sets have a least element (well-ordering)
            let min = all.iter().min_by(|a, b| o.compare(a, b)).unwrap();
            assert!(min.is_one());
        }
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::ONE]);
    }
}
