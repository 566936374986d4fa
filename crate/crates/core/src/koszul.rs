//! Exterior algebra bookkeeping and Koszul complexes.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{ChainComplex, GradedFreeModule, Matrix};
use crate::poly::{Polynomial, PolynomialRing};

/// Subset of `{0..n}` encoded as a bitmask.
pub type Subset = u32;

/// Basis of the exterior algebra on `n` generators, graded by subset size.
/// Within each degree subsets are ordered lexicographically by their sorted
/// elements.
#[derive(Debug, Clone)]
pub struct KoszulAlgebra {
    n: usize,
    by_degree: Vec<Vec<Subset>>,
    index: HashMap<Subset, usize>,
}

impl KoszulAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n < 32);
        let by_degree: Vec<Vec<Subset>> = (0..=n).map(|i| combinations(n, i)).collect();
        let mut index = HashMap::new();
        for level in &by_degree {
            for (j, s) in level.iter().enumerate() {
                index.insert(*s, j);
            }
        }
        KoszulAlgebra { n, by_degree, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn basis(&self, i: usize) -> &[Subset] {
        self.by_degree.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn index_of(&self, s: Subset) -> usize {
        self.index[&s]
    }

    /// `e_σ ∧ e_τ = sign · e_{σ∪τ}`, or `None` if they overlap.
    pub fn wedge(&self, a: Subset, b: Subset) -> Option<(bool, Subset)> {
        wedge(a, b)
    }
}

/// Returns `(negative, union)` for `e_a ∧ e_b`.
pub fn wedge(a: Subset, b: Subset) -> Option<(bool, Subset)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let t = rest.trailing_zeros();
        inversions += (a >> t >> 1).count_ones();
        rest &= rest - 1;
    }
    Some((inversions % 2 == 1, a | b))
}

pub fn elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).collect()
}

pub fn subset_of(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// Subsets of size `k` of `{0..n}` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if cur.len() == k {
            out.push(subset_of(cur));
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Koszul complex on `seq` with `d(e_σ) = Σ_k (-1)^k a_{σ_k} e_{σ∖σ_k}`,
/// `k` the position within `σ` counted from zero.
pub fn koszul_complex(ring: &Arc<PolynomialRing>, seq: &[Polynomial]) -> ChainComplex {
    let n = seq.len();
    let alg = KoszulAlgebra::new(n);
    let gen_deg: Vec<i32> = seq.iter().map(|f| f.total_degree().map(|d| d as i32).unwrap_or(0)).collect();
    let degree_of = |s: Subset| elements(s).iter().map(|&i| gen_deg[i]).sum::<i32>();
    let modules: Vec<GradedFreeModule> =
        (0..=n).map(|i| GradedFreeModule::new(alg.basis(i).iter().map(|&s| degree_of(s)).collect())).collect();
    let mut diffs = Vec::with_capacity(n);
    for i in 1..=n {
        let cols = alg
            .basis(i)
            .iter()
            .map(|&s| {
                let mut col: Vec<(usize, Polynomial)> = elements(s)
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| !seq[e].is_zero())
                    .map(|(pos, &e)| {
                        let c = if pos % 2 == 0 { seq[e].clone() } else { seq[e].neg() };
                        (alg.index_of(s & !(1 << e)), c)
                    })
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        diffs.push(Matrix::from_columns(alg.basis(i - 1).len(), cols));
    }
    ChainComplex::new(ring, modules, diffs).expect("Koszul complex on homogeneous elements")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lex_order_of_subsets() {
        assert_eq!(combinations(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(combinations(4, 0), vec![0]);
        assert_eq!(combinations(4, 2).len(), 6);
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(0b1, 0b10), Some((false, 0b11)));
        assert_eq!(wedge(0b10, 0b1), Some((true, 0b11)));
        assert_eq!(wedge(0b1, 0b1), None);
        // e_2 ∧ e_{01} = e_{012}
        assert_eq!(wedge(0b100, 0b011), Some((false, 0b111)));
    }

    #[test]
    fn koszul_ranks_and_degrees() {
        let r = PolynomialRing::standard(3);
        let v: Vec<_> = (0..3).map(|i| Polynomial::variable(&r, i)).collect();
        let k = koszul_complex(&r, &v);
        assert_eq!(k.ranks(), vec![1, 3, 3, 1]);
        assert_eq!(k.module(2).degrees, vec![2, 2, 2]);
        assert!(k.compose_check());
    }

    proptest! {
        #[test]
        fn wedge_is_graded_commutative_and_associative(a in 0u32..64, b in 0u32..64, c in 0u32..64) {
            if let Some((s1, u)) = wedge(a, b) {
                let (s2, u2) = wedge(b, a).unwrap();
                prop_assert_eq!(u, u2);
                let flip = (a.count_ones() * b.count_ones()) % 2 == 1;
                prop_assert_eq!(s1 ^ s2, flip);
            }
            let left = wedge(a, b).and_then(|(s, ab)| wedge(ab, c).map(|(t, r)| (s ^ t, r)));
            let right = wedge(b, c).and_then(|(s, bc)| wedge(a, bc).map(|(t, r)| (s ^ t, r)));
            prop_assert_eq!(left, right);
        }
    }
}
