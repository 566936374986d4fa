//! Sparse linear algebra over `F_p`: semi-echelon bases with optional
//! combination tracking. Everything strand-wise in the engine (kernels,
//! boundaries, lifts, minimal generators) goes through [`Echelon`].

use std::collections::HashMap;

use crate::field::PrimeField;

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(u32, u32)>;

/// `a + c * b`.
pub fn axpy(k: &PrimeField, a: &[(u32, u32)], c: u32, b: &[(u32, u32)]) -> SparseVec {
    if c == 0 {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ia, va) = a[i];
        let (ib, vb) = b[j];
        if ia < ib {
            out.push((ia, va));
            i += 1;
        } else if ib < ia {
            out.push((ib, k.mul(vb, c)));
            j += 1;
        } else {
            let s = k.mul_add(va, vb, c);
            if s != 0 {
                out.push((ia, s));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(ib, vb)| (ib, k.mul(vb, c))));
    out
}

pub fn scale(k: &PrimeField, a: &[(u32, u32)], c: u32) -> SparseVec {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&(i, v)| (i, k.mul(v, c))).collect()
}

/// Sorts and merges an unsorted list of entries.
pub fn normalize(k: &PrimeField, mut v: Vec<(u32, u32)>) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = k.add(last.1, c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

pub fn unit(i: u32) -> SparseVec {
    vec![(i, 1)]
}

/// Semi-echelon basis: every stored row is monic at a distinct leading index.
/// With tracking enabled, each row also carries the combination of inserted
/// input tags that produced it.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon { field, rows: Vec::new(), tags: Vec::new(), pivot: HashMap::new() }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the rows until no remaining entry sits on a pivot.
    pub fn reduce(&self, v: &[(u32, u32)]) -> SparseVec {
        self.reduce_tracked(v.to_vec(), Vec::new()).0
    }

    /// As [`reduce`](Self::reduce), carrying `tag` along: the result satisfies
    /// `rem = v - sum c_r row_r` and `tag_out = tag - sum c_r tag_r`.
    pub fn reduce_tracked(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        let k = &self.field;
        let mut done: SparseVec = Vec::new();
        // rows pivot at their smallest index, so eliminating at `col` only
        // touches indices >= col and the prefix in `done` is final
        while let Some(idx) = v.iter().position(|e| self.pivot.contains_key(&e.0)) {
            let (col, c) = v[idx];
            let r = self.pivot[&col];
            let coef = k.neg(c);
            done.extend_from_slice(&v[..idx]);
            v = axpy(k, &v[idx..], coef, &self.rows[r]);
            if !self.tags[r].is_empty() {
                tag = axpy(k, &tag, coef, &self.tags[r]);
            }
        }
        done.extend(v);
        (done, tag)
    }

    pub fn contains(&self, v: &[(u32, u32)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` when it was independent of the current rows.
    pub fn insert(&mut self, v: &[(u32, u32)]) -> bool {
        self.insert_tracked(v.to_vec(), Vec::new()).is_none()
    }

    /// Inserts `v` with `tag`. When `v` reduces to zero the reduced tag is
    /// returned (a relation among tags) and nothing is stored.
    pub fn insert_tracked(&mut self, v: SparseVec, tag: SparseVec) -> Option<SparseVec> {
        let (rem, tag) = self.reduce_tracked(v, tag);
        if rem.is_empty() {
            return Some(tag);
        }
        let (col, c) = rem[0];
        let inv = self.field.inv(c);
        let row = scale(&self.field, &rem, inv);
        let tag = scale(&self.field, &tag, inv);
        self.pivot.insert(col, self.rows.len());
        self.rows.push(row);
        self.tags.push(tag);
        None
    }

    /// Solves `sum x_j * inserted_j = v` for the tracked tags, when possible.
    pub fn solve(&self, v: &[(u32, u32)]) -> Option<SparseVec> {
        let (rem, tag) = self.reduce_tracked(v.to_vec(), Vec::new());
        if rem.is_empty() {
            Some(scale(&self.field, &tag, self.field.neg(1)))
        } else {
            None
        }
    }
}

/// Linear map given by its columns (images of source basis vectors).
/// Returns a kernel basis, one vector per dependent column: `e_j` minus the
/// combination of earlier independent columns, i.e. the reduced-echelon
/// kernel basis.
pub fn kernel_basis(k: &PrimeField, columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(*k);
    let mut ker = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Some(rel) = ech.insert_tracked(col.clone(), unit(j as u32)) {
            ker.push(rel);
        }
    }
    ker
}

/// Rank of the span of the given vectors.
pub fn rank(k: &PrimeField, vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new(*k);
    vectors.iter().filter(|v| ech.insert(v)).count()
}

/// Evaluates a linear map given by columns on a sparse input vector.
pub fn apply(k: &PrimeField, columns: &[SparseVec], x: &[(u32, u32)]) -> SparseVec {
    let mut acc: SparseVec = Vec::new();
    for &(j, c) in x {
        acc = axpy(k, &acc, c, &columns[j as usize]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_rank(k: &PrimeField, mut m: Vec<Vec<u32>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            let inv = k.inv(m[r][c]);
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = k.mul(m[i][c], inv);
                    for cc in 0..cols {
                        m[i][cc] = k.sub(m[i][cc], k.mul(f, m[r][cc]));
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn to_sparse(v: &[u32]) -> SparseVec {
        v.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &c)| (i as u32, c)).collect()
    }

    proptest! {
        #[test]
        fn rank_and_kernel_agree_with_dense(m in proptest::collection::vec(proptest::collection::vec(0u32..3, 6), 0..8)) {
            let k = PrimeField::new(3).unwrap();
            let cols: Vec<SparseVec> = m.iter().map(|c| to_sparse(c)).collect();
            let r = rank(&k, &cols);
            prop_assert_eq!(r, dense_rank(&k, m.clone()));
            let ker = kernel_basis(&k, &cols);
            prop_assert_eq!(ker.len() + r, cols.len());
            for v in &ker {
                prop_assert!(apply(&k, &cols, v).is_empty());
            }
            prop_assert_eq!(rank(&k, &ker), ker.len());
        }

        #[test]
        fn solve_reproduces_target(m in proptest::collection::vec(proptest::collection::vec(0u32..5, 5), 1..6), x in proptest::collection::vec(0u32..5, 6)) {
            let k = PrimeField::new(5).unwrap();
            let cols: Vec<SparseVec> = m.iter().map(|c| to_sparse(c)).collect();
            let xs: SparseVec = to_sparse(&x[..cols.len()]);
            let target = apply(&k, &cols, &xs);
            let mut ech = Echelon::new(k);
            for (j, c) in cols.iter().enumerate() {
                ech.insert_tracked(c.clone(), unit(j as u32));
            }
            let sol = ech.solve(&target).expect("target is in the column span");
            prop_assert_eq!(apply(&k, &cols, &sol), target);
        }
    }
}
