//! Graded chain complexes of free modules over `R`, chain maps, mapping
//! cones, tensor products and Gaussian-elimination minimalization.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolynomialRing};

/// Sparse element of a free module: `(basis index, coefficient)` pairs in
/// increasing index order with nonzero coefficients.
pub type Vector = Vec<(usize, Polynomial)>;

pub fn vec_add_scaled(a: &Vector, s: &Polynomial, b: &Vector) -> Vector {
    if s.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let p = s * &b[j].1;
            if !p.is_zero() {
                out.push((b[j].0, p));
            }
            j += 1;
        } else {
            let p = &a[i].1 + &(s * &b[j].1);
            if !p.is_zero() {
                out.push((a[i].0, p));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn vec_scale(a: &Vector, s: &Polynomial) -> Vector {
    a.iter().filter_map(|(i, p)| {
        let q = p * s;
        (!q.is_zero()).then_some((*i, q))
    })
    .collect()
}

pub fn vec_from_dense(entries: Vec<Polynomial>) -> Vector {
    entries.into_iter().enumerate().filter(|e| !e.1.is_zero()).collect()
}

pub fn vec_to_dense(ring: &Arc<PolynomialRing>, v: &Vector, len: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(ring); len];
    for (i, p) in v {
        out[*i] = p.clone();
    }
    out
}

/// Ranks with internal degrees of the basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedFreeModule {
    pub degrees: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i32>) -> Self {
        GradedFreeModule { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

/// Matrix stored by sparse columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub nrows: usize,
    pub cols: Vec<Vector>,
}

impl Matrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(ring: &Arc<PolynomialRing>, n: usize) -> Self {
        Matrix { nrows: n, cols: (0..n).map(|i| vec![(i, Polynomial::one(ring))]).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<Vector>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|e| e.0 < nrows)));
        Matrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Polynomial> {
        self.cols[c].iter().find(|e| e.0 == r).map(|e| &e.1)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut acc: Vector = Vec::new();
        for (j, s) in v {
            acc = vec_add_scaled(&acc, s, &self.cols[*j]);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Matrix) -> Matrix {
        Matrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|c| c.iter().map(|(i, p)| (*i, p.neg())).collect()).collect(),
        }
    }

    /// Entries reduced mod the irrelevant ideal, as constants.
    pub fn constant_part(&self) -> Vec<Vec<(usize, u32)>> {
        self.cols
            .iter()
            .map(|c| c.iter().filter_map(|(i, p)| (p.constant_coefficient() != 0).then(|| (*i, p.constant_coefficient()))).collect())
            .collect()
    }

    pub fn has_unit_entry(&self) -> bool {
        self.cols.iter().flatten().any(|e| e.1.constant_coefficient() != 0)
    }
}

/// `F_0 <- F_1 <- ... <- F_len` with `d_i : F_i -> F_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Arc<PolynomialRing>,
    modules: Vec<GradedFreeModule>,
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    /// `differentials[i]` is `d_{i+1}`. Checks shapes and homogeneity; does
    /// not check `d∘d = 0` (see [`compose_check`](Self::compose_check)).
    pub fn new(ring: &Arc<PolynomialRing>, modules: Vec<GradedFreeModule>, differentials: Vec<Matrix>) -> Result<Self> {
        if modules.is_empty() || differentials.len() + 1 != modules.len() {
            return Err(Error::precondition("a complex needs one differential per positive degree"));
        }
        for (i, d) in differentials.iter().enumerate() {
            let (src, tgt) = (&modules[i + 1], &modules[i]);
            if d.nrows != tgt.rank() || d.ncols() != src.rank() {
                return Err(Error::precondition(format!("d_{} has the wrong shape", i + 1)));
            }
            for (c, col) in d.cols.iter().enumerate() {
                for (r, p) in col {
                    let want = src.degrees[c] - tgt.degrees[*r];
                    if !p.is_homogeneous() || p.total_degree().map(|x| x as i32) != Some(want) {
                        return Err(Error::precondition(format!(
                            "d_{} entry ({r},{c}) = {p} is not homogeneous of degree {want}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(ChainComplex { ring: ring.clone(), modules, differentials })
    }

    pub fn zero(ring: &Arc<PolynomialRing>) -> Self {
        ChainComplex { ring: ring.clone(), modules: vec![GradedFreeModule::default()], differentials: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
    }

    /// Highest homological degree stored (trailing zero modules trimmed by callers).
    pub fn len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.modules.iter().all(|m| m.rank() == 0)
    }

    pub fn module(&self, i: usize) -> &GradedFreeModule {
        static EMPTY: GradedFreeModule = GradedFreeModule { degrees: Vec::new() };
        self.modules.get(i).unwrap_or(&EMPTY)
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    pub fn rank(&self, i: usize) -> usize {
        self.module(i).rank()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// `d_i : F_i -> F_{i-1}`; zero matrix outside the stored range.
    pub fn d(&self, i: usize) -> Matrix {
        if i == 0 || i > self.len() {
            return Matrix::zero(self.rank(i.saturating_sub(1)), self.rank(i));
        }
        self.differentials[i - 1].clone()
    }

    pub fn d_ref(&self, i: usize) -> Option<&Matrix> {
        if i == 0 {
            None
        } else {
            self.differentials.get(i - 1)
        }
    }

    /// Drops trailing zero modules.
    pub fn trimmed(mut self) -> Self {
        while self.modules.len() > 1 && self.modules.last().unwrap().rank() == 0 {
            self.modules.pop();
            self.differentials.pop();
        }
        self
    }

    /// True iff `d_i ∘ d_{i+1} = 0` for all `i`.
    pub fn compose_check(&self) -> bool {
        (1..self.len()).all(|i| self.differentials[i - 1].compose(&self.differentials[i]).is_zero())
    }

    /// Minimal: no differential entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        !self.differentials.iter().any(|d| d.has_unit_entry())
    }

    /// Applies `d_i` to an element of `F_i`.
    pub fn apply_d(&self, i: usize, v: &Vector) -> Vector {
        match self.d_ref(i) {
            Some(d) => d.apply(v),
            None => Vec::new(),
        }
    }
}

/// Degree-preserving chain map `source_i -> target_{i+shift}`.
#[derive(Debug, Clone)]
pub struct ComplexMorphism {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub maps: Vec<Matrix>,
    pub shift: i32,
}

impl ComplexMorphism {
    /// `maps[i] : source_i -> target_i`, with missing degrees treated as zero.
    pub fn new(source: ChainComplex, target: ChainComplex, mut maps: Vec<Matrix>) -> Result<Self> {
        let n = source.len();
        if maps.len() > n + 1 {
            return Err(Error::precondition("more maps than source degrees"));
        }
        while maps.len() < n + 1 {
            let i = maps.len();
            maps.push(Matrix::zero(target.rank(i), source.rank(i)));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.ncols() != source.rank(i) || m.nrows != target.rank(i) {
                return Err(Error::precondition(format!("map in degree {i} has the wrong shape")));
            }
        }
        Ok(ComplexMorphism { source, target, maps, shift: 0 })
    }

    /// `target.d_i ∘ φ_i == φ_{i-1} ∘ source.d_i` for every `i >= 1`.
    pub fn is_chain_map(&self) -> bool {
        (1..=self.source.len()).all(|i| {
            let lhs = self.target.d(i).compose(&self.maps[i]);
            let rhs = self.maps[i - 1].compose(&self.source.d(i));
            lhs == rhs
        })
    }
}

/// Cone with `cone_n = source_{n-1} ⊕ target_n` (source block first) and
/// differential `(a, b) ↦ (-d a, -φ(a) + d b)`.
pub fn mapping_cone(phi: &ComplexMorphism) -> Result<ChainComplex> {
    if phi.shift != 0 {
        return Err(Error::precondition("mapping cone needs a degree-zero chain map"));
    }
    if !phi.is_chain_map() {
        return Err(Error::precondition("mapping cone input does not commute with the differentials"));
    }
    let (s, t) = (&phi.source, &phi.target);
    let ring = s.ring();
    let len = (s.len() + 1).max(t.len());
    let mut modules = Vec::with_capacity(len + 1);
    for n in 0..=len {
        let mut degs = if n >= 1 { s.module(n - 1).degrees.clone() } else { Vec::new() };
        degs.extend_from_slice(&t.module(n).degrees);
        modules.push(GradedFreeModule::new(degs));
    }
    let mut diffs = Vec::with_capacity(len);
    for n in 1..=len {
        let tgt_src_rank = if n >= 2 { s.rank(n - 2) } else { 0 };
        let mut cols = Vec::with_capacity(modules[n].rank());
        // source block
        for a in 0..s.rank(n - 1) {
            let mut col: Vector = Vec::new();
            if n >= 2 {
                for (r, p) in &s.d(n - 1).cols[a] {
                    col.push((*r, p.neg()));
                }
            }
            if let Some(m) = phi.maps.get(n - 1) {
                for (r, p) in &m.cols[a] {
                    col.push((tgt_src_rank + r, p.neg()));
                }
            }
            cols.push(col);
        }
        // target block
        for b in 0..t.rank(n) {
            let col: Vector = t.d(n).cols[b].iter().map(|(r, p)| (tgt_src_rank + r, p.clone())).collect();
            cols.push(col);
        }
        diffs.push(Matrix::from_columns(modules[n - 1].rank(), cols));
    }
    ChainComplex::new(ring, modules, diffs).map(ChainComplex::trimmed)
}

/// Total complex of `A ⊗ B` with `d(a⊗b) = d(a)⊗b + (-1)^{|a|} a⊗d(b)`.
/// Degree-`n` basis: blocks `A_p ⊗ B_{n-p}` for `p = n` down to `0`, `a` major.
pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex> {
    let ring = a.ring();
    let len = a.len() + b.len();
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(len + 1);
    let mut modules = Vec::with_capacity(len + 1);
    for n in 0..=len {
        let mut off = Vec::new();
        let mut degs = Vec::new();
        off.resize(n + 1, 0);
        for p in (0..=n).rev() {
            off[p] = degs.len();
            if p > a.len() || n - p > b.len() {
                continue;
            }
            for da in &a.module(p).degrees {
                for db in &b.module(n - p).degrees {
                    degs.push(da + db);
                }
            }
        }
        offsets.push(off);
        modules.push(GradedFreeModule::new(degs));
    }
    let mut diffs = Vec::with_capacity(len);
    for n in 1..=len {
        let mut cols = Vec::with_capacity(modules[n].rank());
        for p in (0..=n).rev() {
            if p > a.len() || n - p > b.len() {
                continue;
            }
            let q = n - p;
            let (ra, rb) = (a.rank(p), b.rank(q));
            for i in 0..ra {
                for j in 0..rb {
                    let mut col: Vector = Vec::new();
                    if p >= 1 {
                        let base = offsets[n - 1][p - 1];
                        for (r, c) in &a.d(p).cols[i] {
                            col.push((base + r * rb + j, c.clone()));
                        }
                    }
                    if q >= 1 {
                        let base = offsets[n - 1][p];
                        let rb1 = b.rank(q - 1);
                        let sign_neg = p % 2 == 1;
                        for (r, c) in &b.d(q).cols[j] {
                            col.push((base + i * rb1 + r, if sign_neg { c.neg() } else { c.clone() }));
                        }
                    }
                    col.sort_by_key(|e| e.0);
                    cols.push(col);
                }
            }
        }
        diffs.push(Matrix::from_columns(modules[n - 1].rank(), cols));
    }
    ChainComplex::new(ring, modules, diffs).map(ChainComplex::trimmed)
}

/// `C ⊗ K` with `K` the Koszul complex on the variables.
pub fn tensor_with_koszul(c: &ChainComplex) -> Result<ChainComplex> {
    let ring = c.ring();
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect();
    tensor(c, &crate::koszul::koszul_complex(ring, &vars))
}

/// Result of minimalization, with the chain map from the input onto the
/// reduced complex (`projection.maps[i] : C_i -> C'_i`).
#[derive(Debug, Clone)]
pub struct Minimalized {
    pub complex: ChainComplex,
    pub projection: Vec<Matrix>,
}

/// Cancels unit entries one at a time. Pivot rule: lowest differential
/// first, then columns left to right, rows top to bottom; repeat until no
/// unit entry remains.
pub fn minimalize(c: &ChainComplex) -> ChainComplex {
    minimalize_tracked(c, false).complex
}

pub fn minimalize_tracked(c: &ChainComplex, track: bool) -> Minimalized {
    let ring = c.ring().clone();
    let k = *ring.field();
    let mut degrees: Vec<Vec<i32>> = c.modules.iter().map(|m| m.degrees.clone()).collect();
    // dense-ish working copies: d[i] is d_{i+1}
    let mut diffs: Vec<Matrix> = c.differentials.clone();
    let mut proj: Vec<Matrix> = if track {
        (0..=c.len()).map(|i| Matrix::identity(&ring, c.rank(i))).collect()
    } else {
        Vec::new()
    };
    loop {
        let mut found = None;
        'scan: for (di, d) in diffs.iter().enumerate() {
            for (col, entries) in d.cols.iter().enumerate() {
                for (row, p) in entries {
                    if p.constant_coefficient() != 0 {
                        found = Some((di, col, *row));
                        break 'scan;
                    }
                }
            }
        }
        let Some((di, col, row)) = found else { break };
        // d_i with i = di + 1: C_i -> C_{i-1}; cancel basis `col` of C_i and `row` of C_{i-1}
        let u = diffs[di].get(row, col).unwrap().clone();
        let uinv = Polynomial::constant(&ring, k.inv(u.constant_coefficient()));
        debug_assert!(u.is_unit());
        let gamma: Vector = diffs[di].cols[col].iter().filter(|e| e.0 != row).cloned().collect();
        // new d_i
        let old = diffs[di].clone();
        let mut new_cols = Vec::with_capacity(old.ncols() - 1);
        for (cc, entries) in old.cols.iter().enumerate() {
            if cc == col {
                continue;
            }
            let delta = entries.iter().find(|e| e.0 == row).map(|e| e.1.clone());
            let mut v: Vector = entries.iter().filter(|e| e.0 != row).cloned().collect();
            if let Some(delta) = delta {
                let s = (&delta * &uinv).neg();
                v = vec_add_scaled(&v, &s, &gamma);
            }
            new_cols.push(reindex_drop(&v, row));
        }
        diffs[di] = Matrix::from_columns(old.nrows - 1, new_cols);
        // d_{i+1}: drop row `col`
        if di + 1 < diffs.len() {
            let d = &diffs[di + 1];
            let cols = d.cols.iter().map(|v| reindex_drop(&v.iter().filter(|e| e.0 != col).cloned().collect(), col)).collect();
            diffs[di + 1] = Matrix::from_columns(d.nrows - 1, cols);
        }
        // d_{i-1}: drop column `row`
        if di >= 1 {
            diffs[di - 1].cols.remove(row);
        }
        if track {
            let i = di + 1;
            // degree i: drop coordinate `col`
            let p = &proj[i];
            let cols = p.cols.iter().map(|v| reindex_drop(&v.iter().filter(|e| e.0 != col).cloned().collect(), col)).collect();
            proj[i] = Matrix::from_columns(p.nrows - 1, cols);
            // degree i-1: y ↦ y' - γ u^{-1} y_row
            let p = &proj[i - 1];
            let cols = p
                .cols
                .iter()
                .map(|v| {
                    let yr = v.iter().find(|e| e.0 == row).map(|e| e.1.clone());
                    let mut w: Vector = v.iter().filter(|e| e.0 != row).cloned().collect();
                    if let Some(yr) = yr {
                        w = vec_add_scaled(&w, &(&yr * &uinv).neg(), &gamma);
                    }
                    reindex_drop(&w, row)
                })
                .collect();
            proj[i - 1] = Matrix::from_columns(p.nrows - 1, cols);
        }
        degrees[di + 1].remove(col);
        degrees[di].remove(row);
    }
    let modules = degrees.into_iter().map(GradedFreeModule::new).collect();
    let complex = ChainComplex::new(&ring, modules, diffs).expect("minimalization keeps homogeneity").trimmed();
    Minimalized { complex, projection: proj }
}

fn reindex_drop(v: &Vector, dropped: usize) -> Vector {
    v.iter().map(|(i, p)| (if *i > dropped { i - 1 } else { *i }, p.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::koszul_complex;

    fn ring() -> Arc<PolynomialRing> {
        PolynomialRing::standard(3)
    }

    fn vars(r: &Arc<PolynomialRing>) -> Vec<Polynomial> {
        (0..r.nvars()).map(|i| Polynomial::variable(r, i)).collect()
    }

    fn single(r: &Arc<PolynomialRing>, degs: &[i32], d: &[Polynomial]) -> ChainComplex {
        let modules = degs.iter().map(|&x| GradedFreeModule::new(vec![x])).collect();
        let diffs = d.iter().map(|p| Matrix::from_columns(1, vec![vec_from_dense(vec![p.clone()])])).collect();
        ChainComplex::new(r, modules, diffs).unwrap()
    }

    #[test]
    fn compose_check_examples() {
        let r = ring();
        let v = vars(&r);
        assert!(koszul_complex(&r, &v).compose_check());
        let bad = single(&r, &[0, 1, 2], &[v[0].clone(), v[0].clone()]);
        assert!(!bad.compose_check());
        assert!(ChainComplex::zero(&r).compose_check());
    }

    #[test]
    fn cone_of_identity_is_split_exact() {
        let r = ring();
        let c = single(&r, &[0], &[]);
        let phi = ComplexMorphism::new(c.clone(), c.clone(), vec![Matrix::identity(&r, 1)]).unwrap();
        let cone = mapping_cone(&phi).unwrap();
        assert_eq!(cone.ranks(), vec![1, 1]);
        assert!(cone.compose_check());
        assert!(minimalize(&cone).is_empty());
    }

    #[test]
    fn cone_of_zero_map_is_direct_sum() {
        let r = ring();
        let v = vars(&r);
        let k = koszul_complex(&r, &v);
        let zero = ChainComplex::zero(&r);
        let phi = ComplexMorphism::new(zero, k.clone(), vec![Matrix::zero(1, 0)]).unwrap();
        let cone = mapping_cone(&phi).unwrap();
        assert_eq!(cone, k);
    }

    #[test]
    fn non_chain_map_rejected() {
        let r = ring();
        let v = vars(&r);
        let k1 = single(&r, &[0, 1], &[v[0].clone()]);
        let k2 = single(&r, &[0, 1], &[v[1].clone()]);
        let phi = ComplexMorphism::new(
            k1,
            k2,
            vec![Matrix::identity(&r, 1), Matrix::identity(&r, 1)],
        )
        .unwrap();
        assert!(mapping_cone(&phi).is_err());
    }

    #[test]
    fn tensor_ranks_and_koszul_multiplicativity() {
        let r = ring();
        let v = vars(&r);
        let unit = ChainComplex::new(&r, vec![GradedFreeModule::new(vec![0])], vec![]).unwrap();
        let k = koszul_complex(&r, &v);
        assert_eq!(tensor(&unit, &k).unwrap(), k);
        let kx = koszul_complex(&r, &v[..1]);
        let ky = koszul_complex(&r, &v[1..2]);
        let kxy = tensor(&kx, &ky).unwrap();
        assert_eq!(kxy, koszul_complex(&r, &v[..2]));
        let kk = tensor(&k, &k).unwrap();
        assert_eq!(kk.rank(2), 15);
        assert!(kk.compose_check());
    }

    #[test]
    fn minimalize_unit_complex_and_koszul() {
        let r = ring();
        let one = single(&r, &[0, 0], &[Polynomial::one(&r)]);
        assert!(minimalize(&one).is_empty());
        let k = koszul_complex(&r, &vars(&r));
        assert_eq!(minimalize(&k), k);
    }

    #[test]
    fn projection_is_a_chain_map() {
        let r = ring();
        let v = vars(&r);
        let k = koszul_complex(&r, &v);
        let kk = tensor(&k, &koszul_complex(&r, &[Polynomial::one(&r)])).unwrap();
        let m = minimalize_tracked(&kk, true);
        assert!(m.complex.compose_check());
        assert!(m.complex.is_minimal());
        for i in 1..=kk.len() {
            let lhs = m.complex.d(i).compose(&m.projection[i]);
            let rhs = m.projection[i - 1].compose(&kk.d(i));
            assert_eq!(lhs, rhs, "degree {i}");
        }
    }
}
