//! Exact linear algebra over the scalar field: rank, left nullspace, the
//! augmented-rank feasibility test, and particular solutions with Farkas-style
//! infeasibility witnesses.
//!
//! Elimination is fraction-free in spirit (Bareiss two-step division) with
//! partial pivoting by least coefficient size, which keeps entry growth under
//! control on the integer-seeded matrices this crate produces.

use crate::field::Scalar;
use std::collections::BTreeMap;

/// Sparse exact matrix; no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<K: Scalar> {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), K>,
}

impl<K: Scalar> ExactMatrix<K> {
    pub fn new(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> K {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(K::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &K)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = ExactMatrix::new(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            m.set(c, r, v.clone());
        }
        m
    }

    /// Column-augment: [self | other] (row counts must match).
    pub fn augment(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row-count mismatch");
        let mut m = ExactMatrix::new(self.rows, self.cols + other.cols);
        for (&(r, c), v) in &self.entries {
            m.set(r, c, v.clone());
        }
        for (&(r, c), v) in &other.entries {
            m.set(r, self.cols + c, v.clone());
        }
        m
    }

    pub fn map_entries<L: Scalar>(&self, f: impl Fn(&K) -> L) -> ExactMatrix<L> {
        let mut m = ExactMatrix::new(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            m.set(r, c, f(v));
        }
        m
    }

    fn to_dense(&self) -> Vec<Vec<K>> {
        let mut d = vec![vec![K::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[K]) -> Vec<K> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![K::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            if !x[c].is_zero() {
                out[r] = out[r].clone() + v.clone() * x[c].clone();
            }
        }
        out
    }

    /// Vector-matrix product (c^T M).
    pub fn vec_mul(&self, c: &[K]) -> Vec<K> {
        assert_eq!(c.len(), self.rows);
        let mut out = vec![K::zero(); self.cols];
        for (&(r, col), v) in &self.entries {
            if !c[r].is_zero() {
                out[col] = out[col].clone() + c[r].clone() * v.clone();
            }
        }
        out
    }
}

/// Bareiss-style fraction-free elimination on a dense working copy.
/// Returns (rank, echelon rows, row_ops) where row_ops tracks the applied row
/// operations as a rows x rows matrix with original_rows = row_ops * input.
fn eliminate<K: Scalar>(m: &ExactMatrix<K>) -> (usize, Vec<Vec<K>>, Vec<Vec<K>>) {
    let mut a = m.to_dense();
    let rows = m.rows;
    let cols = m.cols;
    // row-operation tracker: t = identity
    let mut t: Vec<Vec<K>> = (0..rows)
        .map(|i| {
            let mut r = vec![K::zero(); rows];
            r[i] = K::one();
            r
        })
        .collect();
    let mut prev = K::one();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // least-size nonzero pivot in this column at or below `rank`
        let pivot_row = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].pivot_size());
        let Some(p) = pivot_row else { continue };
        a.swap(rank, p);
        t.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                // still need the Bareiss rescale to keep the invariant exact
                for c in col..cols {
                    if !a[r][c].is_zero() {
                        a[r][c] = a[r][c].clone() * pivot.clone() / prev.clone();
                    }
                }
                for c in 0..rows {
                    if !t[r][c].is_zero() {
                        t[r][c] = t[r][c].clone() * pivot.clone() / prev.clone();
                    }
                }
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..cols {
                let v = (a[r][c].clone() * pivot.clone() - factor.clone() * a[rank][c].clone())
                    / prev.clone();
                a[r][c] = v;
            }
            a[r][col] = K::zero();
            for c in 0..rows {
                let v = (t[r][c].clone() * pivot.clone() - factor.clone() * t[rank][c].clone())
                    / prev.clone();
                t[r][c] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    (rank, a, t)
}

/// Exact rank (independent of row/column order and of scalar extension).
pub fn rank<K: Scalar>(m: &ExactMatrix<K>) -> usize {
    eliminate(m).0
}

/// Basis of the left nullspace: vectors c with c^T M = 0.
/// Count = rows - rank(M).
pub fn left_nullspace<K: Scalar>(m: &ExactMatrix<K>) -> Vec<Vec<K>> {
    let (rank, _, t) = eliminate(m);
    // rows of t below the rank are exact combinations mapping to zero rows
    let mut out = Vec::with_capacity(m.rows - rank);
    for r in rank..m.rows {
        out.push(t[r].clone());
    }
    out
}

/// Verdict of the augmented-rank feasibility test for A x = L g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub rank_a: usize,
    pub rank_l: usize,
    pub rank_al: usize,
    /// rank([A|L]) == rank(A): Im(L) contained in Im(A); solvable for every g.
    pub condition: bool,
    /// rank([A|L]) == rank(A) + rank(L): no nonzero g admits a solution.
    pub strong_condition: bool,
}

/// Exact ranks of A, L and the column-augmented [A|L].
pub fn feasibility_rank_test<K: Scalar>(
    a: &ExactMatrix<K>,
    l: &ExactMatrix<K>,
) -> Result<FeasibilityVerdict, String> {
    if a.rows != l.rows {
        return Err(format!("row-count mismatch: {} vs {}", a.rows, l.rows));
    }
    let rank_a = rank(a);
    let rank_l = rank(l);
    let rank_al = rank(&a.augment(l));
    Ok(FeasibilityVerdict {
        rank_a,
        rank_l,
        rank_al,
        condition: rank_al == rank_a,
        strong_condition: rank_al == rank_a + rank_l,
    })
}

/// Outcome of `particular_solution`: either an exact solution of A x = b, or a
/// Farkas-style infeasibility witness c with c^T A = 0 and c^T b != 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<K: Scalar> {
    Solution(Vec<K>),
    Infeasible(Vec<K>),
}

/// Solve A x = b exactly, or produce the dual witness. Both outcomes are
/// verified before being returned.
pub fn particular_solution<K: Scalar>(a: &ExactMatrix<K>, b: &[K]) -> SolveOutcome<K> {
    assert_eq!(b.len(), a.rows);
    let mut bm = ExactMatrix::new(a.rows, 1);
    for (r, v) in b.iter().enumerate() {
        bm.set(r, 0, v.clone());
    }
    let aug = a.augment(&bm);
    let (_, ech, t) = eliminate(&aug);
    // look for a row [0 ... 0 | nonzero]
    for r in 0..a.rows {
        let lead = (0..a.cols).find(|&c| !ech[r][c].is_zero());
        if lead.is_none() && !ech[r][a.cols].is_zero() {
            let c = t[r].clone();
            let ca = a.vec_mul(&c);
            assert!(ca.iter().all(|x| x.is_zero()), "witness verification failed: c^T A != 0");
            let cb: K = c
                .iter()
                .zip(b)
                .fold(K::zero(), |acc, (ci, bi)| acc + ci.clone() * bi.clone());
            assert!(!cb.is_zero(), "witness verification failed: c^T b == 0");
            return SolveOutcome::Infeasible(c);
        }
    }
    // back-substitute from the echelon form
    let mut x = vec![K::zero(); a.cols];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for r in 0..a.rows {
        if let Some(c) = (0..a.cols).find(|&c| !ech[r][c].is_zero()) {
            pivots.push((r, c));
        }
    }
    for &(r, c) in pivots.iter().rev() {
        let mut acc = ech[r][a.cols].clone();
        for cc in c + 1..a.cols {
            if !ech[r][cc].is_zero() && !x[cc].is_zero() {
                acc = acc - ech[r][cc].clone() * x[cc].clone();
            }
        }
        x[c] = acc / ech[r][c].clone();
    }
    let ax = a.mul_vec(&x);
    assert!(
        ax.iter().zip(b).all(|(l, r)| l == r),
        "solution verification failed: A x != b"
    );
    SolveOutcome::Solution(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{promote, Quad, Rational};
    use num_traits::Zero;

    fn mat(rows: usize, cols: usize, data: &[(usize, usize, i64)]) -> ExactMatrix<Rational> {
        let mut m = ExactMatrix::new(rows, cols);
        for &(r, c, v) in data {
            m.set(r, c, Rational::from_int(v));
        }
        m
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(rank(&ExactMatrix::<Rational>::new(4, 7)), 0);
    }

    #[test]
    fn rank_identity_and_permuted() {
        let m = ExactMatrix::<Rational>::identity(5);
        assert_eq!(rank(&m), 5);
        let m = mat(3, 3, &[(0, 2, 7), (1, 0, -2), (2, 1, 5)]);
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn rank_with_dependencies() {
        // row2 = row0 + row1
        let m = mat(3, 3, &[(0, 0, 1), (0, 1, 2), (1, 1, 3), (1, 2, -1), (2, 0, 1), (2, 1, 5), (2, 2, -1)]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn left_nullspace_identity_and_zero_row() {
        let m = ExactMatrix::<Rational>::identity(3);
        assert!(left_nullspace(&m).is_empty());
        // identity with a zero row appended: one basis vector selecting that row
        let mut m = ExactMatrix::<Rational>::new(4, 3);
        for i in 0..3 {
            m.set(i, i, Rational::from_int(1));
        }
        let ns = left_nullspace(&m);
        assert_eq!(ns.len(), 1);
        let c = &ns[0];
        assert!(m.vec_mul(c).iter().all(|x| x.is_zero()));
        assert!(!c[3].is_zero());
    }

    #[test]
    fn left_nullspace_vectors_annihilate() {
        let m = mat(4, 3, &[(0, 0, 2), (0, 2, 1), (1, 1, 3), (2, 0, 2), (2, 2, 1), (3, 1, 6)]);
        let ns = left_nullspace(&m);
        assert_eq!(ns.len(), 4 - rank(&m));
        for c in &ns {
            assert!(m.vec_mul(c).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn feasibility_verdicts() {
        let a = mat(3, 2, &[(0, 0, 1), (1, 1, 1)]);
        let mut l = ExactMatrix::<Rational>::new(3, 1);
        l.set(2, 0, Rational::from_int(1));
        let v = feasibility_rank_test(&a, &l).unwrap();
        assert_eq!((v.rank_a, v.rank_l, v.rank_al), (2, 1, 3));
        assert!(!v.condition);
        assert!(v.strong_condition);
        let mut l2 = ExactMatrix::<Rational>::new(3, 1);
        l2.set(0, 0, Rational::from_int(5));
        let v = feasibility_rank_test(&a, &l2).unwrap();
        assert!(v.condition);
        assert!(!v.strong_condition);
        let bad = ExactMatrix::<Rational>::new(2, 1);
        assert!(feasibility_rank_test(&a, &bad).is_err());
    }

    #[test]
    fn particular_solution_and_witness() {
        // consistent system
        let a = mat(3, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 2), (1, 1, -1), (2, 0, 3)]);
        let b = vec![Rational::from_int(3), Rational::from_int(0), Rational::from_int(3)];
        match particular_solution(&a, &b) {
            SolveOutcome::Solution(x) => {
                assert_eq!(a.mul_vec(&x), b);
            }
            SolveOutcome::Infeasible(_) => panic!("expected a solution"),
        }
        // Ax = 0 accepts x = 0
        let b0 = vec![Rational::zero(); 3];
        match particular_solution(&a, &b0) {
            SolveOutcome::Solution(x) => assert!(a.mul_vec(&x).iter().all(|v| v.is_zero())),
            SolveOutcome::Infeasible(_) => panic!("expected a solution"),
        }
        // infeasible: rows 0 and 1 identical but different rhs
        let a = mat(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 1), (1, 1, 2)]);
        let b = vec![Rational::from_int(1), Rational::from_int(2)];
        match particular_solution(&a, &b) {
            SolveOutcome::Infeasible(c) => {
                assert!(a.vec_mul(&c).iter().all(|x| x.is_zero()));
                let cb: Rational = c.iter().zip(&b).map(|(x, y)| x.clone() * y.clone()).sum();
                assert!(!cb.is_zero());
            }
            SolveOutcome::Solution(_) => panic!("expected infeasibility"),
        }
    }

    #[test]
    fn rank_preserved_under_promotion() {
        let m = mat(4, 4, &[(0, 0, 2), (0, 3, -1), (1, 1, 3), (2, 0, 4), (2, 3, -2), (3, 2, 9)]);
        let mq: ExactMatrix<Quad> = m.map_entries(promote);
        assert_eq!(rank(&m), rank(&mq));
    }

    #[test]
    fn quad_rank_with_sqrt2_entries() {
        // rows (1, sqrt2) and (sqrt2, 2) are proportional over Q(sqrt2)
        let mut m = ExactMatrix::<Quad>::new(2, 2);
        m.set(0, 0, Quad::one_v());
        m.set(0, 1, Quad::sqrt2());
        m.set(1, 0, Quad::sqrt2());
        m.set(1, 1, Quad::from_int(2));
        assert_eq!(rank(&m), 1);
    }

    trait QuadExt {
        fn one_v() -> Quad;
    }
    impl QuadExt for Quad {
        fn one_v() -> Quad {
            use num_traits::One;
            Quad::one()
        }
    }
}
