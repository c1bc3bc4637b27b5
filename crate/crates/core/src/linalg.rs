//! Exact dense integer matrices and the Smith normal form.
//!
//! Every routine here works over arbitrary-precision integers. Matrices are
//! small (a few hundred rows at most), so a dense row-major layout is used
//! throughout.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(n, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !xj.is_zero() {
                        acc += a * xj;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Rows `r0..r1` as a new matrix.
    pub fn row_block(&self, r0: usize, r1: usize) -> IntMatrix {
        IntMatrix {
            rows: r1 - r0,
            cols: self.cols,
            data: self.data[r0 * self.cols..r1 * self.cols].to_vec(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i)).collect();
        IntMatrix::from_rows(self.cols, &rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j];
            if !v.is_zero() {
                let add = c * v;
                self.data[dst * self.cols + j] += add;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src];
            if !v.is_zero() {
                let add = c * v;
                self.data[i * self.cols + dst] += add;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[r * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + c];
            *v = -std::mem::take(v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Result of a Smith normal form computation: `u * a * v == d`.
///
/// `u_inv` and `v_inv` are the exact inverses of the unimodular transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// The nonzero diagonal entries, in order (a divisibility chain).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row(dst, src, c);
        if let Some(t) = &mut self.t {
            t.u.add_row(dst, src, c);
            t.u_inv.add_col(src, dst, &-c);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        if let Some(t) = &mut self.t {
            t.v.add_col(dst, src, c);
            t.v_inv.add_row(src, dst, &-c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(t) = &mut self.t {
            t.u.negate_row(r);
            t.u_inv.negate_col(r);
        }
    }

    /// Position of a minimal-absolute-value nonzero entry in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let m = v.abs();
                let better = match &best {
                    None => true,
                    Some((_, b)) => m < *b,
                };
                if better {
                    let is_unit = m.is_one();
                    best = Some(((i, j), m));
                    if is_unit {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &-q);
                    if !self.a[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &-q);
                    if !self.a[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // bring the smallest remainder of row/column t to the pivot
                    let mut best = (t, t, self.a[(t, t)].abs());
                    for i in t + 1..rows {
                        let v = self.a[(i, t)].abs();
                        if !v.is_zero() && v < best.2 {
                            best = (i, t, v);
                        }
                    }
                    for j in t + 1..cols {
                        let v = self.a[(t, j)].abs();
                        if !v.is_zero() && v < best.2 {
                            best = (t, j, v);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // row and column are clear: enforce divisibility of the block
                let p = self.a[(t, t)].clone();
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form with unimodular transforms: `u * a * v == d`.
///
/// Pivots on a minimal-absolute-value entry to limit coefficient growth.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut r = Reducer {
        a: a.clone(),
        t: Some(Transforms {
            u: IntMatrix::identity(m),
            u_inv: IntMatrix::identity(m),
            v: IntMatrix::identity(n),
            v_inv: IntMatrix::identity(n),
        }),
    };
    let rank = r.run();
    let t = r.t.expect("transforms tracked");
    Snf {
        u: t.u,
        u_inv: t.u_inv,
        d: r.a,
        v: t.v,
        v_inv: t.v_inv,
        rank,
    }
}

/// Invariant factors only (no transforms); the divisibility chain of `a`.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer {
        a: a.clone(),
        t: None,
    };
    let rank = r.run();
    (0..rank).map(|i| r.a[(i, i)].clone()).collect()
}

pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

/// Basis of the integer kernel `{x : a x = 0}` as the columns of the result.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank..a.cols).collect();
    snf.v.select_columns(&idx)
}

/// One integer solution of `a x = b`, if any exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows, "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    solve_with(&snf, b)
}

/// Solves `a x = b` reusing a precomputed Smith form of `a`.
pub fn solve_with(snf: &Snf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let n = snf.v.rows;
    let mut y = vec![BigInt::zero(); n];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = c.div_rem(&snf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis (as columns) of the lattice spanned by the columns of `g`.
pub fn column_span_basis(g: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(g);
    let mut cols = Vec::with_capacity(snf.rank);
    for i in 0..snf.rank {
        let d = &snf.d[(i, i)];
        cols.push(snf.u_inv.column(i).into_iter().map(|v| v * d).collect());
    }
    IntMatrix::from_columns(g.rows, &cols)
}

/// Basis of `{x in Z^n : a x ≡ 0 (mod moduli)}` row-wise; a modulus of 0
/// imposes an exact equation.
pub fn congruence_kernel(a: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    assert_eq!(moduli.len(), a.rows, "one modulus per row");
    let n = a.cols;
    let torsion_rows: Vec<usize> = (0..a.rows).filter(|&i| !moduli[i].is_zero()).collect();
    if torsion_rows.is_empty() {
        return kernel_basis(a);
    }
    let mut d = IntMatrix::zeros(a.rows, torsion_rows.len());
    for (k, &i) in torsion_rows.iter().enumerate() {
        d[(i, k)] = moduli[i].clone();
    }
    let k = kernel_basis(&a.hcat(&d));
    let projected = k.row_block(0, n);
    column_span_basis(&projected)
}

/// One solution of `a x ≡ b (mod moduli)` row-wise, if any.
pub fn solve_congruence(a: &IntMatrix, b: &[BigInt], moduli: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = a.cols;
    let torsion_rows: Vec<usize> = (0..a.rows).filter(|&i| !moduli[i].is_zero()).collect();
    let mut d = IntMatrix::zeros(a.rows, torsion_rows.len());
    for (k, &i) in torsion_rows.iter().enumerate() {
        d[(i, k)] = moduli[i].clone();
    }
    let x = solve(&a.hcat(&d), b)?;
    Some(x[..n].to_vec())
}

/// Inverse of a unimodular matrix, or `None` when `a` is not invertible over Z.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if a.rows != a.cols {
        return None;
    }
    let snf = smith_normal_form(a);
    if snf.rank != a.rows || (0..snf.rank).any(|i| !snf.d[(i, i)].is_one()) {
        return None;
    }
    // u a v = 1  =>  a^{-1} = v u
    Some(&snf.v * &snf.u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_snf(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|d| d.is_positive()));
        s
    }

    #[test]
    fn zero_one_by_one() {
        let s = check_snf(&m(&[&[0]]));
        assert_eq!(s.d, m(&[&[0]]));
        assert_eq!(s.u, IntMatrix::identity(1));
        assert_eq!(s.v, IntMatrix::identity(1));
    }

    #[test]
    fn identity_is_fixed() {
        let s = check_snf(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2, |det| = 8, so the chain is (2, 4)
        let a = m(&[&[2, 4], &[6, 8]]);
        let s = check_snf(&a);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(a.determinant().abs(), BigInt::from(8));
    }

    #[test]
    fn rectangular_and_empty() {
        check_snf(&m(&[&[3, 6, 9], &[0, 0, 0]]));
        check_snf(&IntMatrix::zeros(0, 3));
        check_snf(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(&[&[1, 0]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0)[0], BigInt::zero());
        assert!(k.column(0)[1].abs().is_one());

        assert_eq!(kernel_basis(&m(&[&[2, 4], &[6, 8]])).cols(), 0);

        let a = m(&[&[1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        // every small kernel vector is an integer combination of the basis
        for x in -2i64..=2 {
            for y in -2i64..=2 {
                let v = vec![BigInt::from(x), BigInt::from(y), BigInt::from(-x - y)];
                assert!(solve(&k, &v).is_some());
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(2));
        assert!(unimodular_inverse(&m(&[&[2, 0], &[0, 1]])).is_none());
        let b = vec![BigInt::from(3), BigInt::from(2)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve(&m(&[&[2]]), &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn congruences() {
        // x ≡ 0 mod 2 -> lattice 2Z
        let k = congruence_kernel(&m(&[&[1]]), &[BigInt::from(2)]);
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)].abs(), BigInt::from(2));
        let x = solve_congruence(&m(&[&[3]]), &[BigInt::from(1)], &[BigInt::from(4)]).unwrap();
        assert!((BigInt::from(3) * &x[0] - BigInt::one()).is_multiple_of(&BigInt::from(4)));
    }
}
