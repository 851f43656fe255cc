//! Exact linear algebra over the rationals.
//!
//! Two layers share the work:
//!
//! * [`Matrix`] — a small dense rational matrix for Gram matrices,
//!   endomorphisms and square solves.
//! * [`LinearSystem`] — a sparse, fraction-free echelon accumulator used for
//!   every null-space computation. Rows are scaled to integers, combined
//!   Bareiss-style (cross-multiply, strip content) and kept fully reduced, so
//!   the resulting echelon form is the unique reduced row-echelon form of the
//!   row space regardless of insertion order. First nonzero column pivoting,
//!   deterministic throughout.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Sparse integer row: strictly increasing column indices, nonzero entries.
type IntRow = Vec<(usize, BigInt)>;

/// Divides out the content (gcd of entries) and makes the leading entry positive.
fn normalize(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row[0].1.is_negative();
    if g.is_one() && !negate {
        return;
    }
    if negate {
        g = -g;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// `a*ca + b*cb`, merging sorted sparse rows and dropping cancellations.
fn combine(a: &IntRow, ca: &BigInt, b: &IntRow, cb: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ca_col, av)), Some((cb_col, bv))) => match ca_col.cmp(cb_col) {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (*ca_col, av * ca)
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (*cb_col, bv * cb)
                }
                std::cmp::Ordering::Equal => {
                    let v = av * ca + bv * cb;
                    i += 1;
                    j += 1;
                    (*ca_col, v)
                }
            },
            (Some((c, av)), None) => {
                i += 1;
                (*c, av * ca)
            }
            (None, Some((c, bv))) => {
                j += 1;
                (*c, bv * cb)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn entry_at(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|idx| &row[idx].1)
}

/// Fraction-free echelon accumulator; see module docs.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    cols: usize,
    /// Pivot rows keyed by leading column; kept fully reduced and content-free.
    pivots: BTreeMap<usize, IntRow>,
}

impl LinearSystem {
    pub fn new(cols: usize) -> Self {
        LinearSystem {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a constraint row given as (column, coefficient) pairs.
    /// Duplicate columns accumulate; zero rows are ignored.
    pub fn add_row<I: IntoIterator<Item = (usize, Scalar)>>(&mut self, entries: I) {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            debug_assert!(c < self.cols);
            let slot = acc.entry(c).or_insert_with(Scalar::zero);
            *slot += v;
        }
        // scale to integers by the lcm of denominators
        let mut lcm = BigInt::one();
        for v in acc.values() {
            if !v.is_zero() {
                lcm = lcm.lcm(v.denom());
            }
        }
        let mut row: IntRow = Vec::with_capacity(acc.len());
        for (c, v) in acc {
            if v.is_zero() {
                continue;
            }
            row.push((c, v.numer() * (&lcm / v.denom())));
        }
        self.add_int_row(row);
    }

    fn add_int_row(&mut self, mut row: IntRow) {
        normalize(&mut row);
        // Reduce every pivot-column entry of the incoming row (pivot rows are
        // fully reduced, so each step strictly shrinks the set of pivot
        // columns in the row's support).
        loop {
            let Some(target) = row
                .iter()
                .map(|(c, _)| *c)
                .find(|c| self.pivots.contains_key(c))
            else {
                break;
            };
            let pivot = &self.pivots[&target];
            let pc = pivot[0].1.clone();
            let rc = entry_at(&row, target).unwrap().clone();
            row = combine(&row, &pc, pivot, &(-rc));
            normalize(&mut row);
        }
        let Some(&(lead, _)) = row.first() else {
            return;
        };
        // clear the new leading column from every other pivot row
        let lead_val = row[0].1.clone();
        let cols_to_fix: Vec<usize> = self
            .pivots
            .iter()
            .filter(|(_, p)| entry_at(p, lead).is_some())
            .map(|(c, _)| *c)
            .collect();
        for c in cols_to_fix {
            let p = self.pivots.remove(&c).unwrap();
            let coeff = entry_at(&p, lead).unwrap().clone();
            let mut fixed = combine(&p, &lead_val, &row, &(-coeff));
            normalize(&mut fixed);
            debug_assert_eq!(fixed.first().map(|e| e.0), Some(c));
            self.pivots.insert(c, fixed);
        }
        self.pivots.insert(lead, row);
    }

    /// Reduces a dense vector by the pivot rows; the result has zeros in every
    /// pivot column. The zero result certifies membership of the vector in the
    /// row space.
    pub fn reduce_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = v.to_vec();
        for (&lead, pivot) in &self.pivots {
            if out[lead].is_zero() {
                continue;
            }
            let factor = &out[lead] / BigRational::from_integer(pivot[0].1.clone());
            for (c, pv) in pivot {
                let delta = &factor * BigRational::from_integer(pv.clone());
                out[*c] -= delta;
            }
        }
        out
    }

    /// True iff `v` lies in the span of the inserted rows.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce_vector(v).iter().all(|x| x.is_zero())
    }

    /// The unique reduced row-echelon basis of the row space (leading entries 1).
    pub fn reduced_rows(&self) -> Vec<Vec<Scalar>> {
        self.pivots
            .values()
            .map(|row| {
                let lead = BigRational::from_integer(row[0].1.clone());
                let mut dense = vec![Scalar::zero(); self.cols];
                for (c, v) in row {
                    dense[*c] = BigRational::from_integer(v.clone()) / &lead;
                }
                dense
            })
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Canonical (reduced row-echelon) basis of the solution space of the
    /// homogeneous system built from the inserted rows.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut free: Vec<usize> = Vec::new();
        for c in 0..self.cols {
            if !self.pivots.contains_key(&c) {
                free.push(c);
            }
        }
        if free.is_empty() {
            return Vec::new();
        }
        let mut basis = LinearSystem::new(self.cols);
        for &f in &free {
            let mut v: Vec<(usize, Scalar)> = vec![(f, Scalar::one())];
            for (&c, row) in &self.pivots {
                if let Some(coeff) = entry_at(row, f) {
                    let lead = BigRational::from_integer(row[0].1.clone());
                    v.push((c, -BigRational::from_integer(coeff.clone()) / &lead));
                }
            }
            basis.add_row(v);
        }
        basis.reduced_rows()
    }
}

/// Canonical reduced row-echelon form of a set of spanning vectors.
pub fn rref_rows(ambient: usize, rows: impl IntoIterator<Item = Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut sys = LinearSystem::new(ambient);
    for r in rows {
        assert_eq!(r.len(), ambient);
        sys.add_row(r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()));
    }
    sys.reduced_rows()
}

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                if !self.get(i, k).is_zero() && !other.get(k, j).is_zero() {
                    acc += self.get(i, k) * other.get(k, j);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    if !self.get(i, k).is_zero() && !v[k].is_zero() {
                        acc += self.get(i, k) * &v[k];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on an
    /// integer-scaled copy.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        // scale each row to integers, remembering the factor
        let mut scale = Scalar::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                let v = self.get(i, j);
                if !v.is_zero() {
                    lcm = lcm.lcm(v.denom());
                }
            }
            scale *= BigRational::from_integer(lcm.clone());
            m.push(
                (0..n)
                    .map(|j| {
                        let v = self.get(i, j);
                        v.numer() * (&lcm / v.denom())
                    })
                    .collect(),
            );
        }
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // first row below with a nonzero entry in column k
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Scalar::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = m[n - 1][n - 1].clone();
        BigRational::from_integer(det_int * BigInt::from(sign)) / scale
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.det().is_zero()
    }

    /// Solves `self * X = rhs` for square nonsingular `self`.
    pub fn solve_square(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let w = rhs.cols;
        // Gauss-Jordan on the augmented matrix
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend_from_slice(rhs.row(i));
                row
            })
            .collect();
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !aug[r][k].is_zero())?;
            aug.swap(k, pivot_row);
            let inv = aug[k][k].clone();
            for j in k..n + w {
                aug[k][j] = &aug[k][j] / &inv;
            }
            for r in 0..n {
                if r != k && !aug[r][k].is_zero() {
                    let factor = aug[r][k].clone();
                    for j in k..n + w {
                        let delta = &factor * &aug[k][j];
                        aug[r][j] -= delta;
                    }
                }
            }
        }
        Some(Matrix::from_fn(n, w, |i, j| aug[i][n + j].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: Vec<Vec<i64>>) -> Matrix {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let a = m(vec![vec![2, 1, 0], vec![1, 3, 4], vec![0, 2, 5]]);
        // 2*(15-8) - 1*(5-0) + 0 = 9
        assert_eq!(a.det(), int(9));
        assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).det(), int(0));
    }

    #[test]
    fn det_handles_rationals() {
        let a = Matrix::from_rows(vec![
            vec![ratio(1, 2), int(1)],
            vec![int(1), ratio(1, 3)],
        ]);
        assert_eq!(a.det(), ratio(1, 6) - int(1));
    }

    #[test]
    fn solve_square_roundtrip() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let rhs = m(vec![vec![3], vec![2]]);
        let x = a.solve_square(&rhs).unwrap();
        assert_eq!(a.mul(&x), rhs);
    }

    #[test]
    fn kernel_of_simple_system() {
        // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
        let mut sys = LinearSystem::new(3);
        sys.add_row(vec![(0, int(1)), (1, int(1)), (2, int(1))]);
        sys.add_row(vec![(0, int(1)), (2, int(-1))]);
        let basis = sys.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![int(1), int(-2), int(1)]);
    }

    #[test]
    fn reduced_rows_are_canonical() {
        // same row space, different spanning sets and orders
        let a = rref_rows(
            3,
            vec![
                vec![int(2), int(0), int(2)],
                vec![int(1), int(1), int(0)],
            ],
        );
        let b = rref_rows(
            3,
            vec![
                vec![int(3), int(1), int(2)],
                vec![int(0), int(2), int(-2)],
                vec![int(1), int(1), int(0)],
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a[0][0], int(1));
    }

    #[test]
    fn rank_saturates() {
        let mut sys = LinearSystem::new(2);
        for k in 0..10 {
            sys.add_row(vec![(0, int(k + 1)), (1, int(2 * k))]);
        }
        assert_eq!(sys.rank(), 2);
        assert!(sys.kernel_basis().is_empty());
    }

    #[test]
    fn membership_via_reduce() {
        let mut sys = LinearSystem::new(3);
        sys.add_row(vec![(0, int(1)), (1, int(2))]);
        sys.add_row(vec![(2, int(5))]);
        assert!(sys.contains(&[int(2), int(4), int(10)]));
        assert!(!sys.contains(&[int(1), int(0), int(0)]));
    }
}
