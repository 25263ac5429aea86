use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds from a list of rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!("row of length {} in a matrix with {cols} columns", bad.len())));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries: rows.concat() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)] == 0))
    }

    /// True when every row and every column holds exactly one entry 1 and
    /// all other entries are 0.
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() || self.entries.iter().any(|&e| e != 0 && e != 1) {
            return false;
        }
        let ones = |it: &mut dyn Iterator<Item = i64>| it.sum::<i64>() == 1;
        (0..self.rows).all(|i| ones(&mut self.row(i).iter().copied()))
            && (0..self.cols).all(|j| ones(&mut (0..self.rows).map(|i| self[(i, j)])))
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let x: i128 = (0..self.cols).map(|t| self[(i, t)] as i128 * other[(t, j)] as i128).sum();
                entries.push(i64::try_from(x).map_err(|_| Error::BoundExceeded("matrix product overflows i64".into()))?);
            }
        }
        Ok(IntMatrix { rows: self.rows, cols: other.cols, entries })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::BoundExceeded("determinant exceeds i64".into()))
    }

    /// Smith normal form: unimodular `u`, `v` with `u · self · v = d`,
    /// `d` diagonal, non-negative, and each diagonal entry dividing the next.
    pub fn smith_normal_form(&self) -> SmithForm {
        SmithCalc::new(self).run()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverses of `u` and `v`, maintained alongside them.
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&x| x != 0).count()
    }

    /// Diagonal entries other than 1; zeros stand for free summands.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&x| x != 1).collect()
    }
}

type Dense = Vec<Vec<i128>>;

fn dense_identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn to_int_matrix(m: &Dense, rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |i, j| {
        i64::try_from(m[i][j]).unwrap_or_else(|_| panic!("Smith transform entry {} exceeds i64", m[i][j]))
    })
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

// Elimination with unimodular 2x2 steps built from extended gcds; u_inv and
// v_inv are updated with the inverse steps so that no inversion is needed.
struct SmithCalc {
    rows: usize,
    cols: usize,
    a: Dense,
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

impl SmithCalc {
    fn new(m: &IntMatrix) -> Self {
        SmithCalc {
            rows: m.rows,
            cols: m.cols,
            a: (0..m.rows).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect(),
            u: dense_identity(m.rows),
            u_inv: dense_identity(m.rows),
            v: dense_identity(m.cols),
            v_inv: dense_identity(m.cols),
        }
    }

    /// (row_i, row_j) <- (p·row_i + q·row_j, r·row_i + s·row_j), ps − qr = 1.
    fn rows_2x2(&mut self, i: usize, j: usize, [p, q, r, s]: [i128; 4]) {
        for m in [&mut self.a, &mut self.u] {
            for t in 0..m[i].len() {
                let (x, y) = (m[i][t], m[j][t]);
                m[i][t] = p * x + q * y;
                m[j][t] = r * x + s * y;
            }
        }
        for row in self.u_inv.iter_mut() {
            let (x, y) = (row[i], row[j]);
            row[i] = s * x - r * y;
            row[j] = -q * x + p * y;
        }
    }

    /// (col_i, col_j) <- (p·col_i + q·col_j, r·col_i + s·col_j), ps − qr = 1.
    fn cols_2x2(&mut self, i: usize, j: usize, [p, q, r, s]: [i128; 4]) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let (x, y) = (row[i], row[j]);
                row[i] = p * x + q * y;
                row[j] = r * x + s * y;
            }
        }
        let m = &mut self.v_inv;
        for t in 0..m[i].len() {
            let (x, y) = (m[i][t], m[j][t]);
            m[i][t] = s * x - r * y;
            m[j][t] = -q * x + p * y;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            // a swap has determinant −1, so combine it with a sign flip on row j
            self.rows_2x2(i, j, [0, 1, -1, 0]);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.cols_2x2(i, j, [0, 1, -1, 0]);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            m[i].iter_mut().for_each(|x| *x = -*x);
        }
        self.u_inv.iter_mut().for_each(|row| row[i] = -row[i]);
    }

    // zero out a[i][t] against the pivot a[t][t]
    fn clear_row_entry(&mut self, t: usize, i: usize) {
        let (p, q) = (self.a[t][t], self.a[i][t]);
        if q == 0 {
            return;
        }
        if q % p == 0 {
            self.rows_2x2(t, i, [1, 0, -(q / p), 1]);
        } else {
            let (g, x, y) = ext_gcd(p, q);
            self.rows_2x2(t, i, [x, y, -q / g, p / g]);
        }
    }

    fn clear_col_entry(&mut self, t: usize, j: usize) {
        let (p, q) = (self.a[t][t], self.a[t][j]);
        if q == 0 {
            return;
        }
        if q % p == 0 {
            self.cols_2x2(t, j, [1, 0, -(q / p), 1]);
        } else {
            let (g, x, y) = ext_gcd(p, q);
            self.cols_2x2(t, j, [x, y, -q / g, p / g]);
        }
    }

    fn smallest_nonzero(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.rows {
            for j in from..self.cols {
                let x = self.a[i][j].abs();
                if x != 0 && best.is_none_or(|(bi, bj)| x < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> SmithForm {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.smallest_nonzero(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                for i in t + 1..self.rows {
                    self.clear_row_entry(t, i);
                }
                for j in t + 1..self.cols {
                    self.clear_col_entry(t, j);
                }
                if (t + 1..self.rows).any(|i| self.a[i][t] != 0) {
                    continue;
                }
                // pivot must divide the whole remaining block
                let p = self.a[t][t];
                let bad = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| self.a[i][j] % p != 0));
                match bad {
                    Some(i) => self.rows_2x2(t, i, [1, 1, 0, 1]),
                    None => break,
                }
            }
            if self.a[t][t] < 0 {
                self.negate_row(t);
            }
        }
        let (r, c) = (self.rows, self.cols);
        SmithForm {
            u: to_int_matrix(&self.u, r, r),
            d: to_int_matrix(&self.a, r, c),
            v: to_int_matrix(&self.v, c, c),
            u_inv: to_int_matrix(&self.u_inv, r, r),
            v_inv: to_int_matrix(&self.v_inv, c, c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn k2_pairing() -> IntMatrix {
        m(&[&[1, 0, 0, 0], &[0, -1, -1, -1], &[0, -1, 0, -1], &[0, -1, -1, 0]])
    }

    type Big = Vec<Vec<BigInt>>;

    fn big(a: &IntMatrix) -> Big {
        a.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
    }

    fn big_mul(a: &Big, b: &Big) -> Big {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| (0..cols).map(|j| (0..inner).map(|t| &row[t] * &b[t][j]).sum()).collect())
            .collect()
    }

    fn check(a: &IntMatrix, s: &SmithForm) {
        assert_eq!(big_mul(&big_mul(&big(&s.u), &big(a)), &big(&s.v)), big(&s.d));
        assert_eq!(big_mul(&big(&s.u), &big(&s.u_inv)), big(&IntMatrix::identity(a.rows())));
        assert_eq!(big_mul(&big(&s.v), &big(&s.v_inv)), big(&IntMatrix::identity(a.cols())));
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0, "{diag:?}");
            }
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(4).det().unwrap(), 1);
        assert_eq!(k2_pairing().det().unwrap(), -1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), -1);
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), 1);
        assert_eq!(m(&[&[2, 4], &[1, 2]]).det().unwrap(), 0);
        assert!(matches!(IntMatrix::zeros(2, 3).det(), Err(Error::Shape(_))));
    }

    #[test]
    fn smith_examples() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let s = a.smith_normal_form();
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![1, 6]);

        let s = IntMatrix::identity(3).smith_normal_form();
        assert_eq!(s.d, IntMatrix::identity(3));

        let a = k2_pairing();
        let s = a.smith_normal_form();
        check(&a, &s);
        assert_eq!(s.d, IntMatrix::identity(4));
    }

    #[test]
    fn smith_rectangular_and_singular() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = a.smith_normal_form();
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![2, 6, 12]);

        let a = m(&[&[1, 1], &[1, 1], &[0, 0]]);
        let s = a.smith_normal_form();
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![1, 0]);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn permutation_detection() {
        assert!(IntMatrix::identity(3).is_permutation());
        assert!(m(&[&[0, 1], &[1, 0]]).is_permutation());
        assert!(!m(&[&[1, 1], &[0, 0]]).is_permutation());
        assert!(!m(&[&[0, -1], &[1, 0]]).is_permutation());
    }

    fn matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-20i64..=20, r * c)
                .prop_map(move |e| IntMatrix::from_fn(r, c, |i, j| e[i * c + j]))
        })
    }

    proptest! {
        #[test]
        fn smith_is_a_valid_factorisation(a in matrix()) {
            let s = a.smith_normal_form();
            check(&a, &s);
            if a.is_square() {
                let du = s.u.det().unwrap();
                let dv = s.v.det().unwrap();
                prop_assert!((du * dv).abs() == 1);
                let prod: i64 = s.diagonal().iter().product();
                prop_assert_eq!(prod, a.det().unwrap().abs());
            }
        }
    }
}
