//! Dense integer matrices with exact determinant, Hermite and Smith forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major matrix over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `U · M = H` with `U` unimodular and `H` in row Hermite normal form.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `H`, i.e. the rank of `M`.
    pub rank: usize,
}

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries of `S`, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "shape mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                *o += vi * m;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Fraction-free Gaussian elimination (Bareiss). Panics unless square.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, r);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = x / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let x = std::mem::take(&mut self[(i, c)]);
            self[(i, c)] = -x;
        }
    }

    /// `row_i -= q · row_j`.
    fn sub_row_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let x = q * &self[(j, c)];
            self[(i, c)] -= x;
        }
    }

    /// `col_i -= q · col_j`.
    fn sub_col_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let x = q * &self[(r, j)];
            self[(r, i)] -= x;
        }
    }

    /// Replace rows `(i, j)` by `(a·ri + b·rj, c·ri + d·rj)`.
    fn combine_rows(&mut self, i: usize, j: usize, [a, b, c, d]: [&BigInt; 4]) {
        for k in 0..self.cols {
            let (x, y) = (self[(i, k)].clone(), self[(j, k)].clone());
            self[(i, k)] = a * &x + b * &y;
            self[(j, k)] = c * &x + d * &y;
        }
    }

    /// Row Hermite normal form: echelon, positive pivots, entries above each
    /// pivot reduced into `[0, pivot)`, zero rows last.
    pub fn hnf(&self) -> Hnf {
        let mut h = self.clone();
        let mut u = Self::identity(self.rows);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            for i in r + 1..self.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let (a, b) = (h[(r, c)].clone(), h[(i, c)].clone());
                let (g, s, t) = ext_gcd(&a, &b);
                let (bg, ag) = (-(&b / &g), &a / &g);
                let m = [&s, &t, &bg, &ag];
                h.combine_rows(r, i, m);
                u.combine_rows(r, i, m);
            }
            if h[(r, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            let pivot = h[(r, c)].clone();
            for i in 0..r {
                let q = h[(i, c)].div_floor(&pivot);
                if !q.is_zero() {
                    h.sub_row_multiple(i, r, &q);
                    u.sub_row_multiple(i, r, &q);
                }
            }
            r += 1;
        }
        Hnf { h, u, rank: r }
    }

    pub fn rank(&self) -> usize {
        self.hnf().rank
    }

    /// Smith normal form with both transforms and the inverse of `V`.
    pub fn snf(&self) -> Snf {
        let (m, n) = (self.rows, self.cols);
        let mut s = self.clone();
        let mut u = Self::identity(m);
        let mut v = Self::identity(n);
        let mut v_inv = Self::identity(n);
        for t in 0..m.min(n) {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !s[(i, j)].is_zero())
                .min_by(|&a, &b| s[a].magnitude().cmp(s[b].magnitude()));
            let Some((pi, pj)) = pivot else { break };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
            loop {
                // Euclidean steps keep every entry a remainder of the pivot.
                let pivot = s[(t, t)].clone();
                for i in t + 1..m {
                    let q = &s[(i, t)] / &pivot;
                    if !q.is_zero() {
                        s.sub_row_multiple(i, t, &q);
                        u.sub_row_multiple(i, t, &q);
                    }
                }
                for j in t + 1..n {
                    let q = &s[(t, j)] / &pivot;
                    if !q.is_zero() {
                        s.sub_col_multiple(j, t, &q);
                        v.sub_col_multiple(j, t, &q);
                        let minus_q = -&q;
                        v_inv.sub_row_multiple(t, j, &minus_q);
                    }
                }
                let smaller_row = (t + 1..m).find(|&i| !s[(i, t)].is_zero());
                let smaller_col = (t + 1..n).find(|&j| !s[(t, j)].is_zero());
                if let Some(i) = smaller_row {
                    let i = (t + 1..m)
                        .filter(|&r| !s[(r, t)].is_zero())
                        .min_by(|&a, &b| s[(a, t)].magnitude().cmp(s[(b, t)].magnitude()))
                        .unwrap_or(i);
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue;
                }
                if let Some(j) = smaller_col {
                    let j = (t + 1..n)
                        .filter(|&c| !s[(t, c)].is_zero())
                        .min_by(|&a, &b| s[(t, a)].magnitude().cmp(s[(t, b)].magnitude()))
                        .unwrap_or(j);
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    v_inv.swap_rows(t, j);
                    continue;
                }
                let d = s[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&d)));
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        s.sub_row_multiple(t, i, &minus_one);
                        u.sub_row_multiple(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if s[(t, t)].is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
        }
        Snf { s, u, v, v_inv }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
