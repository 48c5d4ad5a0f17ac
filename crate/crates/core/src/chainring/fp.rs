//! Dense linear algebra over the prime field `F_p`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        Self::from_fn(p, n, n, |i, j| u64::from(i == j))
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        FpMatrix { p, rows, cols, data }
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        Self::from_fn(p, rows.len(), c, |i, j| rows[i][j].rem_euclid(p as i64) as u64)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(l, j)) % p;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + p - b) % p).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// `self - λ·I`.
    pub fn shift(&self, lambda: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let x = m.get(i, i);
            m.set(i, i, x + self.p - lambda % self.p);
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(row * m.cols + j, piv * m.cols + j);
            }
            let inv = inv_mod(m.get(row, col), p);
            for j in 0..m.cols {
                let x = m.get(row, j);
                m.data[row * m.cols + j] = x * inv % p;
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col);
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let x = m.get(row, j);
                    let idx = i * m.cols + j;
                    m.data[idx] = (m.data[idx] + p - f * x % p) % p;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as columns.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m.get(r, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

/// `dim ker(M - λI)` for each listed eigenvalue.
pub fn fp_eigenspace_dims(m: &FpMatrix, eigenvalues: &[u64]) -> Result<Vec<usize>> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension("eigenspaces need a square matrix".into()));
    }
    let p = m.p();
    let mut seen: Vec<u64> = eigenvalues.iter().map(|&l| l % p).collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("repeated eigenvalue in list".into()));
    }
    Ok(eigenvalues.iter().map(|&l| m.shift(l).kernel_dim()).collect())
}

/// Incrementally maintained echelon basis of a subspace of `F_p^n`.
#[derive(Clone, Debug)]
pub struct FpEchelon {
    p: u64,
    n: usize,
    /// (pivot index, normalised row)
    rows: Vec<(usize, Vec<u64>)>,
}

impl FpEchelon {
    pub fn new(p: u64, n: usize) -> Self {
        FpEchelon { p, n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + p - f * r % p) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Add `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.n);
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], p);
        v.iter_mut().for_each(|x| *x = *x * inv % p);
        for (_, row) in &mut self.rows {
            let f = row[piv];
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = (*x + p - f * r % p) % p;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}
