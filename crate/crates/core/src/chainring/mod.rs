//! Exact linear algebra over the chain ring `Z/p^k`.
//!
//! Residues are stored as `u64` in `[0, p^k)`. Every matrix carries the number
//! of p-adic digits that are actually trusted (`valid_prec`); kernel-type
//! operations drop one digit, products and images keep the minimum of their
//! inputs.

mod fp;
mod snf;

pub use fp::{fp_eigenspace_dims, FpEchelon, FpMatrix};
pub use snf::{kernel_mod, smith_exponents, smith_normal_form, SmithForm};
pub(crate) use snf::{snf_raw, SnfTransforms};

use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible modulus; products are formed in `u128`.
const MAX_MODULUS: u64 = 1 << 62;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The coefficient ring `Z/p^k` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    p: u64,
    k: u32,
    modulus: u64,
}

impl RingCtx {
    /// A working ring with `k >= 3` digits.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidParameters(format!("p = {p} is not an odd prime")));
        }
        if k < 3 {
            return Err(Error::InvalidParameters(format!("precision k = {k} is below 3")));
        }
        Self::build(p, k)
    }

    fn build(p: u64, k: u32) -> Result<Self> {
        let mut modulus: u64 = 1;
        for _ in 0..k {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m <= MAX_MODULUS)
                .ok_or_else(|| Error::InvalidParameters(format!("{p}^{k} exceeds 2^62")))?;
        }
        Ok(RingCtx { p, k, modulus })
    }

    /// The same prime at another precision; internal results may drop below 3 digits.
    pub fn with_precision(&self, k: u32) -> Self {
        assert!(k >= 1, "precision must be at least one digit");
        Self::build(self.p, k).expect("precision increase overflows the modulus")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p^e` as an integer; `e` may equal `k`.
    pub fn pow_p(&self, e: u32) -> u64 {
        assert!(e <= self.k);
        self.p.pow(e)
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        let m = self.modulus as i128;
        (((x as i128) % m + m) % m) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.modulus < (1 << 32) {
            (a * b) % self.modulus
        } else {
            ((a as u128 * b as u128) % self.modulus as u128) as u64
        }
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// p-adic valuation, `k` for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        if x == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut y = x;
        while y % self.p == 0 {
            y /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u64) -> bool {
        x % self.p != 0
    }

    /// Inverse of a unit.
    pub fn inv(&self, x: u64) -> Option<u64> {
        if !self.is_unit(x) {
            return None;
        }
        let (mut old_r, mut r) = (x as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        let m = self.modulus as i128;
        Some((((old_s % m) + m) % m) as u64)
    }

    /// Symmetric representative in `(-p^k/2, p^k/2]`.
    pub fn signed(&self, x: u64) -> i64 {
        if x > self.modulus / 2 {
            x as i64 - self.modulus as i64
        } else {
            x as i64
        }
    }
}

/// Teichmüller lift of the unit `s`: the `(p-1)`-th root of unity congruent to `s` mod `p`.
pub fn teichmuller(s: i64, ctx: &RingCtx) -> Result<u64> {
    let p = ctx.p() as i64;
    if s.rem_euclid(p) == 0 {
        return Err(Error::UnitRequired { value: s.rem_euclid(p) as u64, p: ctx.p() });
    }
    let base = ctx.reduce_i64(s);
    Ok(ctx.pow(base, ctx.p().pow(ctx.k() - 1)))
}

/// A dense matrix over `Z/p^k` with a trusted-precision tag.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMatrix {
    ctx: RingCtx,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    valid_prec: u32,
}

impl fmt::Debug for ChainMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ChainMatrix {}x{} mod {}^{} (valid {})",
            self.rows,
            self.cols,
            self.ctx.p,
            self.ctx.k,
            self.valid_prec
        )?;
        for i in 0..self.rows {
            let row: Vec<i64> = self.row(i).iter().map(|&x| self.ctx.signed(x)).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl ChainMatrix {
    pub fn zeros(ctx: RingCtx, rows: usize, cols: usize) -> Self {
        ChainMatrix { ctx, rows, cols, data: vec![0; rows * cols], valid_prec: ctx.k }
    }

    pub fn identity(ctx: RingCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ctx.modulus;
        }
        m
    }

    pub fn scalar(ctx: RingCtx, n: usize, c: u64) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = ctx.reduce(c);
        }
        m
    }

    pub fn from_fn(ctx: RingCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = ctx.reduce(f(i, j));
            }
        }
        m
    }

    /// Build from signed integer rows; all rows must have the same length.
    pub fn from_rows(ctx: RingCtx, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self::from_fn(ctx, r, c, |i, j| ctx.reduce_i64(rows[i][j])))
    }

    pub(crate) fn from_raw(ctx: RingCtx, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        ChainMatrix { ctx, rows, cols, data, valid_prec: ctx.k }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(ctx: RingCtx, rows: usize, columns: &[Vec<u64>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(ctx, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.data[i * cols + j] = ctx.reduce(col[i]);
            }
        }
        m
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn valid_prec(&self) -> u32 {
        self.valid_prec
    }

    pub(crate) fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = self.ctx.reduce(x);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Signed row-major entries.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| self.ctx.signed(x)).collect()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Lower the trusted precision tag without touching the stored residues.
    pub fn with_valid_prec(mut self, v: u32) -> Self {
        self.valid_prec = self.valid_prec.min(v);
        self
    }

    /// Re-express over `Z/p^{valid_prec}`.
    pub fn truncated(&self) -> Self {
        if self.valid_prec == self.ctx.k {
            return self.clone();
        }
        self.reduce_to(self.valid_prec)
    }

    /// Reduce modulo `p^v` (with `v <= valid_prec`) and re-home in `Z/p^v`.
    pub fn reduce_to(&self, v: u32) -> Self {
        assert!(v <= self.valid_prec, "cannot reduce to {v} digits from {}", self.valid_prec);
        let ctx = self.ctx.with_precision(v);
        let data = self.data.iter().map(|&x| ctx.reduce(x)).collect();
        ChainMatrix { ctx, rows: self.rows, cols: self.cols, data, valid_prec: v }
    }

    /// Reinterpret the stored residues in a ring of higher precision. The trusted
    /// precision is unchanged.
    pub fn lift_to(&self, ctx: RingCtx) -> Self {
        assert_eq!(ctx.p, self.ctx.p);
        assert!(ctx.k >= self.ctx.k);
        ChainMatrix { ctx, rows: self.rows, cols: self.cols, data: self.data.clone(), valid_prec: self.valid_prec }
    }

    /// Reinterpret as a matrix that is exact at the higher precision (used for
    /// integer-defined matrices and exact finite presentations).
    pub fn lift_exact(&self, ctx: RingCtx) -> Self {
        let mut m = self.lift_to(ctx);
        m.valid_prec = ctx.k;
        m
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.ctx, other.ctx, "matrices live over different rings");
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t.valid_prec = self.valid_prec;
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.ctx.add(a, b)).collect();
        self.with_data(data, self.valid_prec.min(other.valid_prec))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.ctx.sub(a, b)).collect();
        self.with_data(data, self.valid_prec.min(other.valid_prec))
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = self.ctx.reduce(c);
        let data = self.data.iter().map(|&a| self.ctx.mul(a, c)).collect();
        self.with_data(data, self.valid_prec)
    }

    fn with_data(&self, data: Vec<u64>, valid_prec: u32) -> Self {
        ChainMatrix { ctx: self.ctx, rows: self.rows, cols: self.cols, data, valid_prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let (n, m, q) = (self.rows, self.cols, other.cols);
        let ctx = self.ctx;
        let mut out = vec![0u64; n * q];
        if ctx.modulus < (1 << 32) {
            let mut acc = vec![0u128; q];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                let arow = &self.data[i * m..(i + 1) * m];
                for (l, &a) in arow.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.data[l * q..(l + 1) * q];
                    for (slot, &b) in acc.iter_mut().zip(brow) {
                        *slot += (a * b) as u128;
                    }
                }
                for (o, a) in out[i * q..(i + 1) * q].iter_mut().zip(&acc) {
                    *o = (*a % ctx.modulus as u128) as u64;
                }
            }
        } else {
            for i in 0..n {
                for l in 0..m {
                    let a = self.data[i * m + l];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..q {
                        let idx = i * q + j;
                        out[idx] = ctx.add(out[idx], ctx.mul(a, other.data[l * q + j]));
                    }
                }
            }
        }
        ChainMatrix { ctx, rows: n, cols: q, data: out, valid_prec: self.valid_prec.min(other.valid_prec) }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| self.ctx.add(acc, self.ctx.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.ctx, self.rows).with_valid_prec(self.valid_prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        self.check_compatible(other);
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.ctx, self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        m.valid_prec = self.valid_prec.min(other.valid_prec);
        m
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        self.check_compatible(other);
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ChainMatrix {
            ctx: self.ctx,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            valid_prec: self.valid_prec.min(other.valid_prec),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut m = Self::zeros(self.ctx, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m.valid_prec = self.valid_prec.min(other.valid_prec);
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        let mut m = Self::from_fn(self.ctx, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j));
        m.valid_prec = self.valid_prec;
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::from_fn(self.ctx, idx.len(), self.cols, |i, j| self.get(idx[i], j));
        m.valid_prec = self.valid_prec;
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::from_fn(self.ctx, self.rows, idx.len(), |i, j| self.get(i, idx[j]));
        m.valid_prec = self.valid_prec;
        m
    }

    /// Drop all-zero columns.
    pub fn nonzero_columns(&self) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| (0..self.rows).any(|i| self.get(i, j) != 0)).collect();
        self.select_columns(&keep)
    }

    /// Reduction modulo `p`.
    pub fn mod_p(&self) -> FpMatrix {
        let p = self.ctx.p;
        FpMatrix::from_fn(p, self.rows, self.cols, |i, j| self.get(i, j) % p)
    }

    /// Inverse over `Z/p^{valid_prec}`, if the matrix is invertible.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let a = self.truncated();
        let ctx = a.ctx;
        let n = a.rows;
        let w = 2 * n;
        let mut m = vec![0u64; n * w];
        for i in 0..n {
            m[i * w..i * w + n].copy_from_slice(a.row(i));
            m[i * w + n + i] = 1 % ctx.modulus;
        }
        for c in 0..n {
            let piv = (c..n).find(|&r| ctx.is_unit(m[r * w + c]))?;
            if piv != c {
                for j in 0..w {
                    m.swap(c * w + j, piv * w + j);
                }
            }
            let inv = ctx.inv(m[c * w + c]).expect("unit pivot");
            for j in 0..w {
                m[c * w + j] = ctx.mul(m[c * w + j], inv);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = m[r * w + c];
                if f == 0 {
                    continue;
                }
                for j in 0..w {
                    let t = ctx.mul(f, m[c * w + j]);
                    m[r * w + j] = ctx.sub(m[r * w + j], t);
                }
            }
        }
        let mut out = Self::zeros(ctx, n, n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&m[i * w + n..(i + 1) * w]);
        }
        Some(out)
    }

    /// Length (log_p of the order) of the submodule of `(Z/p^v)^rows` spanned
    /// by the columns, with `v = valid_prec`.
    pub fn column_length(&self) -> u32 {
        let v = self.valid_prec;
        smith_exponents(self).iter().map(|&d| v - d.min(v)).sum()
    }

    /// Whether every column of `x` lies in the column span of `self`
    /// modulo `p^{valid_prec}` (minimum of both tags).
    pub fn spans(&self, x: &Self) -> bool {
        self.check_compatible(x);
        assert_eq!(self.rows, x.rows);
        let v = self.valid_prec.min(x.valid_prec);
        let a = self.reduce_to(v);
        let b = x.reduce_to(v);
        let ctx = a.ctx;
        let snf = snf_raw(&a, SnfTransforms { l: true, ..Default::default() });
        let l = snf.l.expect("requested");
        let y = l.mul(&b);
        for i in 0..y.rows {
            let d = snf.exponents.get(i).copied().unwrap_or(v);
            let need = ctx.pow_p(d.min(v));
            for j in 0..y.cols {
                let e = y.get(i, j);
                if d >= v {
                    if e != 0 {
                        return false;
                    }
                } else if e % need != 0 {
                    return false;
                }
            }
        }
        true
    }
}
