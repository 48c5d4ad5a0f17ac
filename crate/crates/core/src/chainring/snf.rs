//! Smith normal form over `Z/p^v` with valuation pivoting.

use super::{ChainMatrix, RingCtx};
use crate::error::{Error, Result};

/// Which transforms to accumulate. With `L·A·R = D`: `l`, `linv = L^{-1}`, `r`, `rinv = R^{-1}`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct SnfTransforms {
    pub l: bool,
    pub linv: bool,
    pub r: bool,
    pub rinv: bool,
}

pub(crate) struct SnfRaw {
    /// One exponent per diagonal slot (`min(rows, cols)` of them); `prec` means zero.
    pub exponents: Vec<u32>,
    pub prec: u32,
    pub l: Option<ChainMatrix>,
    pub linv: Option<ChainMatrix>,
    pub r: Option<ChainMatrix>,
    pub rinv: Option<ChainMatrix>,
}

/// `A = U·D·V` with `D = diag(p^{d_i})`, exponents nondecreasing.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal exponents; the value `prec` marks an entry that is zero at this precision.
    pub exponents: Vec<u32>,
    pub prec: u32,
    pub u: ChainMatrix,
    pub v: ChainMatrix,
    pub u_inv: ChainMatrix,
    pub v_inv: ChainMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> ChainMatrix {
        let ctx = *self.u.ctx();
        let mut d = ChainMatrix::zeros(ctx, self.u.cols(), self.v.rows());
        for (i, &e) in self.exponents.iter().enumerate() {
            if e < self.prec {
                d.set(i, i, ctx.pow_p(e));
            }
        }
        d
    }

    /// Number of diagonal entries that are nonzero at this precision.
    pub fn rank(&self) -> usize {
        self.exponents.iter().filter(|&&e| e < self.prec).count()
    }
}

struct Work {
    cols: usize,
    m: Vec<u64>,
}

struct Square {
    n: usize,
    d: Vec<u64>,
}

impl Square {
    fn identity(n: usize) -> Self {
        let mut d = vec![0; n * n];
        for i in 0..n {
            d[i * n + i] = 1;
        }
        Square { n, d }
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        for j in 0..n {
            self.d.swap(a * n + j, b * n + j);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        for i in 0..n {
            self.d.swap(i * n + a, i * n + b);
        }
    }
    fn scale_row(&mut self, ctx: &RingCtx, i: usize, c: u64) {
        let n = self.n;
        for x in &mut self.d[i * n..(i + 1) * n] {
            *x = ctx.mul(*x, c);
        }
    }
    fn scale_col(&mut self, ctx: &RingCtx, j: usize, c: u64) {
        let n = self.n;
        for i in 0..n {
            self.d[i * n + j] = ctx.mul(self.d[i * n + j], c);
        }
    }
    /// row_dst -= f * row_src
    fn row_sub(&mut self, ctx: &RingCtx, dst: usize, src: usize, f: u64) {
        let n = self.n;
        for j in 0..n {
            let s = self.d[src * n + j];
            if s != 0 {
                let t = ctx.mul(f, s);
                self.d[dst * n + j] = ctx.sub(self.d[dst * n + j], t);
            }
        }
    }
    /// row_dst += f * row_src
    fn row_add(&mut self, ctx: &RingCtx, dst: usize, src: usize, f: u64) {
        self.row_sub(ctx, dst, src, ctx.neg(f));
    }
    /// col_dst -= f * col_src
    fn col_sub(&mut self, ctx: &RingCtx, dst: usize, src: usize, f: u64) {
        let n = self.n;
        for i in 0..n {
            let s = self.d[i * n + src];
            if s != 0 {
                let t = ctx.mul(f, s);
                self.d[i * n + dst] = ctx.sub(self.d[i * n + dst], t);
            }
        }
    }
    fn col_add(&mut self, ctx: &RingCtx, dst: usize, src: usize, f: u64) {
        self.col_sub(ctx, dst, src, ctx.neg(f));
    }
    fn into_matrix(self, ctx: RingCtx) -> ChainMatrix {
        let data = self.d.into_iter().map(|x| ctx.reduce(x)).collect();
        ChainMatrix::from_raw(ctx, self.n, self.n, data)
    }
}

impl Work {
    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.m[i * self.cols + j]
    }
}

/// Core elimination. Pivot: smallest valuation in the trailing block, first in
/// row-major order among ties.
pub(crate) fn snf_raw(a: &ChainMatrix, want: SnfTransforms) -> SnfRaw {
    let a = a.truncated();
    let ctx = *a.ctx();
    let prec = ctx.k();
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work { cols, m: a.data().to_vec() };
    let mut l = want.l.then(|| Square::identity(rows));
    let mut linv = want.linv.then(|| Square::identity(rows));
    let mut r = want.r.then(|| Square::identity(cols));
    let mut rinv = want.rinv.then(|| Square::identity(cols));
    let steps = rows.min(cols);
    let mut exponents = Vec::with_capacity(steps);

    for t in 0..steps {
        // pivot search
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..rows {
            for j in t..cols {
                let x = w.at(i, j);
                if x == 0 {
                    continue;
                }
                let v = ctx.valuation(x);
                if best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((d, pi, pj)) = best else {
            exponents.extend(std::iter::repeat(prec).take(steps - t));
            break;
        };
        // bring pivot to (t, t)
        if pi != t {
            for j in 0..cols {
                w.m.swap(t * cols + j, pi * cols + j);
            }
            if let Some(l) = l.as_mut() {
                l.swap_rows(t, pi);
            }
            if let Some(li) = linv.as_mut() {
                li.swap_cols(t, pi);
            }
        }
        if pj != t {
            for i in 0..rows {
                w.m.swap(i * cols + t, i * cols + pj);
            }
            if let Some(r) = r.as_mut() {
                r.swap_cols(t, pj);
            }
            if let Some(ri) = rinv.as_mut() {
                ri.swap_rows(t, pj);
            }
        }
        // normalise pivot to p^d
        let pd = ctx.pow_p(d);
        let unit = w.at(t, t) / pd;
        let uinv = ctx.inv(unit).expect("pivot quotient is a unit");
        if unit != 1 {
            for j in t..cols {
                w.m[t * cols + j] = ctx.mul(w.m[t * cols + j], uinv);
            }
            if let Some(l) = l.as_mut() {
                l.scale_row(&ctx, t, uinv);
            }
            if let Some(li) = linv.as_mut() {
                li.scale_col(&ctx, t, unit);
            }
        }
        // clear column t below the pivot
        for i in t + 1..rows {
            let x = w.at(i, t);
            if x == 0 {
                continue;
            }
            let f = x / pd;
            for j in t..cols {
                let s = w.m[t * cols + j];
                if s != 0 {
                    let prod = ctx.mul(f, s);
                    w.m[i * cols + j] = ctx.sub(w.m[i * cols + j], prod);
                }
            }
            debug_assert_eq!(w.at(i, t), 0);
            if let Some(l) = l.as_mut() {
                l.row_sub(&ctx, i, t, f);
            }
            if let Some(li) = linv.as_mut() {
                li.col_add(&ctx, t, i, f);
            }
        }
        // clear row t right of the pivot
        for j in t + 1..cols {
            let x = w.at(t, j);
            if x == 0 {
                continue;
            }
            let f = x / pd;
            w.m[t * cols + j] = 0;
            if let Some(r) = r.as_mut() {
                r.col_sub(&ctx, j, t, f);
            }
            if let Some(ri) = rinv.as_mut() {
                ri.row_add(&ctx, t, j, f);
            }
        }
        exponents.push(d);
    }

    SnfRaw {
        exponents,
        prec,
        l: l.map(|s| s.into_matrix(ctx)),
        linv: linv.map(|s| s.into_matrix(ctx)),
        r: r.map(|s| s.into_matrix(ctx)),
        rinv: rinv.map(|s| s.into_matrix(ctx)),
    }
}

/// Full Smith form with both transforms and their inverses, computed modulo
/// `p^{valid_prec}`.
pub fn smith_normal_form(a: &ChainMatrix) -> SmithForm {
    let raw = snf_raw(a, SnfTransforms { l: true, linv: true, r: true, rinv: true });
    SmithForm {
        exponents: raw.exponents,
        prec: raw.prec,
        u: raw.linv.expect("requested"),
        v: raw.rinv.expect("requested"),
        u_inv: raw.l.expect("requested"),
        v_inv: raw.r.expect("requested"),
    }
}

/// Elementary-divisor exponents only.
pub fn smith_exponents(a: &ChainMatrix) -> Vec<u32> {
    snf_raw(a, SnfTransforms::default()).exponents
}

/// Generators of `{x : A·x ≡ 0 mod p^v}` (`v = valid_prec`), reduced to and
/// tagged with `v - 1` trusted digits. Zero generators are dropped.
pub fn kernel_mod(a: &ChainMatrix) -> Result<ChainMatrix> {
    let v = a.valid_prec();
    if v < 2 {
        return Err(Error::PrecisionExhausted { needed: 2, available: v });
    }
    let raw = snf_raw(a, SnfTransforms { r: true, ..Default::default() });
    let r = raw.r.expect("requested");
    let ctx = *r.ctx();
    let n = a.cols();
    let mut gens = Vec::new();
    for i in 0..n {
        let d = raw.exponents.get(i).copied().unwrap_or(v);
        let scale = if d >= v { 1 } else { ctx.pow_p(v - d) % ctx.modulus() };
        if scale == 0 {
            continue;
        }
        gens.push(r.column(i).into_iter().map(|x| ctx.mul(x, scale)).collect::<Vec<_>>());
    }
    let out = ChainMatrix::from_columns(ctx, n, &gens).reduce_to(v - 1);
    Ok(out.nonzero_columns())
}
