//! `Z_p[Γ]`-lattices: the indecomposables `L₁ⁱ, L₂ⁱ, L₃ⁱ`, the decomposition
//! fingerprint, and the syzygy maps Φ, Ω, ω¹.

mod fingerprint;
mod syzygy;

pub use fingerprint::{fingerprint, top_dims};
pub use syzygy::{
    omega1_finite, omega1_module, omega_lattice, omega_module, phi, projective_cover, ProjectiveCover,
};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chainring::{teichmuller, ChainMatrix, RingCtx};
use crate::error::{Error, Result};
use crate::group::{Family, GroupModel, MetacyclicParams};
use crate::lambda::LambdaModule;

/// Multiplicities of `L₁ⁱ` (`a`), `L₂ⁱ` (`b`) and `L₃ⁱ` (`c`), `i ∈ Z/r` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassVector {
    pub r: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// A projective-equivalence class: `ClassVector` without `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeClassVector {
    pub r: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl ClassVector {
    pub fn zero(r: usize) -> Self {
        ClassVector { r, a: vec![0; r], b: vec![0; r], c: vec![0; r] }
    }

    pub fn rank(&self, p: u64) -> usize {
        let p = p as usize;
        self.a.iter().sum::<usize>() + (p - 1) * self.b.iter().sum::<usize>() + p * self.c.iter().sum::<usize>()
    }

    pub fn strip(&self) -> PeClassVector {
        PeClassVector { r: self.r, a: self.a.clone(), b: self.b.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let z = |x: &[usize], y: &[usize]| x.iter().zip(y).map(|(a, b)| a + b).collect();
        ClassVector { r: self.r, a: z(&self.a, &other.a), b: z(&self.b, &other.b), c: z(&self.c, &other.c) }
    }
}

impl PeClassVector {
    pub fn zero(r: usize) -> Self {
        PeClassVector { r, a: vec![0; r], b: vec![0; r] }
    }

    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::Dimension("a and b must have the same positive length r".into()));
        }
        Ok(PeClassVector { r: a.len(), a, b })
    }

    /// `L₁ⁱ`.
    pub fn l1(r: usize, i: i64) -> Self {
        let mut v = Self::zero(r);
        v.a[i.rem_euclid(r as i64) as usize] = 1;
        v
    }

    /// `L₂ⁱ`.
    pub fn l2(r: usize, i: i64) -> Self {
        let mut v = Self::zero(r);
        v.b[i.rem_euclid(r as i64) as usize] = 1;
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let z = |x: &[usize], y: &[usize]| x.iter().zip(y).map(|(a, b)| a + b).collect();
        PeClassVector { r: self.r, a: z(&self.a, &other.a), b: z(&self.b, &other.b) }
    }

    pub fn scaled(&self, n: usize) -> Self {
        PeClassVector { r: self.r, a: self.a.iter().map(|x| x * n).collect(), b: self.b.iter().map(|x| x * n).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    /// Σa = Σb, the image of Φ.
    pub fn is_in_phi_image(&self) -> bool {
        self.a.iter().sum::<usize>() == self.b.iter().sum::<usize>()
    }

    /// Ω on coordinates: `L₁ⁱ ↦ L₂^{i+1}`, `L₂ⁱ ↦ L₁ⁱ`.
    pub fn omega(&self) -> Self {
        let r = self.r;
        let mut out = Self::zero(r);
        for i in 0..r {
            out.b[(i + 1) % r] += self.a[i];
            out.a[i] += self.b[i];
        }
        out
    }

    pub fn omega_inv(&self) -> Self {
        let r = self.r;
        let mut out = Self::zero(r);
        for i in 0..r {
            out.a[i] += self.b[(i + 1) % r];
            out.b[i] += self.a[i];
        }
        out
    }

    /// All `2r` coordinates, `a` first.
    pub fn coords(&self) -> Vec<usize> {
        self.a.iter().chain(&self.b).copied().collect()
    }
}

pub fn is_in_phi_image(v: &PeClassVector) -> bool {
    v.is_in_phi_image()
}

pub fn omega_vec(v: &PeClassVector) -> PeClassVector {
    v.omega()
}

pub fn omega_vec_inv(v: &PeClassVector) -> PeClassVector {
    v.omega_inv()
}

impl fmt::Display for PeClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={:?} b={:?}", self.a, self.b)
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={:?} b={:?} c={:?}", self.a, self.b, self.c)
    }
}

/// Shared context for building lattices over one `Γ`.
#[derive(Clone, Debug)]
pub struct LatticeFactory {
    pub ctx: RingCtx,
    pub gamma: Arc<GroupModel>,
    pub params: MetacyclicParams,
    rho: u64,
}

impl LatticeFactory {
    pub fn new(params: MetacyclicParams, k: u32) -> Result<Self> {
        let ctx = RingCtx::new(params.p, k)?;
        let rho = teichmuller(params.s as i64, &ctx)?;
        Ok(LatticeFactory { ctx, gamma: Arc::new(GroupModel::make(Family::Gamma, params)), params, rho })
    }

    fn twist(&self, i: i64) -> u64 {
        let r = self.params.r as i64;
        self.ctx.pow(self.rho, i.rem_euclid(r) as u64)
    }

    fn module(&self, sigma: ChainMatrix, tau: ChainMatrix) -> LambdaModule {
        LambdaModule::lattice(self.gamma.clone(), vec![sigma, tau]).expect("constructor satisfies the relations")
    }

    /// `Z_p` with trivial σ and τ acting by `ρ^i`.
    pub fn make_l1(&self, i: i64) -> LambdaModule {
        let ctx = self.ctx;
        self.module(ChainMatrix::identity(ctx, 1), ChainMatrix::scalar(ctx, 1, self.twist(i)))
    }

    /// `(1-ζ)^i Z_p[ζ]` on the basis `(1-ζ)^i ζ^j`, `j = 0..p-1`.
    pub fn make_l2(&self, i: i64) -> LambdaModule {
        let ctx = self.ctx;
        let p = self.params.p as usize;
        let s = self.params.s as usize;
        let n = p - 1;
        let i = i.rem_euclid(self.params.r as i64) as usize;
        let sigma = ChainMatrix::from_fn(ctx, n, n, |row, col| {
            if col + 1 < n {
                u64::from(row == col + 1)
            } else {
                ctx.neg(1)
            }
        });
        // polynomials in ζ, kept modulo x^p - 1 and reduced by Φ_p at the end
        let mul = |a: &[u64], b: &[u64]| {
            let mut out = vec![0u64; p];
            for (x, &ca) in a.iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                for (y, &cb) in b.iter().enumerate() {
                    out[(x + y) % p] = ctx.add(out[(x + y) % p], ctx.mul(ca, cb));
                }
            }
            out
        };
        let mut u = vec![0u64; p];
        for c in u.iter_mut().take(s) {
            *c = 1;
        }
        let mut ui = vec![0u64; p];
        ui[0] = 1;
        for _ in 0..i {
            ui = mul(&ui, &u);
        }
        let mut tau = ChainMatrix::zeros(ctx, n, n);
        for j in 0..n {
            let mut mono = vec![0u64; p];
            mono[(s * j) % p] = 1;
            let poly = mul(&ui, &mono);
            let top = poly[p - 1];
            for row in 0..n {
                tau.set(row, j, ctx.sub(poly[row], top));
            }
        }
        self.module(sigma, tau)
    }

    /// `Z_p[Γ] e_i` on the basis `σ^a e_i`.
    pub fn make_l3(&self, i: i64) -> LambdaModule {
        let ctx = self.ctx;
        let p = self.params.p as usize;
        let s = self.params.s as usize;
        let rho = self.twist(i);
        let sigma = ChainMatrix::from_fn(ctx, p, p, |row, col| u64::from(row == (col + 1) % p));
        let tau = ChainMatrix::from_fn(ctx, p, p, |row, col| if row == (s * col) % p { rho } else { 0 });
        self.module(sigma, tau)
    }

    /// `F_p(i)`: one generator killed by p, trivial σ, τ acting by `s^i`.
    pub fn make_fp(&self, i: i64) -> LambdaModule {
        let ctx = self.ctx;
        let rel = ChainMatrix::scalar(ctx, 1, self.params.p);
        LambdaModule::new(
            self.gamma.clone(),
            rel,
            vec![ChainMatrix::identity(ctx, 1), ChainMatrix::scalar(ctx, 1, self.twist(i))],
        )
        .expect("F_p(i) satisfies the relations")
    }

    /// `Z_p[Γ]`.
    pub fn group_ring(&self) -> LambdaModule {
        LambdaModule::group_ring(self.gamma.clone(), self.ctx)
    }

    /// `⊕ (L₁ⁱ)^{a_i} ⊕ (L₂ⁱ)^{b_i} ⊕ (L₃ⁱ)^{c_i}`.
    pub fn from_class(&self, v: &ClassVector) -> Result<LambdaModule> {
        let mut parts = Vec::new();
        for i in 0..v.r {
            for _ in 0..v.a[i] {
                parts.push(self.make_l1(i as i64));
            }
            for _ in 0..v.b[i] {
                parts.push(self.make_l2(i as i64));
            }
            for _ in 0..v.c[i] {
                parts.push(self.make_l3(i as i64));
            }
        }
        if parts.is_empty() {
            let ctx = self.ctx;
            return LambdaModule::lattice(self.gamma.clone(), vec![ChainMatrix::zeros(ctx, 0, 0); 2]);
        }
        LambdaModule::direct_sum_all(&parts)
    }
}
