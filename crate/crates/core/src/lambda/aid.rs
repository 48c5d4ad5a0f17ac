use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{sublattice, LambdaModule};
use crate::chainring::{ChainMatrix, RingCtx};
use crate::error::{Error, Result};
use crate::group::{Family, GroupModel, Subgroup};

/// Data `(D, I, φ)` for the module `Z[G] ⊗_{Z[D]} Z[D/I]/(g_φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AidData {
    pub d: Subgroup,
    pub i: Subgroup,
    /// An element of `D` whose class generates `D/I`.
    pub phi: usize,
}

/// `g_φ = 1 - φ^{-1} + #I` in the basis `φ^t` (`t = 0..m`) of `Z[D/I]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPhi {
    pub coefficients: Vec<i64>,
}

impl AidData {
    pub fn new(g: &GroupModel, d: Subgroup, i: Subgroup, phi: usize) -> Result<Self> {
        if !i.is_subset_of(&d) || !i.is_normal_in(g, &d) {
            return Err(Error::NotRealizableShape("I must be a normal subgroup of D".into()));
        }
        if !d.contains(phi) {
            return Err(Error::InvalidInput("φ is not an element of D".into()));
        }
        if i.class_order(g, phi) != d.order() / i.order() {
            return Err(Error::InvalidInput("φ does not generate D/I".into()));
        }
        Ok(AidData { d, i, phi })
    }

    /// One minimal-index representative for each generating class of `D/I`.
    pub fn generators(g: &GroupModel, d: &Subgroup, i: &Subgroup) -> Vec<usize> {
        let m = d.order() / i.order();
        let mut seen: Vec<usize> = Vec::new();
        let mut out = Vec::new();
        for &x in d.elements() {
            if i.class_order(g, x) != m {
                continue;
            }
            let coset = i.elements().iter().map(|&h| g.mul(x, h)).min().expect("nonempty");
            if !seen.contains(&coset) {
                seen.push(coset);
                out.push(x);
            }
        }
        out
    }

    /// Data with the first generator of `D/I`.
    pub fn with_default_phi(g: &GroupModel, d: Subgroup, i: Subgroup) -> Result<Self> {
        let phi = *Self::generators(g, &d, &i)
            .first()
            .ok_or_else(|| Error::NotRealizableShape("D/I is not cyclic".into()))?;
        Self::new(g, d, i, phi)
    }

    pub fn quotient_order(&self) -> usize {
        self.d.order() / self.i.order()
    }

    pub fn g_phi(&self) -> GPhi {
        let m = self.quotient_order();
        let ni = self.i.order() as i64;
        let mut c = vec![0i64; m];
        c[0] += 1 + ni;
        c[m - 1] -= 1;
        GPhi { coefficients: c }
    }

    /// `t(x)` with `x ∈ φ^t I`, for every element of `D` (others map to `usize::MAX`).
    fn exponent_table(&self, g: &GroupModel) -> Vec<usize> {
        let mut t_of = vec![usize::MAX; g.order()];
        let mut cur = g.identity();
        for t in 0..self.quotient_order() {
            for &h in self.i.elements() {
                t_of[g.mul(cur, h)] = t;
            }
            cur = g.mul(cur, self.phi);
        }
        t_of
    }
}

/// `A_{I,φ} = Z[G] ⊗_{Z[D]} Z[D/I]/(g_φ)` over `Z/p^k`.
pub fn build_aid(g: &Arc<GroupModel>, aid_data: &AidData, ctx: RingCtx) -> Result<LambdaModule> {
    let m = aid_data.quotient_order();
    let (dm, emb) = g.subgroup_model(&aid_data.d);
    let t_of = aid_data.exponent_table(g);
    let actions = dm
        .generators()
        .iter()
        .map(|&x| {
            let t = t_of[emb[x]];
            ChainMatrix::from_fn(ctx, m, m, |row, col| u64::from(row == (col + t) % m))
        })
        .collect();
    let coeffs = aid_data.g_phi().coefficients;
    let relations = ChainMatrix::from_fn(ctx, m, m, |row, col| {
        // column t holds g_φ · φ^t
        ctx.reduce_i64(coeffs[(row + m - col) % m])
    });
    let n = LambdaModule::new(Arc::new(dm), relations, actions)?;
    n.induce(g.clone(), &emb)
}

/// Coefficient vectors (over the group elements) of `#I·ν_I` and `#I - ν_I φ^{-1}`.
fn lattice_generators(g: &GroupModel, aid_data: &AidData) -> (Vec<i64>, Vec<i64>) {
    let ni = aid_data.i.order() as i64;
    let mut x = vec![0i64; g.order()];
    let mut y = vec![0i64; g.order()];
    let phi_inv = g.inv(aid_data.phi);
    for &h in aid_data.i.elements() {
        x[h] += ni;
        y[g.mul(h, phi_inv)] -= 1;
    }
    y[g.identity()] += ni;
    (x, y)
}

fn ideal_lattice(ring: &LambdaModule, x: &[i64], y: &[i64], k_out: u32) -> Result<LambdaModule> {
    let g = ring.group().clone();
    let ctx = *ring.ctx();
    let n = g.order();
    let mut cols = Vec::with_capacity(2 * n);
    for a in 0..n {
        for v in [x, y] {
            let mut c = vec![0u64; n];
            for (h, &coef) in v.iter().enumerate() {
                if coef != 0 {
                    let idx = g.mul(a, h);
                    c[idx] = ctx.add(c[idx], ctx.reduce_i64(coef));
                }
            }
            cols.push(c);
        }
    }
    let gens = ChainMatrix::from_columns(ctx, n, &cols);
    let sub = sublattice(ring, &gens)?;
    if sub.module.precision() < k_out {
        return Err(Error::PrecisionExhausted { needed: k_out, available: sub.module.precision() });
    }
    Ok(sub.module.at_precision(k_out))
}

fn extra_digits(aid_data: &AidData, p: u64) -> u32 {
    let mut n = aid_data.i.order() as u64;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    2 * v + 2
}

/// The integral model `#I·ℒ_{I,φ} = Z[G]·#Iν_I + Z[G]·(#I - ν_I φ^{-1})` of the
/// fractional ideal, as a lattice over `G` at precision `ctx.k()`.
pub fn build_fractional_lattice(g: &Arc<GroupModel>, aid_data: &AidData, ctx: RingCtx) -> Result<LambdaModule> {
    let work = ctx.with_precision(ctx.k() + extra_digits(aid_data, ctx.p()));
    let ring = LambdaModule::group_ring(g.clone(), work);
    let (x, y) = lattice_generators(g, aid_data);
    ideal_lattice(&ring, &x, &y, ctx.k())
}

/// Minus part of `#I·ℒ_{I,φ}` computed directly in `Z_p[Γ] = Z_p[G]/(1 + j)`.
pub fn fractional_lattice_minus(g: &Arc<GroupModel>, aid_data: &AidData, ctx: RingCtx) -> Result<LambdaModule> {
    let st = *g.require_structure()?;
    if st.family != Family::G {
        return Err(Error::InvalidInput("minus parts need the group Γ × ⟨j⟩".into()));
    }
    let gamma = Arc::new(GroupModel::make(Family::Gamma, st.params));
    let half = gamma.order();
    let (x, y) = lattice_generators(g, aid_data);
    // σ^a τ^b j^c has index (a + p b) + c·|Γ|; j acts by -1
    let fold = |v: &[i64]| {
        let mut out = vec![0i64; half];
        for (idx, &c) in v.iter().enumerate() {
            let sign = if idx / half == 1 { -1 } else { 1 };
            out[idx % half] += sign * c;
        }
        out
    };
    let work = ctx.with_precision(ctx.k() + extra_digits(aid_data, ctx.p()));
    let ring = LambdaModule::group_ring(gamma, work);
    ideal_lattice(&ring, &fold(&x), &fold(&y), ctx.k())
}
