use super::LambdaModule;
use crate::chainring::{smith_normal_form, ChainMatrix};
use crate::error::{Error, Result};

/// A submodule of a lattice, re-presented on its own basis.
#[derive(Clone, Debug)]
pub struct Sublattice {
    pub module: LambdaModule,
    /// Basis vectors in ambient coordinates, `U_j p^{d_j}`.
    pub basis: ChainMatrix,
    /// The `d_j`.
    pub exponents: Vec<u32>,
}

/// The submodule spanned by the columns of `gens` (which must be stable under
/// the action). The induced action is exact modulo `p^{v - max d_j}`.
pub fn sublattice(ambient: &LambdaModule, gens: &ChainMatrix) -> Result<Sublattice> {
    if !ambient.is_lattice() {
        return Err(Error::InvalidInput("sublattices live in lattices".into()));
    }
    if gens.rows() != ambient.rank() {
        return Err(Error::Dimension("generators have the wrong length".into()));
    }
    let v = ambient.precision().min(gens.valid_prec());
    let amb = ambient.at_precision(v);
    let gens = gens.reduce_to(v);
    let ctx = *amb.ctx();
    let n = amb.rank();
    let sf = smith_normal_form(&gens);
    let ds: Vec<u32> = sf.exponents.iter().copied().take_while(|&d| d < v).collect();
    let rk = ds.len();
    let maxd = ds.iter().copied().max().unwrap_or(0);
    if maxd + 1 > v {
        return Err(Error::PrecisionExhausted { needed: maxd + 1, available: v });
    }
    let w = v - maxd;
    let mut actions = Vec::with_capacity(amb.actions().len());
    for s in amb.actions() {
        let wm = sf.u_inv.mul(s).mul(&sf.u);
        let mut out = ChainMatrix::zeros(ctx, rk, rk);
        for j in 0..rk {
            for i in rk..n {
                let x = ctx.mul(wm.get(i, j), ctx.pow_p(ds[j]));
                if x != 0 {
                    return Err(Error::InvalidLattice("generators do not span a submodule".into()));
                }
            }
            for i in 0..rk {
                let x = wm.get(i, j);
                let y = if ds[j] >= ds[i] {
                    ctx.mul(x, ctx.pow_p(ds[j] - ds[i]))
                } else {
                    let shift = ds[i] - ds[j];
                    if ctx.valuation(x) < shift {
                        return Err(Error::InvalidLattice("generators do not span a submodule".into()));
                    }
                    x / ctx.pow_p(shift)
                };
                out.set(i, j, y);
            }
        }
        actions.push(out.reduce_to(w));
    }
    let basis = ChainMatrix::from_fn(ctx, n, rk, |i, j| ctx.mul(sf.u.get(i, j), ctx.pow_p(ds[j])));
    let module = LambdaModule::new_unchecked(
        amb.group().clone(),
        ChainMatrix::zeros(ctx.with_precision(w), rk, 0),
        actions,
    )?;
    Ok(Sublattice { module, basis, exponents: ds })
}
