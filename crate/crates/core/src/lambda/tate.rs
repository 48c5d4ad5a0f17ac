use super::LambdaModule;
use crate::chainring::{kernel_mod, teichmuller, ChainMatrix};
use crate::error::{Error, Result};

/// τ-eigenspace dimensions of `Ĥ⁰(C_p, M)` and `H¹(C_p, M)`; slot `i` is the
/// eigenvalue `s^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateCohomology {
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
}

/// `E_i = r^{-1} Σ_j ρ^{-ij} τ^j`, the idempotent onto the `ρ^i`-eigenspace of τ.
pub fn tau_projectors(m: &LambdaModule) -> Result<Vec<ChainMatrix>> {
    let st = *m.group().require_structure()?;
    let ctx = *m.ctx();
    let r = st.params.r;
    let t = m.tau().ok_or_else(|| Error::InvalidInput("module has no τ action".into()))?;
    let rho = teichmuller(st.params.s as i64, &ctx)?;
    let rho_inv = ctx.pow(rho, r - 1);
    let rinv = ctx.inv(r).expect("r divides p - 1");
    let mut powers = vec![ChainMatrix::identity(ctx, m.rank())];
    for _ in 1..r {
        let next = t.mul(powers.last().expect("nonempty"));
        powers.push(next);
    }
    Ok((0..r)
        .map(|i| {
            let mut e = ChainMatrix::zeros(ctx, m.rank(), m.rank());
            let step = ctx.pow(rho_inv, i);
            let mut c = 1 % ctx.modulus();
            for tj in &powers {
                e = e.add(&tj.scale(c));
                c = ctx.mul(c, step);
            }
            e.scale(rinv)
        })
        .collect())
}

/// `len(E_i A) - len(E_i B)` for `B ⊆ A`, at the precision of `a`.
fn graded_quotient(projectors: &[ChainMatrix], a: &ChainMatrix, b: &ChainMatrix) -> Result<Vec<usize>> {
    let v = a.valid_prec().min(b.valid_prec());
    let a = a.reduce_to(v);
    let b = b.reduce_to(v);
    projectors
        .iter()
        .map(|e| {
            let e = e.reduce_to(v);
            let la = e.mul(&a).column_length() as i64;
            let lb = e.mul(&b).column_length() as i64;
            usize::try_from(la - lb).map_err(|_| Error::PrecisionExhausted { needed: v + 1, available: v })
        })
        .collect()
}

/// `Ĥ⁰ = ker(1-σ)/im ν` and `H¹ = ker ν/im(1-σ)` on a lattice over Γ, where ν is the
/// σ-norm. Both are killed by p; only their τ-eigenspace dimensions are reported.
pub fn tate_cohomology_cp(m: &LambdaModule) -> Result<TateCohomology> {
    if !m.is_lattice() {
        return Err(Error::InvalidInput("Tate cohomology is computed on lattices".into()));
    }
    let v = m.precision();
    if v < 2 {
        return Err(Error::PrecisionExhausted { needed: 2, available: v });
    }
    let st = *m.group().require_structure()?;
    let ctx = *m.ctx();
    let n = m.rank();
    let s = m.sigma().ok_or_else(|| Error::InvalidInput("module has no σ action".into()))?;
    let id = ChainMatrix::identity(ctx, n);
    let one_minus = id.sub(s);
    let mut norm = id.clone();
    let mut sp = id.clone();
    for _ in 1..st.params.p {
        sp = s.mul(&sp);
        norm = norm.add(&sp);
    }
    let proj = tau_projectors(m)?;
    let fixed = kernel_mod(&one_minus)?;
    let killed = kernel_mod(&norm)?;
    check_killed_by_p(&fixed, &norm)?;
    check_killed_by_p(&killed, &one_minus)?;
    Ok(TateCohomology {
        h0: graded_quotient(&proj, &fixed, &norm.reduce_to(v - 1))?,
        h1: graded_quotient(&proj, &killed, &one_minus.reduce_to(v - 1))?,
    })
}

fn check_killed_by_p(kernel: &ChainMatrix, image: &ChainMatrix) -> Result<()> {
    let w = kernel.valid_prec();
    let img = image.reduce_to(w);
    let pk = kernel.scale(kernel.ctx().p());
    if img.spans(&pk) {
        Ok(())
    } else {
        Err(Error::InvalidLattice("cohomology is not killed by p; the action is not of the expected shape".into()))
    }
}
