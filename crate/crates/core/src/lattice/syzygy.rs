use super::{fingerprint, LatticeFactory, PeClassVector};
use crate::chainring::{kernel_mod, ChainMatrix, FpEchelon};
use crate::error::{Error, Result};
use crate::group::Family;
use crate::lambda::{sublattice, tau_projectors, LambdaModule};

/// A minimal projective cover `F = ⊕ (L₃ⁱ)^{m_i} → M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub multiplicities: Vec<usize>,
    pub source: LambdaModule,
    /// `rank(M) × rank(F)` matrix of the surjection.
    pub map: ChainMatrix,
}

fn require_gamma(m: &LambdaModule) -> Result<()> {
    match m.group().family() {
        Some(Family::Gamma) => Ok(()),
        _ => Err(Error::InvalidInput("expected a module over Γ".into())),
    }
}

/// Cover multiplicities are the τ-eigenspace dimensions of the top; each
/// generator goes to a τ-eigenvector lifting a basis vector of the top.
pub fn projective_cover(m: &LambdaModule) -> Result<ProjectiveCover> {
    require_gamma(m)?;
    let params = m.group().params().expect("structured");
    let ctx = *m.ctx();
    let p = params.p as usize;
    let r = params.r as usize;
    let n = m.rank();
    let s = m.sigma().expect("sigma");
    let proj = tau_projectors(m)?;
    let mut top = FpEchelon::new(params.p, n);
    let rad = ChainMatrix::identity(ctx, n).sub(s).hstack(m.relations()).mod_p();
    for j in 0..rad.cols() {
        top.insert(&rad.column(j));
    }
    let factory = LatticeFactory::new(params, ctx.k().max(3))?;
    let mut multiplicities = vec![0usize; r];
    let mut images: Vec<Vec<u64>> = Vec::new();
    let mut parts = Vec::new();
    for (i, e) in proj.iter().enumerate() {
        let ebar = e.mod_p();
        for col in 0..n {
            if top.insert(&ebar.column(col)) {
                multiplicities[i] += 1;
                let mut x = e.column(col);
                for _ in 0..p {
                    images.push(x.clone());
                    x = s.mul_vec(&x);
                }
                parts.push(factory.make_l3(i as i64).at_precision(ctx.k()));
            }
        }
    }
    let map = ChainMatrix::from_columns(ctx, n, &images);
    let source = if parts.is_empty() {
        LambdaModule::lattice(m.group().clone(), vec![ChainMatrix::zeros(ctx, 0, 0); 2])?
    } else {
        LambdaModule::direct_sum_all(&parts)?
    };
    Ok(ProjectiveCover { multiplicities, source, map })
}

/// `Ω(L)`: the kernel of the minimal projective cover, as a lattice.
pub fn omega_module(l: &LambdaModule) -> Result<LambdaModule> {
    if !l.is_lattice() {
        return Err(Error::InvalidInput("Ω is taken of lattices".into()));
    }
    let cover = projective_cover(l)?;
    let kernel = kernel_mod(&cover.map)?;
    let f = cover.source.at_precision(kernel.valid_prec());
    let sub = sublattice(&f, &kernel)?;
    let expect = cover.source.rank() - l.rank();
    if sub.module.rank() != expect {
        return Err(Error::InvalidLattice(format!("kernel has rank {} instead of {expect}", sub.module.rank())));
    }
    Ok(sub.module)
}

/// Projective-equivalence class of `Ω(L)`.
pub fn omega_lattice(l: &LambdaModule) -> Result<PeClassVector> {
    Ok(fingerprint(&omega_module(l)?)?.strip())
}

/// Kernel of the minimal projective cover of a finite module, with its embedding data.
fn finite_kernel(x: &LambdaModule) -> Result<(LambdaModule, crate::lambda::Sublattice)> {
    let cover = projective_cover(x)?;
    let big = cover.map.hstack(&x.relations().scale(x.ctx().neg(1)));
    let kernel = kernel_mod(&big)?;
    let fcoords = kernel.select_rows(&(0..cover.source.rank()).collect::<Vec<_>>());
    let f = cover.source.at_precision(kernel.valid_prec());
    let sub = sublattice(&f, &fcoords)?;
    if sub.module.rank() != cover.source.rank() {
        return Err(Error::NotFinite("kernel of the cover is not of full rank".into()));
    }
    Ok((f, sub))
}

fn finite_exponent(x: &LambdaModule) -> Result<u32> {
    require_gamma(x)?;
    let e = x.exponent().ok_or_else(|| Error::NotFinite("relation matrix does not have full rank".into()))?;
    let k = x.precision();
    if e + 3 > k {
        return Err(Error::PrecisionExhausted { needed: e + 3, available: k });
    }
    Ok(e)
}

/// `Φ(X)`: kernel of a projective cover of the finite module `X`, up to projectives.
pub fn phi(x: &LambdaModule) -> Result<PeClassVector> {
    finite_exponent(x)?;
    let x = x.minimal_presentation();
    let r = x.group().params().expect("structured").r as usize;
    if x.rank() == 0 {
        return Ok(PeClassVector::zero(r));
    }
    let (_, sub) = finite_kernel(&x)?;
    Ok(fingerprint(&sub.module)?.strip())
}

/// `ω¹(X) = K / p^e F` for the cover `F → X` with kernel `K`, `p^e X = 0`.
/// The module is lifted to enough precision that `Φ(ω¹X)` is computable.
pub fn omega1_module(x: &LambdaModule) -> Result<LambdaModule> {
    let e = finite_exponent(x)?;
    let x = x.minimal_presentation();
    let x = x.lift_exact(x.precision().max(2 * e + 5));
    if x.rank() == 0 {
        return Ok(x);
    }
    let (_, sub) = finite_kernel(&x)?;
    let module = sub.module;
    let ctx = *module.ctx();
    let pe = |d: u32| ctx.pow_p(e.saturating_sub(d));
    let rel = ChainMatrix::from_fn(ctx, module.rank(), module.rank(), |i, j| if i == j { pe(sub.exponents[i]) } else { 0 });
    LambdaModule::new(module.group().clone(), rel, module.actions().to_vec())
}

/// Class of `ω¹(X)` via `Φ ∘ ω¹ = Ω ∘ Φ`.
pub fn omega1_finite(x: &LambdaModule) -> Result<PeClassVector> {
    Ok(phi(x)?.omega())
}
