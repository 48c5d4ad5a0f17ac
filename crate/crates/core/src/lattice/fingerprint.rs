use super::ClassVector;
use crate::chainring::ChainMatrix;
use crate::error::{Error, Result};
use crate::lambda::{tate_cohomology_cp, tau_projectors, LambdaModule};

/// τ-eigenspace dimensions of the top `M/(p, 1-σ)M` (relations included).
pub fn top_dims(m: &LambdaModule) -> Result<Vec<usize>> {
    let proj = tau_projectors(m)?;
    let n = m.rank();
    let s = m.sigma().ok_or_else(|| Error::InvalidInput("module has no σ action".into()))?;
    let rad = ChainMatrix::identity(*m.ctx(), n).sub(s).mod_p().hstack(&m.relations().mod_p());
    let rad_rank = rad.rank();
    Ok(proj
        .iter()
        .map(|e| {
            let e = e.mod_p();
            // dim E(F^n) - dim E(F^n) ∩ rad = rank [E | rad] - rank rad
            e.hstack(&rad).rank() - rad_rank
        })
        .collect())
}

/// Krull–Schmidt multiplicities of a `Z_p[Γ]`-lattice.
pub fn fingerprint(m: &LambdaModule) -> Result<ClassVector> {
    let params = m.group().params().ok_or_else(|| Error::InvalidInput("structured group required".into()))?;
    if m.sigma().is_none() {
        return Err(Error::InvalidInput("fingerprints are defined for lattices over Γ".into()));
    }
    let tc = tate_cohomology_cp(m)?;
    let top = top_dims(m)?;
    let r = params.r as usize;
    let mut c = vec![0usize; r];
    for i in 0..r {
        let ab = tc.h0[i] + tc.h1[i];
        c[i] = top[i]
            .checked_sub(ab)
            .ok_or_else(|| Error::InvalidLattice(format!("negative L3 multiplicity in slot {i}")))?;
    }
    let v = ClassVector { r, a: tc.h0, b: tc.h1, c };
    if v.rank(params.p) != m.rank() {
        return Err(Error::InvalidLattice(format!(
            "multiplicities account for rank {} but the lattice has rank {}",
            v.rank(params.p),
            m.rank()
        )));
    }
    Ok(v)
}
