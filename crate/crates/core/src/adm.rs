//! The admissible submonoid of lattice classes and the ramification data realizing it.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{classify_pair, local_witness, Family, GroupModel, LocalWitness, MetacyclicParams, PairCase, PairDI, Subgroup};
use crate::lattice::PeClassVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdmKind {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmGenerator {
    pub kind: AdmKind,
    pub e: u64,
    pub vector: PeClassVector,
}

/// Which side of the Ω shift a vector lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coords {
    /// Φ of the minus parts of the ramification modules.
    Preshift,
    /// Φ of the class-group side, i.e. Ω of the pre-shift vector.
    Shifted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmDecomposition {
    pub coords: Coords,
    pub terms: Vec<(AdmGenerator, usize)>,
}

impl AdmDecomposition {
    /// Sum of the terms, in the decomposition's coordinates.
    pub fn evaluate(&self, r: usize) -> PeClassVector {
        self.terms.iter().fold(PeClassVector::zero(r), |acc, (g, m)| acc.add(&g.vector.scaled(*m)))
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|x| n % x == 0).collect()
}

/// `Σ_{i ≡ offset mod e} (L₁ⁱ + L₂^{i+1})`.
fn generator_vector(r: u64, e: u64, offset: u64) -> PeClassVector {
    let r = r as usize;
    let mut v = PeClassVector::zero(r);
    for i in (0..r).filter(|&i| i as u64 % e == offset) {
        v.a[i] += 1;
        v.b[(i + 1) % r] += 1;
    }
    v
}

fn generator(r: u64, kind: AdmKind, e: u64) -> AdmGenerator {
    let offset = match kind {
        AdmKind::I => 0,
        AdmKind::II => e / 2,
    };
    AdmGenerator { kind, e, vector: generator_vector(r, e, offset) }
}

/// Pre-shift vector of a pair: `L(e)` in case I, `L′(e)` in case II, zero otherwise.
pub fn pair_vector(r: u64, case: PairCase) -> PeClassVector {
    match case {
        PairCase::CaseI { e, .. } => generator(r, AdmKind::I, e).vector,
        PairCase::CaseII { e, .. } => generator(r, AdmKind::II, e).vector,
        PairCase::Irrelevant { .. } => PeClassVector::zero(r as usize),
    }
}

fn check_params(p: u64, r: u64) -> Result<()> {
    MetacyclicParams::with_default_s(p, r).map(|_| ())
}

/// `L(e)` for every `e | r` and `L′(e)` for every even `e | r`.
pub fn adm_generators(p: u64, r: u64) -> Result<Vec<AdmGenerator>> {
    check_params(p, r)?;
    let mut out: Vec<_> = divisors(r).into_iter().map(|e| generator(r, AdmKind::I, e)).collect();
    out.extend(divisors(r).into_iter().filter(|e| e % 2 == 0).map(|e| generator(r, AdmKind::II, e)));
    Ok(out)
}

/// `L(e)` for `2e ∤ r` and `L′(e)` for even `e`; a basis of the free monoid.
pub fn adm_basis(p: u64, r: u64) -> Result<Vec<AdmGenerator>> {
    Ok(adm_generators(p, r)?
        .into_iter()
        .filter(|g| g.kind == AdmKind::II || r % (2 * g.e) != 0)
        .collect())
}

/// Unique rational solution of `Σ c_j b_j = v`, or `None` if `v` is outside the span.
fn solve(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<Ratio<i64>>> {
    let n = v.len();
    let m = basis.len();
    let mut rows: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| basis.iter().map(|b| Ratio::from_integer(b[i])).chain([Ratio::from_integer(v[i])]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..m {
        let Some(piv) = (rank..n).find(|&i| rows[i][c] != Ratio::from_integer(0)) else { continue };
        rows.swap(rank, piv);
        let lead = rows[rank][c];
        for x in rows[rank].iter_mut() {
            *x /= lead;
        }
        for i in 0..n {
            if i != rank && rows[i][c] != Ratio::from_integer(0) {
                let f = rows[i][c];
                for k in 0..=m {
                    let t = rows[rank][k] * f;
                    rows[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| row[m] != Ratio::from_integer(0)) {
        return None;
    }
    let mut out = vec![Ratio::from_integer(0); m];
    for (row, &c) in pivots.iter().enumerate() {
        out[c] = rows[row][m];
    }
    Some(out)
}

/// Decomposes a pre-shift vector over the basis.
pub fn adm_membership(p: u64, v: &PeClassVector) -> Result<AdmDecomposition> {
    let r = v.r as u64;
    if !v.is_in_phi_image() {
        return Err(Error::NotAdmissible(format!(
            "Σa = {} differs from Σb = {}, so the vector is not a Φ-image",
            v.a.iter().sum::<usize>(),
            v.b.iter().sum::<usize>()
        )));
    }
    let basis = adm_basis(p, r)?;
    let cols: Vec<Vec<i64>> = basis.iter().map(|g| g.vector.coords().into_iter().map(|x| x as i64).collect()).collect();
    let target: Vec<i64> = v.coords().into_iter().map(|x| x as i64).collect();
    let coeffs = solve(&cols, &target)
        .ok_or_else(|| Error::NotAdmissible("vector is outside the span of the admissible basis".into()))?;
    let mut terms = Vec::new();
    for (g, c) in basis.into_iter().zip(coeffs) {
        let name = match g.kind {
            AdmKind::I => format!("L({})", g.e),
            AdmKind::II => format!("L'({})", g.e),
        };
        if !c.is_integer() || c < Ratio::from_integer(0) {
            return Err(Error::NotAdmissible(format!("coefficient of {name} is {c}")));
        }
        let m = c.to_integer() as usize;
        if m > 0 {
            terms.push((g, m));
        }
    }
    Ok(AdmDecomposition { coords: Coords::Preshift, terms })
}

/// Predicted class of a set of ramified places, before and after the Ω shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub preshift: PeClassVector,
    pub shifted: PeClassVector,
}

pub fn predict(g: &GroupModel, pairs: &[(Subgroup, Subgroup)]) -> Result<Prediction> {
    let st = *g.require_structure()?;
    if st.family != Family::G {
        return Err(Error::InvalidInput("predictions are made over Γ × ⟨j⟩".into()));
    }
    let r = st.params.r;
    let mut pre = PeClassVector::zero(r as usize);
    for (d, i) in pairs {
        let pair = classify_pair(g, d, i)?;
        pre = pre.add(&pair_vector(r, pair.case));
    }
    let shifted = pre.omega();
    Ok(Prediction { preshift: pre, shifted })
}

/// One place of the ramification plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlannedPair {
    pub pair: PairDI,
    pub witness: LocalWitness,
}

/// Decomposition group `D = I` for one copy of a basis generator.
pub fn generator_pair(g: &GroupModel, gen: &AdmGenerator) -> Result<PairDI> {
    let st = *g.require_structure()?;
    let r = st.params.r;
    let sigma = st.index(1, 0, 0);
    let c = u64::from(gen.kind == AdmKind::II);
    let d = Subgroup::generated_by(g, &[sigma, st.index(0, r / gen.e, c)]);
    classify_pair(g, &d, &d)
}

/// Ramification plan whose predicted pre-shift class is `v`.
pub fn realize(g: &GroupModel, v: &PeClassVector) -> Result<Vec<PlannedPair>> {
    let st = *g.require_structure()?;
    if st.family != Family::G {
        return Err(Error::InvalidInput("plans are made over Γ × ⟨j⟩".into()));
    }
    if v.r as u64 != st.params.r {
        return Err(Error::Dimension(format!("vector has r = {} but the group has r = {}", v.r, st.params.r)));
    }
    let dec = adm_membership(st.params.p, v)?;
    let mut out = Vec::new();
    for (gen, m) in &dec.terms {
        let pair = generator_pair(g, gen)?;
        let witness = local_witness(g, &pair.d, &pair.i)?;
        for _ in 0..*m {
            out.push(PlannedPair { pair: pair.clone(), witness: witness.clone() });
        }
    }
    Ok(out)
}
