use serde::{Deserialize, Serialize};

use super::{Family, GroupModel, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishReason {
    /// `p ∤ #I`
    PDoesNotDivideI,
    /// `j ∈ D`
    JInD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PairCase {
    /// `D = ⟨σ, τ^{r/e}⟩`, `I = ⟨σ, τ^{r/d}⟩`.
    CaseI { d: u64, e: u64 },
    /// `D = ⟨σ, τ^{r/e} j⟩`, `I = ⟨σ, (τ^{r/e} j)^{e/d}⟩`, `e` even.
    CaseII { d: u64, e: u64 },
    Irrelevant { reason: VanishReason },
}

impl PairCase {
    pub fn is_relevant(&self) -> bool {
        !matches!(self, PairCase::Irrelevant { .. })
    }

    pub fn de(&self) -> Option<(u64, u64)> {
        match *self {
            PairCase::CaseI { d, e } | PairCase::CaseII { d, e } => Some((d, e)),
            PairCase::Irrelevant { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDI {
    pub d: Subgroup,
    pub i: Subgroup,
    pub case: PairCase,
}

/// Subgroups named by the `(d, e)` parameterisation.
fn case_subgroups(g: &GroupModel, two: bool, d: u64, e: u64) -> Result<(Subgroup, Subgroup)> {
    let st = g.require_structure()?;
    let r = st.params.r;
    let sigma = st.index(1, 0, 0);
    let gen = st.index(0, r / e, u64::from(two));
    let dd = Subgroup::generated_by(g, &[sigma, gen]);
    let ii = Subgroup::generated_by(g, &[sigma, g.pow(gen, e / d)]);
    Ok((dd, ii))
}

/// Checks `I ⊴ D` with `D/I` cyclic, then sorts the pair into its case.
pub fn classify_pair(g: &GroupModel, d: &Subgroup, i: &Subgroup) -> Result<PairDI> {
    let st = *g.require_structure()?;
    if st.family != Family::G && st.family != Family::Gamma {
        return Err(Error::InvalidInput("pairs are classified inside Γ or G".into()));
    }
    if !i.is_subset_of(d) {
        return Err(Error::NotRealizableShape("I is not contained in D".into()));
    }
    if !i.is_normal_in(g, d) {
        return Err(Error::NotRealizableShape("I is not normal in D".into()));
    }
    if i.cyclic_quotient_generator(g, d).is_none() {
        return Err(Error::NotRealizableShape("D/I is not cyclic".into()));
    }
    let pair = |case| PairDI { d: d.clone(), i: i.clone(), case };
    let p = st.params.p;
    if i.order() as u64 % p != 0 {
        return Ok(pair(PairCase::Irrelevant { reason: VanishReason::PDoesNotDivideI }));
    }
    if g.j().is_some_and(|j| d.contains(j)) {
        return Ok(pair(PairCase::Irrelevant { reason: VanishReason::JInD }));
    }
    let e = d.order() as u64 / p;
    let dd = i.order() as u64 / p;
    let two = d.elements().iter().any(|&x| st.label(x).2 == 1);
    let (cd, ci) = case_subgroups(g, two, dd, e)?;
    if cd != *d || ci != *i {
        // p | #I forces σ ∈ I, and the rest is pinned by (d, e); reaching here is a bug
        return Err(Error::NotRealizableShape(format!("pair with (d, e) = ({dd}, {e}) does not match its normal form")));
    }
    Ok(pair(if two { PairCase::CaseII { d: dd, e } } else { PairCase::CaseI { d: dd, e } }))
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|x| n % x == 0).collect()
}

/// Every relevant pair, one per `(case, d, e)`.
pub fn enumerate_relevant_pairs(g: &GroupModel) -> Result<Vec<PairDI>> {
    let st = *g.require_structure()?;
    let r = st.params.r;
    let mut out = Vec::new();
    for two in [false, true] {
        if two && st.family != Family::G {
            continue;
        }
        for e in divisors(r) {
            if two && e % 2 == 1 {
                continue;
            }
            for d in divisors(e) {
                let (dd, ii) = case_subgroups(g, two, d, e)?;
                let pair = classify_pair(g, &dd, &ii)?;
                debug_assert!(pair.case.is_relevant());
                out.push(pair);
            }
        }
    }
    Ok(out)
}

pub(crate) fn sigma0(n: u64) -> u64 {
    divisors(n).len() as u64
}

/// `Σ_{e|r} σ₀(e) + Σ_{e|r, e even} σ₀(e)`.
pub fn relevant_pair_count(r: u64) -> u64 {
    divisors(r).iter().map(|&e| sigma0(e) * if e % 2 == 0 { 2 } else { 1 }).sum()
}
