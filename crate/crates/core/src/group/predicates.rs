use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{enumerate_subgroups, GroupModel, Subgroup};
use crate::chainring::is_prime;
use crate::error::{Error, Result};

/// A chain `{e} = H_0 ⊂ … ⊂ H_m = G` of normal subgroups with cyclic factors, if one exists.
pub fn is_supersolvable(g: &GroupModel) -> Option<Vec<Subgroup>> {
    let whole = Subgroup::whole(g);
    let mut normals: Vec<Subgroup> =
        enumerate_subgroups(g).into_iter().filter(|h| h.is_normal_in(g, &whole)).collect();
    // largest first gives the shortest chains
    normals.reverse();
    let mut dead = HashSet::new();
    let mut chain = vec![Subgroup::trivial(g)];
    if extend(g, &normals, &mut chain, &mut dead) {
        Some(chain)
    } else {
        None
    }
}

fn extend(g: &GroupModel, normals: &[Subgroup], chain: &mut Vec<Subgroup>, dead: &mut HashSet<Subgroup>) -> bool {
    let h = chain.last().expect("nonempty").clone();
    if h.order() == g.order() {
        return true;
    }
    if dead.contains(&h) {
        return false;
    }
    for k in normals {
        if k.order() <= h.order() || k.order() % h.order() != 0 || !h.is_subset_of(k) {
            continue;
        }
        if h.cyclic_quotient_generator(g, k).is_none() {
            continue;
        }
        chain.push(k.clone());
        if extend(g, normals, chain, dead) {
            return true;
        }
        chain.pop();
    }
    dead.insert(h);
    false
}

fn conjugates(g: &GroupModel, h: &Subgroup) -> Vec<Subgroup> {
    let mut seen: Vec<Subgroup> = Vec::new();
    for x in 0..g.order() {
        let c = h.conjugate(g, x);
        if !seen.contains(&c) {
            seen.push(c);
        }
    }
    seen
}

/// Whether every choice of conjugates of the listed subgroups generates `G`.
///
/// Conjugating the whole tuple by one element changes nothing, so the first
/// subgroup stays fixed.
pub fn conjugates_generate(g: &GroupModel, subgroups: &[Subgroup]) -> bool {
    let Some((first, rest)) = subgroups.split_first() else {
        return g.order() == 1;
    };
    let classes: Vec<Vec<Subgroup>> = rest.iter().map(|h| conjugates(g, h)).collect();
    let mut idx = vec![0usize; classes.len()];
    loop {
        let mut gens: Vec<usize> = first.generators(g);
        for (c, &i) in classes.iter().zip(&idx) {
            gens.extend(c[i].generators(g));
        }
        if Subgroup::generated_by(g, &gens).order() != g.order() {
            return false;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return true;
            }
            idx[pos] += 1;
            if idx[pos] < classes[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Conditions on a local lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// `(D : I)` is a power of ℓ.
    A,
    /// the global field has enough local room at ℓ; not decidable from group data.
    B,
    /// ℓ does not divide `(I : [D, D])`.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoingUp {
    pub ell: u64,
    /// Failed decidable conditions, empty when (a) and (c) hold.
    pub failed: Vec<Condition>,
    /// Condition (b) is never checked, only carried along.
    pub assumed: Vec<Condition>,
}

impl GoingUp {
    pub fn ok(&self) -> bool {
        self.failed.is_empty()
    }
}

fn is_power_of(n: u64, ell: u64) -> bool {
    let mut n = n;
    while n % ell == 0 {
        n /= ell;
    }
    n == 1
}

fn check_pair(g: &GroupModel, d: &Subgroup, i: &Subgroup) -> Result<u64> {
    if !i.is_subset_of(d) {
        return Err(Error::InvalidInput("I is not contained in D".into()));
    }
    let comm = d.commutator_subgroup(g);
    if !comm.is_subset_of(i) {
        return Err(Error::NotRealizableShape("[D, D] is not contained in I".into()));
    }
    Ok((i.order() / comm.order()) as u64)
}

pub fn going_up_check(g: &GroupModel, d: &Subgroup, i: &Subgroup, ell: u64) -> Result<GoingUp> {
    if !is_prime(ell) {
        return Err(Error::InvalidParameters(format!("ell = {ell} is not prime")));
    }
    let ab = check_pair(g, d, i)?;
    let index = (d.order() / i.order()) as u64;
    let mut failed = Vec::new();
    if !is_power_of(index, ell) {
        failed.push(Condition::A);
    }
    if ab % ell == 0 {
        failed.push(Condition::C);
    }
    Ok(GoingUp { ell, failed, assumed: vec![Condition::B] })
}

/// Which residue characteristic a local realisation can live over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ell {
    Exactly { ell: u64 },
    AnyExcept { excluded: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LocalWitness {
    /// An explicit local extension with decomposition group D and inertia I.
    Construction { ell: Ell, descriptor: String, e: u64, assumed: Vec<Condition> },
    /// (a) and (c) hold for this ℓ but no construction is supplied.
    Candidate { ell: u64, assumed: Vec<Condition> },
    Impossible { reason: String, clashing: Vec<Condition> },
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime over which `(D, I)` can be decomposition and inertia group, with
/// the local extension to use when one is known.
pub fn local_witness(g: &GroupModel, d: &Subgroup, i: &Subgroup) -> Result<LocalWitness> {
    let ab = check_pair(g, d, i)?;
    let index = (d.order() / i.order()) as u64;
    let assumed = vec![Condition::B];
    if let (Some(sigma), Some(params)) = (g.sigma(), g.params()) {
        if d == i && d.contains(sigma) {
            let p = params.p;
            let e = d.order() as u64 / p / if g.j().is_some_and(|j| d.contains(j)) { 2 } else { 1 };
            return Ok(if e == 1 {
                LocalWitness::Construction {
                    ell: Ell::AnyExcept { excluded: vec![p] },
                    descriptor: "totally ramified abelian degree-p extension of a large enough finite extension of Q_ell".into(),
                    e,
                    assumed,
                }
            } else {
                LocalWitness::Construction {
                    ell: Ell::Exactly { ell: p },
                    descriptor: format!(
                        "subfield of Q_p(mu_p, p^(1/p)) over the subfield K_v of Q_p(mu_p) with [Q_p(mu_p) : K_v] = {e}"
                    ),
                    e,
                    assumed,
                }
            });
        }
    }
    if index == 1 {
        let ell = (2..).find(|&q| is_prime(q) && ab % q != 0).expect("primes are unbounded");
        return Ok(LocalWitness::Candidate { ell, assumed });
    }
    let qs = prime_factors(index);
    if qs.len() > 1 {
        return Ok(LocalWitness::Impossible {
            reason: format!("(D : I) = {index} is not a prime power"),
            clashing: vec![Condition::A],
        });
    }
    let ell = qs[0];
    if ab % ell == 0 {
        return Ok(LocalWitness::Impossible {
            reason: format!("(a) forces ell = {ell}, but (c) forbids it since {ell} divides (I : [D, D]) = {ab}"),
            clashing: vec![Condition::A, Condition::C],
        });
    }
    Ok(LocalWitness::Candidate { ell, assumed })
}
