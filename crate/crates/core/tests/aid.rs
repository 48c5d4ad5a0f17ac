use std::sync::Arc;

use minusclass_core::chainring::RingCtx;
use minusclass_core::group::{enumerate_relevant_pairs, Family, GroupModel, MetacyclicParams, PairCase};
use minusclass_core::lambda::{build_aid, fractional_lattice_minus, AidData};
use minusclass_core::lattice::{fingerprint, phi, PeClassVector};

const PARAMS: [(u64, u64); 4] = [(3, 2), (5, 4), (7, 3), (7, 6)];

fn group(p: u64, r: u64) -> Arc<GroupModel> {
    Arc::new(GroupModel::make(Family::G, MetacyclicParams::with_default_s(p, r).unwrap()))
}

/// Plain Gaussian elimination over F_p; independent of the library's linear algebra.
fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] % p != 0) else { continue };
        m.swap(rank, piv);
        let f = inv(m[rank][c] % p);
        for x in m[rank].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] % p != 0 {
                let g = m[r][c] % p;
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - g * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(b: u64, e: u64, p: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % p)
}

/// τ-eigenvalue multiplicities of `F_p[C_r]/(τ^{r/e} - sign)`. τ is semisimple, so the
/// `ev`-eigenspace of the quotient has the dimension of `F_p[C_r]/(X, τ - ev)`.
fn expected_eigen_dims(p: u64, r: u64, s: u64, e: u64, sign: i64) -> Vec<usize> {
    let r = r as usize;
    let shift = (r as u64 / e) as usize;
    let c = if sign > 0 { p - 1 } else { 1 };
    // X = τ^{r/e} - sign on the regular representation
    let x: Vec<Vec<u64>> = (0..r)
        .map(|row| (0..r).map(|col| u64::from(row == (col + shift) % r) + if row == col { c } else { 0 }).collect())
        .collect();
    (0..r)
        .map(|i| {
            let ev = pow_mod(s, i as u64, p);
            let t: Vec<Vec<u64>> = (0..r)
                .map(|row| (0..r).map(|col| u64::from(row == (col + 1) % r) + if row == col { p - ev } else { 0 }).collect())
                .collect();
            let both: Vec<Vec<u64>> = x.iter().zip(&t).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
            r - rank_mod_p(both, p)
        })
        .collect()
}

fn eigen_dims(m: &minusclass_core::lambda::LambdaModule, p: u64, r: u64, s: u64) -> Vec<usize> {
    let n = m.rank();
    let t = m.tau().unwrap();
    (0..r)
        .map(|i| {
            let ev = pow_mod(s, i, p);
            let a: Vec<Vec<u64>> = (0..n)
                .map(|row| (0..n).map(|col| (t.get(row, col) % p + if row == col { p - ev } else { 0 }) % p).collect())
                .collect();
            n - rank_mod_p(a, p)
        })
        .collect()
}

fn expected_vector(r: usize, case: PairCase) -> PeClassVector {
    let (e, offset) = match case {
        PairCase::CaseI { e, .. } => (e as usize, 0),
        PairCase::CaseII { e, .. } => (e as usize, e as usize / 2),
        PairCase::Irrelevant { .. } => return PeClassVector::zero(r),
    };
    let mut v = PeClassVector::zero(r);
    for i in (0..r).filter(|i| i % e == offset) {
        v = v.add(&PeClassVector::l1(r, i as i64)).add(&PeClassVector::l2(r, i as i64 + 1));
    }
    v
}

#[test]
fn minus_parts_match_cyclic_quotients() {
    for (p, r) in PARAMS {
        let g = group(p, r);
        let s = g.params().unwrap().s;
        let ctx = RingCtx::new(p, 6).unwrap();
        for pair in enumerate_relevant_pairs(&g).unwrap() {
            let aid_data = AidData::with_default_phi(&g, pair.d.clone(), pair.i.clone()).unwrap();
            let minus = build_aid(&g, &aid_data, ctx).unwrap().minus_part().unwrap();
            assert!(minus.abelian_invariants().iter().all(|&d| d == 1), "{:?}: not killed by p", pair.case);
            let (e, sign) = match pair.case {
                PairCase::CaseI { e, .. } => (e, 1),
                PairCase::CaseII { e, .. } => (e, -1),
                _ => unreachable!(),
            };
            let want = expected_eigen_dims(p, r, s, e, sign);
            assert_eq!(minus.rank(), want.iter().sum::<usize>(), "p={p} {:?}", pair.case);
            assert_eq!(eigen_dims(&minus, p, r, s), want, "p={p} {:?}", pair.case);
        }
    }
}

#[test]
fn phi_of_minus_parts() {
    for (p, r) in PARAMS {
        let g = group(p, r);
        let ctx = RingCtx::new(p, 6).unwrap();
        for pair in enumerate_relevant_pairs(&g).unwrap() {
            let aid_data = AidData::with_default_phi(&g, pair.d.clone(), pair.i.clone()).unwrap();
            let minus = build_aid(&g, &aid_data, ctx).unwrap().minus_part().unwrap();
            assert_eq!(phi(&minus).unwrap(), expected_vector(r as usize, pair.case), "p={p} {:?}", pair.case);
        }
    }
}

#[test]
fn fractional_lattice_agrees_after_omega() {
    for (p, r) in PARAMS {
        let g = group(p, r);
        let ctx = RingCtx::new(p, 6).unwrap();
        for pair in enumerate_relevant_pairs(&g).unwrap() {
            let aid_data = AidData::with_default_phi(&g, pair.d.clone(), pair.i.clone()).unwrap();
            let l = fractional_lattice_minus(&g, &aid_data, ctx).unwrap();
            let v = fingerprint(&l).unwrap().strip().omega();
            assert_eq!(v, expected_vector(r as usize, pair.case), "p={p} {:?}", pair.case);
        }
    }
}

#[test]
fn independent_of_phi() {
    for (p, r) in PARAMS {
        let g = group(p, r);
        let ctx = RingCtx::new(p, 6).unwrap();
        for pair in enumerate_relevant_pairs(&g).unwrap() {
            let mut aids = Vec::new();
            let mut lats = Vec::new();
            for phi_el in AidData::generators(&g, &pair.d, &pair.i) {
                let aid_data = AidData::new(&g, pair.d.clone(), pair.i.clone(), phi_el).unwrap();
                let minus = build_aid(&g, &aid_data, ctx).unwrap().minus_part().unwrap();
                aids.push(phi(&minus).unwrap());
                lats.push(fingerprint(&fractional_lattice_minus(&g, &aid_data, ctx).unwrap()).unwrap());
            }
            assert!(aids.windows(2).all(|w| w[0] == w[1]), "p={p} {:?}", pair.case);
            assert!(lats.windows(2).all(|w| w[0] == w[1]), "p={p} {:?}", pair.case);
        }
    }
}
