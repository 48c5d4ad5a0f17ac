//! Named end-to-end checks, shared by the command line and the test suite.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adm::{adm_basis, adm_generators, adm_membership, pair_vector, predict, realize, AdmKind};
use crate::chainring::{kernel_mod, ChainMatrix, FpMatrix, RingCtx};
use crate::error::{Error, Result};
use crate::group::{
    classify_pair, enumerate_relevant_pairs, enumerate_subgroups, is_supersolvable, local_witness, Condition, Family,
    GroupModel, LocalWitness, MetacyclicParams, PairCase, Subgroup,
};
use crate::lambda::{build_aid, fractional_lattice_minus, sublattice, AidData, LambdaModule};
use crate::lattice::{
    fingerprint, omega1_finite, omega1_module, omega_lattice, phi, ClassVector, LatticeFactory, PeClassVector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Classify,
    Monoid,
    Aid,
    Realize,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => Suite::All,
            "classify" => Suite::Classify,
            "monoid" => Suite::Monoid,
            "aid" => Suite::Aid,
            "realize" => Suite::Realize,
            _ => return None,
        })
    }

    fn includes(self, criterion: u8) -> bool {
        match self {
            Suite::All => true,
            Suite::Classify => (1..=5).contains(&criterion),
            Suite::Monoid => criterion == 6 || criterion == 11,
            Suite::Aid => (7..=10).contains(&criterion),
            Suite::Realize => criterion == 12 || criterion == 13,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub computed: String,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub p: u64,
    pub r: u64,
    pub s: u64,
    pub k: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub const CHECK_NAMES: [&str; 13] = [
    "classification",
    "exact_sequence",
    "omega_identities",
    "phi_base_case",
    "decomposition_completeness",
    "phi_image_structure",
    "aid_minus_structure",
    "phi_independence",
    "vanishing",
    "phi_of_aid",
    "admissible_basis",
    "predict_realize_round_trip",
    "group_predicates",
];

/// Outcome of one check: `Err` carries (expected, computed) for the first mismatch.
type Outcome = std::result::Result<String, (String, String)>;

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, want: T, got: T) -> std::result::Result<(), (String, String)> {
    if want == got {
        Ok(())
    } else {
        Err((format!("{what}: {want}"), format!("{what}: {got}")))
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, (String, String)> {
    r.map_err(|e| ("no error".to_string(), e.to_string()))
}

struct Ctx {
    p: u64,
    r: u64,
    k: u32,
    seed: u64,
    params: MetacyclicParams,
    factory: LatticeFactory,
    g: Arc<GroupModel>,
}

impl Ctx {
    fn rng(&self, criterion: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(31).wrapping_add(u64::from(criterion)))
    }

    fn unit(&self, which: char, i: usize) -> ClassVector {
        let mut v = ClassVector::zero(self.r as usize);
        match which {
            'a' => v.a[i] = 1,
            'b' => v.b[i] = 1,
            _ => v.c[i] = 1,
        }
        v
    }
}

/// Runs the selected checks for one parameter set.
pub fn verify(p: u64, r: u64, s: Option<u64>, k: u32, suite: Suite, seed: u64) -> Result<VerifyReport> {
    let params = match s {
        Some(s) => MetacyclicParams::new(p, r, s)?,
        None => MetacyclicParams::with_default_s(p, r)?,
    };
    if k < 4 {
        return Err(Error::InvalidParameters(format!("k = {k} is too small; use at least 4")));
    }
    let cx = Ctx {
        p,
        r,
        k,
        seed,
        params,
        factory: LatticeFactory::new(params, k)?,
        g: Arc::new(GroupModel::make(Family::G, params)),
    };
    type CheckFn = fn(&Ctx) -> Outcome;
    let all: [CheckFn; 13] = [
        check_classification,
        check_exact_sequence,
        check_omega,
        check_phi_base,
        check_decomposition,
        check_phi_image,
        check_aid_structure,
        check_phi_independence,
        check_vanishing,
        check_phi_of_aid,
        check_admissible_basis,
        check_round_trip,
        check_group_predicates,
    ];
    let selected: Vec<(u8, CheckFn)> =
        (1..=13u8).zip(all).filter(|(c, _)| suite.includes(*c)).collect();
    let checks = selected
        .par_iter()
        .map(|&(criterion, f)| {
            let start = Instant::now();
            let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&cx)))
                .unwrap_or_else(|_| Err(("no panic".into(), "check panicked".into())));
            let millis = start.elapsed().as_millis() as u64;
            let name = CHECK_NAMES[criterion as usize - 1].to_string();
            match out {
                Ok(summary) => CheckResult { criterion, name, passed: true, expected: summary.clone(), computed: summary, millis },
                Err((expected, computed)) => CheckResult { criterion, name, passed: false, expected, computed, millis },
            }
        })
        .collect();
    Ok(VerifyReport { p, r, s: params.s, k, seed, checks })
}

fn check_classification(cx: &Ctx) -> Outcome {
    let f = &cx.factory;
    let (p, r) = (cx.p as usize, cx.r as usize);
    let mut seen = BTreeSet::new();
    for i in 0..r {
        for (w, m, rank) in [('a', f.make_l1(i as i64), 1), ('b', f.make_l2(i as i64), p - 1), ('c', f.make_l3(i as i64), p)] {
            lib(m.check_relations())?;
            expect_eq(&format!("rank of {w}{i}"), rank, m.rank())?;
            let v = lib(fingerprint(&m))?;
            expect_eq(&format!("fingerprint of {w}{i}"), cx.unit(w, i).to_string(), v.to_string())?;
            seen.insert(v.to_string());
        }
    }
    expect_eq("distinct fingerprints", 3 * r, seen.len())?;
    let all_l3 = ClassVector { r, a: vec![0; r], b: vec![0; r], c: vec![1; r] };
    let sum = lib(f.from_class(&all_l3))?;
    expect_eq("⊕ L3 fingerprint", all_l3.to_string(), lib(fingerprint(&sum))?.to_string())?;
    expect_eq("regular lattice fingerprint", all_l3.to_string(), lib(fingerprint(&f.group_ring()))?.to_string())?;
    Ok(format!("{} indecomposables with distinct fingerprints", 3 * r))
}

fn check_exact_sequence(cx: &Ctx) -> Outcome {
    let r = cx.r as usize;
    for i in 0..r {
        let l3 = cx.factory.make_l3(i as i64);
        let ctx = *l3.ctx();
        // σ^a e_i ↦ 1 is τ-equivariant onto L₁ⁱ
        let map = ChainMatrix::from_fn(ctx, 1, l3.rank(), |_, _| 1);
        let kernel = lib(kernel_mod(&map))?;
        let sub = lib(sublattice(&l3.at_precision(kernel.valid_prec()), &kernel))?;
        let v = lib(fingerprint(&sub.module))?;
        expect_eq(&format!("kernel of L3^{i} → L1^{i}"), cx.unit('b', (i + 1) % r).to_string(), v.to_string())?;
    }
    Ok(format!("ker(L3^i → L1^i) = L2^(i+1) for all {r} twists"))
}

fn check_omega(cx: &Ctx) -> Outcome {
    let r = cx.r as usize;
    for i in 0..r {
        let got = lib(omega_lattice(&cx.factory.make_l1(i as i64)))?;
        expect_eq(&format!("Ω(L1^{i})"), PeClassVector::l2(r, i as i64 + 1), got)?;
        let got = lib(omega_lattice(&cx.factory.make_l2(i as i64)))?;
        expect_eq(&format!("Ω(L2^{i})"), PeClassVector::l1(r, i as i64), got)?;
    }
    Ok("Ω(L1^i) = L2^(i+1), Ω(L2^i) = L1^i".into())
}

fn check_phi_base(cx: &Ctx) -> Outcome {
    let r = cx.r as usize;
    for i in 0..r as i64 {
        let got = lib(phi(&cx.factory.make_fp(i)))?;
        expect_eq(&format!("Φ(F_p({i}))"), PeClassVector::l1(r, i).add(&PeClassVector::l2(r, i + 1)), got)?;
    }
    Ok("Φ(F_p(i)) = L1^i ⊕ L2^(i+1)".into())
}

fn random_class(rng: &mut ChaCha8Rng, r: usize) -> ClassVector {
    let mut v = ClassVector::zero(r);
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..r);
        match rng.gen_range(0..3) {
            0 => v.a[i] += 1,
            1 => v.b[i] += 1,
            _ => v.c[i] += 1,
        }
    }
    v
}

/// Integer matrix with entries below `p²` that is invertible modulo p.
fn random_unimodular(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Vec<Vec<u64>> {
    loop {
        let m: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p * p)).collect()).collect();
        if FpMatrix::from_fn(p, n, n, |i, j| m[i][j] % p).rank() == n {
            return m;
        }
    }
}

fn check_decomposition(cx: &Ctx) -> Outcome {
    let mut rng = cx.rng(5);
    let r = cx.r as usize;
    let finer = LatticeFactory::new(cx.params, cx.k + 1).map_err(|e| ("factory".to_string(), e.to_string()))?;
    const TRIALS: usize = 100;
    for t in 0..TRIALS {
        let v = random_class(&mut rng, r);
        let ints = random_unimodular(&mut rng, cx.p, v.rank(cx.p));
        for f in [&cx.factory, &finer] {
            let m = lib(f.from_class(&v))?;
            let ctx = *m.ctx();
            let pm = ChainMatrix::from_fn(ctx, m.rank(), m.rank(), |i, j| ints[i][j] % ctx.modulus());
            let got = lib(fingerprint(&lib(m.base_change(&pm))?))?;
            expect_eq(&format!("trial {t} at k = {}", ctx.k()), v.to_string(), got.to_string())?;
        }
    }
    Ok(format!("{TRIALS} base-changed sums recovered at k and k+1"))
}

/// `Z/p^k[Γ]` modulo `p^bound` and a random element of the radical.
fn random_finite(cx: &Ctx, rng: &mut ChaCha8Rng) -> Result<LambdaModule> {
    let (p, r) = (cx.p as usize, cx.r as usize);
    let n = p * r;
    let mut one = vec![0i64; n];
    one[0] = (p as i64).pow(rng.gen_range(1..=2));
    let mut gens = vec![one];
    for _ in 0..rng.gen_range(1..=2) {
        let y: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
        let mut g: Vec<i64> = (0..n).map(|_| p as i64 * rng.gen_range(0..p as i64)).collect();
        for (idx, &c) in y.iter().enumerate() {
            g[(idx % p + 1) % p + p * (idx / p)] += c;
            g[idx] -= c;
        }
        gens.push(g);
    }
    let big = LatticeFactory::new(cx.params, cx.k.max(8))?;
    big.group_ring().quotient_by_left_ideal(&gens)
}

fn check_phi_image(cx: &Ctx) -> Outcome {
    let mut rng = cx.rng(6);
    let r = cx.r as usize;
    let mut count = 0;
    for i in 0..r as i64 {
        let v = lib(phi(&cx.factory.make_fp(i)))?;
        expect_eq(&format!("Σa = Σb for Φ(F_p({i}))"), true, v.is_in_phi_image())?;
        count += 1;
    }
    for t in 0..10 {
        let x = lib(random_finite(cx, &mut rng))?;
        let v = lib(phi(&x))?;
        expect_eq(&format!("Σa = Σb for random module {t}"), true, v.is_in_phi_image())?;
        let w = lib(phi(&lib(omega1_module(&x))?))?;
        expect_eq(&format!("Φ(ω¹X) = ΩΦ(X) for random module {t}"), lib(omega1_finite(&x))?, w)?;
        count += 1;
    }
    let s0 = (1..=cx.r).filter(|d| cx.r % d == 0).count();
    if cx.r >= 2 {
        expect_eq("σ₀(r) < 2r − 1", true, s0 < 2 * r - 1)?;
    }
    Ok(format!("{count} Φ values balanced; σ₀(r) = {s0}, 2r − 1 = {}", 2 * r - 1))
}

/// Minus part of `A_{I,φ}`, rebuilt at higher precision when the truncation hides torsion.
fn aid_minus(cx: &Ctx, aid_data: &AidData) -> Result<(LambdaModule, PeClassVector)> {
    let mut k = cx.k.max(6);
    loop {
        let ctx = RingCtx::new(cx.p, k)?;
        let minus = build_aid(&cx.g, aid_data, ctx)?.minus_part()?;
        match phi(&minus) {
            Ok(v) => return Ok((minus, v)),
            Err(Error::PrecisionExhausted { .. } | Error::NotFinite(_)) if k < 40 => k += 6,
            Err(e) => return Err(e),
        }
    }
}

/// τ-eigenvalue multiplicities of `F_p[C_r]/(τ^{r/e} - sign)` by dense elimination.
fn cyclic_quotient_dims(cx: &Ctx, e: u64, sign: i64) -> Vec<usize> {
    let (p, r) = (cx.p, cx.r as usize);
    let shift = (cx.r / e) as usize;
    let c = if sign > 0 { p - 1 } else { 1 };
    let x = FpMatrix::from_fn(p, r, r, |row, col| (u64::from(row == (col + shift) % r) + if row == col { c } else { 0 }) % p);
    let mut ev = 1u64;
    let mut out = Vec::with_capacity(r);
    for _ in 0..r {
        let t = FpMatrix::from_fn(p, r, r, |row, col| (u64::from(row == (col + 1) % r) + if row == col { p - ev } else { 0 }) % p);
        out.push(r - x.hstack(&t).rank());
        ev = ev * cx.params.s % p;
    }
    out
}

fn tau_eigen_dims(cx: &Ctx, m: &LambdaModule) -> Vec<usize> {
    let p = cx.p;
    let t = m.tau().expect("module over Γ").mod_p();
    let mut ev = 1u64;
    let mut out = Vec::new();
    for _ in 0..cx.r {
        out.push(t.shift(ev).kernel_dim());
        ev = ev * cx.params.s % p;
    }
    out
}

fn relevant_specs(cx: &Ctx) -> Result<Vec<(PairCase, AidData)>> {
    enumerate_relevant_pairs(&cx.g)?
        .into_iter()
        .map(|pair| Ok((pair.case, AidData::with_default_phi(&cx.g, pair.d, pair.i)?)))
        .collect()
}

fn check_aid_structure(cx: &Ctx) -> Outcome {
    let specs = lib(relevant_specs(cx))?;
    specs
        .par_iter()
        .map(|(case, aid_data)| {
            let (minus, _) = lib(aid_minus(cx, aid_data))?;
            let (e, sign) = match *case {
                PairCase::CaseI { e, .. } => (e, 1),
                PairCase::CaseII { e, .. } => (e, -1),
                PairCase::Irrelevant { .. } => unreachable!("relevant pairs only"),
            };
            expect_eq(&format!("{case:?} killed by p"), true, minus.abelian_invariants().iter().all(|&d| d == 1))?;
            let want = cyclic_quotient_dims(cx, e, sign);
            expect_eq(&format!("{case:?} F_p-dimension"), want.iter().sum::<usize>(), minus.rank())?;
            expect_eq(&format!("{case:?} τ-eigenvalues"), format!("{want:?}"), format!("{:?}", tau_eigen_dims(cx, &minus)))
        })
        .collect::<std::result::Result<Vec<()>, _>>()?;
    Ok(format!("{} relevant pairs match F_p[C_r]/(τ^(r/e) ∓ 1)", specs.len()))
}

fn check_phi_independence(cx: &Ctx) -> Outcome {
    let pairs = lib(enumerate_relevant_pairs(&cx.g))?;
    let ctx = RingCtx::new(cx.p, cx.k.max(6)).map_err(|e| (String::new(), e.to_string()))?;
    let total: usize = pairs
        .par_iter()
        .map(|pair| {
            let mut aid = Vec::new();
            let mut lat = Vec::new();
            let gens = AidData::generators(&cx.g, &pair.d, &pair.i);
            for &phi_el in &gens {
                let aid_data = lib(AidData::new(&cx.g, pair.d.clone(), pair.i.clone(), phi_el))?;
                aid.push(lib(aid_minus(cx, &aid_data))?.1);
                lat.push(lib(fingerprint(&lib(fractional_lattice_minus(&cx.g, &aid_data, ctx))?))?);
            }
            for w in aid.windows(2) {
                expect_eq(&format!("{:?} Φ(A⁻) across φ", pair.case), &w[0], &w[1])?;
            }
            for w in lat.windows(2) {
                expect_eq(&format!("{:?} ℒ⁻ across φ", pair.case), &w[0], &w[1])?;
            }
            Ok::<usize, (String, String)>(gens.len())
        })
        .collect::<std::result::Result<Vec<usize>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{} pairs, {total} choices of φ", pairs.len()))
}

/// All `(D, I)` with `I ⊴ D` and `D/I` cyclic, one per conjugacy class.
fn all_pairs_up_to_conjugacy(g: &GroupModel) -> Vec<(Subgroup, Subgroup)> {
    let subs = enumerate_subgroups(g);
    let mut out = Vec::new();
    for d in &subs {
        let dc: Vec<Subgroup> = (0..g.order()).map(|x| d.conjugate(g, x)).collect();
        if dc.iter().any(|c| c < d) {
            continue;
        }
        for i in subs.iter().filter(|i| i.is_subset_of(d)) {
            if !i.is_normal_in(g, d) || i.cyclic_quotient_generator(g, d).is_none() {
                continue;
            }
            // among conjugators fixing D, keep the smallest image of I
            let minimal = (0..g.order()).filter(|&x| dc[x] == *d).all(|x| i.conjugate(g, x) >= *i);
            if minimal {
                out.push((d.clone(), i.clone()));
            }
        }
    }
    out
}

fn check_vanishing(cx: &Ctx) -> Outcome {
    let pairs = all_pairs_up_to_conjugacy(&cx.g);
    let zero = PeClassVector::zero(cx.r as usize);
    let irrelevant: Vec<_> = pairs
        .iter()
        .filter_map(|(d, i)| match classify_pair(&cx.g, d, i) {
            Ok(pair) if !pair.case.is_relevant() => Some(Ok(pair)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| ("classified pairs".to_string(), e.to_string()))?;
    irrelevant
        .par_iter()
        .map(|pair| {
            let aid_data = lib(AidData::with_default_phi(&cx.g, pair.d.clone(), pair.i.clone()))?;
            let (_, v) = lib(aid_minus(cx, &aid_data))?;
            expect_eq(&format!("{:?} with |D| = {}, |I| = {}", pair.case, pair.d.order(), pair.i.order()), &zero, &v)
        })
        .collect::<std::result::Result<Vec<()>, _>>()?;
    Ok(format!("{} of {} pairs up to conjugacy vanish", irrelevant.len(), pairs.len()))
}

fn check_phi_of_aid(cx: &Ctx) -> Outcome {
    let specs = lib(relevant_specs(cx))?;
    let ctx = RingCtx::new(cx.p, cx.k.max(6)).map_err(|e| (String::new(), e.to_string()))?;
    specs
        .par_iter()
        .map(|(case, aid_data)| {
            let want = pair_vector(cx.r, *case);
            let (_, got) = lib(aid_minus(cx, aid_data))?;
            expect_eq(&format!("{case:?} Φ(A⁻)"), &want, &got)?;
            let l = lib(fractional_lattice_minus(&cx.g, aid_data, ctx))?;
            let shifted = lib(fingerprint(&l))?.strip().omega();
            expect_eq(&format!("{case:?} Ω(ℒ⁻)"), &want, &shifted)
        })
        .collect::<std::result::Result<Vec<()>, _>>()?;
    Ok(format!("{} pairs give L(e) / L'(e)", specs.len()))
}

fn check_admissible_basis(cx: &Ctx) -> Outcome {
    let basis = lib(adm_basis(cx.p, cx.r))?;
    let s0 = (1..=cx.r).filter(|d| cx.r % d == 0).count();
    expect_eq("basis size", s0, basis.len())?;
    let coords: Vec<Vec<u64>> = basis.iter().map(|b| b.vector.coords().into_iter().map(|x| x as u64).collect()).collect();
    // independence over Q, checked modulo a prime larger than every minor
    let big = 1_000_000_007;
    let m = FpMatrix::from_fn(big, coords.len(), 2 * cx.r as usize, |i, j| coords[i][j]);
    expect_eq("basis rank", basis.len(), m.rank())?;
    let gens = lib(adm_generators(7, 6))?;
    let rows: Vec<Vec<usize>> = [1, 2, 3, 6]
        .iter()
        .map(|&e| {
            let v = &gens.iter().find(|g| g.kind == AdmKind::I && g.e == e).expect("generator").vector;
            (1..=6).map(|i| v.a[i % 6]).collect()
        })
        .collect();
    let printed = vec![vec![1, 1, 1, 1, 1, 1], vec![0, 1, 0, 1, 0, 1], vec![0, 0, 1, 0, 0, 1], vec![0, 0, 0, 0, 0, 1]];
    expect_eq("r = 6 matrix", format!("{printed:?}"), format!("{rows:?}"))?;
    Ok(format!("basis of size σ₀({}) = {s0}; r = 6 matrix matches", cx.r))
}

/// A Φ-image vector outside the admissible monoid, found among `L₁ⁱ + L₂ʲ`.
pub fn non_admissible_example(p: u64, r: u64) -> Result<Option<PeClassVector>> {
    let r = r as usize;
    for i in 0..r {
        for j in 0..r {
            let v = PeClassVector::l1(r, i as i64).add(&PeClassVector::l2(r, j as i64));
            match adm_membership(p, &v) {
                Err(Error::NotAdmissible(_)) => return Ok(Some(v)),
                Err(e) => return Err(e),
                Ok(_) => {}
            }
        }
    }
    Ok(None)
}

fn check_round_trip(cx: &Ctx) -> Outcome {
    let mut rng = cx.rng(12);
    let r = cx.r as usize;
    let basis = lib(adm_basis(cx.p, cx.r))?;
    const TRIALS: usize = 200;
    for t in 0..TRIALS {
        let v = basis.iter().fold(PeClassVector::zero(r), |acc, b| acc.add(&b.vector.scaled(rng.gen_range(0..4))));
        let plan = lib(realize(&cx.g, &v))?;
        let pairs: Vec<_> = plan.iter().map(|x| (x.pair.d.clone(), x.pair.i.clone())).collect();
        expect_eq(&format!("trial {t}"), &v, &lib(predict(&cx.g, &pairs))?.preshift)?;
    }
    if cx.r >= 2 {
        let bad = lib(non_admissible_example(cx.p, cx.r))?.ok_or(("a non-admissible Φ-image vector".to_string(), "none".to_string()))?;
        expect_eq(&format!("Σa = Σb for {bad}"), true, bad.is_in_phi_image())?;
        match realize(&cx.g, &bad) {
            Err(Error::NotAdmissible(_)) => {}
            other => return Err((format!("rejection of {bad}"), format!("{:?}", other.map(|p| p.len())))),
        }
    }
    Ok(format!("{TRIALS} round trips; non-admissible vector rejected"))
}

fn brute_force_subgroup_count(g: &GroupModel) -> usize {
    let n = g.order();
    (1u32..(1 << n))
        .filter(|&mask| {
            let has = |x: usize| mask >> x & 1 == 1;
            has(g.identity())
                && (0..n).filter(|&a| has(a)).all(|a| (0..n).filter(|&b| has(b)).all(|b| has(g.mul(a, b))))
        })
        .count()
}

fn check_group_predicates(_cx: &Ctx) -> Outcome {
    let s3 = lib(GroupModel::make_gamma(3, 2, 2))?;
    expect_eq("S3 supersolvable", true, is_supersolvable(&s3).is_some())?;
    let a4 = lib(GroupModel::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]))?;
    expect_eq("A4 order", 12, a4.order())?;
    expect_eq("A4 supersolvable", false, is_supersolvable(&a4).is_some())?;
    let s3c2 = lib(GroupModel::make_g(3, 2, 2))?;
    expect_eq("S3 × C2 subgroups (brute force)", 16, brute_force_subgroup_count(&s3c2))?;
    expect_eq("S3 × C2 subgroups (enumeration)", 16, enumerate_subgroups(&s3c2).len())?;
    let g = lib(GroupModel::make_gamma(5, 4, 2))?;
    let (s, t) = (g.sigma().expect("σ"), g.tau().expect("τ"));
    let d = Subgroup::generated_by(&g, &[s, t]);
    let i = Subgroup::generated_by(&g, &[s, g.pow(t, 2)]);
    match lib(local_witness(&g, &d, &i))? {
        LocalWitness::Impossible { clashing, .. } if clashing == vec![Condition::A, Condition::C] => {}
        w => return Err(("impossible with (a)/(c)".into(), format!("{w:?}"))),
    }
    Ok("S3 yes, A4 no, 16 subgroups, (r, e, d) = (4, 4, 2) impossible".into())
}
