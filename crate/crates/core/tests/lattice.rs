use minusclass_core::group::MetacyclicParams;
use minusclass_core::lambda::LambdaModule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use minusclass_core::lattice::{fingerprint, omega1_finite, omega1_module, omega_lattice, phi, ClassVector, LatticeFactory, PeClassVector};

fn factory(p: u64, r: u64, k: u32) -> LatticeFactory {
    LatticeFactory::new(MetacyclicParams::with_default_s(p, r).unwrap(), k).unwrap()
}

fn unit(r: usize, which: char, i: usize) -> ClassVector {
    let mut v = ClassVector::zero(r);
    match which {
        'a' => v.a[i] = 1,
        'b' => v.b[i] = 1,
        _ => v.c[i] = 1,
    }
    v
}

#[test]
fn indecomposables_fingerprint_to_themselves() {
    for (p, r) in [(3, 2), (5, 4), (7, 3), (7, 6)] {
        let f = factory(p, r, 6);
        for i in 0..r as usize {
            for (w, m) in [('a', f.make_l1(i as i64)), ('b', f.make_l2(i as i64)), ('c', f.make_l3(i as i64))] {
                assert_eq!(fingerprint(&m).unwrap(), unit(r as usize, w, i), "p={p} r={r} {w}{i}");
            }
        }
    }
}

#[test]
fn group_ring_is_sum_of_l3() {
    let f = factory(7, 6, 5);
    let v = fingerprint(&f.group_ring()).unwrap();
    assert_eq!(v.c, vec![1; 6]);
    assert!(v.a.iter().chain(&v.b).all(|&x| x == 0));
}

#[test]
fn omega_on_indecomposables() {
    for (p, r) in [(3, 2), (5, 4), (7, 6)] {
        let f = factory(p, r, 6);
        let r = r as usize;
        for i in 0..r {
            let o1 = omega_lattice(&f.make_l1(i as i64)).unwrap();
            assert_eq!(o1, PeClassVector::l1(r, i as i64).omega(), "Ω L1^{i}");
            let o2 = omega_lattice(&f.make_l2(i as i64)).unwrap();
            assert_eq!(o2, PeClassVector::l2(r, i as i64).omega(), "Ω L2^{i}");
        }
    }
}

#[test]
fn phi_of_fp() {
    for (p, r) in [(3, 2), (5, 4), (7, 6)] {
        let f = factory(p, r, 6);
        for i in 0..r as i64 {
            let v = phi(&f.make_fp(i)).unwrap();
            assert_eq!(v, PeClassVector::l1(r as usize, i).add(&PeClassVector::l2(r as usize, i + 1)));
        }
    }
}

/// Coefficient vector of `σ^a τ^b` in the regular module over Γ.
fn basis(p: usize, r: usize, a: usize, b: usize) -> Vec<i64> {
    let mut v = vec![0i64; p * r];
    v[a % p + p * (b % r)] = 1;
    v
}

fn combine(x: &[i64], y: &[i64], cy: i64) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + cy * b).collect()
}

/// `F_p[C_r]/(τ^{r/e} - sign)`.
fn cyclic_quotient(f: &LatticeFactory, e: usize, sign: i64) -> LambdaModule {
    let (p, r) = (f.params.p as usize, f.params.r as usize);
    let one = basis(p, r, 0, 0);
    let gens = vec![
        one.iter().map(|x| x * p as i64).collect(),
        combine(&basis(p, r, 1, 0), &one, -1),
        combine(&basis(p, r, 0, r / e), &one, -sign),
    ];
    f.group_ring().quotient_by_left_ideal(&gens).unwrap()
}

#[test]
fn phi_of_cyclic_quotients() {
    for (p, r) in [(3, 2), (5, 4), (7, 6), (13, 12)] {
        let f = factory(p, r, 6);
        let r = r as usize;
        for e in (1..=r).filter(|e| r % e == 0) {
            let mut want = PeClassVector::zero(r);
            for i in (0..r).filter(|i| i % e == 0) {
                want = want.add(&PeClassVector::l1(r, i as i64)).add(&PeClassVector::l2(r, i as i64 + 1));
            }
            assert_eq!(phi(&cyclic_quotient(&f, e, 1)).unwrap(), want, "p={p} e={e}");
            if e % 2 == 0 {
                let mut want = PeClassVector::zero(r);
                for i in (0..r).filter(|i| i % e == e / 2) {
                    want = want.add(&PeClassVector::l1(r, i as i64)).add(&PeClassVector::l2(r, i as i64 + 1));
                }
                assert_eq!(phi(&cyclic_quotient(&f, e, -1)).unwrap(), want, "p={p} e={e} twisted");
            }
        }
    }
}

fn random_finite(f: &LatticeFactory, rng: &mut ChaCha8Rng) -> LambdaModule {
    let (p, r) = (f.params.p as usize, f.params.r as usize);
    let n = p * r;
    let bound = rng.gen_range(1..=2u32);
    let mut gens: Vec<Vec<i64>> = vec![basis(p, r, 0, 0).iter().map(|x| x * (p as i64).pow(bound)).collect()];
    for _ in 0..rng.gen_range(1..=2) {
        // (σ - 1) y + p z lies in the radical, so the quotient is never zero
        let y: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
        let mut g: Vec<i64> = (0..n).map(|_| p as i64 * rng.gen_range(0..p as i64)).collect();
        for (idx, &c) in y.iter().enumerate() {
            let (a, b) = (idx % p, idx / p);
            g[(a + 1) % p + p * b] += c;
            g[idx] -= c;
        }
        gens.push(g);
    }
    f.group_ring().quotient_by_left_ideal(&gens).unwrap()
}

#[test]
fn omega1_commutes_with_phi() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial = 0;
    for (p, r) in [(3, 2), (5, 4), (7, 3)] {
        let f = factory(p, r, 8);
        for _ in 0..8 {
            let x = random_finite(&f, &mut rng);
            let w = omega1_module(&x).unwrap();
            let v = omega1_finite(&x).unwrap();
            nontrivial += usize::from(!v.is_zero());
            assert_eq!(phi(&w).unwrap(), v);
        }
    }
    assert!(nontrivial >= 12, "only {nontrivial} nontrivial samples");
}
