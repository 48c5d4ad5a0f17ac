use minusclass_core::chainring::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(p: u64, k: u32) -> RingCtx {
    RingCtx::new(p, k).unwrap()
}

fn det(m: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn val(x: i128, p: i128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    let mut x = x;
    while x % p == 0 && v < cap {
        x /= p;
        v += 1;
    }
    v
}

/// p-parts of the integer elementary divisors, from gcds of minors, capped at `cap`.
fn integer_snf_exponents(m: &[Vec<i64>], p: u64, cap: u32) -> Vec<u32> {
    let n = m.len();
    let c = m[0].len();
    let mut minors_val = vec![0u32];
    for k in 1..=n.min(c) {
        let mut best = u32::MAX;
        for rows in combinations(n, k) {
            for cols in combinations(c, k) {
                let sub: Vec<Vec<i128>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                let d = det(&sub);
                best = best.min(val(d, p as i128, 64));
            }
        }
        minors_val.push(best);
    }
    (1..minors_val.len())
        .map(|k| {
            if minors_val[k] == 64 {
                cap
            } else {
                (minors_val[k] - minors_val[k - 1]).min(cap)
            }
        })
        .collect()
}

#[test]
fn teichmuller_examples() {
    assert_eq!(teichmuller(1, &ctx(7, 5)).unwrap(), 1);
    let c = ctx(5, 3).with_precision(2);
    assert_eq!(teichmuller(2, &c).unwrap(), 7);
    let c = ctx(3, 3).with_precision(2);
    assert_eq!(teichmuller(2, &c).unwrap(), 8);
    assert!(teichmuller(10, &ctx(5, 4)).is_err());
}

#[test]
fn teichmuller_random_units() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in [3u64, 5, 7, 13] {
        let c = ctx(p, 6);
        for _ in 0..100 {
            let s = loop {
                let s = rng.gen_range(-1000i64..1000);
                if s.rem_euclid(p as i64) != 0 {
                    break s;
                }
            };
            let rho = teichmuller(s, &c).unwrap();
            assert_eq!(rho % p, s.rem_euclid(p as i64) as u64);
            assert_eq!(c.pow(rho, p - 1), 1);
        }
    }
}

#[test]
fn snf_examples() {
    let c = ctx(3, 3);
    let id = ChainMatrix::identity(c, 4);
    assert_eq!(smith_normal_form(&id).exponents, vec![0; 4]);
    let d = ChainMatrix::from_rows(c, &[vec![3, 0], vec![0, 1]]).unwrap();
    assert_eq!(smith_normal_form(&d).exponents, vec![0, 1]);
    let z = ChainMatrix::zeros(c, 2, 3);
    assert_eq!(smith_normal_form(&z).exponents, vec![3, 3]);
}

#[test]
fn snf_matches_integer_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c = ctx(3, 5);
    for trial in 0..20 {
        // a product of factors makes high valuations common
        let n = 6;
        let mut rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..243)).collect()).collect();
        if trial % 2 == 1 {
            for row in rows.iter_mut().take(3) {
                for x in row.iter_mut() {
                    *x = *x * 9 % 243;
                }
            }
        }
        let a = ChainMatrix::from_rows(c, &rows).unwrap();
        let sf = smith_normal_form(&a);
        let mut got = sf.exponents.clone();
        got.sort_unstable();
        let mut want = integer_snf_exponents(&rows, 3, 5);
        want.sort_unstable();
        assert_eq!(got, want, "trial {trial}");
        assert_eq!(sf.u.mul(&sf.diagonal()).mul(&sf.v), a);
        assert_eq!(sf.u.mul(&sf.u_inv), ChainMatrix::identity(c, n));
        assert_eq!(sf.v.mul(&sf.v_inv), ChainMatrix::identity(c, n));
    }
}

#[test]
fn snf_rectangular_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = ctx(5, 4);
    for (r, k) in [(3, 5), (5, 2), (1, 4), (4, 1)] {
        let a = ChainMatrix::from_fn(c, r, k, |_, _| rng.gen_range(0..625) * 5 % 625);
        let sf = smith_normal_form(&a);
        assert_eq!(sf.u.mul(&sf.diagonal()).mul(&sf.v), a);
        assert!(sf.exponents.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn kernel_examples() {
    let c = ctx(3, 4);
    let z = ChainMatrix::zeros(c, 3, 3);
    let k = kernel_mod(&z).unwrap();
    assert_eq!(k.valid_prec(), 3);
    assert_eq!(smith_exponents(&k), vec![0, 0, 0]);

    // multiplication by 1 - ζ on Z[ζ_3] in the basis 1, ζ (ζ² = -1 - ζ)
    let m = ChainMatrix::from_rows(c, &[vec![1, 1], vec![-1, 2]]).unwrap();
    let k = kernel_mod(&m).unwrap();
    assert!(k.is_zero() || k.cols() == 0);

    // 1 - σ on the regular representation of C_3
    let sigma = ChainMatrix::from_rows(c, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    let a = ChainMatrix::identity(c, 3).sub(&sigma);
    let k = kernel_mod(&a).unwrap();
    assert_eq!(k.valid_prec(), 3);
    let nu = ChainMatrix::from_rows(c, &[vec![1], vec![1], vec![1]]).unwrap().reduce_to(3);
    assert!(k.spans(&nu));
    assert!(nu.spans(&k));
}

#[test]
fn kernel_needs_two_digits() {
    let c = ctx(3, 3);
    let a = ChainMatrix::identity(c, 2).reduce_to(1);
    assert!(matches!(kernel_mod(&a), Err(minusclass_core::Error::PrecisionExhausted { .. })));
}

fn int_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let f = rng.gen_range(-2..3);
            for c in 0..n {
                m[i][c] += f * m[j][c];
            }
        }
    }
    m
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

#[test]
fn kernel_stable_under_extra_precision() {
    // integer matrices whose cokernel torsion is killed by p
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let d: Vec<Vec<i64>> =
            (0..4).map(|i| (0..5).map(|j| if i == j { [0, 1, 3, 0][rng.gen_range(0..4)] } else { 0 }).collect()).collect();
        let rows = int_mul(&int_mul(&int_unimodular(4, &mut rng), &d), &int_unimodular(5, &mut rng));
        let k5 = kernel_mod(&ChainMatrix::from_rows(ctx(3, 5), &rows).unwrap()).unwrap();
        let k6 = kernel_mod(&ChainMatrix::from_rows(ctx(3, 6), &rows).unwrap()).unwrap();
        let k6 = ChainMatrix::from_columns(ctx(3, 5), 5, &k6.columns()).reduce_to(4);
        let k5 = k5.reduce_to(4);
        assert!(k5.spans(&k6) && k6.spans(&k5));
    }
}

#[test]
fn eigen_dims_examples() {
    let i = FpMatrix::identity(5, 3);
    assert_eq!(fp_eigenspace_dims(&i, &[1, 4]).unwrap(), vec![3, 0]);
    let swap = FpMatrix::from_rows(3, &[vec![0, 1], vec![1, 0]]);
    assert_eq!(fp_eigenspace_dims(&swap, &[1, 2]).unwrap(), vec![1, 1]);
    let comp = FpMatrix::from_rows(5, &[vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
    assert_eq!(fp_eigenspace_dims(&comp, &[1, 2, 4, 3]).unwrap(), vec![1, 1, 1, 1]);
    assert!(fp_eigenspace_dims(&comp, &[1, 6]).is_err());
}

fn unimodular(c: RingCtx, n: usize, seed: u64) -> ChainMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ChainMatrix::identity(c, n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let mut e = ChainMatrix::identity(c, n);
        e.set(i, j, rng.gen_range(0..c.modulus()));
        m = m.mul(&e);
    }
    m
}

proptest! {
    #[test]
    fn snf_invariant_under_unimodular(rows in prop::collection::vec(prop::collection::vec(-40i64..40, 4), 4), s1 in 0u64..1000, s2 in 0u64..1000) {
        let c = ctx(5, 4);
        let a = ChainMatrix::from_rows(c, &rows).unwrap();
        let b = unimodular(c, 4, s1).mul(&a).mul(&unimodular(c, 4, s2));
        let mut x = smith_exponents(&a);
        let mut y = smith_exponents(&b);
        x.sort_unstable();
        y.sort_unstable();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn eigen_dims_sum(seed in 0u64..500) {
        // conjugate of a diagonal matrix of order dividing 6 over F_7
        let c = ctx(7, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eig = [1u64, 3, 2, 6, 4, 5];
        let d = ChainMatrix::from_fn(c, 5, 5, |i, j| if i == j { eig[rng.gen_range(0..6)] } else { 0 });
        let u = unimodular(c, 5, seed);
        let m = u.mul(&d).mul(&u.inverse().unwrap()).mod_p();
        let dims = fp_eigenspace_dims(&m, &eig).unwrap();
        prop_assert_eq!(dims.iter().sum::<usize>(), 5);
    }
}
