use minusclass_core::group::*;

fn brute_force_subgroups(g: &GroupModel) -> usize {
    let n = g.order();
    assert!(n <= 16);
    let mut count = 0;
    for mask in 1u32..(1 << n) {
        let has = |x: usize| mask >> x & 1 == 1;
        if !has(g.identity()) {
            continue;
        }
        let closed = (0..n).filter(|&a| has(a)).all(|a| (0..n).filter(|&b| has(b)).all(|b| has(g.mul(a, b))));
        if closed {
            count += 1;
        }
    }
    count
}

fn a4() -> GroupModel {
    GroupModel::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
}

#[test]
fn gamma_relations() {
    let g = GroupModel::make_gamma(5, 4, 2).unwrap();
    assert_eq!(g.order(), 20);
    let (s, t) = (g.sigma().unwrap(), g.tau().unwrap());
    assert_eq!(g.element_order(s), 5);
    assert_eq!(g.element_order(t), 4);
    assert_eq!(g.conj(t, s), g.pow(s, 2));
}

#[test]
fn s3_and_g_orders() {
    let g = GroupModel::make_gamma(3, 2, 2).unwrap();
    assert_eq!(g.order(), 6);
    assert!(!g.is_abelian());
    assert_eq!(GroupModel::make_g(3, 2, 2).unwrap().order(), 12);
}

#[test]
fn bad_s_rejected() {
    assert!(GroupModel::make_gamma(5, 4, 4).is_err());
    assert!(GroupModel::make_gamma(7, 4, 3).is_err());
    assert!(GroupModel::make_gamma(9, 2, 8).is_err());
}

#[test]
fn table_validation() {
    assert!(GroupModel::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    // a Latin square that is not associative
    let t = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    assert!(GroupModel::from_table(t).is_err());
    let c4 = GroupModel::from_table((0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect()).unwrap();
    assert_eq!(enumerate_subgroups(&c4).len(), 3);
}

#[test]
fn subgroup_counts_match_brute_force() {
    let s3 = GroupModel::make_gamma(3, 2, 2).unwrap();
    let d12 = GroupModel::make_g(3, 2, 2).unwrap();
    assert_eq!(enumerate_subgroups(&s3).len(), 6);
    assert_eq!(brute_force_subgroups(&s3), 6);
    assert_eq!(enumerate_subgroups(&d12).len(), 16);
    assert_eq!(brute_force_subgroups(&d12), 16);
    assert_eq!(enumerate_subgroups(&a4()).len(), brute_force_subgroups(&a4()));
    assert_eq!(enumerate_subgroups(&GroupModel::cyclic(1)).len(), 1);
}

#[test]
fn subgroups_sorted_and_conjugation_closed() {
    let g = GroupModel::make_g(7, 3, 2).unwrap();
    let subs = enumerate_subgroups(&g);
    for w in subs.windows(2) {
        assert!((w[0].order(), w[0].elements()) < (w[1].order(), w[1].elements()));
    }
    for h in &subs {
        assert!(Subgroup::from_elements(&g, h.elements()).is_ok());
        for x in 0..g.order() {
            assert!(subs.contains(&h.conjugate(&g, x)));
        }
    }
}

#[test]
fn classify_examples() {
    let g = GroupModel::make_g(3, 2, 2).unwrap();
    let sigma = g.sigma().unwrap();
    let tau = g.tau().unwrap();
    let j = g.j().unwrap();
    let cp = Subgroup::generated_by(&g, &[sigma]);
    assert_eq!(classify_pair(&g, &cp, &cp).unwrap().case, PairCase::CaseI { d: 1, e: 1 });
    let d = Subgroup::generated_by(&g, &[sigma, g.mul(tau, j)]);
    assert_eq!(classify_pair(&g, &d, &cp).unwrap().case, PairCase::CaseII { d: 1, e: 2 });
    let all = Subgroup::whole(&g);
    assert_eq!(classify_pair(&g, &all, &all).unwrap().case, PairCase::Irrelevant { reason: VanishReason::JInD });
    let t = Subgroup::generated_by(&g, &[tau]);
    assert_eq!(classify_pair(&g, &t, &t).unwrap().case, PairCase::Irrelevant { reason: VanishReason::PDoesNotDivideI });
    // ⟨τ⟩ is not normal in S₃
    let s3 = Subgroup::generated_by(&g, &[sigma, tau]);
    assert!(matches!(
        classify_pair(&g, &s3, &t),
        Err(minusclass_core::Error::NotRealizableShape(_))
    ));
}

#[test]
fn classification_is_total() {
    let g = GroupModel::make_g(3, 2, 2).unwrap();
    let subs = enumerate_subgroups(&g);
    for d in &subs {
        for i in subs.iter().filter(|i| i.is_subset_of(d)) {
            match classify_pair(&g, d, i) {
                Ok(_) | Err(minusclass_core::Error::NotRealizableShape(_)) => {}
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }
}

#[test]
fn relevant_pair_counts() {
    for (p, r, expect) in [(3, 2, 5), (5, 1, 1), (7, 6, 15), (13, 12, 33), (5, 4, 11)] {
        let params = MetacyclicParams::with_default_s(p, r).unwrap();
        let g = GroupModel::make(Family::G, params);
        let pairs = enumerate_relevant_pairs(&g).unwrap();
        assert_eq!(pairs.len() as u64, expect, "(p, r) = ({p}, {r})");
        assert_eq!(relevant_pair_count(r), expect);
        // brute force over all subgroup pairs
        let subs = enumerate_subgroups(&g);
        if g.order() <= 60 {
            let mut n = 0;
            for d in &subs {
                for i in subs.iter().filter(|i| i.is_subset_of(d)) {
                    if let Ok(pd) = classify_pair(&g, d, i) {
                        n += usize::from(pd.case.is_relevant());
                    }
                }
            }
            assert_eq!(n as u64, expect);
        }
    }
    let g = GroupModel::make_g(7, 6, 3).unwrap();
    let pairs = enumerate_relevant_pairs(&g).unwrap();
    assert_eq!(pairs.iter().filter(|p| matches!(p.case, PairCase::CaseI { .. })).count(), 9);
    assert_eq!(pairs.iter().filter(|p| matches!(p.case, PairCase::CaseII { .. })).count(), 6);
}

#[test]
fn supersolvability() {
    for (p, r) in [(3, 2), (5, 4), (7, 3), (7, 6), (13, 12)] {
        let g = GroupModel::make(Family::Gamma, MetacyclicParams::with_default_s(p, r).unwrap());
        let chain = is_supersolvable(&g).expect("metacyclic groups are supersolvable");
        assert_eq!(chain[0].order(), 1);
        assert_eq!(chain.last().unwrap().order(), g.order());
        let whole = Subgroup::whole(&g);
        for w in chain.windows(2) {
            assert!(w[1].is_normal_in(&g, &whole));
            assert!(w[0].cyclic_quotient_generator(&g, &w[1]).is_some());
        }
    }
    assert!(is_supersolvable(&a4()).is_none());
    assert!(is_supersolvable(&GroupModel::cyclic(6)).is_some());
}

#[test]
fn conjugate_generation() {
    let g = GroupModel::make_gamma(3, 2, 2).unwrap();
    let cp = Subgroup::generated_by(&g, &[g.sigma().unwrap()]);
    let t = Subgroup::generated_by(&g, &[g.tau().unwrap()]);
    assert!(conjugates_generate(&g, &[cp.clone(), t.clone()]));
    assert!(!conjugates_generate(&g, &[cp]));
    assert!(conjugates_generate(&g, &[Subgroup::whole(&g)]));
    // two copies of ⟨τ⟩ can land on the same conjugate
    assert!(!conjugates_generate(&g, &[t.clone(), t]));
}

#[test]
fn local_witnesses() {
    let g = GroupModel::make_g(3, 2, 2).unwrap();
    let gamma = Subgroup::generated_by(&g, &[g.sigma().unwrap(), g.tau().unwrap()]);
    match local_witness(&g, &gamma, &gamma).unwrap() {
        LocalWitness::Construction { ell: Ell::Exactly { ell: 3 }, descriptor, e: 2, .. } => {
            assert!(descriptor.contains("Q_p(mu_p, p^(1/p))"))
        }
        w => panic!("{w:?}"),
    }
    let cp = Subgroup::generated_by(&g, &[g.sigma().unwrap()]);
    assert!(matches!(
        local_witness(&g, &cp, &cp).unwrap(),
        LocalWitness::Construction { ell: Ell::AnyExcept { .. }, e: 1, .. }
    ));

    let g = GroupModel::make_gamma(5, 4, 2).unwrap();
    let (s, t) = (g.sigma().unwrap(), g.tau().unwrap());
    let d = Subgroup::generated_by(&g, &[s, t]);
    let i = Subgroup::generated_by(&g, &[s, g.pow(t, 2)]);
    match local_witness(&g, &d, &i).unwrap() {
        LocalWitness::Impossible { clashing, .. } => assert_eq!(clashing, vec![Condition::A, Condition::C]),
        w => panic!("{w:?}"),
    }
    let rep = going_up_check(&g, &d, &i, 2).unwrap();
    assert_eq!(rep.failed, vec![Condition::C]);
    assert_eq!(rep.assumed, vec![Condition::B]);
    assert_eq!(going_up_check(&g, &d, &i, 3).unwrap().failed, vec![Condition::A]);
}
