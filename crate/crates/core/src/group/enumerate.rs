use std::collections::HashSet;

use super::{GroupModel, Subgroup};

/// All subgroups, duplicate-free, sorted by `(order, element set)`.
///
/// Every subgroup is reached from the trivial one by adjoining one element at
/// a time, so closing the list under "adjoin an element" is complete.
pub fn enumerate_subgroups(g: &GroupModel) -> Vec<Subgroup> {
    let n = g.order();
    let mut found: Vec<(Subgroup, Vec<usize>)> = vec![(Subgroup::trivial(g), Vec::new())];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(found[0].0.elements().to_vec());
    let mut i = 0;
    while i < found.len() {
        let (h, gens) = found[i].clone();
        let mut covered = vec![false; n];
        for &x in h.elements() {
            covered[x] = true;
        }
        for x in 0..n {
            if covered[x] {
                continue;
            }
            let mut more = gens.clone();
            more.push(x);
            let k = Subgroup::generated_by(g, &more);
            // other generators of ⟨x⟩ adjoin to the same subgroup
            let ord = g.element_order(x);
            let mut y = x;
            for m in 1..ord {
                if gcd(m, ord) == 1 {
                    covered[y] = true;
                }
                y = g.mul(y, x);
            }
            if seen.insert(k.elements().to_vec()) {
                found.push((k, more));
            }
        }
        i += 1;
    }
    let mut out: Vec<Subgroup> = found.into_iter().map(|(h, _)| h).collect();
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
