//! Finite groups as multiplication tables, with structured constructors for
//! `Γ = C_p ⋊ C_r`, `G = Γ × ⟨j⟩` and the quotients `C_r`, `C_r × ⟨j⟩`.

mod enumerate;
mod pairs;
mod predicates;

pub use enumerate::enumerate_subgroups;
pub use pairs::{classify_pair, enumerate_relevant_pairs, relevant_pair_count, PairCase, PairDI, VanishReason};
pub use predicates::{
    conjugates_generate, going_up_check, is_supersolvable, local_witness, Condition, Ell, GoingUp,
    LocalWitness,
};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chainring::is_prime;
use crate::error::{Error, Result};

/// Which member of the metacyclic family a structured group is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `C_p ⋊ C_r`, generators σ, τ.
    Gamma,
    /// `Γ × ⟨j⟩`, generators σ, τ, j.
    G,
    /// `C_r`, generator τ.
    Cr,
    /// `C_r × ⟨j⟩`, generators τ, j.
    Crxj,
}

impl Family {
    pub fn has_sigma(self) -> bool {
        matches!(self, Family::Gamma | Family::G)
    }

    pub fn has_j(self) -> bool {
        matches!(self, Family::G | Family::Crxj)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::G => "g",
            Family::Cr => "cr",
            Family::Crxj => "crxj",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gamma" => Some(Family::Gamma),
            "g" => Some(Family::G),
            "cr" => Some(Family::Cr),
            "crxj" => Some(Family::Crxj),
            _ => None,
        }
    }

    /// Names of the action generators, in the order modules store them.
    pub fn generator_names(self) -> &'static [&'static str] {
        match self {
            Family::Gamma => &["sigma", "tau"],
            Family::G => &["sigma", "tau", "j"],
            Family::Cr => &["tau"],
            Family::Crxj => &["tau", "j"],
        }
    }
}

/// Parameters `(p, r, s)` with `s` of exact multiplicative order `r` mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetacyclicParams {
    pub p: u64,
    pub r: u64,
    pub s: u64,
}

pub(crate) fn mult_order(s: u64, p: u64) -> Option<u64> {
    if s % p == 0 {
        return None;
    }
    let mut x = s % p;
    let mut n = 1;
    while x != 1 {
        x = x * s % p;
        n += 1;
    }
    Some(n)
}

impl MetacyclicParams {
    pub fn new(p: u64, r: u64, s: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidParameters(format!("p = {p} is not an odd prime")));
        }
        if r == 0 || (p - 1) % r != 0 {
            return Err(Error::InvalidParameters(format!("r = {r} does not divide p - 1 = {}", p - 1)));
        }
        match mult_order(s, p) {
            Some(o) if o == r => Ok(MetacyclicParams { p, r, s: s % p }),
            Some(o) => Err(Error::InvalidParameters(format!(
                "s = {s} has multiplicative order {o} mod {p}, expected {r}"
            ))),
            None => Err(Error::InvalidParameters(format!("s = {s} is not a unit mod {p}"))),
        }
    }

    /// Smallest `s` in `[1, p)` of exact order `r`.
    pub fn with_default_s(p: u64, r: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidParameters(format!("p = {p} is not an odd prime")));
        }
        if r == 0 || (p - 1) % r != 0 {
            return Err(Error::InvalidParameters(format!("r = {r} does not divide p - 1 = {}", p - 1)));
        }
        let s = (1..p).find(|&s| mult_order(s, p) == Some(r)).expect("cyclic unit group");
        Self::new(p, r, s)
    }
}

/// Structure labels: element `σ^a τ^b j^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    pub family: Family,
    pub params: MetacyclicParams,
}

impl Structure {
    fn sigma_order(&self) -> u64 {
        if self.family.has_sigma() {
            self.params.p
        } else {
            1
        }
    }

    fn j_order(&self) -> u64 {
        if self.family.has_j() {
            2
        } else {
            1
        }
    }

    pub fn order(&self) -> usize {
        (self.sigma_order() * self.params.r * self.j_order()) as usize
    }

    pub fn index(&self, a: u64, b: u64, c: u64) -> usize {
        let pa = self.sigma_order();
        let r = self.params.r;
        ((a % pa) + pa * ((b % r) + r * (c % self.j_order()))) as usize
    }

    pub fn label(&self, idx: usize) -> (u64, u64, u64) {
        let pa = self.sigma_order();
        let r = self.params.r;
        let idx = idx as u64;
        (idx % pa, (idx / pa) % r, idx / (pa * r))
    }

    /// `σ^a τ^b j^c · σ^x τ^y j^z = σ^{a + s^b x} τ^{b+y} j^{c+z}`.
    fn multiply(&self, g: usize, h: usize) -> usize {
        let (a, b, c) = self.label(g);
        let (x, y, z) = self.label(h);
        let pa = self.sigma_order();
        let sb = pow_mod(self.params.s, b, pa.max(1));
        self.index((a + sb * x) % pa.max(1), b + y, c + z)
    }
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// A finite group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupModel {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    structure: Option<Structure>,
    generators: Vec<usize>,
    /// Breadth-first spanning tree of the Cayley graph: `(element, generator slot, predecessor)`
    /// with `element = generator · predecessor`.
    bfs: Vec<(usize, usize, usize)>,
}

impl fmt::Debug for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.structure {
            Some(s) => write!(
                f,
                "GroupModel({:?}, p={}, r={}, s={}, order {})",
                s.family, s.params.p, s.params.r, s.params.s, self.order
            ),
            None => write!(f, "GroupModel(order {})", self.order),
        }
    }
}

impl GroupModel {
    fn from_parts(order: usize, table: Vec<u32>, structure: Option<Structure>, generators: Vec<usize>) -> Result<Self> {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidInput("table has no identity".into()))?;
        let mut inverse = vec![u32::MAX; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| table[x * order + y] as usize == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {x} has no inverse")))?;
            if table[y * order + x] as usize != identity {
                return Err(Error::InvalidInput(format!("element {x} has no two-sided inverse")));
            }
            inverse[x] = y as u32;
        }
        let mut g = GroupModel { order, table, identity, inverse, structure, generators, bfs: Vec::new() };
        if g.generators.is_empty() {
            g.generators = g.greedy_generators();
        }
        g.check_associative()?;
        g.build_bfs()?;
        Ok(g)
    }

    /// Light's test: associativity against a generating set is enough.
    fn check_associative(&self) -> Result<()> {
        for &gen in &self.generators {
            for x in 0..self.order {
                for y in 0..self.order {
                    if self.mul(self.mul(x, y), gen) != self.mul(x, self.mul(y, gen)) {
                        return Err(Error::InvalidInput(format!("table is not associative at ({x}, {y}, {gen})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(self);
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = Subgroup::generated_by(self, &gens);
            }
        }
        gens
    }

    fn build_bfs(&mut self) -> Result<()> {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::new();
        seen[self.identity] = true;
        queue.push_back(self.identity);
        let mut bfs = Vec::with_capacity(self.order);
        while let Some(h) = queue.pop_front() {
            for (slot, &g) in self.generators.iter().enumerate() {
                let x = self.mul(g, h);
                if !seen[x] {
                    seen[x] = true;
                    bfs.push((x, slot, h));
                    queue.push_back(x);
                }
            }
        }
        if bfs.len() + 1 != self.order {
            return Err(Error::InvalidInput("generators do not generate the group".into()));
        }
        self.bfs = bfs;
        Ok(())
    }

    /// Generic group from a Cayley table (`table[a][b] = a·b`).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!("row {i} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidInput(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                let x = flat[i * n + j] as usize;
                if seen[x] {
                    return Err(Error::InvalidInput(format!("row {i} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        Self::from_parts(n, flat, None, Vec::new())
    }

    /// The permutation group generated by the given permutations of `0..n`.
    /// Element 0 is the identity; composition is `(a·b)(x) = a(b(x))`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let n = gens.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..n).collect();
        let mut elems = vec![id.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(id, 0usize);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let prod: Vec<usize> = (0..n).map(|x| g[elems[i][x]]).collect();
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            i += 1;
        }
        let order = elems.len();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let prod: Vec<usize> = (0..n).map(|x| elems[a][elems[b][x]]).collect();
                table[a * order + b] = index[&prod] as u32;
            }
        }
        let generators = gens.iter().map(|g| index[g]).filter(|&x| x != 0).collect();
        Self::from_parts(order, table, None, generators)
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|x| ((x / n + x % n) % n) as u32).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Self::from_parts(n, table, None, gens).expect("cyclic group")
    }

    fn structured(family: Family, params: MetacyclicParams) -> Self {
        let st = Structure { family, params };
        let n = st.order();
        let mut table = vec![0u32; n * n];
        for g in 0..n {
            for h in 0..n {
                table[g * n + h] = st.multiply(g, h) as u32;
            }
        }
        let mut gens = Vec::new();
        if family.has_sigma() {
            gens.push(st.index(1, 0, 0));
        }
        gens.push(st.index(0, 1, 0));
        if family.has_j() {
            gens.push(st.index(0, 0, 1));
        }
        // σ or τ may be trivial (p = 1 never happens, r = 1 can); keep slots anyway
        let mut g = GroupModel { order: n, table, identity: 0, inverse: vec![0; n], structure: Some(st), generators: gens, bfs: Vec::new() };
        for x in 0..n {
            let y = (0..n).find(|&y| g.table[x * n + y] == 0).expect("group");
            g.inverse[x] = y as u32;
        }
        g.build_bfs().expect("structured generators generate");
        g
    }

    /// `Γ = ⟨σ, τ | σ^p = τ^r = 1, τστ^{-1} = σ^s⟩`.
    pub fn make_gamma(p: u64, r: u64, s: u64) -> Result<Self> {
        Ok(Self::structured(Family::Gamma, MetacyclicParams::new(p, r, s)?))
    }

    /// `G = Γ × ⟨j⟩`.
    pub fn make_g(p: u64, r: u64, s: u64) -> Result<Self> {
        Ok(Self::structured(Family::G, MetacyclicParams::new(p, r, s)?))
    }

    /// Structured group of the given family.
    pub fn make(family: Family, params: MetacyclicParams) -> Self {
        Self::structured(family, params)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g h g^{-1}`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, g: usize, n: u64) -> usize {
        (0..n).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Spanning tree of the Cayley graph used to build element actions.
    pub fn bfs_tree(&self) -> &[(usize, usize, usize)] {
        &self.bfs
    }

    pub fn structure(&self) -> Option<&Structure> {
        self.structure.as_ref()
    }

    pub fn family(&self) -> Option<Family> {
        self.structure.map(|s| s.family)
    }

    pub fn params(&self) -> Option<MetacyclicParams> {
        self.structure.map(|s| s.params)
    }

    pub fn require_structure(&self) -> Result<&Structure> {
        self.structure.as_ref().ok_or_else(|| Error::InvalidInput("operation needs a structured metacyclic group".into()))
    }

    pub fn label(&self, g: usize) -> Option<(u64, u64, u64)> {
        self.structure.map(|s| s.label(g))
    }

    pub fn element(&self, a: u64, b: u64, c: u64) -> Result<usize> {
        Ok(self.require_structure()?.index(a, b, c))
    }

    pub fn sigma(&self) -> Option<usize> {
        self.structure.filter(|s| s.family.has_sigma()).map(|s| s.index(1, 0, 0))
    }

    pub fn tau(&self) -> Option<usize> {
        self.structure.map(|s| s.index(0, 1, 0))
    }

    pub fn j(&self) -> Option<usize> {
        self.structure.filter(|s| s.family.has_j()).map(|s| s.index(0, 0, 1))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup `H` as a group in its own right, together with the
    /// embedding of its element indices into `self`.
    pub fn subgroup_model(&self, h: &Subgroup) -> (GroupModel, Vec<usize>) {
        let elems = h.elements().to_vec();
        let n = elems.len();
        let pos = |x: usize| elems.binary_search(&x).expect("closed subgroup");
        let mut table = vec![0u32; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * n + j] = pos(self.mul(a, b)) as u32;
            }
        }
        let model = GroupModel::from_parts(n, table, None, Vec::new()).expect("subgroup is a group");
        (model, elems)
    }
}

/// A subgroup, identified by its sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(g: &GroupModel) -> Self {
        Subgroup { elements: vec![g.identity()] }
    }

    pub fn whole(g: &GroupModel) -> Self {
        Subgroup { elements: (0..g.order()).collect() }
    }

    /// Closure of a set of elements.
    pub fn generated_by(g: &GroupModel, gens: &[usize]) -> Self {
        let mut seen = vec![false; g.order()];
        let mut elems = vec![g.identity()];
        seen[g.identity()] = true;
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Subgroup { elements: elems }
    }

    /// Validate an element list as a subgroup.
    pub fn from_elements(g: &GroupModel, elems: &[usize]) -> Result<Self> {
        let mut e = elems.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidInput("element index out of range".into()));
        }
        let h = Subgroup { elements: e };
        if !h.contains(g.identity()) {
            return Err(Error::InvalidInput("subset misses the identity".into()));
        }
        for &a in &h.elements {
            if !h.contains(g.inv(a)) {
                return Err(Error::InvalidInput("subset not closed under inverses".into()));
            }
            for &b in &h.elements {
                if !h.contains(g.mul(a, b)) {
                    return Err(Error::InvalidInput("subset not closed under multiplication".into()));
                }
            }
        }
        Ok(h)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn conjugate(&self, g: &GroupModel, by: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&x| g.conj(by, x)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    /// Normal in `k` (which must contain `self`).
    pub fn is_normal_in(&self, g: &GroupModel, k: &Subgroup) -> bool {
        k.elements.iter().all(|&x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    /// A small generating set.
    pub fn generators(&self, g: &GroupModel) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(g);
        for &x in &self.elements {
            if !span.contains(x) {
                gens.push(x);
                span = Subgroup::generated_by(g, &gens);
            }
        }
        gens
    }

    pub fn commutator_subgroup(&self, g: &GroupModel) -> Subgroup {
        let mut comms = Vec::new();
        for &a in &self.elements {
            for &b in &self.elements {
                let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        Subgroup::generated_by(g, &comms)
    }

    /// For `self ⊴ d`: an element whose class generates `d / self`, if the quotient is cyclic.
    pub fn cyclic_quotient_generator(&self, g: &GroupModel, d: &Subgroup) -> Option<usize> {
        let m = d.order() / self.order();
        d.elements.iter().copied().find(|&x| self.class_order(g, x) == m)
    }

    /// Order of `x·self` in the quotient (assumes normality).
    pub fn class_order(&self, g: &GroupModel, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while !self.contains(y) {
            y = g.mul(y, x);
            n += 1;
        }
        n
    }

    /// Image under `σ^a τ^b j^c ↦ σ^a τ^b` (structured `G` only).
    pub fn drop_j(&self, g: &GroupModel) -> Result<Subgroup> {
        let st = g.require_structure()?;
        let mut e: Vec<usize> = self
            .elements
            .iter()
            .map(|&x| {
                let (a, b, _) = st.label(x);
                st.index(a, b, 0)
            })
            .collect();
        e.sort_unstable();
        e.dedup();
        Ok(Subgroup { elements: e })
    }
}
