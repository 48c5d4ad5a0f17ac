//! Finitely presented modules over `(Z/p^k)[H]`: cokernels of a relation matrix
//! with one action matrix per group generator.

mod aid;
mod sub;
mod tate;

pub use aid::{build_aid, build_fractional_lattice, fractional_lattice_minus, AidData, GPhi};
pub use sub::{sublattice, Sublattice};
pub use tate::{tate_cohomology_cp, tau_projectors, TateCohomology};

use std::sync::Arc;

use crate::chainring::{smith_normal_form, teichmuller, ChainMatrix, RingCtx};
use crate::error::{Error, Result};
use crate::group::{Family, GroupModel};

#[derive(Clone, Debug)]
pub struct LambdaModule {
    ctx: RingCtx,
    group: Arc<GroupModel>,
    relations: ChainMatrix,
    actions: Vec<ChainMatrix>,
}

impl PartialEq for LambdaModule {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && *self.group == *other.group
            && self.relations == other.relations
            && self.actions == other.actions
    }
}

impl LambdaModule {
    /// Validated constructor. All matrices are brought to their common trusted precision.
    pub fn new(group: Arc<GroupModel>, relations: ChainMatrix, actions: Vec<ChainMatrix>) -> Result<Self> {
        let m = Self::new_unchecked(group, relations, actions)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Shape checks only; the group relations are trusted.
    pub(crate) fn new_unchecked(group: Arc<GroupModel>, relations: ChainMatrix, actions: Vec<ChainMatrix>) -> Result<Self> {
        let n = relations.rows();
        if actions.len() != group.generators().len() {
            return Err(Error::Dimension(format!(
                "{} action matrices for {} generators",
                actions.len(),
                group.generators().len()
            )));
        }
        if actions.iter().any(|a| a.rows() != n || a.cols() != n) {
            return Err(Error::Dimension(format!("action matrices must be {n}x{n}")));
        }
        let v = actions.iter().map(|a| a.valid_prec()).fold(relations.valid_prec(), u32::min);
        let relations = relations.reduce_to(v);
        let actions: Vec<ChainMatrix> = actions.iter().map(|a| a.reduce_to(v)).collect();
        Ok(LambdaModule { ctx: *relations.ctx(), group, relations, actions })
    }

    /// A lattice (no relations).
    pub fn lattice(group: Arc<GroupModel>, actions: Vec<ChainMatrix>) -> Result<Self> {
        let n = actions.first().map_or(0, |a| a.rows());
        let ctx = actions.first().map(|a| *a.ctx()).ok_or_else(|| Error::Dimension("no generators".into()))?;
        Self::new(group, ChainMatrix::zeros(ctx, n, 0), actions)
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn group(&self) -> &Arc<GroupModel> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &ChainMatrix {
        &self.relations
    }

    pub fn actions(&self) -> &[ChainMatrix] {
        &self.actions
    }

    /// Trusted precision (the ring of all stored matrices).
    pub fn precision(&self) -> u32 {
        self.ctx.k()
    }

    pub fn is_lattice(&self) -> bool {
        self.relations.is_zero()
    }

    /// Action matrix of a named generator (`sigma`, `tau`, `j`) of a structured group.
    pub fn action_named(&self, name: &str) -> Option<&ChainMatrix> {
        let fam = self.group.family()?;
        let slot = fam.generator_names().iter().position(|&n| n == name)?;
        self.actions.get(slot)
    }

    pub fn sigma(&self) -> Option<&ChainMatrix> {
        self.action_named("sigma")
    }

    pub fn tau(&self) -> Option<&ChainMatrix> {
        self.action_named("tau")
    }

    pub fn j(&self) -> Option<&ChainMatrix> {
        self.action_named("j")
    }

    /// Whether every column of `m` vanishes in the module.
    fn vanishes(&self, m: &ChainMatrix) -> bool {
        if self.relations.cols() == 0 || self.relations.is_zero() {
            m.is_zero()
        } else {
            self.relations.spans(m)
        }
    }

    /// Checks relation stability and the defining relations of the group.
    pub fn check_relations(&self) -> Result<()> {
        for (slot, a) in self.actions.iter().enumerate() {
            if self.relations.cols() > 0 && !self.vanishes(&a.mul(&self.relations)) {
                return Err(Error::InvalidInput(format!("generator {slot} does not preserve the relations")));
            }
        }
        let id = ChainMatrix::identity(self.ctx, self.rank());
        let fail = |what: &str| Err(Error::InvalidInput(format!("action violates {what}")));
        if let Some(st) = self.group.structure() {
            let pr = st.params;
            if let Some(s) = self.sigma() {
                if !self.vanishes(&s.pow(pr.p).sub(&id)) {
                    return fail("sigma^p = 1");
                }
                let t = self.tau().expect("tau");
                if !self.vanishes(&t.mul(s).sub(&s.pow(pr.s).mul(t))) {
                    return fail("tau sigma = sigma^s tau");
                }
            }
            let t = self.tau().expect("tau");
            if !self.vanishes(&t.pow(pr.r).sub(&id)) {
                return fail("tau^r = 1");
            }
            if let Some(j) = self.j() {
                if !self.vanishes(&j.mul(j).sub(&id)) {
                    return fail("j^2 = 1");
                }
                for a in &self.actions {
                    if !self.vanishes(&j.mul(a).sub(&a.mul(j))) {
                        return fail("j central");
                    }
                }
            }
            return Ok(());
        }
        // generic group: the spanning-tree extension must be a homomorphism
        let elems = self.element_actions();
        let g = &self.group;
        for x in 0..g.order() {
            for (slot, &gen) in g.generators().iter().enumerate() {
                let lhs = self.actions[slot].mul(&elems[x]);
                if !self.vanishes(&lhs.sub(&elems[g.mul(gen, x)])) {
                    return fail("the multiplication table");
                }
            }
        }
        Ok(())
    }

    /// Action matrix of every group element, indexed by element.
    pub fn element_actions(&self) -> Vec<ChainMatrix> {
        let g = &self.group;
        let mut out = vec![ChainMatrix::identity(self.ctx, self.rank()); g.order()];
        for &(x, slot, pred) in g.bfs_tree() {
            out[x] = self.actions[slot].mul(&out[pred]);
        }
        out
    }

    /// The regular module `(Z/p^k)[H]` with basis the group elements.
    pub fn group_ring(group: Arc<GroupModel>, ctx: RingCtx) -> Self {
        let n = group.order();
        let actions = group
            .generators()
            .iter()
            .map(|&g| ChainMatrix::from_fn(ctx, n, n, |i, j| u64::from(group.mul(g, j) == i)))
            .collect();
        LambdaModule { ctx, group, relations: ChainMatrix::zeros(ctx, n, 0), actions }
    }

    /// Quotient by the submodule generated by the columns of `vectors`.
    pub fn quotient_by_submodule(&self, vectors: &ChainMatrix) -> Result<Self> {
        if vectors.rows() != self.rank() {
            return Err(Error::Dimension("vectors have the wrong length".into()));
        }
        let v = self.precision().min(vectors.valid_prec());
        let me = self.at_precision(v);
        let span = me.submodule_closure(&vectors.reduce_to(v));
        let relations = me.relations.hstack(&span);
        Ok(LambdaModule { ctx: me.ctx, group: me.group.clone(), relations, actions: me.actions.clone() })
    }

    /// Quotient of a regular module by the left ideal generated by group-ring elements
    /// (each given by its coefficient vector over the group elements).
    pub fn quotient_by_left_ideal(&self, gens: &[Vec<i64>]) -> Result<Self> {
        let cols: Vec<Vec<u64>> = gens.iter().map(|g| g.iter().map(|&x| self.ctx.reduce_i64(x)).collect()).collect();
        self.quotient_by_submodule(&ChainMatrix::from_columns(self.ctx, self.rank(), &cols))
    }

    /// Smallest submodule containing the columns, as a reduced generating matrix.
    pub fn submodule_closure(&self, vectors: &ChainMatrix) -> ChainMatrix {
        let mut span = reduce_span(vectors);
        let mut len = span.column_length();
        loop {
            let mut all = span.clone();
            for a in &self.actions {
                all = all.hstack(&a.mul(&span));
            }
            let next = reduce_span(&all);
            let l = next.column_length();
            if l == len {
                return next;
            }
            span = next;
            len = l;
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if *self.group != *other.group {
            return Err(Error::InvalidInput("direct sum of modules over different groups".into()));
        }
        let v = self.precision().min(other.precision());
        let a = self.at_precision(v);
        let b = other.at_precision(v);
        let relations = a.relations.direct_sum(&b.relations);
        let actions = a.actions.iter().zip(&b.actions).map(|(x, y)| x.direct_sum(y)).collect();
        Ok(LambdaModule { ctx: a.ctx, group: a.group.clone(), relations, actions })
    }

    pub fn direct_sum_all(parts: &[LambdaModule]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
        rest.iter().try_fold(first.clone(), |acc, m| acc.direct_sum(m))
    }

    /// Reduce to fewer trusted digits.
    pub fn at_precision(&self, v: u32) -> Self {
        if v == self.precision() {
            return self.clone();
        }
        LambdaModule {
            ctx: self.ctx.with_precision(v),
            group: self.group.clone(),
            relations: self.relations.reduce_to(v),
            actions: self.actions.iter().map(|a| a.reduce_to(v)).collect(),
        }
    }

    /// Reinterpret an exactly known module at higher precision.
    pub(crate) fn lift_exact(&self, k: u32) -> Self {
        let ctx = self.ctx.with_precision(k);
        LambdaModule {
            ctx,
            group: self.group.clone(),
            relations: self.relations.lift_exact(ctx),
            actions: self.actions.iter().map(|a| a.lift_exact(ctx)).collect(),
        }
    }

    /// Change of basis `x ↦ P x` (P invertible): actions become `P A P^{-1}`.
    pub fn base_change(&self, p: &ChainMatrix) -> Result<Self> {
        let p = p.reduce_to(self.precision().min(p.valid_prec()));
        let me = self.at_precision(p.valid_prec());
        let pinv = p.inverse().ok_or_else(|| Error::InvalidInput("base change is not invertible".into()))?;
        Ok(LambdaModule {
            ctx: me.ctx,
            group: me.group.clone(),
            relations: p.mul(&me.relations),
            actions: me.actions.iter().map(|a| p.mul(a).mul(&pinv)).collect(),
        })
    }

    /// Same module with an equivalent presentation on as few generators as possible:
    /// unit relations are eliminated, and the remaining relations are diagonal.
    pub fn minimal_presentation(&self) -> Self {
        let v = self.precision();
        if self.relations.cols() == 0 {
            return self.clone();
        }
        let sf = smith_normal_form(&self.relations);
        // coordinates y = U^{-1} x; relations become diag(p^{d_i})
        let n = self.rank();
        let keep: Vec<usize> = (0..n).filter(|&i| sf.exponents.get(i).copied().unwrap_or(v) > 0).collect();
        let uinv_rows = sf.u_inv.select_rows(&keep);
        let ucols = sf.u.select_columns(&keep);
        let actions = self.actions.iter().map(|a| uinv_rows.mul(a).mul(&ucols)).collect();
        let torsion: Vec<(usize, u32)> = keep
            .iter()
            .enumerate()
            .filter_map(|(new, &old)| {
                let d = sf.exponents.get(old).copied().unwrap_or(v);
                (d < v).then_some((new, d))
            })
            .collect();
        let mut rel = ChainMatrix::zeros(self.ctx, keep.len(), torsion.len());
        for (c, &(row, d)) in torsion.iter().enumerate() {
            rel.set(row, c, self.ctx.pow_p(d));
        }
        LambdaModule { ctx: self.ctx, group: self.group.clone(), relations: rel, actions }
    }

    /// Exponents `d_i` of the invariant factors `p^{d_i}` of the underlying abelian group;
    /// `precision()` marks a free summand.
    pub fn abelian_invariants(&self) -> Vec<u32> {
        let v = self.precision();
        let n = self.rank();
        if self.relations.cols() == 0 {
            return vec![v; n];
        }
        let sf = smith_normal_form(&self.relations);
        (0..n).map(|i| sf.exponents.get(i).copied().unwrap_or(v)).filter(|&d| d > 0).collect()
    }

    /// `p^e` kills the module; `None` if it has a free part.
    pub fn exponent(&self) -> Option<u32> {
        let inv = self.abelian_invariants();
        if inv.iter().any(|&d| d >= self.precision()) {
            None
        } else {
            Some(inv.into_iter().max().unwrap_or(0))
        }
    }

    /// Minus part `M / (1 + j) M`, presented over `Γ`.
    pub fn minus_part(&self) -> Result<Self> {
        let st = *self.group.require_structure()?;
        if st.family != Family::G {
            return Err(Error::InvalidInput("minus part needs the group Γ × ⟨j⟩".into()));
        }
        let j = self.j().expect("j");
        let id = ChainMatrix::identity(self.ctx, self.rank());
        let q = self.quotient_raw(&id.add(j));
        let gamma = Arc::new(GroupModel::make(Family::Gamma, st.params));
        let actions = vec![q.actions[0].clone(), q.actions[1].clone()];
        let m = LambdaModule { ctx: q.ctx, group: gamma, relations: q.relations, actions };
        Ok(m.minimal_presentation())
    }

    /// Quotient by the span of columns already known to be a submodule.
    fn quotient_raw(&self, span: &ChainMatrix) -> Self {
        LambdaModule {
            ctx: self.ctx,
            group: self.group.clone(),
            relations: self.relations.hstack(span),
            actions: self.actions.clone(),
        }
    }

    /// Twist by the `i`-th power of the Teichmüller character: `τ ↦ ρ^i τ`.
    pub fn tate_twist(&self, i: i64) -> Result<Self> {
        let st = *self.group.require_structure()?;
        let slot = st.family.generator_names().iter().position(|&n| n == "tau").expect("tau");
        let rho = teichmuller(st.params.s as i64, &self.ctx)?;
        let e = i.rem_euclid(st.params.r as i64) as u64;
        let c = self.ctx.pow(rho, e);
        let mut actions = self.actions.clone();
        actions[slot] = actions[slot].scale(c);
        Ok(LambdaModule { ctx: self.ctx, group: self.group.clone(), relations: self.relations.clone(), actions })
    }

    /// Restriction to `Γ` of a module over `G` (drops the `j` action).
    pub fn restrict_to_gamma(&self) -> Result<Self> {
        let st = *self.group.require_structure()?;
        if st.family != Family::G {
            return Err(Error::InvalidInput("restriction needs the group Γ × ⟨j⟩".into()));
        }
        let gamma = Arc::new(GroupModel::make(Family::Gamma, st.params));
        Ok(LambdaModule {
            ctx: self.ctx,
            group: gamma,
            relations: self.relations.clone(),
            actions: self.actions[..2].to_vec(),
        })
    }

    /// Induction `Z[G] ⊗_{Z[D]} N` for a module `N` over the group `D` embedded in `G`
    /// by `embedding` (D-element index ↦ G-element index). Coset representatives are
    /// the minimal-index elements of their cosets.
    pub fn induce(&self, g: Arc<GroupModel>, embedding: &[usize]) -> Result<Self> {
        let d = &self.group;
        if embedding.len() != d.order() {
            return Err(Error::Dimension("embedding does not cover the subgroup".into()));
        }
        let mut in_d = vec![usize::MAX; g.order()];
        for (x, &y) in embedding.iter().enumerate() {
            if y >= g.order() || in_d[y] != usize::MAX {
                return Err(Error::InvalidInput("embedding is not injective".into()));
            }
            in_d[y] = x;
        }
        for x in 0..d.order() {
            for y in 0..d.order() {
                if embedding[d.mul(x, y)] != g.mul(embedding[x], embedding[y]) {
                    return Err(Error::InvalidInput("embedding is not a homomorphism".into()));
                }
            }
        }
        // left cosets x D
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &y in embedding {
                coset_of[g.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        let n = self.rank();
        let cosets = reps.len();
        let elems = self.element_actions();
        let ctx = self.ctx;
        let mut actions = Vec::new();
        for &gen in g.generators() {
            let mut m = ChainMatrix::zeros(ctx, n * cosets, n * cosets);
            for (b, &xb) in reps.iter().enumerate() {
                let y = g.mul(gen, xb);
                let b2 = coset_of[y];
                let dd = in_d[g.mul(g.inv(reps[b2]), y)];
                let block = &elems[dd];
                for i in 0..n {
                    for jj in 0..n {
                        m.set(b2 * n + i, b * n + jj, block.get(i, jj));
                    }
                }
            }
            actions.push(m);
        }
        let mut relations = ChainMatrix::zeros(ctx, 0, 0);
        for _ in 0..cosets {
            relations = relations.direct_sum(&self.relations);
        }
        Ok(LambdaModule { ctx, group: g, relations, actions })
    }
}

/// Replace a generating set by an SNF-reduced one (`U_j p^{d_j}` for nonzero `d_j`).
pub(crate) fn reduce_span(gens: &ChainMatrix) -> ChainMatrix {
    let v = gens.valid_prec();
    let gens = gens.reduce_to(v);
    if gens.cols() == 0 {
        return gens;
    }
    let sf = smith_normal_form(&gens);
    let ctx = *gens.ctx();
    let cols: Vec<Vec<u64>> = sf
        .exponents
        .iter()
        .enumerate()
        .filter(|(_, &d)| d < v)
        .map(|(i, &d)| sf.u.column(i).into_iter().map(|x| ctx.mul(x, ctx.pow_p(d))).collect())
        .collect();
    ChainMatrix::from_columns(ctx, gens.rows(), &cols)
}
