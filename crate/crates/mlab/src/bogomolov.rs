//! The dual Bogomolov multiplier: classes of H^2(G, Q/Z) that die on
//! every bicyclic subgroup, computed by iterative refinement against the
//! bicyclic (or, for the cross-check, all abelian) subgroup family.

use std::sync::Arc;

use crate::cohomology::{CohCtx, DEFAULT_COHOMOLOGY_CAP};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::linalg::modmat::{constrained_kernel, quotient_invariants, ModMatrix, SubmoduleModE};
use crate::linalg::AbelianInvariants;

pub struct Sha2Result {
    pub invariants: AbelianInvariants,
    /// Representatives in the cocycle coordinates of the ambient space.
    pub class_gens: Vec<Vec<i64>>,
}

/// Refine `cur` (cocycle reps of classes of `h`) to those whose
/// restriction to each listed subgroup is a zero class there.
fn refine_by_vanishing(
    ctx: &mut CohCtx,
    h: &Subgroup,
    mut cur: Vec<Vec<i64>>,
    family: &[Subgroup],
) -> Result<Vec<Vec<i64>>> {
    let e = ctx.e;
    let hdim = ctx.space_for(h)?.space.dim;
    for a in family {
        if cur.is_empty() {
            break;
        }
        if a.is_trivial() {
            continue;
        }
        let res = ctx.restriction_map(h, a)?;
        let asp = ctx.space_for(a)?;
        let adim = asp.space.dim;
        let mut m = ModMatrix::zero(e, adim.max(1), cur.len().max(1));
        for (j, v) in cur.iter().enumerate() {
            let img = res.apply(v);
            for i in 0..adim {
                m[(i, j)] = img[i];
            }
        }
        let cb = asp.space.coboundaries();
        let b = if cb.gens.is_empty() {
            ModMatrix::zero(e, adim.max(1), 1)
        } else {
            let mut b = ModMatrix::zero(e, adim.max(1), cb.gens.len());
            for (j, w) in cb.gens.iter().enumerate() {
                for i in 0..adim {
                    b[(i, j)] = w[i];
                }
            }
            b
        };
        let coeffs = constrained_kernel(&m, &b, e);
        let mut next = Vec::new();
        for cvec in &coeffs.gens {
            let mut v = vec![0i64; hdim];
            for (j, &cj) in cvec.iter().enumerate() {
                if cj == 0 || j >= cur.len() {
                    continue;
                }
                for (vi, &x) in cur[j].iter().enumerate() {
                    v[vi] = (v[vi] + cj * x) % e;
                }
            }
            for x in v.iter_mut() {
                *x = x.rem_euclid(e);
            }
            next.push(v);
        }
        cur = SubmoduleModE::from_gens(e, hdim, next).gens;
    }
    Ok(cur)
}

/// Bicyclic subgroups of `h`, expressed in ambient indices.
fn bicyclic_in(group: &GroupTable, h: &Subgroup) -> Vec<Subgroup> {
    let (table, embed) = h.to_table(group, "bic_scan");
    table
        .bicyclic_subgroups()
        .into_iter()
        .map(|s| {
            let lifted: Vec<usize> = s.elements.iter().map(|&x| embed[x]).collect();
            Subgroup::new(group, lifted).expect("lift of a subgroup")
        })
        .collect()
}

/// Spanning cocycle reps of the vanishing-on-bicyclics classes of `h`,
/// inside an existing context.
pub fn sha2_gens_in_ctx(ctx: &mut CohCtx, h: &Subgroup) -> Result<Vec<Vec<i64>>> {
    let family = bicyclic_in(&Arc::clone(&ctx.group), h);
    let start = ctx.space_for(h)?.space.z2.gens.clone();
    refine_by_vanishing(ctx, h, start, &family)
}

pub fn sha2_in_ctx(ctx: &mut CohCtx, h: &Subgroup) -> Result<Sha2Result> {
    let gens = sha2_gens_in_ctx(ctx, h)?;
    let sp = ctx.space_for(h)?;
    let cb = sp.space.coboundaries();
    let span = SubmoduleModE::from_gens(ctx.e, sp.space.dim, gens.clone()).sum(&cb);
    let invariants = quotient_invariants(&span, &cb)?;
    Ok(Sha2Result {
        invariants,
        class_gens: gens,
    })
}

/// Invariants of the dual Bogomolov multiplier of `group`.
pub fn sha2(group: &Arc<GroupTable>, cap: usize) -> Result<AbelianInvariants> {
    let mut ctx = CohCtx::natural(group, cap);
    Ok(sha2_in_ctx(&mut ctx, &group.full_subgroup())?.invariants)
}

pub fn bogomolov_multiplier(group: &Arc<GroupTable>) -> Result<AbelianInvariants> {
    sha2(group, DEFAULT_COHOMOLOGY_CAP)
}

/// Independent cross-check: refine against every abelian subgroup instead
/// of only the bicyclic ones. Exponentially slower; keep orders small.
pub fn sha2_via_all_abelian(group: &Arc<GroupTable>, cap: usize) -> Result<AbelianInvariants> {
    let mut ctx = CohCtx::natural(group, cap);
    let h = group.full_subgroup();
    let family: Vec<Subgroup> = group
        .all_subgroups()
        .into_iter()
        .filter(|s| s.is_abelian(group))
        .collect();
    let start = ctx.space_for(&h)?.space.z2.gens.clone();
    let gens = refine_by_vanishing(&mut ctx, &h, start, &family)?;
    let sp = ctx.space_for(&h)?;
    let cb = sp.space.coboundaries();
    let span = SubmoduleModE::from_gens(ctx.e, sp.space.dim, gens).sum(&cb);
    quotient_invariants(&span, &cb)
}

/// A finitely generated module over a finite acting group: spanning reps
/// in some cocycle coordinate space, the zero-class submodule, and a dense
/// matrix per acting generator.
pub struct ModuleAction {
    pub e: i64,
    pub dim: usize,
    pub module: SubmoduleModE,
    pub cb: SubmoduleModE,
    pub actions: Vec<ModMatrix>,
}

impl ModuleAction {
    pub fn invariants(&self) -> Result<AbelianInvariants> {
        quotient_invariants(&self.module.sum(&self.cb), &self.cb)
    }

    /// span{a_g(m) - m} over the acting generators, plus the zero classes,
    /// iterated `depth` times. Generators of the acting group suffice:
    /// a_{gh}(m) - m = a_g(a_h(m) - m) + (a_g(m) - m).
    pub fn commutator(&self, depth: usize) -> SubmoduleModE {
        let mut cur = self.module.clone();
        for _ in 0..depth {
            let mut gens = Vec::new();
            for m in &cur.gens {
                for a in &self.actions {
                    let img = a.apply(m);
                    let diff: Vec<i64> = img
                        .iter()
                        .zip(m.iter())
                        .map(|(&x, &y)| (x - y).rem_euclid(self.e))
                        .collect();
                    gens.push(diff);
                }
            }
            let next = SubmoduleModE::from_gens(self.e, self.dim, gens).sum(&self.cb);
            cur = next;
        }
        cur
    }

    pub fn quotient_by_commutator(&self, depth: usize) -> Result<AbelianInvariants> {
        quotient_invariants(&self.module.sum(&self.cb), &self.commutator(depth))
    }
}

/// The vanishing-on-bicyclics classes of a normal subgroup `q`, together
/// with the conjugation action of `group`. Errors with SubmoduleViolation
/// if the action fails to preserve the submodule (it never should).
pub fn sha2_with_action(
    group: &Arc<GroupTable>,
    q: &Subgroup,
    cap: usize,
) -> Result<ModuleAction> {
    if !group.is_normal(q) {
        return Err(Error::NotNormal);
    }
    let e = (q.order() as i64).max(2);
    let mut ctx = CohCtx::new(group, e, cap);
    let gens = sha2_gens_in_ctx(&mut ctx, q)?;
    let sp = ctx.space_for(q)?;
    let dim = sp.space.dim;
    let cb = sp.space.coboundaries();
    let module = SubmoduleModE::from_gens(e, dim, gens);
    let mut actions = Vec::new();
    let member = {
        let r = module.sum(&cb).reducer();
        move |v: &[i64]| r.contains(v)
    };
    for g in group.generating_set() {
        let map = ctx.action_on_h2(q, g)?;
        let mat = map.to_dense();
        for m in &module.gens {
            if !member(&mat.apply(m)) {
                return Err(Error::SubmoduleViolation);
            }
        }
        actions.push(mat);
    }
    Ok(ModuleAction {
        e,
        dim,
        module,
        cb,
        actions,
    })
}
