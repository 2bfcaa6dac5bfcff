//! Executable checks of the local-control statements: each one recomputes
//! both sides of an identity on a concrete group and reports PASS, FAIL
//! (with a witness), NOT_APPLICABLE (hypothesis fails) or SKIPPED_BUDGET.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bogomolov::{sha2, sha2_gens_in_ctx, sha2_with_action};
use crate::cohomology::{CohCtx, DEFAULT_COHOMOLOGY_CAP};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::linalg::is_prime;
use crate::linalg::modmat::{quotient_order, SubmoduleModE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable,
    #[serde(rename = "SKIPPED_BUDGET")]
    SkippedBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT_APPLICABLE",
            Status::SkippedBudget => "SKIPPED_BUDGET",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub group: String,
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub witness: Value,
    pub invariants: Value,
}

impl CheckReport {
    fn new(group: &GroupTable, check: &str, params: Value) -> CheckReport {
        CheckReport {
            group: group.name.clone(),
            check: check.to_string(),
            params,
            status: Status::Pass,
            witness: Value::Null,
            invariants: Value::Null,
        }
    }

    fn fail(mut self, witness: Value) -> CheckReport {
        self.status = Status::Fail;
        self.witness = witness;
        self
    }

    fn not_applicable(mut self, witness: Value) -> CheckReport {
        self.status = Status::NotApplicable;
        self.witness = witness;
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.status, self.check, self.group, self.params)
    }
}

const CAP: usize = DEFAULT_COHOMOLOGY_CAP;

fn sub_group(parent: &GroupTable, h: &Subgroup, name: &str) -> Arc<GroupTable> {
    h.to_table(parent, name).0
}

fn sub_params(h: &Subgroup) -> Value {
    json!({"order": h.order(), "elements": h.elements})
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Local control of the Bogomolov data: with P a Sylow p-subgroup of
/// class at most p, the p-parts of sha2(G) and sha2(N_G(P)) agree.
pub fn check_theorem_bogomolov(group: &Arc<GroupTable>, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    let rep = CheckReport::new(group, "theorem_bogomolov", json!({"p": p}));
    let psyl = group.sylow_subgroup(p)?;
    let class = group
        .nilpotency_class(&psyl)
        .expect("p-groups are nilpotent");
    if class as u64 > p {
        return Ok(rep.not_applicable(json!({"hypothesis": "class(P) <= p", "class": class})));
    }
    let norm = group.normalizer(&psyl);
    let lhs = sha2(group, CAP)?.p_part(p)?;
    let ntab = sub_group(group, &norm, &format!("N_{}", group.name));
    let rhs = sha2(&ntab, CAP)?.p_part(p)?;
    let mut rep = rep;
    rep.invariants = json!({"sha2_G_p": lhs.factors, "sha2_N_p": rhs.factors});
    if lhs.factors == rhs.factors {
        Ok(rep)
    } else {
        Ok(rep.fail(json!({"sha2_G_p": lhs.factors, "sha2_N_p": rhs.factors})))
    }
}

/// Holt-style local control of the Schur multiplier: class(P) <= p/2
/// forces equal p-parts of the multipliers of G and N_G(P).
pub fn check_theorem_holt(group: &Arc<GroupTable>, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    let rep = CheckReport::new(group, "theorem_holt", json!({"p": p}));
    let psyl = group.sylow_subgroup(p)?;
    let class = group
        .nilpotency_class(&psyl)
        .expect("p-groups are nilpotent");
    if 2 * class as u64 > p {
        return Ok(rep.not_applicable(json!({"hypothesis": "class(P) <= p/2", "class": class})));
    }
    let norm = group.normalizer(&psyl);
    let lhs = crate::cohomology::schur_h2(group, CAP)?.p_part(p)?;
    let ntab = sub_group(group, &norm, &format!("N_{}", group.name));
    let rhs = crate::cohomology::schur_h2(&ntab, CAP)?.p_part(p)?;
    let mut rep = rep;
    rep.invariants = json!({"h2_G_p": lhs.factors, "h2_N_p": rhs.factors});
    if lhs.factors == rhs.factors {
        Ok(rep)
    } else {
        Ok(rep.fail(json!({"h2_G_p": lhs.factors, "h2_N_p": rhs.factors})))
    }
}

fn contained(parent: &GroupTable, inner: &Subgroup, outer: &Subgroup) -> bool {
    let _ = parent;
    inner.elements.iter().all(|&x| outer.contains(x))
}

/// Commutator inclusions for normal A, B:
/// (1) [[A,A], _n B] lies in the subgroup generated by the
///     [[A,_iB],[A,_{n-i}B]], i = 1..n, reading [A,_0 B] as A;
/// (2) [gamma_n(B), A] lies in [A, _n B].
/// The witness records whether the shifted reading (pairs summing to n-1)
/// gives a different right side.
pub fn check_lemma_comm(
    group: &Arc<GroupTable>,
    a: &Subgroup,
    b: &Subgroup,
    n: usize,
) -> Result<CheckReport> {
    if !group.is_normal(a) || !group.is_normal(b) {
        return Err(Error::NotNormal);
    }
    assert!(n >= 1);
    let params = json!({"A": sub_params(a), "B": sub_params(b), "n": n});
    let rep = CheckReport::new(group, "lemma_comm", params);

    // [A, _i B], with [A, _0 B] = A
    let tower: Vec<Subgroup> = (0..=n).map(|i| group.iterated_commutator(a, b, i)).collect();
    let aa = group.commutator_subgroup(a, a);
    let lhs1 = group.iterated_commutator(&aa, b, n);
    let gen_union = |pairs: &[(usize, usize)]| -> Result<Subgroup> {
        let mut elems = Vec::new();
        for &(i, j) in pairs {
            let c = group.commutator_subgroup(&tower[i], &tower[j]);
            elems.extend_from_slice(&c.elements);
        }
        if elems.is_empty() {
            elems.push(group.identity);
        }
        group.subgroup_generated(&elems)
    };
    let displayed: Vec<(usize, usize)> = (1..=n).map(|i| (i, n - i)).collect();
    let rhs1 = gen_union(&displayed)?;
    let shifted: Vec<(usize, usize)> = (0..n).map(|i| (i, n - 1 - i)).collect();
    let rhs1_shifted = gen_union(&shifted)?;

    let part1 = contained(group, &lhs1, &rhs1);

    let lcs = group.lower_central_series(b);
    let gamma_n = &lcs[(n - 1).min(lcs.len() - 1)];
    let lhs2 = group.commutator_subgroup(gamma_n, a);
    let part2 = contained(group, &lhs2, &tower[n]);

    let mut rep = rep;
    rep.witness = json!({
        "rhs_order": rhs1.order(),
        "rhs_shifted_order": rhs1_shifted.order(),
        "interpretations_differ": rhs1 != rhs1_shifted,
    });
    if part1 && part2 {
        Ok(rep)
    } else {
        let w = json!({
            "part1": part1,
            "part2": part2,
            "lhs1_order": lhs1.order(),
            "rhs1_order": rhs1.order(),
            "lhs2_order": lhs2.order(),
            "rhs2_order": tower[n].order(),
        });
        Ok(rep.fail(w))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultKind {
    Schur,
    Sha,
}

impl fmt::Display for MultKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MultKind::Schur => "schur",
            MultKind::Sha => "sha",
        })
    }
}

/// Restriction identifies the p-part of H^2(G) (or sha2(G)) with the
/// stable subgroup of the p-part of H^2(H) when |G:H| is prime to p.
pub fn check_stable_isomorphism(
    group: &Arc<GroupTable>,
    h: &Subgroup,
    p: u64,
    kind: MultKind,
) -> Result<CheckReport> {
    require_prime(p)?;
    let params = json!({"H": sub_params(h), "p": p, "kind": kind.to_string()});
    let rep = CheckReport::new(group, "stable_isomorphism", params);
    let index = group.order / h.order();
    if index as u64 % p == 0 {
        return Ok(rep.not_applicable(json!({"hypothesis": "p does not divide |G:H|", "index": index})));
    }
    let mut ctx = CohCtx::natural(group, CAP);
    let full = group.full_subgroup();
    let scale_to_p_part = |gens: Vec<Vec<i64>>, e: i64| -> Vec<Vec<i64>> {
        let mut coprime = e;
        while coprime % p as i64 == 0 {
            coprime /= p as i64;
        }
        gens.into_iter()
            .map(|g| g.iter().map(|&x| (x * coprime).rem_euclid(e)).collect())
            .collect()
    };
    let (gens_g, gens_h) = match kind {
        MultKind::Schur => (
            ctx.space_for(&full)?.space.p_part_class_gens(p),
            ctx.space_for(h)?.space.p_part_class_gens(p),
        ),
        MultKind::Sha => {
            let g = sha2_gens_in_ctx(&mut ctx, &full)?;
            let hh = sha2_gens_in_ctx(&mut ctx, h)?;
            (scale_to_p_part(g, ctx.e), scale_to_p_part(hh, ctx.e))
        }
    };
    let gsp = ctx.space_for(&full)?;
    let hsp = ctx.space_for(h)?;
    let cb_g = gsp.space.coboundaries();
    let cb_h = hsp.space.coboundaries();
    let span_g = SubmoduleModE::from_gens(ctx.e, gsp.space.dim, gens_g.clone()).sum(&cb_g);
    let stable = ctx.stable_elements(
        h,
        &SubmoduleModE::from_gens(ctx.e, hsp.space.dim, gens_h),
    )?;
    let span_st = stable.sum(&cb_h);
    let res = ctx.restriction_map(&full, h)?;
    let images: Vec<Vec<i64>> = gens_g.iter().map(|v| res.apply(v)).collect();
    let span_img = SubmoduleModE::from_gens(ctx.e, hsp.space.dim, images).sum(&cb_h);

    let order_g = quotient_order(&span_g, &cb_g)?;
    let order_img = quotient_order(&span_img, &cb_h)?;
    let order_st = quotient_order(&span_st, &cb_h)?;
    let img_in_stable = span_img.gens.iter().all(|v| span_st.contains(v));
    let stable_in_img = span_st.gens.iter().all(|v| span_img.contains(v));

    let mut rep = rep;
    rep.invariants = json!({
        "source_order": order_g.to_string(),
        "image_order": order_img.to_string(),
        "stable_order": order_st.to_string(),
    });
    if order_g == order_img && order_img == order_st && img_in_stable && stable_in_img {
        Ok(rep)
    } else {
        let w = json!({
            "source_order": order_g.to_string(),
            "image_order": order_img.to_string(),
            "stable_order": order_st.to_string(),
            "image_in_stable": img_in_stable,
            "stable_in_image": stable_in_img,
        });
        Ok(rep.fail(w))
    }
}

/// cor composed with res multiplies H^2(G) classes by the index |G:H|.
pub fn check_res_cor_identity(group: &Arc<GroupTable>, h: &Subgroup) -> Result<CheckReport> {
    let params = json!({"H": sub_params(h)});
    let rep = CheckReport::new(group, "res_cor_identity", params);
    let mut ctx = CohCtx::natural(group, CAP);
    let full = group.full_subgroup();
    let res = ctx.restriction_map(&full, h)?;
    let cor = ctx.corestriction_map(&full, h)?;
    let sp = ctx.space_for(&full)?;
    let index = (group.order / h.order()) as i64;
    for (k, v) in sp.space.z2.gens.iter().enumerate() {
        let round = cor.apply(&res.apply(v));
        let scaled: Vec<i64> = v.iter().map(|&x| (index * x).rem_euclid(ctx.e)).collect();
        if !sp.space.classes_equal(&round, &scaled) {
            return Ok(rep.fail(json!({"generator": k, "index": index})));
        }
    }
    Ok(rep)
}

/// Double-coset decomposition of res_A cor^G_H on H^2(H), plus the
/// vanishing of each summand's inner restriction on sha2(H) classes.
pub fn check_mackey(
    group: &Arc<GroupTable>,
    h: &Subgroup,
    a: &Subgroup,
) -> Result<CheckReport> {
    if !a.is_abelian(group) {
        return Err(Error::BadTable("Mackey check needs abelian A".into()));
    }
    let params = json!({"H": sub_params(h), "A": sub_params(a)});
    let rep = CheckReport::new(group, "mackey", params);
    let mut ctx = CohCtx::natural(group, CAP);
    let full = group.full_subgroup();
    let cor_h = ctx.corestriction_map(&full, h)?;
    let res_a = ctx.restriction_map(&full, a)?;
    let asp = ctx.space_for(a)?;
    let reps = group.double_coset_reps(h, a);
    struct Leg {
        conj: crate::cohomology::LinearMapModE,
        res: crate::cohomology::LinearMapModE,
        cor: crate::cohomology::LinearMapModE,
        k_trivial: bool,
    }
    let mut legs = Vec::new();
    for &s in &reps {
        let hs = group.conjugate_subgroup(h, s);
        let k = group.intersect(&hs, a);
        legs.push(Leg {
            conj: ctx.conjugation_map(h, s)?,
            res: ctx.restriction_map(&hs, &k)?,
            cor: ctx.corestriction_map(a, &k)?,
            k_trivial: k.is_trivial(),
        });
    }
    let hsp = ctx.space_for(h)?;
    for (kgen, v) in hsp.space.z2.gens.iter().enumerate() {
        let lhs = res_a.apply(&cor_h.apply(v));
        let mut rhs = vec![0i64; asp.space.dim];
        for leg in &legs {
            let term = leg.cor.apply(&leg.res.apply(&leg.conj.apply(v)));
            for (r, t) in rhs.iter_mut().zip(term.iter()) {
                *r = (*r + t).rem_euclid(ctx.e);
            }
        }
        if !asp.space.classes_equal(&lhs, &rhs) {
            return Ok(rep.fail(json!({"generator": kgen})));
        }
    }
    // each summand's inner restriction kills sha2(H) classes
    let sha_h = sha2_gens_in_ctx(&mut ctx, h)?;
    for (kgen, v) in sha_h.iter().enumerate() {
        for (ls, leg) in legs.iter().enumerate() {
            if leg.k_trivial {
                continue;
            }
            let inner = leg.res.apply(&leg.conj.apply(v));
            if !leg.res.target.space.class_is_zero(&inner) {
                return Ok(rep.fail(json!({"sha_generator": kgen, "double_coset": ls})));
            }
        }
    }
    Ok(rep)
}

/// If [Q, _c G] = 1 then acting on sha2(Q) for c-1 steps lands in zero;
/// c = 1 is reported as a vacuous PASS.
pub fn check_prop_zc(group: &Arc<GroupTable>, q: &Subgroup) -> Result<CheckReport> {
    if !group.is_normal(q) {
        return Err(Error::NotNormal);
    }
    let params = json!({"Q": sub_params(q)});
    let rep = CheckReport::new(group, "prop_zc", params);
    let full = group.full_subgroup();
    let mut c = None;
    let mut x = q.clone();
    for step in 1..=group.order {
        let next = group.commutator_subgroup(&x, &full);
        if next.is_trivial() {
            c = Some(step);
            break;
        }
        if next == x {
            break;
        }
        x = next;
    }
    let c = match c {
        Some(c) => c,
        None => {
            return Ok(rep.not_applicable(json!({"hypothesis": "[Q, _c G] = 1 for some c"})));
        }
    };
    let mut rep = rep;
    rep.params["c"] = json!(c);
    if c == 1 {
        rep.witness = json!({"vacuous": true, "c": 1});
        return Ok(rep);
    }
    let ma = sha2_with_action(group, q, CAP)?;
    let comm = ma.commutator(c - 1);
    let trivial = comm.gens.iter().all(|g| ma.cb.contains(g));
    rep.invariants = json!({"sha2_Q": ma.invariants()?.factors, "c": c});
    if trivial {
        Ok(rep)
    } else {
        let order = quotient_order(&comm.sum(&ma.cb), &ma.cb)?;
        Ok(rep.fail(json!({"commutator_order": order.to_string(), "c": c})))
    }
}

/// [sha2(Q), G] = [sha2(Q), N_G(P)] for a normal p-subgroup Q when the
/// Sylow p-subgroup has class at most p.
pub fn check_cor_ng(group: &Arc<GroupTable>, q: &Subgroup, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    if !group.is_normal(q) {
        return Err(Error::NotNormal);
    }
    let mut m = q.order();
    while m % p as usize == 0 {
        m /= p as usize;
    }
    if m != 1 {
        return Err(Error::BadTable("Q is not a p-subgroup".into()));
    }
    let params = json!({"Q": sub_params(q), "p": p});
    let rep = CheckReport::new(group, "cor_ng", params);
    let psyl = group.sylow_subgroup(p)?;
    let class = group
        .nilpotency_class(&psyl)
        .expect("p-groups are nilpotent");
    if class as u64 > p {
        return Ok(rep.not_applicable(json!({"hypothesis": "class(P) <= p", "class": class})));
    }
    let norm = group.normalizer(&psyl);
    let ma = sha2_with_action(group, q, CAP)?;
    let e = ma.e;
    let comm_over = |gens: &[usize]| -> Result<SubmoduleModE> {
        let mut ctx = CohCtx::new(group, e, CAP);
        let mut out = Vec::new();
        for &g in gens {
            let mat = ctx.action_on_h2(q, g)?.to_dense();
            for mgen in &ma.module.gens {
                let img = mat.apply(mgen);
                let diff: Vec<i64> = img
                    .iter()
                    .zip(mgen.iter())
                    .map(|(&x, &y)| (x - y).rem_euclid(e))
                    .collect();
                out.push(diff);
            }
        }
        Ok(SubmoduleModE::from_gens(e, ma.dim, out).sum(&ma.cb))
    };
    let side_g = comm_over(&group.generating_set())?;
    let side_n = comm_over(&group.subgroup_generating_set(&norm))?;
    let g_in_n = side_g.gens.iter().all(|v| side_n.contains(v));
    let n_in_g = side_n.gens.iter().all(|v| side_g.contains(v));
    let mut rep = rep;
    rep.invariants = json!({
        "comm_G_order": quotient_order(&side_g, &ma.cb)?.to_string(),
        "comm_N_order": quotient_order(&side_n, &ma.cb)?.to_string(),
    });
    if g_in_n && n_in_g {
        Ok(rep)
    } else {
        Ok(rep.fail(json!({"G_in_N": g_in_n, "N_in_G": n_in_g})))
    }
}

/// The ambient conjugation action preserves sha2(Q) for normal Q.
pub fn check_sha_submodule(group: &Arc<GroupTable>, q: &Subgroup) -> Result<CheckReport> {
    if !group.is_normal(q) {
        return Err(Error::NotNormal);
    }
    let params = json!({"Q": sub_params(q)});
    let rep = CheckReport::new(group, "sha_submodule", params);
    match sha2_with_action(group, q, CAP) {
        Ok(ma) => {
            let mut rep = rep;
            rep.invariants = json!({"sha2_Q": ma.invariants()?.factors});
            Ok(rep)
        }
        Err(Error::SubmoduleViolation) => {
            Ok(rep.fail(json!({"violation": "action leaves the submodule"})))
        }
        Err(e) => Err(e),
    }
}

/// Size budgets for the suite runner.
#[derive(Debug, Clone)]
pub struct Budgets {
    /// hard cap for any cohomology computation
    pub coh_cap: usize,
    /// sha-kind stable checks
    pub pair_cap: usize,
    /// Mackey decomposition checks
    pub mackey_cap: usize,
    /// commutator lemma normal-pair scans
    pub lemma_cap: usize,
    /// normal-subgroup module checks (prop_zc, cor_ng, sha_submodule)
    pub normal_cap: usize,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets {
            coh_cap: 64,
            pair_cap: 24,
            mackey_cap: 16,
            lemma_cap: 64,
            normal_cap: 32,
        }
    }
}

enum Job {
    Bogomolov(u64),
    Holt(u64),
    ResCor(Subgroup),
    Mackey(Subgroup, Subgroup),
    Stable(Subgroup, u64, MultKind),
    Lemma(Subgroup, Subgroup, usize),
    PropZc(Subgroup),
    CorNg(Subgroup, u64),
    ShaSubmodule(Subgroup),
    Skipped(&'static str, Value),
}

fn jobs_for(group: &Arc<GroupTable>, b: &Budgets) -> Vec<Job> {
    let mut jobs = Vec::new();
    let n = group.order;
    if n > b.coh_cap {
        jobs.push(Job::Skipped(
            "suite",
            json!({"reason": "order above cohomology budget", "order": n}),
        ));
        return jobs;
    }
    let primes = group.prime_divisors();
    for &p in &primes {
        jobs.push(Job::Bogomolov(p));
        jobs.push(Job::Holt(p));
    }
    for &p in &primes {
        let h = group.sylow_subgroup(p).expect("prime divisor");
        jobs.push(Job::ResCor(h.clone()));
        jobs.push(Job::Stable(h.clone(), p, MultKind::Schur));
        if n <= b.pair_cap {
            jobs.push(Job::Stable(h.clone(), p, MultKind::Sha));
        } else {
            jobs.push(Job::Skipped(
                "stable_isomorphism",
                json!({"kind": "sha", "p": p, "reason": "order above budget", "order": n}),
            ));
        }
        if n <= b.mackey_cap {
            for a in group.bicyclic_subgroups().into_iter().take(3) {
                jobs.push(Job::Mackey(h.clone(), a));
            }
        } else {
            jobs.push(Job::Skipped(
                "mackey",
                json!({"p": p, "reason": "order above budget", "order": n}),
            ));
        }
    }
    if n <= b.lemma_cap || n <= b.normal_cap {
        let normals = group.normal_subgroups();
        if n <= b.lemma_cap {
            let picks: Vec<&Subgroup> = normals.iter().take(6).collect();
            for a in &picks {
                for bb in &picks {
                    for nn in 1..=2usize {
                        jobs.push(Job::Lemma((*a).clone(), (*bb).clone(), nn));
                    }
                }
            }
        }
        if n <= b.normal_cap {
            for q in &normals {
                if q.is_trivial() || q.order() == n {
                    continue;
                }
                jobs.push(Job::PropZc(q.clone()));
                jobs.push(Job::ShaSubmodule(q.clone()));
                let mut m = q.order();
                for &p in &primes {
                    while m % p as usize == 0 {
                        m /= p as usize;
                    }
                    if m == 1 {
                        jobs.push(Job::CorNg(q.clone(), p));
                        break;
                    }
                    m = q.order();
                }
            }
        } else {
            jobs.push(Job::Skipped(
                "normal_subgroup_checks",
                json!({"reason": "order above budget", "order": n}),
            ));
        }
    }
    jobs
}

fn run_job(group: &Arc<GroupTable>, job: &Job) -> Result<CheckReport> {
    match job {
        Job::Bogomolov(p) => check_theorem_bogomolov(group, *p),
        Job::Holt(p) => check_theorem_holt(group, *p),
        Job::ResCor(h) => check_res_cor_identity(group, h),
        Job::Mackey(h, a) => check_mackey(group, h, a),
        Job::Stable(h, p, kind) => check_stable_isomorphism(group, h, *p, *kind),
        Job::Lemma(a, b, n) => check_lemma_comm(group, a, b, *n),
        Job::PropZc(q) => check_prop_zc(group, q),
        Job::CorNg(q, p) => check_cor_ng(group, q, *p),
        Job::ShaSubmodule(q) => check_sha_submodule(group, q),
        Job::Skipped(check, why) => {
            let mut rep = CheckReport::new(group, check, why.clone());
            rep.status = Status::SkippedBudget;
            Ok(rep)
        }
    }
}

/// Run every applicable check over the catalog. Reports come back in a
/// deterministic order (catalog order, then a fixed per-group job order);
/// parallelism never reorders them.
pub fn run_suite(catalog: &[Arc<GroupTable>], budgets: &Budgets) -> Vec<CheckReport> {
    let jobs: Vec<(Arc<GroupTable>, Job)> = catalog
        .iter()
        .flat_map(|g| {
            jobs_for(g, budgets)
                .into_iter()
                .map(move |j| (Arc::clone(g), j))
        })
        .collect();
    jobs.par_iter()
        .map(|(g, job)| {
            run_job(g, job).unwrap_or_else(|e| {
                let mut rep = CheckReport::new(g, "internal", Value::Null);
                rep.status = Status::Fail;
                rep.witness = json!({"error": e.to_string()});
                rep
            })
        })
        .collect()
}

pub fn summarize(reports: &[CheckReport]) -> (usize, usize, usize, usize) {
    let mut c = (0, 0, 0, 0);
    for r in reports {
        match r.status {
            Status::Pass => c.0 += 1,
            Status::Fail => c.1 += 1,
            Status::NotApplicable => c.2 += 1,
            Status::SkippedBudget => c.3 += 1,
        }
    }
    c
}
