//! Acceptance gate: every numbered criterion is one test with its own
//! independently implemented oracle where one is called for.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use mlab::bogomolov::{sha2, sha2_via_all_abelian};
use mlab::catalog::bundled_catalog;
use mlab::cohomology::{cocycle_space, schur_h2, CohCtx};
use mlab::group::GroupTable;
use mlab::verifier::{self, Budgets, MultKind, Status};

const CAP: usize = 64;

fn catalog_groups() -> Vec<Arc<GroupTable>> {
    bundled_catalog()
        .iter()
        .map(|d| d.build(256).expect("bundled group builds"))
        .collect()
}

fn by_name(name: &str) -> Arc<GroupTable> {
    catalog_groups()
        .into_iter()
        .find(|g| g.name == name)
        .unwrap_or_else(|| panic!("no catalog group {name}"))
}

// ---------- test-local dense mod-e span accumulator (oracle) ----------

fn oegcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = oegcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

struct OracleSpan {
    e: i64,
    pivots: Vec<Option<Vec<i64>>>,
}

impl OracleSpan {
    fn new(e: i64, cols: usize) -> OracleSpan {
        OracleSpan {
            e,
            pivots: vec![None; cols],
        }
    }

    fn norm(&self, v: &mut [i64]) {
        for x in v.iter_mut() {
            *x = x.rem_euclid(self.e);
        }
    }

    fn add(&mut self, row: Vec<i64>) {
        let e = self.e;
        let mut stack = vec![row];
        while let Some(mut r) = stack.pop() {
            self.norm(&mut r);
            let lead = match r.iter().position(|&x| x != 0) {
                Some(j) => j,
                None => continue,
            };
            match self.pivots[lead].take() {
                None => {
                    let g = {
                        let (g, _, _) = oegcd(r[lead], e);
                        g
                    };
                    // unit scaling the leading entry down to gcd(r[lead], e)
                    let u = {
                        let (_, inv, _) = oegcd(r[lead] / g, e / g);
                        inv.rem_euclid(e / g)
                    };
                    for x in r.iter_mut() {
                        *x = (*x * u).rem_euclid(e);
                    }
                    debug_assert_eq!(r[lead], g);
                    if e / g > 1 {
                        let ann: Vec<i64> = r.iter().map(|&x| (x * (e / g)).rem_euclid(e)).collect();
                        stack.push(ann);
                    }
                    self.pivots[lead] = Some(r);
                }
                Some(b) => {
                    let v = b[lead];
                    if r[lead] % v == 0 {
                        let q = r[lead] / v;
                        for (x, &y) in r.iter_mut().zip(b.iter()) {
                            *x = (*x - q * y).rem_euclid(e);
                        }
                        self.pivots[lead] = Some(b);
                        stack.push(r);
                    } else {
                        // unimodular 2x2 combine: same span, smaller leading gcd
                        let (g, x, y) = oegcd(v, r[lead]);
                        let newb: Vec<i64> = b
                            .iter()
                            .zip(r.iter())
                            .map(|(&bv, &rv)| (x * bv + y * rv).rem_euclid(e))
                            .collect();
                        let r2: Vec<i64> = b
                            .iter()
                            .zip(r.iter())
                            .map(|(&bv, &rv)| ((v / g) * rv - (r[lead] / g) * bv).rem_euclid(e))
                            .collect();
                        if e / g > 1 {
                            let ann: Vec<i64> =
                                newb.iter().map(|&t| (t * (e / g)).rem_euclid(e)).collect();
                            stack.push(ann);
                        }
                        self.pivots[lead] = Some(newb);
                        stack.push(r2);
                    }
                }
            }
        }
    }

    /// |span| for a basis in echelon form with annihilator closure.
    fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for p in self.pivots.iter().flatten() {
            let lead = p.iter().find(|&&x| x != 0).copied().unwrap();
            let g = oegcd(lead, self.e).0;
            o *= BigUint::from((self.e / g) as u64);
        }
        o
    }
}

/// |M(G)| = |Z^2(G, Z/e)| / |B^2| / |G^ab| with e = |G|, computed with
/// the local accumulator only.
fn oracle_schur_order(g: &GroupTable) -> BigUint {
    let n = g.order;
    if n == 1 {
        return BigUint::one();
    }
    let e = n as i64;
    let nonid: Vec<usize> = (0..n).filter(|&x| x != g.identity).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in nonid.iter().enumerate() {
        pos[x] = i;
    }
    let n1 = nonid.len();
    let dim = n1 * n1;
    let coord = |a: usize, b: usize| -> Option<usize> {
        if a == g.identity || b == g.identity {
            None
        } else {
            Some(pos[a] * n1 + pos[b])
        }
    };
    let mut constraints = OracleSpan::new(e, dim);
    for &ga in &nonid {
        for &h in &nonid {
            for &k in &nonid {
                let mut row = vec![0i64; dim];
                let mut bump = |c: Option<usize>, v: i64| {
                    if let Some(c) = c {
                        row[c] += v;
                    }
                };
                bump(coord(h, k), 1);
                bump(coord(g.mul(ga, h), k), -1);
                bump(coord(ga, g.mul(h, k)), 1);
                bump(coord(ga, h), -1);
                constraints.add(row);
            }
        }
    }
    let z2_order = BigUint::from(e as u64).pow(dim as u32) / constraints.order();

    let mut b2 = OracleSpan::new(e, dim);
    for &x in &nonid {
        let mut row = vec![0i64; dim];
        for &a in &nonid {
            for &b in &nonid {
                let c = coord(a, b).unwrap();
                let mut v = 0i64;
                if a == x {
                    v += 1;
                }
                if b == x {
                    v += 1;
                }
                if g.mul(a, b) == x {
                    v -= 1;
                }
                row[c] = v;
            }
        }
        b2.add(row);
    }
    let h2_mod_e = z2_order / b2.order();
    h2_mod_e / BigUint::from(g.abelianization_order() as u64)
}

/// Cyclic decomposition of an abelian group from its table, through the
/// bigint relation-matrix path only (no cohomology involved).
fn abelian_decomposition(g: &GroupTable) -> Vec<u64> {
    assert!(g.is_abelian());
    use mlab::linalg::IntMatrix;
    use num_bigint::BigInt;
    let n = g.order;
    let mut rel = IntMatrix::zero(n * n + n, n);
    for a in 0..n {
        for b in 0..n {
            let r = a * n + b;
            rel[(r, a)] = rel[(r, a)].clone() + 1;
            rel[(r, b)] = rel[(r, b)].clone() + 1;
            let ab = g.mul(a, b);
            rel[(r, ab)] = rel[(r, ab)].clone() - 1;
        }
    }
    for x in 0..n {
        rel[(n * n + x, x)] = BigInt::from(g.element_order(x) as i64);
    }
    mlab::linalg::abelian_invariants_from_relations(n, &rel)
        .unwrap()
        .factors
}

fn primary_parts(factors: &[u64]) -> BTreeMap<u64, Vec<u64>> {
    let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &f in factors {
        let mut m = f;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                let mut q = 1;
                while m % d == 0 {
                    m /= d;
                    q *= d;
                }
                out.entry(d).or_default().push(q);
            }
            d += 1;
        }
        if m > 1 {
            out.entry(m).or_default().push(m);
        }
    }
    for v in out.values_mut() {
        v.sort_unstable();
    }
    out
}

#[test]
fn criterion_01_schur_spot_values() {
    for n in 1..=12usize {
        let g = by_name(&format!("C{n}"));
        assert!(schur_h2(&g, CAP).unwrap().is_trivial(), "M(C{n})");
    }
    let abelian_cases = [
        ("C2xC2", vec![2u64]),
        ("C3xC3", vec![3]),
        ("C2xC4", vec![2]),
        ("C2xC2xC2", vec![2, 2, 2]),
    ];
    for (name, expected) in abelian_cases {
        let g = by_name(name);
        let got = schur_h2(&g, CAP).unwrap();
        assert_eq!(
            primary_parts(&got.factors),
            primary_parts(&expected),
            "{name}"
        );
        // independent oracle: pairwise gcd formula on the cyclic decomposition
        let decomp = abelian_decomposition(&g);
        let mut formula = Vec::new();
        for i in 0..decomp.len() {
            for j in i + 1..decomp.len() {
                let d = {
                    let (mut a, mut b) = (decomp[i], decomp[j]);
                    while b != 0 {
                        let t = a % b;
                        a = b;
                        b = t;
                    }
                    a
                };
                if d > 1 {
                    formula.push(d);
                }
            }
        }
        assert_eq!(primary_parts(&got.factors), primary_parts(&formula), "{name} formula");
    }
    let nonabelian_cases = [
        ("D4", vec![2u64]),
        ("Q8", vec![]),
        ("S3", vec![]),
        ("A4", vec![2]),
        ("S4", vec![2]),
    ];
    for (name, expected) in nonabelian_cases {
        let g = by_name(name);
        let t = std::time::Instant::now();
        let got = schur_h2(&g, CAP).unwrap();
        let oracle = oracle_schur_order(&g);
        assert!(t.elapsed().as_secs() < 10, "{name} too slow");
        assert_eq!(got.factors, expected, "{name}");
        assert_eq!(BigUint::from(got.order() as u64), oracle, "{name} oracle");
    }
    println!("criterion 1 PASS: Schur multiplier spot values match both oracles");
}

#[test]
fn criterion_02_sha2_oracle_agreement() {
    for g in catalog_groups() {
        if g.is_abelian() {
            assert!(sha2(&g, CAP).unwrap().is_trivial(), "{}", g.name);
        }
    }
    for g in catalog_groups() {
        if g.order > 24 {
            continue;
        }
        let fast = sha2(&g, CAP).unwrap();
        let slow = sha2_via_all_abelian(&g, CAP).unwrap();
        assert_eq!(fast.factors, slow.factors, "{}", g.name);
    }
    println!("criterion 2 PASS: sha2 matches the all-abelian-subgroup oracle");
}

#[test]
fn criterion_03_res_cor_and_mackey() {
    for g in catalog_groups() {
        if g.order > 24 {
            continue;
        }
        let mut ctx = CohCtx::natural(&g, CAP);
        let full = g.full_subgroup();
        for h in g.all_subgroups() {
            let res = ctx.restriction_map(&full, &h).unwrap();
            let cor = ctx.corestriction_map(&full, &h).unwrap();
            let sp = ctx.space_for(&full).unwrap();
            let index = (g.order / h.order()) as i64;
            for v in &sp.space.z2.gens {
                let round = cor.apply(&res.apply(v));
                let scaled: Vec<i64> = v.iter().map(|&x| (index * x).rem_euclid(ctx.e)).collect();
                assert!(
                    sp.space.classes_equal(&round, &scaled),
                    "cor res {} H order {}",
                    g.name,
                    h.order()
                );
            }
        }
    }
    for g in catalog_groups() {
        if g.order > 16 {
            continue;
        }
        for h in g.all_subgroups() {
            for a in g.bicyclic_subgroups() {
                let r = verifier::check_mackey(&g, &h, &a).unwrap();
                assert_eq!(r.status, Status::Pass, "{r}");
            }
        }
    }
    println!("criterion 3 PASS: cor after res is index times id; Mackey identity holds");
}

#[test]
fn criterion_04_commutator_lemma() {
    for g in catalog_groups() {
        if g.order > 64 || g.prime_divisors().len() != 1 {
            continue;
        }
        let class = g
            .nilpotency_class(&g.full_subgroup())
            .expect("p-groups are nilpotent")
            .max(1);
        let normals = g.normal_subgroups();
        for a in &normals {
            for b in &normals {
                for n in 1..=class {
                    let r = verifier::check_lemma_comm(&g, a, b, n).unwrap();
                    assert_eq!(r.status, Status::Pass, "{r}");
                }
            }
        }
    }
    println!("criterion 4 PASS: commutator lemma inclusions hold on all catalog p-groups");
}

#[test]
fn criterion_05_suite_no_failures() {
    let groups: Vec<Arc<GroupTable>> = catalog_groups()
        .into_iter()
        .filter(|g| g.order <= 32)
        .collect();
    let reports = verifier::run_suite(&groups, &Budgets::default());
    assert!(!reports.is_empty());
    for r in &reports {
        assert_ne!(r.status, Status::Fail, "{r} witness {}", r.witness);
    }
    println!("criterion 5 PASS: full suite reports zero FAIL over the catalog");
}

#[test]
fn criterion_06_stable_elements() {
    let s4 = by_name("S4");
    let h = s4.sylow_subgroup(2).unwrap();
    let r = verifier::check_stable_isomorphism(&s4, &h, 2, MultKind::Schur).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    assert_eq!(r.invariants["stable_order"], "2");
    for g in catalog_groups() {
        if g.order > 24 {
            continue;
        }
        for p in g.prime_divisors() {
            let h = g.sylow_subgroup(p).unwrap();
            for kind in [MultKind::Schur, MultKind::Sha] {
                let r = verifier::check_stable_isomorphism(&g, &h, p, kind).unwrap();
                assert_ne!(r.status, Status::Fail, "{r}");
            }
        }
    }
    println!("criterion 6 PASS: stable-element checks pass, S4 Sylow-2 stable order is 2");
}

#[test]
fn criterion_07_propositions() {
    for g in catalog_groups() {
        if g.order > 32 {
            continue;
        }
        for q in g.normal_subgroups() {
            if q.is_trivial() || q.order() == g.order {
                continue;
            }
            let r = verifier::check_prop_zc(&g, &q).unwrap();
            assert_ne!(r.status, Status::Fail, "{r} witness {}", r.witness);
            for p in g.prime_divisors() {
                let mut m = q.order();
                while m % p as usize == 0 {
                    m /= p as usize;
                }
                if m == 1 {
                    let r = verifier::check_cor_ng(&g, &q, p).unwrap();
                    assert_ne!(r.status, Status::Fail, "{r} witness {}", r.witness);
                }
            }
        }
    }
    println!("criterion 7 PASS: prop_zc and cor_ng report zero FAIL");
}

#[test]
fn criterion_08_order_bookkeeping() {
    for g in catalog_groups() {
        if g.order > 24 {
            continue;
        }
        let e = (g.order as i64).max(2);
        let sp = cocycle_space(&g, e, CAP).unwrap();
        let h2_mod_e = sp.h2_mod_e_invariants().unwrap().order();
        let m = sp.h2_invariants().unwrap().order();
        assert_eq!(
            h2_mod_e,
            m * g.abelianization_order() as u128,
            "{}",
            g.name
        );
    }
    println!("criterion 8 PASS: |H2(G, Z/|G|)| = |M(G)| * |G^ab| throughout");
}

#[test]
fn criterion_09_snf_properties() {
    use mlab::linalg::{smith_normal_form, IntMatrix};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let t = std::time::Instant::now();
    for case in 0..1000 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let mut a = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a[(i, j)] = BigInt::from(rng.gen_range(-20i64..=20));
            }
        }
        let snf = smith_normal_form(&a);
        // U A V = D
        let d = snf.u.mul(&a).mul(&snf.v);
        for i in 0..rows {
            for j in 0..cols {
                let expect = if i == j && i < snf.diag.len() {
                    snf.diag[i].clone()
                } else {
                    BigInt::from(0)
                };
                assert_eq!(d[(i, j)], expect, "case {case} UAV");
            }
        }
        // unimodularity
        let one = BigInt::from(1);
        let det_u = snf.u.determinant();
        let det_v = snf.v.determinant();
        assert!(det_u.clone() * det_u.clone() == one, "case {case} det U");
        assert!(det_v.clone() * det_v.clone() == one, "case {case} det V");
        // divisibility chain, nonnegative
        for w in snf.diag.windows(2) {
            assert!(w[0] >= BigInt::from(0));
            if w[0] != BigInt::from(0) {
                assert_eq!(&w[1] % &w[0], BigInt::from(0), "case {case} chain");
            } else {
                assert_eq!(w[1], BigInt::from(0), "case {case} chain zero");
            }
        }
        // naive oracle: gcd of all entries equals d_1; product of first k
        // diagonals equals the gcd of all k x k minors for small k
        let mut g_all = BigInt::from(0);
        for i in 0..rows {
            for j in 0..cols {
                g_all = num_integer::Integer::gcd(&g_all, &a[(i, j)]);
            }
        }
        let d1 = snf.diag.first().cloned().unwrap_or_else(|| BigInt::from(0));
        assert_eq!(d1, g_all, "case {case} d1 = gcd of entries");
        if rows >= 2 && cols >= 2 {
            let mut g2 = BigInt::from(0);
            for i0 in 0..rows {
                for i1 in i0 + 1..rows {
                    for j0 in 0..cols {
                        for j1 in j0 + 1..cols {
                            let minor = &a[(i0, j0)] * &a[(i1, j1)] - &a[(i0, j1)] * &a[(i1, j0)];
                            g2 = num_integer::Integer::gcd(&g2, &minor);
                        }
                    }
                }
            }
            let p2 = if snf.diag.len() >= 2 {
                &snf.diag[0] * &snf.diag[1]
            } else {
                BigInt::from(0)
            };
            assert_eq!(p2, g2, "case {case} d1 d2 = gcd of 2x2 minors");
        }
    }
    assert!(t.elapsed().as_secs() < 60, "SNF suite too slow");
    println!("criterion 9 PASS: 1000 random SNF cases satisfy all properties");
}

#[test]
fn criterion_10_deterministic_reports() {
    let groups: Vec<Arc<GroupTable>> = catalog_groups()
        .into_iter()
        .filter(|g| g.order <= 16)
        .collect();
    let a = serde_json::to_string(&verifier::run_suite(&groups, &Budgets::default())).unwrap();
    let b = serde_json::to_string(&verifier::run_suite(&groups, &Budgets::default())).unwrap();
    assert_eq!(a, b);
    println!("criterion 10 PASS: consecutive suite runs serialize byte-identically");
}
