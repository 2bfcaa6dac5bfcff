//! H^2(G, Q/Z) through normalized bar cocycles over Z/e.
//!
//! With e a multiple of |G|, the exact sequence Z/e -> Q/Z -> Q/Z
//! identifies H^2(G, Q/Z) with Z^2(G, Z/e) / (B^2 + im delta), where
//! im delta is spanned by the carry cocycles of homomorphisms G -> Z/e.
//! Cocycle vectors are indexed by ordered pairs of non-identity elements;
//! normalization makes the identity coordinates identically zero.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::linalg::modmat::{
    constrained_kernel, kernel_of_rows, quotient_invariants, ModMatrix, RowReducer, SubmoduleModE,
};
use crate::linalg::AbelianInvariants;

/// Groups above this order are refused by the cohomology layer.
pub const DEFAULT_COHOMOLOGY_CAP: usize = 64;

/// Normalized 2-cocycles, 2-coboundaries and the Bockstein image for
/// (G, Z/e), as spanning sets over Z/e.
pub struct CocycleSpace {
    pub group: Arc<GroupTable>,
    pub modulus: i64,
    /// (|G| - 1)^2
    pub dim: usize,
    nonid: Vec<usize>,
    pos: Vec<Option<usize>>,
    pub z2: SubmoduleModE,
    pub b2: SubmoduleModE,
    pub bock: SubmoduleModE,
    z2_red: RowReducer,
    cb_red: RowReducer,
}

impl CocycleSpace {
    /// Coordinate of the pair (g, h), None when either is the identity.
    pub fn pair_coord(&self, g: usize, h: usize) -> Option<usize> {
        let n1 = self.nonid.len();
        match (self.pos[g], self.pos[h]) {
            (Some(a), Some(b)) => Some(a * n1 + b),
            _ => None,
        }
    }

    /// B^2 + Bockstein image: the representatives of the zero class.
    pub fn coboundaries(&self) -> SubmoduleModE {
        self.b2.sum(&self.bock)
    }

    pub fn class_is_zero(&self, v: &[i64]) -> bool {
        self.dim == 0 || self.cb_red.contains(v)
    }

    pub fn is_cocycle(&self, v: &[i64]) -> bool {
        self.dim == 0 || self.z2_red.contains(v)
    }

    pub fn classes_equal(&self, a: &[i64], b: &[i64]) -> bool {
        let diff: Vec<i64> = a
            .iter()
            .zip(b.iter())
            .map(|(&x, &y)| (x - y).rem_euclid(self.modulus))
            .collect();
        self.class_is_zero(&diff)
    }

    /// Invariants of H^2(G, Q/Z) = Z^2 / (B^2 + Bock).
    pub fn h2_invariants(&self) -> Result<AbelianInvariants> {
        quotient_invariants(&self.z2.sum(&self.coboundaries()), &self.coboundaries())
    }

    /// Invariants of H^2(G, Z/e) = Z^2 / B^2.
    pub fn h2_mod_e_invariants(&self) -> Result<AbelianInvariants> {
        quotient_invariants(&self.z2.sum(&self.b2), &self.b2)
    }

    /// Representatives spanning the p-part of H^2(G, Q/Z): the cocycle
    /// generators scaled by the p'-part of e.
    pub fn p_part_class_gens(&self, p: u64) -> Vec<Vec<i64>> {
        let mut coprime = self.modulus;
        while coprime % p as i64 == 0 {
            coprime /= p as i64;
        }
        self.z2
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&v| (v * coprime).rem_euclid(self.modulus))
                    .collect()
            })
            .collect()
    }
}

/// Build the cocycle space of a group table over Z/e.
pub fn cocycle_space(group: &Arc<GroupTable>, e: i64, cap: usize) -> Result<CocycleSpace> {
    if group.order > cap {
        return Err(Error::CapExceeded {
            order: group.order,
            cap,
        });
    }
    assert!(e >= 2, "modulus must be at least 2");
    assert!(
        e % group.order as i64 == 0 || group.order == 1,
        "modulus must be a multiple of the group order"
    );
    let n = group.order;
    let nonid: Vec<usize> = (0..n).filter(|&x| x != group.identity).collect();
    let mut pos = vec![None; n];
    for (i, &x) in nonid.iter().enumerate() {
        pos[x] = Some(i);
    }
    let n1 = nonid.len();
    let dim = n1 * n1;
    let coord = |g: usize, h: usize| -> Option<usize> {
        match (pos[g], pos[h]) {
            (Some(a), Some(b)) => Some(a * n1 + b),
            _ => None,
        }
    };

    // Z^2: kernel of the normalized cocycle constraints
    //   c(h,k) - c(gh,k) + c(g,hk) - c(g,h) = 0  over non-identity triples.
    let coord = &coord;
    let rows = nonid.iter().flat_map(|&g| {
        let nonid = &nonid;
        nonid.iter().flat_map(move |&h| {
            nonid.iter().map(move |&k| {
                let mut row = vec![0i64; dim];
                let mut add = |c: Option<usize>, v: i64| {
                    if let Some(c) = c {
                        row[c] += v;
                    }
                };
                add(coord(h, k), 1);
                add(coord(group.mul(g, h), k), -1);
                add(coord(g, group.mul(h, k)), 1);
                add(coord(g, h), -1);
                row
            })
        })
    });
    let z2 = kernel_of_rows(e, dim, rows);

    // B^2: images of the unit 1-cochains under delta.
    let mut b2_gens = Vec::with_capacity(n1);
    for &x in &nonid {
        let mut v = vec![0i64; dim];
        for &g in &nonid {
            for &h in &nonid {
                let c = coord(g, h).unwrap();
                let mut val = 0i64;
                if g == x {
                    val += 1;
                }
                if h == x {
                    val += 1;
                }
                if group.mul(g, h) == x {
                    val -= 1;
                }
                v[c] = val.rem_euclid(e);
            }
        }
        b2_gens.push(v);
    }
    let b2 = SubmoduleModE::from_gens(e, dim, b2_gens);

    // Bockstein image: carry cocycles of a spanning set of homomorphisms
    // G -> Z/e.
    let pos_ref = &pos;
    let hom_rows = nonid.iter().flat_map(|&g| {
        let nonid = &nonid;
        nonid.iter().map(move |&h| {
            let mut row = vec![0i64; n1];
            row[pos_ref[g].unwrap()] += 1;
            row[pos_ref[h].unwrap()] += 1;
            let gh = group.mul(g, h);
            if let Some(p) = pos_ref[gh] {
                row[p] -= 1;
            }
            row
        })
    });
    let homs = kernel_of_rows(e, n1.max(1), hom_rows);
    let mut bock_gens = Vec::new();
    if n1 > 0 {
        for chi in &homs.gens {
            let value = |x: usize| -> i64 {
                match pos[x] {
                    Some(p) => chi[p],
                    None => 0,
                }
            };
            let mut v = vec![0i64; dim];
            for &g in &nonid {
                for &h in &nonid {
                    let s = value(g) + value(h) - value(group.mul(g, h));
                    debug_assert!(s == 0 || s == e, "carry out of range");
                    v[coord(g, h).unwrap()] = s / e;
                }
            }
            bock_gens.push(v);
        }
    }
    let bock = SubmoduleModE::from_gens(e, dim, bock_gens);

    let mut z2_red = RowReducer::new(e, dim.max(1), true);
    for g in &z2.gens {
        z2_red.push_row(g.clone());
    }
    let mut cb_red = RowReducer::new(e, dim.max(1), true);
    for g in b2.gens.iter().chain(bock.gens.iter()) {
        cb_red.push_row(g.clone());
    }

    for g in b2.gens.iter().chain(bock.gens.iter()) {
        assert!(z2_red.contains(g), "coboundary fails the cocycle condition");
    }

    Ok(CocycleSpace {
        group: Arc::clone(group),
        modulus: e,
        dim,
        nonid,
        pos,
        z2,
        b2,
        bock,
        z2_red,
        cb_red,
    })
}

/// Invariants of the Schur multiplier H^2(G, Q/Z), computed over Z/|G|.
pub fn schur_h2(group: &Arc<GroupTable>, cap: usize) -> Result<AbelianInvariants> {
    let e = (group.order as i64).max(2);
    cocycle_space(group, e, cap)?.h2_invariants()
}

/// A subgroup's cocycle space together with its embedding data.
pub struct SubSpace {
    pub subgroup: Subgroup,
    pub table: Arc<GroupTable>,
    /// local index -> parent index
    pub embed: Vec<usize>,
    pub space: CocycleSpace,
}

impl SubSpace {
    pub fn local_of(&self, parent_idx: usize) -> Option<usize> {
        self.subgroup.local_index(parent_idx)
    }
}

/// Sparse class-level linear map between two cocycle coordinate spaces.
pub struct LinearMapModE {
    pub source: Arc<SubSpace>,
    pub target: Arc<SubSpace>,
    pub e: i64,
    entries: Vec<(u32, u32, i64)>, // (target coord, source coord, coeff)
}

impl LinearMapModE {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.source.space.dim);
        let mut out = vec![0i64; self.target.space.dim];
        for &(t, s, c) in &self.entries {
            out[t as usize] = (out[t as usize] + c * v[s as usize]) % self.e;
        }
        for o in out.iter_mut() {
            *o = o.rem_euclid(self.e);
        }
        out
    }

    /// Dense matrix form, target dim x source dim.
    pub fn to_dense(&self) -> crate::linalg::modmat::ModMatrix {
        let mut m = crate::linalg::modmat::ModMatrix::zero(
            self.e,
            self.target.space.dim.max(1),
            self.source.space.dim.max(1),
        );
        for &(t, s, c) in &self.entries {
            m[(t as usize, s as usize)] = (m[(t as usize, s as usize)] + c).rem_euclid(self.e);
        }
        m
    }

    /// Both the cocycle and coboundary conditions must be preserved on
    /// spanning sets, otherwise the map is not defined on classes.
    fn validate(&self) -> Result<()> {
        for g in &self.source.space.z2.gens {
            if !self.target.space.is_cocycle(&self.apply(g)) {
                return Err(Error::SubmoduleViolation);
            }
        }
        for g in self
            .source
            .space
            .b2
            .gens
            .iter()
            .chain(self.source.space.bock.gens.iter())
        {
            if !self.target.space.class_is_zero(&self.apply(g)) {
                return Err(Error::SubmoduleViolation);
            }
        }
        Ok(())
    }
}

/// Cache of subgroup cocycle spaces of one ambient group at one modulus.
/// All cross-subgroup maps (res / cor / conj / stability) live here.
pub struct CohCtx {
    pub group: Arc<GroupTable>,
    pub e: i64,
    pub cap: usize,
    spaces: HashMap<Vec<usize>, Arc<SubSpace>>,
}

impl CohCtx {
    pub fn new(group: &Arc<GroupTable>, e: i64, cap: usize) -> CohCtx {
        CohCtx {
            group: Arc::clone(group),
            e: e.max(2),
            cap,
            spaces: HashMap::new(),
        }
    }

    /// Context at the natural modulus e = |G|.
    pub fn natural(group: &Arc<GroupTable>, cap: usize) -> CohCtx {
        Self::new(group, group.order as i64, cap)
    }

    pub fn space_for(&mut self, sub: &Subgroup) -> Result<Arc<SubSpace>> {
        if let Some(s) = self.spaces.get(&sub.elements) {
            return Ok(Arc::clone(s));
        }
        let (table, embed) = sub.to_table(&self.group, &format!("{}_sub{}", self.group.name, sub.order()));
        let space = cocycle_space(&table, self.e, self.cap)?;
        let s = Arc::new(SubSpace {
            subgroup: sub.clone(),
            table,
            embed,
            space,
        });
        self.spaces.insert(sub.elements.clone(), Arc::clone(&s));
        Ok(s)
    }

    pub fn full_space(&mut self) -> Result<Arc<SubSpace>> {
        let full = self.group.full_subgroup();
        self.space_for(&full)
    }

    /// res: H^2(outer) -> H^2(inner), a coordinate projection.
    pub fn restriction_map(
        &mut self,
        outer: &Subgroup,
        inner: &Subgroup,
    ) -> Result<LinearMapModE> {
        for &x in &inner.elements {
            if !outer.contains(x) {
                return Err(Error::BadIndex(x, outer.order()));
            }
        }
        let src = self.space_for(outer)?;
        let dst = self.space_for(inner)?;
        let mut entries = Vec::new();
        for (xi, &xp) in dst.embed.iter().enumerate() {
            for (yi, &yp) in dst.embed.iter().enumerate() {
                let t = match dst.space.pair_coord(xi, yi) {
                    Some(t) => t,
                    None => continue,
                };
                let s = src
                    .space
                    .pair_coord(src.local_of(xp).unwrap(), src.local_of(yp).unwrap())
                    .expect("non-identity stays non-identity");
                entries.push((t as u32, s as u32, 1));
            }
        }
        let map = LinearMapModE {
            source: src,
            target: dst,
            e: self.e,
            entries,
        };
        map.validate()?;
        Ok(map)
    }

    /// conj^g: H^2(H) -> H^2(H^g), (c conj^g)(x, y) = c(x^{g^-1}, y^{g^-1}).
    pub fn conjugation_map(&mut self, h: &Subgroup, g: usize) -> Result<LinearMapModE> {
        if g >= self.group.order {
            return Err(Error::BadIndex(g, self.group.order));
        }
        let hg = self.group.conjugate_subgroup(h, g);
        let src = self.space_for(h)?;
        let dst = self.space_for(&hg)?;
        let ginv = self.group.inv(g);
        let mut entries = Vec::new();
        for (xi, &xp) in dst.embed.iter().enumerate() {
            for (yi, &yp) in dst.embed.iter().enumerate() {
                let t = match dst.space.pair_coord(xi, yi) {
                    Some(t) => t,
                    None => continue,
                };
                // x^{g^-1} = g x g^-1
                let xs = src.local_of(self.group.conj(xp, ginv)).expect("x^(g^-1) in H");
                let ys = src.local_of(self.group.conj(yp, ginv)).expect("y^(g^-1) in H");
                let s = src.space.pair_coord(xs, ys).expect("non-identity");
                entries.push((t as u32, s as u32, 1));
            }
        }
        let map = LinearMapModE {
            source: src,
            target: dst,
            e: self.e,
            entries,
        };
        map.validate()?;
        Ok(map)
    }

    /// cor: H^2(inner) -> H^2(outer), the bar-resolution transfer along
    /// the canonical (minimal-representative) right transversal.
    pub fn corestriction_map(
        &mut self,
        outer: &Subgroup,
        inner: &Subgroup,
    ) -> Result<LinearMapModE> {
        for &x in &inner.elements {
            if !outer.contains(x) {
                return Err(Error::BadIndex(x, outer.order()));
            }
        }
        let src = self.space_for(inner)?;
        let dst = self.space_for(outer)?;
        let ot = &dst.table; // outer's local table
        let inner_local: Vec<usize> = inner
            .elements
            .iter()
            .map(|&x| dst.local_of(x).unwrap())
            .collect();
        let inner_in_outer = Subgroup::new(ot, inner_local).expect("inner closed in outer");
        let transversal = ot.right_transversal(&inner_in_outer);
        // coset representative of each outer-local element
        let mut rep_of = vec![0usize; ot.order];
        for &r in &transversal {
            for &h in &inner_in_outer.elements {
                rep_of[ot.mul(h, r)] = r;
            }
        }
        // outer-local inner element -> source coordinate index
        let src_local_of = |x_out: usize| -> usize {
            let parent = dst.embed[x_out];
            src.local_of(parent).expect("element of inner subgroup")
        };
        let mut acc: HashMap<(u32, u32), i64> = HashMap::new();
        for g1 in 0..ot.order {
            for g2 in 0..ot.order {
                let t = match dst.space.pair_coord(g1, g2) {
                    Some(t) => t,
                    None => continue,
                };
                for &tr in &transversal {
                    let tg1 = ot.mul(tr, g1);
                    let rho1 = rep_of[tg1];
                    let h1 = ot.mul(tg1, ot.inv(rho1));
                    let tg2 = ot.mul(rho1, g2);
                    let rho2 = rep_of[tg2];
                    let h2 = ot.mul(tg2, ot.inv(rho2));
                    let s = match src
                        .space
                        .pair_coord(src_local_of(h1), src_local_of(h2))
                    {
                        Some(s) => s,
                        None => continue, // normalized: identity coordinates vanish
                    };
                    *acc.entry((t as u32, s as u32)).or_insert(0) += 1;
                }
            }
        }
        let mut entries: Vec<(u32, u32, i64)> = acc
            .into_iter()
            .map(|((t, s), c)| (t, s, c.rem_euclid(self.e)))
            .filter(|&(_, _, c)| c != 0)
            .collect();
        entries.sort_unstable();
        let map = LinearMapModE {
            source: src,
            target: dst,
            e: self.e,
            entries,
        };
        map.validate()?;
        Ok(map)
    }

    /// Class-level action of g on H^2(Q) for normal Q: conjugation with
    /// target Q itself.
    pub fn action_on_h2(&mut self, q: &Subgroup, g: usize) -> Result<LinearMapModE> {
        if !self.group.is_normal(q) {
            return Err(Error::NotNormal);
        }
        self.conjugation_map(q, g)
    }

    /// The subgroup of span(s) (classes of H) stable under all double-coset
    /// conjugations: res_{H cap H^g}(a) = res_{H cap H^g}(conj^g a).
    pub fn stable_elements(
        &mut self,
        h: &Subgroup,
        s: &SubmoduleModE,
    ) -> Result<SubmoduleModE> {
        let hsp = self.space_for(h)?;
        assert_eq!(s.dim, hsp.space.dim, "class submodule dimension mismatch");
        let mut cur: Vec<Vec<i64>> = s.gens.clone();
        let reps = self.group.double_coset_reps(h, h);
        for &g in &reps {
            if cur.is_empty() {
                break;
            }
            if g == self.group.identity {
                continue;
            }
            let hg = self.group.conjugate_subgroup(h, g);
            let k = self.group.intersect(h, &hg);
            if k.is_trivial() {
                continue;
            }
            let res1 = self.restriction_map(h, &k)?;
            let conj = self.conjugation_map(h, g)?;
            let res2 = self.restriction_map(&hg, &k)?;
            let ksp = self.space_for(&k)?;
            let kdim = ksp.space.dim;
            // columns: the stability defect of each current generator
            let mut a = ModMatrix::zero(self.e, kdim.max(1), cur.len().max(1));
            for (j, v) in cur.iter().enumerate() {
                let lhs = res1.apply(v);
                let rhs = res2.apply(&conj.apply(v));
                for i in 0..kdim {
                    a[(i, j)] = (lhs[i] - rhs[i]).rem_euclid(self.e);
                }
            }
            let cb = ksp.space.coboundaries();
            let b = if cb.gens.is_empty() {
                ModMatrix::zero(self.e, kdim.max(1), 1)
            } else {
                let mut b = ModMatrix::zero(self.e, kdim.max(1), cb.gens.len());
                for (j, w) in cb.gens.iter().enumerate() {
                    for i in 0..kdim {
                        b[(i, j)] = w[i];
                    }
                }
                b
            };
            let coeffs = constrained_kernel(&a, &b, self.e);
            let mut next = Vec::new();
            for cvec in &coeffs.gens {
                let mut v = vec![0i64; hsp.space.dim];
                for (j, &cj) in cvec.iter().enumerate() {
                    if cj == 0 || j >= cur.len() {
                        continue;
                    }
                    for (vi, &x) in cur[j].iter().enumerate() {
                        v[vi] = (v[vi] + cj * x) % self.e;
                    }
                }
                for x in v.iter_mut() {
                    *x = x.rem_euclid(self.e);
                }
                next.push(v);
            }
            cur = SubmoduleModE::from_gens(self.e, hsp.space.dim, next).gens;
        }
        Ok(SubmoduleModE::from_gens(self.e, hsp.space.dim, cur))
    }
}
