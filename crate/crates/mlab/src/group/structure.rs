//! Subgroup-level structure: Sylow subgroups, normalizers, commutator
//! calculus, transversals and double cosets. Everything is an exhaustive
//! scan over the table; the order cap keeps that honest.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::is_prime;

use super::table::{GroupTable, Homomorphism, Subgroup};

impl GroupTable {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![self.identity],
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order).collect(),
        }
    }

    /// Smallest subgroup containing the given elements.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            if g >= self.order {
                return Err(Error::BadIndex(g, self.order));
            }
        }
        // in a finite group, positive words in the generators already form
        // a subgroup, so BFS under right multiplication suffices
        let mut in_set = vec![false; self.order];
        in_set[self.identity] = true;
        let mut members = vec![self.identity];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let p = self.mul(x, g);
                if !in_set[p] {
                    in_set[p] = true;
                    members.push(p);
                }
            }
        }
        Subgroup::new(self, members)
    }

    /// Elements commuting with everything in `s`.
    pub fn centralizer(&self, s: &[usize]) -> Result<Subgroup> {
        for &x in s {
            if x >= self.order {
                return Err(Error::BadIndex(x, self.order));
            }
        }
        let elems = (0..self.order)
            .filter(|&g| s.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup::new(self, elems)
    }

    /// Largest subgroup in which `h` is normal.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&g| h.elements.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        Subgroup::new(self, elems).expect("normalizer is a subgroup")
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normalizer(h).order() == self.order
    }

    /// Deterministic Sylow p-subgroup: grow from a cyclic p-subgroup,
    /// always adjoining the smallest-index eligible p-element of the
    /// current normalizer.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p_part = self.p_part_of_order(p);
        if p_part == 1 {
            return Ok(self.trivial_subgroup());
        }
        let is_p_power = |n: usize| {
            let mut n = n;
            while n % p as usize == 0 {
                n /= p as usize;
            }
            n == 1
        };
        // seed: smallest-index element of maximal p-power order
        let mut best: Option<(usize, usize)> = None; // (order, index); max order, min index
        for x in 0..self.order {
            let o = self.element_order(x);
            if o > 1 && is_p_power(o) {
                match best {
                    None => best = Some((o, x)),
                    Some((bo, _)) if o > bo => best = Some((o, x)),
                    _ => {}
                }
            }
        }
        let (_, seed) = best.expect("p divides the order, so a p-element exists");
        let mut h = self.subgroup_generated(&[seed])?;
        while h.order() < p_part {
            let n = self.normalizer(&h);
            let mut grown = false;
            for &y in &n.elements {
                if h.contains(y) || !is_p_power(self.element_order(y)) {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.push(y);
                let cand = self.subgroup_generated(&gens)?;
                if is_p_power(cand.order()) {
                    h = cand;
                    grown = true;
                    break;
                }
            }
            assert!(grown, "Sylow growth stalled; table is corrupt");
        }
        Ok(h)
    }

    /// Subgroup generated by all commutators [a, b], a in A, b in B.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = BTreeSet::new();
        for &x in &a.elements {
            for &y in &b.elements {
                gens.insert(self.comm(x, y));
            }
        }
        self.subgroup_generated(&gens.into_iter().collect::<Vec<_>>())
            .expect("indices valid")
    }

    /// [A, _n B], left-normed; [A, _0 B] = A.
    pub fn iterated_commutator(&self, a: &Subgroup, b: &Subgroup, n: usize) -> Subgroup {
        let mut cur = a.clone();
        for _ in 0..n {
            cur = self.commutator_subgroup(&cur, b);
        }
        cur
    }

    /// gamma_1 = H, gamma_{k+1} = [gamma_k, H], until stabilization.
    pub fn lower_central_series(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), h);
            if next == *series.last().unwrap() {
                break;
            }
            series.push(next);
            if series.last().unwrap().is_trivial() {
                break;
            }
        }
        series
    }

    /// Length of the lower central series down to the trivial subgroup,
    /// or None when the series stabilizes above it.
    pub fn nilpotency_class(&self, h: &Subgroup) -> Option<usize> {
        let series = self.lower_central_series(h);
        if series.last().unwrap().is_trivial() {
            if series.len() == 1 {
                Some(0) // trivial subgroup
            } else {
                Some(series.len() - 1)
            }
        } else {
            None
        }
    }

    /// All ordered pairs (x, y) with xy = yx.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for x in 0..self.order {
            for y in 0..self.order {
                if self.mul(x, y) == self.mul(y, x) {
                    pairs.push((x, y));
                }
            }
        }
        pairs
    }

    /// Deduplicated subgroups generated by one commuting pair each.
    pub fn bicyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for (x, y) in self.commuting_pairs() {
            let s = self.subgroup_generated(&[x, y]).expect("indices valid");
            debug_assert!(s.is_abelian(self));
            if seen.insert(s.elements.clone()) {
                out.push(s);
            }
        }
        out
    }

    /// One representative per right coset Hg, the smallest element index
    /// in each coset; identity coset first.
    pub fn right_transversal(&self, h: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in &h.elements {
                covered[self.mul(x, g)] = true;
            }
        }
        reps
    }

    /// One representative per double coset HgK, smallest index first.
    pub fn double_coset_reps(&self, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in &h.elements {
                let xg = self.mul(x, g);
                for &y in &k.elements {
                    covered[self.mul(xg, y)] = true;
                }
            }
        }
        reps
    }

    /// x -> g^{-1} x g as a map between the standalone tables of Q and Q^g.
    pub fn conjugation_homomorphism(
        self: &Arc<Self>,
        q: &Subgroup,
        g: usize,
    ) -> Result<Homomorphism> {
        if g >= self.order {
            return Err(Error::BadIndex(g, self.order));
        }
        let target_elems: Vec<usize> = q.elements.iter().map(|&x| self.conj(x, g)).collect();
        let qg = Subgroup::new(self, target_elems)?;
        let (src_table, src_embed) = q.to_table(self, &format!("{}_sub", self.name));
        let (dst_table, _) = qg.to_table(self, &format!("{}_sub_conj", self.name));
        let image: Vec<usize> = src_embed
            .iter()
            .map(|&x| qg.local_index(self.conj(x, g)).expect("conjugate lands in Q^g"))
            .collect();
        Homomorphism::new(src_table, dst_table, image)
    }

    /// The conjugate subgroup H^g = g^{-1} H g.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let elems: Vec<usize> = h.elements.iter().map(|&x| self.conj(x, g)).collect();
        Subgroup::new(self, elems).expect("conjugate of a subgroup")
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = a
            .elements
            .iter()
            .copied()
            .filter(|&x| b.contains(x))
            .collect();
        Subgroup::new(self, elems).expect("intersection of subgroups")
    }

    /// Every subgroup, by breadth-first extension of known subgroups.
    /// Feasible at the orders this engine targets.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out: Vec<Subgroup> = Vec::new();
        let triv = self.trivial_subgroup();
        seen.insert(triv.elements.clone());
        out.push(triv);
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for g in 0..self.order {
                if cur.contains(g) {
                    continue;
                }
                let mut gens = cur.elements.clone();
                gens.push(g);
                let next = self.subgroup_generated(&gens).expect("indices valid");
                if seen.insert(next.elements.clone()) {
                    out.push(next);
                }
            }
        }
        out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        out
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups()
            .into_iter()
            .filter(|h| self.is_normal(h))
            .collect()
    }

    /// Small deterministic generating set: adjoin the smallest element
    /// that enlarges the closure, until the whole group is generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut cur = self.trivial_subgroup();
        while cur.order() < self.order {
            let g = (0..self.order)
                .find(|&g| !cur.contains(g))
                .expect("closure is not the whole group yet");
            gens.push(g);
            let mut all = cur.elements.clone();
            all.push(g);
            cur = self.subgroup_generated(&all).expect("indices valid");
        }
        gens
    }

    /// Generating set for a subgroup, in parent indices.
    pub fn subgroup_generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut cur = self.trivial_subgroup();
        while cur.order() < h.order() {
            let g = h
                .elements
                .iter()
                .copied()
                .find(|&g| !cur.contains(g))
                .expect("subgroup not exhausted");
            gens.push(g);
            let mut all = cur.elements.clone();
            all.push(g);
            cur = self.subgroup_generated(&all).expect("indices valid");
        }
        gens
    }

    /// |G / [G, G]|
    pub fn abelianization_order(&self) -> usize {
        let full = self.full_subgroup();
        let derived = self.commutator_subgroup(&full, &full);
        self.order / derived.order()
    }
}

#[cfg(test)]
mod tests {
    use super::super::table::{build_group_from_perms, Perm, DEFAULT_ORDER_CAP};
    use super::*;

    pub fn perm_group(name: &str, cycles: &[&[&[usize]]], degree: usize) -> Arc<GroupTable> {
        let gens: Vec<Perm> = cycles
            .iter()
            .map(|cs| {
                let cycles: Vec<Vec<usize>> = cs.iter().map(|c| c.to_vec()).collect();
                Perm::from_cycles(&cycles, degree).unwrap()
            })
            .collect();
        build_group_from_perms(&gens, name, DEFAULT_ORDER_CAP).unwrap()
    }

    fn s3() -> Arc<GroupTable> {
        perm_group("S3", &[&[&[1, 2]], &[&[1, 2, 3]]], 3)
    }

    fn s4() -> Arc<GroupTable> {
        perm_group("S4", &[&[&[1, 2]], &[&[1, 2, 3, 4]]], 4)
    }

    fn d4() -> Arc<GroupTable> {
        perm_group("D4", &[&[&[1, 2, 3, 4]], &[&[1, 3]]], 4)
    }

    #[test]
    fn closure_orders() {
        assert_eq!(perm_group("C2", &[&[&[1, 2]]], 2).order, 2);
        assert_eq!(s3().order, 6);
        assert_eq!(d4().order, 8);
        assert_eq!(s4().order, 24);
    }

    #[test]
    fn closure_cap() {
        let g = Perm::from_cycles(&[vec![1, 2, 3, 4, 5]], 5).unwrap();
        let h = Perm::from_cycles(&[vec![1, 2]], 5).unwrap();
        assert!(matches!(
            build_group_from_perms(&[g, h], "S5", 100),
            Err(Error::ClosureExceedsCap { cap: 100 })
        ));
    }

    #[test]
    fn bad_permutation() {
        assert!(matches!(
            Perm::from_cycles(&[vec![1, 1, 2]], 3),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn subgroup_generated_cases() {
        let g = s3();
        assert_eq!(g.subgroup_generated(&[]).unwrap().order(), 1);
        let three_cycle = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(g.subgroup_generated(&[three_cycle]).unwrap().order(), 3);
        let d = d4();
        let r = (0..8).find(|&x| d.element_order(x) == 4).unwrap();
        let s = (0..8)
            .find(|&x| d.element_order(x) == 2 && !d.subgroup_generated(&[r]).unwrap().contains(x))
            .unwrap();
        assert_eq!(d.subgroup_generated(&[r, s]).unwrap().order(), 8);
    }

    #[test]
    fn centralizer_normalizer() {
        let g = s3();
        assert_eq!(g.normalizer(&g.full_subgroup()).order(), 6);
        let ab = perm_group("C6", &[&[&[1, 2, 3, 4, 5, 6]]], 6);
        assert_eq!(ab.centralizer(&[1, 3]).unwrap().order(), 6);
        // N_{S4}(Sylow_2) = Sylow_2 itself
        let s4 = s4();
        let p = s4.sylow_subgroup(2).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(s4.normalizer(&p).order(), 8);
    }

    #[test]
    fn sylow_cases() {
        let g = s3();
        assert_eq!(g.sylow_subgroup(3).unwrap().order(), 3);
        assert_eq!(g.sylow_subgroup(5).unwrap().order(), 1);
        assert!(matches!(g.sylow_subgroup(4), Err(Error::NotPrime(4))));
        // Sylow 2-subgroup of S4 is dihedral of order 8: element order profile 1,2,2,2,2,2,4,4
        let s4 = s4();
        let p = s4.sylow_subgroup(2).unwrap();
        let mut profile: Vec<usize> = p.elements.iter().map(|&x| s4.element_order(x)).collect();
        profile.sort_unstable();
        assert_eq!(profile, vec![1, 2, 2, 2, 2, 2, 4, 4]);
    }

    #[test]
    fn sylow_deterministic() {
        let s4 = s4();
        let a = s4.sylow_subgroup(2).unwrap();
        let b = s4.sylow_subgroup(2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn commutators() {
        let g = s3();
        let full = g.full_subgroup();
        let derived = g.commutator_subgroup(&full, &full);
        assert_eq!(derived.order(), 3);
        let triv = g.trivial_subgroup();
        assert_eq!(g.commutator_subgroup(&full, &triv).order(), 1);
        let d = d4();
        let dfull = d.full_subgroup();
        let c = d.iterated_commutator(&dfull, &dfull, 1);
        assert_eq!(c.order(), 2);
    }

    #[test]
    fn nilpotency() {
        let d = d4();
        assert_eq!(d.nilpotency_class(&d.full_subgroup()), Some(2));
        let g = s3();
        assert_eq!(g.nilpotency_class(&g.full_subgroup()), None);
        let ab = perm_group("C4", &[&[&[1, 2, 3, 4]]], 4);
        assert_eq!(ab.nilpotency_class(&ab.full_subgroup()), Some(1));
    }

    #[test]
    fn commuting_pairs_counts() {
        let ab = perm_group("C4", &[&[&[1, 2, 3, 4]]], 4);
        assert_eq!(ab.commuting_pairs().len(), 16);
        assert_eq!(s3().commuting_pairs().len(), 18);
        for b in s3().bicyclic_subgroups() {
            assert!(b.is_abelian(&s3()));
        }
    }

    #[test]
    fn transversals_and_double_cosets() {
        let g = s3();
        let full = g.full_subgroup();
        assert_eq!(g.right_transversal(&full), vec![g.identity]);
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let h = g.subgroup_generated(&[t]).unwrap();
        assert_eq!(g.right_transversal(&h).len(), 3);
        assert_eq!(g.double_coset_reps(&h, &h).len(), 2);
        // double cosets partition G
        let reps = g.double_coset_reps(&h, &h);
        let mut covered = vec![0usize; 6];
        for &s in &reps {
            for &x in &h.elements {
                for &y in &h.elements {
                    covered[g.mul(g.mul(x, s), y)] += 1;
                }
            }
        }
        assert!(covered.iter().all(|&c| c > 0));
    }

    #[test]
    fn conjugation_hom() {
        let g = s3();
        let a3 = g.sylow_subgroup(3).unwrap();
        let id_map = g.conjugation_homomorphism(&a3, g.identity).unwrap();
        assert!(id_map.is_bijective());
        assert_eq!(id_map.image, vec![0, 1, 2]);
        // a transposition inverts A3
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let m = g.conjugation_homomorphism(&a3, t).unwrap();
        assert!(m.is_bijective());
        let (tbl, _) = a3.to_table(&g, "A3");
        for x in 0..3 {
            assert_eq!(m.image[x], tbl.inv(x));
        }
    }

    #[test]
    fn all_subgroups_s3() {
        let g = s3();
        let subs = g.all_subgroups();
        assert_eq!(subs.len(), 6); // 1, three C2, A3, S3
        let normals = g.normal_subgroups();
        assert_eq!(normals.len(), 3);
    }

    #[test]
    fn generating_sets() {
        let g = s4();
        let gens = g.generating_set();
        assert_eq!(g.subgroup_generated(&gens).unwrap().order(), 24);
        assert!(gens.len() <= 3);
        let p = g.sylow_subgroup(2).unwrap();
        let sg = g.subgroup_generating_set(&p);
        assert_eq!(g.subgroup_generated(&sg).unwrap().elements, p.elements);
    }

    #[test]
    fn abelianization() {
        assert_eq!(s3().abelianization_order(), 2);
        assert_eq!(s4().abelianization_order(), 2);
        assert_eq!(d4().abelianization_order(), 4);
    }
}
