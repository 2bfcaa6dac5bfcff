use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on constructed group orders; exhaustive algorithms only.
pub const DEFAULT_ORDER_CAP: usize = 256;

/// A finite group as an indexed element list with its full multiplication
/// table. The universal representation: everything downstream consumes this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub name: String,
    pub order: usize,
    pub identity: usize,
    mul: Vec<usize>,
    pub inv: Vec<usize>,
}

impl GroupTable {
    /// Build from a raw multiplication table; validates the group axioms
    /// exhaustively (Latin square, associativity, identity, inverses).
    pub fn from_mul_table(name: &str, table: Vec<Vec<usize>>) -> Result<Arc<GroupTable>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        if n > DEFAULT_ORDER_CAP {
            return Err(Error::ClosureExceedsCap {
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::BadTable(format!(
                    "row length {} != order {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::BadTable(format!("entry {v} out of range")));
                }
                mul.push(v);
            }
        }
        // Latin square
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = mul[i * n + j];
                let c = mul[j * n + i];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::BadTable(format!(
                        "row or column {i} is not a permutation"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| Error::BadTable("no identity element".into()))?;
        // associativity, exhaustive
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::BadTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        // inverses
        let mut inv = vec![0usize; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| mul[x * n + y] == identity)
                .ok_or_else(|| Error::BadTable(format!("element {x} has no inverse")))?;
        }
        Ok(Arc::new(GroupTable {
            name: name.to_string(),
            order: n,
            identity,
            mul,
            inv,
        }))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// g^{-1} x g
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv[g], x), g)
    }

    /// [a, b] = a^{-1} b^{-1} a b
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.mul(self.inv[a], self.inv[b]), a), b)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn prime_divisors(&self) -> Vec<u64> {
        let mut n = self.order as u64;
        let mut ps = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                ps.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            ps.push(n);
        }
        ps
    }

    /// Largest power of p dividing the group order.
    pub fn p_part_of_order(&self, p: u64) -> usize {
        let mut n = self.order;
        let mut q = 1usize;
        while n % (p as usize) == 0 {
            n /= p as usize;
            q *= p as usize;
        }
        q
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.mul[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }
}

/// A permutation of 0..degree-1, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Build from disjoint cycles over 1-based points.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Perm> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = cyc[w];
                let b = cyc[(w + 1) % cyc.len()];
                if a == 0 || a > degree || b == 0 || b > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} out of range 1..{degree}",
                        a.max(b)
                    )));
                }
                if touched[a - 1] {
                    return Err(Error::InvalidPermutation(format!("repeated point {a}")));
                }
                touched[a - 1] = true;
                img[a - 1] = b - 1;
            }
        }
        Ok(Perm(img))
    }

    /// self then other (right action composition).
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }
}

/// Closure of a set of permutation generators, as a `GroupTable`.
/// Element 0 is the identity; elements are numbered in BFS discovery order.
pub fn build_group_from_perms(
    generators: &[Perm],
    name: &str,
    cap: usize,
) -> Result<Arc<GroupTable>> {
    let degree = match generators.first() {
        Some(g) => g.degree(),
        None => 1,
    };
    for g in generators {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(
                "generators act on different degrees".into(),
            ));
        }
        let mut seen = vec![false; degree];
        for &x in &g.0 {
            if x >= degree || seen[x] {
                return Err(Error::InvalidPermutation("image is not a bijection".into()));
            }
            seen[x] = true;
        }
    }
    let mut elems = vec![Perm::identity(degree)];
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        for g in generators {
            let next = cur.then(g);
            if !index.contains_key(&next) {
                if elems.len() >= cap {
                    return Err(Error::ClosureExceedsCap { cap });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
        head += 1;
    }
    let n = elems.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = index[&elems[i].then(&elems[j])];
        }
    }
    GroupTable::from_mul_table(name, table)
}

/// A subgroup: sorted element indices of a parent table, closed under the
/// operation. Construction asserts closure, identity and Lagrange.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &GroupTable, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        for &x in &elements {
            if x >= parent.order {
                return Err(Error::BadIndex(x, parent.order));
            }
        }
        if !elements.contains(&parent.identity) {
            return Err(Error::BadTable("subgroup misses the identity".into()));
        }
        let inside = |v: usize| elements.binary_search(&v).is_ok();
        for &a in &elements {
            if !inside(parent.inv(a)) {
                return Err(Error::BadTable("subgroup not closed under inverse".into()));
            }
            for &b in &elements {
                if !inside(parent.mul(a, b)) {
                    return Err(Error::BadTable("subgroup not closed under product".into()));
                }
            }
        }
        assert!(
            parent.order % elements.len() == 0,
            "Lagrange violated; table is corrupt"
        );
        Ok(Subgroup { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn local_index(&self, parent_idx: usize) -> Option<usize> {
        self.elements.binary_search(&parent_idx).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self, parent: &GroupTable) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| parent.mul(a, b) == parent.mul(b, a)))
    }

    /// Standalone table for this subgroup plus the embedding (local index
    /// -> parent index).
    pub fn to_table(&self, parent: &GroupTable, name: &str) -> (Arc<GroupTable>, Vec<usize>) {
        let k = self.elements.len();
        let mut table = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                let prod = parent.mul(self.elements[i], self.elements[j]);
                table[i][j] = self.local_index(prod).expect("closure");
            }
        }
        let t = GroupTable::from_mul_table(name, table).expect("subgroup table is a group");
        (t, self.elements.clone())
    }
}

/// A homomorphism between two tables, stored pointwise.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub source: Arc<GroupTable>,
    pub target: Arc<GroupTable>,
    pub image: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        source: Arc<GroupTable>,
        target: Arc<GroupTable>,
        image: Vec<usize>,
    ) -> Result<Homomorphism> {
        if image.len() != source.order {
            return Err(Error::DimensionMismatch(
                "homomorphism image length != source order".into(),
            ));
        }
        if image[source.identity] != target.identity {
            return Err(Error::BadTable("homomorphism moves the identity".into()));
        }
        for x in 0..source.order {
            for y in 0..source.order {
                if image[source.mul(x, y)] != target.mul(image[x], image[y]) {
                    return Err(Error::BadTable(format!(
                        "homomorphism breaks multiplicativity at ({x},{y})"
                    )));
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            image,
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order];
        for &y in &self.image {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        self.source.order == self.target.order
    }
}
