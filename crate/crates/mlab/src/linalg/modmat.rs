//! Linear algebra over Z/e, for composite e.
//!
//! All of this is Smith-style elimination on integer representatives in
//! [0, e), with rows of e * identity implicitly present: reducing an entry
//! mod e is a row operation against those rows, so lattice computations
//! stay exact while the coefficients stay word-sized.


use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{abelian_invariants_from_relations, AbelianInvariants, IntMatrix};

pub(crate) fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

pub(crate) fn modinv(a: i64, m: i64) -> i64 {
    debug_assert!(m >= 1);
    if m == 1 {
        return 0;
    }
    let (g, x, _) = egcd(a.rem_euclid(m), m);
    debug_assert_eq!(g, 1, "modinv of non-unit {a} mod {m}");
    x.rem_euclid(m)
}

fn gcd(a: i64, b: i64) -> i64 {
    egcd(a.abs(), b.abs()).0
}

/// Dense matrix over Z/e, entries kept in [0, e).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub e: i64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zero(e: i64, rows: usize, cols: usize) -> Self {
        assert!(e >= 2);
        ModMatrix {
            e,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(e: i64, n: usize) -> Self {
        let mut m = Self::zero(e, n, n);
        for i in 0..n {
            m[(i, i)] = 1 % e;
        }
        m
    }

    pub fn from_rows(e: i64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(e, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v.rem_euclid(e);
            }
        }
        m
    }

    pub fn from_int_matrix(a: &IntMatrix, e: i64) -> Self {
        let mut m = Self::zero(e, a.rows, a.cols);
        let be = BigInt::from(e);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let r = ((&a[(i, j)] % &be) + &be) % &be;
                let (_, digits) = r.to_u64_digits();
                m[(i, j)] = digits.first().copied().unwrap_or(0) as i64;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc: i64 = 0;
                for (j, &xj) in x.iter().enumerate() {
                    acc = (acc + self[(i, j)] * xj) % self.e;
                }
                acc.rem_euclid(self.e)
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for ModMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ModMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental row-space accumulator over Z/e.
///
/// Rows are eliminated against stored pivot rows with unimodular integer
/// transforms; with `howell` set, annihilator shadows are inserted so that
/// membership can be decided by reduction alone.
#[derive(Debug, Clone)]
pub struct RowReducer {
    pub e: i64,
    pub cols: usize,
    howell: bool,
    pivots: Vec<Option<Vec<i64>>>, // indexed by pivot column
}

impl RowReducer {
    pub fn new(e: i64, cols: usize, howell: bool) -> Self {
        assert!(e >= 2);
        RowReducer {
            e,
            cols,
            howell,
            pivots: vec![None; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    pub fn pivot_rows(&self) -> Vec<Vec<i64>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    pub fn push_row(&mut self, row: Vec<i64>) {
        let e = self.e;
        let mut pending = vec![row];
        while let Some(mut row) = pending.pop() {
            for v in row.iter_mut() {
                *v = v.rem_euclid(e);
            }
            let mut c = match row.iter().position(|&v| v != 0) {
                Some(c) => c,
                None => continue,
            };
            loop {
                match self.pivots[c].take() {
                    None => {
                        if self.howell {
                            let g = gcd(row[c], e);
                            if g > 1 {
                                let k = e / g;
                                let shadow: Vec<i64> =
                                    row.iter().map(|&v| (v * k).rem_euclid(e)).collect();
                                pending.push(shadow);
                            }
                        }
                        self.pivots[c] = Some(row);
                        break;
                    }
                    Some(mut p) => {
                        let pv = p[c];
                        let rv = row[c];
                        if rv % pv == 0 {
                            let q = rv / pv;
                            for j in c..self.cols {
                                row[j] = (row[j] - q * p[j]).rem_euclid(e);
                            }
                        } else {
                            let (g, x, y) = egcd(pv, rv);
                            let (s1, s2) = (pv / g, rv / g);
                            for j in c..self.cols {
                                let (a, b) = (p[j], row[j]);
                                p[j] = (x * a + y * b).rem_euclid(e);
                                row[j] = (s1 * b - s2 * a).rem_euclid(e);
                            }
                            debug_assert_eq!(p[c], g.rem_euclid(e));
                            if self.howell {
                                let ge = gcd(g, e);
                                if ge > 1 {
                                    let k = e / ge;
                                    let shadow: Vec<i64> =
                                        p.iter().map(|&v| (v * k).rem_euclid(e)).collect();
                                    pending.push(shadow);
                                }
                            }
                        }
                        self.pivots[c] = Some(p);
                        match row[c..].iter().position(|&v| v != 0) {
                            Some(off) => c += off,
                            None => break,
                        }
                    }
                }
            }
        }
    }

    /// Reduce without inserting; a zero result means membership (only
    /// conclusive when the reducer was built with `howell`).
    pub fn reduce(&self, row: &[i64]) -> Vec<i64> {
        let e = self.e;
        let mut row: Vec<i64> = row.iter().map(|v| v.rem_euclid(e)).collect();
        let mut c = 0;
        while c < self.cols {
            if row[c] == 0 {
                c += 1;
                continue;
            }
            let p = match &self.pivots[c] {
                Some(p) => p,
                None => return row,
            };
            let pv = p[c];
            let g = gcd(pv, e);
            if row[c] % g != 0 {
                return row;
            }
            let k = ((row[c] / g) * modinv((pv / g).rem_euclid(e / g), e / g)).rem_euclid(e / g);
            for (r, &pj) in row.iter_mut().zip(p.iter()).skip(c) {
                *r = (*r - k * pj).rem_euclid(e);
            }
            debug_assert_eq!(row[c], 0);
        }
        row
    }

    pub fn contains(&self, row: &[i64]) -> bool {
        debug_assert!(self.howell, "membership needs a howell reducer");
        self.reduce(row).iter().all(|&v| v == 0)
    }
}

/// Diagonalization of a matrix over Z/e with optional transform tracking:
/// u * a * v = diag (mod e).
pub struct ModSmith {
    pub e: i64,
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<i64>,
    pub u: Option<ModMatrix>,
    pub v: Option<ModMatrix>,
}

pub fn smith_mod(a: &ModMatrix, want_u: bool, want_v: bool) -> ModSmith {
    let e = a.e;
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = want_u.then(|| ModMatrix::identity(e, r));
    let mut v = want_v.then(|| ModMatrix::identity(e, c));
    let steps = r.min(c);

    let swap_rows = |m: &mut ModMatrix, u: &mut Option<ModMatrix>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for k in 0..m.cols {
            let t = m[(i, k)];
            m[(i, k)] = m[(j, k)];
            m[(j, k)] = t;
        }
        if let Some(u) = u {
            for k in 0..u.cols {
                let t = u[(i, k)];
                u[(i, k)] = u[(j, k)];
                u[(j, k)] = t;
            }
        }
    };
    let swap_cols = |m: &mut ModMatrix, v: &mut Option<ModMatrix>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for k in 0..m.rows {
            let t = m[(k, i)];
            m[(k, i)] = m[(k, j)];
            m[(k, j)] = t;
        }
        if let Some(v) = v {
            for k in 0..v.rows {
                let t = v[(k, i)];
                v[(k, i)] = v[(k, j)];
                v[(k, j)] = t;
            }
        }
    };

    for t in 0..steps {
        'pivot: loop {
            // Prefer pivots with small gcd against e; units eliminate cleanly.
            let mut best: Option<(i64, i64, usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let val = m[(i, j)];
                    if val == 0 {
                        continue;
                    }
                    let key = (gcd(val, e), val, i, j);
                    if best.map_or(true, |b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            let (pi, pj) = match best {
                Some((_, _, i, j)) => (i, j),
                None => break 'pivot,
            };
            swap_rows(&mut m, &mut u, t, pi);
            swap_cols(&mut m, &mut v, t, pj);

            let mut clean = true;
            for i in t + 1..r {
                let a_it = m[(i, t)];
                if a_it == 0 {
                    continue;
                }
                let p = m[(t, t)];
                if a_it % p == 0 {
                    let q = a_it / p;
                    for k in t..c {
                        m[(i, k)] = (m[(i, k)] - q * m[(t, k)]).rem_euclid(e);
                    }
                    if let Some(u) = &mut u {
                        for k in 0..r {
                            u[(i, k)] = (u[(i, k)] - q * u[(t, k)]).rem_euclid(e);
                        }
                    }
                } else {
                    let (g, x, y) = egcd(p, a_it);
                    let (s1, s2) = (p / g, a_it / g);
                    for k in t..c {
                        let a = m[(t, k)];
                        let b = m[(i, k)];
                        m[(t, k)] = (x * a + y * b).rem_euclid(e);
                        m[(i, k)] = (s1 * b - s2 * a).rem_euclid(e);
                    }
                    if let Some(u) = &mut u {
                        for k in 0..r {
                            let a = u[(t, k)];
                            let b = u[(i, k)];
                            u[(t, k)] = (x * a + y * b).rem_euclid(e);
                            u[(i, k)] = (s1 * b - s2 * a).rem_euclid(e);
                        }
                    }
                    clean = false;
                }
            }
            for j in t + 1..c {
                let a_tj = m[(t, j)];
                if a_tj == 0 {
                    continue;
                }
                let p = m[(t, t)];
                if a_tj % p == 0 {
                    let q = a_tj / p;
                    for k in t..r {
                        m[(k, j)] = (m[(k, j)] - q * m[(k, t)]).rem_euclid(e);
                    }
                    if let Some(v) = &mut v {
                        for k in 0..c {
                            v[(k, j)] = (v[(k, j)] - q * v[(k, t)]).rem_euclid(e);
                        }
                    }
                } else {
                    let (g, x, y) = egcd(p, a_tj);
                    let (s1, s2) = (p / g, a_tj / g);
                    for k in t..r {
                        let a = m[(k, t)];
                        let b = m[(k, j)];
                        m[(k, t)] = (x * a + y * b).rem_euclid(e);
                        m[(k, j)] = (s1 * b - s2 * a).rem_euclid(e);
                    }
                    if let Some(v) = &mut v {
                        for k in 0..c {
                            let a = v[(k, t)];
                            let b = v[(k, j)];
                            v[(k, t)] = (x * a + y * b).rem_euclid(e);
                            v[(k, j)] = (s1 * b - s2 * a).rem_euclid(e);
                        }
                    }
                    clean = false;
                }
            }
            if clean {
                break 'pivot;
            }
        }
    }
    let diag = (0..steps).map(|t| m[(t, t)]).collect();
    ModSmith {
        e,
        rows: r,
        cols: c,
        diag,
        u,
        v,
    }
}

impl ModSmith {
    fn diag_at(&self, j: usize) -> i64 {
        self.diag.get(j).copied().unwrap_or(0)
    }

    /// Spanning set of { x : a * x = 0 mod e }.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let v = self.v.as_ref().expect("kernel needs v tracking");
        let e = self.e;
        let mut gens = Vec::new();
        for j in 0..self.cols {
            let d = self.diag_at(j);
            let g = if d == 0 { e } else { gcd(d, e) };
            if g <= 1 {
                continue;
            }
            let scale = e / g;
            let gen: Vec<i64> = (0..self.cols).map(|i| (v[(i, j)] * scale).rem_euclid(e)).collect();
            if gen.iter().any(|&x| x != 0) {
                gens.push(gen);
            }
        }
        gens
    }

    /// One solution of a * x = b mod e, if any.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let u = self.u.as_ref().expect("solve needs u tracking");
        let v = self.v.as_ref().expect("solve needs v tracking");
        let e = self.e;
        let c = u.apply(b);
        let mut y = vec![0i64; self.cols];
        for i in 0..self.rows {
            let rhs = c[i];
            if i >= self.diag.len() || self.diag_at(i) == 0 {
                if rhs != 0 {
                    return None;
                }
                continue;
            }
            let d = self.diag_at(i);
            let g = gcd(d, e);
            if rhs % g != 0 {
                return None;
            }
            let em = e / g;
            y[i] = ((rhs / g) * modinv((d / g).rem_euclid(em), em)).rem_euclid(em);
        }
        Some(v.apply(&y))
    }
}

/// Spanning-set presentation of a submodule of (Z/e)^dim.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SubmoduleModE {
    pub e: i64,
    pub dim: usize,
    pub gens: Vec<Vec<i64>>,
}

impl SubmoduleModE {
    pub fn zero(e: i64, dim: usize) -> Self {
        SubmoduleModE {
            e,
            dim,
            gens: vec![],
        }
    }

    pub fn full(e: i64, dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let mut v = vec![0i64; dim];
                v[i] = 1;
                v
            })
            .collect();
        SubmoduleModE { e, dim, gens }
    }

    pub fn from_gens(e: i64, dim: usize, gens: Vec<Vec<i64>>) -> Self {
        let gens = gens
            .into_iter()
            .map(|g| {
                assert_eq!(g.len(), dim);
                g.into_iter().map(|v| v.rem_euclid(e)).collect::<Vec<_>>()
            })
            .filter(|g| g.iter().any(|&v| v != 0))
            .collect();
        SubmoduleModE { e, dim, gens }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &SubmoduleModE) -> SubmoduleModE {
        assert_eq!((self.e, self.dim), (other.e, other.dim));
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        SubmoduleModE {
            e: self.e,
            dim: self.dim,
            gens,
        }
    }

    /// Howell-form reducer for membership tests against this span.
    pub fn reducer(&self) -> RowReducer {
        let mut red = RowReducer::new(self.e, self.dim.max(1), true);
        for g in &self.gens {
            red.push_row(g.clone());
        }
        red
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reducer().contains(v)
    }

    /// Matrix whose columns are the generators.
    pub fn gen_matrix(&self) -> ModMatrix {
        let mut m = ModMatrix::zero(self.e, self.dim.max(1), self.gens.len().max(1));
        for (j, g) in self.gens.iter().enumerate() {
            for (i, &x) in g.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }
}

/// v in span(s) over Z/e?
pub fn membership(v: &[i64], s: &SubmoduleModE) -> bool {
    s.contains(v)
}

/// Kernel of an integer matrix mod e, as a spanning set.
pub fn kernel_mod(a: &IntMatrix, e: i64) -> SubmoduleModE {
    let m = ModMatrix::from_int_matrix(a, e);
    kernel_of_rows(e, a.cols, (0..m.rows).map(|i| m.row(i).to_vec()))
}

/// Kernel of a system given as a row iterator; rows are accumulated into a
/// reducer first so huge sparse systems never materialize.
pub fn kernel_of_rows<I>(e: i64, cols: usize, rows: I) -> SubmoduleModE
where
    I: IntoIterator<Item = Vec<i64>>,
{
    let mut red = RowReducer::new(e, cols.max(1), false);
    for row in rows {
        red.push_row(row);
    }
    let pivot_rows = red.pivot_rows();
    if cols == 0 {
        return SubmoduleModE::zero(e, 0);
    }
    let m = ModMatrix::from_rows(e, &pivot_rows.iter().map(|r| r.clone()).collect::<Vec<_>>());
    let m = if pivot_rows.is_empty() {
        ModMatrix::zero(e, 1, cols)
    } else {
        m
    };
    let smith = smith_mod(&m, false, true);
    SubmoduleModE::from_gens(e, cols, smith.kernel())
}

/// { x : exists y with a*x = b*y mod e }, projected to the x coordinates.
pub fn constrained_kernel(a: &ModMatrix, b: &ModMatrix, e: i64) -> SubmoduleModE {
    assert_eq!(a.rows, b.rows, "constrained_kernel row mismatch");
    assert_eq!(a.e, e);
    assert_eq!(b.e, e);
    let nx = a.cols;
    let rows = (0..a.rows).map(|i| {
        let mut row = Vec::with_capacity(nx + b.cols);
        row.extend_from_slice(a.row(i));
        row.extend(b.row(i).iter().map(|&v| (-v).rem_euclid(e)));
        row
    });
    let ker = kernel_of_rows(e, nx + b.cols, rows);
    SubmoduleModE::from_gens(e, nx, ker.gens.into_iter().map(|g| g[..nx].to_vec()).collect())
}

/// Invariant factors of v / w, where w must be contained in v.
pub fn quotient_invariants(v: &SubmoduleModE, w: &SubmoduleModE) -> Result<AbelianInvariants> {
    assert_eq!((v.e, v.dim), (w.e, w.dim));
    let e = v.e;
    let k = v.gens.len();
    if k == 0 {
        if !w.gens.is_empty() && w.gens.iter().any(|g| g.iter().any(|&x| x != 0)) {
            return Err(Error::NotSubmodule);
        }
        return Ok(AbelianInvariants::trivial());
    }
    let m = v.gen_matrix();
    let smith = smith_mod(&m, true, true);

    // Relations among the generators of v: the kernel of the generator
    // matrix plus the e-torsion rows, then one row per generator of w.
    let mut rel_rows: Vec<Vec<i64>> = Vec::new();
    for gker in smith.kernel() {
        rel_rows.push(gker[..k].to_vec());
    }
    for i in 0..k {
        let mut row = vec![0i64; k];
        row[i] = e;
        rel_rows.push(row);
    }
    for gw in &w.gens {
        match smith.solve(gw) {
            Some(x) => rel_rows.push(x[..k].to_vec()),
            None => return Err(Error::NotSubmodule),
        }
    }
    let rel = IntMatrix::from_rows(&rel_rows);
    abelian_invariants_from_relations(k, &rel)
}

/// |v / w|, assuming containment.
pub fn quotient_order(v: &SubmoduleModE, w: &SubmoduleModE) -> Result<u128> {
    Ok(quotient_invariants(v, w)?.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let ker = kernel_mod(&IntMatrix::zero(2, 3), 4);
        let full = SubmoduleModE::full(4, 3);
        for g in &full.gens {
            assert!(ker.contains(g));
        }
        for g in &ker.gens {
            assert!(full.contains(g));
        }
    }

    #[test]
    fn kernel_of_two_mod_four() {
        let ker = kernel_mod(&im(&[vec![2]]), 4);
        assert!(ker.contains(&[2]));
        assert!(!ker.contains(&[1]));
        assert!(!ker.contains(&[3]));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let ker = kernel_mod(&IntMatrix::identity(3), 6);
        assert!(ker.is_zero());
    }

    #[test]
    fn constrained_kernel_full_image() {
        // b = identity has full image, so every x qualifies
        let a = ModMatrix::from_rows(6, &[vec![1, 2], vec![3, 4]]);
        let b = ModMatrix::identity(6, 2);
        let ck = constrained_kernel(&a, &b, 6);
        assert!(ck.contains(&[1, 0]));
        assert!(ck.contains(&[0, 1]));
    }

    #[test]
    fn constrained_kernel_zero_b_is_kernel() {
        let a = im(&[vec![2]]);
        let am = ModMatrix::from_int_matrix(&a, 4);
        let b = ModMatrix::zero(4, 1, 1);
        let ck = constrained_kernel(&am, &b, 4);
        let ker = kernel_mod(&a, 4);
        for x in 0..4i64 {
            assert_eq!(ck.contains(&[x]), ker.contains(&[x]));
        }
    }

    #[test]
    fn constrained_kernel_enumeration() {
        // a = [1], b = [2], e = 4: x must be even
        let a = ModMatrix::from_rows(4, &[vec![1]]);
        let b = ModMatrix::from_rows(4, &[vec![2]]);
        let ck = constrained_kernel(&a, &b, 4);
        for x in 0..4i64 {
            let expect = (0..4).any(|y| (x - 2 * y).rem_euclid(4) == 0);
            assert_eq!(ck.contains(&[x]), expect, "x = {x}");
        }
    }

    #[test]
    fn quotient_w_equals_v() {
        let v = SubmoduleModE::full(4, 2);
        assert!(quotient_invariants(&v, &v).unwrap().is_trivial());
    }

    #[test]
    fn quotient_z4_by_two() {
        let v = SubmoduleModE::full(4, 1);
        let w = SubmoduleModE::from_gens(4, 1, vec![vec![2]]);
        assert_eq!(quotient_invariants(&v, &w).unwrap().factors, vec![2]);
    }

    #[test]
    fn quotient_full_z2_squared() {
        let v = SubmoduleModE::full(2, 2);
        let w = SubmoduleModE::zero(2, 2);
        assert_eq!(quotient_invariants(&v, &w).unwrap().factors, vec![2, 2]);
    }

    #[test]
    fn quotient_rejects_non_submodule() {
        let v = SubmoduleModE::from_gens(4, 1, vec![vec![2]]);
        let w = SubmoduleModE::from_gens(4, 1, vec![vec![1]]);
        assert!(matches!(
            quotient_invariants(&v, &w),
            Err(Error::NotSubmodule)
        ));
    }

    #[test]
    fn quotient_invariant_under_gen_permutation() {
        let v1 = SubmoduleModE::from_gens(8, 2, vec![vec![2, 0], vec![0, 1], vec![2, 3]]);
        let v2 = SubmoduleModE::from_gens(8, 2, vec![vec![2, 3], vec![2, 0], vec![0, 1]]);
        let w = SubmoduleModE::from_gens(8, 2, vec![vec![4, 0]]);
        assert_eq!(
            quotient_invariants(&v1, &w).unwrap(),
            quotient_invariants(&v2, &w).unwrap()
        );
    }

    #[test]
    fn membership_examples() {
        let s = SubmoduleModE::from_gens(4, 1, vec![vec![2]]);
        assert!(membership(&[0], &s));
        assert!(membership(&[2], &s));
        assert!(!membership(&[1], &s));
    }

    #[test]
    fn howell_shadow_membership() {
        // span{(2,1)} mod 4 contains 2*(2,1) = (0,2); plain echelon misses it
        let s = SubmoduleModE::from_gens(4, 2, vec![vec![2, 1]]);
        assert!(s.contains(&[0, 2]));
        assert!(!s.contains(&[0, 1]));
        assert!(!s.contains(&[2, 0]));
    }

    #[test]
    fn kernel_count_matches_quotient_order() {
        // exhaustive solution count vs |ambient| / |image-side quotient|
        for e in 2..=6i64 {
            let a = im(&[vec![2, 1, 0], vec![0, 3, 1]]);
            let ker = kernel_mod(&a, e);
            let mut count = 0u64;
            for x in 0..e {
                for y in 0..e {
                    for z in 0..e {
                        let r1 = (2 * x + y).rem_euclid(e);
                        let r2 = (3 * y + z).rem_euclid(e);
                        if r1 == 0 && r2 == 0 {
                            count += 1;
                        }
                    }
                }
            }
            let order = quotient_order(&ker.sum(&SubmoduleModE::zero(e, 3)), &SubmoduleModE::zero(e, 3))
                .unwrap();
            assert_eq!(order as u64, count, "e = {e}");
        }
    }
}
