//! Exact integer linear algebra: Smith normal form and abelian invariants.
//!
//! Everything here works over arbitrary-precision integers; the `modmat`
//! submodule holds the Z/e machinery built on top of it.

pub mod modmat;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row in matrix literal");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * n + j].clone();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n - 1 {
            if at(&a, k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !at(&a, i, k).is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (at(&a, i, j) * at(&a, k, k) - at(&a, i, k) * at(&a, k, j)) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        sign * at(&a, n - 1, n - 1)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[i] += q * row[k]
    fn add_row_multiple(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = q * &self[(k, c)];
            self[(i, c)] += t;
        }
    }

    /// col[j] += q * col[k]
    fn add_col_multiple(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = q * &self[(r, k)];
            self[(r, j)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self[(i, c)].clone();
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V` and diagonal
/// `D` whose nonzero entries form a divisibility chain.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub diag: Vec<BigInt>,
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let steps = r.min(c);

    for t in 0..steps {
        'pivot: loop {
            // Smallest-magnitude nonzero entry of the trailing submatrix,
            // ties broken by position, so the output is deterministic.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            let (bi, bj) = (*bi, *bj);
                            if d[(i, j)].abs() < d[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let (pi, pj) = match best {
                Some(p) => p,
                None => break 'pivot, // submatrix is zero
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&d[(i, t)], &d[(t, t)]);
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&d[(t, j)], &d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Pivot must divide every remaining entry for the chain to hold.
            let mut fixed = true;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        d.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let diag = (0..steps).map(|t| d[(t, t)].clone()).collect();
    SnfResult { u, d, v, diag }
}

/// Quotient rounding to nearest, so remainders have magnitude <= |b|/2.
fn rounded_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Invariant-factor description of a finite abelian group.
///
/// `factors` is the chain d_1 | d_2 | ... with every d_i >= 2; the empty
/// list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct AbelianInvariants {
    pub factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { factors: vec![] }
    }

    pub fn new(factors: Vec<u64>) -> Self {
        for w in factors.windows(2) {
            assert!(w[1] % w[0] == 0, "invariant factors must form a chain");
        }
        assert!(factors.iter().all(|&f| f >= 2));
        AbelianInvariants { factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, &f| acc.checked_mul(f as u128).expect("order overflow"))
    }

    /// p-primary component, again as an invariant chain.
    pub fn p_part(&self, p: u64) -> Result<AbelianInvariants> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut parts: Vec<u64> = self
            .factors
            .iter()
            .map(|&f| {
                let mut q = 1u64;
                let mut n = f;
                while n % p == 0 {
                    q *= p;
                    n /= p;
                }
                q
            })
            .filter(|&q| q > 1)
            .collect();
        parts.sort_unstable();
        Ok(AbelianInvariants { factors: parts })
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Invariant factors of Z^n / rowspace(relations), with unit factors dropped.
pub fn abelian_invariants_from_relations(
    n_gens: usize,
    relations: &IntMatrix,
) -> Result<AbelianInvariants> {
    assert_eq!(relations.cols, n_gens, "relation width mismatch");
    let snf = smith_normal_form(relations);
    let mut factors = Vec::new();
    for t in 0..n_gens {
        let d = if t < snf.diag.len() {
            snf.diag[t].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            return Err(Error::InfiniteQuotient);
        }
        if d > BigInt::one() {
            let (_, digits) = d.to_u64_digits();
            if digits.len() > 1 {
                return Err(Error::InfiniteQuotient); // absurdly large; treat as defect
            }
            factors.push(digits[0]);
        }
    }
    factors.sort_unstable();
    Ok(AbelianInvariants { factors })
}
