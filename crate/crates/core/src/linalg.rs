//! Exact ranks of sparse integer matrices, Betti numbers and Euler characteristics.
//!
//! Rank is computed by fraction-free sparse elimination: rows are kept primitive
//! (content divided out after every update) and pivots are picked Markowitz style,
//! shortest row first, preferring unit entries in sparse columns. Arithmetic starts
//! in `i64`, and restarts in `i128` and then `BigInt` if an operation overflows.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::GradedComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("complex has not been checked for d^2 = 0")]
    ComplexNotValidated,
    #[error("entry ({0}, {1}) is out of range")]
    IndexOutOfRange(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Integer matrix as sorted `(row, col, value)` triples with no zeros or duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix { rows: n, cols: n, entries: (0..n).map(|i| (i, i, 1)).collect() }
    }

    /// Sums duplicate coordinates and drops zeros.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        mut triples: Vec<(usize, usize, i64)>,
    ) -> Result<Self, LinalgError> {
        if let Some(&(r, c, _)) = triples.iter().find(|&&(r, c, _)| r >= rows || c >= cols) {
            return Err(LinalgError::IndexOutOfRange(r, c));
        }
        triples.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, i64)> = Vec::with_capacity(triples.len());
        for (r, c, v) in triples {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        Ok(SparseIntMatrix { rows, cols, entries })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|e| *e.1 != 0).map(move |(j, &v)| (i, j, v)))
            .collect();
        SparseIntMatrix { rows: rows.len(), cols, entries }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] = v;
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        match self.entries.binary_search_by_key(&(r, c), |&(a, b, _)| (a, b)) {
            Ok(i) => self.entries[i].2,
            Err(_) => 0,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseIntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Exact product `self * other`, accumulated in `i128`.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let b_rows = other.row_lists();
        let mut entries = Vec::new();
        let mut acc: std::collections::BTreeMap<usize, i128> = Default::default();
        let mut i = 0;
        while i < self.entries.len() {
            let r = self.entries[i].0;
            acc.clear();
            while i < self.entries.len() && self.entries[i].0 == r {
                let (_, k, a) = self.entries[i];
                for &(c, b) in &b_rows[k] {
                    *acc.entry(c).or_insert(0) += a as i128 * b as i128;
                }
                i += 1;
            }
            for (&c, &v) in &acc {
                if v != 0 {
                    let v = i64::try_from(v)
                        .map_err(|_| LinalgError::ShapeMismatch("product entry exceeds i64".into()))?;
                    entries.push((r, c, v));
                }
            }
        }
        Ok(SparseIntMatrix { rows: self.rows, cols: other.cols, entries })
    }

    fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            out[r].push((c, v));
        }
        out
    }

    /// Independent diagonal blocks: groups of rows and columns connected by nonzeros.
    pub fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut uf = UnionFind::<usize>::new(self.rows + self.cols);
        for &(r, c, _) in &self.entries {
            uf.union(r, self.rows + c);
        }
        let mut by_root: std::collections::HashMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
        for &(r, _, _) in &self.entries {
            by_root.entry(uf.find(r)).or_default();
        }
        for r in 0..self.rows {
            if let Some(b) = by_root.get_mut(&uf.find(r)) {
                b.0.push(r);
            }
        }
        for c in 0..self.cols {
            if let Some(b) = by_root.get_mut(&uf.find(self.rows + c)) {
                b.1.push(c);
            }
        }
        let mut out: Vec<_> = by_root.into_values().collect();
        out.sort();
        out
    }
}

impl fmt::Display for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Integer types usable by the eliminator; `None` signals overflow.
pub trait ExactInt: Clone + fmt::Debug {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
}

macro_rules! exact_prim {
    ($t:ty) => {
        impl ExactInt for $t {
            fn from_i64(x: i64) -> Self {
                x as $t
            }
            fn is_zero(&self) -> bool {
                *self == 0
            }
            fn is_unit(&self) -> bool {
                *self == 1 || *self == -1
            }
            fn checked_mul(&self, o: &Self) -> Option<Self> {
                <$t>::checked_mul(*self, *o).filter(|v| *v != <$t>::MIN)
            }
            fn checked_sub(&self, o: &Self) -> Option<Self> {
                <$t>::checked_sub(*self, *o).filter(|v| *v != <$t>::MIN)
            }
            fn gcd(&self, o: &Self) -> Option<Self> {
                Some(Integer::gcd(self, o))
            }
            fn div_exact(&self, o: &Self) -> Self {
                *self / *o
            }
        }
    };
}
exact_prim!(i64);
exact_prim!(i128);

impl ExactInt for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd(&self, o: &Self) -> Option<Self> {
        Some(Integer::gcd(self, o))
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

type Row<T> = Vec<(u32, T)>;

/// `a*x - b*y` on sparse rows, made primitive.
fn combine<T: ExactInt>(a: &T, x: &Row<T>, b: &T, y: &Row<T>) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::from_i64(0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(u32::MAX, |e| e.0);
        let cj = y.get(j).map_or(u32::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a.checked_mul(&x[i - 1].1)?)
        } else if cj < ci {
            j += 1;
            (cj, zero.checked_sub(&b.checked_mul(&y[j - 1].1)?)?)
        } else {
            i += 1;
            j += 1;
            (ci, a.checked_mul(&x[i - 1].1)?.checked_sub(&b.checked_mul(&y[j - 1].1)?)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    let mut g = T::from_i64(0);
    for (_, v) in &out {
        g = g.gcd(v)?;
        if g.is_unit() {
            return Some(out);
        }
    }
    if !g.is_zero() {
        for e in &mut out {
            e.1 = e.1.div_exact(&g);
        }
    }
    Some(out)
}

fn eliminate<T: ExactInt>(rows: &[Vec<(u32, i64)>], ncols: usize) -> Option<usize> {
    let mut rows: Vec<Row<T>> =
        rows.iter().map(|r| r.iter().map(|&(c, v)| (c, T::from_i64(v))).collect()).collect();
    let mut alive = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0usize; ncols];
    let mut heap = BinaryHeap::new();
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
            col_count[c as usize] += 1;
        }
        if !r.is_empty() {
            heap.push(Reverse((r.len(), i)));
        }
    }
    let mut rank = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        if !alive[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        alive[r] = false;
        for &(c, _) in &pivot_row {
            col_count[c as usize] -= 1;
        }
        let (pc, pv) = pivot_row
            .iter()
            .min_by_key(|(c, v)| (!v.is_unit(), col_count[*c as usize]))
            .map(|(c, v)| (*c, v.clone()))
            .expect("pivot row is nonempty");
        rank += 1;
        let targets = std::mem::take(&mut col_rows[pc as usize]);
        for t in targets {
            let t = t as usize;
            if !alive[t] {
                continue;
            }
            let Ok(k) = rows[t].binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let tv = rows[t][k].1.clone();
            let g = pv.gcd(&tv)?;
            let (a, b) = (pv.div_exact(&g), tv.div_exact(&g));
            let old = std::mem::take(&mut rows[t]);
            let new = combine(&a, &old, &b, &pivot_row)?;
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                let co = old.get(i).map_or(u32::MAX, |e| e.0);
                let cn = new.get(j).map_or(u32::MAX, |e| e.0);
                if co < cn {
                    col_count[co as usize] -= 1;
                    i += 1;
                } else if cn < co {
                    col_count[cn as usize] += 1;
                    col_rows[cn as usize].push(t as u32);
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
            if new.is_empty() {
                alive[t] = false;
            } else {
                heap.push(Reverse((new.len(), t)));
            }
            rows[t] = new;
        }
    }
    Some(rank)
}

fn rank_block(rows: &[Vec<(u32, i64)>], ncols: usize) -> usize {
    if let Some(r) = eliminate::<i64>(rows, ncols) {
        return r;
    }
    if let Some(r) = eliminate::<i128>(rows, ncols) {
        return r;
    }
    eliminate::<BigInt>(rows, ncols).expect("big integers do not overflow")
}

/// Rows of each independent block, with columns renumbered from 0.
fn block_rows(m: &SparseIntMatrix) -> Vec<(Vec<Vec<(u32, i64)>>, usize)> {
    let lists = m.row_lists();
    m.blocks()
        .into_iter()
        .map(|(rows, cols)| {
            let mut local = std::collections::HashMap::with_capacity(cols.len());
            for (i, &c) in cols.iter().enumerate() {
                local.insert(c, i as u32);
            }
            let block: Vec<Vec<(u32, i64)>> = rows
                .iter()
                .map(|&r| {
                    let mut row: Vec<(u32, i64)> = lists[r].iter().map(|&(c, v)| (local[&c], v)).collect();
                    row.sort_unstable_by_key(|e| e.0);
                    row
                })
                .collect();
            (block, cols.len())
        })
        .collect()
}

/// Rank over the rationals.
pub fn rank(m: &SparseIntMatrix) -> usize {
    block_rows(m).iter().map(|(rows, ncols)| rank_block(rows, *ncols)).sum()
}

/// Rank over `F_p`; a lower bound for the rational rank.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    assert!(p > 2 && p < (1 << 62), "prime must fit comfortably in u64");
    let mut total = 0;
    for (rows, ncols) in block_rows(m) {
        let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
        let mut rows: Vec<Vec<(u32, u64)>> = rows
            .iter()
            .map(|r| r.iter().map(|&(c, v)| (c, reduce(v))).filter(|e| e.1 != 0).collect())
            .collect();
        let mut pivot_of_col: Vec<Option<Vec<(u32, u64)>>> = vec![None; ncols];
        rows.sort_by_key(|r| r.len());
        for mut row in rows {
            while let Some(&(c, v)) = row.first() {
                let Some(prow) = &pivot_of_col[c as usize] else {
                    let inv = pow_mod(v, p - 2, p);
                    for e in &mut row {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivot_of_col[c as usize] = Some(row);
                    total += 1;
                    break;
                };
                // row -= v * prow (prow is monic)
                let mut out = Vec::with_capacity(row.len() + prow.len());
                let (mut i, mut j) = (0, 0);
                while i < row.len() || j < prow.len() {
                    let ci = row.get(i).map_or(u32::MAX, |e| e.0);
                    let cj = prow.get(j).map_or(u32::MAX, |e| e.0);
                    let (col, val) = if ci < cj {
                        i += 1;
                        (ci, row[i - 1].1)
                    } else if cj < ci {
                        j += 1;
                        (cj, (p - mul_mod(v, prow[j - 1].1, p)) % p)
                    } else {
                        i += 1;
                        j += 1;
                        (ci, (row[i - 1].1 + p - mul_mod(v, prow[j - 1].1, p)) % p)
                    };
                    if val != 0 {
                        out.push((col, val));
                    }
                }
                row = out;
            }
        }
    }
    total
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Integer basis of the right kernel `{x : M x = 0}`, each vector primitive.
/// Dense rational elimination: meant for small matrices.
pub fn kernel_basis(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m.cols]; m.rows];
    for &(r, c, v) in &m.entries {
        a[r][c] = BigRational::from_integer(BigInt::from(v));
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        let Some(p) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..m.cols {
                    let t = &f * &a[row][c];
                    a[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); m.cols];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        let den = v.iter().fold(BigInt::one(), |acc, x| Integer::lcm(&acc, x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| Integer::gcd(&acc, x));
        out.push(ints.into_iter().map(|x| x / &g).collect());
    }
    out
}

/// Determinant of a small square integer matrix by Bareiss elimination.
pub fn det_small(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if Zero::is_zero(&a[k][k]) {
            let Some(s) = (k + 1..n).find(|&i| !Zero::is_zero(&a[i][k])) else {
                return 0;
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].to_i128().expect("determinant fits in i128")
}

/// Betti numbers by degree: `b_s = dim_s - rank d_s - rank d_{s-1}`.
pub fn betti_numbers(c: &GradedComplex) -> Result<Vec<usize>, LinalgError> {
    if !c.is_validated() {
        return Err(LinalgError::ComplexNotValidated);
    }
    let ranks: Vec<usize> = c.differentials.iter().map(rank).collect();
    Ok((0..c.bases.len())
        .map(|s| {
            let out = ranks.get(s).copied().unwrap_or(0);
            let inc = if s > 0 { ranks.get(s - 1).copied().unwrap_or(0) } else { 0 };
            c.bases[s].len() - out - inc
        })
        .collect())
}

/// Alternating sum of dimensions.
pub fn euler_characteristic(c: &GradedComplex) -> i64 {
    c.bases.iter().enumerate().map(|(s, b)| if s % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) }).sum()
}

/// Alternating sum of Betti numbers, for comparison with [`euler_characteristic`].
pub fn euler_from_betti(b: &[usize]) -> i64 {
    b.iter().enumerate().map(|(s, &x)| if s % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&SparseIntMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&SparseIntMatrix::identity(5)), 5);
        let m = SparseIntMatrix::from_dense(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_mod_p(&m, 1_000_000_007), 2);
        assert_eq!(rank_mod_p(&SparseIntMatrix::from_dense(&[vec![3, 0], vec![0, 1]]), 3), 1);
    }

    #[test]
    fn overflow_falls_back() {
        let big = 1_000_000_000_007i64;
        let m = SparseIntMatrix::from_dense(&[
            vec![big, big + 2, big + 6],
            vec![big + 1, big + 3, big + 10],
            vec![2 * big + 1, 2 * big + 5, 2 * big + 16],
        ]);
        assert_eq!(rank(&m), 2);
        assert!(eliminate::<i64>(&block_rows(&m)[0].0, 3).is_none());
    }

    #[test]
    fn determinants() {
        assert_eq!(det_small(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_small(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]), 4);
        assert_eq!(det_small(&[]), 1);
    }

    #[test]
    fn duplicates_are_summed() {
        let m = SparseIntMatrix::from_triples(2, 2, vec![(0, 0, 1), (0, 0, 2), (1, 1, 1), (1, 1, -1)]).unwrap();
        assert_eq!(m.entries, vec![(0, 0, 3)]);
        assert!(SparseIntMatrix::from_triples(1, 1, vec![(1, 0, 1)]).is_err());
    }
}
