//! Dense exact matrices over F_p or Q: rank, kernel, solve, echelon forms.
//!
//! Storage is row-major. F_p entries live in `Vec<u64>` canonical residues;
//! rationals in `Vec<BigRational>`. Row reduction over F_2 runs on a
//! transient bitpacked copy, which is what keeps the large resolutions in
//! characteristic 2 cheap. All reductions are deterministic (topmost usable
//! pivot, full reduced echelon form), so every derived basis is canonical.

use num_rational::BigRational;
use num_traits::Zero;

use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Store {
    Fp(Vec<u64>),
    Rat(Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Store,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        let data = match field {
            Field::Fp(_) => Store::Fp(vec![0; rows * cols]),
            Field::Rational => Store::Rat(vec![BigRational::zero(); rows * cols]),
        };
        Mat { field, rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from integer entries, reducing into the field.
    pub fn from_ints(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        Mat::from_fn(field, rows, cols, |i, j| field.from_int(entries[i * cols + j]))
    }

    /// Single column from a coordinate vector.
    pub fn col_vec(field: Field, v: &[Scalar]) -> Mat {
        Mat::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.data {
            Store::Fp(v) => Scalar::Fp {
                p: self.field.characteristic(),
                val: v[i * self.cols + j],
            },
            Store::Rat(v) => Scalar::Rat(v[i * self.cols + j].clone()),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        assert_eq!(s.field(), self.field, "field mismatch");
        let idx = i * self.cols + j;
        match (&mut self.data, s) {
            (Store::Fp(v), Scalar::Fp { val, .. }) => v[idx] = val,
            (Store::Rat(v), Scalar::Rat(r)) => v[idx] = r,
            _ => unreachable!(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Store::Fp(v) => v.iter().all(|x| *x == 0),
            Store::Rat(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.field, other.field);
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        Mat::from_fn(self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                other.get(i - self.rows, j)
            }
        })
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        assert!(r1 <= self.rows && c1 <= self.cols && r0 <= r1 && c0 <= c1);
        Mat::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.field, other.field);
        match (&self.data, &other.data) {
            (Store::Fp(a), Store::Fp(b)) => {
                let p = self.field.characteristic();
                let data = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                Mat { field: self.field, rows: self.rows, cols: self.cols, data: Store::Fp(data) }
            }
            (Store::Rat(a), Store::Rat(b)) => {
                let data = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Mat { field: self.field, rows: self.rows, cols: self.cols, data: Store::Rat(data) }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        match &self.data {
            Store::Fp(a) => {
                let p = self.field.characteristic();
                let data = a.iter().map(|x| (p - x) % p).collect();
                Mat { field: self.field, rows: self.rows, cols: self.cols, data: Store::Fp(data) }
            }
            Store::Rat(a) => {
                let data = a.iter().map(|x| -x).collect();
                Mat { field: self.field, rows: self.rows, cols: self.cols, data: Store::Rat(data) }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).mul(s))
    }

    /// Matrix product. F_p accumulates in u128 and reduces once per entry;
    /// F_2 additionally uses a bitpacked row loop.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        assert_eq!(self.field, other.field);
        match (&self.data, &other.data) {
            (Store::Fp(a), Store::Fp(b)) => {
                let p = self.field.characteristic();
                if p == 2 {
                    return self.mul_f2(other);
                }
                let (m, n, q) = (self.rows, self.cols, other.cols);
                let mut out = vec![0u64; m * q];
                for i in 0..m {
                    for j in 0..q {
                        let mut acc: u128 = 0;
                        for k in 0..n {
                            acc += a[i * n + k] as u128 * b[k * q + j] as u128;
                        }
                        out[i * q + j] = (acc % p as u128) as u64;
                    }
                }
                Mat { field: self.field, rows: m, cols: q, data: Store::Fp(out) }
            }
            (Store::Rat(a), Store::Rat(b)) => {
                let (m, n, q) = (self.rows, self.cols, other.cols);
                let mut out = vec![BigRational::zero(); m * q];
                for i in 0..m {
                    for k in 0..n {
                        if a[i * n + k].is_zero() {
                            continue;
                        }
                        for j in 0..q {
                            if !b[k * q + j].is_zero() {
                                out[i * q + j] += &a[i * n + k] * &b[k * q + j];
                            }
                        }
                    }
                }
                Mat { field: self.field, rows: m, cols: q, data: Store::Rat(out) }
            }
            _ => unreachable!(),
        }
    }

    fn mul_f2(&self, other: &Mat) -> Mat {
        let (m, n, q) = (self.rows, self.cols, other.cols);
        let a = match &self.data {
            Store::Fp(v) => v,
            _ => unreachable!(),
        };
        let bw = pack_f2(other);
        let words = bw.words;
        let mut out_bits = vec![0u64; m * words];
        for i in 0..m {
            for k in 0..n {
                if a[i * n + k] & 1 == 1 {
                    let (dst, src) = (i * words, k * words);
                    for w in 0..words {
                        out_bits[dst + w] ^= bw.bits[src + w];
                    }
                }
            }
        }
        let mut out = vec![0u64; m * q];
        for i in 0..m {
            for j in 0..q {
                out[i * q + j] = (out_bits[i * words + j / 64] >> (j % 64)) & 1;
            }
        }
        Mat { field: self.field, rows: m, cols: q, data: Store::Fp(out) }
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        match &self.data {
            Store::Fp(_) if self.field.characteristic() == 2 => self.rref_f2(),
            Store::Fp(_) => self.rref_fp(),
            Store::Rat(_) => self.rref_rat(),
        }
    }

    fn rref_fp(&self) -> (Mat, Vec<usize>) {
        let p = self.field.characteristic();
        let (m, n) = (self.rows, self.cols);
        let mut a = match &self.data {
            Store::Fp(v) => v.clone(),
            _ => unreachable!(),
        };
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(pr) = (row..m).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..n {
                    a.swap(row * n + j, pr * n + j);
                }
            }
            let inv = Scalar::Fp { p, val: a[row * n + col] }.inv();
            let inv = match inv {
                Scalar::Fp { val, .. } => val,
                _ => unreachable!(),
            };
            for j in col..n {
                a[row * n + j] = ((a[row * n + j] as u128 * inv as u128) % p as u128) as u64;
            }
            for r in 0..m {
                if r != row && a[r * n + col] != 0 {
                    let f = p - a[r * n + col];
                    for j in col..n {
                        a[r * n + j] =
                            ((a[r * n + j] as u128 + f as u128 * a[row * n + j] as u128) % p as u128) as u64;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (
            Mat { field: self.field, rows: m, cols: n, data: Store::Fp(a) },
            pivots,
        )
    }

    fn rref_f2(&self) -> (Mat, Vec<usize>) {
        let (m, n) = (self.rows, self.cols);
        let mut bw = pack_f2(self);
        let words = bw.words;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            if row == m {
                break;
            }
            let (w, b) = (col / 64, col % 64);
            let Some(pr) = (row..m).find(|&r| (bw.bits[r * words + w] >> b) & 1 == 1) else {
                continue;
            };
            if pr != row {
                for j in 0..words {
                    bw.bits.swap(row * words + j, pr * words + j);
                }
            }
            for r in 0..m {
                if r != row && (bw.bits[r * words + w] >> b) & 1 == 1 {
                    let (dst, src) = (r * words, row * words);
                    for j in w..words {
                        bw.bits[dst + j] ^= bw.bits[src + j];
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut a = vec![0u64; m * n];
        for i in 0..m {
            for j in 0..n {
                a[i * n + j] = (bw.bits[i * words + j / 64] >> (j % 64)) & 1;
            }
        }
        (
            Mat { field: self.field, rows: m, cols: n, data: Store::Fp(a) },
            pivots,
        )
    }

    fn rref_rat(&self) -> (Mat, Vec<usize>) {
        let (m, n) = (self.rows, self.cols);
        let mut a = match &self.data {
            Store::Rat(v) => v.clone(),
            _ => unreachable!(),
        };
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(pr) = (row..m).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..n {
                    a.swap(row * n + j, pr * n + j);
                }
            }
            let inv = a[row * n + col].recip();
            for j in col..n {
                let v = &a[row * n + j] * &inv;
                a[row * n + j] = v;
            }
            for r in 0..m {
                if r != row && !a[r * n + col].is_zero() {
                    let f = a[r * n + col].clone();
                    for j in col..n {
                        let v = &a[r * n + j] - &f * &a[row * n + j];
                        a[r * n + j] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (
            Mat { field: self.field, rows: m, cols: n, data: Store::Rat(a) },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the null space, as matrix columns. Count is
    /// always cols - rank.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut out = Mat::zeros(self.field, n, free.len());
        for (k, &j) in free.iter().enumerate() {
            out.set(j, k, self.field.one());
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, r.get(i, j).neg());
            }
        }
        out
    }

    /// Solves self * x = b for a single column b; None when inconsistent.
    /// Free variables are set to zero, so the answer is canonical.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(b.cols, 1, "solve expects a column vector");
        self.solve_multi(b)
    }

    /// Solves self * X = B columnwise; None when any column is inconsistent.
    pub fn solve_multi(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(
            self.rows, b.rows,
            "dimension mismatch: {} rows vs rhs {}",
            self.rows, b.rows
        );
        assert_eq!(self.field, b.field);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        let n = self.cols;
        // any pivot in the rhs block means some column is inconsistent
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zeros(self.field, n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, n + j));
            }
        }
        Some(x)
    }

    /// Canonical row-space basis: the nonzero rows of the RREF.
    pub fn row_space_echelon(&self) -> Mat {
        let (r, pivots) = self.rref();
        r.submatrix(0, pivots.len(), 0, self.cols)
    }

    /// Canonical column-space basis, as columns.
    pub fn column_space_basis(&self) -> Mat {
        self.transpose().row_space_echelon().transpose()
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).render()).collect())
            .collect()
    }
}

struct PackedF2 {
    words: usize,
    bits: Vec<u64>,
}

fn pack_f2(m: &Mat) -> PackedF2 {
    let words = m.cols().div_ceil(64).max(1);
    let v = match &m.data {
        Store::Fp(v) => v,
        _ => unreachable!(),
    };
    let mut bits = vec![0u64; m.rows() * words];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if v[i * m.cols() + j] & 1 == 1 {
                bits[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    PackedF2 { words, bits }
}

/// Subspace utilities on echelonized row bases. A subspace of k^n is carried
/// around as the RREF of a spanning set; that representation is unique, so
/// subspace equality is matrix equality.
pub mod subspace {
    use super::Mat;
    use crate::field::Scalar;

    /// Reduces v (a row vector) against an echelon row basis; returns the
    /// residual. Zero residual means v lies in the span.
    pub fn reduce(echelon: &Mat, v: &[Scalar]) -> Vec<Scalar> {
        let mut v: Vec<Scalar> = v.to_vec();
        for i in 0..echelon.rows() {
            let Some(pc) = (0..echelon.cols()).find(|&j| !echelon.get(i, j).is_zero()) else {
                continue;
            };
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for j in pc..echelon.cols() {
                    v[j] = v[j].sub(&f.mul(&echelon.get(i, j)));
                }
            }
        }
        v
    }

    pub fn contains(echelon: &Mat, v: &[Scalar]) -> bool {
        reduce(echelon, v).iter().all(|s| s.is_zero())
    }

    /// Sum of two subspaces (row bases), echelonized.
    pub fn sum(a: &Mat, b: &Mat) -> Mat {
        a.vstack(b).row_space_echelon()
    }

    /// Pivot columns of an echelon basis.
    pub fn pivot_cols(echelon: &Mat) -> Vec<usize> {
        (0..echelon.rows())
            .filter_map(|i| (0..echelon.cols()).find(|&j| !echelon.get(i, j).is_zero()))
            .collect()
    }

    /// Standard coordinates not hit by pivots; the corresponding standard
    /// basis vectors are a canonical complement of the subspace.
    pub fn free_cols(echelon: &Mat) -> Vec<usize> {
        let piv = pivot_cols(echelon);
        (0..echelon.cols()).filter(|j| !piv.contains(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }
    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn rank_identity_f2() {
        assert_eq!(Mat::identity(f2(), 3).rank(), 3);
    }

    #[test]
    fn rank_repeated_row_f2() {
        let m = Mat::from_ints(f2(), 2, 2, &[1, 1, 1, 1]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_identity_empty() {
        assert_eq!(Mat::identity(f7(), 4).kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_zero_matrix() {
        let z = Mat::zeros(f7(), 2, 2);
        let k = z.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert_eq!(k, Mat::identity(f7(), 2));
    }

    #[test]
    fn kernel_repeated_row_f2() {
        let m = Mat::from_ints(f2(), 2, 2, &[1, 1, 1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![f2().one(), f2().one()]);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_identity() {
        let b = Mat::from_ints(f7(), 3, 1, &[2, 5, 6]);
        let x = Mat::identity(f7(), 3).solve(&b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_zero_inconsistent() {
        let z = Mat::zeros(f7(), 2, 2);
        let b = Mat::from_ints(f7(), 2, 1, &[1, 0]);
        assert!(z.solve(&b).is_none());
    }

    #[test]
    fn solve_substitution_check() {
        // deterministic pseudo-random consistent system over F7
        let a = Mat::from_ints(f7(), 4, 3, &[3, 1, 4, 1, 5, 2, 6, 5, 3, 5, 0, 1]);
        let x0 = Mat::from_ints(f7(), 3, 1, &[2, 6, 1]);
        let b = a.mul(&x0);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b, "residual must vanish exactly");
    }

    #[test]
    fn rational_elimination_exact() {
        let q = Field::Rational;
        let a = Mat::from_ints(q, 2, 2, &[2, 1, 1, 1]);
        let b = Mat::from_ints(q, 2, 1, &[1, 1]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        assert_eq!(x.get(0, 0).render(), "0");
        assert_eq!(x.get(1, 0).render(), "1");
    }

    #[test]
    fn independent_elimination_oracle_f7() {
        // rank via a second, independent routine: count nonzero rows after a
        // plain forward elimination without normalization or back-substitution
        fn rank_forward(m: &Mat) -> usize {
            let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i)).collect();
            let mut rank = 0;
            for col in 0..m.cols() {
                let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                    continue;
                };
                rows.swap(rank, pr);
                for r in rank + 1..rows.len() {
                    if !rows[r][col].is_zero() {
                        let f = rows[r][col].mul(&rows[rank][col].inv());
                        for j in col..m.cols() {
                            rows[r][j] = rows[r][j].sub(&f.mul(&rows[rank][j]));
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
        // fixed 5x7 matrix over F7
        let entries: Vec<i64> = (0..35).map(|k| (k * k * 3 + k + 1) % 7).collect();
        let m = Mat::from_ints(f7(), 5, 7, &entries);
        assert_eq!(m.rank(), rank_forward(&m));
    }

    #[test]
    fn f2_bitpacked_matches_generic() {
        // same matrix over F2 via both rref paths by embedding into F3-sized logic:
        // compare against the rational lift rank of a 0/1 matrix known mod 2
        let entries: Vec<i64> = (0..48).map(|k| ((k * 5 + 3) / 2) % 2).collect();
        let m2 = Mat::from_ints(f2(), 6, 8, &entries);
        let (r, piv) = m2.rref();
        // RREF invariants: pivot entries are 1, pivot columns are standard vectors
        for (i, &c) in piv.iter().enumerate() {
            for row in 0..r.rows() {
                let expect = if row == i { 1 } else { 0 };
                assert_eq!(r.get(row, c), f2().from_int(expect));
            }
        }
        assert_eq!(m2.rank() + m2.kernel_basis().cols(), m2.cols());
        // product check against scalar-loop multiply
        let b = Mat::from_ints(f2(), 8, 3, &(0..24).map(|k| (k % 3 == 0) as i64).collect::<Vec<_>>());
        let slow = Mat::from_fn(f2(), 6, 3, |i, j| {
            let mut acc = f2().zero();
            for k in 0..8 {
                acc = acc.add(&m2.get(i, k).mul(&b.get(k, j)));
            }
            acc
        });
        assert_eq!(m2.mul(&b), slow);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in 0u64..5000, pidx in 0usize..3) {
            let p = [2u64, 3, 7][pidx];
            let f = Field::prime(p).unwrap();
            let mut s = seed;
            let m = Mat::from_fn(f, rows, cols, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f.from_int((s >> 33) as i64)
            });
            prop_assert_eq!(m.rank() + m.kernel_basis().cols(), cols);
            let k = m.kernel_basis();
            if k.cols() > 0 {
                prop_assert!(m.mul(&k).is_zero());
            }
        }

        #[test]
        fn rank_invariant_row_ops(seed in 0u64..5000) {
            let f = Field::prime(5).unwrap();
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(2862933555777941757).wrapping_add(3037000493); (s >> 33) as i64 };
            let m = Mat::from_fn(f, 4, 4, |_, _| f.from_int(next()));
            let r0 = m.rank();
            // swap two rows
            let swapped = Mat::from_fn(f, 4, 4, |i, j| {
                let i2 = match i { 0 => 1, 1 => 0, x => x };
                m.get(i2, j)
            });
            prop_assert_eq!(swapped.rank(), r0);
            // scale a row by a nonzero scalar
            let c = f.from_int(1 + (next().rem_euclid(4)));
            let scaled = Mat::from_fn(f, 4, 4, |i, j| {
                if i == 2 { m.get(i, j).mul(&c) } else { m.get(i, j) }
            });
            prop_assert_eq!(scaled.rank(), r0);
        }

        #[test]
        fn solve_reproduces_rhs(seed in 0u64..3000) {
            let f = Field::prime(3).unwrap();
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); (s >> 33) as i64 };
            let a = Mat::from_fn(f, 4, 3, |_, _| f.from_int(next()));
            let x0 = Mat::from_fn(f, 3, 1, |_, _| f.from_int(next()));
            let b = a.mul(&x0);
            let x = a.solve(&b).expect("consistent by construction");
            prop_assert_eq!(a.mul(&x), b);
        }
    }
}
