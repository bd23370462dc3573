//! Dense arbitrary-precision integer matrices with exact determinant,
//! rank and characteristic polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;

/// Square matrix of exact integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl BigMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::from_fn(n, |i, j| BigInt::from(rows[i][j]))
    }

    /// Permutation matrix P with P[i, image[i]] = 1.
    pub fn from_permutation_image(image: &[usize]) -> Self {
        let mut m = Self::zero(image.len());
        for (i, &j) in image.iter().enumerate() {
            m.set(i, j, BigInt::one());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Exact determinant by fraction-free Bareiss elimination with row
    /// pivoting; i128 first, BigInt on overflow.
    pub fn det_exact(&self) -> BigInt {
        if self.n == 0 {
            return BigInt::one();
        }
        if let Some(d) = self.det_i128() {
            return d;
        }
        self.det_big()
    }

    fn det_i128(&self) -> Option<BigInt> {
        let n = self.n;
        let mut m: Vec<i128> = Vec::with_capacity(n * n);
        for e in &self.entries {
            m.push(e.to_i128()?);
        }
        let mut neg = false;
        let mut prev: i128 = 1;
        for k in 0..n {
            let r = match (k..n).find(|&r| m[r * n + k] != 0) {
                Some(r) => r,
                None => return Some(BigInt::zero()),
            };
            if r != k {
                for j in k..n {
                    m.swap(r * n + j, k * n + j);
                }
                neg = !neg;
            }
            let pivot = m[k * n + k];
            for i in k + 1..n {
                let head = m[i * n + k];
                for j in k + 1..n {
                    let t = m[i * n + j]
                        .checked_mul(pivot)?
                        .checked_sub(head.checked_mul(m[k * n + j])?)?;
                    debug_assert_eq!(t % prev, 0);
                    m[i * n + j] = t / prev;
                }
            }
            prev = pivot;
        }
        let d = BigInt::from(m[n * n - 1]);
        Some(if neg { -d } else { d })
    }

    fn det_big(&self) -> BigInt {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut neg = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let r = match (k..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => r,
                None => return BigInt::zero(),
            };
            if r != k {
                for j in k..n {
                    m.swap(r * n + j, k * n + j);
                }
                neg = !neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    debug_assert!((&t % &prev).is_zero());
                    m[i * n + j] = t / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        let d = std::mem::take(&mut m[n * n - 1]);
        if neg {
            -d
        } else {
            d
        }
    }

    /// Rank over the rationals, by fraction-free elimination with full
    /// (row and column) pivoting.
    pub fn rank_exact(&self) -> usize {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for k in 0..n {
            let mut pivot = None;
            'search: for r in k..n {
                for c in k..n {
                    if !m[r * n + c].is_zero() {
                        pivot = Some((r, c));
                        break 'search;
                    }
                }
            }
            let (r, c) = match pivot {
                Some(p) => p,
                None => break,
            };
            if r != k {
                for j in 0..n {
                    m.swap(r * n + j, k * n + j);
                }
            }
            if c != k {
                for i in 0..n {
                    m.swap(i * n + c, i * n + k);
                }
            }
            rank += 1;
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    debug_assert!((&t % &prev).is_zero());
                    m[i * n + j] = t / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        rank
    }

    /// Characteristic polynomial det(xI - A), monic, exact coefficients.
    ///
    /// Berkowitz iteration over leading principal blocks. The per-step
    /// Krylov products walk only the nonzero entries of each row, so sparse
    /// matrices (the graph adjacency case) cost O(n^3) overall.
    pub fn charpoly(&self) -> IntPolynomial {
        let n = self.n;
        let sparse_rows: Vec<Vec<(usize, &BigInt)>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| (j, self.get(i, j)))
                    .collect()
            })
            .collect();

        // Descending coefficient vector of the current block's charpoly,
        // starting from the empty block (polynomial 1).
        let mut coeffs: Vec<BigInt> = vec![BigInt::one()];
        for i in 0..n {
            let mut t: Vec<BigInt> = Vec::with_capacity(i + 2);
            t.push(BigInt::one());
            t.push(-self.get(i, i));
            if i > 0 {
                // Krylov sequence R, R A, R A^2, ... against the column S,
                // over the leading i x i block.
                let mut v: Vec<BigInt> = (0..i).map(|r| self.get(r, i).clone()).collect();
                for s in 0..i {
                    let mut dot = BigInt::zero();
                    for &(c, val) in &sparse_rows[i] {
                        if c >= i {
                            break;
                        }
                        dot += val * &v[c];
                    }
                    t.push(-dot);
                    if s + 1 < i {
                        let mut next = vec![BigInt::zero(); i];
                        for (r, slot) in next.iter_mut().enumerate() {
                            for &(c, val) in &sparse_rows[r] {
                                if c >= i {
                                    break;
                                }
                                *slot += val * &v[c];
                            }
                        }
                        v = next;
                    }
                }
            }
            let mut next = vec![BigInt::zero(); i + 2];
            for (j, cj) in coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                for (m, tm) in t.iter().enumerate() {
                    if j + m <= i + 1 {
                        next[j + m] += cj * tm;
                    }
                }
            }
            coeffs = next;
        }
        coeffs.reverse();
        IntPolynomial::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small_matrices() {
        assert_eq!(BigMatrix::from_i64_rows(&[&[2]]).det_exact(), BigInt::from(2));
        let m = BigMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det_exact(), BigInt::from(-2));
        assert_eq!(BigMatrix::zero(3).det_exact(), BigInt::zero());
        assert_eq!(BigMatrix::identity(5).det_exact(), BigInt::one());
    }

    /// Cycle-plus-loops matrix: determinant 2 for odd length, 0 for even.
    fn cycle_plus_loops(len: usize) -> BigMatrix {
        let mut m = BigMatrix::identity(len);
        for i in 0..len {
            let j = (i + 1) % len;
            let v = m.get(i, j) + 1;
            m.set(i, j, v);
        }
        m
    }

    #[test]
    fn det_cycle_matrices() {
        assert_eq!(cycle_plus_loops(3).det_exact(), BigInt::from(2));
        assert_eq!(cycle_plus_loops(4).det_exact(), BigInt::zero());
        assert_eq!(cycle_plus_loops(7).det_exact(), BigInt::from(2));
        assert_eq!(cycle_plus_loops(10).det_exact(), BigInt::zero());
    }

    #[test]
    fn det_big_path_matches_i128_path() {
        // Force the BigInt path by scaling entries beyond i128.
        let base = BigMatrix::from_i64_rows(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let huge = BigInt::from(1) << 100;
        let scaled = BigMatrix::from_fn(3, |i, j| base.get(i, j) * &huge);
        assert_eq!(scaled.det_exact(), base.det_exact() * (&huge * &huge * &huge));
        assert_eq!(base.det_i128().unwrap(), base.det_big());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BigMatrix::zero(4).rank_exact(), 0);
        assert_eq!(BigMatrix::identity(4).rank_exact(), 4);
        let m = BigMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank_exact(), 2);
    }

    #[test]
    fn charpoly_small() {
        let m = BigMatrix::from_i64_rows(&[&[2]]);
        assert_eq!(m.charpoly().to_string(), "x - 2");
        let m = BigMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        // x^2 - 5x - 2
        assert_eq!(m.charpoly().to_string(), "x^2 - 5*x - 2");
        let id = BigMatrix::identity(3);
        assert_eq!(id.charpoly().to_string(), "x^3 - 3*x^2 + 3*x - 1");
    }

    #[test]
    fn charpoly_constant_term_matches_det() {
        let m = BigMatrix::from_i64_rows(&[
            &[0, -3, 7, 1],
            &[2, 2, -1, 0],
            &[5, 0, 0, 4],
            &[1, -2, 3, -3],
        ]);
        let p = m.charpoly();
        let at0 = p.eval(&BigInt::zero());
        assert_eq!(at0, m.det_exact() * BigInt::from((-1i64).pow(4)));
    }
}
